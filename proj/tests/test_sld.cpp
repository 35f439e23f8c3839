#include <doctest.h>

#include <cmath>
#include <utility>

#include "lpsld/gengauss.hpp"
#include "lpsld/geometry.hpp"
#include "lpsld/sld.hpp"

using namespace lpsld;

namespace {

const std::pair<double, double> kPairs[] = {{2.0, 1.0}, {3.0, 1.0}, {3.0, 2.0}, {1.5, 1.0}, {4.0, 2.5}};

}

TEST_CASE("xi: vanishing at the mean, positivity, raw-definition agreement") {
    const PqParams par(2.0, 1.0);
    const double m = mean_mpq(par);
    CHECK(xi(m + 1e-5, par) < 1e-2);
    CHECK(xi(0.95, par) > 0.0);

    for (auto [p, q] : kPairs) {
        const PqParams pr(p, q);
        const double mp = mean_mpq(pr);
        const double z = mp + 0.5 * (1.0 - mp);
        const RatePoint rp = rate_norm(z, pr);
        const double raw = std::sqrt(rp.hess.quad(rp.tau.tau1, rp.tau.tau2));
        CHECK(xi(z, pr) == doctest::Approx(raw).epsilon(1e-10));
        CHECK(rp.hess.quad(rp.tau.tau1, rp.tau.tau2) > 0.0);
    }
}

TEST_CASE("kappa: dual path, range, determinism") {
    const PqParams par(2.0, 1.0);
    const RatePoint rp = rate_norm(0.95, par);
    CHECK(kappa(0.95, par) == doctest::Approx(kappa_closed_form(0.95, rp, par)).epsilon(1e-8));

    for (auto [p, q] : kPairs) {
        const PqParams pr(p, q);
        const double m = mean_mpq(pr);
        for (double f : {0.25, 0.5, 0.75}) {
            const double z = m + f * (1.0 - m);
            const double k = kappa(z, pr);
            CHECK(k > 0.0);
            CHECK(k < 1.0);
            const RatePoint r = rate_norm(z, pr);
            CHECK(k == doctest::Approx(kappa_closed_form(z, r, pr)).epsilon(1e-8));
        }
    }

    const PqParams par32(3.0, 2.0);
    const double m32 = mean_mpq(par32);
    const double z32 = m32 + 0.5 * (1.0 - m32);
    const double k1 = kappa(z32, par32);
    const double k2 = kappa(z32, par32);
    CHECK(k1 == k2);  // bit-exact rerun
    CHECK(std::isfinite(k1));
    CHECK(k1 > 0.0);
}

TEST_CASE("gamma: dual path and distinctness from kappa*xi") {
    for (auto [p, q] : kPairs) {
        const PqParams pr(p, q);
        const double m = mean_mpq(pr);
        for (double f : {0.25, 0.5, 0.75}) {
            const double z = m + f * (1.0 - m);
            const RatePoint rp = rate_norm(z, pr);
            CHECK(gamma_term(z, rp, pr) ==
                  doctest::Approx(gamma_term_assembly(z, rp, pr)).epsilon(1e-10));
        }
    }

    const PqParams par(2.0, 1.0);
    CHECK(gamma_term(mean_mpq(par) + 1e-5, par) < 1e-2);
    const double g = gamma_term(0.95, par);
    const double kx = kappa(0.95, par) * xi(0.95, par);
    CHECK(std::abs(g - kx) / kx > 1e-3);  // the two prefactors genuinely differ
}

TEST_CASE("tail_cone structure") {
    const PqParams par(2.0, 1.0);
    const SldEstimate a = tail_cone(100, 0.9, par);
    const SldEstimate b = tail_cone(200, 0.9, par);
    CHECK(a.rate > 0.0);
    CHECK(a.prefactor > 0.0);
    CHECK(a.probability == doctest::Approx(a.prefactor * std::exp(-100.0 * a.rate)).epsilon(1e-12));
    // doubling n: log p drops by n*rate plus the half-log-2 prefactor shift
    CHECK(std::log(a.probability) - std::log(b.probability) ==
          doctest::Approx(100.0 * a.rate + 0.5 * std::log(2.0)).epsilon(1e-9));

    // near the mean the leading-order value exceeds 1 and is flagged
    const SldEstimate near = tail_cone(10, mean_mpq(par) + 1e-4, par);
    CHECK(!near.valid_asymptotic);
    CHECK(near.probability >= 1.0);
    CHECK(a.valid_asymptotic);
}

TEST_CASE("tail_ball shares the rate; prefactor ratio is n-free") {
    const PqParams par(2.0, 1.0);
    for (int n : {50, 100, 400}) {
        const SldEstimate c = tail_cone(n, 0.9, par);
        const SldEstimate u = tail_ball(n, 0.9, par);
        CHECK(c.rate == u.rate);
        CHECK(c.probability / u.probability ==
              doctest::Approx(gamma_term(0.9, par) / (kappa(0.9, par) * xi(0.9, par)))
                  .epsilon(1e-10));
    }
    CHECK(tail_ball(100, 0.9, par).measure == Measure::uniform);
    CHECK(tail_cone(100, 0.9, par).measure == Measure::cone);
}

TEST_CASE("ball volumes and limiting constants") {
    CHECK(std::exp(log_ball_volume(2, 2.0)) == doctest::Approx(M_PI).epsilon(1e-12));
    double fact = 1.0;
    for (int n = 1; n <= 6; ++n) {
        fact *= n;
        CHECK(std::exp(log_ball_volume(n, 1.0)) ==
              doctest::Approx(std::pow(2.0, n) / fact).epsilon(1e-12));
    }

    const PqParams par(2.0, 1.0);
    double prev = 1e300;
    for (int n : {10, 100, 1000, 10000}) {
        const BallConstants bc = ball_constants(n, par);
        const double gap = std::abs(bc.c_np - bc.c_p);
        CHECK(gap < prev);
        prev = gap;
    }

    // A_npq approaches the closed-form limit A_pq
    const BallConstants big = ball_constants(100000, par);
    CHECK(big.A_npq == doctest::Approx(big.A_pq).epsilon(1e-3));
    CHECK(big.c_npq == doctest::Approx(big.c_np / big.c_nq).epsilon(1e-12));
}

TEST_CASE("intersection volume: monotonicity and regime guard") {
    const PqParams par(2.0, 1.0);
    const int n = 100;
    const BallConstants bc = ball_constants(n, par);

    double prev_vol = -1.0;
    double prev_t = 0.0;
    for (double z = 0.88; z <= 1.1; z += 0.02) {
        const double t = z / bc.c_npq;
        if (bc.A_pq * t <= 1.0) continue;
        const IntersectionEstimate est = intersection_volume(n, t, par);
        CHECK(est.z_eff == doctest::Approx(t * bc.c_npq).epsilon(1e-12));
        if (prev_vol >= 0.0) {
            CHECK(t > prev_t);
            CHECK(est.volume >= prev_vol);
        }
        prev_vol = est.volume;
        prev_t = t;
    }
    CHECK(prev_vol > 0.9);  // large t: volume approaches 1

    // once t c_{n,p,q} >= 1 the scaled q-ball contains the p-ball outright
    CHECK(intersection_volume(n, 1.02 / bc.c_npq, par).volume == 1.0);

    const double t_boundary = 1.0 / bc.A_pq;
    CHECK_THROWS_AS(intersection_volume(n, t_boundary, par), RegimeViolation);
    CHECK_THROWS_AS(intersection_volume(n, 0.5 * t_boundary, par), RegimeViolation);
}

TEST_CASE("conjugate exponents and the projection mapping") {
    CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
    CHECK(conjugate_exponent(4.0) == doctest::Approx(4.0 / 3.0));
    CHECK(conjugate_exponent(std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));

    // q_proj = infinity maps to the (2,1) cone tail at z/2
    const double z = 1.9;
    const SldEstimate proj = projection_tail(100, std::numeric_limits<double>::infinity(), z);
    const SldEstimate cone = tail_cone(100, z / 2.0, PqParams(2.0, 1.0));
    CHECK(proj.probability == doctest::Approx(cone.probability).epsilon(1e-12));
    CHECK(proj.rate == doctest::Approx(cone.rate).epsilon(1e-12));

    // q_proj = 4: finite estimate at an admissible level
    const double qs = conjugate_exponent(4.0);
    const double zz = 2.2 * mean_mpq(PqParams(2.0, qs));
    const SldEstimate p4 = projection_tail(100, 4.0, 2.0 * zz / 2.2 * 1.1);
    CHECK(std::isfinite(p4.probability));
    CHECK(p4.probability > 0.0);

    CHECK_THROWS_AS(projection_tail(100, 2.0, 2.5), BadParams);
    CHECK_THROWS_AS(projection_tail(100, 1.5, 2.5), BadParams);
}
