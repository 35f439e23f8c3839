#include "lpsld/sld.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lpsld/gengauss.hpp"
#include "lpsld/geometry.hpp"

namespace lpsld {

namespace {

RatePoint rate_point_checked(double z, const PqParams& params) {
    const double m = mean_mpq(params);
    if (!(z > m))
        throw BadParams("deviation level z=" + std::to_string(z) + " must exceed m_{p,q}=" +
                        std::to_string(m));
    return rate_norm(z, params);
}

SldEstimate assemble(int n, double z, double rate, double norm_term, Measure measure) {
    if (n < 1) throw BadParams("n must be >= 1");
    if (!(norm_term > 0.0) || !std::isfinite(norm_term))
        throw NumericalBreakdown("non-positive prefactor normalization");
    const double prefactor = 1.0 / (std::sqrt(2.0 * M_PI * n) * norm_term);
    const double probability = prefactor * std::exp(-static_cast<double>(n) * rate);
    return SldEstimate{n, z, rate, prefactor, probability, measure, probability < 1.0};
}

}  // namespace

// xi^2 = <H_{z*} tau, tau>. The Laplace approximation of the deviation-area
// integral splits into a normal exponential factor 1/(n |tau|) and a tangential
// Gaussian factor sqrt(2 pi / (n a)) with a = <H^{-1} t, t> along the tangent t;
// by the 2x2 adjugate identity |tau|^2 a det H = <H tau, tau>, the density's
// (det H)^{-1/2} cancels exactly, leaving xi = sqrt(<H tau, tau>). Monte Carlo
// confirms this normalization (and rejects an extra det factor) to within the
// finite-n drift.
double xi(const RatePoint& rp) {
    const double quad = rp.hess.quad(rp.tau.tau1, rp.tau.tau2);
    if (!(quad > 0.0)) throw NotAdmissible("degenerate tilt: xi vanishes at the mean");
    return std::sqrt(quad);
}

double xi(double z, const PqParams& params) { return xi(rate_point_checked(z, params)); }

double kappa(double z, const RatePoint& rp, const PqParams& params) {
    const double ld = weingarten_LD(z, params);
    const double llambda = weingarten_LLambda(rp);
    const double k2 = 1.0 - ld / llambda;
    if (!(k2 > 0.0))
        throw NumericalBreakdown("kappa^2 = 1 - L_D/L_Lambda is not in (0,1): " +
                                 std::to_string(k2));
    return std::sqrt(k2);
}

double kappa(double z, const PqParams& params) {
    return kappa(z, rate_point_checked(z, params), params);
}

double kappa_closed_form(double z, const RatePoint& rp, const PqParams& params) {
    const double p = params.p, q = params.q;
    const double t1 = rp.tau.tau1, t2 = rp.tau.tau2;
    const double zq = std::pow(z, q);
    const double tn = t1 * t1 + t2 * t2;
    const double level_quad = std::abs(t2 * t2 * rp.hess_inv.a11 - 2.0 * t1 * t2 * rp.hess_inv.a12 +
                                       t1 * t1 * rp.hess_inv.a22);
    const double bd = zq * zq + p * p / (q * q);
    const double k2 = 1.0 - tn * std::sqrt(tn) * std::abs(p * (p - q) / (q * q) * zq) /
                                (level_quad * bd * std::sqrt(bd));
    if (!(k2 > 0.0)) throw NumericalBreakdown("closed-form kappa^2 not in (0,1)");
    return std::sqrt(k2);
}

namespace {

// bracket term of gamma^2; equals the transformed second derivative f~_[0,0,2]
double gamma_bracket(double z, const RatePoint& rp, const PqParams& params) {
    const double p = params.p, q = params.q;
    const double zq = std::pow(z, q);
    const double b = zq * zq * q * q / (p * p) * rp.hess_inv.a11 +
                     2.0 * zq * q / p * rp.hess_inv.a12 + rp.hess_inv.a22 +
                     rp.tau.tau1 * zq * q * (q - p) / (p * p);
    if (!(b > 0.0))
        throw NumericalBreakdown("transformed second derivative f~_[0,0,2] <= 0: " +
                                 std::to_string(b));
    return b;
}

}  // namespace

double gamma_term(double z, const RatePoint& rp, const PqParams& params) {
    const double zq = std::pow(z, params.q);
    const double t1 = rp.tau.tau1;
    if (t1 == 0.0) throw NotAdmissible("degenerate tilt: gamma vanishes at the mean");
    const double f010 = params.q * zq * t1 + 1.0;
    const double g2 = rp.hess.det() * t1 * t1 * f010 * f010 * gamma_bracket(z, rp, params);
    return std::sqrt(g2);
}

double gamma_term(double z, const PqParams& params) {
    return gamma_term(z, rate_point_checked(z, params), params);
}

double gamma_term_assembly(double z, const RatePoint& rp, const PqParams& params) {
    const double zq = std::pow(z, params.q);
    const double f100 = rp.tau.tau1;
    const double f010 = params.q * zq * rp.tau.tau1 + 1.0;
    const double g0 = 1.0 / std::sqrt(rp.hess.det());
    const double inv_gamma = g0 / (f100 * f010 * std::sqrt(gamma_bracket(z, rp, params)));
    return 1.0 / inv_gamma;
}

SldEstimate tail_cone(int n, double z, const PqParams& params) {
    const RatePoint rp = rate_point_checked(z, params);
    return assemble(n, z, rp.rate, kappa(z, rp, params) * xi(rp), Measure::cone);
}

SldEstimate tail_ball(int n, double z, const PqParams& params) {
    const RatePoint rp = rate_point_checked(z, params);
    return assemble(n, z, rp.rate, gamma_term(z, rp, params), Measure::uniform);
}

double log_ball_volume(int n, double p) {
    if (n < 1) throw BadParams("log_ball_volume: n must be >= 1");
    if (!(p >= 1.0) || !std::isfinite(p)) throw BadParams("log_ball_volume: p must be >= 1");
    return n * (std::log(2.0) + std::lgamma(1.0 + 1.0 / p)) - std::lgamma(1.0 + n / p);
}

namespace {

double c_limit(double e) { return 2.0 * std::exp(1.0 / e) * std::pow(e, 1.0 / e) * std::tgamma(1.0 + 1.0 / e); }

double c_dim(int n, double e) {
    return std::exp(std::log(static_cast<double>(n)) / e + log_ball_volume(n, e) / n);
}

}  // namespace

BallConstants ball_constants(int n, const PqParams& params) {
    if (n < 1) throw BadParams("ball_constants: n must be >= 1");
    const double p = params.p, q = params.q;
    const double m = mean_mpq(params);
    BallConstants bc;
    bc.n = n;
    bc.p = p;
    bc.q = q;
    bc.log_vol_p = log_ball_volume(n, p);
    bc.c_np = c_dim(n, p);
    bc.c_nq = c_dim(n, q);
    bc.c_p = c_limit(p);
    bc.c_q = c_limit(q);
    bc.c_npq = bc.c_np / bc.c_nq;
    bc.A_npq = bc.c_np / (m * bc.c_nq);
    // closed-form limit of A_{n,p,q} = c_p / (m_{p,q} c_q), using
    // m_{p,q} = p^{1/p} (Gamma((q+1)/p) / Gamma(1/p))^{1/q}
    bc.A_pq = std::exp(1.0 / p - 1.0 / q) * std::tgamma(1.0 + 1.0 / p) /
              (std::pow(q, 1.0 / q) * std::tgamma(1.0 + 1.0 / q)) *
              std::pow(std::tgamma(1.0 / p) / std::tgamma((q + 1.0) / p), 1.0 / q);
    return bc;
}

IntersectionEstimate intersection_volume(int n, double t, const PqParams& params) {
    const BallConstants bc = ball_constants(n, params);
    if (!(bc.A_pq * t > 1.0))
        throw RegimeViolation("intersection volume asymptotics require A_{p,q} t > 1, got " +
                              std::to_string(bc.A_pq * t));
    const double z_eff = t * bc.c_npq;
    if (z_eff >= 1.0) {
        // the rescaled q-norm never exceeds 1 (power-mean bound), so the scaled
        // q-ball contains the whole p-ball and the volume ratio is exactly 1
        const SldEstimate zero_tail{n, z_eff, std::numeric_limits<double>::infinity(),
                                    0.0,      0.0,   Measure::uniform,
                                    true};
        return IntersectionEstimate{n, t, z_eff, 1.0, zero_tail};
    }
    const SldEstimate tail = tail_ball(n, z_eff, params);
    return IntersectionEstimate{n, t, z_eff, 1.0 - tail.probability, tail};
}

double conjugate_exponent(double q) {
    if (std::isinf(q)) return 1.0;
    if (!(q > 1.0)) throw BadParams("conjugate exponent defined for q > 1");
    return q / (q - 1.0);
}

SldEstimate projection_tail(int n, double q_proj, double z) {
    if (!(q_proj > 2.0)) throw BadParams("projection_tail requires q_proj > 2");
    const PqParams par(2.0, conjugate_exponent(q_proj));
    const double m = mean_mpq(par);
    if (!(z > 2.0 * m))
        throw BadParams("projection_tail requires z > 2 m_{2,q*} = " + std::to_string(2.0 * m));
    return tail_cone(n, z / 2.0, par);
}

}  // namespace lpsld
