#include "lpsld/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpsld/rng.hpp"

namespace lpsld {

namespace {

constexpr long long kBatchSize = 1 << 16;

struct PairCounts {
    long long cone = 0;
    long long ball = 0;
};

// One pass over the sum representation. Every sample draws n Gamma(1/p, p)
// variates (G = |Y|^p, so |Y|^q = G^{q/p}) plus one uniform for the radial
// factor; the cone event ignores the uniform but still consumes it, keeping
// equal-seed cone/ball runs paired sample by sample.
PairCounts simulate_pair(int n, double z, const PqParams& params, long long n_samples,
                         std::uint64_t seed) {
    if (n < 1) throw BadParams("mc: n must be >= 1");
    if (n_samples < 1) throw BadParams("mc: n_samples must be >= 1");
    if (!(z >= 0.0)) throw BadParams("mc: z must be >= 0");

    const double p = params.p, q = params.q;
    const double shape = 1.0 / p;
    const double qp = q / p;
    const bool half = (qp == 0.5);
    const double zq = std::pow(z, q);
    const double inv_n = 1.0 / static_cast<double>(n);

    PairCounts counts;
    const long long n_batches = (n_samples + kBatchSize - 1) / kBatchSize;
    for (long long b = 0; b < n_batches; ++b) {
        RngStream rng = RngStream::from_master(seed, static_cast<std::uint64_t>(b));
        const long long lo = b * kBatchSize;
        const long long hi = std::min(n_samples, lo + kBatchSize);
        for (long long s = lo; s < hi; ++s) {
            double sum_q = 0.0, sum_p = 0.0;
            for (int i = 0; i < n; ++i) {
                const double g = rng.gamma(shape, p);
                sum_p += g;
                sum_q += half ? std::sqrt(g) : std::pow(g, qp);
            }
            const double u = rng.uniform();
            const double rhs = zq * std::pow(sum_p * inv_n, qp);
            const double lhs = sum_q * inv_n;
            if (lhs > rhs) ++counts.cone;
            if (std::pow(u, q * inv_n) * lhs > rhs) ++counts.ball;
        }
    }
    return counts;
}

McEstimate make_estimate(long long hits, long long n_samples, std::uint64_t seed) {
    const double p_hat = static_cast<double>(hits) / static_cast<double>(n_samples);
    const double se = std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n_samples));
    return McEstimate{p_hat,
                      se,
                      n_samples,
                      std::max(0.0, p_hat - 1.96 * se),
                      std::min(1.0, p_hat + 1.96 * se),
                      seed};
}

}  // namespace

McEstimate mc_tail_cone(int n, double z, const PqParams& params, long long n_samples,
                        std::uint64_t seed) {
    return make_estimate(simulate_pair(n, z, params, n_samples, seed).cone, n_samples, seed);
}

McEstimate mc_tail_ball(int n, double z, const PqParams& params, long long n_samples,
                        std::uint64_t seed) {
    return make_estimate(simulate_pair(n, z, params, n_samples, seed).ball, n_samples, seed);
}

McEstimate mc_intersection(int n, double t, const PqParams& params, long long n_samples,
                           std::uint64_t seed) {
    if (!(t > 0.0)) throw BadParams("mc_intersection: t must be > 0");
    const BallConstants bc = ball_constants(n, params);
    const double z_eff = t * bc.c_npq;
    const long long exceed = simulate_pair(n, z_eff, params, n_samples, seed).ball;
    return make_estimate(n_samples - exceed, n_samples, seed);
}

McEstimate mc_projection(int n, double q_proj, double z, long long n_samples, std::uint64_t seed) {
    if (!(q_proj > 2.0)) throw BadParams("mc_projection requires q_proj > 2");
    const PqParams par(2.0, conjugate_exponent(q_proj));
    return mc_tail_cone(n, z / 2.0, par, n_samples, seed);
}

CompareResult compare(int n, double z, const PqParams& params, long long n_samples,
                      std::uint64_t seed) {
    const PairCounts counts = simulate_pair(n, z, params, n_samples, seed);
    CompareResult r{n,
                    z,
                    tail_cone(n, z, params),
                    tail_ball(n, z, params),
                    make_estimate(counts.cone, n_samples, seed),
                    make_estimate(counts.ball, n_samples, seed),
                    0.0,
                    0.0};
    r.ratio_cone = r.mc_cone.p_hat > 0.0 ? r.sld_cone.probability / r.mc_cone.p_hat
                                         : std::numeric_limits<double>::infinity();
    r.ratio_ball = r.mc_ball.p_hat > 0.0 ? r.sld_ball.probability / r.mc_ball.p_hat
                                         : std::numeric_limits<double>::infinity();
    return r;
}

}  // namespace lpsld
