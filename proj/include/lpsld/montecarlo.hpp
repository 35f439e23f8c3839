#ifndef LPSLD_MONTECARLO_HPP
#define LPSLD_MONTECARLO_HPP

#include <cstdint>

#include "lpsld/common.hpp"
#include "lpsld/sld.hpp"

namespace lpsld {

// Binomial frequency estimate with its standard error and 95% CI.
struct McEstimate {
    double p_hat;
    double stderr_;
    long long n_samples;
    double ci95_lo;
    double ci95_hi;
    std::uint64_t seed;
};

struct CompareResult {
    int n;
    double z;
    SldEstimate sld_cone;
    SldEstimate sld_ball;
    McEstimate mc_cone;
    McEstimate mc_ball;
    double ratio_cone;  // analytic / MC
    double ratio_ball;
};

// P(n^{1/p-1/q} ||Z||_q > z) under the cone measure, by direct simulation of
// the sum representation (1/n) sum |Y_i|^q vs z^q ((1/n) sum |Y_i|^p)^{q/p}.
McEstimate mc_tail_cone(int n, double z, const PqParams& params, long long n_samples,
                        std::uint64_t seed);

// Same under the uniform measure (extra radial factor U^{1/n}). Consumes the
// identical random stream as mc_tail_cone, so equal-seed runs are paired.
McEstimate mc_tail_ball(int n, double z, const PqParams& params, long long n_samples,
                        std::uint64_t seed);

// Empirical vol_n(D_p^n intersect t D_q^n): fraction of uniform-ball samples with
// rescaled q-norm <= t c_{n,p,q}.
McEstimate mc_intersection(int n, double t, const PqParams& params, long long n_samples,
                           std::uint64_t seed);

// Projection-length tail by the norm identity: literally mc_tail_cone at z/2
// under parameters (2, q_proj^*), sharing the stream count for count.
McEstimate mc_projection(int n, double q_proj, double z, long long n_samples, std::uint64_t seed);

// Analytic estimates and paired MC estimates for both measures in one pass.
CompareResult compare(int n, double z, const PqParams& params, long long n_samples,
                      std::uint64_t seed);

}  // namespace lpsld

#endif
