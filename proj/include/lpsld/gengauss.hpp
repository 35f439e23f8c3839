#ifndef LPSLD_GENGAUSS_HPP
#define LPSLD_GENGAUSS_HPP

#include <span>
#include <vector>

#include "lpsld/common.hpp"
#include "lpsld/rng.hpp"

namespace lpsld {

// A point on (or in) the l_p unit ball, tagged with its exponent.
struct LpVector {
    std::vector<double> coords;
    double p = 2.0;
};

// Density of the generalized Gaussian N_p: exp(-|y|^p / p) / (2 p^{1/p} Gamma(1 + 1/p)).
double density_fp(double y, double p);

// r-th absolute moment of N_p: p^{r/p} Gamma(1 + (r+1)/p) / ((r+1) Gamma(1 + 1/p)).
double moment_Mp(double p, double r);

// m_{p,q} = M_p(q)^{1/q}, the limiting mean of the rescaled q-norm.
double mean_mpq(const PqParams& params);

// One N_p draw: +-G^{1/p} with G ~ Gamma(1/p, p) and a fair sign.
double sample_np(double p, RngStream& rng);

// Cone-measure sample on the l_p sphere: Y / ||Y||_p with i.i.d. N_p coordinates.
LpVector sample_cone(int n, double p, RngStream& rng);

// Uniform sample in the l_p ball: U^{1/n} Y / ||Y||_p.
LpVector sample_ball(int n, double p, RngStream& rng);

// l_p norm, p in [1, infinity]. Pass std::numeric_limits<double>::infinity() for the max norm.
double lp_norm(std::span<const double> x, double p);

}  // namespace lpsld

#endif
