#ifndef LPSLD_LEGENDRE_HPP
#define LPSLD_LEGENDRE_HPP

#include "lpsld/cgf.hpp"
#include "lpsld/common.hpp"

namespace lpsld {

// Deviation point x with its saddle tau(x), rate Lambda*(x) and the c.g.f.
// Hessian at the saddle (plus its inverse, which is the Hessian of the rate).
struct RatePoint {
    Vec2 x;
    Tilt tau;
    double rate;
    Sym2 hess;
    Sym2 hess_inv;
    int iterations;
};

// Solve grad Lambda(tau) = x by damped Newton from the origin. Throws
// NotAdmissible when the iterates stall against the tau2 boundary.
RatePoint solve_tau(const Vec2& x, const PqParams& params);

// Rate point at z* = (z^q, 1) for the rescaled q-norm under the cone measure.
RatePoint rate_norm(double z, const PqParams& params);

// Rate of the rescaled q-norm under the uniform measure; coincides with rate_norm.
double rate_uniform(double z, const PqParams& params);

// Leading-order density of the empirical moment vector S^(n) at x:
// (n / 2pi) (det H_x)^{-1/2} exp(-n Lambda*(x)).
double density_cone(const Vec2& x, int n, const PqParams& params);

// Leading-order density of the 3-D vector (S^(n), U^{1/n}) at (x, y):
// (n^2 / 2pi) y^{-1} (det H_x)^{-1/2} exp(-n (Lambda*(x) - log y)).
double density_ball(const Vec2& x, double y, int n, const PqParams& params);

}  // namespace lpsld

#endif
