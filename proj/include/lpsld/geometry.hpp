#ifndef LPSLD_GEOMETRY_HPP
#define LPSLD_GEOMETRY_HPP

#include <cmath>

#include "lpsld/common.hpp"
#include "lpsld/legendre.hpp"

namespace lpsld {

// Second-order jet of a scalar field F at a point: first and second partials.
struct CurveJet2 {
    double f10, f01;       // gradient
    double f20, f11, f02;  // Hessian entries
};

// Signed curvature of the implicit curve {F = 0} at a point with nonzero gradient:
// (f01^2 f20 - 2 f01 f10 f11 + f10^2 f02) / (f10^2 + f01^2)^{3/2}.
inline double implicit_curvature(const CurveJet2& jet) {
    const double g2 = jet.f10 * jet.f10 + jet.f01 * jet.f01;
    if (g2 == 0.0) throw BadParams("implicit_curvature: gradient is zero");
    const double num =
        jet.f01 * jet.f01 * jet.f20 - 2.0 * jet.f01 * jet.f10 * jet.f11 + jet.f10 * jet.f10 * jet.f02;
    return num / (g2 * std::sqrt(g2));
}

// Curvature of a graph y = f(x): |f''| / (1 + f'^2)^{3/2}.
inline double graph_curvature(double fprime, double fsecond) {
    const double d = 1.0 + fprime * fprime;
    return std::abs(fsecond) / (d * std::sqrt(d));
}

// Curvature of the deviation-area boundary at z*.  The boundary is the graph
// f(t) = z^{-p} t^{p/q}, so at t = z^q the curvature |f''| / (1 + f'^2)^{3/2}
// equals |p(p-q) q^{-2} z^{-2q}| / (1 + p^2 q^{-2} z^{-2q})^{3/2}; clearing the
// z powers gives p(p-q) q^{-2} z^q / (z^{2q} + p^2/q^2)^{3/2}.
inline double weingarten_LD(double z, const PqParams& params) {
    if (!(z > 0.0)) throw BadParams("weingarten_LD requires z > 0");
    const double p = params.p, q = params.q;
    const double zq = std::pow(z, q);
    const double denom_base = zq * zq + p * p / (q * q);
    return std::abs(p * (p - q) / (q * q) * zq) / (denom_base * std::sqrt(denom_base));
}

// Curvature of the rate-function level set at the rate point, assembled from
// the saddle tilt (the gradient of the rate) and the inverse c.g.f. Hessian
// (the Hessian of the rate).
inline double weingarten_LLambda(const RatePoint& rp) {
    if (rp.tau.tau1 == 0.0 && rp.tau.tau2 == 0.0)
        throw NotAdmissible("degenerate tilt tau = 0: level-set curvature undefined at the mean");
    const CurveJet2 jet{rp.tau.tau1, rp.tau.tau2, rp.hess_inv.a11, rp.hess_inv.a12,
                        rp.hess_inv.a22};
    return std::abs(implicit_curvature(jet));
}

}  // namespace lpsld

#endif
