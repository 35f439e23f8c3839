#ifndef LPSLD_CGF_HPP
#define LPSLD_CGF_HPP

#include "lpsld/common.hpp"

namespace lpsld {

// Margin kept from the tau2 = 1/p boundary; evaluations past it are rejected.
inline constexpr double kTiltBoundaryMargin = 1e-8;

// Tilt point tau = (tau1, tau2). Membership in the effective domain
// (tau2 < 1/p, minus the guard margin) is checked at construction.
struct Tilt {
    double tau1;
    double tau2;

    Tilt(double t1, double t2, const PqParams& params) : tau1(t1), tau2(t2) {
        if (!std::isfinite(t1) || !std::isfinite(t2) || t2 >= 1.0 / params.p - kTiltBoundaryMargin)
            throw DomainViolation("tilt tau2=" + std::to_string(t2) +
                                  " outside effective domain (tau2 < 1/p)");
    }
};

// Value, gradient and Hessian of the c.g.f. at a tilt.
struct CgfEval {
    double value;
    Vec2 grad;
    Sym2 hess;
};

// E exp(t |X|^q) for X ~ N_p. Finite for every real t since q < p.
double phi_absq(double t, const PqParams& params);

// c.g.f. of (|X|^q, |X|^p), evaluated through the 1-D reduction
// Lambda(s) = -(1/p) log(1 - p s2) + log phi_{|X|^q}(s1 (1 - p s2)^{-q/p}).
double lambda_p(const Tilt& tau, const PqParams& params);

// Tilted moments (E_tau |X|^q, E_tau |X|^p) under the density ~ exp(tau1 |y|^q + tau2 |y|^p) f_p.
Vec2 grad_lambda(const Tilt& tau, const PqParams& params);

// Tilted covariance matrix of (|X|^q, |X|^p); symmetric positive definite on the domain.
Sym2 hess_lambda(const Tilt& tau, const PqParams& params);

// Value, gradient and Hessian in one pass over the tilted-moment integrals.
CgfEval eval_cgf(const Tilt& tau, const PqParams& params);

}  // namespace lpsld

#endif
