#ifndef LPSLD_SLD_HPP
#define LPSLD_SLD_HPP

#include "lpsld/common.hpp"
#include "lpsld/legendre.hpp"

namespace lpsld {

enum class Measure { cone, uniform };

// Leading-order tail estimate: probability = prefactor * exp(-n * rate). The
// formula carries no o(1) correction, so near the mean the value can exceed 1;
// that regime is flagged instead of clipped.
struct SldEstimate {
    int n;
    double z;
    double rate;
    double prefactor;
    double probability;
    Measure measure;
    bool valid_asymptotic;  // false when probability >= 1
};

// Volume and normalization constants of the l_p ball family at dimension n.
struct BallConstants {
    int n;
    double p;
    double q;
    double log_vol_p;  // log vol_n(B_p^n)
    double c_np;       // n^{1/p} vol_n(B_p^n)^{1/n}
    double c_nq;
    double c_p;  // limit 2 e^{1/p} p^{1/p} Gamma(1 + 1/p)
    double c_q;
    double c_npq;  // c_np / c_nq
    double A_npq;  // c_np / (m_{p,q} c_nq)
    double A_pq;   // closed-form limit of A_npq
};

struct IntersectionEstimate {
    int n;
    double t;
    double z_eff;  // t * c_{n,p,q}, the effective deviation level
    double volume; // 1 - tail_ball(n, z_eff).probability
    SldEstimate tail;
};

// xi(z)^2 = <H_{z*} tau(z*), tau(z*)> det H_{z*}
double xi(double z, const PqParams& params);
double xi(const RatePoint& rp);

// kappa(z) = sqrt(1 - L_D / L_Lambda), computed through the curvature module.
double kappa(double z, const PqParams& params);
double kappa(double z, const RatePoint& rp, const PqParams& params);

// Closed-form kappa, kept as an independent code path for cross-checks.
double kappa_closed_form(double z, const RatePoint& rp, const PqParams& params);

// gamma(z) per its defining product formula.
double gamma_term(double z, const PqParams& params);
double gamma_term(double z, const RatePoint& rp, const PqParams& params);

// gamma via the transformed-derivative assembly 1/gamma = g(0) / (f100 f010 sqrt(f002));
// algebraically identical, separate code path for cross-checks.
double gamma_term_assembly(double z, const RatePoint& rp, const PqParams& params);

// P(rescaled q-norm > z) under the cone measure, leading order.
SldEstimate tail_cone(int n, double z, const PqParams& params);

// Same under the uniform measure on the ball.
SldEstimate tail_ball(int n, double z, const PqParams& params);

BallConstants ball_constants(int n, const PqParams& params);

// log vol_n(B_p^n) for any p >= 1 (not restricted to a PqParams pair).
double log_ball_volume(int n, double p);

// vol_n(D_p^n intersect t D_q^n) via the uniform-measure tail at z_eff = t c_{n,p,q}.
// Valid only in the regime A_{p,q} t > 1.
IntersectionEstimate intersection_volume(int n, double t, const PqParams& params);

// Conjugate exponent: q* with 1/q + 1/q* = 1 (q* = 1 at q = infinity).
double conjugate_exponent(double q);

// Tail of the rescaled projection length of B_q^n onto a uniform random line,
// reduced to the cone tail at z/2 under parameters (p=2, q = q_proj^*).
SldEstimate projection_tail(int n, double q_proj, double z);

}  // namespace lpsld

#endif
