#include "lpsld/cgf.hpp"

#include <cmath>

#include "lpsld/quadrature.hpp"

namespace lpsld {

namespace {

double log_normalizer(double p) {
    return std::log(2.0) + std::log(p) / p + std::lgamma(1.0 + 1.0 / p);
}

// Laplace frame for the exponent e(y) = t y^q - c y^p / p over y >= 0 (c > 0):
// location of the maximum, a step scale that resolves the peak, and the
// exponent value there (subtracted to keep exp() in range).  For t > 0 the
// maximum sits at y* = (t q / c)^{1/(p-q)}, which can be astronomically large
// when p - q is small, with Gaussian curvature e''(y*) = -c (p-q) y*^{p-2}.
struct TiltedFrame {
    double center;
    double scale;
    double shift;
    double peak_amp;  // A = t y*^q, the exponent magnitude at the maximum
};

TiltedFrame tilted_frame(double t, double c, double p, double q) {
    const double width = std::pow(p / c, 1.0 / p);  // decay scale of the untilted factor
    if (t <= 0.0) return {0.0, width, 0.0, 0.0};
    const double y_star = std::pow(t * q / c, 1.0 / (p - q));
    const double amp = t * std::pow(y_star, q);
    const double shift = amp * (1.0 - q / p);  // e(y*), using t q y*^q = c y*^p
    if (!(y_star > width)) return {0.0, width, shift, amp};  // shallow peak inside the bulk
    const double sigma = 1.0 / std::sqrt(c * (p - q) * std::pow(y_star, p - 2.0));
    return {y_star, std::min(width, sigma), shift, amp};
}

// Exponent drop from the maximum for the peaked frame, free of the massive
// cancellation that a direct t y^q - c y^p / p - shift evaluation suffers when
// the exponent at the peak dwarfs machine precision.  With y = y*(1+x) and the
// stationarity t q y*^q = c y*^p,
//   e(y) - e(y*) = A [ (1+x)^q - 1 - (q/p)((1+x)^p - 1) ],  A = t y*^q,
// and the bracket expands as sum_{k>=2} q (q^{k-1} - p^{k-1}) L^k / k! with
// L = log(1+x), used when the direct expm1 difference would cancel.
double peak_exponent_drop(double amp, double x, double p, double q) {
    const double L = std::log1p(x);
    if (std::abs(L) * p < 0.5) {
        double qk = q, pk = p, Lk = L, fact = 1.0, sum = 0.0;
        for (int k = 2; k < 80; ++k) {
            Lk *= L;
            fact *= k;
            const double term = q * (qk - pk) * Lk / fact;
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            qk *= q;
            pk *= p;
        }
        return amp * sum;
    }
    return amp * (std::expm1(q * L) - q / p * std::expm1(p * L));
}

// Integral over y >= 0 of weight(y) * exp(t y^q - c y^p / p - fr.shift), split
// at the maximum so the peak sits at an endpoint of each half-line piece.
template <class W>
double tilted_integral(const TiltedFrame& fr, const W& weight, double t, double c, double p,
                       double q) {
    if (fr.center > 0.0) {
        auto h = [&](double x) {
            if (x <= -1.0) return 0.0;
            return weight(fr.center * (1.0 + x)) * std::exp(peak_exponent_drop(fr.peak_amp, x, p, q));
        };
        const double rel = fr.scale / fr.center;
        double total =
            integrate_halfline([&](double w) { return h(rel * w); }, 1e-13).value;
        // left of the peak the domain ends at y = 0 (w = 1/rel), where the
        // integrand is still positive; integrate the finite interval with the
        // endpoint aligned to that edge instead of truncating mid-panel
        auto left = [&](double w) { return h(-rel * w); };
        const double w_edge = 1.0 / rel;
        double w_hi = 2.0;
        const double ref = std::abs(left(0.0));
        while (w_hi < w_edge && std::abs(left(w_hi)) > 1e-18 * ref) w_hi *= 1.5;
        w_hi = std::min(w_hi, w_edge);
        total += integrate_adaptive(left, 0.0, w_hi, 1e-13).value;
        return fr.scale * total;
    }
    auto h = [&](double y) {
        return weight(y) * std::exp(t * std::pow(y, q) - c * std::pow(y, p) / p - fr.shift);
    };
    return fr.scale *
           integrate_halfline([&](double w) { return h(fr.scale * w); }, 1e-13).value;
}

// log E exp(t |X|^q), X ~ N_p
double log_phi_absq(double t, const PqParams& params) {
    const double p = params.p, q = params.q;
    const TiltedFrame fr = tilted_frame(t, 1.0, p, q);
    const double raw = tilted_integral(fr, [](double) { return 1.0; }, t, 1.0, p, q);
    return fr.shift + std::log(2.0 * raw) - log_normalizer(p);
}

}  // namespace

double phi_absq(double t, const PqParams& params) {
    if (!std::isfinite(t)) throw BadParams("phi_absq: t must be finite");
    return std::exp(log_phi_absq(t, params));
}

double lambda_p(const Tilt& tau, const PqParams& params) {
    const double p = params.p;
    const double one_minus = 1.0 - p * tau.tau2;
    const double t_eff = tau.tau1 * std::pow(one_minus, -params.q / p);
    return -std::log(one_minus) / p + log_phi_absq(t_eff, params);
}

CgfEval eval_cgf(const Tilt& tau, const PqParams& params) {
    const double p = params.p, q = params.q;
    const double c = 1.0 - p * tau.tau2;
    const TiltedFrame fr = tilted_frame(tau.tau1, c, p, q);

    // tilted absolute-moment integrals of order m in {0, q, p, 2q, q+p, 2p},
    // each its own quadrature with its own error budget; moments are weighted
    // by (y / Y)^m and the scale Y^m reapplied after the ratio so huge peaks
    // stay representable
    const double Y = std::max(fr.center, fr.scale);
    auto moment = [&](double m) {
        auto weight = [&](double y) { return m == 0.0 ? 1.0 : std::pow(y / Y, m); };
        return tilted_integral(fr, weight, tau.tau1, c, p, q);
    };

    const double i0 = moment(0.0);
    if (!(i0 > 0.0) || !std::isfinite(i0))
        throw NumericalBreakdown("cgf normalization integral is not positive finite");
    const double gq = std::pow(Y, q) * moment(q) / i0;
    const double gp = std::pow(Y, p) * moment(p) / i0;
    const double cqq = std::pow(Y, 2.0 * q) * moment(2.0 * q) / i0 - gq * gq;
    const double cqp = std::pow(Y, q + p) * moment(q + p) / i0 - gq * gp;
    const double cpp = std::pow(Y, 2.0 * p) * moment(2.0 * p) / i0 - gp * gp;

    CgfEval out;
    out.value = lambda_p(tau, params);
    out.grad = {gq, gp};
    out.hess = {cqq, cqp, cpp};
    if (!out.hess.positive_definite())
        throw NumericalBreakdown("tilted covariance lost positive definiteness");
    return out;
}

Vec2 grad_lambda(const Tilt& tau, const PqParams& params) { return eval_cgf(tau, params).grad; }

Sym2 hess_lambda(const Tilt& tau, const PqParams& params) { return eval_cgf(tau, params).hess; }

}  // namespace lpsld
