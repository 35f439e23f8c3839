#include "lpsld/gengauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lpsld {

static void check_p(double p) {
    if (!std::isfinite(p) || p < 1.0) throw BadParams("exponent p must be finite and >= 1");
}

double density_fp(double y, double p) {
    check_p(p);
    // normalizer via log-gamma so large p stays overflow-free
    const double log_norm = std::log(2.0) + std::log(p) / p + std::lgamma(1.0 + 1.0 / p);
    return std::exp(-std::pow(std::abs(y), p) / p - log_norm);
}

double moment_Mp(double p, double r) {
    check_p(p);
    if (!std::isfinite(r) || r <= -1.0) throw BadParams("moment order r must be > -1");
    if (r == 0.0) return 1.0;
    const double log_m = (r / p) * std::log(p) + std::lgamma(1.0 + (r + 1.0) / p) -
                         std::log(r + 1.0) - std::lgamma(1.0 + 1.0 / p);
    return std::exp(log_m);
}

double mean_mpq(const PqParams& params) {
    return std::pow(moment_Mp(params.p, params.q), 1.0 / params.q);
}

double sample_np(double p, RngStream& rng) {
    check_p(p);
    const double g = rng.gamma(1.0 / p, p);
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    return sign * std::pow(g, 1.0 / p);
}

LpVector sample_cone(int n, double p, RngStream& rng) {
    if (n < 1) throw BadParams("dimension n must be >= 1");
    check_p(p);
    LpVector out;
    out.p = p;
    out.coords.resize(static_cast<std::size_t>(n));
    double sum_p = 0.0;
    for (auto& c : out.coords) {
        c = sample_np(p, rng);
        sum_p += std::pow(std::abs(c), p);
    }
    const double norm = std::pow(sum_p, 1.0 / p);
    for (auto& c : out.coords) c /= norm;
    return out;
}

LpVector sample_ball(int n, double p, RngStream& rng) {
    LpVector out = sample_cone(n, p, rng);
    const double radial = std::pow(rng.uniform(), 1.0 / n);
    for (auto& c : out.coords) c *= radial;
    return out;
}

double lp_norm(std::span<const double> x, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
    if (p < 1.0 || std::isnan(p)) throw BadParams("lp_norm requires p >= 1");
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

}  // namespace lpsld
