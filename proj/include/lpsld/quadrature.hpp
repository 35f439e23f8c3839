#ifndef LPSLD_QUADRATURE_HPP
#define LPSLD_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "lpsld/common.hpp"

namespace lpsld {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int subdivisions = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * kKronrodNodes[j]);
        fv[14 - j] = f(c + h * kKronrodNodes[j]);
    }
    fv[7] = f(c);
    double resk = kKronrodWeights[7] * fv[7];
    double resg = kGaussWeights[3] * fv[7];
    for (int j = 0; j < 7; ++j) {
        resk += kKronrodWeights[j] * (fv[j] + fv[14 - j]);
        if (j % 2 == 1) resg += kGaussWeights[j / 2] * (fv[j] + fv[14 - j]);
    }
    value = resk * h;
    err = std::abs((resk - resg) * h);
}

}  // namespace detail

// Adaptive bisection with a global error budget: split the worst interval until
// the summed Kronrod error estimate falls below tol * |integral|.
template <class F>
QuadResult integrate_adaptive(const F& f, double a, double b, double rel_tol = 1e-12,
                              int max_subdiv = 2000) {
    struct Interval {
        double a, b, value, err;
    };
    std::vector<Interval> heap;
    double v0, e0;
    detail::gk15(f, a, b, v0, e0);
    heap.push_back({a, b, v0, e0});

    auto cmp = [](const Interval& x, const Interval& y) { return x.err < y.err; };
    std::make_heap(heap.begin(), heap.end(), cmp);

    double total = v0, total_err = e0;
    int n = 0;
    while (total_err > rel_tol * std::max(std::abs(total), 1e-300) && n < max_subdiv) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Interval worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        Interval left{worst.a, mid, 0, 0}, right{mid, worst.b, 0, 0};
        detail::gk15(f, left.a, left.b, left.value, left.err);
        detail::gk15(f, right.a, right.b, right.value, right.err);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), cmp);
        ++n;
    }
    if (total_err > rel_tol * std::max(std::abs(total), 1e-300) * 100.0)
        throw NumericalBreakdown("quadrature did not converge: abs error estimate " +
                                 std::to_string(total_err));
    return {total, total_err, n};
}

// Integral over [0, infinity) of a decaying integrand. The truncation point is
// grown geometrically until the integrand is below cutoff * (running scale),
// then the finite integral is done adaptively.
template <class F>
QuadResult integrate_halfline(const F& f, double rel_tol = 1e-12, double cutoff = 1e-18,
                              double initial_scale = 1.0) {
    double scale = std::abs(f(0.5)) + std::abs(f(1.0)) + std::abs(initial_scale);
    double y_max = 2.0;
    for (int i = 0; i < 80; ++i) {
        const double fy = std::abs(f(y_max));
        scale = std::max(scale, fy);
        if (fy <= cutoff * scale && std::abs(f(0.75 * y_max)) <= cutoff * scale) break;
        y_max *= 1.5;
    }
    return integrate_adaptive(f, 0.0, y_max, rel_tol);
}

}  // namespace lpsld

#endif
