#include "lpsld/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpsld/gengauss.hpp"

namespace lpsld {

namespace {

constexpr int kMaxNewtonIters = 50;
constexpr double kResidualTol = 1e-10;

double residual_norm(const Vec2& g, const Vec2& x) {
    const double scale = std::max({1.0, std::abs(x.x1), std::abs(x.x2)});
    return std::max(std::abs(g.x1 - x.x1), std::abs(g.x2 - x.x2)) / scale;
}

}  // namespace

RatePoint solve_tau(const Vec2& x, const PqParams& params) {
    if (!(x.x1 > 0.0) || !(x.x2 > 0.0))
        throw BadParams("solve_tau: deviation coordinates must be strictly positive");
    // Attainable tilted means satisfy E|X|^q < (E|X|^p)^{q/p} (strict Jensen),
    // so points on or beyond that power-mean boundary admit no finite saddle.
    if (!(x.x1 < std::pow(x.x2, params.q / params.p)))
        throw NotAdmissible("solve_tau: x=(" + std::to_string(x.x1) + ", " + std::to_string(x.x2) +
                            ") lies outside the attainable mean range x1 < x2^{q/p}");

    const double tau2_cap = 1.0 / params.p - kTiltBoundaryMargin;
    double t1 = 0.0, t2 = 0.0;
    CgfEval eval = eval_cgf(Tilt(t1, t2, params), params);
    double res = residual_norm(eval.grad, x);

    int iter = 0;
    for (; iter < kMaxNewtonIters && res > kResidualTol; ++iter) {
        const Sym2 hinv = eval.hess.inverse();
        const double r1 = eval.grad.x1 - x.x1;
        const double r2 = eval.grad.x2 - x.x2;
        const double d1 = -(hinv.a11 * r1 + hinv.a12 * r2);
        const double d2 = -(hinv.a12 * r1 + hinv.a22 * r2);

        // backtracking: halve the step until the iterate stays inside the
        // domain and the residual actually decreases
        double step = 1.0;
        bool accepted = false;
        while (step > 1e-14) {
            const double n1 = t1 + step * d1;
            const double n2 = t2 + step * d2;
            if (n2 < tau2_cap) {
                CgfEval trial = eval_cgf(Tilt(n1, n2, params), params);
                const double trial_res = residual_norm(trial.grad, x);
                if (trial_res < res) {
                    t1 = n1;
                    t2 = n2;
                    eval = trial;
                    res = trial_res;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (t2 > tau2_cap - 1e-4 || t2 + d2 >= tau2_cap)
                throw NotAdmissible("saddle iterates stall at the tau2 boundary; x=(" +
                                    std::to_string(x.x1) + ", " + std::to_string(x.x2) +
                                    ") appears to lie outside the admissible domain");
            throw NumericalBreakdown("Newton step gave no residual decrease at residual " +
                                     std::to_string(res));
        }
    }
    if (res > kResidualTol)
        throw NumericalBreakdown("Newton did not converge in " + std::to_string(kMaxNewtonIters) +
                                 " iterations; residual " + std::to_string(res));

    const Tilt tau(t1, t2, params);
    const double rate = std::max(0.0, x.x1 * t1 + x.x2 * t2 - eval.value);
    return RatePoint{x, tau, rate, eval.hess, eval.hess.inverse(), iter};
}

RatePoint rate_norm(double z, const PqParams& params) {
    const double m = mean_mpq(params);
    if (!(z >= m)) throw BadParams("rate_norm requires z >= m_{p,q}");
    if (!(z < 1.0))
        throw NotAdmissible("rate_norm: z=" + std::to_string(z) +
                            " reaches the essential supremum 1 of the rescaled q-norm "
                            "(power-mean bound); the rate is infinite there");
    return solve_tau({std::pow(z, params.q), 1.0}, params);
}

double rate_uniform(double z, const PqParams& params) { return rate_norm(z, params).rate; }

double density_cone(const Vec2& x, int n, const PqParams& params) {
    if (n < 1) throw BadParams("density_cone: n must be >= 1");
    const RatePoint rp = solve_tau(x, params);
    const double det = rp.hess.det();
    return n / (2.0 * M_PI) * std::exp(-static_cast<double>(n) * rp.rate) / std::sqrt(det);
}

double density_ball(const Vec2& x, double y, int n, const PqParams& params) {
    if (!(y > 0.0) || y > 1.0) throw BadParams("density_ball: radial coordinate y must be in (0,1]");
    return density_cone(x, n, params) * n * std::pow(y, n - 1);
}

}  // namespace lpsld
