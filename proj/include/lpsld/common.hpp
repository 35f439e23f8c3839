#ifndef LPSLD_COMMON_HPP
#define LPSLD_COMMON_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace lpsld {

// Machine-readable error codes, mirrored by the CLI exit codes.
enum class ErrorCode {
    BadParams = 2,
    NotAdmissible = 3,
    RegimeViolation = 4,
    NumericalFailure = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

struct BadParams : Error {
    explicit BadParams(const std::string& what) : Error(ErrorCode::BadParams, what) {}
};

// The saddle equation has no interior solution for this deviation point.
struct NotAdmissible : Error {
    explicit NotAdmissible(const std::string& what) : Error(ErrorCode::NotAdmissible, what) {}
};

// Tilt outside the effective domain of the c.g.f.
struct DomainViolation : Error {
    explicit DomainViolation(const std::string& what) : Error(ErrorCode::BadParams, what) {}
};

struct RegimeViolation : Error {
    explicit RegimeViolation(const std::string& what) : Error(ErrorCode::RegimeViolation, what) {}
};

struct NumericalBreakdown : Error {
    explicit NumericalBreakdown(const std::string& what) : Error(ErrorCode::NumericalFailure, what) {}
};

// Exponent pair with 1 <= q < p < infinity, validated once and passed around by value.
struct PqParams {
    double p;
    double q;

    PqParams(double p_, double q_) : p(p_), q(q_) {
        if (!std::isfinite(p) || !std::isfinite(q) || q < 1.0 || q >= p)
            throw BadParams("PqParams requires 1 <= q < p < infinity, got p=" + std::to_string(p_) +
                            " q=" + std::to_string(q_));
    }
};

// Symmetric 2x2 matrix, stored as (a11, a12, a22).
struct Sym2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;

    double det() const { return a11 * a22 - a12 * a12; }
    double trace() const { return a11 + a22; }

    bool positive_definite() const { return a11 > 0.0 && det() > 0.0; }

    Sym2 inverse() const {
        const double d = det();
        if (d == 0.0) throw NumericalBreakdown("singular 2x2 matrix");
        return {a22 / d, -a12 / d, a11 / d};
    }

    // quadratic form <A v, v>
    double quad(double v1, double v2) const {
        return a11 * v1 * v1 + 2.0 * a12 * v1 * v2 + a22 * v2 * v2;
    }
};

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

}  // namespace lpsld

#endif
