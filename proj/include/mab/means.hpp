#pragma once

#include <stdexcept>

namespace mab {

// Near-zero exponents are routed to the geometric closed form to avoid
// catastrophic cancellation in the 1/m outer exponent.
inline constexpr double kGeometricExponentEps = 1e-9;

struct GwaBounds {
    double m_min = -2.0;
    double m_max = 4.0;
};

// Parameters of the two-argument generalized weighted average:
// alpha weights the second argument, m selects the kind of mean
// (m=1 arithmetic, m->0 geometric, m=-1 harmonic).
class GwaParams {
public:
    GwaParams(double alpha, double m, GwaBounds bounds = {});

    double alpha() const { return alpha_; }
    double m() const { return m_; }

private:
    double alpha_;
    double m_;
};

// mu(x, y | alpha, m) = [(1-alpha)*x^m + alpha*y^m]^(1/m) for nonnegative
// x, y. |m| <= kGeometricExponentEps uses the limit form x^(1-alpha)*y^alpha.
// For m < 0 a zero argument with nonzero weight yields 0 (continuous limit).
double gwa(double x, double y, const GwaParams& params);

}  // namespace mab
