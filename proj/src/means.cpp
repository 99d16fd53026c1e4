#include "mab/means.hpp"

#include <cmath>
#include <string>

namespace mab {

GwaParams::GwaParams(double alpha, double m, GwaBounds bounds)
    : alpha_(alpha), m_(m) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::domain_error("GwaParams: alpha must be in [0, 1], got " +
                                std::to_string(alpha));
    }
    if (!std::isfinite(m)) {
        throw std::domain_error("GwaParams: m must be finite");
    }
    if (m < bounds.m_min || m > bounds.m_max) {
        throw std::domain_error(
            "GwaParams: m = " + std::to_string(m) + " outside configured range [" +
            std::to_string(bounds.m_min) + ", " + std::to_string(bounds.m_max) + "]");
    }
}

double gwa(double x, double y, const GwaParams& params) {
    if (!(x >= 0.0) || !(y >= 0.0)) {
        throw std::domain_error("gwa: arguments must be nonnegative");
    }
    const double a = params.alpha();
    const double m = params.m();

    // Boundary weights return the argument exactly.
    if (a == 0.0) return x;
    if (a == 1.0) return y;

    if (std::abs(m) <= kGeometricExponentEps) {
        return std::pow(x, 1.0 - a) * std::pow(y, a);
    }
    if (m < 0.0 && (x == 0.0 || y == 0.0)) {
        // x^m diverges and the negative outer exponent drives mu to 0.
        return 0.0;
    }
    return std::pow((1.0 - a) * std::pow(x, m) + a * std::pow(y, m), 1.0 / m);
}

}  // namespace mab
