#include "tribill/common.hpp"

#include <fmt/format.h>

namespace tribill {

void check_point(const ParameterPoint& X, bool general) {
    if (!std::isfinite(X.x1) || !std::isfinite(X.x2))
        fail_arg("parameter point must be finite");
    double bound = general ? kPi : kPi / 2;
    if (X.x1 <= 0 || X.x2 <= 0 || X.x1 + X.x2 >= bound)
        fail_arg(fmt::format("degenerate or out-of-region point ({}, {})", X.x1, X.x2));
}

std::array<std::array<double, 3>, 4> side_length_derivatives(const ParameterPoint& X) {
    double a = X.x1, b = X.x2;
    double S = std::sin(a + b), C = std::cos(a + b);
    double S2 = S * S;
    std::array<std::array<double, 3>, 4> d{};
    // l1 = sin a / sin(a+b), l2 = sin b / sin(a+b)
    d[1][1] = (std::cos(a) * S - std::sin(a) * C) / S2;
    d[1][2] = -std::sin(a) * C / S2;
    d[2][1] = -std::sin(b) * C / S2;
    d[2][2] = (std::cos(b) * S - std::sin(b) * C) / S2;
    return d;
}

TrigConstants::TrigConstants(int n_) : n(n_) {
    if (n < 2) fail_arg("n must be at least 2");
    double t = kPi / (2.0 * n);
    c = std::cos(t);
    s = std::sin(t);
    cp = std::cos(2 * t);
    sp = std::sin(2 * t);
    lambda = 1.0 / (2.0 * c);
    sigma = 1.0 / (2 * c * c - 1);
    omega = expi(t);
}

}  // namespace tribill
