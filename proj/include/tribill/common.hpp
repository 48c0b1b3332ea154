// Shared value types for the triangle billiards core.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tribill {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

enum class ErrorKind { InvalidArgument, Precondition, Unsupported, Internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_arg(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }
[[noreturn]] inline void fail_pre(const std::string& msg) { throw Error(ErrorKind::Precondition, msg); }

struct Vec2i {
    long long x = 0;
    long long y = 0;
    friend Vec2i operator+(Vec2i a, Vec2i b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2i operator-(Vec2i a, Vec2i b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2i operator-(Vec2i a) { return {-a.x, -a.y}; }
    friend Vec2i operator*(long long k, Vec2i a) { return {k * a.x, k * a.y}; }
    friend auto operator<=>(const Vec2i&, const Vec2i&) = default;
};

struct Vec2iHash {
    size_t operator()(const Vec2i& v) const noexcept {
        return std::hash<long long>()(v.x * 1000003LL ^ (v.y + 0x9e3779b97f4a7c15LL));
    }
};

// A point (x1, x2) of parameter space: the two small angles of the triangle.
struct ParameterPoint {
    double x1 = 0;
    double x2 = 0;

    static ParameterPoint veech(int n) { return {kPi / (2.0 * n), kPi / (2.0 * n)}; }
    double dot(Vec2i v) const { return x1 * double(v.x) + x2 * double(v.y); }
};

// Throws unless x1, x2 > 0 and x1 + x2 < pi/2 (or < pi when general is set).
void check_point(const ParameterPoint& X, bool general = false);

inline cplx expi(double t) { return {std::cos(t), std::sin(t)}; }

// Side lengths with the long side (type 3) of length 1; index 0 unused.
inline std::array<double, 4> side_lengths(const ParameterPoint& X) {
    double s12 = std::sin(X.x1 + X.x2);
    return {0.0, std::sin(X.x1) / s12, std::sin(X.x2) / s12, 1.0};
}

// Partial derivatives d l_d / d x_j, indexed [d][j] with j in {1,2}.
std::array<std::array<double, 3>, 4> side_length_derivatives(const ParameterPoint& X);

// Trigonometric constants attached to the Veech point V_n.
struct TrigConstants {
    int n;
    double c, s, cp, sp, lambda, sigma;
    cplx omega;
    explicit TrigConstants(int n_);
};

}  // namespace tribill
