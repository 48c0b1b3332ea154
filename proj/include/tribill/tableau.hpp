// Integer Fourier tableaux and defining functions.
#pragma once

#include <array>
#include <map>
#include <vector>

#include "tribill/common.hpp"
#include "tribill/unfolding.hpp"

namespace tribill {

// Finite map Z^2 -> Z; evaluates to sum w * E(X . V).
class FourierTableau {
public:
    FourierTableau() = default;

    void add(Vec2i v, long long w);
    long long at(Vec2i v) const;
    const std::map<Vec2i, long long>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    cplx evaluate(const ParameterPoint& X) const;
    // Partial derivative in x_j (j = 1 or 2).
    cplx derivative(const ParameterPoint& X, int j) const;

    FourierTableau shifted(Vec2i t) const;
    FourierTableau operator-() const;
    friend FourierTableau operator+(const FourierTableau& a, const FourierTableau& b);
    friend FourierTableau operator-(const FourierTableau& a, const FourierTableau& b);
    friend bool operator==(const FourierTableau& a, const FourierTableau& b) { return a.terms_ == b.terms_; }

    // Builds a tableau from vertex coordinates with alternating signs, the first
    // entry carrying global_sign.
    static FourierTableau alternating(const std::vector<Vec2i>& pts, int global_sign = 1);

private:
    std::map<Vec2i, long long> terms_;
};

// One tableau per side type; the vector of a path is sum_d l_d(X) * T_d(X).
struct MixedTableau {
    std::array<FourierTableau, 4> by_type;  // index 0 unused
    cplx evaluate(const ParameterPoint& X) const;
    cplx derivative(const ParameterPoint& X, int j) const;
    bool pure(int d) const;
};

// Shortest path of sides with allowed types from vertex a to vertex b; returns
// (side index, +1 along canonical orientation or -1 against). Empty if a == b.
// Throws Precondition if the vertices are not connected that way.
std::vector<std::pair<int, int>> side_path(const Unfolding& u, int a, int b, std::array<bool, 4> allowed);

MixedTableau path_tableau(const Unfolding& u, int a, int b, std::array<bool, 4> allowed = {false, true, true, true});

// F = Im(P conj Q) with P, Q built from type-d edges.
struct DefiningFunction {
    FourierTableau P;
    FourierTableau Q;
    int d = 3;

    double F(const ParameterPoint& X) const;
    // sin^2(theta_d) F: the height difference at a common scale.
    double F_normalized(const ParameterPoint& X) const;
    // Partial derivative of F in x_j.
    double dF(const ParameterPoint& X, int j) const;
};

// P: d-path from p to q, Q: d-path from p to its translate. F > 0 iff q lies above p.
DefiningFunction build_PQ(const Unfolding& u, int p, int q, int d);

// Global sign (-1)^u of the long-edge squarepath rule: u counts the vertices of
// Q-hat before the first vertex of P-hat. Throws Unsupported when that first
// vertex is not a vertex of Q-hat.
int global_sign_rule(const std::vector<Vec2i>& q_hat, const std::vector<Vec2i>& p_hat);

// sin(theta_d): sine of the angle opposite side d.
double sin_theta(const ParameterPoint& X, int d);

// Height difference q - p at scale sin(theta_3) for the long edge, computed from
// a mixed path: sin^2(theta_3) Im(P conj H).
double height_function(const MixedTableau& P, const MixedTableau& H, const ParameterPoint& X);

}  // namespace tribill
