// Quadratic rescaling: linear growth of tableaux, limit affine functions,
// the pivot strip and the limit quadrilateral of the W_{nk} tiles.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "tribill/tableau.hpp"

namespace tribill {

// Translation T = (M1, M2), base point X0 = 2 pi (a, b) / N, and the
// homomorphism phi(x, y) = a x + b y mod N.
struct GrowthContext {
    Vec2i T;
    long long a = 1, b = 1, N = 4;

    ParameterPoint X0() const;
    long long phi(Vec2i v) const;
    // T = (2n-2, -(2n-2)), X0 = V_n, phi = x + y mod 4n.
    static GrowthContext veech(int n);
};

// R_k = R_0 + sum_{j<k} R# shifted by j T (the support of the generator copies
// moves by +T at each step).
struct GrowthFamily {
    FourierTableau R0;
    FourierTableau Rsharp;
    GrowthContext ctx;
    FourierTableau at(int k) const;
};

// Extracts R_0 and R# from R_0..R_K (K >= 2) and checks the recurrence exactly.
GrowthFamily detect_growth(const std::vector<FourierTableau>& family, const GrowthContext& ctx);

// Sums of weights over each residue class of phi, and the value sum R(j) E(2 pi i j / N).
std::vector<long long> modular_transform(const FourierTableau& t, const GrowthContext& ctx);
cplx modular_value(const std::vector<long long>& classes);

struct QrtResult {
    double F0 = 0;
    cplx P0, Psharp, Q0, Qsharp;
    cplx delta, delta1, delta2;
    double Delta1 = 0, Delta2 = 0;
    // G(x) = g0 + g1 x1 + g2 x2 = F0 - Delta1 x1 - Delta2 x2
    double g0 = 0, g1 = 0, g2 = 0;
    double G(double x1, double x2) const { return g0 + g1 * x1 + g2 * x2; }
};

inline constexpr double kRealTol = 1e-9;

// Limit of G_k(x) = F_k(X0 + x / k^2), F_k = Im(P_k conj Q_k). With the support
// moving by +T, Delta_j = -M_j delta / 2 + Im(delta_j), delta = det[[P#, P0], [Q#, Q0]],
// delta_j = det[[P#, d_j P#], [Q#, d_j Q#]]. Throws Precondition when P#(X0),
// Q#(X0) or delta is not real.
QrtResult qrt(const GrowthFamily& P, const GrowthFamily& Q);

// sup over sample points |x| <= radius of |G_k(x) - G(x)|, with F_k from the given tableaux.
double qrt_sup_error(const FourierTableau& Pk, const FourierTableau& Qk, int k, const QrtResult& r,
                     const GrowthContext& ctx, double radius = 1.0, int samples = 400);

// Vertices of the W_{nk} unfolding that enter the limit analysis. Spine
// vertices are listed left to right from a1; hinges are the quasi-horizontal
// crossed edges, as (top, bottom, type).
struct PivotData {
    std::array<int, 4> a{}, b{};
    std::array<int, 4> hinge_type{};
    std::vector<int> spine_vertices;
};
PivotData pivot_vertices(const Unfolding& u, int n, int k);

// Named defining function of W_{nk}: "a1:b2", "b2:b3", "b3:a4" (long-edge
// spine) or "a1:b1".."a4:b4" (hinges, short-edge spine). F > 0 iff the pair is
// correctly ordered (tops above bottoms; b3 above b2).
DefiningFunction w_pair_function(int n, int k, const std::string& pair);

struct QrtReport {
    std::string pair;
    int n = 0;
    int d = 3;
    QrtResult result;
    double gtilde_scale = 1;  // sin^2(theta_d(V_n))
    std::vector<std::pair<int, double>> sup_errors;
    std::array<double, 2> fd_delta{};  // -k^{-2} d_j F_k(X0) at the largest k
};
QrtReport qrt_report(int n, const std::string& pair, const std::vector<int>& ks = {10, 20, 40});

// Closed forms: 8cs - 16nc^2 x1 - 16nc^2 x2; -16c^2 x1 + 16c^2 x2; 8cs(1 + x1/C_n - x2/C_n).
std::array<double, 3> expected_limit(int n, const std::string& pair);

struct PivotStrip {
    int n;
    double C;  // |x1 - x2| < C
};
PivotStrip pivot_strip(int n);

struct LimitQuadrilateral {
    int n;
    double zeta, a, mu, sigma, beta;
    // Defining functions (const, x1, x2), positive inside, after scaling by zeta.
    std::array<std::array<double, 3>, 4> functions;
    // Vertices padded with a leading 1.
    std::array<std::array<double, 3>, 4> vertices;
    std::array<std::array<double, 4>, 4> dot;  // dot[i][j] = functions[i] . vertices[j]
    std::array<std::array<double, 4>, 4> dot_expected;  // same indexing as dot
    double area() const;
    bool contains(double x1, double x2) const;
};
LimitQuadrilateral omega(int n);

// Relations among the limit functions: the dot-product pattern, the vertices on
// both boundary lines of zeta * Sigma_n, and symmetry in x1 = x2.
struct OmegaChecks {
    bool pattern = false;
    bool touches_strip = false;
    bool symmetric = false;
    double max_dot_error = 0;
};
OmegaChecks check_omega(int n);

// Omega_n rebuilt from the computed limits: the seven base functions
// G~[a_i,b_i], G~[a1,b2], G~[a4,b3], G~[b2,b3] are combined into all sixteen
// [a_i b_j]; the symmetry and convexity relations among them are checked, and
// [13], [42], [24], [31] rescaled by zeta_n are compared to the defining functions.
struct OmegaDerivation {
    std::array<std::array<std::array<double, 3>, 4>, 4> ab{};  // ab[i][j] = [a_{i+1} b_{j+1}]
    double relation_error = 0;
    double function_error = 0;
};
OmegaDerivation derive_omega(int n);

struct QhFamily {
    long long sum;  // x + y on the family's line
    std::vector<int> sides;
    Vec2i northwest, southeast;
    int nw_type = 0, se_type = 0;
    int nw_side = -1, se_side = -1;
};
struct QhData {
    std::vector<QhFamily> families;  // ordered by line sum
    size_t qh_count = 0, qv_count = 0;
    long long Z = 0;
};
QhData qh_points(const Unfolding& u, int n, int k);
// Extreme points as listed for W_{nk}: (northwest, southeast) for the four families.
std::array<std::pair<Vec2i, Vec2i>, 4> qh_extremes_expected(int n, int k);

// Defining function of a QH edge: F > 0 iff its left endpoint lies above its
// right endpoint (negative slope), built on the spine of the edge's type.
DefiningFunction qh_edge_function(const Unfolding& u, int side);

// max |F_1(x, y) - F_2(y, x)| over a grid near V_n, for each pair of partner
// extreme QH edges (F_j belongs to the partner of type j).
double bilateral_symmetry_error(int n, int k, int grid = 8);

// For labels of a pseudo-parallel family (same X0 . label mod pi), checks at
// samples along the segment X0 -> X1 that negative slope of the two extreme
// edges forces negative slope of all of them. Throws Precondition if the labels
// are not pseudo-parallel at X0.
bool pseudo_parallel_check(const Word& w, const std::vector<Vec2i>& labels, const ParameterPoint& X0,
                           const ParameterPoint& X1, int samples = 100);

}  // namespace tribill
