// Unfoldings near the Veech points: the A_n sign function, and for B_n the
// master lists, connecting paths, leaders and derivative signs.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tribill/tableau.hpp"

namespace tribill {

// Laurent polynomial in omega with integer coefficients.
class Laurent {
public:
    Laurent() = default;
    static Laurent monomial(int e, long long c = 1);

    long long coeff(int e) const;
    const std::map<int, long long>& terms() const { return terms_; }
    Laurent conj() const;  // omega -> omega^{-1}
    // Exact division by omega + omega^{-1}; throws Internal if not divisible.
    Laurent div_omega_sum() const;
    cplx evaluate(cplx omega) const;

    friend Laurent operator+(const Laurent& a, const Laurent& b);
    friend Laurent operator-(const Laurent& a, const Laurent& b);
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

private:
    void add(int e, long long c);
    std::map<int, long long> terms_;
};

// Squarepath vertices of B_n and the exponent L(i) with omega^{L(i)} equal to
// the signed contribution of vertex i at V_n (reduced to (-2n, 2n]).
struct MasterLists {
    int n = 4;
    std::array<int, 20> L{};
    std::array<Vec2i, 20> vertex{};
};
MasterLists master_lists(int n);

// Q(V_n) = sum_i omega^{L(i)} from the master list.
cplx master_holonomy(int n);
Laurent master_holonomy_laurent();

// Connecting path from b1 = (1,L,I): -lambda, then the first s = beta - 1
// spine edges, then the ramp delta in {-1, 0, 1}. Returns (a1, a2, a3) with
// Im(P conj Q) a positive multiple of sum a_j sin(j pi / n).
std::array<long long, 3> elim_vector(int beta, int delta);
int elim_sign(int n, int beta, int delta);

struct BPathVertex {
    int beta = 0, delta = 0;
    int vertex = -1;  // -1 if the endpoint is not a vertex of the unfolding
    bool top = false, bottom = false;
    double height = 0;  // relative to b1, long edges of length 1
    std::array<long long, 3> a{};
    std::vector<std::string> addresses;  // (K,L|R,I|O) names of the endpoint
};
// All 60 paths evaluated in U(B_n, V_n).
std::vector<BPathVertex> elim_paths(int n);

struct Leader {
    int vertex = -1;
    bool top = false;
    double height = 0;
    int beta = 0, delta = 0;
    std::vector<std::string> addresses;
};
struct LeaderReport {
    int n = 4;
    std::vector<Leader> leaders;
    double spread = 0;      // max - min height over the leaders
    double separation = 0;  // min distance of any other superior vertex from the leader height
    size_t superior_count = 0;
};
// Lowest top and highest bottom superior vertices of U(B_n, V_n).
LeaderReport leaders_B(int n);

// The six vertices alpha_1..3 (tops) and beta_1..3 (bottoms) as vertex ids.
struct BLeaderVertices {
    std::array<int, 3> alpha{}, beta{};
    int a1 = -1, b1 = -1;
};
BLeaderVertices b_leader_vertices(const Unfolding& u, int n);

struct H11Report {
    int n = 4;
    double max_residual = 0;
    double off_line = 0;  // |H11| at a point off the line
    bool bijection = false;
};
// H11 = height(alpha_1) - height(beta_1) on x1 = pi/2n for the given x2 values;
// also checks Q - P = -P shifted by (2n, 0) term by term.
H11Report H11_on_line(int n, const std::vector<double>& y_grid);

struct FinalDerivatives {
    int n = 4;
    // [i][j]: d_k Im(P_ij conj Q) at V_n, P_ij from beta_j to alpha_i.
    std::array<std::array<double, 3>, 3> d1{}, d2{};
    std::array<std::array<double, 3>, 3> fd1{}, fd2{};  // central differences
    double max_fd_rel_error = 0;
    bool signs_ok = false;  // d1 < 0, d2 >= 0 with equality only at (1,1)
};
FinalDerivatives final_derivatives(int n, double h = 1e-6);

// A_n pair (a1, b_{2n}): F on the line x1 + x2 = pi/n against -4 sin^2(n x) sin(2n x), x = x2.
struct ALineCheck {
    int n = 2;
    double scale = 0;  // fitted F / closed form
    double max_error = 0;
    bool sign_ok = false;  // F < 0 iff x2 < pi/2n
};
ALineCheck a_line_check(int n, int samples = 200);
// F(a1, b_{2n}) for A_n at X.
double a_pair_F(int n, const ParameterPoint& X);

}  // namespace tribill
