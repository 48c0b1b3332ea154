// Homology of S(V_n), the folding-map classes phi*_{+-1}, the actions of
// sigma, tau_o, tau_e, and stability certificates for periodic paths in V_n.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tribill/common.hpp"

namespace tribill {

// Coordinates over {b_1, b_-1, g_{1-n}, ..., g_{n-1}} (dimension 2n+1).
struct ClassVector {
    int n = 3;
    std::vector<long long> c;

    static ClassVector zero(int n);
    static ClassVector beta(int n, int i);   // i = +-1
    static ClassVector gamma(int n, int k);  // 1-n <= k <= n-1
    long long& b(int i) { return c[i == 1 ? 0 : 1]; }
    long long b(int i) const { return c[i == 1 ? 0 : 1]; }
    // Zero outside 1-n..n-1.
    long long g(int k) const { return k <= -n || k >= n ? 0 : c[size_t(k + n + 1)]; }
    void add_g(int k, long long v) {
        if (k > -n && k < n) c[size_t(k + n + 1)] += v;
    }
    friend bool operator==(const ClassVector&, const ClassVector&) = default;
};
using HomologyVector = ClassVector;
using CohomologyVector = ClassVector;

// Standard dot product; throws InvalidArgument on mismatched n.
long long pairing(const CohomologyVector& a, const HomologyVector& x);

struct FoldingClass {
    CohomologyVector phi1, phim1;
    const CohomologyVector& operator[](int i) const { return i == 1 ? phi1 : phim1; }
};
FoldingClass phi_star(int n);

enum class Generator { Sigma, TauO, TauE };
struct Letter {
    Generator g = Generator::Sigma;
    int exp = 1;
    friend bool operator==(const Letter&, const Letter&) = default;
};
// w = l_0 l_1 ... l_{m-1}; w(x) applies l_{m-1} first.
using GeneratorWord = std::vector<Letter>;

// Tokens s, o, e (or sigma, tau_o, tau_e) with optional ^exp, e.g. "e^-1 o^-1 e".
GeneratorWord parse_generator_word(const std::string& s);
std::string to_string(const GeneratorWord& w);
GeneratorWord inverse(const GeneratorWord& w);

// How the displayed cohomology formulas are applied: Dual reads them as
// images of dual basis vectors (the inverse transpose of the homology action);
// Substitution reads them as rules for the new coefficients.
enum class CohomologyReading { Dual, Substitution };

HomologyVector act(Letter l, const HomologyVector& x);
CohomologyVector act_star(Letter l, const CohomologyVector& v, CohomologyReading r = CohomologyReading::Dual);
HomologyVector act_word(const GeneratorWord& w, HomologyVector x);
CohomologyVector act_word_star(const GeneratorWord& w, CohomologyVector v,
                            CohomologyReading r = CohomologyReading::Dual);

// g*_k coefficients of w*(phi*_1) and w*(phi*_-1).
std::array<long long, 2> stability_coefficients(const GeneratorWord& w, int k, int n,
                                                CohomologyReading r = CohomologyReading::Dual);
bool is_stable_class(const GeneratorWord& w, int k, int n, CohomologyReading r = CohomologyReading::Dual);

// Odd (r, s) with g*_i coefficient r(i+n) for odd i and s(i+n) for even i, mod 2n.
struct RS {
    long long r = 1, s = 1;
    friend bool operator==(const RS&, const RS&) = default;
};
// Update of (r, s) under one generator of the dual action: sigma negates both,
// tau_o^{+-1} sends s to s -+ 2r, tau_e^{+-1} sends r to r -+ 2s.
RS track(RS a, Letter l);
// True if v matches (r, s) mod 2n with r, s odd.
bool matches_mod_2n(const CohomologyVector& v, RS a);

struct InvariantCheck {
    bool holds = true;
    std::array<RS, 2> rs{};  // for phi*_1 and phi*_-1
    int violation = -1;      // letter index after which the check first failed
};
InvariantCheck instability_invariant(const GeneratorWord& w, int n);

struct BfsReport {
    int n = 4, depth = 12;
    size_t distinct = 0;          // distinct pairs (w*(phi*_1), w*(phi*_-1))
    size_t distinct_mod_2n = 0;   // the same pairs reduced mod 2n
    bool invariant_holds = true;  // for every visited element
    bool stable_found = false;
    std::optional<std::pair<GeneratorWord, int>> stable;  // first stable (w, k) if any
};
// Breadth-first search over words in sigma, tau_o^{+-1}, tau_e^{+-1}.
// With stop_at_stable the search returns at the first stable (w, k).
BfsReport homology_bfs(int n, int depth, bool stop_at_stable = false);

struct Certificate {
    int n = 3;
    bool power_of_two = false;
    // The closed-form witness for n odd or n = 2^a b, b > 1 odd.
    GeneratorWord formula_word;
    int formula_k = 0;
    std::array<long long, 2> formula_coefficients{};
    bool formula_verified = false;
    std::array<long long, 2> formula_coefficients_substitution{};
    // Stable (w, k): the closed form if it verifies, else the first found by search.
    std::optional<std::pair<GeneratorWord, int>> witness;
    HomologyVector witness_class;                   // w^{-1}(g_k)
    std::array<long long, 2> witness_phi{};         // phi*_{+-1} of that class
    std::optional<BfsReport> bfs;  // evidence for powers of two
};
Certificate certificate(int n, int bfs_depth = 12);

// Search for a stable (w, k): breadth first to bfs_depth, then words X^j Y
// with X, Y freely reduced in tau_o^{+-1}, tau_e^{+-1}, |X| <= x_len,
// |Y| <= y_len, 1 <= j <= 3n.
std::optional<std::pair<GeneratorWord, int>> find_stable_class(int n, int bfs_depth = 8, int x_len = 4,
                                                               int y_len = 3);

// The closed form for ((tau_o*)^{-1} tau_e*)^m (phi*_i) on the g* coordinates;
// returns the first m in [0, n/2) where the computed vector differs, or -1.
int even_claim_first_failure(int n, int i, CohomologyReading r = CohomologyReading::Dual);

}  // namespace tribill
