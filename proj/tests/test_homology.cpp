#include <doctest.h>

#include <random>

#include "tribill/homology.hpp"

using namespace tribill;

namespace {

ClassVector random_vector(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> d(-20, 20);
    ClassVector v = ClassVector::zero(n);
    for (auto& x : v.c) x = d(rng);
    return v;
}

GeneratorWord random_word(std::mt19937_64& rng, int len) {
    GeneratorWord w;
    for (int i = 0; i < len; ++i) {
        int g = int(rng() % 5);
        if (g == 0)
            w.push_back({Generator::Sigma, 1});
        else
            w.push_back({g < 3 ? Generator::TauO : Generator::TauE, g % 2 ? 1 : -1});
    }
    return w;
}

// Matrix of the homology action of one letter, column j = image of basis vector j.
std::vector<std::vector<long long>> matrix(Letter l, int n) {
    std::vector<std::vector<long long>> m(size_t(2 * n + 1), std::vector<long long>(size_t(2 * n + 1)));
    for (size_t j = 0; j < m.size(); ++j) {
        ClassVector e = ClassVector::zero(n);
        e.c[j] = 1;
        ClassVector img = act(l, e);
        for (size_t i = 0; i < m.size(); ++i) m[i][j] = img.c[i];
    }
    return m;
}

}  // namespace

TEST_CASE("folding classes") {
    FoldingClass f = phi_star(3);
    // 6 b*_1 + g*_-2 + 2 g*_-1 + 3 g*_0 - 2 g*_1 - g*_2
    CHECK(f.phi1.c == std::vector<long long>{6, 0, 1, 2, 3, -2, -1});
    for (int n = 3; n <= 9; ++n) {
        FoldingClass p = phi_star(n);
        CHECK(pairing(p.phi1, ClassVector::beta(n, 1)) == 2 * n);
        CHECK(pairing(p.phim1, ClassVector::beta(n, -1)) == 2 * n);
        CHECK(pairing(p.phi1, ClassVector::gamma(n, 0)) == n);
        CHECK(pairing(p.phim1, ClassVector::gamma(n, 0)) == n);
        for (int k = 1 - n; k <= n - 1; ++k) {
            // Ramps n+k (k <= 0) and k-n (k > 0); the two classes are opposite away from g_0.
            long long a = pairing(p.phi1, ClassVector::gamma(n, k)), b = pairing(p.phim1, ClassVector::gamma(n, k));
            CHECK(a == (k <= 0 ? n + k : k - n));
            CHECK(a + b == (k == 0 ? 2 * n : 0));
        }
    }
}

TEST_CASE("tau_o on a dual basis vector") {
    ClassVector v = act_star({Generator::TauO, 1}, ClassVector::gamma(3, 1));
    ClassVector want = ClassVector::zero(3);
    want.add_g(0, -1);
    want.add_g(1, 1);
    want.add_g(2, -1);
    CHECK(v == want);
}

TEST_CASE("sigma is an involution and every letter is invertible") {
    std::mt19937_64 rng(4);
    for (int n : {3, 4, 6, 9}) {
        for (int t = 0; t < 100; ++t) {
            ClassVector x = random_vector(rng, n);
            CHECK(act({Generator::Sigma, 1}, act({Generator::Sigma, 1}, x)) == x);
            CHECK(act_star({Generator::Sigma, 1}, act_star({Generator::Sigma, 1}, x)) == x);
            for (Generator g : {Generator::TauO, Generator::TauE}) {
                CHECK(act({g, -1}, act({g, 1}, x)) == x);
                CHECK(act_star({g, 1}, act_star({g, -1}, x)) == x);
                CHECK(act_star({g, -1}, x, CohomologyReading::Substitution) !=
                      act_star({g, 1}, x, CohomologyReading::Substitution));
            }
        }
    }
}

TEST_CASE("cohomology action is the inverse transpose") {
    std::mt19937_64 rng(8);
    for (int n : {3, 4, 5, 8}) {
        FoldingClass phi = phi_star(n);
        for (int t = 0; t < 60; ++t) {
            GeneratorWord w = random_word(rng, 1 + int(rng() % 8));
            ClassVector x = random_vector(rng, n);
            for (int i : {1, -1})
                CHECK(pairing(act_word_star(w, phi[i]), x) == pairing(phi[i], act_word(inverse(w), x)));
            ClassVector a = random_vector(rng, n);
            CHECK(pairing(act_word_star(w, a), act_word(w, x)) == pairing(a, x));
        }
    }
}

TEST_CASE("tau letters act by unimodular integer matrices") {
    // Integer inverse exists, so the determinant is +-1: check M * M^{-1} = I.
    for (int n : {3, 5}) {
        for (Generator g : {Generator::TauO, Generator::TauE}) {
            auto M = matrix({g, 1}, n), Mi = matrix({g, -1}, n);
            for (size_t i = 0; i < M.size(); ++i)
                for (size_t j = 0; j < M.size(); ++j) {
                    long long s = 0;
                    for (size_t k = 0; k < M.size(); ++k) s += M[i][k] * Mi[k][j];
                    CHECK(s == (i == j ? 1 : 0));
                }
        }
    }
}

TEST_CASE("generator words") {
    GeneratorWord w = parse_generator_word("e^-1 o^-1 e s");
    REQUIRE(w.size() == 4);
    CHECK(w[0] == Letter{Generator::TauE, -1});
    CHECK(w[3] == Letter{Generator::Sigma, 1});
    CHECK(to_string(parse_generator_word(to_string(w))) == to_string(w));
    CHECK(to_string({}) == "id");
    CHECK(parse_generator_word("tau_o^2 sigma").size() == 2);
    CHECK_THROWS_AS(parse_generator_word("x"), Error);
    ClassVector x = ClassVector::gamma(5, 2);
    CHECK(act_word(inverse(w), act_word(w, x)) == x);
}

TEST_CASE("stability coefficients") {
    // Identity: coefficient of g*_k is n + k or k - n, never zero inside the range.
    for (int k = -2; k <= 2; ++k) CHECK_FALSE(is_stable_class({}, k, 3));
    // The odd-case word o^-1 at n = 3 leaves nonzero coefficients.
    auto c = stability_coefficients(parse_generator_word("o^-1"), 1, 3);
    CHECK(c == std::array<long long, 2>{-2, 2});
    // Searched witnesses.
    CHECK(is_stable_class(parse_generator_word("e^-1"), -1, 3));
    CHECK(is_stable_class(parse_generator_word("e^-1 o e^-1"), -1, 7));
    CHECK(is_stable_class(parse_generator_word("o e^-1 o e^-1"), -2, 6));
    CHECK_THROWS_AS(stability_coefficients({}, 3, 3), Error);
}

TEST_CASE("a stable coefficient pair certifies a null class of the folding map") {
    for (auto [n, word, k] : std::vector<std::tuple<int, const char*, int>>{
             {3, "e^-1", -1}, {5, "e^-1 o e^-1 o^-1", -1}, {6, "o e^-1 o e^-1", -2}}) {
        GeneratorWord w = parse_generator_word(word);
        ClassVector x = act_word(inverse(w), ClassVector::gamma(n, k));
        FoldingClass phi = phi_star(n);
        CHECK(pairing(phi.phi1, x) == 0);
        CHECK(pairing(phi.phim1, x) == 0);
        CHECK(is_stable_class(w, k, n));
    }
}

TEST_CASE("instability invariant") {
    InvariantCheck id = instability_invariant({}, 4);
    CHECK(id.holds);
    CHECK(id.rs[0] == RS{1, 1});
    InvariantCheck s = instability_invariant(parse_generator_word("s"), 4);
    CHECK(s.rs[0] == RS{-1, -1});
    std::mt19937_64 rng(9);
    for (int n : {4, 8, 16})
        for (int t = 0; t < 200; ++t) {
            GeneratorWord w = random_word(rng, 1 + int(rng() % 20));
            InvariantCheck c = instability_invariant(w, n);
            CHECK(c.holds);
            FoldingClass phi = phi_star(n);
            CHECK(matches_mod_2n(act_word_star(w, phi.phi1), c.rs[0]));
            CHECK(matches_mod_2n(act_word_star(w, phi.phim1), c.rs[1]));
        }
}

TEST_CASE("search finds no stable class for powers of two") {
    for (int n : {4, 8}) {
        BfsReport b = homology_bfs(n, 8);
        CHECK(b.invariant_holds);
        CHECK_FALSE(b.stable_found);
        CHECK(b.distinct > 1000);
    }
    BfsReport b = homology_bfs(3, 4, true);
    CHECK(b.stable_found);
    REQUIRE(b.stable);
    CHECK(is_stable_class(b.stable->first, b.stable->second, 3));
}

TEST_CASE("certificates") {
    Certificate c = certificate(9, 0);
    CHECK_FALSE(c.power_of_two);
    CHECK(to_string(c.formula_word) == "o^-4");
    CHECK(c.formula_k == 1);
    REQUIRE(c.witness);
    CHECK(is_stable_class(c.witness->first, c.witness->second, 9));
    CHECK(c.witness_phi == std::array<long long, 2>{0, 0});
    Certificate p = certificate(4, 6);
    CHECK(p.power_of_two);
    CHECK_FALSE(p.witness);
    REQUIRE(p.bfs);
    CHECK(p.bfs->invariant_holds);
}

TEST_CASE("even-case intermediate closed form") {
    // Holds for i = 1 under the substitution reading only.
    for (int n : {6, 10, 12}) {
        CHECK(even_claim_first_failure(n, 1, CohomologyReading::Substitution) == -1);
        CHECK(even_claim_first_failure(n, -1, CohomologyReading::Substitution) == 0);
        CHECK(even_claim_first_failure(n, 1) >= 0);
    }
}
