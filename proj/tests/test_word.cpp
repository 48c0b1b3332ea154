#include <doctest.h>

#include <random>

#include "tribill/word.hpp"

using namespace tribill;

namespace {

// Alternating letter count: stable iff every letter sits equally often at odd
// and even positions.
bool oracle_stable(const Word& w) {
    int bal[4] = {0, 0, 0, 0};
    for (size_t i = 0; i < w.size(); ++i) bal[w[i] - '0'] += i % 2 ? -1 : 1;
    return bal[1] == 0 && bal[2] == 0 && bal[3] == 0;
}

Word random_word(std::mt19937_64& rng, size_t len) {
    std::uniform_int_distribution<int> d(1, 3);
    while (true) {
        Word w;
        while (w.size() < len) {
            char c = char('0' + d(rng));
            if (w.empty() || c != w.back()) w += c;
        }
        if (w.front() != w.back()) return w;
    }
}

}  // namespace

TEST_CASE("validate_word rejects malformed words") {
    CHECK_THROWS_AS(validate_word(""), Error);
    CHECK_THROWS_AS(validate_word("124"), Error);
    CHECK_THROWS_AS(validate_word("1223"), Error);
    CHECK_THROWS_AS(validate_word("121"), Error);  // cyclic repeat 1..1
    CHECK_NOTHROW(validate_word("121", true));
    CHECK_NOTHROW(validate_word("1213"));
    try {
        validate_word("12x3");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidArgument);
    }
}

TEST_CASE("22-letter word is stable") {
    const Word w = "2323132313123232313131";
    CHECK(w.size() == 22);
    CHECK(is_stable_parity(w));
    CHECK(is_stable_hexpath(w));
    CHECK(hexpath(w).closed);
}

TEST_CASE("parity and hexpath agree with the alternating-count oracle") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 3000; ++t) {
        Word w = random_word(rng, 2 + rng() % 59);
        bool o = oracle_stable(w);
        CHECK(is_stable_parity(w) == o);
        CHECK(is_stable_hexpath(w) == o);
    }
}

TEST_CASE("stability properties") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
        Word w = random_word(rng, 2 + rng() % 40);
        if (w.size() % 2) {
            CHECK_FALSE(is_stable_parity(w));
            CHECK(is_stable_parity(w + w));
        }
        bool s = is_stable_parity(w);
        CHECK(is_stable_parity(swap12(w)) == s);
        if (w.size() % 2 == 0) {
            CHECK(is_stable_parity(reversed(w)) == s);
            CHECK(is_stable_parity(w.substr(2) + w.substr(0, 2)) == s);
        }
    }
}

TEST_CASE("squarepath round trip up to rotation") {
    std::mt19937_64 rng(3);
    int tried = 0;
    for (int t = 0; t < 400 && tried < 60; ++t) {
        Word u = random_word(rng, 3 + 2 * (rng() % 12));
        Word w = u + u;
        ++tried;
        Word back = word_from_squarepath(squarepath(w));
        CHECK(is_cyclic_rotation(back, w));
    }
    CHECK(tried > 10);
}

TEST_CASE("rotation helpers") {
    CHECK(lex_least_rotation("3121") == "1213");
    CHECK(lex_least_rotation(lex_least_rotation("2313")) == lex_least_rotation("2313"));
    CHECK(is_cyclic_rotation("1213", "1312"));
    CHECK_FALSE(is_cyclic_rotation("1213", "1323"));
    CHECK(swap12("1323") == "2313");
    CHECK(reversed("123") == "321");
    CHECK(repeat("12", 3) == "121212");
}

TEST_CASE("edge labels are consistent across shared edges") {
    // Adjacent triangles share the crossed edge, so both see the same label.
    const Word w = "2323132313123232313131";
    auto m3 = long_side_labels(w, 3 * w.size());
    for (size_t i = 1; i < m3.size(); ++i) {
        int d = w[(i - 1) % w.size()] - '0';
        CHECK(side_label(m3[i - 1], d, int((i - 1) % 2)) == side_label(m3[i], d, int(i % 2)));
    }
    CHECK(generator(2) == Vec2i{2, 0});
    CHECK(generator(1) == Vec2i{0, -2});
}
