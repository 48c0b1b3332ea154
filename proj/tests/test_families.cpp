#include <doctest.h>

#include "tribill/families.hpp"

using namespace tribill;

TEST_CASE("family lengths") {
    for (int n = 2; n <= 10; ++n) {
        CHECK(gen_A(n).size() == size_t(8 * n - 2));
        CHECK(gen_Y(n, 1).size() * 2 == gen_A(n).size());
    }
    for (int n = 4; n <= 10; ++n) {
        CHECK(gen_B(n).size() == size_t(40 * n - 60));
        CHECK(gen_C(n).size() == gen_B(n).size());
    }
    for (int n = 3; n <= 8; ++n)
        for (int k = 0; k <= 6; ++k) CHECK((long long)gen_W(n, k).size() == length_W(n, k));
}

TEST_CASE("quadratic W length formula holds only at isolated (n, k)") {
    // A quadratic in k cannot track a length linear in k.
    CHECK(length_W_printed(3, 0) == length_W(3, 0));
    CHECK(length_W_printed(3, 1) != length_W(3, 1));
}

TEST_CASE("family words are valid and stable") {
    for (int n = 2; n <= 8; ++n) {
        CHECK_NOTHROW(validate_word(gen_A(n)));
        CHECK(is_stable_parity(gen_A(n)));
        CHECK_FALSE(is_stable_parity(gen_unstable(n)));
        for (int m = 1; m <= 4; ++m) {
            Word y = gen_Y(n, m);
            CHECK(is_stable_parity(y + y));
        }
    }
    for (int n = 4; n <= 8; ++n) {
        CHECK(is_stable_parity(gen_B(n)));
        CHECK(is_stable_parity(gen_C(n)));
    }
    for (int n = 3; n <= 6; ++n)
        for (int k = 0; k <= 4; ++k) CHECK(is_stable_parity(gen_W(n, k)));
}

TEST_CASE("squarepaths of B and W are closed and generate the words") {
    for (int n = 4; n <= 7; ++n) {
        LatticePath p = squarepath_B(n);
        CHECK(p.closed);
        CHECK(p.vertices.front() == p.vertices.back());
        CHECK(is_cyclic_rotation(word_from_squarepath(p), gen_B(n)));
    }
    for (int n = 3; n <= 5; ++n)
        for (int k = 0; k <= 3; ++k) CHECK(is_cyclic_rotation(word_from_squarepath(squarepath_W(n, k)), gen_W(n, k)));
}

TEST_CASE("parse_family") {
    FamilyId id = parse_family("W:4:3");
    CHECK(id.kind == FamilyKind::W);
    CHECK(id.n == 4);
    CHECK(id.m_or_k == 3);
    CHECK(gen_family(parse_family("A:5")) == gen_A(5));
    CHECK(family_name(parse_family("Y:3:2")) == "Y:3:2");
    CHECK_THROWS_AS(parse_family("Q:4"), Error);
    CHECK_THROWS_AS(parse_family("A"), Error);
    CHECK_THROWS_AS(parse_family("A:x"), Error);
    CHECK_THROWS_AS(gen_B(3), Error);
}

TEST_CASE("Y_{n,1} squared matches A_n up to orientation") {
    for (int n = 2; n <= 6; ++n) {
        Word y = gen_Y(n, 1);
        Word a = gen_A(n);
        CHECK((is_cyclic_rotation(y + y, reversed(a)) || is_cyclic_rotation(y + y, swap12(a))));
    }
}
