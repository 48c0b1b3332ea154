#include <doctest.h>

#include <algorithm>
#include <random>

#include "tribill/families.hpp"
#include "tribill/unfolding.hpp"

using namespace tribill;

namespace {

cplx reflect(cplx p, cplx a, cplx b) {
    cplx u = (b - a) / std::abs(b - a);
    return a + u * std::conj((p - a) / u);
}

// A horizontal centerline exists iff the height intervals spanned by the
// crossed edges have a common interior point.
bool oracle_member(const Unfolding& u) {
    double lo = -1e300, hi = 1e300;
    for (size_t i = 1; i < u.triangle_count(); ++i) {
        auto [l, r] = u.crossing(i);
        double a = u.height(l), b = u.height(r);
        lo = std::max(lo, std::min(a, b));
        hi = std::min(hi, std::max(a, b));
    }
    return hi - lo > 1e-12;
}

}  // namespace

TEST_CASE("triangles have the side lengths and angles of the parameter point") {
    ParameterPoint X{0.31, 0.42};
    Unfolding u(gen_A(3), X);
    auto len = side_lengths(X);
    for (size_t i = 0; i < u.triangle_count(); ++i) {
        const auto& t = u.triangle(i);
        cplx A = u.position(t[CornerA]), B = u.position(t[CornerB]), C = u.position(t[CornerC]);
        CHECK(std::abs(A - B) == doctest::Approx(len[3]).epsilon(1e-12));
        CHECK(std::abs(B - C) == doctest::Approx(len[1]).epsilon(1e-12));
        CHECK(std::abs(A - C) == doctest::Approx(len[2]).epsilon(1e-12));
        CHECK(std::abs(std::arg((C - A) / (B - A))) == doctest::Approx(X.x1).epsilon(1e-10));
    }
}

TEST_CASE("each triangle is the reflection of the previous one across the crossed edge") {
    for (const Word& w : {gen_A(4), gen_B(4), Word("2323132313123232313131")}) {
        Unfolding u(w, {0.37, 0.36});
        for (size_t i = 1; i < u.triangle_count(); ++i) {
            int d = u.crossing_type(i);
            int moved = d - 1;  // side d is opposite corner d-1
            const auto& p = u.triangle(i - 1);
            const auto& q = u.triangle(i);
            for (int c = 0; c < 3; ++c)
                if (c != moved) CHECK(p[c] == q[c]);
            int e0 = moved == 0 ? 1 : 0, e1 = moved == 2 ? 1 : 2;
            cplx want = reflect(u.position(p[moved]), u.position(p[e0]), u.position(p[e1]));
            CHECK(std::abs(u.position(q[moved]) - want) < 1e-10);
        }
    }
}

TEST_CASE("holonomy is a translation of the whole chain for stable words") {
    Unfolding u(gen_B(5), ParameterPoint::veech(5));
    REQUIRE(u.stable());
    const size_t L = u.period();
    for (size_t i = 0; i + L < u.triangle_count(); i += 7)
        for (int c = 0; c < 3; ++c)
            CHECK(std::abs(u.position(u.triangle(i + L)[c]) - u.position(u.triangle(i)[c]) - u.holonomy()) < 1e-9);
    cplx h = u.holonomy() * u.normalizer();
    CHECK(std::abs(h.imag()) < 1e-12);
    CHECK(h.real() > 0);
}

TEST_CASE("membership agrees with the centerline oracle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-0.02, 0.02);
    int agree = 0, total = 0, members = 0;
    for (int n = 3; n <= 5; ++n) {
        std::vector<Word> ws = {gen_A(n), gen_W(n, 1)};
        if (n >= 4) ws.push_back(gen_B(n));
        for (const Word& w : ws)
            for (int t = 0; t < 40; ++t) {
                ParameterPoint X{kPi / (2 * n) + d(rng), kPi / (2 * n) + d(rng)};
                Unfolding u(w, X);
                Membership m = membership(u);
                bool o = oracle_member(u);
                agree += m.member == o;
                members += o;
                ++total;
            }
    }
    CHECK(agree == total);
    CHECK(members > 0);
    CHECK(members < total);
}

TEST_CASE("22-letter word at V_3") {
    Membership m = membership_geometric("2323132313123232313131", ParameterPoint::veech(3));
    CHECK(m.member);
    CHECK(m.separation > 1e-3);
}

TEST_CASE("membership preconditions") {
    CHECK_THROWS_AS(membership_geometric("123", {0.3, 0.3}, true), Error);
    try {
        membership_geometric("1213", {0.3, 0.3});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Precondition);
    }
    CHECK_THROWS_AS(Unfolding("1213", {0.9, 0.9}), Error);
    CHECK_THROWS_AS(Unfolding("1213", {-0.1, 0.3}), Error);
}

TEST_CASE("W holonomy has the stated length") {
    for (int n = 3; n <= 6; ++n) {
        TrigConstants t(n);
        double psi1 = 12 * (1 + std::cos(kPi / n)), psis = 8 * (1 + std::cos(kPi / n)), psi2 = std::sin(kPi / n);
        for (int k = 0; k <= 4; ++k) {
            Unfolding u(gen_W(n, k), ParameterPoint::veech(n));
            CHECK(std::abs(u.holonomy()) == doctest::Approx(t.lambda * std::abs(cplx(psi1 + psis * k, 4 * psi2))).epsilon(1e-12));
        }
    }
}

TEST_CASE("darts") {
    CHECK(max_dart_order("1313") == 2);
    CHECK(max_dart_order("13231323") >= 1);
    Unfolding u(gen_A(4), {0.38, 0.38});
    DartDecomposition dd = dart_decomposition(u);
    CHECK_FALSE(dd.darts.empty());
    CHECK(dd.max_order == max_dart_order(gen_A(4)));
    CHECK(unfolding_svg(u).find("<svg") == 0);
}
