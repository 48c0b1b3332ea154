#include <doctest.h>

#include "tribill/families.hpp"
#include "tribill/rescaling.hpp"

using namespace tribill;

TEST_CASE("growth family reproduces every member") {
    for (int n = 3; n <= 5; ++n) {
        std::vector<FourierTableau> Q;
        for (int k = 0; k <= 4; ++k) Q.push_back(w_pair_function(n, k, "a1:b2").Q);
        GrowthFamily g = detect_growth(Q, GrowthContext::veech(n));
        for (int k = 0; k <= 4; ++k) CHECK(g.at(k) == Q[size_t(k)]);
        CHECK(g.at(6) == w_pair_function(n, 6, "a1:b2").Q);
    }
}

TEST_CASE("growth detection rejects a broken family") {
    std::vector<FourierTableau> Q;
    for (int k = 0; k <= 3; ++k) Q.push_back(w_pair_function(3, k, "a1:b2").Q);
    Q[2].add({100, 100}, 1);
    CHECK_THROWS_AS(detect_growth(Q, GrowthContext::veech(3)), Error);
}

TEST_CASE("modular value of Q# is real at the base point") {
    for (int n = 3; n <= 6; ++n) {
        GrowthContext ctx = GrowthContext::veech(n);
        std::vector<FourierTableau> Q;
        for (int k = 0; k <= 3; ++k) Q.push_back(w_pair_function(n, k, "a1:b2").Q);
        GrowthFamily g = detect_growth(Q, ctx);
        cplx v = g.Rsharp.evaluate(ctx.X0());
        CHECK(std::abs(v.imag()) < 1e-9);
        CHECK(std::abs(modular_value(modular_transform(g.Rsharp, ctx)) - v) < 1e-9);
    }
}

TEST_CASE("rescaled limits in closed form") {
    for (int n = 3; n <= 6; ++n) {
        TrigConstants t(n);
        double c = t.c, s = t.s, C = pivot_strip(n).C;
        QrtReport a = qrt_report(n, "a1:b2", {10, 20});
        CHECK(a.result.g0 == doctest::Approx(8 * c * s).epsilon(1e-9));
        CHECK(a.result.g1 == doctest::Approx(-16 * n * c * c).epsilon(1e-9));
        CHECK(a.result.g2 == doctest::Approx(-16 * n * c * c).epsilon(1e-9));
        QrtReport b = qrt_report(n, "b2:b3", {10, 20});
        CHECK(std::abs(b.result.g0) < 1e-9);
        CHECK(b.result.g1 == doctest::Approx(-16 * c * c).epsilon(1e-9));
        CHECK(b.result.g2 == doctest::Approx(16 * c * c).epsilon(1e-9));
        QrtReport h = qrt_report(n, "a1:b1", {10, 20});
        CHECK(h.result.g1 == doctest::Approx(8 * c * s / C).epsilon(1e-9));
        CHECK(h.result.g2 == doctest::Approx(-8 * c * s / C).epsilon(1e-9));
        CHECK(C == doctest::Approx(std::tan(kPi / (2 * n)) / (2 * n - 2)).epsilon(1e-12));
    }
}

TEST_CASE("rescaled defining functions converge") {
    QrtReport r = qrt_report(4, "a1:b2", {10, 20, 40, 80});
    for (size_t i = 1; i < r.sup_errors.size(); ++i) CHECK(r.sup_errors[i].second < r.sup_errors[i - 1].second);
    // Error decays like 1/k.
    CHECK(r.sup_errors[3].second * 80 == doctest::Approx(r.sup_errors[2].second * 40).epsilon(0.25));
}

TEST_CASE("limit quadrilateral") {
    for (int n = 3; n <= 8; ++n) {
        LimitQuadrilateral q = omega(n);
        CHECK(q.zeta == doctest::Approx(2 * (n - 1) / std::tan(kPi / (2 * n))).epsilon(1e-12));
        CHECK(q.area() > 0);
        double cx = 0, cy = 0;
        for (const auto& v : q.vertices) {
            cx += v[1] / 4;
            cy += v[2] / 4;
        }
        CHECK(q.contains(cx, cy));
        CHECK(std::abs(cx - cy) < 1e-12);
        for (int i = 0; i < 4; ++i) {
            int zeros = 0;
            for (int j = 0; j < 4; ++j) {
                CHECK(q.dot[size_t(i)][size_t(j)] > -1e-12);
                zeros += std::abs(q.dot[size_t(i)][size_t(j)]) < 1e-12;
            }
            CHECK(zeros == 2);
        }
        OmegaChecks oc = check_omega(n);
        CHECK(oc.pattern);
        CHECK(oc.touches_strip);
        CHECK(oc.symmetric);
    }
}

TEST_CASE("QH extreme points") {
    for (int n = 3; n <= 5; ++n)
        for (int k = 0; k <= 3; ++k) {
            Unfolding u(gen_W(n, k), ParameterPoint::veech(n));
            QhData d = qh_points(u, n, k);
            auto want = qh_extremes_expected(n, k);
            REQUIRE(d.families.size() == 4);
            for (size_t i = 0; i < 4; ++i) {
                CHECK(d.families[i].northwest == want[i].first);
                CHECK(d.families[i].southeast == want[i].second);
            }
        }
}
