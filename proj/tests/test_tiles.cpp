#include <doctest.h>

#include "tribill/families.hpp"
#include "tribill/tiles.hpp"
#include "tribill/unfolding.hpp"

using namespace tribill;

TEST_CASE("scan matches pointwise membership") {
    const Word w = gen_A(4);
    Region r{0.33, 0.43, 0.33, 0.43};
    TileRaster t = scan(w, r, 24, 20);
    CHECK(t.member.size() == 24u * 20u);
    size_t count = 0;
    for (int j = 0; j < t.ny; ++j)
        for (int i = 0; i < t.nx; ++i) {
            Membership m = membership_geometric(w, t.center(i, j));
            CHECK(t.at(i, j) == m.member);
            CHECK(t.sep(i, j) == doctest::Approx(m.separation).epsilon(1e-12));
            count += m.member;
        }
    CHECK(t.count() == count);
    CHECK(count > 0);
    CHECK(count < t.member.size());
}

TEST_CASE("scan arguments") {
    CHECK_THROWS_AS(scan("1213", {0.3, 0.3, 0.3, 0.4}, 4, 4), Error);
    CHECK_THROWS_AS(scan("1213", {0.3, 0.4, 0.3, 0.4}, 0, 4), Error);
    CHECK_THROWS_AS(scan("1213", {0.8, 0.9, 0.8, 0.9}, 4, 4), Error);
    try {
        scan("121323", {0.3, 0.4, 0.3, 0.4}, 4, 4);
        FAIL("unstable word accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Precondition);
    }
}

TEST_CASE("boundary polylines follow the zero level of the separation") {
    TileRaster t = scan(gen_A(3), {0.45, 0.6, 0.45, 0.6}, 60, 60);
    auto lines = boundary_polyline(t);
    REQUIRE_FALSE(lines.empty());
    double tol = 2 * std::max(t.cell_width(), t.cell_height());
    for (const auto& l : lines)
        for (const ParameterPoint& p : l) {
            // A boundary point has both member and non-member points within a cell.
            bool in = false, out = false;
            for (double dx : {-tol, 0.0, tol})
                for (double dy : {-tol, 0.0, tol}) {
                    bool m = membership_geometric(gen_A(3), {p.x1 + dx, p.x2 + dy}).member;
                    in = in || m;
                    out = out || !m;
                }
            CHECK(in);
            CHECK(out);
        }
}

TEST_CASE("renderings") {
    TileRaster t = scan(gen_A(4), {0.35, 0.42, 0.35, 0.42}, 16, 16);
    std::string png = raster_png_bytes(t);
    REQUIRE(png.size() > 8);
    CHECK(png.substr(1, 3) == "PNG");
    CHECK(raster_svg(t).find("<svg") != std::string::npos);
}

TEST_CASE("Y coverage of the diagonal") {
    for (int n = 2; n <= 5; ++n) {
        double a = kPi / (2 * n + 2), b = kPi / (2 * n);
        auto m = coverage_Y(n, 0.5 * (kPi / (2 * n + 1) + b), 64);
        REQUIRE(m);
        CHECK(*m == 1);
        auto m2 = coverage_Y(n, a + 0.1 * (b - a), 64);
        REQUIRE(m2);
        Word y = gen_Y(n, *m2);
        double x = a + 0.1 * (b - a);
        CHECK(membership_geometric(y + y, {x, x}).member);
        if (*m2 > 1) {
            Word y1 = gen_Y(n, *m2 - 1);
            CHECK_FALSE(membership_geometric(y1 + y1, {x, x}).member);
        }
    }
    CHECK_THROWS_AS(coverage_Y(3, 0.1), Error);
}

TEST_CASE("quadrant coverage at V_4") {
    QuadrantCoverage c = quadrant_epsilon(gen_A(4), 4, {-1, -1}, 64);
    CHECK(c.epsilon >= 1e-4);
}
