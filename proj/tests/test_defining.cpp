#include <doctest.h>

#include <random>

#include "tribill/families.hpp"
#include "tribill/tableau.hpp"
#include "tribill/veech.hpp"

using namespace tribill;

TEST_CASE("tableau evaluation matches the direct trigonometric sum") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> c(-9, 9);
    for (int t = 0; t < 20; ++t) {
        FourierTableau T;
        std::vector<std::tuple<int, int, int>> terms;
        for (int j = 0; j < 8; ++j) {
            int x = c(rng), y = c(rng), w = c(rng);
            T.add({x, y}, w);
            terms.emplace_back(x, y, w);
        }
        ParameterPoint X{0.1 + 0.01 * t, 0.4 - 0.01 * t};
        cplx want = 0;
        for (auto [x, y, w] : terms) want += double(w) * std::polar(1.0, x * X.x1 + y * X.x2);
        CHECK(std::abs(T.evaluate(X) - want) < 1e-12);
        const double h = 1e-6;
        for (int j = 1; j <= 2; ++j) {
            ParameterPoint a = X, b = X;
            (j == 1 ? a.x1 : a.x2) += h;
            (j == 1 ? b.x1 : b.x2) -= h;
            CHECK(std::abs(T.derivative(X, j) - (T.evaluate(a) - T.evaluate(b)) / (2 * h)) < 1e-6);
        }
    }
}

TEST_CASE("tableau algebra") {
    FourierTableau a, b;
    a.add({1, 0}, 2);
    a.add({0, 1}, -1);
    b.add({1, 0}, -2);
    CHECK((a + b).size() == 1);
    CHECK((a - a).empty());
    CHECK(a.shifted({2, 2}).at({3, 2}) == 2);
    CHECK(FourierTableau::alternating({{0, 0}, {1, 1}, {2, 2}}, -1).at({1, 1}) == 1);
}

TEST_CASE("Laurent polynomial of the B master holonomy") {
    Laurent q = master_holonomy_laurent();
    CHECK(q.coeff(1) == 8);
    CHECK(q.coeff(3) == 4);
    CHECK(q.coeff(-1) == 6);
    CHECK(q.coeff(-3) == 2);
    CHECK(q.terms().size() == 4);
    for (int n = 4; n <= 12; ++n) {
        cplx w = TrigConstants(n).omega;
        CHECK(std::abs(q.evaluate(w) - master_holonomy(n)) < 1e-12);
    }
    Laurent s = Laurent::monomial(1) + Laurent::monomial(-1);
    CHECK((s * Laurent::monomial(2, 3)).div_omega_sum() == Laurent::monomial(2, 3));
    CHECK_THROWS_AS(Laurent::monomial(0).div_omega_sum(), Error);
}

TEST_CASE("B master list") {
    const std::array<int, 20> listed = {1, -1, 1, 1, -1, 1, 1, -1, 3, -3, 3, -1, 1, 1, -1, 3, -3, 3, -1, 1};
    for (int n = 4; n <= 9; ++n) CHECK(master_lists(n).L == listed);
}

TEST_CASE("A_n pair function in closed form") {
    std::mt19937_64 rng(2);
    for (int n = 2; n <= 6; ++n) {
        std::uniform_real_distribution<double> d(0.6, 1.4);
        for (int t = 0; t < 30; ++t) {
            double v = kPi / (2 * n);
            ParameterPoint X{v * d(rng), v * d(rng)};
            double want = -4 * std::sin(n * X.x1) * std::sin(n * X.x2) * std::sin(n * (X.x1 - X.x2));
            CHECK(a_pair_F(n, X) == doctest::Approx(want).epsilon(1e-9).scale(1));
        }
    }
}

TEST_CASE("defining function sign equals the height order") {
    Unfolding u(gen_B(4), {0.38, 0.41});
    const auto& top = u.top();
    const auto& bot = u.bottom();
    int checked = 0;
    for (size_t i = 0; i < top.size(); i += 3)
        for (size_t j = 0; j < bot.size(); j += 5) {
            int p = bot[j], q = top[i];
            DefiningFunction df;
            try {
                df = build_PQ(u, p, q, 3);
            } catch (const Error&) {
                continue;
            }
            double dh = u.height(q) - u.height(p);
            if (std::abs(dh) < 1e-9) continue;
            CHECK((df.F(u.point()) > 0) == (dh > 0));
            CHECK(df.F(u.point()) / std::abs(df.Q.evaluate(u.point())) == doctest::Approx(dh).epsilon(1e-9));
            ++checked;
        }
    CHECK(checked > 10);
}

TEST_CASE("B elimination vectors") {
    for (int beta = 1; beta <= 20; ++beta)
        for (int delta = -1; delta <= 1; ++delta) {
            auto a = elim_vector(beta, delta);
            for (int n = 4; n <= 8; ++n) {
                double v = a[0] * std::sin(kPi / n) + a[1] * std::sin(2 * kPi / n) + a[2] * std::sin(3 * kPi / n);
                int s = std::abs(v) < 1e-12 ? 0 : v > 0 ? 1 : -1;
                CHECK(elim_sign(n, beta, delta) == s);
            }
        }
    LeaderReport r = leaders_B(6);
    CHECK(r.leaders.size() == 6);
    CHECK(r.spread < 1e-9);
}

TEST_CASE("B derivative signs") {
    for (int n = 4; n <= 10; ++n) {
        FinalDerivatives d = final_derivatives(n);
        CHECK(d.signs_ok);
        CHECK(d.max_fd_rel_error < 1e-6);
        CHECK(std::abs(d.d2[0][0]) < 1e-9);
    }
}
