#include "tribill/veech.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "tribill/families.hpp"

namespace tribill {

namespace {

constexpr double kVertexTol = 1e-9;

int sign_of(double v, double tol) { return v > tol ? 1 : v < -tol ? -1 : 0; }

int cyclic20(int k) { return ((k - 1) % 20 + 20) % 20 + 1; }

// Spine vertices v_0 = a1, ..., v_20 = a1 + H of U(B_n, V_n).
struct BFrame {
    int n;
    Unfolding u;
    int a1, b1;
    std::vector<int> spine;
    std::vector<cplx> pos;

    explicit BFrame(int n_) : n(n_), u(gen_B(n_), ParameterPoint::veech(n_)) {
        auto [l, r] = u.crossing(u.period());
        a1 = l;
        b1 = r;
        spine.push_back(a1);
        for (auto [e, s] : side_path(u, a1, u.shift(a1), {false, false, false, true})) {
            const Side& S = u.sides()[e];
            spine.push_back(s > 0 ? S.to : S.from);
        }
        if (spine.size() != 21) throw Error(ErrorKind::Internal, "B_n spine does not have 20 edges");
        for (size_t v = 0; v < u.vertex_count(); ++v) pos.push_back(u.position(int(v)));
    }

    int find(cplx z) const {
        for (size_t v = 0; v < pos.size(); ++v)
            if (std::abs(pos[v] - z) < kVertexTol) return int(v);
        return -1;
    }

    cplx endpoint(int beta, int delta, const MasterLists& m) const {
        if (delta == 0) return pos[spine[beta]];
        double lam = 1.0 / (2.0 * std::cos(kPi / (2.0 * n)));
        return pos[spine[beta - 1]] + lam * expi(kPi / (2.0 * n) * (m.L[beta - 1] + delta));
    }

    double height(cplx z) const { return (z * u.normalizer()).imag() - u.height(b1); }
};

std::vector<std::string> addresses_of(int beta, int delta) {
    if (delta == 0) {
        std::vector<std::string> out;
        if (beta + 1 <= 20) out.push_back(fmt::format("({},L,O)", beta + 1));
        if (beta - 1 >= 1) out.push_back(fmt::format("({},R,O)", beta - 1));
        if (beta == 20) out.push_back("(1,L,O)");
        return out;
    }
    if (delta < 0) return {fmt::format("({},L,I)", beta)};
    return {fmt::format("({},R,I)", cyclic20(beta - 1))};
}

// Vertex of the middle period equivalent to v under the holonomy, or -1.
int to_middle(const Unfolding& u, int v, const std::set<int>& middle) {
    for (int w = v, k = 0; w >= 0 && k < 3; w = u.shift_back(w), ++k)
        if (middle.count(w)) return w;
    for (int w = v, k = 0; w >= 0 && k < 3; w = u.shift(w), ++k)
        if (middle.count(w)) return w;
    return -1;
}

}  // namespace

Laurent Laurent::monomial(int e, long long c) {
    Laurent l;
    l.add(e, c);
    return l;
}

void Laurent::add(int e, long long c) {
    if (c == 0) return;
    long long& x = terms_[e];
    x += c;
    if (x == 0) terms_.erase(e);
}

long long Laurent::coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
}

Laurent Laurent::conj() const {
    Laurent r;
    for (auto [e, c] : terms_) r.add(-e, c);
    return r;
}

Laurent Laurent::div_omega_sum() const {
    Laurent rest = *this, q;
    while (!rest.terms_.empty()) {
        auto [e, c] = *rest.terms_.rbegin();
        if (rest.terms_.size() == 1) throw Error(ErrorKind::Internal, "Laurent polynomial not divisible by omega + 1/omega");
        q.add(e - 1, c);
        rest.add(e, -c);
        rest.add(e - 2, -c);
    }
    return q;
}

cplx Laurent::evaluate(cplx omega) const {
    cplx s = 0;
    for (auto [e, c] : terms_) s += double(c) * std::pow(omega, e);
    return s;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
    Laurent r = a;
    for (auto [e, c] : b.terms_) r.add(e, c);
    return r;
}

Laurent operator-(const Laurent& a, const Laurent& b) {
    Laurent r = a;
    for (auto [e, c] : b.terms_) r.add(e, -c);
    return r;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (auto [i, x] : a.terms_)
        for (auto [j, y] : b.terms_) r.add(i + j, x * y);
    return r;
}

MasterLists master_lists(int n) {
    LatticePath p = squarepath_B(n);
    MasterLists m;
    m.n = n;
    const long long N4 = 4LL * n;
    for (int i = 0; i < 20; ++i) {
        Vec2i v = p.vertices[i];
        m.vertex[i] = v;
        // omega^{4n} = 1 and omega^{2n} = -1 absorbs the alternating sign.
        long long e = v.x + v.y + (i % 2 == 1 ? 2LL * n : 0);
        e = ((e % N4) + N4) % N4;
        if (e > 2LL * n) e -= N4;
        m.L[i] = int(e);
    }
    return m;
}

cplx master_holonomy(int n) {
    auto m = master_lists(n);
    cplx s = 0;
    for (int e : m.L) s += expi(kPi / (2.0 * n) * e);
    return s;
}

Laurent master_holonomy_laurent() {
    auto m = master_lists(4);
    Laurent q;
    for (int e : m.L) q = q + Laurent::monomial(e);
    return q;
}

std::array<long long, 3> elim_vector(int beta, int delta) {
    if (beta < 1 || beta > 20 || delta < -1 || delta > 1) fail_arg("beta must be in 1..20 and delta in {-1,0,1}");
    // Both P and Q are divisible by lambda = 1/(omega + 1/omega) up to a
    // polynomial; P' = (omega + 1/omega) P, Q' = Q / (omega + 1/omega).
    const Laurent w = Laurent::monomial(1) + Laurent::monomial(-1);
    const auto L = master_lists(4).L;
    Laurent P = Laurent::monomial(0, -1);
    for (int i = 0; i < beta - 1; ++i) P = P + w * Laurent::monomial(L[i]);
    Laurent last = Laurent::monomial(L[beta - 1] + delta);
    P = P + (delta == 0 ? w * last : last);
    Laurent prod = P * master_holonomy_laurent().div_omega_sum().conj();
    for (auto [e, c] : prod.terms())
        if (e % 2 != 0 || std::abs(e) > 6) throw Error(ErrorKind::Internal, "unexpected exponent in P conj Q");
    return {prod.coeff(2) - prod.coeff(-2), prod.coeff(4) - prod.coeff(-4), prod.coeff(6) - prod.coeff(-6)};
}

int elim_sign(int n, int beta, int delta) {
    auto a = elim_vector(beta, delta);
    double v = 0;
    for (int j = 1; j <= 3; ++j) v += double(a[j - 1]) * std::sin(j * kPi / n);
    return sign_of(v, 1e-12);
}

std::vector<BPathVertex> elim_paths(int n) {
    if (n < 4) fail_arg("B_n needs n >= 4");
    BFrame f(n);
    auto m = master_lists(n);
    for (int i = 0; i < 20; ++i) {
        cplx step = f.pos[f.spine[i + 1]] - f.pos[f.spine[i]];
        if (std::abs(step - expi(kPi / (2.0 * n) * m.L[i])) > kVertexTol)
            throw Error(ErrorKind::Internal, "spine directions disagree with the master list");
    }
    std::set<int> tops(f.u.top().begin(), f.u.top().end()), bottoms(f.u.bottom().begin(), f.u.bottom().end());
    std::set<int> middle = tops;
    middle.insert(bottoms.begin(), bottoms.end());
    std::vector<BPathVertex> out;
    for (int delta = -1; delta <= 1; ++delta)
        for (int beta = 1; beta <= 20; ++beta) {
            BPathVertex e;
            e.beta = beta;
            e.delta = delta;
            cplx z = f.endpoint(beta, delta, m);
            e.height = f.height(z);
            e.a = elim_vector(beta, delta);
            e.vertex = f.find(z);
            if (e.vertex >= 0) {
                int w = to_middle(f.u, e.vertex, middle);
                e.top = w >= 0 && tops.count(w);
                e.bottom = w >= 0 && bottoms.count(w);
            }
            for (auto& a : addresses_of(beta, delta)) e.addresses.push_back(a + (e.top ? "^*" : e.bottom ? "_*" : ""));
            out.push_back(std::move(e));
        }
    return out;
}

LeaderReport leaders_B(int n) {
    if (n < 4) fail_arg("leaders are defined for B_n with n >= 4");
    BFrame f(n);
    auto paths = elim_paths(n);
    std::set<int> tops(f.u.top().begin(), f.u.top().end()), bottoms(f.u.bottom().begin(), f.u.bottom().end());
    std::set<int> middle = tops;
    middle.insert(bottoms.begin(), bottoms.end());

    std::set<int> superior;
    for (const Dart& d : dart_decomposition(f.u).darts)
        for (int v : {d.base, d.outer_left, d.outer_right, d.inner_left, d.inner_right}) {
            if (v < 0) continue;
            int w = to_middle(f.u, v, middle);
            if (w >= 0) superior.insert(w);
        }

    LeaderReport r;
    r.n = n;
    r.superior_count = superior.size();
    double tmin = 1e300, bmax = -1e300;
    for (int v : superior) {
        double h = f.u.height(v) - f.u.height(f.b1);
        if (tops.count(v)) tmin = std::min(tmin, h);
        else bmax = std::max(bmax, h);
    }
    double lo = 1e300, hi = -1e300, sep = 1e300;
    for (int v : superior) {
        bool top = tops.count(v) > 0;
        double h = f.u.height(v) - f.u.height(f.b1);
        bool leader = top ? h <= tmin + kVertexTol : h >= bmax - kVertexTol;
        if (!leader) {
            sep = std::min(sep, top ? h - tmin : bmax - h);
            continue;
        }
        Leader l;
        l.vertex = v;
        l.top = top;
        l.height = h;
        for (const auto& p : paths) {
            if (p.vertex < 0 || to_middle(f.u, p.vertex, middle) != v) continue;
            if (l.beta == 0) {
                l.beta = p.beta;
                l.delta = p.delta;
            }
            for (const auto& a : p.addresses) l.addresses.push_back(a);
        }
        lo = std::min(lo, h);
        hi = std::max(hi, h);
        r.leaders.push_back(std::move(l));
    }
    r.spread = std::max({hi - lo, std::abs(tmin - bmax)});
    r.separation = sep;
    return r;
}

BLeaderVertices b_leader_vertices(const Unfolding& u, int n) {
    BFrame f(n);
    if (u.vertex_count() != f.u.vertex_count()) fail_arg("unfolding is not U(B_n, V_n)");
    auto m = master_lists(n);
    BLeaderVertices b;
    b.a1 = f.a1;
    b.b1 = f.b1;
    b.alpha = {f.spine[13], f.find(f.endpoint(6, 1, m)), f.find(f.endpoint(11, 1, m))};
    b.beta = {f.spine[3], f.b1, f.find(f.endpoint(16, -1, m))};
    for (int v : {b.alpha[1], b.alpha[2], b.beta[2]})
        if (v < 0) throw Error(ErrorKind::Internal, "leader vertex not found in the unfolding");
    return b;
}

H11Report H11_on_line(int n, const std::vector<double>& y_grid) {
    if (n < 4) fail_arg("B_n needs n >= 4");
    Unfolding u(gen_B(n), ParameterPoint::veech(n));
    auto b = b_leader_vertices(u, n);
    DefiningFunction df = build_PQ(u, b.beta[0], b.alpha[0], 3);
    H11Report r;
    r.n = n;
    const double x = kPi / (2.0 * n);
    for (double y : y_grid) r.max_residual = std::max(r.max_residual, std::abs(df.F({x, y})));
    r.off_line = std::abs(df.F({x + 0.01, x}));
    r.bijection = (df.Q - df.P) == (-df.P).shifted({2LL * n, 0});
    return r;
}

FinalDerivatives final_derivatives(int n, double h) {
    if (n < 4) fail_arg("B_n needs n >= 4");
    const ParameterPoint X = ParameterPoint::veech(n);
    Unfolding u(gen_B(n), X);
    auto b = b_leader_vertices(u, n);
    MixedTableau Q = path_tableau(u, b.a1, u.shift(b.a1), {false, false, false, true});
    cplx q = Q.evaluate(X), dq[3] = {0, Q.derivative(X, 1), Q.derivative(X, 2)};

    FinalDerivatives r;
    r.n = n;
    double scale = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            MixedTableau P = path_tableau(u, b.beta[j], b.alpha[i], {false, true, true, true});
            cplx p = P.evaluate(X);
            auto F = [&](double x1, double x2) {
                ParameterPoint Y{x1, x2};
                return (P.evaluate(Y) * std::conj(Q.evaluate(Y))).imag();
            };
            r.d1[i][j] = (P.derivative(X, 1) * std::conj(q) + p * std::conj(dq[1])).imag();
            r.d2[i][j] = (P.derivative(X, 2) * std::conj(q) + p * std::conj(dq[2])).imag();
            r.fd1[i][j] = (F(X.x1 + h, X.x2) - F(X.x1 - h, X.x2)) / (2 * h);
            r.fd2[i][j] = (F(X.x1, X.x2 + h) - F(X.x1, X.x2 - h)) / (2 * h);
            scale = std::max({scale, std::abs(r.d1[i][j]), std::abs(r.d2[i][j])});
        }
    bool ok = true;
    const double tol = 1e-9 * scale;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            r.max_fd_rel_error = std::max({r.max_fd_rel_error, std::abs(r.d1[i][j] - r.fd1[i][j]) / scale,
                                           std::abs(r.d2[i][j] - r.fd2[i][j]) / scale});
            ok = ok && r.d1[i][j] < -tol;
            ok = ok && (i == 0 && j == 0 ? std::abs(r.d2[i][j]) <= tol : r.d2[i][j] > tol);
        }
    r.signs_ok = ok;
    return r;
}

namespace {

DefiningFunction a_pair(int n) {
    UnfoldOptions opt;
    opt.general_region = n == 2;
    Unfolding u(gen_A(n), ParameterPoint::veech(n), opt);
    int a1 = u.crossing(u.period()).first;
    auto path = side_path(u, a1, u.shift(a1), {false, false, false, true});
    const Side& S = u.sides()[path.front().first];
    int b = path.front().second > 0 ? S.to : S.from;
    return build_PQ(u, a1, b, 3);
}

}  // namespace

double a_pair_F(int n, const ParameterPoint& X) {
    if (n < 2) fail_arg("A_n needs n >= 2");
    return a_pair(n).F(X);
}

ALineCheck a_line_check(int n, int samples) {
    if (n < 2) fail_arg("A_n needs n >= 2");
    if (samples < 2) fail_arg("need at least two samples");
    DefiningFunction df = a_pair(n);
    const double v = kPi / (2.0 * n), r = v / 4;
    std::vector<double> xs, F, G;
    for (int i = 0; i < samples; ++i) {
        double x = v - r + 2 * r * i / (samples - 1);
        xs.push_back(x);
        F.push_back(df.F({kPi / n - x, x}));
        G.push_back(-4 * std::pow(std::sin(n * x), 2) * std::sin(2 * n * x));
    }
    double num = 0, den = 0;
    for (int i = 0; i < samples; ++i) {
        num += F[i] * G[i];
        den += G[i] * G[i];
    }
    ALineCheck c;
    c.n = n;
    c.scale = num / den;
    c.sign_ok = true;
    for (int i = 0; i < samples; ++i) {
        c.max_error = std::max(c.max_error, std::abs(F[i] - c.scale * G[i]));
        if (std::abs(xs[i] - v) > 1e-12) c.sign_ok = c.sign_ok && ((F[i] < 0) == (xs[i] < v));
    }
    return c;
}

}  // namespace tribill
