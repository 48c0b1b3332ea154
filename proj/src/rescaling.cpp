#include "tribill/rescaling.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "tribill/families.hpp"

namespace tribill {

ParameterPoint GrowthContext::X0() const { return {2 * kPi * double(a) / double(N), 2 * kPi * double(b) / double(N)}; }

long long GrowthContext::phi(Vec2i v) const {
    long long r = (a * v.x + b * v.y) % N;
    return r < 0 ? r + N : r;
}

GrowthContext GrowthContext::veech(int n) {
    if (n < 2) fail_arg("n must be at least 2");
    GrowthContext c;
    c.T = {2LL * n - 2, -(2LL * n - 2)};
    c.a = 1;
    c.b = 1;
    c.N = 4LL * n;
    return c;
}

FourierTableau GrowthFamily::at(int k) const {
    FourierTableau r = R0;
    for (int j = 0; j < k; ++j) r = r + Rsharp.shifted(j * ctx.T);
    return r;
}

GrowthFamily detect_growth(const std::vector<FourierTableau>& family, const GrowthContext& ctx) {
    if (family.size() < 3) fail_pre("linear growth needs at least 3 consecutive members");
    if (ctx.phi(ctx.T) != 0) fail_pre("translation is not in the kernel of the homomorphism");
    GrowthFamily g{family[0], family[1] - family[0], ctx};
    for (size_t k = 1; k + 1 < family.size(); ++k) {
        FourierTableau step = (family[k + 1] - family[k]).shifted(-(long long)k * ctx.T);
        if (!(step == g.Rsharp))
            fail_pre(fmt::format("linear growth recurrence fails between k={} and k={}", k, k + 1));
    }
    return g;
}

std::vector<long long> modular_transform(const FourierTableau& t, const GrowthContext& ctx) {
    std::vector<long long> classes(size_t(ctx.N), 0);
    for (auto& [v, w] : t.terms()) classes[size_t(ctx.phi(v))] += w;
    return classes;
}

cplx modular_value(const std::vector<long long>& classes) {
    cplx s = 0;
    double N = double(classes.size());
    for (size_t j = 0; j < classes.size(); ++j)
        if (classes[j]) s += double(classes[j]) * expi(2 * kPi * double(j) / N);
    return s;
}

namespace {

cplx cross_det(cplx a, cplx b, cplx c, cplx d) { return a * d - b * c; }

void require_real(cplx z, const char* what) {
    if (std::abs(z.imag()) > kRealTol)
        fail_pre(fmt::format("{} is not real at the base point (imaginary part {:.3e})", what, z.imag()));
}

}  // namespace

QrtResult qrt(const GrowthFamily& P, const GrowthFamily& Q) {
    if (!(P.ctx.T == Q.ctx.T) || P.ctx.N != Q.ctx.N || P.ctx.a != Q.ctx.a || P.ctx.b != Q.ctx.b)
        fail_arg("P and Q families use different growth contexts");
    ParameterPoint X0 = P.ctx.X0();
    QrtResult r;
    r.P0 = P.R0.evaluate(X0);
    r.Q0 = Q.R0.evaluate(X0);
    r.Psharp = P.Rsharp.evaluate(X0);
    r.Qsharp = Q.Rsharp.evaluate(X0);
    require_real(r.Psharp, "P#");
    require_real(r.Qsharp, "Q#");
    r.delta = cross_det(r.Psharp, r.P0, r.Qsharp, r.Q0);
    require_real(r.delta, "delta");
    cplx dP1 = P.Rsharp.derivative(X0, 1), dP2 = P.Rsharp.derivative(X0, 2);
    cplx dQ1 = Q.Rsharp.derivative(X0, 1), dQ2 = Q.Rsharp.derivative(X0, 2);
    r.delta1 = cross_det(r.Psharp, dP1, r.Qsharp, dQ1);
    r.delta2 = cross_det(r.Psharp, dP2, r.Qsharp, dQ2);
    double M1 = double(P.ctx.T.x), M2 = double(P.ctx.T.y);
    r.Delta1 = -M1 * r.delta.real() / 2 + r.delta1.imag();
    r.Delta2 = -M2 * r.delta.real() / 2 + r.delta2.imag();
    r.F0 = (r.P0 * std::conj(r.Q0)).imag();
    r.g0 = r.F0;
    r.g1 = -r.Delta1;
    r.g2 = -r.Delta2;
    return r;
}

double qrt_sup_error(const FourierTableau& Pk, const FourierTableau& Qk, int k, const QrtResult& r,
                     const GrowthContext& ctx, double radius, int samples) {
    if (k <= 0) fail_arg("k must be positive");
    ParameterPoint X0 = ctx.X0();
    double k2 = double(k) * double(k);
    double worst = 0;
    int rings = std::max(1, int(std::sqrt(double(samples)) / 2));
    int per = std::max(4, samples / rings);
    auto probe = [&](double y1, double y2) {
        ParameterPoint X{X0.x1 + y1 / k2, X0.x2 + y2 / k2};
        double Fk = (Pk.evaluate(X) * std::conj(Qk.evaluate(X))).imag();
        worst = std::max(worst, std::abs(Fk - r.G(y1, y2)));
    };
    probe(0, 0);
    for (int i = 1; i <= rings; ++i) {
        double rad = radius * double(i) / rings;
        for (int j = 0; j < per; ++j) {
            double t = 2 * kPi * double(j) / per;
            probe(rad * std::cos(t), rad * std::sin(t));
        }
    }
    return worst;
}

namespace {

std::vector<int> path_vertices(const Unfolding& u, int from, const std::vector<std::pair<int, int>>& path) {
    std::vector<int> vs{from};
    for (auto [e, sgn] : path) {
        const Side& s = u.sides()[e];
        vs.push_back(sgn > 0 ? s.to : s.from);
    }
    return vs;
}

bool is_qh_label(Vec2i v, int n) { return ((v.x + v.y) % (2LL * n) + 2LL * n) % (2LL * n) == 0; }

}  // namespace

PivotData pivot_vertices(const Unfolding& u, int n, int k) {
    if (!u.stable()) fail_pre("pivot vertices need a stable word");
    size_t L = u.period();
    PivotData pd;
    int a1 = u.crossing(L).first;
    int a1s = u.shift(a1);
    if (a1s < 0) fail_pre("unfolding too short for the spine");
    std::array<bool, 4> only3{false, false, false, true};
    pd.spine_vertices = path_vertices(u, a1, side_path(u, a1, a1s, only3));
    pd.spine_vertices.pop_back();
    size_t m = pd.spine_vertices.size();
    std::array<size_t, 3> idx{size_t(5 + 2 * k), size_t(8 + 4 * k), size_t(9 + 6 * k)};
    for (size_t i : idx)
        if (i >= m) fail_pre("spine is shorter than expected for W_{nk}");
    pd.a[0] = a1;
    pd.b[1] = pd.spine_vertices[idx[0]];
    pd.b[2] = pd.spine_vertices[idx[1]];
    pd.a[3] = pd.spine_vertices[idx[2]];
    // Hinges: crossed quasi-horizontal edges of the middle period, starting at e_L.
    std::vector<std::pair<int, int>> hinges;
    std::vector<int> types;
    for (size_t i = L; i < 2 * L; ++i) {
        int d = u.crossing_type(i);
        if (d == 3) continue;
        if (!is_qh_label(u.label(i, d), n)) continue;
        hinges.push_back(u.crossing(i));
        types.push_back(d);
    }
    if (hinges.size() != 4) fail_pre(fmt::format("expected 4 hinges, found {}", hinges.size()));
    for (int i = 0; i < 4; ++i) pd.hinge_type[i] = types[i];
    auto match = [&](int v, bool top) {
        for (int i = 0; i < 4; ++i) {
            int w = top ? hinges[i].first : hinges[i].second;
            if (w == v || u.shift(w) == v || u.shift_back(w) == v) return i;
        }
        return -1;
    };
    int h1 = match(pd.a[0], true), h2 = match(pd.b[1], false), h3 = match(pd.b[2], false), h4 = match(pd.a[3], true);
    if (h1 != 0 || h2 != 1 || h3 != 2 || h4 != 3)
        fail_pre("spine vertices do not line up with the hinges");
    pd.b[0] = hinges[0].second;
    pd.a[1] = hinges[1].first;
    pd.a[2] = hinges[2].first;
    pd.b[3] = hinges[3].second;
    return pd;
}

namespace {

struct NamedVertex {
    char kind;  // 'a' or 'b'
    int index;  // 1..4
};

NamedVertex parse_vertex(const std::string& s) {
    if (s.size() != 2 || (s[0] != 'a' && s[0] != 'b') || s[1] < '1' || s[1] > '4')
        fail_arg("vertex names are a1..a4, b1..b4");
    return {s[0], s[1] - '0'};
}

bool on_long_spine(NamedVertex v) {
    return (v.kind == 'a' && (v.index == 1 || v.index == 4)) || (v.kind == 'b' && (v.index == 2 || v.index == 3));
}

}  // namespace

DefiningFunction w_pair_function(int n, int k, const std::string& pair) {
    auto colon = pair.find(':');
    if (colon == std::string::npos) fail_arg("pair must look like a1:b2");
    NamedVertex x = parse_vertex(pair.substr(0, colon)), y = parse_vertex(pair.substr(colon + 1));
    Word w = gen_W(n, k);
    Unfolding u(w, ParameterPoint::veech(n));
    PivotData pd = pivot_vertices(u, n, k);
    auto id = [&](NamedVertex v) { return v.kind == 'a' ? pd.a[v.index - 1] : pd.b[v.index - 1]; };
    int hi, lo;
    if (x.kind != y.kind) {
        hi = id(x.kind == 'a' ? x : y);
        lo = id(x.kind == 'a' ? y : x);
    } else if (x.kind == 'b' && std::min(x.index, y.index) == 2 && std::max(x.index, y.index) == 3) {
        hi = pd.b[2];
        lo = pd.b[1];
    } else {
        throw Error(ErrorKind::Unsupported, "pair is not an a-b pair or b2:b3");
    }
    int d;
    if (x.kind != y.kind && x.index == y.index)
        d = pd.hinge_type[x.index - 1];
    else if (on_long_spine(x) && on_long_spine(y))
        d = 3;
    else
        throw Error(ErrorKind::Unsupported, "pair is neither a hinge nor on the long-edge spine; combine limits instead");
    return build_PQ(u, lo, hi, d);
}

QrtReport qrt_report(int n, const std::string& pair, const std::vector<int>& ks) {
    if (n < 3) fail_arg("n must be at least 3");
    GrowthContext ctx = GrowthContext::veech(n);
    std::vector<FourierTableau> Ps, Qs;
    int d = 3;
    for (int k = 0; k <= 3; ++k) {
        DefiningFunction df = w_pair_function(n, k, pair);
        Ps.push_back(df.P);
        Qs.push_back(df.Q);
        d = df.d;
    }
    GrowthFamily P = detect_growth(Ps, ctx), Q = detect_growth(Qs, ctx);
    QrtReport rep;
    rep.pair = pair;
    rep.n = n;
    rep.d = d;
    rep.result = qrt(P, Q);
    double st = sin_theta(ctx.X0(), d);
    rep.gtilde_scale = st * st;
    ParameterPoint X0 = ctx.X0();
    for (int k : ks) {
        FourierTableau Pk = P.at(k), Qk = Q.at(k);
        rep.sup_errors.push_back({k, qrt_sup_error(Pk, Qk, k, rep.result, ctx)});
    }
    if (!ks.empty()) {
        int k = *std::max_element(ks.begin(), ks.end());
        DefiningFunction df{P.at(k), Q.at(k), d};
        double k2 = double(k) * k;
        double h = 1e-4 / k2;
        for (int j = 1; j <= 2; ++j) {
            ParameterPoint Xp = X0, Xm = X0;
            (j == 1 ? Xp.x1 : Xp.x2) += h;
            (j == 1 ? Xm.x1 : Xm.x2) -= h;
            rep.fd_delta[j - 1] = -(df.F(Xp) - df.F(Xm)) / (2 * h) / k2;
        }
    }
    return rep;
}

std::array<double, 3> expected_limit(int n, const std::string& pair) {
    TrigConstants t(n);
    double c = t.c, s = t.s, C = s / ((2.0 * n - 2) * c);
    if (pair == "a1:b2" || pair == "b3:a4" || pair == "a4:b3")
        return {8 * c * s, -16 * n * c * c, -16 * n * c * c};
    if (pair == "b2:b3" || pair == "b3:b2") return {0, -16 * c * c, 16 * c * c};
    if (pair == "a1:b1" || pair == "a3:b3") return {8 * c * s, 8 * c * s / C, -8 * c * s / C};
    if (pair == "a2:b2" || pair == "a4:b4") return {8 * c * s, -8 * c * s / C, 8 * c * s / C};
    throw Error(ErrorKind::Unsupported, "no closed form recorded for pair " + pair);
}

PivotStrip pivot_strip(int n) {
    if (n < 2) fail_arg("n must be at least 2");
    TrigConstants t(n);
    return {n, t.s / ((2.0 * n - 2) * t.c)};
}

double LimitQuadrilateral::area() const {
    // Vertices in boundary order: left, top (a_n), right, bottom (mu a_n).
    const std::array<int, 4> order{0, 1, 2, 3};
    double A = 0;
    for (int i = 0; i < 4; ++i) {
        auto& p = vertices[order[i]];
        auto& q = vertices[order[(i + 1) % 4]];
        A += p[1] * q[2] - q[1] * p[2];
    }
    return std::abs(A) / 2;
}

bool LimitQuadrilateral::contains(double x1, double x2) const {
    for (auto& f : functions)
        if (f[0] + f[1] * x1 + f[2] * x2 <= 0) return false;
    return true;
}

LimitQuadrilateral omega(int n) {
    if (n < 3) fail_arg("n must be at least 3");
    TrigConstants t(n);
    double c = t.c, s = t.s, nn = n;
    LimitQuadrilateral q;
    q.n = n;
    q.zeta = 2 * (nn - 1) * c / s;
    q.a = 0.5 - 1 / (2 * nn);
    double tn = std::tan(kPi / (2 * nn));
    q.mu = 0.5 - tn * tn / 2;
    q.sigma = 1 / (2 * c * c - 1);
    q.beta = 2 * q.sigma * (nn - 2 - std::cos(kPi / nn)) / (nn - 1);
    double r = (nn + 1) / (nn - 1), u = (1 + nn + 2 * q.sigma) / (nn - 1), v = 1 + 2 * q.sigma;
    q.functions = {{{1, -r, -1}, {-1, u, v}, {-1, v, u}, {1, -1, -r}}};
    q.vertices = {{{1, -1 / nn, 1 - 1 / nn}, {1, q.a, q.a}, {1, 1 - 1 / nn, -1 / nn}, {1, q.mu * q.a, q.mu * q.a}}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double d = 0;
            for (int m = 0; m < 3; ++m) d += q.functions[i][m] * q.vertices[j][m];
            q.dot[i][j] = d;
        }
    double e = 2 / (nn - 1), h = 1 / (2 * c * c);
    // Listed with rows indexed by vertices; stored transposed.
    std::array<std::array<double, 4>, 4> listed{{{e, q.beta, 0, 0}, {0, q.sigma, q.sigma, 0}, {0, 0, q.beta, e}, {h, 0, 0, h}}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) q.dot_expected[i][j] = listed[j][i];
    return q;
}

OmegaChecks check_omega(int n) {
    LimitQuadrilateral q = omega(n);
    OmegaChecks ch;
    bool pattern = true;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            ch.max_dot_error = std::max(ch.max_dot_error, std::abs(q.dot[i][j] - q.dot_expected[i][j]));
    for (int i = 0; i < 4; ++i) {
        int zr = 0, zc = 0;
        for (int j = 0; j < 4; ++j) {
            if (q.dot[i][j] < -1e-12) pattern = false;
            if (std::abs(q.dot[i][j]) < 1e-12) ++zr;
            if (std::abs(q.dot[j][i]) < 1e-12) ++zc;
        }
        if (zr != 2 || zc != 2) pattern = false;
    }
    ch.pattern = pattern && ch.max_dot_error < 1e-12;
    // zeta * Sigma_n is |x1 - x2| < zeta C_n = 1.
    PivotStrip ps = pivot_strip(n);
    double w = q.zeta * ps.C;
    bool plus = false, minus = false;
    for (auto& v : q.vertices) {
        double d = v[1] - v[2];
        if (std::abs(d - w) < 1e-12) plus = true;
        if (std::abs(d + w) < 1e-12) minus = true;
        if (std::abs(d) > w + 1e-12) plus = minus = false;
    }
    ch.touches_strip = plus && minus;
    bool sym = true;
    for (auto& f : q.functions) {
        bool found = false;
        for (auto& g : q.functions)
            if (std::abs(f[0] - g[0]) < 1e-12 && std::abs(f[1] - g[2]) < 1e-12 && std::abs(f[2] - g[1]) < 1e-12)
                found = true;
        sym = sym && found;
    }
    ch.symmetric = sym;
    return ch;
}

OmegaDerivation derive_omega(int n) {
    using A3 = std::array<double, 3>;
    auto gt = [&](const std::string& pair) {
        QrtReport r = qrt_report(n, pair, {});
        double m = r.gtilde_scale;
        return A3{m * r.result.g0, m * r.result.g1, m * r.result.g2};
    };
    auto add = [](A3 x, A3 y, double t = 1) { return A3{x[0] + t * y[0], x[1] + t * y[1], x[2] + t * y[2]}; };
    auto swp = [](A3 x) { return A3{x[0], x[2], x[1]}; };
    auto dist = [](A3 x, A3 y) {
        double d = 0;
        for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(x[i] - y[i]));
        return d;
    };
    OmegaDerivation od;
    auto& g = od.ab;
    for (int i = 0; i < 4; ++i) g[i][i] = gt(fmt::format("a{}:b{}", i + 1, i + 1));
    g[0][1] = gt("a1:b2");
    g[3][2] = gt("b3:a4");
    A3 b23 = gt("b2:b3");
    g[0][2] = add(g[0][1], b23, -1);
    g[3][1] = add(g[3][2], b23);
    g[0][3] = add(add(g[0][2], g[3][2], -1), g[3][3]);
    g[1][0] = add(add(g[1][1], g[0][1], -1), g[0][0]);
    g[1][2] = add(g[1][1], b23, -1);
    g[1][3] = add(add(g[1][2], g[3][2], -1), g[3][3]);
    g[2][0] = add(add(g[2][2], g[0][2], -1), g[0][0]);
    g[2][1] = add(g[2][2], b23);
    g[2][3] = add(add(g[2][2], g[3][2], -1), g[3][3]);
    g[3][0] = add(add(g[3][3], g[0][0]), g[0][3], -1);
    auto G = [&](int i, int j) { return g[i - 1][j - 1]; };
    auto half = [&](A3 x, A3 y) { return add(A3{x[0] / 2, x[1] / 2, x[2] / 2}, y, 0.5); };
    TrigConstants tc(n);
    double t = 2 * tc.c * tc.c / (n - 1);
    double e = 0;
    e = std::max(e, dist(G(1, 3), swp(G(4, 2))));
    e = std::max(e, dist(G(2, 4), swp(G(3, 1))));
    e = std::max(e, dist(half(G(1, 3), G(4, 2)), G(1, 2)));
    e = std::max(e, dist(G(1, 2), G(4, 3)));
    e = std::max(e, dist(half(G(2, 4), G(3, 1)), G(2, 1)));
    e = std::max(e, dist(G(2, 1), G(3, 4)));
    e = std::max(e, dist(half(G(1, 3), G(3, 1)), G(1, 1)));
    e = std::max(e, dist(G(1, 1), G(3, 3)));
    e = std::max(e, dist(swp(G(1, 1)), G(2, 2)));
    e = std::max(e, dist(G(2, 2), G(4, 4)));
    A3 mix = add(A3{t * G(1, 1)[0], t * G(1, 1)[1], t * G(1, 1)[2]}, G(4, 4), 1 - t);
    e = std::max(e, dist(mix, G(1, 4)));
    // The combination rules give [14] = [23] ~ [32] = [41].
    e = std::max(e, dist(G(1, 4), G(2, 3)));
    e = std::max(e, dist(swp(G(1, 4)), G(3, 2)));
    e = std::max(e, dist(G(3, 2), G(4, 1)));
    double scale = 0;
    for (auto& row : g)
        for (auto& f : row) scale = std::max(scale, dist(f, A3{0, 0, 0}));
    od.relation_error = e / scale;
    LimitQuadrilateral q = omega(n);
    std::array<A3, 4> derived{G(1, 3), G(2, 4), G(3, 1), G(4, 2)};
    double fe = 0;
    for (auto f : derived) {
        A3 h{f[0] / std::abs(f[0]), f[1] / (q.zeta * std::abs(f[0])), f[2] / (q.zeta * std::abs(f[0]))};
        double best = 1e300;
        for (auto& u : q.functions) best = std::min(best, dist(h, u));
        fe = std::max(fe, best);
    }
    od.function_error = fe;
    return od;
}

QhData qh_points(const Unfolding& u, int n, int k) {
    if (!u.stable()) fail_pre("QH points need a stable word");
    QhData qd;
    std::map<long long, QhFamily> fam;
    for (int d = 1; d <= 3; ++d)
        for (int s : u.sides_of_type(d)) {
            Vec2i v = u.sides()[s].label;
            long long m = ((v.x + v.y) % (2LL * n) + 2LL * n) % (2LL * n);
            if (m == n) ++qd.qv_count;
            if (m != 0) continue;
            ++qd.qh_count;
            auto& f = fam[v.x + v.y];
            f.sum = v.x + v.y;
            f.sides.push_back(s);
        }
    for (auto& [sum, f] : fam) {
        auto lab = [&](int s) { return u.sides()[s].label; };
        auto [lo, hi] = std::minmax_element(f.sides.begin(), f.sides.end(),
                                            [&](int p, int q) { return lab(p).x < lab(q).x; });
        f.northwest = lab(*lo);
        f.southeast = lab(*hi);
        f.nw_side = *lo;
        f.se_side = *hi;
        f.nw_type = u.sides()[*lo].type;
        f.se_type = u.sides()[*hi].type;
        qd.families.push_back(f);
    }
    qd.Z = (2LL * n - 2) * (k + 2) - 1;
    return qd;
}

DefiningFunction qh_edge_function(const Unfolding& u, int side) {
    if (side < 0 || size_t(side) >= u.sides().size()) fail_arg("side index out of range");
    const Side& e = u.sides()[side];
    int left = e.from, right = e.to;
    if (u.normalized(left).real() > u.normalized(right).real()) std::swap(left, right);
    return build_PQ(u, right, left, e.type);
}

double bilateral_symmetry_error(int n, int k, int grid) {
    Word w = gen_W(n, k);
    ParameterPoint V = ParameterPoint::veech(n);
    Unfolding u(w, V);
    QhData qd = qh_points(u, n, k);
    double worst = 0;
    for (auto& f : qd.families) {
        if (f.nw_type == f.se_type) fail_pre("partner extreme edges have the same type");
        int s1 = f.nw_type == 1 ? f.nw_side : f.se_side;
        int s2 = f.nw_type == 1 ? f.se_side : f.nw_side;
        DefiningFunction F1 = qh_edge_function(u, s1), F2 = qh_edge_function(u, s2);
        double h = 0.5 / (double(n) * n * (k + 1) * (k + 1));
        for (int i = -grid; i <= grid; ++i)
            for (int j = -grid; j <= grid; ++j) {
                double x = V.x1 + h * i / grid, y = V.x2 + h * j / grid;
                worst = std::max(worst, std::abs(F1.F({x, y}) - F2.F({y, x})));
            }
    }
    return worst;
}

std::array<std::pair<Vec2i, Vec2i>, 4> qh_extremes_expected(int n, int k) {
    long long Z = (2LL * n - 2) * (k + 2) - 1, N = n;
    Vec2i sh{Z, -Z};
    return {{{{-3, -4 * N + 3}, Vec2i{-4 * N + 3, -3} + sh},
             {{-2, -2 * N + 2}, Vec2i{-2 * N + 2, -2} + sh},
             {{0, 0}, Vec2i{0, 0} + sh},
             {{2 * N - 2, 2}, Vec2i{2, 2 * N - 2} + sh}}};
}

bool pseudo_parallel_check(const Word& w, const std::vector<Vec2i>& labels, const ParameterPoint& X0,
                           const ParameterPoint& X1, int samples) {
    if (labels.size() < 2) return true;
    auto mod_pi = [](double t) {
        double r = std::fmod(t, kPi);
        return r < 0 ? r + kPi : r;
    };
    double ref = mod_pi(X0.dot(labels[0]));
    for (auto& v : labels) {
        double diff = std::abs(mod_pi(X0.dot(v)) - ref);
        if (std::min(diff, kPi - diff) > 1e-9) fail_pre("labels are not pseudo-parallel at the base point");
    }
    auto [lo, hi] = std::minmax_element(labels.begin(), labels.end(), [](Vec2i p, Vec2i q) { return p.x < q.x; });
    Vec2i ext_lo = *lo, ext_hi = *hi;
    for (int i = 0; i <= samples; ++i) {
        double t = double(i) / samples;
        ParameterPoint X{X0.x1 + t * (X1.x1 - X0.x1), X0.x2 + t * (X1.x2 - X0.x2)};
        Unfolding u(w, X);
        cplx rot = u.normalizer();
        auto negative = [&](Vec2i v) {
            cplx dir = expi(X.dot(v)) * rot;
            return dir.real() * dir.imag() < 0;
        };
        if (!negative(ext_lo) || !negative(ext_hi)) continue;
        for (auto& v : labels)
            if (!negative(v)) return false;
    }
    return true;
}

}  // namespace tribill
