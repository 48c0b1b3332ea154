#include "tribill/unfolding.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace tribill {

namespace {

// (left, right) corners of the side of type d, for a white triangle.
std::pair<Corner, Corner> white_exit(int d) {
    switch (d) {
        case 1: return {CornerC, CornerB};
        case 2: return {CornerA, CornerC};
        default: return {CornerB, CornerA};
    }
}

Corner new_corner(int d) { return d == 1 ? CornerA : d == 2 ? CornerB : CornerC; }

Word prepare_word(const Word& w, bool square_odd) {
    validate_word(w);
    if (w.size() % 2 == 1) {
        if (!square_odd) fail_pre("odd-length word has no parallel first and last sides; square it first");
        return w + w;
    }
    return w;
}

}  // namespace

Unfolding::Unfolding(const Word& w, const ParameterPoint& X, UnfoldOptions opt)
    : word_(prepare_word(w, opt.square_odd)), X_(X), periods_(opt.periods) {
    check_point(X, opt.general_region);
    if (periods_ < 1) fail_arg("periods must be positive");
    L_ = word_.size();
    const size_t N = size_t(periods_) * L_;
    m3_ = long_side_labels(word_, N);
    stable_ = m3_[L_] == m3_[0];
    auto len = side_lengths(X);

    tri_.resize(N + 1);
    auto add_vertex = [&](cplx p, Corner c, size_t t) {
        pos_.push_back(p);
        type_.push_back(c);
        first_tri_.push_back(t);
        return int(pos_.size() - 1);
    };
    tri_[0][CornerA] = add_vertex({0, 0}, CornerA, 0);
    tri_[0][CornerB] = add_vertex(expi(X.dot(m3_[0])), CornerB, 0);
    tri_[0][CornerC] = add_vertex(len[2] * expi(X.dot(label(0, 2))), CornerC, 0);
    for (size_t i = 1; i <= N; ++i) {
        int d = word_[(i - 1) % L_] - '0';
        tri_[i] = tri_[i - 1];
        Corner nc = new_corner(d);
        const auto& t = tri_[i];
        cplx p;
        if (nc == CornerA)
            p = pos_[t[CornerB]] - expi(X.dot(m3_[i]));
        else if (nc == CornerB)
            p = pos_[t[CornerA]] + expi(X.dot(m3_[i]));
        else
            p = pos_[t[CornerA]] + len[2] * expi(X.dot(label(i, 2)));
        tri_[i][nc] = add_vertex(p, nc, i);
    }

    // Rotate by a half turn so the chain grows toward +x.
    for (auto& p : pos_) p = -p;

    // Sides with canonical orientation, deduplicated.
    std::map<std::pair<int, int>, int> seen;
    for (size_t i = 0; i <= N; ++i) {
        const auto& t = tri_[i];
        const std::array<std::pair<int, int>, 4> ends = {
            std::pair{-1, -1}, {t[CornerB], t[CornerC]}, {t[CornerC], t[CornerA]}, {t[CornerB], t[CornerA]}};
        for (int d = 1; d <= 3; ++d) {
            auto key = ends[d];
            if (seen.count(key)) continue;
            seen[key] = int(sides_.size());
            sides_.push_back({d, label(i, d), key.first, key.second});
        }
    }

    cross_.assign(N + 1, {-1, -1});
    for (size_t i = 1; i <= N; ++i) {
        int d = word_[(i - 1) % L_] - '0';
        auto [l, r] = white_exit(d);
        if (color(i - 1) == 1) std::swap(l, r);
        cross_[i] = {tri_[i - 1][l], tri_[i - 1][r]};
    }

    shift_.assign(pos_.size(), -1);
    unshift_.assign(pos_.size(), -1);
    if (stable_) {
        hol_ = pos_[tri_[L_][CornerA]] - pos_[tri_[0][CornerA]];
        rot_ = std::conj(hol_) / std::abs(hol_);
        for (size_t i = 0; i + L_ <= N; ++i)
            for (int c = 0; c < 3; ++c) {
                shift_[tri_[i][c]] = tri_[i + L_][c];
                unshift_[tri_[i + L_][c]] = tri_[i][c];
            }
    } else {
        hol_ = {0, 0};
        rot_ = {1, 0};
    }

    size_t lo = periods_ >= 3 ? L_ : 1;
    for (size_t i = lo; i < lo + L_ && i <= N; ++i) {
        if (top_.empty() || top_.back() != cross_[i].first) top_.push_back(cross_[i].first);
        if (bottom_.empty() || bottom_.back() != cross_[i].second) bottom_.push_back(cross_[i].second);
    }
}

std::vector<int> Unfolding::sides_of_type(int d) const {
    std::vector<int> out;
    std::set<int> verts;
    size_t lo = periods_ >= 3 ? L_ : 0;
    for (size_t i = lo; i < lo + L_; ++i)
        for (int c = 0; c < 3; ++c) verts.insert(tri_[i][c]);
    for (size_t s = 0; s < sides_.size(); ++s)
        if (sides_[s].type == d && verts.count(sides_[s].from) && verts.count(sides_[s].to)) out.push_back(int(s));
    return out;
}

Membership membership(const Unfolding& u) {
    if (!u.stable()) fail_pre("unstable word: first and last sides are not parallel");
    Membership m;
    double min_top = INFINITY, max_bot = -INFINITY;
    for (int v : u.top()) {
        double h = u.height(v);
        if (h < min_top) {
            min_top = h;
            m.lowest_top = v;
        }
    }
    for (int v : u.bottom()) {
        double h = u.height(v);
        if (h > max_bot) {
            max_bot = h;
            m.highest_bottom = v;
        }
    }
    m.separation = min_top - max_bot;
    std::set<int> tops(u.top().begin(), u.top().end());
    bool shared = std::any_of(u.bottom().begin(), u.bottom().end(), [&](int v) { return tops.count(v) > 0; });
    m.member = !shared && m.separation > kHeightTol;
    return m;
}

namespace {

// One-period membership with incremental phase updates; no vertex bookkeeping
// beyond corner ids.
Membership fast_membership(const Word& w, const ParameterPoint& X) {
    const size_t L = w.size();
    auto len = side_lengths(X);
    const cplx e2 = expi(2 * X.x1), e1 = expi(-2 * X.x2), h = expi(X.x1);
    // Phase of the long-side label, updated by the generator steps.
    int last = w.back() - '0';
    cplx ph = last == 2 ? std::conj(h) : last == 1 ? expi(X.x2) : cplx(1, 0);
    std::vector<cplx> P;
    P.reserve(L + 3);
    std::array<int, 3> t = {0, 1, 2};
    P.push_back({0, 0});
    P.push_back(ph);
    P.push_back(len[2] * ph * h);
    std::vector<std::pair<int, int>> cr;
    cr.reserve(L);
    for (size_t i = 1; i <= L; ++i) {
        int d = w[i - 1] - '0';
        int col = int((i - 1) % 2);
        auto [l, r] = white_exit(d);
        if (col == 1) std::swap(l, r);
        cr.push_back({t[l], t[r]});
        if (d == 2) ph = col == 0 ? ph * e2 : ph * std::conj(e2);
        if (d == 1) ph = col == 0 ? ph * e1 : ph * std::conj(e1);
        Corner nc = new_corner(d);
        cplx p;
        if (nc == CornerA)
            p = P[t[CornerB]] - ph;
        else if (nc == CornerB)
            p = P[t[CornerA]] + ph;
        else
            p = P[t[CornerA]] + len[2] * ph * (i % 2 == 0 ? h : std::conj(h));
        P.push_back(p);
        t[nc] = int(P.size() - 1);
    }
    cplx H = P[t[CornerA]] - P[0];
    cplx rot = std::conj(H) / std::abs(H);
    Membership m;
    double min_top = INFINITY, max_bot = -INFINITY;
    std::vector<int> tops;
    for (auto [l, r] : cr) {
        double hl = (P[l] * rot).imag(), hr = (P[r] * rot).imag();
        if (hl < min_top) {
            min_top = hl;
            m.lowest_top = l;
        }
        if (hr > max_bot) {
            max_bot = hr;
            m.highest_bottom = r;
        }
    }
    m.separation = min_top - max_bot;
    m.member = m.separation > kHeightTol;
    return m;
}

}  // namespace

Membership membership_geometric(const Word& w, const ParameterPoint& X, bool raw) {
    validate_word(w);
    check_point(X);
    Word ww = w;
    if (w.size() % 2 == 1) {
        if (raw) fail_pre("odd-length word has no parallel first and last sides; square it first");
        ww = w + w;
    }
    if (!is_stable_parity(ww)) fail_pre("unstable word: first and last sides are not parallel");
    return fast_membership(ww, X);
}

double edge_angle(Vec2i p, Vec2i q, const ParameterPoint& X) {
    double t = std::fmod(X.dot(q - p), kPi);
    if (t < 0) t += kPi;
    return t;
}

std::vector<std::pair<size_t, int>> dart_runs(const Word& w) {
    validate_word(w);
    const size_t L = w.size();
    std::vector<size_t> steps;
    for (size_t j = 0; j < L; ++j)
        if (w[j] != '3') steps.push_back(j);
    if (steps.empty()) return {};
    const size_t S = steps.size();
    // joined[i]: step i continues into step i+1 as d3d.
    std::vector<bool> joined(S);
    for (size_t i = 0; i < S; ++i) {
        size_t a = steps[i], b = steps[(i + 1) % S];
        joined[i] = w[a] == w[b] && (b + L - a) % L == 2 && w[(a + 1) % L] == '3';
    }
    size_t first = 0;
    while (first < S && joined[(first + S - 1) % S]) ++first;
    if (first == S) return {{steps[0], int(S)}};
    std::vector<std::pair<size_t, int>> runs;
    for (size_t c = 0; c < S;) {
        size_t i = (first + c) % S;
        int k = 1;
        while (joined[(i + k - 1) % S] && c + k < S) ++k;
        runs.push_back({steps[i], k});
        c += k;
    }
    return runs;
}

int max_dart_order(const Word& w) {
    int best = 0;
    for (auto& r : dart_runs(w)) best = std::max(best, r.second);
    return best;
}

DartDecomposition dart_decomposition(const Unfolding& u) {
    if (u.periods() < 3) fail_arg("dart decomposition needs three periods");
    DartDecomposition dd;
    const size_t L = u.period();
    for (auto [j0, k] : dart_runs(u.word())) {
        Dart D;
        D.order = k;
        D.digit = u.word()[j0] - '0';
        size_t p = L + j0;
        D.start = p;
        size_t q = p + 2 * size_t(k) - 1;
        Corner bc = D.digit == 1 ? CornerB : CornerA;
        Corner oc = D.digit == 1 ? CornerA : CornerB;
        D.base = u.triangle(p)[bc];
        D.base_is_top = u.crossing(p + 1).first == D.base;
        D.outer_left = u.triangle(p)[oc];
        D.outer_right = u.triangle(q)[oc];
        D.inner_left = u.triangle(p)[CornerC];
        D.inner_right = u.triangle(q)[CornerC];
        std::set<int> sup = {D.base, D.outer_left, D.outer_right, D.inner_left, D.inner_right};
        std::set<int> inf;
        for (size_t i = p; i <= q; ++i)
            for (int c = 0; c < 3; ++c)
                if (!sup.count(u.triangle(i)[c])) inf.insert(u.triangle(i)[c]);
        D.inferior.assign(inf.begin(), inf.end());
        dd.max_order = std::max(dd.max_order, k);
        dd.darts.push_back(std::move(D));
    }
    return dd;
}

std::vector<int> spine(const Unfolding& u, int d) {
    if (!u.stable()) fail_pre("spine needs a stable word");
    if (d < 1 || d > 3) fail_arg("spine type must be 1, 2 or 3");
    const auto& S = u.sides();
    std::vector<std::vector<std::pair<int, int>>> adj(u.vertex_count());
    for (size_t s = 0; s < S.size(); ++s)
        if (S[s].type == d) {
            adj[S[s].from].push_back({S[s].to, int(s)});
            adj[S[s].to].push_back({S[s].from, int(s)});
        }
    std::vector<int> best;
    for (int s : u.sides_of_type(d)) {
        int v0 = S[s].from;
        int target = u.shift(v0);
        if (target < 0) continue;
        std::vector<int> prev(u.vertex_count(), -2), via(u.vertex_count(), -1);
        std::queue<int> bfs;
        bfs.push(v0);
        prev[v0] = -1;
        while (!bfs.empty() && prev[target] == -2) {
            int v = bfs.front();
            bfs.pop();
            for (auto [w, e] : adj[v])
                if (prev[w] == -2) {
                    prev[w] = v;
                    via[w] = e;
                    bfs.push(w);
                }
        }
        if (prev[target] == -2) continue;
        std::vector<int> path;
        for (int v = target; v != v0; v = prev[v]) path.push_back(via[v]);
        std::reverse(path.begin(), path.end());
        if (best.empty() || path.size() < best.size()) best = path;
    }
    if (best.empty()) fail_pre("no periodic spine of the requested type");
    return best;
}

bool dart_lemma_applies(const Word& w, const ParameterPoint& X) {
    Unfolding u(w, X);
    if (!u.stable()) fail_pre("unstable word");
    auto dd = dart_decomposition(u);
    if (std::max(X.x1, X.x2) > 2 * kPi / dd.max_order) return false;
    std::set<int> tops, bots;
    for (size_t i = 1; i < u.triangle_count(); ++i) {
        tops.insert(u.crossing(i).first);
        bots.insert(u.crossing(i).second);
    }
    double min_top = INFINITY, max_bot = -INFINITY;
    for (auto& D : dd.darts)
        for (int v : {D.base, D.outer_left, D.outer_right, D.inner_left, D.inner_right}) {
            if (tops.count(v)) min_top = std::min(min_top, u.height(v));
            if (bots.count(v)) max_bot = std::max(max_bot, u.height(v));
        }
    return min_top > max_bot + kHeightTol;
}

bool darts_controlled(const Unfolding& u, const DartDecomposition& dd) {
    const auto& X = u.point();
    for (auto& D : dd.darts) {
        double base_angle = D.digit == 1 ? X.x2 : X.x1;
        if ((2 * D.order - 2) * base_angle >= kPi) return false;
        cplx b = u.normalized(D.base);
        cplx l = u.normalized(D.inner_left) - b, r = u.normalized(D.inner_right) - b;
        cplx ol = u.normalized(D.outer_left) - b, orr = u.normalized(D.outer_right) - b;
        cplx center = ol / std::abs(ol) + orr / std::abs(orr);
        double sgn = D.base_is_top ? -1.0 : 1.0;
        if (sgn * center.imag() <= 0) return false;
        if (sgn * l.imag() <= 0 || sgn * r.imag() <= 0) return false;
    }
    return true;
}

std::string unfolding_svg(const Unfolding& u) {
    std::vector<cplx> pts;
    size_t lo = u.periods() >= 3 ? u.period() : 0;
    size_t hi = std::min(u.triangle_count() - 1, lo + u.period());
    for (size_t i = lo; i <= hi; ++i)
        for (int c = 0; c < 3; ++c) pts.push_back(u.normalized(u.triangle(i)[c]));
    double minx = INFINITY, maxx = -INFINITY, miny = INFINITY, maxy = -INFINITY;
    for (auto p : pts) {
        minx = std::min(minx, p.real());
        maxx = std::max(maxx, p.real());
        miny = std::min(miny, p.imag());
        maxy = std::max(maxy, p.imag());
    }
    double pad = 0.5, W = maxx - minx + 2 * pad, H = maxy - miny + 2 * pad;
    double scale = 900.0 / std::max(W, 1e-9);
    auto X = [&](cplx p) { return (p.real() - minx + pad) * scale; };
    auto Y = [&](cplx p) { return (maxy - p.imag() + pad) * scale; };
    std::ostringstream os;
    os << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.1f}\" height=\"{:.1f}\">\n", W * scale,
                      H * scale);
    for (size_t i = lo; i <= hi; ++i) {
        const auto& t = u.triangle(i);
        os << "<polygon fill=\"" << (i % 2 ? "#dde4ee" : "#f7f7f7") << "\" stroke=\"#333\" stroke-width=\"0.6\" points=\"";
        for (int c = 0; c < 3; ++c) os << fmt::format("{:.2f},{:.2f} ", X(u.normalized(t[c])), Y(u.normalized(t[c])));
        os << "\"/>\n";
    }
    for (int v : u.top())
        os << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"#c0392b\"/>\n", X(u.normalized(v)),
                          Y(u.normalized(v)));
    for (int v : u.bottom())
        os << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"#2471a3\"/>\n", X(u.normalized(v)),
                          Y(u.normalized(v)));
    if (u.stable()) {
        auto m = membership(u);
        if (m.member) {
            double y = u.height(m.highest_bottom) + m.separation / 2;
            os << fmt::format("<line x1=\"0\" y1=\"{0:.2f}\" x2=\"{1:.2f}\" y2=\"{0:.2f}\" stroke=\"#27ae60\"/>\n",
                              Y(cplx(0, y)), W * scale);
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace tribill
