#include "tribill/tableau.hpp"

#include <algorithm>
#include <queue>

#include <fmt/format.h>

namespace tribill {

void FourierTableau::add(Vec2i v, long long w) {
    if (w == 0) return;
    auto it = terms_.find(v);
    if (it == terms_.end()) {
        terms_.emplace(v, w);
        return;
    }
    it->second += w;
    if (it->second == 0) terms_.erase(it);
}

long long FourierTableau::at(Vec2i v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? 0 : it->second;
}

cplx FourierTableau::evaluate(const ParameterPoint& X) const {
    cplx s = 0;
    for (auto& [v, w] : terms_) s += double(w) * expi(X.dot(v));
    return s;
}

cplx FourierTableau::derivative(const ParameterPoint& X, int j) const {
    cplx s = 0;
    for (auto& [v, w] : terms_) s += cplx(0, double(w) * double(j == 1 ? v.x : v.y)) * expi(X.dot(v));
    return s;
}

FourierTableau FourierTableau::shifted(Vec2i t) const {
    FourierTableau r;
    for (auto& [v, w] : terms_) r.terms_.emplace(v + t, w);
    return r;
}

FourierTableau FourierTableau::operator-() const {
    FourierTableau r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

FourierTableau operator+(const FourierTableau& a, const FourierTableau& b) {
    FourierTableau r = a;
    for (auto& [v, w] : b.terms_) r.add(v, w);
    return r;
}

FourierTableau operator-(const FourierTableau& a, const FourierTableau& b) { return a + (-b); }

FourierTableau FourierTableau::alternating(const std::vector<Vec2i>& pts, int global_sign) {
    FourierTableau r;
    long long s = global_sign;
    for (auto& p : pts) {
        r.add(p, s);
        s = -s;
    }
    return r;
}

cplx MixedTableau::evaluate(const ParameterPoint& X) const {
    auto len = side_lengths(X);
    cplx s = 0;
    for (int d = 1; d <= 3; ++d)
        if (!by_type[d].empty()) s += len[d] * by_type[d].evaluate(X);
    return s;
}

cplx MixedTableau::derivative(const ParameterPoint& X, int j) const {
    auto len = side_lengths(X);
    auto dl = side_length_derivatives(X);
    cplx s = 0;
    for (int d = 1; d <= 3; ++d) {
        if (by_type[d].empty()) continue;
        s += len[d] * by_type[d].derivative(X, j);
        if (d != 3) s += dl[d][j] * by_type[d].evaluate(X);
    }
    return s;
}

bool MixedTableau::pure(int d) const {
    for (int e = 1; e <= 3; ++e)
        if (e != d && !by_type[e].empty()) return false;
    return true;
}

std::vector<std::pair<int, int>> side_path(const Unfolding& u, int a, int b, std::array<bool, 4> allowed) {
    if (a < 0 || b < 0 || size_t(a) >= u.vertex_count() || size_t(b) >= u.vertex_count())
        fail_arg("vertex id out of range");
    if (a == b) return {};
    const auto& S = u.sides();
    std::vector<std::vector<std::pair<int, int>>> adj(u.vertex_count());
    for (size_t s = 0; s < S.size(); ++s) {
        if (!allowed[S[s].type]) continue;
        adj[S[s].from].push_back({S[s].to, int(s)});
        adj[S[s].to].push_back({S[s].from, int(s)});
    }
    std::vector<int> prev(u.vertex_count(), -2), via(u.vertex_count(), -1);
    std::queue<int> bfs;
    bfs.push(a);
    prev[a] = -1;
    while (!bfs.empty() && prev[b] == -2) {
        int v = bfs.front();
        bfs.pop();
        for (auto [w, e] : adj[v])
            if (prev[w] == -2) {
                prev[w] = v;
                via[w] = e;
                bfs.push(w);
            }
    }
    if (prev[b] == -2) fail_pre("vertices are not connected by edges of the requested types");
    std::vector<std::pair<int, int>> path;
    for (int v = b; v != a; v = prev[v]) {
        int e = via[v];
        path.push_back({e, S[e].to == v ? 1 : -1});
    }
    std::reverse(path.begin(), path.end());
    return path;
}

MixedTableau path_tableau(const Unfolding& u, int a, int b, std::array<bool, 4> allowed) {
    MixedTableau t;
    for (auto [e, sgn] : side_path(u, a, b, allowed)) {
        const Side& s = u.sides()[e];
        t.by_type[s.type].add(s.label, sgn);
    }
    return t;
}

double DefiningFunction::F(const ParameterPoint& X) const {
    return (P.evaluate(X) * std::conj(Q.evaluate(X))).imag();
}

double sin_theta(const ParameterPoint& X, int d) {
    if (d == 1) return std::sin(X.x1);
    if (d == 2) return std::sin(X.x2);
    return std::sin(X.x1 + X.x2);
}

double DefiningFunction::F_normalized(const ParameterPoint& X) const {
    double s = sin_theta(X, d);
    return s * s * F(X);
}

double DefiningFunction::dF(const ParameterPoint& X, int j) const {
    cplx p = P.evaluate(X), q = Q.evaluate(X);
    cplx dp = P.derivative(X, j), dq = Q.derivative(X, j);
    return (dp * std::conj(q) + p * std::conj(dq)).imag();
}

DefiningFunction build_PQ(const Unfolding& u, int p, int q, int d) {
    if (d < 1 || d > 3) fail_arg("spine type must be 1, 2 or 3");
    if (!u.stable()) fail_pre("defining functions need a stable word");
    int pt = u.shift(p);
    if (pt < 0) fail_pre("vertex has no translate inside the unfolding; use a vertex of the middle period");
    std::array<bool, 4> allowed{};
    allowed[d] = true;
    DefiningFunction df;
    df.d = d;
    df.P = path_tableau(u, p, q, allowed).by_type[d];
    df.Q = path_tableau(u, p, pt, allowed).by_type[d];
    return df;
}

int global_sign_rule(const std::vector<Vec2i>& q_hat, const std::vector<Vec2i>& p_hat) {
    if (p_hat.empty()) return 1;
    auto it = std::find(q_hat.begin(), q_hat.end(), p_hat.front());
    if (it == q_hat.end())
        throw Error(ErrorKind::Unsupported, "first vertex of P-hat is not a vertex of Q-hat; sign rule does not apply");
    long u = long(it - q_hat.begin());
    return u % 2 == 0 ? 1 : -1;
}

double height_function(const MixedTableau& P, const MixedTableau& H, const ParameterPoint& X) {
    double s = sin_theta(X, 3);
    return s * s * (P.evaluate(X) * std::conj(H.evaluate(X))).imag();
}

}  // namespace tribill
