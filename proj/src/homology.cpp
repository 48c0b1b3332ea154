#include "tribill/homology.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>
#include <tbb/parallel_for.h>

namespace tribill {

namespace {

void check_n(int n) {
    if (n < 3) fail_arg("n must be at least 3");
}

void check_same(const ClassVector& a, const ClassVector& b) {
    if (a.n != b.n || a.c.size() != b.c.size()) fail_arg("dimension mismatch");
}

void check_vector(const ClassVector& v) {
    check_n(v.n);
    if (v.c.size() != size_t(2 * v.n + 1)) fail_arg("dimension mismatch");
}

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

// One step of a generator with exponent e = +-1.

HomologyVector step(Generator g, int e, const HomologyVector& x) {
    const int n = x.n;
    HomologyVector y = ClassVector::zero(n);
    switch (g) {
        case Generator::Sigma:
            for (int i : {1, -1}) y.b(-i) = x.b(i);
            for (int k = 1 - n; k < n; ++k) y.add_g(-k, x.g(k));
            break;
        case Generator::TauO:
            y.c = x.c;
            for (int k = 1 - n; k < n; ++k)
                if (k % 2 != 0) y.add_g(k, e * (x.g(k - 1) + x.g(k + 1)));
            break;
        case Generator::TauE:
            y.c = x.c;
            for (int k = 1 - n; k < n; ++k)
                if (k % 2 == 0) y.add_g(k, e * (x.g(k - 1) + x.g(k + 1)));
            for (int i : {1, -1}) y.b(i) = x.b(-i) + (e > 0 ? -x.g(-i) : x.g(i));
            break;
    }
    return y;
}

CohomologyVector step_star(Generator g, int e, const CohomologyVector& v, CohomologyReading r) {
    const int n = v.n;
    CohomologyVector y = ClassVector::zero(n);
    if (g == Generator::Sigma) return step(g, e, v);
    y.c = v.c;
    const int parity = g == Generator::TauO ? 0 : 1;  // parity of the coordinates that change
    const int moved = r == CohomologyReading::Dual ? parity : 1 - parity;
    for (int k = 1 - n; k < n; ++k)
        if (((k % 2) + 2) % 2 == moved) y.add_g(k, -e * (v.g(k - 1) + v.g(k + 1)));
    if (g == Generator::TauE) {
        for (int i : {1, -1}) {
            if (r == CohomologyReading::Dual) {
                y.b(i) = v.b(-i);
                y.add_g(i, e > 0 ? v.b(i) : -v.b(-i));
            } else {
                y.b(i) = e > 0 ? v.b(-i) + v.g(i) : v.b(-i) - v.g(-i);
            }
        }
    }
    return y;
}

template <class F>
ClassVector apply_letter(Letter l, ClassVector v, F&& f) {
    if (l.g == Generator::Sigma) {
        if (l.exp % 2 != 0) v = f(l.g, 1, v);
        return v;
    }
    const int e = l.exp > 0 ? 1 : -1;
    for (int t = 0; t < std::abs(l.exp); ++t) v = f(l.g, e, v);
    return v;
}

char letter_char(Generator g) { return g == Generator::Sigma ? 's' : g == Generator::TauO ? 'o' : 'e'; }

}  // namespace

ClassVector ClassVector::zero(int n) {
    check_n(n);
    return {n, std::vector<long long>(size_t(2 * n + 1), 0)};
}

ClassVector ClassVector::beta(int n, int i) {
    if (i != 1 && i != -1) fail_arg("beta index must be +1 or -1");
    ClassVector v = zero(n);
    v.b(i) = 1;
    return v;
}

ClassVector ClassVector::gamma(int n, int k) {
    ClassVector v = zero(n);
    if (k <= -n || k >= n) fail_arg("gamma index out of range");
    v.add_g(k, 1);
    return v;
}

long long pairing(const CohomologyVector& a, const HomologyVector& x) {
    check_same(a, x);
    long long s = 0;
    for (size_t j = 0; j < a.c.size(); ++j) s += a.c[j] * x.c[j];
    return s;
}

FoldingClass phi_star(int n) {
    FoldingClass f{ClassVector::zero(n), ClassVector::zero(n)};
    f.phi1.b(1) = 2 * n;
    f.phim1.b(-1) = 2 * n;
    for (int k = 1 - n; k < n; ++k) {
        long long c = k < 0 ? n + k : k == 0 ? n : -(n - k);
        f.phi1.add_g(k, c);
        f.phim1.add_g(k, k == 0 ? n : -c);
    }
    return f;
}

GeneratorWord parse_generator_word(const std::string& s) {
    GeneratorWord w;
    size_t p = 0;
    auto skip = [&] {
        while (p < s.size() && (std::isspace(static_cast<unsigned char>(s[p])) || s[p] == '*' || s[p] == ','))
            ++p;
    };
    skip();
    while (p < s.size()) {
        Letter l;
        auto take = [&](const std::string& t) {
            if (s.compare(p, t.size(), t) != 0) return false;
            p += t.size();
            return true;
        };
        if (take("sigma") || take("s"))
            l.g = Generator::Sigma;
        else if (take("tau_o") || take("o"))
            l.g = Generator::TauO;
        else if (take("tau_e") || take("e"))
            l.g = Generator::TauE;
        else
            fail_arg(fmt::format("bad generator at position {} in '{}'", p, s));
        if (p < s.size() && s[p] == '^') {
            ++p;
            size_t used = 0;
            try {
                l.exp = std::stoi(s.substr(p), &used);
            } catch (const std::exception&) {
                fail_arg(fmt::format("bad exponent in '{}'", s));
            }
            p += used;
        }
        if (l.exp != 0) w.push_back(l);
        skip();
    }
    return w;
}

std::string to_string(const GeneratorWord& w) {
    std::string out;
    for (const Letter& l : w) {
        if (!out.empty()) out += ' ';
        out += letter_char(l.g);
        if (l.exp != 1) out += fmt::format("^{}", l.exp);
    }
    return out.empty() ? "id" : out;
}

GeneratorWord inverse(const GeneratorWord& w) {
    GeneratorWord v(w.rbegin(), w.rend());
    for (Letter& l : v)
        if (l.g != Generator::Sigma) l.exp = -l.exp;
    return v;
}

HomologyVector act(Letter l, const HomologyVector& x) {
    check_vector(x);
    return apply_letter(l, x, [](Generator g, int e, const ClassVector& v) { return step(g, e, v); });
}

CohomologyVector act_star(Letter l, const CohomologyVector& v, CohomologyReading r) {
    check_vector(v);
    return apply_letter(l, v, [r](Generator g, int e, const ClassVector& u) { return step_star(g, e, u, r); });
}

HomologyVector act_word(const GeneratorWord& w, HomologyVector x) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = act(*it, x);
    return x;
}

CohomologyVector act_word_star(const GeneratorWord& w, CohomologyVector v, CohomologyReading r) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = act_star(*it, v, r);
    return v;
}

std::array<long long, 2> stability_coefficients(const GeneratorWord& w, int k, int n, CohomologyReading r) {
    check_n(n);
    if (k <= -n || k >= n) fail_arg("k must satisfy 1-n <= k <= n-1");
    FoldingClass f = phi_star(n);
    return {act_word_star(w, f.phi1, r).g(k), act_word_star(w, f.phim1, r).g(k)};
}

bool is_stable_class(const GeneratorWord& w, int k, int n, CohomologyReading r) {
    auto c = stability_coefficients(w, k, n, r);
    return c[0] == 0 && c[1] == 0;
}

RS track(RS a, Letter l) {
    if (l.g == Generator::Sigma) {
        if (l.exp % 2 != 0) a = {-a.r, -a.s};
        return a;
    }
    const int e = l.exp > 0 ? 1 : -1;
    for (int t = 0; t < std::abs(l.exp); ++t) {
        if (l.g == Generator::TauO)
            a.s -= 2 * e * a.r;
        else
            a.r -= 2 * e * a.s;
    }
    return a;
}

bool matches_mod_2n(const CohomologyVector& v, RS a) {
    const long long m = 2LL * v.n;
    if (mod(a.r, 2) != 1 || mod(a.s, 2) != 1) return false;
    for (int k = 1 - v.n; k < v.n; ++k) {
        long long want = (k % 2 != 0 ? a.r : a.s) * (k + v.n);
        if (mod(v.g(k) - want, m) != 0) return false;
    }
    return true;
}

InvariantCheck instability_invariant(const GeneratorWord& w, int n) {
    FoldingClass f = phi_star(n);
    InvariantCheck out;
    std::array<CohomologyVector, 2> v{f.phi1, f.phim1};
    out.rs = {RS{1, 1}, RS{-1, -1}};
    for (int i = 0; i < 2; ++i)
        if (!matches_mod_2n(v[i], out.rs[i])) out.holds = false;
    if (!out.holds) return out;
    for (int j = int(w.size()) - 1; j >= 0; --j) {
        for (int i = 0; i < 2; ++i) {
            v[i] = act_star(w[size_t(j)], v[i]);
            out.rs[i] = track(out.rs[i], w[size_t(j)]);
            if (!matches_mod_2n(v[i], out.rs[i])) {
                out.holds = false;
                out.violation = j;
                return out;
            }
        }
    }
    return out;
}

namespace {

struct Hash128 {
    std::uint64_t a, b;
    friend bool operator==(const Hash128&, const Hash128&) = default;
};
struct Hash128Hasher {
    size_t operator()(const Hash128& h) const noexcept { return size_t(h.a ^ (h.b * 0x9e3779b97f4a7c15ULL)); }
};

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Hash128 hash_values(const std::vector<long long>& v) {
    std::uint64_t a = 0x12345678ULL, b = 0xabcdef01ULL;
    for (long long x : v) {
        a = mix(a ^ std::uint64_t(x));
        b = mix(b + std::uint64_t(x) * 0x100000001b3ULL);
    }
    return {a, b};
}

struct Node {
    std::vector<long long> v;  // w*(phi*_1) then w*(phi*_-1)
    std::array<RS, 2> rs;
    GeneratorWord word;
};

const std::array<Letter, 5> kLetters{Letter{Generator::Sigma, 1}, Letter{Generator::TauO, 1},
                                     Letter{Generator::TauO, -1}, Letter{Generator::TauE, 1},
                                     Letter{Generator::TauE, -1}};

}  // namespace

BfsReport homology_bfs(int n, int depth, bool stop_at_stable) {
    check_n(n);
    if (depth < 0) fail_arg("depth must be non-negative");
    const size_t dim = size_t(2 * n + 1);
    const long long m = 2LL * n;
    BfsReport rep;
    rep.n = n;
    rep.depth = depth;

    std::unordered_set<Hash128, Hash128Hasher> seen, seen_mod;
    auto reduced = [&](const std::vector<long long>& v) {
        std::vector<long long> r(v.size());
        for (size_t j = 0; j < v.size(); ++j) r[j] = mod(v[j], m);
        return r;
    };
    auto split = [&](const std::vector<long long>& v, int i) {
        ClassVector c{n, std::vector<long long>(v.begin() + long(i * dim), v.begin() + long((i + 1) * dim))};
        return c;
    };
    auto stable_k = [&](const std::vector<long long>& v) -> std::optional<int> {
        for (int k = 1 - n; k < n; ++k) {
            size_t j = size_t(k + n + 1);
            if (v[j] == 0 && v[dim + j] == 0) return k;
        }
        return std::nullopt;
    };

    FoldingClass f = phi_star(n);
    Node root;
    root.v = f.phi1.c;
    root.v.insert(root.v.end(), f.phim1.c.begin(), f.phim1.c.end());
    root.rs = {RS{1, 1}, RS{-1, -1}};
    seen.insert(hash_values(root.v));
    seen_mod.insert(hash_values(reduced(root.v)));
    rep.invariant_holds = matches_mod_2n(f.phi1, root.rs[0]) && matches_mod_2n(f.phim1, root.rs[1]);
    if (auto k = stable_k(root.v)) {
        rep.stable_found = true;
        rep.stable = std::make_pair(GeneratorWord{}, *k);
        if (stop_at_stable) {
            rep.distinct = seen.size();
            rep.distinct_mod_2n = seen_mod.size();
            return rep;
        }
    }

    std::vector<Node> frontier{root};
    const size_t chunk = 4096;
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<Node> next;
        for (size_t base = 0; base < frontier.size(); base += chunk) {
            const size_t cnt = std::min(chunk, frontier.size() - base);
            std::vector<Node> kids(cnt * kLetters.size());
            std::vector<char> ok(kids.size(), 1);
            tbb::parallel_for(size_t(0), cnt, [&](size_t t) {
                const Node& p = frontier[base + t];
                for (size_t li = 0; li < kLetters.size(); ++li) {
                    Node& c = kids[t * kLetters.size() + li];
                    const Letter l = kLetters[li];
                    c.word.reserve(p.word.size() + 1);
                    c.word.push_back(l);
                    c.word.insert(c.word.end(), p.word.begin(), p.word.end());
                    c.v.reserve(2 * dim);
                    for (int i = 0; i < 2; ++i) {
                        ClassVector u = act_star(l, split(p.v, i));
                        c.v.insert(c.v.end(), u.c.begin(), u.c.end());
                        c.rs[size_t(i)] = track(p.rs[size_t(i)], l);
                        if (!matches_mod_2n(u, c.rs[size_t(i)])) ok[t * kLetters.size() + li] = 0;
                    }
                }
            });
            for (size_t j = 0; j < kids.size(); ++j) {
                Node& c = kids[j];
                if (!seen.insert(hash_values(c.v)).second) continue;
                seen_mod.insert(hash_values(reduced(c.v)));
                if (!ok[j]) rep.invariant_holds = false;
                if (auto k = stable_k(c.v); k && !rep.stable_found) {
                    rep.stable_found = true;
                    rep.stable = std::make_pair(c.word, *k);
                    if (stop_at_stable) {
                        rep.distinct = seen.size();
                        rep.distinct_mod_2n = seen_mod.size();
                        return rep;
                    }
                }
                if (d + 1 < depth) next.push_back(std::move(c));
            }
        }
        frontier = std::move(next);
    }
    rep.distinct = seen.size();
    rep.distinct_mod_2n = seen_mod.size();
    return rep;
}

namespace {

std::vector<GeneratorWord> reduced_words(int max_len) {
    const std::array<Letter, 4> letters{Letter{Generator::TauO, 1}, Letter{Generator::TauO, -1},
                                        Letter{Generator::TauE, 1}, Letter{Generator::TauE, -1}};
    std::vector<GeneratorWord> out{{}}, cur{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<GeneratorWord> next;
        for (const GeneratorWord& w : cur)
            for (const Letter& l : letters) {
                if (!w.empty() && w.back().g == l.g && w.back().exp == -l.exp) continue;
                GeneratorWord v = w;
                v.push_back(l);
                next.push_back(std::move(v));
            }
        out.insert(out.end(), next.begin(), next.end());
        cur = std::move(next);
    }
    return out;
}

std::optional<int> stable_index(const CohomologyVector& p, const CohomologyVector& q) {
    for (int k = 1 - p.n; k < p.n; ++k)
        if (p.g(k) == 0 && q.g(k) == 0) return k;
    return std::nullopt;
}

}  // namespace

std::optional<std::pair<GeneratorWord, int>> find_stable_class(int n, int bfs_depth, int x_len, int y_len) {
    BfsReport r = homology_bfs(n, bfs_depth, true);
    if (r.stable) return r.stable;
    const FoldingClass f = phi_star(n);
    const std::vector<GeneratorWord> xs = reduced_words(x_len), ys = reduced_words(y_len);
    for (const GeneratorWord& x : xs) {
        if (x.empty()) continue;
        for (const GeneratorWord& y : ys) {
            CohomologyVector p = act_word_star(y, f.phi1), q = act_word_star(y, f.phim1);
            GeneratorWord w = y;
            for (int j = 1; j <= 3 * n; ++j) {
                p = act_word_star(x, p);
                q = act_word_star(x, q);
                w.insert(w.begin(), x.begin(), x.end());
                if (auto k = stable_index(p, q)) return std::make_pair(w, *k);
            }
        }
    }
    return std::nullopt;
}

Certificate certificate(int n, int bfs_depth) {
    check_n(n);
    Certificate c;
    c.n = n;
    int a = 0, b = n;
    while (b % 2 == 0) b /= 2, ++a;
    c.power_of_two = b == 1;
    if (c.power_of_two) {
        c.bfs = homology_bfs(n, bfs_depth);
        if (c.bfs->stable) c.witness = c.bfs->stable;
    } else {
        if (a == 0) {
            c.formula_word = {Letter{Generator::TauO, -(n - 1) / 2}};
            c.formula_k = 1;
        } else {
            c.formula_word = {Letter{Generator::TauE, -(b - 1) / 2}};
            for (int t = 0; t < (1 << (a - 1)); ++t) {
                c.formula_word.push_back({Generator::TauO, -1});
                c.formula_word.push_back({Generator::TauE, 1});
            }
            c.formula_k = -(1 << a);
        }
        c.formula_coefficients = stability_coefficients(c.formula_word, c.formula_k, n);
        c.formula_verified = c.formula_coefficients[0] == 0 && c.formula_coefficients[1] == 0;
        c.formula_coefficients_substitution =
            stability_coefficients(c.formula_word, c.formula_k, n, CohomologyReading::Substitution);
        c.witness = c.formula_verified ? std::make_pair(c.formula_word, c.formula_k) : find_stable_class(n);
    }
    if (c.witness) {
        const FoldingClass f = phi_star(n);
        c.witness_class = act_word(inverse(c.witness->first), ClassVector::gamma(n, c.witness->second));
        c.witness_phi = {pairing(f.phi1, c.witness_class), pairing(f.phim1, c.witness_class)};
    }
    return c;
}

int even_claim_first_failure(int n, int i, CohomologyReading r) {
    if (i != 1 && i != -1) fail_arg("i must be +1 or -1");
    CohomologyVector v = phi_star(n)[i];
    const GeneratorWord step_word{{Generator::TauO, -1}, {Generator::TauE, 1}};
    for (int m = 0; 2 * m < n; ++m) {
        const long long sign = m % 2 == 0 ? 1 : -1;
        for (int k = 1 - n; k < n; ++k) {
            long long want = sign * (k <= -2 * m ? k + n : -(n - k));
            if (v.g(k) != want) return m;
        }
        v = act_word_star(step_word, v, r);
    }
    return -1;
}

}  // namespace tribill
