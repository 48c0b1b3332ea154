#include "tribill/families.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

namespace tribill {

namespace {

std::mutex cache_mutex;
std::map<std::tuple<int, int, int>, Word> cache;

template <class F>
Word cached(FamilyKind kind, int n, int k, F make) {
    auto key = std::make_tuple(int(kind), n, k);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Word w = make();
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(key, w);
    return w;
}

LatticePath closed_path(std::vector<Vec2i> v) {
    LatticePath p;
    v.push_back(v.front());
    p.vertices = std::move(v);
    p.closed = true;
    for (size_t i = 0; i < p.vertices.size(); ++i) p.colors.push_back(int(i % 2));
    return p;
}

}  // namespace

FamilyId parse_family(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 2 || parts[0].size() != 1) fail_arg("family must look like A:4 or W:4:3");
    FamilyId id;
    switch (parts[0][0]) {
        case 'A': id.kind = FamilyKind::A; break;
        case 'B': id.kind = FamilyKind::B; break;
        case 'C': id.kind = FamilyKind::C; break;
        case 'Y': id.kind = FamilyKind::Y; break;
        case 'U': id.kind = FamilyKind::U; break;
        case 'W': id.kind = FamilyKind::W; break;
        default: fail_arg("unknown family kind " + parts[0]);
    }
    try {
        id.n = std::stoi(parts[1]);
        id.m_or_k = parts.size() > 2 ? std::stoi(parts[2]) : 0;
    } catch (const std::exception&) {
        fail_arg("family parameters must be integers");
    }
    bool needs_second = id.kind == FamilyKind::Y || id.kind == FamilyKind::W;
    if (needs_second && parts.size() != 3) fail_arg("families Y and W take two parameters");
    if (!needs_second && parts.size() != 2) fail_arg("families A, B, C, U take one parameter");
    return id;
}

std::string family_name(const FamilyId& id) {
    const char* k = "ABCYUW" + int(id.kind);
    std::string s = fmt::format("{}:{}", *k, id.n);
    if (id.kind == FamilyKind::Y || id.kind == FamilyKind::W) s += fmt::format(":{}", id.m_or_k);
    return s;
}

Word gen_A(int n) {
    if (n < 2) fail_arg("A_n needs n >= 2");
    Word half = repeat("23", n) + repeat("13", n - 1) + "1";
    return half + half;
}

Word gen_unstable(int n) {
    if (n < 2) fail_arg("u_n needs n >= 2");
    return repeat("31", n - 1) + repeat("32", n - 1);
}

Word gen_Y(int n, int m) {
    if (n < 2 || m < 1) fail_arg("Y_{n,m} needs n >= 2 and m >= 1");
    return "1" + repeat(gen_unstable(n), m) + "32";
}

LatticePath squarepath_B(int n) {
    if (n < 4) fail_arg("B_n needs n >= 4");
    const long long N = n;
    const long long xs[20] = {0,          2 * N - 2,  2 * N - 2,  -2,         -2,
                              -2 * N,     -2 * N,     -2,         -2,         2 * N - 8,
                              2 * N - 8,  4 * N - 12, 4 * N - 12, 6 * N - 12, 6 * N - 12,
                              4 * N - 8,  4 * N - 8,  2 * N - 2,  2 * N - 2,  0};
    const long long ys[20] = {1,          1,           -2 * N + 3,  -2 * N + 3,  1,
                              1,          -2 * N + 1,  -2 * N + 1,  -4 * N + 5,  -4 * N + 5,
                              -6 * N + 11, -6 * N + 11, -8 * N + 13, -8 * N + 13, -6 * N + 11,
                              -6 * N + 11, -4 * N + 5,  -4 * N + 5,  -2 * N + 1,  -2 * N + 1};
    std::vector<Vec2i> v;
    for (int i = 0; i < 20; ++i) v.push_back({xs[i], ys[i]});
    return closed_path(v);
}

LatticePath squarepath_W(int n, int k) {
    if (n < 3 || k < 0) fail_arg("W_{nk} needs n >= 3 and k >= 0");
    const long long M = 2LL * n - 2;
    const Vec2i T{M, -M};
    const Vec2i L[13] = {{},           {0, 1},          {M, 1},          {M, 1 - M},     {2 * M, 1 - M},
                         {2 * M, 1 - 2 * M}, {M - 2, 1 - 2 * M}, {M - 2, 1 - M}, {-2, 1 - M},
                         {-2, -1 - 2 * M}, {M, -1 - 2 * M}, {M, -1 - M},   {0, -1 - M}};
    std::vector<Vec2i> v = {L[1], L[2], L[3], L[4], L[5]};
    for (int j = 1; j <= k; ++j) {
        v.push_back(L[4] + j * T);
        v.push_back(L[5] + j * T);
    }
    for (int j = k; j >= 1; --j) {
        v.push_back(L[6] + j * T);
        v.push_back(L[7] + j * T);
    }
    v.insert(v.end(), {L[6], L[7], L[8], L[9]});
    for (int j = 1; j <= k; ++j) {
        v.push_back(L[9] + (j - 1) * T + Vec2i{M, 0});
        v.push_back(L[9] + j * T);
    }
    for (int j = k; j >= 1; --j) {
        v.push_back(L[10] + j * T);
        v.push_back(L[11] + j * T);
    }
    v.insert(v.end(), {L[10], L[11], L[12]});
    return closed_path(v);
}

long long length_W(int n, int k) { return 24LL * n + 16LL * n * k - 16LL * k - 20; }

long long length_W_printed(int n, int k) { return 24LL * n + 30LL * k * k - 68LL * k - 20; }

Word anchor_to_squarepath(const Word& w, const LatticePath& target) {
    const size_t L = w.size();
    for (size_t r = 0; r < L; r += 2) {
        Word c = w.substr(r) + w.substr(0, r);
        if (squarepath(c).vertices == target.vertices) return c;
    }
    throw Error(ErrorKind::Internal, "no rotation of the decoded word reproduces the squarepath");
}

Word gen_B(int n) {
    return cached(FamilyKind::B, n, 0, [n] {
        LatticePath p = squarepath_B(n);
        return anchor_to_squarepath(word_from_squarepath(p), p);
    });
}

Word gen_C(int n) { return swap12(gen_B(n)); }

Word gen_W(int n, int k) {
    return cached(FamilyKind::W, n, k, [n, k] {
        LatticePath p = squarepath_W(n, k);
        return anchor_to_squarepath(word_from_squarepath(p), p);
    });
}

Word gen_family(const FamilyId& id) {
    switch (id.kind) {
        case FamilyKind::A: return gen_A(id.n);
        case FamilyKind::B: return gen_B(id.n);
        case FamilyKind::C: return gen_C(id.n);
        case FamilyKind::Y: return gen_Y(id.n, id.m_or_k);
        case FamilyKind::U: return gen_unstable(id.n);
        case FamilyKind::W: return gen_W(id.n, id.m_or_k);
    }
    fail_arg("unknown family");
}

}  // namespace tribill
