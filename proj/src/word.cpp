#include "tribill/word.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

namespace tribill {

void validate_word(const Word& w, bool allow_repeats) {
    if (w.empty()) fail_arg("empty word");
    for (char ch : w)
        if (ch < '1' || ch > '3') fail_arg(fmt::format("invalid symbol '{}' in word", ch));
    if (allow_repeats || w.size() < 2) return;
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i] == w[(i + 1) % w.size()])
            fail_arg(fmt::format("word repeats symbol {} at position {}", w[i], i + 1));
}

bool is_stable_parity(const Word& w) {
    validate_word(w, true);
    std::array<long, 4> odd{}, even{};
    for (size_t i = 0; i < w.size(); ++i) {
        int d = w[i] - '0';
        if (i % 2 == 0)
            ++odd[d];
        else
            ++even[d];
    }
    for (int d = 1; d <= 3; ++d)
        if (odd[d] != even[d]) return false;
    return true;
}

Vec2i generator(int d) {
    if (d == 2) return {2, 0};
    if (d == 1) return {0, -2};
    return {0, 0};
}

Vec2i side_label(Vec2i m3, int d, int color) {
    if (d == 3) return m3;
    Vec2i g = generator(d);
    Vec2i half{g.x / 2, g.y / 2};
    return color == 0 ? m3 + half : m3 - half;
}

std::vector<Vec2i> long_side_labels(const Word& w, size_t count) {
    validate_word(w, true);
    const size_t L = w.size();
    std::vector<Vec2i> m3(count + 1);
    int last = w.back() - '0';
    Vec2i g = generator(last);
    m3[0] = {-g.x / 2, -g.y / 2};
    for (size_t i = 1; i <= count; ++i) {
        int d = w[(i - 1) % L] - '0';
        int color = int((i - 1) % 2);
        m3[i] = color == 0 ? m3[i - 1] + generator(d) : m3[i - 1] - generator(d);
    }
    return m3;
}

LatticePath hexpath(const Word& w) {
    const size_t L = w.size();
    auto m3 = long_side_labels(w, L);
    LatticePath p;
    p.vertices.push_back(side_label(m3[0], w.back() - '0', 0));
    for (size_t i = 1; i <= L; ++i) p.vertices.push_back(side_label(m3[i], w[i - 1] - '0', int(i % 2)));
    for (size_t i = 0; i < p.vertices.size(); ++i) p.colors.push_back(int(i % 2));
    p.closed = (L % 2 == 0) && p.vertices.front() == p.vertices.back();
    return p;
}

bool is_stable_hexpath(const Word& w) { return hexpath(w).closed; }

LatticePath squarepath(const Word& w) {
    const size_t L = w.size();
    auto m3 = long_side_labels(w, L);
    // Distinct consecutive positions of the long-side label path.
    std::vector<Vec2i> pts;
    for (auto& v : m3)
        if (pts.empty() || pts.back() != v) pts.push_back(v);
    LatticePath p;
    bool closed = (L % 2 == 0) && m3.front() == m3.back();
    if (!closed) {
        // Open path: keep endpoints and turning points.
        for (size_t i = 0; i < pts.size(); ++i) {
            if (i == 0 || i + 1 == pts.size()) {
                p.vertices.push_back(pts[i]);
                continue;
            }
            Vec2i a = pts[i] - pts[i - 1], b = pts[i + 1] - pts[i];
            if (a.x * b.y - a.y * b.x != 0 || a.x * b.x + a.y * b.y < 0) p.vertices.push_back(pts[i]);
        }
    } else {
        pts.pop_back();
        const size_t m = pts.size();
        auto is_corner = [&](size_t i) {
            Vec2i a = pts[i] - pts[(i + m - 1) % m], b = pts[(i + 1) % m] - pts[i];
            return a.x * b.y - a.y * b.x != 0 || a.x * b.x + a.y * b.y < 0;
        };
        for (size_t i = 0; i < m; ++i)
            if (m < 2 || is_corner(i)) p.vertices.push_back(pts[i]);
        if (!p.vertices.empty()) p.vertices.push_back(p.vertices.front());
        p.closed = true;
    }
    for (size_t i = 0; i < p.vertices.size(); ++i) p.colors.push_back(int(i % 2));
    return p;
}

Word word_from_squarepath(const LatticePath& p) {
    std::vector<Vec2i> v = p.vertices;
    if (v.size() < 2) fail_arg("squarepath needs at least two vertices");
    if (v.front() == v.back()) v.pop_back();
    if (v.size() < 2) fail_arg("degenerate squarepath");
    // Unit steps of two lattice units: 0=E, 1=S, 2=W, 3=N.
    std::vector<int> steps;
    const size_t m = v.size();
    for (size_t i = 0; i < m; ++i) {
        Vec2i d = v[(i + 1) % m] - v[i];
        if ((d.x != 0) == (d.y != 0)) fail_arg("squarepath edges must be axis-aligned and nonzero");
        long long len = std::llabs(d.x + d.y);
        if (len % 2 != 0) fail_arg("squarepath edge of odd length");
        int dir = d.x > 0 ? 0 : d.x < 0 ? 2 : d.y < 0 ? 1 : 3;
        for (long long k = 0; k < len / 2; ++k) steps.push_back(dir);
    }
    const size_t S = steps.size();
    for (size_t i = 0; i < S; ++i)
        if ((steps[i] + 2) % 4 == steps[(i + 1) % S]) fail_arg("squarepath backtracks");
    auto cls = [](int dir) { return dir == 0 || dir == 1 ? 0 : 1; };
    std::string digits;
    for (size_t i = 0; i < S; ++i) {
        digits.push_back(steps[i] % 2 == 0 ? '2' : '1');
        if (cls(steps[i]) == cls(steps[(i + 1) % S])) digits.push_back('3');
    }
    if (digits.size() % 2 != 0) fail_arg("squarepath has ambiguous turn structure");
    // digits[0] is read from a triangle of color cls(steps[0]).
    if (cls(steps[0]) == 1) std::rotate(digits.begin(), digits.begin() + 1, digits.end());
    return digits;
}

LatticePath hexpath_from_squarepath(const LatticePath& p) { return hexpath(word_from_squarepath(p)); }

Word lex_least_rotation(const Word& w) {
    Word best = w;
    for (size_t r = 1; r < w.size(); ++r) {
        Word c = w.substr(r) + w.substr(0, r);
        if (c < best) best = c;
    }
    return best;
}

bool is_cyclic_rotation(const Word& a, const Word& b) {
    return a.size() == b.size() && (a + a).find(b) != std::string::npos;
}

Word swap12(const Word& w) {
    Word r = w;
    for (char& ch : r) ch = ch == '1' ? '2' : ch == '2' ? '1' : ch;
    return r;
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word repeat(const Word& w, int times) {
    Word r;
    for (int i = 0; i < times; ++i) r += w;
    return r;
}

}  // namespace tribill
