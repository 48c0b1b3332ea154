// Unfoldings of periodic words: triangle chains, labels, holonomy, darts.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tribill/common.hpp"
#include "tribill/word.hpp"

namespace tribill {

// Corner of a triangle: A has angle x1 (opposite side 1), B has angle x2
// (opposite side 2), C is the obtuse corner (opposite side 3).
enum Corner { CornerA = 0, CornerB = 1, CornerC = 2 };

// A side of the unfolding. Canonical orientation: side 3 runs B->A, side 2 C->A,
// side 1 B->C; its vector is l_d * E(X . label).
struct Side {
    int type = 3;
    Vec2i label;
    int from = -1;  // vertex id at the tail of the canonical orientation
    int to = -1;
};

struct UnfoldOptions {
    int periods = 3;
    bool square_odd = true;  // odd words are replaced by their square
    bool general_region = false;
};

// Chain T_0..T_{periods*L} for the periodic extension of w. T_0 is white and
// its side of type w.back() (the edge e_0) has label (0,0). Positions are in
// the frame where that edge is horizontal, the chain grows toward +x and the
// long side has length 1.
class Unfolding {
public:
    Unfolding(const Word& w, const ParameterPoint& X, UnfoldOptions opt = {});

    const Word& word() const { return word_; }
    const ParameterPoint& point() const { return X_; }
    size_t period() const { return L_; }
    int periods() const { return periods_; }
    size_t triangle_count() const { return tri_.size(); }
    bool stable() const { return stable_; }

    const std::array<int, 3>& triangle(size_t i) const { return tri_[i]; }
    int color(size_t i) const { return int(i % 2); }
    Vec2i long_label(size_t i) const { return m3_[i]; }
    // Label of side d of triangle i.
    Vec2i label(size_t i, int d) const { return side_label(m3_[i], d, color(i)); }

    size_t vertex_count() const { return pos_.size(); }
    cplx position(int v) const { return pos_[v]; }
    Corner corner_type(int v) const { return type_[v]; }
    const std::vector<Side>& sides() const { return sides_; }

    // Crossed edge e_i (i >= 1) between T_{i-1} and T_i, as (left, right) vertex ids.
    std::pair<int, int> crossing(size_t i) const { return cross_[i]; }
    int crossing_type(size_t i) const { return word_[(i - 1) % L_] - '0'; }

    // Holonomy H: the translation T_i -> T_{i+L}, in the unrotated frame.
    cplx holonomy() const { return hol_; }
    // Unit complex number u with u * H real and positive.
    cplx normalizer() const { return rot_; }
    // Height after rotating the holonomy to +x.
    double height(int v) const { return (pos_[v] * rot_).imag(); }
    cplx normalized(int v) const { return pos_[v] * rot_; }

    // Top (left) and bottom (right) vertices over the middle period, in order.
    const std::vector<int>& top() const { return top_; }
    const std::vector<int>& bottom() const { return bottom_; }

    // Vertex id of the translate of v by +H, or -1 if it lies outside the chain.
    int shift(int v) const { return shift_[v]; }
    int shift_back(int v) const { return unshift_[v]; }
    // Triangle index in which vertex v first appears.
    size_t first_triangle(int v) const { return first_tri_[v]; }

    // Every edge in the middle period that belongs to a triangle (deduplicated).
    std::vector<int> sides_of_type(int d) const;

private:
    Word word_;
    ParameterPoint X_;
    size_t L_ = 0;
    int periods_ = 3;
    bool stable_ = false;
    std::vector<Vec2i> m3_;
    std::vector<std::array<int, 3>> tri_;
    std::vector<cplx> pos_;
    std::vector<Corner> type_;
    std::vector<size_t> first_tri_;
    std::vector<Side> sides_;
    std::vector<std::pair<int, int>> cross_;
    std::vector<int> top_, bottom_, shift_, unshift_;
    cplx hol_, rot_;
};

struct Membership {
    bool member = false;
    double separation = 0;  // min top height - max bottom height
    int lowest_top = -1;
    int highest_bottom = -1;
};

inline constexpr double kHeightTol = 1e-12;

// Decides whether X lies in the orbit tile of w. Odd words are squared first
// unless raw is set; unstable words throw Precondition.
Membership membership_geometric(const Word& w, const ParameterPoint& X, bool raw = false);
Membership membership(const Unfolding& u);

// Counterclockwise angle, mod pi, from the edge labelled p to the edge labelled q.
double edge_angle(Vec2i p, Vec2i q, const ParameterPoint& X);

struct Dart {
    int order = 0;          // k
    int digit = 1;          // d in {1,2}
    size_t start = 0;       // first triangle index in the middle period
    int base = -1;
    bool base_is_top = false;
    int outer_left = -1, outer_right = -1;  // far ends of the outer long edges
    int inner_left = -1, inner_right = -1;  // far ends of the first and last short d-edges
    std::vector<int> inferior;
};

struct DartDecomposition {
    std::vector<Dart> darts;
    int max_order = 0;
};

// Maximal runs d3d3...d of the cyclic word; order = number of d symbols.
std::vector<std::pair<size_t, int>> dart_runs(const Word& w);
int max_dart_order(const Word& w);
DartDecomposition dart_decomposition(const Unfolding& u);

// Long-edge spine over one period: side indices into u.sides(), left to right.
std::vector<int> spine(const Unfolding& u, int d);

bool dart_lemma_applies(const Word& w, const ParameterPoint& X);

// Checks the controlled-unfolding conclusion: every maximal dart has its two
// short outer edges spanning less than a half turn and points away from the
// side of its base.
bool darts_controlled(const Unfolding& u, const DartDecomposition& dd);

std::string unfolding_svg(const Unfolding& u);

}  // namespace tribill
