// Words over {1,2,3} and their lattice encodings (hexpath, squarepath).
#pragma once

#include <string>
#include <vector>

#include "tribill/common.hpp"

namespace tribill {

using Word = std::string;

// Throws InvalidArgument on an empty word, a symbol outside {1,2,3}, or (unless
// allow_repeats) a cyclic consecutive repeat.
void validate_word(const Word& w, bool allow_repeats = false);

// Positions are 1-indexed: the first symbol sits at an odd position.
bool is_stable_parity(const Word& w);

struct LatticePath {
    std::vector<Vec2i> vertices;
    bool closed = false;
    std::vector<int> colors;  // 0 = white, 1 = black, alternating from white
};

// Lattice generators of the edge labelling: g2 = (2,0), g1 = (0,-2).
Vec2i generator(int d);

// Label of the type-3 side of T_0..T_count for the periodic extension of w.
// T_0 is white and its side of type w.back() carries the label (0,0).
std::vector<Vec2i> long_side_labels(const Word& w, size_t count);

// Label of side d of a triangle with long-side label m3 and the given color.
Vec2i side_label(Vec2i m3, int d, int color);

// Midpoints of the crossed edges e_0..e_L of one period.
LatticePath hexpath(const Word& w);
bool is_stable_hexpath(const Word& w);

// Corners of the long-side label path over one period.
LatticePath squarepath(const Word& w);

// Inverse of squarepath up to cyclic rotation. The result starts on a white triangle.
Word word_from_squarepath(const LatticePath& p);
LatticePath hexpath_from_squarepath(const LatticePath& p);

Word lex_least_rotation(const Word& w);
bool is_cyclic_rotation(const Word& a, const Word& b);
Word swap12(const Word& w);
Word reversed(const Word& w);
Word repeat(const Word& w, int times);

}  // namespace tribill
