// Word families A_n, u_n, Y_{n,m}, B_n, C_n and W_{nk}.
#pragma once

#include <string>
#include <vector>

#include "tribill/word.hpp"

namespace tribill {

enum class FamilyKind { A, B, C, Y, U, W };

struct FamilyId {
    FamilyKind kind = FamilyKind::A;
    int n = 2;
    int m_or_k = 0;
};

// Parses "A:4", "W:4:3", "Y:3:2" (kind letter, n, optional m or k).
FamilyId parse_family(const std::string& spec);
std::string family_name(const FamilyId& id);

Word gen_A(int n);
Word gen_unstable(int n);
Word gen_Y(int n, int m);
Word gen_B(int n);
Word gen_C(int n);
Word gen_W(int n, int k);
Word gen_family(const FamilyId& id);

// Closed squarepaths (first vertex repeated at the end) defining B_n and W_{nk}.
LatticePath squarepath_B(int n);
LatticePath squarepath_W(int n, int k);

// Closed-form length of W_{nk} as it follows from the squarepath.
long long length_W(int n, int k);
// Quadratic length formula 24n + 30k^2 - 68k - 20; agrees with length_W only at isolated (n, k).
long long length_W_printed(int n, int k);

// Rotates w (by an even amount, keeping T_0 white) so that squarepath(w)
// equals target as a vertex sequence. Throws Internal if no rotation matches.
Word anchor_to_squarepath(const Word& w, const LatticePath& target);

}  // namespace tribill
