#pragma once

#include "acvass/machine.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace acvass {

struct MatrixProfile {
    bool non_negative = true;
    std::vector<std::pair<int, int>> negative_entry_positions;
    std::vector<int> zero_rows;
    std::vector<int> zero_cols;
    bool is_permutation = false;
    bool is_identity = false;
    bool self_loop = false;
    std::vector<std::pair<int, int>> weighted_edges;     // A(i,j) > 1
    std::vector<std::array<int, 3>> overlapping_edges;   // (i, j, k), i < j, A(i,k) > 0, A(j,k) > 0
    bool is_transfer = false;
    bool is_reset_diagonal = false;
};

MatrixProfile profile(const IntMatrix& a);

enum class Verdict { DecidableNP, DecidablePSPACE, DecidableNEXP, Undecidable, Unknown };

struct ProblemVerdict {
    Verdict verdict = Verdict::Unknown;
    std::string tag;  // short justification label
    bool operator==(const ProblemVerdict& o) const { return verdict == o.verdict && tag == o.tag; }
};

struct MachineVerdict {
    ProblemVerdict reach, cover, state_reach;
};

std::string to_string(Verdict v);

// Join of the profiles of every matrix in the machine.
struct MachineProfile {
    bool any_negative = false;
    bool any_zero_row_col = false;
    bool any_weighted_or_overlap = false;
    bool all_self_loop = true;
    bool all_permutation = true;
    bool all_identity = true;
};

MachineProfile machine_profile(const Machine& m);
MachineVerdict classify_machine(const Machine& m);

// True iff A is non-negative with no zero row, no zero column, no weighted
// edge and no overlapping edges. Throws InternalError if that holds but A is
// not a permutation matrix.
bool derived_permutation_check(const IntMatrix& a);

}  // namespace acvass
