#include "acvass/classify.hpp"

namespace acvass {

MatrixProfile profile(const IntMatrix& a) {
    MatrixProfile p;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sgn(a(i, j)) < 0) {
                p.non_negative = false;
                p.negative_entry_positions.emplace_back(i, j);
            }
    for (int i = 0; i < n; ++i) {
        bool zr = true, zc = true;
        for (int j = 0; j < n; ++j) {
            if (sgn(a(i, j)) != 0) zr = false;
            if (sgn(a(j, i)) != 0) zc = false;
        }
        if (zr) p.zero_rows.push_back(i);
        if (zc) p.zero_cols.push_back(i);
    }
    p.self_loop = true;
    for (int i = 0; i < n; ++i)
        if (sgn(a(i, i)) == 0) p.self_loop = false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a(i, j) > 1) p.weighted_edges.emplace_back(i, j);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (sgn(a(i, k)) <= 0) continue;
            for (int j = i + 1; j < n; ++j)
                if (sgn(a(j, k)) > 0) p.overlapping_edges.push_back({i, j, k});
        }
    bool zero_one = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a(i, j) != 0 && a(i, j) != 1) zero_one = false;
    bool col_le_one = true;
    bool exactly_one = true;
    for (int i = 0; i < n; ++i) {
        int cc = 0, rc = 0;
        for (int j = 0; j < n; ++j) {
            if (sgn(a(j, i)) != 0) ++cc;
            if (sgn(a(i, j)) != 0) ++rc;
        }
        if (cc > 1) col_le_one = false;
        if (cc != 1 || rc != 1) exactly_one = false;
    }
    p.is_transfer = zero_one && col_le_one;
    p.is_permutation = zero_one && exactly_one;
    p.is_identity = a.is_identity();
    bool diagonal = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && sgn(a(i, j)) != 0) diagonal = false;
    p.is_reset_diagonal = diagonal && zero_one;
    return p;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::DecidableNP: return "DecidableNP";
        case Verdict::DecidablePSPACE: return "DecidablePSPACE";
        case Verdict::DecidableNEXP: return "DecidableNEXP";
        case Verdict::Undecidable: return "Undecidable";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

MachineProfile machine_profile(const Machine& m) {
    MachineProfile mp;
    for (const auto& t : m.transitions()) {
        if (t.identity) continue;
        MatrixProfile p = profile(t.matrix);
        if (!p.non_negative) mp.any_negative = true;
        if (!p.zero_rows.empty() || !p.zero_cols.empty()) mp.any_zero_row_col = true;
        if (!p.weighted_edges.empty() || !p.overlapping_edges.empty()) mp.any_weighted_or_overlap = true;
        if (!p.self_loop) mp.all_self_loop = false;
        if (!p.is_permutation) mp.all_permutation = false;
        if (!p.is_identity) mp.all_identity = false;
    }
    return mp;
}

MachineVerdict classify_machine(const Machine& m) {
    MachineProfile mp = machine_profile(m);
    MachineVerdict v;
    if (mp.any_negative) {
        v.reach = v.cover = v.state_reach = {Verdict::Undecidable, "negative-entry"};
        return v;
    }
    if (mp.any_zero_row_col) {
        v.reach = v.cover = {Verdict::Undecidable, "zero-row-column"};
        v.state_reach = {Verdict::DecidablePSPACE, "support-abstraction"};
        return v;
    }
    if (mp.any_weighted_or_overlap) {
        v.reach = {Verdict::Undecidable, "weighted-or-overlapping-edge"};
        v.state_reach = {Verdict::DecidablePSPACE, "support-abstraction"};
        if (mp.all_self_loop)
            v.cover = {Verdict::DecidableNP, "self-loop-coverability"};
        else
            v.cover = {Verdict::Unknown, "open-non-self-loop-coverability"};
        return v;
    }
    if (!mp.all_permutation) throw InternalError("edge-free non-negative matrix that is not a permutation");
    if (mp.all_identity) {
        v.reach = v.cover = v.state_reach = {Verdict::DecidableNP, "continuous-vass"};
    } else {
        v.reach = v.cover = {Verdict::DecidableNEXP, "permutation-product"};
        v.state_reach = {Verdict::DecidablePSPACE, "support-abstraction"};
    }
    return v;
}

bool derived_permutation_check(const IntMatrix& a) {
    MatrixProfile p = profile(a);
    bool antecedent = p.non_negative && p.zero_rows.empty() && p.zero_cols.empty() &&
                      p.weighted_edges.empty() && p.overlapping_edges.empty();
    if (antecedent && !p.is_permutation)
        throw InternalError("edge-free non-negative matrix is not a permutation: " + to_string(a));
    return antecedent;
}

}  // namespace acvass
