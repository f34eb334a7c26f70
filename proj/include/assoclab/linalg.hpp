#pragma once

#include <map>
#include <optional>
#include <vector>

#include "assoclab/rational.hpp"

namespace assoclab {

using SparseVec = std::map<int, Rat>;

// Incremental reduced row echelon form over Q, rows kept sparse.
class RowReducer {
  public:
    // Reduce v against the current rows; returns the remainder.
    SparseVec reduce(SparseVec v) const {
        while (!v.empty()) {
            int c = v.begin()->first;
            auto it = pivots_.find(c);
            if (it == pivots_.end()) break;
            Rat f = v.begin()->second;
            for (const auto& [k, x] : it->second) {
                auto jt = v.find(k);
                Rat nv = (jt == v.end() ? Rat(0) : jt->second) - f * x;
                if (nv == 0) {
                    if (jt != v.end()) v.erase(jt);
                } else {
                    v[k] = nv;
                }
            }
        }
        return v;
    }

    // Returns true if the row increased the rank.
    bool add_row(SparseVec v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        int c = v.begin()->first;
        Rat lead = v.begin()->second;
        for (auto& [k, x] : v) x /= lead;
        // keep RREF: clear column c from existing rows
        for (auto& [pc, row] : pivots_) {
            auto it = row.find(c);
            if (it == row.end()) continue;
            Rat f = it->second;
            for (const auto& [k, x] : v) {
                auto jt = row.find(k);
                Rat nv = (jt == row.end() ? Rat(0) : jt->second) - f * x;
                if (nv == 0) {
                    if (jt != row.end()) row.erase(jt);
                } else {
                    row[k] = nv;
                }
            }
        }
        pivots_.emplace(c, std::move(v));
        return true;
    }

    size_t rank() const { return pivots_.size(); }
    const std::map<int, SparseVec>& rows() const { return pivots_; }
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  private:
    std::map<int, SparseVec> pivots_;
};

struct AffineSolution {
    bool consistent = false;
    std::vector<Rat> particular;             // one solution, if consistent
    std::vector<std::vector<Rat>> kernel;    // basis of homogeneous solutions
    size_t dimension() const { return kernel.size(); }
};

// Solve sum_i x_i * columns[i] = rhs exactly over Q. Columns and rhs are
// sparse vectors over an arbitrary integer row index set.
inline AffineSolution solve_affine(const std::vector<SparseVec>& columns,
                                   const SparseVec& rhs) {
    const int n = static_cast<int>(columns.size());
    // assemble equations: one row per coordinate, unknowns 0..n-1, rhs at n
    std::map<int, SparseVec> eqs;
    for (int i = 0; i < n; ++i)
        for (const auto& [r, c] : columns[i])
            if (c != 0) eqs[r][i] = c;
    for (const auto& [r, c] : rhs)
        if (c != 0) eqs[r][n] = c;

    RowReducer red;
    for (auto& [r, row] : eqs) red.add_row(row);

    AffineSolution sol;
    std::vector<char> is_pivot(static_cast<size_t>(n) + 1, 0);
    for (const auto& [c, row] : red.rows()) is_pivot[static_cast<size_t>(c)] = 1;
    if (is_pivot[static_cast<size_t>(n)]) {
        sol.consistent = false;  // pivot in the rhs column
        return sol;
    }
    sol.consistent = true;
    sol.particular.assign(static_cast<size_t>(n), Rat(0));
    for (const auto& [c, row] : red.rows()) {
        auto it = row.find(n);
        if (it != row.end()) sol.particular[static_cast<size_t>(c)] = it->second;
    }
    for (int f = 0; f < n; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        std::vector<Rat> vec(static_cast<size_t>(n), Rat(0));
        vec[static_cast<size_t>(f)] = 1;
        for (const auto& [c, row] : red.rows()) {
            auto it = row.find(f);
            if (it != row.end()) vec[static_cast<size_t>(c)] = -it->second;
        }
        sol.kernel.push_back(std::move(vec));
    }
    return sol;
}

}  // namespace assoclab
