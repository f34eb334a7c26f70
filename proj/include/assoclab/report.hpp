#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "assoclab/ring.hpp"

namespace assoclab {

// Outcome of one residual check: worst coefficient of an equation's
// LHS-RHS. Exact rings report exact zero/nonzero; floating rings report a
// magnitude to compare against a threshold.
struct ResidualReport {
    std::string equation;
    bool exact = true;
    bool zero = true;
    bool infinite = false;
    double magnitude = 0.0;
    std::string worst_value;
    std::string worst_word;
    int truncation = 0;
    std::string note;

    template <class R>
    static ResidualReport make(std::string eq, int trunc) {
        ResidualReport r;
        r.equation = std::move(eq);
        r.exact = RingTraits<R>::exact;
        r.truncation = trunc;
        return r;
    }

    template <class R>
    void consider(const R& diff, const std::string& where) {
        if (RingTraits<R>::is_zero(diff)) return;
        zero = false;
        double m = RingTraits<R>::approx_mag(diff);
        if (m >= magnitude) {
            magnitude = m;
            worst_value = RingTraits<R>::to_string(diff);
            worst_word = where;
        }
    }

    bool passes(double threshold) const {
        if (infinite) return false;
        if (exact) return zero;
        return magnitude <= threshold;
    }
};

// Collects the residual of (a - b) coefficient-wise for any series type.
template <class S>
ResidualReport series_residual(const std::string& equation, const S& a, const S& b) {
    using R = typename S::scalar_type;
    S diff = a - b;
    ResidualReport rep = ResidualReport::make<R>(equation, diff.truncation());
    for (const auto& [w, c] : diff.terms()) rep.consider(c, diff.display_word(w));
    return rep;
}

}  // namespace assoclab
