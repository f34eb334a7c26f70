#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace assoclab {

// Exact rational scalar. mpq_class keeps values in lowest terms with a
// positive denominator, which is exactly the invariant we need.
using Rat = mpq_class;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw InputError("cannot parse rational: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Exact square root of a rational if it is a perfect square.
inline std::optional<Rat> rat_sqrt_exact(const Rat& q) {
    if (q < 0) return std::nullopt;
    mpz_class num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rat(rn, rd);
}

inline Rat binomial_rat(long n, long k) {
    if (k < 0 || k > n) return Rat(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return Rat(b);
}

}  // namespace assoclab
