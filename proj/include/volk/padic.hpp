#pragma once

#include <limits>
#include <vector>

#include "volk/bignum.hpp"

namespace volk {

// An element of Q_p known to finite absolute precision.
//
// A nonzero scalar is stored as p^val * unit where the unit part is an exact
// residue in [0, p^W) with unit % p != 0.  The value is therefore pinned
// modulo p^(val + W); we call N = val + W the absolute precision.  Every
// operation propagates the worst-case guarantee: no result ever claims more
// digits than its inputs support, and division by p^k lowers the reported
// absolute precision by exactly k.
//
// A scalar whose computed digits all vanish collapses to the zero state,
// which remembers the absolute precision at which the cancellation was
// certified (|x|_p <= p^-zprec).  Exact constants carry an "exact" sentinel.
class PadicScalar {
public:
    static constexpr long kExactPrec = std::numeric_limits<long>::max() / 4;

    static PadicScalar zero(long p) { return zero_at_precision(p, kExactPrec); }

    static PadicScalar zero_at_precision(long p, long abs_prec) {
        PadicScalar s;
        s.p_ = p;
        s.zero_ = true;
        s.zprec_ = abs_prec > kExactPrec ? kExactPrec : abs_prec;
        return s;
    }

    static PadicScalar from_integer(long p, const BigInt& n, long wdigits);
    static PadicScalar from_rational(long p, const BigInt& num, const BigInt& den, long wdigits);
    // value = p^val * unit with unit taken mod p^wdigits (normalised internally)
    static PadicScalar from_unit_part(long p, const BigInt& unit, long val, long wdigits);

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    bool exactly_zero() const { return zero_ && zprec_ >= kExactPrec; }

    // valuation of a distinguishable-from-zero scalar
    long valuation() const {
        if (zero_) throw std::domain_error("valuation of (numerical) zero");
        return val_;
    }
    long digits() const {
        if (zero_) throw std::domain_error("digit count of zero");
        return w_;
    }
    long abs_precision() const { return zero_ ? zprec_ : val_ + w_; }
    const BigInt& unit_part() const {
        if (zero_) throw std::domain_error("unit part of zero");
        return unit_;
    }

    PadicScalar operator-() const;
    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
    PadicScalar inverse() const;

    // multiply by p^k (exact; k may be negative)
    PadicScalar shift(long k) const;
    PadicScalar pow(unsigned long e) const;

    // truncate the guarantee to abs precision <= n
    PadicScalar truncated(long n) const;

    // |a - b| = 0 at the shared precision
    bool indistinguishable_from(const PadicScalar& o) const { return (*this - o).is_zero(); }

    // representative of the value mod p^k (requires val >= 0 and k <= abs precision)
    BigInt integer_residue(long k) const;

    std::string to_string() const;

private:
    PadicScalar() = default;
    void check_same_prime(const PadicScalar& o) const {
        if (p_ != o.p_) throw std::invalid_argument("p-adic prime mismatch");
    }

    long p_ = 0;
    bool zero_ = false;
    long zprec_ = 0;  // zero state: certified |x| <= p^-zprec
    long val_ = 0;
    long w_ = 0;       // digit count of the unit part
    BigInt unit_;      // in [0, p^w_), unit_ % p != 0
};

// Teichmuller lift: the (p-1)-st root of unity congruent to a mod p,
// computed to wdigits base-p digits.
PadicScalar teichmuller(long p, long a, long wdigits);

// log of a principal unit (v_p(u-1) >= 1) by the alternating series, with a
// deterministic truncation bound: tail terms all sit below the reported
// absolute precision.
PadicScalar log_one_unit(const PadicScalar& u);

}  // namespace volk
