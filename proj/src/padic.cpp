#include "volk/padic.hpp"

#include <algorithm>
#include <sstream>

namespace volk {

PadicScalar PadicScalar::from_unit_part(long p, const BigInt& unit, long val, long wdigits) {
    if (wdigits < 1) throw std::invalid_argument("PadicScalar: need at least one digit");
    BigInt m = pow_int(p, static_cast<unsigned long>(wdigits));
    BigInt u = mod_reduce(unit, m);
    if (u == 0) return zero_at_precision(p, val + wdigits);
    long k = p_valuation_capped(u, p, wdigits);
    PadicScalar s;
    s.p_ = p;
    s.zero_ = false;
    s.val_ = val + k;
    s.w_ = wdigits - k;
    if (k > 0) {
        BigInt pk = pow_int(p, static_cast<unsigned long>(k));
        u /= pk;
    }
    s.unit_ = u;
    return s;
}

PadicScalar PadicScalar::from_integer(long p, const BigInt& n, long wdigits) {
    if (n == 0) return zero(p);
    long v = p_valuation(n, p);
    BigInt u = n / pow_int(p, static_cast<unsigned long>(v));
    return from_unit_part(p, u, v, wdigits);
}

PadicScalar PadicScalar::from_rational(long p, const BigInt& num, const BigInt& den, long wdigits) {
    if (den == 0) throw std::invalid_argument("from_rational: zero denominator");
    if (num == 0) return zero(p);
    long vn = p_valuation(num, p);
    long vd = p_valuation(den, p);
    BigInt un = num / pow_int(p, static_cast<unsigned long>(vn));
    BigInt ud = den / pow_int(p, static_cast<unsigned long>(vd));
    BigInt m = pow_int(p, static_cast<unsigned long>(wdigits));
    BigInt u = mod_reduce(un * inv_mod(mod_reduce(ud, m), m), m);
    return from_unit_part(p, u, vn - vd, wdigits);
}

PadicScalar PadicScalar::operator-() const {
    if (zero_) return *this;
    PadicScalar r = *this;
    BigInt m = pow_int(p_, static_cast<unsigned long>(w_));
    r.unit_ = m - unit_;  // unit_ != 0, so this stays in range and stays a unit
    return r;
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    a.check_same_prime(b);
    long p = a.p_;
    if (a.zero_ && b.zero_)
        return PadicScalar::zero_at_precision(p, std::min(a.zprec_, b.zprec_));
    if (a.zero_) return b.truncated(a.zprec_);
    if (b.zero_) return a.truncated(b.zprec_);

    long N = std::min(a.val_ + a.w_, b.val_ + b.w_);
    long vmin = std::min(a.val_, b.val_);
    long window = N - vmin;
    if (window <= 0) return PadicScalar::zero_at_precision(p, N);
    BigInt m = pow_int(p, static_cast<unsigned long>(window));
    BigInt s = mod_reduce(a.unit_ * pow_int(p, static_cast<unsigned long>(a.val_ - vmin)) +
                              b.unit_ * pow_int(p, static_cast<unsigned long>(b.val_ - vmin)),
                          m);
    return PadicScalar::from_unit_part(p, s, vmin, window);
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    a.check_same_prime(b);
    long p = a.p_;
    if (a.zero_ || b.zero_) {
        // |ab| <= p^-(prec(zero) + val(other)); exact zero absorbs
        if (a.exactly_zero() || b.exactly_zero()) return PadicScalar::zero(p);
        long bound;
        if (a.zero_ && b.zero_)
            bound = std::min(PadicScalar::kExactPrec, a.zprec_ + b.zprec_);
        else if (a.zero_)
            bound = a.zprec_ + b.val_;
        else
            bound = b.zprec_ + a.val_;
        return PadicScalar::zero_at_precision(p, bound);
    }
    long w = std::min(a.w_, b.w_);
    BigInt m = pow_int(p, static_cast<unsigned long>(w));
    return PadicScalar::from_unit_part(p, mod_reduce(a.unit_ * b.unit_, m), a.val_ + b.val_, w);
}

PadicScalar PadicScalar::inverse() const {
    if (zero_) throw std::domain_error("inverse of (numerical) zero p-adic");
    BigInt m = pow_int(p_, static_cast<unsigned long>(w_));
    return from_unit_part(p_, inv_mod(unit_, m), -val_, w_);
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return a * b.inverse(); }

PadicScalar PadicScalar::shift(long k) const {
    if (zero_) {
        if (exactly_zero()) return *this;
        return zero_at_precision(p_, zprec_ + k);
    }
    PadicScalar r = *this;
    r.val_ += k;
    return r;
}

PadicScalar PadicScalar::pow(unsigned long e) const {
    PadicScalar r = from_integer(p_, 1, zero_ ? 1 : w_);
    if (e == 0) return r;
    PadicScalar base = *this;
    while (true) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e == 0) break;
        base = base * base;
    }
    return r;
}

PadicScalar PadicScalar::truncated(long n) const {
    if (zero_) return zero_at_precision(p_, std::min(zprec_, n));
    if (n >= val_ + w_) return *this;
    long w = n - val_;
    if (w <= 0) return zero_at_precision(p_, n);
    BigInt m = pow_int(p_, static_cast<unsigned long>(w));
    return from_unit_part(p_, mod_reduce(unit_, m), val_, w);
}

BigInt PadicScalar::integer_residue(long k) const {
    if (zero_) {
        if (zprec_ < k) throw std::domain_error("integer_residue: precision below p^k");
        return 0;
    }
    if (val_ < 0) throw std::domain_error("integer_residue of a non-integral scalar");
    if (val_ + w_ < k) throw std::domain_error("integer_residue: precision below p^k");
    BigInt m = pow_int(p_, static_cast<unsigned long>(k));
    return mod_reduce(unit_ * pow_int(p_, static_cast<unsigned long>(val_)), m);
}

std::string PadicScalar::to_string() const {
    std::ostringstream os;
    if (zero_) {
        os << "0 + O(" << p_ << "^" << (zprec_ >= kExactPrec ? std::string("inf")
                                                             : std::to_string(zprec_))
           << ")";
        return os.str();
    }
    os << unit_.get_str();
    if (val_ != 0) os << "*" << p_ << "^" << val_;
    os << " + O(" << p_ << "^" << (val_ + w_) << ")";
    return os.str();
}

PadicScalar teichmuller(long p, long a, long wdigits) {
    long r = ((a % p) + p) % p;
    if (r == 0) throw std::domain_error("teichmuller: argument divisible by p");
    BigInt m = pow_int(p, static_cast<unsigned long>(wdigits));
    BigInt x = r;
    // x -> x^p gains one digit of agreement with the fixed point per step
    for (long i = 0; i < wdigits + 1; ++i)
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p), m.get_mpz_t());
    return PadicScalar::from_unit_part(p, x, 0, wdigits);
}

PadicScalar log_one_unit(const PadicScalar& u) {
    long p = u.prime();
    PadicScalar d = u - PadicScalar::from_integer(p, 1, u.is_zero() ? 1 : u.digits());
    if (d.is_zero()) return PadicScalar::zero_at_precision(p, d.abs_precision());
    long t = d.valuation();
    if (t < 1) throw std::domain_error("log_one_unit: argument is not a principal unit");
    long N = d.abs_precision();

    // last index whose term can still touch digits below N:
    // v_p(d^k / k) = k t - v_p(k) >= k t - floor(log_p k)
    long K = 1;
    long scan_to = N / t + 2 * (floor_log_p(std::max(N, p), p) + 2) + 4;
    for (long k = 1; k <= scan_to; ++k)
        if (k * t - floor_log_p(k, p) < N) K = k;

    PadicScalar sum = PadicScalar::zero_at_precision(p, N);
    PadicScalar power = d;
    for (long k = 1; k <= K; ++k) {
        if (k > 1) power = power * d;
        long kv = p_valuation(BigInt(k), p);
        BigInt kodd = BigInt(k) / pow_int(p, static_cast<unsigned long>(kv));
        PadicScalar term = power * PadicScalar::from_rational(p, 1, kodd, power.digits());
        term = term.shift(-kv);
        if (k % 2 == 0) term = -term;
        sum = sum + term;
    }
    return sum;
}

}  // namespace volk
