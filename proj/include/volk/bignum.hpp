#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace volk {

using BigInt = mpz_class;

inline BigInt pow_int(long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return r;
}

inline long small_pow(long base, long exp) {
    long r = 1;
    for (long i = 0; i < exp; ++i) r *= base;
    return r;
}

// x reduced into [0, m)
inline BigInt mod_reduce(const BigInt& x, const BigInt& m) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline BigInt inv_mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("inv_mod: element not invertible");
    return r;
}

// largest k with p^k | x; x must be nonzero
inline long p_valuation(const BigInt& x, long p) {
    if (x == 0) throw std::domain_error("p_valuation of zero");
    BigInt t = x;
    long v = 0;
    BigInt q, r;
    while (true) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
        if (r != 0) break;
        t = q;
        ++v;
    }
    return v;
}

// valuation of x, but never looks past `cap`; returns cap when p^cap | x
inline long p_valuation_capped(const BigInt& x, long p, long cap) {
    if (x == 0) return cap;
    BigInt t = x;
    long v = 0;
    BigInt q, r;
    while (v < cap) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
        if (r != 0) break;
        t = q;
        ++v;
    }
    return v;
}

inline std::vector<long> base_p_digits(BigInt x, long p, long count) {
    std::vector<long> out;
    out.reserve(static_cast<size_t>(count));
    BigInt q, r;
    for (long i = 0; i < count; ++i) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
        out.push_back(r.get_si());
        x = q;
    }
    return out;
}

inline BigInt from_base_p_digits(const std::vector<long>& digits, long p) {
    BigInt x = 0;
    for (size_t i = digits.size(); i-- > 0;) {
        x *= p;
        x += digits[i];
    }
    return x;
}

inline bool is_small_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// floor(log_p(k)) for k >= 1
inline long floor_log_p(long k, long p) {
    long r = 0;
    while (k >= p) {
        k /= p;
        ++r;
    }
    return r;
}

}  // namespace volk
