#include "volk/characters.hpp"

#include <sstream>

namespace volk {

long least_primitive_root_mod_p2(long p) {
    long p2 = p * p;
    for (long g = 2; g < p2; ++g) {
        if (g % p == 0) continue;
        // order mod p must be p-1
        long x = 1 % p;
        long ord = 0;
        do {
            x = (x * g) % p;
            ++ord;
        } while (x != 1 % p);
        if (ord != p - 1) continue;
        // and g^(p-1) != 1 mod p^2
        long y = 1;
        for (long i = 0; i < p - 1; ++i) y = (y * g) % p2;
        if (y != 1) return g;
    }
    throw std::logic_error("no primitive root found");
}

DirichletCharacter::DirichletCharacter(long p, long level, long tame_exp, long wild_exp)
    : p_(p), level_(level) {
    if (p < 3 || !is_small_prime(p)) throw std::invalid_argument("character: p must be an odd prime");
    if (level < 0) throw std::invalid_argument("character: level must be >= 0");
    modulus_ = small_pow(p, level + 1);
    long pn = small_pow(p, level);
    tame_ = ((tame_exp % (p - 1)) + (p - 1)) % (p - 1);
    wild_ = ((wild_exp % pn) + pn) % pn;

    if (wild_ != 0) {
        cond_exp_ = level + 1 - p_valuation(BigInt(wild_), p);
    } else {
        cond_exp_ = (tame_ != 0) ? 1 : 0;
    }

    // omega(a) mod p^(level+1) by iterating a -> a^p
    omega_mod_.assign(static_cast<size_t>(p), 0);
    BigInt m = modulus_;
    for (long a = 1; a < p; ++a) {
        BigInt x = a;
        for (long i = 0; i <= level + 1; ++i)
            mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p), m.get_mpz_t());
        omega_mod_[static_cast<size_t>(a)] = x.get_si();
    }

    // dlog table for <a> = a / omega(a) base 1+p
    dlog_.assign(static_cast<size_t>(modulus_), -1);
    long x = 1;
    for (long i = 0; i < pn; ++i) {
        dlog_[static_cast<size_t>(x)] = i;
        x = static_cast<long>((static_cast<long long>(x) * (1 + p)) % modulus_);
    }
}

long DirichletCharacter::wild_dlog(long a) const {
    long ar = ((a % modulus_) + modulus_) % modulus_;
    if (ar % p_ == 0) throw std::domain_error("wild_dlog: argument divisible by p");
    long om = omega_mod_[static_cast<size_t>(ar % p_)];
    BigInt inv = inv_mod(BigInt(om), BigInt(modulus_));
    long bracket = static_cast<long>(mod_reduce(inv * ar, BigInt(modulus_)).get_si());
    long d = dlog_[static_cast<size_t>(bracket)];
    if (d < 0) throw std::logic_error("wild_dlog: table miss");
    return d;
}

PadicScalar DirichletCharacter::tame_value(long a, long wdigits) const {
    long ar = ((a % p_) + p_) % p_;
    if (ar == 0) return PadicScalar::zero(p_);
    if (tame_ == 0) return PadicScalar::from_integer(p_, 1, wdigits);
    return teichmuller(p_, ar, wdigits).pow(static_cast<unsigned long>(tame_));
}

CycloElement DirichletCharacter::value(long a, const ContextPtr& ambient) const {
    if (ambient->prime() != p_) throw std::invalid_argument("character value: prime mismatch");
    long ar = ((a % modulus_) + modulus_) % modulus_;
    if (ar % p_ == 0) return ambient->zero();
    PadicScalar tame = tame_value(ar, ambient->wdigits());
    if (wild_ == 0 || level_ == 0) return ambient->from_scalar(tame);
    long pn = small_pow(p_, level_);
    long d = wild_dlog(ar);
    long expo = static_cast<long>((static_cast<long long>(wild_) * d) % pn);
    if (expo == 0) return ambient->from_scalar(tame);
    // reduce the root to its exact order so values of imprimitive wild parts
    // stay in the smallest field containing them
    long r = 0;
    while (expo % p_ == 0) {
        expo /= p_;
        ++r;
    }
    if (ambient->level() + 1 < level_ - r)
        throw std::invalid_argument("character value: ambient level below the value field");
    return ambient->root_of_unity(level_ - r, expo).scaled_by_scalar(tame);
}

std::string DirichletCharacter::name() const {
    std::ostringstream os;
    os << "omega^" << tame_ << "*psi^" << wild_ << "@" << p_ << "^" << (level_ + 1);
    return os.str();
}

CycloElement gauss_sum(const DirichletCharacter& phi, const ContextPtr& ambient) {
    long k = phi.conductor_exponent();
    if (k == 0) throw std::domain_error("gauss_sum: trivial character");
    if (ambient->level() + 1 < k)
        throw std::invalid_argument("gauss_sum: ambient level too small for the conductor");
    long f = small_pow(phi.prime(), k);
    CycloElement sum = ambient->zero();
    for (long a = 1; a <= f; ++a) {
        if (a % phi.prime() == 0) continue;
        sum = sum + phi.value(a, ambient) * ambient->root_of_unity(k, a);
    }
    return sum;
}

}  // namespace volk
