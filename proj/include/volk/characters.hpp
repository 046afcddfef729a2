#pragma once

#include <vector>

#include "volk/cyclo.hpp"

namespace volk {

// least g >= 2 that generates (Z/p^2)^* (hence (Z/p^k)^* for every k)
long least_primitive_root_mod_p2(long p);

// Dirichlet character of modulus p^(level+1), stored in tame x wild
// coordinates: phi = omega^tame * psi with psi(1+p) = zeta_{p^level}^wild.
// Values are zero on multiples of p and lie in Z_p[zeta_{p^level}].
class DirichletCharacter {
public:
    DirichletCharacter(long p, long level, long tame_exp, long wild_exp);

    long prime() const { return p_; }
    long level() const { return level_; }
    long modulus() const { return modulus_; }
    long tame_exponent() const { return tame_; }
    long wild_exponent() const { return wild_; }

    bool is_trivial() const { return tame_ == 0 && wild_ == 0; }
    bool is_tame() const { return wild_ == 0; }
    // parity: phi(-1) = (-1)^tame
    bool is_even() const { return tame_ % 2 == 0; }
    bool is_odd() const { return !is_even(); }

    // conductor = p^conductor_exponent()
    long conductor_exponent() const { return cond_exp_; }

    DirichletCharacter conjugate() const {
        return DirichletCharacter(p_, level_, -tame_, -wild_);
    }

    // discrete log of <a> = a/omega(a) base 1+p, for gcd(a, p) = 1
    long wild_dlog(long a) const;

    // phi(a) in the ambient field (zero element when p | a)
    CycloElement value(long a, const ContextPtr& ambient) const;

    // tame part omega(a)^tame as a Z_p scalar
    PadicScalar tame_value(long a, long wdigits) const;

    std::string name() const;  // "omega^j*psi^u@p^(n+1)"

private:
    long p_, level_, modulus_;
    long tame_, wild_;
    long cond_exp_;
    std::vector<long> dlog_;       // indexed by residue mod p^(level+1); -1 on non-units
    std::vector<long> omega_mod_;  // omega(a) mod p^(level+1) for a = 0..p-1
};

// tau(phi) = sum_{a mod f} phi(a) zeta_f^a, f = conductor; needs f > 1
CycloElement gauss_sum(const DirichletCharacter& phi, const ContextPtr& ambient);

}  // namespace volk
