#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "volk/padic.hpp"
#include "volk/residual.hpp"

namespace volk {

class CycloElement;

// Arithmetic context for K_n = Q_p(zeta_{p^(n+1)}) in the power basis of the
// uniformizer pi = zeta - 1, with the Eisenstein modulus
//   E_n(X) = Phi_{p^(n+1)}(1+X) = sum_{k<p} (1+X)^(k p^n).
// The tower is totally ramified of degree e = p^n (p-1); level -1 denotes
// Q_p itself (e = 1, modulus X), which lets Q_p-valued data flow through the
// same element type.
//
// Contexts are immutable and shared; obtain them from field_context().
class FieldContext : public std::enable_shared_from_this<FieldContext> {
public:
    FieldContext(long p, long level, long wdigits);

    long prime() const { return p_; }
    long level() const { return level_; }
    long wdigits() const { return w_; }
    long degree() const { return e_; }
    // p^(level+1): the order of the distinguished root of unity
    long root_order() const { return root_order_; }

    // reduction precision: all polynomial arithmetic runs mod p^reduction_digits()
    long reduction_digits() const { return rdigits_; }
    const BigInt& reduction_modulus() const { return rmod_; }
    BigInt p_power(long k) const;

    const std::vector<BigInt>& eisenstein() const { return eis_; }

    CycloElement zero() const;
    CycloElement one() const;
    CycloElement from_integer(const BigInt& n) const;
    CycloElement from_scalar(const PadicScalar& s) const;
    // zeta^a as an element (a arbitrary integer, reduced mod root_order)
    CycloElement zeta_power(long a) const;
    // zeta_{p^j}^a embedded at this level (needs j <= level+1)
    CycloElement root_of_unity(long order_exp, long a) const;

    // internal: coefficient vectors of zeta^a, cached
    const std::vector<BigInt>& zeta_power_coeffs(long a) const;
    // internal: powers of the image of pi_src at this level (basis columns for
    // embedding / subfield recognition); src_level < level
    const std::vector<std::vector<BigInt>>& sublevel_basis(long src_level) const;
    // p/pi as an integral element (exact from the Eisenstein relation)
    const std::vector<BigInt>& p_over_pi() const { return p_over_pi_; }

    std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const;
    std::vector<BigInt> poly_inv_unit(const std::vector<BigInt>& a, long wprec) const;

private:
    long p_, level_, w_, e_, rdigits_;
    long root_order_;
    BigInt rmod_;
    std::vector<BigInt> eis_;        // length e+1, monic, exact mod rmod_
    std::vector<BigInt> p_over_pi_;  // length e
    std::vector<std::vector<BigInt>> red_;  // X^(e+i) mod E, i = 0..e-2

    mutable std::mutex cache_mu_;
    mutable std::vector<BigInt> ppow_;  // p^k cache
    mutable std::map<long, std::vector<BigInt>> zeta_cache_;
    mutable std::map<long, std::vector<std::vector<BigInt>>> sublevel_cache_;
};

using ContextPtr = std::shared_ptr<const FieldContext>;

// context cache keyed by (p, level, wdigits)
ContextPtr field_context(long p, long level, long wdigits);

// Element of K_n as p^(-scale) * sum c_i pi^i with coefficients pinned
// mod p^wprec.  The certified pi-adic precision of the value is
// e*(wprec - scale): errors in the stored residues sit at or above that line.
class CycloElement {
public:
    CycloElement(ContextPtr ctx, std::vector<BigInt> coeffs, long scale, long wprec);

    const ContextPtr& context() const { return ctx_; }
    long scale() const { return scale_; }
    long wprec() const { return wprec_; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    // certified zero threshold, in pi-valuation units
    long pi_precision() const { return ctx_->degree() * (wprec_ - scale_); }
    bool is_zero_at_precision() const;

    // valuation via min_i (i + e v_p(c_i)) - e*scale; unique-minimum structure
    // makes the result exact whenever the element is distinguishable from 0
    long pi_valuation() const;

    CycloElement operator-() const;
    friend CycloElement operator+(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator-(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator/(const CycloElement& a, const CycloElement& b);
    CycloElement inverse() const;
    CycloElement pow(long exp) const;

    CycloElement scaled_by_scalar(const PadicScalar& s) const;
    // multiply by p^k (exact bookkeeping shift; k may be negative)
    CycloElement shifted_p_power(long k) const;

    // strip shared p-powers out of the coefficients / fold negative scale in
    CycloElement normalized() const;

    // ring automorphism zeta -> zeta^a, gcd(a, p) = 1
    CycloElement galois(long a) const;

    // re-express into the next level down (context level-1); the residual of
    // the subfield solve must vanish at working precision
    CycloElement project_to_sublevel() const;

    CycloElement embed_into(const ContextPtr& bigger) const;

    // i-th coefficient as a scalar (carries the scale and precision)
    PadicScalar coefficient(long i) const;

    // size of this element viewed as a residual
    PadicSize residual_size() const;

    bool indistinguishable_from(const CycloElement& o) const {
        return (*this - o).is_zero_at_precision();
    }

    std::string to_string() const;

private:
    void check_same_context(const CycloElement& o) const;

    ContextPtr ctx_;
    long scale_;
    long wprec_;
    std::vector<BigInt> c_;
};

// Galois norm down one level of the tower: prod_k sigma_{1+k p^n}(x),
// re-expressed in the level-(n-1) basis.
CycloElement norm_to_sublevel(const CycloElement& x);

// Iwasawa logarithm (branch log p = 0); defined on all of K_n^*.
CycloElement iwasawa_log(const CycloElement& x);

}  // namespace volk
