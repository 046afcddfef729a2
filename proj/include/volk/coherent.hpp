#pragma once

#include <map>
#include <mutex>

#include "volk/characters.hpp"
#include "volk/distribution.hpp"

namespace volk {

// Norm-coherent sequence (ell_n) down the cyclotomic tower,
// N_{K_n/K_{n-1}}(ell_n) = ell_{n-1}.  Built-in families:
//   one_minus_zeta          ell_n = 1 - zeta_{p^(n+1)}
//   cyclo_unit(c)           ell_n = zeta_{p-1}^c - zeta_{p^(n+1)},
//                           zeta_{p-1} the Teichmuller lift of the least
//                           primitive root g mod p^2
//   unit_generator          ell_n = (zeta^(b*) - 1)/(zeta - 1) with
//                           b* = omega(g)(1+p), the cyclotomic-unit generator
// plus user-supplied level lists (coherence checked on demand).
class NormCoherentSequence {
public:
    enum class Kind { OneMinusZeta, CycloUnit, UnitGenerator, Custom };

    static NormCoherentSequence one_minus_zeta(long p, long depth, long wdigits);
    static NormCoherentSequence cyclo_unit(long p, long tame_index, long depth, long wdigits);
    static NormCoherentSequence unit_generator(long p, long depth, long wdigits);
    static NormCoherentSequence custom(std::vector<CycloElement> levels);

    long prime() const { return p_; }
    long depth() const { return static_cast<long>(levels_.size()) - 1; }
    long wdigits() const { return w_; }
    Kind kind() const { return kind_; }
    long tame_index() const { return tame_index_; }

    const CycloElement& at_level(long n) const;
    // sigma_b(ell_n); closed form for the built-in families
    CycloElement conjugate(long n, long b) const;
    // iwasawa_log(sigma_b(ell_n)), cached per (n, b)
    CycloElement conjugate_log(long n, long b) const;

    // max |N(ell_n) - ell_{n-1}| over 1 <= n <= depth
    PadicSize verify_norm_coherence() const;

    // copy with one level multiplied by a unit factor (fault injection)
    NormCoherentSequence with_level_perturbed(long n, const CycloElement& factor) const;

    std::string spec_string() const;  // "one-minus-zeta", "cyclo-unit:c=3", ...

private:
    NormCoherentSequence() = default;
    struct LogCache {
        std::mutex mu;
        std::map<std::pair<long, long>, CycloElement> map;
    };
    long p_ = 0;
    long w_ = 0;
    Kind kind_ = Kind::Custom;
    long tame_index_ = 0;
    std::vector<CycloElement> levels_;
    std::shared_ptr<LogCache> cache_ = std::make_shared<LogCache>();
};

// lambda(a + p^n Z_p) = -log(ell_n^(gamma_0^a)), gamma_0 = sigma_{1+p};
// tabulated to the given depth in the ambient field K_depth
TabulatedDistribution lambda_from_sequence(const NormCoherentSequence& seq, long depth);

// chi-traced variant for a tame character chi:
// lambda_chi(a + p^n Z_p) = -sum_delta chibar(delta) log(ell_n^(sigma_b)),
// b = omega(delta) (1+p)^a mod p^(n+1) running over the canonical
// Delta x Gamma_n decomposition of (Z/p^(n+1))^*
TabulatedDistribution lambda_chi(const NormCoherentSequence& seq, const DirichletCharacter& chi,
                                 long depth);

// convolution action of a group-ring measure on a tabulated distribution
TabulatedDistribution act_by_measure(const TabulatedDistribution& lam, const GroupRingElement& xi,
                                     long level);

}  // namespace volk
