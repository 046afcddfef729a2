#pragma once

#include <vector>

#include "volk/group_ring.hpp"
#include "volk/mahler.hpp"

namespace volk {

struct IntegralReport {
    CycloElement value;
    PadicSize cauchy_defect;  // |S_N - S_{N-1}|
    long levels_used = 0;
};

struct FourierCoefficientReport {
    CycloElement value;       // T_{N,m}
    PadicSize cauchy_defect;  // |T_{N,m} - T_{N-1,m}|
    bool bound_ok = false;    // |T_{N,m}| <= c*m (m >= 1), with c = max(p*C, |mu(Z_p)|),
                              // C = max(B(mu), |mu(Z_p)|)
};

// Distribution on Z_p tabulated to finite depth N: values[j][a] for j <= N,
// a < p^j, in a common ambient field (level -1 for Q_p-valued data).  The
// refinement rule values[j][a] = sum_k values[j+1][a + k p^j] is the defining
// invariant; every constructor satisfies it exactly and
// check_distribution_relation re-certifies it.
class TabulatedDistribution {
public:
    TabulatedDistribution(ContextPtr ambient, std::vector<std::vector<CycloElement>> values);

    static TabulatedDistribution haar(const ContextPtr& ambient, long depth);
    static TabulatedDistribution dirac(const ContextPtr& ambient, long c, long depth);
    // level-n group-ring coefficients as a measure, extended downward by the
    // relation with equal split across the p children of each cell
    static TabulatedDistribution from_group_ring(const GroupRingElement& xi, long depth);
    // bounded measure with uniform random Z_p values at the deepest level
    static TabulatedDistribution random_measure(const ContextPtr& ambient, long depth,
                                                unsigned long seed);

    long depth() const { return static_cast<long>(values_.size()) - 1; }
    const ContextPtr& ambient() const { return ambient_; }
    long prime() const { return ambient_->prime(); }
    const CycloElement& value(long j, long a) const;
    const std::vector<std::vector<CycloElement>>& values() const { return values_; }
    CycloElement mass() const { return values_[0][0]; }  // mu(Z_p)

    PadicSize check_distribution_relation() const;
    // empirical B(mu) = max |p mu(a + p^(j+1) Z_p) - mu(a + p^j Z_p)|
    PadicSize volkenborn_defect() const;
    // j-th approximant f_j(x) = p^j mu(x + p^j Z_p)
    CycloElement limit_function(long x, long j) const;

    CycloElement riemann_sum(const MahlerFunction& f, long j) const;
    IntegralReport volkenborn_integral(const MahlerFunction& f) const;

    FourierCoefficientReport fourier_coefficient(long m) const;
    // exact finite sum sum_{a < p^j} zeta^a mu(a + p^j Z_p) at zeta = zeta_{p^j}^num
    CycloElement fourier_eval_at_root(long order_exp, long num) const;

    static TabulatedDistribution convolve(const TabulatedDistribution& nu,
                                          const TabulatedDistribution& mu, long level);

    TabulatedDistribution embed_into(const ContextPtr& bigger) const;
    TabulatedDistribution with_cell_perturbed(long j, long a, const CycloElement& delta) const;
    GroupRingElement level_group_ring(long j) const;

private:
    ContextPtr ambient_;
    std::vector<std::vector<CycloElement>> values_;
};

struct TransformIdentityReport {
    // residual of (nu*mu)^(zeta) - nuhat(zeta) muhat(zeta) per root zeta_{p^jmax}^c
    std::vector<PadicSize> root_residuals;
    PadicSize max_root_residual;
    // g_m = mu(S^(m+1)(f_nu o iota)) from the level-N approximant of f_nu,
    // iota(x) = -1-x realized as p^N-1-x on representatives
    std::vector<CycloElement> correction_coeffs;
};

TransformIdentityReport transform_identity_check(const TabulatedDistribution& nu,
                                                 const TabulatedDistribution& mu,
                                                 long max_order_exp, long num_corrections);

}  // namespace volk
