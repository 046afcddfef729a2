#pragma once

#include <utility>

#include "volk/coherent.hpp"

namespace volk {

// raised where a formula is identically zero by parity rather than a value
class odd_character_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Leopoldt's formula at s = 1:
//   L_p(1, phi) = -(1 - phi(p)/p) (1/tau(phibar)) sum_{a mod f} log(1 - zeta_f^a) phibar(a)
// for even nontrivial phi of p-power conductor (the Euler factor is 1 since
// phi(p) = 0 once p | f).  Odd phi raises odd_character_error, trivial phi
// raises domain_error.
CycloElement leopoldt_lp1(const DirichletCharacter& phi, const ContextPtr& ambient);

struct InterpolationReport {
    CycloElement lhs;  // lambdahat_chi(zeta_psi) through the distribution pipeline
    CycloElement rhs;  // direct conductor sum
    PadicSize residual;
    bool lvalue_checked = false;  // the tau(phibar) L_p(1, phi) route (t = 0, even phi)
    PadicSize lvalue_residual;
    bool parity_vanishing = false;  // odd phi: both sides certified zero
};

// two-path check of the interpolation identity at phi = chi psi for the
// sequence zeta_{p-1}^t - zeta_{p^(n+1)}
InterpolationReport verify_interpolation(long p, long n, long chi_exp, long psi_exp, long t,
                                         long wdigits);

struct UnitRatioRow {
    long tame_index;
    long psi_exp;
    bool well_defined;      // upsilon-hat distinguishable from zero
    long ratio_valuation;   // v_pi(upsilon-hat / tau(chibar psibar)) at level n
};

struct UnitRatioTable {
    std::vector<UnitRatioRow> rows;  // ordered by (tame_index, psi_exp)
    long selected_c = -1;  // least c whose row is 0 for every wild psi,或 -1
};

UnitRatioTable unit_ratio_table(long p, long n, long chi_exp, long wdigits);

// the chi-traced log data of the cyclotomic-unit generator (Xi) and of the
// tame-index-c sequence (Upsilon), as group ring elements over Gamma_n
std::pair<GroupRingElement, GroupRingElement> xi_upsilon_group_elements(long p, long n,
                                                                        long chi_exp, long c,
                                                                        long wdigits);

struct AnnihilatorReport {
    GroupRingElement m;                      // M_chi^(n) = Upsilon^(-1) Xi
    bool integral = false;                   // every coefficient in Z_p at precision
    long certified_digits = 0;               // min certified digits across coefficients
    std::vector<PadicScalar> coefficients;   // the Z_p coordinates of M
};

AnnihilatorReport annihilator(long p, long n, long chi_exp, long c, long wdigits);

struct RegulatorReport {
    long ratio_valuation = 0;  // v_pi(prod upsilon-hat / prod tau) at level n
    bool ratio_is_unit = false;
    PadicSize circulant_residual;  // det(circulant of Upsilon) vs the DFT product
};

RegulatorReport regulator_product_check(long p, long n, long chi_exp, long c, long wdigits);

}  // namespace volk
