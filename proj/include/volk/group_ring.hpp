#pragma once

#include <optional>
#include <vector>

#include "volk/cyclo.hpp"

namespace volk {

// Formal sum over Gamma_n = Z/p^n with field (or Z_p) coefficients,
// written sum_a c_a gamma_0^(-a) to match the distribution dictionary
// mu <-> sum mu(a + p^n Z_p) gamma_0^(-a).
//
// Fourier convention, fixed throughout: the dual value at the root
// T = zeta_{p^n}^c is  dual[c] = sum_a c_a T^a,  and the inverse transform
// c_a = p^(-n) sum_c dual[c] zeta_{p^n}^(-ca) recovers the coefficients
// (with the 1/p^n division tracked by the precision ledger).
class GroupRingElement {
public:
    GroupRingElement(long level, ContextPtr ambient, std::vector<CycloElement> coeffs);

    long level() const { return level_; }
    long size() const { return static_cast<long>(coeffs_.size()); }
    const ContextPtr& ambient() const { return ambient_; }
    const std::vector<CycloElement>& coeffs() const { return coeffs_; }
    const CycloElement& coeff(long a) const;

    // dual value at T = zeta_{p^n}^c (needs ambient level >= n-1)
    CycloElement dual_at(long c) const;
    std::vector<CycloElement> duals() const;

    static GroupRingElement from_duals(long level, const ContextPtr& ambient,
                                       const std::vector<CycloElement>& duals);

    // push forward along Gamma_n -> Gamma_{n-1} (sum over fibers)
    GroupRingElement project_to_sublevel() const;

private:
    long level_;
    ContextPtr ambient_;
    std::vector<CycloElement> coeffs_;
};

// determinant by fraction-free-ish Gaussian elimination with minimal-valuation
// pivoting; square matrix of field elements
CycloElement determinant(std::vector<std::vector<CycloElement>> m);

// det(circulant(row)) equals the product of its DFT eigenvalues
// prod_c sum_a row[a] zeta_N^(ca); returns the difference's size
PadicSize circulant_determinant_residual(const std::vector<CycloElement>& row);

}  // namespace volk
