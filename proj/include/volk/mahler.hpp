#pragma once

#include <vector>

#include "volk/cyclo.hpp"

namespace volk {

// Function on Z_p presented in one of the shapes the integration and Fourier
// machinery consumes: a polynomial, a single binomial C(x, m), a power T^x of
// a fixed p-power root of unity, a truncated Mahler series, or a pointwise
// table on 0..len-1.
class MahlerFunction {
public:
    enum class Kind { Polynomial, Binomial, RootPower, Series, Table };

    static MahlerFunction polynomial(std::vector<BigInt> coeffs);
    static MahlerFunction binomial(long m);
    static MahlerFunction root_power(long order_exp, long num);
    static MahlerFunction series(std::vector<PadicScalar> coeffs);
    static MahlerFunction table(std::vector<CycloElement> values);

    Kind kind() const { return kind_; }
    const std::vector<PadicScalar>& series_coeffs() const { return scoeffs_; }

    CycloElement evaluate(const ContextPtr& ambient, long x) const;
    // values at x = 0..count-1 (incremental where that helps)
    std::vector<CycloElement> evaluate_range(const ContextPtr& ambient, long count) const;

private:
    MahlerFunction() = default;
    Kind kind_ = Kind::Polynomial;
    std::vector<BigInt> pcoeffs_;
    long binom_m_ = 0;
    long root_order_exp_ = 0, root_num_ = 0;
    std::vector<PadicScalar> scoeffs_;
    std::vector<CycloElement> table_;
};

// Mahler coefficients a_m = (nabla^m f)(0) by iterated finite differences;
// the reconstruction sum a_m C(x, m) reproduces f on 0..M exactly.
std::vector<CycloElement> mahler_coeffs(const std::vector<CycloElement>& values);

// r-fold indefinite sum with (S g)(0) = 0 and nabla S g = g
std::vector<CycloElement> indefinite_sum_values(const std::vector<CycloElement>& g, long r);

// max over m >= from of m * |a_m|; the C1 tail diagnostic
struct TailBound {
    long arg_m = 0;          // where the max is attained
    bool zero = true;        // every tail coefficient is zero at precision
    PadicSize size;          // |a_m| at the max
};
TailBound c1_defect(const std::vector<CycloElement>& coeffs, long from = 1);

// m |a_m| non-increasing for m >= from (the decay profile of a C1 series)
bool c1_monotone_decay(const std::vector<CycloElement>& coeffs, long from = 1);

// exact comparison m1 * p^(-v1/e) <= m2 * p^(-v2/e) on certified data
bool size_times_le(long m1, const PadicSize& s1, long m2, const PadicSize& s2, long p);

}  // namespace volk
