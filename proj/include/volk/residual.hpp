#pragma once

#include <limits>
#include <numeric>
#include <string>

#include "volk/bignum.hpp"

namespace volk {

// Certified p-adic size of a residual / defect quantity.
//
// Finite-precision data can certify either "the value is indistinguishable
// from zero below p^-(floor/e)" or "the value has exact valuation v/e" where
// e is the ramification index of the ambient field (1 over Q_p).  All
// verification checks in this library report one of these two states instead
// of throwing, so slow convergence shows up as a measured size.
struct PadicSize {
    bool below_precision = true;
    long pi_valuation = 0;   // meaningful when !below_precision
    long zero_floor = std::numeric_limits<long>::max();  // certified threshold when below
    long ram_index = 1;      // e of the ambient field

    static PadicSize zero_at(long floor, long e) {
        PadicSize s;
        s.below_precision = true;
        s.zero_floor = floor;
        s.ram_index = e;
        return s;
    }
    static PadicSize measured(long v, long e) {
        PadicSize s;
        s.below_precision = false;
        s.pi_valuation = v;
        s.ram_index = e;
        return s;
    }

    // Accumulate the max of sizes (= min of valuations).  Certified-zero cells
    // only lower the reported floor; any measured cell flips the state.
    // Mixed ramification indices (e.g. residuals from different tower levels)
    // are rescaled to a common denominator first.
    void absorb_max(const PadicSize& o) {
        long e = std::lcm(ram_index, o.ram_index);
        if (e != ram_index) {
            long k = e / ram_index;
            if (!below_precision) pi_valuation *= k;
            if (zero_floor != std::numeric_limits<long>::max()) zero_floor *= k;
            ram_index = e;
        }
        long ko = e / o.ram_index;
        if (o.below_precision) {
            if (o.zero_floor != std::numeric_limits<long>::max())
                zero_floor = std::min(zero_floor, o.zero_floor * ko);
            return;
        }
        if (below_precision) {
            below_precision = false;
            pi_valuation = o.pi_valuation * ko;
            return;
        }
        pi_valuation = std::min(pi_valuation, o.pi_valuation * ko);
    }

    // size <= p^-k (k in p-valuation units)?
    bool at_most_p_power(long k) const {
        if (below_precision) return zero_floor >= k * ram_index;
        return pi_valuation >= k * ram_index;
    }

    std::string to_string(long p) const {
        if (below_precision) {
            if (zero_floor == std::numeric_limits<long>::max()) return "0";
            return "0 (below pi^" + std::to_string(zero_floor) + ", e=" +
                   std::to_string(ram_index) + ")";
        }
        return "|.| = " + std::to_string(p) + "^(-" + std::to_string(pi_valuation) + "/" +
               std::to_string(ram_index) + ")";
    }
};

}  // namespace volk
