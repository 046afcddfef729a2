#include "volk/mahler.hpp"

namespace volk {

MahlerFunction MahlerFunction::polynomial(std::vector<BigInt> coeffs) {
    MahlerFunction f;
    f.kind_ = Kind::Polynomial;
    f.pcoeffs_ = std::move(coeffs);
    if (f.pcoeffs_.empty()) f.pcoeffs_.push_back(BigInt(0));
    return f;
}

MahlerFunction MahlerFunction::binomial(long m) {
    if (m < 0) throw std::invalid_argument("binomial: m >= 0 required");
    MahlerFunction f;
    f.kind_ = Kind::Binomial;
    f.binom_m_ = m;
    return f;
}

MahlerFunction MahlerFunction::root_power(long order_exp, long num) {
    MahlerFunction f;
    f.kind_ = Kind::RootPower;
    f.root_order_exp_ = order_exp;
    f.root_num_ = num;
    return f;
}

MahlerFunction MahlerFunction::series(std::vector<PadicScalar> coeffs) {
    MahlerFunction f;
    f.kind_ = Kind::Series;
    f.scoeffs_ = std::move(coeffs);
    return f;
}

MahlerFunction MahlerFunction::table(std::vector<CycloElement> values) {
    if (values.empty()) throw std::invalid_argument("table: empty value list");
    MahlerFunction f;
    f.kind_ = Kind::Table;
    f.table_ = std::move(values);
    return f;
}

CycloElement MahlerFunction::evaluate(const ContextPtr& ambient, long x) const {
    switch (kind_) {
        case Kind::Polynomial: {
            BigInt acc = 0;
            for (size_t i = pcoeffs_.size(); i-- > 0;) acc = acc * x + pcoeffs_[i];
            return ambient->from_integer(acc);
        }
        case Kind::Binomial: {
            BigInt b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(x),
                         static_cast<unsigned long>(binom_m_));
            return ambient->from_integer(b);
        }
        case Kind::RootPower:
            return ambient->root_of_unity(root_order_exp_,
                                          static_cast<long>((static_cast<long long>(root_num_) * x) %
                                                            small_pow(ambient->prime(), root_order_exp_)));
        case Kind::Series: {
            CycloElement acc = ambient->zero();
            for (size_t m = 0; m < scoeffs_.size(); ++m) {
                if (scoeffs_[m].is_zero() && scoeffs_[m].exactly_zero()) continue;
                BigInt b;
                mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(x),
                             static_cast<unsigned long>(m));
                if (b == 0) continue;
                acc = acc + ambient->from_integer(b).scaled_by_scalar(scoeffs_[m]);
            }
            return acc;
        }
        case Kind::Table: {
            if (x < 0 || x >= static_cast<long>(table_.size()))
                throw std::out_of_range("table function: argument outside the table");
            return table_[static_cast<size_t>(x)].embed_into(ambient);
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<CycloElement> MahlerFunction::evaluate_range(const ContextPtr& ambient,
                                                         long count) const {
    std::vector<CycloElement> out;
    out.reserve(static_cast<size_t>(count));
    if (kind_ == Kind::RootPower) {
        long order = small_pow(ambient->prime(), root_order_exp_);
        CycloElement t = ambient->root_of_unity(root_order_exp_, root_num_);
        CycloElement acc = ambient->one();
        for (long x = 0; x < count; ++x) {
            out.push_back(acc);
            if (x + 1 < count) acc = (x % order == order - 1) ? ambient->one() : acc * t;
        }
        return out;
    }
    for (long x = 0; x < count; ++x) out.push_back(evaluate(ambient, x));
    return out;
}

std::vector<CycloElement> mahler_coeffs(const std::vector<CycloElement>& values) {
    std::vector<CycloElement> diff = values;
    std::vector<CycloElement> out;
    out.reserve(values.size());
    for (size_t m = 0; m < values.size(); ++m) {
        out.push_back(diff[0]);
        for (size_t i = 0; i + 1 < diff.size() - m; ++i) diff[i] = diff[i + 1] - diff[i];
    }
    return out;
}

std::vector<CycloElement> indefinite_sum_values(const std::vector<CycloElement>& g, long r) {
    if (r < 1) throw std::invalid_argument("indefinite_sum_values: r >= 1 required");
    if (g.empty()) return {};
    auto ctx = g[0].context();
    std::vector<CycloElement> cur = g;
    for (long it = 0; it < r; ++it) {
        std::vector<CycloElement> next;
        next.reserve(cur.size());
        next.push_back(ctx->zero());
        for (size_t x = 1; x < cur.size(); ++x) next.push_back(next[x - 1] + cur[x - 1]);
        cur = std::move(next);
    }
    return cur;
}

bool size_times_le(long m1, const PadicSize& s1, long m2, const PadicSize& s2, long p) {
    // m1 p^(-v1/e) <= m2 p^(-v2/e)  <=>  m1^e p^v2 <= m2^e p^v1   (same e)
    if (s1.ram_index != s2.ram_index)
        throw std::invalid_argument("size_times_le: mixed ramification indices");
    long e = s1.ram_index;
    long v1 = s1.below_precision ? s1.zero_floor : s1.pi_valuation;
    long v2 = s2.below_precision ? s2.zero_floor : s2.pi_valuation;
    BigInt lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(m1), static_cast<unsigned long>(e));
    mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(m2), static_cast<unsigned long>(e));
    if (v2 > v1)
        lhs *= pow_int(p, static_cast<unsigned long>(v2 - v1));
    else
        rhs *= pow_int(p, static_cast<unsigned long>(v1 - v2));
    return lhs <= rhs;
}

bool c1_monotone_decay(const std::vector<CycloElement>& coeffs, long from) {
    if (coeffs.empty()) return true;
    long p = coeffs[0].context()->prime();
    long prev_m = -1;
    PadicSize prev;
    for (long m = std::max(from, 1L); m < static_cast<long>(coeffs.size()); ++m) {
        const auto& a = coeffs[static_cast<size_t>(m)];
        if (a.is_zero_at_precision()) continue;  // certified-small entries never violate
        PadicSize s = a.residual_size();
        if (prev_m >= 0 && !size_times_le(m, s, prev_m, prev, p)) return false;
        prev_m = m;
        prev = s;
    }
    return true;
}

TailBound c1_defect(const std::vector<CycloElement>& coeffs, long from) {
    TailBound best;
    if (coeffs.empty()) return best;
    long p = coeffs[0].context()->prime();
    for (long m = std::max(from, 1L); m < static_cast<long>(coeffs.size()); ++m) {
        const auto& a = coeffs[static_cast<size_t>(m)];
        if (a.is_zero_at_precision()) continue;
        PadicSize s = a.residual_size();
        if (best.zero || !size_times_le(m, s, best.arg_m, best.size, p)) {
            best.zero = false;
            best.arg_m = m;
            best.size = s;
        }
    }
    return best;
}

}  // namespace volk
