#include "volk/group_ring.hpp"

namespace volk {

GroupRingElement::GroupRingElement(long level, ContextPtr ambient, std::vector<CycloElement> coeffs)
    : level_(level), ambient_(std::move(ambient)), coeffs_(std::move(coeffs)) {
    if (level_ < 0) throw std::invalid_argument("GroupRingElement: level must be >= 0");
    long n = small_pow(ambient_->prime(), level_);
    if (static_cast<long>(coeffs_.size()) != n)
        throw std::invalid_argument("GroupRingElement: need p^level coefficients");
}

const CycloElement& GroupRingElement::coeff(long a) const {
    long n = size();
    return coeffs_[static_cast<size_t>(((a % n) + n) % n)];
}

CycloElement GroupRingElement::dual_at(long c) const {
    if (level_ > ambient_->level() + 1)
        throw std::invalid_argument("GroupRingElement: ambient field too small for the duals");
    long n = size();
    CycloElement acc = ambient_->zero();
    for (long a = 0; a < n; ++a)
        acc = acc + coeffs_[static_cast<size_t>(a)] * ambient_->root_of_unity(level_, c * a);
    return acc;
}

std::vector<CycloElement> GroupRingElement::duals() const {
    std::vector<CycloElement> out;
    out.reserve(static_cast<size_t>(size()));
    for (long c = 0; c < size(); ++c) out.push_back(dual_at(c));
    return out;
}

GroupRingElement GroupRingElement::from_duals(long level, const ContextPtr& ambient,
                                              const std::vector<CycloElement>& duals) {
    long n = small_pow(ambient->prime(), level);
    if (static_cast<long>(duals.size()) != n)
        throw std::invalid_argument("from_duals: need p^level dual values");
    std::vector<CycloElement> coeffs;
    coeffs.reserve(static_cast<size_t>(n));
    for (long a = 0; a < n; ++a) {
        CycloElement acc = ambient->zero();
        for (long c = 0; c < n; ++c)
            acc = acc + duals[static_cast<size_t>(c)] * ambient->root_of_unity(level, -c * a);
        coeffs.push_back(acc.shifted_p_power(-level));  // the 1/p^n of the inversion
    }
    return GroupRingElement(level, ambient, std::move(coeffs));
}

GroupRingElement GroupRingElement::project_to_sublevel() const {
    if (level_ == 0) throw std::domain_error("project_to_sublevel: already at level 0");
    long p = ambient_->prime();
    long nsub = size() / p;
    std::vector<CycloElement> out;
    out.reserve(static_cast<size_t>(nsub));
    for (long a = 0; a < nsub; ++a) {
        CycloElement acc = coeffs_[static_cast<size_t>(a)];
        for (long k = 1; k < p; ++k) acc = acc + coeffs_[static_cast<size_t>(a + k * nsub)];
        out.push_back(acc);
    }
    return GroupRingElement(level_ - 1, ambient_, std::move(out));
}

CycloElement determinant(std::vector<std::vector<CycloElement>> m) {
    size_t n = m.size();
    if (n == 0) throw std::invalid_argument("determinant: empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("determinant: matrix not square");
    auto ctx = m[0][0].context();
    CycloElement det = ctx->one();
    bool negate = false;
    for (size_t col = 0; col < n; ++col) {
        // pick the lowest-valuation pivot for precision
        long best = -1;
        long bestv = 0;
        for (size_t r = col; r < n; ++r) {
            if (m[r][col].is_zero_at_precision()) continue;
            long v = m[r][col].pi_valuation();
            if (best < 0 || v < bestv) {
                best = static_cast<long>(r);
                bestv = v;
            }
        }
        if (best < 0) throw std::domain_error("determinant: singular at working precision");
        if (static_cast<size_t>(best) != col) {
            std::swap(m[static_cast<size_t>(best)], m[col]);
            negate = !negate;
        }
        const CycloElement piv = m[col][col];
        det = det * piv;
        CycloElement inv = piv.inverse();
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero_at_precision()) continue;
            CycloElement factor = m[r][col] * inv;
            for (size_t c2 = col; c2 < n; ++c2) m[r][c2] = m[r][c2] - factor * m[col][c2];
        }
    }
    return negate ? -det : det;
}

PadicSize circulant_determinant_residual(const std::vector<CycloElement>& row) {
    size_t n = row.size();
    auto ctx = row[0].context();
    // order of the DFT roots: n must be p^j with zeta_{p^j} in the ambient
    long level = 0;
    long m = static_cast<long>(n);
    while (m > 1) {
        if (m % ctx->prime() != 0)
            throw std::invalid_argument("circulant check: size must be a p-power");
        m /= ctx->prime();
        ++level;
    }
    std::vector<std::vector<CycloElement>> mat;
    mat.reserve(n);
    for (size_t r = 0; r < n; ++r) {
        std::vector<CycloElement> line;
        line.reserve(n);
        for (size_t c = 0; c < n; ++c)
            line.push_back(row[(c + n - r) % n]);
        mat.push_back(std::move(line));
    }
    CycloElement det = determinant(std::move(mat));
    CycloElement prod = ctx->one();
    for (long c = 0; c < static_cast<long>(n); ++c) {
        CycloElement eig = ctx->zero();
        for (long a = 0; a < static_cast<long>(n); ++a)
            eig = eig + row[static_cast<size_t>(a)] * ctx->root_of_unity(level, c * a);
        prod = prod * eig;
    }
    return (det - prod).residual_size();
}

}  // namespace volk
