#include "volk/distribution.hpp"

#include <random>

namespace volk {

TabulatedDistribution::TabulatedDistribution(ContextPtr ambient,
                                             std::vector<std::vector<CycloElement>> values)
    : ambient_(std::move(ambient)), values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("TabulatedDistribution: no levels");
    long p = ambient_->prime();
    long cells = 1;
    for (size_t j = 0; j < values_.size(); ++j) {
        if (static_cast<long>(values_[j].size()) != cells)
            throw std::invalid_argument("TabulatedDistribution: level " + std::to_string(j) +
                                        " must hold p^j cells");
        cells *= p;
    }
}

const CycloElement& TabulatedDistribution::value(long j, long a) const {
    if (j < 0 || j > depth()) throw std::out_of_range("distribution level out of range");
    long n = static_cast<long>(values_[static_cast<size_t>(j)].size());
    return values_[static_cast<size_t>(j)][static_cast<size_t>(((a % n) + n) % n)];
}

TabulatedDistribution TabulatedDistribution::haar(const ContextPtr& ambient, long depth) {
    if (depth < 0) throw std::invalid_argument("haar: depth >= 0 required");
    long p = ambient->prime();
    std::vector<std::vector<CycloElement>> vals;
    long cells = 1;
    for (long j = 0; j <= depth; ++j) {
        // exact 1/p^j: unit coefficient with scale j keeps full value precision
        std::vector<BigInt> c(static_cast<size_t>(ambient->degree()), BigInt(0));
        c[0] = 1;
        CycloElement cell(ambient, std::move(c), j, ambient->wdigits() + j);
        vals.emplace_back(static_cast<size_t>(cells), cell);
        cells *= p;
    }
    return TabulatedDistribution(ambient, std::move(vals));
}

TabulatedDistribution TabulatedDistribution::dirac(const ContextPtr& ambient, long c, long depth) {
    if (depth < 0) throw std::invalid_argument("dirac: depth >= 0 required");
    long p = ambient->prime();
    std::vector<std::vector<CycloElement>> vals;
    long cells = 1;
    for (long j = 0; j <= depth; ++j) {
        std::vector<CycloElement> row;
        row.reserve(static_cast<size_t>(cells));
        long cr = ((c % cells) + cells) % cells;
        for (long a = 0; a < cells; ++a)
            row.push_back(a == cr ? ambient->one() : ambient->zero());
        vals.push_back(std::move(row));
        cells *= p;
    }
    return TabulatedDistribution(ambient, std::move(vals));
}

TabulatedDistribution TabulatedDistribution::from_group_ring(const GroupRingElement& xi,
                                                             long depth) {
    const ContextPtr& ambient = xi.ambient();
    long p = ambient->prime();
    long n = xi.level();
    if (depth < n) throw std::invalid_argument("from_group_ring: depth below the element level");
    std::vector<std::vector<CycloElement>> vals(static_cast<size_t>(depth) + 1);
    vals[static_cast<size_t>(n)] = xi.coeffs();
    // aggregate upward by the relation
    for (long j = n; j >= 1; --j) {
        long cells = small_pow(p, j - 1);
        std::vector<CycloElement> row;
        row.reserve(static_cast<size_t>(cells));
        for (long a = 0; a < cells; ++a) {
            CycloElement acc = vals[static_cast<size_t>(j)][static_cast<size_t>(a)];
            for (long k = 1; k < p; ++k)
                acc = acc + vals[static_cast<size_t>(j)][static_cast<size_t>(a + k * cells)];
            row.push_back(acc);
        }
        vals[static_cast<size_t>(j - 1)] = std::move(row);
    }
    // equal split downward
    for (long j = n; j < depth; ++j) {
        long cells = small_pow(p, j);
        std::vector<CycloElement> row;
        row.reserve(static_cast<size_t>(cells * p));
        for (long a = 0; a < cells * p; ++a)
            row.push_back(vals[static_cast<size_t>(j)][static_cast<size_t>(a % cells)]
                              .shifted_p_power(-1));
        vals[static_cast<size_t>(j + 1)] = std::move(row);
    }
    return TabulatedDistribution(ambient, std::move(vals));
}

TabulatedDistribution TabulatedDistribution::random_measure(const ContextPtr& ambient, long depth,
                                                            unsigned long seed) {
    long p = ambient->prime();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> d(0, p - 1);
    long cells = small_pow(p, depth);
    std::vector<CycloElement> deepest;
    deepest.reserve(static_cast<size_t>(cells));
    for (long a = 0; a < cells; ++a) {
        BigInt v = 0;
        for (long i = 0; i < ambient->wdigits(); ++i) v = v * p + d(rng);
        deepest.push_back(ambient->from_integer(v));
    }
    std::vector<std::vector<CycloElement>> vals(static_cast<size_t>(depth) + 1);
    vals[static_cast<size_t>(depth)] = std::move(deepest);
    for (long j = depth; j >= 1; --j) {
        long sub = small_pow(p, j - 1);
        std::vector<CycloElement> row;
        row.reserve(static_cast<size_t>(sub));
        for (long a = 0; a < sub; ++a) {
            CycloElement acc = vals[static_cast<size_t>(j)][static_cast<size_t>(a)];
            for (long k = 1; k < p; ++k)
                acc = acc + vals[static_cast<size_t>(j)][static_cast<size_t>(a + k * sub)];
            row.push_back(acc);
        }
        vals[static_cast<size_t>(j - 1)] = std::move(row);
    }
    return TabulatedDistribution(ambient, std::move(vals));
}

PadicSize TabulatedDistribution::check_distribution_relation() const {
    PadicSize worst = PadicSize::zero_at(std::numeric_limits<long>::max(), ambient_->degree());
    long p = ambient_->prime();
    for (long j = 0; j < depth(); ++j) {
        long cells = static_cast<long>(values_[static_cast<size_t>(j)].size());
        for (long a = 0; a < cells; ++a) {
            CycloElement acc = value(j + 1, a);
            for (long k = 1; k < p; ++k) acc = acc + value(j + 1, a + k * cells);
            worst.absorb_max((value(j, a) - acc).residual_size());
        }
    }
    return worst;
}

PadicSize TabulatedDistribution::volkenborn_defect() const {
    if (depth() < 1) throw std::invalid_argument("volkenborn_defect: depth >= 1 required");
    PadicSize worst = PadicSize::zero_at(std::numeric_limits<long>::max(), ambient_->degree());
    for (long j = 0; j < depth(); ++j) {
        long cells = static_cast<long>(values_[static_cast<size_t>(j + 1)].size());
        for (long a = 0; a < cells; ++a) {
            CycloElement d = value(j + 1, a).shifted_p_power(1) - value(j, a);
            worst.absorb_max(d.residual_size());
        }
    }
    return worst;
}

CycloElement TabulatedDistribution::limit_function(long x, long j) const {
    return value(j, x).shifted_p_power(j);
}

CycloElement TabulatedDistribution::riemann_sum(const MahlerFunction& f, long j) const {
    if (j < 0 || j > depth()) throw std::out_of_range("riemann_sum: level out of range");
    long cells = static_cast<long>(values_[static_cast<size_t>(j)].size());
    auto fv = f.evaluate_range(ambient_, cells);
    CycloElement acc = ambient_->zero();
    for (long a = 0; a < cells; ++a)
        acc = acc + fv[static_cast<size_t>(a)] * value(j, a);
    return acc;
}

IntegralReport TabulatedDistribution::volkenborn_integral(const MahlerFunction& f) const {
    long N = depth();
    CycloElement deepest = riemann_sum(f, N);
    IntegralReport rep{deepest, PadicSize::zero_at(deepest.pi_precision(), ambient_->degree()), N};
    if (N >= 1) rep.cauchy_defect = (deepest - riemann_sum(f, N - 1)).residual_size();
    return rep;
}

FourierCoefficientReport TabulatedDistribution::fourier_coefficient(long m) const {
    if (m < 0) throw std::invalid_argument("fourier_coefficient: m >= 0 required");
    MahlerFunction f = MahlerFunction::binomial(m);
    IntegralReport base = volkenborn_integral(f);
    FourierCoefficientReport rep{base.value, base.cauchy_defect, true};
    if (m >= 1) {
        PadicSize B = volkenborn_defect();
        PadicSize massz = mass().residual_size();
        // C = max(B, |mass|), c = max(p*C, |mass|): sizes as valuations
        PadicSize C = B;
        C.absorb_max(massz);
        PadicSize c = C;
        if (!c.below_precision)
            c.pi_valuation -= ambient_->degree();  // multiply the size by p
        else if (c.zero_floor != std::numeric_limits<long>::max())
            c.zero_floor -= ambient_->degree();
        c.absorb_max(massz);
        rep.bound_ok = size_times_le(1, rep.value.residual_size(), m, c, ambient_->prime());
    }
    return rep;
}

CycloElement TabulatedDistribution::fourier_eval_at_root(long order_exp, long num) const {
    if (order_exp < 0 || order_exp > depth())
        throw std::invalid_argument("fourier_eval_at_root: root order exceeds tabulated depth");
    if (order_exp > ambient_->level() + 1)
        throw std::invalid_argument("fourier_eval_at_root: root not available in the ambient field");
    long cells = static_cast<long>(values_[static_cast<size_t>(order_exp)].size());
    CycloElement acc = ambient_->zero();
    for (long a = 0; a < cells; ++a)
        acc = acc + ambient_->root_of_unity(order_exp, num * a) * value(order_exp, a);
    return acc;
}

TabulatedDistribution TabulatedDistribution::convolve(const TabulatedDistribution& nu,
                                                      const TabulatedDistribution& mu,
                                                      long level) {
    if (nu.ambient()->prime() != mu.ambient()->prime() ||
        nu.ambient()->level() != mu.ambient()->level())
        throw std::invalid_argument("convolve: ambient mismatch (embed first)");
    if (level > nu.depth() || level > mu.depth())
        throw std::invalid_argument("convolve: depth mismatch");
    const ContextPtr& ambient = nu.ambient();
    std::vector<std::vector<CycloElement>> vals;
    for (long j = 0; j <= level; ++j) {
        long cells = small_pow(ambient->prime(), j);
        std::vector<CycloElement> row;
        row.reserve(static_cast<size_t>(cells));
        for (long c = 0; c < cells; ++c) {
            CycloElement acc = ambient->zero();
            for (long a = 0; a < cells; ++a)
                acc = acc + nu.value(j, a) * mu.value(j, c - a);
            row.push_back(acc);
        }
        vals.push_back(std::move(row));
    }
    return TabulatedDistribution(ambient, std::move(vals));
}

TabulatedDistribution TabulatedDistribution::embed_into(const ContextPtr& bigger) const {
    std::vector<std::vector<CycloElement>> vals;
    vals.reserve(values_.size());
    for (const auto& row : values_) {
        std::vector<CycloElement> out;
        out.reserve(row.size());
        for (const auto& v : row) out.push_back(v.embed_into(bigger));
        vals.push_back(std::move(out));
    }
    return TabulatedDistribution(bigger, std::move(vals));
}

TabulatedDistribution TabulatedDistribution::with_cell_perturbed(long j, long a,
                                                                 const CycloElement& delta) const {
    auto vals = values_;
    long n = static_cast<long>(vals[static_cast<size_t>(j)].size());
    long ar = ((a % n) + n) % n;
    vals[static_cast<size_t>(j)][static_cast<size_t>(ar)] =
        vals[static_cast<size_t>(j)][static_cast<size_t>(ar)] + delta;
    return TabulatedDistribution(ambient_, std::move(vals));
}

GroupRingElement TabulatedDistribution::level_group_ring(long j) const {
    if (j < 0 || j > depth()) throw std::out_of_range("level_group_ring: level out of range");
    return GroupRingElement(j, ambient_, values_[static_cast<size_t>(j)]);
}

TransformIdentityReport transform_identity_check(const TabulatedDistribution& nu,
                                                 const TabulatedDistribution& mu,
                                                 long max_order_exp, long num_corrections) {
    long p = nu.prime();
    long jmax = max_order_exp;
    TransformIdentityReport rep;
    rep.max_root_residual =
        PadicSize::zero_at(std::numeric_limits<long>::max(), nu.ambient()->degree());

    // (a) at p-power roots of unity log_p(T) = 0, so the transform is exactly
    // multiplicative there
    auto conv = TabulatedDistribution::convolve(nu, mu, jmax);
    for (long c = 0; c < small_pow(p, jmax); ++c) {
        CycloElement lhs = conv.fourier_eval_at_root(jmax, c);
        CycloElement rhs =
            nu.fourier_eval_at_root(jmax, c) * mu.fourier_eval_at_root(jmax, c);
        PadicSize r = (lhs - rhs).residual_size();
        rep.root_residuals.push_back(r);
        rep.max_root_residual.absorb_max(r);
    }

    // (b) correction coefficients g_m = mu(S^(m+1)(f_nu o iota)) from the
    // deepest tabulated approximant of f_nu
    if (num_corrections > 0) {
        long N = std::min(nu.depth(), mu.depth());
        long cells = small_pow(p, N);
        std::vector<CycloElement> fvals;
        fvals.reserve(static_cast<size_t>(cells));
        for (long x = 0; x < cells; ++x) fvals.push_back(nu.limit_function(x, N));
        std::vector<CycloElement> comp;
        comp.reserve(static_cast<size_t>(cells));
        for (long x = 0; x < cells; ++x)
            comp.push_back(fvals[static_cast<size_t>(cells - 1 - x)]);
        std::vector<CycloElement> s = comp;
        for (long m = 0; m < num_corrections; ++m) {
            s = indefinite_sum_values(s, 1);  // after m+1 passes: S^(m+1)(f o iota)
            CycloElement g = nu.ambient()->zero();
            for (long x = 0; x < cells; ++x)
                g = g + s[static_cast<size_t>(x)] * mu.value(N, x);
            rep.correction_coeffs.push_back(g);
        }
    }
    return rep;
}

}  // namespace volk
