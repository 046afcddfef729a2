#include "volk/coherent.hpp"

namespace volk {

namespace {

long power_mod_long(long base, long exp, long mod) {
    long long r = 1 % mod;
    long long b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        exp >>= 1;
    }
    return static_cast<long>(r);
}

// Teichmuller lift of a mod p^k as a plain integer
long teichmuller_mod(long p, long a, long k) {
    long m = small_pow(p, k);
    long long x = ((a % m) + m) % m;
    for (long i = 0; i <= k; ++i) {
        long long y = 1;
        long e = p;
        long long b = x;
        while (e > 0) {
            if (e & 1) y = (y * b) % m;
            b = (b * b) % m;
            e >>= 1;
        }
        x = y;
    }
    return static_cast<long>(x);
}

}  // namespace

NormCoherentSequence NormCoherentSequence::one_minus_zeta(long p, long depth, long wdigits) {
    NormCoherentSequence s;
    s.p_ = p;
    s.w_ = wdigits;
    s.kind_ = Kind::OneMinusZeta;
    for (long n = 0; n <= depth; ++n) {
        auto ctx = field_context(p, n, wdigits);
        s.levels_.push_back(ctx->one() - ctx->zeta_power(1));
    }
    return s;
}

NormCoherentSequence NormCoherentSequence::cyclo_unit(long p, long tame_index, long depth,
                                                      long wdigits) {
    NormCoherentSequence s;
    s.p_ = p;
    s.w_ = wdigits;
    s.kind_ = Kind::CycloUnit;
    s.tame_index_ = ((tame_index % (p - 1)) + (p - 1)) % (p - 1);
    long g = least_primitive_root_mod_p2(p);
    PadicScalar zc = teichmuller(p, g, wdigits).pow(static_cast<unsigned long>(s.tame_index_));
    for (long n = 0; n <= depth; ++n) {
        auto ctx = field_context(p, n, wdigits);
        s.levels_.push_back(ctx->from_scalar(zc) - ctx->zeta_power(1));
    }
    return s;
}

NormCoherentSequence NormCoherentSequence::unit_generator(long p, long depth, long wdigits) {
    NormCoherentSequence s;
    s.p_ = p;
    s.w_ = wdigits;
    s.kind_ = Kind::UnitGenerator;
    long g = least_primitive_root_mod_p2(p);
    for (long n = 0; n <= depth; ++n) {
        auto ctx = field_context(p, n, wdigits);
        long q = ctx->root_order();
        long bstar = static_cast<long>(
            (static_cast<long long>(teichmuller_mod(p, g, n + 1)) * (1 + p)) % q);
        auto num = ctx->zeta_power(bstar) - ctx->one();
        auto den = ctx->zeta_power(1) - ctx->one();
        s.levels_.push_back(num / den);
    }
    return s;
}

NormCoherentSequence NormCoherentSequence::custom(std::vector<CycloElement> levels) {
    if (levels.empty()) throw std::invalid_argument("custom sequence: no levels");
    NormCoherentSequence s;
    s.p_ = levels[0].context()->prime();
    s.w_ = levels[0].context()->wdigits();
    s.kind_ = Kind::Custom;
    for (size_t n = 0; n < levels.size(); ++n)
        if (levels[n].context()->level() != static_cast<long>(n))
            throw std::invalid_argument("custom sequence: level n element must live in K_n");
    s.levels_ = std::move(levels);
    return s;
}

const CycloElement& NormCoherentSequence::at_level(long n) const {
    if (n < 0 || n > depth()) throw std::out_of_range("sequence level out of range");
    return levels_[static_cast<size_t>(n)];
}

CycloElement NormCoherentSequence::conjugate(long n, long b) const {
    const CycloElement& ell = at_level(n);
    auto ctx = ell.context();
    long q = ctx->root_order();
    long br = ((b % q) + q) % q;
    if (br % p_ == 0) throw std::invalid_argument("conjugate: exponent divisible by p");
    switch (kind_) {
        case Kind::OneMinusZeta:
            return ctx->one() - ctx->zeta_power(br);
        case Kind::CycloUnit: {
            long g = least_primitive_root_mod_p2(p_);
            PadicScalar zc =
                teichmuller(p_, g, w_).pow(static_cast<unsigned long>(tame_index_));
            return ctx->from_scalar(zc) - ctx->zeta_power(br);
        }
        case Kind::UnitGenerator: {
            long g = least_primitive_root_mod_p2(p_);
            long bstar = static_cast<long>(
                (static_cast<long long>(teichmuller_mod(p_, g, n + 1)) * (1 + p_)) % q);
            long top = static_cast<long>((static_cast<long long>(br) * bstar) % q);
            return (ctx->zeta_power(top) - ctx->one()) / (ctx->zeta_power(br) - ctx->one());
        }
        case Kind::Custom:
            return ell.galois(br);
    }
    throw std::logic_error("unreachable");
}

CycloElement NormCoherentSequence::conjugate_log(long n, long b) const {
    long q = small_pow(p_, n + 1);
    long br = ((b % q) + q) % q;
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto key = std::make_pair(n, br);
    auto it = cache_->map.find(key);
    if (it != cache_->map.end()) return it->second;
    CycloElement lg = iwasawa_log(conjugate(n, br));
    cache_->map.emplace(key, lg);
    return lg;
}

PadicSize NormCoherentSequence::verify_norm_coherence() const {
    if (depth() < 1) throw std::invalid_argument("verify_norm_coherence: depth >= 1 required");
    PadicSize worst = PadicSize::zero_at(std::numeric_limits<long>::max(), 1);
    for (long n = 1; n <= depth(); ++n) {
        CycloElement down = norm_to_sublevel(at_level(n));
        worst.absorb_max((down - at_level(n - 1)).residual_size());
    }
    return worst;
}

NormCoherentSequence NormCoherentSequence::with_level_perturbed(long n,
                                                                const CycloElement& factor) const {
    NormCoherentSequence s;
    s.p_ = p_;
    s.w_ = w_;
    s.kind_ = Kind::Custom;  // closed-form conjugates no longer apply
    s.levels_ = levels_;
    s.levels_[static_cast<size_t>(n)] = s.levels_[static_cast<size_t>(n)] * factor;
    return s;
}

std::string NormCoherentSequence::spec_string() const {
    switch (kind_) {
        case Kind::OneMinusZeta:
            return "one-minus-zeta";
        case Kind::CycloUnit:
            return "cyclo-unit:c=" + std::to_string(tame_index_);
        case Kind::UnitGenerator:
            return "unit-generator";
        case Kind::Custom:
            return "custom";
    }
    return "?";
}

TabulatedDistribution lambda_from_sequence(const NormCoherentSequence& seq, long depth) {
    if (depth > seq.depth())
        throw std::invalid_argument("lambda_from_sequence: sequence shallower than requested depth");
    long p = seq.prime();
    auto ambient = field_context(p, depth, seq.wdigits());
    std::vector<std::vector<CycloElement>> vals;
    for (long n = 0; n <= depth; ++n) {
        long q = small_pow(p, n + 1);
        long cells = small_pow(p, n);
        std::vector<CycloElement> row;
        row.reserve(static_cast<size_t>(cells));
        for (long a = 0; a < cells; ++a) {
            long b = power_mod_long(1 + p, a, q);
            row.push_back((-seq.conjugate_log(n, b)).embed_into(ambient));
        }
        vals.push_back(std::move(row));
    }
    return TabulatedDistribution(ambient, std::move(vals));
}

TabulatedDistribution lambda_chi(const NormCoherentSequence& seq, const DirichletCharacter& chi,
                                 long depth) {
    if (!chi.is_tame())
        throw std::invalid_argument("lambda_chi: character has a wild part");
    if (chi.prime() != seq.prime()) throw std::invalid_argument("lambda_chi: prime mismatch");
    if (depth > seq.depth())
        throw std::invalid_argument("lambda_chi: sequence shallower than requested depth");
    long p = seq.prime();
    long j = chi.tame_exponent();
    long g = least_primitive_root_mod_p2(p);
    auto ambient = field_context(p, depth, seq.wdigits());

    // chibar(g^k) = omega(g)^(-jk), a Z_p scalar
    std::vector<PadicScalar> weight;
    weight.reserve(static_cast<size_t>(p - 1));
    PadicScalar og = teichmuller(p, g, seq.wdigits());
    for (long k = 0; k < p - 1; ++k)
        weight.push_back(og.pow(static_cast<unsigned long>(((p - 1 - j) % (p - 1)) * k % (p - 1))));

    std::vector<std::vector<CycloElement>> vals;
    for (long n = 0; n <= depth; ++n) {
        long q = small_pow(p, n + 1);
        long cells = small_pow(p, n);
        auto level_ctx = seq.at_level(n).context();
        // Teichmuller lifts of g^k into (Z/p^(n+1))^*: the canonical Delta-part
        std::vector<long> omega_k(static_cast<size_t>(p - 1));
        long om = teichmuller_mod(p, g, n + 1);
        omega_k[0] = 1;
        for (long k = 1; k < p - 1; ++k)
            omega_k[static_cast<size_t>(k)] = static_cast<long>(
                (static_cast<long long>(omega_k[static_cast<size_t>(k - 1)]) * om) % q);

        std::vector<CycloElement> row;
        row.reserve(static_cast<size_t>(cells));
        for (long a = 0; a < cells; ++a) {
            long wild = power_mod_long(1 + p, a, q);
            CycloElement acc = level_ctx->zero();
            for (long k = 0; k < p - 1; ++k) {
                long b = static_cast<long>(
                    (static_cast<long long>(wild) * omega_k[static_cast<size_t>(k)]) % q);
                acc = acc + seq.conjugate_log(n, b).scaled_by_scalar(weight[static_cast<size_t>(k)]);
            }
            row.push_back((-acc).embed_into(ambient));
        }
        vals.push_back(std::move(row));
    }
    return TabulatedDistribution(ambient, std::move(vals));
}

TabulatedDistribution act_by_measure(const TabulatedDistribution& lam, const GroupRingElement& xi,
                                     long level) {
    if (level > lam.depth()) throw std::invalid_argument("act_by_measure: level exceeds depth");
    if (level < xi.level()) throw std::invalid_argument("act_by_measure: level below the measure's");
    std::vector<CycloElement> coeffs;
    coeffs.reserve(static_cast<size_t>(xi.size()));
    for (const auto& c : xi.coeffs()) coeffs.push_back(c.embed_into(lam.ambient()));
    GroupRingElement moved(xi.level(), lam.ambient(), std::move(coeffs));
    auto mu = TabulatedDistribution::from_group_ring(moved, level);
    return TabulatedDistribution::convolve(lam, mu, level);
}

}  // namespace volk
