#include "volk/cyclo.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <tuple>

namespace volk {

namespace {

std::vector<BigInt> truncated_mul_mod_p(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                                        long m, long p) {
    std::vector<BigInt> out(static_cast<size_t>(m), BigInt(0));
    for (long i = 0; i < static_cast<long>(a.size()) && i < m; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (long j = 0; j < static_cast<long>(b.size()) && i + j < m; ++j) {
            if (b[static_cast<size_t>(j)] == 0) continue;
            out[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
        }
    }
    for (auto& x : out) x = mod_reduce(x, BigInt(p));
    return out;
}

}  // namespace

FieldContext::FieldContext(long p, long level, long wdigits)
    : p_(p), level_(level), w_(wdigits) {
    if (p < 3 || p % 2 == 0 || !is_small_prime(p))
        throw std::invalid_argument("FieldContext: p must be an odd prime");
    if (level < -1) throw std::invalid_argument("FieldContext: level must be >= -1");
    if (wdigits < 2) throw std::invalid_argument("FieldContext: working precision too small");

    e_ = (level_ == -1) ? 1 : small_pow(p_, level_) * (p_ - 1);
    root_order_ = (level_ == -1) ? 1 : small_pow(p_, level_ + 1);
    // headroom covers the pi-power extractions in inversion (valuations < e)
    rdigits_ = w_ + 16 + std::min(e_, 256L);
    rmod_ = pow_int(p_, static_cast<unsigned long>(rdigits_));

    ppow_.reserve(static_cast<size_t>(rdigits_) + 1);
    BigInt pk = 1;
    for (long k = 0; k <= rdigits_; ++k) {
        ppow_.push_back(pk);
        pk *= p_;
    }

    if (level_ == -1) {
        eis_ = {BigInt(0), BigInt(1)};
        p_over_pi_ = {BigInt(1)};
        return;
    }

    // E(X) = sum_{k<p} (1+X)^(k p^n), monic Eisenstein of degree e
    eis_.assign(static_cast<size_t>(e_) + 1, BigInt(0));
    long pn = small_pow(p_, level_);
    for (long k = 0; k < p_; ++k) {
        long d = k * pn;
        BigInt bin = 1;
        for (long i = 0; i <= d; ++i) {
            eis_[static_cast<size_t>(i)] += bin;
            bin = bin * (d - i) / (i + 1);
        }
    }
    if (eis_[static_cast<size_t>(e_)] != 1 || eis_[0] != p_)
        throw std::logic_error("Eisenstein modulus malformed");
    for (long i = 1; i < e_; ++i)
        if (eis_[static_cast<size_t>(i)] % p_ != 0) throw std::logic_error("Eisenstein modulus not Eisenstein");
    for (auto& c : eis_) c = mod_reduce(c, rmod_);

    // p = -pi * (pi^(e-1) + a_{e-1} pi^(e-2) + ... + a_1)
    p_over_pi_.assign(static_cast<size_t>(e_), BigInt(0));
    for (long i = 0; i < e_; ++i)
        p_over_pi_[static_cast<size_t>(i)] = mod_reduce(-eis_[static_cast<size_t>(i) + 1], rmod_);

    // reduction rows: X^(e+t) mod E for t = 0..e-2
    if (e_ >= 2) {
        red_.resize(static_cast<size_t>(e_ - 1));
        std::vector<BigInt> row(static_cast<size_t>(e_));
        for (long i = 0; i < e_; ++i) row[static_cast<size_t>(i)] = mod_reduce(-eis_[static_cast<size_t>(i)], rmod_);
        red_[0] = row;
        for (long t = 1; t <= e_ - 2; ++t) {
            BigInt lead = row[static_cast<size_t>(e_ - 1)];
            for (long i = e_ - 1; i >= 1; --i) row[static_cast<size_t>(i)] = row[static_cast<size_t>(i - 1)];
            row[0] = 0;
            if (lead != 0)
                for (long i = 0; i < e_; ++i)
                    row[static_cast<size_t>(i)] =
                        mod_reduce(row[static_cast<size_t>(i)] + lead * red_[0][static_cast<size_t>(i)], rmod_);
            red_[static_cast<size_t>(t)] = row;
        }
    }
}

BigInt FieldContext::p_power(long k) const {
    if (k < 0) throw std::invalid_argument("p_power: negative exponent");
    if (k <= rdigits_) return ppow_[static_cast<size_t>(k)];
    return pow_int(p_, static_cast<unsigned long>(k));
}

std::vector<BigInt> FieldContext::poly_mul(const std::vector<BigInt>& a,
                                           const std::vector<BigInt>& b) const {
    size_t e = static_cast<size_t>(e_);
    if (e == 1) return {mod_reduce(a[0] * b[0], rmod_)};
    std::vector<BigInt> conv(2 * e - 1, BigInt(0));
    for (size_t i = 0; i < e; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < e; ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(conv[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    std::vector<BigInt> out(conv.begin(), conv.begin() + static_cast<long>(e));
    for (size_t t = 0; t + e < conv.size(); ++t) {
        BigInt hi = mod_reduce(conv[e + t], rmod_);
        if (hi == 0) continue;
        const auto& row = red_[t];
        for (size_t k = 0; k < e; ++k) {
            if (row[k] == 0) continue;
            mpz_addmul(out[k].get_mpz_t(), hi.get_mpz_t(), row[k].get_mpz_t());
        }
    }
    for (auto& x : out) x = mod_reduce(x, rmod_);
    return out;
}

std::vector<BigInt> FieldContext::poly_inv_unit(const std::vector<BigInt>& a, long wprec) const {
    size_t e = static_cast<size_t>(e_);
    BigInt a0p = mod_reduce(a[0], BigInt(p_));
    if (a0p == 0) throw std::domain_error("poly_inv_unit: not a unit");

    // series inverse mod (p, X^e); E = X^e mod p makes this the right start
    std::vector<BigInt> y(e, BigInt(0));
    y[0] = inv_mod(a0p, BigInt(p_));
    long m = 1;
    while (m < e_) {
        m = std::min(2 * m, e_);
        auto ay = truncated_mul_mod_p(a, y, m, p_);
        ay[0] = mod_reduce(BigInt(2) - ay[0], BigInt(p_));
        for (size_t i = 1; i < ay.size(); ++i) ay[i] = mod_reduce(-ay[i], BigInt(p_));
        y = truncated_mul_mod_p(y, ay, m, p_);
        y.resize(e, BigInt(0));
    }

    // Hensel lift to p^wprec in the full ring
    long prec = 1;
    while (prec < wprec) {
        prec = std::min(2 * prec, wprec);
        auto ay = poly_mul(a, y);
        BigInt pm = p_power(prec);
        ay[0] = mod_reduce(BigInt(2) - ay[0], pm);
        for (size_t i = 1; i < ay.size(); ++i) ay[i] = mod_reduce(-ay[i], pm);
        y = poly_mul(y, ay);
        for (auto& x : y) x = mod_reduce(x, pm);
    }
    return y;
}

const std::vector<BigInt>& FieldContext::zeta_power_coeffs(long a) const {
    long q = root_order_;
    long ar = ((a % q) + q) % q;
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = zeta_cache_.find(ar);
    if (it != zeta_cache_.end()) return it->second;

    std::vector<BigInt> result(static_cast<size_t>(e_), BigInt(0));
    result[0] = 1;
    std::vector<BigInt> base(static_cast<size_t>(e_), BigInt(0));
    base[0] = 1;
    if (e_ > 1) base[1] = 1;
    long exp = ar;
    while (exp > 0) {
        if (exp & 1) result = poly_mul(result, base);
        exp >>= 1;
        if (exp > 0) base = poly_mul(base, base);
    }
    return zeta_cache_.emplace(ar, std::move(result)).first->second;
}

const std::vector<std::vector<BigInt>>& FieldContext::sublevel_basis(long src_level) const {
    if (src_level < -1 || src_level >= level_)
        throw std::invalid_argument("sublevel_basis: source level out of range");
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = sublevel_cache_.find(src_level);
    if (it != sublevel_cache_.end()) return it->second;

    long e_src = (src_level == -1) ? 1 : small_pow(p_, src_level) * (p_ - 1);
    long shift = small_pow(p_, level_ - src_level);
    std::vector<std::vector<BigInt>> table;
    table.reserve(static_cast<size_t>(e_src));
    std::vector<BigInt> one(static_cast<size_t>(e_), BigInt(0));
    one[0] = 1;
    table.push_back(one);
    if (e_src > 1) {
        // image of the sublevel uniformizer: zeta^(p^(level-src)) - 1
        std::vector<BigInt> pi_sub;
        {
            // compute under the already-held lock: inline the zeta power
            long q = root_order_;
            long ar = ((shift % q) + q) % q;
            auto zit = zeta_cache_.find(ar);
            if (zit == zeta_cache_.end()) {
                std::vector<BigInt> result(static_cast<size_t>(e_), BigInt(0));
                result[0] = 1;
                std::vector<BigInt> base(static_cast<size_t>(e_), BigInt(0));
                base[0] = 1;
                if (e_ > 1) base[1] = 1;
                long exp = ar;
                while (exp > 0) {
                    if (exp & 1) result = poly_mul(result, base);
                    exp >>= 1;
                    if (exp > 0) base = poly_mul(base, base);
                }
                zit = zeta_cache_.emplace(ar, std::move(result)).first;
            }
            pi_sub = zit->second;
            pi_sub[0] = mod_reduce(pi_sub[0] - 1, rmod_);
        }
        for (long j = 1; j < e_src; ++j) table.push_back(poly_mul(table.back(), pi_sub));
    }
    return sublevel_cache_.emplace(src_level, std::move(table)).first->second;
}

CycloElement FieldContext::zero() const {
    return CycloElement(shared_from_this(), std::vector<BigInt>(static_cast<size_t>(e_), BigInt(0)), 0, w_);
}

CycloElement FieldContext::one() const { return from_integer(1); }

CycloElement FieldContext::from_integer(const BigInt& n) const {
    std::vector<BigInt> c(static_cast<size_t>(e_), BigInt(0));
    c[0] = n;
    return CycloElement(shared_from_this(), std::move(c), 0, w_);
}

CycloElement FieldContext::from_scalar(const PadicScalar& s) const {
    if (s.prime() != p_) throw std::invalid_argument("from_scalar: prime mismatch");
    std::vector<BigInt> c(static_cast<size_t>(e_), BigInt(0));
    if (s.is_zero()) {
        long wp = std::min(s.abs_precision(), w_);
        if (wp < 1) wp = 1;
        return CycloElement(shared_from_this(), std::move(c), 0, wp);
    }
    c[0] = s.unit_part();
    // value = unit * p^val: scale = -val, coefficients pinned mod p^digits
    return CycloElement(shared_from_this(), std::move(c), -s.valuation(), s.digits());
}

CycloElement FieldContext::zeta_power(long a) const {
    auto coeffs = zeta_power_coeffs(a);
    return CycloElement(shared_from_this(), std::move(coeffs), 0, w_);
}

CycloElement FieldContext::root_of_unity(long order_exp, long a) const {
    if (order_exp < 0 || order_exp > level_ + 1)
        throw std::invalid_argument("root_of_unity: order exceeds ambient level");
    long shift = small_pow(p_, level_ + 1 - order_exp);
    long q = root_order_;
    long oe = small_pow(p_, order_exp);
    long ar = ((a % oe) + oe) % oe;
    return zeta_power((ar * shift) % q);
}

ContextPtr field_context(long p, long level, long wdigits) {
    static std::mutex mu;
    static std::map<std::tuple<long, long, long>, ContextPtr> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_tuple(p, level, wdigits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ptr = std::make_shared<const FieldContext>(p, level, wdigits);
    cache.emplace(key, ptr);
    return ptr;
}

// ---------------------------------------------------------------------------

CycloElement::CycloElement(ContextPtr ctx, std::vector<BigInt> coeffs, long scale, long wprec)
    : ctx_(std::move(ctx)), scale_(scale), wprec_(wprec), c_(std::move(coeffs)) {
    if (static_cast<long>(c_.size()) != ctx_->degree())
        throw std::invalid_argument("CycloElement: coefficient count mismatch");
    if (wprec_ > ctx_->wdigits() + scale_) wprec_ = ctx_->wdigits() + scale_;
    if (wprec_ > ctx_->reduction_digits()) wprec_ = ctx_->reduction_digits();
    if (wprec_ < 1 || wprec_ - scale_ < 1)
        throw std::runtime_error("CycloElement: precision exhausted");
    BigInt m = ctx_->p_power(wprec_);
    for (auto& x : c_) x = mod_reduce(x, m);
}

void CycloElement::check_same_context(const CycloElement& o) const {
    if (ctx_ == o.ctx_) return;
    if (ctx_->prime() != o.ctx_->prime() || ctx_->level() != o.ctx_->level() ||
        ctx_->wdigits() != o.ctx_->wdigits())
        throw std::invalid_argument("CycloElement: context mismatch");
}

bool CycloElement::is_zero_at_precision() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

long CycloElement::pi_valuation() const {
    long e = ctx_->degree();
    long best = -1;
    long count = 0;
    for (long i = 0; i < e; ++i) {
        const BigInt& ci = c_[static_cast<size_t>(i)];
        if (ci == 0) continue;
        long vp = p_valuation_capped(ci, ctx_->prime(), wprec_);
        if (vp >= wprec_) continue;
        long cand = i + e * vp;
        if (best < 0 || cand < best) {
            best = cand;
            count = 1;
        } else if (cand == best) {
            ++count;
        }
    }
    if (best < 0) throw std::domain_error("pi_valuation of (numerical) zero");
    // candidates i + e*v_p are pairwise distinct mod e, so the minimum is unique
    if (count != 1) throw std::logic_error("pi_valuation: minimum not unique");
    return best - e * scale_;
}

CycloElement CycloElement::operator-() const {
    BigInt m = ctx_->p_power(wprec_);
    std::vector<BigInt> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] == 0 ? BigInt(0) : m - c_[i];
    return CycloElement(ctx_, std::move(out), scale_, wprec_);
}

CycloElement operator+(const CycloElement& a, const CycloElement& b) {
    a.check_same_context(b);
    long s = std::max(a.scale_, b.scale_);
    long wa = a.wprec_ + (s - a.scale_);
    long wb = b.wprec_ + (s - b.scale_);
    long w = std::min(wa, wb);
    BigInt m = a.ctx_->p_power(w);
    BigInt sha = a.ctx_->p_power(s - a.scale_);
    BigInt shb = a.ctx_->p_power(s - b.scale_);
    std::vector<BigInt> out(a.c_.size());
    for (size_t i = 0; i < a.c_.size(); ++i)
        out[i] = mod_reduce(a.c_[i] * sha + b.c_[i] * shb, m);
    CycloElement r(a.ctx_, std::move(out), s, w);
    return s > 0 ? r.normalized() : r;
}

CycloElement operator-(const CycloElement& a, const CycloElement& b) { return a + (-b); }

namespace {

// valuation of the stored integral vector; e*wprec when all residues vanish
// (a certified lower bound either way)
long vector_valuation_floor(const FieldContext& ctx, const std::vector<BigInt>& c, long wprec) {
    long e = ctx.degree();
    long best = e * wprec;
    for (long i = 0; i < e && i < best; ++i) {
        const BigInt& ci = c[static_cast<size_t>(i)];
        if (ci == 0) continue;
        long vp = p_valuation_capped(ci, ctx.prime(), wprec);
        if (vp >= wprec) continue;
        best = std::min(best, i + e * vp);
    }
    return best;
}

}  // namespace

CycloElement operator*(const CycloElement& a, const CycloElement& b) {
    a.check_same_context(b);
    // error of the stored product: p^wa eA * B + p^wb eB * A, so the certified
    // digit count gains from the operands' valuations
    long e = a.ctx_->degree();
    long va = vector_valuation_floor(*a.ctx_, a.c_, a.wprec_);
    long vb = vector_valuation_floor(*b.ctx_, b.c_, b.wprec_);
    long w = std::min((e * a.wprec_ + vb) / e, (e * b.wprec_ + va) / e);
    auto prod = a.ctx_->poly_mul(a.c_, b.c_);
    CycloElement r(a.ctx_, std::move(prod), a.scale_ + b.scale_, w);
    return (a.scale_ + b.scale_) > 0 ? r.normalized() : r;
}

CycloElement CycloElement::normalized() const {
    long k = wprec_;
    for (const auto& x : c_) {
        if (x == 0) continue;
        k = std::min(k, p_valuation_capped(x, ctx_->prime(), k));
        if (k == 0) break;
    }
    if (k == 0 || is_zero_at_precision()) return *this;
    BigInt pk = ctx_->p_power(k);
    std::vector<BigInt> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] / pk;
    return CycloElement(ctx_, std::move(out), scale_ - k, wprec_ - k);
}

CycloElement CycloElement::inverse() const {
    CycloElement n = normalized();
    if (n.is_zero_at_precision()) throw std::domain_error("inverse of (numerical) zero element");
    long e = ctx_->degree();
    long v = n.pi_valuation() + e * n.scale_;  // valuation of the integral vector, 0 <= v < e
    long w = n.wprec_;
    if (v == 0) {
        auto y = ctx_->poly_inv_unit(n.c_, w);
        return CycloElement(ctx_, std::move(y), -n.scale_, w).normalized();
    }
    // strip pi^v: u = C * (p/pi)^v / p^v, computed without premature
    // truncation so the unit keeps w - ceil(v/e) certified digits
    std::vector<BigInt> ppv = ctx_->p_over_pi();
    for (long i = 1; i < v; ++i) ppv = ctx_->poly_mul(ppv, ctx_->p_over_pi());
    std::vector<BigInt> u = ctx_->poly_mul(n.c_, ppv);
    BigInt pv = ctx_->p_power(v);
    for (auto& x : u) {
        if (x % pv != 0) throw std::logic_error("inverse: pi-part extraction failed");
        x /= pv;
    }
    long wu = std::min(w - (v + e - 1) / e, ctx_->reduction_digits() - v);
    if (wu < 1) throw std::runtime_error("inverse: precision exhausted");
    CycloElement yel(ctx_, ctx_->poly_inv_unit(u, wu), 0, wu);
    // x^-1 = p^s * u^-1 * pi^-v with pi^-v = p^-v (p/pi)^v exact
    CycloElement pinv(ctx_, std::move(ppv), v, ctx_->reduction_digits());
    return (yel * pinv).shifted_p_power(n.scale_).normalized();
}

CycloElement operator/(const CycloElement& a, const CycloElement& b) { return a * b.inverse(); }

CycloElement CycloElement::pow(long exp) const {
    if (exp < 0) return inverse().pow(-exp);
    CycloElement r = ctx_->one();
    if (exp == 0) return r;
    CycloElement base = *this;
    while (true) {
        if (exp & 1) r = r * base;
        exp >>= 1;
        if (exp == 0) break;
        base = base * base;
    }
    return r;
}

CycloElement CycloElement::scaled_by_scalar(const PadicScalar& s) const {
    if (s.prime() != ctx_->prime()) throw std::invalid_argument("scaled_by_scalar: prime mismatch");
    if (s.is_zero()) {
        long wp = s.exactly_zero() ? wprec_
                                   : std::min<long>(wprec_, s.abs_precision() + scale_);
        if (wp - scale_ < 1) wp = scale_ + 1;
        return CycloElement(ctx_, std::vector<BigInt>(c_.size(), BigInt(0)), scale_, wp);
    }
    long w = std::min(wprec_, s.digits() + scale_);
    BigInt m = ctx_->p_power(w);
    std::vector<BigInt> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = mod_reduce(c_[i] * s.unit_part(), m);
    return CycloElement(ctx_, std::move(out), scale_ - s.valuation(), w).normalized();
}

CycloElement CycloElement::shifted_p_power(long k) const {
    return CycloElement(ctx_, c_, scale_ - k, wprec_);
}

CycloElement CycloElement::galois(long a) const {
    if (ctx_->level() == -1) return *this;
    long q = ctx_->root_order();
    long ar = ((a % q) + q) % q;
    if (ar % ctx_->prime() == 0)
        throw std::invalid_argument("galois: exponent divisible by p");
    long e = ctx_->degree();
    std::vector<BigInt> P = ctx_->zeta_power_coeffs(ar);
    P[0] = mod_reduce(P[0] - 1, ctx_->reduction_modulus());
    std::vector<BigInt> acc(static_cast<size_t>(e), BigInt(0));
    acc[0] = c_[static_cast<size_t>(e - 1)];
    for (long i = e - 2; i >= 0; --i) {
        acc = ctx_->poly_mul(acc, P);
        acc[0] = mod_reduce(acc[0] + c_[static_cast<size_t>(i)], ctx_->reduction_modulus());
    }
    return CycloElement(ctx_, std::move(acc), scale_, wprec_);
}

CycloElement CycloElement::project_to_sublevel() const {
    long lvl = ctx_->level();
    if (lvl < 0) throw std::domain_error("project_to_sublevel: already at ground level");
    auto sub = field_context(ctx_->prime(), lvl - 1, ctx_->wdigits());
    long esub = sub->degree();
    long stride = ctx_->degree() / esub;
    const auto& B = ctx_->sublevel_basis(lvl - 1);
    BigInt m = ctx_->p_power(wprec_);
    std::vector<BigInt> work = c_;
    std::vector<BigInt> d(static_cast<size_t>(esub), BigInt(0));
    for (long j = esub - 1; j >= 0; --j) {
        long row = j * stride;
        BigInt piv = mod_reduce(B[static_cast<size_t>(j)][static_cast<size_t>(row)], m);
        d[static_cast<size_t>(j)] =
            mod_reduce(work[static_cast<size_t>(row)] * inv_mod(piv, m), m);
        if (d[static_cast<size_t>(j)] == 0) continue;
        for (long k = 0; k <= row; ++k) {
            const BigInt& bjk = B[static_cast<size_t>(j)][static_cast<size_t>(k)];
            if (bjk == 0) continue;
            work[static_cast<size_t>(k)] =
                mod_reduce(work[static_cast<size_t>(k)] - d[static_cast<size_t>(j)] * bjk, m);
        }
    }
    for (const auto& x : work)
        if (x != 0)
            throw std::runtime_error(
                "project_to_sublevel: residual nonzero at working precision (element not in subfield "
                "or precision exhausted)");
    return CycloElement(sub, std::move(d), scale_, wprec_);
}

CycloElement CycloElement::embed_into(const ContextPtr& big) const {
    if (big->prime() != ctx_->prime() || big->wdigits() != ctx_->wdigits())
        throw std::invalid_argument("embed_into: incompatible context");
    if (big->level() == ctx_->level()) return CycloElement(big, c_, scale_, wprec_);
    if (big->level() < ctx_->level())
        throw std::invalid_argument("embed_into: target level below source");
    const auto& B = big->sublevel_basis(ctx_->level());
    std::vector<BigInt> out(static_cast<size_t>(big->degree()), BigInt(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        const auto& col = B[i];
        for (size_t k = 0; k < out.size(); ++k) {
            if (col[k] == 0) continue;
            mpz_addmul(out[k].get_mpz_t(), c_[i].get_mpz_t(), col[k].get_mpz_t());
        }
    }
    return CycloElement(big, std::move(out), scale_, wprec_);
}

PadicScalar CycloElement::coefficient(long i) const {
    return PadicScalar::from_unit_part(ctx_->prime(), c_[static_cast<size_t>(i)], -scale_, wprec_);
}

PadicSize CycloElement::residual_size() const {
    if (is_zero_at_precision()) return PadicSize::zero_at(pi_precision(), ctx_->degree());
    return PadicSize::measured(pi_valuation(), ctx_->degree());
}

std::string CycloElement::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << c_[i].get_str();
    }
    os << ")";
    if (scale_ != 0) os << " * " << ctx_->prime() << "^" << -scale_;
    os << " mod p^" << wprec_;
    return os.str();
}

// ---------------------------------------------------------------------------

CycloElement norm_to_sublevel(const CycloElement& x) {
    long lvl = x.context()->level();
    if (lvl < 1) throw std::domain_error("norm_to_sublevel: level >= 1 required");
    long p = x.context()->prime();
    long pn = small_pow(p, lvl);
    long q = pn * p;
    CycloElement prod = x;
    for (long k = 1; k < p; ++k) prod = prod * x.galois((1 + k * pn) % q);
    return prod.project_to_sublevel();
}

namespace {

CycloElement exact_p_shift_down(const CycloElement& y, long k) {
    if (k == 0) return y;
    auto ctx = y.context();
    BigInt pk = ctx->p_power(k);
    std::vector<BigInt> out(y.coeffs().size());
    for (size_t i = 0; i < out.size(); ++i) {
        if (y.coeffs()[i] % pk != 0) throw std::logic_error("exact p-power division failed");
        out[i] = y.coeffs()[i] / pk;
    }
    return CycloElement(ctx, std::move(out), y.scale(), y.wprec() - k);
}

CycloElement log_series(const CycloElement& t) {
    auto ctx = t.context();
    long p = ctx->prime();
    long e = ctx->degree();
    CycloElement d = t - ctx->one();
    long tv = d.pi_valuation();
    long target = e * (d.wprec() - d.scale());
    long K = 1;
    long scan = target / tv + 2 * (floor_log_p(std::max(target, p), p) + 2) + 4;
    for (long j = 1; j <= scan; ++j)
        if (j * tv - e * floor_log_p(j, p) < target) K = j;

    CycloElement sum = d;
    CycloElement pw = d;
    for (long j = 2; j <= K; ++j) {
        pw = pw * d;
        PadicScalar sc = PadicScalar::from_rational(p, (j % 2 == 0) ? BigInt(-1) : BigInt(1),
                                                    BigInt(j), pw.wprec());
        sum = sum + pw.scaled_by_scalar(sc);
    }
    return sum;
}

}  // namespace

CycloElement iwasawa_log(const CycloElement& x0) {
    auto ctx = x0.context();
    long p = ctx->prime();
    long e = ctx->degree();
    CycloElement x = x0.normalized();
    if (x.is_zero_at_precision()) throw std::domain_error("iwasawa_log of (numerical) zero");

    // log kills p-powers and roots of unity, so only the integral vector matters
    CycloElement c(ctx, x.coeffs(), 0, x.wprec());
    long v = c.pi_valuation();  // in [0, e) after normalization
    long g = std::gcd(v == 0 ? e : v, e);
    long m = (v == 0) ? 1 : e / g;
    CycloElement y = (m == 1 && v == 0) ? c : c.pow(m);
    long drop = (v == 0) ? 0 : v / g;
    if (drop > 0) {
        if (y.wprec() - drop < 1)
            throw std::runtime_error("iwasawa_log: precision exhausted extracting the unit part");
        y = exact_p_shift_down(y, drop);
    }

    CycloElement t = y.pow(p - 1);
    long k = 0;
    const long kcap = x.wprec() + 16;
    long tv = -1;
    while (true) {
        CycloElement d = t - ctx->one();
        if (d.is_zero_at_precision()) {
            tv = -1;
            break;
        }
        tv = d.pi_valuation();
        if (tv * (p - 1) > e) break;
        if (k >= kcap)
            throw std::runtime_error(
                "iwasawa_log: precision exhausted before the convergence threshold (v_pi(z-1) = " +
                std::to_string(tv) + ", need > " + std::to_string(e / (p - 1)) + ")");
        t = t.pow(p);
        ++k;
    }
    if (tv > 0) {
        // extra p-th powers trade one digit each for a shorter series
        while (k < kcap && tv < 2 * e && e * (t.wprec() - t.scale()) / tv > 24) {
            t = t.pow(p);
            ++k;
            CycloElement d = t - ctx->one();
            if (d.is_zero_at_precision()) {
                tv = -1;
                break;
            }
            tv = d.pi_valuation();
        }
    }

    CycloElement L = (tv < 0) ? CycloElement(ctx, std::vector<BigInt>(static_cast<size_t>(e), BigInt(0)),
                                             t.scale(), t.wprec())
                              : log_series(t);
    BigInt den = BigInt(m) * (p - 1) * pow_int(p, static_cast<unsigned long>(k));
    return L.scaled_by_scalar(PadicScalar::from_rational(p, 1, den, L.wprec()));
}

}  // namespace volk
