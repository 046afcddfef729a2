#include "volk/interp.hpp"

namespace volk {

namespace {

DirichletCharacter tame_char(long p, long chi_exp) { return DirichletCharacter(p, 0, chi_exp, 0); }

void require_even_nontrivial(const DirichletCharacter& chi) {
    if (chi.is_trivial()) throw std::domain_error("character must be nontrivial");
    if (chi.is_odd()) throw odd_character_error("character must be even");
}

}  // namespace

CycloElement leopoldt_lp1(const DirichletCharacter& phi, const ContextPtr& ambient) {
    if (phi.is_trivial()) throw std::domain_error("leopoldt_lp1: trivial character");
    if (phi.is_odd())
        throw odd_character_error("leopoldt_lp1: odd character, the log sum vanishes identically");
    long p = phi.prime();
    long k = phi.conductor_exponent();
    long f = small_pow(p, k);
    auto ctx = field_context(p, k - 1, ambient->wdigits());
    auto phibar = phi.conjugate();

    // conjugate logs of 1 - zeta_f shared through the sequence cache
    auto seq = NormCoherentSequence::one_minus_zeta(p, k - 1, ambient->wdigits());
    CycloElement sum = ctx->zero();
    for (long a = 1; a < f; ++a) {
        if (a % p == 0) continue;
        sum = sum + seq.conjugate_log(k - 1, a) * phibar.value(a, ctx);
    }
    // guard the division: tau(phi) tau(phibar) = phi(-1) f
    CycloElement tau = gauss_sum(phibar, ctx);
    if (!(tau * gauss_sum(phi, ctx)).indistinguishable_from(ctx->from_integer(f)))
        throw std::logic_error("leopoldt_lp1: gauss sum pair guard failed");
    // p | f so phi(p) = 0 and the Euler factor is 1
    CycloElement val = -(sum / tau);
    return val.embed_into(ambient);
}

InterpolationReport verify_interpolation(long p, long n, long chi_exp, long psi_exp, long t,
                                         long wdigits) {
    DirichletCharacter phi(p, n, chi_exp, psi_exp);
    if (phi.is_trivial())
        throw std::invalid_argument("verify_interpolation: trivial character");
    auto seq = NormCoherentSequence::cyclo_unit(p, t, n, wdigits);
    auto lam = lambda_chi(seq, tame_char(p, chi_exp), n);
    const ContextPtr& ambient = lam.ambient();

    long pn = small_pow(p, n);
    long u = ((psi_exp % pn) + pn) % pn;
    // zeta_psi = psibar(gamma_0) = zeta_{p^n}^(-u)
    CycloElement lhs = lam.fourier_eval_at_root(n, pn - u);

    // direct conductor sum: -(1 - phibar(p)) sum log(zeta_{p-1}^t - zeta_f^a) phibar(a);
    // p | f so the Euler factor is 1
    long k = phi.conductor_exponent();
    long f = small_pow(p, k);
    auto ctx_f = field_context(p, k - 1, wdigits);
    auto phibar = phi.conjugate();
    CycloElement acc = ctx_f->zero();
    for (long a = 1; a < f; ++a) {
        if (a % p == 0) continue;
        acc = acc + seq.conjugate_log(k - 1, a) * phibar.value(a, ctx_f);
    }
    CycloElement rhs = (-acc).embed_into(ambient);

    InterpolationReport rep{lhs, rhs, (lhs - rhs).residual_size(), false,
                            PadicSize::zero_at(std::numeric_limits<long>::max(), 1), false};

    if (phi.is_odd()) {
        rep.parity_vanishing = lhs.is_zero_at_precision() && rhs.is_zero_at_precision();
        return rep;
    }

    if (t % (p - 1) == 0) {
        // Leopoldt route: lambda-hat = tau(phibar) L_p(1, phi)
        CycloElement rhs2 = gauss_sum(phibar, ambient) * leopoldt_lp1(phi, ambient);
        rep.lvalue_checked = true;
        rep.lvalue_residual = (lhs - rhs2).residual_size();
    }
    return rep;
}

UnitRatioTable unit_ratio_table(long p, long n, long chi_exp, long wdigits) {
    DirichletCharacter chi = tame_char(p, chi_exp);
    require_even_nontrivial(chi);
    if (n < 1) throw std::invalid_argument("unit_ratio_table: n >= 1 required (wild psi)");

    UnitRatioTable table;
    long pn = small_pow(p, n);
    for (long c = 1; c <= p - 2; ++c) {
        auto seq = NormCoherentSequence::cyclo_unit(p, c, n, wdigits);
        auto lam = lambda_chi(seq, chi, n);
        const ContextPtr& ambient = lam.ambient();
        bool all_zero = true;
        for (long u = 1; u < pn; ++u) {
            DirichletCharacter phibar(p, n, -chi_exp, -u);
            CycloElement ups = lam.fourier_eval_at_root(n, pn - u);
            CycloElement tau = gauss_sum(phibar, ambient);
            UnitRatioRow row{c, u, !ups.is_zero_at_precision(), 0};
            if (row.well_defined)
                row.ratio_valuation = ups.pi_valuation() - tau.pi_valuation();
            all_zero = all_zero && row.well_defined && row.ratio_valuation == 0;
            table.rows.push_back(row);
        }
        if (all_zero && table.selected_c < 0) table.selected_c = c;
    }
    return table;
}

std::pair<GroupRingElement, GroupRingElement> xi_upsilon_group_elements(long p, long n,
                                                                        long chi_exp, long c,
                                                                        long wdigits) {
    DirichletCharacter chi = tame_char(p, chi_exp);
    require_even_nontrivial(chi);
    auto xi_seq = NormCoherentSequence::unit_generator(p, n, wdigits);
    auto ups_seq = NormCoherentSequence::cyclo_unit(p, c, n, wdigits);
    GroupRingElement xi = lambda_chi(xi_seq, chi, n).level_group_ring(n);
    GroupRingElement ups = lambda_chi(ups_seq, chi, n).level_group_ring(n);
    return {std::move(xi), std::move(ups)};
}

AnnihilatorReport annihilator(long p, long n, long chi_exp, long c, long wdigits) {
    auto [xi, ups] = xi_upsilon_group_elements(p, n, chi_exp, c, wdigits);
    const ContextPtr& ambient = xi.ambient();
    long pn = small_pow(p, n);

    std::vector<CycloElement> ratios;
    ratios.reserve(static_cast<size_t>(pn));
    for (long cc = 0; cc < pn; ++cc) {
        CycloElement u = ups.dual_at(cc);
        if (u.is_zero_at_precision())
            throw std::domain_error(
                "annihilator: upsilon-hat vanishes at working precision (root index " +
                std::to_string(cc) + ")");
        ratios.push_back(xi.dual_at(cc) / u);
    }
    AnnihilatorReport rep{GroupRingElement::from_duals(n, ambient, ratios), true, 0, {}};

    long cert = std::numeric_limits<long>::max();
    for (long a = 0; a < pn; ++a) {
        const CycloElement& x = rep.m.coeff(a);
        long digits = x.wprec() - x.scale();
        // pi-coordinates above index 0 must vanish at precision
        for (long i = 1; i < ambient->degree(); ++i)
            if (x.coeffs()[static_cast<size_t>(i)] != 0) rep.integral = false;
        PadicScalar c0 = x.coefficient(0);
        rep.coefficients.push_back(c0);
        if (!c0.is_zero() && c0.valuation() < 0) rep.integral = false;
        cert = std::min(cert, digits);
    }
    rep.certified_digits = rep.integral ? cert : 0;
    return rep;
}

RegulatorReport regulator_product_check(long p, long n, long chi_exp, long c, long wdigits) {
    auto [xi, ups] = xi_upsilon_group_elements(p, n, chi_exp, c, wdigits);
    (void)xi;
    const ContextPtr& ambient = ups.ambient();
    long pn = small_pow(p, n);

    CycloElement prod_ups = ambient->one();
    for (long cc = 0; cc < pn; ++cc) prod_ups = prod_ups * ups.dual_at(cc);
    CycloElement prod_tau = ambient->one();
    for (long u = 0; u < pn; ++u)
        prod_tau = prod_tau * gauss_sum(DirichletCharacter(p, n, -chi_exp, -u), ambient);

    RegulatorReport rep;
    rep.ratio_valuation = prod_ups.pi_valuation() - prod_tau.pi_valuation();
    rep.ratio_is_unit = (rep.ratio_valuation == 0);
    rep.circulant_residual = circulant_determinant_residual(ups.coeffs());
    return rep;
}

}  // namespace volk
