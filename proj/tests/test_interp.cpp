#include <random>

#include "doctest.h"
#include "volk/interp.hpp"

using namespace volk;

TEST_CASE("leopoldt formula rejects trivial and odd characters") {
    auto ctx = field_context(5, 0, 16);
    CHECK_THROWS_AS(leopoldt_lp1(DirichletCharacter(5, 0, 0, 0), ctx), std::domain_error);
    CHECK_THROWS_AS(leopoldt_lp1(DirichletCharacter(5, 0, 1, 0), ctx), odd_character_error);
    CHECK_THROWS_AS(leopoldt_lp1(DirichletCharacter(5, 0, 3, 0), ctx), odd_character_error);
}

TEST_CASE("L_p(1, chi) against the class number formula for the quadratic field of 5") {
    long p = 5, w = 32;
    auto ctx = field_context(p, 0, w);
    DirichletCharacter chi(p, 0, 2, 0);
    auto tau = gauss_sum(chi, ctx);
    CHECK((tau * tau).indistinguishable_from(ctx->from_integer(5)));

    auto half = ctx->from_integer(2).inverse();
    auto eps_plus = (ctx->one() + tau) * half;
    auto eps_minus = (ctx->one() - tau) * half;
    // both roots of x^2 - x - 1
    for (const auto& eps : {eps_plus, eps_minus})
        CHECK((eps * eps - eps - ctx->one()).is_zero_at_precision());

    auto lp = leopoldt_lp1(chi, ctx);
    auto two = ctx->from_integer(2);
    int matches = 0;
    for (const auto& eps : {eps_plus, eps_minus}) {
        auto cand = two * iwasawa_log(eps) / tau;
        auto diff = (lp - cand).residual_size();
        // >= 10 base-p digits: pi-valuation >= 10 e
        if (diff.below_precision || diff.pi_valuation >= 10 * ctx->degree()) ++matches;
    }
    CHECK(matches == 1);
}

TEST_CASE("interpolation two-path at p = 5, chi = omega^2, wild psi") {
    long p = 5, n = 1, w = 32;
    for (long u = 1; u < 5; ++u) {
        auto rep = verify_interpolation(p, n, 2, u, 0, w);
        CHECK((rep.residual.below_precision || rep.residual.pi_valuation >= 10 * 20));
        CHECK(rep.lvalue_checked);
        CHECK((rep.lvalue_residual.below_precision ||
               rep.lvalue_residual.pi_valuation >= 10 * 20));
    }
}

TEST_CASE("interpolation at trivial psi, level 0") {
    auto rep = verify_interpolation(5, 0, 2, 0, 0, 24);
    CHECK(rep.residual.below_precision);
    CHECK(rep.lvalue_checked);
    CHECK(rep.lvalue_residual.below_precision);
}

TEST_CASE("interpolation at a nonzero tame index") {
    auto rep = verify_interpolation(5, 1, 2, 1, 1, 24);
    CHECK(rep.residual.below_precision);
    CHECK_FALSE(rep.lvalue_checked);  // t not divisible by p-1: no L-value route
}

TEST_CASE("odd characters vanish on both paths") {
    for (auto [j, u] : std::vector<std::pair<long, long>>{{1, 0}, {3, 1}, {1, 2}}) {
        auto rep = verify_interpolation(5, 1, j, u, 0, 24);
        CHECK(rep.parity_vanishing);
    }
}

TEST_CASE("interpolation two-path at p = 7") {
    auto rep = verify_interpolation(7, 1, 2, 1, 0, 20);
    CHECK((rep.residual.below_precision || rep.residual.pi_valuation >= 10 * 42));
    CHECK(rep.lvalue_checked);
    CHECK((rep.lvalue_residual.below_precision ||
           rep.lvalue_residual.pi_valuation >= 10 * 42));
}

TEST_CASE("unit ratio table finds a simultaneous unit index at p = 5") {
    auto table = unit_ratio_table(5, 1, 2, 24);
    CHECK(table.rows.size() == 3 * 4);
    for (const auto& row : table.rows) CHECK(row.well_defined);
    CHECK(table.selected_c >= 1);
    // the selected row really is flat zero
    for (const auto& row : table.rows)
        if (row.tame_index == table.selected_c) CHECK(row.ratio_valuation == 0);
}

TEST_CASE("xi duals factor through the translation twist of the 1-zeta data") {
    long p = 5, n = 1, w = 24;
    DirichletCharacter chi(p, 0, 2, 0);
    auto [xi, ups] = xi_upsilon_group_elements(p, n, 2, 1, w);
    (void)ups;
    const ContextPtr& ambient = xi.ambient();

    auto lam = lambda_chi(NormCoherentSequence::one_minus_zeta(p, n, w), chi, n);
    long g = least_primitive_root_mod_p2(p);
    auto chi_g = ambient->from_scalar(teichmuller(p, g, w).pow(2));
    for (long cc = 0; cc < 5; ++cc) {
        auto lhs = xi.dual_at(cc);
        auto twist = chi_g * ambient->root_of_unity(n, -cc) - ambient->one();
        auto rhs = twist * lam.fourier_eval_at_root(n, cc);
        CHECK(lhs.indistinguishable_from(rhs));
    }
}

TEST_CASE("group ring coefficients are chi-eigenvectors for the tame action") {
    long p = 5, n = 1, w = 24;
    auto [xi, ups] = xi_upsilon_group_elements(p, n, 2, 1, w);
    long g = least_primitive_root_mod_p2(p);
    // sigma at the Teichmuller lift of g acts by chi(g) on the traced data
    long q = small_pow(p, n + 1);
    BigInt om = g;
    BigInt qq = q;
    for (long i = 0; i <= n + 1; ++i)
        mpz_powm_ui(om.get_mpz_t(), om.get_mpz_t(), static_cast<unsigned long>(p), qq.get_mpz_t());
    auto chi_g = ups.ambient()->from_scalar(teichmuller(p, g, w).pow(2));
    for (long a = 0; a < 5; ++a) {
        CHECK(ups.coeff(a).galois(om.get_si()).indistinguishable_from(chi_g * ups.coeff(a)));
        CHECK(xi.coeff(a).galois(om.get_si()).indistinguishable_from(chi_g * xi.coeff(a)));
    }
}

TEST_CASE("fourier duality round-trips on group ring elements") {
    std::mt19937_64 rng(808);
    auto ambient = field_context(5, 1, 20);
    std::uniform_int_distribution<long> d(0, 3124);
    std::vector<CycloElement> coeffs;
    for (int a = 0; a < 5; ++a) coeffs.push_back(ambient->from_integer(d(rng)));
    GroupRingElement x(1, ambient, coeffs);
    auto back = GroupRingElement::from_duals(1, ambient, x.duals());
    for (long a = 0; a < 5; ++a) CHECK(back.coeff(a).indistinguishable_from(x.coeff(a)));
}

TEST_CASE("degenerate annihilator at n = 0 is a Z_p scalar") {
    auto rep = annihilator(5, 0, 2, 1, 24);
    CHECK(rep.m.size() == 1);
    CHECK(rep.integral);
    CHECK(rep.certified_digits >= 8);
}

TEST_CASE("annihilator coefficients at p = 5, n = 1 lie in Z_p") {
    auto table = unit_ratio_table(5, 1, 2, 28);
    REQUIRE(table.selected_c >= 1);
    auto rep = annihilator(5, 1, 2, table.selected_c, 28);
    CHECK(rep.integral);
    CHECK(rep.certified_digits >= 8);
    CHECK(rep.coefficients.size() == 5);
}

TEST_CASE("regulator product ratio is a unit for the selected index") {
    auto table = unit_ratio_table(5, 1, 2, 24);
    REQUIRE(table.selected_c >= 1);
    auto rep = regulator_product_check(5, 1, 2, table.selected_c, 24);
    CHECK(rep.ratio_is_unit);
    CHECK(rep.circulant_residual.below_precision);
}

TEST_CASE("L_p at p-square conductor is v_p-balanced against the log sum") {
    // value * tau(phibar) must carry exactly the valuation of the log sum
    long p = 5, w = 24;
    DirichletCharacter phi(p, 1, 2, 1);
    auto ctx = field_context(p, 1, w);
    auto v = leopoldt_lp1(phi, ctx);
    auto tau = gauss_sum(phi.conjugate(), ctx);
    auto seq = NormCoherentSequence::one_minus_zeta(p, 1, w);
    CycloElement s = ctx->zero();
    for (long a = 1; a < 25; ++a) {
        if (a % 5 == 0) continue;
        s = s + seq.conjugate_log(1, a) * phi.conjugate().value(a, ctx);
    }
    CHECK((v * tau).pi_valuation() == s.pi_valuation());
}

TEST_CASE("regulator at n = 0 reduces to the single trivial-psi ratio") {
    long p = 5, w = 24;
    auto rep = regulator_product_check(p, 0, 2, 1, w);
    auto [xi, ups] = xi_upsilon_group_elements(p, 0, 2, 1, w);
    (void)xi;
    auto ctx = ups.ambient();
    long direct = ups.dual_at(0).pi_valuation() -
                  gauss_sum(DirichletCharacter(p, 0, -2, 0), ctx).pi_valuation();
    CHECK(rep.ratio_valuation == direct);
}

TEST_CASE("measure action level overflow is rejected") {
    auto seq = NormCoherentSequence::one_minus_zeta(5, 1, 20);
    auto lam = lambda_from_sequence(seq, 1);
    std::vector<CycloElement> id(5, lam.ambient()->zero());
    id[0] = lam.ambient()->one();
    CHECK_THROWS_AS(act_by_measure(lam, GroupRingElement(1, lam.ambient(), id), 2),
                    std::invalid_argument);
}

TEST_CASE("circulant determinants match their DFT factorization") {
    std::mt19937_64 rng(314);
    auto ctx = field_context(3, 1, 16);
    std::uniform_int_distribution<long> d(1, 700);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<CycloElement> row;
        for (int a = 0; a < 3; ++a) row.push_back(ctx->from_integer(d(rng)));
        CHECK(circulant_determinant_residual(row).below_precision);
    }
}

TEST_CASE("gauss sum pair guard before dividing") {
    // tau(phi) tau(phibar) = phi(-1) f, reused as the sanity gate in front of
    // every division by a gauss sum
    auto ctx = field_context(5, 1, 20);
    for (long u : {0L, 1L, 2L}) {
        DirichletCharacter phi(5, 1, 2, u);
        auto prod = gauss_sum(phi, ctx) * gauss_sum(phi.conjugate(), ctx);
        long f = small_pow(5, phi.conductor_exponent());
        CHECK(prod.indistinguishable_from(ctx->from_integer(f)));
    }
}
