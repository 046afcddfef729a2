#include "volk/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "volk/interp.hpp"
#include "volk/json_io.hpp"

namespace volk {

namespace {

struct RunConfig {
    long p = 5;
    long depth = 2;
    long prec = 32;
    std::string format = "text";
    std::string out_path;
    unsigned long seed = 20240101;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->configurable();   // allow [subcommand] sections in the config file
    cmd->fallthrough();    // let --config reach the main app after the subcommand
    cmd->add_option("--p", cfg.p, "odd prime, 3..13");
    cmd->add_option("--depth,--N", cfg.depth, "tabulation depth / level, 0..3");
    cmd->add_option("--prec,--W", cfg.prec, "working precision, base-p digits (>= 16)");
    cmd->add_option("--format", cfg.format, "json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", cfg.out_path, "write the report to this path");
    cmd->add_option("--seed", cfg.seed, "seed for deterministic randomness");
}

void validate(const RunConfig& cfg) {
    if (cfg.p < 3 || cfg.p > 13 || cfg.p % 2 == 0 || !is_small_prime(cfg.p))
        throw std::invalid_argument("--p must be an odd prime between 3 and 13");
    if (cfg.depth < 0 || cfg.depth > 3) throw std::invalid_argument("--depth must be in 0..3");
    if (cfg.prec < 16) throw std::invalid_argument("--prec must be >= 16");
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path);
    if (!f) {
        err << "cannot open output path: " << cfg.out_path << "\n";
        throw std::invalid_argument("bad --out path");
    }
    f << text;
}

Json envelope(const RunConfig& cfg, const std::string& command) {
    Json j;
    j["schema_version"] = 1;
    j["command"] = command;
    j["p"] = cfg.p;
    j["depth"] = cfg.depth;
    j["prec"] = cfg.prec;
    return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

long parse_long(const std::string& s) {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
    return v;
}

NormCoherentSequence parse_sequence(const std::string& spec, const RunConfig& cfg, long depth) {
    if (spec == "one-minus-zeta") return NormCoherentSequence::one_minus_zeta(cfg.p, depth, cfg.prec);
    if (spec == "unit-generator") return NormCoherentSequence::unit_generator(cfg.p, depth, cfg.prec);
    if (spec.rfind("cyclo-unit:c=", 0) == 0) {
        long c = parse_long(spec.substr(13));
        return NormCoherentSequence::cyclo_unit(cfg.p, c, depth, cfg.prec);
    }
    if (spec.rfind("json:", 0) == 0) {
        std::ifstream f(spec.substr(5));
        if (!f) throw std::invalid_argument("cannot open sequence file " + spec.substr(5));
        Json j = Json::parse(f);
        std::vector<CycloElement> levels;
        for (const auto& lv : j.at("levels")) levels.push_back(element_from_json(lv, cfg.prec));
        auto seq = NormCoherentSequence::custom(std::move(levels));
        auto res = seq.verify_norm_coherence();
        if (!res.below_precision)
            throw std::invalid_argument("loaded sequence is not norm coherent at precision");
        return seq;
    }
    throw std::invalid_argument("unknown sequence spec: " + spec +
                                " (want one-minus-zeta | cyclo-unit:c=K | unit-generator | json:PATH)");
}

TabulatedDistribution parse_distribution(const std::string& spec, const RunConfig& cfg) {
    auto scalar_ctx = [&] { return field_context(cfg.p, -1, cfg.prec); };
    if (spec == "haar") return TabulatedDistribution::haar(scalar_ctx(), cfg.depth);
    if (spec.rfind("dirac:", 0) == 0)
        return TabulatedDistribution::dirac(scalar_ctx(), parse_long(spec.substr(6)), cfg.depth);
    if (spec == "random")
        return TabulatedDistribution::random_measure(scalar_ctx(), cfg.depth, cfg.seed);
    if (spec.rfind("random:", 0) == 0)
        return TabulatedDistribution::random_measure(scalar_ctx(), cfg.depth,
                                                     std::stoul(spec.substr(7)));
    if (spec.rfind("group-ring:", 0) == 0) {
        auto parts = split(spec.substr(11), ',');
        long n = 0;
        while (small_pow(cfg.p, n) < static_cast<long>(parts.size())) ++n;
        if (small_pow(cfg.p, n) != static_cast<long>(parts.size()))
            throw std::invalid_argument("group-ring: coefficient count must be a power of p");
        auto ctx = scalar_ctx();
        std::vector<CycloElement> coeffs;
        for (const auto& s : parts) coeffs.push_back(ctx->from_integer(parse_long(s)));
        return TabulatedDistribution::from_group_ring(GroupRingElement(n, ctx, coeffs),
                                                      std::max(cfg.depth, n));
    }
    if (spec.rfind("lambda:", 0) == 0) {
        auto seq = parse_sequence(spec.substr(7), cfg, cfg.depth);
        return lambda_from_sequence(seq, cfg.depth);
    }
    if (spec.rfind("lambda-chi:", 0) == 0) {
        auto parts = split(spec.substr(11), ':');
        if (parts.size() != 2 || parts[1].rfind("chi=", 0) != 0)
            throw std::invalid_argument("want lambda-chi:SEQ:chi=J");
        auto seq = parse_sequence(parts[0], cfg, cfg.depth);
        DirichletCharacter chi(cfg.p, 0, parse_long(parts[1].substr(4)), 0);
        return lambda_chi(seq, chi, cfg.depth);
    }
    if (spec.rfind("json:", 0) == 0) {
        std::ifstream f(spec.substr(5));
        if (!f) throw std::invalid_argument("cannot open distribution file " + spec.substr(5));
        Json j = Json::parse(f);
        return distribution_from_json(j, cfg.prec);
    }
    throw std::invalid_argument("unknown distribution spec: " + spec);
}

// polynomial terms like "x^2+3*x-1"
MahlerFunction parse_polynomial(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty function spec");
    std::vector<std::pair<long, long>> terms;  // (coef, power)
    size_t i = 0;
    while (i < s.size()) {
        long sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
        }
        std::string digits;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
        long coef = digits.empty() ? 1 : parse_long(digits);
        long power = 0;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string pd;
                while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) pd.push_back(s[i++]);
                power = parse_long(pd);
            }
        } else if (digits.empty()) {
            throw std::invalid_argument("bad polynomial term in: " + raw);
        }
        terms.emplace_back(sign * coef, power);
    }
    long deg = 0;
    for (auto& t : terms) deg = std::max(deg, t.second);
    std::vector<BigInt> coeffs(static_cast<size_t>(deg) + 1, BigInt(0));
    for (auto& t : terms) coeffs[static_cast<size_t>(t.second)] += t.first;
    return MahlerFunction::polynomial(std::move(coeffs));
}

// returns the function and the minimum ambient level it needs
std::pair<MahlerFunction, long> parse_function(const std::string& spec, const RunConfig& cfg) {
    if (spec.rfind("C(x,", 0) == 0 && spec.back() == ')')
        return {MahlerFunction::binomial(parse_long(spec.substr(4, spec.size() - 5))), -1};
    if (spec.rfind("T^x:", 0) == 0) {
        long j = 0, c = 1;
        for (const auto& kv : split(spec.substr(4), ',')) {
            if (kv.rfind("j=", 0) == 0)
                j = parse_long(kv.substr(2));
            else if (kv.rfind("c=", 0) == 0)
                c = parse_long(kv.substr(2));
            else
                throw std::invalid_argument("want T^x:j=J[,c=C]");
        }
        return {MahlerFunction::root_power(j, c), j - 1};
    }
    if (spec.rfind("mahler:", 0) == 0) {
        std::vector<PadicScalar> coeffs;
        for (const auto& s : split(spec.substr(7), ',')) {
            auto frac = split(s, '/');
            if (frac.size() == 2)
                coeffs.push_back(PadicScalar::from_rational(cfg.p, parse_long(frac[0]),
                                                            parse_long(frac[1]), cfg.prec));
            else
                coeffs.push_back(PadicScalar::from_integer(cfg.p, parse_long(s), cfg.prec));
        }
        return {MahlerFunction::series(std::move(coeffs)), -1};
    }
    if (spec.rfind("table:", 0) == 0) {
        auto ctx = field_context(cfg.p, -1, cfg.prec);
        std::vector<CycloElement> vals;
        for (const auto& s : split(spec.substr(6), ','))
            vals.push_back(ctx->from_integer(parse_long(s)));
        return {MahlerFunction::table(std::move(vals)), -1};
    }
    return {parse_polynomial(spec), -1};
}

std::string size_text(const PadicSize& s, long p) {
    std::ostringstream os;
    os << s.to_string(p);
    return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact p-adic distribution calculus: Volkenborn integration, "
                 "gauss-sum interpolation, annihilator construction"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file (flags override)");

    RunConfig cfg;
    struct {
        std::string dist, nu, mu, f, seq, fault;
        long m = -1, root_order = -1, root_num = 1, mcount = 8, orders = 2;
        long chi = 2, psi = 0, t = 0, c = -1, n = 1;
    } opt;

    auto* c_check = app.add_subcommand("check-dist", "verify the distribution relation");
    add_common(c_check, cfg);
    c_check->add_option("--dist", opt.dist)->required();
    c_check->add_option("--fault", opt.fault, "perturb cell \"j,a\" before checking");

    auto* c_defect = app.add_subcommand("defect", "empirical Volkenborn defect B(mu)");
    add_common(c_defect, cfg);
    c_defect->add_option("--dist", opt.dist)->required();

    auto* c_int = app.add_subcommand("integrate", "Volkenborn integral with Cauchy defect");
    add_common(c_int, cfg);
    c_int->add_option("--dist", opt.dist)->required();
    c_int->add_option("--f", opt.f)->required();

    auto* c_mahler = app.add_subcommand("mahler", "Mahler coefficients by finite differences");
    add_common(c_mahler, cfg);
    c_mahler->add_option("--f", opt.f)->required();
    c_mahler->add_option("--M", opt.mcount, "number of coefficients");

    auto* c_fourier = app.add_subcommand("fourier", "Fourier coefficients / evaluation at roots");
    add_common(c_fourier, cfg);
    c_fourier->add_option("--dist", opt.dist)->required();
    c_fourier->add_option("--m", opt.m, "binomial coefficient index");
    c_fourier->add_option("--root-order", opt.root_order, "evaluate at a root of order p^j");
    c_fourier->add_option("--root-num", opt.root_num, "numerator of the root exponent");

    auto* c_trans = app.add_subcommand("transform-verify",
                                       "convolution transform identity at p-power roots");
    add_common(c_trans, cfg);
    c_trans->add_option("--nu", opt.nu)->required();
    c_trans->add_option("--mu", opt.mu)->required();
    c_trans->add_option("--orders", opt.orders, "check roots of order up to p^this");
    c_trans->add_option("--M", opt.mcount, "correction coefficients to compute");

    auto* c_coh = app.add_subcommand("coherence", "norm coherence of a sequence");
    add_common(c_coh, cfg);
    c_coh->add_option("--seq", opt.seq)->required();

    auto* c_gauss = app.add_subcommand("gauss", "gauss sum of omega^chi * psi^u at level n");
    add_common(c_gauss, cfg);
    c_gauss->add_option("--n", opt.n)->required();
    c_gauss->add_option("--chi", opt.chi)->required();
    c_gauss->add_option("--psi", opt.psi);

    auto* c_lp1 = app.add_subcommand("lp1", "Leopoldt L_p(1, phi)");
    add_common(c_lp1, cfg);
    c_lp1->add_option("--n", opt.n)->required();
    c_lp1->add_option("--chi", opt.chi)->required();
    c_lp1->add_option("--psi", opt.psi);

    auto* c_interp = app.add_subcommand("interp-verify", "two-path interpolation check");
    add_common(c_interp, cfg);
    c_interp->add_option("--n", opt.n)->required();
    c_interp->add_option("--chi", opt.chi)->required();
    c_interp->add_option("--psi", opt.psi);
    c_interp->add_option("--t", opt.t, "tame index of the sequence");

    auto* c_ratio = app.add_subcommand("unit-ratio", "v_pi(upsilon-hat / tau) table over tame indices");
    add_common(c_ratio, cfg);
    c_ratio->add_option("--n", opt.n)->required();
    c_ratio->add_option("--chi", opt.chi)->required();

    auto* c_ann = app.add_subcommand("annihilator", "group ring element M with integrality report");
    add_common(c_ann, cfg);
    c_ann->add_option("--n", opt.n)->required();
    c_ann->add_option("--chi", opt.chi)->required();
    c_ann->add_option("--c", opt.c, "tame index (default: search the unit-ratio table)");

    auto* c_reg = app.add_subcommand("regulator", "regulator product valuation check");
    add_common(c_reg, cfg);
    c_reg->add_option("--n", opt.n)->required();
    c_reg->add_option("--chi", opt.chi)->required();
    c_reg->add_option("--c", opt.c, "tame index (default: search)");

    std::vector<const char*> argv;
    argv.push_back("volk");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        validate(cfg);
        std::ostringstream text;
        Json rep;
        int exit_code = 0;

        if (app.got_subcommand(c_check)) {
            rep = envelope(cfg, "check-dist");
            auto d = parse_distribution(opt.dist, cfg);
            if (!opt.fault.empty()) {
                auto ja = split(opt.fault, ',');
                if (ja.size() != 2) throw std::invalid_argument("--fault wants \"j,a\"");
                d = d.with_cell_perturbed(parse_long(ja[0]), parse_long(ja[1]),
                                          d.ambient()->one());
            }
            auto res = d.check_distribution_relation();
            rep["dist"] = opt.dist;
            rep["passed"] = res.below_precision;
            rep["residual"] = to_json(res, cfg.p);
            exit_code = res.below_precision ? 0 : 1;
            text << "distribution relation: " << (res.below_precision ? "PASS" : "FAIL")
                 << "  residual " << size_text(res, cfg.p) << "\n";
        } else if (app.got_subcommand(c_defect)) {
            rep = envelope(cfg, "defect");
            auto d = parse_distribution(opt.dist, cfg);
            auto res = d.volkenborn_defect();
            rep["dist"] = opt.dist;
            rep["defect"] = to_json(res, cfg.p);
            text << "volkenborn defect B(mu): " << size_text(res, cfg.p) << "\n";
        } else if (app.got_subcommand(c_int)) {
            rep = envelope(cfg, "integrate");
            auto d = parse_distribution(opt.dist, cfg);
            auto [f, need] = parse_function(opt.f, cfg);
            if (need > d.ambient()->level())
                d = d.embed_into(field_context(cfg.p, need, cfg.prec));
            auto r = d.volkenborn_integral(f);
            rep["dist"] = opt.dist;
            rep["f"] = opt.f;
            rep["value"] = to_json(r.value);
            rep["cauchy_defect"] = to_json(r.cauchy_defect, cfg.p);
            rep["levels_used"] = r.levels_used;
            text << "integral value: " << r.value.to_string() << "\n"
                 << "cauchy defect: " << size_text(r.cauchy_defect, cfg.p) << "\n"
                 << "levels used: " << r.levels_used << "\n";
        } else if (app.got_subcommand(c_mahler)) {
            rep = envelope(cfg, "mahler");
            auto [f, need] = parse_function(opt.f, cfg);
            auto ctx = field_context(cfg.p, std::max(need, -1L), cfg.prec);
            auto coeffs = mahler_coeffs(f.evaluate_range(ctx, opt.mcount));
            auto tail = c1_defect(coeffs, 1);
            rep["f"] = opt.f;
            Json arr = Json::array();
            for (const auto& c : coeffs) arr.push_back(to_json(c));
            rep["coefficients"] = arr;
            rep["c1_tail"] = Json{{"zero", tail.zero},
                                  {"arg_m", tail.arg_m},
                                  {"size", to_json(tail.size, cfg.p)}};
            text << "mahler coefficients of " << opt.f << " (" << opt.mcount << " terms)\n";
            for (size_t m = 0; m < coeffs.size(); ++m)
                text << "  a_" << m << " = " << coeffs[m].to_string() << "\n";
        } else if (app.got_subcommand(c_fourier)) {
            rep = envelope(cfg, "fourier");
            auto d = parse_distribution(opt.dist, cfg);
            rep["dist"] = opt.dist;
            if (opt.m >= 0) {
                auto r = d.fourier_coefficient(opt.m);
                rep["m"] = opt.m;
                rep["value"] = to_json(r.value);
                rep["cauchy_defect"] = to_json(r.cauchy_defect, cfg.p);
                rep["bound_ok"] = r.bound_ok;
                exit_code = r.bound_ok ? 0 : 1;
                text << "coefficient integral m=" << opt.m << ": " << r.value.to_string() << "\n"
                     << "|T_m| <= c*m: " << (r.bound_ok ? "PASS" : "FAIL") << "\n";
            } else if (opt.root_order >= 0) {
                if (opt.root_order > d.ambient()->level() + 1)
                    d = d.embed_into(field_context(cfg.p, opt.root_order - 1, cfg.prec));
                auto v = d.fourier_eval_at_root(opt.root_order, opt.root_num);
                rep["root_order_exp"] = opt.root_order;
                rep["root_num"] = opt.root_num;
                rep["value"] = to_json(v);
                text << "muhat at zeta_(p^" << opt.root_order << ")^" << opt.root_num << ": "
                     << v.to_string() << "\n";
            } else {
                throw std::invalid_argument("fourier: give --m or --root-order");
            }
        } else if (app.got_subcommand(c_trans)) {
            rep = envelope(cfg, "transform-verify");
            auto nu = parse_distribution(opt.nu, cfg);
            auto mu = parse_distribution(opt.mu, cfg);
            long lvl = std::max(nu.ambient()->level(), mu.ambient()->level());
            lvl = std::max(lvl, opt.orders - 1);
            auto ctx = field_context(cfg.p, lvl, cfg.prec);
            if (nu.ambient()->level() < lvl) nu = nu.embed_into(ctx);
            if (mu.ambient()->level() < lvl) mu = mu.embed_into(ctx);
            auto r = transform_identity_check(nu, mu, opt.orders, opt.mcount);
            rep["nu"] = opt.nu;
            rep["mu"] = opt.mu;
            rep["max_root_residual"] = to_json(r.max_root_residual, cfg.p);
            Json g = Json::array();
            for (const auto& c : r.correction_coeffs) g.push_back(to_json(c));
            rep["correction_coeffs"] = g;
            exit_code = r.max_root_residual.below_precision ? 0 : 1;
            text << "transform identity at roots of order <= p^" << opt.orders << ": "
                 << (exit_code == 0 ? "PASS" : "FAIL") << "  max residual "
                 << size_text(r.max_root_residual, cfg.p) << "\n";
        } else if (app.got_subcommand(c_coh)) {
            rep = envelope(cfg, "coherence");
            auto seq = parse_sequence(opt.seq, cfg, cfg.depth);
            auto res = seq.verify_norm_coherence();
            rep["seq"] = opt.seq;
            rep["passed"] = res.below_precision;
            rep["residual"] = to_json(res, cfg.p);
            exit_code = res.below_precision ? 0 : 1;
            text << "norm coherence of " << opt.seq << ": "
                 << (res.below_precision ? "PASS" : "FAIL") << "  residual "
                 << size_text(res, cfg.p) << "\n";
        } else if (app.got_subcommand(c_gauss)) {
            rep = envelope(cfg, "gauss");
            DirichletCharacter phi(cfg.p, opt.n, opt.chi, opt.psi);
            auto ctx = field_context(cfg.p, opt.n, cfg.prec);
            auto tau = gauss_sum(phi, ctx);
            auto guard = tau * gauss_sum(phi.conjugate(), ctx);
            long f = small_pow(cfg.p, phi.conductor_exponent());
            bool ok = guard.indistinguishable_from(ctx->from_integer(phi.is_even() ? f : -f));
            rep["character"] = phi.name();
            rep["conductor"] = f;
            rep["tau"] = to_json(tau);
            rep["pair_guard_ok"] = ok;
            exit_code = ok ? 0 : 1;
            text << "tau(" << phi.name() << ") with conductor " << f << "\n"
                 << "v_pi(tau) = " << tau.pi_valuation() << "\n"
                 << "tau * tau-bar guard: " << (ok ? "PASS" : "FAIL") << "\n";
        } else if (app.got_subcommand(c_lp1)) {
            rep = envelope(cfg, "lp1");
            DirichletCharacter phi(cfg.p, opt.n, opt.chi, opt.psi);
            rep["character"] = phi.name();
            auto ctx = field_context(cfg.p, std::max(phi.conductor_exponent() - 1, 0L), cfg.prec);
            try {
                auto v = leopoldt_lp1(phi, ctx);
                rep["odd_vanishing"] = false;
                rep["value"] = to_json(v);
                text << "L_p(1, " << phi.name() << ") = " << v.to_string() << "\n";
            } catch (const odd_character_error&) {
                rep["odd_vanishing"] = true;
                text << "L_p(1, " << phi.name() << "): odd character, log sum vanishes\n";
            }
        } else if (app.got_subcommand(c_interp)) {
            rep = envelope(cfg, "interp-verify");
            auto r = verify_interpolation(cfg.p, opt.n, opt.chi, opt.psi, opt.t, cfg.prec);
            bool pass = r.parity_vanishing ||
                        (r.residual.below_precision &&
                         (!r.lvalue_checked || r.lvalue_residual.below_precision));
            rep["n"] = opt.n;
            rep["chi_exp"] = opt.chi;
            rep["psi_exp"] = opt.psi;
            rep["t"] = opt.t;
            rep["residual"] = to_json(r.residual, cfg.p);
            rep["lvalue_checked"] = r.lvalue_checked;
            if (r.lvalue_checked) rep["lvalue_residual"] = to_json(r.lvalue_residual, cfg.p);
            rep["parity_vanishing"] = r.parity_vanishing;
            rep["passed"] = pass;
            exit_code = pass ? 0 : 1;
            if (cfg.format == "csv") {
                text << "p,n,chi_exp,psi_exp,t,residual_valuation\n"
                     << cfg.p << "," << opt.n << "," << opt.chi << "," << opt.psi << "," << opt.t
                     << ","
                     << (r.residual.below_precision ? std::string("below_precision")
                                                    : std::to_string(r.residual.pi_valuation))
                     << "\n";
            } else {
                text << "interpolation two-path: " << (pass ? "PASS" : "FAIL") << "\n"
                     << "pipeline vs conductor sum: " << size_text(r.residual, cfg.p) << "\n";
                if (r.lvalue_checked)
                    text << "pipeline vs tau * L_p(1, phi): " << size_text(r.lvalue_residual, cfg.p)
                         << "\n";
                if (r.parity_vanishing) text << "odd character: both sides vanish\n";
            }
        } else if (app.got_subcommand(c_ratio)) {
            rep = envelope(cfg, "unit-ratio");
            auto table = unit_ratio_table(cfg.p, opt.n, opt.chi, cfg.prec);
            rep["n"] = opt.n;
            rep["chi_exp"] = opt.chi;
            rep["selected_c"] = table.selected_c;
            Json rows = Json::array();
            std::ostringstream csv;
            csv << "p,n,chi_exp,psi_exp,c,ratio_valuation\n";
            for (const auto& row : table.rows) {
                rows.push_back(Json{{"c", row.tame_index},
                                    {"psi_exp", row.psi_exp},
                                    {"well_defined", row.well_defined},
                                    {"ratio_valuation", row.ratio_valuation}});
                csv << cfg.p << "," << opt.n << "," << opt.chi << "," << row.psi_exp << ","
                    << row.tame_index << "," << row.ratio_valuation << "\n";
            }
            rep["rows"] = rows;
            exit_code = table.selected_c >= 1 ? 0 : 1;
            if (cfg.format == "csv")
                text << csv.str();
            else
                text << csv.str() << "selected c = " << table.selected_c << "\n";
        } else if (app.got_subcommand(c_ann)) {
            rep = envelope(cfg, "annihilator");
            long c = opt.c;
            if (c < 0) {
                if (opt.n >= 1) {
                    auto table = unit_ratio_table(cfg.p, opt.n, opt.chi, cfg.prec);
                    if (table.selected_c < 1)
                        throw std::domain_error("no tame index with unit ratios found");
                    c = table.selected_c;
                } else {
                    c = 1;
                }
            }
            auto r = annihilator(cfg.p, opt.n, opt.chi, c, cfg.prec);
            rep["n"] = opt.n;
            rep["chi_exp"] = opt.chi;
            rep["c"] = c;
            rep["integral"] = r.integral;
            rep["certified_digits"] = r.certified_digits;
            Json arr = Json::array();
            for (const auto& s : r.coefficients) arr.push_back(to_json(s));
            rep["coefficients"] = arr;
            rep["group_ring"] = to_json(r.m);
            exit_code = r.integral ? 0 : 1;
            text << "M with c = " << c << ": " << (r.integral ? "integral" : "NOT integral")
                 << " to " << r.certified_digits << " digits\n";
            for (size_t a = 0; a < r.coefficients.size(); ++a)
                text << "  coeff[" << a << "] = " << r.coefficients[a].to_string() << "\n";
        } else if (app.got_subcommand(c_reg)) {
            rep = envelope(cfg, "regulator");
            long c = opt.c;
            if (c < 0) {
                auto table = unit_ratio_table(cfg.p, opt.n, opt.chi, cfg.prec);
                if (table.selected_c < 1)
                    throw std::domain_error("no tame index with unit ratios found");
                c = table.selected_c;
            }
            auto r = regulator_product_check(cfg.p, opt.n, opt.chi, c, cfg.prec);
            rep["n"] = opt.n;
            rep["chi_exp"] = opt.chi;
            rep["c"] = c;
            rep["ratio_valuation"] = r.ratio_valuation;
            rep["ratio_is_unit"] = r.ratio_is_unit;
            rep["circulant_residual"] = to_json(r.circulant_residual, cfg.p);
            bool pass = r.ratio_is_unit && r.circulant_residual.below_precision;
            exit_code = pass ? 0 : 1;
            text << "regulator product ratio valuation: " << r.ratio_valuation << " ("
                 << (r.ratio_is_unit ? "unit" : "NOT a unit") << ")\n"
                 << "circulant determinant identity: "
                 << (r.circulant_residual.below_precision ? "PASS" : "FAIL") << "\n";
        }

        rep["passed"] = exit_code == 0;
        if (cfg.format == "json")
            emit(cfg, rep.dump(2) + "\n", out, err);
        else
            emit(cfg, text.str(), out, err);
        return exit_code;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace volk
