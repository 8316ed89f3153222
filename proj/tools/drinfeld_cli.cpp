// Command-line surface for exact Drinfeld modular polynomial computations.
// Exit codes: 0 success, 1 verification FAIL, 2 bad input, 3 internal error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "drinfeld/drinfeld.hpp"

using namespace drinfeld;

namespace {

struct JobSpec {
    long q = 2;
    int r = 2;
    std::string P = "T";
    std::string s = "1";
    std::string J;
    std::string mode = "human";
    int threads = 1;
    bool jform = false;
    bool check_distinct = false;
    bool selftest_corrupt = false;
    std::string modules_file;
};

Params make_job_params(const JobSpec& js) {
    if (js.q < 2) throw BadInput("q must be at least 2");
    if (js.r < 2 || js.r > 4) throw BadInput("rank must be between 2 and 4");
    auto B = make_base_ring(js.q, js.r);
    std::vector<FFElem> P = parse_subfield_poly(*B->F, js.q, js.P);
    return make_params(js.q, js.r, P);
}

std::string poly_str(const UPoly<MPoly>& f) {
    return f.str("X", [](const MPoly& c) { return c.str(); });
}

int parse_s(const JobSpec& js, int r) {
    if (js.s == "full") return -1;
    int s = -1;
    try {
        size_t used = 0;
        s = std::stoi(js.s, &used);
        if (used != js.s.size()) throw std::invalid_argument("");
    } catch (...) {
        throw BadInput("--s must be an integer or 'full'");
    }
    if (s < 0 || s > r) throw BadInput("type dimension s out of range");
    return s;
}

int cmd_torsion(const JobSpec& js) {
    Params par = make_job_params(js);
    TorsionBasis tb = torsion_basis(par);
    std::cout << tb.describe();
    return 0;
}

int cmd_invariants(const JobSpec& js) {
    if (js.r < 2) throw BadInput("rank must be at least 2");
    auto gens = invariant_monoid_basis(js.q, js.r);
    auto B = make_base_ring(js.q, js.r);
    if (js.r == 2) {
        std::cout << invariant_monomial(B, gens[0]).str() << "\n";
        return 0;
    }
    JForm names;
    names.gens = gens;
    bool first = true;
    for (size_t k = 0; k < gens.size(); ++k) {
        std::cout << (first ? "" : " ") << names.gen_name(k);
        first = false;
    }
    std::cout << "\n";
    for (size_t k = 0; k < gens.size(); ++k)
        std::cout << names.gen_name(k) << " = " << invariant_monomial(B, gens[k]).str() << "\n";
    return 0;
}

MPoly parse_J(const Params& par, const std::string& text) {
    MPoly J = parse_poly(par.B, text, true);
    if (J.is_zero()) throw BadInput("J must be nonzero");
    if (!is_invariant(J)) throw BadInput("J is not an invariant of the lambda action");
    return J;
}

int cmd_modpoly(const JobSpec& js) {
    Params par = make_job_params(js);
    int s = parse_s(js, js.r);
    MPoly J = parse_J(par, js.J);
    TorsionBasis tb = torsion_basis(par);
    ModularPoly mp = s < 0 ? full_modular_poly(tb, J, js.threads)
                           : modular_poly(tb, J, s, js.threads, js.check_distinct);
    if (js.mode == "canonical") {
        std::cout << poly_str(mp.poly) << "\n";
        return 0;
    }
    std::cout << "modular polynomial certificate\n";
    std::cout << "q: " << js.q << "\n";
    std::cout << "r: " << js.r << "\n";
    std::cout << "P: " << js.P << "\n";
    std::cout << "s: " << (s < 0 ? std::string("full") : std::to_string(s)) << "\n";
    std::cout << "J: " << J.str() << "\n";
    std::cout << "degree: " << mp.poly.degree() << " (expected " << mp.expected_degree << ") "
              << (mp.poly.degree() == mp.expected_degree ? "OK" : "FAIL") << "\n";
    std::cout << "invariance (congruence): " << (mp.invariance_congruence ? "OK" : "FAIL") << "\n";
    std::cout << "invariance (lambda sweep): " << (mp.invariance_sweep ? "OK" : "FAIL") << "\n";
    std::cout << "coefficients in B: OK\n";
    if (mp.distinct_roots)
        std::cout << "distinct roots: " << (*mp.distinct_roots ? "yes" : "no") << "\n";
    std::cout << "Phi(X) = " << poly_str(mp.poly) << "\n";
    if (js.jform) {
        auto gens = invariant_monoid_basis(js.q, js.r);
        std::cout << "J-form coefficients:\n";
        for (int i = mp.poly.degree(); i >= 0; --i) {
            if (mp.poly[i].is_zero()) continue;
            std::cout << "  X^" << i << ": " << express_in_invariants(mp.poly[i], gens).str()
                      << "\n";
        }
    }
    return 0;
}

int cmd_kronecker(const JobSpec& js) {
    Params par = make_job_params(js);
    int s = parse_s(js, js.r);
    if (s < 1 || s > js.r - 1) throw BadInput("Kronecker congruences need 1 <= s <= r-1");
    MPoly J = parse_J(par, js.J);
    TorsionBasis tb = torsion_basis(par);
    ModularPoly mp = modular_poly(tb, J, s, js.threads);
    UPoly<MPoly> phi = mp.poly;
    if (js.selftest_corrupt)
        phi.set_coeff(0, phi[0] + MPoly::constant_int(par.B, 1));
    CongruenceReport rep = kronecker_verify_given(tb, J, s, phi, js.threads);
    std::cout << rep.str();
    return rep.pass() ? 0 : 1;
}

int cmd_distinguish(const JobSpec& js) {
    Params par = make_job_params(js);
    std::ifstream in(js.modules_file);
    if (!in) throw BadInput("cannot open " + js.modules_file);
    std::vector<std::vector<RatFunc>> S;
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed = line.substr(line.find_first_not_of(" \t") == std::string::npos
                                              ? line.size()
                                              : line.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::vector<RatFunc> tuple;
        std::stringstream ss(trimmed);
        std::string field;
        while (std::getline(ss, field, ',')) tuple.push_back(RatFunc(parse_poly(par.B, field)));
        if (static_cast<int>(tuple.size()) != js.r - 1)
            throw BadInput("each module needs r-1 comma-separated coefficients");
        for (const RatFunc& c : tuple)
            for (const auto& t : c.num().terms())
                for (int gj = 0; gj < par.B->nvars(); ++gj)
                    if (gj != par.B->t_index && detail::exp_get(t.e, gj) != 0)
                        throw BadInput("module coefficients must be polynomials in T");
        S.push_back(std::move(tuple));
    }
    if (S.empty()) throw BadInput("no modules in file");
    std::vector<MPoly> G;
    for (const auto& e : invariant_monoid_basis(js.q, js.r)) G.push_back(invariant_monomial(par.B, e));
    MPoly J = distinguishing_invariant(S, G, par);
    std::cout << "distinguishing invariant: " << J.str() << "\n";
    std::cout << "values:\n";
    for (size_t i = 0; i < S.size(); ++i)
        std::cout << "  module " << (i + 1) << ": " << eval_invariant(J, S[i]).str() << "\n";
    std::cout << "separation: " << (invariant_separates(J, S) ? "OK" : "FAIL") << "\n";
    return invariant_separates(J, S) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Drinfeld modular polynomials and Kronecker congruences"};
    app.require_subcommand(1);
    JobSpec js;

    auto add_common = [&](CLI::App* c, bool needs_P) {
        c->add_option("--q", js.q, "size of the base field F_q")->required();
        c->add_option("--r", js.r, "rank of the Drinfeld module")->required();
        if (needs_P) c->add_option("--P", js.P, "monic prime of F_q[T], e.g. T or T^2+T+1")->required();
        c->add_option("--threads", js.threads, "parallel workers for the subspace map");
    };

    CLI::App* torsion = app.add_subcommand("torsion", "P-torsion tower and generators");
    add_common(torsion, true);
    torsion->add_option("--mode", js.mode, "human|canonical");

    CLI::App* modpoly = app.add_subcommand("modpoly", "modular polynomial of type (A/PA)^s");
    add_common(modpoly, true);
    modpoly->add_option("--s", js.s, "type dimension, or 'full'")->required();
    modpoly->add_option("--J", js.J, "invariant: J-name (J12, j) or g-expression")->required();
    modpoly->add_option("--mode", js.mode, "human|canonical|certificate");
    modpoly->add_flag("--j-form", js.jform, "also print coefficients over the generators");
    modpoly->add_flag("--check-distinct", js.check_distinct, "record whether J separates the roots");

    CLI::App* kron = app.add_subcommand("kronecker", "verify both Kronecker congruence forms");
    add_common(kron, true);
    kron->add_option("--s", js.s, "type dimension")->required();
    kron->add_option("--J", js.J, "invariant")->required();
    kron->add_flag("--selftest-corrupt", js.selftest_corrupt,
                   "corrupt the polynomial before verifying (diagnostics)");

    CLI::App* inv = app.add_subcommand("invariants", "generators of the invariant ring");
    add_common(inv, false);

    CLI::App* dist = app.add_subcommand("distinguish", "invariant separating a set of modules");
    add_common(dist, false);
    dist->add_option("--modules", js.modules_file, "file with r-1 comma-separated coefficients per line")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(torsion)) return cmd_torsion(js);
        if (app.got_subcommand(modpoly)) return cmd_modpoly(js);
        if (app.got_subcommand(kron)) return cmd_kronecker(js);
        if (app.got_subcommand(inv)) return cmd_invariants(js);
        if (app.got_subcommand(dist)) return cmd_distinguish(js);
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
