#include <catch2/catch_amalgamated.hpp>

#include "drinfeld/modular.hpp"
#include "drinfeld/parse.hpp"

using namespace drinfeld;

namespace {
Params params_qrP(long q, int r, const std::string& Ptext) {
    auto B = make_base_ring(q, r);
    return make_params(q, r, parse_subfield_poly(*B->F, q, Ptext));
}

std::string upstr(const UPoly<MPoly>& f) {
    return f.str("X", [](const MPoly& c) { return c.str(); });
}
}  // namespace

TEST_CASE("rank 2, q=2, P=T modular polynomial") {
    Params par = params_qrP(2, 2, "T");
    TorsionBasis tb = torsion_basis(par);
    MPoly j = parse_poly(par.B, "g1^3");
    SECTION("s = 0 gives X - J") {
        ModularPoly mp = modular_poly(tb, j, 0);
        CHECK(upstr(mp.poly) == "X + g1^3");
    }
    SECTION("s = r gives X - J as well") {
        ModularPoly mp = modular_poly(tb, j, 2);
        CHECK(upstr(mp.poly) == "X + g1^3");
    }
    SECTION("s = 1 is the classical cubic over A[j]") {
        ModularPoly mp = modular_poly(tb, j, 1, 1, true);
        CHECK(mp.poly.degree() == 3);
        CHECK(mp.expected_degree == 3);
        CHECK(mp.poly.leading().is_one());
        CHECK(mp.invariance_congruence);
        CHECK(mp.invariance_sweep);
        REQUIRE(mp.distinct_roots.has_value());
        CHECK(*mp.distinct_roots);
        // every coefficient lies in A[j]: only multiples of 3 as g1-exponents
        for (int i = 0; i <= 3; ++i)
            for (const auto& t : mp.poly[i].terms())
                CHECK(detail::exp_get(t.e, 1) % 3 == 0);
        // mod T it collapses to the Kronecker product
        UPoly<MPoly> red = reduce_modular(tb, mp.poly);
        MPoly jr = tb.reduce_base(j);
        UPoly<MPoly> expect(MPoly::zero(par.Bred));
        {
            MPoly one = MPoly::constant_int(par.Bred, 1);
            UPoly<MPoly> f1(MPoly::zero(par.Bred), {jr.pow(2), one});  // X + j^2
            UPoly<MPoly> f2(MPoly::zero(par.Bred));
            f2.set_coeff(0, jr);
            f2.set_coeff(2, one);  // X^2 + j
            expect = f1 * f2;
        }
        CHECK(red == expect);
    }
    SECTION("full modular polynomial has degree 5 and factors per type") {
        ModularPoly full = full_modular_poly(tb, j);
        CHECK(full.poly.degree() == 5);
        UPoly<MPoly> prod(MPoly::zero(par.B), {MPoly::constant_int(par.B, 1)});
        for (int s = 0; s <= 2; ++s) prod = prod * modular_poly(tb, j, s).poly;
        CHECK(full.poly == prod);
    }
    SECTION("non-invariant J rejected") {
        CHECK_THROWS_AS(modular_poly(tb, parse_poly(par.B, "g1"), 1), BadInput);
    }
}

TEST_CASE("rank 2 Kronecker congruences") {
    SECTION("q = 2") {
        Params par = params_qrP(2, 2, "T");
        TorsionBasis tb = torsion_basis(par);
        MPoly j = parse_poly(par.B, "g1^3");
        CongruenceReport rep = kronecker_verify(tb, j, 1);
        CHECK(rep.pass1);
        CHECK(rep.pass2);
        CHECK(rep.coeffs_in_C);
        CHECK(rep.residual1.is_zero());
        CHECK(rep.residual2.is_zero());
        CHECK(upstr(rep.phi_mod) == "X^3 + g1^6*X^2 + g1^3*X + g1^9");
    }
    SECTION("q = 3") {
        Params par = params_qrP(3, 2, "T");
        TorsionBasis tb = torsion_basis(par);
        MPoly j = parse_poly(par.B, "g1^4");
        ModularPoly mp = modular_poly(tb, j, 1);
        CHECK(mp.poly.degree() == 4);
        CongruenceReport rep = kronecker_verify_given(tb, j, 1, mp.poly);
        CHECK(rep.pass());
        // explicit form: (X - j^3)(X^3 - j)
        MPoly jr = tb.reduce_base(j);
        MPoly one = MPoly::constant_int(par.Bred, 1);
        UPoly<MPoly> f1(MPoly::zero(par.Bred), {-jr.pow(3), one});
        UPoly<MPoly> f2(MPoly::zero(par.Bred));
        f2.set_coeff(0, -jr);
        f2.set_coeff(3, one);
        CHECK(reduce_modular(tb, mp.poly) == f1 * f2);
    }
    SECTION("corrupted input fails with a nonzero residual") {
        Params par = params_qrP(2, 2, "T");
        TorsionBasis tb = torsion_basis(par);
        MPoly j = parse_poly(par.B, "g1^3");
        ModularPoly mp = modular_poly(tb, j, 1);
        UPoly<MPoly> bad = mp.poly;
        bad.set_coeff(1, bad[1] + MPoly::constant_int(par.B, 1));
        CongruenceReport rep = kronecker_verify_given(tb, j, 1, bad);
        CHECK_FALSE(rep.pass1);
        CHECK_FALSE(rep.pass2);
        CHECK_FALSE(rep.residual1.is_zero());
    }
}

TEST_CASE("rank 3 golden data") {
    Params par = params_qrP(2, 3, "T");
    TorsionBasis tb = torsion_basis(par);
    MPoly J12 = parse_poly(par.B, "g1*g2^2");
    MPoly J12r = tb.reduce_base(J12);

    // the printed cubic, mapped to g-variables through
    // J07 = g2^7, J12 = g1 g2^2, J41 = g1^4 g2, J70 = g1^7
    MPoly c2 = parse_poly(par.Bred, "g1*g2^9 + g1^3*g2^6 + g1^7");
    MPoly c1 = parse_poly(par.Bred, "g1^4*g2^8 + g1^12*g2^3 + g1^4*g2 + g1^14");
    MPoly c0 = parse_poly(par.Bred, "g1^5*g2^10 + g1^9*g2^4 + g1^15*g2^2 + g1^21 + g1^7");
    UPoly<MPoly> paper_cubic(MPoly::zero(par.Bred),
                             {c0, c1, c2, MPoly::constant_int(par.Bred, 1)});

    SECTION("reduced-side direct computation reproduces the printed cubic") {
        UPoly<MPoly> cubic = special_poly_mod_p(tb, J12r.pow(2), 1);
        CHECK(cubic == paper_cubic);
        UPoly<MPoly> lin = special_poly_mod_p(tb, J12r.pow(2), 2);
        CHECK(upstr(lin) == "X + g1*g2^2");  // X + J12
    }

    SECTION("s=1 and s=2 polynomials, congruences, and cross-consistency") {
        ModularPoly mp1 = modular_poly(tb, J12, 1);
        ModularPoly mp2 = modular_poly(tb, J12, 2);
        CHECK(mp1.poly.degree() == 7);
        CHECK(mp2.poly.degree() == 7);

        CongruenceReport rep1 = kronecker_verify_given(tb, J12, 1, mp1.poly);
        CHECK(rep1.pass());
        CongruenceReport rep2 = kronecker_verify_given(tb, J12, 2, mp2.poly);
        CHECK(rep2.pass());

        // route (a): direct reduced-side product
        UPoly<MPoly> a = special_poly_mod_p(tb, J12r.pow(2), 1);
        // route (b): extraction from the s=1 congruence
        UPoly<MPoly> b = extract_sep_from_s1(rep1.phi_mod, J12r, par.absP);
        // route (c): divide the s=2 reduction by (Phi^sep_{J^2,s=2}(X^2))^2
        UPoly<MPoly> lin = special_poly_mod_p(tb, J12r.pow(2), 2);
        UPoly<MPoly> other = lin.inflate(2).pow(2, MPoly::constant_int(par.Bred, 1));
        auto [c, rem] = rep2.phi_mod.divrem_monic(other);
        CHECK(rem.is_zero());
        CHECK(a == paper_cubic);
        CHECK(b == paper_cubic);
        CHECK(c == paper_cubic);
        // and the s=1 factorization shape of Example 4:
        // Phi = (X + J12^2) * cubic(X^2)
        UPoly<MPoly> shape(MPoly::zero(par.Bred),
                           {J12r.pow(2), MPoly::constant_int(par.Bred, 1)});
        CHECK(rep1.phi_mod == shape * a.inflate(2));
    }

    SECTION("extraction rejects corrupted input") {
        ModularPoly mp1 = modular_poly(tb, J12, 1);
        CongruenceReport rep1 = kronecker_verify_given(tb, J12, 1, mp1.poly);
        UPoly<MPoly> bad = rep1.phi_mod;
        bad.set_coeff(2, bad[2] + MPoly::constant_int(par.Bred, 1));
        CHECK_THROWS_AS(extract_sep_from_s1(bad, J12r, par.absP), BadInput);
    }
}

TEST_CASE("lambda-twist consistency") {
    Params par = params_qrP(2, 2, "T");
    MPoly j = parse_poly(par.B, "g1^3");
    TorsionBasis tb = torsion_basis(par);
    ModularPoly mp = modular_poly(tb, j, 1);
    const FieldCtx& F4 = *par.B->F;
    FFElem lam(F4, F4.gen());
    // the twisted module T + (lambda g1) tau + tau^2
    Module<MPoly> twisted{2, TwistedPoly<MPoly>(MPoly::zero(par.B),
                                                {parse_poly(par.B, "T"),
                                                 parse_poly(par.B, "g1").scaled(lam),
                                                 MPoly::constant_int(par.B, 1)})};
    TorsionBasis tbt = torsion_basis_of(par, twisted);
    ModularPoly mpt = modular_poly(tbt, j, 1);
    CHECK(mpt.poly == mp.poly);
}

TEST_CASE("express_in_invariants") {
    auto B = make_base_ring(2, 3);
    auto gens = invariant_monoid_basis(2, 3);
    SECTION("relation monomials round trip") {
        // g1^4 g2^8 = J12^4 = J07 J41; g1^8 g2^2 = J41^2 = J12 J70
        for (const char* s : {"g1^4*g2^8", "g1^8*g2^2"}) {
            MPoly c = parse_poly(B, s);
            JForm f = express_in_invariants(c, gens);
            CHECK(f.terms.size() == 1);
        }
    }
    SECTION("T g1^7 -> T*J70") {
        MPoly c = parse_poly(B, "T*g1^7");
        JForm f = express_in_invariants(c, gens);
        CHECK(f.str() == "T*J70");
    }
    SECTION("non-invariant input rejected") {
        CHECK_THROWS_AS(express_in_invariants(parse_poly(B, "g1"), gens), BadInput);
    }
    SECTION("paper cubic coefficients in J-form match the printed expressions") {
        MPoly c2 = parse_poly(B, "g1*g2^9 + g1^3*g2^6 + g1^7");
        // the paper prints J07*J12 + J12^3 + J70; compare as polynomials
        MPoly printed = parse_poly(B, "J07*J12 + J12^3 + J70", true);
        CHECK(c2 == printed);
        JForm f = express_in_invariants(c2, gens);
        CHECK(parse_poly(B, f.str(), true) == c2);
    }
}

TEST_CASE("degree law across parameters") {
    struct Cell {
        long q;
        int r;
        const char* P;
        const char* J;
    };
    for (const Cell& c : {Cell{2, 2, "T", "g1^3"}, Cell{3, 2, "T", "g1^4"}}) {
        Params par = params_qrP(c.q, c.r, c.P);
        TorsionBasis tb = torsion_basis(par);
        MPoly J = parse_poly(par.B, c.J);
        for (int s = 0; s <= c.r; ++s) {
            ModularPoly mp = modular_poly(tb, J, s);
            CHECK(mp.poly.degree() == gaussian_binomial(c.r, s, par.absP));
        }
    }
}
