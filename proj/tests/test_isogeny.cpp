#include <catch2/catch_amalgamated.hpp>

#include "drinfeld/isogeny.hpp"
#include "drinfeld/parse.hpp"

using namespace drinfeld;

namespace {
Params params_qrP(long q, int r, const std::string& Ptext) {
    auto B = make_base_ring(q, r);
    return make_params(q, r, parse_subfield_poly(*B->F, q, Ptext));
}

std::vector<FFElem> a_T(const Params& par) {
    return {FFElem(*par.B->F, 0), FFElem(*par.B->F, 1)};
}
std::vector<FFElem> a_T2(const Params& par) {
    return {FFElem(*par.B->F, 0), FFElem(*par.B->F, 0), FFElem(*par.B->F, 1)};
}

/// f phi_a == phi_a^(f) f, exactly
void check_intertwining(const Isogeny& iso, const TorsionSide& side, const Params& par) {
    for (const auto& a : {a_T(par), a_T2(par)}) {
        TwistedPoly<MPoly> fa = phi_a(side.phi, a);
        TwistedPoly<TElem> lhs = iso.f * embed_twisted(fa, *side.tower);
        auto embed = [&](const FFElem& c) {
            return side.tower->from_base(MPoly::constant(par.B, c));
        };
        TwistedPoly<TElem> rhs = phi_action(iso.codomain, a, embed) * iso.f;
        CHECK(lhs == rhs);
    }
}
}  // namespace

TEST_CASE("kernel generators") {
    Params par = params_qrP(2, 3, "T");
    TorsionBasis tb = torsion_basis(par);
    auto ms = enumerate_subspaces(3, 1, *par.P);
    // (1,0,0) -> w1; (0,0,1) -> w3; (1,1,0) -> w1+w2
    auto find = [&](int a, int b, int c) -> const SubspaceMatrix& {
        for (const auto& m : ms) {
            int va = m.at(0, 0)[0].value(), vb = m.at(0, 1)[0].value(), vc = m.at(0, 2)[0].value();
            if (va == a && vb == b && vc == c) return m;
        }
        throw std::logic_error("matrix not found");
    };
    TElem w1 = tb.gn.gens[0], w2 = tb.gn.gens[1], w3 = tb.gn.gens[2];
    CHECK(kernel_generators(find(1, 0, 0), tb.gn, *par.P)[0] == w1);
    CHECK(kernel_generators(find(0, 0, 1), tb.gn, *par.P)[0] == w3);
    CHECK(kernel_generators(find(1, 1, 0), tb.gn, *par.P)[0] == w1 + w2);
}

TEST_CASE("kernel polynomial shape") {
    Params par = params_qrP(2, 2, "T");
    TorsionBasis tb = torsion_basis(par);
    auto ms = enumerate_subspaces(2, 1, *par.P);
    TElem w1 = tb.gn.gens[0];
    for (const auto& m : ms) {
        TwistedPoly<TElem> f = kernel_polynomial(m, tb.gn, *par.P);
        CHECK(f.degree() == 1);  // tau-degree s*deg P = 1, X-degree |P|^s = 2
        CHECK(f.is_monic());
        // vanishes exactly on the span
        std::vector<TElem> etas = kernel_generators(m, tb.gn, *par.P);
        for (const TElem& v : kernel_span(etas, tb.gn, *par.P))
            CHECK(additive_eval(f, v).is_zero());
    }
    // s=1, eta=w1, P=T, q=2: f(X) = X^2 + w1 X, i.e. f = w1 + tau
    TwistedPoly<TElem> f = kernel_polynomial(ms[0], tb.gn, *par.P);
    CHECK(kernel_generators(ms[0], tb.gn, *par.P)[0] == w1);
    CHECK(f[0] == w1);
    CHECK(f[1].is_one());
}

TEST_CASE("s=2 kernel polynomial has degree |P|^2") {
    Params par = params_qrP(2, 3, "T");
    TorsionBasis tb = torsion_basis(par);
    auto ms = enumerate_subspaces(3, 2, *par.P);
    TwistedPoly<TElem> f = kernel_polynomial(ms[0], tb.gn, *par.P);
    CHECK(f.degree() == 2);  // X-degree 4
    CHECK(f.is_monic());
    std::vector<TElem> etas = kernel_generators(ms[0], tb.gn, *par.P);
    std::vector<TElem> span = kernel_span(etas, tb.gn, *par.P);
    CHECK(span.size() == 4);
    for (const TElem& v : span) CHECK(additive_eval(f, v).is_zero());
}

TEST_CASE("pushforward") {
    Params par = params_qrP(2, 2, "T");
    TorsionBasis tb = torsion_basis(par);
    SECTION("f = 1 gives phi back") {
        TwistedPoly<TElem> one(tb.gn.tower->zero(0), {tb.gn.tower->one(0)});
        Module<TElem> cod = pushforward(one, tb.gn);
        CHECK(cod.phiT == tb.gn.phiT_tower());
    }
    SECTION("f = phi_P gives phi back (commuting)") {
        TwistedPoly<TElem> fP = embed_twisted(tb.gn.phiP, *tb.gn.tower);
        Module<TElem> cod = pushforward(fP, tb.gn);
        CHECK(cod.phiT == tb.gn.phiT_tower());
    }
    SECTION("kernel isogenies intertwine phi_a for a = T, T^2") {
        for (const auto& m : enumerate_subspaces(2, 1, *par.P)) {
            Isogeny iso = isogeny_from_matrix(m, tb.gn, *par.P);
            check_intertwining(iso, tb.gn, par);
        }
    }
    SECTION("pushforward coefficient matches the hand computation") {
        // f = eta + tau: a_1 = eta + g1^2 + eta^4
        auto ms = enumerate_subspaces(2, 1, *par.P);
        TElem eta = kernel_generators(ms[0], tb.gn, *par.P)[0];
        Isogeny iso = isogeny_from_matrix(ms[0], tb.gn, *par.P);
        TElem g1sq = tb.gn.tower->from_base(parse_poly(par.B, "g1^2"));
        CHECK(iso.codomain.phiT[1] == eta + g1sq + eta.pow(4));
    }
}

TEST_CASE("rank-3 isogenies intertwine") {
    Params par = params_qrP(2, 3, "T");
    TorsionBasis tb = torsion_basis(par);
    for (int s : {1, 2}) {
        auto ms = enumerate_subspaces(3, s, *par.P);
        Isogeny iso = isogeny_from_matrix(ms[0], tb.gn, *par.P);
        check_intertwining(iso, tb.gn, par);
    }
}

TEST_CASE("separability criterion mod P") {
    // reduction of f_m is separable iff m_sr is not the leading 1 of the last row
    for (auto [q, r] : {std::pair<long, int>{2, 2}, {2, 3}}) {
        Params par = params_qrP(q, r, "T");
        TorsionBasis tb = torsion_basis(par);
        for (int s = 1; s < r; ++s) {
            for (const auto& m : enumerate_subspaces(r, s, *par.P)) {
                TwistedPoly<TElem> f = kernel_polynomial(m, tb.gn, *par.P);
                TwistedPoly<TElem> fbar = tb.sigma(f);
                bool separable = !fbar[0].is_zero();
                bool case2 = m.pivots[s - 1] == r - 1;
                CHECK(separable == !case2);
            }
        }
    }
}

TEST_CASE("case-2 isogenies factor through Frobenius") {
    Params par = params_qrP(2, 3, "T");
    TorsionBasis tb = torsion_basis(par);
    Isogeny F = frobenius_isogeny(tb.gn, *par.P);
    for (int s = 1; s <= 2; ++s) {
        for (const auto& m : enumerate_subspaces(3, s, *par.P)) {
            if (m.pivots[s - 1] != 2) continue;  // case 1
            TwistedPoly<TElem> f = kernel_polynomial(m, tb.gn, *par.P);
            auto [quo, rem] = tw_div_right(f, F.f);
            CHECK(rem.is_zero());
            CHECK(quo.degree() == (s - 1) * par.dP);
            // the quotient is separable mod P
            if (quo.degree() > 0) CHECK_FALSE(tb.sigma(quo)[0].is_zero());
        }
    }
}

TEST_CASE("Frobenius isogeny") {
    for (auto [q, r, Pt] : {std::tuple<long, int, const char*>{2, 2, "T"},
                            {3, 2, "T"},
                            {2, 3, "T"}}) {
        Params par = params_qrP(q, r, Pt);
        TorsionBasis tb = torsion_basis(par);
        Isogeny F = frobenius_isogeny(tb.gn, *par.P);
        CHECK(F.f.degree() == par.dP);
        CHECK(F.f.is_monic());
        SECTION("F = tau^deg(P) mod P for q=" + std::to_string(q) + " r=" + std::to_string(r)) {
            TwistedPoly<TElem> Fbar = tb.sigma(F.f);
            for (int i = 0; i < par.dP; ++i) CHECK(Fbar[i].is_zero());
            CHECK(Fbar[par.dP].is_one());
        }
        SECTION("codomain reduces to the |P|-power module, q=" + std::to_string(q) +
                " r=" + std::to_string(r)) {
            for (int i = 1; i < par.r; ++i) {
                MPoly gi = parse_poly(par.Bred, "g" + std::to_string(i));
                CHECK(tb.sigma(F.codomain.phiT[i]) == tb.rd.tower->from_base(gi.pow(par.absP)));
            }
        }
        SECTION("independent of the choice of the vanishing multiple, q=" + std::to_string(q) +
                " r=" + std::to_string(r)) {
            for (long ai = 1; ai < par.P->size(); ++ai) {
                PrimeCtx::Elem a = par.P->element(ai);
                TElem w = tb.gn.multiples[par.r - 1][par.P->index_of(a)];
                Isogeny F2 = frobenius_isogeny(tb.gn, *par.P, &w);
                CHECK(F2.f == F.f);
            }
        }
    }
}

TEST_CASE("Frobenius on the degree-2 prime") {
    Params par = params_qrP(2, 2, "T^2+T+1");
    TorsionBasis tb = torsion_basis(par);
    Isogeny F = frobenius_isogeny(tb.gn, *par.P);
    CHECK(F.f.degree() == 2);
    TwistedPoly<TElem> Fbar = tb.sigma(F.f);
    CHECK(Fbar[0].is_zero());
    CHECK(Fbar[1].is_zero());
    CHECK(Fbar[2].is_one());
    MPoly g1 = parse_poly(par.Bred, "g1");
    CHECK(tb.sigma(F.codomain.phiT[1]) == tb.rd.tower->from_base(g1.pow(4)));
}
