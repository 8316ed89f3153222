#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "drinfeld/module.hpp"
#include "drinfeld/parse.hpp"

using namespace drinfeld;

namespace {
Params params_qrP(long q, int r, const std::string& Ptext) {
    auto B = make_base_ring(q, r);
    return make_params(q, r, parse_subfield_poly(*B->F, q, Ptext));
}
}  // namespace

TEST_CASE("generic module shape") {
    Params par = params_qrP(2, 3, "T");
    Module<MPoly> phi = generic_module(par);
    CHECK(phi.phiT.degree() == 3);
    CHECK(phi.phiT.is_monic());
    CHECK(phi.phiT[0] == parse_poly(par.B, "T"));
    CHECK(phi.phiT[1] == parse_poly(par.B, "g1"));
    CHECK(phi.phiT[2] == parse_poly(par.B, "g2"));
}

TEST_CASE("phi_a") {
    Params par = params_qrP(2, 2, "T");
    Module<MPoly> phi = generic_module(par);
    const FieldCtx& F = *par.B->F;
    SECTION("a = 1 gives 1") {
        auto f = phi_a(phi, {FFElem(F, 1)});
        CHECK(f.degree() == 0);
        CHECK(f[0].is_one());
    }
    SECTION("a = T gives phi_T") {
        auto f = phi_a(phi, {FFElem(F, 0), FFElem(F, 1)});
        CHECK(f == phi.phiT);
    }
    SECTION("a = T^2 equals phi_T * phi_T") {
        auto f = phi_a(phi, {FFElem(F, 0), FFElem(F, 0), FFElem(F, 1)});
        CHECK(f == phi.phiT * phi.phiT);
        CHECK(f.degree() == 4);
        CHECK(f.is_monic());
        CHECK(f[0] == parse_poly(par.B, "T^2"));
    }
}

TEST_CASE("phi is a ring homomorphism") {
    Params par = params_qrP(2, 2, "T");
    Module<MPoly> phi = generic_module(par);
    const FieldCtx& F = *par.B->F;
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> cd(0, 1);
    auto rnd_a = [&](int maxdeg) {
        std::vector<FFElem> a;
        for (int i = 0; i <= maxdeg; ++i) a.push_back(FFElem(F, cd(rng)));
        return a;
    };
    auto add_a = [&](std::vector<FFElem> x, const std::vector<FFElem>& y) {
        if (y.size() > x.size()) x.resize(y.size(), FFElem(F, 0));
        for (size_t i = 0; i < y.size(); ++i) x[i] = x[i] + y[i];
        return x;
    };
    auto mul_a = [&](const std::vector<FFElem>& x, const std::vector<FFElem>& y) {
        std::vector<FFElem> z(x.size() + y.size() - 1, FFElem(F, 0));
        for (size_t i = 0; i < x.size(); ++i)
            for (size_t j = 0; j < y.size(); ++j) z[i + j] = z[i + j] + x[i] * y[j];
        return z;
    };
    for (int i = 0; i < 100; ++i) {
        auto a = rnd_a(3), b = rnd_a(3);
        CHECK(phi_a(phi, add_a(a, b)) == phi_a(phi, a) + phi_a(phi, b));
        CHECK(phi_a(phi, mul_a(a, b)) == phi_a(phi, a) * phi_a(phi, b));
    }
}

TEST_CASE("invariant monoid basis") {
    SECTION("r = 2 gives q+1") {
        CHECK(invariant_monoid_basis(2, 2) == std::vector<std::vector<int>>{{3}});
        CHECK(invariant_monoid_basis(3, 2) == std::vector<std::vector<int>>{{4}});
        CHECK(invariant_monoid_basis(4, 2) == std::vector<std::vector<int>>{{5}});
    }
    SECTION("q=2, r=3 matches the four generators") {
        std::vector<std::vector<int>> expect{{0, 7}, {1, 2}, {4, 1}, {7, 0}};
        CHECK(invariant_monoid_basis(2, 3) == expect);
    }
    SECTION("defining congruence holds") {
        for (auto [q, r] : {std::pair<long, int>{2, 3}, {3, 3}, {2, 4}}) {
            long mod = 1;
            for (int i = 0; i < r; ++i) mod *= q;
            mod -= 1;
            for (const auto& e : invariant_monoid_basis(q, r)) {
                long s = 0, qi = 1;
                for (size_t i = 0; i < e.size(); ++i) {
                    qi *= q;
                    s += e[i] * (qi - 1);
                }
                CHECK(s % mod == 0);
            }
        }
    }
    SECTION("minimality: no generator is a sum of two nonzero solutions") {
        for (auto [q, r] : {std::pair<long, int>{2, 3}, {3, 3}}) {
            auto gens = invariant_monoid_basis(q, r);
            long mod = 1;
            for (int i = 0; i < r; ++i) mod *= q;
            mod -= 1;
            auto in_monoid = [&](const std::vector<int>& e) {
                long s = 0, qi = 1;
                bool nz = false;
                for (size_t i = 0; i < e.size(); ++i) {
                    qi *= q;
                    s += e[i] * (qi - 1);
                    nz |= e[i] > 0;
                }
                return nz && s % mod == 0;
            };
            for (const auto& g : gens) {
                // exhaustive split search
                std::vector<int> a(g.size(), 0);
                bool decomposable = false;
                while (true) {
                    bool all = true;
                    for (size_t i = 0; i < g.size(); ++i)
                        if (a[i] < g[i]) all = false;
                    std::vector<int> b(g.size());
                    for (size_t i = 0; i < g.size(); ++i) b[i] = g[i] - a[i];
                    if (in_monoid(a) && in_monoid(b)) decomposable = true;
                    if (all) break;
                    int pos = static_cast<int>(g.size()) - 1;
                    while (pos >= 0 && a[pos] == g[pos]) a[pos--] = 0;
                    if (pos < 0) break;
                    ++a[pos];
                }
                CHECK_FALSE(decomposable);
            }
        }
    }
}

TEST_CASE("eval_invariant") {
    Params par = params_qrP(2, 3, "T");
    auto B = par.B;
    MPoly J12 = parse_poly(B, "g1*g2^2");
    SECTION("identity substitution") {
        std::vector<RatFunc> generic{RatFunc(parse_poly(B, "g1")), RatFunc(parse_poly(B, "g2"))};
        CHECK(eval_invariant(J12, generic) == RatFunc(J12));
    }
    SECTION("zero coefficient kills J12") {
        std::vector<RatFunc> t{RatFunc::zero(B), RatFunc(parse_poly(B, "T+1"))};
        CHECK(eval_invariant(J12, t).is_zero());
    }
    SECTION("J70 on (1,1) is 1") {
        MPoly J70 = parse_poly(B, "g1^7");
        std::vector<RatFunc> t{RatFunc::one(B), RatFunc::one(B)};
        CHECK(eval_invariant(J70, t).is_one());
    }
}

TEST_CASE("is_isomorphic") {
    Params par = params_qrP(2, 2, "T");
    auto B = par.B;
    auto tup = [&](const std::string& s) { return std::vector<RatFunc>{RatFunc(parse_poly(B, s))}; };
    CHECK(is_isomorphic(tup("T^2+1"), tup("T^2+1"), par));
    SECTION("lambda in F_4 - F_2 exists over the closure") {
        std::vector<RatFunc> a = tup("1"), b = tup("u");
        CHECK(is_isomorphic(a, b, par, true));
        auto lam = find_isomorphism(a, b, par, true);
        REQUIRE(lam.has_value());
        CHECK(*lam == FFElem(*B->F, B->F->gen()));
    }
    SECTION("q=3: lambda^2 = -1 needs the closure") {
        Params p9 = params_qrP(3, 2, "T");
        auto B9 = p9.B;
        std::vector<RatFunc> a{RatFunc(parse_poly(B9, "1"))};
        std::vector<RatFunc> b{RatFunc(parse_poly(B9, "2"))};
        CHECK(is_isomorphic(a, b, p9, true));
        CHECK_FALSE(is_isomorphic(a, b, p9, false));
    }
    SECTION("0 is only isomorphic to 0") {
        CHECK_FALSE(is_isomorphic(tup("0"), tup("1"), par));
        CHECK(is_isomorphic(tup("0"), tup("0"), par));
    }
    SECTION("rank 3: scaling weights differ per coefficient") {
        Params p3 = params_qrP(2, 3, "T");
        auto B3 = p3.B;
        const FieldCtx& F8 = *B3->F;
        FFElem lam(F8, F8.gen());
        std::vector<RatFunc> a{RatFunc(parse_poly(B3, "T")), RatFunc(parse_poly(B3, "T+1"))};
        std::vector<RatFunc> b{RatFunc(parse_poly(B3, "T").scaled(lam.pow(1))),
                               RatFunc(parse_poly(B3, "T+1").scaled(lam.pow(3)))};
        CHECK(is_isomorphic(a, b, p3, true));
        // mismatched weights are not a twist
        std::vector<RatFunc> c{RatFunc(parse_poly(B3, "T").scaled(lam)),
                               RatFunc(parse_poly(B3, "T+1").scaled(lam))};
        CHECK_FALSE(is_isomorphic(a, c, p3, true));
    }
}

TEST_CASE("distinguishing invariant") {
    Params par = params_qrP(2, 3, "T");
    auto B = par.B;
    std::vector<MPoly> G;
    for (const auto& e : invariant_monoid_basis(2, 3)) G.push_back(invariant_monomial(B, e));
    auto tup = [&](const std::string& a1, const std::string& a2) {
        return std::vector<RatFunc>{RatFunc(parse_poly(B, a1)), RatFunc(parse_poly(B, a2))};
    };
    SECTION("single module: any generator works") {
        std::vector<std::vector<RatFunc>> S{tup("T", "1")};
        CHECK(distinguishing_invariant(S, G, par) == G[0]);
    }
    SECTION("pair differing in J12") {
        std::vector<std::vector<RatFunc>> S{tup("1", "1"), tup("1", "T")};
        MPoly J = distinguishing_invariant(S, G, par);
        CHECK(invariant_separates(J, S));
    }
    SECTION("isomorphic pair rejected") {
        std::vector<std::vector<RatFunc>> S{tup("T", "T"), tup("T", "T")};
        CHECK_THROWS_AS(distinguishing_invariant(S, G, par), BadInput);
    }
    SECTION("randomized sets separate post hoc") {
        std::mt19937 rng(53);
        std::uniform_int_distribution<int> cd(0, 1), dd(0, 2);
        auto rnd_tuple = [&]() {
            std::vector<RatFunc> t;
            for (int i = 0; i < 2; ++i) {
                MPoly f = MPoly::zero(B);
                int d = dd(rng);
                for (int k = 0; k <= d; ++k)
                    if (cd(rng)) f += parse_poly(B, "T").pow(k);
                t.push_back(RatFunc(f));
            }
            return t;
        };
        int done = 0;
        for (int trial = 0; trial < 300 && done < 100; ++trial) {
            std::vector<std::vector<RatFunc>> S;
            for (int i = 0; i < 5; ++i) {
                auto t = rnd_tuple();
                bool fresh = true;
                for (const auto& s : S)
                    if (is_isomorphic(s, t, par)) fresh = false;
                if (fresh) S.push_back(t);
            }
            if (S.size() < 2) continue;
            MPoly J = distinguishing_invariant(S, G, par);
            CHECK(invariant_separates(J, S));
            ++done;
        }
        CHECK(done == 100);
    }
}

TEST_CASE("height") {
    SECTION("reduced generic module has height 1") {
        for (auto [q, r] : {std::pair<long, int>{2, 2}, {2, 3}, {3, 2}}) {
            Params par = params_qrP(q, r, "T");
            CHECK(height(reduced_module(par), par) == 1);
        }
        Params par = params_qrP(2, 2, "T^2+T+1");
        CHECK(height(reduced_module(par), par) == 1);
    }
    SECTION("supersingular extreme: a_1 = 0 over characteristic T") {
        Params par = params_qrP(2, 2, "T");
        Module<MPoly> ss{2, TwistedPoly<MPoly>(MPoly::zero(par.Bred),
                                               {MPoly::zero(par.Bred), MPoly::zero(par.Bred),
                                                MPoly::constant_int(par.Bred, 1)})};
        CHECK(height(ss, par) == 2);
    }
}
