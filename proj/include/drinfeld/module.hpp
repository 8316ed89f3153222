#ifndef DRINFELD_MODULE_HPP
#define DRINFELD_MODULE_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "prime.hpp"
#include "ratfunc.hpp"
#include "twisted.hpp"

namespace drinfeld {

/// Everything fixed by a choice of (q, r, P): the generic coefficient ring
/// B = F_{q^r}[T, g1..g_{r-1}], the residue field F_P, and the reduced
/// coefficient ring F_{q^m}[g1..g_{r-1}] with m = lcm(r, deg P).  Reduction
/// mod P lands in the component of B (tensor) F_P cut out by the pinned root
/// t0 of P in F_{q^m} (the "chosen prime above P").
struct Params {
    long q = 2;
    int r = 2;
    std::shared_ptr<const PolyRing> B;
    std::shared_ptr<const PrimeCtx> P;
    int dP = 1;
    long absP = 2;  // |P| = q^deg P

    int m = 2;  // lcm(r, dP)
    std::shared_ptr<const PolyRing> Bred;
    FFElem t0;  // image of T in F_{q^m}
};

inline Params make_params(long q, int r, const std::vector<FFElem>& Pcoeffs) {
    Params par;
    par.q = q;
    par.r = r;
    par.B = make_base_ring(q, r);
    par.P = std::make_shared<PrimeCtx>(Pcoeffs, *par.B->F, q);
    par.dP = par.P->deg();
    par.absP = par.P->size();
    int m = r;
    while (m % par.dP != 0) m += r;
    par.m = m;
    par.Bred = make_reduced_ring(q, r, m);
    // t0: least root of P in F_{q^m}
    FieldEmbed emb(*par.B->F, *par.Bred->F);
    std::vector<FFElem> Pm;
    for (const FFElem& c : Pcoeffs) Pm.push_back(emb(c));
    const FieldCtx& Fm = *par.Bred->F;
    int root = -1;
    for (int v = 0; v < Fm.size(); ++v) {
        FFElem acc(Fm, 0);
        for (int i = static_cast<int>(Pm.size()) - 1; i >= 0; --i) acc = acc * FFElem(Fm, v) + Pm[i];
        if (acc.is_zero()) {
            root = v;
            break;
        }
    }
    if (root < 0) throw InternalError("P has no root in F_{q^m}");
    par.t0 = FFElem(Fm, root);
    return par;
}

/// parse "T^2+T+1"-free helper: build P from subfield coefficient encodings
inline std::vector<FFElem> prime_from_ints(const std::shared_ptr<const PolyRing>& B,
                                           const std::vector<int>& coeffs) {
    std::vector<FFElem> P;
    for (int c : coeffs) P.push_back(FFElem(*B->F, c));
    return P;
}

/// A Drinfeld module is determined by phi_T; coefficients live in any ring
/// element type E with the twisted-polynomial interface.
template <class E>
struct Module {
    int r;
    TwistedPoly<E> phiT;
};

/// the monic generic module phi_T = T + g1 t + ... + g_{r-1} t^{r-1} + t^r
inline Module<MPoly> generic_module(const Params& par) {
    std::vector<MPoly> c;
    c.push_back(MPoly::variable_named(par.B, "T"));
    for (int i = 1; i < par.r; ++i) c.push_back(MPoly::variable_named(par.B, "g" + std::to_string(i)));
    c.push_back(MPoly::constant_int(par.B, 1));
    return {par.r, TwistedPoly<MPoly>(MPoly::zero(par.B), std::move(c))};
}

/// mod-P reduction of the generic module: T |-> t0 over the reduced ring
inline Module<MPoly> reduced_module(const Params& par) {
    std::vector<MPoly> c;
    c.push_back(MPoly::constant(par.Bred, par.t0));
    for (int i = 1; i < par.r; ++i) c.push_back(MPoly::variable_named(par.Bred, "g" + std::to_string(i)));
    c.push_back(MPoly::constant_int(par.Bred, 1));
    return {par.r, TwistedPoly<MPoly>(MPoly::zero(par.Bred), std::move(c))};
}

/// phi_a for a in A = F_q[T], by Horner in the twisted ring
template <class E, class EmbedFn>
inline TwistedPoly<E> phi_action(const Module<E>& phi, const std::vector<FFElem>& a, EmbedFn embed) {
    TwistedPoly<E> acc(phi.phiT.zero_elem());
    for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k) {
        acc = acc * phi.phiT;
        if (!a[k].is_zero()) {
            E c = embed(a[k]);
            acc.set_coeff(0, acc[0] + c);
        }
    }
    return acc;
}

inline TwistedPoly<MPoly> phi_a(const Module<MPoly>& phi, const std::vector<FFElem>& a) {
    auto R = phi.phiT.zero_elem().ring_ptr();
    return phi_action(phi, a, [&](const FFElem& c) { return MPoly::constant(R, c); });
}

/// number of leading tau-factors of phi_P in characteristic P, divided by deg P
inline int height(const Module<MPoly>& phibar, const Params& par) {
    // lift P's coefficients into the reduced field
    FieldEmbed emb(*par.B->F, *par.Bred->F);
    std::vector<FFElem> a;
    for (const FFElem& c : par.P->modulus()) a.push_back(emb(c));
    TwistedPoly<MPoly> phiP = phi_a(phibar, a);
    if (phiP.is_zero()) throw InternalError("phi_P vanished");
    int t = 0;
    while (phiP[t].is_zero()) ++t;
    if (t % par.dP != 0) throw InternalError("tau-valuation of phi_P not a multiple of deg P");
    return t / par.dP;
}

/// ----- invariants -----

/// minimal generators of { e in N^{r-1} : sum e_i (q^i - 1) = 0 mod q^r - 1 }
inline std::vector<std::vector<int>> invariant_monoid_basis(long q, int r) {
    if (r < 2) throw BadInput("rank must be >= 2");
    int n = r - 1;
    long mod = 1;
    for (int i = 0; i < r; ++i) mod *= q;
    mod -= 1;
    std::vector<long> w(n);
    long qi = 1;
    for (int i = 0; i < n; ++i) {
        qi *= q;
        w[i] = qi - 1;
    }
    int bound = static_cast<int>(mod);
    // enumerate solutions in the box, by total degree then lex
    std::vector<std::vector<int>> sols;
    std::vector<int> e(n, 0);
    while (true) {
        long s = 0;
        for (int i = 0; i < n; ++i) s += e[i] * w[i];
        bool zero = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        if (!zero && s % mod == 0) sols.push_back(e);
        int pos = n - 1;
        while (pos >= 0 && e[pos] == bound) e[pos--] = 0;
        if (pos < 0) break;
        ++e[pos];
    }
    std::sort(sols.begin(), sols.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        long ta = 0, tb = 0;
        for (int x : a) ta += x;
        for (int x : b) tb += x;
        if (ta != tb) return ta < tb;
        return a < b;
    });
    std::vector<std::vector<int>> gens;
    for (const auto& cand : sols) {
        bool decomposable = false;
        for (const auto& g : gens) {
            bool le = true, eq = true;
            for (int i = 0; i < n; ++i) {
                if (g[i] > cand[i]) le = false;
                if (g[i] != cand[i]) eq = false;
            }
            if (le && !eq) {
                decomposable = true;  // cand - g is a nonzero solution
                break;
            }
        }
        if (!decomposable) gens.push_back(cand);
    }
    std::sort(gens.begin(), gens.end());
    return gens;
}

/// the invariant monomial g^e as an element of a ring with g-variables
inline MPoly invariant_monomial(const std::shared_ptr<const PolyRing>& R, const std::vector<int>& e) {
    MPoly f = MPoly::constant_int(R, 1);
    for (size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        f *= MPoly::variable_named(R, "g" + std::to_string(i + 1), e[i]);
    }
    return f;
}

/// J(psi): substitute the module's coefficient tuple for (g_1, ..., g_{r-1});
/// T evaluates to the ambient T (rational tuples) and constants embed.
inline RatFunc eval_invariant(const MPoly& J, const std::vector<RatFunc>& tuple) {
    const PolyRing& R = J.ring();
    if (static_cast<int>(tuple.size()) != R.nvars() - (R.t_index >= 0 ? 1 : 0))
        throw BadInput("coefficient tuple has wrong rank");
    std::vector<RatFunc> xs;
    int gi = 0;
    for (int j = 0; j < R.nvars(); ++j) {
        if (j == R.t_index)
            xs.push_back(RatFunc(MPoly::variable(J.ring_ptr(), j)));
        else
            xs.push_back(tuple[gi++]);
    }
    RatFunc one = RatFunc::one(J.ring_ptr());
    return J.eval<RatFunc>(xs, one, [&](const FFElem& c) {
        return RatFunc(MPoly::constant(J.ring_ptr(), c));
    });
}

/// ----- isomorphism testing -----

/// psi ~ psi~ iff some root of unity lambda satisfies lambda^(q^i-1) a_i = b_i.
/// With `closure` the scaling may come from all of F_{q^r}^*; without it,
/// lambda is restricted to the subfield generated by the tuples' constants.
inline std::optional<FFElem> find_isomorphism(const std::vector<RatFunc>& a,
                                              const std::vector<RatFunc>& b, const Params& par,
                                              bool closure = true) {
    if (a.size() != b.size()) throw BadInput("rank mismatch");
    const FieldCtx& F = *par.B->F;
    int p = F.characteristic();
    long allowed = F.size();
    if (!closure) {
        // smallest p^k containing every coefficient of every entry
        int k = 1;
        auto absorb = [&](const MPoly& f) {
            for (const auto& t : f.terms()) {
                int d = 1;
                while (true) {
                    long long pd = 1;
                    for (int i = 0; i < d; ++i) pd *= p;
                    if (F.pow(t.c, pd) == t.c) break;
                    ++d;
                }
                k = std::lcm(k, d);
            }
        };
        for (const auto& x : a) {
            absorb(x.num());
            absorb(x.den());
        }
        for (const auto& x : b) {
            absorb(x.num());
            absorb(x.den());
        }
        allowed = 1;
        for (int i = 0; i < k; ++i) allowed *= p;
    }
    for (int v = 1; v < F.size(); ++v) {
        if (!F.in_subfield(v, allowed)) continue;
        FFElem lam(F, v);
        bool ok = true;
        long qi = 1;
        for (size_t i = 0; i + 1 <= a.size() && ok; ++i) {
            qi *= par.q;
            FFElem s = lam.pow(qi - 1);
            RatFunc lhs = RatFunc(a[i].num().scaled(s), a[i].den());
            if (lhs != b[i]) ok = false;
        }
        if (ok) return lam;
    }
    return std::nullopt;
}

inline bool is_isomorphic(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b,
                          const Params& par, bool closure = true) {
    return find_isomorphism(a, b, par, closure).has_value();
}

/// ----- distinguishing invariant -----

/// enumerate A = F_q[T] in degree-lex order (nonzero elements)
inline std::vector<FFElem> a_element(const Params& par, long index) {
    // index 0 -> first nonzero constant, then the rest by (degree, digits)
    const std::vector<FFElem> sub = subfield_elements(*par.B->F, par.q);
    long q = par.q;
    int deg = 0;
    long count = q - 1;  // polynomials of exact degree 0
    long base = 1;
    while (index >= count) {
        index -= count;
        ++deg;
        base *= q;
        count = base * (q - 1);
    }
    std::vector<FFElem> a(deg + 1, FFElem(*par.B->F, 0));
    long low = index % base;
    long lead = index / base;  // in [0, q-2]
    for (int i = 0; i < deg; ++i) {
        a[i] = sub[low % q];
        low /= q;
    }
    a[deg] = sub[1 + lead];
    return a;
}

inline MPoly a_poly_to_mpoly(const std::shared_ptr<const PolyRing>& R, const std::vector<FFElem>& a) {
    MPoly f = MPoly::zero(R);
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k].is_zero()) continue;
        f += MPoly::variable_named(R, "T", static_cast<int>(k)).scaled(a[k]);
    }
    return f;
}

inline bool invariant_separates(const MPoly& J, const std::vector<std::vector<RatFunc>>& S) {
    std::vector<RatFunc> vals;
    for (const auto& t : S) vals.push_back(eval_invariant(J, t));
    for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = i + 1; j < vals.size(); ++j)
            if (vals[i] == vals[j]) return false;
    return true;
}

/// A-linear combination of the given generators separating all members of S,
/// following the inductive proof: extend a J that distinguishes S minus one
/// module by J + a*J2 for successive a of increasing degree.
inline MPoly distinguishing_invariant(std::vector<std::vector<RatFunc>> S,
                                      const std::vector<MPoly>& G, const Params& par) {
    if (G.empty()) throw BadInput("no generators given");
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = i + 1; j < S.size(); ++j)
            if (is_isomorphic(S[i], S[j], par))
                throw BadInput("set contains an isomorphic pair");
    std::function<MPoly(size_t)> rec = [&](size_t n) -> MPoly {
        if (n <= 1) return G[0];
        std::vector<std::vector<RatFunc>> Sn(S.begin(), S.begin() + n);
        if (n == 2) {
            for (const MPoly& g : G)
                if (invariant_separates(g, Sn)) return g;
            throw InternalError("no generator separates a non-isomorphic pair");
        }
        MPoly J1 = rec(n - 1);  // separates S[0..n-2]
        if (invariant_separates(J1, Sn)) return J1;
        // J1 fails only on a single pair involving the new module
        const std::vector<RatFunc>& phi1 = S[n - 1];
        RatFunc v1 = eval_invariant(J1, phi1);
        int partner = -1;
        for (size_t i = 0; i + 1 < n; ++i)
            if (eval_invariant(J1, S[i]) == v1) partner = static_cast<int>(i);
        if (partner < 0) throw InternalError("collision vanished");
        MPoly J2 = G[0];
        bool found = false;
        for (const MPoly& g : G) {
            if (!invariant_separates(g, {S[partner], phi1})) continue;
            J2 = g;
            found = true;
            break;
        }
        if (!found) throw InternalError("no generator separates the colliding pair");
        long cap = static_cast<long>(S.size()) * static_cast<long>(S.size());
        for (long idx = 0;; ++idx) {
            std::vector<FFElem> a = a_element(par, idx);
            if (static_cast<int>(a.size()) - 1 > cap)
                throw InternalError("distinguishing search exceeded the degree cap");
            MPoly Ja = J1 + a_poly_to_mpoly(par.B, a) * J2;
            if (invariant_separates(Ja, Sn)) return Ja;
        }
    };
    return rec(S.size());
}

}  // namespace drinfeld

#endif
