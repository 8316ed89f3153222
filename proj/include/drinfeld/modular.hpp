#ifndef DRINFELD_MODULAR_HPP
#define DRINFELD_MODULAR_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "isogeny.hpp"

namespace drinfeld {

/// J(phi^(f)) for a pushforward module over a tower
inline TElem eval_invariant_tower(const MPoly& J, const Module<TElem>& cod, const TorsionSide& side) {
    const PolyRing& R = J.ring();
    std::vector<TElem> xs;
    int gi = 0;
    for (int j = 0; j < R.nvars(); ++j) {
        if (j == R.t_index)
            xs.push_back(side.tower->from_base(MPoly::variable(J.ring_ptr(), j)));
        else {
            ++gi;
            xs.push_back(cod.phiT[gi]);
        }
    }
    TElem one = side.tower->one(0);
    return J.eval<TElem>(xs, one, [&](const FFElem& c) {
        return side.tower->from_base(MPoly::constant(J.ring_ptr(), c));
    });
}

/// collapse tower coefficients to the base polynomial ring
inline UPoly<MPoly> upoly_to_base(const UPoly<TElem>& f, const std::shared_ptr<const PolyRing>& R) {
    UPoly<MPoly> out(MPoly::zero(R));
    for (int i = 0; i <= f.degree(); ++i) {
        if (f[i].is_zero()) continue;
        std::optional<RatFunc> b = f[i].to_base();
        if (!b || !b->is_polynomial())
            throw CoefficientNotInB("coefficient of X^" + std::to_string(i) +
                                    " does not descend to the polynomial ring");
        out.set_coeff(i, b->num());
    }
    return out;
}

/// roots J(phi^(f_m)) over all type-s subspace matrices, enumeration order
inline std::vector<TElem> type_roots(const MPoly& J, int s, const TorsionSide& side,
                                     const PrimeCtx& P, int threads = 1) {
    std::vector<SubspaceMatrix> ms = enumerate_subspaces(side.rank, s, P);
    std::vector<TElem> roots(ms.size());
    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            Isogeny iso = isogeny_from_matrix(ms[i], side, P);
            roots[i] = eval_invariant_tower(J, iso.codomain, side);
        }
    };
    if (threads <= 1 || ms.size() <= 1) {
        work(0, ms.size());
    } else {
        size_t n = ms.size();
        size_t nt = std::min<size_t>(threads, n);
        std::vector<std::thread> pool;
        for (size_t t = 0; t < nt; ++t)
            pool.emplace_back(work, n * t / nt, n * (t + 1) / nt);
        for (auto& th : pool) th.join();
    }
    return roots;
}

inline UPoly<TElem> roots_to_poly(const std::vector<TElem>& roots, const Tower& t) {
    return detail_torsion::root_product(t, roots);
}

/// Monic modular polynomial with coefficients certified in B.
struct ModularPoly {
    MPoly J;
    int s = 0;
    bool full = false;
    UPoly<MPoly> poly;
    long expected_degree = 0;
    bool invariance_sweep = false;
    bool invariance_congruence = false;
    std::optional<bool> distinct_roots;
};

inline ModularPoly modular_poly(const TorsionBasis& tb, const MPoly& J, int s, int threads = 1,
                                bool check_distinct = false) {
    if (s < 0 || s > tb.par.r) throw BadInput("type dimension out of range");
    if (!is_invariant(J)) throw BadInput("J is not an invariant");
    std::vector<TElem> roots = type_roots(J, s, tb.gn, *tb.par.P, threads);
    UPoly<TElem> prod = roots_to_poly(roots, *tb.gn.tower);
    ModularPoly mp;
    mp.J = J;
    mp.s = s;
    mp.poly = upoly_to_base(prod, tb.par.B);
    mp.expected_degree = gaussian_binomial(tb.par.r, s, tb.par.absP);
    if (mp.poly.degree() != mp.expected_degree)
        throw InternalError("modular polynomial has the wrong degree");
    for (int i = 0; i <= mp.poly.degree(); ++i) {
        if (!is_invariant_congruence(mp.poly[i]))
            throw InvarianceFailed("coefficient of X^" + std::to_string(i) + " is not invariant");
    }
    mp.invariance_congruence = true;
    mp.invariance_sweep = true;
    for (int i = 0; i <= mp.poly.degree() && mp.invariance_sweep; ++i)
        if (!is_invariant_sweep(mp.poly[i])) mp.invariance_sweep = false;
    if (!mp.invariance_sweep) throw InvarianceFailed("lambda sweep failed");
    if (check_distinct) {
        bool distinct = true;
        for (size_t i = 0; i < roots.size() && distinct; ++i)
            for (size_t j = i + 1; j < roots.size() && distinct; ++j)
                if ((roots[i] - roots[j]).is_zero()) distinct = false;
        mp.distinct_roots = distinct;
    }
    return mp;
}

inline ModularPoly full_modular_poly(const TorsionBasis& tb, const MPoly& J, int threads = 1) {
    ModularPoly mp;
    mp.J = J;
    mp.full = true;
    mp.poly = UPoly<MPoly>(MPoly::zero(tb.par.B), {MPoly::constant_int(tb.par.B, 1)});
    mp.expected_degree = 0;
    for (int s = 0; s <= tb.par.r; ++s) {
        ModularPoly part = modular_poly(tb, J, s, threads);
        mp.poly = mp.poly * part.poly;
        mp.expected_degree += part.expected_degree;
    }
    if (mp.poly.degree() != mp.expected_degree)
        throw InternalError("full modular polynomial has the wrong degree");
    mp.invariance_congruence = mp.invariance_sweep = true;
    return mp;
}

/// roots of the special (mod-P separable) factor, computed directly on the
/// reduced side: subspaces of the reduced torsion F_P^(r-1)
inline std::vector<TElem> special_roots(const TorsionBasis& tb, const MPoly& Jred, int s,
                                        int threads = 1) {
    if (s < 0 || s > tb.par.r - 1) throw BadInput("special type dimension out of range");
    return type_roots(Jred, s, tb.rd, *tb.par.P, threads);
}

/// Phi^sep for an invariant already reduced mod P (typically J^|P|); the
/// coefficients must land in the reduced polynomial ring.
inline UPoly<MPoly> special_poly_mod_p(const TorsionBasis& tb, const MPoly& Jred, int s,
                                       int threads = 1) {
    std::vector<TElem> roots = special_roots(tb, Jred, s, threads);
    UPoly<TElem> prod = roots_to_poly(roots, *tb.rd.tower);
    UPoly<MPoly> out = upoly_to_base(prod, tb.par.Bred);
    long expect = gaussian_binomial(tb.par.r - 1, s, tb.par.absP);
    if (out.degree() != expect) throw InternalError("special polynomial has the wrong degree");
    return out;
}

/// Example-1 extraction: divide the reduced s=1 modular polynomial by
/// (X - J^|P|) and contract X^|P| -> X; the independent route to Phi^sep.
inline UPoly<MPoly> extract_sep_from_s1(const UPoly<MPoly>& phibar, const MPoly& Jred, long absP) {
    MPoly JP = Jred.pow(absP);
    UPoly<MPoly> lin(MPoly::zero(Jred.ring_ptr()), {-JP, MPoly::constant_int(Jred.ring_ptr(), 1)});
    auto [quo, rem] = phibar.divrem_monic(lin);
    if (!rem.is_zero()) throw BadInput("extraction: (X - J^|P|) does not divide the input");
    try {
        return quo.deflate(static_cast<int>(absP));
    } catch (const InternalError&) {
        throw BadInput("extraction: surviving exponent is not a multiple of |P|");
    }
}

/// Both Kronecker congruence forms for one (J, P, s), verified exactly.
struct CongruenceReport {
    long q;
    int r;
    int s;
    std::string P_str, J_str;
    UPoly<MPoly> phi_mod;        // Phi_{J,s} mod P, over the reduced ring
    UPoly<MPoly> factor_lower;   // Phi^sep_{J^|P|, s-1}
    UPoly<MPoly> sep_powered;    // Phi^sep_{J^|P|, s}
    UPoly<MPoly> rhs1, rhs2;
    UPoly<MPoly> residual1, residual2;
    bool pass1 = false, pass2 = false, coeffs_in_C = false;

    bool pass() const { return pass1 && pass2 && coeffs_in_C; }

    std::string str() const {
        std::ostringstream os;
        auto fmt = [](const MPoly& c) { return c.str(); };
        os << "kronecker congruence report\n";
        os << "q: " << q << "  r: " << r << "  P: " << P_str << "  s: " << s << "  J: " << J_str
           << "\n";
        os << "phi mod P: " << phi_mod.str("X", fmt) << "\n";
        os << "sep factor (s-1, J^|P|): " << factor_lower.str("X", fmt) << "\n";
        os << "sep factor (s, J^|P|): " << sep_powered.str("X", fmt) << "\n";
        os << "form 1 residual: " << residual1.str("X", fmt) << "\n";
        os << "form 1: " << (pass1 ? "PASS" : "FAIL") << "\n";
        os << "form 2 residual: " << residual2.str("X", fmt) << "\n";
        os << "form 2: " << (pass2 ? "PASS" : "FAIL") << "\n";
        os << "coefficients in C (tensor) F_P: " << (coeffs_in_C ? "OK" : "FAIL") << "\n";
        return os.str();
    }
};

/// reduce a modular polynomial mod P: T-degree reduction, then the pinned
/// component of B (tensor) F_P
inline UPoly<MPoly> reduce_modular(const TorsionBasis& tb, const UPoly<MPoly>& phi) {
    UPoly<MPoly> out(MPoly::zero(tb.par.Bred));
    for (int i = 0; i <= phi.degree(); ++i) {
        if (phi[i].is_zero()) continue;
        MPoly modded = mpoly_mod_prime(phi[i], tb.par.P->modulus());
        out.set_coeff(i, tb.reduce_base(modded));
    }
    return out;
}

/// verify both congruence forms against a supplied Phi (normally the one
/// just computed; tests may pass corrupted input to see a FAIL)
inline CongruenceReport kronecker_verify_given(const TorsionBasis& tb, const MPoly& J, int s,
                                               const UPoly<MPoly>& phi, int threads = 1) {
    if (s < 1 || s > tb.par.r - 1) throw BadInput("Kronecker congruences need 1 <= s <= r-1");
    const Params& par = tb.par;
    CongruenceReport rep;
    rep.q = par.q;
    rep.r = par.r;
    rep.s = s;
    rep.J_str = J.str();
    {
        std::ostringstream os;
        UPoly<FFElem> Pp(FFElem(*par.B->F, 0), par.P->modulus());
        os << Pp.str("T", [&](const FFElem& c) { return c.str(); });
        rep.P_str = os.str();
    }
    rep.phi_mod = reduce_modular(tb, phi);

    MPoly Jred = tb.reduce_base(J);
    long absP = par.absP;

    // A = Phi^sep_{J^|P|, s-1}; the s-1 = 0 convention is X - J^|P|
    if (s - 1 == 0) {
        rep.factor_lower = UPoly<MPoly>(MPoly::zero(par.Bred),
                                        {-Jred.pow(absP), MPoly::constant_int(par.Bred, 1)});
    } else {
        rep.factor_lower = special_poly_mod_p(tb, Jred.pow(absP), s - 1, threads);
    }

    // roots of Phi^sep_{J, s} as tower elements
    std::vector<TElem> roots = special_roots(tb, Jred, s, threads);

    // form 1: A * (prod (X - root))^(|P|^s)
    long pw = 1;
    for (int i = 0; i < s; ++i) pw *= absP;
    UPoly<TElem> prod = roots_to_poly(roots, *tb.rd.tower);
    UPoly<TElem> powered = prod.pow(pw, tb.rd.tower->one(0));
    UPoly<MPoly> form1_factor = upoly_to_base(powered, par.Bred);
    rep.rhs1 = rep.factor_lower * form1_factor;
    rep.residual1 = rep.phi_mod - rep.rhs1;
    rep.pass1 = rep.residual1.is_zero();

    // form 2: A * (Phi^sep_{J^|P|, s}(X^|P|))^(|P|^(s-1))
    std::vector<TElem> rootsP;
    for (const TElem& x : roots) rootsP.push_back(x.pow(absP));
    rep.sep_powered = upoly_to_base(roots_to_poly(rootsP, *tb.rd.tower), par.Bred);
    UPoly<MPoly> inflated = rep.sep_powered.inflate(static_cast<int>(absP));
    long pw2 = 1;
    for (int i = 0; i + 1 < s; ++i) pw2 *= absP;
    rep.rhs2 = rep.factor_lower * inflated.pow(pw2, MPoly::constant_int(par.Bred, 1));
    rep.residual2 = rep.phi_mod - rep.rhs2;
    rep.pass2 = rep.residual2.is_zero();

    rep.coeffs_in_C = true;
    for (int i = 0; i <= rep.sep_powered.degree(); ++i)
        if (!is_invariant_congruence(rep.sep_powered[i])) rep.coeffs_in_C = false;
    for (int i = 0; i <= rep.factor_lower.degree(); ++i)
        if (!is_invariant_congruence(rep.factor_lower[i])) rep.coeffs_in_C = false;
    return rep;
}

inline CongruenceReport kronecker_verify(const TorsionBasis& tb, const MPoly& J, int s,
                                         int threads = 1) {
    ModularPoly mp = modular_poly(tb, J, s, threads);
    return kronecker_verify_given(tb, J, s, mp.poly, threads);
}

/// ----- presentation in terms of the invariant-ring generators -----

struct JForm {
    std::vector<std::vector<int>> gens;          // exponent vectors of the generators
    std::map<std::vector<int>, MPoly> terms;     // generator exponents -> A-coefficient

    std::string gen_name(size_t k) const {
        std::string n = "J";
        bool small = true;
        for (int e : gens[k]) small &= e <= 9;
        if (small) {
            for (int e : gens[k]) n += static_cast<char>('0' + e);
        } else {
            n += "(";
            for (size_t i = 0; i < gens[k].size(); ++i)
                n += (i ? "," : "") + std::to_string(gens[k][i]);
            n += ")";
        }
        return n;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms) {
            if (!first) os << " + ";
            first = false;
            std::string cs = c.str();
            bool paren = cs.find('+') != std::string::npos;
            bool anyg = false;
            for (int x : e) anyg |= x > 0;
            bool star = false;
            if (!anyg) {
                os << (paren ? "(" + cs + ")" : cs);
                continue;
            }
            if (cs != "1") {
                os << (paren ? "(" + cs + ")" : cs);
                star = true;
            }
            for (size_t k = 0; k < e.size(); ++k) {
                if (!e[k]) continue;
                if (star) os << "*";
                star = true;
                os << gen_name(k);
                if (e[k] > 1) os << "^" << e[k];
            }
        }
        return os.str();
    }
};

/// greedy-with-backtracking factorization of each invariant monomial into
/// generator monomials; the round trip back to g-variables must reproduce
/// the input exactly (J-expressions are not unique, polynomials are).
inline JForm express_in_invariants(const MPoly& c, const std::vector<std::vector<int>>& gens) {
    if (!is_invariant_congruence(c)) throw BadInput("polynomial is not invariant");
    const PolyRing& R = c.ring();
    int ng = 0;
    for (int j = 0; j < R.nvars(); ++j)
        if (j != R.t_index) ++ng;
    JForm out;
    out.gens = gens;
    std::map<std::vector<int>, std::optional<std::vector<int>>> memo;
    std::function<std::optional<std::vector<int>>(std::vector<int>)> factor =
        [&](std::vector<int> e) -> std::optional<std::vector<int>> {
        bool zero = true;
        for (int x : e) zero &= x == 0;
        if (zero) return std::vector<int>(gens.size(), 0);
        auto it = memo.find(e);
        if (it != memo.end()) return it->second;
        memo[e] = std::nullopt;  // guard
        for (size_t k = 0; k < gens.size(); ++k) {
            bool fits = true;
            std::vector<int> rest = e;
            for (int i = 0; i < ng; ++i) {
                rest[i] -= gens[k][i];
                if (rest[i] < 0) fits = false;
            }
            if (!fits) continue;
            auto sub = factor(rest);
            if (sub) {
                std::vector<int> ex = *sub;
                ex[k] += 1;
                memo[e] = ex;
                return ex;
            }
        }
        return std::nullopt;
    };
    for (const MPoly::Term& t : c.terms()) {
        std::vector<int> e;
        int eT = 0;
        for (int j = 0; j < R.nvars(); ++j) {
            if (j == R.t_index)
                eT = detail::exp_get(t.e, j);
            else
                e.push_back(detail::exp_get(t.e, j));
        }
        auto fac = factor(e);
        if (!fac) throw InternalError("invariant monomial is not a product of the generators");
        MPoly coeff = R.t_index >= 0
                          ? MPoly::variable(c.ring_ptr(), R.t_index, eT).scaled(FFElem(*R.F, t.c))
                          : MPoly::constant(c.ring_ptr(), FFElem(*R.F, t.c));
        auto itm = out.terms.find(*fac);
        if (itm == out.terms.end())
            out.terms.emplace(*fac, coeff);
        else
            itm->second += coeff;
    }
    // round-trip check
    MPoly back = MPoly::zero(c.ring_ptr());
    for (const auto& [e, co] : out.terms) {
        MPoly m = co;
        for (size_t k = 0; k < gens.size(); ++k) {
            if (!e[k]) continue;
            MPoly gk = invariant_monomial(c.ring_ptr(), gens[k]);
            m *= gk.pow(e[k]);
        }
        back += m;
    }
    if (back != c) throw InternalError("J-form round trip failed");
    return out;
}

}  // namespace drinfeld

#endif
