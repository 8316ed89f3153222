#ifndef DRINFELD_TORSION_HPP
#define DRINFELD_TORSION_HPP

#include <memory>
#include <string>
#include <vector>

#include "module.hpp"
#include "tower.hpp"

namespace drinfeld {

inline TwistedPoly<TElem> embed_twisted(const TwistedPoly<MPoly>& f, const Tower& t) {
    TwistedPoly<TElem> out(t.zero(0));
    for (int i = 0; i <= f.degree(); ++i)
        if (!f[i].is_zero()) out.set_coeff(i, t.from_base(f[i]));
    return out;
}

inline UPoly<TElem> embed_upoly(const UPoly<MPoly>& f, const Tower& t) {
    UPoly<TElem> out(t.zero(0));
    for (int i = 0; i <= f.degree(); ++i)
        if (!f[i].is_zero()) out.set_coeff(i, t.from_base(f[i]));
    return out;
}

/// One side of the mod-P correspondence: a module, the tower its P-torsion
/// generates, the free torsion generators, and the cached F_P-multiples
/// phi_a(w_j) in PrimeCtx enumeration order.
struct TorsionSide {
    std::shared_ptr<const Tower> tower;
    Module<MPoly> phi{0, TwistedPoly<MPoly>(MPoly())};
    TwistedPoly<MPoly> phiP{MPoly()};
    std::vector<FFElem> Pcoeffs;  // P over this side's coefficient field
    std::vector<TElem> gens;
    std::vector<std::vector<TElem>> multiples;  // [gen][element index of F_P]
    int rank = 0;

    TwistedPoly<TElem> phiT_tower() const { return embed_twisted(phi.phiT, *tower); }

    /// phi_a(x) for an A-polynomial a with coefficients in this side's field
    TElem phi_eval(const std::vector<FFElem>& a, const TElem& x) const {
        TwistedPoly<MPoly> fa = phi_a(phi, a);
        return additive_eval(embed_twisted(fa, *tower), x);
    }

    /// the point sum_j phi_{a_j}(w_j) indexed by an odometer over F_P^rank
    TElem point(const std::vector<long>& idx) const {
        TElem acc = tower->zero(0);
        for (size_t j = 0; j < gens.size(); ++j) acc = acc + multiples[j][idx[j]];
        return acc;
    }

    std::vector<TElem> all_points(const PrimeCtx& P) const {
        std::vector<TElem> pts;
        std::vector<long> idx(gens.size(), 0);
        while (true) {
            pts.push_back(point(idx));
            size_t pos = 0;
            while (pos < idx.size() && idx[pos] + 1 == P.size()) idx[pos++] = 0;
            if (pos == idx.size()) break;
            ++idx[pos];
        }
        return pts;
    }
};

/// P-torsion of the generic module together with its tracked reduction
/// modulo the pinned prime above P: parallel towers, the images sigma(w_j),
/// and the convention that the last generator is the one that vanishes.
class TorsionBasis {
   public:
    Params par;
    TorsionSide gn;               // generic side over B
    TorsionSide rd;               // reduced side over B (tensor) F_P
    std::vector<TElem> images;    // sigma(w_1..w_r) in rd.tower; last is zero

    /// reduce an element of the generic base ring (T -> t0, constants embedded)
    MPoly reduce_base(const MPoly& f) const {
        FieldEmbed emb(*par.B->F, *par.Bred->F);
        std::vector<MPoly::Term> out;
        const PolyRing& R = f.ring();
        for (const MPoly::Term& t : f.terms()) {
            int eT = detail::exp_get(t.e, R.t_index);
            FFElem c = emb(FFElem(*R.F, t.c)) * par.t0.pow(eT);
            if (c.is_zero()) continue;
            std::uint64_t e = 0;
            int gi = 0;
            for (int j = 0; j < R.nvars(); ++j) {
                if (j == R.t_index) continue;
                e = detail::exp_set(e, gi++, detail::exp_get(t.e, j));
            }
            out.push_back({e, c.value()});
        }
        return MPoly::from_terms(par.Bred, std::move(out));
    }

    RatFunc reduce_base(const RatFunc& f) const {
        MPoly dn = reduce_base(f.den());
        if (dn.is_zero()) throw InternalError("denominator not P-integral");
        return RatFunc(reduce_base(f.num()), std::move(dn));
    }

    /// sigma: the reduction map R_P -> reduced tower on explicit elements
    TElem sigma(const TElem& x) const {
        if (x.level() == 0) return rd.tower->from_base(reduce_base(x.base()));
        TElem acc = rd.tower->zero(0);
        const TElem& im = images[x.level() - 1];
        for (int i = static_cast<int>(x.up().size()) - 1; i >= 0; --i)
            acc = acc * im + sigma(x.up()[i]);
        return acc;
    }

    TwistedPoly<TElem> sigma(const TwistedPoly<TElem>& f) const {
        TwistedPoly<TElem> out(rd.tower->zero(0));
        for (int i = 0; i <= f.degree(); ++i)
            if (!f[i].is_zero()) out.set_coeff(i, sigma(f[i]));
        return out;
    }

    UPoly<TElem> sigma(const UPoly<TElem>& f) const {
        UPoly<TElem> out(rd.tower->zero(0));
        for (int i = 0; i <= f.degree(); ++i)
            if (!f[i].is_zero()) out.set_coeff(i, sigma(f[i]));
        return out;
    }

    std::string describe() const;
};

namespace detail_torsion {

/// balanced product of (X - v) over the given points
inline UPoly<TElem> root_product(const Tower& t, const std::vector<TElem>& pts) {
    std::vector<UPoly<TElem>> fs;
    TElem one = t.one(0);
    for (const TElem& v : pts) fs.emplace_back(t.zero(0), std::vector<TElem>{-v, one});
    if (fs.empty()) return UPoly<TElem>(t.zero(0), {one});
    while (fs.size() > 1) {
        std::vector<UPoly<TElem>> nxt;
        for (size_t i = 0; i + 1 < fs.size(); i += 2) nxt.push_back(fs[i] * fs[i + 1]);
        if (fs.size() % 2) nxt.push_back(fs.back());
        fs = std::move(nxt);
    }
    return fs[0];
}

inline void rebase_all(std::vector<TElem>& xs, const Tower* t) {
    for (TElem& x : xs) x = x.rebased(t);
}

/// cache phi_a(w_j) for every a in F_P
inline void fill_multiples(TorsionSide& side, const PrimeCtx& P) {
    side.multiples.assign(side.gens.size(), {});
    for (size_t j = 0; j < side.gens.size(); ++j) {
        side.multiples[j].reserve(P.size());
        for (long ai = 0; ai < P.size(); ++ai) {
            PrimeCtx::Elem a = P.element(ai);
            std::vector<FFElem> lift;
            if (side.phi.phiT.zero_elem().ring_ptr()->F == &P.field()) {
                lift = a;
            } else {
                FieldEmbed emb(P.field(), *side.phi.phiT.zero_elem().ring_ptr()->F);
                for (const FFElem& c : a) lift.push_back(emb(c));
            }
            side.multiples[j].push_back(side.phi_eval(lift, side.gens[j]));
        }
    }
}

}  // namespace detail_torsion

/// Build the generic P-torsion: iterated adjunction of roots of phi_P(X),
/// dividing out the A-span of the roots found so far before each step.
inline void build_generic_side(TorsionSide& side, const Params& par, const Module<MPoly>& phi) {
    side.phi = phi;
    side.Pcoeffs = par.P->modulus();
    side.phiP = phi_a(side.phi, side.Pcoeffs);
    side.rank = par.r;
    UPoly<MPoly> phiPX = to_additive(side.phiP, par.q);
    std::shared_ptr<const Tower> tw = Tower::make_base(par.B);
    side.tower = tw;
    side.gens.clear();
    for (int k = 1; k <= par.r; ++k) {
        detail_torsion::fill_multiples(side, *par.P);
        std::vector<TElem> span = side.all_points(*par.P);
        UPoly<TElem> spanpoly = detail_torsion::root_product(*tw, span);
        auto [mk, rem] = embed_upoly(phiPX, *tw).divrem_monic(spanpoly);
        if (!rem.is_zero()) throw InternalError("span does not divide phi_P(X)");
        auto [tw2, w] = adjoin_root(tw, mk, {}, "w" + std::to_string(k));
        tw = tw2;
        side.tower = tw;
        detail_torsion::rebase_all(side.gens, tw.get());
        side.gens.push_back(w);
    }
    detail_torsion::fill_multiples(side, *par.P);
}

/// Build the reduced side and the reduction images level by level.  The
/// reduced minimal polynomial of each level is stripped of the roots already
/// committed; the remaining factor R satisfies R(X) = S(X^{p^t}) with S
/// separable, and the tower adjoins a root of S followed by the purely
/// inseparable step.  The last generator must strip completely and maps to 0.
inline void build_reduced_side(TorsionBasis& tb) {
    const Params& par = tb.par;
    TorsionSide& rd = tb.rd;
    // the reduction of the generic-side module, coefficient by coefficient
    {
        std::vector<MPoly> c;
        for (int i = 0; i <= tb.gn.phi.phiT.degree(); ++i) c.push_back(tb.reduce_base(tb.gn.phi.phiT[i]));
        rd.phi = Module<MPoly>{tb.gn.phi.r, TwistedPoly<MPoly>(MPoly::zero(par.Bred), std::move(c))};
    }
    FieldEmbed emb(par.P->field(), *par.Bred->F);
    rd.Pcoeffs.clear();
    for (const FFElem& c : par.P->modulus()) rd.Pcoeffs.push_back(emb(c));
    rd.phiP = phi_a(rd.phi, rd.Pcoeffs);
    rd.rank = par.r - 1;
    std::shared_ptr<const Tower> rt = Tower::make_base(par.Bred);
    rd.tower = rt;
    rd.gens.clear();
    tb.images.clear();
    int p = par.B->F->characteristic();

    for (int k = 1; k <= par.r; ++k) {
        UPoly<TElem> mbar = tb.sigma(tb.gn.tower->level_minpoly(k));
        UPoly<TElem> orig = mbar;
        // strip every committed span point with multiplicity
        detail_torsion::fill_multiples(rd, *par.P);
        std::vector<TElem> span = rd.all_points(*par.P);
        TElem one = rt->one(0);
        for (const TElem& v : span) {
            while (mbar.degree() >= 1) {
                UPoly<TElem> lin(rt->zero(0), {-v, one});
                auto [q2, rem] = mbar.divrem_monic(lin);
                if (!rem.is_zero()) break;
                mbar = std::move(q2);
            }
        }
        if (mbar.degree() == 0) {
            if (k != par.r)
                throw InternalError("torsion generator vanished before the last level");
            TElem zero = rt->zero(0);
            if (!orig.eval(zero).is_zero())
                throw InternalError("vanishing generator is not a root of its minimal polynomial");
            tb.images.push_back(zero);
            continue;
        }
        if (k == par.r) throw InternalError("failed to find a vanishing generator");
        // contract X -> X^(p^t)
        int t = 0;
        long pt = 1;
        while (true) {
            long pn = pt * p;
            bool divisible = true;
            for (int i = 0; i <= mbar.degree(); ++i)
                if (!mbar[i].is_zero() && i % pn != 0) {
                    divisible = false;
                    break;
                }
            if (!divisible) break;
            ++t;
            pt = pn;
        }
        UPoly<TElem> sep = mbar.deflate(static_cast<int>(pt));
        TElem ytilde = rt->zero(0);
        if (sep.degree() >= 2) {
            rt = rt->extended(sep, "y" + std::to_string(k));
            rd.tower = rt;
            detail_torsion::rebase_all(rd.gens, rt.get());
            detail_torsion::rebase_all(tb.images, rt.get());
            ytilde = rt->gen(rt->num_levels());
        } else {
            ytilde = -sep[0];
        }
        TElem w = ytilde;
        if (t > 0) {
            UPoly<TElem> insep(rt->zero(0), std::vector<TElem>(static_cast<size_t>(pt) + 1, rt->zero(0)));
            insep.set_coeff(0, -ytilde);
            insep.set_coeff(static_cast<int>(pt), rt->one(0));
            rt = rt->extended(insep, "w" + std::to_string(k) + "r");
            rd.tower = rt;
            detail_torsion::rebase_all(rd.gens, rt.get());
            detail_torsion::rebase_all(tb.images, rt.get());
            w = rt->gen(rt->num_levels());
        }
        {
            UPoly<TElem> check = tb.sigma(tb.gn.tower->level_minpoly(k));
            if (!check.eval(w).is_zero())
                throw InternalError("reduced image is not a root of the reduced minimal polynomial");
        }
        tb.images.push_back(w);
        rd.gens.push_back(w);
    }
    detail_torsion::fill_multiples(rd, *par.P);
}

/// Construct the full torsion basis with its tracked reduction.  The build
/// path divides only by monic polynomials, so SplitDetected cannot fire
/// here; if it ever does, the adjoined factors contradict the construction
/// and the failure is an internal inconsistency, not a recoverable split.
inline TorsionBasis torsion_basis_of(const Params& par, const Module<MPoly>& phi) {
    TorsionBasis tb;
    tb.par = par;
    try {
        build_generic_side(tb.gn, par, phi);
        build_reduced_side(tb);
    } catch (const SplitDetected& s) {
        throw InternalError("unexpected zero divisor at tower level " + std::to_string(s.level) +
                            " during torsion construction");
    }
    return tb;
}

inline TorsionBasis torsion_basis(const Params& par) { return torsion_basis_of(par, generic_module(par)); }

inline std::string TorsionBasis::describe() const {
    std::ostringstream os;
    os << "torsion tower (generic side)\n" << gn.tower->describe();
    os << "generators:\n";
    for (size_t j = 0; j < gn.gens.size(); ++j)
        os << "  w" << (j + 1) << " = " << gn.gens[j].str() << "\n";
    os << "reduced tower (mod P, T -> " << par.Bred->F->elem_str(par.t0.value()) << ")\n"
       << rd.tower->describe();
    os << "reduced images:\n";
    for (size_t j = 0; j < images.size(); ++j)
        os << "  w" << (j + 1) << " -> " << images[j].str() << "\n";
    return os.str();
}

}  // namespace drinfeld

#endif
