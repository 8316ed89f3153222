#ifndef DRINFELD_ISOGENY_HPP
#define DRINFELD_ISOGENY_HPP

#include <string>
#include <vector>

#include "torsion.hpp"

namespace drinfeld {

/// s x r matrix over F_P in reduced row-echelon form with a leading 1 in
/// each row; rows form a basis of the kernel subspace it classifies.
struct SubspaceMatrix {
    int s = 0, r = 0;
    std::vector<int> pivots;              // pivot column per row, strictly increasing
    std::vector<PrimeCtx::Elem> entries;  // row-major, s*r

    const PrimeCtx::Elem& at(int i, int j) const { return entries[i * r + j]; }

    bool is_special() const {
        for (int i = 0; i < s; ++i)
            if (!zero_col(i)) return false;
        return true;
    }

    std::string str(const PrimeCtx& P) const {
        std::string out;
        for (int i = 0; i < s; ++i) {
            out += i ? "; " : "[";
            for (int j = 0; j < r; ++j) {
                if (j) out += ",";
                out += P.str(at(i, j));
            }
        }
        return out + "]";
    }

   private:
    bool zero_col(int i) const {
        for (const FFElem& c : entries[i * r + (r - 1)])
            if (!c.is_zero()) return false;
        return true;
    }
};

inline bool is_special(const SubspaceMatrix& m) { return m.is_special(); }

/// All RREF matrices classifying s-dimensional subspaces of F_P^r, in
/// deterministic order: pivot columns lexicographic, then the free entries
/// in lexicographic (odometer) order.
inline std::vector<SubspaceMatrix> enumerate_subspaces(int r, int s, const PrimeCtx& P) {
    if (s < 0 || s > r) throw BadInput("type dimension out of range");
    std::vector<SubspaceMatrix> out;
    if (s == 0) {
        out.push_back(SubspaceMatrix{0, r, {}, {}});
        return out;
    }
    // pivot column subsets in lexicographic order
    std::vector<int> piv(s);
    for (int i = 0; i < s; ++i) piv[i] = i;
    while (true) {
        // free positions: (i, j) with j > piv[i], j not a pivot column
        std::vector<std::pair<int, int>> frees;
        for (int i = 0; i < s; ++i)
            for (int j = piv[i] + 1; j < r; ++j) {
                bool ispiv = false;
                for (int t2 = 0; t2 < s; ++t2) ispiv |= piv[t2] == j;
                if (!ispiv) frees.emplace_back(i, j);
            }
        std::vector<long> odo(frees.size(), 0);
        while (true) {
            SubspaceMatrix m;
            m.s = s;
            m.r = r;
            m.pivots = piv;
            m.entries.assign(static_cast<size_t>(s) * r, P.zero());
            for (int i = 0; i < s; ++i) m.entries[i * r + piv[i]] = P.one();
            for (size_t k = 0; k < frees.size(); ++k)
                m.entries[frees[k].first * r + frees[k].second] = P.element(odo[k]);
            out.push_back(std::move(m));
            int pos = static_cast<int>(frees.size()) - 1;
            while (pos >= 0 && odo[pos] + 1 == P.size()) odo[pos--] = 0;
            if (pos < 0) break;
            ++odo[pos];
        }
        // next pivot combination
        int i = s - 1;
        while (i >= 0 && piv[i] == r - s + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < s; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

inline long gaussian_binomial(int r, int s, long v) {
    if (s < 0 || s > r) return 0;
    // prod_{i=0}^{s-1} (v^r - v^i) / (v^s - v^i)
    long long num = 1, den = 1;
    auto vpow = [v](int e) {
        long long x = 1;
        for (int i = 0; i < e; ++i) x *= v;
        return x;
    };
    for (int i = 0; i < s; ++i) {
        num *= vpow(r) - vpow(i);
        den *= vpow(s) - vpow(i);
    }
    return static_cast<long>(num / den);
}

/// eta_i = sum_j phi_{m_ij}(w_j)
inline std::vector<TElem> kernel_generators(const SubspaceMatrix& m, const TorsionSide& side,
                                            const PrimeCtx& P) {
    if (m.r != static_cast<int>(side.gens.size())) throw BadInput("matrix rank mismatch");
    std::vector<TElem> etas;
    for (int i = 0; i < m.s; ++i) {
        TElem acc = side.tower->zero(0);
        for (int j = 0; j < m.r; ++j) {
            const PrimeCtx::Elem& a = m.at(i, j);
            if (P.is_zero(a)) continue;
            acc = acc + side.multiples[j][P.index_of(a)];
        }
        etas.push_back(std::move(acc));
    }
    return etas;
}

/// the A-span of the kernel generators (all sum phi_{a_i}(eta_i))
inline std::vector<TElem> kernel_span(const std::vector<TElem>& etas, const TorsionSide& side,
                                      const PrimeCtx& P) {
    // multiples of each eta under F_P
    std::vector<std::vector<TElem>> mult;
    for (const TElem& eta : etas) {
        std::vector<TElem> row;
        for (long ai = 0; ai < P.size(); ++ai) {
            PrimeCtx::Elem a = P.element(ai);
            std::vector<FFElem> lift;
            if (side.phi.phiT.zero_elem().ring_ptr()->F == &P.field()) {
                lift = a;
            } else {
                FieldEmbed emb(P.field(), *side.phi.phiT.zero_elem().ring_ptr()->F);
                for (const FFElem& c : a) lift.push_back(emb(c));
            }
            row.push_back(side.phi_eval(lift, eta));
        }
        mult.push_back(std::move(row));
    }
    std::vector<TElem> span;
    std::vector<long> idx(etas.size(), 0);
    while (true) {
        TElem acc = side.tower->zero(0);
        for (size_t i = 0; i < etas.size(); ++i) acc = acc + mult[i][idx[i]];
        span.push_back(std::move(acc));
        size_t pos = 0;
        while (pos < idx.size() && idx[pos] + 1 == P.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
        ++idx[pos];
    }
    return span;
}

/// Monic additive polynomial vanishing exactly on the span of the kernel
/// generators; X-degree |P|^s.
inline TwistedPoly<TElem> kernel_polynomial(const SubspaceMatrix& m, const TorsionSide& side,
                                            const PrimeCtx& P) {
    std::vector<TElem> etas = kernel_generators(m, side, P);
    std::vector<TElem> span = kernel_span(etas, side, P);
    UPoly<TElem> f = detail_torsion::root_product(*side.tower, span);
    return from_additive(f, side.tower->ring_ptr()->q);
}

/// phi^(f): the exact right quotient of f*phi_T by f
inline Module<TElem> pushforward(const TwistedPoly<TElem>& f, const TorsionSide& side) {
    if (!f.is_monic()) throw NonMonicDivisor("isogeny must be monic");
    TwistedPoly<TElem> phiT = side.phiT_tower();
    auto [quo, rem] = tw_div_right(f * phiT, f);
    if (!rem.is_zero()) throw InternalError("pushforward remainder is nonzero (not an isogeny)");
    if (!quo.is_monic() || quo.degree() != phiT.degree())
        throw InternalError("pushforward has the wrong shape");
    if (!(quo[0] == phiT[0])) throw InternalError("pushforward does not fix T");
    return Module<TElem>{phiT.degree(), quo};
}

struct Isogeny {
    TwistedPoly<TElem> f;       // monic
    Module<TElem> codomain;
    int s = 0;                  // type dimension
};

inline Isogeny isogeny_from_matrix(const SubspaceMatrix& m, const TorsionSide& side,
                                   const PrimeCtx& P) {
    TwistedPoly<TElem> f = kernel_polynomial(m, side, P);
    Module<TElem> cod = pushforward(f, side);
    return Isogeny{std::move(f), std::move(cod), m.s};
}

/// F(X) = prod_{a in F_P} (X - phi_a(w)), built on the vanishing generator.
inline Isogeny frobenius_isogeny(const TorsionSide& side, const PrimeCtx& P,
                                 const TElem* w_override = nullptr) {
    size_t last = side.gens.size() - 1;
    std::vector<TElem> pts;
    if (w_override) {
        std::vector<TElem> eta{*w_override};
        pts = kernel_span(eta, side, P);
    } else {
        pts = side.multiples[last];
    }
    UPoly<TElem> F = detail_torsion::root_product(*side.tower, pts);
    TwistedPoly<TElem> f = from_additive(F, side.tower->ring_ptr()->q);
    Module<TElem> cod = pushforward(f, side);
    return Isogeny{std::move(f), std::move(cod), 1};
}

}  // namespace drinfeld

#endif
