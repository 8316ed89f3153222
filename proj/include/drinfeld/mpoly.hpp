#ifndef DRINFELD_MPOLY_HPP
#define DRINFELD_MPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "ff.hpp"

namespace drinfeld {

/// Descriptor for the polynomial ring F[vars].  The canonical variable order
/// puts T first (heaviest), then g1 < g2 < ...; the monomial order is
/// degrevlex over that order.  `q` is the size of the Drinfeld base field
/// F_q[T]; the coefficient field F is F_{q^r} (or F_{q^m} on reduced rings).
struct PolyRing {
    const FieldCtx* F;
    long q;
    std::vector<std::string> vars;
    int t_index = -1;              // position of "T", or -1
    std::vector<long> gweight;     // lambda-action weight per var: q^i-1 for g_i, 0 for T
    long lambda_mod = 0;           // q^r - 1, with r = (#g-vars) + 1

    int nvars() const { return static_cast<int>(vars.size()); }
};

inline std::shared_ptr<const PolyRing> make_poly_ring(const FieldCtx& F, long q,
                                                      std::vector<std::string> vars) {
    auto R = std::make_shared<PolyRing>();
    R->F = &F;
    R->q = q;
    R->vars = std::move(vars);
    if (R->vars.size() > 4) throw BadInput("at most 4 variables supported");
    int gi = 0;
    for (int j = 0; j < R->nvars(); ++j) {
        if (R->vars[j] == "T") {
            R->t_index = j;
            R->gweight.push_back(0);
        } else {
            ++gi;
            long qi = 1;
            for (int k = 0; k < gi; ++k) qi *= q;
            R->gweight.push_back(qi - 1);
        }
    }
    long qr = 1;
    for (int k = 0; k < gi + 1; ++k) qr *= q;
    R->lambda_mod = qr - 1;
    return R;
}

/// The generic coefficient ring B = F_{q^r}[T, g1, ..., g_{r-1}].
inline std::shared_ptr<const PolyRing> make_base_ring(long q, int r) {
    int p = 2;
    while (q % p != 0) ++p;
    int e = 0;
    long t = q;
    while (t > 1) {
        t /= p;
        ++e;
    }
    const FieldCtx& F = FieldCtx::pinned(p, e * r);
    std::vector<std::string> vars{"T"};
    for (int i = 1; i < r; ++i) vars.push_back("g" + std::to_string(i));
    return make_poly_ring(F, q, vars);
}

/// Reduced coefficient ring F_{q^m}[g1, ..., g_{r-1}] (no T variable).
inline std::shared_ptr<const PolyRing> make_reduced_ring(long q, int r, int m) {
    int p = 2;
    while (q % p != 0) ++p;
    int e = 0;
    long t = q;
    while (t > 1) {
        t /= p;
        ++e;
    }
    const FieldCtx& F = FieldCtx::pinned(p, e * m);
    std::vector<std::string> vars;
    for (int i = 1; i < r; ++i) vars.push_back("g" + std::to_string(i));
    return make_poly_ring(F, q, vars);
}

namespace detail {

constexpr int kExpBits = 16;
constexpr std::uint64_t kExpMask = 0xFFFFull;

inline int exp_get(std::uint64_t e, int j) { return static_cast<int>((e >> (kExpBits * j)) & kExpMask); }

inline std::uint64_t exp_set(std::uint64_t e, int j, int v) {
    e &= ~(kExpMask << (kExpBits * j));
    return e | (static_cast<std::uint64_t>(v) << (kExpBits * j));
}

inline long exp_total(std::uint64_t e, int nv) {
    long t = 0;
    for (int j = 0; j < nv; ++j) t += exp_get(e, j);
    return t;
}

/// degrevlex: larger total degree wins; on ties the LAST variable in which
/// the exponents differ decides, smaller exponent winning.
inline bool exp_less(std::uint64_t a, std::uint64_t b, int nv) {
    if (a == b) return false;
    long ta = exp_total(a, nv), tb = exp_total(b, nv);
    if (ta != tb) return ta < tb;
    for (int j = nv - 1; j >= 0; --j) {
        int ea = exp_get(a, j), eb = exp_get(b, j);
        if (ea != eb) return ea > eb;
    }
    return false;
}

}  // namespace detail

/// Sparse multivariate polynomial over a PolyRing.  Terms are kept in
/// strictly descending canonical order with no zero coefficients.
class MPoly {
   public:
    struct Term {
        std::uint64_t e;
        int c;
    };

    MPoly() : R_(nullptr) {}
    explicit MPoly(std::shared_ptr<const PolyRing> R) : R_(std::move(R)) {}

    static MPoly zero(std::shared_ptr<const PolyRing> R) { return MPoly(std::move(R)); }

    static MPoly constant(std::shared_ptr<const PolyRing> R, const FFElem& c) {
        MPoly f(std::move(R));
        if (!c.is_zero()) f.t_.push_back({0, c.value()});
        return f;
    }

    static MPoly constant_int(std::shared_ptr<const PolyRing> R, long n) {
        int p = R->F->characteristic();
        int v = static_cast<int>(((n % p) + p) % p);
        MPoly f(std::move(R));
        if (v) f.t_.push_back({0, v});
        return f;
    }

    static MPoly variable(std::shared_ptr<const PolyRing> R, int j, int e = 1) {
        MPoly f(std::move(R));
        if (e < 0) throw BadInput("negative exponent");
        f.t_.push_back({detail::exp_set(0, j, e), 1});
        return f;
    }

    static MPoly variable_named(std::shared_ptr<const PolyRing> R, const std::string& name, int e = 1) {
        for (int j = 0; j < R->nvars(); ++j)
            if (R->vars[j] == name) return variable(std::move(R), j, e);
        throw BadInput("unknown variable " + name);
    }

    /// monomial with explicit exponent vector (roster order)
    static MPoly monomial(std::shared_ptr<const PolyRing> R, const std::vector<int>& exps, int coeff = 1) {
        MPoly f(R);
        std::uint64_t e = 0;
        for (size_t j = 0; j < exps.size(); ++j) e = detail::exp_set(e, static_cast<int>(j), exps[j]);
        if (coeff != 0) f.t_.push_back({e, coeff});
        return f;
    }

    const std::shared_ptr<const PolyRing>& ring_ptr() const { return R_; }
    const PolyRing& ring() const {
        if (!R_) throw InternalError("MPoly without ring");
        return *R_;
    }
    const std::vector<Term>& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    bool is_one() const { return t_.size() == 1 && t_[0].e == 0 && t_[0].c == 1; }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].e == 0); }

    FFElem constant_value() const {
        if (is_zero()) return FFElem(*ring().F, 0);
        if (!is_constant()) throw InternalError("not a constant");
        return FFElem(*ring().F, t_[0].c);
    }

    long total_degree() const {
        long d = -1;
        for (const Term& t : t_) d = std::max(d, detail::exp_total(t.e, ring().nvars()));
        return d;
    }

    int degree_in(int j) const {
        int d = -1;
        for (const Term& t : t_) d = std::max(d, detail::exp_get(t.e, j));
        return d;
    }

    FFElem leading_coeff() const {
        if (t_.empty()) return FFElem(*ring().F, 0);
        return FFElem(*ring().F, t_[0].c);
    }

    MPoly operator-() const {
        MPoly r(*this);
        const FieldCtx& F = *ring().F;
        for (Term& t : r.t_) t.c = F.neg(t.c);
        return r;
    }

    MPoly operator+(const MPoly& o) const { return merged(o, false); }
    MPoly operator-(const MPoly& o) const { return merged(o, true); }

    MPoly operator*(const MPoly& o) const {
        check_ring(o);
        MPoly r(R_);
        if (t_.empty() || o.t_.empty()) return r;
        const FieldCtx& F = *ring().F;
        const int nv = ring().nvars();
        if (t_.size() == 1 || o.t_.size() == 1) {
            const MPoly& single = t_.size() == 1 ? *this : o;
            const MPoly& many = t_.size() == 1 ? o : *this;
            const Term s = single.t_[0];
            r.t_.reserve(many.t_.size());
            for (const Term& t : many.t_) {
                int c = F.mul(t.c, s.c);
                if (c) r.t_.push_back({add_exps(t.e, s.e, nv), c});
            }
            if (s.e != 0) std::sort(r.t_.begin(), r.t_.end(), [nv](const Term& a, const Term& b) {
                return detail::exp_less(b.e, a.e, nv);
            });
            return r;
        }
        std::unordered_map<std::uint64_t, int> acc;
        acc.reserve(t_.size() * o.t_.size());
        for (const Term& a : t_)
            for (const Term& b : o.t_) {
                int c = F.mul(a.c, b.c);
                if (!c) continue;
                std::uint64_t e = add_exps(a.e, b.e, nv);
                auto it = acc.find(e);
                if (it == acc.end())
                    acc.emplace(e, c);
                else
                    it->second = F.add(it->second, c);
            }
        r.t_.reserve(acc.size());
        for (auto& kv : acc)
            if (kv.second) r.t_.push_back({kv.first, kv.second});
        std::sort(r.t_.begin(), r.t_.end(),
                  [nv](const Term& a, const Term& b) { return detail::exp_less(b.e, a.e, nv); });
        return r;
    }

    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly scaled(const FFElem& s) const {
        MPoly r(R_);
        if (s.is_zero()) return r;
        const FieldCtx& F = *ring().F;
        r.t_.reserve(t_.size());
        for (const Term& t : t_) r.t_.push_back({t.e, F.mul(t.c, s.value())});
        return r;
    }

    MPoly pow(long e) const {
        if (e < 0) throw BadInput("negative power");
        MPoly r = constant_int(R_, 1);
        MPoly b = *this;
        while (e) {
            if (e & 1) r *= b;
            if (e >>= 1) b *= b;
        }
        return r;
    }

    /// termwise characteristic-power: (sum c X^e)^(q^k) = sum c^(q^k) X^(e q^k)
    MPoly frobq(int k) const {
        if (k == 0) return *this;
        const FieldCtx& F = *ring().F;
        long q = ring().q;
        long qk = 1;
        for (int i = 0; i < k; ++i) qk *= q;
        MPoly r(R_);
        r.t_.reserve(t_.size());
        const int nv = ring().nvars();
        for (const Term& t : t_) {
            std::uint64_t e = 0;
            for (int j = 0; j < nv; ++j) {
                long ne = detail::exp_get(t.e, j) * qk;
                if (ne > 0xFFFF) throw InternalError("exponent overflow in frobenius");
                e = detail::exp_set(e, j, static_cast<int>(ne));
            }
            r.t_.push_back({e, F.frob(t.c, q, k)});
        }
        std::sort(r.t_.begin(), r.t_.end(),
                  [nv](const Term& a, const Term& b) { return detail::exp_less(b.e, a.e, nv); });
        return r;
    }

    bool operator==(const MPoly& o) const {
        if (t_.size() != o.t_.size()) return false;
        for (size_t i = 0; i < t_.size(); ++i)
            if (t_[i].e != o.t_[i].e || t_[i].c != o.t_[i].c) return false;
        return true;
    }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        const FieldCtx& F = *ring().F;
        const int nv = ring().nvars();
        bool first = true;
        for (const Term& t : t_) {
            if (!first) os << " + ";
            first = false;
            std::string cs = F.elem_str(t.c);
            bool paren = cs.find('+') != std::string::npos;
            bool unit = (t.c == 1);
            bool anyvar = t.e != 0;
            if (!anyvar) {
                os << (paren ? "(" + cs + ")" : cs);
                continue;
            }
            bool star = false;
            if (!unit) {
                os << (paren ? "(" + cs + ")" : cs);
                star = true;
            }
            for (int j = 0; j < nv; ++j) {
                int e = detail::exp_get(t.e, j);
                if (!e) continue;
                if (star) os << "*";
                star = true;
                os << ring().vars[j];
                if (e > 1) os << "^" << e;
            }
        }
        return os.str();
    }

    /// substitute ring elements for the variables; E needs *, +, and a
    /// caller-supplied embedding of field constants.
    template <class E, class EmbedFn>
    E eval(const std::vector<E>& xs, const E& one, EmbedFn embed) const {
        E acc = one - one;  // zero
        const int nv = ring().nvars();
        for (const Term& t : t_) {
            E m = embed(FFElem(*ring().F, t.c));
            for (int j = 0; j < nv; ++j) {
                int e = detail::exp_get(t.e, j);
                if (!e) continue;
                E b = xs[j];
                E pw = one;
                int k = e;
                while (k) {
                    if (k & 1) pw = pw * b;
                    if (k >>= 1) b = b * b;
                }
                m = m * pw;
            }
            acc = acc + m;
        }
        return acc;
    }

    static std::uint64_t add_exps(std::uint64_t a, std::uint64_t b, int nv) {
        for (int j = 0; j < nv; ++j)
            if (detail::exp_get(a, j) + detail::exp_get(b, j) > 0xFFFF)
                throw InternalError("exponent overflow");
        return a + b;
    }

    void check_ring(const MPoly& o) const {
        if (R_.get() != o.R_.get()) throw RingMismatch("MPoly rings differ");
    }

    /// raw access for algorithms that build polynomials termwise
    static MPoly from_terms(std::shared_ptr<const PolyRing> R, std::vector<Term> terms) {
        MPoly f(std::move(R));
        const int nv = f.ring().nvars();
        std::sort(terms.begin(), terms.end(),
                  [nv](const Term& a, const Term& b) { return detail::exp_less(b.e, a.e, nv); });
        const FieldCtx& F = *f.ring().F;
        for (const Term& t : terms) {
            if (!f.t_.empty() && f.t_.back().e == t.e)
                f.t_.back().c = F.add(f.t_.back().c, t.c);
            else
                f.t_.push_back(t);
            if (f.t_.back().c == 0) f.t_.pop_back();
        }
        return f;
    }

   private:
    std::shared_ptr<const PolyRing> R_;
    std::vector<Term> t_;

    MPoly merged(const MPoly& o, bool subtract) const {
        check_ring(o);
        const FieldCtx& F = *ring().F;
        const int nv = ring().nvars();
        MPoly r(R_);
        r.t_.reserve(t_.size() + o.t_.size());
        size_t i = 0, j = 0;
        while (i < t_.size() || j < o.t_.size()) {
            bool takeA;
            if (i >= t_.size())
                takeA = false;
            else if (j >= o.t_.size())
                takeA = true;
            else if (t_[i].e == o.t_[j].e) {
                int c = subtract ? F.sub(t_[i].c, o.t_[j].c) : F.add(t_[i].c, o.t_[j].c);
                if (c) r.t_.push_back({t_[i].e, c});
                ++i;
                ++j;
                continue;
            } else
                takeA = detail::exp_less(o.t_[j].e, t_[i].e, nv);
            if (takeA) {
                r.t_.push_back(t_[i]);
                ++i;
            } else {
                int c = subtract ? F.neg(o.t_[j].c) : o.t_[j].c;
                r.t_.push_back({o.t_[j].e, c});
                ++j;
            }
        }
        return r;
    }
};

inline std::ostream& operator<<(std::ostream& os, const MPoly& f) { return os << f.str(); }

/// lambda * f: scales each monomial g^e by lambda^(sum e_i (q^i - 1)); T fixed.
inline MPoly lambda_act(const FFElem& lambda, const MPoly& f) {
    if (lambda.is_zero()) throw ZeroInput("lambda must be a unit");
    const PolyRing& R = f.ring();
    std::vector<MPoly::Term> out;
    out.reserve(f.terms().size());
    for (const MPoly::Term& t : f.terms()) {
        long w = 0;
        for (int j = 0; j < R.nvars(); ++j) w += detail::exp_get(t.e, j) * R.gweight[j];
        int c = R.F->mul(t.c, lambda.pow(w).value());
        out.push_back({t.e, c});
    }
    return MPoly::from_terms(f.ring_ptr(), std::move(out));
}

/// invariance by the weight congruence: every monomial must satisfy
/// sum e_i (q^i - 1) = 0 mod q^r - 1.
inline bool is_invariant_congruence(const MPoly& f) {
    const PolyRing& R = f.ring();
    for (const MPoly::Term& t : f.terms()) {
        long w = 0;
        for (int j = 0; j < R.nvars(); ++j) w += detail::exp_get(t.e, j) * R.gweight[j];
        if (w % R.lambda_mod != 0) return false;
    }
    return true;
}

/// invariance by sweeping every lambda in F_{q^r}^* (the subfield of size q^r).
inline bool is_invariant_sweep(const MPoly& f) {
    const PolyRing& R = f.ring();
    long qr = R.lambda_mod + 1;
    for (int v = 1; v < R.F->size(); ++v) {
        if (!R.F->in_subfield(v, qr)) continue;
        if (lambda_act(FFElem(*R.F, v), f) != f) return false;
    }
    return true;
}

inline bool is_invariant(const MPoly& f) { return is_invariant_congruence(f); }

/// ----- polynomials over the subfield F_q (used for T-levels P and A-lifts) -----

/// collect the elements of F_q inside the coefficient field, sorted by encoding
inline std::vector<FFElem> subfield_elements(const FieldCtx& F, long q) {
    std::vector<FFElem> out;
    for (int v = 0; v < F.size(); ++v)
        if (F.in_subfield(v, q)) out.push_back(FFElem(F, v));
    if (static_cast<long>(out.size()) != q) throw InternalError("subfield of size q not found");
    return out;
}

/// monic irreducibility over F_q by exhaustive divisor search (desk scale)
inline bool is_prime_over_subfield(const std::vector<FFElem>& P, const FieldCtx& F, long q) {
    int d = static_cast<int>(P.size()) - 1;
    if (d < 1) return false;
    if (!P[d].is_one()) return false;
    for (const FFElem& c : P)
        if (!F.in_subfield(c.value(), q)) return false;
    if (d == 1) return true;
    std::vector<FFElem> sub = subfield_elements(F, q);
    // trial division by every monic subfield polynomial of degree <= d/2
    for (int dg = 1; 2 * dg <= d; ++dg) {
        std::vector<int> idx(dg, 0);
        while (true) {
            std::vector<FFElem> g;
            for (int i = 0; i < dg; ++i) g.push_back(sub[idx[i]]);
            g.push_back(FFElem(F, 1));
            // divide P by g
            std::vector<FFElem> rem = P;
            for (int k = d; k >= dg; --k) {
                FFElem c = rem[k];
                if (c.is_zero()) continue;
                for (int i = 0; i <= dg; ++i) rem[k - dg + i] = rem[k - dg + i] - c * g[i];
            }
            bool zero = true;
            for (const FFElem& c : rem)
                if (!c.is_zero()) {
                    zero = false;
                    break;
                }
            if (zero) return false;
            int pos = 0;
            while (pos < dg && idx[pos] + 1 == static_cast<int>(sub.size())) idx[pos++] = 0;
            if (pos == dg) break;
            ++idx[pos];
        }
    }
    return true;
}

/// image of f in B (tensor) F_P: reduces every T-exponent below deg P.
inline MPoly mpoly_mod_prime(const MPoly& f, const std::vector<FFElem>& P) {
    const PolyRing& R = f.ring();
    if (R.t_index < 0) return f;
    if (!is_prime_over_subfield(P, *R.F, R.q)) throw NotPrime("P is not a monic prime of F_q[T]");
    int d = static_cast<int>(P.size()) - 1;
    int maxe = f.degree_in(R.t_index);
    // T^k mod P as coefficient rows
    std::vector<std::vector<FFElem>> tp;
    std::vector<FFElem> cur(d, FFElem(*R.F, 0));
    cur[0] = FFElem(*R.F, 1);
    tp.push_back(cur);
    for (int k = 1; k <= maxe; ++k) {
        std::vector<FFElem> nxt(d, FFElem(*R.F, 0));
        FFElem top = cur[d - 1];
        for (int i = d - 1; i >= 1; --i) nxt[i] = cur[i - 1];
        if (!top.is_zero())
            for (int i = 0; i < d; ++i) nxt[i] = nxt[i] - top * P[i];
        cur = nxt;
        tp.push_back(cur);
    }
    std::vector<MPoly::Term> out;
    for (const MPoly::Term& t : f.terms()) {
        int e = detail::exp_get(t.e, R.t_index);
        for (int i = 0; i < d; ++i) {
            FFElem c = FFElem(*R.F, t.c) * tp[e][i];
            if (c.is_zero()) continue;
            out.push_back({detail::exp_set(t.e, R.t_index, i), c.value()});
        }
    }
    return MPoly::from_terms(f.ring_ptr(), std::move(out));
}

}  // namespace drinfeld

#endif
