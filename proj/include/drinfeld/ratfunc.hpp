#ifndef DRINFELD_RATFUNC_HPP
#define DRINFELD_RATFUNC_HPP

#include <string>
#include <vector>

#include "mpoly.hpp"

namespace drinfeld {

/// view f as univariate in variable j: coefficient list indexed by the
/// exponent of var j, coefficients not involving var j
inline std::vector<MPoly> as_univariate(const MPoly& f, int j) {
    int d = f.degree_in(j);
    std::vector<MPoly> out(static_cast<size_t>(d + 1), MPoly::zero(f.ring_ptr()));
    std::vector<std::vector<MPoly::Term>> buckets(static_cast<size_t>(d + 1));
    for (const MPoly::Term& t : f.terms()) {
        int e = detail::exp_get(t.e, j);
        buckets[e].push_back({detail::exp_set(t.e, j, 0), t.c});
    }
    for (int e = 0; e <= d; ++e) out[e] = MPoly::from_terms(f.ring_ptr(), std::move(buckets[e]));
    return out;
}

inline MPoly from_univariate(const std::vector<MPoly>& cs, int j, std::shared_ptr<const PolyRing> R) {
    std::vector<MPoly::Term> all;
    for (size_t e = 0; e < cs.size(); ++e)
        for (const MPoly::Term& t : cs[e].terms())
            all.push_back({detail::exp_set(t.e, j, static_cast<int>(e)), t.c});
    return MPoly::from_terms(std::move(R), std::move(all));
}

/// exact multivariate division; throws if g does not divide f
inline MPoly mpoly_exact_div(const MPoly& f, const MPoly& g) {
    if (g.is_zero()) throw ZeroInput("division by zero polynomial");
    MPoly rem = f;
    MPoly quot = MPoly::zero(f.ring_ptr());
    const int nv = f.ring().nvars();
    const FieldCtx& F = *f.ring().F;
    const MPoly::Term lg = g.terms().empty() ? MPoly::Term{0, 0} : g.terms()[0];
    while (!rem.is_zero()) {
        const MPoly::Term lt = rem.terms()[0];
        std::uint64_t qe = 0;
        for (int j = 0; j < nv; ++j) {
            int d = detail::exp_get(lt.e, j) - detail::exp_get(lg.e, j);
            if (d < 0) throw InternalError("inexact polynomial division");
            qe = detail::exp_set(qe, j, d);
        }
        int qc = F.mul(lt.c, F.inv(lg.c));
        MPoly qt = MPoly::from_terms(f.ring_ptr(), {{qe, qc}});
        quot += qt;
        rem -= qt * g;
    }
    return quot;
}

namespace detail {

inline MPoly mgcd(const MPoly& a, const MPoly& b);

inline MPoly poly_content(const std::vector<MPoly>& cs) {
    MPoly c = MPoly::zero(cs.empty() ? nullptr : cs[0].ring_ptr());
    for (const MPoly& x : cs) c = mgcd(c, x);
    return c;
}

/// pseudo-remainder of univariate views (coefficients in fewer variables)
inline std::vector<MPoly> prem(std::vector<MPoly> f, const std::vector<MPoly>& g,
                               std::shared_ptr<const PolyRing> R) {
    auto deg = [](const std::vector<MPoly>& v) {
        int d = static_cast<int>(v.size()) - 1;
        while (d >= 0 && v[d].is_zero()) --d;
        return d;
    };
    int dg = deg(g);
    const MPoly& lg = g[dg];
    int df = deg(f);
    while (df >= dg) {
        MPoly lf = f[df];
        for (int i = 0; i <= df; ++i) f[i] = f[i] * lg;
        for (int i = 0; i <= dg; ++i) f[df - dg + i] -= lf * g[i];
        (void)R;
        f.resize(df);
        df = deg(f);
    }
    return f;
}

/// gcd by content/primitive-part extraction in the last occurring variable
/// (primitive PRS); result normalized to leading canonical coefficient 1.
inline MPoly mgcd(const MPoly& a, const MPoly& b) {
    auto monicize = [](MPoly f) {
        if (f.is_zero()) return f;
        return f.scaled(f.leading_coeff().inv());
    };
    if (a.is_zero()) return monicize(b);
    if (b.is_zero()) return monicize(a);
    auto R = a.ring_ptr();
    int j = -1;
    for (int v = R->nvars() - 1; v >= 0; --v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) {
            j = v;
            break;
        }
    if (j < 0) return MPoly::constant_int(R, 1);  // both constants
    std::vector<MPoly> fa = as_univariate(a, j), fb = as_univariate(b, j);
    MPoly ca = poly_content(fa), cb = poly_content(fb);
    MPoly cg = mgcd(ca, cb);
    for (MPoly& c : fa) c = mpoly_exact_div(c, ca);
    for (MPoly& c : fb) c = mpoly_exact_div(c, cb);
    // primitive PRS
    std::vector<MPoly> r0 = std::move(fa), r1 = std::move(fb);
    auto deg = [](const std::vector<MPoly>& v) {
        int d = static_cast<int>(v.size()) - 1;
        while (d >= 0 && v[d].is_zero()) --d;
        return d;
    };
    if (deg(r0) < deg(r1)) std::swap(r0, r1);
    while (true) {
        int d1 = deg(r1);
        if (d1 < 0) break;
        std::vector<MPoly> r = prem(r0, r1, R);
        // primitive part of r
        int dr = deg(r);
        if (dr >= 0) {
            r.resize(dr + 1);
            MPoly cr = poly_content(r);
            for (MPoly& c : r) c = mpoly_exact_div(c, cr);
        } else
            r.clear();
        r0 = std::move(r1);
        r1 = std::move(r);
    }
    int d0 = deg(r0);
    r0.resize(d0 + 1);
    MPoly cr = poly_content(r0);
    for (MPoly& c : r0) c = mpoly_exact_div(c, cr);
    MPoly g = from_univariate(r0, j, R) * cg;
    return monicize(g);
}

}  // namespace detail

inline MPoly mpoly_gcd(const MPoly& a, const MPoly& b) { return detail::mgcd(a, b); }

/// Reduced fraction of MPoly values.  Canonical form: gcd(num, den) = 1 and
/// den has leading canonical coefficient 1.  Arithmetic shortcuts the
/// den == 1 case, which is the only one the isogeny pipeline ever produces.
class RatFunc {
   public:
    RatFunc() = default;
    explicit RatFunc(MPoly num)
        : num_(std::move(num)), den_(MPoly::constant_int(num_.ring_ptr(), 1)) {}
    RatFunc(MPoly num, MPoly den, bool normalized = false) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw ZeroInput("zero denominator");
        if (!normalized) normalize();
    }

    static RatFunc zero(std::shared_ptr<const PolyRing> R) { return RatFunc(MPoly::zero(std::move(R))); }
    static RatFunc one(std::shared_ptr<const PolyRing> R) { return RatFunc(MPoly::constant_int(std::move(R), 1)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    const std::shared_ptr<const PolyRing>& ring_ptr() const { return num_.ring_ptr(); }

    RatFunc operator+(const RatFunc& o) const {
        if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ + o.num_, den_, true);
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-(const RatFunc& o) const {
        if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ - o.num_, den_, true);
        return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator*(const RatFunc& o) const {
        if (num_.is_zero() || o.num_.is_zero()) return zero(ring_ptr());
        if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ * o.num_, den_, true);
        return RatFunc(num_ * o.num_, den_ * o.den_);
    }
    RatFunc operator-() const { return RatFunc(-num_, den_, true); }

    RatFunc inv() const {
        if (num_.is_zero()) throw ZeroInput("inverse of zero");
        RatFunc r(den_, num_, true);
        r.make_den_monic();
        return r;
    }

    RatFunc frobq(int k) const {
        if (den_.is_one()) return RatFunc(num_.frobq(k), den_, true);
        return RatFunc(num_.frobq(k), den_.frobq(k), true);
    }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

   private:
    MPoly num_, den_;

    void normalize() {
        if (num_.is_zero()) {
            den_ = MPoly::constant_int(den_.ring_ptr(), 1);
            return;
        }
        if (!den_.is_one()) {
            MPoly g = mpoly_gcd(num_, den_);
            if (!g.is_one()) {
                num_ = mpoly_exact_div(num_, g);
                den_ = mpoly_exact_div(den_, g);
            }
        }
        make_den_monic();
    }

    void make_den_monic() {
        FFElem lc = den_.leading_coeff();
        if (!lc.is_one()) {
            FFElem s = lc.inv();
            num_ = num_.scaled(s);
            den_ = den_.scaled(s);
        }
    }
};

inline std::ostream& operator<<(std::ostream& os, const RatFunc& x) { return os << x.str(); }

}  // namespace drinfeld

#endif
