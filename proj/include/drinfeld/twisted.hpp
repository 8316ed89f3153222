#ifndef DRINFELD_TWISTED_HPP
#define DRINFELD_TWISTED_HPP

#include <string>
#include <vector>

#include "upoly.hpp"

namespace drinfeld {

/// Twisted (Ore) polynomial sum f_i t^i over a ring with q-Frobenius,
/// subject to t a = a^q t.  E must additionally provide frobq(k).
template <class E>
class TwistedPoly {
   public:
    explicit TwistedPoly(E zero) : zero_(std::move(zero)) {}
    TwistedPoly(E zero, std::vector<E> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) { trim(); }

    static TwistedPoly tau_power(E zero, const E& one, int e) {
        std::vector<E> c(static_cast<size_t>(e) + 1, zero);
        c[e] = one;
        return TwistedPoly(std::move(zero), std::move(c));
    }

    const E& zero_elem() const { return zero_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
    const std::vector<E>& coeffs() const { return c_; }
    const E& operator[](int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : zero_; }

    void set_coeff(int i, E v) {
        if (i >= static_cast<int>(c_.size())) c_.resize(i + 1, zero_);
        c_[i] = std::move(v);
        trim();
    }

    TwistedPoly operator+(const TwistedPoly& o) const {
        std::vector<E> r(std::max(c_.size(), o.c_.size()), zero_);
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size() && i < o.c_.size())
                r[i] = c_[i] + o.c_[i];
            else if (i < c_.size())
                r[i] = c_[i];
            else
                r[i] = o.c_[i];
        }
        return TwistedPoly(zero_, std::move(r));
    }

    TwistedPoly operator-(const TwistedPoly& o) const {
        std::vector<E> r(std::max(c_.size(), o.c_.size()), zero_);
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size() && i < o.c_.size())
                r[i] = c_[i] - o.c_[i];
            else if (i < c_.size())
                r[i] = c_[i];
            else
                r[i] = -o.c_[i];
        }
        return TwistedPoly(zero_, std::move(r));
    }

    /// (fg)_k = sum_{i+j=k} f_i g_j^(q^i)
    TwistedPoly operator*(const TwistedPoly& o) const {
        if (c_.empty() || o.c_.empty()) return TwistedPoly(zero_);
        std::vector<E> r(c_.size() + o.c_.size() - 1, zero_);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j].is_zero()) continue;
                r[i + j] = r[i + j] + c_[i] * o.c_[j].frobq(static_cast<int>(i));
            }
        }
        return TwistedPoly(zero_, std::move(r));
    }

    bool operator==(const TwistedPoly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const TwistedPoly& o) const { return !(*this == o); }

    template <class Fmt>
    std::string str(Fmt fmt) const {
        UPoly<E> u(zero_, c_);
        return u.str("t", fmt);
    }

   private:
    E zero_;
    std::vector<E> c_;

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

template <class E>
inline TwistedPoly<E> tw_mul(const TwistedPoly<E>& f, const TwistedPoly<E>& g) {
    return f * g;
}

/// right division f = q*g + rem with monic g; needs no Frobenius preimages
template <class E>
inline std::pair<TwistedPoly<E>, TwistedPoly<E>> tw_div_right(const TwistedPoly<E>& f,
                                                              const TwistedPoly<E>& g) {
    if (g.is_zero()) throw ZeroInput("twisted division by zero");
    if (!g.is_monic()) throw NonMonicDivisor("twisted right division needs a monic divisor");
    int dg = g.degree();
    TwistedPoly<E> rem = f;
    TwistedPoly<E> quo(f.zero_elem());
    while (rem.degree() >= dg) {
        int k = rem.degree() - dg;
        E c = rem[rem.degree()];
        quo.set_coeff(k, c);
        // rem -= (c t^k) * g
        for (int i = 0; i <= dg; ++i) {
            E t = rem[k + i] - c * g[i].frobq(k);
            rem.set_coeff(k + i, std::move(t));
        }
    }
    return {quo, rem};
}

/// twisted -> additive: sum f_i t^i  |->  sum f_i X^(q^i)
template <class E>
inline UPoly<E> to_additive(const TwistedPoly<E>& f, long q) {
    UPoly<E> out(f.zero_elem());
    long e = 1;
    for (int i = 0; i <= f.degree(); ++i) {
        if (e > (1 << 22)) throw InternalError("additive degree too large");
        if (!f[i].is_zero()) out.set_coeff(static_cast<int>(e), f[i]);
        e *= q;
    }
    return out;
}

/// additive -> twisted; every nonzero exponent must be a power of q
template <class E>
inline TwistedPoly<E> from_additive(const UPoly<E>& h, long q) {
    TwistedPoly<E> out(h.zero_elem());
    for (int i = 0; i <= h.degree(); ++i) {
        if (h[i].is_zero()) continue;
        long e = i;
        int k = 0;
        while (e > 1 && e % q == 0) {
            e /= q;
            ++k;
        }
        if (e != 1) throw NonAdditiveExponent("exponent " + std::to_string(i) + " is not a power of q");
        out.set_coeff(k, h[i]);
    }
    return out;
}

/// evaluate the additive polynomial of f at x: sum f_i x^(q^i)
template <class E>
inline E additive_eval(const TwistedPoly<E>& f, const E& x) {
    E acc = f.zero_elem();
    E xp = x;
    for (int i = 0; i <= f.degree(); ++i) {
        if (i > 0) xp = xp.frobq(1);
        if (!f[i].is_zero()) acc = acc + f[i] * xp;
    }
    return acc;
}

}  // namespace drinfeld

#endif
