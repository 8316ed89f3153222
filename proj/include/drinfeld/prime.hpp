#ifndef DRINFELD_PRIME_HPP
#define DRINFELD_PRIME_HPP

#include <string>
#include <vector>

#include "mpoly.hpp"

namespace drinfeld {

/// The residue field F_P = F_q[T]/(P) for a monic prime P, together with the
/// canonical A-lifts of its elements (representatives of T-degree < deg P).
/// Elements are dense coefficient vectors over F_q; the element order is the
/// odometer order of coefficient encodings, constant term fastest.
class PrimeCtx {
   public:
    PrimeCtx(std::vector<FFElem> P, const FieldCtx& F, long q) : P_(std::move(P)), F_(&F), q_(q) {
        if (!is_prime_over_subfield(P_, F, q)) throw NotPrime("P is not a monic prime of F_q[T]");
        d_ = static_cast<int>(P_.size()) - 1;
        size_ = 1;
        for (int i = 0; i < d_; ++i) size_ *= q;
        sub_ = subfield_elements(F, q);
    }

    using Elem = std::vector<FFElem>;  // length d, coefficients in F_q

    int deg() const { return d_; }
    long size() const { return size_; }
    long q() const { return q_; }
    const std::vector<FFElem>& modulus() const { return P_; }
    const FieldCtx& field() const { return *F_; }

    Elem zero() const { return Elem(d_, FFElem(*F_, 0)); }
    Elem one() const {
        Elem e = zero();
        e[0] = FFElem(*F_, 1);
        return e;
    }

    Elem element(long index) const {
        Elem e = zero();
        for (int i = 0; i < d_; ++i) {
            e[i] = sub_[index % q_];
            index /= q_;
        }
        return e;
    }

    long index_of(const Elem& e) const {
        long idx = 0;
        for (int i = d_ - 1; i >= 0; --i) {
            long pos = 0;
            while (sub_[pos] != e[i]) ++pos;
            idx = idx * q_ + pos;
        }
        return idx;
    }

    bool is_zero(const Elem& e) const {
        for (const FFElem& c : e)
            if (!c.is_zero()) return false;
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r = a;
        for (int i = 0; i < d_; ++i) r[i] = r[i] + b[i];
        return r;
    }

    Elem neg(const Elem& a) const {
        Elem r = a;
        for (int i = 0; i < d_; ++i) r[i] = -r[i];
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<FFElem> prod(2 * d_ - 1, FFElem(*F_, 0));
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) prod[i + j] = prod[i + j] + a[i] * b[j];
        for (int k = 2 * d_ - 2; k >= d_; --k) {
            FFElem c = prod[k];
            if (c.is_zero()) continue;
            for (int i = 0; i <= d_; ++i) prod[k - d_ + i] = prod[k - d_ + i] - c * P_[i];
        }
        prod.resize(d_);
        return prod;
    }

    Elem scalar(const FFElem& s, const Elem& a) const {
        Elem r = a;
        for (int i = 0; i < d_; ++i) r[i] = r[i] * s;
        return r;
    }

    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw ZeroInput("inverse of zero in F_P");
        for (long i = 1; i < size_; ++i) {
            Elem c = element(i);
            Elem p = mul(a, c);
            if (!p[0].is_one()) continue;
            bool ok = true;
            for (int j = 1; j < d_; ++j)
                if (!p[j].is_zero()) ok = false;
            if (ok) return c;
        }
        throw InternalError("F_P inverse not found");
    }

    /// canonical A-lift: the element's coefficient vector as a polynomial in T
    const Elem& lift(const Elem& e) const { return e; }

    std::string str(const Elem& e) const {
        std::string s;
        bool first = true;
        for (int i = d_ - 1; i >= 0; --i) {
            if (e[i].is_zero()) continue;
            if (!first) s += "+";
            first = false;
            std::string cs = F_->elem_str(e[i].value());
            if (i == 0) {
                s += cs;
                continue;
            }
            if (cs != "1") s += (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) + "*";
            s += "T";
            if (i > 1) s += "^" + std::to_string(i);
        }
        return first ? "0" : s;
    }

   private:
    std::vector<FFElem> P_;
    const FieldCtx* F_;
    long q_;
    int d_;
    long size_;
    std::vector<FFElem> sub_;
};

}  // namespace drinfeld

#endif
