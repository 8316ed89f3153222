#ifndef DRINFELD_UPOLY_HPP
#define DRINFELD_UPOLY_HPP

#include <functional>
#include <type_traits>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace drinfeld {

/// Dense univariate polynomial over an arbitrary ring element type E.
/// E must provide +, -, *, unary -, is_zero(), ==.  A zero exemplar pins the
/// ring, so the zero polynomial still knows where it lives.
template <class E>
class UPoly {
   public:
    UPoly() requires std::is_default_constructible_v<E> : zero_() {}
    explicit UPoly(E zero) : zero_(std::move(zero)) {}
    UPoly(E zero, std::vector<E> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) { trim(); }

    static UPoly x_power(E zero, const E& one, int e) {
        std::vector<E> c(static_cast<size_t>(e) + 1, zero);
        c[e] = one;
        return UPoly(std::move(zero), std::move(c));
    }

    const E& zero_elem() const { return zero_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<E>& coeffs() const { return c_; }
    const E& operator[](int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : zero_; }

    void set_coeff(int i, E v) {
        if (i >= static_cast<int>(c_.size())) c_.resize(i + 1, zero_);
        c_[i] = std::move(v);
        trim();
    }

    const E& leading() const {
        if (c_.empty()) return zero_;
        return c_.back();
    }

    UPoly operator+(const UPoly& o) const {
        std::vector<E> r(std::max(c_.size(), o.c_.size()), zero_);
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size() && i < o.c_.size())
                r[i] = c_[i] + o.c_[i];
            else if (i < c_.size())
                r[i] = c_[i];
            else
                r[i] = o.c_[i];
        }
        return UPoly(zero_, std::move(r));
    }

    UPoly operator-(const UPoly& o) const {
        std::vector<E> r(std::max(c_.size(), o.c_.size()), zero_);
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size() && i < o.c_.size())
                r[i] = c_[i] - o.c_[i];
            else if (i < c_.size())
                r[i] = c_[i];
            else
                r[i] = -o.c_[i];
        }
        return UPoly(zero_, std::move(r));
    }

    UPoly operator*(const UPoly& o) const {
        if (c_.empty() || o.c_.empty()) return UPoly(zero_);
        std::vector<E> r(c_.size() + o.c_.size() - 1, zero_);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j].is_zero()) continue;
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
            }
        }
        return UPoly(zero_, std::move(r));
    }

    UPoly scaled(const E& s) const {
        std::vector<E> r = c_;
        for (E& x : r) x = x * s;
        return UPoly(zero_, std::move(r));
    }

    /// (quotient, remainder) with a monic divisor; exact over any ring
    std::pair<UPoly, UPoly> divrem_monic(const UPoly& g) const {
        if (g.is_zero()) throw ZeroInput("division by zero polynomial");
        int dg = g.degree();
        UPoly rem = *this;
        UPoly quo(zero_);
        while (rem.degree() >= dg) {
            int k = rem.degree() - dg;
            E c = rem.leading();
            quo.set_coeff(k, c);
            for (int i = 0; i <= dg; ++i) {
                E t = rem[k + i] - c * g[i];
                rem.raw_set(k + i, std::move(t));
            }
            rem.trim();
        }
        return {quo, rem};
    }

    E eval(const E& x) const {
        if (c_.empty()) return zero_;
        E acc = c_.back();
        for (int i = static_cast<int>(c_.size()) - 2; i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

    UPoly pow(long e, const E& one) const {
        UPoly r(zero_, {one});
        UPoly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    UPoly derivative(int char_p) const {
        std::vector<E> r;
        for (size_t i = 1; i < c_.size(); ++i) {
            int m = static_cast<int>(i % char_p);
            E t = zero_;
            for (int k = 0; k < m; ++k) t = t + c_[i];
            r.push_back(std::move(t));
        }
        return UPoly(zero_, std::move(r));
    }

    /// substitute X -> X^k
    UPoly inflate(int k) const {
        if (c_.empty()) return *this;
        std::vector<E> r(static_cast<size_t>(degree()) * k + 1, zero_);
        for (size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
        return UPoly(zero_, std::move(r));
    }

    /// inverse of inflate; fails when a nonzero coefficient sits off-grid
    UPoly deflate(int k) const {
        std::vector<E> r;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i % k == 0)
                r.push_back(c_[i]);
            else if (!c_[i].is_zero())
                throw InternalError("exponent not a multiple in deflate");
        }
        return UPoly(zero_, std::move(r));
    }

    UPoly compose(const UPoly& g) const {
        UPoly acc(zero_);
        for (int i = degree(); i >= 0; --i) {
            acc = acc * g;
            acc.set_coeff(0, acc[0] + c_[i]);
        }
        return acc;
    }

    bool operator==(const UPoly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    template <class Fmt>
    std::string str(const std::string& var, Fmt fmt) const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            std::string cs = fmt(c_[i]);
            if (i == 0) {
                os << cs;
                continue;
            }
            if (cs != "1") {
                bool paren = cs.find('+') != std::string::npos || cs.find('/') != std::string::npos;
                os << (paren ? "(" + cs + ")" : cs) << "*";
            }
            os << var;
            if (i > 1) os << "^" << i;
        }
        return os.str();
    }

   private:
    E zero_;
    std::vector<E> c_;

    void raw_set(int i, E v) {
        if (i >= static_cast<int>(c_.size())) c_.resize(i + 1, zero_);
        c_[i] = std::move(v);
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

}  // namespace drinfeld

#endif
