#ifndef DRINFELD_FF_HPP
#define DRINFELD_FF_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace drinfeld {

/// Context for the finite field F_{p^n} = F_p[u]/(modulus).
///
/// Elements are encoded as integers in [0, p^n): the base-p digits of the
/// encoding are the coefficients of 1, u, u^2, ... of the residue.  The
/// integer order of encodings is the canonical order on field elements.
/// Arithmetic goes through lookup tables when p^n is small, which covers
/// every field this library touches in practice.
class FieldCtx {
   public:
    FieldCtx(int p, std::vector<int> modulus) : p_(p), mod_(std::move(modulus)) {
        if (p_ < 2 || !is_prime_int(p_)) throw BadInput("field characteristic must be prime");
        if (mod_.size() < 2) throw BadInput("modulus must have degree >= 1");
        n_ = static_cast<int>(mod_.size()) - 1;
        for (int& c : mod_) c = ((c % p_) + p_) % p_;
        if (mod_.back() != 1) throw BadInput("modulus must be monic");
        size_ = 1;
        for (int i = 0; i < n_; ++i) {
            size_ *= p_;
            if (size_ > (1 << 20)) throw BadInput("field too large");
        }
        if (!poly_irreducible(mod_)) throw BadInput("modulus is reducible");
        build_tables();
    }

    int characteristic() const { return p_; }
    int degree() const { return n_; }
    long size() const { return size_; }
    const std::vector<int>& modulus() const { return mod_; }

    int add(int a, int b) const { return tab_ ? add_tab_[a * size_ + b] : add_raw(a, b); }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const { return tab_ ? neg_tab_[a] : neg_raw(a); }
    int mul(int a, int b) const { return tab_ ? mul_tab_[a * size_ + b] : mul_raw(a, b); }
    int inv(int a) const {
        if (a == 0) throw ZeroInput("inverse of zero field element");
        return tab_ ? inv_tab_[a] : pow(a, size_ - 2);
    }

    int pow(int a, long long e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        long long m = size_ - 1;
        e %= m;
        if (e < 0) e += m;
        int r = 1, b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    /// x^(q^e) for q a power of p.
    int frob(int a, long q, int e) const {
        int r = a;
        for (int i = 0; i < e; ++i) r = pow(r, q);
        return r;
    }

    /// true iff a lies in the subfield of q = p^k elements.
    bool in_subfield(int a, long q) const { return pow(a, q) == a; }

    std::string elem_str(int a) const {
        if (a == 0) return "0";
        std::ostringstream os;
        bool first = true;
        std::vector<int> d = digits(a);
        for (int i = n_ - 1; i >= 0; --i) {
            if (!d[i]) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0)
                os << d[i];
            else {
                if (d[i] != 1) os << d[i];
                os << "u";
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

    std::vector<int> digits(int a) const {
        std::vector<int> d(n_);
        for (int i = 0; i < n_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }

    int from_digits(const std::vector<int>& d) const {
        int a = 0;
        for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p_ + (((d[i] % p_) + p_) % p_);
        return a;
    }

    /// Lowest encoding whose powers ... not needed; returns the residue class of u.
    int gen() const { return n_ >= 2 ? p_ : 1 % size_; }

    /// Pinned context registry.  Fixed moduli keep output bit-exact:
    ///   F_4  = F_2[u]/(u^2+u+1),   F_8  = F_2[u]/(u^3+u+1),
    ///   F_9  = F_3[u]/(u^2+1),     F_16 = F_2[u]/(u^4+u+1).
    /// Other sizes get the lexicographically least monic irreducible.
    static const FieldCtx& pinned(int p, int n) {
        static std::map<std::pair<int, int>, std::unique_ptr<FieldCtx>> reg;
        static std::mutex mx;
        std::lock_guard<std::mutex> lk(mx);
        auto key = std::make_pair(p, n);
        auto it = reg.find(key);
        if (it != reg.end()) return *it->second;
        std::vector<int> m;
        if (p == 2 && n == 2) m = {1, 1, 1};
        else if (p == 2 && n == 3) m = {1, 1, 0, 1};
        else if (p == 3 && n == 2) m = {1, 0, 1};
        else if (p == 2 && n == 4) m = {1, 1, 0, 0, 1};
        else m = search_irreducible(p, n);
        auto ctx = std::make_unique<FieldCtx>(p, m);
        auto& ref = *ctx;
        reg.emplace(key, std::move(ctx));
        return ref;
    }

   private:
    int p_, n_;
    long size_;
    std::vector<int> mod_;
    bool tab_ = false;
    std::vector<int> add_tab_, mul_tab_, neg_tab_, inv_tab_;

    static bool is_prime_int(int p) {
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    int add_raw(int a, int b) const {
        int r = 0, mult = 1;
        for (int i = 0; i < n_; ++i) {
            r += ((a % p_ + b % p_) % p_) * mult;
            a /= p_;
            b /= p_;
            mult *= p_;
        }
        return r;
    }

    int neg_raw(int a) const {
        int r = 0, mult = 1;
        for (int i = 0; i < n_; ++i) {
            r += ((p_ - a % p_) % p_) * mult;
            a /= p_;
            mult *= p_;
        }
        return r;
    }

    // schoolbook multiply of digit vectors, reduce by modulus
    int mul_raw(int a, int b) const {
        std::vector<int> da = digits(a), db = digits(b), prod(2 * n_ - 1, 0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        for (int k = 2 * n_ - 2; k >= n_; --k) {
            int c = prod[k];
            if (!c) continue;
            prod[k] = 0;
            for (int i = 0; i < n_; ++i) prod[k - n_ + i] = ((prod[k - n_ + i] - c * mod_[i]) % p_ + p_) % p_;
        }
        std::vector<int> low(prod.begin(), prod.begin() + n_);
        return from_digits(low);
    }

    bool poly_irreducible(const std::vector<int>& f) const {
        int deg = static_cast<int>(f.size()) - 1;
        if (deg == 1) return true;
        // exhaustive search for monic divisors of degree <= deg/2 over F_p
        for (int d = 1; 2 * d <= deg; ++d) {
            long cnt = 1;
            for (int i = 0; i < d; ++i) cnt *= p_;
            for (long t = 0; t < cnt; ++t) {
                std::vector<int> g(d + 1, 0);
                long x = t;
                for (int i = 0; i < d; ++i) {
                    g[i] = static_cast<int>(x % p_);
                    x /= p_;
                }
                g[d] = 1;
                if (poly_divides(g, f)) return false;
            }
        }
        return true;
    }

    bool poly_divides(const std::vector<int>& g, std::vector<int> f) const {
        int dg = static_cast<int>(g.size()) - 1;
        for (int k = static_cast<int>(f.size()) - 1; k >= dg; --k) {
            int c = f[k];
            if (!c) continue;
            for (int i = 0; i <= dg; ++i) f[k - dg + i] = ((f[k - dg + i] - c * g[i]) % p_ + p_) % p_;
        }
        for (int c : f)
            if (c) return false;
        return true;
    }

    static std::vector<int> search_irreducible(int p, int n) {
        // lexicographically least by (c_0, c_1, ...); deterministic across runs
        long cnt = 1;
        for (int i = 0; i < n; ++i) cnt *= p;
        for (long t = 0; t < cnt; ++t) {
            std::vector<int> m(n + 1, 0);
            long x = t;
            for (int i = n - 1; i >= 0; --i) {
                m[i] = static_cast<int>(x % p);
                x /= p;
            }
            m[n] = 1;
            try {
                FieldCtx probe(p, m);
                return m;
            } catch (const BadInput&) {
            }
        }
        throw InternalError("no irreducible polynomial found");
    }

    void build_tables() {
        if (size_ > 256) return;
        tab_ = false;  // build with raw ops first
        add_tab_.resize(size_ * size_);
        mul_tab_.resize(size_ * size_);
        neg_tab_.resize(size_);
        inv_tab_.assign(size_, 0);
        for (long a = 0; a < size_; ++a) {
            neg_tab_[a] = neg_raw(static_cast<int>(a));
            for (long b = 0; b < size_; ++b) {
                add_tab_[a * size_ + b] = add_raw(static_cast<int>(a), static_cast<int>(b));
                mul_tab_[a * size_ + b] = mul_raw(static_cast<int>(a), static_cast<int>(b));
            }
        }
        for (long a = 1; a < size_; ++a)
            for (long b = 1; b < size_; ++b)
                if (mul_tab_[a * size_ + b] == 1) inv_tab_[a] = static_cast<int>(b);
        tab_ = true;
    }
};

/// Element of a FieldCtx.
class FFElem {
   public:
    FFElem() : F_(nullptr), v_(0) {}
    FFElem(const FieldCtx& F, int v) : F_(&F), v_(v) {}

    const FieldCtx& ctx() const {
        if (!F_) throw InternalError("FFElem without context");
        return *F_;
    }
    int value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    FFElem operator+(const FFElem& o) const { return FFElem(ctx(), ctx().add(v_, o.v_)); }
    FFElem operator-(const FFElem& o) const { return FFElem(ctx(), ctx().sub(v_, o.v_)); }
    FFElem operator*(const FFElem& o) const { return FFElem(ctx(), ctx().mul(v_, o.v_)); }
    FFElem operator-() const { return FFElem(ctx(), ctx().neg(v_)); }
    FFElem inv() const { return FFElem(ctx(), ctx().inv(v_)); }
    FFElem pow(long long e) const { return FFElem(ctx(), ctx().pow(v_, e)); }

    bool operator==(const FFElem& o) const { return v_ == o.v_ && F_ == o.F_; }
    bool operator!=(const FFElem& o) const { return !(*this == o); }

    std::string str() const { return ctx().elem_str(v_); }

   private:
    const FieldCtx* F_;
    int v_;
};

inline std::ostream& operator<<(std::ostream& os, const FFElem& x) { return os << x.str(); }

/// x^(q^e), the e-fold q-Frobenius.
inline FFElem ff_frobenius(const FFElem& x, long q, int e) {
    return FFElem(x.ctx(), x.ctx().frob(x.value(), q, e));
}

/// Embedding of a small field into a big one of the same characteristic.
/// The image of the small generator is the least root of the small modulus
/// in the big field; elements map through their digit expansion.
class FieldEmbed {
   public:
    FieldEmbed(const FieldCtx& from, const FieldCtx& to) : from_(&from), to_(&to) {
        if (from.characteristic() != to.characteristic()) throw BadInput("embedding across characteristics");
        if (to.degree() % from.degree() != 0) throw BadInput("no subfield embedding");
        gen_image_ = -1;
        for (int c = 0; c < to.size(); ++c) {
            if (eval_modulus(c) == 0) {
                gen_image_ = c;
                break;
            }
        }
        if (gen_image_ < 0) throw InternalError("modulus has no root in extension");
    }

    FFElem operator()(const FFElem& x) const {
        std::vector<int> d = x.ctx().digits(x.value());
        int acc = 0;
        for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i)
            acc = to_->add(to_->mul(acc, gen_image_), d[i] % to_->characteristic());
        return FFElem(*to_, acc);
    }

   private:
    const FieldCtx* from_;
    const FieldCtx* to_;
    int gen_image_;

    int eval_modulus(int c) const {
        const std::vector<int>& m = from_->modulus();
        int acc = 0;
        for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i) acc = to_->add(to_->mul(acc, c), m[i]);
        return acc;
    }
};

}  // namespace drinfeld

#endif
