#ifndef DRINFELD_TOWER_HPP
#define DRINFELD_TOWER_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ratfunc.hpp"
#include "upoly.hpp"

namespace drinfeld {

class Tower;

/// Element of an iterated extension.  Level 0 holds a base-field value; a
/// level-k element is a polynomial in the level-k generator with level-(k-1)
/// coefficients, trailing zeros trimmed (an empty list is zero).  Arithmetic
/// mixes levels freely: lower-level values act as scalars.
class TElem {
   public:
    TElem() : tw_(nullptr), lvl_(0) {}
    TElem(const Tower* tw, RatFunc base) : tw_(tw), lvl_(0), base_(std::move(base)) {}
    TElem(const Tower* tw, int lvl, std::vector<TElem> up) : tw_(tw), lvl_(lvl), up_(std::move(up)) {
        trim();
    }

    int level() const { return lvl_; }
    const Tower* tower() const { return tw_; }
    const RatFunc& base() const { return base_; }
    const std::vector<TElem>& up() const { return up_; }

    bool is_zero() const {
        if (lvl_ == 0) return base_.is_zero();
        for (const TElem& x : up_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_one() const {
        if (lvl_ == 0) return base_.is_one();
        if (up_.empty()) return false;
        if (!up_[0].is_one()) return false;
        for (size_t i = 1; i < up_.size(); ++i)
            if (!up_[i].is_zero()) return false;
        return true;
    }

    TElem operator+(const TElem& o) const;
    TElem operator-(const TElem& o) const;
    TElem operator*(const TElem& o) const;
    TElem operator-() const;
    TElem frobq(int k) const;
    TElem pow(long long e) const;
    TElem inv() const;

    bool operator==(const TElem& o) const;
    bool operator!=(const TElem& o) const { return !(*this == o); }

    /// the element as a base-field value, if all higher components vanish
    std::optional<RatFunc> to_base() const {
        if (lvl_ == 0) return base_;
        for (size_t i = 1; i < up_.size(); ++i)
            if (!up_[i].is_zero()) return std::nullopt;
        if (up_.empty()) return zero_base();
        return up_[0].to_base();
    }

    std::string str() const;

    // internal helpers used by Tower
    void trim() {
        while (!up_.empty() && up_.back().is_zero()) up_.pop_back();
    }
    RatFunc zero_base() const;
    TElem rebased(const Tower* nt) const {
        TElem r = *this;
        r.set_tower(nt);
        return r;
    }
    void set_tower(const Tower* nt) {
        tw_ = nt;
        for (TElem& x : up_) x.set_tower(nt);
    }

   private:
    const Tower* tw_;
    int lvl_;
    RatFunc base_;
    std::vector<TElem> up_;

    friend class Tower;
};

/// A zero divisor surfaced during inversion: `factor` is a monic proper
/// factor of the minimal polynomial at `level`.  The caller rebuilds the
/// tower with a smaller minimal polynomial and replays its computation.
struct SplitDetected : std::runtime_error {
    int level;
    std::shared_ptr<UPoly<TElem>> factor;
    SplitDetected(int lvl, UPoly<TElem> f)
        : std::runtime_error("zero divisor detected at tower level " + std::to_string(lvl)),
          level(lvl),
          factor(std::make_shared<UPoly<TElem>>(std::move(f))) {}
};

struct NoRootsLeft : std::runtime_error {
    NoRootsLeft() : std::runtime_error("polynomial already splits over the tower") {}
};

/// Iterated extension of the fraction field of a PolyRing.  Each level
/// adjoins a root of a monic polynomial over the previous level.  Minimal
/// polynomials are not proven irreducible; soundness is guaranteed by
/// SplitDetected (dynamic evaluation).
class Tower {
   public:
    struct Level {
        UPoly<TElem> minpoly;  // coefficients at the previous level, monic
        std::string name;
        int deg;
    };

    static std::shared_ptr<const Tower> make_base(std::shared_ptr<const PolyRing> R) {
        return std::shared_ptr<const Tower>(new Tower(std::move(R)));
    }

    std::shared_ptr<const Tower> extended(const UPoly<TElem>& minpoly, const std::string& name) const {
        if (minpoly.degree() < 1) throw BadInput("minimal polynomial must have degree >= 1");
        if (!minpoly.leading().is_one()) throw NonMonicDivisor("minimal polynomial must be monic");
        auto nt = std::shared_ptr<Tower>(new Tower(R_));
        nt->levels_ = levels_;
        Level lv{minpoly, name, minpoly.degree()};
        nt->levels_.push_back(std::move(lv));
        nt->fix_pointers();
        return nt;
    }

    /// replace level k's minimal polynomial by a (monic) factor of it
    std::shared_ptr<const Tower> with_level_minpoly(int k, const UPoly<TElem>& factor) const {
        auto nt = std::shared_ptr<Tower>(new Tower(R_));
        nt->levels_ = levels_;
        nt->levels_[k - 1].minpoly = factor;
        nt->levels_[k - 1].deg = factor.degree();
        nt->levels_.erase(nt->levels_.begin() + k, nt->levels_.end());  // higher levels are stale
        nt->fix_pointers();
        return nt;
    }

    const std::shared_ptr<const PolyRing>& ring_ptr() const { return R_; }
    int num_levels() const { return static_cast<int>(levels_.size()); }
    int level_degree(int k) const { return levels_[k - 1].deg; }
    const UPoly<TElem>& level_minpoly(int k) const { return levels_[k - 1].minpoly; }
    const std::string& level_name(int k) const { return levels_[k - 1].name; }

    long total_degree() const {
        long d = 1;
        for (const Level& l : levels_) d *= l.deg;
        return d;
    }

    TElem zero(int lvl = -1) const {
        if (lvl < 0) lvl = num_levels();
        if (lvl == 0) return TElem(this, RatFunc::zero(R_));
        return TElem(this, lvl, {});
    }

    TElem one(int lvl = 0) const {
        if (lvl == 0) return TElem(this, RatFunc::one(R_));
        return TElem(this, lvl, {one(lvl - 1)});
    }

    TElem from_base(RatFunc x) const { return TElem(this, std::move(x)); }
    TElem from_base(MPoly x) const { return TElem(this, RatFunc(std::move(x))); }

    /// the generator of level k, as a level-k element
    TElem gen(int k) const {
        if (k < 1 || k > num_levels()) throw BadInput("no such tower level");
        if (level_degree(k) == 1) return TElem(this, k, {-levels_[k - 1].minpoly[0]});
        return TElem(this, k, {zero(k - 1), one(k - 1)});
    }

    TElem promote(const TElem& x, int lvl) const {
        if (x.level() == lvl) return x;
        if (x.level() > lvl) throw InternalError("cannot demote tower element");
        return TElem(this, lvl, {promote(x, lvl - 1)});
    }

    std::string describe() const {
        std::ostringstream os;
        os << "base: ";
        for (int j = 0; j < R_->nvars(); ++j) os << (j ? ", " : "") << R_->vars[j];
        os << " over F_" << R_->F->size() << "\n";
        for (int k = 1; k <= num_levels(); ++k) {
            os << "level " << k << ": " << level_name(k) << " with minimal polynomial "
               << levels_[k - 1].minpoly.str(level_name(k), [](const TElem& c) { return c.str(); })
               << " = 0  (degree " << level_degree(k) << ")\n";
        }
        os << "total degree: " << total_degree() << "\n";
        return os.str();
    }

   private:
    std::shared_ptr<const PolyRing> R_;
    std::vector<Level> levels_;

    explicit Tower(std::shared_ptr<const PolyRing> R) : R_(std::move(R)) {}

    void fix_pointers() {
        for (Level& l : levels_) {
            UPoly<TElem> fixed(l.minpoly.zero_elem().rebased(this));
            for (int i = 0; i <= l.minpoly.degree(); ++i) fixed.set_coeff(i, l.minpoly[i].rebased(this));
            l.minpoly = std::move(fixed);
        }
    }

    friend class TElem;
};

inline RatFunc TElem::zero_base() const { return RatFunc::zero(tw_->ring_ptr()); }

inline TElem TElem::operator+(const TElem& o) const {
    if (lvl_ == 0 && o.lvl_ == 0) return TElem(tw_, base_ + o.base_);
    if (lvl_ < o.lvl_) return o + *this;
    if (o.lvl_ < lvl_) {
        // add into the constant coefficient
        TElem r = *this;
        if (r.up_.empty()) r.up_.push_back(tw_->zero(lvl_ - 1));
        r.up_[0] = r.up_[0] + o;
        r.trim();
        return r;
    }
    std::vector<TElem> r(std::max(up_.size(), o.up_.size()), tw_->zero(lvl_ - 1));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < up_.size() && i < o.up_.size())
            r[i] = up_[i] + o.up_[i];
        else if (i < up_.size())
            r[i] = up_[i];
        else
            r[i] = o.up_[i];
    }
    return TElem(tw_, lvl_, std::move(r));
}

inline TElem TElem::operator-() const {
    if (lvl_ == 0) return TElem(tw_, -base_);
    std::vector<TElem> r;
    r.reserve(up_.size());
    for (const TElem& x : up_) r.push_back(-x);
    return TElem(tw_, lvl_, std::move(r));
}

inline TElem TElem::operator-(const TElem& o) const { return *this + (-o); }

inline TElem TElem::operator*(const TElem& o) const {
    if (is_zero() || o.is_zero()) return tw_->zero(std::max(lvl_, o.lvl_));
    if (lvl_ == 0 && o.lvl_ == 0) return TElem(tw_, base_ * o.base_);
    if (lvl_ < o.lvl_) return o * *this;
    if (o.lvl_ < lvl_) {
        std::vector<TElem> r;
        r.reserve(up_.size());
        for (const TElem& x : up_) r.push_back(x * o);
        return TElem(tw_, lvl_, std::move(r));
    }
    // equal levels >= 1: convolution, then reduce by the minimal polynomial
    const int n = tw_->level_degree(lvl_);
    std::vector<TElem> conv(up_.size() + o.up_.size() - 1, tw_->zero(lvl_ - 1));
    for (size_t i = 0; i < up_.size(); ++i) {
        if (up_[i].is_zero()) continue;
        for (size_t j = 0; j < o.up_.size(); ++j) {
            if (o.up_[j].is_zero()) continue;
            conv[i + j] = conv[i + j] + up_[i] * o.up_[j];
        }
    }
    const UPoly<TElem>& m = tw_->level_minpoly(lvl_);
    for (int i = static_cast<int>(conv.size()) - 1; i >= n; --i) {
        if (conv[i].is_zero()) continue;
        TElem c = std::move(conv[i]);
        conv[i] = tw_->zero(lvl_ - 1);
        for (int j = 0; j < n; ++j) {
            if (m[j].is_zero()) continue;
            conv[i - n + j] = conv[i - n + j] - c * m[j];
        }
    }
    conv.resize(std::min(conv.size(), static_cast<size_t>(n)));
    return TElem(tw_, lvl_, std::move(conv));
}

inline TElem TElem::pow(long long e) const {
    if (e < 0) throw BadInput("negative power");
    TElem r = tw_->one(0);
    TElem b = *this;
    while (e) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

inline TElem TElem::frobq(int k) const {
    long q = tw_->ring_ptr()->q;
    if (lvl_ == 0) return TElem(tw_, base_.frobq(k));
    TElem r = *this;
    for (int i = 0; i < k; ++i) r = r.pow(q);
    return r;
}

inline bool TElem::operator==(const TElem& o) const { return (*this - o).is_zero(); }

/// dynamic-evaluation inversion: extended gcd against the level's minimal
/// polynomial; a nontrivial gcd aborts with SplitDetected
inline TElem TElem::inv() const {
    if (is_zero()) throw ZeroInput("inverse of zero tower element");
    if (lvl_ == 0) return TElem(tw_, base_.inv());
    TElem z = tw_->zero(lvl_ - 1);
    UPoly<TElem> r0 = tw_->level_minpoly(lvl_);
    UPoly<TElem> r1(z, up_);
    UPoly<TElem> s0(z), s1(z, {tw_->one(lvl_ - 1)});
    while (!r1.is_zero()) {
        TElem lc = r1.leading();
        if (!lc.is_one()) {
            TElem il = lc.inv();  // may recurse / throw
            r1 = r1.scaled(il);
            s1 = s1.scaled(il);
        }
        auto [q, r] = r0.divrem_monic(r1);
        UPoly<TElem> s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() > 0) throw SplitDetected(lvl_, r0);
    // r0 is the constant gcd = 1 (monicized); s0 * this == 1 mod minpoly
    TElem result(tw_, lvl_, s0.coeffs());
    return result;
}

inline std::string TElem::str() const {
    struct Walker {
        std::vector<std::pair<std::vector<int>, const RatFunc*>> terms;
        int depth;
        void walk(const TElem& x, std::vector<int>& idx) {
            if (x.level() == 0) {
                if (!x.base().is_zero()) terms.emplace_back(idx, &x.base());
                return;
            }
            for (size_t i = 0; i < x.up().size(); ++i) {
                idx[x.level() - 1] = static_cast<int>(i);
                walk(x.up()[i], idx);
            }
            idx[x.level() - 1] = 0;
        }
    };
    if (is_zero()) return "0";
    Walker w;
    std::vector<int> idx(static_cast<size_t>(lvl_), 0);
    w.walk(*this, idx);
    std::sort(w.terms.begin(), w.terms.end(), [](const auto& a, const auto& b) {
        const std::vector<int>&x = a.first, &y = b.first;
        for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i)
            if (x[i] != y[i]) return x[i] > y[i];
        return false;
    });
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : w.terms) {
        if (!first) os << " + ";
        first = false;
        std::string cs = c->str();
        bool anygen = false;
        for (int v : e) anygen |= v > 0;
        bool paren = cs.find('+') != std::string::npos || cs.find('/') != std::string::npos;
        if (!anygen) {
            os << (paren ? "(" + cs + ")" : cs);
            continue;
        }
        bool star = false;
        if (cs != "1") {
            os << (paren ? "(" + cs + ")" : cs);
            star = true;
        }
        for (size_t k = 0; k < e.size(); ++k) {
            if (!e[k]) continue;
            if (star) os << "*";
            star = true;
            os << tower()->level_name(static_cast<int>(k) + 1);
            if (e[k] > 1) os << "^" << e[k];
        }
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const TElem& x) { return os << x.str(); }

/// spec operation: inversion with the D5 contract
inline TElem tower_inv(const TElem& x) { return x.inv(); }

/// Divide out the known roots of monic f, then extend the tower by the
/// remaining factor (or return its root directly when it is linear).
inline std::pair<std::shared_ptr<const Tower>, TElem> adjoin_root(
    std::shared_ptr<const Tower> t, UPoly<TElem> f, const std::vector<TElem>& known_roots,
    const std::string& name) {
    if (!f.leading().is_one()) throw NonMonicDivisor("adjoin_root needs a monic polynomial");
    for (const TElem& r : known_roots) {
        UPoly<TElem> lin(f.zero_elem(), {-r, t->one(0)});
        auto [q, rem] = f.divrem_monic(lin);
        if (!rem.is_zero()) throw InternalError("known root fails exact division");
        f = std::move(q);
    }
    if (f.degree() == 0) throw NoRootsLeft();
    if (f.degree() == 1) return {t, -f[0]};
    auto nt = t->extended(f, name);
    return {nt, nt->gen(nt->num_levels())};
}

}  // namespace drinfeld

#endif
