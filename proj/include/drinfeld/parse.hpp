#ifndef DRINFELD_PARSE_HPP
#define DRINFELD_PARSE_HPP

#include <cctype>
#include <string>
#include <vector>

#include "mpoly.hpp"

namespace drinfeld {

/// Recursive-descent parser for plain ASCII polynomial expressions:
///   expr := [+|-] term ((+|-) term)*,  term := factor (* factor)*,
///   factor := atom [^ uint],  atom := variable | u | integer | ( expr )
/// J-names like J12 (one digit per g-variable) and the rank-2 alias j are
/// resolved to invariant monomials when enabled.
class PolyParser {
   public:
    PolyParser(std::shared_ptr<const PolyRing> R, bool allow_jnames = false)
        : R_(std::move(R)), jnames_(allow_jnames) {}

    MPoly parse(const std::string& text) {
        s_ = text;
        pos_ = 0;
        MPoly f = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("trailing input at position " + std::to_string(pos_));
        return f;
    }

   private:
    std::shared_ptr<const PolyRing> R_;
    bool jnames_;
    std::string s_;
    size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    MPoly expr() {
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        MPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                break;
        }
        return acc;
    }

    MPoly term() {
        MPoly acc = factor();
        while (eat('*')) acc *= factor();
        return acc;
    }

    MPoly factor() {
        MPoly base = atom();
        if (eat('^')) {
            long e = integer();
            return base.pow(e);
        }
        return base;
    }

    long integer() {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("expected integer at position " + std::to_string(pos_));
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000) throw ParseError("integer too large");
            ++pos_;
        }
        return v;
    }

    MPoly atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MPoly f = expr();
            if (!eat(')')) throw ParseError("missing closing parenthesis");
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return MPoly::constant_int(R_, integer());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])))) {
                name += s_[pos_];
                ++pos_;
            }
            return resolve(name);
        }
        throw ParseError(std::string("unexpected character '") + c + "'");
    }

    MPoly resolve(const std::string& name) {
        if (name == "u") {
            if (R_->F->degree() < 2) throw ParseError("u is not defined over a prime field");
            return MPoly::constant(R_, FFElem(*R_->F, R_->F->gen()));
        }
        for (int j = 0; j < R_->nvars(); ++j)
            if (R_->vars[j] == name) return MPoly::variable(R_, j);
        if (jnames_) {
            int ng = R_->nvars() - (R_->t_index >= 0 ? 1 : 0);
            if (name == "j" && ng == 1)
                return MPoly::variable_named(R_, "g1", static_cast<int>(R_->q) + 1);
            if (name.size() == static_cast<size_t>(ng) + 1 && name[0] == 'J') {
                MPoly f = MPoly::constant_int(R_, 1);
                for (int i = 0; i < ng; ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(name[i + 1])))
                        throw ParseError("bad generator name " + name);
                    int e = name[i + 1] - '0';
                    if (e) f *= MPoly::variable_named(R_, "g" + std::to_string(i + 1), e);
                }
                return f;
            }
        }
        throw ParseError("unknown symbol " + name);
    }
};

inline MPoly parse_poly(const std::shared_ptr<const PolyRing>& R, const std::string& text,
                        bool allow_jnames = false) {
    return PolyParser(R, allow_jnames).parse(text);
}

/// parse a univariate polynomial in T over F_q into its coefficient vector
inline std::vector<FFElem> parse_subfield_poly(const FieldCtx& F, long q, const std::string& text) {
    auto R = make_poly_ring(F, q, {"T"});
    MPoly f = parse_poly(R, text);
    int d = f.degree_in(0);
    if (d < 0) throw ParseError("zero polynomial");
    std::vector<FFElem> out(static_cast<size_t>(d) + 1, FFElem(F, 0));
    for (const MPoly::Term& t : f.terms()) {
        FFElem c(F, t.c);
        if (!F.in_subfield(t.c, q)) throw ParseError("coefficient not in F_q");
        out[detail::exp_get(t.e, 0)] = c;
    }
    return out;
}

}  // namespace drinfeld

#endif
