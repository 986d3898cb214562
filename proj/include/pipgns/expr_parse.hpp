#pragma once

#include "pipgns/sequence.hpp"

#include <cctype>
#include <functional>
#include <string>
#include <string_view>

namespace pipgns {

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t column)
        : Error(what + " (column " + std::to_string(column + 1) + ")"), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

using NameResolver = std::function<std::optional<Sequence>(const std::string&)>;

namespace detail {

inline std::optional<Scalar> as_constant(const Sequence& s) {
    if (!s.correction().empty()) return std::nullopt;
    const auto& terms = s.tail().terms();
    if (terms.empty()) return Scalar(0);
    if (terms.size() != 1 || !terms[0].base.is_one()) return std::nullopt;
    const RatFunc& f = terms[0].coeff;
    if (!f.is_polynomial() || f.num().degree() != 0) return std::nullopt;
    return f.num().coeff(0);
}

inline Sequence reciprocal(const Sequence& s, std::size_t col) {
    if (!s.correction().empty() || s.tail().terms().size() != 1)
        throw ParseError("division only by a single closed-form term", col);
    const TailTerm& t = s.tail().terms()[0];
    return Sequence(TailExpr::geometric(t.base.inverse(), t.coeff.reciprocal()));
}

class ExprParser {
public:
    ExprParser(std::string_view text, const NameResolver& names) : s_(text), names_(names) {}

    Sequence parse() {
        Sequence v = expr();
        skip();
        if (p_ != s_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, p_); }
    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool accept(char c) {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool peek_ident(std::string_view word) {
        skip();
        if (s_.substr(p_, word.size()) != word) return false;
        std::size_t q = p_ + word.size();
        return q >= s_.size() || !(std::isalnum(static_cast<unsigned char>(s_[q])) || s_[q] == '_');
    }
    long integer() {
        skip();
        std::size_t start = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (start == p_) fail("expected integer");
        try {
            return std::stol(std::string(s_.substr(start, p_ - start)));
        } catch (const std::out_of_range&) {
            p_ = start;
            fail("integer out of range");
        }
    }

    Sequence expr() {
        Sequence acc;
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        acc = term();
        if (negate) acc = -acc;
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Sequence term() {
        Sequence acc = power();
        for (;;) {
            if (accept('*')) {
                acc = acc * power();
            } else if (accept('/')) {
                std::size_t col = p_;
                Sequence d = power();
                if (auto c = as_constant(d)) {
                    if (c->is_zero()) throw ParseError("division by zero", col);
                    acc = acc * c->inverse();
                } else {
                    acc = acc * reciprocal(d, col);
                }
            } else {
                return acc;
            }
        }
    }

    Sequence power() {
        std::size_t col = p_;
        Sequence base = atom();
        if (!accept('^')) return base;
        bool neg = accept('-');
        if (peek_ident("n")) {
            p_ += 1;
            auto c = as_constant(base);
            if (!c || c->is_zero()) throw ParseError("base of ^n must be a nonzero constant", col);
            Scalar r = neg ? c->inverse() : *c;
            return Sequence(TailExpr::geometric(r, RatFunc(Scalar(1))));
        }
        long k;
        if (accept('(')) {
            std::size_t ecol = p_;
            auto c = as_constant(expr());
            expect(')');
            if (!c || !c->is_real() || c->re().get_den() != 1 || !c->re().get_num().fits_slong_p())
                throw ParseError("exponent must be an integer or n", ecol);
            k = c->re().get_num().get_si();
        } else {
            k = integer();
        }
        if (neg) k = -k;
        if (k < 0) {
            base = reciprocal(base, col);
            k = -k;
        }
        if (k > 64) throw ParseError("exponent too large", col);
        Sequence out = Sequence::constant(Scalar(1));
        for (long j = 0; j < k; ++j) out = out * base;
        return out;
    }

    Sequence atom() {
        skip();
        if (p_ >= s_.size()) fail("unexpected end of input");
        char c = s_[p_];
        if (accept('-')) return -power();
        if (std::isdigit(static_cast<unsigned char>(c))) return Sequence::constant(Scalar(integer()));
        if (accept('(')) {
            Sequence v = expr();
            expect(')');
            return v;
        }
        if (peek_ident("n")) {
            p_ += 1;
            return Sequence::identity_index();
        }
        if (peek_ident("i")) {
            p_ += 1;
            return Sequence::constant(Scalar::i());
        }
        if (peek_ident("patch")) {
            p_ += 5;
            expect('{');
            std::map<long, Scalar> m;
            if (!accept('}')) {
                do {
                    std::size_t kcol = p_;
                    long k = integer();
                    if (k < 1) throw ParseError("patch index must be >= 1", kcol);
                    expect(':');
                    std::size_t vcol = p_;
                    auto v = as_constant(expr());
                    if (!v) throw ParseError("patch value must be a constant", vcol);
                    m[k] += *v;
                } while (accept(','));
                expect('}');
            }
            return Sequence(std::move(m), {});
        }
        if (peek_ident("vec")) {
            p_ += 3;
            expect('(');
            std::vector<Scalar> vals;
            do {
                std::size_t vcol = p_;
                auto v = as_constant(expr());
                if (!v) throw ParseError("vector entry must be a constant", vcol);
                vals.push_back(*v);
            } while (accept(','));
            expect(')');
            return Sequence::finite(vals);
        }
        if (c == 'e' && p_ + 1 < s_.size() && s_[p_ + 1] == '[') {
            p_ += 1;
            expect('[');
            std::size_t kcol = p_;
            long k = integer();
            if (k < 1) throw ParseError("unit index must be >= 1", kcol);
            expect(']');
            return Sequence::unit(k);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = p_;
            while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
            std::string name(s_.substr(start, p_ - start));
            if (names_)
                if (auto v = names_(name)) return *v;
            throw ParseError("unknown name '" + name + "'", start);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    const NameResolver& names_;
    std::size_t p_ = 0;
};

}  // namespace detail

/// Parses the sequence-literal grammar: arithmetic over n, i, integers, c^n, patch{k:v,...},
/// e[k], vec(...) and resolver-supplied names.
inline Sequence parse_sequence(std::string_view text, const NameResolver& names = {}) {
    return detail::ExprParser(text, names).parse();
}

}  // namespace pipgns
