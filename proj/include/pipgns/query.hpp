#pragma once

#include "pipgns/expr_parse.hpp"
#include "pipgns/products.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pipgns {

namespace detail {

inline ParseError shifted(const ParseError& e, std::size_t offset) {
    std::string m = e.what();
    auto k = m.rfind(" (column ");
    if (k != std::string::npos) m.erase(k);
    return ParseError(m, offset + e.column());
}

/// Sums of [coefficient *] atom, atom one of id, 0, pi(x), |u><w|.
class OperatorParser {
public:
    OperatorParser(std::string_view text, const NameResolver& names) : s_(text), names_(names) {}

    PipOperator parse() {
        skip();
        if (p_ == s_.size()) fail("empty operator expression");
        Scalar sign(1);
        if (s_[p_] == '-') {
            sign = Scalar(-1);
            ++p_;
        } else if (s_[p_] == '+') {
            ++p_;
        }
        PipOperator T = term() * sign;
        for (;;) {
            skip();
            if (p_ == s_.size()) break;
            if (s_[p_] == '+') {
                ++p_;
                T = T + term();
            } else if (s_[p_] == '-') {
                ++p_;
                T = T - term();
            } else {
                fail("expected '+' or '-'");
            }
        }
        return T;
    }

private:
    [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, p_); }
    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool word_at(std::size_t q, std::string_view w) const {
        if (s_.substr(q, w.size()) != w) return false;
        std::size_t e = q + w.size();
        return e == s_.size() || !(std::isalnum(static_cast<unsigned char>(s_[e])) || s_[e] == '_');
    }
    bool atom_at(std::size_t q) const {
        while (q < s_.size() && std::isspace(static_cast<unsigned char>(s_[q]))) ++q;
        if (q >= s_.size()) return false;
        if (s_[q] == '|' || word_at(q, "id") || s_.substr(q, 3) == "pi(") return true;
        if (s_[q] == '0') {
            std::size_t e = q + 1;
            while (e < s_.size() && std::isspace(static_cast<unsigned char>(s_[e]))) ++e;
            return e == s_.size() || s_[e] == '+' || s_[e] == '-';
        }
        return false;
    }

    Sequence literal(std::size_t from, std::size_t to) const {
        try {
            return parse_sequence(s_.substr(from, to - from), names_);
        } catch (const ParseError& e) {
            throw shifted(e, from);
        }
    }

    std::size_t close_paren(std::size_t q) const {
        int depth = 0;
        for (; q < s_.size(); ++q) {
            if (s_[q] == '(' || s_[q] == '{' || s_[q] == '[') ++depth;
            if (s_[q] == ')' || s_[q] == '}' || s_[q] == ']') {
                if (depth == 0) return q;
                --depth;
            }
        }
        throw ParseError("unbalanced parentheses", s_.size());
    }

    std::size_t find_top(std::size_t q, std::string_view tok) const {
        int depth = 0;
        for (; q < s_.size(); ++q) {
            if (depth == 0 && s_.substr(q, tok.size()) == tok) return q;
            if (s_[q] == '(' || s_[q] == '{' || s_[q] == '[') ++depth;
            if (s_[q] == ')' || s_[q] == '}' || s_[q] == ']') --depth;
        }
        throw ParseError("missing '" + std::string(tok) + "'", s_.size());
    }

    PipOperator term() {
        skip();
        if (atom_at(p_)) return atom();
        const std::size_t from = p_;
        int depth = 0;
        std::size_t q = p_;
        for (; q < s_.size(); ++q) {
            char ch = s_[q];
            if (ch == '(' || ch == '{' || ch == '[') ++depth;
            if (ch == ')' || ch == '}' || ch == ']') --depth;
            if (depth == 0 && ch == '*' && atom_at(q + 1)) break;
        }
        if (q == s_.size()) fail("expected id, 0, pi(x), |u><w| or a coefficient times one of them");
        Sequence c = literal(from, q);
        auto k = as_constant(c);
        if (!k) throw ParseError("operator coefficient must be a constant", from);
        p_ = q + 1;
        return atom() * *k;
    }

    PipOperator atom() {
        skip();
        if (word_at(p_, "id")) {
            p_ += 2;
            return PipOperator::identity();
        }
        if (s_[p_] == '0') {
            ++p_;
            return PipOperator::zero();
        }
        if (s_.substr(p_, 3) == "pi(") {
            const std::size_t from = p_ + 3, to = close_paren(from);
            p_ = to + 1;
            return PipOperator::multiplication(literal(from, to));
        }
        const std::size_t from = p_ + 1, mid = find_top(from, "><");
        const std::size_t to = find_top(mid + 2, "|");
        p_ = to + 1;
        return PipOperator::rank_one(literal(from, mid), literal(mid + 2, to));
    }

    std::string_view s_;
    const NameResolver& names_;
    std::size_t p_ = 0;
};

inline NameResolver resolver_for(const std::map<std::string, Sequence>& names) {
    return [&names](const std::string& n) -> std::optional<Sequence> {
        auto it = names.find(n);
        if (it == names.end()) return std::nullopt;
        return it->second;
    };
}

}  // namespace detail

inline PipOperator parse_operator(std::string_view text, const std::map<std::string, Sequence>& names = {}) {
    const NameResolver r = detail::resolver_for(names);
    return detail::OperatorParser(text, r).parse();
}

/// "T_k sym ... sym T_1" with one product symbol; bullet and star take exactly two operands.
struct ProductQuery {
    std::string symbol;
    std::vector<PipOperator> operands;
};

inline ProductQuery parse_query(const std::string& text, const std::map<std::string, Sequence>& names = {}) {
    ProductQuery q;
    std::vector<std::pair<std::size_t, std::size_t>> parts;
    std::size_t start = 0;
    int depth = 0;
    bool inside_ket = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '(' || ch == '{' || ch == '[') ++depth;
        if (ch == ')' || ch == '}' || ch == ']') --depth;
        if (ch == '|' && depth == 0) inside_ket = !inside_ket;
        if (depth != 0 || inside_ket || !std::isalpha(static_cast<unsigned char>(ch))) continue;
        if (i > 0 && (std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_')) continue;
        std::size_t e = i;
        while (e < text.size() && (std::isalnum(static_cast<unsigned char>(text[e])) || text[e] == '_')) ++e;
        const std::string w = text.substr(i, e - i);
        if (w == "circ" || w == "bullet" || w == "star") {
            if (!q.symbol.empty() && q.symbol != w) throw ParseError("mixed product symbols in one query", i);
            q.symbol = w;
            parts.push_back({start, i});
            start = e;
        }
        i = e - 1;
    }
    if (q.symbol.empty()) throw ParseError("expected one of circ, bullet, star", text.size());
    parts.push_back({start, text.size()});
    if (q.symbol != "circ" && parts.size() != 2)
        throw ParseError(q.symbol + " takes exactly two operands", parts[2].first);
    for (const auto& [a, b] : parts) {
        try {
            q.operands.push_back(parse_operator(std::string_view(text).substr(a, b - a), names));
        } catch (const ParseError& e) {
            throw detail::shifted(e, a);
        }
    }
    return q;
}

struct QueryResult {
    std::string query;
    std::string symbol;
    ProductOutcome outcome;
    std::string verdict;
    std::string via;

    std::string text() const {
        std::string out = query + ": " + verdict + (via.empty() ? "" : " via " + via) + "\n";
        out += outcome.report.text();
        return out;
    }
};

inline QueryResult run_query(const PipSpace& P, const std::string& text, const std::map<std::string, Sequence>& names = {}) {
    QueryResult r;
    r.query = text;
    ProductQuery q = parse_query(text, names);
    r.symbol = q.symbol;
    bool members = true;
    for (std::size_t k = 0; k < q.operands.size(); ++k) {
        Report m;
        try {
            m = op_membership(P, q.operands[k]);
        } catch (const Error& e) {
            m.add("membership", false, "undecided", e.what());
        }
        if (!m.ok()) {
            members = false;
            r.outcome.report.append(m, "operand " + std::to_string(k + 1) + " ");
        }
    }
    if (!members) {
        r.verdict = "NotInOp";
        return r;
    }
    if (q.symbol == "circ") r.outcome = product_circ(P, q.operands);
    else if (q.symbol == "bullet") r.outcome = product_bullet(P, q.operands[0], q.operands[1]);
    else r.outcome = product_star(P, q.operands[0], q.operands[1]);
    if (r.outcome.ok()) {
        r.verdict = "= " + render_operator(P, *r.outcome.value, names);
        std::string& w = r.via;
        for (std::size_t k = 0; k < r.outcome.witness.size(); ++k) {
            const std::string lab = q.symbol == "circ" ? "E" + std::to_string(k + 1) : (k == 0 ? "X" : "Y");
            w += (w.empty() ? "" : ", ") + lab + " = " + P.render(r.outcome.witness[k]);
        }
    } else if (r.outcome.unsupported) {
        r.verdict = "Undecided";
    } else {
        r.verdict = q.symbol == "circ" ? "NotFactorizable" : "NotDefined";
    }
    return r;
}

inline nlohmann::ordered_json query_json(const QueryResult& r) {
    nlohmann::ordered_json j;
    j["query"] = r.query;
    j["product"] = r.symbol;
    j["verdict"] = r.verdict;
    if (!r.via.empty()) j["via"] = r.via;
    j["defined"] = r.outcome.ok();
    j["undecided"] = !r.outcome.ok() && r.outcome.unsupported;
    j["checks"] = r.outcome.report.json();
    return j;
}

}  // namespace pipgns
