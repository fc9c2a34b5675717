#pragma once

/*
 * Text form of mixed polynomials.
 *
 *   expr   := ['+'|'-'] term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := coeff | var ('^' uint)?
 *   var    := 'z' uint | 'zbar' uint            (1-based index)
 *   coeff  := int | int '/' uint | 'i' | '(' int ('+'|'-') int 'i' ')'
 *
 * Whitespace is insignificant. A leading sign on the first term is accepted.
 * render() emits text that parse() maps back to the same canonical polynomial.
 */

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polarmix/errors.hpp"
#include "polarmix/exact.hpp"
#include "polarmix/mixed_poly.hpp"

namespace polarmix {

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    struct RawTerm {
        GaussianRational coeff{1};
        std::vector<std::pair<std::size_t, int>> z;     // (1-based index, power)
        std::vector<std::pair<std::size_t, int>> zbar;
    };

    std::vector<RawTerm> parse_expr() {
        std::vector<RawTerm> terms;
        skip_ws();
        if (at_end()) throw parse_error("empty expression", pos_);
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = peek() == '-';
            ++pos_;
        }
        while (true) {
            RawTerm t = parse_term();
            if (negate) t.coeff = -t.coeff;
            terms.push_back(std::move(t));
            skip_ws();
            if (at_end()) break;
            if (peek() != '+' && peek() != '-') throw parse_error(std::string("unexpected '") + peek() + "'", pos_);
            negate = peek() == '-';
            ++pos_;
        }
        return terms;
    }

private:
    RawTerm parse_term() {
        RawTerm t;
        parse_factor(t);
        while (true) {
            skip_ws();
            if (at_end() || peek() != '*') break;
            ++pos_;
            parse_factor(t);
        }
        return t;
    }

    void parse_factor(RawTerm& t) {
        skip_ws();
        if (at_end()) throw parse_error("expected a factor", pos_);
        const char c = peek();
        if (c == 'z') {
            ++pos_;
            const bool bar = text_.substr(pos_, 3) == "bar";
            if (bar) pos_ += 3;
            if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
                throw parse_error("expected a variable index", pos_);
            const std::size_t idx_pos = pos_;
            const BigInt idx = parse_uint();
            if (idx == 0) throw parse_error("variable index 0 (indices start at 1)", idx_pos);
            if (idx > 64) throw parse_error("variable index larger than 64", idx_pos);
            int power = 1;
            skip_ws();
            if (!at_end() && peek() == '^') {
                ++pos_;
                skip_ws();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
                    throw parse_error("malformed exponent", pos_);
                const std::size_t exp_pos = pos_;
                const BigInt e = parse_uint();
                if (e > 1000000) throw parse_error("exponent too large", exp_pos);
                power = static_cast<int>(e.get_si());
            }
            auto& target = bar ? t.zbar : t.z;
            target.emplace_back(static_cast<std::size_t>(idx.get_ui()), power);
            return;
        }
        if (c == 'i') {
            ++pos_;
            t.coeff *= GaussianRational(Rational(0), Rational(1));
            return;
        }
        if (c == '(') {
            ++pos_;
            const Rational re = parse_signed_int();
            skip_ws();
            if (at_end() || (peek() != '+' && peek() != '-')) throw parse_error("expected '+' or '-' in complex coefficient", pos_);
            const bool neg = peek() == '-';
            ++pos_;
            skip_ws();
            if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
                throw parse_error("expected imaginary part", pos_);
            Rational im = parse_uint();
            if (neg) im = -im;
            skip_ws();
            if (at_end() || peek() != 'i') throw parse_error("expected 'i'", pos_);
            ++pos_;
            skip_ws();
            if (at_end() || peek() != ')') throw parse_error("expected ')'", pos_);
            ++pos_;
            t.coeff *= GaussianRational(re, im);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num = parse_uint();
            skip_ws();
            if (!at_end() && peek() == '/') {
                ++pos_;
                skip_ws();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
                    throw parse_error("expected denominator", pos_);
                const std::size_t den_pos = pos_;
                const BigInt den = parse_uint();
                if (den == 0) throw parse_error("zero denominator", den_pos);
                t.coeff *= GaussianRational(make_rational(num, den));
            } else {
                t.coeff *= GaussianRational(Rational(num));
            }
            return;
        }
        throw parse_error(std::string("unexpected '") + c + "'", pos_);
    }

    Rational parse_signed_int() {
        skip_ws();
        bool neg = false;
        if (!at_end() && (peek() == '-' || peek() == '+')) {
            neg = peek() == '-';
            ++pos_;
            skip_ws();
        }
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) throw parse_error("expected an integer", pos_);
        Rational r = parse_uint();
        return neg ? Rational(-r) : r;
    }

    BigInt parse_uint() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `text`. The variable count is the largest index seen unless `n` is given.
inline MixedPolynomial parse(std::string_view text, std::optional<std::size_t> n = std::nullopt) {
    detail::PolyParser parser(text);
    const auto raw = parser.parse_expr();

    std::size_t max_index = 0;
    for (const auto& t : raw) {
        for (auto [i, p] : t.z) max_index = std::max(max_index, i);
        for (auto [i, p] : t.zbar) max_index = std::max(max_index, i);
    }
    const std::size_t vars = n.value_or(max_index);
    if (max_index > vars)
        throw dimension_error("variable z" + std::to_string(max_index) + " exceeds the declared count " + std::to_string(vars));

    std::vector<MixedMonomial> terms;
    for (const auto& t : raw) {
        MixedMonomial m{t.coeff, Exponent(vars, 0), Exponent(vars, 0)};
        for (auto [i, p] : t.z) m.nu[i - 1] += p;
        for (auto [i, p] : t.zbar) m.mu[i - 1] += p;
        terms.push_back(std::move(m));
    }
    return {vars, std::move(terms)};
}

namespace detail {

inline std::string variable_part(const MixedMonomial& m) {
    std::string s;
    auto emit = [&](const char* name, std::size_t j, int p) {
        if (!s.empty()) s += "*";
        s += name + std::to_string(j + 1);
        if (p != 1) s += "^" + std::to_string(p);
    };
    for (std::size_t j = 0; j < m.nu.size(); ++j) {
        if (m.nu[j]) emit("z", j, m.nu[j]);
        if (m.mu[j]) emit("zbar", j, m.mu[j]);
    }
    return s;
}

/// Appends "+ c*vars" / "- c*vars" for a real or purely imaginary coefficient.
inline void append_term(std::string& out, const Rational& value, bool imaginary, const std::string& vars) {
    const bool neg = value < 0;
    const Rational mag = neg ? Rational(-value) : value;
    if (out.empty())
        out += neg ? "-" : "";
    else
        out += neg ? " - " : " + ";
    std::string body;
    if (mag != 1) body = to_string(mag);
    if (imaginary) body += body.empty() ? "i" : "*i";
    if (!vars.empty()) body += body.empty() ? vars : "*" + vars;
    if (body.empty()) body = "1";
    out += body;
}

}  // namespace detail

inline std::string render(const MixedPolynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& m : f.monomials()) {
        const std::string vars = detail::variable_part(m);
        const auto& c = m.coeff;
        if (c.re != 0 && c.im != 0 && is_integer(c.re) && is_integer(c.im)) {
            out += out.empty() ? "" : " + ";
            out += to_string(c) + (vars.empty() ? "" : "*" + vars);
            continue;
        }
        if (c.re != 0) detail::append_term(out, c.re, false, vars);
        if (c.im != 0) detail::append_term(out, c.im, true, vars);
    }
    return out;
}

inline std::string render(const LaurentPolynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& t : f.terms()) {
        std::string vars;
        for (std::size_t j = 0; j < t.exponent.size(); ++j) {
            if (t.exponent[j] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += "w" + std::to_string(j + 1);
            if (t.exponent[j] != 1) vars += "^" + std::to_string(t.exponent[j]);
        }
        const auto& c = t.coeff;
        if (c.re != 0 && c.im != 0) {
            out += out.empty() ? "" : " + ";
            out += to_string(c) + (vars.empty() ? "" : "*" + vars);
            continue;
        }
        if (c.re != 0) detail::append_term(out, c.re, false, vars);
        if (c.im != 0) detail::append_term(out, c.im, true, vars);
    }
    return out;
}

}  // namespace polarmix
