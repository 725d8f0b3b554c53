#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ffcurve/tilt.hpp"

namespace ffcurve {

/// Input error with the byte offset where parsing stopped and what was expected there.
class ParseError : public Error {
public:
    ParseError(std::size_t position, std::string expected)
        : Error("parse error at position " + std::to_string(position) + ": expected " + expected),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

using Expression = std::variant<CoherentSheaf, TiltedObject>;

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    Expression parse_any() {
        skip_ws();
        Expression out = starts_with("tilted") ? Expression{tilted()} : Expression{sum()};
        finish();
        return out;
    }
    CoherentSheaf parse_sheaf() {
        auto f = sum();
        finish();
        return f;
    }
    TiltedObject parse_tilted() {
        auto t = tilted();
        finish();
        return t;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
    bool accept(std::string_view s) {
        skip_ws();
        if (!starts_with(s))
            return false;
        pos_ += s.size();
        return true;
    }
    void expect(std::string_view s) {
        if (!accept(s))
            throw ParseError(pos_, "'" + std::string(s) + "'");
    }
    void finish() {
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(pos_, "end of input");
    }

    std::int64_t integer(bool allow_sign) {
        skip_ws();
        std::size_t start = pos_;
        bool negative = false;
        if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
            negative = text_[pos_++] == '-';
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError(pos_, allow_sign ? "integer" : "positive integer");
        std::int64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            int digit = text_[pos_] - '0';
            if (v > (std::numeric_limits<std::int64_t>::max() - digit) / 10)
                throw ParseError(start, "integer in 64-bit range");
            v = v * 10 + digit;
            ++pos_;
        }
        return negative ? -v : v;
    }
    std::int64_t positive(const char* what) {
        std::size_t at = (skip_ws(), pos_);
        auto v = integer(false);
        if (v <= 0)
            throw ParseError(at, what);
        return v;
    }

    std::string label() {
        skip_ws();
        if (accept("∞"))
            return kDefaultPoint;
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start)
            throw ParseError(pos_, "point label");
        return std::string(text_.substr(start, pos_ - start));
    }

    RawAtom atom() {
        skip_ws();
        if (accept("T")) {
            expect("(");
            RawTorsion t;
            t.point = label();
            expect(",");
            expect("[");
            t.factors.push_back(positive("positive torsion length"));
            while (accept(","))
                t.factors.push_back(positive("positive torsion length"));
            expect("]");
            expect(")");
            return t;
        }
        if (!accept("O"))
            throw ParseError(pos_, "'O', 'T' or '0'");
        RawBundle b;
        if (accept("(")) {
            b.degree = integer(true);
            if (accept("/"))
                b.rank = positive("positive denominator");
            expect(")");
        }
        if (accept("^"))
            b.multiplicity = positive("positive multiplicity");
        return b;
    }

    CoherentSheaf sum() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '0') {
            ++pos_;
            return {};
        }
        std::vector<RawAtom> atoms{atom()};
        while (accept("+"))
            atoms.push_back(atom());
        return normalize(atoms);
    }

    TiltedObject tilted() {
        skip_ws();
        std::size_t start = pos_;
        expect("tilted");
        expect("(");
        auto neg = sum();
        expect(";");
        auto pos = sum();
        expect(")");
        try {
            return {std::move(neg), std::move(pos)};
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(start, std::string("a valid tilted object (") + e.what() + ")");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expression parse_expression(std::string_view text) { return detail::ExprParser(text).parse_any(); }
inline CoherentSheaf parse_sheaf(std::string_view text) { return detail::ExprParser(text).parse_sheaf(); }
inline TiltedObject parse_tilted(std::string_view text) { return detail::ExprParser(text).parse_tilted(); }

/// Accepts either form; a plain sheaf is tilted into its torsion-pair split.
inline TiltedObject parse_as_tilted(std::string_view text) {
    auto e = parse_expression(text);
    if (auto* f = std::get_if<CoherentSheaf>(&e))
        return tilt(*f);
    return std::get<TiltedObject>(e);
}

/// Canonical text: bundle summands by decreasing slope, then torsion by point.
inline std::string print(const CoherentSheaf& f) {
    if (f.is_zero())
        return "0";
    std::string out;
    auto append = [&](const std::string& s) { out += (out.empty() ? "" : " + ") + s; };
    for (const auto& [s, m] : f.bundle()) {
        std::string atom = s == Slope::integer(0) ? "O" : "O(" + s.str() + ")";
        append(m == 1 ? atom : atom + "^" + std::to_string(m));
    }
    for (const auto& [p, fs] : f.torsion_part()) {
        std::string atom = "T(" + p + ",[";
        for (std::size_t i = 0; i < fs.size(); ++i)
            atom += (i ? "," : "") + std::to_string(fs[i]);
        append(atom + "])");
    }
    return out;
}

inline std::string print(const TiltedObject& t) { return "tilted(" + print(t.neg()) + "; " + print(t.pos()) + ")"; }

inline std::string print(const Expression& e) {
    return std::visit([](const auto& x) { return print(x); }, e);
}

/// Sums of shifted sheaves, e.g. "O^2 + O(-1)[1]"; used for sequence terms.
inline std::string print(const ShiftedSum& s) {
    if (s.is_zero())
        return "0";
    std::string out;
    for (const auto& [shift, f] : s.parts()) {
        std::string body = print(f);
        if (shift != 0)
            body = (f.bundle().size() + f.torsion_part().size() > 1 ? "(" + body + ")" : body) + "[" +
                   std::to_string(shift) + "]";
        out += (out.empty() ? "" : " + ") + body;
    }
    return out;
}

inline std::string print(const ShortExactSequence& s) {
    return "0 -> " + print(s.left) + " -> " + print(s.middle) + " -> " + print(s.right) + " -> 0";
}

}  // namespace ffcurve
