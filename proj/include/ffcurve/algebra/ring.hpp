#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffcurve/slope.hpp"

namespace ffcurve::algebra {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Integer& v) { return v.str(); }
inline std::string to_string(const Rational& v) {
    if (boost::multiprecision::denominator(v) == 1)
        return boost::multiprecision::numerator(v).str();
    return boost::multiprecision::numerator(v).str() + "/" + boost::multiprecision::denominator(v).str();
}

/// Univariate polynomials over Q in the variable t, coefficients stored
/// lowest degree first with no trailing zeros.
class Poly {
public:
    Poly() = default;
    Poly(Rational c) {  // NOLINT(google-explicit-constructor)
        if (c != 0)
            coeffs_.push_back(std::move(c));
    }
    Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly t(std::size_t power = 1) {
        std::vector<Rational> c(power + 1);
        c[power] = 1;
        return Poly(std::move(c));
    }

    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const Rational& leading() const { return coeffs_.back(); }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    friend bool operator==(const Poly&, const Poly&) = default;

    Poly& operator+=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
            coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
            coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& c : a.coeffs_)
            c = -c;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(c));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /// Euclidean division; b must be non-zero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero())
            throw Error("polynomial division by zero");
        Poly q, r = a;
        std::vector<Rational> qc(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0);
        while (!r.is_zero() && r.degree() >= b.degree()) {
            std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
            Rational c = r.leading() / b.leading();
            qc[shift] = c;
            for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
                r.coeffs_[i + shift] -= c * b.coeffs_[i];
            r.trim();
        }
        return {Poly(std::move(qc)), r};
    }

    std::string str() const {
        if (is_zero())
            return "0";
        std::string out;
        for (long i = degree(); i >= 0; --i) {
            const Rational& c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0)
                continue;
            Rational mag = c < 0 ? Rational(-c) : c;
            if (out.empty())
                out += c < 0 ? "-" : "";
            else
                out += c < 0 ? " - " : " + ";
            bool unit = mag == 1;
            if (i == 0 || !unit)
                out += to_string(mag);
            if (i > 0) {
                if (!unit)
                    out += "*";
                out += "t";
                if (i > 1)
                    out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0)
            coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

// --- text parsing --------------------------------------------------------------

namespace detail {

/// Recursive-descent parser for rational expressions in t:
/// sum := term (('+'|'-') term)* ; term := unary ('*' unary)* ;
/// unary := '-' unary | power ; power := atom ('^' digits)? ; atom := number ('/' number)? | 't' | '(' sum ')'.
class PolyParser {
public:
    explicit PolyParser(std::string_view text, bool allow_t) : text_(text), allow_t_(allow_t) {}

    Poly parse() {
        Poly p = sum();
        skip();
        if (pos_ != text_.size())
            fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error("parse error at position " + std::to_string(pos_) + " in '" + std::string(text_) + "': " + what);
    }
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Integer digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected digits");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }
    Poly sum() {
        Poly acc = term();
        while (true) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }
    Poly term() {
        Poly acc = unary();
        while (eat('*'))
            acc *= unary();
        return acc;
    }
    Poly unary() {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        return power();
    }
    Poly power() {
        Poly base = atom();
        if (eat('^')) {
            Integer e = digits();
            if (e > 4096)
                fail("exponent too large");
            Poly out(1);
            for (int i = 0; i < static_cast<int>(e); ++i)
                out *= base;
            return out;
        }
        return base;
    }
    Poly atom() {
        skip();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = sum();
            if (!eat(')'))
                fail("expected ')'");
            return inner;
        }
        if (c == 't') {
            if (!allow_t_)
                fail("variable t not allowed in this domain");
            ++pos_;
            return Poly::t();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = digits();
            if (eat('/')) {
                Integer den = digits();
                if (den == 0)
                    fail("zero denominator");
                return Poly(Rational(num, den));
            }
            return Poly(Rational(num));
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    bool allow_t_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text) { return detail::PolyParser(text, true).parse(); }

inline Rational parse_rational(std::string_view text) {
    Poly p = detail::PolyParser(text, false).parse();
    return p.coeff(0);
}

inline Integer parse_integer(std::string_view text) {
    Rational r = parse_rational(text);
    if (boost::multiprecision::denominator(r) != 1)
        throw Error("expected an integer, got '" + std::string(text) + "'");
    return boost::multiprecision::numerator(r);
}

// --- Euclidean-domain interface --------------------------------------------------

/// Operations every coefficient domain provides. `norm` is the Euclidean
/// size; `canonical_unit(a)` is the unit u with a / u the preferred associate.
template <class R>
struct Euclidean;

template <>
struct Euclidean<Integer> {
    static constexpr const char* name = "integers";
    static Integer zero() { return 0; }
    static Integer one() { return 1; }
    static bool is_zero(const Integer& a) { return a == 0; }
    static bool is_unit(const Integer& a) { return a == 1 || a == -1; }
    static Integer norm(const Integer& a) { return abs(a); }
    static std::pair<Integer, Integer> divmod(const Integer& a, const Integer& b) {
        if (b == 0)
            throw Error("division by zero");
        Integer q = a / b, r = a % b;
        return {q, r};
    }
    static Integer canonical_unit(const Integer& a) { return a < 0 ? -1 : 1; }
    static Integer unit_inverse(const Integer& u) { return u; }
    static std::string str(const Integer& a) { return a.str(); }
    static Integer parse(std::string_view s) { return parse_integer(s); }
};

template <>
struct Euclidean<Rational> {
    static constexpr const char* name = "rationals";
    static Rational zero() { return 0; }
    static Rational one() { return 1; }
    static bool is_zero(const Rational& a) { return a == 0; }
    static bool is_unit(const Rational& a) { return a != 0; }
    static Integer norm(const Rational& a) { return a == 0 ? 0 : 1; }
    static std::pair<Rational, Rational> divmod(const Rational& a, const Rational& b) {
        if (b == 0)
            throw Error("division by zero");
        return {a / b, Rational(0)};
    }
    static Rational canonical_unit(const Rational& a) { return a == 0 ? Rational(1) : a; }
    static Rational unit_inverse(const Rational& u) { return 1 / u; }
    static std::string str(const Rational& a) { return to_string(a); }
    static Rational parse(std::string_view s) { return parse_rational(s); }
};

template <>
struct Euclidean<Poly> {
    static constexpr const char* name = "poly";
    static Poly zero() { return {}; }
    static Poly one() { return Poly(1); }
    static bool is_zero(const Poly& a) { return a.is_zero(); }
    static bool is_unit(const Poly& a) { return a.degree() == 0; }
    /// degree + 1 so that only zero has norm 0
    static Integer norm(const Poly& a) { return a.degree() + 1; }
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) { return Poly::divmod(a, b); }
    static Poly canonical_unit(const Poly& a) { return a.is_zero() ? Poly(1) : Poly(a.leading()); }
    static Poly unit_inverse(const Poly& u) { return Poly(Rational(1) / u.leading()); }
    static std::string str(const Poly& a) { return a.str(); }
    static Poly parse(std::string_view s) { return parse_poly(s); }
};

/// Exact quotient a / b; throws when b does not divide a.
template <class R>
R exact_div(const R& a, const R& b) {
    auto [q, r] = Euclidean<R>::divmod(a, b);
    if (!Euclidean<R>::is_zero(r))
        throw Error("inexact division: " + Euclidean<R>::str(a) + " / " + Euclidean<R>::str(b));
    return q;
}

template <class R>
bool divides(const R& a, const R& b) {
    if (Euclidean<R>::is_zero(a))
        return Euclidean<R>::is_zero(b);
    return Euclidean<R>::is_zero(Euclidean<R>::divmod(b, a).second);
}

template <class R>
R power(const R& base, unsigned e) {
    R out = Euclidean<R>::one();
    for (unsigned i = 0; i < e; ++i)
        out = out * base;
    return out;
}

template <class R>
R gcd(R a, R b) {
    while (!Euclidean<R>::is_zero(b)) {
        R r = Euclidean<R>::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (Euclidean<R>::is_zero(a))
        return a;
    return exact_div(a, Euclidean<R>::canonical_unit(a));
}

/// The three supported coefficient domains, selectable at run time.
enum class CoeffDomain { integers, rationals, poly };

inline CoeffDomain parse_domain(std::string_view s) {
    if (s == "Z" || s == "integers" || s == "int")
        return CoeffDomain::integers;
    if (s == "Q" || s == "rationals")
        return CoeffDomain::rationals;
    if (s == "poly" || s == "Q[t]")
        return CoeffDomain::poly;
    throw Error("unknown coefficient domain '" + std::string(s) + "'");
}

inline std::string to_string(CoeffDomain d) {
    switch (d) {
    case CoeffDomain::integers: return "integers";
    case CoeffDomain::rationals: return "rationals";
    case CoeffDomain::poly: return "poly";
    }
    return "?";
}

/// Calls fn with a value of the element type for `d`.
template <class Fn>
decltype(auto) visit_domain(CoeffDomain d, Fn&& fn) {
    switch (d) {
    case CoeffDomain::integers: return fn(Integer{});
    case CoeffDomain::rationals: return fn(Rational{});
    default: return fn(Poly{});
    }
}

}  // namespace ffcurve::algebra
