#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ffcurve {

/// Thrown for malformed or out-of-range input to any ffcurve operation.
class Error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Slope of a stable object: a reduced fraction d/h with h >= 1, or +inf
/// (the slope of torsion sheaves).
class Slope {
public:
    constexpr Slope() = default;

    /// Reduces d/h. Throws on h <= 0.
    static Slope reduce(std::int64_t d, std::int64_t h) {
        if (h <= 0)
            throw Error("slope denominator must be positive");
        std::int64_t g = std::gcd(d < 0 ? -d : d, h);
        if (g == 0)
            g = 1;
        Slope s;
        s.deg_ = d / g;
        s.rank_ = h / g;
        return s;
    }

    static constexpr Slope infinity() {
        Slope s;
        s.infinite_ = true;
        s.deg_ = 1;
        s.rank_ = 0;
        return s;
    }

    static Slope integer(std::int64_t d) { return reduce(d, 1); }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    /// Numerator; the degree of the stable bundle O(d/h).
    std::int64_t degree() const {
        require_finite();
        return deg_;
    }
    /// Denominator; the rank of the stable bundle O(d/h).
    std::int64_t rank() const {
        require_finite();
        return rank_;
    }

    int sign() const {
        if (infinite_)
            return 1;
        return (deg_ > 0) - (deg_ < 0);
    }

    friend bool operator==(const Slope& a, const Slope& b) {
        if (a.infinite_ || b.infinite_)
            return a.infinite_ == b.infinite_;
        return a.deg_ == b.deg_ && a.rank_ == b.rank_;
    }

    friend std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
        if (a.infinite_ || b.infinite_) {
            if (a.infinite_ == b.infinite_)
                return std::strong_ordering::equal;
            return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        // cross-multiplication in 128 bits; denominators are positive
        __int128 lhs = static_cast<__int128>(a.deg_) * b.rank_;
        __int128 rhs = static_cast<__int128>(b.deg_) * a.rank_;
        if (lhs < rhs)
            return std::strong_ordering::less;
        if (lhs > rhs)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Slope operator-() const {
        require_finite();
        return reduce(-deg_, rank_);
    }
    friend Slope operator-(const Slope& a, const Slope& b) {
        a.require_finite();
        b.require_finite();
        return reduce(a.deg_ * b.rank_ - b.deg_ * a.rank_, a.rank_ * b.rank_);
    }

    /// `d/h`, `d` when h == 1, `inf` for infinity.
    std::string str() const {
        if (infinite_)
            return "inf";
        if (rank_ == 1)
            return std::to_string(deg_);
        return std::to_string(deg_) + "/" + std::to_string(rank_);
    }

private:
    void require_finite() const {
        if (infinite_)
            throw Error("operation undefined for infinite slope");
    }

    bool infinite_ = false;
    std::int64_t deg_ = 0;
    std::int64_t rank_ = 1;
};

/// Parses the text syntax `d`, `d/h` or `inf`.
inline Slope parse_slope(std::string_view text) {
    if (text == "inf" || text == "\xE2\x88\x9E")
        return Slope::infinity();
    auto parse_int = [](std::string_view s) -> std::int64_t {
        if (s.empty())
            throw Error("empty integer in slope");
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(std::string(s), &pos);
        } catch (const std::exception&) {
            throw Error("malformed integer '" + std::string(s) + "'");
        }
        if (pos != s.size())
            throw Error("malformed integer '" + std::string(s) + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Slope::integer(parse_int(text));
    return Slope::reduce(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

/// Internal Hom of two stable bundles: Hom(O(lambda), O(mu)) = O(nu)^m.
struct HomSlopeData {
    Slope nu;
    std::int64_t multiplicity = 0;
};

/// nu = mu - lambda, and m is forced by rank bookkeeping: h_lambda * h_mu = m * h_nu.
inline HomSlopeData hom_slope_data(const Slope& lambda, const Slope& mu) {
    if (lambda.is_infinite() || mu.is_infinite())
        throw Error("hom_slope_data needs finite slopes");
    Slope nu = mu - lambda;
    return {nu, lambda.rank() * mu.rank() / nu.rank()};
}

}  // namespace ffcurve
