#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>

#include "sphord/error.hpp"

namespace sphord {

// Exact rational with int64 numerator/denominator, normalized (gcd 1, den > 0).
// Comparisons and arithmetic go through __int128 so no intermediate overflows;
// results that do not fit back into int64 raise errc::overflow. All values in
// this toolkit (pairing-function enumerations, seeded dyadics, interval
// midpoints) stay far below the bound.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.num_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error(errc::invalid_argument, "division by zero");
        return make(static_cast<__int128>(a.num_) * b.den_,
                    static_cast<__int128>(a.den_) * b.num_);
    }

    static Rational midpoint(const Rational& a, const Rational& b) {
        return (a + b) / Rational(2);
    }

    // Canonical "p/q" form, e.g. "0/1", "-3/2".
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    // Accepts "p/q" or a bare integer "p".
    static Rational parse(const std::string& text);

private:
    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw Error(errc::invalid_argument, "zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw Error(errc::overflow, "rational out of 64-bit range");
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        Rational r = make(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    long long num_;
    long long den_;
};

inline Rational Rational::parse(const std::string& text) {
    auto parse_int = [&](const std::string& part) {
        size_t used = 0;
        long long value = std::stoll(part, &used);
        if (used != part.size()) throw std::invalid_argument(part);
        return value;
    };
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(parse_int(text));
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(errc::parse_error, "bad rational '" + text + "'");
    }
}

} // namespace sphord

template <>
struct std::hash<sphord::Rational> {
    size_t operator()(const sphord::Rational& r) const {
        size_t h = std::hash<long long>{}(r.num());
        return h ^ (std::hash<long long>{}(r.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};
