#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "sumsetlab/error.hpp"

namespace sumsetlab {

// Exact rational on int64, always normalized (gcd 1, denominator > 0).
// Densities and defects never leave [0,1], so int64 components with
// 128-bit intermediates are ample for every computation in this project.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw Error(ErrorCode::InvalidInput, "rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw Error(ErrorCode::InvalidInput, "rational division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }

    double approx() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.num << '/' << r.den;
    }
};

// Parses "num/den" or a bare integer.
Rational parseRational(const std::string& s);

} // namespace sumsetlab
