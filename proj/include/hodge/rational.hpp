#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace hodge {

/// Exact rational number.
///
/// Values whose numerator and denominator fit in 64 bits are stored inline
/// and use 128-bit intermediate arithmetic; anything larger is promoted to a
/// shared immutable GMP rational and demoted again as soon as it fits.  The
/// representation is always canonical (lowest terms, positive denominator),
/// so equality is structural.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(const mpq_class& q);

    /// Parses "7", "-3/4" or "12345678901234567890/3".
    static Rational parse(const std::string& text);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const;
    int sign() const;
    bool is_small() const { return !big_; }

    mpq_class to_mpq() const;
    double to_double() const;
    std::string numerator_string() const;
    std::string denominator_string() const;
    std::string str() const;

    /// Inline numerator/denominator; only meaningful when is_small().
    std::int64_t small_num() const { return num_; }
    std::int64_t small_den() const { return den_; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);
    /// *this += a*b (or -= when subtract), normalized once.
    Rational& add_product(const Rational& a, const Rational& b, bool subtract = false);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    Rational inverse() const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }

private:
    void assign_big(mpq_class q);
    void assign_wide(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Square root when the argument is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& r);

/// Real conjugation is the identity; lets matrix code treat both fields alike.
inline Rational conj(const Rational& r) { return r; }
inline Rational real_part(const Rational& r) { return r; }
inline Rational imag_part(const Rational&) { return Rational{}; }
inline bool is_real(const Rational&) { return true; }

/// a + b·i with a, b rational.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
    GaussianRational(std::int64_t re) : re_(re) {}          // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational{0}, Rational{1}}; }
    /// i^k for any integer k.
    static GaussianRational i_pow(int k);

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm2() const { return re_ * re_ + im_ * im_; }
    GaussianRational inverse() const;
    std::string str() const;

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);
    /// *this += a*b
    GaussianRational& add_product(const GaussianRational& a, const GaussianRational& b);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;

private:
    Rational re_;
    Rational im_;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }
inline Rational real_part(const GaussianRational& z) { return z.re(); }
inline Rational imag_part(const GaussianRational& z) { return z.im(); }
inline bool is_real(const GaussianRational& z) { return z.is_real(); }

using Gaussian = GaussianRational;

}  // namespace hodge
