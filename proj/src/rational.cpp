#include "hodge/rational.hpp"

#include <limits>
#include <utility>
#include <ostream>
#include <stdexcept>

namespace hodge {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = std::numeric_limits<std::int64_t>::min();

u128 uabs(i128 v) { return v < 0 ? u128(-(v + 1)) + 1 : u128(v); }

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int shift = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    do {
        b >>= __builtin_ctzll(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

u128 gcd128(u128 a, u128 b) {
    constexpr u128 kWord = std::numeric_limits<std::uint64_t>::max();
    if (a <= kWord && b <= kWord) return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(i128 v) { return v >= kMin && v <= kMax; }

mpz_class to_mpz(i128 v) {
    // mpz has no 128-bit constructor; split into two 64-bit halves.
    bool neg = v < 0;
    u128 u = uabs(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(std::int64_t n) : num_(n), den_(1) {}

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    assign_wide(n, d);
}

Rational::Rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    assign_big(std::move(c));
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational literal: " + text);
    if (q.get_den() == 0) throw std::domain_error("rational with zero denominator: " + text);
    return Rational(q);
}

void Rational::assign_wide(i128 n, i128 d) {
    if (d > 0 && d <= kMax && n > kMin && n <= kMax) {
        std::int64_t n64 = static_cast<std::int64_t>(n), d64 = static_cast<std::int64_t>(d);
        std::uint64_t g = gcd64(static_cast<std::uint64_t>(n64 < 0 ? -n64 : n64), static_cast<std::uint64_t>(d64));
        if (g > 1) {
            n64 /= static_cast<std::int64_t>(g);
            d64 /= static_cast<std::int64_t>(g);
        }
        num_ = n64;
        den_ = d64;
        big_.reset();
        return;
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(uabs(n), u128(d));
    if (g > 1) {
        n /= i128(g);
        d /= i128(g);
    }
    if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        big_.reset();
        return;
    }
    mpq_class q(to_mpz(n), to_mpz(d));
    assign_big(std::move(q));
}

void Rational::assign_big(mpq_class q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        num_ = q.get_num().get_si();
        den_ = q.get_den().get_si();
        big_.reset();
    } else {
        num_ = 0;
        den_ = 1;
        big_ = std::make_shared<const mpq_class>(std::move(q));
    }
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::numerator_string() const {
    return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_string() const {
    return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

std::string Rational::str() const {
    if (is_integer()) return numerator_string();
    return numerator_string() + "/" + denominator_string();
}

Rational Rational::operator-() const {
    Rational r;
    if (big_) {
        r.assign_big(-*big_);
    } else if (num_ != std::numeric_limits<std::int64_t>::min()) {
        r.num_ = -num_;
        r.den_ = den_;
    } else {
        r.assign_wide(-i128(num_), den_);
    }
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            i128 s = i128(num_) + o.num_;
            if (fits(s)) {
                num_ = static_cast<std::int64_t>(s);
                return *this;
            }
        }
        if (den_ == o.den_) {
            assign_wide(i128(num_) + o.num_, den_);
        } else {
            assign_wide(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
        }
        return *this;
    }
    assign_big(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (num_ == 0 || o.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        if (den_ == 1 && o.den_ == 1) {
            i128 p = i128(num_) * o.num_;
            if (fits(p)) {
                num_ = static_cast<std::int64_t>(p);
                return *this;
            }
        }
        assign_wide(i128(num_) * o.num_, i128(den_) * o.den_);
        return *this;
    }
    assign_big(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::add_product(const Rational& a, const Rational& b, bool subtract) {
    if (a.is_zero() || b.is_zero()) return *this;
    if (!big_ && !a.big_ && !b.big_) {
        constexpr i128 kHalf = i128(1) << 62;
        i128 pn = i128(a.num_) * b.num_;
        i128 pd = i128(a.den_) * b.den_;
        if (subtract) pn = -pn;
        if (pn > -kHalf && pn < kHalf && pd < kHalf) {
            if (pd == den_) {
                assign_wide(i128(num_) + pn, pd);
            } else {
                assign_wide(i128(num_) * pd + pn * den_, i128(den_) * pd);
            }
            return *this;
        }
    }
    Rational p = a * b;
    return subtract ? (*this -= p) : (*this += p);
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero rational");
    Rational r;
    if (big_) {
        r.assign_big(1 / *big_);
    } else {
        r.assign_wide(den_, num_);
    }
    return r;
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: a big value never equals a small one
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = i128(a.num_) * b.den_;
        i128 r = i128(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    mpq_class q = r.to_mpq();
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
        return std::nullopt;
    mpz_class n = sqrt(q.get_num());
    mpz_class d = sqrt(q.get_den());
    return Rational(mpq_class(n, d));
}

GaussianRational GaussianRational::i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (im_.is_zero() && o.im_.is_zero()) {
        re_ *= o.re_;
        return *this;
    }
    GaussianRational r;
    r.add_product(*this, o);
    return *this = std::move(r);
}

GaussianRational& GaussianRational::add_product(const GaussianRational& a, const GaussianRational& b) {
    re_.add_product(a.re_, b.re_);
    re_.add_product(a.im_, b.im_, true);
    im_.add_product(a.re_, b.im_);
    im_.add_product(a.im_, b.re_);
    return *this;
}

GaussianRational GaussianRational::inverse() const {
    Rational n = norm2();
    if (n.is_zero()) throw std::domain_error("division by zero gaussian rational");
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

std::string GaussianRational::str() const {
    if (im_.is_zero()) return re_.str();
    std::string imag = im_.is_one() ? "i" : (im_ == Rational(-1) ? "-i" : im_.str() + "i");
    if (re_.is_zero()) return imag;
    if (im_.sign() > 0) return re_.str() + "+" + imag;
    return re_.str() + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

}  // namespace hodge
