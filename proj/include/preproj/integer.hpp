#pragma once
// Arbitrary precision integer with an inline 64-bit fast path.
// Values that fit in int64 are stored inline; anything larger spills into
// a GMP integer and is demoted again as soon as it fits.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>

namespace preproj {

class Integer {
public:
    Integer() = default;
    Integer(int v) : small_(v) {}
    Integer(long v) : small_(v) {}
    Integer(long long v) : small_(static_cast<std::int64_t>(v)) {}
    Integer(unsigned v) : small_(v) {}
    Integer(unsigned long v) { assign_unsigned(v); }
    Integer(unsigned long long v) { assign_unsigned(v); }
    explicit Integer(const mpz_class& z) { assign_big(z); }
    explicit Integer(const std::string& s) {
        mpz_class z;
        if (z.set_str(s, 10) != 0) throw std::invalid_argument("Integer: bad literal '" + s + "'");
        assign_big(z);
    }

    Integer(const Integer& o) : small_(o.small_) {
        if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
    }
    Integer(Integer&&) noexcept = default;
    Integer& operator=(const Integer& o) {
        if (this == &o) return *this;
        small_ = o.small_;
        if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
        else big_.reset();
        return *this;
    }
    Integer& operator=(Integer&&) noexcept = default;

    bool is_small() const { return !big_; }
    bool is_zero() const { return !big_ && small_ == 0; }
    bool is_one() const { return !big_ && small_ == 1; }
    bool is_unit() const { return !big_ && (small_ == 1 || small_ == -1); }
    int sign() const {
        if (big_) return sgn(*big_);
        return (small_ > 0) - (small_ < 0);
    }

    mpz_class to_mpz() const { return big_ ? *big_ : mpz_class(static_cast<long>(small_)); }

    bool fits_int64() const { return !big_; }
    std::int64_t to_int64() const {
        if (big_) throw std::overflow_error("Integer does not fit in int64");
        return small_;
    }

    std::string str() const { return big_ ? big_->get_str() : std::to_string(small_); }

    friend Integer operator+(const Integer& a, const Integer& b) {
        std::int64_t r;
        if (!a.big_ && !b.big_ && !__builtin_add_overflow(a.small_, b.small_, &r)) return Integer(r);
        return Integer(mpz_class(a.to_mpz() + b.to_mpz()));
    }
    friend Integer operator-(const Integer& a, const Integer& b) {
        std::int64_t r;
        if (!a.big_ && !b.big_ && !__builtin_sub_overflow(a.small_, b.small_, &r)) return Integer(r);
        return Integer(mpz_class(a.to_mpz() - b.to_mpz()));
    }
    friend Integer operator*(const Integer& a, const Integer& b) {
        std::int64_t r;
        if (!a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &r)) return Integer(r);
        return Integer(mpz_class(a.to_mpz() * b.to_mpz()));
    }
    Integer operator-() const {
        if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) return Integer(-small_);
        return Integer(mpz_class(-to_mpz()));
    }
    Integer& operator+=(const Integer& b) {
        std::int64_t r;
        if (!big_ && !b.big_ && !__builtin_add_overflow(small_, b.small_, &r)) { small_ = r; return *this; }
        return *this = *this + b;
    }
    Integer& operator-=(const Integer& b) {
        std::int64_t r;
        if (!big_ && !b.big_ && !__builtin_sub_overflow(small_, b.small_, &r)) { small_ = r; return *this; }
        return *this = *this - b;
    }
    Integer& operator*=(const Integer& b) {
        std::int64_t r;
        if (!big_ && !b.big_ && !__builtin_mul_overflow(small_, b.small_, &r)) { small_ = r; return *this; }
        return *this = *this * b;
    }

    // Truncating division and remainder (C semantics).
    friend Integer operator/(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("Integer division by zero");
        if (!a.big_ && !b.big_ && !(a.small_ == std::numeric_limits<std::int64_t>::min() && b.small_ == -1))
            return Integer(a.small_ / b.small_);
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Integer(q);
    }
    friend Integer operator%(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("Integer division by zero");
        if (!a.big_ && !b.big_) {
            if (b.small_ == -1) return Integer(0);
            return Integer(a.small_ % b.small_);
        }
        mpz_class r;
        mpz_tdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Integer(r);
    }
    Integer& operator/=(const Integer& b) { return *this = *this / b; }
    Integer& operator%=(const Integer& b) { return *this = *this % b; }

    // Floor division: quotient rounded toward negative infinity.
    friend Integer floor_div(const Integer& a, const Integer& b) {
        Integer q = a / b;
        if (!(q * b == a) && ((a.sign() < 0) != (b.sign() < 0))) q -= 1;
        return q;
    }
    // Nonnegative residue modulo |m|.
    friend Integer mod_nonneg(const Integer& a, const Integer& m) {
        Integer r = a % m;
        if (r.sign() < 0) r += abs(m);
        return r;
    }

    friend bool divides(const Integer& d, const Integer& a) {
        if (d.is_zero()) return a.is_zero();
        return (a % d).is_zero();
    }

    friend Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

    friend Integer gcd(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_ && a.small_ != std::numeric_limits<std::int64_t>::min() &&
            b.small_ != std::numeric_limits<std::int64_t>::min()) {
            std::int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
            std::int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
            while (y) { std::int64_t t = x % y; x = y; y = t; }
            return Integer(x);
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Integer(g);
    }

    // Extended gcd: returns g = gcd(a,b) >= 0 with s*a + t*b = g.
    friend Integer xgcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
        mpz_class g, ss, tt;
        mpz_gcdext(g.get_mpz_t(), ss.get_mpz_t(), tt.get_mpz_t(), a.to_mpz().get_mpz_t(),
                   b.to_mpz().get_mpz_t());
        s = Integer(ss);
        t = Integer(tt);
        return Integer(g);
    }

    friend Integer pow(const Integer& a, unsigned e) {
        Integer r(1), b(a);
        while (e) {
            if (e & 1u) r *= b;
            e >>= 1u;
            if (e) b *= b;
        }
        return r;
    }

    friend bool operator==(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_) return a.small_ == b.small_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // normalized: a big value never fits int64
    }
    friend bool operator!=(const Integer& a, const Integer& b) { return !(a == b); }
    friend bool operator<(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_) return a.small_ < b.small_;
        return cmp(a.to_mpz(), b.to_mpz()) < 0;
    }
    friend bool operator>(const Integer& a, const Integer& b) { return b < a; }
    friend bool operator<=(const Integer& a, const Integer& b) { return !(b < a); }
    friend bool operator>=(const Integer& a, const Integer& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.str(); }

    std::size_t hash() const {
        if (!big_) return std::hash<std::int64_t>{}(small_);
        return std::hash<std::string>{}(big_->get_str(16));
    }

private:
    void assign_big(const mpz_class& z) {
        if (z.fits_slong_p()) {
            small_ = z.get_si();
            big_.reset();
        } else {
            small_ = 0;
            big_ = std::make_unique<mpz_class>(z);
        }
    }
    template <class U>
    void assign_unsigned(U v) {
        if (v <= static_cast<U>(std::numeric_limits<std::int64_t>::max())) small_ = static_cast<std::int64_t>(v);
        else assign_big(mpz_class(std::to_string(v)));
    }

    std::int64_t small_ = 0;
    std::unique_ptr<mpz_class> big_;
};

inline Integer binomial(const Integer& n, unsigned k) {
    mpz_class r;
    if (n.sign() < 0) throw std::domain_error("binomial: negative n");
    mpz_bin_ui(r.get_mpz_t(), n.to_mpz().get_mpz_t(), k);
    return Integer(r);
}

}  // namespace preproj

template <>
struct std::hash<preproj::Integer> {
    std::size_t operator()(const preproj::Integer& a) const { return a.hash(); }
};
