#pragma once
// Exact rationals and residues modulo m, both usable as coefficient rings.

#include "integer.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace preproj {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(const Integer& n) : num_(n), den_(1) {}
    Rational(const Integer& n, const Integer& d) : num_(n), den_(d) { normalize(); }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_unit() const { return !is_zero(); }
    bool is_integral() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }
    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(den_, num_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }
    Rational operator-() const { return Rational(-num_, den_, true); }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    std::string str() const { return den_.is_one() ? num_.str() : num_.str() + "/" + den_.str(); }

private:
    Rational(Integer n, Integer d, bool) : num_(std::move(n)), den_(std::move(d)) {}
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        if (den_.sign() < 0) { num_ = -num_; den_ = -den_; }
        Integer g = gcd(num_, den_);
        if (!g.is_one() && !g.is_zero()) { num_ = num_ / g; den_ = den_ / g; }
        if (num_.is_zero()) den_ = 1;
    }
    Integer num_, den_;
};

// Residue class modulo m (m >= 2). A default or integer-constructed value has
// modulus 0 and adopts the modulus of whatever it is combined with.
class Zmod {
public:
    Zmod() = default;
    Zmod(int v) : v_(v), m_(0) {}
    Zmod(std::int64_t v, std::int64_t m) : v_(v), m_(m) { reduce(); }

    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return m_; }
    bool is_zero() const { return m_ ? v_ == 0 : v_ == 0; }
    bool is_one() const { return m_ ? v_ == 1 % m_ : v_ == 1; }
    bool is_unit() const {
        if (!m_) return v_ == 1 || v_ == -1;
        return std::gcd(v_, m_) == 1;
    }
    Zmod inverse() const {
        if (!m_) {
            if (v_ == 1 || v_ == -1) return *this;
            throw std::domain_error("Zmod: inverse without modulus");
        }
        Integer s, t;
        Integer g = xgcd(Integer(v_), Integer(m_), s, t);
        if (!g.is_one()) throw std::domain_error("Zmod: not a unit");
        return Zmod(mod_nonneg(s, Integer(m_)).to_int64(), m_);
    }

    friend Zmod operator+(const Zmod& a, const Zmod& b) {
        std::int64_t m = join(a, b);
        if (!m) return Zmod(a.v_ + b.v_);
        return Zmod(a.v_ + b.v_, m);
    }
    friend Zmod operator-(const Zmod& a, const Zmod& b) {
        std::int64_t m = join(a, b);
        if (!m) return Zmod(a.v_ - b.v_);
        return Zmod(a.v_ - b.v_, m);
    }
    friend Zmod operator*(const Zmod& a, const Zmod& b) {
        std::int64_t m = join(a, b);
        if (!m) return Zmod(a.v_ * b.v_);
        __int128 p = static_cast<__int128>(a.v_) * b.v_ % m;
        return Zmod(static_cast<std::int64_t>(p), m);
    }
    Zmod operator-() const { return m_ ? Zmod(-v_, m_) : Zmod(-v_); }
    Zmod& operator+=(const Zmod& b) { return *this = *this + b; }
    Zmod& operator-=(const Zmod& b) { return *this = *this - b; }
    Zmod& operator*=(const Zmod& b) { return *this = *this * b; }

    friend bool operator==(const Zmod& a, const Zmod& b) {
        std::int64_t m = join(a, b);
        if (!m) return a.v_ == b.v_;
        return Zmod(a.v_, m).v_ == Zmod(b.v_, m).v_;
    }
    friend bool operator!=(const Zmod& a, const Zmod& b) { return !(a == b); }

    std::string str() const { return std::to_string(v_); }

private:
    explicit Zmod(std::int64_t v) : v_(v), m_(0) {}
    static std::int64_t join(const Zmod& a, const Zmod& b) {
        if (a.m_ && b.m_ && a.m_ != b.m_) throw std::invalid_argument("Zmod: modulus mismatch");
        return a.m_ ? a.m_ : b.m_;
    }
    void reduce() {
        if (m_ < 2) throw std::invalid_argument("Zmod: modulus must be >= 2");
        v_ %= m_;
        if (v_ < 0) v_ += m_;
    }
    std::int64_t v_ = 0;
    std::int64_t m_ = 0;
};

// Uniform access used by generic code.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Integer> {
    static Integer from_int(const Integer& v, const Integer&) { return v; }
    static std::string name() { return "Z"; }
};
template <>
struct CoeffTraits<Rational> {
    static Rational from_int(const Integer& v, const Rational&) { return Rational(v); }
    static std::string name() { return "Q"; }
};
template <>
struct CoeffTraits<Zmod> {
    static Zmod from_int(const Integer& v, const Zmod& like) {
        if (!like.modulus()) return Zmod(static_cast<int>(v.to_int64()));
        return Zmod(mod_nonneg(v, Integer(like.modulus())).to_int64(), like.modulus());
    }
    static std::string name() { return "Zmod"; }
};

inline Integer inverse(const Integer& a) {
    if (!a.is_unit()) throw std::domain_error("Integer: not a unit");
    return a;
}
inline Rational inverse(const Rational& a) { return a.inverse(); }
inline Zmod inverse(const Zmod& a) { return a.inverse(); }
inline std::string to_string(const Integer& a) { return a.str(); }
inline std::string to_string(const Rational& a) { return a.str(); }
inline std::string to_string(const Zmod& a) { return a.str(); }

}  // namespace preproj
