// The coefficient field: rational functions of the deformation parameter q
// with exact integer arithmetic and a canonical representation.
//
// Canonical form: numerator and denominator are coprime in Z[q], the
// denominator has a positive leading coefficient, and the pair carries no
// common integer content. Equality of values is equality of representations.

#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>

#include "qcartan/polynomial.hpp"
#include "qcartan/rational.hpp"

namespace qcartan {

class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

class QScalar {
public:
    QScalar() : num_(), den_(1) {}
    QScalar(long long n) : num_(n), den_(1) {}
    QScalar(const Rational& r) : num_(r.num()), den_(r.den()) { canonicalize(); }
    QScalar(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::domain_error("QScalar: zero denominator");
        canonicalize();
    }

    static QScalar q() { return QScalar(Poly::q_power(1), Poly(1)); }

    // q^e with e possibly negative; Laurent powers are cleared into num/den.
    static QScalar q_pow(int e) {
        if (e >= 0) return QScalar(Poly::q_power(e), Poly(1));
        return QScalar(Poly(1), Poly::q_power(-e));
    }

    // lambda = q - q^{-1} = (q^2 - 1)/q
    static QScalar lambda() { return QScalar(Poly::q_power(2) - Poly(1), Poly::q_power(1)); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == Poly(1) && den_ == Poly(1); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    friend bool operator==(const QScalar& a, const QScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const QScalar& a, const QScalar& b) { return !(a == b); }

    friend QScalar operator+(const QScalar& a, const QScalar& b) {
        return QScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QScalar operator-(const QScalar& a, const QScalar& b) {
        return QScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QScalar operator*(const QScalar& a, const QScalar& b) {
        return QScalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend QScalar operator/(const QScalar& a, const QScalar& b) {
        if (b.is_zero()) throw std::domain_error("QScalar: division by zero");
        return QScalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    QScalar operator-() const {
        QScalar r = *this;
        r.num_ = -r.num_;
        r.fix_signs();
        return r;
    }
    QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
    QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
    QScalar& operator*=(const QScalar& o) { return *this = *this * o; }
    QScalar& operator/=(const QScalar& o) { return *this = *this / o; }

    QScalar pow(int e) const {
        if (e == 0) return QScalar(1);
        QScalar base = e > 0 ? *this : QScalar(1) / *this;
        int n = e > 0 ? e : -e;
        QScalar r(1);
        while (n) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    QScalar inverse() const { return QScalar(1) / *this; }

    // Exact value at q = q0; the canonical form guarantees removable
    // singularities are already cancelled.
    Rational specialize(const Rational& q0) const {
        Rational d = den_.eval(q0);
        if (d.is_zero())
            throw PoleError("pole at q=" + q0.to_string() + " (denominator " + den_.to_string() + ")");
        return num_.eval(q0) / d;
    }

    bool has_pole_at(const Rational& q0) const { return den_.eval(q0).is_zero(); }

    // Square root when both numerator and denominator are perfect squares.
    bool try_sqrt(QScalar& out) const {
        Poly sn, sd;
        if (!num_.try_sqrt(sn) || !den_.try_sqrt(sd)) return false;
        out = QScalar(sn, sd);
        return true;
    }

    std::string to_string() const {
        if (den_ == Poly(1)) return num_.to_string();
        std::string n = num_.to_string(), d = den_.to_string();
        if (n.find(' ') != std::string::npos) n = "(" + n + ")";
        if (d.find(' ') != std::string::npos || d.find('*') != std::string::npos) d = "(" + d + ")";
        return n + "/" + d;
    }

    // --- text syntax: integers, q, ^ with integer exponents, + - * /, parens
    static QScalar parse(const std::string& text) {
        Parser p{text, 0};
        QScalar v = p.parse_sum();
        p.skip_ws();
        if (p.pos != text.size())
            throw std::invalid_argument("scalar syntax error at offset " + std::to_string(p.pos) +
                                        " in '" + text + "'");
        return v;
    }

private:
    Poly num_;
    Poly den_;

    void fix_signs() {
        if (!den_.is_zero() && den_.lead().is_negative()) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        if (!(g == Poly(1))) {
            num_ = num_.divide_exact(g);
            den_ = den_.divide_exact(g);
        }
        BigInt c = BigInt::gcd(num_.content(), den_.content());
        if (!c.is_one()) {
            Poly cp{c};
            num_ = num_.divide_exact(cp);
            den_ = den_.divide_exact(cp);
        }
        fix_signs();
    }

    struct Parser {
        const std::string& s;
        std::size_t pos;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        [[noreturn]] void fail(const std::string& msg) {
            throw std::invalid_argument("scalar syntax error at offset " + std::to_string(pos) +
                                        ": " + msg);
        }

        QScalar parse_sum() {
            QScalar v = parse_product();
            for (;;) {
                if (eat('+'))
                    v = v + parse_product();
                else if (eat('-'))
                    v = v - parse_product();
                else
                    return v;
            }
        }

        QScalar parse_product() {
            QScalar v = parse_factor();
            for (;;) {
                if (eat('*'))
                    v = v * parse_factor();
                else if (eat('/'))
                    v = v / parse_factor();
                else
                    return v;
            }
        }

        QScalar parse_factor() {
            skip_ws();
            bool neg = false;
            while (eat('-')) neg = !neg;
            QScalar v = parse_power();
            return neg ? -v : v;
        }

        QScalar parse_power() {
            QScalar base = parse_atom();
            skip_ws();
            if (eat('^')) {
                int e = parse_int_exponent();
                return base.pow(e);
            }
            return base;
        }

        int parse_int_exponent() {
            skip_ws();
            bool neg = false;
            if (eat('-'))
                neg = true;
            else
                eat('+');
            skip_ws();
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                fail("integer exponent expected");
            long long v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                v = v * 10 + (s[pos] - '0');
                if (v > poly_degree_cap()) fail("exponent exceeds degree cap");
                ++pos;
            }
            return static_cast<int>(neg ? -v : v);
        }

        QScalar parse_atom() {
            skip_ws();
            if (pos >= s.size()) fail("unexpected end of input");
            if (eat('(')) {
                QScalar v = parse_sum();
                if (!eat(')')) fail("')' expected");
                return v;
            }
            char c = s[pos];
            if (c == 'q' && (pos + 1 == s.size() ||
                             !std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
                ++pos;
                return QScalar::q();
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                    digits.push_back(s[pos++]);
                return QScalar(Rational(BigInt::from_string(digits)));
            }
            fail("number, 'q', or '(' expected");
        }
    };
};

}  // namespace qcartan
