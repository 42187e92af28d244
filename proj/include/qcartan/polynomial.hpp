// Dense univariate polynomials in q over BigInt.
//
// Supplies exactly what the rational-function field needs: ring ops,
// content/primitive part, gcd by a primitive pseudo-remainder sequence,
// exact division, evaluation, and a perfect-square root (used by the
// FRT builder when splitting Hecke eigenvalues).

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qcartan/bigint.hpp"
#include "qcartan/rational.hpp"

namespace qcartan {

class DegreeCapExceeded : public std::runtime_error {
public:
    explicit DegreeCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Guardrail against runaway symbolic blowup. Checked on every product.
inline int& poly_degree_cap() {
    static int cap = 64;
    return cap;
}

class Poly {
public:
    Poly() = default;
    Poly(long long c) {
        if (c != 0) c_.push_back(BigInt(c));
    }
    Poly(BigInt c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }

    static Poly q_power(int e, BigInt coeff = BigInt(1)) {
        if (e < 0) throw std::invalid_argument("Poly: negative exponent");
        Poly p;
        if (coeff.is_zero()) return p;
        p.c_.assign(static_cast<std::size_t>(e) + 1, BigInt(0));
        p.c_.back() = std::move(coeff);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const BigInt& coeff(int k) const {
        static const BigInt zero(0);
        if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<std::size_t>(k)];
    }
    const BigInt& lead() const {
        if (is_zero()) throw std::domain_error("Poly: leading coefficient of zero");
        return c_.back();
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), BigInt(0));
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            if (i < a.c_.size()) r.c_[i] += a.c_[i];
            if (i < b.c_.size()) r.c_[i] += b.c_[i];
        }
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        if (a.degree() + b.degree() > poly_degree_cap())
            throw DegreeCapExceeded("polynomial degree cap " + std::to_string(poly_degree_cap()) +
                                    " exceeded (degree " + std::to_string(a.degree() + b.degree()) + ")");
        Poly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    BigInt content() const {
        BigInt g(0);
        for (const auto& c : c_) g = BigInt::gcd(g, c);
        return g;
    }

    Poly primitive_part() const {
        if (is_zero()) return Poly();
        BigInt g = content();
        Poly r = *this;
        for (auto& c : r.c_) c = c / g;
        if (r.lead().is_negative()) r = -r;
        return r;
    }

    Poly scaled(const BigInt& f) const {
        if (f.is_zero()) return Poly();
        Poly r = *this;
        for (auto& c : r.c_) c = c * f;
        return r;
    }

    // Exact division; throws if the division leaves a remainder.
    Poly divide_exact(const Poly& d) const {
        if (d.is_zero()) throw std::domain_error("Poly: division by zero");
        if (is_zero()) return Poly();
        Poly rem = *this, quo;
        quo.c_.assign(static_cast<std::size_t>(degree() - d.degree()) + 1, BigInt(0));
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            BigInt q, r;
            BigInt::divmod(rem.lead(), d.lead(), q, r);
            if (!r.is_zero()) throw std::domain_error("Poly: inexact division");
            int shift = rem.degree() - d.degree();
            quo.c_[static_cast<std::size_t>(shift)] = q;
            Poly sub;
            sub.c_.assign(static_cast<std::size_t>(rem.degree()) + 1, BigInt(0));
            for (int i = 0; i <= d.degree(); ++i)
                sub.c_[static_cast<std::size_t>(i + shift)] = d.coeff(i) * q;
            sub.trim();
            rem = rem - sub;
        }
        if (!rem.is_zero()) throw std::domain_error("Poly: inexact division");
        quo.trim();
        return quo;
    }

    // Fraction-free pseudo-remainder of a by b.
    static Poly prem(Poly a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly: prem by zero");
        while (!a.is_zero() && a.degree() >= b.degree()) {
            int shift = a.degree() - b.degree();
            BigInt la = a.lead();
            a = a.scaled(b.lead());
            Poly sub;
            sub.c_.assign(static_cast<std::size_t>(b.degree() + shift) + 1, BigInt(0));
            for (int i = 0; i <= b.degree(); ++i)
                sub.c_[static_cast<std::size_t>(i + shift)] = b.coeff(i) * la;
            sub.trim();
            a = a - sub;
        }
        return a;
    }

    // Gcd over Z[q], normalized to positive leading coefficient.
    static Poly gcd(Poly a, Poly b) {
        if (a.is_zero()) return b.is_zero() ? Poly() : b.primitive_part().scaled(b.content().abs());
        if (b.is_zero()) return a.primitive_part().scaled(a.content().abs());
        BigInt gc = BigInt::gcd(a.content(), b.content());
        a = a.primitive_part();
        b = b.primitive_part();
        if (a.degree() < b.degree()) std::swap(a, b);
        while (!b.is_zero()) {
            Poly r = prem(a, b);
            a = b;
            b = r.is_zero() ? Poly() : r.primitive_part();
        }
        return a.scaled(gc);
    }

    Rational eval(const Rational& x) const {
        Rational r(0);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + Rational(c_[i]);
        return r;
    }

    Poly derivative() const {
        Poly r;
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = c_[i] * BigInt(static_cast<long long>(i));
        r.trim();
        return r;
    }

    // Integer-coefficient square root, if this is a perfect square.
    bool try_sqrt(Poly& out) const {
        if (is_zero()) {
            out = Poly();
            return true;
        }
        if (degree() % 2 != 0 || lead().is_negative()) return false;
        // leading coefficient must be a perfect square
        BigInt lr = isqrt(lead());
        if (lr * lr != lead()) return false;
        int half = degree() / 2;
        Poly s;
        s.c_.assign(static_cast<std::size_t>(half) + 1, BigInt(0));
        s.c_.back() = lr;
        for (int k = half - 1; k >= 0; --k) {
            // match coefficient of q^(k + half)
            BigInt acc(0);
            for (int i = k + 1; i <= half; ++i) {
                int j = k + half - i;
                if (j > half || j <= k) continue;
                acc += s.coeff(i) * s.coeff(j);
            }
            BigInt target = coeff(k + half) - acc;
            BigInt qc, rc;
            BigInt::divmod(target, lr * BigInt(2), qc, rc);
            if (!rc.is_zero()) return false;
            s.c_[static_cast<std::size_t>(k)] = qc;
        }
        s.trim();
        if (s * s != *this) return false;
        out = s;
        return true;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const BigInt& c = coeff(k);
            if (c.is_zero()) continue;
            BigInt a = c.abs();
            if (out.empty()) {
                if (c.is_negative()) out += "-";
            } else {
                out += c.is_negative() ? " - " : " + ";
            }
            bool unit = a.is_one();
            if (k == 0) {
                out += a.to_string();
            } else {
                if (!unit) out += a.to_string() + "*";
                out += (k == 1) ? "q" : ("q^" + std::to_string(k));
            }
        }
        return out;
    }

private:
    std::vector<BigInt> c_;  // c_[k] is the coefficient of q^k; no trailing zeros

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    static BigInt isqrt(const BigInt& n) {
        if (n.is_zero() || n.is_negative()) return BigInt(0);
        BigInt lo(0), hi(1);
        while (hi * hi <= n) hi = hi * BigInt(2);
        while (lo + BigInt(1) < hi) {
            BigInt mid = (lo + hi) / BigInt(2);
            if (mid * mid <= n)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }
};

}  // namespace qcartan
