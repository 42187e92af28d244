// Value types of the algebra layer: noncommutative polynomials in normal
// form and their tensor squares/cubes. Products and coproducts live on
// Instance (they need the rewrite system); everything here is instance-free.

#pragma once

#include <map>
#include <string>
#include <utility>

#include "qcartan/qscalar.hpp"
#include "qcartan/word.hpp"

namespace qcartan {

class AlgebraElement {
public:
    using Terms = std::map<Word, QScalar, DegLex>;

    AlgebraElement() = default;
    static AlgebraElement unit() { return monomial(Word::unit(), QScalar(1)); }
    static AlgebraElement monomial(const Word& w, QScalar c) {
        AlgebraElement e;
        if (!c.is_zero()) e.terms_[w] = std::move(c);
        return e;
    }
    static AlgebraElement generator(GenId id) { return monomial(Word::single(id), QScalar(1)); }

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    void add_term(const Word& w, const QScalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_[w] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
        AlgebraElement r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, c);
        return r;
    }
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
        AlgebraElement r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
        return r;
    }
    AlgebraElement operator-() const {
        AlgebraElement r;
        for (const auto& [w, c] : terms_) r.terms_[w] = -c;
        return r;
    }
    AlgebraElement scaled(const QScalar& f) const {
        AlgebraElement r;
        if (f.is_zero()) return r;
        for (const auto& [w, c] : terms_) r.terms_[w] = c * f;
        return r;
    }
    AlgebraElement& operator+=(const AlgebraElement& o) { return *this = *this + o; }
    AlgebraElement& operator-=(const AlgebraElement& o) { return *this = *this - o; }

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

private:
    Terms terms_;
};

// Element of A (x) A, right factors collected against left normal words.
class TensorElement {
public:
    using Terms = std::map<Word, AlgebraElement, DegLex>;

    TensorElement() = default;
    static TensorElement unit() {
        TensorElement t;
        t.add(Word::unit(), AlgebraElement::unit());
        return t;
    }

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    void add(const Word& left, const AlgebraElement& right) {
        if (right.is_zero()) return;
        auto it = terms_.find(left);
        if (it == terms_.end()) {
            terms_[left] = right;
        } else {
            it->second += right;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend TensorElement operator+(const TensorElement& a, const TensorElement& b) {
        TensorElement r = a;
        for (const auto& [w, e] : b.terms_) r.add(w, e);
        return r;
    }
    friend TensorElement operator-(const TensorElement& a, const TensorElement& b) {
        TensorElement r = a;
        for (const auto& [w, e] : b.terms_) r.add(w, -e);
        return r;
    }
    TensorElement scaled(const QScalar& f) const {
        TensorElement r;
        for (const auto& [w, e] : terms_) r.add(w, e.scaled(f));
        return r;
    }

    friend bool operator==(const TensorElement& a, const TensorElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const TensorElement& a, const TensorElement& b) { return !(a == b); }

private:
    Terms terms_;
};

// Element of A (x) A (x) A; only used by coassociativity-style checks.
class Tensor3Element {
public:
    using Key = std::pair<Word, Word>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            DegLex lt;
            if (lt(a.first, b.first)) return true;
            if (lt(b.first, a.first)) return false;
            return lt(a.second, b.second);
        }
    };
    using Terms = std::map<Key, AlgebraElement, KeyLess>;

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    void add(const Word& w1, const Word& w2, const AlgebraElement& right) {
        if (right.is_zero()) return;
        Key k{w1, w2};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = right;
        } else {
            it->second += right;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend bool operator==(const Tensor3Element& a, const Tensor3Element& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Tensor3Element& a, const Tensor3Element& b) { return !(a == b); }

private:
    Terms terms_;
};

}  // namespace qcartan
