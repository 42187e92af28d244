// A Hopf algebra presented by generators, quadratic rewrite rules, and
// co-structure tables on generators. The rewrite system is oriented by
// the degree-lexicographic order over the configured generator order;
// normal forms are fixed points of the rules.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcartan/element.hpp"
#include "qcartan/linalg.hpp"

namespace qcartan {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RawTerm {
    QScalar coeff;
    Word word;
};

struct CoproductTerm {
    QScalar coeff;
    Word left;
    Word right;
};

struct FrtBlock {
    int m = 0;                               // T is m x m
    Matrix R;                                // m^2 x m^2
    std::vector<std::vector<GenId>> t_ids;   // generator ids of the T grid
    GenId det_id = 0;                        // quantum determinant generator
    GenId det_inv_id = 0;                    // its adjoined inverse
    std::vector<RawTerm> det_expr;           // determinant as a T-word combination
};

struct InstanceConfig {
    std::vector<std::string> generators;
    // LHS is a length-2 word; RHS a combination of normal monomials.
    std::vector<std::pair<Word, std::vector<RawTerm>>> rules;
    std::vector<std::vector<CoproductTerm>> coproduct;  // per generator
    std::vector<QScalar> counit;                        // per generator, plain rationals
    std::vector<std::vector<RawTerm>> antipode;         // per generator
    std::vector<std::vector<RawTerm>> antipode_inv;     // per generator
    std::optional<FrtBlock> frt;
};

class Instance {
public:
    explicit Instance(InstanceConfig cfg) : cfg_(std::move(cfg)) { validate(); }

    const InstanceConfig& config() const { return cfg_; }
    int generator_count() const { return static_cast<int>(cfg_.generators.size()); }
    const std::string& name(GenId id) const { return cfg_.generators.at(id); }

    GenId id_of(const std::string& name) const {
        auto it = ids_.find(name);
        if (it == ids_.end()) throw ConfigError("unknown generator '" + name + "'");
        return it->second;
    }
    bool has_generator(const std::string& name) const { return ids_.count(name) != 0; }

    const std::optional<FrtBlock>& frt() const { return cfg_.frt; }

    // ----- rewriting -----

    AlgebraElement nf(const std::vector<RawTerm>& raw) const {
        AlgebraElement out;
        for (const auto& t : raw) out += nf_word(t.word).scaled(t.coeff);
        return out;
    }

    AlgebraElement nf_word(const Word& w) const {
        {
            std::shared_lock lk(caches_->mutex);
            auto it = caches_->nf.find(w);
            if (it != caches_->nf.end()) return it->second;
        }
        AlgebraElement result = reduce(w);
        {
            std::unique_lock lk(caches_->mutex);
            caches_->nf.emplace(w, result);
        }
        return result;
    }

    AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const {
        AlgebraElement out;
        for (const auto& [wa, ca] : a.terms())
            for (const auto& [wb, cb] : b.terms())
                out += nf_word(wa.concat(wb)).scaled(ca * cb);
        return out;
    }

    AlgebraElement gen(const std::string& name) const {
        return AlgebraElement::generator(id_of(name));
    }

    // ----- co-structures -----

    QScalar counit(const AlgebraElement& e) const {
        QScalar out(0);
        for (const auto& [w, c] : e.terms()) {
            QScalar v(1);
            for (GenId g : w.g) v *= cfg_.counit[g];
            out += v * c;
        }
        return out;
    }

    TensorElement coproduct(const AlgebraElement& e) const {
        TensorElement out;
        for (const auto& [w, c] : e.terms()) out = out + coproduct_word(w).scaled(c);
        return out;
    }

    enum class AntipodeDir { S, SInv };

    AlgebraElement antipode(const AlgebraElement& e, AntipodeDir dir = AntipodeDir::S) const {
        const auto& table = dir == AntipodeDir::S ? antipode_elems_ : antipode_inv_elems_;
        AlgebraElement out;
        for (const auto& [w, c] : e.terms()) {
            // anti-homomorphism: S(g1...gk) = S(gk)...S(g1)
            AlgebraElement acc = AlgebraElement::unit();
            for (std::size_t i = w.g.size(); i-- > 0;) acc = mul(acc, table[w.g[i]]);
            out += acc.scaled(c);
        }
        return out;
    }

    // tensor product in A (x) A
    TensorElement tensor_mul(const TensorElement& x, const TensorElement& y) const {
        TensorElement out;
        for (const auto& [wl, xr] : x.terms())
            for (const auto& [yl, yr] : y.terms()) {
                AlgebraElement left = nf_word(wl.concat(yl));
                AlgebraElement right = mul(xr, yr);
                for (const auto& [lw, lc] : left.terms()) out.add(lw, right.scaled(lc));
            }
        return out;
    }

    Tensor3Element coproduct_left(const TensorElement& t) const {  // (Delta (x) id)
        Tensor3Element out;
        for (const auto& [w, r] : t.terms()) {
            TensorElement dw = coproduct_word(w);
            for (const auto& [u, velem] : dw.terms())
                for (const auto& [vw, vc] : velem.terms()) out.add(u, vw, r.scaled(vc));
        }
        return out;
    }

    Tensor3Element coproduct_right(const TensorElement& t) const {  // (id (x) Delta)
        Tensor3Element out;
        for (const auto& [w, r] : t.terms()) {
            TensorElement dr = coproduct(r);
            for (const auto& [u, velem] : dr.terms()) out.add(w, u, velem);
        }
        return out;
    }

    TensorElement flip(const TensorElement& t) const {
        TensorElement out;
        for (const auto& [w, r] : t.terms())
            for (const auto& [rw, rc] : r.terms())
                out.add(rw, AlgebraElement::monomial(w, rc));
        return out;
    }

    // convenience: apply counit to one leg
    AlgebraElement counit_left(const TensorElement& t) const {
        AlgebraElement out;
        for (const auto& [w, r] : t.terms()) {
            QScalar v(1);
            for (GenId g : w.g) v *= cfg_.counit[g];
            out += r.scaled(v);
        }
        return out;
    }
    AlgebraElement counit_right(const TensorElement& t) const {
        AlgebraElement out;
        for (const auto& [w, r] : t.terms()) out += AlgebraElement::monomial(w, counit(r));
        return out;
    }

    // multiply the two legs together (m-composition used by antipode axioms)
    AlgebraElement merge_legs(const TensorElement& t) const {
        AlgebraElement out;
        for (const auto& [w, r] : t.terms()) out += mul(AlgebraElement::monomial(w, QScalar(1)), r);
        return out;
    }

    AlgebraElement antipode_left_leg(const TensorElement& t, AntipodeDir dir) const {
        AlgebraElement out;
        for (const auto& [w, r] : t.terms())
            out += mul(antipode(AlgebraElement::monomial(w, QScalar(1)), dir), r);
        return out;
    }
    AlgebraElement antipode_right_leg(const TensorElement& t, AntipodeDir dir) const {
        AlgebraElement out;
        for (const auto& [w, r] : t.terms())
            out += mul(AlgebraElement::monomial(w, QScalar(1)), antipode(r, dir));
        return out;
    }

    TensorElement antipode_both_flip(const TensorElement& t, AntipodeDir dir) const {
        // sigma o (S (x) S): used by the Delta(S(x)) axiom check
        TensorElement out;
        for (const auto& [w, r] : t.terms()) {
            AlgebraElement sl = antipode(AlgebraElement::monomial(w, QScalar(1)), dir);
            AlgebraElement sr = antipode(r, dir);
            for (const auto& [rw, rc] : sr.terms()) out.add(rw, sl.scaled(rc));
        }
        return out;
    }

    // all normal monomials of the given word length
    std::vector<Word> normal_words(int length) const {
        std::vector<Word> out;
        Word cur;
        enumerate_normal(cur, length, out);
        return out;
    }

    bool word_is_normal(const Word& w) const {
        for (std::size_t i = 0; i + 1 < w.g.size(); ++i)
            if (rules_.count({w.g[i], w.g[i + 1]})) return false;
        return true;
    }

    // instance with every scalar in the presentation evaluated at q = q0
    Instance specialized(const Rational& q0) const {
        InstanceConfig c = cfg_;
        auto sp = [&](QScalar& s) {
            try {
                s = QScalar(s.specialize(q0));
            } catch (const PoleError& e) {
                throw ConfigError(std::string("cannot specialize instance: ") + e.what());
            }
        };
        for (auto& [lhs, rhs] : c.rules)
            for (auto& t : rhs) sp(t.coeff);
        for (auto& tbl : c.coproduct)
            for (auto& t : tbl) sp(t.coeff);
        for (auto& v : c.counit) sp(v);
        for (auto& tbl : c.antipode)
            for (auto& t : tbl) sp(t.coeff);
        for (auto& tbl : c.antipode_inv)
            for (auto& t : tbl) sp(t.coeff);
        if (c.frt) {
            for (int i = 0; i < c.frt->R.rows(); ++i)
                for (int j = 0; j < c.frt->R.cols(); ++j) sp(c.frt->R.at(i, j));
            for (auto& t : c.frt->det_expr) sp(t.coeff);
        }
        return Instance(std::move(c));
    }

    std::string word_to_string(const Word& w) const {
        if (w.empty()) return "I";
        std::string s;
        for (std::size_t i = 0; i < w.g.size(); ++i) {
            if (i) s += "*";
            s += name(w.g[i]);
        }
        return s;
    }

    std::string to_string(const AlgebraElement& e) const {
        if (e.is_zero()) return "0";
        std::string s;
        for (const auto& [w, c] : e.terms()) {
            if (!s.empty()) s += " + ";
            std::string cs = c.to_string();
            if (w.empty()) {
                s += cs;
            } else if (c.is_one()) {
                s += word_to_string(w);
            } else {
                if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
                s += cs + "*" + word_to_string(w);
            }
        }
        return s;
    }

    std::string to_string(const TensorElement& t) const {
        if (t.is_zero()) return "0";
        std::string s;
        for (const auto& [w, r] : t.terms()) {
            if (!s.empty()) s += " + ";
            s += word_to_string(w) + " (x) (" + to_string(r) + ")";
        }
        return s;
    }

private:
    InstanceConfig cfg_;
    std::map<std::string, GenId> ids_;
    std::map<std::pair<GenId, GenId>, std::vector<RawTerm>> rules_;
    std::vector<AlgebraElement> antipode_elems_, antipode_inv_elems_;
    std::vector<TensorElement> coproduct_elems_;

    struct Caches {
        std::map<Word, AlgebraElement, DegLex> nf;
        std::map<Word, TensorElement, DegLex> cop;
        std::shared_mutex mutex;
    };
    std::unique_ptr<Caches> caches_ = std::make_unique<Caches>();

    void validate() {
        if (cfg_.generators.empty()) throw ConfigError("no generators");
        for (std::size_t i = 0; i < cfg_.generators.size(); ++i) {
            const std::string& n = cfg_.generators[i];
            if (n.empty()) throw ConfigError("empty generator name");
            if (!ids_.emplace(n, static_cast<GenId>(i)).second)
                throw ConfigError("duplicate generator '" + n + "'");
        }
        auto check_table = [&](std::size_t size, const char* what) {
            if (size != cfg_.generators.size())
                throw ConfigError(std::string(what) + " table does not cover every generator");
        };
        check_table(cfg_.coproduct.size(), "coproduct");
        check_table(cfg_.counit.size(), "counit");
        check_table(cfg_.antipode.size(), "antipode");
        check_table(cfg_.antipode_inv.size(), "antipode_inv");

        for (const auto& v : cfg_.counit)
            if (!(v.den() == Poly(1)) || v.num().degree() > 0)
                throw ConfigError("counit value '" + v.to_string() + "' is not a plain rational");

        for (const auto& [lhs, rhs] : cfg_.rules) {
            if (lhs.size() != 2) throw ConfigError("rewrite rule LHS must have length 2");
            for (GenId g : lhs.g) require_id(g);
            for (const auto& t : rhs) {
                for (GenId g : t.word.g) require_id(g);
                if (!deglex_less(t.word, lhs))
                    throw ConfigError("rewrite rule is not decreasing in the monomial order: " +
                                      raw_word_name(lhs) + " -> " + raw_word_name(t.word));
            }
            auto key = std::make_pair(lhs.g[0], lhs.g[1]);
            if (!rules_.emplace(key, rhs).second)
                throw ConfigError("duplicate rewrite rule for " + raw_word_name(lhs));
        }

        // rule RHS must be irreducible
        for (const auto& [lhs, rhs] : cfg_.rules)
            for (const auto& t : rhs)
                if (!word_is_normal(t.word))
                    throw ConfigError("rewrite rule RHS contains a reducible word: " +
                                      raw_word_name(t.word));

        antipode_elems_.resize(cfg_.generators.size());
        antipode_inv_elems_.resize(cfg_.generators.size());
        coproduct_elems_.resize(cfg_.generators.size());
        for (std::size_t i = 0; i < cfg_.generators.size(); ++i) {
            antipode_elems_[i] = nf(cfg_.antipode[i]);
            antipode_inv_elems_[i] = nf(cfg_.antipode_inv[i]);
            TensorElement t;
            for (const auto& ct : cfg_.coproduct[i]) {
                AlgebraElement left = nf_word(ct.left).scaled(ct.coeff);
                AlgebraElement right = nf_word(ct.right);
                for (const auto& [lw, lc] : left.terms()) t.add(lw, right.scaled(lc));
            }
            coproduct_elems_[i] = t;
        }

        if (cfg_.frt) {
            const FrtBlock& f = *cfg_.frt;
            if (f.m < 2) throw ConfigError("frt: T grid must be at least 2x2");
            if (f.R.rows() != f.m * f.m || f.R.cols() != f.m * f.m)
                throw ConfigError("frt: R must be m^2 x m^2");
            if (static_cast<int>(f.t_ids.size()) != f.m)
                throw ConfigError("frt: T grid shape mismatch");
            for (const auto& row : f.t_ids) {
                if (static_cast<int>(row.size()) != f.m) throw ConfigError("frt: T grid shape mismatch");
                for (GenId g : row) require_id(g);
            }
            require_id(f.det_id);
            require_id(f.det_inv_id);
        }
    }

    void require_id(GenId g) const {
        if (g >= cfg_.generators.size()) throw ConfigError("generator id out of range");
    }

    std::string raw_word_name(const Word& w) const {
        std::string s;
        for (std::size_t i = 0; i < w.g.size(); ++i) {
            if (i) s += "*";
            s += cfg_.generators[w.g[i]];
        }
        return s.empty() ? "I" : s;
    }

    AlgebraElement reduce(const Word& w) const {
        for (std::size_t i = 0; i + 1 < w.g.size(); ++i) {
            auto it = rules_.find({w.g[i], w.g[i + 1]});
            if (it == rules_.end()) continue;
            AlgebraElement out;
            Word prefix(std::vector<GenId>(w.g.begin(), w.g.begin() + i));
            Word suffix(std::vector<GenId>(w.g.begin() + i + 2, w.g.end()));
            for (const auto& t : it->second) {
                Word nw = prefix.concat(t.word).concat(suffix);
                out += nf_word(nw).scaled(t.coeff);
            }
            return out;
        }
        return AlgebraElement::monomial(w, QScalar(1));
    }

    TensorElement coproduct_word(const Word& w) const {
        {
            std::shared_lock lk(caches_->mutex);
            auto it = caches_->cop.find(w);
            if (it != caches_->cop.end()) return it->second;
        }
        TensorElement acc = TensorElement::unit();
        for (GenId g : w.g) acc = tensor_mul(acc, coproduct_elems_[g]);
        {
            std::unique_lock lk(caches_->mutex);
            caches_->cop.emplace(w, acc);
        }
        return acc;
    }

    void enumerate_normal(Word& cur, int remaining, std::vector<Word>& out) const {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (GenId g = 0; g < cfg_.generators.size(); ++g) {
            if (!cur.empty() && rules_.count({cur.g.back(), g})) continue;
            cur.g.push_back(g);
            enumerate_normal(cur, remaining - 1, out);
            cur.g.pop_back();
        }
    }
};

}  // namespace qcartan
