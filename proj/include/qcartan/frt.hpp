// FRT instance builder: from an R-matrix and a grid of generator names to
// a full Hopf-algebra presentation.
//
//   - quadratic relations read off R T1 T2 = T2 T1 R,
//   - quantum determinant found on the one-dimensional eigenspace of
//     R-hat = P R (Hecke split of the eigenvalues),
//   - the determinant and its inverse adjoined as central generators so
//     that every rewrite rule keeps a length-2 left-hand side,
//   - antipode and inverse antipode solved linearly from T X = X T = det I.

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qcartan/instance.hpp"

namespace qcartan {

class FrtError : public std::runtime_error {
public:
    explicit FrtError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

using RuleMap = std::map<std::pair<GenId, GenId>, std::vector<RawTerm>>;

inline AlgebraElement ruleset_nf(const RuleMap& rules, const Word& w);

inline AlgebraElement ruleset_nf_elem(const RuleMap& rules, const AlgebraElement& e) {
    AlgebraElement out;
    for (const auto& [w, c] : e.terms()) out += ruleset_nf(rules, w).scaled(c);
    return out;
}

inline AlgebraElement ruleset_nf(const RuleMap& rules, const Word& w) {
    for (std::size_t i = 0; i + 1 < w.g.size(); ++i) {
        auto it = rules.find({w.g[i], w.g[i + 1]});
        if (it == rules.end()) continue;
        AlgebraElement out;
        Word prefix(std::vector<GenId>(w.g.begin(), w.g.begin() + i));
        Word suffix(std::vector<GenId>(w.g.begin() + i + 2, w.g.end()));
        for (const auto& t : it->second)
            out += ruleset_nf(rules, prefix.concat(t.word).concat(suffix)).scaled(t.coeff);
        return out;
    }
    return AlgebraElement::monomial(w, QScalar(1));
}

// linear span over degree-2 words, pivoting on the deg-lex largest word
class RelationBasis {
public:
    void insert(AlgebraElement rel) {
        rel = reduce(rel);
        if (rel.is_zero()) return;
        Word pivot = rel.terms().rbegin()->first;
        QScalar lead = rel.terms().rbegin()->second;
        pivots_[pivot] = rel.scaled(lead.inverse());
        inter_reduce();
    }

    // rules pivot -> -(tail)
    RuleMap rules() const {
        RuleMap out;
        for (const auto& [pivot, rel] : pivots_) {
            std::vector<RawTerm> rhs;
            for (const auto& [w, c] : rel.terms())
                if (!(w == pivot)) rhs.push_back({-c, w});
            out[{pivot.g[0], pivot.g[1]}] = rhs;
        }
        return out;
    }

private:
    std::map<Word, AlgebraElement, DegLex> pivots_;

    AlgebraElement reduce(AlgebraElement rel) const {
        for (;;) {
            bool hit = false;
            for (auto it = rel.terms().rbegin(); it != rel.terms().rend(); ++it) {
                auto p = pivots_.find(it->first);
                if (p != pivots_.end()) {
                    rel = rel - p->second.scaled(it->second);
                    hit = true;
                    break;
                }
            }
            if (!hit) return rel;
        }
    }

    void inter_reduce() {
        for (bool changed = true; changed;) {
            changed = false;
            for (auto& [pivot, rel] : pivots_) {
                for (const auto& [w, c] : rel.terms()) {
                    if (w == pivot) continue;
                    auto p = pivots_.find(w);
                    if (p != pivots_.end()) {
                        rel = rel - p->second.scaled(c);
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
};

}  // namespace detail

struct FrtNames {
    std::vector<std::string> t_names;  // row-major, m*m entries
    std::string det_name = "detq";
    std::string det_inv_name = "detq_inv";
};

inline InstanceConfig build_frt_instance(const Matrix& R, const FrtNames& names) {
    const int n2 = R.rows();
    if (R.cols() != n2) throw FrtError("R must be square");
    int m = 0;
    while (m * m < n2) ++m;
    if (m * m != n2 || m < 2) throw FrtError("R must act on a tensor square");
    if (static_cast<int>(names.t_names.size()) != m * m)
        throw FrtError("expected " + std::to_string(m * m) + " generator names");

    // --- R-hat and the braid form of the Yang-Baxter equation
    Matrix rhat(n2, n2);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    rhat.at(i * m + j, k * m + l) = R.at(j * m + i, k * m + l);

    Matrix inv;
    try {
        inv = R.inverse();
    } catch (const std::domain_error&) {
        throw FrtError("R is not invertible");
    }

    const int n3 = n2 * m;
    Matrix id_m = Matrix::identity(m);
    Matrix r12 = Matrix::kron(rhat, id_m);
    Matrix r23 = Matrix::kron(id_m, rhat);
    if (r12 * r23 * r12 != r23 * r12 * r23)
        throw FrtError("R fails the braid-compatible Yang-Baxter equation");
    (void)n3;

    // --- quadratic relations from R T1 T2 = T2 T1 R
    auto tword = [&](int a, int b, int c, int d) {
        // word T^a_b * T^c_d over T generator ids
        return Word::pair(static_cast<GenId>(a * m + b), static_cast<GenId>(c * m + d));
    };
    detail::RelationBasis basis;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    AlgebraElement rel;
                    for (int a = 0; a < m; ++a)
                        for (int b = 0; b < m; ++b) {
                            const QScalar& cl = R.at(i * m + j, a * m + b);
                            if (!cl.is_zero()) rel.add_term(tword(a, k, b, l), cl);
                            const QScalar& cr = R.at(a * m + b, k * m + l);
                            if (!cr.is_zero()) rel.add_term(tword(j, b, i, a), -cr);
                        }
                    if (!rel.is_zero()) basis.insert(rel);
                }
    detail::RuleMap t_rules = basis.rules();
    for (const auto& [lhs, rhs] : t_rules)
        for (const auto& t : rhs)
            if (!deglex_less(t.word, Word::pair(lhs.first, lhs.second)))
                throw FrtError("RTT relations do not orient under the deg-lex order");

    // --- quantum determinant from the one-dimensional R-hat eigenspace
    // Hecke split: R-hat^2 = s R-hat + t
    Matrix rhat2 = rhat * rhat;
    QScalar s, tcoef;
    {
        // two unknowns from two independent entries, then verified globally
        bool solved = false;
        for (int i = 0; i < n2 && !solved; ++i)
            for (int j = 0; j < n2 && !solved; ++j)
                for (int k = 0; k < n2 && !solved; ++k)
                    for (int l = 0; l < n2 && !solved; ++l) {
                        // [rh(i,j) id(i,j); rh(k,l) id(k,l)] [s;t] = [rh2(i,j); rh2(k,l)]
                        QScalar a1 = rhat.at(i, j), b1 = (i == j) ? QScalar(1) : QScalar(0);
                        QScalar a2 = rhat.at(k, l), b2 = (k == l) ? QScalar(1) : QScalar(0);
                        QScalar det = a1 * b2 - a2 * b1;
                        if (det.is_zero()) continue;
                        s = (rhat2.at(i, j) * b2 - rhat2.at(k, l) * b1) / det;
                        tcoef = (rhat.at(i, j) * rhat2.at(k, l) - rhat.at(k, l) * rhat2.at(i, j)) / det;
                        solved = true;
                    }
        if (!solved) throw FrtError("R-hat is scalar; no determinant split");
        Matrix check = rhat2 - rhat.scaled(s);
        for (int i = 0; i < n2; ++i) check.at(i, i) -= tcoef;
        if (!check.is_zero()) throw FrtError("R-hat does not satisfy a quadratic (Hecke) relation");
    }
    QScalar disc = s * s + QScalar(4) * tcoef;
    QScalar root;
    if (!disc.try_sqrt(root)) throw FrtError("Hecke discriminant is not a perfect square");
    QScalar half(Rational(BigInt(1), BigInt(2)));
    QScalar ev1 = (s + root) * half, ev2 = (s - root) * half;
    if (ev1 == ev2) throw FrtError("R-hat eigenvalues coincide");

    std::vector<QScalar> u;
    for (const QScalar& ev : {ev1, ev2}) {
        Matrix shifted = rhat;
        for (int i = 0; i < n2; ++i) shifted.at(i, i) -= ev;
        auto null = shifted.nullspace();
        if (null.size() == 1) {
            u = null[0];
            break;
        }
    }
    if (u.empty()) throw FrtError("no one-dimensional R-hat eigenspace; determinant not defined");
    // normalize so the first nonzero component is 1
    int ref = 0;
    while (u[static_cast<std::size_t>(ref)].is_zero()) ++ref;
    {
        QScalar inv_ref = u[static_cast<std::size_t>(ref)].inverse();
        for (auto& c : u) c *= inv_ref;
    }
    int ri = ref / m, rj = ref % m;

    AlgebraElement det_elem;
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            const QScalar& c = u[static_cast<std::size_t>(k * m + l)];
            if (!c.is_zero())
                det_elem += detail::ruleset_nf(t_rules, tword(ri, k, rj, l)).scaled(c);
        }
    if (det_elem.is_zero()) throw FrtError("determinant candidate vanishes");

    // det interlaces every row of T1 T2 on the eigenvector
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            AlgebraElement lhs;
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const QScalar& c = u[static_cast<std::size_t>(k * m + l)];
                    if (!c.is_zero())
                        lhs += detail::ruleset_nf(t_rules, tword(i, k, j, l)).scaled(c);
                }
            if (lhs != det_elem.scaled(u[static_cast<std::size_t>(i * m + j)]))
                throw FrtError("determinant is not an eigen-element of T1 T2");
        }
    // centrality within the T algebra
    for (GenId g = 0; g < static_cast<GenId>(m * m); ++g) {
        AlgebraElement ge = AlgebraElement::generator(g);
        AlgebraElement lhsr, rhsr;
        for (const auto& [w, c] : det_elem.terms()) {
            lhsr += detail::ruleset_nf(t_rules, w.concat(Word::single(g))).scaled(c);
            rhsr += detail::ruleset_nf(t_rules, Word::single(g).concat(w)).scaled(c);
        }
        if (lhsr != rhsr)
            throw FrtError("quantum determinant is not central");
        (void)ge;
    }

    // --- full generator list: T entries, det, det^{-1}
    const GenId det_id = static_cast<GenId>(m * m);
    const GenId det_inv_id = static_cast<GenId>(m * m + 1);
    const int ngen = m * m + 2;

    detail::RuleMap rules = t_rules;
    // det elimination: largest word of det -> (det_gen - tail)/coeff
    {
        Word wstar = det_elem.terms().rbegin()->first;
        QScalar cstar = det_elem.terms().rbegin()->second;
        std::vector<RawTerm> rhs;
        rhs.push_back({cstar.inverse(), Word::single(det_id)});
        for (const auto& [w, c] : det_elem.terms())
            if (!(w == wstar)) rhs.push_back({-c / cstar, w});
        rules[{wstar.g[0], wstar.g[1]}] = rhs;
    }
    // centrality of det and det^{-1}; det * det^{-1} = I both ways
    for (GenId g = 0; g < static_cast<GenId>(m * m); ++g) {
        rules[{det_id, g}] = {{QScalar(1), Word::pair(g, det_id)}};
        rules[{det_inv_id, g}] = {{QScalar(1), Word::pair(g, det_inv_id)}};
    }
    rules[{det_id, det_inv_id}] = {{QScalar(1), Word::unit()}};
    rules[{det_inv_id, det_id}] = {{QScalar(1), Word::unit()}};

    // renormalize all right-hand sides against the full rule set
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [lhs, rhs] : rules) {
            AlgebraElement e;
            for (const auto& t : rhs) e += detail::ruleset_nf(rules, t.word).scaled(t.coeff);
            std::vector<RawTerm> fresh;
            for (const auto& [w, c] : e.terms()) fresh.push_back({c, w});
            if (fresh.size() != rhs.size() ||
                !std::equal(fresh.begin(), fresh.end(), rhs.begin(),
                            [](const RawTerm& x, const RawTerm& y) {
                                return x.coeff == y.coeff && x.word == y.word;
                            })) {
                rhs = fresh;
                changed = true;
            }
        }
    }

    // --- co-structures
    InstanceConfig cfg;
    cfg.generators = names.t_names;
    cfg.generators.push_back(names.det_name);
    cfg.generators.push_back(names.det_inv_name);

    for (const auto& [lhs, rhs] : rules) cfg.rules.push_back({Word::pair(lhs.first, lhs.second), rhs});

    cfg.coproduct.resize(static_cast<std::size_t>(ngen));
    cfg.counit.resize(static_cast<std::size_t>(ngen));
    cfg.antipode.resize(static_cast<std::size_t>(ngen));
    cfg.antipode_inv.resize(static_cast<std::size_t>(ngen));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            GenId g = static_cast<GenId>(i * m + j);
            for (int k = 0; k < m; ++k)
                cfg.coproduct[g].push_back({QScalar(1), Word::single(static_cast<GenId>(i * m + k)),
                                            Word::single(static_cast<GenId>(k * m + j))});
            cfg.counit[g] = (i == j) ? QScalar(1) : QScalar(0);
        }
    cfg.coproduct[det_id].push_back({QScalar(1), Word::single(det_id), Word::single(det_id)});
    cfg.coproduct[det_inv_id].push_back({QScalar(1), Word::single(det_inv_id), Word::single(det_inv_id)});
    cfg.counit[det_id] = QScalar(1);
    cfg.counit[det_inv_id] = QScalar(1);

    // --- antipode: solve T X = X T = det I for X with degree-1 entries
    {
        const int nunk = m * m * m * m;  // X^k_j = sum over T gens
        auto unk = [&](int k, int j, int g) { return (k * m + j) * m * m + g; };
        std::vector<std::vector<QScalar>> rows;
        std::vector<QScalar> rhs_col;
        std::map<Word, int, DegLex> word_index;
        struct Eq {
            std::map<Word, std::vector<std::pair<int, QScalar>>, DegLex> by_word;
            AlgebraElement target;
        };
        std::vector<Eq> eqs;
        auto add_equation = [&](bool left_mult, int i, int j) {
            Eq eq;
            for (int k = 0; k < m; ++k)
                for (int g = 0; g < m * m; ++g) {
                    Word w = left_mult
                                 ? Word::pair(static_cast<GenId>(i * m + k), static_cast<GenId>(g))
                                 : Word::pair(static_cast<GenId>(g), static_cast<GenId>(k * m + j));
                    AlgebraElement e = detail::ruleset_nf(t_rules, w);
                    int u_idx = left_mult ? unk(k, j, g) : unk(i, k, g);
                    for (const auto& [nw, nc] : e.terms())
                        eq.by_word[nw].push_back({u_idx, nc});
                }
            if (i == j) eq.target = det_elem;
            eqs.push_back(std::move(eq));
        };
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                add_equation(true, i, j);
                add_equation(false, i, j);
            }
        std::vector<std::vector<QScalar>> mat;
        std::vector<QScalar> target;
        for (const auto& eq : eqs) {
            std::map<Word, QScalar, DegLex> tgt;
            for (const auto& [w, c] : eq.target.terms()) tgt[w] = c;
            std::map<Word, bool, DegLex> seen;
            for (const auto& [w, ents] : eq.by_word) seen[w] = true;
            for (const auto& [w, c] : tgt) seen[w] = true;
            for (const auto& [w, flag] : seen) {
                std::vector<QScalar> row(static_cast<std::size_t>(nunk), QScalar(0));
                auto it = eq.by_word.find(w);
                if (it != eq.by_word.end())
                    for (const auto& [idx, c] : it->second) row[static_cast<std::size_t>(idx)] += c;
                mat.push_back(std::move(row));
                auto tg = tgt.find(w);
                target.push_back(tg == tgt.end() ? QScalar(0) : tg->second);
            }
        }
        Matrix A(static_cast<int>(mat.size()), nunk);
        for (std::size_t r = 0; r < mat.size(); ++r)
            for (int c = 0; c < nunk; ++c) A.at(static_cast<int>(r), c) = mat[r][static_cast<std::size_t>(c)];
        std::vector<QScalar> x;
        try {
            x = A.solve(target);
        } catch (const std::domain_error& e) {
            throw FrtError(std::string("antipode solve failed: ") + e.what());
        }
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < m; ++j) {
                GenId g = static_cast<GenId>(k * m + j);
                for (int gg = 0; gg < m * m; ++gg) {
                    const QScalar& c = x[static_cast<std::size_t>(unk(k, j, gg))];
                    if (!c.is_zero())
                        cfg.antipode[g].push_back({c, Word::pair(static_cast<GenId>(gg), det_inv_id)});
                }
            }

        // inverse antipode: Y with  sum_k Y^k_j T^i_k = delta det  and
        //                           sum_k T^k_j Y^i_k = delta det
        std::vector<Eq>().swap(eqs);
        auto add_equation_inv = [&](bool y_left, int i, int j) {
            Eq eq;
            for (int k = 0; k < m; ++k)
                for (int g = 0; g < m * m; ++g) {
                    Word w = y_left
                                 ? Word::pair(static_cast<GenId>(g), static_cast<GenId>(i * m + k))
                                 : Word::pair(static_cast<GenId>(k * m + j), static_cast<GenId>(g));
                    AlgebraElement e = detail::ruleset_nf(t_rules, w);
                    int u_idx = y_left ? unk(k, j, g) : unk(i, k, g);
                    for (const auto& [nw, nc] : e.terms())
                        eq.by_word[nw].push_back({u_idx, nc});
                }
            if (i == j) eq.target = det_elem;
            eqs.push_back(std::move(eq));
        };
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                add_equation_inv(true, i, j);
                add_equation_inv(false, i, j);
            }
        mat.clear();
        target.clear();
        for (const auto& eq : eqs) {
            std::map<Word, QScalar, DegLex> tgt;
            for (const auto& [w, c] : eq.target.terms()) tgt[w] = c;
            std::map<Word, bool, DegLex> seen;
            for (const auto& [w, ents] : eq.by_word) seen[w] = true;
            for (const auto& [w, c] : tgt) seen[w] = true;
            for (const auto& [w, flag] : seen) {
                std::vector<QScalar> row(static_cast<std::size_t>(nunk), QScalar(0));
                auto it = eq.by_word.find(w);
                if (it != eq.by_word.end())
                    for (const auto& [idx, c] : it->second) row[static_cast<std::size_t>(idx)] += c;
                mat.push_back(std::move(row));
                auto tg = tgt.find(w);
                target.push_back(tg == tgt.end() ? QScalar(0) : tg->second);
            }
        }
        Matrix B(static_cast<int>(mat.size()), nunk);
        for (std::size_t r = 0; r < mat.size(); ++r)
            for (int c = 0; c < nunk; ++c) B.at(static_cast<int>(r), c) = mat[r][static_cast<std::size_t>(c)];
        std::vector<QScalar> y;
        try {
            y = B.solve(target);
        } catch (const std::domain_error& e) {
            throw FrtError(std::string("inverse antipode solve failed: ") + e.what());
        }
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < m; ++j) {
                GenId g = static_cast<GenId>(k * m + j);
                for (int gg = 0; gg < m * m; ++gg) {
                    const QScalar& c = y[static_cast<std::size_t>(unk(k, j, gg))];
                    if (!c.is_zero())
                        cfg.antipode_inv[g].push_back({c, Word::pair(static_cast<GenId>(gg), det_inv_id)});
                }
            }
    }
    cfg.antipode[det_id] = {{QScalar(1), Word::single(det_inv_id)}};
    cfg.antipode[det_inv_id] = {{QScalar(1), Word::single(det_id)}};
    cfg.antipode_inv[det_id] = {{QScalar(1), Word::single(det_inv_id)}};
    cfg.antipode_inv[det_inv_id] = {{QScalar(1), Word::single(det_id)}};

    FrtBlock frt;
    frt.m = m;
    frt.R = R;
    frt.t_ids.assign(static_cast<std::size_t>(m), std::vector<GenId>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) frt.t_ids[i][j] = static_cast<GenId>(i * m + j);
    frt.det_id = det_id;
    frt.det_inv_id = det_inv_id;
    for (const auto& [w, c] : det_elem.terms()) frt.det_expr.push_back({c, w});
    cfg.frt = frt;

    return cfg;
}

// The standard GL_q(2) R-matrix: the convention with the lambda block below
// the diagonal, which orients the RTT relations as b*a -> q^{-1} a*b.
inline Matrix standard_glq2_R() {
    Matrix R(4, 4);
    QScalar q = QScalar::q();
    R.at(0, 0) = q;
    R.at(1, 1) = QScalar(1);
    R.at(2, 2) = QScalar(1);
    R.at(3, 3) = q;
    R.at(2, 1) = QScalar::lambda();
    return R;
}

inline InstanceConfig build_glq2() {
    FrtNames names;
    names.t_names = {"a", "b", "c", "d"};
    return build_frt_instance(standard_glq2_R(), names);
}

}  // namespace qcartan
