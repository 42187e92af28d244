// The Cartan calculus: contraction along arbitrary vector fields, the Lie
// derivative l_V = i_V d + d i_V, the second Lie derivative along
// right-invariant fields, the Defect Index measuring their disagreement,
// and the braided operator algebra (commutation normal form and the delta
// homomorphism on operator words).

#pragma once

#include "qcartan/wedge.hpp"

namespace qcartan {

// ---------------------------------------------------------------------------
// contraction

// i_{t_I}(omega^{i1} ^ ... ^ omega^{ip}) through the script-I tensor
inline WedgeForm contract_basis(const Geometry& g, const BraidData& b, int I,
                                const WedgeForm& theta) {
    WedgeForm out;
    out.degree = theta.degree - 1;
    if (theta.degree == 0) {
        out.degree = 0;
        return out;  // i_V vanishes on functions
    }
    const int p = theta.degree;
    const MultiIndex out_dim = mi_pow(g.n, p - 1);
    const SparseMat& It = b.I_at(p);
    for (const auto& [w, a] : theta.c)
        for (MultiIndex w2 = 0; w2 < out_dim; ++w2) {
            QScalar v = It.entry(static_cast<int>(static_cast<MultiIndex>(I) * out_dim + w2),
                                 static_cast<int>(w));
            if (!v.is_zero()) out.add(w2, a.scaled(v));
        }
    return out;
}

inline WedgeForm contract(const Geometry& g, const BraidData& b, const VectorField& v,
                          const WedgeForm& theta) {
    WedgeForm out;
    out.degree = theta.degree > 0 ? theta.degree - 1 : 0;
    for (int I = 0; I < g.n; ++I) {
        const AlgebraElement& coeff = v.a[static_cast<std::size_t>(I)];
        if (coeff.is_zero()) continue;
        WedgeForm part = contract_basis(g, b, I, theta);
        out = out + left_multiply(g, coeff, part);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lie derivatives

// along the left-invariant basis: l_{t_I} = chi_I * (right coaction)
inline WedgeForm lie_basis(const Geometry& g, int I, const WedgeForm& theta) {
    return conv_chi_form(g, I, theta);
}

// along an arbitrary field: l_V = i_V d + d i_V
inline WedgeForm lie(const Geometry& g, const BraidData& b, const VectorField& v,
                     const WedgeForm& theta) {
    return contract(g, b, v, exterior_d(g, b, theta)) +
           exterior_d(g, b, contract(g, b, v, theta));
}

// along the right-invariant h_I through the left coaction: tau * chi_I
inline WedgeForm lie_right(const Geometry& g, int I, const WedgeForm& tau) {
    WedgeForm out;
    out.degree = tau.degree;
    for (const auto& [w, a] : tau.c) out.add(w, g.B.conv_right_chi(g.A, I, a));
    return out;
}

// tau * f_I{}^J on forms (left coaction side), used by the l^R Leibniz rule
inline WedgeForm form_conv_right_f(const Geometry& g, int I, int J, const WedgeForm& tau) {
    WedgeForm out;
    out.degree = tau.degree;
    for (const auto& [w, a] : tau.c) out.add(w, g.B.conv_right_f(g.A, I, J, a));
    return out;
}

// ---------------------------------------------------------------------------
// Defect Index

struct DefectIndexValue {
    int i = 0, k = 0;
    AlgebraElement argument;
    OneForm value;
};

// DI_i{}^k(a) = d(M_i{}^j)(f_j{}^k * a) - (a * f_i{}^j) d(M_j{}^k)
inline DefectIndexValue defect_index(const Geometry& g, int i, int k, const AlgebraElement& a) {
    OneForm acc(g.n);
    for (int j = 0; j < g.n; ++j) {
        OneForm dM_ij = differential(g, g.adj.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        acc = acc + right_multiply_form(g, dM_ij, g.B.conv_left_f(g.A, j, k, a));
        OneForm dM_jk = differential(g, g.adj.M[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
        acc = acc - left_multiply_form(g, g.B.conv_right_f(g.A, i, j, a), dM_jk);
    }
    DefectIndexValue v;
    v.i = i;
    v.k = k;
    v.argument = a;
    v.value = acc;
    return v;
}

// ---------------------------------------------------------------------------
// operator words: right-acting compositions of d, i, l, t with form
// coefficients, and their commutation normal form

enum class OpKind : std::uint8_t { T, IT, LT, D };

struct Atom {
    OpKind kind = OpKind::D;
    int idx = -1;  // basis index for T / IT / LT

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.kind == b.kind && a.idx == b.idx;
    }
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.idx < b.idx;
    }
};

inline std::string atom_name(const Atom& a) {
    switch (a.kind) {
        case OpKind::T: return "t[" + std::to_string(a.idx) + "]";
        case OpKind::IT: return "i(t[" + std::to_string(a.idx) + "])";
        case OpKind::LT: return "lie(t[" + std::to_string(a.idx) + "])";
        case OpKind::D: return "d";
    }
    return "?";
}

struct CAtom {
    AlgebraElement coeff;  // multiplies from the left after the atom acts
    Atom atom;
};

struct OpTerm {
    WedgeForm coeff;           // form coefficient out front
    std::vector<Atom> ops;     // residual operators (rightmost acts first)
};

using OpSum = std::vector<OpTerm>;

// canonical comparison key: residual operator word
struct AtomVecLess {
    bool operator()(const std::vector<Atom>& a, const std::vector<Atom>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == b[i]) continue;
            return a[i] < b[i];
        }
        return false;
    }
};

inline std::map<std::vector<Atom>, WedgeForm, AtomVecLess> collect_terms(const OpSum& s) {
    std::map<std::vector<Atom>, WedgeForm, AtomVecLess> out;
    for (const auto& t : s) {
        auto it = out.find(t.ops);
        if (it == out.end())
            out[t.ops] = t.coeff;
        else
            it->second = it->second + t.coeff;
    }
    return out;
}

inline bool opsum_equal(const BraidData& b, const OpSum& x, const OpSum& y) {
    auto cx = collect_terms(x), cy = collect_terms(y);
    for (const auto& [ops, form] : cx) {
        auto it = cy.find(ops);
        if (it == cy.end()) {
            if (!wedge_is_zero(b, form)) return false;
        } else if (!wedge_equal(b, form, it->second)) {
            return false;
        }
    }
    for (const auto& [ops, form] : cy)
        if (cx.find(ops) == cx.end() && !wedge_is_zero(b, form)) return false;
    return true;
}

// apply an atom to a form
inline WedgeForm apply_atom(const Geometry& g, const BraidData& b, const Atom& a,
                            const WedgeForm& theta) {
    switch (a.kind) {
        case OpKind::T: {
            if (theta.degree != 0)
                throw std::invalid_argument("t_i acts on degree-0 elements only");
            return conv_chi_form(g, a.idx, theta);
        }
        case OpKind::IT:
            return contract_basis(g, b, a.idx, theta);
        case OpKind::LT:
            return lie_basis(g, a.idx, theta);
        case OpKind::D:
            return exterior_d(g, b, theta);
    }
    throw std::logic_error("apply_atom: bad kind");
}

// the right product of one atom with a homogeneous form:
//   d  [] theta = (-1)^p theta d
//   i  [] theta = (-1)^p (f_i{}^j * theta) i_{t_j}
//   l  [] theta = (f_i{}^j * theta) l_{t_j}
//   t  [] a     = (f_i{}^j * a) t_j          (degree 0 only)
inline OpSum box_atom(const Geometry& g, const Atom& a, const WedgeForm& theta) {
    OpSum out;
    QScalar psign = (theta.degree % 2 == 0) ? QScalar(1) : QScalar(-1);
    switch (a.kind) {
        case OpKind::D:
            out.push_back({theta.scaled(psign), {Atom{OpKind::D, -1}}});
            return out;
        case OpKind::IT:
            for (int j = 0; j < g.n; ++j) {
                WedgeForm moved = conv_f_form(g, a.idx, j, theta).scaled(psign);
                if (!moved.c.empty()) out.push_back({moved, {Atom{OpKind::IT, j}}});
            }
            return out;
        case OpKind::LT:
            for (int j = 0; j < g.n; ++j) {
                WedgeForm moved = conv_f_form(g, a.idx, j, theta);
                if (!moved.c.empty()) out.push_back({moved, {Atom{OpKind::LT, j}}});
            }
            return out;
        case OpKind::T:
            if (theta.degree != 0)
                throw std::invalid_argument("t_i [] theta needs a degree-0 form");
            for (int j = 0; j < g.n; ++j) {
                WedgeForm moved = conv_f_form(g, a.idx, j, theta);
                if (!moved.c.empty()) out.push_back({moved, {Atom{OpKind::T, j}}});
            }
            return out;
    }
    throw std::logic_error("box_atom: bad kind");
}

// Rewrites (word . theta) into sum of (form . residual word) per the
// displayed right-acting relations; rightmost operator acts first.
inline OpSum commutation_normal_form(const Geometry& g, const BraidData& b,
                                     const std::vector<CAtom>& word, const WedgeForm& theta) {
    OpSum state;
    state.push_back({theta, {}});
    for (std::size_t pos = word.size(); pos-- > 0;) {
        const CAtom& ca = word[pos];
        OpSum next;
        for (const auto& term : state) {
            // evaluation part: atom applied to the form coefficient
            WedgeForm applied = apply_atom(g, b, ca.atom, term.coeff);
            applied = left_multiply(g, ca.coeff, applied);
            if (!applied.c.empty()) next.push_back({applied, term.ops});
            // right-product part: atom slides past the form coefficient
            for (auto& boxed : box_atom(g, ca.atom, term.coeff)) {
                WedgeForm f = left_multiply(g, ca.coeff, boxed.coeff);
                if (f.c.empty()) continue;
                std::vector<Atom> ops = boxed.ops;
                ops.insert(ops.end(), term.ops.begin(), term.ops.end());
                next.push_back({f, std::move(ops)});
            }
        }
        state = std::move(next);
    }
    return state;
}

// apply an operator word directly (all atoms evaluated, no residuals)
inline WedgeForm apply_word(const Geometry& g, const BraidData& b, const std::vector<CAtom>& word,
                            const WedgeForm& theta) {
    WedgeForm cur = theta;
    for (std::size_t pos = word.size(); pos-- > 0;) {
        cur = apply_atom(g, b, word[pos].atom, cur);
        cur = left_multiply(g, word[pos].coeff, cur);
    }
    return cur;
}

// ---------------------------------------------------------------------------
// the delta homomorphism in the braided tensor algebra of operators

struct DeltaTerm {
    WedgeForm front;           // form coefficient out front (wedge-multiplies)
    std::vector<CAtom> left;   // first tensor leg
    std::vector<CAtom> right;  // second tensor leg
};

using DeltaSum = std::vector<DeltaTerm>;

inline WedgeForm unit_front() { return WedgeForm::scalar(AlgebraElement::unit()); }

inline bool is_unit_front(const WedgeForm& f) {
    return f.degree == 0 && f.c.size() == 1 && f.c.count(0) &&
           f.c.at(0) == AlgebraElement::unit();
}

// delta of a coefficiented first-order operator: V (x) 1 + 1 (x) V
inline DeltaSum delta_first_order(const std::vector<CAtom>& op) {
    DeltaSum out;
    for (const auto& ca : op) {
        out.push_back({unit_front(), {ca}, {}});
        out.push_back({unit_front(), {}, {ca}});
    }
    return out;
}

namespace cartan_detail {

inline bool odd_atom(const Atom& a) { return a.kind == OpKind::D || a.kind == OpKind::IT; }

// (1 (x) y)(x (x) 1) exchange of single coefficiented atoms:
// odd pairs pick up a minus sign, index-carrying pairs braid with B-hat and
// push the crossed coefficient through an f-convolution, and d additionally
// differentiates the coefficient it crosses, leaving a one-form out front.
inline std::vector<DeltaTerm> exchange(const Geometry& g, const BraidData& b, const CAtom& y,
                                       const CAtom& x) {
    std::vector<DeltaTerm> out;
    const QScalar sign =
        (odd_atom(y.atom) && odd_atom(x.atom)) ? QScalar(-1) : QScalar(1);
    const bool y_indexed = y.atom.kind != OpKind::D;
    const bool x_indexed = x.atom.kind != OpKind::D;

    if (!y_indexed) {
        if (!(y.coeff == AlgebraElement::unit()))
            throw std::invalid_argument("delta product: coefficiented d unsupported");
        // d crosses the whole coefficiented operator ...
        DeltaTerm t;
        t.front = unit_front().scaled(sign);
        t.left = {x};
        t.right = {{AlgebraElement::unit(), y.atom}};
        out.push_back(std::move(t));
        // ... and differentiates the coefficient, which stays out front while
        // the bare operator keeps sliding in the second leg
        if (x_indexed) {
            WedgeForm dc = exterior_d(g, b, WedgeForm::scalar(x.coeff));
            if (!dc.c.empty()) {
                DeltaTerm t2;
                t2.front = dc;
                t2.left = {};
                t2.right = {{AlgebraElement::unit(), x.atom}};
                out.push_back(std::move(t2));
            }
        }
        return out;
    }
    if (!x_indexed) {
        // an index-carrying operator crosses d; contractions and lie
        // derivatives do not differentiate scalars here
        DeltaTerm t;
        t.front = unit_front().scaled(sign);
        t.left = {{AlgebraElement::unit(), x.atom}};
        t.right = {y};
        out.push_back(std::move(t));
        return out;
    }

    // indexed vs indexed:
    //   (1 (x) A_i)(c B_j (x) 1) = sign (f_i{}^h * c) Bhat_{hj}^{rs} (B_r (x) A_s)
    if (y.atom.kind != OpKind::IT && !(x.coeff == AlgebraElement::unit()))
        throw std::invalid_argument(
            "delta product: only contractions may cross nontrivial coefficients");
    for (int h = 0; h < g.n; ++h) {
        AlgebraElement moved = g.B.conv_left_f(g.A, y.atom.idx, h, x.coeff);
        if (moved.is_zero()) continue;
        for (int r = 0; r < g.n; ++r)
            for (int s = 0; s < g.n; ++s) {
                QScalar bh = b.bhat.at(h * g.n + x.atom.idx, r * g.n + s);
                if (bh.is_zero()) continue;
                DeltaTerm t;
                t.front = WedgeForm::scalar(moved.scaled(bh * sign));
                t.left = {{AlgebraElement::unit(), Atom{x.atom.kind, r}}};
                t.right = {{y.coeff, Atom{y.atom.kind, s}}};
                out.push_back(std::move(t));
            }
    }
    return out;
}

}  // namespace cartan_detail

// Braided product of two delta expansions. The factors produced by
// delta_first_order have unit fronts and legs of length <= 1, which is the
// shape this product supports; anything else is rejected.
inline DeltaSum delta_product(const Geometry& g, const BraidData& b, const DeltaSum& x,
                              const DeltaSum& y) {
    DeltaSum out;
    for (const auto& tx : x)
        for (const auto& ty : y) {
            if (!is_unit_front(ty.front))
                throw std::invalid_argument("delta product: unsupported operator word");
            if (tx.right.empty()) {
                DeltaTerm t;
                t.front = tx.front;
                t.left = tx.left;
                for (const auto& ca : ty.left) t.left.push_back(ca);
                t.right = ty.right;
                out.push_back(std::move(t));
                continue;
            }
            if (ty.left.empty()) {
                DeltaTerm t;
                t.front = tx.front;
                t.left = tx.left;
                t.right = tx.right;
                for (const auto& ca : ty.right) t.right.push_back(ca);
                out.push_back(std::move(t));
                continue;
            }
            if (tx.right.size() != 1 || ty.left.size() != 1)
                throw std::invalid_argument("delta product: unsupported operator word");
            for (auto ex : cartan_detail::exchange(g, b, tx.right[0], ty.left[0])) {
                DeltaTerm t;
                t.front = wedge(g, b, tx.front, ex.front);
                t.left = tx.left;
                for (const auto& ca : ex.left) t.left.push_back(ca);
                t.right = ex.right;
                for (const auto& ca : ty.right) t.right.push_back(ca);
                out.push_back(std::move(t));
            }
        }
    return out;
}

// delta(word) [] theta: right leg slides past theta, left leg evaluates on
// what remains
inline OpSum delta_box(const Geometry& g, const BraidData& b, const DeltaSum& d,
                       const WedgeForm& theta) {
    OpSum out;
    for (const auto& term : d) {
        // box-apply the right leg, rightmost atom first
        OpSum state;
        state.push_back({theta, {}});
        for (std::size_t pos = term.right.size(); pos-- > 0;) {
            const CAtom& ca = term.right[pos];
            OpSum next;
            for (const auto& st : state)
                for (auto& boxed : box_atom(g, ca.atom, st.coeff)) {
                    WedgeForm f = left_multiply(g, ca.coeff, boxed.coeff);
                    if (f.c.empty()) continue;
                    std::vector<Atom> ops = boxed.ops;
                    ops.insert(ops.end(), st.ops.begin(), st.ops.end());
                    next.push_back({f, std::move(ops)});
                }
            state = std::move(next);
        }
        // evaluate the left leg on each form coefficient
        for (const auto& st : state) {
            WedgeForm f = st.coeff;
            for (std::size_t pos = term.left.size(); pos-- > 0;) {
                f = apply_atom(g, b, term.left[pos].atom, f);
                f = left_multiply(g, term.left[pos].coeff, f);
            }
            f = wedge(g, b, term.front, f);
            if (!f.c.empty()) out.push_back({f, st.ops});
        }
    }
    return out;
}

}  // namespace qcartan
