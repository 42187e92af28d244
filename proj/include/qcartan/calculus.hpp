// The bicovariant calculus at degree one: 1-forms with right coefficients,
// vector fields with left coefficients, the adjoint matrices M and N = S(M),
// the differential, the projection P, the duality bracket, and the left and
// right coactions on both modules.

#pragma once

#include <optional>
#include <vector>

#include "qcartan/functional.hpp"

namespace qcartan {

// rho = omega^I a_I (the unique right-coefficient decomposition)
struct OneForm {
    std::vector<AlgebraElement> a;

    explicit OneForm(int n = 0) : a(static_cast<std::size_t>(n)) {}
    static OneForm basis(int n, int I) {
        OneForm f(n);
        f.a[static_cast<std::size_t>(I)] = AlgebraElement::unit();
        return f;
    }
    int dim() const { return static_cast<int>(a.size()); }
    bool is_zero() const {
        for (const auto& e : a)
            if (!e.is_zero()) return false;
        return true;
    }
    friend OneForm operator+(const OneForm& x, const OneForm& y) {
        OneForm r = x;
        for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }
    friend OneForm operator-(const OneForm& x, const OneForm& y) {
        OneForm r = x;
        for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
        return r;
    }
    friend bool operator==(const OneForm& x, const OneForm& y) { return x.a == y.a; }
    friend bool operator!=(const OneForm& x, const OneForm& y) { return !(x == y); }
};

// V = a^I t_I (left coefficients)
struct VectorField {
    std::vector<AlgebraElement> a;

    explicit VectorField(int n = 0) : a(static_cast<std::size_t>(n)) {}
    static VectorField basis(int n, int I) {
        VectorField v(n);
        v.a[static_cast<std::size_t>(I)] = AlgebraElement::unit();
        return v;
    }
    int dim() const { return static_cast<int>(a.size()); }
    bool is_zero() const {
        for (const auto& e : a)
            if (!e.is_zero()) return false;
        return true;
    }
    friend VectorField operator+(const VectorField& x, const VectorField& y) {
        VectorField r = x;
        for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }
    friend VectorField operator-(const VectorField& x, const VectorField& y) {
        VectorField r = x;
        for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
        return r;
    }
    friend bool operator==(const VectorField& x, const VectorField& y) { return x.a == y.a; }
    friend bool operator!=(const VectorField& x, const VectorField& y) { return !(x == y); }
};

struct AdjointData {
    // M[I][J] = M_I{}^J,  N[J][I] = N^J{}_I = S(M_I{}^J)
    std::vector<std::vector<AlgebraElement>> M;
    std::vector<std::vector<AlgebraElement>> N;
};

// coaction value: one TensorElement in A (x) A per basis slot; the basis
// leg (omega^I or t_I) is the slot index
struct CoactionWithA {
    bool left_side = true;
    std::vector<TensorElement> slots;

    friend bool operator==(const CoactionWithA& x, const CoactionWithA& y) {
        return x.left_side == y.left_side && x.slots == y.slots;
    }
    friend bool operator!=(const CoactionWithA& x, const CoactionWithA& y) { return !(x == y); }
};

// Everything the geometric layer needs, owned in one place.
struct Geometry {
    Instance A;
    BasisFunctionals B;
    XBasis X;
    AdjointData adj;
    int n = 0;

    static Geometry build(InstanceConfig cfg, Normalization norm = Normalization::Lambda,
                          std::optional<Rational> q0 = std::nullopt);
};

// ---------------------------------------------------------------------------
// adjoint matrices from the closed FRT formulas

inline AdjointData adjoint_matrices(const Instance& A) {
    if (!A.frt()) throw ConfigError("adjoint matrices require an FRT instance");
    const FrtBlock& f = *A.frt();
    const int m = f.m, n = m * m;
    AdjointData adj;
    adj.M.assign(static_cast<std::size_t>(n), std::vector<AlgebraElement>(static_cast<std::size_t>(n)));
    adj.N.assign(static_cast<std::size_t>(n), std::vector<AlgebraElement>(static_cast<std::size_t>(n)));

    auto tgen = [&](int i, int j) { return AlgebraElement::generator(f.t_ids[i][j]); };

    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = 0; i2 < m; ++i2)
            for (int j1 = 0; j1 < m; ++j1)
                for (int j2 = 0; j2 < m; ++j2) {
                    int I = pair_index(m, i1, i2), J = pair_index(m, j1, j2);
                    // M_{i1 i2}^{j1 j2} = (S^{-1} T^{j2}_{i2}) T^{i1}_{j1}
                    adj.M[I][J] = A.mul(A.antipode(tgen(j2, i2), Instance::AntipodeDir::SInv),
                                        tgen(i1, j1));
                    // N^{j1 j2}_{i1 i2} = (S T^{i1}_{j1}) T^{j2}_{i2}
                    adj.N[J][I] = A.mul(A.antipode(tgen(i1, j1)), tgen(j2, i2));
                }

    // co-structure identities of M and N plus the defining N = S(M), verified now
    for (int I = 0; I < n; ++I)
        for (int J = 0; J < n; ++J) {
            QScalar delta = (I == J) ? QScalar(1) : QScalar(0);
            if (A.counit(adj.M[I][J]) != delta)
                throw ConfigError("adjoint invariant eps(M) = delta fails at entry (" +
                                  std::to_string(I) + "," + std::to_string(J) + ")");
            if (A.counit(adj.N[J][I]) != delta)
                throw ConfigError("adjoint invariant eps(N) = delta fails at entry (" +
                                  std::to_string(J) + "," + std::to_string(I) + ")");
            if (adj.N[J][I] != A.antipode(adj.M[I][J]))
                throw ConfigError("adjoint invariant N = S(M) fails at entry (" +
                                  std::to_string(I) + "," + std::to_string(J) + ")");
            TensorElement dm = A.coproduct(adj.M[I][J]);
            TensorElement expect;
            for (int L = 0; L < n; ++L) {
                TensorElement part;
                for (const auto& [w, c] : adj.M[I][L].terms())
                    part.add(w, adj.M[L][J].scaled(c));
                expect = expect + part;
            }
            if (dm != expect)
                throw ConfigError("adjoint invariant Delta(M) = M (x) M fails at entry (" +
                                  std::to_string(I) + "," + std::to_string(J) + ")");
            TensorElement dn = A.coproduct(adj.N[J][I]);
            TensorElement expect_n;
            for (int L = 0; L < n; ++L) {
                TensorElement part;
                for (const auto& [w, c] : adj.N[J][L].terms())
                    part.add(w, adj.N[L][I].scaled(c));
                expect_n = expect_n + part;
            }
            if (dn != expect_n)
                throw ConfigError("adjoint invariant Delta(N) = N (x) N fails at entry (" +
                                  std::to_string(J) + "," + std::to_string(I) + ")");
        }
    return adj;
}

inline Geometry Geometry::build(InstanceConfig cfg, Normalization norm,
                                std::optional<Rational> q0) {
    bool lambda_vanishes =
        q0 && QScalar::lambda().specialize(*q0).is_zero();
    if (q0 && norm == Normalization::Lambda && lambda_vanishes) {
        // the normalized tangent vectors only exist as limits there:
        // evaluate chi symbolically and specialize finished values
        Instance sym{cfg};
        Instance spec = sym.specialized(*q0);
        BasisFunctionals B = BasisFunctionals::build_limit(sym, spec, *q0);
        XBasis X = solve_x_basis(spec, B);
        AdjointData adj = adjoint_matrices(spec);
        Geometry g{std::move(spec), std::move(B), std::move(X), std::move(adj), 0};
        g.n = g.B.dim();
        return g;
    }
    Instance inst = q0 ? Instance(std::move(cfg)).specialized(*q0) : Instance(std::move(cfg));
    BasisFunctionals B = BasisFunctionals::build(inst, norm, q0);
    XBasis X = solve_x_basis(inst, B);
    AdjointData adj = adjoint_matrices(inst);
    Geometry g{std::move(inst), std::move(B), std::move(X), std::move(adj), 0};
    g.n = g.B.dim();
    return g;
}

// ---------------------------------------------------------------------------
// module structures

// b omega^I = omega^J (f_J{}^I * b), extended to rho = omega^I a_I
inline OneForm left_multiply_form(const Geometry& g, const AlgebraElement& b, const OneForm& rho) {
    OneForm out(g.n);
    for (int J = 0; J < g.n; ++J)
        for (int I = 0; I < g.n; ++I) {
            if (rho.a[static_cast<std::size_t>(I)].is_zero()) continue;
            out.a[static_cast<std::size_t>(J)] +=
                g.A.mul(g.B.conv_left_f(g.A, J, I, b), rho.a[static_cast<std::size_t>(I)]);
        }
    return out;
}

inline OneForm right_multiply_form(const Geometry& g, const OneForm& rho, const AlgebraElement& b) {
    OneForm out(g.n);
    for (int I = 0; I < g.n; ++I)
        out.a[static_cast<std::size_t>(I)] = g.A.mul(rho.a[static_cast<std::size_t>(I)], b);
    return out;
}

// t_I [] a = (f_I{}^J * a) t_J, extended to V = c^I t_I
inline VectorField right_multiply_vector(const Geometry& g, const VectorField& v,
                                         const AlgebraElement& a) {
    VectorField out(g.n);
    for (int J = 0; J < g.n; ++J)
        for (int I = 0; I < g.n; ++I) {
            if (v.a[static_cast<std::size_t>(I)].is_zero()) continue;
            out.a[static_cast<std::size_t>(J)] +=
                g.A.mul(v.a[static_cast<std::size_t>(I)], g.B.conv_left_f(g.A, I, J, a));
        }
    return out;
}

inline VectorField left_multiply_vector(const Geometry& g, const AlgebraElement& b,
                                        const VectorField& v) {
    VectorField out(g.n);
    for (int I = 0; I < g.n; ++I)
        out.a[static_cast<std::size_t>(I)] = g.A.mul(b, v.a[static_cast<std::size_t>(I)]);
    return out;
}

// V(b) = a^I (chi_I * b)
inline AlgebraElement vector_action(const Geometry& g, const VectorField& v,
                                    const AlgebraElement& b) {
    AlgebraElement out;
    for (int I = 0; I < g.n; ++I) {
        if (v.a[static_cast<std::size_t>(I)].is_zero()) continue;
        out += g.A.mul(v.a[static_cast<std::size_t>(I)], g.B.conv_left_chi(g.A, I, b));
    }
    return out;
}

// da = omega^I (chi_I * a)
inline OneForm differential(const Geometry& g, const AlgebraElement& a) {
    OneForm out(g.n);
    for (int I = 0; I < g.n; ++I)
        out.a[static_cast<std::size_t>(I)] = g.B.conv_left_chi(g.A, I, a);
    return out;
}

// unique left-coefficient decomposition rho = b_I omega^I:
// omega^I a = [(f_J{}^I o S) * a] omega^J
inline std::vector<AlgebraElement> to_left_coefficients(const Geometry& g, const OneForm& rho) {
    std::vector<AlgebraElement> b(static_cast<std::size_t>(g.n));
    for (int J = 0; J < g.n; ++J)
        for (int I = 0; I < g.n; ++I) {
            const AlgebraElement& aI = rho.a[static_cast<std::size_t>(I)];
            if (aI.is_zero()) continue;
            // a_1 f_J{}^I(S a_2)
            TensorElement d = g.A.coproduct(aI);
            for (const auto& [w, r] : d.terms())
                b[static_cast<std::size_t>(J)] +=
                    AlgebraElement::monomial(w, g.B.f(g.A, J, I, g.A.antipode(r)));
        }
    return b;
}

inline OneForm from_left_coefficients(const Geometry& g,
                                      const std::vector<AlgebraElement>& b) {
    OneForm out(g.n);
    for (int J = 0; J < g.n; ++J)
        out = out + left_multiply_form(g, b[static_cast<std::size_t>(J)], OneForm::basis(g.n, J));
    return out;
}

// P(omega^I a_I) = eps(a_I) omega^I
inline OneForm project_P(const Geometry& g, const OneForm& rho) {
    OneForm out(g.n);
    for (int I = 0; I < g.n; ++I)
        out.a[static_cast<std::size_t>(I)] =
            AlgebraElement::unit().scaled(g.A.counit(rho.a[static_cast<std::size_t>(I)]));
    return out;
}

// the defining expression P(da) = d(a_2) S^{-1}(a_1)
inline OneForm project_P_via_coproduct(const Geometry& g, const AlgebraElement& a) {
    OneForm out(g.n);
    TensorElement d = g.A.coproduct(a);
    for (const auto& [w, r] : d.terms()) {
        AlgebraElement sinv =
            g.A.antipode(AlgebraElement::monomial(w, QScalar(1)), Instance::AntipodeDir::SInv);
        out = out + right_multiply_form(g, differential(g, r), sinv);
    }
    return out;
}

// <b^J t_J, omega^I a_I> = b^I a_I
inline AlgebraElement bracket(const Geometry& g, const VectorField& v, const OneForm& rho) {
    AlgebraElement out;
    for (int I = 0; I < g.n; ++I)
        out += g.A.mul(v.a[static_cast<std::size_t>(I)], rho.a[static_cast<std::size_t>(I)]);
    return out;
}

// eta^I = omega^J S(M_J{}^I) and h_I = S^{-1}(N^J{}_I) t_J
inline OneForm eta_basis(const Geometry& g, int I) {
    OneForm out(g.n);
    for (int J = 0; J < g.n; ++J)
        out.a[static_cast<std::size_t>(J)] = g.adj.N[static_cast<std::size_t>(I)][static_cast<std::size_t>(J)];
    return out;
}

inline VectorField h_basis(const Geometry& g, int I) {
    VectorField out(g.n);
    for (int J = 0; J < g.n; ++J)
        out.a[static_cast<std::size_t>(J)] = g.adj.M[static_cast<std::size_t>(I)][static_cast<std::size_t>(J)];
    return out;
}

// ---------------------------------------------------------------------------
// coactions

inline TensorElement elem_tensor_unit(const AlgebraElement& e) {
    TensorElement t;
    for (const auto& [w, c] : e.terms()) t.add(w, AlgebraElement::unit().scaled(c));
    return t;
}

inline TensorElement lmul_right_leg(const Instance& A, const AlgebraElement& m,
                                    const TensorElement& t) {
    TensorElement out;
    for (const auto& [w, r] : t.terms()) out.add(w, A.mul(m, r));
    return out;
}

inline TensorElement rmul_right_leg(const Instance& A, const TensorElement& t,
                                    const AlgebraElement& m) {
    TensorElement out;
    for (const auto& [w, r] : t.terms()) out.add(w, A.mul(r, m));
    return out;
}

// Delta_Gamma(omega^I a_I) = a_{I,1} (x) omega^I a_{I,2}
inline CoactionWithA coaction_form_left(const Geometry& g, const OneForm& rho) {
    CoactionWithA c;
    c.left_side = true;
    c.slots.resize(static_cast<std::size_t>(g.n));
    for (int I = 0; I < g.n; ++I)
        c.slots[static_cast<std::size_t>(I)] = g.A.coproduct(rho.a[static_cast<std::size_t>(I)]);
    return c;
}

// Gamma_Delta(omega^I a_I) = omega^J a_{I,1} (x) M_J{}^I a_{I,2}
inline CoactionWithA coaction_form_right(const Geometry& g, const OneForm& rho) {
    CoactionWithA c;
    c.left_side = false;
    c.slots.resize(static_cast<std::size_t>(g.n));
    for (int J = 0; J < g.n; ++J)
        for (int I = 0; I < g.n; ++I) {
            const AlgebraElement& aI = rho.a[static_cast<std::size_t>(I)];
            if (aI.is_zero()) continue;
            c.slots[static_cast<std::size_t>(J)] =
                c.slots[static_cast<std::size_t>(J)] +
                lmul_right_leg(g.A, g.adj.M[static_cast<std::size_t>(J)][static_cast<std::size_t>(I)],
                               g.A.coproduct(aI));
        }
    return c;
}

// Delta_Xi(a^I t_I) = Delta(a^I)(I (x) t_I)
inline CoactionWithA coaction_vector_left(const Geometry& g, const VectorField& v) {
    CoactionWithA c;
    c.left_side = true;
    c.slots.resize(static_cast<std::size_t>(g.n));
    for (int I = 0; I < g.n; ++I)
        c.slots[static_cast<std::size_t>(I)] = g.A.coproduct(v.a[static_cast<std::size_t>(I)]);
    return c;
}

// Xi_Delta(a^I t_I) = Delta(a^I)(t_J (x) N^J{}_I)
inline CoactionWithA coaction_vector_right(const Geometry& g, const VectorField& v) {
    CoactionWithA c;
    c.left_side = false;
    c.slots.resize(static_cast<std::size_t>(g.n));
    for (int J = 0; J < g.n; ++J)
        for (int I = 0; I < g.n; ++I) {
            const AlgebraElement& aI = v.a[static_cast<std::size_t>(I)];
            if (aI.is_zero()) continue;
            c.slots[static_cast<std::size_t>(J)] =
                c.slots[static_cast<std::size_t>(J)] +
                rmul_right_leg(g.A, g.A.coproduct(aI),
                               g.adj.N[static_cast<std::size_t>(J)][static_cast<std::size_t>(I)]);
        }
    return c;
}

inline CoactionWithA trivial_left_coaction_form(const Geometry& g, const OneForm& rho) {
    CoactionWithA c;
    c.left_side = true;
    c.slots.resize(static_cast<std::size_t>(g.n));
    for (int I = 0; I < g.n; ++I) {
        TensorElement t;
        t.add(Word::unit(), rho.a[static_cast<std::size_t>(I)]);
        c.slots[static_cast<std::size_t>(I)] = t;
    }
    return c;
}

inline CoactionWithA trivial_right_coaction_form(const Geometry& g, const OneForm& rho) {
    CoactionWithA c;
    c.left_side = false;
    c.slots.resize(static_cast<std::size_t>(g.n));
    for (int I = 0; I < g.n; ++I)
        c.slots[static_cast<std::size_t>(I)] = elem_tensor_unit(rho.a[static_cast<std::size_t>(I)]);
    return c;
}

inline CoactionWithA trivial_right_coaction_vector(const Geometry& g, const VectorField& v) {
    CoactionWithA c;
    c.left_side = false;
    c.slots.resize(static_cast<std::size_t>(g.n));
    for (int I = 0; I < g.n; ++I)
        c.slots[static_cast<std::size_t>(I)] = elem_tensor_unit(v.a[static_cast<std::size_t>(I)]);
    return c;
}

}  // namespace qcartan
