// Linear functionals on the algebra: FRT L+/L- primitives, the counit,
// convolution products, antipode twists, and the derived f / chi basis of
// the quantum tangent space with its deformed Leibniz rule.
//
// Matrix-type functionals evaluate word-by-word through per-generator
// value matrices: F^i_j(g1 g2 ...) = [V(g1) V(g2) ...]^i_j. Values on the
// determinant generators come from the group-like structure (the value on
// det is the matrix evaluated on its expression; on det^{-1} the inverse).

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "qcartan/instance.hpp"

namespace qcartan {

enum class Normalization { Lambda, Raw };

inline int pair_index(int m, int i1, int i2) { return i1 * m + i2; }

// ---------------------------------------------------------------------------
// L+/L- evaluation data

struct LData {
    int m = 0;
    std::vector<Matrix> lp;  // per generator id, m x m value matrices
    std::vector<Matrix> lm;

    Matrix eval(const std::vector<Matrix>& table, const AlgebraElement& e) const {
        Matrix out(m, m);
        for (const auto& [w, c] : e.terms()) {
            Matrix acc = Matrix::identity(m);
            for (GenId g : w.g) acc = acc * table[g];
            out = out + acc.scaled(c);
        }
        return out;
    }
    Matrix eval_lp(const AlgebraElement& e) const { return eval(lp, e); }
    Matrix eval_lm(const AlgebraElement& e) const { return eval(lm, e); }
};

inline LData build_l_data(const Instance& A) {
    if (!A.frt()) throw ConfigError("L functionals require an FRT instance");
    const FrtBlock& f = *A.frt();
    const int m = f.m;
    LData L;
    L.m = m;
    L.lp.assign(A.generator_count(), Matrix(m, m));
    L.lm.assign(A.generator_count(), Matrix(m, m));

    Matrix Rinv = f.R.inverse();
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            GenId g = f.t_ids[k][l];
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    // <L+^i_j, T^k_l> = R^{ki}_{lj};  <L-^i_j, T^k_l> = (R^{-1})^{ik}_{jl}
                    L.lp[g].at(i, j) = f.R.at(k * m + i, l * m + j);
                    L.lm[g].at(i, j) = Rinv.at(i * m + k, j * m + l);
                }
        }
    // group-like determinant: value on det is the evaluated expression,
    // on det^{-1} its matrix inverse
    AlgebraElement det_elem;
    for (const auto& t : f.det_expr) det_elem += AlgebraElement::monomial(t.word, t.coeff);
    L.lp[f.det_id] = L.eval_lp(det_elem);
    L.lm[f.det_id] = L.eval_lm(det_elem);
    try {
        L.lp[f.det_inv_id] = L.lp[f.det_id].inverse();
        L.lm[f.det_inv_id] = L.lm[f.det_id].inverse();
    } catch (const std::domain_error&) {
        throw ConfigError("L value on the determinant is singular");
    }

    // consistency with the rewrite rules
    auto word_val = [&](const std::vector<Matrix>& table, const Word& w) {
        Matrix acc = Matrix::identity(m);
        for (GenId g : w.g) acc = acc * table[g];
        return acc;
    };
    for (const auto& [lhs, rhs] : A.config().rules) {
        for (const std::vector<Matrix>* table : {&L.lp, &L.lm}) {
            Matrix left = word_val(*table, lhs);
            Matrix right(m, m);
            for (const auto& t : rhs) right = right + word_val(*table, t.word).scaled(t.coeff);
            if (left != right)
                throw ConfigError("L functional inconsistent with rule on " +
                                  A.word_to_string(lhs));
        }
    }
    return L;
}

// ---------------------------------------------------------------------------
// f / chi tables

class BasisFunctionals {
public:
    BasisFunctionals() = default;

    static BasisFunctionals build(const Instance& A, Normalization norm,
                                  const std::optional<Rational>& q0 = std::nullopt) {
        BasisFunctionals B;
        B.norm_ = norm;
        B.L_ = build_l_data(A);
        const FrtBlock& frt = *A.frt();
        const int m = frt.m;
        B.m_ = m;
        B.n_ = m * m;

        QScalar lambda = QScalar::lambda();
        if (q0) {
            try {
                lambda = QScalar(lambda.specialize(*q0));
            } catch (const PoleError&) {
                throw ConfigError("lambda normalization undefined at q=0");
            }
        }
        if (norm == Normalization::Lambda && lambda.is_zero())
            throw ConfigError(
                "lambda normalization requested where q - q^-1 vanishes (division by zero)");
        B.norm_factor_ = norm == Normalization::Lambda ? QScalar(1) / lambda : QScalar(1);

        // f_{(i1 i2)}^{(j1 j2)}(g) = sum over Delta(g):  L+^{i1}_{j1}(g_1) L-^{j2}_{i2}(S g_2)
        B.f_gen_.assign(A.generator_count(), Matrix(B.n_, B.n_));
        for (GenId g = 0; g < static_cast<GenId>(A.generator_count()); ++g) {
            TensorElement dg = A.coproduct(AlgebraElement::generator(g));
            Matrix F(B.n_, B.n_);
            for (const auto& [lw, relem] : dg.terms()) {
                Matrix vl = B.L_.eval_lp(AlgebraElement::monomial(lw, QScalar(1)));
                Matrix vr = B.L_.eval_lm(A.antipode(relem));
                for (int i1 = 0; i1 < m; ++i1)
                    for (int i2 = 0; i2 < m; ++i2)
                        for (int j1 = 0; j1 < m; ++j1)
                            for (int j2 = 0; j2 < m; ++j2)
                                F.at(pair_index(m, i1, i2), pair_index(m, j1, j2)) +=
                                    vl.at(i1, j1) * vr.at(j2, i2);
            }
            B.f_gen_[g] = F;
        }

        // consistency with the rewrite rules
        for (const auto& [lhs, rhs] : A.config().rules) {
            Matrix left = B.f_word(lhs);
            Matrix right(B.n_, B.n_);
            for (const auto& t : rhs) right = right + B.f_word(t.word).scaled(t.coeff);
            if (left != right)
                throw ConfigError("f functionals inconsistent with rule on " +
                                  A.word_to_string(lhs));
        }

        // deformed Leibniz rule on all generator pairs (asserted at load)
        for (GenId x = 0; x < static_cast<GenId>(A.generator_count()); ++x)
            for (GenId y = 0; y < static_cast<GenId>(A.generator_count()); ++y) {
                AlgebraElement ex = AlgebraElement::generator(x);
                AlgebraElement ey = AlgebraElement::generator(y);
                AlgebraElement exy = A.mul(ex, ey);
                for (int I = 0; I < B.n_; ++I) {
                    QScalar lhs = B.chi(A, I, exy);
                    QScalar rhs = B.chi(A, I, ex) * A.counit(ey);
                    for (int K = 0; K < B.n_; ++K)
                        rhs += B.f(A, I, K, ex) * B.chi(A, K, ey);
                    if (lhs != rhs)
                        throw ConfigError("deformed Leibniz rule fails on generators " +
                                          A.name(x) + ", " + A.name(y));
                }
            }
        return B;
    }

    // Limit evaluation at a zero of lambda = q - q^{-1}: the f tables
    // specialize directly, while chi keeps its symbolic tables and divides
    // by the symbolic lambda before specializing the finished value. This
    // is the exact counterpart of expanding the numerator around q0.
    static BasisFunctionals build_limit(const Instance& sym, const Instance& spec,
                                        const Rational& q0) {
        BasisFunctionals S = build(sym, Normalization::Lambda);
        BasisFunctionals B;
        B.norm_ = Normalization::Lambda;
        B.m_ = S.m_;
        B.n_ = S.n_;
        B.limit_q0_ = q0;
        B.norm_factor_ = S.norm_factor_;
        B.f_gen_sym_ = S.f_gen_;
        B.L_ = build_l_data(spec);
        B.f_gen_.assign(S.f_gen_.size(), Matrix(B.n_, B.n_));
        for (std::size_t g = 0; g < S.f_gen_.size(); ++g)
            for (int i = 0; i < B.n_; ++i)
                for (int j = 0; j < B.n_; ++j)
                    B.f_gen_[g].at(i, j) = QScalar(S.f_gen_[g].at(i, j).specialize(q0));

        // the asserted-at-load identities, now with limit values
        for (GenId x = 0; x < static_cast<GenId>(spec.generator_count()); ++x)
            for (GenId y = 0; y < static_cast<GenId>(spec.generator_count()); ++y) {
                AlgebraElement ex = AlgebraElement::generator(x);
                AlgebraElement ey = AlgebraElement::generator(y);
                AlgebraElement exy = spec.mul(ex, ey);
                for (int I = 0; I < B.n_; ++I) {
                    QScalar lhs = B.chi(spec, I, exy);
                    QScalar rhs = B.chi(spec, I, ex) * spec.counit(ey);
                    for (int K = 0; K < B.n_; ++K)
                        rhs += B.f(spec, I, K, ex) * B.chi(spec, K, ey);
                    if (lhs != rhs)
                        throw ConfigError("deformed Leibniz rule fails in the limit at q=" +
                                          q0.to_string());
                }
            }
        return B;
    }

    int dim() const { return n_; }
    int m() const { return m_; }
    Normalization normalization() const { return norm_; }
    const LData& l_data() const { return L_; }

    Matrix f_matrix(const Instance& A, const AlgebraElement& e) const {
        Matrix out(n_, n_);
        for (const auto& [w, c] : e.terms()) out = out + f_word(w).scaled(c);
        (void)A;
        return out;
    }

    QScalar f(const Instance& A, int I, int J, const AlgebraElement& e) const {
        return f_matrix(A, e).at(I, J);
    }

    // chi_{(k1 k2)} = norm * ( sum_j f_{(k1 k2)}^{(j j)}  -  delta_{k1 k2} eps )
    QScalar chi(const Instance& A, int I, const AlgebraElement& e) const {
        return chi_all(A, e)[static_cast<std::size_t>(I)];
    }

    std::vector<QScalar> chi_all(const Instance& A, const AlgebraElement& e) const {
        Matrix F(n_, n_);
        if (limit_q0_) {
            for (const auto& [w, c] : e.terms()) {
                Matrix acc = Matrix::identity(n_);
                for (GenId g : w.g) acc = acc * f_gen_sym_[g];
                F = F + acc.scaled(c);
            }
        } else {
            F = f_matrix(A, e);
        }
        QScalar eps = A.counit(e);
        std::vector<QScalar> out(static_cast<std::size_t>(n_));
        for (int I = 0; I < n_; ++I) {
            QScalar acc(0);
            for (int j = 0; j < m_; ++j) acc += F.at(I, pair_index(m_, j, j));
            if (I / m_ == I % m_) acc -= eps;
            acc = acc * norm_factor_;
            if (limit_q0_) acc = QScalar(acc.specialize(*limit_q0_));
            out[static_cast<std::size_t>(I)] = acc;
        }
        return out;
    }

    // convolutions through the coproduct
    AlgebraElement conv_left_chi(const Instance& A, int I, const AlgebraElement& a) const {
        // chi * a = a_1 chi(a_2)
        AlgebraElement out;
        TensorElement da = A.coproduct(a);
        for (const auto& [w, r] : da.terms())
            out += AlgebraElement::monomial(w, chi(A, I, r));
        return out;
    }
    AlgebraElement conv_right_chi(const Instance& A, int I, const AlgebraElement& a) const {
        // a * chi = chi(a_1) a_2
        AlgebraElement out;
        TensorElement da = A.coproduct(a);
        for (const auto& [w, r] : da.terms())
            out += r.scaled(chi(A, I, AlgebraElement::monomial(w, QScalar(1))));
        return out;
    }
    AlgebraElement conv_left_f(const Instance& A, int I, int J, const AlgebraElement& a) const {
        AlgebraElement out;
        TensorElement da = A.coproduct(a);
        for (const auto& [w, r] : da.terms())
            out += AlgebraElement::monomial(w, f(A, I, J, r));
        return out;
    }
    AlgebraElement conv_right_f(const Instance& A, int I, int J, const AlgebraElement& a) const {
        AlgebraElement out;
        TensorElement da = A.coproduct(a);
        for (const auto& [w, r] : da.terms())
            out += r.scaled(f(A, I, J, AlgebraElement::monomial(w, QScalar(1))));
        return out;
    }

private:
    int m_ = 0, n_ = 0;
    Normalization norm_ = Normalization::Lambda;
    QScalar norm_factor_ = QScalar(1);
    std::optional<Rational> limit_q0_;
    LData L_;
    std::vector<Matrix> f_gen_;
    std::vector<Matrix> f_gen_sym_;  // only set in limit mode

    Matrix f_word(const Word& w) const {
        Matrix acc = Matrix::identity(n_);
        for (GenId g : w.g) acc = acc * f_gen_[g];
        return acc;
    }
};

// ---------------------------------------------------------------------------
// the x basis dual to chi (degree-1 solve over the T generators)

struct XBasis {
    std::vector<AlgebraElement> x;  // chi_I(x^J) = delta_I^J, eps(x^J) = 0
    Matrix change_of_basis;         // columns express x^J over (T - eps(T) I)
};

inline XBasis solve_x_basis(const Instance& A, const BasisFunctionals& B) {
    if (!A.frt()) throw ConfigError("x basis requires an FRT instance");
    const FrtBlock& frt = *A.frt();
    const int n = B.dim();
    Matrix X(n, n);
    std::vector<GenId> tg;
    for (const auto& row : frt.t_ids)
        for (GenId g : row) tg.push_back(g);
    for (int G = 0; G < n; ++G) {
        auto chis = B.chi_all(A, AlgebraElement::generator(tg[static_cast<std::size_t>(G)]));
        for (int I = 0; I < n; ++I) X.at(I, G) = chis[static_cast<std::size_t>(I)];
    }
    Matrix C;
    try {
        C = X.inverse();
    } catch (const std::domain_error&) {
        throw ConfigError("x-basis not solvable in degree 1");
    }
    XBasis xb;
    xb.change_of_basis = C;
    xb.x.resize(static_cast<std::size_t>(n));
    for (int J = 0; J < n; ++J) {
        AlgebraElement e;
        for (int G = 0; G < n; ++G) {
            const QScalar& c = C.at(G, J);
            if (c.is_zero()) continue;
            GenId g = tg[static_cast<std::size_t>(G)];
            e += AlgebraElement::generator(g).scaled(c);
            e -= AlgebraElement::unit().scaled(c * A.counit(AlgebraElement::generator(g)));
        }
        xb.x[static_cast<std::size_t>(J)] = e;
    }
    return xb;
}

// ---------------------------------------------------------------------------
// general functional expressions (the CLI surface)

class Functional {
public:
    enum class Kind { Eps, Lp, Lm, Chi, F, Scale, Sum, Conv, TwistS, TwistSInv };

    static Functional eps() { return Functional(Kind::Eps); }
    static Functional lp(int i, int j) {
        Functional f(Kind::Lp);
        f.i_ = i;
        f.j_ = j;
        return f;
    }
    static Functional lm(int i, int j) {
        Functional f(Kind::Lm);
        f.i_ = i;
        f.j_ = j;
        return f;
    }
    static Functional chi(int I) {
        Functional f(Kind::Chi);
        f.i_ = I;
        return f;
    }
    static Functional f_basis(int I, int J) {
        Functional f(Kind::F);
        f.i_ = I;
        f.j_ = J;
        return f;
    }
    static Functional scale(QScalar c, Functional inner) {
        Functional f(Kind::Scale);
        f.coeff_ = std::move(c);
        f.a_ = std::make_shared<Functional>(std::move(inner));
        return f;
    }
    static Functional sum(Functional x, Functional y) {
        Functional f(Kind::Sum);
        f.a_ = std::make_shared<Functional>(std::move(x));
        f.b_ = std::make_shared<Functional>(std::move(y));
        return f;
    }
    // convolution product: (F G)(x) = F(x_1) G(x_2)
    static Functional conv(Functional x, Functional y) {
        Functional f(Kind::Conv);
        f.a_ = std::make_shared<Functional>(std::move(x));
        f.b_ = std::make_shared<Functional>(std::move(y));
        return f;
    }
    static Functional twist(Functional x, bool inverse) {
        Functional f(inverse ? Kind::TwistSInv : Kind::TwistS);
        f.a_ = std::make_shared<Functional>(std::move(x));
        return f;
    }

    QScalar eval(const Instance& A, const BasisFunctionals& B, const AlgebraElement& e) const {
        switch (kind_) {
            case Kind::Eps:
                return A.counit(e);
            case Kind::Lp:
                check_index(B.m(), i_, j_);
                return B.l_data().eval_lp(e).at(i_, j_);
            case Kind::Lm:
                check_index(B.m(), i_, j_);
                return B.l_data().eval_lm(e).at(i_, j_);
            case Kind::Chi:
                check_index(B.dim(), i_, 0);
                return B.chi(A, i_, e);
            case Kind::F:
                check_index(B.dim(), i_, j_);
                return B.f(A, i_, j_, e);
            case Kind::Scale:
                return coeff_ * a_->eval(A, B, e);
            case Kind::Sum:
                return a_->eval(A, B, e) + b_->eval(A, B, e);
            case Kind::Conv: {
                QScalar acc(0);
                TensorElement de = A.coproduct(e);
                for (const auto& [w, r] : de.terms())
                    acc += a_->eval(A, B, AlgebraElement::monomial(w, QScalar(1))) *
                           b_->eval(A, B, r);
                return acc;
            }
            case Kind::TwistS:
                return a_->eval(A, B, A.antipode(e));
            case Kind::TwistSInv:
                return a_->eval(A, B, A.antipode(e, Instance::AntipodeDir::SInv));
        }
        throw std::logic_error("Functional: bad kind");
    }

    // chi * a / a * chi for arbitrary functional expressions
    AlgebraElement conv_left(const Instance& A, const BasisFunctionals& B,
                             const AlgebraElement& a) const {
        AlgebraElement out;
        TensorElement da = A.coproduct(a);
        for (const auto& [w, r] : da.terms())
            out += AlgebraElement::monomial(w, eval(A, B, r));
        return out;
    }
    AlgebraElement conv_right(const Instance& A, const BasisFunctionals& B,
                              const AlgebraElement& a) const {
        AlgebraElement out;
        TensorElement da = A.coproduct(a);
        for (const auto& [w, r] : da.terms())
            out += r.scaled(eval(A, B, AlgebraElement::monomial(w, QScalar(1))));
        return out;
    }

private:
    explicit Functional(Kind k) : kind_(k) {}

    static void check_index(int dim, int i, int j) {
        if (i < 0 || i >= dim || j < 0 || j >= dim)
            throw std::out_of_range("functional index outside the instance dimension");
    }

    Kind kind_;
    int i_ = 0, j_ = 0;
    QScalar coeff_;
    std::shared_ptr<Functional> a_, b_;
};

}  // namespace qcartan
