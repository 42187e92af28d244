#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcartan/cartan.hpp"
#include "qcartan/frt.hpp"

using namespace qcartan;

namespace {

struct Setup {
    Geometry g;
    BraidData b;
    Setup(std::optional<Rational> q0 = std::nullopt, int cap = 4)
        : g(Geometry::build(build_glq2(), Normalization::Lambda, q0)), b(BraidData::build(g, cap)) {}
};

const Setup& setup() {
    static Setup s;
    return s;
}

const Setup& setup_q1() {
    static Setup s{Rational(1)};
    return s;
}

VectorField sample_field(const Geometry& g) {
    VectorField v(g.n);
    v.a[0] = g.A.gen("b");
    v.a[2] = g.A.gen("a") + AlgebraElement::unit().scaled(QScalar::q_pow(-1));
    return v;
}

std::vector<WedgeForm> sample_forms(const Geometry& g, const BraidData& b) {
    std::vector<WedgeForm> out;
    out.push_back(WedgeForm::scalar(g.A.gen("c")));
    out.push_back(right_multiply(g, WedgeForm::basis(1, 2), g.A.gen("a")));
    out.push_back(wedge(g, b, WedgeForm::basis(1, 0), WedgeForm::basis(1, 3)));
    return out;
}

}  // namespace

TEST_CASE("basic contraction properties") {
    const auto& s = setup();
    const Geometry& g = s.g;
    VectorField v = sample_field(g);

    // b) i_V vanishes on functions
    CHECK(contract(g, s.b, v, WedgeForm::scalar(g.A.gen("d"))).c.empty());

    // c) i_V(omega^j) = b^j
    for (int j = 0; j < g.n; ++j) {
        WedgeForm r = contract(g, s.b, v, WedgeForm::basis(1, static_cast<MultiIndex>(j)));
        REQUIRE(r.degree == 0);
        AlgebraElement got = r.c.count(0) ? r.c.at(0) : AlgebraElement();
        CHECK(got == v.a[static_cast<std::size_t>(j)]);
    }

    // a) + g) linearity in the field and scalars
    VectorField w(g.n);
    w.a[1] = g.A.gen("d");
    WedgeForm theta = wedge(g, s.b, WedgeForm::basis(1, 1), WedgeForm::basis(1, 2));
    WedgeForm sum = contract(g, s.b, v + w, theta);
    CHECK(wedge_equal(s.b, sum, contract(g, s.b, v, theta) + contract(g, s.b, w, theta)));
    VectorField scaled(g.n);
    for (int i = 0; i < g.n; ++i) scaled.a[static_cast<std::size_t>(i)] =
        v.a[static_cast<std::size_t>(i)].scaled(QScalar::q());
    CHECK(wedge_equal(s.b, contract(g, s.b, scaled, theta),
                      contract(g, s.b, v, theta).scaled(QScalar::q())));

    // f) right module rule i_V(theta a + theta') = i_V(theta) a + i_V(theta')
    AlgebraElement a = g.A.gen("a");
    WedgeForm theta2 = WedgeForm::basis(2, 9);
    CHECK(wedge_equal(s.b, contract(g, s.b, v, right_multiply(g, theta, a) + theta2),
                      right_multiply(g, contract(g, s.b, v, theta), a) +
                          contract(g, s.b, v, theta2)));

    // e) i_V(a theta) = b^i (f_i{}^j * a) i_{t_j}(theta)
    WedgeForm lhs = contract(g, s.b, v, left_multiply(g, a, theta));
    WedgeForm rhs;
    rhs.degree = theta.degree - 1;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            AlgebraElement coeff = g.A.mul(v.a[static_cast<std::size_t>(i)],
                                           g.B.conv_left_f(g.A, i, j, a));
            if (coeff.is_zero()) continue;
            rhs = rhs + left_multiply(g, coeff, contract_basis(g, s.b, j, theta));
        }
    CHECK(wedge_equal(s.b, lhs, rhs));
}

TEST_CASE("contraction splits across wedge factors at every point") {
    const auto& s = setup();
    const Geometry& g = s.g;
    VectorField v = sample_field(g);
    AlgebraElement a = g.A.gen("d");

    // wedge monomials of degree 2 and 3, all split points
    std::vector<std::vector<int>> words = {{0, 1}, {2, 1}, {3, 3}, {0, 1, 2}, {2, 0, 3}};
    for (const auto& wd : words) {
        int nn = static_cast<int>(wd.size());
        WedgeForm full = WedgeForm::basis(nn, mi_pack(g.n, wd));
        WedgeForm full_a = right_multiply(g, full, a);
        WedgeForm lhs = contract(g, s.b, v, full_a);
        for (int split = 1; split < nn; ++split) {
            std::vector<int> head(wd.begin(), wd.begin() + split);
            std::vector<int> tail(wd.begin() + split, wd.end());
            WedgeForm prefix = WedgeForm::basis(split, mi_pack(g.n, head));
            WedgeForm rest =
                right_multiply(g, WedgeForm::basis(nn - split, mi_pack(g.n, tail)), a);
            WedgeForm rhs = wedge(g, s.b, contract(g, s.b, v, prefix), rest);
            QScalar sign = (split % 2 == 0) ? QScalar(1) : QScalar(-1);
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j) {
                    WedgeForm moved = conv_f_form(g, i, j, prefix);
                    if (moved.c.empty()) continue;
                    WedgeForm term =
                        wedge(g, s.b, moved, contract_basis(g, s.b, j, rest)).scaled(sign);
                    rhs = rhs + left_multiply(g, v.a[static_cast<std::size_t>(i)], term);
                }
            CHECK(wedge_equal(s.b, lhs, rhs));
        }
    }
}

TEST_CASE("contraction of a wedge of two generic forms") {
    const auto& s = setup();
    const Geometry& g = s.g;
    VectorField v = sample_field(g);
    for (const auto& theta : sample_forms(g, s.b))
        for (const auto& theta2 : sample_forms(g, s.b)) {
            if (theta.degree + theta2.degree > s.b.max_degree || theta.degree == 0) continue;
            WedgeForm lhs = contract(g, s.b, v, wedge(g, s.b, theta, theta2));
            WedgeForm rhs = wedge(g, s.b, contract(g, s.b, v, theta), theta2);
            QScalar sign = (theta.degree % 2 == 0) ? QScalar(1) : QScalar(-1);
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j) {
                    WedgeForm moved = conv_f_form(g, i, j, theta);
                    if (moved.c.empty()) continue;
                    WedgeForm term =
                        wedge(g, s.b, moved, contract_basis(g, s.b, j, theta2)).scaled(sign);
                    rhs = rhs + left_multiply(g, v.a[static_cast<std::size_t>(i)], term);
                }
            CHECK(wedge_equal(s.b, lhs, rhs));
        }
}

TEST_CASE("lie derivative along basis fields agrees with the coaction convolution") {
    const auto& s = setup();
    const Geometry& g = s.g;
    // l_{t_i} = i d + d i equals chi_i * on forms of degree <= 2
    std::vector<WedgeForm> forms = sample_forms(g, s.b);
    forms.push_back(WedgeForm::basis(1, 1));
    for (int i = 0; i < g.n; ++i)
        for (const auto& theta : forms) {
            VectorField ti = VectorField::basis(g.n, i);
            CHECK(wedge_equal(s.b, lie(g, s.b, ti, theta), lie_basis(g, i, theta)));
        }
}

TEST_CASE("lie derivative properties") {
    const auto& s = setup();
    const Geometry& g = s.g;
    VectorField v = sample_field(g);

    // 1) on functions l_V a = V(a)
    for (GenId x = 0; x < static_cast<GenId>(g.A.generator_count()); ++x) {
        AlgebraElement a = AlgebraElement::generator(x);
        WedgeForm r = lie(g, s.b, v, WedgeForm::scalar(a));
        REQUIRE(r.degree == 0);
        AlgebraElement got = r.c.count(0) ? r.c.at(0) : AlgebraElement();
        CHECK(got == vector_action(g, v, a));
    }

    // 2) commutes with d
    for (const auto& theta : sample_forms(g, s.b)) {
        if (theta.degree + 2 > s.b.max_degree) continue;
        CHECK(wedge_equal(s.b, lie(g, s.b, v, exterior_d(g, s.b, theta)),
                          exterior_d(g, s.b, lie(g, s.b, v, theta))));
    }

    // 3) linearity
    {
        WedgeForm x = WedgeForm::basis(1, 0), y = WedgeForm::basis(2, 7);
        WedgeForm lx = lie(g, s.b, v, x.scaled(QScalar::q()));
        CHECK(wedge_equal(s.b, lx, lie(g, s.b, v, x).scaled(QScalar::q())));
        // additivity within a fixed degree
        WedgeForm z = WedgeForm::basis(2, 3);
        CHECK(wedge_equal(s.b, lie(g, s.b, v, y + z),
                          lie(g, s.b, v, y) + lie(g, s.b, v, z)));
    }

    // 4) l_{bV} theta = b l_V theta + db ^ i_V theta
    AlgebraElement bcoef = g.A.gen("c");
    for (const auto& theta : sample_forms(g, s.b)) {
        WedgeForm lhs = lie(g, s.b, left_multiply_vector(g, bcoef, v), theta);
        WedgeForm rhs = left_multiply(g, bcoef, lie(g, s.b, v, theta)) +
                        wedge(g, s.b, exterior_d(g, s.b, WedgeForm::scalar(bcoef)),
                              contract(g, s.b, v, theta));
        CHECK(wedge_equal(s.b, lhs, rhs));
    }

    // l_V omega^j = b^i chi_i * omega^j + d b^j
    for (int j = 0; j < g.n; ++j) {
        WedgeForm lhs = lie(g, s.b, v, WedgeForm::basis(1, static_cast<MultiIndex>(j)));
        WedgeForm rhs = exterior_d(g, s.b, WedgeForm::scalar(v.a[static_cast<std::size_t>(j)]));
        for (int i = 0; i < g.n; ++i)
            rhs = rhs + left_multiply(g, v.a[static_cast<std::size_t>(i)],
                                      lie_basis(g, i, WedgeForm::basis(1, static_cast<MultiIndex>(j))));
        CHECK(wedge_equal(s.b, lhs, rhs));
    }
}

TEST_CASE("braided Leibniz rule for the lie derivative") {
    Setup s5{std::nullopt, 5};
    const Geometry& g = s5.g;
    const BraidData& b = s5.b;
    VectorField v = sample_field(g);
    std::vector<WedgeForm> thetas = sample_forms(g, b);
    for (const auto& x : thetas)
        for (const auto& y : thetas) {
            WedgeForm lhs = lie(g, b, v, wedge(g, b, x, y));
            WedgeForm rhs = wedge(g, b, lie(g, b, v, x), y);
            QScalar sign = (x.degree % 2 == 0) ? QScalar(1) : QScalar(-1);
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j) {
                    WedgeForm moved = conv_f_form(g, i, j, x);
                    if (moved.c.empty()) continue;
                    rhs = rhs + left_multiply(g, v.a[static_cast<std::size_t>(i)],
                                              wedge(g, b, moved, lie_basis(g, j, y)));
                    WedgeForm db =
                        exterior_d(g, b, WedgeForm::scalar(v.a[static_cast<std::size_t>(i)]));
                    WedgeForm corr = wedge(g, b, db, wedge(g, b, moved, contract_basis(g, b, j, y)))
                                         .scaled(sign);
                    rhs = rhs + corr;
                }
            CHECK(wedge_equal(b, lhs, rhs));
        }
}

TEST_CASE("graded operator algebra") {
    const auto& s = setup();
    const Geometry& g = s.g;
    VectorField v = sample_field(g);
    for (const auto& theta : sample_forms(g, s.b)) {
        // {d, i_V} = l_V by definition of lie(); check through the pieces
        WedgeForm anti = contract(g, s.b, v, exterior_d(g, s.b, theta)) +
                         exterior_d(g, s.b, contract(g, s.b, v, theta));
        CHECK(wedge_equal(s.b, anti, lie(g, s.b, v, theta)));
        // [d, l_V] = 0
        if (theta.degree + 2 <= s.b.max_degree)
            CHECK(wedge_equal(s.b, exterior_d(g, s.b, lie(g, s.b, v, theta)),
                              lie(g, s.b, v, exterior_d(g, s.b, theta))));
        // {d, d} = 0
        if (theta.degree + 2 <= s.b.max_degree)
            CHECK(wedge_is_zero(s.b, exterior_d(g, s.b, exterior_d(g, s.b, theta))));
    }
}

TEST_CASE("braided commutation relations with structure constants chi_i(N^l_k)") {
    const auto& s = setup();
    const Geometry& g = s.g;

    auto structure = [&](int i, int l, int k) {
        return g.B.chi(g.A, i, g.adj.N[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)]);
    };

    std::vector<WedgeForm> probes;
    for (GenId x = 0; x < static_cast<GenId>(g.A.generator_count()); ++x)
        probes.push_back(WedgeForm::scalar(AlgebraElement::generator(x)));
    for (int j = 0; j < g.n; ++j) probes.push_back(WedgeForm::basis(1, static_cast<MultiIndex>(j)));

    for (int i = 0; i < g.n; ++i)
        for (int k = 0; k < g.n; ++k) {
            for (const auto& theta : probes) {
                // [l_i, l_k]_B = f_i{}^l{}_k l_l
                WedgeForm lhs = lie_basis(g, i, lie_basis(g, k, theta));
                for (int r = 0; r < g.n; ++r)
                    for (int ss = 0; ss < g.n; ++ss) {
                        QScalar bh = s.b.bhat.at(i * g.n + k, r * g.n + ss);
                        if (bh.is_zero()) continue;
                        lhs = lhs - lie_basis(g, r, lie_basis(g, ss, theta)).scaled(bh);
                    }
                WedgeForm rhs;
                rhs.degree = theta.degree;
                for (int l = 0; l < g.n; ++l) {
                    QScalar c = structure(i, l, k);
                    if (!c.is_zero()) rhs = rhs + lie_basis(g, l, theta).scaled(c);
                }
                CHECK(wedge_equal(s.b, lhs, rhs));

                // [l_i, i_k]_B = f_i{}^l{}_k i_l on forms
                if (theta.degree >= 1) {
                    WedgeForm lhs2 = lie_basis(g, i, contract_basis(g, s.b, k, theta));
                    for (int r = 0; r < g.n; ++r)
                        for (int ss = 0; ss < g.n; ++ss) {
                            QScalar bh = s.b.bhat.at(i * g.n + k, r * g.n + ss);
                            if (bh.is_zero()) continue;
                            lhs2 = lhs2 -
                                   contract_basis(g, s.b, r, lie_basis(g, ss, theta)).scaled(bh);
                        }
                    WedgeForm rhs2;
                    rhs2.degree = theta.degree - 1;
                    for (int l = 0; l < g.n; ++l) {
                        QScalar c = structure(i, l, k);
                        if (!c.is_zero())
                            rhs2 = rhs2 + contract_basis(g, s.b, l, theta).scaled(c);
                    }
                    CHECK(wedge_equal(s.b, lhs2, rhs2));
                }
            }
        }
}

TEST_CASE("q=1 structure constants match classical gl(2)") {
    const auto& sym = setup();
    const Geometry& g = sym.g;
    const FrtBlock& frt = *g.A.frt();

    // classical tangent matrices (X_I)^u_v = chi_I(T^u_v) at q=1
    std::vector<Matrix> X(4, Matrix(2, 2));
    for (int u = 0; u < 2; ++u)
        for (int vv = 0; vv < 2; ++vv) {
            auto chis = g.B.chi_all(g.A, AlgebraElement::generator(frt.t_ids[u][vv]));
            for (int I = 0; I < 4; ++I)
                X[static_cast<std::size_t>(I)].at(u, vv) =
                    QScalar(chis[static_cast<std::size_t>(I)].specialize(Rational(1)));
        }
    // solve [X_I, X_K] = c_{IK}{}^L X_L  (the X span gl(2))
    Matrix span(4, 4);
    for (int L = 0; L < 4; ++L)
        for (int e = 0; e < 4; ++e) span.at(e, L) = X[static_cast<std::size_t>(L)].at(e / 2, e % 2);
    for (int I = 0; I < 4; ++I)
        for (int K = 0; K < 4; ++K) {
            Matrix comm = X[static_cast<std::size_t>(I)] * X[static_cast<std::size_t>(K)] -
                          X[static_cast<std::size_t>(K)] * X[static_cast<std::size_t>(I)];
            std::vector<QScalar> rhs(4);
            for (int e = 0; e < 4; ++e) rhs[static_cast<std::size_t>(e)] = comm.at(e / 2, e % 2);
            std::vector<QScalar> c = span.solve(rhs);
            for (int L = 0; L < 4; ++L) {
                QScalar engine = g.B.chi(g.A, I, g.adj.N[static_cast<std::size_t>(L)][static_cast<std::size_t>(K)]);
                CHECK(QScalar(engine.specialize(Rational(1))) == c[static_cast<std::size_t>(L)]);
            }
        }
}

TEST_CASE("q=1 lie derivative of basis forms is the classical one") {
    const auto& s = setup();
    const auto& s1 = setup_q1();
    const Geometry& g = s.g;
    const FrtBlock& frt = *g.A.frt();

    // classical oracle: with X_I the tangent matrices, solve the commutators
    // [X_I, X_K] = c_{IK}{}^L X_L; then along a left-invariant field the
    // derivative of a dual basis form is l_{t_I} omega^J = -c_{IK}{}^J omega^K
    std::vector<Matrix> X(4, Matrix(2, 2));
    for (int u = 0; u < 2; ++u)
        for (int vv = 0; vv < 2; ++vv) {
            auto chis = g.B.chi_all(g.A, AlgebraElement::generator(frt.t_ids[u][vv]));
            for (int I = 0; I < 4; ++I)
                X[static_cast<std::size_t>(I)].at(u, vv) =
                    QScalar(chis[static_cast<std::size_t>(I)].specialize(Rational(1)));
        }
    Matrix span(4, 4);
    for (int L = 0; L < 4; ++L)
        for (int e = 0; e < 4; ++e) span.at(e, L) = X[static_cast<std::size_t>(L)].at(e / 2, e % 2);
    for (int I = 0; I < 4; ++I)
        for (int J = 0; J < 4; ++J) {
            WedgeForm lw = lie_basis(s1.g, I, WedgeForm::basis(1, static_cast<MultiIndex>(J)));
            WedgeForm expect;
            expect.degree = 1;
            for (int K = 0; K < 4; ++K) {
                Matrix comm = X[static_cast<std::size_t>(I)] * X[static_cast<std::size_t>(K)] -
                              X[static_cast<std::size_t>(K)] * X[static_cast<std::size_t>(I)];
                std::vector<QScalar> rhs(4);
                for (int e = 0; e < 4; ++e) rhs[static_cast<std::size_t>(e)] = comm.at(e / 2, e % 2);
                std::vector<QScalar> c = span.solve(rhs);
                expect.add(static_cast<MultiIndex>(K),
                           AlgebraElement::unit().scaled(-c[static_cast<std::size_t>(J)]));
            }
            CHECK(wedge_equal(s1.b, lw, expect));
        }
}

TEST_CASE("q=1 x basis is the coordinates centered at the identity") {
    const auto& s1 = setup_q1();
    const Geometry& g = s1.g;
    const FrtBlock& frt = *g.A.frt();
    // each x^J reduces to a single matrix coordinate minus its counit
    for (int k1 = 0; k1 < 2; ++k1)
        for (int k2 = 0; k2 < 2; ++k2) {
            // chi_{(k1,k2)} pairs with the coordinate T^{k2}_{k1} classically
            AlgebraElement coord = AlgebraElement::generator(frt.t_ids[k2][k1]);
            AlgebraElement expect =
                coord - AlgebraElement::unit().scaled(g.A.counit(coord));
            CHECK(g.X.x[static_cast<std::size_t>(pair_index(2, k1, k2))] == expect);
        }
}

TEST_CASE("f-convolution passes contractions through B-hat") {
    const auto& s = setup();
    const Geometry& g = s.g;
    std::vector<WedgeForm> probes;
    for (int j = 0; j < g.n; ++j) probes.push_back(WedgeForm::basis(1, static_cast<MultiIndex>(j)));
    probes.push_back(wedge(g, s.b, WedgeForm::basis(1, 1), WedgeForm::basis(1, 2)));
    probes.push_back(right_multiply(g, WedgeForm::basis(2, 4), g.A.gen("b")));
    for (const auto& theta : probes)
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                for (int k = 0; k < g.n; ++k) {
                    WedgeForm lhs = conv_f_form(g, i, k, contract_basis(g, s.b, j, theta));
                    WedgeForm rhs;
                    rhs.degree = theta.degree - 1;
                    for (int r = 0; r < g.n; ++r)
                        for (int ss = 0; ss < g.n; ++ss) {
                            QScalar bh = s.b.bhat.at(i * g.n + j, r * g.n + ss);
                            if (bh.is_zero()) continue;
                            rhs = rhs +
                                  contract_basis(g, s.b, r, conv_f_form(g, ss, k, theta)).scaled(bh);
                        }
                    CHECK(wedge_equal(s.b, lhs, rhs));
                }
}

TEST_CASE("B-hat exchanges chi and f convolution products") {
    const auto& s = setup();
    const Geometry& g = s.g;
    auto conv_pair = [&](const QScalar& unused, int first_chi, int second_f_i, int second_f_j,
                         bool chi_first, int chi_idx, const AlgebraElement& x) {
        (void)unused;
        (void)first_chi;
        QScalar acc(0);
        TensorElement dx = g.A.coproduct(x);
        for (const auto& [w, rest] : dx.terms()) {
            AlgebraElement le = AlgebraElement::monomial(w, QScalar(1));
            if (chi_first)
                acc += g.B.chi(g.A, chi_idx, le) * g.B.f(g.A, second_f_i, second_f_j, rest);
            else
                acc += g.B.f(g.A, second_f_i, second_f_j, le) * g.B.chi(g.A, chi_idx, rest);
        }
        return acc;
    };
    std::vector<AlgebraElement> monos;
    for (int len = 1; len <= 2; ++len)
        for (const Word& w : g.A.normal_words(len))
            monos.push_back(AlgebraElement::monomial(w, QScalar(1)));
    for (const auto& x : monos)
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                for (int l = 0; l < g.n; ++l) {
                    // Bhat_{ij}^{rs} chi_r * f_s{}^l = f_i{}^l * chi_j
                    QScalar lhs(0);
                    for (int r = 0; r < g.n; ++r)
                        for (int ss = 0; ss < g.n; ++ss) {
                            QScalar bh = s.b.bhat.at(i * g.n + j, r * g.n + ss);
                            if (bh.is_zero()) continue;
                            lhs += bh * conv_pair(QScalar(0), 0, ss, l, true, r, x);
                        }
                    QScalar rhs = conv_pair(QScalar(0), 0, i, l, false, j, x);
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("second lie derivative") {
    const auto& s = setup();
    const Geometry& g = s.g;

    // l^R_{h_i}(I) = 0 and degree-0 agreement with l_{h_i}
    for (int i = 0; i < g.n; ++i) {
        CHECK(lie_right(g, i, WedgeForm::scalar(AlgebraElement::unit())).c.empty());
        for (GenId x = 0; x < static_cast<GenId>(g.A.generator_count()); ++x) {
            WedgeForm bform = WedgeForm::scalar(AlgebraElement::generator(x));
            WedgeForm via_h = lie(g, s.b, h_basis(g, i), bform);
            WedgeForm via_R = lie_right(g, i, bform);
            CHECK(wedge_equal(s.b, via_h, via_R));
            // and both equal h_i(b)
            AlgebraElement hb = vector_action(g, h_basis(g, i),
                                              AlgebraElement::generator(x));
            CHECK(wedge_equal(s.b, via_R, WedgeForm::scalar(hb)));
        }
    }

    // Leibniz expansion l^R_{h_i}(theta theta') =
    //   l^R_{h_i}(theta) theta' + (theta * f_i{}^j) l^R_{h_j}(theta')
    std::vector<WedgeForm> thetas = sample_forms(g, s.b);
    for (const auto& x : thetas)
        for (const auto& y : thetas) {
            if (x.degree + y.degree > s.b.max_degree) continue;
            for (int i = 0; i < g.n; ++i) {
                WedgeForm lhs = lie_right(g, i, wedge(g, s.b, x, y));
                WedgeForm rhs = wedge(g, s.b, lie_right(g, i, x), y);
                for (int j = 0; j < g.n; ++j)
                    rhs = rhs + wedge(g, s.b, form_conv_right_f(g, i, j, x), lie_right(g, j, y));
                CHECK(wedge_equal(s.b, lhs, rhs));
            }
        }

    // on da b: l^R_{h_i}(da b) = d(h_i(a)) b + (da * f_i{}^j) h_j(b)
    for (GenId xa = 0; xa < 4; ++xa)
        for (GenId xb = 0; xb < 4; ++xb) {
            AlgebraElement a = AlgebraElement::generator(xa);
            AlgebraElement bb = AlgebraElement::generator(xb);
            for (int i = 0; i < g.n; ++i) {
                WedgeForm dab = right_multiply(g, exterior_d(g, s.b, WedgeForm::scalar(a)), bb);
                WedgeForm lhs = lie_right(g, i, dab);
                WedgeForm rhs = right_multiply(
                    g, exterior_d(g, s.b, WedgeForm::scalar(vector_action(g, h_basis(g, i), a))),
                    bb);
                for (int j = 0; j < g.n; ++j) {
                    WedgeForm daf = form_conv_right_f(g, i, j, exterior_d(g, s.b, WedgeForm::scalar(a)));
                    rhs = rhs + right_multiply(g, daf, vector_action(g, h_basis(g, j), bb));
                }
                CHECK(wedge_equal(s.b, lhs, rhs));
            }
        }
}

TEST_CASE("defect index") {
    const auto& s = setup();
    const Geometry& g = s.g;

    // DI on the unit vanishes
    for (int i = 0; i < g.n; ++i)
        for (int k = 0; k < g.n; ++k)
            CHECK(defect_index(g, i, k, AlgebraElement::unit()).value.is_zero());

    // nonvanishing at symbolic q on the generator T^1_1
    bool any_nonzero = false;
    for (int i = 0; i < g.n; ++i)
        for (int k = 0; k < g.n; ++k)
            if (!defect_index(g, i, k, g.A.gen("a")).value.is_zero()) any_nonzero = true;
    CHECK(any_nonzero);

    // identically zero at q=1
    const auto& s1 = setup_q1();
    for (GenId x = 0; x < static_cast<GenId>(s1.g.A.generator_count()); ++x)
        for (int i = 0; i < s1.g.n; ++i)
            for (int k = 0; k < s1.g.n; ++k)
                CHECK(defect_index(s1.g, i, k, AlgebraElement::generator(x)).value.is_zero());

    // cross-check: (l_{h_i} - l^R_{h_i})(da b) = -DI_i{}^k(a) t_k(b)
    for (GenId xa = 0; xa < 4; ++xa)
        for (GenId xb = 0; xb < 4; ++xb) {
            AlgebraElement a = AlgebraElement::generator(xa);
            AlgebraElement bb = AlgebraElement::generator(xb);
            WedgeForm dab = right_multiply(g, exterior_d(g, s.b, WedgeForm::scalar(a)), bb);
            for (int i = 0; i < g.n; ++i) {
                WedgeForm lhs = lie(g, s.b, h_basis(g, i), dab) - lie_right(g, i, dab);
                WedgeForm rhs;
                rhs.degree = 1;
                for (int k = 0; k < g.n; ++k) {
                    OneForm di = defect_index(g, i, k, a).value;
                    AlgebraElement tkb = g.B.conv_left_chi(g.A, k, bb);
                    rhs = rhs - right_multiply(g, WedgeForm::from_one_form(di), tkb);
                }
                CHECK(wedge_equal(s.b, lhs, rhs));
            }
        }

    // auxiliary contraction facts: sum_k M_{(j)}{}^{(kk)} = delta I and
    // Y_{(j)} = sum_k f_{(j)}{}^{(kk)} is not proportional to delta eps
    for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) {
            AlgebraElement acc;
            for (int k = 0; k < 2; ++k)
                acc += g.adj.M[static_cast<std::size_t>(pair_index(2, j1, j2))]
                              [static_cast<std::size_t>(pair_index(2, k, k))];
            AlgebraElement expect = (j1 == j2) ? AlgebraElement::unit() : AlgebraElement();
            CHECK(acc == expect);
        }
    {
        bool nontrivial = false;
        for (GenId x = 0; x < static_cast<GenId>(g.A.generator_count()); ++x)
            for (int j1 = 0; j1 < 2; ++j1)
                for (int j2 = 0; j2 < 2; ++j2) {
                    QScalar y(0);
                    for (int k = 0; k < 2; ++k)
                        y += g.B.f(g.A, pair_index(2, j1, j2), pair_index(2, k, k),
                                   AlgebraElement::generator(x));
                    QScalar eps_part = (j1 == j2)
                                           ? g.A.counit(AlgebraElement::generator(x))
                                           : QScalar(0);
                    if (y != eps_part) nontrivial = true;
                }
        CHECK(nontrivial);
    }
}

TEST_CASE("lie derivative along V_k = M_k{}^j t_j carries the DI correction") {
    const auto& s = setup();
    const Geometry& g = s.g;
    // l_{V_i}(a theta') = (l_{V_i} a) theta' + (a * f_i{}^j) l_{V_j} theta'
    //                     + DI_i{}^k(a) ^ i_{t_k}(theta')
    for (GenId xa = 0; xa < 4; ++xa) {
        AlgebraElement a = AlgebraElement::generator(xa);
        for (int j = 0; j < g.n; ++j) {
            WedgeForm theta = WedgeForm::basis(1, static_cast<MultiIndex>(j));
            for (int i = 0; i < g.n; ++i) {
                WedgeForm lhs = lie(g, s.b, h_basis(g, i), left_multiply(g, a, theta));
                WedgeForm rhs = left_multiply(g, vector_action(g, h_basis(g, i), a), theta);
                for (int jj = 0; jj < g.n; ++jj) {
                    AlgebraElement af = g.B.conv_right_f(g.A, i, jj, a);
                    if (!af.is_zero())
                        rhs = rhs + left_multiply(g, af, lie(g, s.b, h_basis(g, jj), theta));
                    OneForm di = defect_index(g, i, jj, a).value;
                    rhs = rhs + wedge(g, s.b, WedgeForm::from_one_form(di),
                                      contract_basis(g, s.b, jj, theta));
                }
                CHECK(wedge_equal(s.b, lhs, rhs));
            }
        }
    }
}

TEST_CASE("commutation normal form") {
    const auto& s = setup();
    const Geometry& g = s.g;

    // d theta -> d(theta) + (-1)^p theta d
    WedgeForm theta = right_multiply(g, WedgeForm::basis(1, 2), g.A.gen("a"));
    OpSum nf = commutation_normal_form(g, s.b, {{AlgebraElement::unit(), Atom{OpKind::D, -1}}},
                                       theta);
    OpSum expect;
    expect.push_back({exterior_d(g, s.b, theta), {}});
    expect.push_back({theta.scaled(QScalar(-1)), {Atom{OpKind::D, -1}}});
    CHECK(opsum_equal(s.b, nf, expect));

    // i_V a (degree 0) -> b^i(f_i{}^j * a) i_{t_j} with vanishing i_V(a)
    VectorField v = sample_field(g);
    AlgebraElement a = g.A.gen("d");
    std::vector<CAtom> ivword;
    for (int i = 0; i < g.n; ++i)
        if (!v.a[static_cast<std::size_t>(i)].is_zero())
            ivword.push_back({v.a[static_cast<std::size_t>(i)], Atom{OpKind::IT, i}});
    // i_V = sum of coefficiented atoms: rewrite each and sum
    OpSum got;
    for (const auto& ca : ivword) {
        OpSum part = commutation_normal_form(g, s.b, {ca}, WedgeForm::scalar(a));
        for (auto& t : part) got.push_back(t);
    }
    OpSum want;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            AlgebraElement coeff =
                g.A.mul(v.a[static_cast<std::size_t>(i)], g.B.conv_left_f(g.A, i, j, a));
            if (!coeff.is_zero())
                want.push_back({WedgeForm::scalar(coeff), {Atom{OpKind::IT, j}}});
        }
    CHECK(opsum_equal(s.b, got, want));

    // normal forms are stable: re-normalizing the residual-free part changes nothing
    OpSum once = commutation_normal_form(
        g, s.b, {{AlgebraElement::unit(), Atom{OpKind::LT, 1}}}, theta);
    for (const auto& term : once)
        if (term.ops.empty()) {
            OpSum again = commutation_normal_form(g, s.b, {}, term.coeff);
            REQUIRE(again.size() == 1);
            CHECK(wedge_equal(s.b, again[0].coeff, term.coeff));
        }
}

TEST_CASE("delta homomorphism") {
    const auto& s = setup();
    const Geometry& g = s.g;

    // length-1 word: delta(V) [] a = V(a) + V [] a
    VectorField v = sample_field(g);
    std::vector<CAtom> vword;
    DeltaSum dv;
    for (int i = 0; i < g.n; ++i)
        if (!v.a[static_cast<std::size_t>(i)].is_zero()) {
            CAtom ca{v.a[static_cast<std::size_t>(i)], Atom{OpKind::T, i}};
            vword.push_back(ca);
            for (auto& t : delta_first_order({ca})) dv.push_back(t);
        }
    for (GenId x = 0; x < 4; ++x) {
        WedgeForm af = WedgeForm::scalar(AlgebraElement::generator(x));
        OpSum via_delta = delta_box(g, s.b, dv, af);
        OpSum direct;
        for (const auto& ca : vword)
            for (auto& t : commutation_normal_form(g, s.b, {ca}, af)) direct.push_back(t);
        CHECK(opsum_equal(s.b, via_delta, direct));
    }

    // delta(t_i t_j) [] a = t_i t_j a with the (1 + Bhat) middle term
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            DeltaSum di = delta_first_order({{AlgebraElement::unit(), Atom{OpKind::T, i}}});
            DeltaSum dj = delta_first_order({{AlgebraElement::unit(), Atom{OpKind::T, j}}});
            DeltaSum prod = delta_product(g, s.b, di, dj);

            // structural check: the mixed terms carry 1 + Bhat
            Matrix middle(g.n, g.n);
            for (const auto& t : prod) {
                if (t.left.size() == 1 && t.right.size() == 1) {
                    REQUIRE(t.left[0].atom.kind == OpKind::T);
                    REQUIRE(t.right[0].atom.kind == OpKind::T);
                    REQUIRE(t.front.degree == 0);
                    QScalar c(0);
                    if (t.front.c.count(0))
                        for (const auto& [w, cc] : t.front.c.at(0).terms())
                            if (w.empty()) c = cc;
                    middle.at(t.left[0].atom.idx, t.right[0].atom.idx) += c;
                }
            }
            for (int r = 0; r < g.n; ++r)
                for (int ss = 0; ss < g.n; ++ss) {
                    QScalar expect = s.b.bhat.at(i * g.n + j, r * g.n + ss);
                    if (r == i && ss == j) expect += QScalar(1);
                    CHECK(middle.at(r, ss) == expect);
                }

            // application check against the direct operator product
            AlgebraElement a = g.A.gen("b");
            OpSum via_delta = delta_box(g, s.b, prod, WedgeForm::scalar(a));
            OpSum direct = commutation_normal_form(
                g, s.b,
                {{AlgebraElement::unit(), Atom{OpKind::T, i}},
                 {AlgebraElement::unit(), Atom{OpKind::T, j}}},
                WedgeForm::scalar(a));
            CHECK(opsum_equal(s.b, via_delta, direct));
        }

    // delta(l_V) = delta(i_V) delta(d) + delta(d) delta(i_V) reproduces the
    // normal form of l_V theta (with l_{t_j} expanded as i d + d i)
    DeltaSum div;
    for (int i = 0; i < g.n; ++i)
        if (!v.a[static_cast<std::size_t>(i)].is_zero())
            for (auto& t : delta_first_order({{v.a[static_cast<std::size_t>(i)], Atom{OpKind::IT, i}}}))
                div.push_back(t);
    DeltaSum dd = delta_first_order({{AlgebraElement::unit(), Atom{OpKind::D, -1}}});
    DeltaSum dlv = delta_product(g, s.b, div, dd);
    for (auto& t : delta_product(g, s.b, dd, div)) dlv.push_back(t);

    for (const auto& theta : sample_forms(g, s.b)) {
        if (theta.degree + 2 > s.b.max_degree) continue;
        OpSum via_delta = delta_box(g, s.b, dlv, theta);
        OpSum expect;
        expect.push_back({lie(g, s.b, v, theta), {}});
        QScalar sign = (theta.degree % 2 == 0) ? QScalar(1) : QScalar(-1);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                WedgeForm moved = conv_f_form(g, i, j, theta);
                if (moved.c.empty()) continue;
                WedgeForm bmoved = left_multiply(g, v.a[static_cast<std::size_t>(i)], moved);
                // l_{t_j} residual expanded through its definition
                expect.push_back({bmoved, {Atom{OpKind::IT, j}, Atom{OpKind::D, -1}}});
                expect.push_back({bmoved, {Atom{OpKind::D, -1}, Atom{OpKind::IT, j}}});
                WedgeForm db = exterior_d(g, s.b, WedgeForm::scalar(v.a[static_cast<std::size_t>(i)]));
                expect.push_back(
                    {wedge(g, s.b, db, moved).scaled(sign), {Atom{OpKind::IT, j}}});
            }
        CHECK(opsum_equal(s.b, via_delta, expect));
    }
}
