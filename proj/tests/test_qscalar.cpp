#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcartan/qscalar.hpp"

using namespace qcartan;

namespace {

// deterministic xorshift generator for property checks
struct Rng {
    std::uint64_t s = 0x9e3779b97f4a7c15ull;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

QScalar random_scalar(Rng& rng) {
    auto poly = [&](int maxdeg) {
        Poly p;
        int d = rng.range(0, maxdeg);
        for (int k = 0; k <= d; ++k)
            p += Poly::q_power(k, BigInt(rng.range(-4, 4)));
        return p;
    };
    Poly den;
    while (den.is_zero()) den = poly(3);
    return QScalar(poly(4), den);
}

}  // namespace

TEST_CASE("bigint basics") {
    BigInt a = BigInt::from_string("123456789012345678901234567890");
    BigInt b = BigInt::from_string("987654321098765432109876543210");
    CHECK((a * b).to_string() == "121932631137021795226185032733622923332237463801111263526900");
    CHECK((b / a).to_string() == "8");
    CHECK((b % a).to_string() == "9000000000900000000090");
    CHECK(BigInt::gcd(a, b).to_string() == "9000000000900000000090");
    CHECK((a - a).is_zero());
    CHECK((-a + a).is_zero());
    CHECK(BigInt(-7) / BigInt(2) == BigInt(-3));
    CHECK(BigInt(-7) % BigInt(2) == BigInt(-1));
}

TEST_CASE("canonicalization") {
    // (q^2-1)/(q-1) -> q+1
    QScalar x(Poly::q_power(2) - Poly(1), Poly::q_power(1) - Poly(1));
    CHECK(x == QScalar(Poly::q_power(1) + Poly(1), Poly(1)));
    CHECK(x.to_string() == "q + 1");

    // canonical form is idempotent under re-wrapping
    QScalar y(x.num(), x.den());
    CHECK(y == x);

    // denominator sign normalization
    QScalar z(Poly(1), Poly(0) - Poly::q_power(1));
    CHECK(z.to_string() == "-1/q");

    // joint integer content: 2q / 4 -> q/2
    QScalar w(Poly::q_power(1, BigInt(2)), Poly(4));
    CHECK(w.to_string() == "q/2");
}

TEST_CASE("arith examples") {
    QScalar lam = QScalar::lambda();            // q - q^{-1}
    CHECK(lam.to_string() == "(q^2 - 1)/q");
    CHECK(lam / lam == QScalar(1));             // x/x = 1

    QScalar sum = QScalar::q() + QScalar::q_pow(-1);
    CHECK(sum == QScalar(Poly::q_power(2) + Poly(1), Poly::q_power(1)));

    CHECK_THROWS_AS(lam / QScalar(0), std::domain_error);
}

TEST_CASE("specialize") {
    QScalar s(Poly::q_power(2) + Poly(1), Poly::q_power(1));  // (q^2+1)/q
    CHECK(s.specialize(Rational(2)) == Rational(BigInt(5), BigInt(2)));

    QScalar t(Poly::q_power(2) - Poly(1), Poly::q_power(1) - Poly(1));  // cancels to q+1
    CHECK(t.specialize(Rational(1)) == Rational(2));

    QScalar pole(Poly(1), Poly::q_power(1) - Poly(1));
    CHECK_THROWS_AS(pole.specialize(Rational(1)), PoleError);
    CHECK(pole.has_pole_at(Rational(1)));
}

TEST_CASE("field axioms on random inputs") {
    Rng rng;
    for (int it = 0; it < 60; ++it) {
        QScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == QScalar(0));
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == QScalar(1));
            CHECK(a / a == QScalar(1));
        }
    }
}

TEST_CASE("specialize commutes with arith") {
    Rng rng;
    Rational pts[] = {Rational(2), Rational(BigInt(1), BigInt(3)), Rational(-5)};
    for (int it = 0; it < 40; ++it) {
        QScalar a = random_scalar(rng), b = random_scalar(rng);
        for (const auto& q0 : pts) {
            if (a.has_pole_at(q0) || b.has_pole_at(q0)) continue;
            CHECK((a + b).specialize(q0) == a.specialize(q0) + b.specialize(q0));
            CHECK((a * b).specialize(q0) == a.specialize(q0) * b.specialize(q0));
            if (!b.is_zero() && !b.specialize(q0).is_zero())
                CHECK((a / b).specialize(q0) == a.specialize(q0) / b.specialize(q0));
        }
    }
}

TEST_CASE("parse and print round-trip") {
    const char* texts[] = {
        "(q - q^-1)", "q^2", "3*q^-2 + 1/2", "(q^2-1)/(q-1)",
        "-q", "1 - 2*q + q^2", "(q+1)*(q-1)", "q^-3",
    };
    for (const char* t : texts) {
        QScalar v = QScalar::parse(t);
        CHECK(QScalar::parse(v.to_string()) == v);
    }
    CHECK(QScalar::parse("(q - q^-1)") == QScalar::lambda());
    CHECK(QScalar::parse("(q^2-1)/(q-1)") == QScalar::parse("q+1"));
    CHECK_THROWS_AS(QScalar::parse("q +"), std::invalid_argument);
    CHECK_THROWS_AS(QScalar::parse("x"), std::invalid_argument);

    Rng rng;
    for (int it = 0; it < 30; ++it) {
        QScalar v = random_scalar(rng);
        CHECK(QScalar::parse(v.to_string()) == v);
    }
}

TEST_CASE("degree cap guardrail") {
    int saved = poly_degree_cap();
    poly_degree_cap() = 8;
    QScalar big = QScalar::q_pow(5);
    CHECK_THROWS_AS(big * big, DegreeCapExceeded);
    poly_degree_cap() = saved;
}

TEST_CASE("perfect square roots") {
    // (q + q^{-1})^2 = lambda^2 + 4
    QScalar disc = QScalar::lambda() * QScalar::lambda() + QScalar(4);
    QScalar root;
    REQUIRE(disc.try_sqrt(root));
    CHECK(root == QScalar::q() + QScalar::q_pow(-1));
    QScalar notsq = QScalar::q() + QScalar(1);
    QScalar dummy;
    CHECK_FALSE(notsq.try_sqrt(dummy));
}
