#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcartan/frt.hpp"
#include "qcartan/suite.hpp"

using namespace qcartan;

namespace {

struct Setup {
    Geometry g;
    BraidData b;
    Setup() : g(Geometry::build(build_glq2())), b(BraidData::build(g, 4)) {}
    EvalContext ctx() const { return EvalContext{g, b}; }
};

const Setup& setup() {
    static Setup s;
    return s;
}

}  // namespace

TEST_CASE("parser examples") {
    ExprPtr e = Parser::parse("q^-1 * a * b + (q - q^-1) * c * d");
    REQUIRE(e->kind == Expr::Kind::Add);
    CHECK(e->args[0]->kind == Expr::Kind::Mul);
    CHECK(e->args[1]->kind == Expr::Kind::Mul);

    ExprPtr br = Parser::parse("bracket(t[1,1], omega[1,1])");
    REQUIRE(br->kind == Expr::Kind::Call);
    CHECK(br->name == "bracket");
    CHECK(br->args.size() == 2);
    CHECK(br->args[0]->kind == Expr::Kind::Indexed);

    CHECK_THROWS_AS(Parser::parse("d(a * b"), ParseError);
    CHECK_THROWS_AS(Parser::parse("+"), ParseError);
    CHECK_THROWS_AS(Parser::parse("f[1,1]("), ParseError);
    try {
        Parser::parse("d(a * b");
    } catch (const ParseError& pe) {
        CHECK(pe.line == 1);
        CHECK(std::string(pe.what()).find("end of input") != std::string::npos);
    }
}

TEST_CASE("print-parse round trip") {
    const char* sources[] = {
        "q^-1 * a * b + (q - q^-1) * c * d",
        "bracket(t[1,1], omega[1,1])",
        "wedge(omega[1,2], omega[2,1])",
        "d(a * b)",
        "lie(t[1,1], omega[2,2])",
        "DI(1, 2, a)",
        "conv(f[1,1][2,2], chi[1,2])",
        "P(d(a))",
        "-q^2 * a + 3 / 2",
        "i(t[2,1], wedge(omega[1,1], omega[1,2]))",
        "gbracket(tensor(t[1,1], t[1,2]), tensor(omega[1,2], omega[1,1]))",
        "twist(S, Lp[1][2])",
        "lieR(1, 2, omega[1,1])",
    };
    for (const char* src : sources) {
        ExprPtr once = Parser::parse(src);
        ExprPtr twice = Parser::parse(print_expr(once));
        CHECK(expr_equal(once, twice));
    }
}

TEST_CASE("evaluation against the engine") {
    const auto& s = setup();
    EvalContext ctx = s.ctx();

    // scalars
    Value v = eval_expr(ctx, Parser::parse("(q - q^-1)^2 + 4"));
    REQUIRE(std::holds_alternative<QScalar>(v));
    QScalar root;
    CHECK(std::get<QScalar>(v).try_sqrt(root));

    // algebra products run through the rewrite system
    Value ba = eval_expr(ctx, Parser::parse("b * a"));
    Value ab = eval_expr(ctx, Parser::parse("q^-1 * a * b"));
    CHECK(std::get<AlgebraElement>(ba) == std::get<AlgebraElement>(ab));

    // bracket against the duality
    Value br = eval_expr(ctx, Parser::parse("bracket(t[1,1], omega[1,1])"));
    CHECK(std::get<AlgebraElement>(br) == AlgebraElement::unit());
    Value br0 = eval_expr(ctx, Parser::parse("bracket(t[1,2], omega[1,1])"));
    CHECK(std::get<AlgebraElement>(br0).is_zero());

    // differential and projection
    Value pd = eval_expr(ctx, Parser::parse("P(d(a))"));
    REQUIRE(std::holds_alternative<WedgeForm>(pd));
    Value lhs = eval_expr(ctx, Parser::parse("i(t[1,1], d(a)) + bracket(t[1,1], d(a))"));
    (void)lhs;

    // contraction on a wedge
    Value iw = eval_expr(ctx, Parser::parse("i(t[1,1], wedge(omega[1,1], omega[1,2]))"));
    WedgeForm expect = contract(s.g, s.b, VectorField::basis(s.g.n, 0),
                                wedge(s.g, s.b, WedgeForm::basis(1, 0), WedgeForm::basis(1, 1)));
    CHECK(wedge_equal(s.b, std::get<WedgeForm>(iw), expect));

    // functionals evaluate through conv
    Value cv = eval_expr(ctx, Parser::parse("conv(chi[1,1], a)"));
    CHECK(std::get<AlgebraElement>(cv) == s.g.B.conv_left_chi(s.g.A, 0, s.g.A.gen("a")));

    // index validation
    CHECK_THROWS_AS(eval_expr(ctx, Parser::parse("omega[3,1]")), EvalError);
    CHECK_THROWS_AS(eval_expr(ctx, Parser::parse("Lp[1][3]")), EvalError);
    CHECK_THROWS_AS(eval_expr(ctx, Parser::parse("zz * a")), EvalError);
    CHECK_THROWS_AS(eval_expr(ctx, Parser::parse("omega[1,1] / a")), EvalError);

    // DI returns a 1-form, zero on the unit
    Value di = eval_expr(ctx, Parser::parse("DI(1, 1, I)"));
    CHECK(std::get<WedgeForm>(di).c.empty());

    // delta produces a printable expansion
    Value ds = eval_expr(ctx, Parser::parse("delta(t[1,1] * t[1,2])"));
    REQUIRE(std::holds_alternative<DeltaSum>(ds));
    CHECK_FALSE(value_to_string(ctx, ds).empty());
}

TEST_CASE("suite runner round trip") {
    SuiteOptions opt;
    SuiteRunner runner(build_glq2(), opt);
    Report rep = runner.run("braid");
    CHECK(rep.all_pass());
    nlohmann::json doc = report_to_json(rep, "builtin", "braid", opt);
    CHECK(doc["summary"]["failed"] == 0);
    CHECK(doc["checks"].size() == rep.checks.size());
    std::string text = report_to_text(rep);
    CHECK(text.find("[PASS]") != std::string::npos);
    // text and json agree on verdicts
    std::size_t npass = 0;
    for (const auto& c : doc["checks"])
        if (c["status"] == "pass") ++npass;
    CHECK(npass == rep.checks.size());
}
