// The expression language of the command-line runner: scalars, algebra
// elements, functionals, forms, vector fields, and the Cartan operators,
// with the usual precedence  ^  >  *  /  >  +  -  and op(args) application.

#pragma once

#include <cctype>
#include <memory>
#include <variant>
#include <vector>

#include "qcartan/cartan.hpp"

namespace qcartan {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(col)),
          line(line),
          col(col) {}
    int line, col;
};

class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// AST

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, QSymbol, Ident, Indexed, Call, Neg, Add, Sub, Mul, Div, Pow };

    Kind kind;
    Rational number;                        // Number
    std::string name;                       // Ident / Indexed / Call
    std::vector<std::vector<int>> indices;  // Indexed: one vector per bracket group
    std::vector<ExprPtr> args;              // Call / operator operands
    int exponent = 0;                       // Pow

    static std::shared_ptr<Expr> make(Kind k) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        return e;
    }
};

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::Number: return a->number == b->number;
        case Expr::Kind::QSymbol: return true;
        case Expr::Kind::Ident: return a->name == b->name;
        case Expr::Kind::Indexed: return a->name == b->name && a->indices == b->indices;
        default: break;
    }
    if (a->name != b->name || a->exponent != b->exponent || a->args.size() != b->args.size())
        return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!expr_equal(a->args[i], b->args[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// lexer + recursive descent parser

namespace dsl_detail {

struct Token {
    enum class Kind { Ident, Number, Symbol, End } kind;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::Kind::End;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                id.push_back(src_[pos_++]);
                ++col_;
            }
            tok_.kind = Token::Kind::Ident;
            tok_.text = id;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                num.push_back(src_[pos_++]);
                ++col_;
            }
            tok_.kind = Token::Kind::Number;
            tok_.text = num;
            return;
        }
        tok_.kind = Token::Kind::Symbol;
        tok_.text = std::string(1, c);
        ++pos_;
        ++col_;
    }
};

}  // namespace dsl_detail

class Parser {
public:
    static ExprPtr parse(const std::string& text) {
        Parser p(text);
        ExprPtr e = p.parse_sum();
        if (p.lex_.peek().kind != dsl_detail::Token::Kind::End) p.fail("unexpected trailing input");
        return e;
    }

private:
    dsl_detail::Lexer lex_;

    explicit Parser(const std::string& text) : lex_(text) {}

    [[noreturn]] void fail(const std::string& msg) {
        const auto& t = lex_.peek();
        std::string got = t.kind == dsl_detail::Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(msg + " (found " + got + ")", t.line, t.col);
    }

    bool eat_symbol(const char* s) {
        const auto& t = lex_.peek();
        if (t.kind == dsl_detail::Token::Kind::Symbol && t.text == s) {
            lex_.next();
            return true;
        }
        return false;
    }
    void expect_symbol(const char* s) {
        if (!eat_symbol(s)) fail(std::string("'") + s + "' expected");
    }

    ExprPtr parse_sum() {
        ExprPtr e = parse_product();
        for (;;) {
            if (eat_symbol("+")) {
                auto n = Expr::make(Expr::Kind::Add);
                n->args = {e, parse_product()};
                e = n;
            } else if (eat_symbol("-")) {
                auto n = Expr::make(Expr::Kind::Sub);
                n->args = {e, parse_product()};
                e = n;
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_product() {
        ExprPtr e = parse_factor();
        for (;;) {
            if (eat_symbol("*")) {
                auto n = Expr::make(Expr::Kind::Mul);
                n->args = {e, parse_factor()};
                e = n;
            } else if (eat_symbol("/")) {
                auto n = Expr::make(Expr::Kind::Div);
                n->args = {e, parse_factor()};
                e = n;
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_factor() {
        if (eat_symbol("-")) {
            auto n = Expr::make(Expr::Kind::Neg);
            n->args = {parse_factor()};
            return n;
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (eat_symbol("^")) {
            bool neg = false;
            if (eat_symbol("-"))
                neg = true;
            else
                eat_symbol("+");
            const auto& t = lex_.peek();
            if (t.kind != dsl_detail::Token::Kind::Number) fail("integer exponent expected");
            int e = std::stoi(lex_.next().text);
            auto n = Expr::make(Expr::Kind::Pow);
            n->args = {base};
            n->exponent = neg ? -e : e;
            return n;
        }
        return base;
    }

    ExprPtr parse_atom() {
        const auto& t = lex_.peek();
        if (t.kind == dsl_detail::Token::Kind::Number) {
            auto n = Expr::make(Expr::Kind::Number);
            n->number = Rational(BigInt::from_string(lex_.next().text));
            return n;
        }
        if (eat_symbol("(")) {
            ExprPtr e = parse_sum();
            expect_symbol(")");
            return e;
        }
        if (t.kind != dsl_detail::Token::Kind::Ident) fail("expression expected");
        std::string name = lex_.next().text;
        if (name == "q") {
            return Expr::make(Expr::Kind::QSymbol);
        }
        if (lex_.peek().kind == dsl_detail::Token::Kind::Symbol && lex_.peek().text == "[") {
            auto n = Expr::make(Expr::Kind::Indexed);
            n->name = name;
            while (eat_symbol("[")) {
                std::vector<int> group;
                for (;;) {
                    const auto& nt = lex_.peek();
                    if (nt.kind != dsl_detail::Token::Kind::Number) fail("index expected");
                    group.push_back(std::stoi(lex_.next().text));
                    if (eat_symbol(",")) continue;
                    break;
                }
                expect_symbol("]");
                n->indices.push_back(std::move(group));
            }
            return n;
        }
        if (lex_.peek().kind == dsl_detail::Token::Kind::Symbol && lex_.peek().text == "(") {
            lex_.next();
            auto n = Expr::make(Expr::Kind::Call);
            n->name = name;
            if (!eat_symbol(")")) {
                for (;;) {
                    n->args.push_back(parse_sum());
                    if (eat_symbol(",")) continue;
                    expect_symbol(")");
                    break;
                }
            }
            return n;
        }
        auto n = Expr::make(Expr::Kind::Ident);
        n->name = name;
        return n;
    }
};

// canonical printer; print-parse is the identity on ASTs
inline std::string print_expr(const ExprPtr& e) {
    auto wrap_if = [](bool c, const std::string& s) { return c ? "(" + s + ")" : s; };
    switch (e->kind) {
        case Expr::Kind::Number: return e->number.to_string();
        case Expr::Kind::QSymbol: return "q";
        case Expr::Kind::Ident: return e->name;
        case Expr::Kind::Indexed: {
            std::string s = e->name;
            for (const auto& group : e->indices) {
                s += "[";
                for (std::size_t i = 0; i < group.size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(group[i]);
                }
                s += "]";
            }
            return s;
        }
        case Expr::Kind::Call: {
            std::string s = e->name + "(";
            for (std::size_t i = 0; i < e->args.size(); ++i) {
                if (i) s += ", ";
                s += print_expr(e->args[i]);
            }
            return s + ")";
        }
        case Expr::Kind::Neg:
            return "-" + wrap_if(e->args[0]->kind == Expr::Kind::Add ||
                                     e->args[0]->kind == Expr::Kind::Sub,
                                 print_expr(e->args[0]));
        case Expr::Kind::Add: return print_expr(e->args[0]) + " + " + print_expr(e->args[1]);
        case Expr::Kind::Sub: {
            bool wrap = e->args[1]->kind == Expr::Kind::Add || e->args[1]->kind == Expr::Kind::Sub;
            return print_expr(e->args[0]) + " - " + wrap_if(wrap, print_expr(e->args[1]));
        }
        case Expr::Kind::Mul: {
            auto part = [&](const ExprPtr& x) {
                bool wrap = x->kind == Expr::Kind::Add || x->kind == Expr::Kind::Sub ||
                            x->kind == Expr::Kind::Neg;
                return wrap_if(wrap, print_expr(x));
            };
            bool wrap_right = e->args[1]->kind == Expr::Kind::Mul || e->args[1]->kind == Expr::Kind::Div;
            return part(e->args[0]) + " * " +
                   (wrap_right ? "(" + print_expr(e->args[1]) + ")" : part(e->args[1]));
        }
        case Expr::Kind::Div: {
            auto part = [&](const ExprPtr& x, bool strict) {
                bool wrap = x->kind == Expr::Kind::Add || x->kind == Expr::Kind::Sub ||
                            x->kind == Expr::Kind::Neg ||
                            (strict && (x->kind == Expr::Kind::Mul || x->kind == Expr::Kind::Div));
                return wrap_if(wrap, print_expr(x));
            };
            return part(e->args[0], false) + " / " + part(e->args[1], true);
        }
        case Expr::Kind::Pow: {
            bool wrap = e->args[0]->kind != Expr::Kind::QSymbol &&
                        e->args[0]->kind != Expr::Kind::Ident &&
                        e->args[0]->kind != Expr::Kind::Indexed &&
                        e->args[0]->kind != Expr::Kind::Number;
            std::string b = wrap_if(wrap, print_expr(e->args[0]));
            return b + "^" + (e->exponent < 0 ? "-" + std::to_string(-e->exponent)
                                              : std::to_string(e->exponent));
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// evaluation

using Value = std::variant<QScalar, AlgebraElement, VectorField, WedgeForm, TensorForm,
                           TensorVector, Functional, DeltaSum>;

struct EvalContext {
    const Geometry& g;
    const BraidData& b;
    std::optional<Rational> q0;  // when set, 'q' evaluates to this constant

    int resolve_basis_index(const std::vector<int>& group, const std::string& what) const {
        const int m = g.B.m();
        if (group.size() == 1) {
            int flat = group[0];
            if (flat < 1 || flat > g.n)
                throw EvalError(what + ": index " + std::to_string(flat) +
                                " outside the instance dimension " + std::to_string(g.n));
            return flat - 1;
        }
        if (group.size() == 2) {
            int i = group[0], j = group[1];
            if (i < 1 || i > m || j < 1 || j > m)
                throw EvalError(what + ": index pair (" + std::to_string(i) + "," +
                                std::to_string(j) + ") outside the instance dimension");
            return pair_index(m, i - 1, j - 1);
        }
        throw EvalError(what + ": one flat index or an index pair expected");
    }

    int resolve_small_index(int i, const std::string& what) const {
        const int m = g.B.m();
        if (i < 1 || i > m)
            throw EvalError(what + ": index " + std::to_string(i) +
                            " outside the matrix dimension " + std::to_string(m));
        return i - 1;
    }
};

std::string value_to_string(const EvalContext& ctx, const Value& v);
Value eval_expr(const EvalContext& ctx, const ExprPtr& e);

namespace dsl_detail {

inline WedgeForm as_form(const EvalContext& ctx, const Value& v, const std::string& what) {
    if (std::holds_alternative<WedgeForm>(v)) return std::get<WedgeForm>(v);
    if (std::holds_alternative<AlgebraElement>(v))
        return WedgeForm::scalar(std::get<AlgebraElement>(v));
    if (std::holds_alternative<QScalar>(v))
        return WedgeForm::scalar(AlgebraElement::unit().scaled(std::get<QScalar>(v)));
    (void)ctx;
    throw EvalError(what + ": form-valued argument expected");
}

inline AlgebraElement as_element(const Value& v, const std::string& what) {
    if (std::holds_alternative<AlgebraElement>(v)) return std::get<AlgebraElement>(v);
    if (std::holds_alternative<QScalar>(v))
        return AlgebraElement::unit().scaled(std::get<QScalar>(v));
    if (std::holds_alternative<WedgeForm>(v)) {
        const WedgeForm& f = std::get<WedgeForm>(v);
        if (f.degree == 0) return f.c.count(0) ? f.c.at(0) : AlgebraElement();
    }
    throw EvalError(what + ": algebra-element argument expected");
}

inline TensorForm as_tensor_form(const EvalContext& ctx, const Value& v, const std::string& what) {
    if (std::holds_alternative<TensorForm>(v)) return std::get<TensorForm>(v);
    if (std::holds_alternative<WedgeForm>(v)) {
        const WedgeForm& f = std::get<WedgeForm>(v);
        if (f.degree <= 1) {
            TensorForm t;
            t.degree = f.degree;
            for (const auto& [w, e] : f.c) t.add(w, e);
            return t;
        }
        return wedge_image(ctx.b, f);
    }
    if (std::holds_alternative<AlgebraElement>(v))
        return TensorForm::scalar(std::get<AlgebraElement>(v));
    throw EvalError(what + ": tensor-form argument expected");
}

inline TensorVector as_tensor_vector(const Value& v, const std::string& what) {
    if (std::holds_alternative<TensorVector>(v)) return std::get<TensorVector>(v);
    if (std::holds_alternative<VectorField>(v)) {
        const VectorField& f = std::get<VectorField>(v);
        TensorVector t;
        t.degree = 1;
        for (int i = 0; i < f.dim(); ++i) t.add(static_cast<MultiIndex>(i), f.a[static_cast<std::size_t>(i)]);
        return t;
    }
    throw EvalError(what + ": tensor-vector argument expected");
}

inline std::vector<CAtom> op_atom(const EvalContext& ctx, const ExprPtr& e) {
    if (e->kind == Expr::Kind::Ident && e->name == "d")
        return {{AlgebraElement::unit(), Atom{OpKind::D, -1}}};
    if (e->kind == Expr::Kind::Indexed && e->name == "t") {
        int idx = ctx.resolve_basis_index(e->indices.at(0), "t");
        return {{AlgebraElement::unit(), Atom{OpKind::T, idx}}};
    }
    if (e->kind == Expr::Kind::Call && (e->name == "i" || e->name == "lie") && e->args.size() == 1) {
        Value v = eval_expr(ctx, e->args[0]);
        if (!std::holds_alternative<VectorField>(v))
            throw EvalError(e->name + ": vector field expected inside delta()");
        const VectorField& vf = std::get<VectorField>(v);
        std::vector<CAtom> out;
        OpKind k = e->name == "i" ? OpKind::IT : OpKind::LT;
        for (int idx = 0; idx < vf.dim(); ++idx)
            if (!vf.a[static_cast<std::size_t>(idx)].is_zero())
                out.push_back({vf.a[static_cast<std::size_t>(idx)], Atom{k, idx}});
        return out;
    }
    throw EvalError("delta(): unsupported operator '" + print_expr(e) + "'");
}

inline std::vector<std::vector<CAtom>> op_word_factors(const EvalContext& ctx, const ExprPtr& e) {
    if (e->kind == Expr::Kind::Mul) {
        auto l = op_word_factors(ctx, e->args[0]);
        auto r = op_word_factors(ctx, e->args[1]);
        for (auto& f : r) l.push_back(std::move(f));
        return l;
    }
    return {op_atom(ctx, e)};
}

}  // namespace dsl_detail

inline Value eval_expr(const EvalContext& ctx, const ExprPtr& e) {
    using dsl_detail::as_element;
    using dsl_detail::as_form;
    using dsl_detail::as_tensor_form;
    using dsl_detail::as_tensor_vector;
    const Geometry& g = ctx.g;
    const BraidData& b = ctx.b;
    switch (e->kind) {
        case Expr::Kind::Number: return QScalar(e->number);
        case Expr::Kind::QSymbol: return ctx.q0 ? QScalar(*ctx.q0) : QScalar::q();
        case Expr::Kind::Ident: {
            if (g.A.has_generator(e->name)) return g.A.gen(e->name);
            if (e->name == "I") return AlgebraElement::unit();
            throw EvalError("unknown identifier '" + e->name + "'");
        }
        case Expr::Kind::Indexed: {
            const std::string& n = e->name;
            if (n == "omega" || n == "eta" || n == "t" || n == "h" || n == "chi") {
                int idx = ctx.resolve_basis_index(e->indices.at(0), n);
                if (n == "omega") return WedgeForm::basis(1, static_cast<MultiIndex>(idx));
                if (n == "eta") return WedgeForm::from_one_form(eta_basis(g, idx));
                if (n == "t") return VectorField::basis(g.n, idx);
                if (n == "h") return h_basis(g, idx);
                return Functional::chi(idx);
            }
            if (n == "M" || n == "N" || n == "f") {
                if (e->indices.size() != 2)
                    throw EvalError(n + ": two index groups expected, e.g. " + n + "[1,1][2,2]");
                int i = ctx.resolve_basis_index(e->indices[0], n);
                int j = ctx.resolve_basis_index(e->indices[1], n);
                if (n == "M") return g.adj.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (n == "N") return g.adj.N[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                return Functional::f_basis(i, j);
            }
            if (n == "Lp" || n == "Lm") {
                if (e->indices.size() != 2 || e->indices[0].size() != 1 || e->indices[1].size() != 1)
                    throw EvalError(n + ": two single indices expected, e.g. " + n + "[1][2]");
                int i = ctx.resolve_small_index(e->indices[0][0], n);
                int j = ctx.resolve_small_index(e->indices[1][0], n);
                return n == "Lp" ? Functional::lp(i, j) : Functional::lm(i, j);
            }
            throw EvalError("unknown indexed name '" + n + "'");
        }
        case Expr::Kind::Neg: {
            Value v = eval_expr(ctx, e->args[0]);
            if (auto* s = std::get_if<QScalar>(&v)) return -*s;
            if (auto* a = std::get_if<AlgebraElement>(&v)) return -*a;
            if (auto* f = std::get_if<WedgeForm>(&v)) return f->scaled(QScalar(-1));
            if (auto* t = std::get_if<TensorForm>(&v)) return t->scaled(QScalar(-1));
            if (auto* vf = std::get_if<VectorField>(&v)) {
                VectorField r(vf->dim());
                for (int i = 0; i < vf->dim(); ++i)
                    r.a[static_cast<std::size_t>(i)] = -vf->a[static_cast<std::size_t>(i)];
                return r;
            }
            if (auto* fn = std::get_if<Functional>(&v))
                return Functional::scale(QScalar(-1), *fn);
            throw EvalError("cannot negate this value");
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            bool add = e->kind == Expr::Kind::Add;
            Value l = eval_expr(ctx, e->args[0]);
            Value r = eval_expr(ctx, e->args[1]);
            if (std::holds_alternative<QScalar>(l) && std::holds_alternative<QScalar>(r))
                return add ? std::get<QScalar>(l) + std::get<QScalar>(r)
                           : std::get<QScalar>(l) - std::get<QScalar>(r);
            if (std::holds_alternative<VectorField>(l) && std::holds_alternative<VectorField>(r))
                return add ? std::get<VectorField>(l) + std::get<VectorField>(r)
                           : std::get<VectorField>(l) - std::get<VectorField>(r);
            if (std::holds_alternative<Functional>(l) && std::holds_alternative<Functional>(r))
                return add ? Functional::sum(std::get<Functional>(l), std::get<Functional>(r))
                           : Functional::sum(std::get<Functional>(l),
                                             Functional::scale(QScalar(-1), std::get<Functional>(r)));
            if (std::holds_alternative<TensorForm>(l) || std::holds_alternative<TensorForm>(r)) {
                TensorForm tl = as_tensor_form(ctx, l, "+"), tr = as_tensor_form(ctx, r, "+");
                if (tl.degree != tr.degree && !tl.is_zero() && !tr.is_zero())
                    throw EvalError("degree mismatch in sum");
                return add ? tl + tr : tl - tr;
            }
            if (std::holds_alternative<WedgeForm>(l) || std::holds_alternative<WedgeForm>(r)) {
                WedgeForm fl = as_form(ctx, l, "+"), fr = as_form(ctx, r, "+");
                if (fl.degree != fr.degree && !fl.c.empty() && !fr.c.empty())
                    throw EvalError("degree mismatch in sum");
                return add ? fl + fr : fl - fr;
            }
            AlgebraElement al = as_element(l, "+"), ar = as_element(r, "+");
            return add ? al + ar : al - ar;
        }
        case Expr::Kind::Mul: {
            Value l = eval_expr(ctx, e->args[0]);
            Value r = eval_expr(ctx, e->args[1]);
            if (auto* s = std::get_if<QScalar>(&l)) {
                if (auto* s2 = std::get_if<QScalar>(&r)) return *s * *s2;
                if (auto* a = std::get_if<AlgebraElement>(&r)) return a->scaled(*s);
                if (auto* f = std::get_if<WedgeForm>(&r)) return f->scaled(*s);
                if (auto* t = std::get_if<TensorForm>(&r)) return t->scaled(*s);
                if (auto* fn = std::get_if<Functional>(&r)) return Functional::scale(*s, *fn);
                if (auto* vf = std::get_if<VectorField>(&r)) {
                    VectorField out(vf->dim());
                    for (int i = 0; i < vf->dim(); ++i)
                        out.a[static_cast<std::size_t>(i)] =
                            vf->a[static_cast<std::size_t>(i)].scaled(*s);
                    return out;
                }
            }
            if (auto* s = std::get_if<QScalar>(&r)) {
                if (auto* a = std::get_if<AlgebraElement>(&l)) return a->scaled(*s);
                if (auto* f = std::get_if<WedgeForm>(&l)) return f->scaled(*s);
            }
            if (std::holds_alternative<Functional>(l) && std::holds_alternative<Functional>(r))
                return Functional::conv(std::get<Functional>(l), std::get<Functional>(r));
            if (std::holds_alternative<AlgebraElement>(l)) {
                const AlgebraElement& a = std::get<AlgebraElement>(l);
                if (std::holds_alternative<AlgebraElement>(r))
                    return g.A.mul(a, std::get<AlgebraElement>(r));
                if (std::holds_alternative<WedgeForm>(r))
                    return left_multiply(g, a, std::get<WedgeForm>(r));
                if (std::holds_alternative<TensorForm>(r))
                    return left_multiply(g, a, std::get<TensorForm>(r));
                if (std::holds_alternative<VectorField>(r))
                    return left_multiply_vector(g, a, std::get<VectorField>(r));
            }
            if (std::holds_alternative<WedgeForm>(l) && std::holds_alternative<AlgebraElement>(r))
                return right_multiply(g, std::get<WedgeForm>(l), std::get<AlgebraElement>(r));
            if (std::holds_alternative<TensorForm>(l) && std::holds_alternative<AlgebraElement>(r))
                return right_multiply(g, std::get<TensorForm>(l), std::get<AlgebraElement>(r));
            if (std::holds_alternative<VectorField>(l) && std::holds_alternative<AlgebraElement>(r))
                return right_multiply_vector(g, std::get<VectorField>(l),
                                             std::get<AlgebraElement>(r));
            if (std::holds_alternative<TensorVector>(l) && std::holds_alternative<AlgebraElement>(r))
                return box_vector(g, std::get<TensorVector>(l), std::get<AlgebraElement>(r));
            throw EvalError("no product defined for these operands");
        }
        case Expr::Kind::Div: {
            Value l = eval_expr(ctx, e->args[0]);
            Value r = eval_expr(ctx, e->args[1]);
            if (std::holds_alternative<QScalar>(l) && std::holds_alternative<QScalar>(r)) {
                if (std::get<QScalar>(r).is_zero()) throw EvalError("division by zero");
                return std::get<QScalar>(l) / std::get<QScalar>(r);
            }
            throw EvalError("'/' is defined for scalars only");
        }
        case Expr::Kind::Pow: {
            Value base = eval_expr(ctx, e->args[0]);
            if (std::holds_alternative<QScalar>(base))
                return std::get<QScalar>(base).pow(e->exponent);
            throw EvalError("'^' is defined for scalars only");
        }
        case Expr::Kind::Call: {
            const std::string& n = e->name;
            auto arity = [&](std::size_t k) {
                if (e->args.size() != k)
                    throw EvalError(n + ": expected " + std::to_string(k) + " argument(s)");
            };
            if (n == "d") {
                arity(1);
                return exterior_d(g, b, WedgeForm::scalar(
                                             as_element(eval_expr(ctx, e->args[0]), "d")));
            }
            if (n == "dext") {
                arity(1);
                return exterior_d(g, b, as_form(ctx, eval_expr(ctx, e->args[0]), "dext"));
            }
            if (n == "P") {
                arity(1);
                WedgeForm f = as_form(ctx, eval_expr(ctx, e->args[0]), "P");
                if (f.degree != 1) throw EvalError("P: a 1-form is expected");
                return WedgeForm::from_one_form(project_P(g, f.to_one_form(g.n)));
            }
            if (n == "bracket") {
                arity(2);
                Value v = eval_expr(ctx, e->args[0]);
                WedgeForm f = as_form(ctx, eval_expr(ctx, e->args[1]), "bracket");
                if (!std::holds_alternative<VectorField>(v) || f.degree != 1)
                    throw EvalError("bracket: (vector field, 1-form) expected");
                return bracket(g, std::get<VectorField>(v), f.to_one_form(g.n));
            }
            if (n == "gbracket") {
                arity(2);
                TensorVector v = as_tensor_vector(eval_expr(ctx, e->args[0]), "gbracket");
                TensorForm t = as_tensor_form(ctx, eval_expr(ctx, e->args[1]), "gbracket");
                return general_bracket(g, v, t);
            }
            if (n == "tensor") {
                arity(2);
                Value l = eval_expr(ctx, e->args[0]);
                Value r = eval_expr(ctx, e->args[1]);
                if (std::holds_alternative<VectorField>(l) ||
                    std::holds_alternative<TensorVector>(l)) {
                    TensorVector a = as_tensor_vector(l, "tensor");
                    TensorVector bvec = as_tensor_vector(r, "tensor");
                    // concatenation with the left-module coefficients in front
                    TensorVector out;
                    out.degree = a.degree + bvec.degree;
                    const MultiIndex shift = mi_pow(g.n, bvec.degree);
                    for (const auto& [wa, ca] : a.c)
                        for (const auto& [wb, cb] : bvec.c) {
                            // move cb's coefficient left through a's slots
                            TensorVector tmp;
                            tmp.degree = a.degree;
                            tmp.add(wa, ca);
                            TensorVector moved = box_vector(g, tmp, cb);
                            for (const auto& [wa2, c2] : moved.c)
                                out.add(wa2 * shift + wb, c2);
                        }
                    return out;
                }
                TensorForm a = as_tensor_form(ctx, l, "tensor");
                TensorForm bb = as_tensor_form(ctx, r, "tensor");
                return tensor_product(g, a, bb);
            }
            if (n == "wedge") {
                arity(2);
                return wedge(g, b, as_form(ctx, eval_expr(ctx, e->args[0]), "wedge"),
                             as_form(ctx, eval_expr(ctx, e->args[1]), "wedge"));
            }
            if (n == "conv") {
                arity(2);
                Value l = eval_expr(ctx, e->args[0]);
                Value r = eval_expr(ctx, e->args[1]);
                if (std::holds_alternative<Functional>(l) && std::holds_alternative<Functional>(r))
                    return Functional::conv(std::get<Functional>(l), std::get<Functional>(r));
                if (std::holds_alternative<Functional>(l))
                    return std::get<Functional>(l).conv_left(g.A, g.B,
                                                             as_element(r, "conv"));
                throw EvalError("conv: functionals expected");
            }
            if (n == "twist") {
                arity(2);
                if (e->args[0]->kind != Expr::Kind::Ident ||
                    (e->args[0]->name != "S" && e->args[0]->name != "Sinv"))
                    throw EvalError("twist: first argument must be S or Sinv");
                Value f = eval_expr(ctx, e->args[1]);
                if (!std::holds_alternative<Functional>(f))
                    throw EvalError("twist: functional expected");
                return Functional::twist(std::get<Functional>(f), e->args[0]->name == "Sinv");
            }
            if (n == "i" || n == "lie") {
                arity(2);
                Value v = eval_expr(ctx, e->args[0]);
                WedgeForm f = as_form(ctx, eval_expr(ctx, e->args[1]), n);
                if (!std::holds_alternative<VectorField>(v))
                    throw EvalError(n + ": vector field expected");
                return n == "i" ? contract(g, b, std::get<VectorField>(v), f)
                                : lie(g, b, std::get<VectorField>(v), f);
            }
            if (n == "lieR") {
                if (e->args.size() < 2) throw EvalError("lieR: (index..., form) expected");
                std::vector<int> group;
                for (std::size_t k = 0; k + 1 < e->args.size(); ++k) {
                    if (e->args[k]->kind != Expr::Kind::Number)
                        throw EvalError("lieR: literal indices expected");
                    group.push_back(static_cast<int>(e->args[k]->number.num().to_i64()));
                }
                int idx = ctx.resolve_basis_index(group, "lieR");
                return lie_right(g, idx, as_form(ctx, eval_expr(ctx, e->args.back()), "lieR"));
            }
            if (n == "DI") {
                if (e->args.size() < 3) throw EvalError("DI: (i..., k..., expr) expected");
                std::vector<int> lit;
                for (std::size_t k = 0; k + 1 < e->args.size(); ++k) {
                    if (e->args[k]->kind != Expr::Kind::Number)
                        throw EvalError("DI: literal indices expected");
                    lit.push_back(static_cast<int>(e->args[k]->number.num().to_i64()));
                }
                int i, k;
                if (lit.size() == 2) {
                    i = ctx.resolve_basis_index({lit[0]}, "DI");
                    k = ctx.resolve_basis_index({lit[1]}, "DI");
                } else if (lit.size() == 4) {
                    i = ctx.resolve_basis_index({lit[0], lit[1]}, "DI");
                    k = ctx.resolve_basis_index({lit[2], lit[3]}, "DI");
                } else {
                    throw EvalError("DI: two flat or two pair indices expected");
                }
                AlgebraElement a = as_element(eval_expr(ctx, e->args.back()), "DI");
                return WedgeForm::from_one_form(defect_index(g, i, k, a).value);
            }
            if (n == "delta") {
                arity(1);
                auto factors = dsl_detail::op_word_factors(ctx, e->args[0]);
                DeltaSum acc = delta_first_order(factors.at(0));
                for (std::size_t k = 1; k < factors.size(); ++k)
                    acc = delta_product(g, b, acc, delta_first_order(factors[k]));
                return acc;
            }
            if (n == "eps") {
                arity(0);
                return Functional::eps();
            }
            throw EvalError("unknown function '" + n + "'");
        }
    }
    throw EvalError("unhandled expression");
}

// ---------------------------------------------------------------------------
// printing values (report output)

inline std::string form_to_string(const EvalContext& ctx, int degree,
                                  const std::map<MultiIndex, AlgebraElement>& c,
                                  const char* sep, const char* basis_name) {
    if (c.empty()) return "0";
    const int m = ctx.g.B.m();
    std::string out;
    for (const auto& [w, e] : c) {
        if (!out.empty()) out += " + ";
        std::string wordpart;
        auto digits = mi_digits(ctx.g.n, w, degree);
        for (int s = 0; s < degree; ++s) {
            if (s) wordpart += sep;
            int i1 = digits[static_cast<std::size_t>(s)] / m + 1;
            int i2 = digits[static_cast<std::size_t>(s)] % m + 1;
            wordpart += std::string(basis_name) + "[" + std::to_string(i1) + "," +
                        std::to_string(i2) + "]";
        }
        if (degree == 0) {
            out += "(" + ctx.g.A.to_string(e) + ")";
        } else {
            out += wordpart + " (" + ctx.g.A.to_string(e) + ")";
        }
    }
    return out;
}

inline std::string value_to_string(const EvalContext& ctx, const Value& v) {
    if (auto* s = std::get_if<QScalar>(&v)) return s->to_string();
    if (auto* a = std::get_if<AlgebraElement>(&v)) return ctx.g.A.to_string(*a);
    if (auto* f = std::get_if<WedgeForm>(&v)) return form_to_string(ctx, f->degree, f->c, " ^ ", "omega");
    if (auto* t = std::get_if<TensorForm>(&v))
        return form_to_string(ctx, t->degree, t->c, " (x) ", "omega");
    if (auto* tv = std::get_if<TensorVector>(&v)) {
        if (tv->is_zero()) return "0";
        std::string out;
        const int m = ctx.g.B.m();
        for (const auto& [w, e] : tv->c) {
            if (!out.empty()) out += " + ";
            out += "(" + ctx.g.A.to_string(e) + ") ";
            auto digits = mi_digits(ctx.g.n, w, tv->degree);
            for (int s = 0; s < tv->degree; ++s) {
                if (s) out += " (x) ";
                out += "t[" + std::to_string(digits[static_cast<std::size_t>(s)] / m + 1) + "," +
                       std::to_string(digits[static_cast<std::size_t>(s)] % m + 1) + "]";
            }
        }
        return out;
    }
    if (auto* vf = std::get_if<VectorField>(&v)) {
        if (vf->is_zero()) return "0";
        std::string out;
        const int m = ctx.g.B.m();
        for (int i = 0; i < vf->dim(); ++i) {
            const AlgebraElement& e = vf->a[static_cast<std::size_t>(i)];
            if (e.is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + ctx.g.A.to_string(e) + ") t[" + std::to_string(i / m + 1) + "," +
                   std::to_string(i % m + 1) + "]";
        }
        return out;
    }
    if (std::get_if<Functional>(&v)) return "<functional>";
    if (auto* d = std::get_if<DeltaSum>(&v)) {
        std::string out;
        for (const auto& term : *d) {
            if (!out.empty()) out += " + ";
            std::string legs;
            auto leg = [&](const std::vector<CAtom>& atoms) {
                std::string s;
                for (const auto& ca : atoms) {
                    if (!s.empty()) s += " ";
                    if (!(ca.coeff == AlgebraElement::unit()))
                        s += "(" + ctx.g.A.to_string(ca.coeff) + ") ";
                    s += atom_name(ca.atom);
                }
                return s.empty() ? std::string("1") : s;
            };
            if (!(term.front.degree == 0 && term.front.c.count(0) &&
                  term.front.c.at(0) == AlgebraElement::unit() && term.front.c.size() == 1))
                legs += "[" + form_to_string(ctx, term.front.degree, term.front.c, " ^ ", "omega") +
                        "] ";
            legs += leg(term.left) + " (x) " + leg(term.right);
            out += legs;
        }
        return out.empty() ? "0" : out;
    }
    return "?";
}

}  // namespace qcartan
