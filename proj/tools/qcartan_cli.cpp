// qcartan: batch verifier for bicovariant differential calculus instances.
//
//   qcartan emit-instance --output gl_q2.json
//   qcartan verify --instance gl_q2.json --suite all --report text
//   qcartan eval --instance gl_q2.json --expr "bracket(t[1,1], omega[1,1])"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qcartan/frt.hpp"
#include "qcartan/io.hpp"
#include "qcartan/suite.hpp"

using namespace qcartan;

namespace {

std::optional<Rational> parse_q(const std::string& s) {
    if (s.empty()) return std::nullopt;
    try {
        return Rational::from_string(s);
    } catch (const std::exception&) {
        throw ConfigError("invalid rational for --q: '" + s + "'");
    }
}

int run_verify(const std::string& instance_path, const std::string& suite,
               const std::string& q_text, const std::string& norm_text,
               const std::string& report_kind, int degree_cap, const std::string& output) {
    SuiteOptions opt;
    opt.q0 = parse_q(q_text);
    opt.degree_cap = degree_cap;
    if (norm_text == "lambda")
        opt.norm = Normalization::Lambda;
    else if (norm_text == "raw")
        opt.norm = Normalization::Raw;
    else
        throw ConfigError("--normalization must be 'lambda' or 'raw'");
    if (degree_cap < 2 || degree_cap > 6)
        throw ConfigError("--degree-cap must lie between 2 and 6");

    InstanceConfig cfg = load_instance_file(instance_path);
    SuiteRunner runner(std::move(cfg), opt);

    Report rep;
    if (suite == "all") {
        rep = runner.run_all();
    } else {
        rep = runner.run(suite);
    }

    std::string text;
    if (report_kind == "json") {
        text = report_to_json(rep, instance_path, suite, opt).dump(2) + "\n";
    } else if (report_kind == "text") {
        text = report_to_text(rep);
    } else {
        throw ConfigError("--report must be 'text' or 'json'");
    }
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) throw ConfigError("cannot write report to '" + output + "'");
        out << text;
    }
    return rep.all_pass() ? 0 : 1;
}

int run_eval(const std::string& instance_path, const std::string& expr_text,
             const std::string& q_text, const std::string& norm_text, int degree_cap) {
    SuiteOptions opt;
    opt.q0 = parse_q(q_text);
    opt.degree_cap = degree_cap;
    opt.norm = norm_text == "raw" ? Normalization::Raw : Normalization::Lambda;
    InstanceConfig cfg = load_instance_file(instance_path);
    Geometry g = Geometry::build(std::move(cfg), opt.norm, opt.q0);
    BraidData b = BraidData::build(g, std::max(opt.degree_cap, 4));
    EvalContext ctx{g, b, opt.q0};
    ExprPtr ast = Parser::parse(expr_text);
    Value v = eval_expr(ctx, ast);
    std::cout << value_to_string(ctx, v) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for bicovariant differential calculus on quantum groups"};
    app.require_subcommand(1);

    std::string instance_path, suite = "all", q_text, norm_text = "lambda";
    std::string report_kind = "text", output, expr_text;
    int degree_cap = 4;

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--instance", instance_path, "instance JSON file")->required();
    verify->add_option("--suite", suite, "suite name or 'all'");
    verify->add_option("--q", q_text, "specialize the deformation parameter at a rational");
    verify->add_option("--normalization", norm_text, "chi normalization: lambda | raw");
    verify->add_option("--report", report_kind, "report format: text | json");
    verify->add_option("--degree-cap", degree_cap, "wedge degree cap (default 4)");
    verify->add_option("--output", output, "write the report to a file");

    CLI::App* emit = app.add_subcommand("emit-instance", "write the bundled GL_q(2) instance");
    std::string emit_output = "gl_q2.json";
    emit->add_option("--output", emit_output, "output path (default gl_q2.json)");

    CLI::App* evalc = app.add_subcommand("eval", "evaluate one expression against an instance");
    evalc->add_option("--instance", instance_path, "instance JSON file")->required();
    evalc->add_option("--expr", expr_text, "expression to evaluate")->required();
    evalc->add_option("--q", q_text, "specialize the deformation parameter");
    evalc->add_option("--normalization", norm_text, "chi normalization: lambda | raw");
    evalc->add_option("--degree-cap", degree_cap, "wedge degree cap (default 4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            bool known = suite == "all";
            for (const auto& n : SuiteRunner::suite_names()) known = known || n == suite;
            if (!known) throw ConfigError("unknown suite '" + suite + "'");
            return run_verify(instance_path, suite, q_text, norm_text, report_kind, degree_cap,
                              output);
        }
        if (emit->parsed()) {
            save_instance_file(build_glq2(), emit_output);
            std::cout << "wrote " << emit_output << "\n";
            return 0;
        }
        if (evalc->parsed()) {
            return run_eval(instance_path, expr_text, q_text, norm_text, degree_cap);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const EvalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
