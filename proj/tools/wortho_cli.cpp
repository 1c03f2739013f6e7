#include <wortho/json.hpp>
#include <wortho/svg.hpp>
#include <wortho/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace wortho;

enum Exit { ok = 0, verification_failed = 1, usage = 2, numeric = 3 };

struct RunConfig {
    std::string measure = "one_minus_x";
    int n = 12;
    std::string out;
    std::string format = "csv";
    std::optional<double> tol;
    std::string seed = "0x5EED";

    int m = 4;
    std::vector<double> x;
    std::vector<double> t{0.0, 0.3, 0.9};
    std::vector<int> orders{3, 4, 5};
    int samples = 800;
    bool zeros = false;
    std::string suite = "all";
};

// Fields present in the config file fill everything the command line left unset.
void apply_config_file(const std::string& path, RunConfig& c, const CLI::App& sub) {
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw precondition_error("config file " + path + ": " + e.what());
    }
    require(j.is_object(), "config file must hold a JSON object");
    auto unset = [&](const char* flag) { return sub.count(flag) == 0; };
    try {
        if (j.contains("measure") && unset("--measure")) c.measure = j["measure"].is_string() ? j["measure"].get<std::string>() : j["measure"].dump();
        if (j.contains("n") && unset("--n")) c.n = j["n"].get<int>();
        if (j.contains("out") && unset("--out")) c.out = j["out"].get<std::string>();
        if (j.contains("format") && unset("--format")) c.format = j["format"].get<std::string>();
        if (j.contains("tol") && unset("--tol")) c.tol = j["tol"].get<double>();
        if (j.contains("seed") && unset("--seed")) c.seed = j["seed"].is_string() ? j["seed"].get<std::string>() : std::to_string(j["seed"].get<std::uint64_t>());
        if (j.contains("m") && unset("--m")) c.m = j["m"].get<int>();
        if (j.contains("x") && unset("--x")) c.x = j["x"].get<std::vector<double>>();
        if (j.contains("t") && unset("--t")) c.t = j["t"].get<std::vector<double>>();
        if (j.contains("orders") && unset("--orders")) c.orders = j["orders"].get<std::vector<int>>();
        if (j.contains("samples") && unset("--samples")) c.samples = j["samples"].get<int>();
        if (j.contains("zeros") && unset("--zeros")) c.zeros = j["zeros"].get<bool>();
        if (j.contains("suite") && unset("--suite")) c.suite = j["suite"].get<std::string>();
    } catch (const json::exception& e) {
        throw precondition_error("config file " + path + ": " + e.what());
    }
}

Measure load_measure(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') {
        try {
            return measure_from_json(json::parse(spec));
        } catch (const json::parse_error& e) {
            throw precondition_error(std::string("--measure: ") + e.what());
        }
    }
    for (const char* name : {"one_minus_x", "lebesgue", "chebyshev1"})
        if (spec == name) return measure_from_json(json{{"kind", "builtin"}, {"name", name}});
    std::ifstream in(spec);
    if (!in) throw precondition_error("--measure: \"" + spec + "\" is neither inline JSON, a builtin name nor a readable file");
    try {
        return measure_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw precondition_error("--measure " + spec + ": " + e.what());
    }
}

std::uint64_t parse_seed(const std::string& s) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used, 16);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw precondition_error("--seed: expected a hexadecimal integer, got \"" + s + "\"");
    }
}

void validate(const RunConfig& c, const std::string& command) {
    require(c.n >= 1 && c.n <= 40, "--n must be in 1..40");
    require(c.format == "csv" || c.format == "json" || c.format == "svg", "--format must be csv, json or svg");
    require(c.format != "svg" || command == "plot", "--format svg is only produced by plot");
    require(command != "plot" || c.format == "svg", "plot only writes svg");
    require(!c.tol || *c.tol > 0.0, "--tol must be positive");
    require(c.samples >= 2, "--samples must be at least 2");
    if (command == "eval" || command == "zeros" || command == "quad") require(c.m >= 0 && c.m <= c.n, "--m must lie in 0..n");
    if (command == "quad") require(c.m >= 1, "--m must be at least 1 for quad");
    for (double v : c.x) require(v >= -1.0 && v <= 1.0, "--x values must lie in [-1, 1]");
    for (double v : c.t) require(v >= 0.0 && v < 1.0, "--t values must lie in [0, 1)");
    if (command == "plot")
        for (int o : c.orders) require(o >= 0 && o <= 40, "--orders must lie in 0..40");
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw precondition_error("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

int cmd_coeffs(const RunConfig& c, const Measure& psi, std::ostream& os) {
    const RecurrenceTable t = generate(psi, c.n);
    if (c.format == "json") {
        json j = t;
        j["measure"] = measure_to_json(psi);
        os << j.dump(2) << '\n';
    } else {
        write_csv(os, t);
    }
    return ok;
}

int cmd_eval(const RunConfig& c, const Measure& psi, std::ostream& os) {
    const RecurrenceTable t = generate(psi, std::max(c.m, 1));
    std::vector<double> xs = c.x;
    if (xs.empty())
        for (int k = 0; k <= 20; ++k) xs.push_back(-1.0 + 0.1 * k);
    if (c.format == "json") {
        json pts = json::array();
        for (double x : xs) pts.push_back({{"x", x}, {"value", t.eval(c.m, x)}});
        os << json{{"function", t.function(c.m)}, {"points", pts}}.dump(2) << '\n';
    } else {
        os << "x,value\n";
        for (double x : xs) os << detail::fmt15(x) << ',' << detail::fmt15(t.eval(c.m, x)) << '\n';
    }
    return ok;
}

int cmd_zeros(const RunConfig& c, const Measure& psi, std::ostream& os) {
    const RecurrenceTable t = generate(psi, std::max(c.m, 1));
    const ZeroSet z = find_zeros(t, c.m);
    if (c.format == "json") os << json(z).dump(2) << '\n';
    else write_csv(os, z);
    return ok;
}

int cmd_quad(const RunConfig& c, const Measure& psi, std::ostream& os) {
    const RecurrenceTable t = generate(psi, c.m);
    const QuadratureRule r = build_rule(psi, t, c.m, c.tol.value_or(1e-9));
    if (c.format == "json") os << json(r).dump(2) << '\n';
    else write_csv(os, r);
    return ok;
}

int cmd_verblunsky(const RunConfig& c, const Measure& psi, std::ostream& os) {
    const RecurrenceTable t = generate(psi, c.n);
    ChainSeqData chain;
    if (psi.integrable()) {
        chain = chain_from_measure(psi, t);
    } else {
        std::cerr << "note: (1-x^2)^(-1/2) dpsi is not integrable; M_1 taken from backward truncation\n";
        chain = chain_parameters(std::vector<double>(t.alpha_hat.begin() + 2, t.alpha_hat.end()));
    }
    std::vector<VerblunskySeq> seqs;
    for (double tt : c.t) seqs.push_back(verblunsky(chain, t.beta_hat, tt, c.n));
    if (c.format == "json") {
        os << json(seqs).dump(2) << '\n';
    } else {
        os << "t,m,re,im,abs\n";
        for (const auto& v : seqs)
            for (std::size_t m = 0; m < v.a.size(); ++m)
                os << detail::fmt15(v.t) << ',' << m << ',' << detail::fmt15(v.a[m].real()) << ',' << detail::fmt15(v.a[m].imag()) << ','
                   << detail::fmt15(std::abs(v.a[m])) << '\n';
    }
    return ok;
}

json report_json(const SuiteReport& r) {
    json checks = json::array();
    for (const Check& k : r.checks) {
        const char* kind = k.kind == Check::Kind::at_most ? "at_most" : k.kind == Check::Kind::above ? "above" : "note";
        checks.push_back({{"name", k.name}, {"value", k.value}, {"threshold", k.threshold}, {"kind", kind}, {"pass", k.pass}, {"detail", k.detail}});
    }
    char seed[24];
    std::snprintf(seed, sizeof seed, "0x%llX", static_cast<unsigned long long>(r.seed));
    return json{{"suite", r.suite}, {"measure", r.measure}, {"N", r.N}, {"seed", seed}, {"pass", r.passed()}, {"checks", checks}};
}

int cmd_verify(const RunConfig& c, const Measure& psi, std::ostream& os) {
    VerifyOptions o;
    o.N = c.n;
    o.tol = c.tol;
    o.seed = parse_seed(c.seed);
    std::vector<std::string> suites;
    if (c.suite == "all") suites = suite_names();
    else suites.push_back(c.suite);

    bool all = true;
    json reports = json::array();
    for (const auto& s : suites) {
        const SuiteReport r = run_suite(s, psi, o);
        all = all && r.passed();
        reports.push_back(report_json(r));
        std::printf("[%s] %s on %s, N = %d, seed 0x%llX\n", r.passed() ? "PASS" : "FAIL", r.suite.c_str(), r.measure.c_str(), r.N,
                    static_cast<unsigned long long>(r.seed));
        for (const Check& k : r.checks) {
            const char* tag = k.kind == Check::Kind::note ? "note" : k.pass ? "ok" : "FAIL";
            if (k.kind == Check::Kind::note) std::printf("  %-4s %s: %.6g", tag, k.name.c_str(), k.value);
            else std::printf("  %-4s %s: %.3e %s %.1e", tag, k.name.c_str(), k.value, k.kind == Check::Kind::at_most ? "<=" : ">", k.threshold);
            if (!k.detail.empty()) std::printf(" (%s)", k.detail.c_str());
            std::printf("\n");
        }
    }
    std::fflush(stdout);
    if (!c.out.empty()) os << json{{"pass", all}, {"reports", reports}}.dump(2) << '\n';
    return all ? ok : verification_failed;
}

int cmd_plot(const RunConfig& c, const Measure& psi, std::ostream& os) {
    require(!c.orders.empty(), "--orders is empty");
    const int top = *std::max_element(c.orders.begin(), c.orders.end());
    const RecurrenceTable t = generate(psi, std::max(top, 1));
    PlotOptions p;
    p.samples = c.samples;
    p.mark_zeros = c.zeros;
    p.title = psi.describe();
    write_svg(os, t, c.orders, p);
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct, evaluate and verify the W_m orthogonal functions of a measure on [-1, 1]"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path;

    auto common = [&](CLI::App* s, std::string default_format) {
        s->add_option("--config", config_path, "JSON config file; command-line flags take precedence");
        s->add_option("--measure", cfg.measure, "measure: inline JSON, builtin name or path to a JSON file");
        s->add_option("--n", cfg.n, "table depth N");
        s->add_option("--out", cfg.out, "output path (default stdout)");
        s->add_option("--format", cfg.format, "csv, json or svg")->default_str(default_format);
        s->add_option("--tol", cfg.tol, "tolerance override");
        s->add_option("--seed", cfg.seed, "hexadecimal seed for randomized checks");
    };

    auto* coeffs = app.add_subcommand("coeffs", "recurrence coefficients beta_hat, alpha_hat, rho_hat");
    common(coeffs, "csv");
    auto* eval = app.add_subcommand("eval", "values of W_m");
    common(eval, "csv");
    eval->add_option("--m", cfg.m, "order");
    eval->add_option("--x", cfg.x, "evaluation points in [-1, 1]");
    auto* zeros = app.add_subcommand("zeros", "zeros of W_m");
    common(zeros, "csv");
    zeros->add_option("--m", cfg.m, "order");
    auto* quad = app.add_subcommand("quad", "quadrature rule at the zeros of W_m");
    common(quad, "csv");
    quad->add_option("--m", cfg.m, "order");
    auto* verb = app.add_subcommand("verblunsky", "Verblunsky coefficients of the measures mu^(t)");
    common(verb, "csv");
    verb->add_option("--t", cfg.t, "point masses t in [0, 1)");
    auto* verify = app.add_subcommand("verify", "run invariant suites");
    common(verify, "csv");
    verify->add_option("--suite,suite", cfg.suite, "orthogonality, quadrature, chain, opuc, bridge, zeros or all");
    auto* plot = app.add_subcommand("plot", "SVG plot of W_m over [-1, 1]");
    common(plot, "svg");
    plot->add_option("--orders", cfg.orders, "orders to draw");
    plot->add_option("--samples", cfg.samples, "sample points per curve");
    plot->add_flag("--zeros", cfg.zeros, "mark the zeros");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    if (command == "plot" && sub->count("--format") == 0) cfg.format = "svg";
    try {
        if (!config_path.empty()) apply_config_file(config_path, cfg, *sub);
        validate(cfg, command);
        parse_seed(cfg.seed);
        if (command == "verify" && cfg.suite != "all") {
            const auto& names = suite_names();
            require(std::find(names.begin(), names.end(), cfg.suite) != names.end(), "unknown suite; expected orthogonality, quadrature, chain, opuc, bridge, zeros or all");
        }
        const Measure psi = load_measure(cfg.measure);
        Output out(cfg.out);
        std::ostream& os = out.stream();
        if (command == "coeffs") return cmd_coeffs(cfg, psi, os);
        if (command == "eval") return cmd_eval(cfg, psi, os);
        if (command == "zeros") return cmd_zeros(cfg, psi, os);
        if (command == "quad") return cmd_quad(cfg, psi, os);
        if (command == "verblunsky") return cmd_verblunsky(cfg, psi, os);
        if (command == "verify") return cmd_verify(cfg, psi, os);
        return cmd_plot(cfg, psi, os);
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return numeric;
    }
}
