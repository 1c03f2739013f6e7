#pragma once

// JSON forms of the value types and the measure configuration object
//   {"kind":"builtin","name":"gegenbauer_eta","lambda":0.75,"eta":0.5,
//    "quad":{"tolerance":1e-12,"panels":32,"max_refinements":200}}
//   {"kind":"expression","weight":"1 - x","integrable":true}

#include <wortho/error.hpp>
#include <wortho/measure.hpp>
#include <wortho/omega.hpp>
#include <wortho/opuc.hpp>
#include <wortho/quadrature.hpp>
#include <wortho/recurrence.hpp>
#include <wortho/selfinv.hpp>
#include <wortho/zeros.hpp>

#include <json.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace wortho {

using nlohmann::json;

inline void to_json(json& j, const OmegaFunction& f) {
    j = json{{"m", f.degree_bound()},
             {"b0", std::vector<double>(f.b0().begin(), f.b0().end())},
             {"b1", std::vector<double>(f.b1().begin(), f.b1().end())}};
}

inline void from_json(const json& j, OmegaFunction& f) {
    f = OmegaFunction(j.at("m").get<int>(), j.at("b0").get<std::vector<double>>(), j.at("b1").get<std::vector<double>>());
}

inline void to_json(json& j, const SelfInversivePoly& q) {
    std::vector<double> re, im;
    for (const cplx& c : q.coeffs()) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    j = json{{"m", q.degree()}, {"re", re}, {"im", im}};
}

inline void from_json(const json& j, SelfInversivePoly& q) {
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    const int m = j.at("m").get<int>();
    require(re.size() == im.size() && re.size() == static_cast<std::size_t>(m) + 1, "SelfInversivePoly JSON: re/im must have m+1 entries");
    std::vector<cplx> k;
    for (std::size_t i = 0; i < re.size(); ++i) k.emplace_back(re[i], im[i]);
    q = SelfInversivePoly(std::move(k));
}

inline void to_json(json& j, const VerblunskySeq& v) {
    json a = json::array();
    for (const cplx& c : v.a) a.push_back({{"re", c.real()}, {"im", c.imag()}});
    j = json{{"t", v.t}, {"a", a}};
}

inline void from_json(const json& j, VerblunskySeq& v) {
    v = VerblunskySeq{};
    v.t = j.at("t").get<double>();
    for (const auto& e : j.at("a")) v.a.emplace_back(e.at("re").get<double>(), e.at("im").get<double>());
}

inline void to_json(json& j, const RecurrenceTable& t) {
    json rows = json::array();
    for (int m = 0; m <= t.N; ++m) {
        json r{{"m", m}, {"rho_hat", t.rho(m)}};
        r["beta_hat"] = m >= 1 ? json(t.beta(m)) : json(nullptr);
        r["alpha_hat"] = m >= 2 ? json(t.alpha(m)) : json(nullptr);
        rows.push_back(r);
    }
    j = json{{"N", t.N},
             {"beta_hat", std::vector<double>(t.beta_hat.begin() + 1, t.beta_hat.begin() + t.N + 1)},
             {"alpha_hat", std::vector<double>(t.alpha_hat.begin() + 2, t.alpha_hat.begin() + t.N + 1)},
             {"rho_hat", t.rho_hat},
             {"rows", rows}};
}

/// Coefficients only; functions and leading data are rebuilt from the recurrence.
inline void from_json(const json& j, RecurrenceTable& t) {
    const int N = j.at("N").get<int>();
    const auto b = j.at("beta_hat").get<std::vector<double>>();
    const auto a = j.at("alpha_hat").get<std::vector<double>>();
    const auto r = j.at("rho_hat").get<std::vector<double>>();
    require(N >= 1 && b.size() == static_cast<std::size_t>(N) && a.size() + 1 == static_cast<std::size_t>(N) &&
                r.size() == static_cast<std::size_t>(N) + 1,
            "RecurrenceTable JSON: inconsistent array lengths");
    t = RecurrenceTable{};
    t.N = N;
    t.beta_hat.assign(static_cast<std::size_t>(N) + 2, 0.0);
    t.alpha_hat.assign(static_cast<std::size_t>(N) + 2, 0.0);
    t.alpha_check.assign(static_cast<std::size_t>(N) + 2, 0.0);
    std::copy(b.begin(), b.end(), t.beta_hat.begin() + 1);
    std::copy(a.begin(), a.end(), t.alpha_hat.begin() + 2);
    t.rho_hat = r;
    t.w.push_back(OmegaFunction::constant(1.0));
    for (int m = 0; m < N; ++m) {
        OmegaFunction next = mul_linear(t.w.back(), 1.0, t.beta_hat[static_cast<std::size_t>(m) + 1]);
        if (m >= 1) next.accumulate(t.w[static_cast<std::size_t>(m) - 1], -t.alpha_hat[static_cast<std::size_t>(m) + 1]);
        t.w.push_back(std::move(next));
    }
    for (const auto& f : t.w) t.leading.push_back(leading_data(f));
}

inline void to_json(json& j, const ZeroSet& z) {
    j = json{{"m", z.m}, {"x", z.x}, {"theta", z.theta}, {"residual", z.residual}};
}

inline void from_json(const json& j, ZeroSet& z) {
    z = ZeroSet{};
    z.m = j.at("m").get<int>();
    z.x = j.at("x").get<std::vector<double>>();
    z.theta = j.at("theta").get<std::vector<double>>();
    z.residual = j.at("residual").get<std::vector<double>>();
}

inline void to_json(json& j, const QuadratureRule& r) {
    j = json{{"m", r.m},
             {"parity", r.parity == ParityCase::even ? "even" : "odd"},
             {"x", r.nodes.x},
             {"theta", r.nodes.theta},
             {"lambda", r.lambda},
             {"lambda_hat", r.lambda_hat},
             {"lambda_tilde", r.lambda_tilde}};
}

inline void from_json(const json& j, QuadratureRule& r) {
    r = QuadratureRule{};
    r.m = j.at("m").get<int>();
    r.parity = j.at("parity").get<std::string>() == "even" ? ParityCase::even : ParityCase::odd;
    r.nodes.m = r.m;
    r.nodes.x = j.at("x").get<std::vector<double>>();
    r.nodes.theta = j.at("theta").get<std::vector<double>>();
    r.lambda = j.at("lambda").get<std::vector<double>>();
    r.lambda_hat = j.at("lambda_hat").get<std::vector<double>>();
    r.lambda_tilde = j.at("lambda_tilde").get<std::vector<double>>();
}

inline json measure_to_json(const Measure& m) {
    json j;
    if (m.kind() == Measure::Kind::expression) {
        j = json{{"kind", "expression"}, {"weight", m.weight_expr()->source()}, {"integrable", m.integrable()}};
    } else {
        j = json{{"kind", "builtin"}, {"name", m.name()}};
        if (m.kind() == Measure::Kind::gegenbauer_eta) {
            j["lambda"] = m.lambda();
            j["eta"] = m.eta();
        }
    }
    j["quad"] = json{{"tolerance", m.quad().tolerance}, {"panels", m.quad().panels}, {"max_refinements", m.quad().max_refinements}};
    return j;
}

/// Measure from its configuration object; configuration problems raise precondition_error.
inline Measure measure_from_json(const json& j) {
    try {
        require(j.is_object(), "measure config must be a JSON object");
        QuadSettings q;
        if (j.contains("quad")) {
            const json& jq = j.at("quad");
            q.tolerance = jq.value("tolerance", q.tolerance);
            q.panels = jq.value("panels", q.panels);
            q.max_refinements = jq.value("max_refinements", q.max_refinements);
        }
        const std::string kind = j.value("kind", std::string("builtin"));
        if (kind == "expression") {
            require(j.contains("weight"), "expression measure needs \"weight\"");
            return Measure::expression(j.at("weight").get<std::string>(), j.value("integrable", false), Measure::lebesgue().with_quad(q).quad());
        }
        require(kind == "builtin", "measure kind must be \"builtin\" or \"expression\"");
        const std::string name = j.at("name").get<std::string>();
        Measure m = Measure::lebesgue();
        if (name == "one_minus_x") m = Measure::one_minus_x();
        else if (name == "lebesgue") m = Measure::lebesgue();
        else if (name == "chebyshev1") m = Measure::chebyshev1();
        else if (name == "gegenbauer_eta") m = Measure::gegenbauer_eta(j.value("lambda", 1.0), j.value("eta", 0.0));
        else throw precondition_error("unknown builtin measure \"" + name + "\"");
        return m.with_quad(q);
    } catch (const json::exception& e) {
        throw precondition_error(std::string("measure config: ") + e.what());
    }
}

} // namespace wortho
