// Command-line front end: parses a JSON config, dispatches to the library and
// prints a deterministic report (text or JSON). Exit codes: 0 pass, 1 check
// failure, 2 input error.

#include "qdu/config.hpp"
#include "qdu/gwa.hpp"
#include "qdu/hilbert.hpp"
#include "qdu/iso.hpp"
#include "qdu/skewgroup.hpp"
#include "qdu/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using qdu::Element;
using qdu::Parameters;
using qdu::Preset;
using qdu::Scalar;
using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

struct Outcome {
    std::string verdict;  // pass | fail | unsupported
    Json findings = Json::object();
};

struct Options {
    std::string config;
    std::string other;
    std::string element;
    std::string target;
    std::string preset = "qdu";
    bool json = false;
    bool check = false;
    std::uint64_t seed = 1;
    int trials = 200;
    int max_degree = -1;
    int degree = 2;
    int n = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qdu::InputError("cannot read file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Parameters load(const std::string& path, const char* flag) {
    if (path.empty()) throw qdu::InputError(std::string(flag) + " is required for this command");
    try {
        return qdu::parse_config(read_file(path));
    } catch (const qdu::InputError& e) {
        throw qdu::InputError(path + ": " + e.what());
    }
}

Json number(const mpz_class& z) {
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());
}

Json matrix_json(const qdu::IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string verdict_of(bool ok) { return ok ? "pass" : "fail"; }

int degree_or(const Options& o, int fallback) { return o.max_degree >= 0 ? o.max_degree : fallback; }

// ---------------------------------------------------------------- commands

Outcome cmd_nf(const Options& o) {
    const Parameters p = load(o.config, "--config");
    const auto sys = qdu::build_certified(Preset::QuiverDownUp, p);
    const Element a = Element::parse(p.n, o.element);
    const Element nf = qdu::normal_form(sys, a);
    Outcome out{"pass", Json::object()};
    out.findings["input"] = a.str();
    out.findings["normal_form"] = nf.str();
    out.findings["is_zero"] = nf.is_zero();
    return out;
}

Outcome cmd_basis(const Options& o) {
    const Parameters p = load(o.config, "--config");
    if (o.degree < 0) throw qdu::InputError("--degree must be nonnegative");
    const auto sys = qdu::build_certified(Preset::QuiverDownUp, p);
    const auto rep = qdu::basis_report(sys, static_cast<std::size_t>(o.degree));
    Outcome out{verdict_of(rep.consistent), Json::object()};
    out.findings["degree"] = rep.degree;
    out.findings["size"] = rep.paths.size();
    Json paths = Json::array();
    for (const auto& q : rep.paths) paths.push_back(q.str() + " @" + std::to_string(q.source()));
    out.findings["paths"] = paths;
    out.findings["dimension_matrix"] = matrix_json(rep.dimensions);
    if (rep.matches_closed_shape) out.findings["matches_closed_shape"] = *rep.matches_closed_shape;
    return out;
}

Outcome cmd_hilbert(const Options& o) {
    Preset preset;
    if (o.preset == "qdu") preset = Preset::QuiverDownUp;
    else if (o.preset == "preprojective") preset = Preset::Preprojective;
    else throw qdu::InputError("--preset must be qdu or preprojective");
    Parameters p = o.config.empty() ? Parameters(o.n > 0 ? o.n : 0) : load(o.config, "--config");
    if (!o.config.empty() && o.n > 0 && o.n != p.n) throw qdu::InputError("--n disagrees with the config");
    const int order = degree_or(o, 6);
    if (order < 0 || order > 40) throw qdu::InputError("--max-degree must lie in 0..40");
    Outcome out{"pass", Json::object()};
    out.findings["preset"] = qdu::to_string(preset);
    out.findings["n"] = p.n;
    Json table = Json::array();
    if (o.check) {
        const auto rep = qdu::closed_form_check(preset, p, static_cast<std::size_t>(order));
        for (std::size_t k = 0; k <= rep.order; ++k) {
            Json row;
            row["degree"] = k;
            row["matrix"] = matrix_json(rep.enumerated[k]);
            row["total"] = number(rep.totals[k]);
            row["predicted_total"] = number(rep.expected_totals[k]);
            table.push_back(std::move(row));
        }
        out.findings["degrees"] = table;
        out.findings["series_nonnegative"] = rep.predicted.nonnegative;
        if (rep.first_mismatch) {
            const auto& m = *rep.first_mismatch;
            out.findings["first_mismatch"] = Json{{"degree", m.degree},
                                                  {"row", m.row},
                                                  {"col", m.col},
                                                  {"enumerated", number(m.enumerated)},
                                                  {"predicted", number(m.predicted)}};
        }
        if (rep.first_total_mismatch) out.findings["first_total_mismatch"] = *rep.first_total_mismatch;
        out.verdict = verdict_of(rep.ok());
    } else {
        const auto sys = qdu::build_certified(preset, p);
        for (int k = 0; k <= order; ++k) {
            const auto m = qdu::dimension_matrix(sys, static_cast<std::size_t>(k));
            Json row;
            row["degree"] = k;
            row["matrix"] = matrix_json(m);
            row["total"] = number(m.sum());
            table.push_back(std::move(row));
        }
        out.findings["degrees"] = table;
    }
    out.findings["closed_form"] = preset == Preset::QuiverDownUp ? "(I - M t + M t^3 - I t^4)^{-1}, totals n*floor((k+2)^2/4)"
                                                                 : "(I - M t + I t^2)^{-1}, totals n*(k+1)";
    if (preset == Preset::Preprojective)
        out.findings["note"] = "total series is n/(1-t)^2; enumeration is the reference for the printed totals";
    return out;
}

Json confluence_json(const Parameters& p, bool& ok) {
    const auto rep = qdu::check_confluence(qdu::ReductionSystem::build(Preset::QuiverDownUp, p));
    Json j;
    std::size_t resolved = 0;
    Json bad = Json::array();
    for (const auto& ov : rep.overlaps) {
        if (ov.resolved) {
            ++resolved;
            continue;
        }
        bad.push_back(Json{{"word", ov.word.str() + " @" + std::to_string(ov.word.source())},
                           {"first_rule", ov.first_rule},
                           {"second_rule", ov.second_rule},
                           {"difference", ov.difference.str()}});
    }
    j["overlaps"] = rep.overlaps.size();
    j["resolved"] = resolved;
    j["reduction_depth"] = rep.reduction_depth;
    j["unresolved"] = bad;
    ok = rep.confluent;
    return j;
}

Outcome cmd_confluence(const Options& o) {
    const Parameters p = load(o.config, "--config");
    bool ok = false;
    Outcome out;
    out.findings = confluence_json(p, ok);
    out.verdict = verdict_of(ok);
    return out;
}

Json witness_json(const qdu::IsoWitness& w) {
    return Json{{"orientation", qdu::to_string(w.orientation)},
                {"k", w.shift},
                {"lambda", qdu::scalars_json(w.lambda)},
                {"map", w.map.str()}};
}

Outcome cmd_iso(const Options& o) {
    const Parameters p = load(o.config, "--config");
    const Parameters q = load(o.other, "--other");
    const auto v = qdu::decide_graded_iso(p, q);
    Outcome out;
    out.findings["decision"] = qdu::to_string(v.kind);
    if (!v.note.empty()) out.findings["note"] = v.note;
    if (v.kind == qdu::IsoVerdict::Kind::Unsupported) {
        out.verdict = "unsupported";
        return out;
    }
    out.verdict = "pass";
    if (v.witness) {
        out.findings["witness"] = witness_json(*v.witness);
        out.findings["witness_verified"] = qdu::verify_witness(*v.witness, p, q).ok();
    }
    Json certs = Json::array();
    for (const auto& c : v.certificates) {
        Json cj{{"orientation", qdu::to_string(c.orientation)}, {"k", c.shift}, {"reason", c.reason}};
        if (c.cycle) {
            Json cyc = Json::array();
            for (const auto& rc : c.cycle->cycle)
                cyc.push_back("lambda_" + std::to_string(rc.a) + " = " + qdu::to_string(rc.c) + " * lambda_" +
                              std::to_string(rc.b));
            cj["cycle"] = cyc;
            cj["cycle_ratio"] = qdu::to_string(c.cycle->ratio);
        }
        certs.push_back(std::move(cj));
    }
    if (!certs.empty()) out.findings["certificates"] = certs;
    return out;
}

// ---------------------------------------------------------------- verify

Outcome verify_gwa(const Parameters& p, const Options& o) {
    if (!p.beta_nonzero()) {
        Outcome out{"unsupported", Json::object()};
        out.findings["note"] = "the GWA model needs every beta_i nonzero";
        return out;
    }
    const auto rep = qdu::verify_gwa(p, o.trials, o.seed);
    Outcome out{verdict_of(rep.ok()), Json::object()};
    out.findings["relations_killed"] = rep.relations_killed;
    out.findings["theta_prime_theta_identity"] = rep.theta_prime_theta;
    out.findings["theta_theta_prime_identity"] = rep.theta_theta_prime;
    out.findings["pwd_trials"] = rep.pwd.trials;
    out.findings["pwd_zero_products"] = rep.pwd.zero_products;
    out.findings["pwd_degree_failures"] = rep.pwd.degree_failures;
    if (!rep.pwd.first_failure.empty()) out.findings["pwd_first_failure"] = rep.pwd.first_failure;
    out.findings["failures"] = rep.failures;
    return out;
}

Json weighting_json(const Parameters& p, const qdu::TwistWeights& eta, bool& ok) {
    const auto s = qdu::build_superpotential(p, eta);
    const auto inv = qdu::check_twist_invariance(s.omega, eta);
    const auto dq = qdu::check_derivation_quotient(s.omega, p);
    Json terms = Json::array();
    for (const auto& t : s.terms)
        terms.push_back(Json{{"word", t.word.str()},
                             {"coefficient", qdu::to_string(t.coefficient)},
                             {"period", t.period},
                             {"closure", qdu::to_string(t.closure)}});
    ok = inv.invariant && dq.equal();
    return Json{{"omega", s.omega.str()},
                {"terms", terms},
                {"closes", s.closes()},
                {"twist_invariant", inv.invariant},
                {"twist_defect", inv.defect.str()},
                {"derivative_rank", dq.derivative_rank},
                {"relation_rank", dq.relation_rank},
                {"joint_rank", dq.joint_rank},
                {"span_equal", dq.equal()},
                {"ok", ok}};
}

Outcome verify_superpotential(const Parameters& p) {
    if (!p.beta_nonzero() || !p.gamma_zero()) {
        Outcome out{"unsupported", Json::object()};
        out.findings["note"] = "needs gamma = 0 and every beta_i nonzero";
        return out;
    }
    bool printed_ok = false, derived_ok = false, shifted_ok = false;
    Outcome out;
    out.findings["printed_weights"] = weighting_json(p, qdu::TwistWeights::printed(p), printed_ok);
    out.findings["derived_weights"] = weighting_json(p, qdu::TwistWeights::derived(p), derived_ok);
    out.findings["shifted_weights"] = weighting_json(p, qdu::TwistWeights::shifted(p), shifted_ok);
    out.findings["weights_legend"] = Json{{"printed_weights", "u_i -> beta_{i-1} u_i, d_i -> beta_{i-1} d_i"},
                                          {"derived_weights", "u_i -> beta_i u_i, d_i -> beta_i^{-1} d_i"},
                                          {"shifted_weights", "u_i -> beta_{i-1} u_i, d_i -> beta_{i-1}^{-1} d_i"}};
    out.verdict = verdict_of(printed_ok);
    return out;
}

Json diagonal_json(const qdu::GradedMap& f, const Parameters& p, bool& ok) {
    const auto rep = qdu::check_diagonal_map(f, p, p);
    Json rels = Json::array();
    for (const auto& r : rep.relations) {
        Json rj{{"relation", r.label}, {"in_span", r.in_span}};
        if (r.scalar) rj["scalar"] = qdu::to_string(*r.scalar);
        Json ratios = Json::object();
        for (const auto& [w, c] : r.ratios) ratios[w.str()] = qdu::to_string(c);
        rj["ratios"] = ratios;
        if (!r.in_span) rj["defect"] = r.defect.str();
        rels.push_back(std::move(rj));
    }
    ok = rep.ok();
    return Json{{"map", f.str()}, {"bijective", rep.bijective}, {"relations", rels}, {"ok", ok}};
}

Outcome verify_nakayama(const Parameters& p) {
    if (!p.beta_nonzero()) {
        Outcome out{"unsupported", Json::object()};
        out.findings["note"] = "needs every beta_i nonzero";
        return out;
    }
    bool printed_ok = false, derived_ok = false;
    Outcome out;
    out.findings["printed_map"] = diagonal_json(qdu::nakayama_printed(p), p, printed_ok);
    out.findings["derived_map"] = diagonal_json(qdu::nakayama_derived(p), p, derived_ok);
    bool squares_equal = true;
    for (int i = 0; i < p.n; ++i)
        if (p.b(i) * p.b(i) != p.b(0) * p.b(0)) squares_equal = false;
    out.findings["beta_squares_equal"] = squares_equal;
    out.verdict = verdict_of(printed_ok);
    return out;
}

Outcome verify_pwd(const Parameters& p, const Options& o) {
    const auto rep = qdu::pwd_probe_H(p, degree_or(o, 5), o.trials, o.seed);
    Outcome out{verdict_of(rep.ok()), Json::object()};
    out.findings["beta_nonzero"] = rep.beta_nonzero;
    out.findings["trials"] = rep.trials;
    out.findings["zero_products"] = rep.zero_products;
    if (!rep.first_zero.empty()) out.findings["first_zero"] = rep.first_zero;
    if (rep.counterexample) {
        out.findings["counterexample"] = Json{{"a", rep.counterexample->first.str()}, {"b", rep.counterexample->second.str()}};
        out.findings["counterexample_verified"] = rep.counterexample_verified;
    }
    return out;
}

Outcome verify_noetherian(const Parameters& p, const Options& o) {
    const int i = p.first_zero_beta();
    if (i < 0) {
        Outcome out{"unsupported", Json::object()};
        out.findings["note"] = "the ascending chain needs some beta_i = 0";
        return out;
    }
    const int s_max = 3;
    const int bound = std::max(degree_or(o, 0), (s_max + 1) * p.n + 2);
    const auto rep = qdu::noetherian_chain_check(p, i, s_max, bound);
    Outcome out{verdict_of(rep.ok()), Json::object()};
    out.findings["index"] = rep.index;
    out.findings["degree_bound"] = bound;
    out.findings["annihilation"] = rep.annihilation;
    out.findings["generator_1"] = qdu::chain_generator(p, i, 1).str();
    Json steps = Json::array();
    for (const auto& s : rep.steps) {
        Json sj{{"s", s.s}, {"strict", s.strict}, {"spanning", s.spanning}, {"rank", s.rank}, {"support_ok", s.support_ok}};
        if (!s.bad_support.empty()) sj["bad_support"] = s.bad_support;
        steps.push_back(std::move(sj));
    }
    out.findings["steps"] = steps;
    return out;
}

Outcome verify_properties(const Parameters& p, const Options& o) {
    const auto rep = qdu::property_report(p, degree_or(o, 4));
    Outcome out{verdict_of(rep.consistent()), Json::object()};
    out.findings["noetherian"] = rep.noetherian;
    out.findings["piecewise_domain"] = rep.piecewise_domain;
    out.findings["polynomial_subalgebra"] = rep.polynomial_subalgebra;
    if (rep.index) {
        out.findings["zero_beta_index"] = *rep.index;
        out.findings["witness_a"] = rep.witness_a.str();
        out.findings["witness_b"] = rep.witness_b.str();
        out.findings["zero_divisor_verified"] = rep.zero_divisor_verified;
        out.findings["dependence_verified"] = rep.dependence_verified;
    } else {
        out.findings["monomials_checked"] = rep.monomials_checked;
        out.findings["monomial_rank"] = rep.monomial_rank;
    }
    return out;
}

Outcome verify_skewgroup(int n, int max_degree) {
    const auto rep = qdu::verify_skew_group(n, static_cast<std::size_t>(max_degree));
    Outcome out{verdict_of(rep.ok()), Json::object()};
    out.findings["n"] = n;
    out.findings["max_degree"] = max_degree;
    out.findings["idempotents_orthogonal"] = rep.orthogonal;
    out.findings["idempotents_complete"] = rep.complete;
    out.findings["generator_forms_agree"] = rep.cap_generators;
    out.findings["identities"] = rep.identities;
    out.findings["kills_beta_minus_one_relations"] = rep.kills_beta_minus_one;
    out.findings["kills_beta_one_relations"] = rep.kills_beta_one;
    out.findings["dimensions_match"] = rep.dimensions_match;
    if (!rep.first_dimension_mismatch.empty()) out.findings["first_dimension_mismatch"] = rep.first_dimension_mismatch;
    out.findings["failures"] = rep.failures;
    return out;
}

Outcome cmd_verify(const Options& o) {
    if (o.target == "skewgroup") {
        int n = o.n;
        if (n <= 0) n = o.config.empty() ? 2 : load(o.config, "--config").n;
        return verify_skewgroup(n, degree_or(o, 4));
    }
    const Parameters p = load(o.config, "--config");
    if (o.target == "gwa") return verify_gwa(p, o);
    if (o.target == "superpotential") return verify_superpotential(p);
    if (o.target == "nakayama") return verify_nakayama(p);
    if (o.target == "pwd") return verify_pwd(p, o);
    if (o.target == "noetherian") return verify_noetherian(p, o);
    if (o.target == "properties") return verify_properties(p, o);
    throw qdu::InputError("unknown verify target '" + o.target + "'");
}

Outcome cmd_report(const Options& o) {
    const Parameters p = load(o.config, "--config");
    Outcome out{"pass", Json::object()};
    out.findings["config"] = qdu::config_json(p);
    Json sections = Json::object();
    auto add = [&](const std::string& name, Outcome sub) {
        if (sub.verdict == "fail") out.verdict = "fail";
        sections[name] = Json{{"verdict", sub.verdict}, {"findings", std::move(sub.findings)}};
    };
    add("confluence", cmd_confluence(o));
    Options h = o;
    h.preset = "qdu";
    h.check = true;
    h.max_degree = degree_or(o, 6);
    h.n = 0;
    add("hilbert", cmd_hilbert(h));
    add("properties", verify_properties(p, o));
    add("pwd", verify_pwd(p, o));
    add("noetherian", verify_noetherian(p, o));
    add("gwa", verify_gwa(p, o));
    add("superpotential", verify_superpotential(p));
    add("nakayama", verify_nakayama(p));
    if (p.n >= 2 && p.n <= 4) add("skewgroup", verify_skewgroup(p.n, 3));
    out.findings["sections"] = sections;
    return out;
}

// ---------------------------------------------------------------- output

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool flat(const Json& v) {
    if (!v.is_array()) return !v.is_object();
    for (const auto& x : v)
        if (!flat(x)) return false;
    return true;
}

std::string inline_text(const Json& v) {
    if (!v.is_array()) return scalar_text(v);
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + inline_text(v[i]);
    return s + "]";
}

void render(std::ostream& os, const Json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) {
            if (flat(x)) {
                os << pad << k << ": " << inline_text(x) << '\n';
            } else {
                os << pad << k << ":\n";
                render(os, x, indent + 2);
            }
        }
    } else if (v.is_array()) {
        for (const auto& x : v) {
            if (flat(x)) {
                os << pad << "- " << inline_text(x) << '\n';
            } else {
                os << pad << "-\n";
                render(os, x, indent + 2);
            }
        }
    } else {
        os << pad << scalar_text(v) << '\n';
    }
}

int emit(const std::string& command, const Outcome& out, const Options& o) {
    Json doc;
    doc["command"] = command;
    doc["verdict"] = out.verdict;
    doc["findings"] = out.findings;
    doc["seed"] = o.seed;
    doc["version"] = kVersion;
    if (o.json) std::cout << doc.dump(2) << '\n';
    else render(std::cout, doc, 0);
    if (out.verdict == "pass") return 0;
    if (out.verdict == "unsupported") return 2;
    return 1;
}

int emit_error(const std::string& command, const std::string& message, const Options& o) {
    if (o.json) {
        Json doc;
        doc["command"] = command;
        doc["verdict"] = "error";
        doc["error"] = message;
        doc["version"] = kVersion;
        std::cout << doc.dump(2) << '\n';
    }
    std::cerr << "error: " << message << '\n';
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quiver down-up algebra toolkit"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--config", o.config, "Algebra config (JSON)");
    app.add_flag("--json", o.json, "Machine-readable output");
    app.add_option("--seed", o.seed, "Seed for randomized probes");
    app.add_option("--trials", o.trials, "Trials for randomized probes")->check(CLI::Range(0, 100000));
    app.add_option("--max-degree", o.max_degree, "Degree bound")->check(CLI::Range(0, 40));
    app.add_option("--n", o.n, "Quiver size when no config is given")->check(CLI::Range(1, 64));

    auto* nf = app.add_subcommand("nf", "Normal form of an element");
    nf->add_option("element", o.element, "Element text, e.g. \"1 * d0.u0 @1\"")->required();
    auto* basis = app.add_subcommand("basis", "Normal-word basis in one degree");
    basis->add_option("--degree", o.degree, "Degree")->check(CLI::Range(0, 40));
    auto* hilbert = app.add_subcommand("hilbert", "Dimension matrices and the closed-form comparison");
    hilbert->add_option("--preset", o.preset, "qdu or preprojective");
    hilbert->add_flag("--check", o.check, "Compare against the closed form");
    app.add_subcommand("confluence", "Resolve every overlap ambiguity");
    auto* iso = app.add_subcommand("iso", "Decide graded isomorphism with another config");
    iso->add_option("--other", o.other, "Second config")->required();
    auto* verify = app.add_subcommand("verify", "Verify one construction");
    verify->add_option("target", o.target, "gwa|superpotential|nakayama|pwd|noetherian|properties|skewgroup")
        ->required();
    app.add_subcommand("report", "Run every applicable verification");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const std::string label = command == "verify" ? "verify " + o.target : command;
    try {
        Outcome out;
        if (command == "nf") out = cmd_nf(o);
        else if (command == "basis") out = cmd_basis(o);
        else if (command == "hilbert") out = cmd_hilbert(o);
        else if (command == "confluence") out = cmd_confluence(o);
        else if (command == "iso") out = cmd_iso(o);
        else if (command == "verify") out = cmd_verify(o);
        else out = cmd_report(o);
        return emit(label, out, o);
    } catch (const qdu::InputError& e) {
        return emit_error(label, e.what(), o);
    } catch (const qdu::PreconditionError& e) {
        return emit_error(label, e.what(), o);
    } catch (const qdu::NotInvertibleError& e) {
        return emit_error(label, e.what(), o);
    }
}
