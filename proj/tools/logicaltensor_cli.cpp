// Copyright 2026 The logicaltensor Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success or positive verdict, 1 law
// failure or negative verdict, 2 input error.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logicaltensor/harness.hpp"
#include "logicaltensor/io.hpp"
#include "logicaltensor/logicaltensor.hpp"

namespace lt = logicaltensor;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;

struct InputError : lt::Error {
    explicit InputError(const std::string &what) : lt::Error(what) {}
};

struct Common {
    std::string universe_file;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double tolerance = lt::kCompareTolerance;
    std::string json_file;
};

std::uint64_t default_seed() {
    if (const char *env = std::getenv("LOGICALTENSOR_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
            throw InputError(std::string("LOGICALTENSOR_SEED is not a number: ") + env);
        }
    }
    return 1;
}

void add_common(CLI::App *cmd, Common &c, bool with_seed = false) {
    cmd->add_option("--universe", c.universe_file, "universe JSON file");
    cmd->add_option("--threads", c.threads, "worker cap")->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance", c.tolerance, "comparison tolerance");
    cmd->add_option("--json", c.json_file, "write a machine-readable report here");
    if (with_seed) {
        cmd->add_option("--seed", c.seed, "PRNG seed (default $LOGICALTENSOR_SEED or 1)");
    }
}

/// Universe from --universe, or the names mentioned by the given files.
lt::BasisPtr load_basis(const Common &c, const std::vector<lt::Json> &state_files,
                        const std::vector<lt::RestrictionSpec> &specs = {}) {
    if (!c.universe_file.empty()) {
        return lt::make_basis(lt::universe_from_json(lt::read_json_file(c.universe_file)));
    }
    std::set<std::string> vertices;
    std::set<std::string> states;
    for (const auto &j : state_files) {
        lt::collect_names(j, vertices, states);
    }
    std::function<void(const lt::RestrictionSpec &)> visit = [&](const lt::RestrictionSpec &s) {
        if (!s.vertex.empty()) {
            vertices.insert(s.vertex);
        }
        vertices.insert(s.vertices.begin(), s.vertices.end());
        if (!s.state.empty()) {
            states.insert(s.state);
        }
        for (const auto &[g, r] : s.table) {
            for (const auto &sys : g.systems()) {
                vertices.insert(sys.vertex);
                states.insert(sys.state);
            }
        }
        for (const auto &o : s.operands) {
            visit(o);
        }
    };
    for (const auto &s : specs) {
        visit(s);
    }
    if (vertices.empty() || states.empty()) {
        throw InputError("cannot infer a universe; pass --universe");
    }
    return lt::make_basis(lt::Universe({vertices.begin(), vertices.end()},
                                       {states.begin(), states.end()}));
}

lt::RestrictionSpec load_spec(const std::string &path) {
    return lt::restriction_spec_from_json(lt::read_json_file(path));
}

lt::BoundRestriction bind_validated(const lt::RestrictionSpec &spec,
                                    const lt::BasisPtr &basis) {
    return lt::BoundRestriction::bind(lt::make_restriction(spec), basis);
}

bool is_ket_file(const lt::Json &j) {
    return j.is_array() && (j.empty() || j.front().contains("graph"));
}

void emit(const Common &c, const lt::Json &report) {
    if (!c.json_file.empty()) {
        lt::write_json_file(c.json_file, report);
    }
}

void print_ket(const lt::Ket &psi, std::ostream &os) {
    bool first = true;
    for (const auto &[g, a] : psi.terms()) {
        os << (first ? "" : " + ") << "(" << lt::format_number(a.real());
        if (a.imag() != 0.0) {
            os << (a.imag() < 0 ? "-" : "+") << lt::format_number(std::abs(a.imag())) << "i";
        }
        os << ")|" << psi.basis()->graph(g).str() << ">";
        first = false;
    }
    os << (first ? "0" : "") << "\n";
}

// Subcommands.

struct VerifyArgs {
    Common common;
    bool all = false;
    std::vector<std::string> suites;
    std::vector<std::string> restriction_files;
    int line_length = 3;
    std::vector<double> thetas{0.0, std::numbers::pi / 4};
    int samples = 100;
};

int run_verify(const VerifyArgs &a) {
    std::set<std::string> wanted(a.suites.begin(), a.suites.end());
    if (a.all || wanted.empty()) {
        wanted = {"toolbox", "propositions", "theorem"};
    }
    for (const auto &s : wanted) {
        if (s != "toolbox" && s != "propositions" && s != "theorem") {
            throw InputError("unknown suite '" + s + "'");
        }
    }
    const bool needs_universe = wanted.count("toolbox") || wanted.count("propositions");
    if (needs_universe && a.common.universe_file.empty()) {
        throw InputError("--universe is required for the toolbox and proposition suites");
    }
    const lt::SuiteOptions opt{a.samples, a.common.tolerance};
    std::vector<lt::SuiteReport> reports;
    if (needs_universe) {
        const auto basis = load_basis(a.common, {});
        std::vector<lt::BoundRestriction> restrictions;
        if (a.restriction_files.empty()) {
            restrictions = lt::default_restrictions(basis);
        } else {
            for (const auto &f : a.restriction_files) {
                restrictions.push_back(bind_validated(load_spec(f), basis));
            }
        }
        if (wanted.count("toolbox")) {
            reports.push_back(lt::run_toolbox_suite(basis, restrictions, a.common.seed, opt));
        }
        if (wanted.count("propositions")) {
            reports.push_back(
                lt::run_proposition_suite(basis, restrictions, a.common.seed, opt));
        }
    }
    if (wanted.count("theorem")) {
        reports.push_back(lt::run_theorem_suite(lt::LineConfig{a.line_length}, a.thetas,
                                                a.common.seed, opt));
    }
    lt::Json doc{{"schema", lt::kSuiteReportSchema}, {"seed", a.common.seed}};
    doc["suites"] = lt::Json::array();
    bool passed = true;
    for (const auto &r : reports) {
        doc["suites"].push_back(r.to_json());
        passed &= r.passed();
        std::cerr << r.summary();
    }
    doc["passed"] = passed;
    if (a.common.json_file.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        emit(a.common, doc);
    }
    return passed ? kExitOk : kExitNegative;
}

struct CheckLocalArgs {
    Common common;
    std::string op_file;
    std::string restriction_file;
};

int run_check_local(const CheckLocalArgs &a) {
    const auto op_json = lt::read_json_file(a.op_file);
    const auto spec = load_spec(a.restriction_file);
    const auto basis = load_basis(a.common, {op_json}, {spec});
    const auto op = lt::operator_from_json(op_json, basis);
    const auto chi = bind_validated(spec, basis);
    const auto v = lt::is_local(op, chi, a.common.tolerance);
    std::cout << "local: " << (v.local() ? "yes" : "no")
              << ", strict: " << (v.strict ? "yes" : "no") << "\n";
    lt::Json report{{"restriction", chi.label()},
                    {"local", v.local()},
                    {"schrodinger", v.schrodinger},
                    {"operational", v.operational},
                    {"heisenberg", v.heisenberg},
                    {"strict", v.strict}};
    if (v.counterexample) {
        const auto [h, g] = *v.counterexample;
        std::cout << "counterexample: <" << basis->graph(h).str() << "|A|"
                  << basis->graph(g).str() << ">\n";
        report["counterexample"] = {{"bra", lt::graph_to_json(basis->graph(h))},
                                    {"ket", lt::graph_to_json(basis->graph(g))}};
    }
    emit(a.common, report);
    return v.local() ? kExitOk : kExitNegative;
}

struct CheckCausalArgs {
    Common common;
    std::string op_file;
    std::string chi_file;
    std::string zeta_file;
};

int run_check_causal(const CheckCausalArgs &a) {
    const auto op_json = lt::read_json_file(a.op_file);
    const auto chi_spec = load_spec(a.chi_file);
    const auto zeta_spec = load_spec(a.zeta_file);
    const auto basis = load_basis(a.common, {op_json}, {chi_spec, zeta_spec});
    const auto op = lt::operator_from_json(op_json, basis);
    const auto chi = bind_validated(chi_spec, basis);
    const auto zeta = bind_validated(zeta_spec, basis);
    const auto v = lt::is_causal(op, chi, zeta, a.common.tolerance);
    std::cout << "causal: " << (v.causal() ? "yes" : "no") << " (primal "
              << (v.primal ? "yes" : "no") << ", dual " << (v.dual ? "yes" : "no")
              << ", name-preserving observables suffice: "
              << (v.dual_name_preserving == v.dual ? "yes" : "no") << ")\n";
    lt::Json report{{"chi", chi.label()},
                    {"zeta", zeta.label()},
                    {"causal", v.causal()},
                    {"primal", v.primal},
                    {"dual", v.dual},
                    {"dual_name_preserving", v.dual_name_preserving}};
    if (v.strict_transfer) {
        report["strict_transfer"] = *v.strict_transfer;
        std::cout << "strict locality transfers: " << (*v.strict_transfer ? "yes" : "no")
                  << "\n";
    }
    if (v.counterexample) {
        const auto [g, h] = *v.counterexample;
        std::cout << "counterexample: |" << basis->graph(g).str() << "><"
                  << basis->graph(h).str() << "|\n";
        report["counterexample"] = {{"ket", lt::graph_to_json(basis->graph(g))},
                                    {"bra", lt::graph_to_json(basis->graph(h))}};
    }
    emit(a.common, report);
    return v.causal() ? kExitOk : kExitNegative;
}

struct TraceArgs {
    Common common;
    std::string state_file;
    std::string restriction_file;
    std::string output;
};

int run_trace(const TraceArgs &a) {
    const auto state_json = lt::read_json_file(a.state_file);
    const auto spec = load_spec(a.restriction_file);
    const auto basis = load_basis(a.common, {state_json}, {spec});
    const auto chi = bind_validated(spec, basis);
    const lt::Operator rho = is_ket_file(state_json)
                                 ? [&] {
                                       const auto psi = lt::ket_from_json(state_json, basis);
                                       return lt::Operator::outer(psi, psi);
                                   }()
                                 : lt::operator_from_json(state_json, basis);
    const auto reduced = lt::operator_to_json(lt::traceout(rho, chi));
    if (a.output.empty()) {
        std::cout << reduced.dump(2) << "\n";
    } else {
        lt::write_json_file(a.output, reduced);
    }
    return kExitOk;
}

struct TensorArgs {
    Common common;
    std::string left_file;
    std::string right_file;
    std::string restriction_file;
    std::string output;
};

int run_tensor(const TensorArgs &a) {
    const auto left = lt::read_json_file(a.left_file);
    const auto right = lt::read_json_file(a.right_file);
    const auto spec = load_spec(a.restriction_file);
    const auto basis = load_basis(a.common, {left, right}, {spec});
    const auto chi = bind_validated(spec, basis);
    lt::Json out;
    if (is_ket_file(left) != is_ket_file(right)) {
        throw InputError("tensor needs two kets or two operators");
    }
    if (is_ket_file(left)) {
        out = lt::ket_to_json(lt::tensor_kets(lt::ket_from_json(left, basis),
                                              lt::ket_from_json(right, basis), chi));
    } else {
        out = lt::operator_to_json(lt::tensor_ops(lt::operator_from_json(left, basis),
                                                  lt::operator_from_json(right, basis),
                                                  chi));
    }
    if (a.output.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        lt::write_json_file(a.output, out);
    }
    return kExitOk;
}

struct EntropyArgs {
    Common common;
    std::string ket_file;
    std::string restriction_file;
};

int run_entropy(const EntropyArgs &a) {
    const auto ket_json = lt::read_json_file(a.ket_file);
    const auto spec = load_spec(a.restriction_file);
    const auto basis = load_basis(a.common, {ket_json}, {spec});
    const auto chi = bind_validated(spec, basis);
    const double s =
        lt::entanglement_entropy(lt::ket_from_json(ket_json, basis), chi, a.common.tolerance);
    std::cout << "entropy: " << lt::format_number(s) << " bits\n";
    emit(a.common, {{"restriction", chi.label()}, {"entropy_bits", lt::round_significant(s)}});
    return kExitOk;
}

struct DecomposeArgs {
    Common common;
    std::string op_file;
    std::vector<std::string> chi_specs;   // vertex=file
    std::vector<std::string> zeta_specs;  // vertex=file
    int line_length = 0;
    std::optional<double> theta;
    std::string emit_gates;
};

std::map<std::string, lt::Restriction> parse_vertex_specs(const std::vector<std::string> &items) {
    std::map<std::string, lt::Restriction> out;
    for (const auto &item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InputError("expected VERTEX=FILE, got '" + item + "'");
        }
        out.emplace(item.substr(0, eq), lt::make_restriction(load_spec(item.substr(eq + 1))));
    }
    return out;
}

int run_decompose(const DecomposeArgs &a) {
    lt::Neighborhoods nb;
    std::optional<lt::Operator> op;
    if (a.line_length > 0) {
        const lt::LineConfig line{a.line_length};
        const auto basis = lt::make_basis(lt::line_universe(line));
        op = lt::build_M(basis, line);
        if (a.theta) {
            op = *op * lt::build_C(basis, line, *a.theta);
        }
        for (int i = 1; i <= line.length; ++i) {
            nb.chi.emplace(lt::line_vertex(line, i), lt::line_neighborhood(line, i));
            nb.zeta.emplace(lt::line_vertex(line, i), lt::line_site(line, i));
        }
    } else {
        if (a.op_file.empty()) {
            throw InputError("decompose needs --op or --line-length");
        }
        const auto op_json = lt::read_json_file(a.op_file);
        const auto basis = load_basis(a.common, {op_json});
        op = lt::operator_from_json(op_json, basis);
        nb.chi = parse_vertex_specs(a.chi_specs);
        nb.zeta = parse_vertex_specs(a.zeta_specs);
        for (const auto &v : basis->universe().vertices()) {
            if (!nb.zeta.count(v)) {
                nb.zeta.emplace(v, lt::by_vertex(v));
            }
        }
    }
    lt::Json report;
    int code = kExitOk;
    try {
        const auto d = lt::block_decompose(*op, nb, a.common.tolerance);
        const auto c = lt::verify_decomposition(d, *op, a.common.seed, a.common.tolerance);
        std::cout << "reconstruction deviation: " << lt::format_number(c.reconstruction_deviation)
                  << "\n"
                  << "tau strictly local: " << (c.tau_strict ? "yes" : "no") << "\n"
                  << "K strictly local: " << (c.k_strict ? "yes" : "no") << "\n"
                  << "gates commute: " << (c.tau_commute && c.k_commute ? "yes" : "no") << "\n"
                  << "order deviation: " << lt::format_number(c.order_deviation) << "\n"
                  << "extension causal: " << (c.extension_causal ? "yes" : "no") << "\n";
        for (const auto &f : c.failures) {
            std::cout << "failure: " << f << "\n";
        }
        report = {{"passed", c.passed(a.common.tolerance)},
                  {"reconstruction_deviation", lt::round_significant(c.reconstruction_deviation)},
                  {"order_deviation", lt::round_significant(c.order_deviation)},
                  {"tau_strict", c.tau_strict},
                  {"k_strict", c.k_strict},
                  {"tau_commute", c.tau_commute},
                  {"k_commute", c.k_commute},
                  {"tau_product_is_toggle", c.tau_product_is_toggle},
                  {"extension_causal", c.extension_causal},
                  {"failures", c.failures}};
        if (!a.emit_gates.empty()) {
            lt::Json gates{{"universe", lt::universe_to_json(d.universe.extended()->universe())}};
            for (const auto &v : d.vertices) {
                gates["tau"][v] = lt::operator_to_json(d.tau_gates.at(v));
                gates["K"][v] = lt::operator_to_json(d.k_gates.at(v));
            }
            lt::write_json_file(a.emit_gates, gates);
        }
        code = c.passed(a.common.tolerance) ? kExitOk : kExitNegative;
    } catch (const lt::PrerequisiteViolation &e) {
        std::cout << "prerequisite failed: " << e.what() << "\n";
        report = {{"passed", false}, {"prerequisite_violation", e.what()}};
        code = kExitNegative;
    } catch (const lt::ReconstructionFailure &e) {
        std::cout << "reconstruction failed: " << e.what() << "\n";
        report = {{"passed", false}, {"reconstruction_failure", e.what()}};
        code = kExitNegative;
    }
    emit(a.common, report);
    return code;
}

struct EvolveArgs {
    Common common;
    int line_length = 3;
    int steps = 4;
    std::optional<double> theta;
    std::string initial_file;
    std::string trajectory_file;
};

int run_evolve(const EvolveArgs &a) {
    if (a.steps < 0) {
        throw InputError("--steps must be non-negative");
    }
    const lt::LineConfig line{a.line_length};
    const auto basis = lt::make_basis(lt::line_universe(line));
    lt::Ket psi(basis);
    if (a.initial_file.empty()) {
        std::vector<std::string> tokens{lt::kRightMover + "." + lt::line_vertex(line, 1)};
        for (int i = 2; i <= line.length; ++i) {
            tokens.push_back(lt::kEmptySite + "." + lt::line_vertex(line, i));
        }
        psi = lt::Ket::of(basis, lt::Graph::from_tokens(tokens));
    } else {
        psi = lt::ket_from_json(lt::read_json_file(a.initial_file), basis);
    }
    std::vector<lt::Operator> ops{lt::build_M(basis, line)};
    if (a.theta) {
        ops.push_back(lt::build_C(basis, line, *a.theta));
    }
    const auto trajectory = lt::evolve(psi, ops, a.steps);
    lt::Json out = lt::Json::array();
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        std::cout << "step " << k << " norm " << lt::format_number(trajectory[k].norm())
                  << ": ";
        print_ket(trajectory[k], std::cout);
        out.push_back(lt::ket_to_json(trajectory[k]));
    }
    if (!a.trajectory_file.empty()) {
        lt::write_json_file(a.trajectory_file, out);
    }
    return kExitOk;
}

struct ValidateArgs {
    Common common;
    std::string restriction_file;
};

int run_validate(const ValidateArgs &a) {
    const auto spec = load_spec(a.restriction_file);
    const auto basis = load_basis(a.common, {}, {spec});
    const auto restriction = lt::make_restriction(spec);
    const auto report = lt::validate_restriction(restriction, basis);
    lt::Json out{{"restriction", restriction.label()}, {"valid", report.passed}};
    if (report.passed) {
        const bool pointwise = lt::is_pointwise(restriction, basis);
        std::cout << "valid: yes, pointwise: " << (pointwise ? "yes" : "no") << "\n";
        out["pointwise"] = pointwise;
    } else {
        std::cout << "valid: no\n";
        if (report.counterexample) {
            const auto &[g, h] = *report.counterexample;
            std::cout << "counterexample: G = " << g.str() << ", H = " << h.str() << "\n";
            out["counterexample"] = {{"G", lt::graph_to_json(g)}, {"H", lt::graph_to_json(h)}};
        }
        if (!report.detail.empty()) {
            std::cout << report.detail << "\n";
            out["detail"] = report.detail;
        }
    }
    emit(a.common, out);
    return report.passed ? kExitOk : kExitNegative;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"logicaltensor: generalised traceouts, tensors, locality and causality"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    try {
        seed = default_seed();
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    VerifyArgs verify;
    verify.common.seed = seed;
    auto *cmd_verify = app.add_subcommand("verify", "run law suites and emit a report");
    add_common(cmd_verify, verify.common, true);
    cmd_verify->add_flag("--all", verify.all, "run every suite");
    cmd_verify->add_option("--suite", verify.suites, "toolbox, propositions or theorem");
    cmd_verify->add_option("--restriction", verify.restriction_files,
                           "restriction files (default: built-in set)");
    cmd_verify->add_option("--line-length", verify.line_length, "line length for the theorem suite")
        ->check(CLI::Range(2, 4));
    cmd_verify->add_option("--theta", verify.thetas, "rotation angles for the theorem suite");
    cmd_verify->add_option("--samples", verify.samples, "random samples per law")
        ->check(CLI::PositiveNumber);

    CheckLocalArgs local;
    auto *cmd_local = app.add_subcommand("check-local", "locality verdict for an operator");
    add_common(cmd_local, local.common);
    cmd_local->add_option("--op", local.op_file, "operator file")->required();
    cmd_local->add_option("--restriction", local.restriction_file, "restriction file")
        ->required();

    CheckCausalArgs causal;
    auto *cmd_causal = app.add_subcommand("check-causal", "causality verdict for a unitary");
    add_common(cmd_causal, causal.common);
    cmd_causal->add_option("--op", causal.op_file, "operator file")->required();
    cmd_causal->add_option("--chi", causal.chi_file, "input restriction file")->required();
    cmd_causal->add_option("--zeta", causal.zeta_file, "output restriction file")->required();

    TraceArgs trace;
    auto *cmd_trace = app.add_subcommand("trace", "traceout of a ket or operator");
    add_common(cmd_trace, trace.common);
    cmd_trace->add_option("--state", trace.state_file, "ket or operator file")->required();
    cmd_trace->add_option("--restriction", trace.restriction_file, "restriction file")
        ->required();
    cmd_trace->add_option("--output", trace.output, "output file (default stdout)");

    TensorArgs tensor;
    auto *cmd_tensor = app.add_subcommand("tensor", "tensor of two kets or two operators");
    add_common(cmd_tensor, tensor.common);
    cmd_tensor->add_option("--left", tensor.left_file, "left factor")->required();
    cmd_tensor->add_option("--right", tensor.right_file, "right factor")->required();
    cmd_tensor->add_option("--restriction", tensor.restriction_file, "restriction file")
        ->required();
    cmd_tensor->add_option("--output", tensor.output, "output file (default stdout)");

    EntropyArgs entropy;
    auto *cmd_entropy = app.add_subcommand("entropy", "entanglement entropy in bits");
    add_common(cmd_entropy, entropy.common);
    cmd_entropy->add_option("--ket", entropy.ket_file, "ket file")->required();
    cmd_entropy->add_option("--restriction", entropy.restriction_file, "restriction file")
        ->required();

    DecomposeArgs decompose;
    decompose.common.seed = seed;
    auto *cmd_decompose = app.add_subcommand("decompose", "block decomposition of a causal unitary");
    add_common(cmd_decompose, decompose.common, true);
    cmd_decompose->add_option("--op", decompose.op_file, "operator file");
    cmd_decompose->add_option("--chi", decompose.chi_specs, "VERTEX=FILE input neighborhood");
    cmd_decompose->add_option("--zeta", decompose.zeta_specs,
                              "VERTEX=FILE output neighborhood (default: the vertex)");
    cmd_decompose->add_option("--line-length", decompose.line_length,
                              "decompose the line dynamics instead of --op")
        ->check(CLI::Range(2, 4));
    cmd_decompose->add_option("--theta", decompose.theta, "include the rotation C(theta)");
    cmd_decompose->add_option("--emit-gates", decompose.emit_gates, "write gates as JSON");

    EvolveArgs evolve;
    auto *cmd_evolve = app.add_subcommand("evolve", "iterate the line dynamics");
    add_common(cmd_evolve, evolve.common);
    cmd_evolve->add_option("--line-length", evolve.line_length, "number of vertices")
        ->check(CLI::Range(2, 8));
    cmd_evolve->add_option("--steps", evolve.steps, "number of steps");
    cmd_evolve->add_option("--theta", evolve.theta, "iterate M C(theta) instead of M");
    cmd_evolve->add_option("--initial", evolve.initial_file,
                           "initial ket (default: right-mover at v1)");
    cmd_evolve->add_option("--emit-trajectory", evolve.trajectory_file,
                           "write the trajectory as a list of kets");

    ValidateArgs validate;
    auto *cmd_validate = app.add_subcommand("validate-restriction", "check the restriction axiom");
    add_common(cmd_validate, validate.common);
    cmd_validate->add_option("--restriction", validate.restriction_file, "restriction file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*cmd_verify) {
            return run_verify(verify);
        }
        if (*cmd_local) {
            return run_check_local(local);
        }
        if (*cmd_causal) {
            return run_check_causal(causal);
        }
        if (*cmd_trace) {
            return run_trace(trace);
        }
        if (*cmd_tensor) {
            return run_tensor(tensor);
        }
        if (*cmd_entropy) {
            return run_entropy(entropy);
        }
        if (*cmd_decompose) {
            return run_decompose(decompose);
        }
        if (*cmd_evolve) {
            return run_evolve(evolve);
        }
        if (*cmd_validate) {
            return run_validate(validate);
        }
    } catch (const lt::EquivalenceViolation &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitNegative;
    } catch (const lt::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
