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
/**
 * @file
 * Exhaustive law checking on small universes.
 *
 * Each suite evaluates a list of algebraic laws over every basis element (for
 * exact laws) or over seeded random operators, and returns a SuiteReport.
 * Traceouts and tensors under test go through the Kernel template parameter;
 * the reference side of each law is computed directly from the restriction
 * tables, so a broken kernel shows up as a failing law.
 */
#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "block.hpp"
#include "dynamics.hpp"
#include "io.hpp"
#include "locality.hpp"

namespace logicaltensor {

inline const std::string kSuiteReportSchema = "logicaltensor.suite-report/1";

/// Traceout that forgets the <H_chibar|G_chibar> factor.
struct DroppedOverlapKernel : StandardKernel {
    static std::optional<std::pair<Index, Index>>
    trace_pair(Index g, Index h, const BoundRestriction &chi) {
        return std::pair{chi.part(g), chi.part(h)};
    }
};

/// Tensor that never returns zero for a well-named union.
struct PermissiveWeaveKernel : StandardKernel {
    static std::optional<Index> weave(Index left, Index right,
                                      const BoundRestriction &chi) {
        return chi.basis()->unite(left, right);
    }
};

enum class LawStatus { kPass, kFail, kSkipped };

inline std::string to_string(LawStatus s) {
    switch (s) {
    case LawStatus::kPass:
        return "pass";
    case LawStatus::kFail:
        return "fail";
    case LawStatus::kSkipped:
        return "skipped";
    }
    return "unknown";
}

struct LawResult {
    std::string id;
    LawStatus status = LawStatus::kPass;
    std::int64_t checked = 0;
    /// Inputs meeting the law's hypothesis, out of all candidates; only set
    /// for laws with a hypothesis.
    std::optional<std::pair<std::int64_t, std::int64_t>> coverage;
    double max_deviation = 0.0;
    std::string counterexample;
    std::string reason; ///< why a law was skipped
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    Json universe;
    std::vector<LawResult> laws;
    /// Measured, but kept out of the JSON so reports are reproducible.
    double wall_seconds = 0.0;

    [[nodiscard]] bool passed() const {
        return std::none_of(laws.begin(), laws.end(), [](const LawResult &l) {
            return l.status == LawStatus::kFail;
        });
    }

    [[nodiscard]] const LawResult *find(const std::string &id) const {
        for (const auto &l : laws) {
            if (l.id == id) {
                return &l;
            }
        }
        return nullptr;
    }

    [[nodiscard]] Json to_json() const {
        Json laws_json = Json::array();
        for (const auto &l : laws) {
            Json j{{"id", l.id},
                   {"status", to_string(l.status)},
                   {"checked", l.checked},
                   {"max_deviation", round_significant(l.max_deviation)}};
            j["coverage"] = l.coverage ? Json{{"satisfied", l.coverage->first},
                                              {"total", l.coverage->second}}
                                       : Json(nullptr);
            j["counterexample"] =
                l.counterexample.empty() ? Json(nullptr) : Json(l.counterexample);
            if (!l.reason.empty()) {
                j["reason"] = l.reason;
            }
            laws_json.push_back(std::move(j));
        }
        return {{"schema", kSuiteReportSchema},
                {"suite", suite},
                {"seed", seed},
                {"universe", universe},
                {"passed", passed()},
                {"laws", std::move(laws_json)}};
    }

    [[nodiscard]] std::string summary() const {
        std::ostringstream os;
        os << suite << ": " << (passed() ? "PASS" : "FAIL") << " ("
           << format_number(wall_seconds) << " s)\n";
        for (const auto &l : laws) {
            os << "  [" << to_string(l.status) << "] " << l.id
               << " checked=" << l.checked;
            if (l.coverage) {
                os << " coverage=" << l.coverage->first << "/" << l.coverage->second;
            }
            os << " max_dev=" << format_number(l.max_deviation);
            if (!l.counterexample.empty()) {
                os << " counterexample: " << l.counterexample;
            }
            if (!l.reason.empty()) {
                os << " (" << l.reason << ")";
            }
            os << "\n";
        }
        return os.str();
    }
};

struct SuiteOptions {
    int samples = 100;
    double tol = kCompareTolerance;
};

/// Accumulates checks for one law; keeps the first failure.
class LawTally {
  public:
    LawTally(std::string id, double tol) : tol_(tol) { result_.id = std::move(id); }

    void check(double deviation, const std::function<std::string()> &witness) {
        ++result_.checked;
        if (std::isnan(deviation)) {
            deviation = std::numeric_limits<double>::infinity();
        }
        result_.max_deviation = std::max(result_.max_deviation, deviation);
        if (deviation > tol_) {
            fail(witness);
        }
    }

    void check(bool ok, const std::function<std::string()> &witness) {
        ++result_.checked;
        if (!ok) {
            fail(witness);
        }
    }

    void hypothesis(bool satisfied) {
        if (!result_.coverage) {
            result_.coverage = std::pair<std::int64_t, std::int64_t>{0, 0};
        }
        result_.coverage->first += satisfied;
        result_.coverage->second += 1;
    }

    void skip(std::string reason) {
        result_.status = LawStatus::kSkipped;
        result_.reason = std::move(reason);
    }

    [[nodiscard]] LawResult result() const {
        LawResult r = result_;
        if (r.status == LawStatus::kPass && r.checked == 0) {
            r.status = LawStatus::kSkipped;
            if (r.reason.empty()) {
                r.reason = "hypothesis never satisfied";
            }
        }
        return r;
    }

  private:
    void fail(const std::function<std::string()> &witness) {
        if (result_.status != LawStatus::kFail) {
            result_.status = LawStatus::kFail;
            result_.counterexample = witness();
        }
    }

    double tol_;
    LawResult result_;
};

// Seeded generators.

class SampleGenerator {
  public:
    explicit SampleGenerator(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64 &engine() { return rng_; }

    Complex gaussian() {
        std::normal_distribution<double> n(0.0, 1.0);
        const double re = n(rng_);
        const double im = n(rng_);
        return {re, im};
    }

    Index uniform(Index n) {
        return std::uniform_int_distribution<Index>(0, n - 1)(rng_);
    }

    /// B^dag B / Tr(B^dag B) with B complex Gaussian on `support` x `support`.
    Operator positive(const BasisPtr &basis, const std::vector<Index> &support) {
        const auto k = static_cast<Eigen::Index>(support.size());
        Eigen::MatrixXcd b(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                b(i, j) = gaussian();
            }
        }
        Eigen::MatrixXcd rho = b.adjoint() * b;
        rho /= rho.trace();
        std::vector<Entry> entries;
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                entries.push_back({support[i], support[j], rho(i, j)});
            }
        }
        return Operator::from_entries(basis, entries, OperatorRole::kTraceClass);
    }

    Operator positive(const BasisPtr &basis) {
        std::vector<Index> all(static_cast<std::size_t>(basis->size()));
        std::iota(all.begin(), all.end(), Index{0});
        return positive(basis, all);
    }

    /// `nnz` Gaussian entries at uniformly random positions.
    Operator sparse(const BasisPtr &basis, Index nnz) {
        std::vector<Entry> entries;
        for (Index i = 0; i < nnz; ++i) {
            entries.push_back({uniform(basis->size()), uniform(basis->size()),
                               gaussian()});
        }
        return Operator::from_entries(basis, entries);
    }

    /// Random sparse operator with every entry that would break
    /// chi-consistency preservation removed.
    Operator consistency_preserving(const BoundRestriction &chi, Index nnz) {
        const auto &basis = chi.basis();
        std::map<Index, std::vector<Index>> rests_of;
        for (Index g = 0; g < basis->size(); ++g) {
            rests_of[chi.part(g)].push_back(chi.rest(g));
        }
        auto allowed = [&](Index row, Index col) {
            const auto it = rests_of.find(col);
            if (it == rests_of.end()) {
                return true;
            }
            return std::all_of(it->second.begin(), it->second.end(), [&](Index r) {
                return StandardKernel::weave(row, r, chi).has_value();
            });
        };
        std::vector<Entry> entries;
        for (const auto &e : sparse(basis, nnz).entries()) {
            if (allowed(e.row, e.col) && allowed(e.col, e.row)) {
                entries.push_back(e);
            }
        }
        return Operator::from_entries(basis, entries);
    }

    /// Right-factor analogue: <H|B|G_chibar> != 0 only when G_chi (x)chi H != 0,
    /// and the same for B^dag.
    Operator complement_consistency_preserving(const BoundRestriction &chi,
                                               Index nnz) {
        const auto &basis = chi.basis();
        std::map<Index, std::vector<Index>> parts_of;
        for (Index g = 0; g < basis->size(); ++g) {
            parts_of[chi.rest(g)].push_back(chi.part(g));
        }
        auto allowed = [&](Index row, Index col) {
            const auto it = parts_of.find(col);
            if (it == parts_of.end()) {
                return true;
            }
            return std::all_of(it->second.begin(), it->second.end(), [&](Index p) {
                return StandardKernel::weave(p, row, chi).has_value();
            });
        };
        std::vector<Entry> entries;
        for (const auto &e : sparse(basis, nnz).entries()) {
            if (allowed(e.row, e.col) && allowed(e.col, e.row)) {
                entries.push_back(e);
            }
        }
        return Operator::from_entries(basis, entries);
    }

    /// Random positive rho, sigma that are chi-consistent: every graph in the
    /// support of rho weaves with every graph in the support of sigma.
    std::pair<Operator, Operator> consistent_pair(const BoundRestriction &chi) {
        const auto &basis = chi.basis();
        const Index g0 = uniform(basis->size());
        std::vector<Index> left{chi.part(g0)};
        std::vector<Index> right{chi.rest(g0)};
        auto contains = [](const std::vector<Index> &v, Index x) {
            return std::find(v.begin(), v.end(), x) != v.end();
        };
        for (Index t = 0; t < basis->size(); ++t) {
            const Index h = uniform(basis->size());
            const Index a = chi.part(h);
            const Index b = chi.rest(h);
            if (!contains(left, a) &&
                std::all_of(right.begin(), right.end(), [&](Index r) {
                    return StandardKernel::weave(a, r, chi).has_value();
                })) {
                left.push_back(a);
            }
            if (!contains(right, b) &&
                std::all_of(left.begin(), left.end(), [&](Index l) {
                    return StandardKernel::weave(l, b, chi).has_value();
                })) {
                right.push_back(b);
            }
        }
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        return {positive(basis, left), positive(basis, right)};
    }

    /// Random permutation unitary preserving vertex sets.
    Operator name_preserving_permutation(const BasisPtr &basis) {
        std::map<std::uint32_t, std::vector<Index>> sectors;
        for (Index g = 0; g < basis->size(); ++g) {
            sectors[basis->support_mask(g)].push_back(g);
        }
        std::vector<Entry> entries;
        for (auto &[mask, members] : sectors) {
            auto image = members;
            std::shuffle(image.begin(), image.end(), rng_);
            for (std::size_t i = 0; i < members.size(); ++i) {
                entries.push_back({image[i], members[i], 1.0});
            }
        }
        return Operator::from_entries(basis, entries);
    }

  private:
    std::mt19937_64 rng_;
};

namespace detail {

inline std::string describe_pair(const Basis &b, Index g, Index h) {
    return "|" + b.graph(g).str() + "><" + b.graph(h).str() + "|";
}

/// Projector onto the graphs that occur as chi-complements.
inline Operator complement_identity(const BoundRestriction &chi) {
    std::set<Index> rests;
    for (Index g = 0; g < chi.basis()->size(); ++g) {
        rests.insert(chi.rest(g));
    }
    std::vector<Entry> entries;
    for (const Index r : rests) {
        entries.push_back({r, r, 1.0});
    }
    return Operator::from_entries(chi.basis(), entries);
}

/// rho |col><row| built entrywise: column `col` of rho moved to column `row`.
inline Operator times_outer(const Operator &rho, Index col, Index row) {
    std::vector<Entry> entries;
    rho.for_each_in_column(col, [&](Index r, Complex v) {
        entries.push_back({r, row, v});
    });
    return Operator::from_entries(rho.basis(), entries, OperatorRole::kTraceClass);
}

inline double ket_deviation(const Ket &a, const Ket &b) {
    return max_abs_difference(a, b);
}

inline Json universe_json(const BasisPtr &basis) {
    return universe_to_json(basis->universe());
}

} // namespace detail

/// zeta_v for every vertex, zeta_u u zeta_v for the first two vertices, the
/// black/white passthrough when the universe has states w and b, and the
/// by-state restriction for w (or the first state).
inline std::vector<BoundRestriction> default_restrictions(const BasisPtr &basis) {
    std::vector<BoundRestriction> out;
    const auto &u = basis->universe();
    for (const auto &v : u.vertices()) {
        out.push_back(BoundRestriction::bind(by_vertex(v), basis));
    }
    if (u.vertices().size() >= 2) {
        out.push_back(union_restriction(out[0], out[1]));
    }
    const bool black_white = u.state_position("w") && u.state_position("b");
    if (black_white) {
        out.push_back(BoundRestriction::bind(black_passthrough(), basis));
    }
    out.push_back(BoundRestriction::bind(
        by_state(u.state_position("w") ? "w" : u.states().front()), basis));
    return out;
}

template <class Kernel = StandardKernel>
SuiteReport run_toolbox_suite(const BasisPtr &basis,
                              const std::vector<BoundRestriction> &restrictions,
                              std::uint64_t seed, const SuiteOptions &opt = {}) {
    const auto start = std::chrono::steady_clock::now();
    SampleGenerator gen(seed);
    const Basis &b = *basis;
    const Index n = b.size();
    const Index nnz = std::max<Index>(2 * n, 8);
    const auto empty = BoundRestriction::bind(empty_restriction(), basis);
    const auto id = Operator::identity(basis);
    const double tol = opt.tol;
    SuiteReport report{"toolbox", seed, detail::universe_json(basis), {}, 0.0};

    {
        LawTally law("inner_product_factorises", tol);
        for (const auto &chi : restrictions) {
            for (Index g = 0; g < n; ++g) {
                for (Index h = 0; h < n; ++h) {
                    const bool lhs = g == h;
                    const bool rhs = chi.part(g) == chi.part(h) &&
                                     chi.rest(g) == chi.rest(h);
                    law.check(lhs == rhs, [&] {
                        return chi.label() + " " + detail::describe_pair(b, g, h);
                    });
                }
            }
        }
        report.laws.push_back(law.result());
    }
    {
        LawTally law("restriction_idempotent", tol);
        for (const auto &chi : restrictions) {
            for (Index g = 0; g < n; ++g) {
                const bool ok = chi.part(chi.part(g)) == chi.part(g) &&
                                chi.rest(chi.part(g)) == 0;
                law.check(ok, [&] { return chi.label() + " " + b.graph(g).str(); });
            }
        }
        report.laws.push_back(law.result());
    }
    {
        LawTally law("trace_identities", tol);
        for (int s = 0; s < opt.samples; ++s) {
            const Operator rho = gen.sparse(basis, nnz);
            for (Index g = 0; g < n; ++g) {
                for (Index h = 0; h < n; ++h) {
                    const Complex lhs =
                        traceout<Kernel>(detail::times_outer(rho, g, h), empty).at(0, 0);
                    law.check(std::abs(lhs - rho.at(h, g)), [&] {
                        return "(rho" + detail::describe_pair(b, g, h) +
                               ")|empty != <H|rho|G>, sample " + std::to_string(s);
                    });
                }
            }
            const Operator a = gen.sparse(basis, nnz);
            law.check(max_abs_difference(traceout<Kernel>(rho * a, empty),
                                         traceout<Kernel>(a * rho, empty)),
                      [&] { return "(rho A)|empty != (A rho)|empty, sample " +
                                   std::to_string(s); });
            const Complex alpha = gen.gaussian();
            for (const auto &chi : restrictions) {
                law.check(max_abs_difference(traceout<Kernel>(alpha * rho, chi),
                                             alpha * traceout<Kernel>(rho, chi)),
                          [&] { return "scaling under " + chi.label(); });
            }
        }
        report.laws.push_back(law.result());
    }
    {
        LawTally law("reconstitution", tol);
        for (const auto &chi : restrictions) {
            for (Index g = 0; g < n; ++g) {
                for (Index h = 0; h < n; ++h) {
                    const Ket woven = tensor_kets<Kernel>(Ket::basis_state(basis, g),
                                                          Ket::basis_state(basis, h), chi);
                    const auto terms = woven.terms();
                    if (terms.empty()) {
                        law.hypothesis(false);
                        continue;
                    }
                    law.hypothesis(true);
                    const auto u = b.unite(g, h);
                    const bool ok = u && terms.size() == 1 && terms[0].first == *u &&
                                    std::abs(terms[0].second - 1.0) <= tol &&
                                    chi.part(*u) == g;
                    law.check(ok, [&] {
                        return chi.label() + " |" + b.graph(g).str() + "> (x) |" +
                               b.graph(h).str() + ">";
                    });
                }
            }
        }
        report.laws.push_back(law.result());
    }
    {
        LawTally law("traceout_sum_form", tol);
        for (const auto &chi : restrictions) {
            for (int s = 0; s < opt.samples; ++s) {
                const Operator rho = gen.sparse(basis, nnz);
                std::vector<Entry> direct;
                rho.for_each([&](Index g, Index h, Complex v) {
                    if (chi.rest(g) == chi.rest(h)) {
                        direct.push_back({chi.part(g), chi.part(h), v});
                    }
                });
                law.check(max_abs_difference(traceout<Kernel>(rho, chi),
                                             Operator::from_entries(basis, direct)),
                          [&] { return chi.label() + ", sample " + std::to_string(s); });
            }
        }
        report.laws.push_back(law.result());
    }
    {
        LawTally law("tensor_closed_form", tol);
        for (const auto &chi : restrictions) {
            const Operator id_rest = detail::complement_identity(chi);
            for (int s = 0; s < opt.samples; ++s) {
                const Operator a = gen.sparse(basis, nnz);
                const Operator c = gen.sparse(basis, nnz);
                std::vector<Entry> closed;
                for (Index g = 0; g < n; ++g) {
                    for (Index h = 0; h < n; ++h) {
                        const Complex v = a.at(chi.part(g), chi.part(h)) *
                                          c.at(chi.rest(g), chi.rest(h));
                        if (v != Complex{}) {
                            closed.push_back({g, h, v});
                        }
                    }
                }
                law.check(max_abs_difference(tensor_ops<Kernel>(a, c, chi),
                                             Operator::from_entries(basis, closed)),
                          [&] { return "A (x) B under " + chi.label() + ", sample " +
                                       std::to_string(s); });
                law.check(max_abs_difference(tensor_ops<Kernel>(a, id, chi),
                                             tensor_ops<Kernel>(a, id_rest, chi)),
                          [&] { return "A (x) I vs A (x) I_rest under " + chi.label(); });
            }
        }
        report.laws.push_back(law.result());
    }
    {
        LawTally law("tensor_interchange", tol);
        for (const auto &chi : restrictions) {
            for (const auto &zeta : restrictions) {
                const bool hyp = commute(chi, zeta).all();
                law.hypothesis(hyp);
                if (!hyp) {
                    continue;
                }
                for (int s = 0; s < opt.samples; ++s) {
                    const Operator a = gen.sparse(basis, n);
                    const Operator bb = gen.sparse(basis, n);
                    const Operator c = gen.sparse(basis, n);
                    const Operator d = gen.sparse(basis, n);
                    const Operator lhs = tensor_ops<Kernel>(tensor_ops<Kernel>(a, bb, zeta),
                                                            tensor_ops<Kernel>(c, d, zeta), chi);
                    const Operator rhs = tensor_ops<Kernel>(tensor_ops<Kernel>(a, c, chi),
                                                            tensor_ops<Kernel>(bb, d, chi), zeta);
                    law.check(max_abs_difference(lhs, rhs), [&] {
                        return "chi=" + chi.label() + " zeta=" + zeta.label() +
                               ", sample " + std::to_string(s);
                    });
                }
            }
        }
        report.laws.push_back(law.result());
    }
    {
        LawTally law("nested_traceout", tol);
        for (const auto &chi : restrictions) {
            for (const auto &zeta : restrictions) {
                const bool hyp = comprehends(zeta, chi);
                law.hypothesis(hyp);
                if (!hyp) {
                    continue;
                }
                for (int s = 0; s < opt.samples; ++s) {
                    const Operator rho = gen.sparse(basis, nnz);
                    law.check(max_abs_difference(
                                  traceout<Kernel>(traceout<Kernel>(rho, chi), zeta),
                                  traceout<Kernel>(rho, zeta)),
                              [&] { return "(rho|" + chi.label() + ")|" + zeta.label(); });
                    const Operator local = tensor_ops<Kernel>(gen.sparse(basis, nnz), id, zeta);
                    law.check(detail::is_local_fast(local, chi, tol), [&] {
                        return zeta.label() + "-local operator not " + chi.label() + "-local";
                    });
                }
            }
        }
        report.laws.push_back(law.result());
    }
    {
        LawTally law("traceout_of_tensor", tol);
        for (const auto &chi : restrictions) {
            for (int s = 0; s < opt.samples; ++s) {
                const auto [rho, sigma] = gen.consistent_pair(chi);
                const Operator woven = tensor_ops<Kernel>(rho, sigma, chi);
                const Complex trace_sigma = full_trace(sigma);
                law.check(max_abs_difference(traceout<Kernel>(woven, chi),
                                             trace_sigma * rho),
                          [&] { return "(rho (x) sigma)|" + chi.label() + ", sample " +
                                       std::to_string(s); });
                for (const auto &zeta : restrictions) {
                    const bool hyp = comprehends(zeta, chi);
                    law.hypothesis(hyp);
                    if (hyp) {
                        law.check(max_abs_difference(
                                      traceout<Kernel>(woven, zeta),
                                      trace_sigma * traceout<Kernel>(rho, zeta)),
                                  [&] { return "(rho (x)" + chi.label() + " sigma)|" +
                                               zeta.label(); });
                    }
                }
            }
        }
        report.laws.push_back(law.result());
    }
    {
        LawTally law("traceout_distributes", tol);
        for (const auto &chi : restrictions) {
            for (const auto &zeta : restrictions) {
                const bool hyp = commute(chi, zeta).all();
                law.hypothesis(hyp);
                if (!hyp) {
                    continue;
                }
                for (int s = 0; s < opt.samples; ++s) {
                    const auto [rho, sigma] = gen.consistent_pair(chi);
                    const Operator lhs = traceout<Kernel>(tensor_ops<Kernel>(rho, sigma, chi), zeta);
                    const Operator rhs = tensor_ops<Kernel>(traceout<Kernel>(rho, zeta),
                                                            traceout<Kernel>(sigma, zeta), chi);
                    law.check(max_abs_difference(lhs, rhs), [&] {
                        return "chi=" + chi.label() + " zeta=" + zeta.label() +
                               ", sample " + std::to_string(s);
                    });
                }
            }
        }
        report.laws.push_back(law.result());
    }
    {
        LawTally law("tensor_action_and_products", tol);
        for (const auto &chi : restrictions) {
            for (int s = 0; s < opt.samples; ++s) {
                const Operator a = gen.sparse(basis, nnz);
                const Operator lifted = tensor_ops<Kernel>(a, id, chi);
                for (Index g = 0; g < n; ++g) {
                    const Ket lhs = apply(lifted, Ket::basis_state(basis, g));
                    const Ket rhs = tensor_kets<Kernel>(
                        apply(a, Ket::basis_state(basis, chi.part(g))),
                        Ket::basis_state(basis, chi.rest(g)), chi);
                    law.check(detail::ket_deviation(lhs, rhs), [&] {
                        return "(A (x) I)|" + b.graph(g).str() + "> under " + chi.label();
                    });
                }
                const Operator a1 = gen.consistency_preserving(chi, nnz);
                const Operator a2 = gen.consistency_preserving(chi, nnz);
                const Operator b1 = gen.complement_consistency_preserving(chi, nnz);
                const Operator b2 = gen.complement_consistency_preserving(chi, nnz);
                const Operator lhs =
                    tensor_ops<Kernel>(a2, b2, chi) * tensor_ops<Kernel>(a1, b1, chi);
                const Operator rhs = tensor_ops<Kernel>(a2 * a1, b2 * b1, chi);
                law.check(max_abs_difference(lhs, rhs), [&] {
                    return "(A'(x)B')(A(x)B) under " + chi.label() + ", sample " +
                           std::to_string(s);
                });
            }
        }
        report.laws.push_back(law.result());
    }
    {
        LawTally law("tensor_rejects_overlap", tol);
        for (const auto &chi : restrictions) {
            for (Index x = 0; x < n; ++x) {
                for (Index y = 0; y < n; ++y) {
                    const Index only_x = b.difference(x, y);
                    const Index only_y = b.difference(y, x);
                    const Index shared = b.difference(x, only_x);
                    if (only_x == 0 || only_y == 0 || shared == 0 || !b.unite(x, y)) {
                        continue;
                    }
                    const Ket woven = tensor_kets<Kernel>(Ket::basis_state(basis, x),
                                                          Ket::basis_state(basis, y), chi);
                    law.check(woven.is_zero(), [&] {
                        return chi.label() + " |" + b.graph(x).str() + "> (x) |" +
                               b.graph(y).str() + "> != 0";
                    });
                }
            }
        }
        report.laws.push_back(law.result());
    }

    report.wall_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    return report;
}

namespace detail {

/// Runs `f`, turning an EquivalenceViolation into a failed check.
template <class F>
void guarded(LawTally &law, const std::string &context, F &&f) {
    try {
        f();
    } catch (const EquivalenceViolation &e) {
        law.check(false, [&] { return context + ": " + e.what(); });
    }
}

} // namespace detail

/**
 * Trace channel positivity and trace preservation, the three locality
 * pictures, strict locality, local tomography and primal/dual causality.
 * Causality of the line dynamics is checked on its own 3-vertex universe.
 */
template <class Kernel = StandardKernel>
SuiteReport run_proposition_suite(const BasisPtr &basis,
                                  const std::vector<BoundRestriction> &restrictions,
                                  std::uint64_t seed, const SuiteOptions &opt = {}) {
    const auto start = std::chrono::steady_clock::now();
    SampleGenerator gen(seed);
    const Basis &b = *basis;
    const Index n = b.size();
    const double tol = opt.tol;
    const auto id = Operator::identity(basis);
    SuiteReport report{"propositions", seed, detail::universe_json(basis), {}, 0.0};

    {
        LawTally positive("trace_channel_positive", tol);
        LawTally trace("trace_channel_trace_preserving", tol);
        for (const auto &chi : restrictions) {
            for (const auto &zeta : restrictions) {
                std::vector<Index> side_condition;
                for (Index g = 0; g < n; ++g) {
                    if (StandardKernel::weave(chi.part(zeta.part(g)), zeta.rest(g), zeta)) {
                        side_condition.push_back(g);
                    }
                }
                trace.hypothesis(!side_condition.empty());
                const TraceChannelSpec spec{chi, zeta};
                for (int s = 0; s < opt.samples; ++s) {
                    const Operator rho = gen.positive(basis);
                    const double low = min_eigenvalue(lifted_trace_channel<Kernel>(rho, spec));
                    positive.check(std::max(0.0, -low), [&] {
                        return "chi=" + chi.label() + " zeta=" + zeta.label() +
                               " min eigenvalue " + format_number(low);
                    });
                    if (!side_condition.empty()) {
                        const Operator r = gen.positive(basis, side_condition);
                        const Complex out = full_trace(lifted_trace_channel<Kernel>(r, spec));
                        trace.check(std::abs(out - full_trace(r)), [&] {
                            return "chi=" + chi.label() + " zeta=" + zeta.label();
                        });
                    }
                }
            }
        }
        report.laws.push_back(positive.result());
        report.laws.push_back(trace.result());
    }

    // Operator sample: random sparse, identity, localized random operators and
    // the black/white flip when the universe has those states.
    std::vector<std::pair<std::string, Operator>> sample;
    for (int s = 0; s < 2 * opt.samples; ++s) {
        sample.emplace_back("random#" + std::to_string(s),
                            gen.sparse(basis, std::max<Index>(n, 4)));
    }
    sample.emplace_back("identity", id);
    for (const auto &chi : restrictions) {
        sample.emplace_back("localized@" + chi.label(),
                            localize(gen.sparse(basis, std::max<Index>(n, 4)), chi));
        sample.emplace_back("localized-permutation@" + chi.label(),
                            localize(gen.name_preserving_permutation(basis), chi));
    }
    const bool black_white =
        b.universe().state_position("w") && b.universe().state_position("b");
    if (black_white) {
        sample.emplace_back("flip", build_flip(basis));
    }

    {
        LawTally pictures("locality_pictures_agree", tol);
        LawTally strict("strict_locality_characterisations_agree", tol);
        LawTally unitaries("local_unitaries_strict", tol);
        LawTally products("strict_products_strict", tol);
        LawTally localized("localized_is_local", tol);
        for (const auto &chi : restrictions) {
            std::vector<const Operator *> strict_ops;
            for (const auto &[name, a] : sample) {
                const std::string ctx = name + " under " + chi.label();
                detail::guarded(pictures, ctx, [&] {
                    const auto v = is_local(a, chi, tol);
                    pictures.check(true, [] { return std::string(); });
                    if (name == "localized@" + chi.label()) {
                        localized.check(v.local(), [&] { return ctx; });
                    }
                });
                detail::guarded(strict, ctx, [&] {
                    const bool s = is_strictly_local(a, chi, tol);
                    strict.check(true, [] { return std::string(); });
                    if (s) {
                        strict_ops.push_back(&a);
                    }
                    const bool unitary_local = detail::is_local_fast(a, chi, tol) && is_unitary(a, tol);
                    unitaries.hypothesis(unitary_local);
                    if (unitary_local) {
                        unitaries.check(s, [&] { return ctx; });
                    }
                });
            }
            for (std::size_t i = 0; i < strict_ops.size() && i < 8; ++i) {
                for (std::size_t j = 0; j < strict_ops.size() && j < 8; ++j) {
                    const Operator p = *strict_ops[i] * *strict_ops[j];
                    products.check(detail::is_strictly_local_fast(p, chi, tol),
                                   [&] { return "product under " + chi.label(); });
                }
            }
        }
        report.laws.push_back(pictures.result());
        report.laws.push_back(localized.result());
        report.laws.push_back(strict.result());
        report.laws.push_back(unitaries.result());
        report.laws.push_back(products.result());
    }

    {
        LawTally flip("flip_local_not_strict", tol);
        if (black_white) {
            const auto fig5 = BoundRestriction::bind(black_passthrough(), basis);
            detail::guarded(flip, "flip", [&] {
                const auto v = is_local(build_flip(basis), fig5, tol);
                flip.check(v.local() && !v.strict, [&] {
                    return std::string("local=") + (v.local() ? "yes" : "no") +
                           " strict=" + (v.strict ? "yes" : "no");
                });
            });
        } else {
            flip.skip("universe has no w/b states");
        }
        report.laws.push_back(flip.result());
    }

    {
        LawTally toggles("toggle_gates_local", tol);
        const ExtendedUniverse eu(basis);
        const auto &ext = eu.extended();
        for (const auto &v : b.universe().vertices()) {
            const auto zeta = BoundRestriction::bind(by_vertex(v), ext);
            detail::guarded(toggles, "tau_" + v, [&] {
                const auto verdict = is_local(tau_v(eu, v), zeta, tol);
                toggles.check(verdict.local() && verdict.strict,
                              [&] { return "tau_" + v + " not strictly local"; });
            });
        }
        report.laws.push_back(toggles.result());
    }

    {
        LawTally blind("tomography_blind_to_complement", tol);
        LawTally discriminates("tomography_discriminates", tol);
        LawTally name_preserving("tomography_name_preserving", tol);
        for (const auto &chi : restrictions) {
            std::vector<std::pair<Index, Index>> hidden;
            for (Index g = 0; g < n; ++g) {
                for (Index h = g + 1; h < n; ++h) {
                    if (chi.part(g) == chi.part(h) && chi.rest(g) != chi.rest(h)) {
                        hidden.emplace_back(g, h);
                    }
                }
            }
            blind.hypothesis(!hidden.empty());
            for (int s = 0; s < opt.samples / 10 + 1; ++s) {
                const Operator rho = gen.positive(basis);
                if (!hidden.empty()) {
                    const auto [g, h] = hidden[static_cast<std::size_t>(
                        gen.uniform(static_cast<Index>(hidden.size())))];
                    const Operator bump = Operator::from_entries(
                        basis, {{g, h, 0.25}, {h, g, 0.25}}, OperatorRole::kTraceClass);
                    const Operator sigma = rho + bump;
                    detail::guarded(blind, chi.label(), [&] {
                        blind.check(tomography_equal(rho, sigma, chi, false, tol), [&] {
                            return chi.label() + " " + detail::describe_pair(b, g, h);
                        });
                    });
                }
                const Operator other = gen.positive(basis);
                detail::guarded(discriminates, chi.label(), [&] {
                    const bool differ = !approx_equal(traceout(rho, chi),
                                                      traceout(other, chi), tol);
                    discriminates.hypothesis(differ);
                    if (differ) {
                        discriminates.check(!tomography_equal(rho, other, chi, false, tol),
                                            [&] { return chi.label(); });
                    }
                });
                // Name-preserving states: keep only same-support coherences.
                std::vector<Entry> np;
                rho.for_each([&](Index r, Index c, Complex v) {
                    if (b.support_mask(r) == b.support_mask(c)) {
                        np.push_back({r, c, v});
                    }
                });
                const Operator rho_np = Operator::from_entries(basis, np, OperatorRole::kTraceClass);
                std::vector<Entry> np_other;
                other.for_each([&](Index r, Index c, Complex v) {
                    if (b.support_mask(r) == b.support_mask(c)) {
                        np_other.push_back({r, c, v});
                    }
                });
                const Operator other_np =
                    Operator::from_entries(basis, np_other, OperatorRole::kTraceClass);
                detail::guarded(name_preserving, chi.label(), [&] {
                    const bool same = approx_equal(traceout(rho_np, chi),
                                                   traceout(other_np, chi), tol);
                    name_preserving.check(
                        tomography_equal(rho_np, other_np, chi, true, tol) == same,
                        [&] { return chi.label(); });
                    name_preserving.check(tomography_equal(rho_np, rho_np, chi, true, tol),
                                          [&] { return chi.label() + " self"; });
                });
            }
        }
        report.laws.push_back(blind.result());
        report.laws.push_back(discriminates.result());
        report.laws.push_back(name_preserving.result());
    }

    {
        LawTally agree("causality_forms_agree", tol);
        std::vector<std::pair<std::string, Operator>> unitaries{{"identity", id}};
        for (int s = 0; s < 3; ++s) {
            unitaries.emplace_back("permutation#" + std::to_string(s),
                                   gen.name_preserving_permutation(basis));
        }
        for (const auto &[name, u] : unitaries) {
            for (const auto &chi : restrictions) {
                for (const auto &zeta : restrictions) {
                    detail::guarded(agree, name, [&] {
                        const auto v = is_causal(u, chi, zeta, tol);
                        agree.check(true, [] { return std::string(); });
                        if (name == "identity" && chi.label() == zeta.label()) {
                            agree.check(v.causal(), [&] {
                                return "identity not causal for " + chi.label();
                            });
                        }
                    });
                }
            }
        }
        report.laws.push_back(agree.result());
    }

    {
        LawTally line_causal("line_dynamics_causal", tol);
        LawTally composes("causality_composes", tol);
        LawTally toggle("toggle_causal", tol);
        const LineConfig line{3};
        const auto lb = make_basis(line_universe(line));
        const Operator m = build_M(lb, line);
        const Operator mc = m * build_C(lb, line, std::numbers::pi / 4);
        for (int i = 1; i <= line.length; ++i) {
            const auto chi = BoundRestriction::bind(line_neighborhood(line, i), lb);
            const auto chi2 = BoundRestriction::bind(line_neighborhood(line, i, 2), lb);
            const auto zeta = BoundRestriction::bind(line_site(line, i), lb);
            for (const auto *u : {&m, &mc}) {
                detail::guarded(line_causal, zeta.label(), [&] {
                    const auto v = is_causal(*u, chi, zeta, tol);
                    line_causal.check(v.primal && v.dual, [&] {
                        return std::string(u == &m ? "M" : "MC") + " at " + zeta.label();
                    });
                });
            }
            detail::guarded(composes, zeta.label(), [&] {
                const bool first = is_causal(m, chi2, chi, tol).causal();
                const bool second = is_causal(m, chi, zeta, tol).causal();
                composes.hypothesis(first && second);
                composes.check(first && second && causal_compose_check(m, m, chi2, zeta, tol),
                               [&] { return "M^2 at " + zeta.label(); });
            });
        }
        const ExtendedUniverse eu(basis);
        const Operator tau = toggle_unitary(eu);
        for (const auto &v : b.universe().vertices()) {
            const auto zeta = BoundRestriction::bind(by_vertex(v), eu.extended());
            detail::guarded(toggle, "tau", [&] {
                toggle.check(is_causal(tau, zeta, zeta, tol).causal(),
                             [&] { return "tau at " + v; });
            });
        }
        report.laws.push_back(line_causal.result());
        report.laws.push_back(composes.result());
        report.laws.push_back(toggle.result());
    }

    report.wall_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    return report;
}

/// Block decomposition of I, M and MC(theta) on a line, plus the rejection of
/// a non-causal unitary.
inline SuiteReport run_theorem_suite(const LineConfig &line,
                                     const std::vector<double> &thetas,
                                     std::uint64_t seed, const SuiteOptions &opt = {}) {
    const auto start = std::chrono::steady_clock::now();
    if (line.length > 4) {
        throw UniverseTooLarge("theorem suite is limited to lines of length 4");
    }
    const auto basis = make_basis(line_universe(line));
    const double tol = opt.tol;
    SuiteReport report{"theorem", seed, detail::universe_json(basis), {}, 0.0};

    Neighborhoods nb;
    for (int i = 1; i <= line.length; ++i) {
        nb.chi.emplace(line_vertex(line, i), line_neighborhood(line, i));
        nb.zeta.emplace(line_vertex(line, i), line_site(line, i));
    }
    const Operator m = build_M(basis, line);
    std::vector<std::pair<std::string, Operator>> cases{
        {"I", Operator::identity(basis)}, {"M", m}};
    for (const double theta : thetas) {
        cases.emplace_back("MC(" + format_number(theta) + ")",
                           m * build_C(basis, line, theta));
    }

    for (const auto &[name, u] : cases) {
        LawTally recon("reconstruction/" + name, tol);
        LawTally strict("gates_strictly_local/" + name, tol);
        LawTally commuting("gates_commute/" + name, tol);
        LawTally order("order_independent/" + name, tol);
        LawTally extension("extension_causal/" + name, tol);
        try {
            const auto d = block_decompose(u, nb, tol);
            const auto c = verify_decomposition(d, u, seed, tol);
            recon.check(c.reconstruction_deviation, [] { return std::string(); });
            strict.check(c.tau_strict && c.k_strict && c.tau_product_is_toggle,
                         [&] { return c.failures.empty() ? "" : c.failures.front(); });
            commuting.check(c.tau_commute && c.k_commute,
                            [&] { return c.failures.empty() ? "" : c.failures.front(); });
            order.check(c.order_deviation, [] { return std::string("shuffled order"); });
            extension.check(c.extension_causal,
                            [&] { return c.failures.empty() ? "" : c.failures.front(); });
        } catch (const Error &e) {
            recon.check(false, [&] { return std::string(e.what()); });
        }
        for (auto *t : {&recon, &strict, &commuting, &order, &extension}) {
            report.laws.push_back(t->result());
        }
    }

    LawTally rejects("rejects_non_causal", tol);
    if (line.length >= 3) {
        try {
            (void)block_decompose(build_global_swap(basis, line), nb, tol);
            rejects.check(false, [] { return std::string("global swap was decomposed"); });
        } catch (const PrerequisiteViolation &) {
            rejects.check(true, [] { return std::string(); });
        } catch (const Error &e) {
            rejects.check(false, [&] { return std::string("wrong error: ") + e.what(); });
        }
    } else {
        rejects.skip("every unitary is causal for radius-1 neighborhoods on 2 vertices");
    }
    report.laws.push_back(rejects.result());

    report.wall_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    return report;
}

} // namespace logicaltensor
