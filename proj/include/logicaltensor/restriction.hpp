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
 * Restrictions: subgraph selectors G -> G_chi with G_chi a subset of G such
 * that G_chi <= H <= G forces H_chi = G_chi.
 *
 * A Restriction is a universe-independent selector. Binding it to a Basis
 * tabulates G_chi and G \ G_chi for every basis graph and checks the axiom;
 * all algebra downstream runs on those tables. The complement chi-bar is never
 * a Restriction object, only the graph-level `rest` table.
 */
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace logicaltensor {

using Selector = std::function<Graph(const Graph &)>;

class Restriction {
  public:
    Restriction(std::string label, Selector selector,
                std::optional<bool> pointwise_hint = std::nullopt)
        : label_(std::move(label)), selector_(std::move(selector)),
          pointwise_hint_(pointwise_hint) {}

    /// Raw selector output, unchecked.
    [[nodiscard]] Graph select(const Graph &g) const { return selector_(g); }
    [[nodiscard]] const std::string &label() const { return label_; }
    [[nodiscard]] std::optional<bool> pointwise_hint() const {
        return pointwise_hint_;
    }

  private:
    std::string label_;
    Selector selector_;
    std::optional<bool> pointwise_hint_;
};

/// G_chi; raises SubsetViolation if the selector escapes G.
inline Graph restrict(const Restriction &chi, const Graph &g) {
    Graph out = chi.select(g);
    if (!out.is_subset_of(g)) {
        throw SubsetViolation(chi.label() + " maps " + g.str() + " to " +
                              out.str());
    }
    return out;
}

/// G \ G_chi
inline Graph complement_part(const Restriction &chi, const Graph &g) {
    return g.minus(restrict(chi, g));
}

struct ValidationReport {
    bool passed = true;
    /// (G, H) with G_chi <= H <= G and H_chi != G_chi.
    std::optional<std::pair<Graph, Graph>> counterexample;
    std::string detail;
};

/**
 * A restriction tabulated over a basis. `validated()` is true when the
 * restriction axiom has been checked on every graph; candidates built by
 * composition may be bound without that check.
 */
class BoundRestriction {
  public:
    [[nodiscard]] const Restriction &restriction() const { return restriction_; }
    [[nodiscard]] const std::string &label() const { return restriction_.label(); }
    [[nodiscard]] const BasisPtr &basis() const { return basis_; }
    [[nodiscard]] bool validated() const { return validated_; }

    /// Index of G_chi.
    [[nodiscard]] Index part(Index g) const { return table_->part[g]; }
    /// Index of G \ G_chi.
    [[nodiscard]] Index rest(Index g) const { return table_->rest[g]; }

    [[nodiscard]] Graph restrict(const Graph &g) const {
        return basis_->graph(part(basis_->index_of(g)));
    }
    [[nodiscard]] Graph complement_part(const Graph &g) const {
        return basis_->graph(rest(basis_->index_of(g)));
    }

    /// Distinct G_chi values, ascending.
    [[nodiscard]] const std::vector<Index> &range() const {
        return table_->range;
    }
    [[nodiscard]] bool in_range(Index g) const { return part(g) == g; }

    /// Tabulates without checking the restriction axiom.
    static BoundRestriction tabulate(Restriction chi, BasisPtr basis) {
        auto table = std::make_shared<Table>();
        const Index n = basis->size();
        table->part.resize(static_cast<std::size_t>(n));
        table->rest.resize(static_cast<std::size_t>(n));
        for (Index g = 0; g < n; ++g) {
            const Graph graph = basis->graph(g);
            const Graph sub = logicaltensor::restrict(chi, graph);
            table->part[g] = basis->index_of(sub);
            table->rest[g] = basis->difference(g, table->part[g]);
        }
        std::set<Index> range(table->part.begin(), table->part.end());
        table->range.assign(range.begin(), range.end());
        BoundRestriction b(std::move(chi), std::move(basis), std::move(table));
        return b;
    }

    /// Tabulates and validates; raises RestrictionAxiomViolation.
    static BoundRestriction bind(Restriction chi, BasisPtr basis);

  private:
    struct Table {
        std::vector<Index> part;
        std::vector<Index> rest;
        std::vector<Index> range;
    };

    BoundRestriction(Restriction chi, BasisPtr basis,
                     std::shared_ptr<const Table> table)
        : restriction_(std::move(chi)), basis_(std::move(basis)),
          table_(std::move(table)) {}

    friend ValidationReport check_axiom(const BoundRestriction &b);

    Restriction restriction_;
    BasisPtr basis_;
    std::shared_ptr<const Table> table_;
    bool validated_ = false;
};

/**
 * Exhaustive axiom check on a tabulated selector. It suffices to test
 * single-system removals: if every H = G \ {s} with s outside G_chi has
 * H_chi = G_chi, induction on |G \ H| covers every G_chi <= H <= G.
 */
inline ValidationReport check_axiom(const BoundRestriction &b) {
    const Basis &basis = *b.basis();
    for (Index g = 0; g < basis.size(); ++g) {
        const Index part = b.part(g);
        for (std::size_t p = 0; p < basis.vertex_count(); ++p) {
            if (basis.digit(g, p) == 0 || basis.digit(part, p) != 0) {
                continue;
            }
            const Index h = basis.with_digit(g, p, 0);
            if (b.part(h) != part) {
                ValidationReport r;
                r.passed = false;
                r.counterexample = {basis.graph(g), basis.graph(h)};
                r.detail = b.label() + ": G=" + basis.graph(g).str() +
                           " has G_chi=" + basis.graph(part).str() +
                           " but H=" + basis.graph(h).str() + " has H_chi=" +
                           basis.graph(b.part(h)).str();
                return r;
            }
        }
    }
    return {};
}

inline BoundRestriction BoundRestriction::bind(Restriction chi, BasisPtr basis) {
    auto b = tabulate(std::move(chi), std::move(basis));
    auto report = check_axiom(b);
    if (!report.passed) {
        throw RestrictionAxiomViolation(report.detail);
    }
    b.validated_ = true;
    return b;
}

inline ValidationReport validate_restriction(const Restriction &chi,
                                             const BasisPtr &basis) {
    try {
        return check_axiom(BoundRestriction::tabulate(chi, basis));
    } catch (const SubsetViolation &e) {
        ValidationReport r;
        r.passed = false;
        r.detail = e.what();
        return r;
    }
}

inline void require_same_universe(const BoundRestriction &a,
                                  const BoundRestriction &b) {
    require_same_basis(a.basis(), b.basis());
}

/// G_chi equals the union of {s}_chi over the systems s of G, for every G.
inline bool is_pointwise(const BoundRestriction &chi) {
    const Basis &basis = *chi.basis();
    for (Index g = 0; g < basis.size(); ++g) {
        Index acc = 0;
        for (std::size_t p = 0; p < basis.vertex_count(); ++p) {
            if (const Index d = basis.digit(g, p); d != 0) {
                acc = *basis.unite(acc, chi.part(basis.with_digit(0, p, d)));
            }
        }
        if (acc != chi.part(g)) {
            return false;
        }
    }
    return true;
}

inline bool is_pointwise(const Restriction &chi, const BasisPtr &basis) {
    return is_pointwise(BoundRestriction::tabulate(chi, basis));
}

namespace detail {
inline std::optional<bool> both(std::optional<bool> a, std::optional<bool> b) {
    if (a == true && b == true) {
        return true;
    }
    return std::nullopt;
}
} // namespace detail

/// chi zeta := zeta after chi. Not necessarily a restriction.
inline Restriction compose(const Restriction &chi, const Restriction &zeta) {
    return Restriction(
        chi.label() + "*" + zeta.label(),
        [chi, zeta](const Graph &g) { return zeta.select(chi.select(g)); },
        detail::both(chi.pointwise_hint(), zeta.pointwise_hint()));
}

/// chi-bar zeta: G -> (G \ G_chi)_zeta.
inline Restriction compose_complement(const Restriction &chi,
                                      const Restriction &zeta) {
    return Restriction(
        "~" + chi.label() + "*" + zeta.label(),
        [chi, zeta](const Graph &g) {
            return zeta.select(g.minus(chi.select(g)));
        },
        detail::both(chi.pointwise_hint(), zeta.pointwise_hint()));
}

/// G -> G_chi u G_zeta (both subsets of G, so always well-named).
inline Restriction unite(const Restriction &chi, const Restriction &zeta) {
    return Restriction(
        chi.label() + "|" + zeta.label(),
        [chi, zeta](const Graph &g) {
            return graph_union(chi.select(g), zeta.select(g));
        },
        detail::both(chi.pointwise_hint(), zeta.pointwise_hint()));
}

/// Union of two validated restrictions; the result is validated and must pass.
inline BoundRestriction union_restriction(const BoundRestriction &chi,
                                          const BoundRestriction &zeta) {
    require_same_universe(chi, zeta);
    try {
        return BoundRestriction::bind(unite(chi.restriction(), zeta.restriction()),
                                      chi.basis());
    } catch (const RestrictionAxiomViolation &e) {
        throw InternalContractViolation(
            std::string("union of restrictions failed validation: ") + e.what());
    }
}

struct CommutationReport {
    bool chi_zeta = true;          ///< [chi, zeta] = 0
    bool chibar_zeta = true;       ///< [chi-bar, zeta] = 0
    bool chi_zetabar = true;       ///< [chi, zeta-bar] = 0
    bool chibar_zetabar = true;    ///< [chi-bar, zeta-bar] = 0
    [[nodiscard]] bool all() const {
        return chi_zeta && chibar_zeta && chi_zetabar && chibar_zetabar;
    }
};

inline CommutationReport commute(const BoundRestriction &chi,
                                 const BoundRestriction &zeta) {
    require_same_universe(chi, zeta);
    CommutationReport r;
    for (Index g = 0; g < chi.basis()->size(); ++g) {
        r.chi_zeta &= zeta.part(chi.part(g)) == chi.part(zeta.part(g));
        r.chibar_zeta &= zeta.part(chi.rest(g)) == chi.rest(zeta.part(g));
        r.chi_zetabar &= zeta.rest(chi.part(g)) == chi.part(zeta.rest(g));
        r.chibar_zetabar &= zeta.rest(chi.rest(g)) == chi.rest(zeta.rest(g));
    }
    return r;
}

/**
 * zeta is comprehended within chi: G_{chi zeta} = G_zeta for all G, and
 * <H_zbar|G_zbar> = <H_{chi zbar}|G_{chi zbar}><H_cbar|G_cbar> for every pair
 * of basis graphs (as 0/1 indicators).
 */
inline bool comprehends(const BoundRestriction &zeta,
                        const BoundRestriction &chi) {
    require_same_universe(chi, zeta);
    const Index n = chi.basis()->size();
    for (Index g = 0; g < n; ++g) {
        if (zeta.part(chi.part(g)) != zeta.part(g)) {
            return false;
        }
    }
    for (Index g = 0; g < n; ++g) {
        for (Index h = 0; h < n; ++h) {
            const bool lhs = zeta.rest(g) == zeta.rest(h);
            const bool rhs = zeta.rest(chi.part(g)) == zeta.rest(chi.part(h)) &&
                             chi.rest(g) == chi.rest(h);
            if (lhs != rhs) {
                return false;
            }
        }
    }
    return true;
}

// Built-ins.

/// zeta_v: keeps the system sitting at vertex v.
inline Restriction by_vertex(const std::string &v) {
    return Restriction(
        "zeta_" + v,
        [v](const Graph &g) {
            const System *s = g.at_vertex(v);
            return s ? Graph::from({*s}) : Graph{};
        },
        true);
}

/// Union of by-vertex restrictions over `vs`.
inline Restriction by_vertices(const std::set<std::string> &vs,
                               std::string label = {}) {
    if (label.empty()) {
        label = "zeta_{";
        for (const auto &v : vs) {
            label += (label.back() == '{' ? "" : ",") + v;
        }
        label += "}";
    }
    return Restriction(
        std::move(label),
        [vs](const Graph &g) {
            std::vector<System> keep;
            for (const auto &s : g.systems()) {
                if (vs.count(s.vertex)) {
                    keep.push_back(s);
                }
            }
            return Graph::from(std::move(keep));
        },
        true);
}

/// Keeps every system whose internal state is `state`.
inline Restriction by_state(const std::string &state) {
    return Restriction(
        "state_" + state,
        [state](const Graph &g) {
            std::vector<System> keep;
            for (const auto &s : g.systems()) {
                if (s.state == state) {
                    keep.push_back(s);
                }
            }
            return Graph::from(std::move(keep));
        },
        true);
}

/// All-black graphs pass through whole; otherwise only the white systems.
inline Restriction black_passthrough(const std::string &white = "w",
                                     const std::string &black = "b") {
    return Restriction(
        "fig5",
        [white, black](const Graph &g) {
            std::vector<System> whites;
            bool all_black = true;
            for (const auto &s : g.systems()) {
                all_black &= s.state == black;
                if (s.state == white) {
                    whites.push_back(s);
                }
            }
            return all_black ? g : Graph::from(std::move(whites));
        },
        false);
}

/// mu: keeps systems whose flag bit is 0 (states of the form `0.<state>`).
inline Restriction flag_zero() {
    return Restriction(
        "mu",
        [](const Graph &g) {
            std::vector<System> keep;
            for (const auto &s : g.systems()) {
                if (s.state.rfind("0.", 0) == 0) {
                    keep.push_back(s);
                }
            }
            return Graph::from(std::move(keep));
        },
        true);
}

inline Restriction full_restriction() {
    return Restriction("full", [](const Graph &g) { return g; }, true);
}

inline Restriction empty_restriction() {
    return Restriction("empty", [](const Graph &) { return Graph{}; }, true);
}

/// Explicit G -> G_chi table; graphs missing from the table raise
/// OutOfUniverse when evaluated.
inline Restriction from_table(std::map<Graph, Graph> table,
                              std::string label = "table") {
    auto shared = std::make_shared<const std::map<Graph, Graph>>(std::move(table));
    return Restriction(std::move(label), [shared](const Graph &g) {
        auto it = shared->find(g);
        if (it == shared->end()) {
            throw OutOfUniverse("restriction table has no entry for " + g.str());
        }
        return it->second;
    });
}

} // namespace logicaltensor
