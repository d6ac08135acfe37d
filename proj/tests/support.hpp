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

// Shared fixtures and brute-force oracles for the unit tests.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "logicaltensor/logicaltensor.hpp"

namespace lt = logicaltensor;

namespace testing_support {

inline lt::Graph g(std::initializer_list<const char *> tokens) {
    return lt::Graph::from_tokens({tokens.begin(), tokens.end()});
}

inline lt::BasisPtr u2s2() { return lt::make_basis(lt::Universe({"u", "v"}, {"w", "b"})); }
inline lt::BasisPtr u3s2() {
    return lt::make_basis(lt::Universe({"u", "v", "x"}, {"w", "b"}));
}

inline lt::Ket ket(const lt::BasisPtr &basis, const lt::Graph &graph) {
    return lt::Ket::of(basis, graph);
}

/// |ket><bra| on graphs.
inline lt::Operator outer(const lt::BasisPtr &basis, const lt::Graph &ket_graph,
                          const lt::Graph &bra_graph, lt::Complex value = 1.0) {
    return lt::Operator::from_entries(
        basis, {{basis->index_of(ket_graph), basis->index_of(bra_graph), value}});
}

/// Every subset of the systems of `graph`.
inline std::vector<lt::Graph> subgraphs(const lt::Graph &graph) {
    const auto &systems = graph.systems();
    std::vector<lt::Graph> out;
    for (std::uint32_t mask = 0; mask < (1u << systems.size()); ++mask) {
        std::vector<lt::System> pick;
        for (std::size_t i = 0; i < systems.size(); ++i) {
            if (mask & (1u << i)) {
                pick.push_back(systems[i]);
            }
        }
        out.push_back(lt::Graph::from(pick));
    }
    return out;
}

/// Restriction axiom by exhausting every H with G_chi <= H <= G.
inline bool axiom_holds_brute_force(const lt::Restriction &chi, const lt::Universe &u) {
    for (const auto &graph : lt::enumerate_graphs(u)) {
        const auto part = chi.select(graph);
        if (!part.is_subset_of(graph)) {
            return false;
        }
        for (const auto &h : subgraphs(graph)) {
            if (part.is_subset_of(h) && chi.select(h) != part) {
                return false;
            }
        }
    }
    return true;
}

/// Dense traceout straight from the graph-level definition.
inline Eigen::MatrixXcd traceout_oracle(const lt::Operator &rho, const lt::Restriction &chi) {
    const auto &basis = *rho.basis();
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    const Eigen::MatrixXcd dense = rho.dense();
    for (lt::Index a = 0; a < n; ++a) {
        for (lt::Index b = 0; b < n; ++b) {
            const auto ga = basis.graph(a);
            const auto gb = basis.graph(b);
            const auto pa = chi.select(ga);
            const auto pb = chi.select(gb);
            if (ga.minus(pa) == gb.minus(pb)) {
                out(basis.index_of(pa), basis.index_of(pb)) += dense(a, b);
            }
        }
    }
    return out;
}

/// Generalised tensor of two basis graphs straight from the definition.
inline std::optional<lt::Graph> weave_oracle(const lt::Graph &left, const lt::Graph &right,
                                             const lt::Restriction &chi) {
    const auto joined = lt::try_union(left, right);
    if (!joined) {
        return std::nullopt;
    }
    if (chi.select(*joined) != left || joined->minus(left) != right) {
        return std::nullopt;
    }
    return joined;
}

inline double dense_difference(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace testing_support
