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
 * Systems, graphs, finite universes and the enumerated graph basis.
 *
 * A Graph is a canonical, value-semantic set of `state.vertex` systems with
 * pairwise distinct vertices. A Universe fixes finite vertex and state sets;
 * a Basis enumerates every graph of a universe and assigns each one a dense
 * index (mixed radix: one digit per vertex, 0 meaning "absent"). All linear
 * algebra in the library is done over Basis indices.
 */
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace logicaltensor {

using Index = std::int64_t;

inline constexpr std::uint64_t kDefaultBasisCap = std::uint64_t{1} << 20;

struct System {
    std::string state;
    std::string vertex;

    /// `state.vertex`
    [[nodiscard]] std::string token() const { return state + "." + vertex; }

    /// Splits at the last dot so that states may themselves contain dots
    /// (flag-extended states look like `0.w`).
    static System parse(std::string_view token) {
        const auto dot = token.rfind('.');
        if (dot == std::string_view::npos || dot == 0 ||
            dot + 1 == token.size()) {
            throw ParseError("malformed system token '" + std::string(token) +
                             "', expected state.vertex");
        }
        return System{std::string(token.substr(0, dot)),
                      std::string(token.substr(dot + 1))};
    }

    // Canonical order is by vertex first.
    friend std::strong_ordering operator<=>(const System &a, const System &b) {
        if (auto c = a.vertex <=> b.vertex; c != 0) {
            return c;
        }
        return a.state <=> b.state;
    }
    friend bool operator==(const System &, const System &) = default;
};

class Graph {
  public:
    Graph() = default;

    /// Canonicalises `systems`. Identical duplicates collapse; two different
    /// states on one vertex raise WellNamednessViolation.
    static Graph from(std::vector<System> systems) {
        std::sort(systems.begin(), systems.end());
        systems.erase(std::unique(systems.begin(), systems.end()),
                      systems.end());
        for (std::size_t i = 1; i < systems.size(); ++i) {
            if (systems[i].vertex == systems[i - 1].vertex) {
                throw WellNamednessViolation(
                    "vertex '" + systems[i].vertex + "' carries both '" +
                    systems[i - 1].state + "' and '" + systems[i].state + "'");
            }
        }
        Graph g;
        g.systems_ = std::move(systems);
        return g;
    }

    static Graph from_tokens(const std::vector<std::string> &tokens) {
        std::vector<System> systems;
        systems.reserve(tokens.size());
        for (const auto &t : tokens) {
            systems.push_back(System::parse(t));
        }
        return from(std::move(systems));
    }

    [[nodiscard]] const std::vector<System> &systems() const {
        return systems_;
    }
    [[nodiscard]] bool empty() const { return systems_.empty(); }
    [[nodiscard]] std::size_t size() const { return systems_.size(); }

    [[nodiscard]] std::set<std::string> support() const {
        std::set<std::string> out;
        for (const auto &s : systems_) {
            out.insert(s.vertex);
        }
        return out;
    }

    [[nodiscard]] const System *at_vertex(std::string_view vertex) const {
        auto it = std::lower_bound(
            systems_.begin(), systems_.end(), vertex,
            [](const System &s, std::string_view v) { return s.vertex < v; });
        if (it != systems_.end() && it->vertex == vertex) {
            return &*it;
        }
        return nullptr;
    }

    [[nodiscard]] bool contains(const System &s) const {
        return std::binary_search(systems_.begin(), systems_.end(), s);
    }

    [[nodiscard]] bool is_subset_of(const Graph &other) const {
        return std::includes(other.systems_.begin(), other.systems_.end(),
                             systems_.begin(), systems_.end());
    }

    /// Set difference; always well-named.
    [[nodiscard]] Graph minus(const Graph &other) const {
        Graph g;
        std::set_difference(systems_.begin(), systems_.end(),
                            other.systems_.begin(), other.systems_.end(),
                            std::back_inserter(g.systems_));
        return g;
    }

    [[nodiscard]] std::vector<std::string> tokens() const {
        std::vector<std::string> out;
        out.reserve(systems_.size());
        for (const auto &s : systems_) {
            out.push_back(s.token());
        }
        return out;
    }

    /// `{w.u, b.v}`
    [[nodiscard]] std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < systems_.size(); ++i) {
            if (i) {
                out += ", ";
            }
            out += systems_[i].token();
        }
        return out + "}";
    }

    friend auto operator<=>(const Graph &, const Graph &) = default;
    friend bool operator==(const Graph &, const Graph &) = default;

  private:
    std::vector<System> systems_;
};

inline Graph make_graph(std::vector<System> systems) {
    return Graph::from(std::move(systems));
}

inline std::set<std::string> support(const Graph &g) { return g.support(); }

/// Set union, or nullopt when some vertex would carry two states.
inline std::optional<Graph> try_union(const Graph &g, const Graph &h) {
    std::vector<System> all = g.systems();
    all.insert(all.end(), h.systems().begin(), h.systems().end());
    try {
        return Graph::from(std::move(all));
    } catch (const WellNamednessViolation &) {
        return std::nullopt;
    }
}

inline Graph graph_union(const Graph &g, const Graph &h) {
    auto u = try_union(g, h);
    if (!u) {
        throw IncompatibleUnion(g.str() + " and " + h.str() +
                                " disagree on a shared vertex");
    }
    return *std::move(u);
}

/// Finite vertex set V and internal-state set Σ, both kept sorted.
class Universe {
  public:
    Universe() = default;
    Universe(std::vector<std::string> vertices, std::vector<std::string> states)
        : vertices_(normalise(std::move(vertices), "vertex")),
          states_(normalise(std::move(states), "state")) {
        for (const auto &v : vertices_) {
            if (v.find('.') != std::string::npos) {
                throw ParseError("vertex name '" + v + "' contains a dot");
            }
        }
    }

    [[nodiscard]] const std::vector<std::string> &vertices() const {
        return vertices_;
    }
    [[nodiscard]] const std::vector<std::string> &states() const {
        return states_;
    }

    [[nodiscard]] std::optional<std::size_t>
    vertex_position(std::string_view v) const {
        return position(vertices_, v);
    }
    [[nodiscard]] std::optional<std::size_t>
    state_position(std::string_view s) const {
        return position(states_, s);
    }

    [[nodiscard]] bool contains(const System &s) const {
        return vertex_position(s.vertex) && state_position(s.state);
    }
    [[nodiscard]] bool contains(const Graph &g) const {
        return std::all_of(g.systems().begin(), g.systems().end(),
                           [this](const System &s) { return contains(s); });
    }

    /// (|Σ|+1)^|V|, saturating at the maximum of uint64.
    [[nodiscard]] std::uint64_t graph_count() const {
        const std::uint64_t radix = states_.size() + 1;
        std::uint64_t n = 1;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (n > std::numeric_limits<std::uint64_t>::max() / radix) {
                return std::numeric_limits<std::uint64_t>::max();
            }
            n *= radix;
        }
        return n;
    }

    friend bool operator==(const Universe &, const Universe &) = default;

  private:
    static std::vector<std::string> normalise(std::vector<std::string> xs,
                                              const char *what) {
        for (const auto &x : xs) {
            if (x.empty()) {
                throw ParseError(std::string("empty ") + what + " name");
            }
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        return xs;
    }

    static std::optional<std::size_t>
    position(const std::vector<std::string> &xs, std::string_view x) {
        auto it = std::lower_bound(xs.begin(), xs.end(), x);
        if (it != xs.end() && *it == x) {
            return static_cast<std::size_t>(it - xs.begin());
        }
        return std::nullopt;
    }

    std::vector<std::string> vertices_;
    std::vector<std::string> states_;
};

/**
 * Enumerated graph basis of a universe.
 *
 * Index i encodes one digit per vertex in universe order, least significant
 * first: digit 0 means the vertex is absent, digit k>0 means it carries the
 * (k-1)-th state. Index 0 is the empty graph.
 */
class Basis {
  public:
    explicit Basis(Universe universe, std::uint64_t cap = kDefaultBasisCap)
        : universe_(std::move(universe)),
          radix_(static_cast<Index>(universe_.states().size()) + 1) {
        const auto count = universe_.graph_count();
        if (count > cap) {
            throw UniverseTooLarge(std::to_string(count) +
                                   " graphs exceed the cap of " +
                                   std::to_string(cap));
        }
        size_ = static_cast<Index>(count);
        powers_.resize(universe_.vertices().size() + 1);
        powers_[0] = 1;
        for (std::size_t i = 1; i < powers_.size(); ++i) {
            powers_[i] = powers_[i - 1] * radix_;
        }
    }

    [[nodiscard]] const Universe &universe() const { return universe_; }
    [[nodiscard]] Index size() const { return size_; }
    [[nodiscard]] std::size_t vertex_count() const {
        return universe_.vertices().size();
    }

    /// 0 for absent, 1 + state position otherwise.
    [[nodiscard]] Index digit(Index g, std::size_t vertex_pos) const {
        return (g / powers_[vertex_pos]) % radix_;
    }

    [[nodiscard]] Index with_digit(Index g, std::size_t vertex_pos,
                                   Index d) const {
        return g + (d - digit(g, vertex_pos)) * powers_[vertex_pos];
    }

    [[nodiscard]] Graph graph(Index g) const {
        std::vector<System> systems;
        for (std::size_t p = 0; p < vertex_count(); ++p) {
            if (auto d = digit(g, p); d != 0) {
                systems.push_back(System{universe_.states()[d - 1],
                                         universe_.vertices()[p]});
            }
        }
        // Vertex order of the universe is the canonical order.
        return Graph::from(std::move(systems));
    }

    [[nodiscard]] Index index_of(const Graph &g) const {
        Index idx = 0;
        for (const auto &s : g.systems()) {
            auto vp = universe_.vertex_position(s.vertex);
            auto sp = universe_.state_position(s.state);
            if (!vp || !sp) {
                throw OutOfUniverse("system " + s.token() +
                                    " is not in the universe");
            }
            idx += (static_cast<Index>(*sp) + 1) * powers_[*vp];
        }
        return idx;
    }

    [[nodiscard]] std::uint32_t support_mask(Index g) const {
        std::uint32_t mask = 0;
        for (std::size_t p = 0; p < vertex_count(); ++p) {
            if (digit(g, p) != 0) {
                mask |= std::uint32_t{1} << p;
            }
        }
        return mask;
    }

    [[nodiscard]] std::size_t system_count(Index g) const {
        std::size_t n = 0;
        for (std::size_t p = 0; p < vertex_count(); ++p) {
            n += digit(g, p) != 0;
        }
        return n;
    }

    /// Union of two graphs, or nullopt when a shared vertex disagrees.
    [[nodiscard]] std::optional<Index> unite(Index a, Index b) const {
        Index out = 0;
        for (std::size_t p = 0; p < vertex_count(); ++p) {
            const Index da = digit(a, p);
            const Index db = digit(b, p);
            if (da != 0 && db != 0 && da != db) {
                return std::nullopt;
            }
            out += (da != 0 ? da : db) * powers_[p];
        }
        return out;
    }

    [[nodiscard]] bool is_subset(Index a, Index b) const {
        for (std::size_t p = 0; p < vertex_count(); ++p) {
            const Index da = digit(a, p);
            if (da != 0 && da != digit(b, p)) {
                return false;
            }
        }
        return true;
    }

    /// a \ b as graphs (systems of a not present in b).
    [[nodiscard]] Index difference(Index a, Index b) const {
        Index out = 0;
        for (std::size_t p = 0; p < vertex_count(); ++p) {
            const Index da = digit(a, p);
            if (da != 0 && da != digit(b, p)) {
                out += da * powers_[p];
            }
        }
        return out;
    }

  private:
    Universe universe_;
    Index radix_;
    Index size_ = 0;
    std::vector<Index> powers_;
};

using BasisPtr = std::shared_ptr<const Basis>;

inline BasisPtr make_basis(Universe universe,
                           std::uint64_t cap = kDefaultBasisCap) {
    return std::make_shared<const Basis>(std::move(universe), cap);
}

inline void require_same_basis(const BasisPtr &a, const BasisPtr &b) {
    if (a != b && !(a && b && a->universe() == b->universe())) {
        throw UniverseMismatch("operands live over different universes");
    }
}

/// Every graph of `u` in basis-index order.
inline std::vector<Graph> enumerate_graphs(const Universe &u,
                                           std::uint64_t cap = kDefaultBasisCap) {
    const Basis basis(u, cap);
    std::vector<Graph> out;
    out.reserve(static_cast<std::size_t>(basis.size()));
    for (Index g = 0; g < basis.size(); ++g) {
        out.push_back(basis.graph(g));
    }
    return out;
}

} // namespace logicaltensor
