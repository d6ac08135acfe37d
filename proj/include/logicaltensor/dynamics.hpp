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
 * Example dynamics on a line of vertices v1 < ... < vn.
 *
 * Each vertex carries one of four states: E (empty), R (right-mover),
 * L (left-mover) or LR (both). The propagation step hops every mover one
 * vertex per tick; a mover with no vertex ahead of it turns around in place.
 * A vertex missing from the graph counts as a border, so the step is also
 * defined (and reversible) on partial supports, which is what traceouts
 * produce.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "restriction.hpp"
#include "state.hpp"

namespace logicaltensor {

inline const std::string kEmptySite = "E";
inline const std::string kLeftMover = "L";
inline const std::string kRightMover = "R";
inline const std::string kBothMovers = "LR";

struct LineConfig {
    int length = 3;
};

/// Name of the i-th vertex (1-based), zero-padded so that name order matches
/// line order.
inline std::string line_vertex(const LineConfig &line, int i) {
    const int width = static_cast<int>(std::to_string(line.length).size());
    std::string digits = std::to_string(i);
    return "v" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') +
           digits;
}

inline Universe line_universe(const LineConfig &line) {
    if (line.length < 2) {
        throw ParseError("line length must be at least 2");
    }
    std::vector<std::string> vertices;
    for (int i = 1; i <= line.length; ++i) {
        vertices.push_back(line_vertex(line, i));
    }
    return Universe(vertices,
                    {kEmptySite, kLeftMover, kRightMover, kBothMovers});
}

/// zeta_v for the i-th vertex.
inline Restriction line_site(const LineConfig &line, int i) {
    return by_vertex(line_vertex(line, i));
}

/// Vertices within `radius` of the i-th vertex, clamped at the ends.
inline Restriction line_neighborhood(const LineConfig &line, int i,
                                     int radius = 1) {
    std::set<std::string> vs;
    for (int j = std::max(1, i - radius); j <= std::min(line.length, i + radius);
         ++j) {
        vs.insert(line_vertex(line, j));
    }
    return by_vertices(vs, "chi" + std::to_string(radius) + "_" +
                               line_vertex(line, i));
}

namespace detail {

struct LineDigits {
    std::size_t empty, left, right, both;
};

inline LineDigits line_digits(const Basis &basis) {
    const auto &u = basis.universe();
    auto digit_of = [&](const std::string &s) -> std::size_t {
        const auto p = u.state_position(s);
        if (!p) {
            throw OutOfUniverse("line state '" + s + "' missing from universe");
        }
        return *p + 1;
    };
    return {digit_of(kEmptySite), digit_of(kLeftMover), digit_of(kRightMover),
            digit_of(kBothMovers)};
}

/// Universe positions of the line vertices, in line order.
inline std::vector<std::size_t> line_positions(const Basis &basis,
                                               const LineConfig &line) {
    std::vector<std::size_t> out;
    for (int i = 1; i <= line.length; ++i) {
        const auto p = basis.universe().vertex_position(line_vertex(line, i));
        if (!p) {
            throw OutOfUniverse("vertex " + line_vertex(line, i) +
                                " missing from universe");
        }
        out.push_back(*p);
    }
    return out;
}

} // namespace detail

/// One propagation tick. Permutes every support sector.
inline Operator build_M(const BasisPtr &basis, const LineConfig &line) {
    const auto d = detail::line_digits(*basis);
    const auto pos = detail::line_positions(*basis, line);
    const auto n = pos.size();
    auto has_left = [&](Index x) { return x == Index(d.left) || x == Index(d.both); };
    auto has_right = [&](Index x) {
        return x == Index(d.right) || x == Index(d.both);
    };

    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(basis->size()));
    for (Index g = 0; g < basis->size(); ++g) {
        std::vector<Index> digit(n);
        for (std::size_t i = 0; i < n; ++i) {
            digit[i] = basis->digit(g, pos[i]);
        }
        Index out = g;
        for (std::size_t i = 0; i < n; ++i) {
            if (digit[i] == 0) {
                continue;
            }
            const bool left_open = i > 0 && digit[i - 1] != 0;
            const bool right_open = i + 1 < n && digit[i + 1] != 0;
            const bool r_in = left_open ? has_right(digit[i - 1]) : has_left(digit[i]);
            const bool l_in = right_open ? has_left(digit[i + 1]) : has_right(digit[i]);
            const Index next = r_in && l_in ? Index(d.both)
                               : r_in       ? Index(d.right)
                               : l_in       ? Index(d.left)
                                            : Index(d.empty);
            out = basis->with_digit(out, pos[i], next);
        }
        entries.push_back({out, g, 1.0});
    }
    return Operator::from_entries(basis, entries);
}

/// Rotation between R and L at every present vertex.
inline Operator build_C(const BasisPtr &basis, const LineConfig &line,
                        double theta) {
    const auto d = detail::line_digits(*basis);
    const auto pos = detail::line_positions(*basis, line);
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    std::vector<Entry> entries;
    for (Index g = 0; g < basis->size(); ++g) {
        std::vector<std::pair<Index, Complex>> branches{{g, 1.0}};
        for (const auto p : pos) {
            const Index x = basis->digit(g, p);
            if (x != Index(d.left) && x != Index(d.right)) {
                continue;
            }
            std::vector<std::pair<Index, Complex>> next;
            for (const auto &[h, a] : branches) {
                if (x == Index(d.right)) {
                    next.emplace_back(h, a * c);
                    next.emplace_back(basis->with_digit(h, p, Index(d.left)), a * s);
                } else {
                    next.emplace_back(h, a * c);
                    next.emplace_back(basis->with_digit(h, p, Index(d.right)), -a * s);
                }
            }
            branches = std::move(next);
        }
        for (const auto &[h, a] : branches) {
            entries.push_back({h, g, a});
        }
    }
    return Operator::from_entries(basis, entries);
}

/// Sends an all-white graph to its all-black copy and annihilates any graph
/// with a black system.
inline Operator build_flip(const BasisPtr &basis, const std::string &white = "w",
                           const std::string &black = "b") {
    const auto &u = basis->universe();
    const auto wp = u.state_position(white);
    const auto bp = u.state_position(black);
    if (!wp || !bp) {
        throw OutOfUniverse("flip needs states '" + white + "' and '" + black + "'");
    }
    const Index wd = static_cast<Index>(*wp) + 1;
    const Index bd = static_cast<Index>(*bp) + 1;
    std::vector<Entry> entries;
    for (Index g = 0; g < basis->size(); ++g) {
        Index out = g;
        bool all_white = true;
        for (std::size_t p = 0; p < basis->vertex_count(); ++p) {
            const Index x = basis->digit(g, p);
            if (x == 0) {
                continue;
            }
            if (x != wd) {
                all_white = false;
                break;
            }
            out = basis->with_digit(out, p, bd);
        }
        if (all_white) {
            entries.push_back({out, g, 1.0});
        }
    }
    return Operator::from_entries(basis, entries);
}

/// Exchanges the states of the two end vertices when both are present.
/// Unitary and name-preserving, but not causal for radius-1 neighborhoods
/// once the line has three or more vertices.
inline Operator build_global_swap(const BasisPtr &basis, const LineConfig &line) {
    const auto pos = detail::line_positions(*basis, line);
    const auto first = pos.front();
    const auto last = pos.back();
    std::vector<Entry> entries;
    for (Index g = 0; g < basis->size(); ++g) {
        const Index a = basis->digit(g, first);
        const Index b = basis->digit(g, last);
        Index out = g;
        if (a != 0 && b != 0) {
            out = basis->with_digit(basis->with_digit(g, first, b), last, a);
        }
        entries.push_back({out, g, 1.0});
    }
    return Operator::from_entries(basis, entries);
}

/// Movers counted with multiplicity (LR counts twice).
inline int particle_number(const Basis &basis, Index g) {
    const auto d = detail::line_digits(basis);
    int n = 0;
    for (std::size_t p = 0; p < basis.vertex_count(); ++p) {
        const auto x = static_cast<std::size_t>(basis.digit(g, p));
        n += (x == d.left || x == d.right) ? 1 : (x == d.both ? 2 : 0);
    }
    return n;
}

/**
 * Trajectory psi_0 = psi, psi_{k+1} = (ops[0] * ops[1] * ...) psi_k, so the
 * last operator in the list acts first. Returns steps + 1 kets.
 */
inline std::vector<Ket> evolve(const Ket &psi, const std::vector<Operator> &ops,
                               int steps) {
    Operator step = Operator::identity(psi.basis());
    for (const auto &op : ops) {
        step = step * op;
    }
    std::vector<Ket> out{psi};
    out.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k < steps; ++k) {
        out.push_back(apply(step, out.back()));
    }
    return out;
}

} // namespace logicaltensor
