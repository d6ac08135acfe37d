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
 * JSON file formats.
 *
 *   universe     {"vertices": [...], "states": [...]}
 *   graph        ["w.u", "b.v"]             (sorted on output)
 *   ket          [{"re", "im", "graph"}, ...]   numbers to 15 significant digits
 *   operator     [{"re", "im", "bra", "ket"}, ...]   entry <bra|A|ket>
 *   restriction  {"kind": ..., ...}  see RestrictionSpec
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "restriction.hpp"
#include "state.hpp"

namespace logicaltensor {

using Json = nlohmann::json;

/// Significant digits of amplitudes in ket and operator files: enough to keep
/// normalisation to ~1e-15 while hiding last-bit noise such as 0.4999999999999999.
inline constexpr int kAmplitudeDigits = 15;

/// `x` printed with `digits` significant digits (12 by default).
inline std::string format_number(double x, int digits = 12) {
    if (std::abs(x) < 1e-300) {
        x = 0.0; // no "-0"
    }
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

/// `x` rounded to `digits` significant digits.
inline double round_significant(double x, int digits = 12) {
    return std::stod(format_number(x, digits));
}

inline Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception &e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string &path, const Json &j) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path);
    }
    out << j.dump(2) << "\n";
}

namespace detail {

template <class F> auto json_guard(const char *what, F &&f) {
    try {
        return f();
    } catch (const Json::exception &e) {
        throw ParseError(std::string("malformed ") + what + ": " + e.what());
    }
}

} // namespace detail

inline Json universe_to_json(const Universe &u) {
    return {{"vertices", u.vertices()}, {"states", u.states()}};
}

inline Universe universe_from_json(const Json &j) {
    return detail::json_guard("universe", [&] {
        return Universe(j.at("vertices").get<std::vector<std::string>>(),
                        j.at("states").get<std::vector<std::string>>());
    });
}

inline Json graph_to_json(const Graph &g) { return g.tokens(); }

inline Graph graph_from_json(const Json &j) {
    return detail::json_guard("graph", [&] {
        return Graph::from_tokens(j.get<std::vector<std::string>>());
    });
}

inline Json ket_to_json(const Ket &psi) {
    Json out = Json::array();
    for (const auto &[g, a] : psi.terms()) {
        out.push_back({{"re", round_significant(a.real(), kAmplitudeDigits)},
                       {"im", round_significant(a.imag(), kAmplitudeDigits)},
                       {"graph", graph_to_json(psi.basis()->graph(g))}});
    }
    return out;
}

inline Ket ket_from_json(const Json &j, const BasisPtr &basis) {
    return detail::json_guard("ket", [&] {
        Ket psi(basis);
        for (const auto &t : j) {
            psi.add(basis->index_of(graph_from_json(t.at("graph"))),
                    {t.at("re").get<double>(), t.value("im", 0.0)});
        }
        return psi;
    });
}

inline Json operator_to_json(const Operator &a) {
    Json out = Json::array();
    const auto &basis = *a.basis();
    for (const auto &e : a.entries()) {
        out.push_back({{"re", round_significant(e.value.real(), kAmplitudeDigits)},
                       {"im", round_significant(e.value.imag(), kAmplitudeDigits)},
                       {"bra", graph_to_json(basis.graph(e.row))},
                       {"ket", graph_to_json(basis.graph(e.col))}});
    }
    return out;
}

inline Operator operator_from_json(const Json &j, const BasisPtr &basis) {
    return detail::json_guard("operator", [&] {
        std::vector<Entry> entries;
        for (const auto &t : j) {
            entries.push_back({basis->index_of(graph_from_json(t.at("bra"))),
                               basis->index_of(graph_from_json(t.at("ket"))),
                               {t.at("re").get<double>(), t.value("im", 0.0)}});
        }
        return Operator::from_entries(basis, entries);
    });
}

/// Declarative description of a restriction, serialisable to and from JSON.
struct RestrictionSpec {
    std::string kind; ///< by_vertex, by_vertices, by_state, fig5, mu, union,
                      ///< compose, compose_complement, table, full, empty
    std::string label;
    std::string vertex;
    std::vector<std::string> vertices;
    std::string state;
    std::string white = "w";
    std::string black = "b";
    /// Operands of union (any number) and compose (first, then).
    std::vector<RestrictionSpec> operands;
    std::vector<std::pair<Graph, Graph>> table;

    friend bool operator==(const RestrictionSpec &, const RestrictionSpec &) = default;
};

inline Json restriction_spec_to_json(const RestrictionSpec &s) {
    Json j{{"kind", s.kind}};
    if (!s.label.empty()) {
        j["label"] = s.label;
    }
    if (s.kind == "by_vertex") {
        j["vertex"] = s.vertex;
    } else if (s.kind == "by_vertices") {
        j["vertices"] = s.vertices;
    } else if (s.kind == "by_state") {
        j["state"] = s.state;
    } else if (s.kind == "fig5") {
        j["white"] = s.white;
        j["black"] = s.black;
    } else if (s.kind == "union") {
        j["of"] = Json::array();
        for (const auto &o : s.operands) {
            j["of"].push_back(restriction_spec_to_json(o));
        }
    } else if (s.kind == "compose" || s.kind == "compose_complement") {
        j["first"] = restriction_spec_to_json(s.operands.at(0));
        j["then"] = restriction_spec_to_json(s.operands.at(1));
    } else if (s.kind == "table") {
        j["entries"] = Json::array();
        for (const auto &[g, r] : s.table) {
            j["entries"].push_back(
                {{"graph", graph_to_json(g)}, {"restricted", graph_to_json(r)}});
        }
    }
    return j;
}

inline RestrictionSpec restriction_spec_from_json(const Json &j) {
    return detail::json_guard("restriction", [&] {
        RestrictionSpec s;
        s.kind = j.at("kind").get<std::string>();
        s.label = j.value("label", std::string{});
        if (s.kind == "by_vertex") {
            s.vertex = j.at("vertex").get<std::string>();
        } else if (s.kind == "by_vertices") {
            s.vertices = j.at("vertices").get<std::vector<std::string>>();
            std::sort(s.vertices.begin(), s.vertices.end());
        } else if (s.kind == "by_state") {
            s.state = j.at("state").get<std::string>();
        } else if (s.kind == "fig5") {
            s.white = j.value("white", std::string("w"));
            s.black = j.value("black", std::string("b"));
        } else if (s.kind == "union") {
            for (const auto &o : j.at("of")) {
                s.operands.push_back(restriction_spec_from_json(o));
            }
            if (s.operands.empty()) {
                throw ParseError("union needs at least one operand");
            }
        } else if (s.kind == "compose" || s.kind == "compose_complement") {
            s.operands.push_back(restriction_spec_from_json(j.at("first")));
            s.operands.push_back(restriction_spec_from_json(j.at("then")));
        } else if (s.kind == "table") {
            for (const auto &e : j.at("entries")) {
                s.table.emplace_back(graph_from_json(e.at("graph")),
                                     graph_from_json(e.at("restricted")));
            }
        } else if (s.kind != "mu" && s.kind != "full" && s.kind != "empty") {
            throw ParseError("unknown restriction kind '" + s.kind + "'");
        }
        return s;
    });
}

inline Restriction make_restriction(const RestrictionSpec &s) {
    auto labelled = [&](Restriction r) {
        return s.label.empty() ? r
                               : Restriction(s.label,
                                             [r](const Graph &g) { return r.select(g); },
                                             r.pointwise_hint());
    };
    if (s.kind == "by_vertex") {
        return labelled(by_vertex(s.vertex));
    }
    if (s.kind == "by_vertices") {
        return by_vertices({s.vertices.begin(), s.vertices.end()}, s.label);
    }
    if (s.kind == "by_state") {
        return labelled(by_state(s.state));
    }
    if (s.kind == "fig5") {
        return labelled(black_passthrough(s.white, s.black));
    }
    if (s.kind == "mu") {
        return labelled(flag_zero());
    }
    if (s.kind == "full") {
        return labelled(full_restriction());
    }
    if (s.kind == "empty") {
        return labelled(empty_restriction());
    }
    if (s.kind == "union") {
        Restriction r = make_restriction(s.operands.at(0));
        for (std::size_t i = 1; i < s.operands.size(); ++i) {
            r = unite(r, make_restriction(s.operands[i]));
        }
        return labelled(r);
    }
    if (s.kind == "compose") {
        return labelled(compose(make_restriction(s.operands.at(0)),
                                make_restriction(s.operands.at(1))));
    }
    if (s.kind == "compose_complement") {
        return labelled(compose_complement(make_restriction(s.operands.at(0)),
                                           make_restriction(s.operands.at(1))));
    }
    if (s.kind == "table") {
        std::map<Graph, Graph> table(s.table.begin(), s.table.end());
        return from_table(std::move(table), s.label.empty() ? "table" : s.label);
    }
    throw ParseError("unknown restriction kind '" + s.kind + "'");
}

/// Tabulated form of any restriction over a basis, for the "table" kind.
inline RestrictionSpec tabulated_spec(const BoundRestriction &chi) {
    RestrictionSpec s;
    s.kind = "table";
    s.label = chi.label();
    for (Index g = 0; g < chi.basis()->size(); ++g) {
        s.table.emplace_back(chi.basis()->graph(g),
                             chi.basis()->graph(chi.part(g)));
    }
    return s;
}

/// Vertices and states mentioned by the graphs of a ket or operator file.
inline void collect_names(const Json &j, std::set<std::string> &vertices,
                          std::set<std::string> &states) {
    auto add_graph = [&](const Json &g) {
        const Graph graph = graph_from_json(g);
        for (const auto &s : graph.systems()) {
            vertices.insert(s.vertex);
            states.insert(s.state);
        }
    };
    detail::json_guard("state file", [&] {
        for (const auto &t : j) {
            for (const char *key : {"graph", "bra", "ket"}) {
                if (t.contains(key)) {
                    add_graph(t.at(key));
                }
            }
        }
        return 0;
    });
}

} // namespace logicaltensor
