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

// Regenerates the sample inputs: make_samples [output-dir]

#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "logicaltensor/io.hpp"
#include "logicaltensor/logicaltensor.hpp"

namespace lt = logicaltensor;

namespace {

lt::RestrictionSpec spec_of(std::string kind) {
    lt::RestrictionSpec s;
    s.kind = std::move(kind);
    return s;
}

lt::RestrictionSpec vertex_spec(const std::string &v) {
    auto s = spec_of("by_vertex");
    s.vertex = v;
    return s;
}

} // namespace

int main(int argc, char **argv) {
    const std::string dir = argc > 1 ? argv[1] : "samples";
    auto put = [&](const std::string &name, const lt::Json &j) {
        lt::write_json_file(dir + "/" + name, j);
    };
    try {
        const lt::Universe u2s2({"u", "v"}, {"w", "b"});
        const lt::Universe u3s2({"u", "v", "x"}, {"w", "b"});
        put("u2s2.json", lt::universe_to_json(u2s2));
        put("u3s2.json", lt::universe_to_json(u3s2));
        const auto basis = lt::make_basis(u2s2);

        put("fig5.json", lt::restriction_spec_to_json(spec_of("fig5")));
        put("zeta_u.json", lt::restriction_spec_to_json(vertex_spec("u")));
        put("zeta_v.json", lt::restriction_spec_to_json(vertex_spec("v")));
        auto white = spec_of("by_state");
        white.state = "w";
        put("state_w.json", lt::restriction_spec_to_json(white));

        put("flip.json", lt::operator_to_json(lt::build_flip(basis)));
        put("identity_u2s2.json", lt::operator_to_json(lt::Operator::identity(basis)));

        lt::Ket bell(basis);
        const double h = 1.0 / std::sqrt(2.0);
        bell.add(basis->index_of(lt::Graph::from_tokens({"w.u", "w.v"})), h);
        bell.add(basis->index_of(lt::Graph::from_tokens({"b.u", "b.v"})), h);
        put("bell-like.json", lt::ket_to_json(bell));
        put("product.json",
            lt::ket_to_json(lt::Ket::of(basis, lt::Graph::from_tokens({"w.u", "b.v"}))));

        // Fails the restriction axiom: {w.u} <= {w.u} <= {w.u, w.v} but the
        // middle graph restricts to the empty graph.
        auto bad = spec_of("table");
        bad.label = "broken";
        for (lt::Index g = 0; g < basis->size(); ++g) {
            bad.table.emplace_back(basis->graph(g), lt::Graph{});
        }
        for (auto &[g, r] : bad.table) {
            if (g == lt::Graph::from_tokens({"w.u", "w.v"})) {
                r = lt::Graph::from_tokens({"w.u"});
            }
        }
        put("broken_restriction.json", lt::restriction_spec_to_json(bad));

        const lt::LineConfig line{3};
        const auto line_basis = lt::make_basis(lt::line_universe(line));
        put("line3.json", lt::universe_to_json(line_basis->universe()));
        const auto m = lt::build_M(line_basis, line);
        put("line3_M.json", lt::operator_to_json(m));
        put("line3_MC.json",
            lt::operator_to_json(m * lt::build_C(line_basis, line, std::numbers::pi / 4)));
        put("line3_swap.json", lt::operator_to_json(lt::build_global_swap(line_basis, line)));
        for (int i = 1; i <= line.length; ++i) {
            const auto v = lt::line_vertex(line, i);
            auto chi = spec_of("by_vertices");
            for (int j = std::max(1, i - 1); j <= std::min(line.length, i + 1); ++j) {
                chi.vertices.push_back(lt::line_vertex(line, j));
            }
            put("line3_chi_" + v + ".json", lt::restriction_spec_to_json(chi));
            put("line3_zeta_" + v + ".json", lt::restriction_spec_to_json(vertex_spec(v)));
        }
    } catch (const lt::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
