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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "support.hpp"

using testing_support::g;
using testing_support::ket;
using testing_support::outer;

namespace {

constexpr double kTol = 1e-10;

lt::BoundRestriction bound(const lt::Restriction &chi, const lt::BasisPtr &basis) {
    return lt::BoundRestriction::bind(chi, basis);
}

std::vector<lt::Restriction> restriction_family() {
    return {lt::by_vertex("u"), lt::by_vertex("v"),
            lt::unite(lt::by_vertex("u"), lt::by_vertex("v")), lt::black_passthrough(),
            lt::by_state("w"), lt::full_restriction(), lt::empty_restriction()};
}

/// Locality straight from the defining identity
///   <H|A|G> = <H_chi|A|G_chi> <H_chibar|G_chibar>.
bool local_oracle(const lt::Operator &a, const lt::Restriction &chi) {
    const auto &basis = *a.basis();
    const Eigen::MatrixXcd d = a.dense();
    for (lt::Index h = 0; h < basis.size(); ++h) {
        for (lt::Index k = 0; k < basis.size(); ++k) {
            const auto gh = basis.graph(h);
            const auto gk = basis.graph(k);
            const auto ph = chi.select(gh);
            const auto pk = chi.select(gk);
            const lt::Complex rhs = gh.minus(ph) == gk.minus(pk)
                                        ? d(basis.index_of(ph), basis.index_of(pk))
                                        : lt::Complex{};
            if (std::abs(d(h, k) - rhs) > kTol) {
                return false;
            }
        }
    }
    return true;
}

/// Causality straight from the definition, one basis coherence at a time.
bool causal_oracle(const lt::Operator &u, const lt::Restriction &chi,
                   const lt::Restriction &zeta) {
    const auto basis = u.basis();
    const Eigen::MatrixXcd du = u.dense();
    const auto n = static_cast<Eigen::Index>(basis->size());
    auto as_operator = [&](const Eigen::MatrixXcd &m) {
        std::vector<lt::Entry> entries;
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                if (std::abs(m(r, c)) > 1e-14) {
                    entries.push_back({r, c, m(r, c)});
                }
            }
        }
        return lt::Operator::from_entries(basis, entries);
    };
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
            rho(a, b) = 1.0;
            const Eigen::MatrixXcd reduced =
                testing_support::traceout_oracle(as_operator(rho), chi);
            const Eigen::MatrixXcd lhs = testing_support::traceout_oracle(
                as_operator(du * rho * du.adjoint()), zeta);
            const Eigen::MatrixXcd rhs = testing_support::traceout_oracle(
                as_operator(du * reduced * du.adjoint()), zeta);
            if (testing_support::dense_difference(lhs, rhs) > kTol) {
                return false;
            }
        }
    }
    return true;
}

lt::Operator random_sparse(const lt::BasisPtr &basis, std::mt19937_64 &rng, int nnz) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_int_distribution<lt::Index> pick(0, basis->size() - 1);
    std::vector<lt::Entry> entries;
    for (int i = 0; i < nnz; ++i) {
        entries.push_back({pick(rng), pick(rng), {n(rng), n(rng)}});
    }
    return lt::Operator::from_entries(basis, entries);
}

/// Random permutation of the graphs within each vertex support, with phases.
lt::Operator random_name_preserving_unitary(const lt::BasisPtr &basis, std::mt19937_64 &rng) {
    std::map<std::uint32_t, std::vector<lt::Index>> classes;
    for (lt::Index i = 0; i < basis->size(); ++i) {
        classes[basis->support_mask(i)].push_back(i);
    }
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<lt::Entry> entries;
    for (auto &[mask, members] : classes) {
        auto image = members;
        std::shuffle(image.begin(), image.end(), rng);
        for (std::size_t k = 0; k < members.size(); ++k) {
            entries.push_back({image[k], members[k], std::polar(1.0, phase(rng))});
        }
    }
    return lt::Operator::from_entries(basis, entries);
}

lt::Operator rotation_on_u(const lt::BasisPtr &basis, double theta) {
    const auto wu = basis->index_of(g({"w.u"}));
    const auto bu = basis->index_of(g({"b.u"}));
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const auto local = lt::Operator::from_entries(
        basis, {{0, 0, 1.0}, {wu, wu, c}, {wu, bu, -s}, {bu, wu, s}, {bu, bu, c}});
    return lt::tensor_ops(local, lt::Operator::identity(basis),
                          bound(lt::by_vertex("u"), basis));
}

} // namespace

TEST(Locality, IdentityIsLocalEverywhere) {
    const auto basis = testing_support::u3s2();
    for (const auto &r : restriction_family()) {
        const auto v = lt::is_local(lt::Operator::identity(basis), bound(r, basis));
        EXPECT_TRUE(v.local()) << r.label();
        EXPECT_TRUE(v.strict) << r.label();
    }
}

TEST(Locality, FlipIsLocalButNotStrict) {
    const auto basis = testing_support::u2s2();
    const auto chi = bound(lt::black_passthrough(), basis);
    const auto flip = lt::build_flip(basis);
    const auto v = lt::is_local(flip, chi);
    EXPECT_TRUE(v.schrodinger);
    EXPECT_TRUE(v.operational);
    EXPECT_TRUE(v.heisenberg);
    EXPECT_FALSE(v.strict);
    EXPECT_FALSE(lt::is_strictly_local(flip, chi));
    EXPECT_TRUE(local_oracle(flip, lt::black_passthrough()));
}

TEST(Locality, FlipIsNotLocalOnAVertex) {
    const auto basis = testing_support::u2s2();
    const auto v = lt::is_local(lt::build_flip(basis), bound(lt::by_vertex("u"), basis));
    EXPECT_FALSE(v.local());
    ASSERT_TRUE(v.counterexample.has_value());
}

TEST(Locality, TensoringWithIdentityLocalises) {
    const auto basis = testing_support::u2s2();
    const auto zeta = bound(lt::by_vertex("v"), basis);
    const auto b = outer(basis, g({"w.v"}), g({"b.v"}));
    const auto a = lt::tensor_ops(b, lt::Operator::identity(basis), zeta);
    EXPECT_TRUE(lt::is_local(a, zeta).local());
    EXPECT_TRUE(lt::approx_equal(lt::localize(b, zeta), a));
}

TEST(Locality, VerdictAgreesWithDefiningIdentity) {
    const auto basis = testing_support::u3s2();
    std::mt19937_64 rng(5);
    int locals = 0;
    for (const auto &r : restriction_family()) {
        const auto chi = bound(r, basis);
        for (int i = 0; i < 20; ++i) {
            // Half the samples are localised so both verdicts occur.
            auto a = random_sparse(basis, rng, 1 + static_cast<int>(rng() % 12));
            if (i % 2 == 0) {
                a = lt::localize(a, chi);
            }
            const auto v = lt::is_local(a, chi);
            EXPECT_EQ(v.local(), local_oracle(a, r)) << r.label();
            locals += v.local() ? 1 : 0;
        }
    }
    EXPECT_GT(locals, 0);
}

TEST(Locality, LocalizeExamples) {
    const auto basis = testing_support::u2s2();
    const auto fig5 = bound(lt::black_passthrough(), basis);
    const auto id = lt::Operator::identity(basis);
    EXPECT_TRUE(lt::approx_equal(lt::localize(id, fig5), id));
    const auto flip = lt::build_flip(basis);
    EXPECT_TRUE(lt::approx_equal(lt::localize(flip, fig5), flip));

    // |{}><{w.u}| on the u-part: the result maps |{w.u} u K> to |K> for every
    // complement K on v.
    const auto zeta = bound(lt::by_vertex("u"), basis);
    const auto localised = lt::localize(outer(basis, {}, g({"w.u"})), zeta);
    const auto expected = outer(basis, {}, g({"w.u"})) +
                          outer(basis, g({"w.v"}), g({"w.u", "w.v"})) +
                          outer(basis, g({"b.v"}), g({"w.u", "b.v"}));
    EXPECT_TRUE(lt::approx_equal(localised, expected));
}

TEST(Locality, StrictCharacterisationsAgree) {
    const auto basis = testing_support::u3s2();
    std::mt19937_64 rng(6);
    for (const auto &r : restriction_family()) {
        const auto chi = bound(r, basis);
        for (int i = 0; i < 15; ++i) {
            const auto a = lt::localize(random_sparse(basis, rng, 4), chi);
            // is_strictly_local raises if its two characterisations disagree.
            const bool strict = lt::is_strictly_local(a, chi);
            const bool products = lt::is_local(a.adjoint() * a, chi).local() &&
                                  lt::is_local(a * a.adjoint(), chi).local();
            EXPECT_EQ(strict, products) << r.label();
        }
    }
}

TEST(Locality, LocalUnitariesAreStrict) {
    const auto basis = testing_support::u2s2();
    const auto zeta = bound(lt::by_vertex("u"), basis);
    const auto u = rotation_on_u(basis, 0.4);
    ASSERT_TRUE(lt::is_unitary(u));
    EXPECT_TRUE(lt::is_local(u, zeta).local());
    EXPECT_TRUE(lt::is_strictly_local(u, zeta));
}

TEST(Tomography, FamilyHasOneElementPerRangePair) {
    const auto basis = testing_support::u3s2();
    for (const auto &r : restriction_family()) {
        const auto chi = bound(r, basis);
        const auto family = lt::tomography_operators(chi);
        const auto range = chi.range().size();
        EXPECT_EQ(family.size(), range * range) << r.label();
        for (const auto &e : family) {
            if (e.ket == e.bra) {
                EXPECT_TRUE(lt::approx_equal(
                    e.op, lt::localize(lt::Operator::outer(basis, e.ket, e.bra), chi)));
            }
        }
    }
}

TEST(Tomography, ExpectationsRecoverTheReducedState) {
    const auto basis = testing_support::u3s2();
    std::mt19937_64 rng(8);
    for (const auto &r : restriction_family()) {
        const auto chi = bound(r, basis);
        const auto rho = random_sparse(basis, rng, 40);
        const auto reduced = lt::traceout(rho, chi);
        for (const auto &e : lt::tomography_operators(chi)) {
            // Tr(|H_chi><G_chi| (x) I rho) = <G_chi|rho_chi|H_chi>.
            EXPECT_LE(std::abs(lt::expectation(e.op, rho) - reduced.at(e.bra, e.ket)), kTol)
                << r.label();
        }
    }
}

TEST(Tomography, EqualStatesAreIndistinguishable) {
    const auto basis = testing_support::u2s2();
    const auto chi = bound(lt::by_vertex("u"), basis);
    const auto rho = outer(basis, g({"w.u", "b.v"}), g({"w.u", "b.v"}));
    EXPECT_TRUE(lt::tomography_equal(rho, rho, chi));
}

TEST(Tomography, ComplementCoherencesAreInvisible) {
    // Same u-part, different complements: the coherence vanishes under the
    // traceout, so the two states share every u-local expectation.
    const auto basis = testing_support::u2s2();
    const auto chi = bound(lt::by_vertex("u"), basis);
    const auto a = g({"w.u", "w.v"});
    const auto b = g({"w.u", "b.v"});
    const auto rho = lt::Complex(0.5) * (outer(basis, a, a) + outer(basis, b, b));
    const auto sigma = rho + lt::Complex(0.5) * (outer(basis, a, b) + outer(basis, b, a));
    ASSERT_FALSE(lt::approx_equal(rho, sigma));
    EXPECT_TRUE(lt::approx_equal(lt::traceout(rho, chi), lt::traceout(sigma, chi)));
    EXPECT_TRUE(lt::tomography_equal(rho, sigma, chi));
    EXPECT_TRUE(lt::tomography_equal(rho, sigma, chi, true));
}

TEST(Tomography, DifferentPartsAreDistinguished) {
    const auto basis = testing_support::u2s2();
    const auto chi = bound(lt::by_vertex("u"), basis);
    const auto rho = outer(basis, g({"w.u"}), g({"w.u"}));
    const auto sigma = outer(basis, g({"b.u"}), g({"b.u"}));
    EXPECT_FALSE(lt::tomography_equal(rho, sigma, chi));
    EXPECT_FALSE(lt::tomography_equal(rho, sigma, chi, true));
}

TEST(Tomography, NamePreservingFamilyNeedsNamePreservingStates) {
    const auto basis = testing_support::u2s2();
    const auto chi = bound(lt::by_vertex("u"), basis);
    const auto rho = outer(basis, g({"w.u"}), {});
    EXPECT_THROW(static_cast<void>(lt::tomography_equal(rho, rho, chi, true)),
                 lt::PrerequisiteViolation);
}

TEST(Causality, IdentityAndFullRestrictions) {
    const auto basis = testing_support::u3s2();
    const auto full = bound(lt::full_restriction(), basis);
    std::mt19937_64 rng(9);
    for (const auto &r : restriction_family()) {
        const auto chi = bound(r, basis);
        EXPECT_TRUE(lt::is_causal(lt::Operator::identity(basis), chi, chi).causal())
            << r.label();
    }
    for (int i = 0; i < 5; ++i) {
        EXPECT_TRUE(
            lt::is_causal(random_name_preserving_unitary(basis, rng), full, full).causal());
    }
}

TEST(Causality, NonUnitaryIsRejected) {
    const auto basis = testing_support::u2s2();
    const auto chi = bound(lt::by_vertex("u"), basis);
    EXPECT_THROW(static_cast<void>(lt::is_causal(lt::build_flip(basis), chi, chi)),
                 lt::NotUnitary);
}

TEST(Causality, VerdictAgreesWithDefinitionOnRandomUnitaries) {
    const auto basis = testing_support::u2s2();
    std::mt19937_64 rng(10);
    const std::vector<lt::Restriction> rs{lt::by_vertex("u"), lt::by_vertex("v"),
                                          lt::black_passthrough(), lt::by_state("w"),
                                          lt::full_restriction()};
    int causal = 0;
    int total = 0;
    for (int i = 0; i < 6; ++i) {
        const auto u = i % 3 == 0 ? rotation_on_u(basis, 0.3 * i)
                                  : random_name_preserving_unitary(basis, rng);
        for (const auto &chi : rs) {
            for (const auto &zeta : rs) {
                const auto v = lt::is_causal(u, bound(chi, basis), bound(zeta, basis));
                EXPECT_EQ(v.primal, v.dual);
                EXPECT_EQ(v.causal(), causal_oracle(u, chi, zeta))
                    << chi.label() << " -> " << zeta.label();
                causal += v.causal() ? 1 : 0;
                ++total;
            }
        }
    }
    EXPECT_GT(causal, 0);
    EXPECT_LT(causal, total);
}

TEST(Causality, LineDynamicsAgreesWithDefinition) {
    const lt::LineConfig line{2};
    const auto basis = lt::make_basis(lt::line_universe(line));
    const auto m = lt::build_M(basis, line);
    for (int i = 1; i <= line.length; ++i) {
        const auto chi = lt::line_neighborhood(line, i);
        const auto zeta = lt::line_site(line, i);
        EXPECT_TRUE(causal_oracle(m, chi, zeta));
        EXPECT_TRUE(lt::is_causal(m, bound(chi, basis), bound(zeta, basis)).causal());
        // The site alone does not determine its own future.
        EXPECT_EQ(lt::is_causal(m, bound(zeta, basis), bound(zeta, basis)).causal(),
                  causal_oracle(m, zeta, zeta));
    }
}

TEST(Causality, LineDynamicsOnThreeSites) {
    const lt::LineConfig line{3};
    const auto basis = lt::make_basis(lt::line_universe(line));
    const auto m = lt::build_M(basis, line);
    const auto mc = m * lt::build_C(basis, line, std::numbers::pi / 4);
    for (int i = 1; i <= line.length; ++i) {
        const auto chi = bound(lt::line_neighborhood(line, i), basis);
        const auto zeta = bound(lt::line_site(line, i), basis);
        const auto v = lt::is_causal(m, chi, zeta);
        EXPECT_TRUE(v.primal);
        EXPECT_TRUE(v.dual);
        EXPECT_TRUE(v.dual_name_preserving);
        ASSERT_TRUE(v.strict_transfer.has_value());
        EXPECT_TRUE(*v.strict_transfer);
        EXPECT_TRUE(lt::is_causal(mc, chi, zeta).causal());
    }
}

TEST(Causality, ComposesAlongNeighborhoods) {
    const lt::LineConfig line{3};
    const auto basis = lt::make_basis(lt::line_universe(line));
    const auto m = lt::build_M(basis, line);
    const auto id = lt::Operator::identity(basis);
    for (int i = 1; i <= line.length; ++i) {
        const auto chi2 = bound(lt::line_neighborhood(line, i, 2), basis);
        const auto chi = bound(lt::line_neighborhood(line, i), basis);
        const auto zeta = bound(lt::line_site(line, i), basis);
        EXPECT_TRUE(lt::causal_compose_check(id, id, zeta, zeta));
        EXPECT_TRUE(lt::causal_compose_check(m, m, chi2, zeta));
        EXPECT_TRUE(lt::causal_compose_check(m, id, chi, zeta));
    }
}

TEST(Causality, GlobalSwapIsNotCausal) {
    const lt::LineConfig line{3};
    const auto basis = lt::make_basis(lt::line_universe(line));
    const auto swap = lt::build_global_swap(basis, line);
    const auto v = lt::is_causal(swap, bound(lt::line_neighborhood(line, 1), basis),
                                 bound(lt::line_site(line, 1), basis));
    EXPECT_FALSE(v.causal());
    EXPECT_FALSE(v.dual);
    EXPECT_TRUE(v.counterexample.has_value());
}
