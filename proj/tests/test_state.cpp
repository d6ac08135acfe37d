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

#include <cmath>
#include <numbers>

#include "support.hpp"

using testing_support::g;
using testing_support::ket;
using testing_support::outer;

namespace {

constexpr double kTol = 1e-12;
const lt::Complex kI{0.0, 1.0};

} // namespace

TEST(Ket, BasisGraphsAreOrthonormal) {
    const auto basis = testing_support::u2s2();
    EXPECT_NEAR(std::abs(lt::inner_product(ket(basis, {}), ket(basis, {})) - 1.0), 0.0, kTol);
    EXPECT_EQ(lt::inner_product(ket(basis, g({"w.u"})), ket(basis, g({"b.u"}))), lt::Complex{});
}

TEST(Ket, InnerProductIsConjugateLinearOnTheLeft) {
    const auto basis = testing_support::u2s2();
    const double h = 1.0 / std::sqrt(2.0);
    lt::Ket psi(basis);
    psi.add(basis->index_of(g({"w.u"})), h);
    psi.add(basis->index_of(g({"b.v"})), kI * h);
    const auto self = lt::inner_product(psi, psi);
    EXPECT_NEAR(self.real(), 1.0, kTol);
    EXPECT_NEAR(self.imag(), 0.0, kTol);
    // <G|psi> = 1/sqrt2, <psi|H> = conj(i/sqrt2).
    const auto cross = lt::inner_product(psi, ket(basis, g({"b.v"})));
    EXPECT_NEAR(cross.imag(), -h, kTol);
}

TEST(Ket, CancellingAmplitudesLeaveZero) {
    const auto basis = testing_support::u2s2();
    lt::Ket psi(basis);
    psi.add(1, 0.5).add(1, -0.5);
    EXPECT_TRUE(psi.is_zero());
}

TEST(Operator, IdentityActsTrivially) {
    const auto basis = testing_support::u3s2();
    lt::Ket psi(basis);
    psi.add(3, 0.6).add(17, lt::Complex{0.0, 0.8});
    EXPECT_LE(lt::max_abs_difference(lt::apply(lt::Operator::identity(basis), psi), psi), kTol);
}

TEST(Operator, RankOneMapsItsKetGraph) {
    const auto basis = testing_support::u2s2();
    const auto a = outer(basis, g({"b.v"}), g({"w.u"}));
    EXPECT_LE(lt::max_abs_difference(lt::apply(a, ket(basis, g({"w.u"}))),
                                     ket(basis, g({"b.v"}))),
              kTol);
    EXPECT_TRUE(lt::apply(a, ket(basis, g({"b.v"}))).is_zero());
    EXPECT_TRUE(lt::approx_equal(a.adjoint(), outer(basis, g({"w.u"}), g({"b.v"}))));
}

TEST(Operator, FlipSendsWhiteToBlackAndKillsBlack) {
    const auto basis = testing_support::u2s2();
    const auto flip = lt::build_flip(basis);
    EXPECT_LE(lt::max_abs_difference(lt::apply(flip, ket(basis, g({"w.u"}))),
                                     ket(basis, g({"b.u"}))),
              kTol);
    EXPECT_LE(lt::max_abs_difference(lt::apply(flip, ket(basis, g({"w.u", "w.v"}))),
                                     ket(basis, g({"b.u", "b.v"}))),
              kTol);
    EXPECT_TRUE(lt::apply(flip, ket(basis, g({"b.u"}))).is_zero());
    EXPECT_TRUE(lt::apply(flip, ket(basis, g({"w.u", "b.v"}))).is_zero());
    EXPECT_LE(lt::max_abs_difference(lt::apply(flip, ket(basis, {})), ket(basis, {})), kTol);
}

TEST(Operator, FlipSquaredOnlySurvivesOnTheEmptyGraph) {
    // A second flip sees only black nodes, so every non-empty all-white graph
    // is sent to zero.
    const auto basis = testing_support::u2s2();
    const auto flip = lt::build_flip(basis);
    EXPECT_TRUE(lt::approx_equal(flip * flip, outer(basis, {}, {})));
}

TEST(Operator, ComposeWithIdentity) {
    const auto basis = testing_support::u2s2();
    const auto flip = lt::build_flip(basis);
    const auto id = lt::Operator::identity(basis);
    EXPECT_TRUE(lt::approx_equal(lt::compose(flip, id), flip));
    EXPECT_TRUE(lt::approx_equal(lt::compose(id, flip), flip));
}

TEST(Operator, RingOperations) {
    const auto basis = testing_support::u2s2();
    const auto a = outer(basis, g({"w.u"}), g({"b.u"}), 2.0);
    const auto b = outer(basis, g({"w.u"}), g({"b.u"}), kI);
    const auto sum = a + b;
    EXPECT_NEAR(std::abs(sum.at(basis->index_of(g({"w.u"})), basis->index_of(g({"b.u"}))) -
                         lt::Complex(2.0, 1.0)),
                0.0, kTol);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_TRUE(lt::approx_equal(lt::Complex(2.0) * (lt::Complex(0.5) * a), a));
}

TEST(Operator, FullTraceOfRankOnes) {
    const auto basis = testing_support::u2s2();
    EXPECT_NEAR(lt::full_trace(outer(basis, g({"w.u"}), g({"w.u"}))).real(), 1.0, kTol);
    EXPECT_EQ(lt::full_trace(outer(basis, g({"w.u"}), g({"b.v"}))), lt::Complex{});
    EXPECT_NEAR(lt::full_trace(lt::Operator::identity(basis)).real(), 9.0, kTol);
}

TEST(Operator, UnitarityChecks) {
    const auto basis = testing_support::u2s2();
    EXPECT_TRUE(lt::is_unitary(lt::Operator::identity(basis)));
    EXPECT_FALSE(lt::is_unitary(outer(basis, g({"w.u"}), g({"b.v"}))));
    EXPECT_FALSE(lt::is_unitary(lt::build_flip(basis)));
    const auto eu = lt::extend_universe(basis);
    EXPECT_TRUE(lt::is_unitary(lt::toggle_unitary(eu)));
}

TEST(Operator, NamePreservation) {
    const auto basis = testing_support::u2s2();
    EXPECT_TRUE(lt::is_name_preserving(lt::Operator::identity(basis)));
    EXPECT_FALSE(lt::is_name_preserving(outer(basis, {}, g({"w.u"}))));
    EXPECT_TRUE(lt::is_name_preserving(lt::build_flip(basis)));
}

TEST(Operator, DenseAgreesWithEntries) {
    const auto basis = testing_support::u2s2();
    const auto a = outer(basis, g({"w.u"}), g({"b.v"}), kI) + lt::Operator::identity(basis);
    const Eigen::MatrixXcd d = a.dense();
    for (lt::Index r = 0; r < basis->size(); ++r) {
        for (lt::Index c = 0; c < basis->size(); ++c) {
            EXPECT_EQ(d(r, c), a.at(r, c));
        }
    }
    EXPECT_LE(testing_support::dense_difference(a.adjoint().dense(), d.adjoint()), kTol);
}

TEST(Operator, ForeignBasesAreRejected) {
    const auto a = lt::Operator::identity(testing_support::u2s2());
    const auto b = lt::Operator::identity(testing_support::u3s2());
    EXPECT_THROW(static_cast<void>(a * b), lt::UniverseMismatch);
}
