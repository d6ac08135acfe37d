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
 * Block decomposition of a name-preserving causal unitary into commuting
 * strictly local gates on a flag-extended space.
 *
 * Every state s gets two copies, "0.s" and "1.s". The base space embeds as the
 * all-flag-0 sector, which is the range of the restriction mu = flag_zero().
 * With tau the global flag toggle, tau_v its part at v and
 * U' = U (x)mu I, the gates K_v = U'^dag tau_v U' satisfy
 *
 *   (prod_v tau_v)(prod_v K_v) |psi> = U |psi>   for psi in the flag-0 sector.
 */
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "locality.hpp"

namespace logicaltensor {

inline const std::string kFlagZero = "0.";
inline const std::string kFlagOne = "1.";

/// Base universe plus its flag-extended copy, with the index maps between them.
class ExtendedUniverse {
  public:
    explicit ExtendedUniverse(BasisPtr base, std::uint64_t cap = kDefaultBasisCap)
        : base_(std::move(base)) {
        std::vector<std::string> states;
        for (const auto &s : base_->universe().states()) {
            states.push_back(kFlagZero + s);
            states.push_back(kFlagOne + s);
        }
        extended_ = make_basis(Universe(base_->universe().vertices(), states), cap);
        const auto &ext = extended_->universe();
        const auto n = base_->universe().states().size();
        zero_digit_.resize(n + 1);
        one_digit_.resize(n + 1);
        base_digit_.assign(ext.states().size() + 1, 0);
        flag_of_digit_.assign(ext.states().size() + 1, 0);
        for (std::size_t k = 0; k < n; ++k) {
            const auto &s = base_->universe().states()[k];
            const auto z = static_cast<Index>(*ext.state_position(kFlagZero + s)) + 1;
            const auto o = static_cast<Index>(*ext.state_position(kFlagOne + s)) + 1;
            zero_digit_[k + 1] = z;
            one_digit_[k + 1] = o;
            base_digit_[static_cast<std::size_t>(z)] = static_cast<Index>(k) + 1;
            base_digit_[static_cast<std::size_t>(o)] = static_cast<Index>(k) + 1;
            flag_of_digit_[static_cast<std::size_t>(o)] = 1;
        }
    }

    [[nodiscard]] const BasisPtr &base() const { return base_; }
    [[nodiscard]] const BasisPtr &extended() const { return extended_; }

    /// Base graph -> same graph with every flag 0.
    [[nodiscard]] Index embed(Index g) const {
        Index out = 0;
        for (std::size_t p = 0; p < base_->vertex_count(); ++p) {
            out = extended_->with_digit(
                out, p, zero_digit_[static_cast<std::size_t>(base_->digit(g, p))]);
        }
        return out;
    }

    /// Inverse of embed on the flag-0 sector; nullopt elsewhere.
    [[nodiscard]] std::optional<Index> unembed(Index g) const {
        Index out = 0;
        for (std::size_t p = 0; p < extended_->vertex_count(); ++p) {
            const auto d = static_cast<std::size_t>(extended_->digit(g, p));
            if (flag_of_digit_[d] != 0) {
                return std::nullopt;
            }
            out = base_->with_digit(out, p, base_digit_[d]);
        }
        return out;
    }

    [[nodiscard]] Ket embed(const Ket &psi) const {
        require_same_basis(psi.basis(), base_);
        Ket out(extended_);
        for (const auto &[g, a] : psi.terms()) {
            out.add(embed(g), a);
        }
        return out;
    }

    [[nodiscard]] Operator embed(const Operator &a) const {
        require_same_basis(a.basis(), base_);
        std::vector<Entry> entries;
        a.for_each([&](Index r, Index c, Complex v) {
            entries.push_back({embed(r), embed(c), v});
        });
        return Operator::from_entries(extended_, entries, a.role());
    }

    /// Every flag of g inverted.
    [[nodiscard]] Index toggle(Index g) const {
        Index out = g;
        for (std::size_t p = 0; p < extended_->vertex_count(); ++p) {
            const auto d = static_cast<std::size_t>(extended_->digit(g, p));
            if (d == 0) {
                continue;
            }
            const auto base_d = static_cast<std::size_t>(base_digit_[d]);
            out = extended_->with_digit(out, p,
                                        flag_of_digit_[d] ? zero_digit_[base_d]
                                                          : one_digit_[base_d]);
        }
        return out;
    }

  private:
    BasisPtr base_;
    BasisPtr extended_;
    std::vector<Index> zero_digit_;    // base digit -> flag-0 digit
    std::vector<Index> one_digit_;     // base digit -> flag-1 digit
    std::vector<Index> base_digit_;    // extended digit -> base digit
    std::vector<int> flag_of_digit_;   // extended digit -> flag bit
};

inline ExtendedUniverse extend_universe(const BasisPtr &base) {
    return ExtendedUniverse(base);
}

/// The flag toggle tau, as a permutation of the extended basis.
inline Operator toggle_unitary(const ExtendedUniverse &eu) {
    std::vector<Entry> entries;
    const auto &ext = eu.extended();
    entries.reserve(static_cast<std::size_t>(ext->size()));
    for (Index g = 0; g < ext->size(); ++g) {
        entries.push_back({eu.toggle(g), g, 1.0});
    }
    return Operator::from_entries(ext, entries);
}

/// tau_v = tau (x)zeta_v I
inline Operator tau_v(const ExtendedUniverse &eu, const std::string &vertex) {
    const auto zeta = BoundRestriction::bind(by_vertex(vertex), eu.extended());
    return tensor_ops(toggle_unitary(eu), Operator::identity(eu.extended()), zeta);
}

/**
 * U' = U (x)mu I for U acting on the range of mu.
 * Raises NotPointwise, NotNamePreserving or NotUnitaryOnRange when the
 * hypotheses fail, and InternalContractViolation if the conclusions do not
 * hold (unitary, adjoint commutes with the extension, U mu-consistency
 * preserving).
 */
inline Operator unitary_extension(const Operator &u, const BoundRestriction &mu,
                                  double tol = kCompareTolerance) {
    require_same_basis(u.basis(), mu.basis());
    if (!is_pointwise(mu)) {
        throw NotPointwise(mu.label() + " is not pointwise");
    }
    if (!is_name_preserving(u)) {
        throw NotNamePreserving("operator changes vertex sets");
    }
    bool inside = true;
    u.for_each([&](Index r, Index c, Complex) {
        inside &= mu.in_range(r) && mu.in_range(c);
    });
    std::vector<Entry> projector;
    for (const Index g : mu.range()) {
        projector.push_back({g, g, 1.0});
    }
    const auto p = Operator::from_entries(u.basis(), projector);
    const auto ud = u.adjoint();
    if (!inside || !approx_equal(ud * u, p, tol) || !approx_equal(u * ud, p, tol)) {
        throw NotUnitaryOnRange("operator is not unitary on the range of " +
                                mu.label());
    }
    if (!is_consistency_preserving(u, mu)) {
        throw InternalContractViolation(
            "name-preserving operator is not consistency-preserving");
    }
    const auto id = Operator::identity(u.basis());
    Operator extended = tensor_ops(u, id, mu);
    if (!is_unitary(extended, tol) ||
        !approx_equal(extended.adjoint(), tensor_ops(ud, id, mu), tol)) {
        throw InternalContractViolation("extension of a unitary is not unitary");
    }
    return extended;
}

/// xi_v = mu chi_v u mu-bar zeta_v
inline BoundRestriction xi_v(const BoundRestriction &mu, const BoundRestriction &chi,
                             const BoundRestriction &zeta) {
    require_same_universe(mu, chi);
    require_same_universe(mu, zeta);
    auto xi = unite(compose(mu.restriction(), chi.restriction()),
                    compose_complement(mu.restriction(), zeta.restriction()));
    try {
        return BoundRestriction::bind(std::move(xi), mu.basis());
    } catch (const RestrictionAxiomViolation &e) {
        throw InternalContractViolation(std::string("xi is not a restriction: ") +
                                        e.what());
    }
}

/**
 * Is U' = U (x)mu I xi-zeta-causal, xi = mu chi u mu-bar zeta? U acts on the
 * base space, chi and zeta are evaluated on both the base and extended bases.
 * Raises PrerequisiteViolation naming the first failed hypothesis.
 */
inline bool causal_extension_check(const ExtendedUniverse &eu, const Operator &u,
                                   const Restriction &chi, const Restriction &zeta,
                                   double tol = kCompareTolerance) {
    require_same_basis(u.basis(), eu.base());
    const auto mu = BoundRestriction::bind(flag_zero(), eu.extended());
    const auto chi_ext = BoundRestriction::bind(chi, eu.extended());
    const auto zeta_ext = BoundRestriction::bind(zeta, eu.extended());
    if (!is_pointwise(mu)) {
        throw PrerequisiteViolation("mu is not pointwise");
    }
    if (!commute(mu, zeta_ext).all()) {
        throw PrerequisiteViolation("mu and " + zeta.label() + " do not commute");
    }
    if (!is_unitary(u, tol)) {
        throw PrerequisiteViolation("operator is not unitary");
    }
    if (!is_name_preserving(u)) {
        throw PrerequisiteViolation("operator is not name-preserving");
    }
    const auto chi_base = BoundRestriction::bind(chi, eu.base());
    const auto zeta_base = BoundRestriction::bind(zeta, eu.base());
    if (!is_causal(u, chi_base, zeta_base, tol).causal()) {
        throw PrerequisiteViolation("operator is not " + chi.label() + "/" +
                                    zeta.label() + "-causal");
    }
    const auto extended = unitary_extension(eu.embed(u), mu, tol);
    return is_causal(extended, xi_v(mu, chi_ext, zeta_ext), zeta_ext, tol).causal();
}

/// Per-vertex neighborhoods for a decomposition. `zeta_prime` defaults to zeta.
struct Neighborhoods {
    std::map<std::string, Restriction> chi;
    std::map<std::string, Restriction> zeta;
    std::map<std::string, Restriction> zeta_prime;
};

struct BlockDecomposition {
    std::vector<std::string> vertices;
    ExtendedUniverse universe;
    Operator extension; ///< U'
    std::map<std::string, Operator> tau_gates;
    std::map<std::string, Operator> k_gates;
    std::map<std::string, BoundRestriction> xi_restrictions;
    std::map<std::string, BoundRestriction> zeta_restrictions;
    /// max |(prod tau)(prod K) embed(G) - embed(U G)| over base graphs G
    double reconstruction_deviation = 0.0;
};

namespace detail {

inline Operator ordered_product(const std::map<std::string, Operator> &gates,
                                const std::vector<std::string> &order,
                                const BasisPtr &basis) {
    Operator out = Operator::identity(basis);
    for (const auto &v : order) {
        out = out * gates.at(v);
    }
    return out;
}

/// (prod tau)(prod K) on the flag-0 sector against the embedded U.
inline std::pair<double, Index> reconstruction_error(const BlockDecomposition &d,
                                                     const Operator &u,
                                                     const std::vector<std::string> &order) {
    const auto &ext = d.universe.extended();
    const Operator product = ordered_product(d.tau_gates, order, ext) *
                             ordered_product(d.k_gates, order, ext);
    const Operator expected = d.universe.embed(u);
    double worst = 0.0;
    Index witness = 0;
    for (Index g = 0; g < u.basis()->size(); ++g) {
        const Index col = d.universe.embed(g);
        std::map<Index, Complex> diff;
        product.for_each_in_column(col, [&](Index r, Complex v) { diff[r] += v; });
        expected.for_each_in_column(col, [&](Index r, Complex v) { diff[r] -= v; });
        for (const auto &[r, v] : diff) {
            if (std::abs(v) > worst) {
                worst = std::abs(v);
                witness = g;
            }
        }
    }
    return {worst, witness};
}

} // namespace detail

/**
 * Builds tau_v, K_v and xi_v for every vertex of u's universe.
 * Raises PrerequisiteViolation when u is not a name-preserving unitary, is not
 * chi_v zeta'_v-causal, zeta_v is not comprehended in zeta'_v, or a
 * neighborhood is missing; ReconstructionFailure if the gates do not
 * reproduce u.
 */
inline BlockDecomposition block_decompose(const Operator &u, const Neighborhoods &nb,
                                          double tol = kCompareTolerance) {
    const auto &base = u.basis();
    if (!is_unitary(u, tol)) {
        throw PrerequisiteViolation("operator is not unitary");
    }
    if (!is_name_preserving(u)) {
        throw PrerequisiteViolation("operator is not name-preserving");
    }
    const auto &vertices = base->universe().vertices();
    for (const auto &v : vertices) {
        if (!nb.chi.count(v) || !nb.zeta.count(v)) {
            throw PrerequisiteViolation("no neighborhood given for vertex " + v);
        }
        const Restriction &zeta = nb.zeta.at(v);
        const Restriction &zeta_prime =
            nb.zeta_prime.count(v) ? nb.zeta_prime.at(v) : zeta;
        const auto chi_b = BoundRestriction::bind(nb.chi.at(v), base);
        const auto zeta_b = BoundRestriction::bind(zeta, base);
        const auto zeta_prime_b = BoundRestriction::bind(zeta_prime, base);
        if (!comprehends(zeta_b, zeta_prime_b)) {
            throw PrerequisiteViolation(zeta.label() + " is not comprehended in " +
                                        zeta_prime.label());
        }
        const auto verdict = is_causal(u, chi_b, zeta_prime_b, tol);
        if (!verdict.causal()) {
            const auto [g, h] = *verdict.counterexample;
            throw PrerequisiteViolation(
                "operator is not " + chi_b.label() + "/" + zeta_prime_b.label() +
                "-causal at vertex " + v + ", witness |" + base->graph(g).str() +
                "><" + base->graph(h).str() + "|");
        }
    }

    ExtendedUniverse eu(base);
    const auto &ext = eu.extended();
    const auto mu = BoundRestriction::bind(flag_zero(), ext);
    if (!is_pointwise(mu)) {
        throw PrerequisiteViolation("mu is not pointwise");
    }
    const Operator embedded = eu.embed(u);
    bool preserves_range = true;
    embedded.for_each([&](Index r, Index c, Complex) {
        preserves_range &= !mu.in_range(c) || mu.in_range(r);
    });
    if (!preserves_range) {
        throw PrerequisiteViolation("operator leaves the range of mu");
    }

    const Operator extension = unitary_extension(embedded, mu, tol);
    const Operator extension_dag = extension.adjoint();
    const Operator tau = toggle_unitary(eu);
    const Operator id = Operator::identity(ext);

    BlockDecomposition d{vertices, eu, extension, {}, {}, {}, {}, 0.0};
    for (const auto &v : vertices) {
        auto zeta = BoundRestriction::bind(nb.zeta.at(v), ext);
        const auto chi = BoundRestriction::bind(nb.chi.at(v), ext);
        Operator tv = tensor_ops(tau, id, zeta);
        d.k_gates.emplace(v, extension_dag * tv * extension);
        d.tau_gates.emplace(v, std::move(tv));
        d.xi_restrictions.emplace(v, xi_v(mu, chi, zeta));
        d.zeta_restrictions.emplace(v, std::move(zeta));
    }

    const auto [worst, witness] = detail::reconstruction_error(d, u, vertices);
    d.reconstruction_deviation = worst;
    if (worst > tol) {
        throw ReconstructionFailure("max deviation " + std::to_string(worst) +
                                    " on |" + base->graph(witness).str() + ">");
    }
    return d;
}

/// Verdicts on a finished decomposition.
struct DecompositionCheck {
    double reconstruction_deviation = 0.0;
    /// Worst deviation between fixed-order and shuffled-order gate products.
    double order_deviation = 0.0;
    bool tau_strict = true;
    bool k_strict = true;
    bool tau_commute = true;
    bool k_commute = true;
    bool tau_product_is_toggle = true;
    bool extension_causal = true; ///< U' xi_v zeta_v-causal for every v
    std::vector<std::string> failures;

    [[nodiscard]] bool passed(double tol = kCompareTolerance) const {
        return reconstruction_deviation <= tol && order_deviation <= tol &&
               tau_strict && k_strict && tau_commute && k_commute &&
               tau_product_is_toggle && extension_causal;
    }
};

inline DecompositionCheck verify_decomposition(const BlockDecomposition &d,
                                               const Operator &u,
                                               std::uint64_t seed,
                                               double tol = kCompareTolerance) {
    DecompositionCheck c;
    c.reconstruction_deviation = d.reconstruction_deviation;
    const auto &ext = d.universe.extended();

    for (const auto &v : d.vertices) {
        if (!is_strictly_local(d.tau_gates.at(v), d.zeta_restrictions.at(v), tol)) {
            c.tau_strict = false;
            c.failures.push_back("tau_" + v + " not strictly local");
        }
        if (!is_strictly_local(d.k_gates.at(v), d.xi_restrictions.at(v), tol)) {
            c.k_strict = false;
            c.failures.push_back("K_" + v + " not strictly local");
        }
        if (!is_causal(d.extension, d.xi_restrictions.at(v),
                       d.zeta_restrictions.at(v), tol)
                 .causal()) {
            c.extension_causal = false;
            c.failures.push_back("extension not causal at " + v);
        }
    }
    for (std::size_t i = 0; i < d.vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < d.vertices.size(); ++j) {
            const auto &x = d.vertices[i];
            const auto &y = d.vertices[j];
            const auto &tx = d.tau_gates.at(x);
            const auto &ty = d.tau_gates.at(y);
            if (!approx_equal(tx * ty, ty * tx, tol)) {
                c.tau_commute = false;
                c.failures.push_back("[tau_" + x + ", tau_" + y + "] != 0");
            }
            const auto &kx = d.k_gates.at(x);
            const auto &ky = d.k_gates.at(y);
            if (!approx_equal(kx * ky, ky * kx, tol)) {
                c.k_commute = false;
                c.failures.push_back("[K_" + x + ", K_" + y + "] != 0");
            }
        }
    }
    const Operator tau_product = detail::ordered_product(d.tau_gates, d.vertices, ext);
    if (!approx_equal(tau_product, toggle_unitary(d.universe), tol)) {
        c.tau_product_is_toggle = false;
        c.failures.push_back("product of tau_v is not the toggle");
    }
    const Operator k_product = detail::ordered_product(d.k_gates, d.vertices, ext);
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 2; ++trial) {
        auto order = d.vertices;
        std::shuffle(order.begin(), order.end(), rng);
        c.order_deviation = std::max(
            {c.order_deviation,
             max_abs_difference(detail::ordered_product(d.tau_gates, order, ext),
                                tau_product),
             max_abs_difference(detail::ordered_product(d.k_gates, order, ext),
                                k_product),
             detail::reconstruction_error(d, u, order).first});
    }
    if (c.order_deviation > tol) {
        c.failures.push_back("gate products depend on order");
    }
    if (c.reconstruction_deviation > tol) {
        c.failures.push_back("reconstruction deviation above tolerance");
    }
    return c;
}

} // namespace logicaltensor
