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
 * Deciders for chi-locality, strict locality, local tomography and
 * chi-zeta causality.
 *
 * Each property is evaluated through every characterisation it has and the
 * verdicts are cross-checked; disagreement raises EquivalenceViolation, which
 * can only mean a bug in this library.
 *
 *   local (Schrodinger):  <H|A|G> = <H_chi|A|G_chi> <H_chibar|G_chibar>
 *   local (operational):  A = A (x)chi I
 *   local (Heisenberg):   Tr(A rho) = Tr(A rho|chi) on every rho = |G><H|
 *   causal (primal):      (U rho U^dag)|zeta = (U rho|chi U^dag)|zeta
 *   causal (dual):        U^dag A U is chi-local for every zeta-local A
 */
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tensor_trace.hpp"

namespace logicaltensor {

using GraphPair = std::pair<Index, Index>;

namespace detail {

inline void keep_first(std::optional<GraphPair> &slot, GraphPair candidate) {
    if (!slot || candidate < *slot) {
        slot = candidate;
    }
}

/// Graph indices grouped by their chi-complement.
inline std::vector<std::vector<Index>> rest_buckets(const BoundRestriction &chi) {
    std::map<Index, std::vector<Index>> groups;
    for (Index g = 0; g < chi.basis()->size(); ++g) {
        groups[chi.rest(g)].push_back(g);
    }
    std::vector<std::vector<Index>> out;
    out.reserve(groups.size());
    for (auto &[rest, members] : groups) {
        out.push_back(std::move(members));
    }
    return out;
}

/**
 * Lexicographically first (H, G) violating the Schrodinger form of locality.
 * Pairs with different complements have a zero right-hand side, so only the
 * stored entries of A can break them; pairs sharing a complement are checked
 * one by one.
 */
inline std::optional<GraphPair>
schrodinger_counterexample(const Operator &a, const BoundRestriction &chi,
                           double tol) {
    std::optional<GraphPair> first;
    a.for_each([&](Index h, Index g, Complex v) {
        if (chi.rest(h) != chi.rest(g) && std::abs(v) > tol) {
            keep_first(first, {h, g});
        }
    });
    for (const auto &bucket : rest_buckets(chi)) {
        for (const Index h : bucket) {
            for (const Index g : bucket) {
                const Complex rhs = a.at(chi.part(h), chi.part(g));
                if (std::abs(a.at(h, g) - rhs) > tol) {
                    keep_first(first, {h, g});
                }
            }
        }
    }
    return first;
}

inline bool operational_local(const Operator &a, const BoundRestriction &chi,
                              double tol) {
    return approx_equal(tensor_ops(a, Operator::identity(a.basis()), chi), a,
                        tol);
}

/// Tr(A |G><H|) = <H|A|G> against Tr(A (|G><H|)|chi), over all basis pairs.
inline std::optional<GraphPair>
heisenberg_counterexample(const Operator &a, const BoundRestriction &chi,
                          double tol) {
    const Index n = a.basis()->size();
    for (Index h = 0; h < n; ++h) {
        for (Index g = 0; g < n; ++g) {
            const Complex direct = a.at(h, g);
            Complex reduced{};
            if (const auto p = StandardKernel::trace_pair(g, h, chi)) {
                reduced = a.at(p->second, p->first);
            }
            if (std::abs(direct - reduced) > tol) {
                return GraphPair{h, g};
            }
        }
    }
    return std::nullopt;
}

inline bool is_local_fast(const Operator &a, const BoundRestriction &chi,
                          double tol = kCompareTolerance) {
    return !schrodinger_counterexample(a, chi, tol).has_value();
}

/// Strict locality by its definition: local and consistency-preserving.
inline bool is_strictly_local_fast(const Operator &a,
                                   const BoundRestriction &chi,
                                   double tol = kCompareTolerance) {
    return is_local_fast(a, chi, tol) && is_consistency_preserving(a, chi);
}

} // namespace detail

/// Strictly chi-local, checked both as "local and consistency-preserving"
/// and as "A, A^dag A and A A^dag are local".
inline bool is_strictly_local(const Operator &a, const BoundRestriction &chi,
                              double tol = kCompareTolerance) {
    require_same_basis(a.basis(), chi.basis());
    const bool local = detail::is_local_fast(a, chi, tol);
    const bool by_definition = local && is_consistency_preserving(a, chi);
    const Operator ad = a.adjoint();
    const bool by_products = local && detail::is_local_fast(ad * a, chi, tol) &&
                             detail::is_local_fast(a * ad, chi, tol);
    if (by_definition != by_products) {
        throw EquivalenceViolation(
            "strict locality of an operator under " + chi.label() +
            ": definition says " + (by_definition ? "yes" : "no") +
            ", A^dag A / A A^dag test says " + (by_products ? "yes" : "no"));
    }
    return by_definition;
}

struct LocalityVerdict {
    bool schrodinger = false;
    bool operational = false;
    bool heisenberg = false;
    bool strict = false;
    /// First (bra, ket) pair breaking the Schrodinger form.
    std::optional<GraphPair> counterexample;

    [[nodiscard]] bool local() const { return schrodinger; }
};

inline LocalityVerdict is_local(const Operator &a, const BoundRestriction &chi,
                                double tol = kCompareTolerance) {
    require_same_basis(a.basis(), chi.basis());
    LocalityVerdict v;
    v.counterexample = detail::schrodinger_counterexample(a, chi, tol);
    v.schrodinger = !v.counterexample;
    v.operational = detail::operational_local(a, chi, tol);
    v.heisenberg = !detail::heisenberg_counterexample(a, chi, tol);
    if (v.schrodinger != v.operational || v.schrodinger != v.heisenberg) {
        throw EquivalenceViolation(
            "locality pictures disagree under " + chi.label() +
            ": schrodinger=" + std::to_string(v.schrodinger) +
            " operational=" + std::to_string(v.operational) +
            " heisenberg=" + std::to_string(v.heisenberg));
    }
    v.strict = is_strictly_local(a, chi, tol);
    return v;
}

/// B (x)chi I, which is always chi-local.
inline Operator localize(const Operator &b, const BoundRestriction &chi) {
    return tensor_ops(b, Operator::identity(b.basis()), chi);
}

struct TomographyElement {
    Index ket; ///< H_chi
    Index bra; ///< G_chi
    Operator op; ///< |H_chi><G_chi| (x)chi I
};

/// One chi-local operator per ordered pair of chi-range graphs.
inline std::vector<TomographyElement>
tomography_operators(const BoundRestriction &chi,
                     bool name_preserving_only = false) {
    std::vector<TomographyElement> out;
    const auto &basis = chi.basis();
    for (const Index h : chi.range()) {
        for (const Index g : chi.range()) {
            if (name_preserving_only &&
                basis->support_mask(h) != basis->support_mask(g)) {
                continue;
            }
            out.push_back({h, g, localize(Operator::outer(basis, h, g), chi)});
        }
    }
    return out;
}

/// Tr(A rho)
inline Complex expectation(const Operator &a, const Operator &rho) {
    require_same_basis(a.basis(), rho.basis());
    Complex t{};
    a.for_each([&](Index r, Index c, Complex v) { t += v * rho.at(c, r); });
    return t;
}

/**
 * Do all chi-local observables (from the tomography family) give rho and
 * sigma the same expectation? Cross-checked against rho|chi == sigma|chi.
 * With `name_preserving_only`, both states must be name-preserving and only
 * name-preserving observables are used.
 */
inline bool tomography_equal(const Operator &rho, const Operator &sigma,
                             const BoundRestriction &chi,
                             bool name_preserving_only = false,
                             double tol = kCompareTolerance) {
    if (name_preserving_only &&
        (!is_name_preserving(rho) || !is_name_preserving(sigma))) {
        throw PrerequisiteViolation(
            "name-preserving tomography needs name-preserving states");
    }
    bool agree = true;
    for (const auto &e : tomography_operators(chi, name_preserving_only)) {
        if (std::abs(expectation(e.op, rho) - expectation(e.op, sigma)) > tol) {
            agree = false;
            break;
        }
    }
    const bool same_reduction =
        approx_equal(traceout(rho, chi), traceout(sigma, chi), tol);
    if (agree != same_reduction) {
        throw EquivalenceViolation(
            std::string("tomography under ") + chi.label() + " says " +
            (agree ? "equal" : "different") + " but traceouts are " +
            (same_reduction ? "equal" : "different"));
    }
    return agree;
}

namespace detail {

using Terms = std::vector<std::pair<GraphPair, Complex>>;

inline std::vector<std::vector<std::pair<Index, Complex>>>
columns(const Operator &u) {
    std::vector<std::vector<std::pair<Index, Complex>>> cols(
        static_cast<std::size_t>(u.basis()->size()));
    u.for_each([&](Index r, Index c, Complex v) { cols[c].emplace_back(r, v); });
    return cols;
}

/// Appends sign * (U|g><h|U^dag)|zeta to `out`.
inline void push_conjugated_trace(
    const std::vector<std::vector<std::pair<Index, Complex>>> &cols, Index g,
    Index h, const BoundRestriction &zeta, double sign, Terms &out) {
    for (const auto &[a, ua] : cols[g]) {
        for (const auto &[b, ub] : cols[h]) {
            if (const auto p = StandardKernel::trace_pair(a, b, zeta)) {
                out.emplace_back(*p, sign * ua * std::conj(ub));
            }
        }
    }
}

inline double max_merged(Terms &terms) {
    std::sort(terms.begin(), terms.end(),
              [](const auto &x, const auto &y) { return x.first < y.first; });
    double worst = 0.0;
    for (std::size_t i = 0; i < terms.size();) {
        Complex sum{};
        std::size_t j = i;
        for (; j < terms.size() && terms[j].first == terms[i].first; ++j) {
            sum += terms[j].second;
        }
        worst = std::max(worst, std::abs(sum));
        i = j;
    }
    return worst;
}

/// First (G, H) where the primal causality identity fails on |G><H|.
inline std::optional<GraphPair>
primal_causality_counterexample(const Operator &u, const BoundRestriction &chi,
                                const BoundRestriction &zeta, double tol) {
    const auto cols = columns(u);
    const Index n = u.basis()->size();
    Terms terms;
    for (Index g = 0; g < n; ++g) {
        for (Index h = 0; h < n; ++h) {
            terms.clear();
            push_conjugated_trace(cols, g, h, zeta, 1.0, terms);
            if (const auto p = StandardKernel::trace_pair(g, h, chi)) {
                push_conjugated_trace(cols, p->first, p->second, zeta, -1.0,
                                      terms);
            }
            if (max_merged(terms) > tol) {
                return GraphPair{g, h};
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

struct CausalityVerdict {
    bool primal = false;
    bool dual = false;
    /// Dual form using only the name-preserving part of the tomography family.
    bool dual_name_preserving = false;
    /// U^dag A U strictly chi-local for every strictly zeta-local family member;
    /// evaluated only when the primal verdict holds.
    std::optional<bool> strict_transfer;
    /// First (G, H) with (U|G><H|U^dag)|zeta != (U(|G><H|)|chi U^dag)|zeta.
    std::optional<GraphPair> counterexample;

    [[nodiscard]] bool causal() const { return primal; }
};

inline CausalityVerdict is_causal(const Operator &u, const BoundRestriction &chi,
                                  const BoundRestriction &zeta,
                                  double tol = kCompareTolerance) {
    require_same_basis(u.basis(), chi.basis());
    require_same_basis(u.basis(), zeta.basis());
    if (!is_unitary(u, tol)) {
        throw NotUnitary("causality is only defined for unitaries");
    }
    CausalityVerdict v;
    v.counterexample = detail::primal_causality_counterexample(u, chi, zeta, tol);
    v.primal = !v.counterexample;

    const Operator ud = u.adjoint();
    const auto family = tomography_operators(zeta);
    v.dual = true;
    v.dual_name_preserving = true;
    for (const auto &e : family) {
        const bool pulled_back_local =
            detail::is_local_fast(ud * e.op * u, chi, tol);
        v.dual &= pulled_back_local;
        if (u.basis()->support_mask(e.ket) == u.basis()->support_mask(e.bra)) {
            v.dual_name_preserving &= pulled_back_local;
        }
    }
    if (v.primal != v.dual) {
        throw EquivalenceViolation("primal and dual causality disagree for (" +
                                   chi.label() + ", " + zeta.label() + ")");
    }
    if (v.primal) {
        bool transfer = true;
        for (const auto &e : family) {
            if (detail::is_strictly_local_fast(e.op, zeta, tol)) {
                transfer &= detail::is_strictly_local_fast(ud * e.op * u, chi, tol);
            }
        }
        v.strict_transfer = transfer;
    }
    return v;
}

/// Is VU chi-eta-causal? Intended for U chi-zeta-causal and V zeta-eta-causal;
/// those hypotheses are the caller's to establish.
inline bool causal_compose_check(const Operator &u, const Operator &v,
                                 const BoundRestriction &chi,
                                 const BoundRestriction &eta,
                                 double tol = kCompareTolerance) {
    return is_causal(v * u, chi, eta, tol).causal();
}

} // namespace logicaltensor
