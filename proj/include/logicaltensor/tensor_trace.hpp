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
 * Generalised traceout and tensor product induced by a restriction.
 *
 *   (|G><H|)|chi   = |G_chi><H_chi| <H_chibar|G_chibar>
 *   |H> (x)chi |H'> = |G> if H = G_chi and H' = G_chibar, 0 otherwise
 *
 * Both are extended (bi)linearly. The two basis rules live in a Kernel policy
 * so that verification suites can run against deliberately broken variants.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "restriction.hpp"
#include "state.hpp"

namespace logicaltensor {

struct StandardKernel {
    /// Image of |g><h| under the chi-traceout, or nullopt when it vanishes.
    static std::optional<std::pair<Index, Index>>
    trace_pair(Index g, Index h, const BoundRestriction &chi) {
        if (chi.rest(g) != chi.rest(h)) {
            return std::nullopt;
        }
        return std::pair{chi.part(g), chi.part(h)};
    }

    /// |left> (x)chi |right>. Any reconstituting G must equal left u right,
    /// so it is enough to form the union and check both restriction equations.
    static std::optional<Index> weave(Index left, Index right,
                                      const BoundRestriction &chi) {
        const auto g = chi.basis()->unite(left, right);
        if (!g || chi.part(*g) != left || chi.rest(*g) != right) {
            return std::nullopt;
        }
        return g;
    }
};

template <class Kernel = StandardKernel>
Operator traceout(const Operator &rho, const BoundRestriction &chi) {
    require_same_basis(rho.basis(), chi.basis());
    std::vector<Entry> out;
    rho.for_each([&](Index g, Index h, Complex v) {
        if (auto p = Kernel::trace_pair(g, h, chi)) {
            out.push_back({p->first, p->second, v});
        }
    });
    return Operator::from_entries(rho.basis(), out, OperatorRole::kTraceClass);
}

template <class Kernel = StandardKernel>
Ket tensor_kets(const Ket &phi, const Ket &psi, const BoundRestriction &chi) {
    require_same_basis(phi.basis(), psi.basis());
    require_same_basis(phi.basis(), chi.basis());
    Ket out(phi.basis());
    for (const auto &[h, a] : phi.terms()) {
        for (const auto &[h2, b] : psi.terms()) {
            if (auto g = Kernel::weave(h, h2, chi)) {
                out.add(*g, a * b);
            }
        }
    }
    return out;
}

/// Bilinear extension of (|G><H|) (x)chi (|G'><H'|) = (|G>(x)|G'>)(<H|(x)<H'|).
template <class Kernel = StandardKernel>
Operator tensor_ops(const Operator &a, const Operator &b,
                    const BoundRestriction &chi) {
    require_same_basis(a.basis(), b.basis());
    require_same_basis(a.basis(), chi.basis());
    const auto b_entries = b.entries();
    std::vector<Entry> out;
    a.for_each([&](Index g, Index h, Complex va) {
        for (const auto &eb : b_entries) {
            const auto ket = Kernel::weave(g, eb.row, chi);
            if (!ket) {
                continue;
            }
            if (const auto bra = Kernel::weave(h, eb.col, chi)) {
                out.push_back({*ket, *bra, va * eb.value});
            }
        }
    });
    return Operator::from_entries(a.basis(), out,
                                  a.role() == OperatorRole::kTraceClass ||
                                          b.role() == OperatorRole::kTraceClass
                                      ? OperatorRole::kTraceClass
                                      : OperatorRole::kBounded);
}

/// Parameters of rho -> ((.)|chi (x)zeta I)(rho).
struct TraceChannelSpec {
    BoundRestriction inner; ///< chi
    BoundRestriction outer; ///< zeta
};

/**
 * Lifted trace channel, basis rule
 *   |G><H| -> |G_{zeta chi}><H_{zeta chi}| <H_{zeta chibar}|G_{zeta chibar}>
 *             (x)zeta |G_zetabar><H_zetabar|
 */
template <class Kernel = StandardKernel>
Operator lifted_trace_channel(const Operator &rho, const TraceChannelSpec &spec) {
    const auto &chi = spec.inner;
    const auto &zeta = spec.outer;
    require_same_basis(rho.basis(), chi.basis());
    require_same_basis(rho.basis(), zeta.basis());
    std::vector<Entry> out;
    rho.for_each([&](Index g, Index h, Complex v) {
        const auto inner = Kernel::trace_pair(zeta.part(g), zeta.part(h), chi);
        if (!inner) {
            return;
        }
        const auto ket = Kernel::weave(inner->first, zeta.rest(g), zeta);
        const auto bra = Kernel::weave(inner->second, zeta.rest(h), zeta);
        if (ket && bra) {
            out.push_back({*ket, *bra, v});
        }
    });
    return Operator::from_entries(rho.basis(), out, OperatorRole::kTraceClass);
}

/// <G|phi><G'|psi> != 0 implies |G> (x)chi |G'> != 0.
template <class Kernel = StandardKernel>
bool is_consistent(const Ket &phi, const Ket &psi, const BoundRestriction &chi) {
    const auto right = psi.terms();
    for (const auto &[g, a] : phi.terms()) {
        for (const auto &[g2, b] : right) {
            if (!Kernel::weave(g, g2, chi)) {
                return false;
            }
        }
    }
    return true;
}

/// rho_{GH} sigma_{G'H'} != 0 implies |G>(x)|G'> != 0 != |H>(x)|H'>.
template <class Kernel = StandardKernel>
bool is_consistent(const Operator &rho, const Operator &sigma,
                   const BoundRestriction &chi) {
    const auto right = sigma.entries();
    bool ok = true;
    rho.for_each([&](Index g, Index h, Complex) {
        if (!ok) {
            return;
        }
        for (const auto &e : right) {
            if (!Kernel::weave(g, e.row, chi) || !Kernel::weave(h, e.col, chi)) {
                ok = false;
                return;
            }
        }
    });
    return ok;
}

/// First violation of chi-consistency preservation, as (H, G): either
/// <H|A|G_chi> != 0 or <H|A^dagger|G_chi> != 0 while |H> (x)chi |G_chibar> = 0.
template <class Kernel = StandardKernel>
std::optional<std::pair<Index, Index>>
consistency_preservation_counterexample(const Operator &a,
                                        const BoundRestriction &chi) {
    require_same_basis(a.basis(), chi.basis());
    const Operator ad = a.adjoint();
    for (Index g = 0; g < chi.basis()->size(); ++g) {
        const Index part = chi.part(g);
        const Index rest = chi.rest(g);
        std::optional<std::pair<Index, Index>> bad;
        auto check = [&](Index h, Complex) {
            if (!bad && !Kernel::weave(h, rest, chi)) {
                bad = std::pair{h, g};
            }
        };
        a.for_each_in_column(part, check);
        ad.for_each_in_column(part, check);
        if (bad) {
            return bad;
        }
    }
    return std::nullopt;
}

template <class Kernel = StandardKernel>
bool is_consistency_preserving(const Operator &a, const BoundRestriction &chi) {
    return !consistency_preservation_counterexample<Kernel>(a, chi).has_value();
}

/// Eigenvalues of the Hermitian part of `a`, restricted to the rows/columns
/// it actually touches (the rest of the spectrum is zero).
inline Eigen::VectorXd hermitian_eigenvalues(const Operator &a) {
    std::vector<Index> touched;
    a.for_each([&](Index r, Index c, Complex) {
        touched.push_back(r);
        touched.push_back(c);
    });
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    const auto n = static_cast<Eigen::Index>(touched.size());
    if (n == 0) {
        return Eigen::VectorXd();
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    auto pos = [&](Index g) {
        return std::lower_bound(touched.begin(), touched.end(), g) -
               touched.begin();
    };
    a.for_each([&](Index r, Index c, Complex v) { m(pos(r), pos(c)) += v; });
    const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

/// Smallest eigenvalue of the Hermitian part over the whole basis.
inline double min_eigenvalue(const Operator &a) {
    const auto ev = hermitian_eigenvalues(a);
    double m = ev.size() ? ev.minCoeff() : 0.0;
    // Untouched basis directions contribute zero eigenvalues.
    if (ev.size() < a.basis()->size()) {
        m = std::min(m, 0.0);
    }
    return m;
}

/// Von Neumann entropy (bits) of traceout(|psi><psi|, chi).
template <class Kernel = StandardKernel>
double entanglement_entropy(const Ket &psi, const BoundRestriction &chi,
                            double tol = kCompareTolerance) {
    if (std::abs(psi.norm() - 1.0) > tol) {
        throw NotNormalized("ket norm is " + std::to_string(psi.norm()));
    }
    const auto reduced = traceout<Kernel>(Operator::outer(psi, psi), chi);
    double s = 0.0;
    for (const double lambda : hermitian_eigenvalues(reduced)) {
        if (lambda > kZeroTolerance) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

} // namespace logicaltensor
