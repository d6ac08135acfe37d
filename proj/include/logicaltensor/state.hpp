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
 * Kets and operators over the graph basis of a universe.
 *
 * Operators are sparse (column-major); entry (row, col) is <row|A|col>, so the
 * row is the bra-graph and the column the ket-graph. Values below
 * kZeroTolerance are never stored.
 */
#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "graph.hpp"

namespace logicaltensor {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

inline constexpr double kZeroTolerance = 1e-12;
inline constexpr double kCompareTolerance = 1e-10;

class Ket {
  public:
    explicit Ket(BasisPtr basis)
        : basis_(std::move(basis)),
          amplitudes_(Eigen::VectorXcd::Zero(basis_->size())) {}

    Ket(BasisPtr basis, Eigen::VectorXcd amplitudes)
        : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
        prune();
    }

    static Ket basis_state(BasisPtr basis, Index g) {
        Ket k(std::move(basis));
        k.amplitudes_[g] = 1.0;
        return k;
    }
    static Ket of(BasisPtr basis, const Graph &g) {
        const Index idx = basis->index_of(g);
        return basis_state(std::move(basis), idx);
    }

    [[nodiscard]] const BasisPtr &basis() const { return basis_; }
    [[nodiscard]] const Eigen::VectorXcd &vector() const { return amplitudes_; }

    [[nodiscard]] Complex amplitude(Index g) const { return amplitudes_[g]; }
    [[nodiscard]] Complex amplitude(const Graph &g) const {
        return amplitudes_[basis_->index_of(g)];
    }

    Ket &add(Index g, Complex value) {
        amplitudes_[g] += value;
        if (std::abs(amplitudes_[g]) <= kZeroTolerance) {
            amplitudes_[g] = 0.0;
        }
        return *this;
    }

    Ket &prune(double tol = kZeroTolerance) {
        for (Index i = 0; i < amplitudes_.size(); ++i) {
            if (std::abs(amplitudes_[i]) <= tol) {
                amplitudes_[i] = 0.0;
            }
        }
        return *this;
    }

    /// Nonzero (graph, amplitude) pairs in index order.
    [[nodiscard]] std::vector<std::pair<Index, Complex>> terms() const {
        std::vector<std::pair<Index, Complex>> out;
        for (Index i = 0; i < amplitudes_.size(); ++i) {
            if (amplitudes_[i] != Complex{}) {
                out.emplace_back(i, amplitudes_[i]);
            }
        }
        return out;
    }

    [[nodiscard]] bool is_zero() const { return terms().empty(); }
    [[nodiscard]] double norm() const { return amplitudes_.norm(); }

    friend Ket operator+(const Ket &a, const Ket &b) {
        require_same_basis(a.basis_, b.basis_);
        return Ket(a.basis_, a.amplitudes_ + b.amplitudes_);
    }
    friend Ket operator-(const Ket &a, const Ket &b) {
        require_same_basis(a.basis_, b.basis_);
        return Ket(a.basis_, a.amplitudes_ - b.amplitudes_);
    }
    friend Ket operator*(Complex s, const Ket &k) {
        return Ket(k.basis_, s * k.amplitudes_);
    }

  private:
    BasisPtr basis_;
    Eigen::VectorXcd amplitudes_;
};

/// Trace-class (states) vs bounded (transformations, observables). At finite
/// dimension the tag is documentation only.
enum class OperatorRole { kTraceClass, kBounded };

struct Entry {
    Index row;
    Index col;
    Complex value;
};

class Operator {
  public:
    explicit Operator(BasisPtr basis, OperatorRole role = OperatorRole::kBounded)
        : basis_(std::move(basis)), matrix_(basis_->size(), basis_->size()),
          role_(role) {}

    Operator(BasisPtr basis, SparseMatrix matrix,
             OperatorRole role = OperatorRole::kBounded)
        : basis_(std::move(basis)), matrix_(std::move(matrix)), role_(role) {
        prune();
    }

    /// Duplicate (row, col) entries are summed.
    static Operator from_entries(BasisPtr basis, const std::vector<Entry> &entries,
                                 OperatorRole role = OperatorRole::kBounded) {
        std::vector<Eigen::Triplet<Complex>> triplets;
        triplets.reserve(entries.size());
        for (const auto &e : entries) {
            triplets.emplace_back(e.row, e.col, e.value);
        }
        SparseMatrix m(basis->size(), basis->size());
        m.setFromTriplets(triplets.begin(), triplets.end());
        return Operator(std::move(basis), std::move(m), role);
    }

    static Operator identity(BasisPtr basis) {
        SparseMatrix m(basis->size(), basis->size());
        m.setIdentity();
        return Operator(std::move(basis), std::move(m));
    }

    /// |ket><bra|
    static Operator outer(BasisPtr basis, Index ket, Index bra,
                          Complex value = 1.0) {
        return from_entries(std::move(basis), {{ket, bra, value}});
    }

    /// |phi><psi|
    static Operator outer(const Ket &phi, const Ket &psi) {
        require_same_basis(phi.basis(), psi.basis());
        std::vector<Entry> entries;
        for (const auto &[g, a] : phi.terms()) {
            for (const auto &[h, b] : psi.terms()) {
                entries.push_back({g, h, a * std::conj(b)});
            }
        }
        return from_entries(phi.basis(), entries, OperatorRole::kTraceClass);
    }

    [[nodiscard]] const BasisPtr &basis() const { return basis_; }
    [[nodiscard]] const SparseMatrix &matrix() const { return matrix_; }
    [[nodiscard]] OperatorRole role() const { return role_; }
    Operator &set_role(OperatorRole role) {
        role_ = role;
        return *this;
    }

    /// <row|A|col>
    [[nodiscard]] Complex at(Index row, Index col) const {
        return matrix_.coeff(row, col);
    }

    [[nodiscard]] std::vector<Entry> entries() const {
        std::vector<Entry> out;
        out.reserve(static_cast<std::size_t>(matrix_.nonZeros()));
        for_each([&](Index r, Index c, Complex v) { out.push_back({r, c, v}); });
        return out;
    }

    /// Visits stored entries column by column.
    template <class F> void for_each(F &&f) const {
        for (Index k = 0; k < matrix_.outerSize(); ++k) {
            for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
                f(static_cast<Index>(it.row()), static_cast<Index>(it.col()),
                  it.value());
            }
        }
    }

    /// Visits the nonzero rows of column `col`, i.e. the terms of A|col>.
    template <class F> void for_each_in_column(Index col, F &&f) const {
        for (SparseMatrix::InnerIterator it(matrix_, col); it; ++it) {
            f(static_cast<Index>(it.row()), it.value());
        }
    }

    [[nodiscard]] Index nonzeros() const { return matrix_.nonZeros(); }
    [[nodiscard]] bool is_zero() const { return matrix_.nonZeros() == 0; }

    [[nodiscard]] Eigen::MatrixXcd dense() const {
        return Eigen::MatrixXcd(matrix_);
    }

    [[nodiscard]] Operator adjoint() const {
        return Operator(basis_, SparseMatrix(matrix_.adjoint()), role_);
    }

    Operator &prune(double tol = kZeroTolerance) {
        matrix_.prune([tol](const Eigen::Index &, const Eigen::Index &,
                            const Complex &v) { return std::abs(v) > tol; });
        matrix_.makeCompressed();
        return *this;
    }

    friend Operator operator*(const Operator &a, const Operator &b) {
        require_same_basis(a.basis_, b.basis_);
        return Operator(a.basis_, SparseMatrix(a.matrix_ * b.matrix_),
                        product_role(a.role_, b.role_));
    }
    friend Operator operator+(const Operator &a, const Operator &b) {
        require_same_basis(a.basis_, b.basis_);
        return Operator(a.basis_, SparseMatrix(a.matrix_ + b.matrix_), a.role_);
    }
    friend Operator operator-(const Operator &a, const Operator &b) {
        require_same_basis(a.basis_, b.basis_);
        return Operator(a.basis_, SparseMatrix(a.matrix_ - b.matrix_), a.role_);
    }
    friend Operator operator*(Complex s, const Operator &a) {
        return Operator(a.basis_, SparseMatrix(s * a.matrix_), a.role_);
    }

  private:
    static OperatorRole product_role(OperatorRole a, OperatorRole b) {
        return a == OperatorRole::kTraceClass || b == OperatorRole::kTraceClass
                   ? OperatorRole::kTraceClass
                   : OperatorRole::kBounded;
    }

    BasisPtr basis_;
    SparseMatrix matrix_;
    OperatorRole role_ = OperatorRole::kBounded;
};

/// <phi|psi>, conjugate-linear in phi.
inline Complex inner_product(const Ket &phi, const Ket &psi) {
    require_same_basis(phi.basis(), psi.basis());
    return phi.vector().dot(psi.vector());
}

inline Ket apply(const Operator &a, const Ket &psi) {
    require_same_basis(a.basis(), psi.basis());
    return Ket(psi.basis(), a.matrix() * psi.vector());
}

inline Operator compose(const Operator &a, const Operator &b) { return a * b; }
inline Operator adjoint(const Operator &a) { return a.adjoint(); }

inline Complex full_trace(const Operator &rho) {
    Complex t{};
    for (Index g = 0; g < rho.matrix().outerSize(); ++g) {
        t += rho.at(g, g);
    }
    return t;
}

/// Largest |a_ij - b_ij| over all entries.
inline double max_abs_difference(const Operator &a, const Operator &b) {
    require_same_basis(a.basis(), b.basis());
    const SparseMatrix d = a.matrix() - b.matrix();
    double m = 0.0;
    for (Index k = 0; k < d.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(d, k); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

inline double max_abs_difference(const Ket &a, const Ket &b) {
    require_same_basis(a.basis(), b.basis());
    return (a.vector() - b.vector()).cwiseAbs().maxCoeff();
}

inline bool approx_equal(const Operator &a, const Operator &b,
                         double tol = kCompareTolerance) {
    return max_abs_difference(a, b) <= tol;
}

/// True iff A^dagger A and A A^dagger are the identity to within `tol`
/// (max-entry norm) over the enumerated basis.
inline bool is_unitary(const Operator &a, double tol = kCompareTolerance) {
    const auto id = Operator::identity(a.basis());
    const auto ad = a.adjoint();
    return approx_equal(ad * a, id, tol) && approx_equal(a * ad, id, tol);
}

/// <H|A|G> = 0 whenever V(G) != V(H).
inline bool is_name_preserving(const Operator &a, double tol = kZeroTolerance) {
    const auto &basis = *a.basis();
    bool ok = true;
    a.for_each([&](Index r, Index c, Complex v) {
        if (std::abs(v) > tol && basis.support_mask(r) != basis.support_mask(c)) {
            ok = false;
        }
    });
    return ok;
}

} // namespace logicaltensor
