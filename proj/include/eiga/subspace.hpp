#pragma once

#include <utility>

#include "eiga/types.hpp"

namespace eiga {

// PCA subspace of a set of vectorized samples: mean, orthonormal basis in
// descending eigenvalue order, and the eigenvalues of the centered scatter
// matrix P̄P̄ᵀ (no 1/F normalization).
struct EigenSubspace {
    VecX mean;         // length D
    MatX basis;        // D x L, orthonormal columns
    VecX eigenvalues;  // length L, descending, clamped at 0

    int dim() const { return static_cast<int>(mean.size()); }
    int count() const { return static_cast<int>(basis.cols()); }

    // Max |EᵀE - I| entry; the fit contract keeps this below 1e-9.
    double orthonormality_error() const;
};

// Fits the top-L eigenpairs of the centered scatter matrix. samples is D x F
// (one column per frame). Works through the F x F Gram matrix when F <= D and
// through a thin SVD otherwise; the D x D scatter is never materialized.
// Sign convention: the largest-magnitude component of each basis column is
// positive (first such component on ties). Rank-deficient directions get
// zero eigenvalues and a deterministic orthonormal completion.
EigenSubspace fit_subspace(const MatX& samples, int L);

// c = Eᵀ (p - mean)
VecX embed(const EigenSubspace& s, const VecX& p);

// p = E c + mean
VecX reconstruct(const EigenSubspace& s, const VecX& c);

// Sum of the top-L eigenvalues over the total; 0/0 is defined as 1.
double cumulative_contribution(const VecX& eigenvalues, int L);

namespace detail {

// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Returns
// (eigenvalues, eigenvectors) sorted descending; converges when the
// off-diagonal Frobenius norm drops below 1e-12 of the input norm.
std::pair<VecX, MatX> jacobi_eigen_symmetric(MatX a);

// One-sided Jacobi (Hestenes) SVD helper: orthogonalizes the columns of b
// in place and accumulates the right rotations into v (must start as
// identity). After return b = U * diag(sigma) * I with sigma = column norms.
void hestenes_orthogonalize(MatX& b, MatX& v);

}  // namespace detail

}  // namespace eiga
