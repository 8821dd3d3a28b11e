#include "eiga/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "eiga/errors.hpp"

namespace eiga {

double EigenSubspace::orthonormality_error() const {
    if (count() == 0) return 0.0;
    MatX g = basis.transpose() * basis;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff();
}

namespace detail {

std::pair<VecX, MatX> jacobi_eigen_symmetric(MatX a) {
    const int n = static_cast<int>(a.rows());
    MatX v = MatX::Identity(n, n);
    if (n == 0) return {VecX(), v};

    const double norm = a.norm();
    const double tol = 1e-12 * std::max(norm, 1e-300);

    auto off_norm = [&a, n]() {
        double s = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += a(p, q) * a(p, q);
        return std::sqrt(2.0 * s);
    };

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > tol; ++sweep) {
        // skip threshold keeps late sweeps cheap without affecting convergence
        const double skip = tol / (n * n);
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= skip) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    VecX evals(n);
    for (int i = 0; i < n; ++i) evals[i] = a(i, i);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&evals](int i, int j) { return evals[i] > evals[j]; });

    VecX sorted(n);
    MatX vecs(n, n);
    for (int i = 0; i < n; ++i) {
        sorted[i] = evals[order[i]];
        vecs.col(i) = v.col(order[i]);
    }
    return {sorted, vecs};
}

void hestenes_orthogonalize(MatX& b, MatX& v) {
    const int n = static_cast<int>(b.cols());
    const double tol = 1e-14;
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double alpha = b.col(p).squaredNorm();
                const double beta = b.col(q).squaredNorm();
                const double gamma = b.col(p).dot(b.col(q));
                if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || gamma == 0.0) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = c * t;
                for (int k = 0; k < b.rows(); ++k) {
                    const double bp = b(k, p), bq = b(k, q);
                    b(k, p) = c * bp - s * bq;
                    b(k, q) = s * bp + c * bq;
                }
                for (int k = 0; k < v.rows(); ++k) {
                    const double vp = v(k, p), vq = v(k, q);
                    v(k, p) = c * vp - s * vq;
                    v(k, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }
}

}  // namespace detail

namespace {

// Flip each column so its largest-magnitude component (first on ties) is positive.
void apply_sign_convention(MatX& basis) {
    for (int c = 0; c < basis.cols(); ++c) {
        int arg = 0;
        double best = std::abs(basis(0, c));
        for (int r = 1; r < basis.rows(); ++r) {
            const double m = std::abs(basis(r, c));
            if (m > best) {
                best = m;
                arg = r;
            }
        }
        if (basis(arg, c) < 0) basis.col(c) = -basis.col(c);
    }
}

// Deterministic orthonormal completion: Gram-Schmidt canonical axes against
// the first `filled` columns until every column is populated.
void complete_basis(MatX& basis, int filled) {
    const int d = static_cast<int>(basis.rows());
    int axis = 0;
    for (int c = filled; c < basis.cols(); ++c) {
        while (axis < d) {
            VecX cand = VecX::Unit(d, axis++);
            for (int k = 0; k < c; ++k) cand -= basis.col(k).dot(cand) * basis.col(k);
            const double n = cand.norm();
            if (n > 0.5) {  // canonical axis safely independent of the span
                basis.col(c) = cand / n;
                break;
            }
        }
        if (axis > d && basis.col(c).norm() == 0.0)
            throw ParameterError("cannot complete orthonormal basis");
    }
}

}  // namespace

EigenSubspace fit_subspace(const MatX& samples, int L) {
    const int d = static_cast<int>(samples.rows());
    const int f = static_cast<int>(samples.cols());
    if (f < 1) throw ParameterError("subspace fit needs at least one sample column");
    if (!samples.allFinite()) throw ParameterError("subspace samples must be finite");
    if (L < 1 || L > std::min(d, f))
        throw ParameterError("subspace dimension L=" + std::to_string(L) + " outside [1, min(D=" +
                             std::to_string(d) + ", F=" + std::to_string(f) + ")]");

    EigenSubspace out;
    out.mean = samples.rowwise().mean();
    MatX centered = samples.colwise() - out.mean;

    out.basis.resize(d, L);
    out.eigenvalues.resize(L);

    if (f <= d) {
        // Gram route: eigen-decompose the F x F matrix P̄ᵀP̄; nonzero spectra
        // match P̄P̄ᵀ and e_i = P̄ v_i / sqrt(lambda_i).
        MatX gram = centered.transpose() * centered;
        auto [evals, evecs] = detail::jacobi_eigen_symmetric(std::move(gram));
        const double lead = std::max(evals.size() ? evals[0] : 0.0, 0.0);
        // below this the recovered direction is dominated by rounding noise
        const double rank_tol = lead * 1e-12;
        int filled = 0;
        for (int i = 0; i < L; ++i) {
            const double lam = std::max(evals[i], 0.0);
            out.eigenvalues[i] = lam;
            if (lam > rank_tol && lam > 0.0) {
                out.basis.col(i) = centered * (evecs.col(i) / std::sqrt(lam));
                out.basis.col(i).normalize();
                filled = i + 1;
            } else {
                out.eigenvalues[i] = 0.0;
            }
        }
        complete_basis(out.basis, filled);
    } else {
        // Thin-SVD route for F > D: one-sided Jacobi on P̄ᵀ. The accumulated
        // right rotations are the eigenvectors of P̄P̄ᵀ, sigma^2 the eigenvalues.
        MatX b = centered.transpose();
        MatX v = MatX::Identity(d, d);
        detail::hestenes_orthogonalize(b, v);
        std::vector<std::pair<double, int>> sig(d);
        for (int i = 0; i < d; ++i) sig[i] = {b.col(i).squaredNorm(), i};
        std::stable_sort(sig.begin(), sig.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        const double lead = sig.empty() ? 0.0 : sig[0].first;
        const double rank_tol = lead * 1e-12;
        for (int i = 0; i < L; ++i) {
            out.eigenvalues[i] = sig[i].first > rank_tol ? sig[i].first : 0.0;
            out.basis.col(i) = v.col(sig[i].second);
        }
    }

    apply_sign_convention(out.basis);
    return out;
}

VecX embed(const EigenSubspace& s, const VecX& p) {
    if (p.size() != s.mean.size())
        throw ParameterError("embed: sample length " + std::to_string(p.size()) + " != subspace dim " +
                             std::to_string(s.mean.size()));
    return s.basis.transpose() * (p - s.mean);
}

VecX reconstruct(const EigenSubspace& s, const VecX& c) {
    if (c.size() != s.basis.cols())
        throw ParameterError("reconstruct: coefficient length " + std::to_string(c.size()) +
                             " != basis count " + std::to_string(s.basis.cols()));
    return s.basis * c + s.mean;
}

double cumulative_contribution(const VecX& eigenvalues, int L) {
    L = std::min<int>(L, static_cast<int>(eigenvalues.size()));
    double total = 0, top = 0;
    for (int i = 0; i < eigenvalues.size(); ++i) {
        total += eigenvalues[i];
        if (i < L) top += eigenvalues[i];
    }
    if (total <= 0) return 1.0;
    return top / total;
}

}  // namespace eiga
