#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "eiga/errors.hpp"
#include "eiga/rng.hpp"
#include "eiga/subspace.hpp"

using namespace eiga;

namespace {

// Independent oracle: materialize the D x D scatter matrix of the centered
// samples and eigen-decompose it densely with Eigen's solver.
std::pair<VecX, MatX> brute_force_scatter_eig(const MatX& samples) {
    VecX mean = samples.rowwise().mean();
    MatX centered = samples.colwise() - mean;
    MatX scatter = centered * centered.transpose();
    Eigen::SelfAdjointEigenSolver<MatX> es(scatter);
    const int d = static_cast<int>(samples.rows());
    VecX evals(d);
    MatX evecs(d, d);
    for (int i = 0; i < d; ++i) {  // descending
        evals[i] = es.eigenvalues()[d - 1 - i];
        evecs.col(i) = es.eigenvectors().col(d - 1 - i);
    }
    return {evals, evecs};
}

MatX random_samples(Rng& rng, int d, int f, double scale = 1.0) {
    MatX m(d, f);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < f; ++j) m(i, j) = rng.normal() * scale;
    return m;
}

}  // namespace

TEST_CASE("hand-computed 2x2 eigenproblem") {
    // samples {(1,0), (-1,0)}: mean (0,0), scatter [[2,0],[0,0]], lambda1 = 2, e1 = (1,0)
    MatX samples(2, 2);
    samples << 1, -1, 0, 0;
    EigenSubspace s = fit_subspace(samples, 1);
    CHECK(s.mean.norm() == 0.0);
    CHECK(s.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK((s.basis.col(0) - Eigen::Vector2d(1, 0).cast<double>()).norm() < 1e-12);
}

TEST_CASE("identical columns give zero eigenvalues and mean reconstruction") {
    MatX samples(4, 3);
    for (int c = 0; c < 3; ++c) samples.col(c) = VecX::LinSpaced(4, 1.0, 4.0);
    EigenSubspace s = fit_subspace(samples, 2);
    CHECK(s.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.orthonormality_error() < 1e-12);
    VecX c = embed(s, samples.col(1));
    CHECK(c.norm() == 0.0);
    CHECK((reconstruct(s, c) - samples.col(1)).norm() < 1e-12);
    CHECK(cumulative_contribution(s.eigenvalues, 1) == 1.0);  // 0/0 convention
}

TEST_CASE("gram-trick fit matches the brute-force scatter oracle (20x8, L=8)") {
    Rng rng(42);
    MatX samples = random_samples(rng, 20, 8);
    EigenSubspace s = fit_subspace(samples, 8);
    auto [evals, evecs] = brute_force_scatter_eig(samples);

    for (int i = 0; i < 8; ++i) {
        CHECK(s.eigenvalues[i] == doctest::Approx(std::max(evals[i], 0.0)).epsilon(1e-8).scale(evals[0]));
        // centered 8 columns span rank 7; the null direction is arbitrary
        if (s.eigenvalues[i] > 1e-10 * s.eigenvalues[0])
            CHECK(std::abs(s.basis.col(i).dot(evecs.col(i))) == doctest::Approx(1.0).epsilon(1e-8));
    }
    CHECK(s.orthonormality_error() < 1e-9);
}

TEST_CASE("both routes agree with the oracle on random shapes") {
    Rng rng(1234);
    for (int k = 0; k < 40; ++k) {
        const int d = rng.uniform_int(2, 30);
        const int f = rng.uniform_int(2, 25);  // f > d exercises the thin-SVD route
        MatX samples = random_samples(rng, d, f);
        const int L = std::min(d, f);
        EigenSubspace s = fit_subspace(samples, L);
        auto [evals, evecs] = brute_force_scatter_eig(samples);
        CHECK(s.orthonormality_error() < 1e-9);
        for (int i = 0; i < L; ++i) {
            CHECK(s.eigenvalues[i] ==
                  doctest::Approx(std::max(evals[i], 0.0)).epsilon(1e-8).scale(std::max(evals[0], 1.0)));
            const bool well_separated =
                s.eigenvalues[i] > 1e-8 * evals[0] &&
                (i == 0 || evals[i - 1] - evals[i] > 1e-7 * evals[0]) &&
                (i + 1 >= d || evals[i] - evals[i + 1] > 1e-7 * evals[0]);
            if (well_separated)
                CHECK(std::abs(s.basis.col(i).dot(evecs.col(i))) == doctest::Approx(1.0).epsilon(1e-7));
        }
        // eigenvalue ordering
        for (int i = 1; i < L; ++i) CHECK(s.eigenvalues[i] <= s.eigenvalues[i - 1]);
    }
}

TEST_CASE("sign convention: largest-magnitude component is positive") {
    Rng rng(9);
    MatX samples = random_samples(rng, 12, 6);
    EigenSubspace s = fit_subspace(samples, 6);
    for (int c = 0; c < s.count(); ++c) {
        int arg = 0;
        s.basis.col(c).cwiseAbs().maxCoeff(&arg);
        CHECK(s.basis(arg, c) > 0.0);
    }
}

TEST_CASE("embed/reconstruct contracts") {
    Rng rng(77);
    MatX samples = random_samples(rng, 15, 9);
    EigenSubspace s = fit_subspace(samples, 9);

    SUBCASE("embed of the mean is zero") { CHECK(embed(s, s.mean).norm() < 1e-9); }
    SUBCASE("embed of mean + 3 e1 is (3,0,...)") {
        VecX p = s.mean + 3.0 * s.basis.col(0);
        VecX c = embed(s, p);
        CHECK(c[0] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(c.tail(8).norm() < 1e-9);
    }
    SUBCASE("reconstruct(0) is the mean") {
        CHECK((reconstruct(s, VecX::Zero(9)) - s.mean).norm() == 0.0);
    }
    SUBCASE("full-rank round trip of every training column") {
        for (int f = 0; f < 9; ++f) {
            VecX back = reconstruct(s, embed(s, samples.col(f)));
            CHECK((back - samples.col(f)).norm() < 1e-8 * std::max(1.0, samples.col(f).norm()));
        }
    }
    SUBCASE("mean of embeddings of all training columns is zero") {
        VecX sum = VecX::Zero(9);
        for (int f = 0; f < 9; ++f) sum += embed(s, samples.col(f));
        CHECK((sum / 9).norm() < 1e-9);
    }
}

TEST_CASE("reconstruction error is non-increasing in L") {
    Rng rng(2024);
    MatX samples = random_samples(rng, 18, 10);
    VecX p = samples.col(3);
    double prev = std::numeric_limits<double>::infinity();
    for (int L = 1; L <= 10; ++L) {
        EigenSubspace s = fit_subspace(samples, L);
        const double err = (p - reconstruct(s, embed(s, p))).squaredNorm();
        CHECK(err <= prev + 1e-10);
        prev = err;
    }
}

TEST_CASE("cumulative contribution") {
    SUBCASE("full rank is 1") {
        VecX ev(3);
        ev << 5, 3, 1;
        CHECK(cumulative_contribution(ev, 3) == doctest::Approx(1.0));
        CHECK(cumulative_contribution(ev, 1) == doctest::Approx(5.0 / 9.0));
    }
    SUBCASE("rank-3 data saturates at L = 3") {
        Rng rng(31);
        MatX modes = random_samples(rng, 20, 3);
        MatX samples(20, 12);
        for (int f = 0; f < 12; ++f) {
            VecX c(3);
            c << rng.normal(), rng.normal(), rng.normal();
            samples.col(f) = modes * c;
        }
        EigenSubspace s = fit_subspace(samples, 12);
        CHECK(cumulative_contribution(s.eigenvalues, 3) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("fit parameter validation") {
    MatX samples(4, 3);
    samples.setOnes();
    CHECK_THROWS_AS(fit_subspace(samples, 0), ParameterError);
    CHECK_THROWS_AS(fit_subspace(samples, 4), ParameterError);  // L > min(D, F)
    CHECK_THROWS_AS(embed(fit_subspace(samples, 2), VecX::Zero(5)), ParameterError);
    CHECK_THROWS_AS(reconstruct(fit_subspace(samples, 2), VecX::Zero(3)), ParameterError);
}
