#include <doctest.h>

#include <random>

#include "comdf/errors.hpp"
#include "comdf/linalg.hpp"
#include "test_support.hpp"

using namespace comdf;
using test::max_abs_diff;
using test::random_matrix;

TEST_CASE("kron identity, block expansion and stacking") {
    CHECK(max_abs_diff(kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                       Matrix::Identity(6, 6)) == 0.0);

    Matrix lap(2, 2);
    lap << 1, -1, -1, 1;
    Matrix expected(4, 4);
    expected << 1, 0, -1, 0,
                0, 1, 0, -1,
                -1, 0, 1, 0,
                0, -1, 0, 1;
    CHECK(max_abs_diff(kron(lap, Matrix::Identity(2, 2)), expected) == 0.0);

    Matrix ones = Matrix::Ones(2, 1);
    Matrix v = Matrix::Constant(1, 1, 3.0);
    CHECK(max_abs_diff(kron(ones, v), Matrix::Constant(2, 1, 3.0)) == 0.0);
}

TEST_CASE("kron mixed product and associativity on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix a = random_matrix(rng, 2, 3), b = random_matrix(rng, 3, 2);
        Matrix c = random_matrix(rng, 3, 2), d = random_matrix(rng, 2, 4);
        CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(Matrix(a * c), Matrix(b * d))) <
              1e-12);
        Matrix e = random_matrix(rng, 2, 2);
        CHECK(max_abs_diff(kron(kron(a, b), e), kron(a, kron(b, e))) < 1e-12);
    }
}

TEST_CASE("spectral radius: identity, diagonal, explicit fusion matrix") {
    CHECK(spectral_radius(Matrix::Identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-12));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.5;
    d(1, 1) = -0.9;
    CHECK(spectral_radius(d) == doctest::Approx(0.9).epsilon(1e-12));
    // The two-node fusion matrix decouples into two 2x2 blocks
    // [[1/2,1/2],[1/3,1/3]] with eigenvalues {0, 5/6}.
    CHECK(spectral_radius(test::ScalarFamily::explicit_G()) ==
          doctest::Approx(5.0 / 6.0).epsilon(1e-10));
    CHECK_THROWS_AS((void)spectral_radius(Matrix::Ones(2, 3)), Error);
}

TEST_CASE("spectral norm: identity, diagonal, nilpotent") {
    CHECK(spectral_norm(Matrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-12));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = -3.0;
    CHECK(spectral_norm(d) == doctest::Approx(3.0).epsilon(1e-12));
    Matrix nilpotent = Matrix::Zero(2, 2);
    nilpotent(0, 1) = 1.0;
    CHECK(spectral_norm(nilpotent) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_radius(nilpotent) < 1e-12);
}

TEST_CASE("radius never exceeds norm on random square matrices") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> size(1, 6);
    for (int trial = 0; trial < 500; ++trial) {
        int n = size(rng);
        Matrix m = random_matrix(rng, n, n);
        Spectrum s = spectrum(m);
        CHECK(s.radius <= s.norm2 + 1e-12);
        CHECK(s.radius == spectral_radius(m));
        CHECK(s.norm2 == spectral_norm(m));
    }
}

TEST_CASE("dare: A = 0 degenerates to Q") {
    Matrix A = Matrix::Zero(1, 1);
    Matrix C = Matrix::Ones(2, 1);
    Matrix Q = Matrix::Constant(1, 1, 2.5);
    Matrix R = Matrix::Identity(2, 2);
    CHECK(solve_dare(A, C, Q, R)(0, 0) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("dare: scalar two-sensor plant matches the quadratic root") {
    test::ScalarFamily family;
    Augmented aug = augment(family.suite);
    Matrix P = solve_dare(family.plant.A, aug.C, family.plant.Q, aug.R);
    CHECK(P(0, 0) == doctest::Approx(test::ScalarFamily::dare_root()).epsilon(1e-10));
}

TEST_CASE("dare: residual contract, symmetry, PSD on random stable plants") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + trial % 3;
        Matrix A = 0.8 * random_matrix(rng, n, n);
        Matrix C = random_matrix(rng, n + 1, n);
        Matrix B = random_matrix(rng, n, n);
        Matrix Q = B * B.transpose() + 0.1 * Matrix::Identity(n, n);
        Matrix R = Matrix::Identity(n + 1, n + 1);
        Matrix P = solve_dare(A, C, Q, R);

        Matrix S = C * P * C.transpose() + R;
        Matrix residual = A * P * A.transpose() + Q -
                          A * P * C.transpose() * S.inverse() * C * P * A.transpose() - P;
        CHECK(spectral_norm(residual) <= 1e-9 * (1.0 + spectral_norm(P)));
        CHECK(max_abs_diff(P, P.transpose()) < 1e-10);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(P);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
    }
}

TEST_CASE("dle: trivial fixed points and the truncated series oracle") {
    Matrix phi = Matrix::Constant(1, 1, 3.0);
    CHECK(solve_dle(Matrix::Zero(1, 1), phi)(0, 0) == doctest::Approx(3.0));
    // X = 0.25 X + 3  =>  X = 4.
    CHECK(solve_dle(Matrix::Constant(1, 1, 0.5), phi)(0, 0) ==
          doctest::Approx(4.0).epsilon(1e-12));

    Matrix F(2, 2);
    F << 0.5, 0.1, 0.0, 0.4;
    Matrix X = solve_dle(F, Matrix::Identity(2, 2));
    // Independent route: X = sum_k F^k (F^T)^k, truncated at 200 terms.
    Matrix series = Matrix::Zero(2, 2);
    Matrix term = Matrix::Identity(2, 2);
    for (int k = 0; k <= 200; ++k) {
        series += term;
        term = F * term * F.transpose();
    }
    CHECK(max_abs_diff(X, series) < 1e-10);
}

TEST_CASE("dle: rejects unstable F, output symmetric PSD") {
    CHECK_THROWS_AS((void)solve_dle(Matrix::Identity(2, 2), Matrix::Identity(2, 2)), Error);

    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 3;
        Matrix F = random_matrix(rng, n, n);
        F *= 0.9 / std::max(spectral_norm(F), 1e-6);
        Matrix B = random_matrix(rng, n, n);
        Matrix phi = B * B.transpose();
        Matrix X = solve_dle(F, phi);
        CHECK(spectral_norm(F * X * F.transpose() + phi - X) <=
              1e-9 * (1.0 + spectral_norm(X)));
        CHECK(max_abs_diff(X, X.transpose()) == 0.0);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(X);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-9 * (1.0 + spectral_norm(X)));
    }
}

TEST_CASE("power norm bound: scalar, k = 0, explicit fourth power") {
    CHECK(power_norm_bound(Matrix::Constant(1, 1, 0.5), 3) ==
          doctest::Approx(0.125).epsilon(1e-12));
    // k = 0 leaves only the j = 0 term: sqrt(n).
    CHECK(power_norm_bound(Matrix::Identity(4, 4), 0) ==
          doctest::Approx(2.0).epsilon(1e-12));

    Matrix m(2, 2);
    m << 0.5, 1.0, 0.0, 0.5;
    CHECK(power_norm_bound(m, 4) >= spectral_norm(matrix_power(m, 4)));
}

TEST_CASE("power norm bound dominates true power norms for stable matrices") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + trial % 4;
        Matrix m = random_matrix(rng, n, n);
        double rho = spectral_radius(m);
        if (rho >= 1.0) m *= 0.95 / rho;  // Schur-stable family
        for (long k : {0L, 1L, 3L, 7L, 15L, 30L})
            CHECK(power_norm_bound(m, k) >=
                  spectral_norm(matrix_power(m, k)) * (1.0 - 1e-12));
    }
}

TEST_CASE("psd sqrt squares back and rejects indefinite input") {
    std::mt19937_64 rng(16);
    Matrix b = random_matrix(rng, 3, 3);
    Matrix cov = b * b.transpose();
    Matrix root = psd_sqrt(cov);
    CHECK(max_abs_diff(root * root.transpose(), cov) < 1e-10);
    CHECK(max_abs_diff(psd_sqrt(Matrix::Zero(2, 2)), Matrix::Zero(2, 2)) == 0.0);

    Matrix indefinite = Matrix::Identity(2, 2);
    indefinite(1, 1) = -1.0;
    CHECK_THROWS_AS((void)psd_sqrt(indefinite), Error);
}
