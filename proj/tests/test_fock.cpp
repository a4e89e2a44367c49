#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lhy/fock.hpp"
#include "lhy/rng.hpp"

using namespace lhy;
using fock::FockBasis;

TEST_CASE("sector sizes follow the stars-and-bars count") {
  CHECK(FockBasis(3, 1).size() == 3);
  CHECK(FockBasis(3, 4).size() == 15);
  CHECK(FockBasis(4, 3).size() == 20);
  CHECK_THROWS_AS(FockBasis(10, 20), std::invalid_argument);  // above the 5000 cap
  CHECK_THROWS_AS(FockBasis(0, 1), std::invalid_argument);
}

TEST_CASE("pair operator acts as the condensate ladder") {
  FockBasis b(3, 1);
  auto bp = fock::b_operator(b, 1);
  auto i100 = b.index_of({1, 0, 0});
  auto i010 = b.index_of({0, 1, 0});
  auto i001 = b.index_of({0, 0, 1});
  CHECK(std::abs(bp(i100, i010) - 1.0) < 1e-15);
  // every other image vanishes
  double other = std::abs(bp(i100, i100)) + std::abs(bp(i010, i010)) +
                 std::abs(bp(i001, i001)) + std::abs(bp(i100, i001));
  CHECK(other == 0.0);
  CHECK_THROWS_AS(fock::b_operator(b, 0), std::out_of_range);
  CHECK_THROWS_AS(fock::b_operator(b, 5), std::out_of_range);
}

TEST_CASE("pair operators commute among themselves") {
  FockBasis b(3, 4);
  auto bp = fock::b_operator(b, 1), bm = fock::b_operator(b, 2);
  CHECK((bp * bm - bm * bp).norm() < 1e-13);
}

TEST_CASE("commutator with the adjoint is the number difference") {
  FockBasis b(3, 4);
  auto bp = fock::b_operator(b, 1);
  fock::Matrix comm = bp * bp.adjoint() - bp.adjoint() * bp;
  fock::Matrix expect = b.n0() - b.number_operator(1);
  CHECK((comm - expect).norm() < 1e-12);
  Eigen::SelfAdjointEigenSolver<fock::Matrix> es(comm);
  CHECK(es.eigenvalues().maxCoeff() <= b.particles() + 1e-12);
}

TEST_CASE("condensate and excited counts add to the sector number") {
  FockBasis b(3, 5);
  fock::Matrix total = b.n0() + b.n_plus();
  CHECK((total - 5.0 * fock::Matrix::Identity(b.size(), b.size())).norm() < 1e-14);
}

TEST_CASE("single-particle quadratic Hamiltonian diagonalizes by hand") {
  FockBasis b(3, 1);
  // the pairing term annihilates the one-particle sector
  auto H = fock::quadratic_hamiltonian(b, 1.0, 0.7, std::complex<double>(1.0, 0.0));
  CHECK((H - H.adjoint()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<fock::Matrix> es(H);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(2) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("number-conserving part is diagonal with condensate-weighted entries") {
  FockBasis b(3, 3);
  auto H = fock::quadratic_hamiltonian(b, 2.0, 0.0, 0.0);
  fock::Matrix offdiag = H - fock::Matrix(H.diagonal().asDiagonal());
  CHECK(offdiag.norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<fock::Matrix> es(H);
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.0));
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& occ = b.state(i);
    double expect = 2.0 * (occ[0] + 1.0) * (occ[1] + occ[2]);
    CHECK(std::real(H(i, i)) == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("operator inequality margins stay above the contract") {
  CHECK(fock::verify_bogolubov_operator_inequality(FockBasis(3, 4), 2.0, 1.0, 0.0) >= -1e-9);
  CHECK(fock::verify_bogolubov_operator_inequality(FockBasis(3, 5), 1.0, 1.0,
                                                   std::complex<double>(1.0, 0.5)) >= -1e-9);
}

TEST_CASE("operator inequality over seeded random coefficient draws") {
  rng::Splittable gen(20260810);
  for (int t = 0; t < 200; ++t) {
    auto g = gen.split(t);
    int n = 1 + static_cast<int>(g.uniform() * 6);
    if (n > 6) n = 6;
    double A = 0.1 + 3.0 * g.uniform();
    double B = (t % 10 == 0) ? A : -A + 2.0 * A * (0.02 + 0.98 * g.uniform());
    if (B > A) B = A;
    std::complex<double> kappa(2.0 * g.uniform() - 1.0, 2.0 * g.uniform() - 1.0);
    double margin = fock::verify_bogolubov_operator_inequality(FockBasis(3, n), A, B, kappa);
    CHECK(margin >= -1e-9);
  }
}

TEST_CASE("margin is symmetric under flipping the pairing sign at kappa = 0") {
  // the closed boundary B = -A is admitted when kappa = 0 (rotate b to i b)
  double m1 = fock::verify_bogolubov_operator_inequality(FockBasis(3, 5), 2.0, 2.0, 0.0);
  double m2 = fock::verify_bogolubov_operator_inequality(FockBasis(3, 5), 2.0, -2.0, 0.0);
  CHECK(std::abs(m1 - m2) < 1e-9);
  double m3 = fock::verify_bogolubov_operator_inequality(FockBasis(3, 4), 2.0, 1.5, 0.0);
  double m4 = fock::verify_bogolubov_operator_inequality(FockBasis(3, 4), 2.0, -1.5, 0.0);
  CHECK(std::abs(m3 - m4) < 1e-9);
}

TEST_CASE("operator inequality rejects out-of-range coefficients") {
  CHECK_THROWS_AS(fock::verify_bogolubov_operator_inequality(FockBasis(3, 2), 1.0, 1.5, 0.0),
                  std::invalid_argument);
  // the open boundary -A is only admitted without a linear term
  CHECK_THROWS_AS(fock::verify_bogolubov_operator_inequality(FockBasis(3, 2), 1.0, -1.0,
                                                             std::complex<double>(0.1, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("margins tighten toward zero as the sector grows") {
  // trend reported, not asserted beyond the contract
  double prev = 1e300;
  for (int n : {2, 4, 6}) {
    double kappa_scale = std::sqrt(double(n));
    double m = fock::verify_bogolubov_operator_inequality(
        FockBasis(3, n), 2.0, 1.5, std::complex<double>(0.3 * kappa_scale, 0.0));
    CHECK(m >= -1e-9);
    CHECK(m <= prev * (1.0 + 1e-9));
    prev = m;
  }
}

TEST_CASE("band expectations decompose the quadratic form") {
  rng::Splittable gen(17);
  fock::Matrix A = fock::Matrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) {
    A(i, i) = gen.uniform(-1, 1);
    for (int j = i + 1; j < 8; ++j) {
      std::complex<double> z(gen.uniform(-1, 1), gen.uniform(-1, 1));
      A(i, j) = z;
      A(j, i) = std::conj(z);
    }
  }
  fock::Vector psi(8);
  for (int i = 0; i < 8; ++i) psi(i) = {gen.uniform(-1, 1), gen.uniform(-1, 1)};
  psi.normalize();
  auto d = fock::diag_band_expectations(A, psi);
  double sum = 0.0;
  for (double x : d) sum += x;
  double lambda = std::real((psi.adjoint() * A * psi)(0, 0));
  CHECK(std::abs(sum - lambda) < 1e-12);
}

TEST_CASE("band expectations vanish beyond the band width") {
  fock::Vector psi = fock::Vector::Constant(41, std::complex<double>(1.0 / std::sqrt(41.0), 0));
  auto A = fock::random_pentadiagonal(41, 99, 0);
  auto d = fock::diag_band_expectations(A, psi);
  for (std::size_t k = 3; k < d.size(); ++k) CHECK(d[k] == 0.0);

  fock::Matrix D = fock::Matrix::Zero(5, 5);
  for (int i = 0; i < 5; ++i) D(i, i) = i;
  fock::Vector psi5 = fock::Vector::Constant(5, std::complex<double>(1.0 / std::sqrt(5.0), 0));
  auto dd = fock::diag_band_expectations(D, psi5);
  for (std::size_t k = 1; k < dd.size(); ++k) CHECK(dd[k] == 0.0);

  fock::Vector bad = fock::Vector::Constant(5, std::complex<double>(1.0, 0));
  CHECK_THROWS_AS(fock::diag_band_expectations(D, bad), std::invalid_argument);
}

TEST_CASE("window localization never hurts for diagonal matrices") {
  rng::Splittable gen(7);
  fock::Matrix D = fock::Matrix::Zero(41, 41);
  for (int i = 0; i < 41; ++i) D(i, i) = gen.uniform(-1, 1);
  fock::Vector psi = fock::Vector::Constant(41, std::complex<double>(1.0 / std::sqrt(41.0), 0));
  for (int MM : {1, 5, 41}) {
    auto res = fock::localize_matrix(D, psi, MM);
    CHECK(res.excess <= 1e-13);
  }
}

TEST_CASE("full window matches or beats the input state") {
  auto A = fock::random_pentadiagonal(41, 99, 1);
  fock::Vector psi = fock::Vector::Constant(41, std::complex<double>(1.0 / std::sqrt(41.0), 0));
  auto res = fock::localize_matrix(A, psi, 41);
  CHECK(res.excess <= 1e-12);
  CHECK(res.window_start == 0);
}

TEST_CASE("pentadiagonal window search with the flat state") {
  fock::Vector psi = fock::Vector::Constant(41, std::complex<double>(1.0 / std::sqrt(41.0), 0));
  double cmax = 0.0;
  for (int t = 0; t < 500; ++t) {
    auto A = fock::random_pentadiagonal(41, 424242, t);
    auto res = fock::localize_matrix(A, psi, 5);
    CHECK_FALSE(res.vacuous);
    CHECK(std::isfinite(res.measured_C));
    cmax = std::max(cmax, res.measured_C);
  }
  // engineering threshold, documented: measured maximum over this seeded
  // family is far below it (flat states have nonpositive excess throughout)
  CHECK(cmax <= 2.0);
}

TEST_CASE("pentadiagonal window search from the ground state") {
  // ground states give strictly positive excess, so the bound is exercised
  double cmax = 0.0;
  int positive = 0;
  for (int t = 0; t < 500; ++t) {
    auto A = fock::random_pentadiagonal(41, 424242, t);
    Eigen::SelfAdjointEigenSolver<fock::Matrix> es(A);
    fock::Vector psi = es.eigenvectors().col(0);
    auto res = fock::localize_matrix(A, psi, 5);
    CHECK(res.excess >= -1e-12);
    CHECK(std::isfinite(res.measured_C));
    if (res.excess > 0) ++positive;
    cmax = std::max(cmax, res.measured_C);
  }
  CHECK(positive == 500);
  // engineering threshold, documented: measured maximum 1.62 over this family
  CHECK(cmax <= 2.0);
}

TEST_CASE("window arguments are validated") {
  auto A = fock::random_pentadiagonal(8, 1, 0);
  fock::Vector psi = fock::Vector::Constant(8, std::complex<double>(1.0 / std::sqrt(8.0), 0));
  CHECK_THROWS_AS(fock::localize_matrix(A, psi, 0), std::invalid_argument);
  CHECK_THROWS_AS(fock::localize_matrix(A, psi, 9), std::invalid_argument);
}
