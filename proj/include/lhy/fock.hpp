#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace lhy::fock {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Fixed-particle-number sector with m modes: mode 0 is the condensate,
// modes 1..m-1 are excited.  Occupation vectors are listed lexicographically.
class FockBasis {
 public:
  FockBasis(int modes, int particles);

  int modes() const { return modes_; }
  int particles() const { return particles_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<int>& state(std::size_t i) const { return states_[i]; }
  std::size_t index_of(const std::vector<int>& occ) const;

  Matrix number_operator(int mode) const;   // diagonal n_mode
  Matrix n0() const { return number_operator(0); }
  Matrix n_plus() const;                    // sum over excited modes

 private:
  int modes_, particles_;
  std::vector<std::vector<int>> states_;
};

// b_j = a0^* a_j on the sector (orthonormal excited modes, int chi_B^2 = 1).
Matrix b_operator(const FockBasis& basis, int mode);

// A (b+^* b+ + b-^* b-) + B (b+^* b-^* + b+ b-) + kappa (b+^* + b-) + conj(kappa)(b+ + b-^*),
// with b+ = b_1, b- = b_2.
Matrix quadratic_hamiltonian(const FockBasis& basis, double A, double B,
                             std::complex<double> kappa);

// Minimum eigenvalue of H - RHS where RHS is the Bogolubov bound with the
// exact commutator matrices; the result must be >= 0.
double verify_bogolubov_operator_inequality(const FockBasis& basis, double A, double B,
                                            std::complex<double> kappa);

// d_k = <psi, A^(k) psi> where A^(k) is the k-th supra/infra-diagonal band.
std::vector<double> diag_band_expectations(const Matrix& A, const Vector& psi);

struct LocalizeResult {
  int window_start = 0;        // best window is [window_start, window_start + MM - 1]
  Eigen::VectorXcd phi;        // normalized, supported on the window
  double lambda = 0.0;         // <psi, A psi>
  double phi_energy = 0.0;     // <phi, A phi>
  double excess = 0.0;         // phi_energy - lambda
  double denominator = 0.0;    // MM^-2 sum_{k<MM} k^2 |d_k| + sum_{k>=MM} |d_k|
  double measured_C = 0.0;     // excess / denominator when both are positive
  bool vacuous = false;        // positive excess with zero denominator
};

// Exhaustive window search: every contiguous window of length MM, ground
// state of the restricted matrix, best window returned.
LocalizeResult localize_matrix(const Matrix& A, const Vector& psi, int MM);

// Random pentadiagonal Hermitian matrix (real diagonal, complex bands 1..2).
Matrix random_pentadiagonal(int dim, std::uint64_t seed, std::uint64_t stream);

}  // namespace lhy::fock
