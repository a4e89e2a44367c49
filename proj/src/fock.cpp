#include "lhy/fock.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "lhy/rng.hpp"

namespace lhy::fock {

namespace {
// saturates well above the sector cap so huge inputs cannot overflow
std::size_t binomial_capped(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > 1'000'000) return r;
  }
  return r;
}
}  // namespace

FockBasis::FockBasis(int modes, int particles) : modes_(modes), particles_(particles) {
  if (modes < 1) throw std::invalid_argument("FockBasis: need at least one mode");
  if (particles < 0) throw std::invalid_argument("FockBasis: particles must be >= 0");
  std::size_t dim = binomial_capped(particles + modes - 1, modes - 1);
  if (dim > 5000) throw std::invalid_argument("FockBasis: sector larger than the 5000-state cap");
  states_.reserve(dim);
  // lexicographic enumeration of compositions of `particles` into `modes` parts
  std::vector<int> cur(modes, 0);
  std::function<void(int, int)> rec = [&](int mode, int left) {
    if (mode == modes_ - 1) {
      cur[mode] = left;
      states_.push_back(cur);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      cur[mode] = c;
      rec(mode + 1, left - c);
    }
  };
  rec(0, particles);
}

std::size_t FockBasis::index_of(const std::vector<int>& occ) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == occ) return i;
  throw std::out_of_range("FockBasis::index_of: state not in sector");
}

Matrix FockBasis::number_operator(int mode) const {
  Matrix n = Matrix::Zero(size(), size());
  for (std::size_t i = 0; i < size(); ++i) n(i, i) = states_[i][mode];
  return n;
}

Matrix FockBasis::n_plus() const {
  Matrix n = Matrix::Zero(size(), size());
  for (std::size_t i = 0; i < size(); ++i) {
    int total = 0;
    for (int m = 1; m < modes_; ++m) total += states_[i][m];
    n(i, i) = total;
  }
  return n;
}

Matrix b_operator(const FockBasis& basis, int mode) {
  if (mode < 1 || mode >= basis.modes())
    throw std::out_of_range("b_operator: mode must be an excited mode");
  Matrix b = Matrix::Zero(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& occ = basis.state(i);
    if (occ[mode] == 0) continue;
    std::vector<int> target = occ;
    target[mode] -= 1;
    target[0] += 1;
    std::size_t j = basis.index_of(target);
    // a0^* a_mode : sqrt((n0 + 1) n_mode)
    b(j, i) = std::sqrt(double(occ[0] + 1) * double(occ[mode]));
  }
  return b;
}

Matrix quadratic_hamiltonian(const FockBasis& basis, double A, double B,
                             std::complex<double> kappa) {
  if (basis.modes() < 3)
    throw std::invalid_argument("quadratic_hamiltonian: need modes 0, +, -");
  Matrix bp = b_operator(basis, 1);
  Matrix bm = b_operator(basis, 2);
  Matrix bpd = bp.adjoint();
  Matrix bmd = bm.adjoint();
  Matrix H = A * (bpd * bp + bmd * bm) + B * (bpd * bmd + bp * bm) +
             kappa * (bpd + bm) + std::conj(kappa) * (bp + bmd);
  return H;
}

double verify_bogolubov_operator_inequality(const FockBasis& basis, double A, double B,
                                            std::complex<double> kappa) {
  bool open_ok = (-A < B) && (B <= A);
  bool closed_ok = std::norm(kappa) == 0.0 && std::abs(B) <= A;
  if (!open_ok && !closed_ok)
    throw std::invalid_argument("verify_bogolubov_operator_inequality: requires -A < B <= A");
  Matrix bp = b_operator(basis, 1);
  Matrix bm = b_operator(basis, 2);
  Matrix H = quadratic_hamiltonian(basis, A, B, kappa);
  Matrix comm = (bp * bp.adjoint() - bp.adjoint() * bp) +
                (bm * bm.adjoint() - bm.adjoint() * bm);
  double disc = std::max(0.0, A * A - B * B);
  Matrix D = H + 0.5 * (A - std::sqrt(disc)) * comm;
  double kappa2 = std::norm(kappa);
  if (kappa2 > 0.0)
    D += (2.0 * kappa2 / (A + B)) * Matrix::Identity(basis.size(), basis.size());
  Eigen::SelfAdjointEigenSolver<Matrix> es(D, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::vector<double> diag_band_expectations(const Matrix& A, const Vector& psi) {
  const auto n = A.rows();
  if (psi.size() != n) throw std::invalid_argument("diag_band_expectations: size mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("diag_band_expectations: psi must be normalized");
  std::vector<double> d(n, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) d[0] += std::real(std::conj(psi(i)) * A(i, i) * psi(i));
  for (Eigen::Index k = 1; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (Eigen::Index i = 0; i + k < n; ++i) s += std::conj(psi(i)) * A(i, i + k) * psi(i + k);
    d[k] = 2.0 * std::real(s);
  }
  return d;
}

LocalizeResult localize_matrix(const Matrix& A, const Vector& psi, int MM) {
  const int N1 = static_cast<int>(A.rows());  // N + 1
  if (MM < 1 || MM > N1) throw std::invalid_argument("localize_matrix: need 1 <= MM <= N+1");
  LocalizeResult out;
  out.lambda = std::real((psi.adjoint() * A * psi)(0, 0));

  double best = 0.0;
  int best_start = -1;
  Eigen::VectorXcd best_vec;
  for (int start = 0; start + MM <= N1; ++start) {
    Matrix sub = A.block(start, start, MM, MM);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sub);
    double ground = es.eigenvalues()(0);
    if (best_start < 0 || ground < best) {
      best = ground;
      best_start = start;
      best_vec = es.eigenvectors().col(0);
    }
  }
  out.window_start = best_start;
  out.phi = Eigen::VectorXcd::Zero(N1);
  out.phi.segment(best_start, MM) = best_vec;
  out.phi_energy = best;
  out.excess = out.phi_energy - out.lambda;

  auto d = diag_band_expectations(A, psi);
  double denom = 0.0;
  for (int k = 1; k < MM && k < N1; ++k) denom += double(k) * double(k) * std::abs(d[k]);
  denom /= double(MM) * double(MM);
  for (int k = MM; k < N1; ++k) denom += std::abs(d[k]);
  out.denominator = denom;
  if (out.excess > 0.0) {
    if (denom > 0.0)
      out.measured_C = out.excess / denom;
    else
      out.vacuous = true;
  }
  return out;
}

Matrix random_pentadiagonal(int dim, std::uint64_t seed, std::uint64_t stream) {
  rng::Splittable gen(seed, stream);
  Matrix A = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) A(i, i) = gen.uniform(-1.0, 1.0);
  for (int band = 1; band <= 2; ++band)
    for (int i = 0; i + band < dim; ++i) {
      std::complex<double> z(gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0));
      A(i, i + band) = z;
      A(i + band, i) = std::conj(z);
    }
  return A;
}

}  // namespace lhy::fock
