#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cli {

// Output sink: "json" / "csv" stream to stdout; anything else is a path and
// the extension picks the format (default json).
struct Output {
  std::string target = "json";
  bool json() const;
  void write(const std::string& json_text, const std::string& csv_text) const;
};

struct ScatteringArgs {
  std::string potential = "uniform-ball:2,1";
  std::vector<double> R_list;
  int born_K = 4;
  double tol = 1e-10;
  Output out;
};

struct LhyArgs {
  std::vector<double> rho_a3_list{1e-6, 1e-8, 1e-10};
  Output out;
};

struct LocalizeArgs {
  int M = 2;
  double s = 0.2;
  int grid = 128;
  std::string geometry = "big";
  std::string potential = "uniform-ball:2,1";
  double ell = 100.0;
  double d = 0.1;
  Output out;
};

struct BogolubovArgs {
  int n = 6;
  int modes = 3;
  int trials = 200;
  std::uint64_t seed = 1;
  Output out;
};

struct MatrixLocalizeArgs {
  int n = 40;  // matrix dimension N + 1 = n + 1
  int trials = 500;
  std::uint64_t seed = 1;
  int MM = 5;
  std::string psi = "ones";  // or "ground"
  Output out;
};

struct RegimeArgs {
  std::vector<double> rho_a3_list{1e-8, 1e-10, 1e-12, 1e-14, 1e-16};
  double beta = 0.4;
  int N = 100;
  double delta = 0.1;
  Output out;
};

int run_scattering(const ScatteringArgs& a);
int run_lhy(const LhyArgs& a);
int run_localize(const LocalizeArgs& a);
int run_bogolubov(const BogolubovArgs& a);
int run_matrix_localize(const MatrixLocalizeArgs& a);
int run_regime(const RegimeArgs& a);

}  // namespace cli
