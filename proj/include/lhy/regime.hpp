#pragma once

#include <map>
#include <string>
#include <vector>

namespace lhy::regime {

// Full parameter set of the asymptotic selection: given (rho, a, R, N, delta),
// everything else is a power of X = max{ (rho a^3)^{-3/10} a/R, R sqrt(rho a) }.
struct ParameterRegime {
  double rho = 0.0, a = 0.0, R = 0.0;
  double delta = 0.1, eta = 1.0 / 40.0;
  int N = 100, M = 20;
  double X = 0.0;
  double d = 0.0, s = 0.0, ell = 0.0;
  double eps0 = 0.0, epsT = 0.0, eps3 = 0.0;
  double MM = 0.0;  // the matrix-localization window (R/a)^{1/3}

  double rho_a3() const { return rho * a * a * a; }
  double sqrt_rho_a() const;
  double volume() const { return ell * ell * ell; }
  double S() const;  // rho a ell^2 (sqrt(rho a) d s ell)^-3
  double lhy_scale() const;  // rho^2 a sqrt(rho a^3)
};

// Power-law selection: d = X^{4/N}, s = X^{3/(2N)}, ell = (rho a)^{-1/2} X^{-2/N},
// epsT = delta X^{4/N}, eps3 = X^{-31/(2N)}, MM = (R/a)^{1/3}, M = 20,
// eps0 = eps3 (a/R) MM (the existence constant taken as 1).
// Throws when X >= 1 (outside the asymptotic window).
ParameterRegime select_parameters(double rho, double a, double R, int N = 100,
                                  double delta = 0.1);

struct ConditionMargin {
  std::string name;
  double lhs = 0.0;
  double rhs_strict = 0.0;      // with the user delta as written
  double margin_strict = 0.0;   // rhs_strict / lhs
  double rhs_ordering = 0.0;    // delta and unspecified constants set to 1
  double margin_ordering = 0.0;
  bool asserted_strict = false; // which reading the asserted margin map uses
};

struct ConditionReport {
  std::vector<ConditionMargin> margins;
  // name -> asserted margin (strict for the plain scale-separation
  // inequalities, ordering for those built from the X^{c/N} factors)
  std::map<std::string, double> margin_map;
  bool all_satisfied = true;  // every asserted margin > 1
  std::vector<std::string> failed;
};

ConditionReport check_conditions(const ParameterRegime& r);

struct ErrorLedger {
  double S = 0.0;           // rho a ell^2 (sqrt(rho a) d s ell)^-3 = X^{-29/(2N)}
  // The five quadratic-estimate terms; *_log carries the log factor, the
  // plain value has the log stripped (the structural size used for the
  // E < S comparison), full = plain * log.
  struct Term {
    std::string name;
    double structural = 0.0;
    double log_factor = 1.0;
    double full = 0.0;
  };
  std::vector<Term> e_quad;
  double e_quad_sum_full = 0.0;
  bool e_quad_below_S = true;  // every structural term < S

  double K_B = 0.0;            // small cubic box lambda_i = d ell
  double K_B_over_rhoB = 0.0;
  double L_tiny = 0.0;         // |B| max{rho, R^-3} (a/R^3) (rho^-1/3 / ell)^{2M}
  double L_tiny_lhy = 0.0;     // L / (rho^2 a sqrt(rho a^3) |B|)
  double nplus_frac = 0.0;     // sqrt(rho a^3) S
  double ndev_frac = 0.0;      // (rho a^3)^{1/4} sqrt(S)
  double eps0_err = 0.0;       // eps0 (rho a^3)^{-1/2} a/R  (the E3 term)
  std::map<std::string, double> margins;  // asserted condition-margin map
};

ErrorLedger error_ledger(const ParameterRegime& r);

struct SweepRow {
  double rho_a3 = 0.0;
  ParameterRegime regime;
  ConditionReport conditions;
  ErrorLedger ledger;
  bool scale_chain_ok = false;  // a < R, rho^-1/3 < dsl < dl < (rho a)^-1/2 < sl < l
  double scale_chain_min_ratio = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  bool all_conditions_ok = false;
  bool all_chains_ok = false;
  bool e_quad_ok = false;
  // end-to-end shrink factors of the tracked LHY-normalized error entries
  std::map<std::string, double> shrink;
  double min_shrink = 0.0;
  // monotone-trend flags for every ledger column (first vs last row)
  std::map<std::string, bool> trend_shrinking;
};

// One row per rho: R from the power rule R/a = (rho a^3)^{-beta}.
SweepTable asymptotic_sweep(double a, double beta, const std::vector<double>& rho_a3_list,
                            int N = 100, double delta = 0.1);

bool scale_chain_ok(const ParameterRegime& r, double* min_ratio = nullptr);

// Golden-section minimizer of A M^-2 + B M on [1, hi].
double golden_min_window(double A, double B, double hi);

}  // namespace lhy::regime
