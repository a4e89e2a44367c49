#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "commands.hpp"

namespace {

// --config <file> merges JSON keys into the parsed defaults before flags.
nlohmann::json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
  nlohmann::json j;
  f >> j;
  return j;
}

template <typename T>
void maybe(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale numerics for the dilute Bose gas second-order lower bound"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file merged before flags");

  cli::ScatteringArgs sc;
  auto* sub_sc = app.add_subcommand("scattering",
                                    "Scattering length by ODE and Born series");
  sub_sc->add_option("--potential", sc.potential, "family:amplitude,range or config file");
  sub_sc->add_option("--R-list", sc.R_list, "ranges R for the scaled potential v_R")
      ->delimiter(',');
  sub_sc->add_option("--born-K", sc.born_K, "number of Born terms");
  sub_sc->add_option("--tol", sc.tol, "ODE tolerance");
  sub_sc->add_option("--out", sc.out.target, "json | csv | output path");
  sub_sc->footer("CSV columns: R,a_ode,ode_residual,born_sum,a1,a2,a1_plus_a2,gap,diverged");

  cli::LhyArgs lh;
  auto* sub_lh = app.add_subcommand("lhy", "LHY integral, coefficient, energy table");
  sub_lh->add_option("--rho-a3-list", lh.rho_a3_list, "densities rho a^3")->delimiter(',');
  sub_lh->add_option("--out", lh.out.target, "json | csv | output path");
  sub_lh->footer("CSV columns: rho_a3,e_lhy");

  cli::LocalizeArgs lo;
  auto* sub_lo = app.add_subcommand("localize-check",
                                    "Partition identities, self-energy, kinetic multipliers");
  sub_lo->add_option("--M", lo.M, "smoothness integer of the cutoff");
  sub_lo->add_option("--s", lo.s, "kinetic-multiplier scale");
  sub_lo->add_option("--grid", lo.grid, "multiplier grid points per axis");
  sub_lo->add_option("--geometry", lo.geometry, "big | small");
  sub_lo->add_option("--potential", lo.potential, "potential spec");
  sub_lo->add_option("--ell", lo.ell, "large box side");
  sub_lo->add_option("--d", lo.d, "small-box ratio");
  sub_lo->add_option("--out", lo.out.target, "json | csv | output path");
  sub_lo->footer("CSV columns: quantity,value");

  cli::BogolubovArgs bg;
  auto* sub_bg = app.add_subcommand("bogolubov-verify",
                                    "Operator inequality on truncated Fock sectors");
  sub_bg->add_option("--n", bg.n, "largest particle number");
  sub_bg->add_option("--modes", bg.modes, "mode count (condensate + excited)");
  sub_bg->add_option("--trials", bg.trials, "number of seeded trials");
  sub_bg->add_option("--seed", bg.seed, "RNG seed");
  sub_bg->add_option("--out", bg.out.target, "json | csv | output path");
  sub_bg->footer("CSV columns: trial,n,A,B,kappa_re,kappa_im,margin");

  cli::MatrixLocalizeArgs ml;
  auto* sub_ml = app.add_subcommand("matrix-localize",
                                    "Banded-matrix localization window search");
  sub_ml->add_option("--n", ml.n, "matrix size N (dimension N+1)");
  sub_ml->add_option("--trials", ml.trials, "number of seeded trials");
  sub_ml->add_option("--seed", ml.seed, "RNG seed");
  sub_ml->add_option("--MM", ml.MM, "window length");
  sub_ml->add_option("--psi", ml.psi, "ones | ground");
  sub_ml->add_option("--out", ml.out.target, "json | csv | output path");
  sub_ml->footer("CSV columns: trial,window_start,excess,measured_C");

  cli::RegimeArgs rg;
  auto* sub_rg = app.add_subcommand("regime",
                                    "Parameter selection, condition margins, error ledger");
  sub_rg->add_option("--rho-a3-list", rg.rho_a3_list, "decreasing rho a^3 sequence")
      ->delimiter(',');
  sub_rg->add_option("--beta", rg.beta, "R/a = (rho a^3)^-beta, beta in (0.3, 0.5)");
  sub_rg->add_option("--N", rg.N, "exponent denominator of the parameter powers");
  sub_rg->add_option("--delta", rg.delta, "smallness parameter");
  sub_rg->add_option("--out", rg.out.target, "json | csv | output path");
  sub_rg->footer(
      "CSV columns: rho_a3,X,d,s,ell,epsT,eps0,S,equad_sum,chain_min,conditions_ok");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (!config_path.empty()) {
    try {
      auto j = load_config(config_path);
      maybe(j, "potential", sc.potential);
      maybe(j, "potential", lo.potential);
      maybe(j, "born_K", sc.born_K);
      maybe(j, "tol", sc.tol);
      maybe(j, "seed", bg.seed);
      maybe(j, "seed", ml.seed);
      maybe(j, "M", lo.M);
      maybe(j, "s", lo.s);
      maybe(j, "N", rg.N);
      maybe(j, "delta", rg.delta);
      maybe(j, "beta", rg.beta);
    } catch (const std::exception& e) {
      std::cerr << "usage error: bad config: " << e.what() << "\n";
      return 1;
    }
  }

  try {
    if (sub_sc->parsed()) return cli::run_scattering(sc);
    if (sub_lh->parsed()) return cli::run_lhy(lh);
    if (sub_lo->parsed()) return cli::run_localize(lo);
    if (sub_bg->parsed()) return cli::run_bogolubov(bg);
    if (sub_ml->parsed()) return cli::run_matrix_localize(ml);
    if (sub_rg->parsed()) return cli::run_regime(rg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
