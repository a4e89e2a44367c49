#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "lhy/bogolubov.hpp"
#include "lhy/fock.hpp"
#include "lhy/localization.hpp"
#include "lhy/multiplier.hpp"
#include "lhy/parallel.hpp"
#include "lhy/regime.hpp"
#include "lhy/rng.hpp"
#include "lhy/scattering.hpp"

namespace cli {

using json = nlohmann::ordered_json;
using namespace lhy;

namespace {
constexpr int kSchemaVersion = 1;

// --potential accepts "family:amplitude,range" inline or a JSON file with
// keys family, params, range.
potentials::RadialPotential load_potential(const std::string& spec) {
  std::ifstream f(spec);
  if (f) {
    nlohmann::json j;
    f >> j;
    double amp = 1.0;
    if (j.contains("params")) {
      if (j["params"].is_array())
        amp = j["params"].empty() ? 1.0 : j["params"][0].get<double>();
      else
        amp = j["params"].get<double>();
    }
    return potentials::RadialPotential(potentials::family_from_name(j.at("family")),
                                       amp, j.value("range", 1.0));
  }
  return potentials::parse_potential(spec);
}

json tn(double value, double tol) { return json{{"value", value}, {"tol", tol}}; }

json header(const std::string& command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}
}  // namespace

bool Output::json() const {
  if (target == "csv") return false;
  if (target == "json") return true;
  auto dot = target.rfind('.');
  return dot == std::string::npos || target.substr(dot) != ".csv";
}

void Output::write(const std::string& json_text, const std::string& csv_text) const {
  const std::string& body = json() ? json_text : csv_text;
  if (target == "json" || target == "csv") {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(target, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + target);
  f << body;
  if (!body.empty() && body.back() != '\n') f << '\n';
}

int run_scattering(const ScatteringArgs& a) {
  auto v1 = load_potential(a.potential);
  json j = header("scattering");
  j["potential"] = v1.describe();
  j["born_K"] = a.born_K;
  j["tol"] = a.tol;

  std::ostringstream csv;
  csv << "R,a_ode,ode_residual,born_sum,a1,a2,a1_plus_a2,gap,diverged\n";
  json rows = json::array();
  std::vector<double> Rs = a.R_list;
  if (Rs.empty()) Rs.push_back(1.0);
  bool any_failed = false;
  for (double R : Rs) {
    auto vR = v1.scaled_to_range(R);
    auto ode = scattering::scattering_length_ode(vR, a.tol);
    auto born = scattering::born_terms(vR, a.born_K);
    auto a2f = scattering::a2_fourier(vR);
    double a1 = born.born_terms[0];
    double a2 = born.born_terms.size() > 1 ? born.born_terms[1] : 0.0;
    double gap = std::abs(ode.a - a1 - a2);
    json row;
    row["R"] = R;
    row["a_ode"] = tn(ode.a, a.tol);
    row["ode_residual"] = ode.ode_residual;
    row["r_match"] = ode.r_match;
    row["born_terms"] = born.born_terms;
    row["born_ratios"] = born.born_ratios;
    row["born_sum"] = tn(born.born_sum, a.tol);
    row["born_diverged"] = born.born_diverged;
    row["a2_fourier"] = tn(a2f.a2, 1e-8);
    row["a2_fourier_tail"] = a2f.tail;
    row["a1_plus_a2_gap"] = gap;
    rows.push_back(row);
    csv << R << ',' << ode.a << ',' << ode.ode_residual << ',' << born.born_sum << ',' << a1
        << ',' << a2 << ',' << (a1 + a2) << ',' << gap << ',' << born.born_diverged << '\n';
    double cross = std::abs(a2f.a2 - a2);
    if (a2 != 0.0 && cross > 1e-5 * std::abs(a2)) {
      j["failed_check"] = "a2_fourier_vs_real_space";
      any_failed = true;
    }
  }
  if (Rs.size() >= 3) {
    auto study = scattering::born_convergence_study(v1, Rs, a.born_K, a.tol);
    j["fitted_gap_exponent"] = study.fitted_exponent;
    j["fitted_gap_constant"] = study.fitted_constant;
  }
  j["rows"] = rows;
  a.out.write(j.dump(2), csv.str());
  return any_failed ? 2 : 0;
}

int run_lhy(const LhyArgs& a) {
  auto I = bogolubov::lhy_dimensionless_integral(1e-9);
  double coeff = bogolubov::lhy_coefficient_value();
  json j = header("lhy");
  j["integral"] = tn(I.value, 1e-9);
  j["integral_tail"] = I.tail;
  j["coefficient"] = tn(coeff, 0.0);
  // (1/2)(2 pi)^-3 (8 pi)^{5/2} I must equal 4 pi * coefficient
  double assembled = 0.5 * std::pow(2.0 * M_PI, -3.0) * std::pow(8.0 * M_PI, 2.5) * I.value;
  j["coefficient_identity_residual"] = std::abs(assembled / (4.0 * M_PI * coeff) - 1.0);

  std::ostringstream csv;
  csv << "rho_a3,e_lhy\n";
  json rows = json::array();
  for (double x : a.rho_a3_list) {
    double rho = x;  // a = 1 units
    json row;
    row["rho_a3"] = x;
    row["e"] = tn(bogolubov::lhy_energy(rho, 1.0), 1e-12);
    rows.push_back(row);
    csv << x << ',' << bogolubov::lhy_energy(rho, 1.0) << '\n';
  }
  j["rows"] = rows;
  bool ok = std::abs(I.value - 32.0 * M_PI * std::sqrt(2.0) / 15.0) < 1e-6;
  if (!ok) j["failed_check"] = "lhy_integral_value";
  a.out.write(j.dump(2), csv.str());
  return ok ? 0 : 2;
}

int run_localize(const LocalizeArgs& a) {
  localization::LocalizationProfile profile(a.M);
  json j = header("localize-check");
  j["M"] = a.M;
  j["C_M"] = tn(profile.C_M(), 1e-14);
  j["s"] = a.s;

  rng::Splittable gen(20260810);
  double worst_partition = 0.0, worst_conv = 0.0, worst_marginal = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::array<double, 3> x{gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1)};
    std::array<double, 3> y{gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1)};
    auto r = localization::partition_identity_residual(profile, x, y);
    worst_partition = std::max(worst_partition, r.partition);
    worst_conv = std::max(worst_conv, r.convolution);
    worst_marginal = std::max(
        worst_marginal,
        localization::small_box_marginal_residual(profile, x, {0, 0, 0}, 2.0, 0.25));
  }
  j["partition_residual_max"] = tn(worst_partition, 1e-7);
  j["convolution_residual_max"] = tn(worst_conv, 1e-7);
  j["marginal_residual_max"] = tn(worst_marginal, 1e-7);

  auto v1 = load_potential(a.potential);
  bool failed = false;
  if (a.geometry == "big") {
    auto box = localization::BoxGeometry::big({0, 0, 0}, a.ell);
    auto rep = localization::self_energy(v1, box, profile, false);
    double a1 = v1.integral() / (8.0 * M_PI);
    double expect = 4.0 * M_PI * a1 / std::pow(a.ell, 3.0);
    j["U_B"] = tn(rep.U_B, 1e-8 * expect);
    j["U_B_big_expected"] = expect;
    j["U_B_big_residual"] = std::abs(rep.U_B / expect - 1.0);
    j["c_lower"] = rep.c_lower;
    j["c_upper"] = rep.c_upper;
    j["c_volume"] = rep.c_volume;
    if (std::abs(rep.U_B / expect - 1.0) > 1e-8) {
      j["failed_check"] = "U_B_big_identity";
      failed = true;
    }
  } else {
    auto box = localization::BoxGeometry::small({0, 0, 0}, {0, 0, 0}, a.ell, a.d);
    auto rep = localization::self_energy(v1, box, profile, false);
    j["U_B"] = tn(rep.U_B, 1e-8 * rep.U_B);
    j["c_lower"] = rep.c_lower;
    j["c_upper"] = rep.c_upper;
    j["c_volume"] = rep.c_volume;
  }

  auto tr = multiplier::cos_profile_transforms(profile);
  multiplier::MultiplierField field(tr, multiplier::gap_kernel(1.0 / a.s), a.grid,
                                    4.0 / a.s);
  auto scan = field.scan_inner(64);
  j["F_origin"] = tn(field.value_origin(), 1e-7);
  j["F_min_inner"] = tn(scan.min_value, 1e-7);
  j["F_aliasing_tail"] = field.aliasing_tail();
  auto fs = multiplier::f_s_bound_check(profile, a.s, a.grid);
  j["Fs_quadratic_regime_ok"] = fs.quadratic_regime_ok;
  j["Fs_measured_C"] = fs.measured_C;
  if (std::abs(field.value_origin()) > 1e-7 || scan.min_value < -1e-7) {
    j["failed_check"] = "F_positivity";
    failed = true;
  }

  std::ostringstream csv;
  csv << "quantity,value\n";
  csv << "C_M," << profile.C_M() << "\n";
  csv << "partition_residual_max," << worst_partition << "\n";
  csv << "F_min_inner," << scan.min_value << "\n";
  a.out.write(j.dump(2), csv.str());
  return failed ? 2 : 0;
}

int run_bogolubov(const BogolubovArgs& a) {
  json j = header("bogolubov-verify");
  j["n"] = a.n;
  j["modes"] = a.modes;
  j["trials"] = a.trials;
  j["seed"] = a.seed;

  rng::Splittable gen(a.seed);
  std::vector<json> results(a.trials);
  std::vector<double> margins(a.trials, 0.0);
  par::parallel_for(a.trials, [&](std::size_t t) {
    auto g = gen.split(t);
    int n = 1 + static_cast<int>(g.uniform() * a.n);
    if (n > a.n) n = a.n;
    double A = 0.1 + 3.0 * g.uniform();
    double B = (t % 10 == 0) ? A : -A + 2.0 * A * (0.02 + 0.98 * g.uniform());
    if (B > A) B = A;
    std::complex<double> kappa(2.0 * g.uniform() - 1.0, 2.0 * g.uniform() - 1.0);
    fock::FockBasis basis(a.modes, n);
    double margin = fock::verify_bogolubov_operator_inequality(basis, A, B, kappa);
    margins[t] = margin;
    json row;
    row["trial"] = t;
    row["n"] = n;
    row["A"] = A;
    row["B"] = B;
    row["kappa_re"] = kappa.real();
    row["kappa_im"] = kappa.imag();
    row["margin"] = tn(margin, 1e-9);
    results[t] = row;
  });
  json trials = json::array();
  double worst = 0.0;
  for (int t = 0; t < a.trials; ++t) {
    trials.push_back(results[t]);
    worst = std::min(worst, margins[t]);
  }
  j["worst_margin"] = tn(a.trials > 0 ? worst : 0.0, 1e-9);
  j["trials_data"] = trials;

  std::ostringstream csv;
  csv << "trial,n,A,B,kappa_re,kappa_im,margin\n";
  for (int t = 0; t < a.trials; ++t) {
    const auto& r = results[t];
    csv << t << ',' << r["n"] << ',' << r["A"] << ',' << r["B"] << ',' << r["kappa_re"] << ','
        << r["kappa_im"] << ',' << r["margin"]["value"] << '\n';
  }
  bool ok = a.trials == 0 || worst >= -1e-9;
  if (!ok) j["failed_check"] = "bogolubov_margin";
  a.out.write(j.dump(2), csv.str());
  return ok ? 0 : 2;
}

int run_matrix_localize(const MatrixLocalizeArgs& a) {
  json j = header("matrix-localize");
  j["n"] = a.n;
  j["trials"] = a.trials;
  j["seed"] = a.seed;
  j["MM"] = a.MM;
  j["psi"] = a.psi;

  const int dim = a.n + 1;
  std::vector<double> Cs(a.trials, 0.0), excesses(a.trials, 0.0);
  std::vector<int> windows(a.trials, 0);
  par::parallel_for(a.trials, [&](std::size_t t) {
    auto A = fock::random_pentadiagonal(dim, a.seed, t);
    fock::Vector psi;
    if (a.psi == "ground") {
      Eigen::SelfAdjointEigenSolver<fock::Matrix> es(A);
      psi = es.eigenvectors().col(0);
    } else {
      psi = fock::Vector::Constant(dim, std::complex<double>(1.0 / std::sqrt(double(dim)), 0));
    }
    auto res = fock::localize_matrix(A, psi, a.MM);
    Cs[t] = res.measured_C;
    excesses[t] = res.excess;
    windows[t] = res.window_start;
  });
  double cmax = 0.0, emax = -1e300;
  json rows = json::array();
  for (int t = 0; t < a.trials; ++t) {
    cmax = std::max(cmax, Cs[t]);
    emax = std::max(emax, excesses[t]);
    json row;
    row["trial"] = t;
    row["window_start"] = windows[t];
    row["excess"] = excesses[t];
    row["measured_C"] = Cs[t];
    rows.push_back(row);
  }
  j["measured_C_max"] = cmax;
  j["excess_max"] = a.trials > 0 ? emax : 0.0;
  j["rows"] = rows;

  std::ostringstream csv;
  csv << "trial,window_start,excess,measured_C\n";
  for (int t = 0; t < a.trials; ++t)
    csv << t << ',' << windows[t] << ',' << excesses[t] << ',' << Cs[t] << '\n';
  a.out.write(j.dump(2), csv.str());
  return 0;
}

int run_regime(const RegimeArgs& a) {
  auto table = regime::asymptotic_sweep(1.0, a.beta, a.rho_a3_list, a.N, a.delta);
  json j = header("regime");
  j["beta"] = a.beta;
  j["N"] = a.N;
  j["delta"] = a.delta;
  j["all_conditions_ok"] = table.all_conditions_ok;
  j["all_chains_ok"] = table.all_chains_ok;
  j["e_quad_ok"] = table.e_quad_ok;
  j["min_shrink"] = table.min_shrink;
  json shr;
  for (auto& [k, v] : table.shrink) shr[k] = v;
  j["shrink"] = shr;

  std::ostringstream csv;
  csv << "rho_a3,X,d,s,ell,epsT,eps0,S,equad_sum,chain_min,conditions_ok\n";
  json rows = json::array();
  for (auto& row : table.rows) {
    json rj;
    rj["rho_a3"] = row.rho_a3;
    rj["X"] = row.regime.X;
    rj["d"] = row.regime.d;
    rj["s"] = row.regime.s;
    rj["ell"] = row.regime.ell;
    rj["epsT"] = row.regime.epsT;
    rj["eps0"] = row.regime.eps0;
    rj["eps3"] = row.regime.eps3;
    rj["MM"] = row.regime.MM;
    rj["S"] = row.ledger.S;
    json eq = json::array();
    for (auto& t : row.ledger.e_quad) {
      eq.push_back(json{{"name", t.name},
                        {"structural", t.structural},
                        {"log_factor", t.log_factor},
                        {"full", t.full}});
    }
    rj["e_quad"] = eq;
    rj["e_quad_below_S"] = row.ledger.e_quad_below_S;
    rj["K_B_over_rhoB"] = row.ledger.K_B_over_rhoB;
    rj["L_tiny_lhy"] = row.ledger.L_tiny_lhy;
    rj["nplus_frac"] = row.ledger.nplus_frac;
    rj["ndev_frac"] = row.ledger.ndev_frac;
    rj["scale_chain_ok"] = row.scale_chain_ok;
    rj["scale_chain_min_ratio"] = row.scale_chain_min_ratio;
    json margins;
    for (auto& m : row.conditions.margins) {
      margins[m.name] =
          json{{"lhs", m.lhs},
               {"margin_strict", m.margin_strict},
               {"margin_ordering", m.margin_ordering},
               {"asserted", m.asserted_strict ? m.margin_strict : m.margin_ordering}};
    }
    rj["condition_margins"] = margins;
    rj["failed_conditions"] = row.conditions.failed;
    rows.push_back(rj);
    csv << row.rho_a3 << ',' << row.regime.X << ',' << row.regime.d << ',' << row.regime.s
        << ',' << row.regime.ell << ',' << row.regime.epsT << ',' << row.regime.eps0 << ','
        << row.ledger.S << ',' << row.ledger.e_quad_sum_full << ','
        << row.scale_chain_min_ratio << ',' << row.conditions.all_satisfied << '\n';
  }
  j["rows"] = rows;
  a.out.write(j.dump(2), csv.str());
  return 0;
}

}  // namespace cli
