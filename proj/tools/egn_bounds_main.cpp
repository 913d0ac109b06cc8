// Copyright 2026 the egn-bounds authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "egn/egn.hpp"

namespace {

constexpr const char* kSchema = "egn-bounds/1";

// Deterministic serialization: keys sorted (the default object_t is an
// ordered map), floats at 12 significant digits, no negative zero. Byte
// identity of repeated runs is part of the output contract.
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

void write_json(std::ostream& out, const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ',';
        first = false;
        out << nlohmann::json(key).dump() << ':';
        write_json(out, value);
      }
      out << '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ',';
        write_json(out, j[i]);
      }
      out << ']';
      break;
    }
    case nlohmann::json::value_t::number_float:
      out << format_double(j.get<double>());
      break;
    default:
      out << j.dump();
      break;
  }
}

void emit(const nlohmann::json& j) {
  write_json(std::cout, j);
  std::cout << '\n';
}

nlohmann::json angle_json(const egn::AngleTriple& a) {
  return {{"theta", a.theta}, {"psi", a.psi}, {"phi", a.phi}};
}

nlohmann::json pauli_json(const egn::PauliString& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (int k = 0; k < p.n_qubits(); ++k) arr.push_back(static_cast<int>(p[k]));
  return arr;
}

nlohmann::json triple_json(const egn::EgnTriple& t) {
  return {{"d1", t.d1}, {"d2", t.d2}, {"d3", t.d3}};
}

struct BoundOptions {
  std::string state_path;
  int m = 0;
  bool no_optimize = false;
  int grid = 24;
  std::int64_t seed = -1;
  bool symmetric = false;
  bool per_qubit = false;
  bool even_distance = false;
};

int run_project(const std::string& state_path, const std::string& spec_path) {
  const egn::DensityMatrix rho = egn::load_state(state_path);
  const egn::EnipSpec spec = spec_path.empty()
                                 ? egn::standard_egn_spec(rho.n_qubits())
                                 : egn::load_enip_spec(spec_path);
  const egn::DensityMatrix projected = egn::project_group_average(rho, spec);

  nlohmann::json tensor = nlohmann::json::array();
  for (const auto& alpha : spec.surviving) {
    tensor.push_back({{"alpha", pauli_json(alpha)},
                      {"value", egn::correlation(projected, alpha)}});
  }
  nlohmann::json out = {{"schema", kSchema},
                        {"n_qubits", rho.n_qubits()},
                        {"tensor", tensor}};
  const int n = rho.n_qubits();
  const bool standard_readout =
      n >= 2 &&
      std::binary_search(spec.surviving.begin(), spec.surviving.end(),
                         egn::readout_string_1(n)) &&
      std::binary_search(spec.surviving.begin(), spec.surviving.end(),
                         egn::readout_string_2(n)) &&
      std::binary_search(spec.surviving.begin(), spec.surviving.end(),
                         egn::readout_string_3(n));
  if (standard_readout) {
    out["triple"] = triple_json(egn::triple_of(projected));
  }
  emit(out);
  return 0;
}

int run_bound(const BoundOptions& opt) {
  const egn::DensityMatrix rho = egn::load_state(opt.state_path);
  const int n = rho.n_qubits();

  nlohmann::json out = {{"schema", kSchema}, {"n_qubits", n}, {"m", opt.m}};
  egn::EgnTriple triple = egn::triple_of(rho);
  if (opt.no_optimize) {
    out["optimized"] = false;
  } else {
    egn::OptimizeConfig cfg;
    cfg.grid_points = opt.grid;
    cfg.per_qubit_stage = opt.per_qubit;
    cfg.even_distance_objective = opt.even_distance;
    if (opt.seed >= 0) {
      cfg.random_starts = 8;
      cfg.random_starts_seed = static_cast<std::uint64_t>(opt.seed);
    }
    const egn::BoundReport report = egn::optimize(rho, cfg);
    triple = report.triple;
    const egn::LocalUnitaryParams params = report.params.canonicalized();
    out["optimized"] = true;
    out["abs_sum"] = report.abs_sum;
    out["symmetric"] = params.symmetric;
    if (params.symmetric) {
      out["angles"] = angle_json(params.angles.front());
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& a : params.angles) arr.push_back(angle_json(a));
      out["angles"] = arr;
    }
  }

  const egn::MeasureResult r = egn::evaluate_measures(triple, opt.m);
  out["triple"] = triple_json(triple);
  out["height"] = r.height;
  out["nontrivial"] = r.nontrivial;
  out["robustness_lower_bound"] = r.robustness;
  out["trace_distance_lower_bound"] = r.trace_distance;
  if (!r.warning.empty()) out["warning"] = r.warning;
  emit(out);
  return 0;
}

int run_verify_enip(int n, const std::string& spec_path) {
  egn::VerificationReport report;
  std::vector<egn::PauliString> declared;
  int n_out = n;
  if (spec_path.empty()) {
    const egn::EnipSpec spec = egn::standard_egn_spec(n, &report);
    declared = spec.surviving;
  } else {
    const egn::EnipSpec spec = egn::load_enip_spec(spec_path);
    if (n != 0 && n != spec.n_qubits) {
      throw egn::ArgumentError("verify-enip: --n disagrees with the spec file");
    }
    n_out = spec.n_qubits;
    declared = spec.surviving;
    report = egn::verify_spec(spec);
  }

  nlohmann::json computed = nlohmann::json::array();
  for (const auto& s : report.computed_surviving) computed.push_back(pauli_json(s));
  nlohmann::json surviving = nlohmann::json::array();
  for (const auto& s : declared) surviving.push_back(pauli_json(s));
  emit({{"schema", kSchema},
        {"n_qubits", n_out},
        {"ok", report.ok()},
        {"distinct", report.distinct},
        {"surviving_matches", report.surviving_matches},
        {"group_size", static_cast<std::int64_t>(report.group_size)},
        {"n_generators", report.n_generators},
        {"variant", report.variant},
        {"surviving", surviving},
        {"computed_surviving", computed}});
  return report.ok() ? 0 : 1;
}

int run_region(int n, int m) {
  emit({{"schema", kSchema},
        {"n_qubits", n},
        {"m", m},
        {"region", egn::to_string(egn::m_separable_region(n, m))}});
  return 0;
}

int run_ghz_table(int n_min, int n_max) {
  std::cout << "n,d1,d2,d3,abs_sum,theta,psi,phi\n";
  for (int n = n_min; n <= n_max; ++n) {
    const auto angles = egn::ghz_optimal_angles(n);
    if (!angles) {
      throw egn::ArgumentError("ghz-table: no reference angles for n = " +
                               std::to_string(n));
    }
    const egn::EgnTriple t = egn::rotated_triple(
        egn::DensityMatrix::ghz(n), egn::LocalUnitaryParams::shared(*angles));
    const double abs_sum = std::abs(t.d1) + std::abs(t.d2) + std::abs(t.d3);
    std::cout << n << ',' << format_double(t.d1) << ',' << format_double(t.d2)
              << ',' << format_double(t.d3) << ',' << format_double(abs_sum)
              << ',' << format_double(angles->theta) << ','
              << format_double(angles->psi) << ','
              << format_double(angles->phi) << '\n';
  }
  return 0;
}

int run_self_check(std::uint64_t seed, bool quick) {
  const egn::SelfCheckReport report = egn::self_check(seed, quick);
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"max_deviation", c.max_deviation},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  emit({{"schema", kSchema},
        {"seed", static_cast<std::int64_t>(seed)},
        {"quick", quick},
        {"all_pass", report.all_pass()},
        {"checks", checks}});
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified lower bounds on M-inseparable multiqubit entanglement"};
  app.require_subcommand(1);
  int rc = 0;

  std::string project_state, project_spec;
  auto* project = app.add_subcommand(
      "project", "project a state onto its surviving correlation tensor");
  project->add_option("--state", project_state, "state JSON file")->required();
  project->add_option("--spec", project_spec, "projection group JSON file");
  project->callback([&] { rc = run_project(project_state, project_spec); });

  BoundOptions bound_opt;
  auto* bound = app.add_subcommand(
      "bound", "entanglement lower bounds for a state, optimized by default");
  bound->add_option("--state", bound_opt.state_path, "state JSON file")
      ->required();
  bound->add_option("--m", bound_opt.m, "number of parties M")->required();
  bound->add_flag("--no-optimize", bound_opt.no_optimize,
                  "evaluate the identity frame only");
  bound->add_option("--grid", bound_opt.grid, "angle grid resolution")
      ->check(CLI::Range(2, 256));
  bound->add_option("--seed", bound_opt.seed,
                    "add 8 seeded random starts to the search");
  auto* sym = bound->add_flag("--symmetric", bound_opt.symmetric,
                              "shared angles on every qubit (default)");
  bound->add_flag("--per-qubit", bound_opt.per_qubit,
                  "refine with independent per-qubit angles")
      ->excludes(sym);
  bound->callback([&] { rc = run_bound(bound_opt); });

  int verify_n = 0;
  std::string verify_spec_path;
  auto* verify = app.add_subcommand(
      "verify-enip", "exhaustively verify a projection group specification");
  verify->add_option("--n", verify_n, "qubit count for the standard group")
      ->check(CLI::Range(2, 24));
  verify->add_option("--spec", verify_spec_path, "spec JSON file");
  verify->callback([&] {
    if (verify_spec_path.empty() && verify_n == 0) {
      throw CLI::RequiredError("--n or --spec");
    }
    rc = run_verify_enip(verify_n, verify_spec_path);
  });

  int region_n = 0, region_m = 0;
  auto* region = app.add_subcommand(
      "region", "convex region equal to the M-separable projected set");
  region->add_option("--n", region_n, "qubit count")->required();
  region->add_option("--m", region_m, "number of parties M")->required();
  region->callback([&] { rc = run_region(region_n, region_m); });

  int ghz_min = 3, ghz_max = 7;
  auto* ghz = app.add_subcommand(
      "ghz-table", "reference GHZ rotation table as CSV");
  ghz->add_option("--n-min", ghz_min, "smallest qubit count")
      ->check(CLI::Range(3, 7));
  ghz->add_option("--n-max", ghz_max, "largest qubit count")
      ->check(CLI::Range(3, 7));
  ghz->callback([&] {
    if (ghz_min > ghz_max) {
      throw CLI::ValidationError("ghz-table", "--n-min must be <= --n-max");
    }
    rc = run_ghz_table(ghz_min, ghz_max);
  });

  std::uint64_t check_seed = 1;
  bool check_quick = false;
  auto* check = app.add_subcommand(
      "self-check", "run every closed form against its brute-force oracle");
  check->add_option("--seed", check_seed, "sampling seed");
  check->add_flag("--quick", check_quick, "reduced sample counts");
  check->callback([&] { rc = run_self_check(check_seed, check_quick); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const egn::Error& e) {
    emit({{"error", std::string(e.what())}});
    return 1;
  } catch (const std::exception& e) {
    emit({{"error", std::string(e.what())}});
    return 1;
  }
  return rc;
}
