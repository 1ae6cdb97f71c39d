// Copyright 2026 The qincompat Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QINCOMPAT_TOOLS_CLI_HPP_
#define QINCOMPAT_TOOLS_CLI_HPP_

// Subcommands: incompat, table, verify, witness, steer.
// Exit codes: 0 ok, 1 input or validation error, 3 verify failed,
// 4 --assert-violation set but nothing was violated.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qincompat/criteria.hpp"
#include "qincompat/incompatibility.hpp"
#include "qincompat/io.hpp"
#include "qincompat/oracle.hpp"
#include "qincompat/states.hpp"

namespace qincompat::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kVerifyFailed = 3, kAssertionFailed = 4 };

inline constexpr double kVerifyJacobiTol = 1e-9;
inline constexpr double kVerifyOracleTol = 1e-5;
inline constexpr long kVerifyMinPointsForTightTol = 20000;

inline const std::vector<std::string> kDefaultGrid = {"pi/9", "2*pi/9", "pi/3", "4*pi/9", "5*pi/9"};

namespace detail {

inline std::string vec_text(Vec3 v) {
  return "(" + fixed5(v.x) + ", " + fixed5(v.y) + ", " + fixed5(v.z) + ")";
}

inline std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

inline TwoQubitState load_two_qubit_state(const std::string& spec) {
  if (auto builtin = parse_builtin_state(spec)) return *builtin;
  const AnyState s = parse_state_file(read_json_file(spec));
  if (!std::holds_alternative<TwoQubitState>(s)) throw ValidationError(spec + ": a two-qubit (dim 4) state is required");
  return std::get<TwoQubitState>(s);
}

inline std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct IncompatOptions {
  std::string dirs;
  std::vector<std::string> angles;
  bool json = false;
};

inline int cmd_incompat(const IncompatOptions& o, std::ostream& out) {
  IncompatibilityResult r;
  if (!o.dirs.empty()) {
    r = incompatibility(parse_direction_file(read_json_file(o.dirs)).directions);
  } else {
    const double t1 = parse_angle(o.angles[0]);
    const double t2 = parse_angle(o.angles[1]);
    const double t3 = parse_angle(o.angles[2]);
    const double value = incompatibility_from_angles(t1, t2, t3);
    r = incompatibility(unit_triple_from_angles(t1, t2, t3));
    r.value = value;
    r.lambda_max = 3.0 - value;
  }
  if (o.json) {
    out << nlohmann::json(r).dump(2) << "\n";
    return kOk;
  }
  out << "incompatibility  " << fixed5(r.value) << "\n"
      << "lambda_max       " << fixed5(r.lambda_max) << "\n"
      << "alpha            " << fixed5(r.coefficients.alpha) << "\n"
      << "beta             " << fixed5(r.coefficients.beta) << "\n"
      << "optimizer        " << vec_text(r.optimizer) << "\n";
  return kOk;
}

struct TableOptions {
  std::string theta3 = "pi/3";
  std::string grid;
  std::string format = "text";
  bool json = false;
};

inline int cmd_table(const TableOptions& o, std::ostream& out) {
  const std::vector<std::string> labels = o.grid.empty() ? kDefaultGrid : split_commas(o.grid);
  std::vector<double> grid;
  for (const auto& l : labels) grid.push_back(parse_angle(l));
  const double theta3 = parse_angle(o.theta3);

  struct Cell {
    bool ok = false;
    double value = 0.0;
    double gram_eig = 0.0;
  };
  // rows: theta2, columns: theta1
  std::vector<std::vector<Cell>> cells(grid.size(), std::vector<Cell>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      Cell& c = cells[i][j];
      try {
        c.value = incompatibility_from_angles(grid[j], grid[i], theta3);
        c.ok = true;
      } catch (const NonRealizableAngles& e) {
        c.gram_eig = e.min_gram_eigenvalue();
      }
    }

  if (o.json) {
    nlohmann::json j;
    j["theta3"] = o.theta3;
    j["grid"] = labels;
    j["cells"] = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j2 = 0; j2 < grid.size(); ++j2) {
        const Cell& c = cells[i][j2];
        nlohmann::json cell = {{"theta1", labels[j2]}, {"theta2", labels[i]}, {"realizable", c.ok}};
        if (c.ok) cell["value"] = c.value;
        else cell["gram_min_eigenvalue"] = c.gram_eig;
        j["cells"].push_back(cell);
      }
    out << j.dump(2) << "\n";
    return kOk;
  }

  const bool csv = o.format == "csv";
  std::vector<std::string> notes;
  const auto render = [&](const Cell& c, std::size_t i, std::size_t j) {
    if (c.ok) return fixed5(c.value);
    notes.push_back("[" + std::to_string(notes.size() + 1) + "] theta1=" + labels[j] + " theta2=" + labels[i] +
                    ": Gram eigenvalue " + fixed5(c.gram_eig));
    return "n/a[" + std::to_string(notes.size()) + "]";
  };

  if (csv) {
    out << "theta2\\theta1";
    for (const auto& l : labels) out << "," << l;
    out << "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << labels[i];
      for (std::size_t j = 0; j < grid.size(); ++j) out << "," << render(cells[i][j], i, j);
      out << "\n";
    }
    for (const auto& n : notes) out << "# " << n << "\n";
    return kOk;
  }

  constexpr int kWidth = 10;
  out << "theta3 = " << o.theta3 << "\n" << std::left << std::setw(kWidth) << "t2\\t1";
  for (const auto& l : labels) out << std::right << std::setw(kWidth) << l;
  out << "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << std::left << std::setw(kWidth) << labels[i];
    for (std::size_t j = 0; j < grid.size(); ++j) out << std::right << std::setw(kWidth) << render(cells[i][j], i, j);
    out << "\n";
  }
  for (const auto& n : notes) out << n << "\n";
  return kOk;
}

struct VerifyOptions {
  std::string dirs;
  long grid_points = kVerifyMinPointsForTightTol;
  long samples = 1000;
  std::uint64_t seed = 0;
  bool json = false;
};

inline int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const ObservableSet set = parse_direction_file(read_json_file(o.dirs)).directions;
  const IncompatibilityResult closed = incompatibility(set);
  const IncompatibilityResult jac = incompatibility_jacobi(set);
  const OracleResult oracle = sphere_grid_min(set, o.grid_points);
  const double floor = mixed_sample_floor(set, o.samples, o.seed);

  // Below the reference lattice size only the lattice's own error bound is promised.
  const double oracle_tol = o.grid_points >= kVerifyMinPointsForTightTol ? kVerifyOracleTol : oracle.resolution_bound;
  const double d_jac = std::abs(closed.value - jac.value);
  const double d_oracle = std::abs(closed.value - oracle.value);
  const bool pass_jac = d_jac <= kVerifyJacobiTol;
  const bool pass_oracle = d_oracle <= oracle_tol;
  const bool pass_floor = floor >= closed.value - 1e-10;
  const bool pass = pass_jac && pass_oracle && pass_floor;

  if (o.json) {
    nlohmann::json j = {{"closed_form", closed},   {"jacobi", jac},
                        {"oracle", oracle},        {"mixed_floor", floor},
                        {"delta_jacobi", d_jac},   {"delta_oracle", d_oracle},
                        {"oracle_tolerance", oracle_tol},
                        {"pass", pass}};
    out << j.dump(2) << "\n";
  } else {
    out << "closed_form      " << fixed5(closed.value) << "\n"
        << "jacobi           " << fixed5(jac.value) << "\n"
        << "oracle           " << fixed5(oracle.value) << "  (" << oracle.points_evaluated << " evaluations)\n"
        << "mixed_floor      " << fixed5(floor) << "  (" << o.samples << " samples, seed " << o.seed << ")\n"
        << "|closed-jacobi|  " << sci(d_jac) << "  " << (pass_jac ? "ok" : "FAIL") << "\n"
        << "|closed-oracle|  " << sci(d_oracle) << "  " << (pass_oracle ? "ok" : "FAIL") << "\n"
        << "floor >= bound   " << (pass_floor ? "ok" : "FAIL") << "\n"
        << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kOk : kVerifyFailed;
}

struct WitnessOptions {
  std::string state;
  std::string alice;
  std::string bob;
  bool assert_violation = false;
  bool json = false;
};

inline int cmd_witness(const WitnessOptions& o, std::ostream& out) {
  const TwoQubitState rho = load_two_qubit_state(o.state);
  const auto alice = parse_direction_file(read_json_file(o.alice)).directions;
  const auto bob = parse_direction_file(read_json_file(o.bob)).directions;
  const WitnessReport r = entanglement_witness(rho, alice, bob);
  if (o.json) {
    out << nlohmann::json(r).dump(2) << "\n";
  } else {
    out << "variance_sum  " << fixed5(r.variance_sum) << "\n"
        << "bound         " << fixed5(r.bound) << "\n"
        << "margin        " << fixed5(r.margin) << "\n"
        << "verdict       " << (r.violated ? "violated (entangled)" : "not violated (inconclusive)") << "\n";
  }
  return o.assert_violation && !r.violated ? kAssertionFailed : kOk;
}

struct SteerOptions {
  std::string state;
  std::string settings;
  bool assert_violation = false;
  bool json = false;
};

inline int cmd_steer(const SteerOptions& o, std::ostream& out) {
  const TwoQubitState rho = load_two_qubit_state(o.state);
  const auto settings = parse_settings_file(read_json_file(o.settings));
  const SteeringReport r = steering_test(rho, settings);
  if (o.json) {
    out << nlohmann::json(r).dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < r.inference_variances.size(); ++i)
      out << "setting " << i << "    " << fixed5(r.inference_variances[i]) << "\n";
    out << "total        " << fixed5(r.total) << "\n"
        << "bound        " << fixed5(r.bound) << "\n"
        << "margin       " << fixed5(r.margin) << "\n"
        << "verdict      " << (r.violated ? "violated (steering demonstrated)" : "not violated") << "\n";
  }
  return o.assert_violation && !r.violated ? kAssertionFailed : kOk;
}

}  // namespace detail

/// Parses argv and runs one subcommand; reports go to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variance-sum incompatibility bounds for qubit spin observables"};
  app.require_subcommand(1);

  detail::IncompatOptions inc;
  auto* incompat = app.add_subcommand("incompat", "state-independent bound for a direction set");
  auto* dirs_opt = incompat->add_option("--dirs", inc.dirs, "direction file (JSON)");
  auto* angles_opt = incompat->add_option("--angles", inc.angles, "three pairwise angles theta1 theta2 theta3")
                         ->expected(3);
  dirs_opt->excludes(angles_opt);
  incompat->add_flag("--json", inc.json, "emit the full result as JSON");

  detail::TableOptions tab;
  auto* table = app.add_subcommand("table", "bound over a theta1 x theta2 grid of angle triples");
  table->add_option("--theta3", tab.theta3, "fixed angle between n1 and n2")->capture_default_str();
  table->add_option("--grid", tab.grid, "comma-separated angles (default pi/9,...,5*pi/9)");
  table->add_option("--format", tab.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  table->add_flag("--json", tab.json, "emit cells as JSON");

  detail::VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "compare closed form, Jacobi and brute-force oracle");
  verify->add_option("--dirs", ver.dirs, "direction file (JSON)")->required();
  verify->add_option("--grid-points", ver.grid_points, "Fibonacci lattice size")->check(CLI::Range(12L, 100000000L));
  verify->add_option("--samples", ver.samples, "random mixed states")->check(CLI::Range(1L, 100000000L));
  verify->add_option("--seed", ver.seed, "sampling seed");
  verify->add_flag("--json", ver.json, "emit the comparison as JSON");

  detail::WitnessOptions wit;
  auto* witness = app.add_subcommand("witness", "entanglement witness from local uncertainty sums");
  witness->add_option("--state", wit.state, "state file or singlet | werner:p | product:ax,ay,az:bx,by,bz")
      ->required();
  witness->add_option("--alice", wit.alice, "Alice's direction file")->required();
  witness->add_option("--bob", wit.bob, "Bob's direction file")->required();
  witness->add_flag("--assert-violation", wit.assert_violation, "exit 4 unless the witness is violated");
  witness->add_flag("--json", wit.json, "emit the report as JSON");

  detail::SteerOptions st;
  auto* steer = app.add_subcommand("steer", "EPR-steering test from inference variances");
  steer->add_option("--state", st.state, "state file or singlet | werner:p | product:ax,ay,az:bx,by,bz")
      ->required();
  steer->add_option("--settings", st.settings, "settings file (JSON)")->required();
  steer->add_flag("--assert-violation", st.assert_violation, "exit 4 unless steering is demonstrated");
  steer->add_flag("--json", st.json, "emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (incompat->parsed()) {
      if (inc.dirs.empty() == inc.angles.empty()) {
        err << "error: incompat needs exactly one of --dirs or --angles\n";
        return kInputError;
      }
      return detail::cmd_incompat(inc, out);
    }
    if (table->parsed()) return detail::cmd_table(tab, out);
    if (verify->parsed()) return detail::cmd_verify(ver, out);
    if (witness->parsed()) return detail::cmd_witness(wit, out);
    if (steer->parsed()) return detail::cmd_steer(st, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace qincompat::cli

#endif  // QINCOMPAT_TOOLS_CLI_HPP_
