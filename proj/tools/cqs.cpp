// Copyright 2026 The cqs Authors
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

// Command-line front end: irreps, build, decompose, compile, simulate,
// verify, reproduce-paper, emit. Exit codes: 0 ok, 1 verification failure,
// 2 usage or input error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cqs/cqs.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw cqs::ParseError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_input(path));
  } catch (const json::parse_error& e) {
    throw cqs::ParseError(path + ": " + e.what());
  }
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw cqs::ParseError("cannot write '" + path + "'");
  out << text;
}

void write_json(const json& j, const std::string& path) { write_output(j.dump(2) + "\n", path); }

/// Options shared by every subcommand that needs a FrobeniusSpec.
struct SpecOptions {
  std::string group = "su3";
  int truncate = 3;
  std::string table_path;
  double beta = 1.0;
  std::string convention = "paper";

  void add(CLI::App& app, bool with_area = true) {
    app.add_option("--group", group, "Built-in group (su3)")->check(CLI::IsMember({"su3"}));
    app.add_option("--truncate", truncate, "Number of irreps kept")->check(CLI::PositiveNumber);
    app.add_option("--table", table_path, "Rep-table JSON file (overrides --group/--truncate)");
    if (with_area) {
      app.add_option("--beta", beta, "Area parameter beta")->check(CLI::NonNegativeNumber);
      app.add_option("--convention", convention, "Phase convention")->check(CLI::IsMember({"paper", "euclidean"}));
    }
  }

  cqs::RepTable table() const {
    if (!table_path.empty()) return cqs::load_rep_table(read_json(table_path));
    return cqs::su3_truncation(truncate);
  }

  cqs::FrobeniusSpec spec() const {
    cqs::RepTable t = table();
    cqs::EncodingMap enc = cqs::default_encoding(t);
    return cqs::FrobeniusSpec(std::move(t), std::move(enc), beta, cqs::parse_convention(convention));
  }
};

json vector_json(const cqs::Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cqs: compile Frobenius-algebra operators of truncated 2D Yang-Mills into post-selected circuits"};
  app.require_subcommand(1);
  std::string out_path;
  int exit_code = kExitOk;

  // irreps
  SpecOptions irreps_opts;
  auto* irreps = app.add_subcommand("irreps", "Print a truncated rep table");
  irreps_opts.add(*irreps, false);
  irreps->add_option("--out", out_path, "Output file (default stdout)");
  irreps->callback([&] { write_json(cqs::to_json(irreps_opts.table()), out_path); });

  // build
  SpecOptions build_opts;
  std::string build_op;
  bool build_logical = false;
  std::optional<double> build_area;
  auto* build = app.add_subcommand("build", "Build a generator as a dense operator");
  build_opts.add(*build);
  build->add_option("--op", build_op, "mu|delta|eta|eps|cylinder")->required()->check(CLI::IsMember({"mu", "delta", "eta", "eps", "cylinder"}));
  build->add_flag("--logical", build_logical, "Irrep-sector form instead of the padded register form");
  build->add_option("--area", build_area, "Area carried by this generator (default: beta for mu/eta/cylinder, 0 otherwise)");
  build->add_option("--out", out_path, "Output file (default stdout)");
  build->callback([&] {
    const auto spec = build_opts.spec();
    const auto g = cqs::parse_generator(build_op);
    const double area = build_area.value_or(cqs::default_area(g, spec));
    if (build_logical)
      write_json(cqs::to_json(cqs::DenseOperator::logical(cqs::logical_generator(g, spec, area))), out_path);
    else
      write_json(cqs::to_json(cqs::build_padded(g, spec, area)), out_path);
  });

  // decompose
  SpecOptions dec_opts;
  std::string dec_op, dec_operator, dec_factor = "none";
  auto* decompose = app.add_subcommand("decompose", "Pauli expansion or product factorization of an operator");
  dec_opts.add(*decompose);
  auto* dec_op_opt = decompose->add_option("--op", dec_op, "Generator to build")->check(CLI::IsMember({"mu", "delta", "eta", "eps", "cylinder"}));
  decompose->add_option("--operator", dec_operator, "Operator JSON file ('-' for stdin)")->excludes(dec_op_opt);
  decompose->add_option("--factor", dec_factor, "none: Pauli terms; paper: per-qubit factor sums; best: greedy rank-1")
      ->check(CLI::IsMember({"none", "paper", "best"}));
  decompose->add_option("--out", out_path, "Output file (default stdout)");
  decompose->callback([&] {
    if (dec_op.empty() && dec_operator.empty()) throw CLI::RequiredError("--op or --operator");
    const cqs::DenseOperator op = dec_operator.empty() ? cqs::build(cqs::parse_generator(dec_op), dec_opts.spec())
                                                       : cqs::load_operator(read_json(dec_operator));
    if (dec_factor == "none") {
      write_json(cqs::to_json(cqs::pauli_expand(op)), out_path);
      return;
    }
    const cqs::FactoredOperator f = dec_factor == "paper" ? cqs::sum_of_factors(op) : cqs::best_product_approximation(op);
    json j = cqs::to_json(f);
    j["factorization_residual"] = cqs::factorization_residual(f, op);
    j["relative_residual_up_to_scale"] = cqs::compare_up_to_scale(f.expand(), op.matrix()).residual;
    write_json(j, out_path);
  });

  // compile
  SpecOptions comp_opts;
  std::string comp_op, comp_operator, comp_mode = "exact", comp_report;
  auto* compile = app.add_subcommand("compile", "Compile an operator into a post-selected circuit");
  comp_opts.add(*compile);
  auto* comp_op_opt = compile->add_option("--op", comp_op, "Generator to build")->check(CLI::IsMember({"mu", "delta", "eta", "eps", "cylinder"}));
  compile->add_option("--operator", comp_operator, "Operator JSON file (exact mode only)")->excludes(comp_op_opt);
  compile->add_option("--mode", comp_mode, "paper|exact")->check(CLI::IsMember({"paper", "exact"}));
  compile->add_option("--report", comp_report, "Write the compile report here");
  compile->add_option("--out", out_path, "Output file (default stdout)");
  compile->callback([&] {
    if (comp_op.empty() && comp_operator.empty()) throw CLI::RequiredError("--op or --operator");
    cqs::Compiled c;
    if (comp_mode == "paper") {
      if (comp_op.empty()) throw CLI::ValidationError("--mode paper", "needs --op");
      c = cqs::compile_paper(comp_op, comp_opts.spec());
    } else {
      c = cqs::compile_exact(comp_operator.empty() ? cqs::build(cqs::parse_generator(comp_op), comp_opts.spec())
                                                   : cqs::load_operator(read_json(comp_operator)));
    }
    write_json(cqs::to_json(c.circuit), out_path);
    if (!comp_report.empty()) write_json(cqs::to_json(c.report), comp_report);
  });

  // simulate
  std::string sim_circuit = "-", sim_input;
  bool sim_effective = false;
  auto* simulate = app.add_subcommand("simulate", "Run a circuit with ancilla post-selection");
  simulate->add_option("--circuit", sim_circuit, "Circuit JSON file ('-' for stdin)");
  auto* in_opt = simulate->add_option("--in", sim_input, "Work-register input bitstring");
  simulate->add_flag("--effective", sim_effective, "Print the full post-selected operator instead")->excludes(in_opt);
  simulate->add_option("--out", out_path, "Output file (default stdout)");
  simulate->callback([&] {
    const cqs::Circuit c = cqs::load_circuit(read_json(sim_circuit));
    if (sim_effective) {
      write_json(cqs::to_json(cqs::DenseOperator::square(cqs::effective_operator(c).matrix)), out_path);
      return;
    }
    if (sim_input.empty()) throw CLI::RequiredError("--in or --effective");
    const cqs::RunResult r = cqs::run(c, cqs::Bitstring(sim_input));
    write_json({{"input", sim_input}, {"vector", vector_json(r.work_vector)}, {"success_probability", r.success_probability}}, out_path);
  });

  // verify
  SpecOptions ver_opts;
  std::string ver_op, ver_mode = "exact";
  auto* verify = app.add_subcommand("verify", "Compile, simulate and compare against the target");
  ver_opts.add(*verify);
  verify->add_option("--op", ver_op, "mu|delta|eta|eps")->required()->check(CLI::IsMember({"mu", "delta", "eta", "eps"}));
  verify->add_option("--mode", ver_mode, "paper|exact")->check(CLI::IsMember({"paper", "exact"}));
  verify->add_option("--report,--out", out_path, "Report file (default stdout)");
  verify->callback([&] {
    const auto mode = cqs::parse_mode(ver_mode);
    const cqs::VerifyReport r = cqs::verify_operator(cqs::parse_generator(ver_op), ver_opts.spec(), mode);
    write_json(cqs::to_json(r), out_path);
    bool ok = r.relative_residual <= (mode == cqs::CompileMode::exact ? cqs::kExactTolerance : cqs::kPaperFormTolerance);
    for (const auto& a : r.axiom_results) ok = ok && a.deviation <= cqs::kAxiomTolerance;
    if (!ok) exit_code = kExitVerifyFailed;
  });

  // reproduce-paper
  std::string rep_convention = "paper";
  auto* reproduce = app.add_subcommand("reproduce-paper", "Rebuild, compile and verify the four SU(3) operators; print the golden angle table");
  reproduce->add_option("--convention", rep_convention, "Phase convention")->check(CLI::IsMember({"paper", "euclidean"}));
  reproduce->add_option("--out", out_path, "Output file (default stdout)");
  reproduce->callback([&] {
    const cqs::PaperBundle b = cqs::reproduce_paper(cqs::parse_convention(rep_convention));
    write_json(cqs::to_json(b), out_path);
    if (!b.ok()) {
      for (const auto& f : b.failures) std::cerr << "FAILED " << f << "\n";
      exit_code = kExitVerifyFailed;
    }
  });

  // emit
  std::string emit_circuit = "-";
  auto* emit = app.add_subcommand("emit", "Print a circuit in the line-oriented text format");
  emit->add_option("--circuit", emit_circuit, "Circuit JSON file ('-' for stdin)");
  emit->add_option("--out", out_path, "Output file (default stdout)");
  emit->callback([&] { write_output(cqs::emit_text(cqs::load_circuit(read_json(emit_circuit))), out_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const cqs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}
