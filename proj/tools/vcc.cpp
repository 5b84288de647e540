// Copyright 2026 The vcc Authors.
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

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <set>

#include "vcc/chain/p2sh.hpp"
#include "vcc/error.hpp"
#include "vcc/pipeline/pipeline.hpp"

namespace {

using namespace vcc;
using pipeline::PipelineConfig;

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

int exit_code(const Error& e) {
  static const std::set<ErrorCode> internal = {
      ErrorCode::InvalidCircuit, ErrorCode::InconsistentAssignment, ErrorCode::NotDivisible,
      ErrorCode::InvalidWitness, ErrorCode::DimensionMismatch};
  return internal.count(e.code()) ? kInternal : kUsage;
}

void report_error(const Error& e) {
  std::cerr << "error: ";
  if (!e.where().file.empty() || e.where().line) std::cerr << e.where().str() << ": ";
  std::cerr << e.what() << "\n";
}

frontend::Defines parse_defines(const std::vector<std::string>& items) {
  frontend::Defines d;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      d[item] = "1";
    } else {
      d[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  return d;
}

std::string stats(const circuit::Circuit& c) {
  return "gates " + std::to_string(c.gates.size()) + " wires " + std::to_string(c.num_wires()) +
         " mul " + std::to_string(c.num_mul_gates()) + " constants " +
         std::to_string(circuit::count_constant_gates(c)) + " bitwidth " +
         std::to_string(c.bit_width);
}

std::vector<bool> output_signs(const circuit::Circuit& c) {
  std::vector<bool> s;
  for (auto w : c.output_wires) s.push_back(c.is_signed[w]);
  return s;
}

struct Paths {
  std::vector<std::string> sources;
  std::vector<std::string> defines;
  std::string entry = "contract";
  std::string circuit, out, report, ek, vk, qap, inputs, outputs, proof, bundle, scripts_dir;
  std::string work_dir = "vcc-out";
  bool tamper_witness = false;
};

circuit::Circuit load_circuit(const std::string& path) {
  return circuit::parse_circuit(pipeline::read_file(path));
}

int cmd_compile(const Paths& p, const PipelineConfig& cfg) {
  auto c = pipeline::compile(pipeline::load_sources(p.sources, p.entry), cfg, parse_defines(p.defines));
  pipeline::write_file(p.out, circuit::serialize(c));
  std::cout << stats(c) << "\n";
  return kAccept;
}

int cmd_minimize(const Paths& p, const PipelineConfig& cfg) {
  minimizer::MinimizeReport report;
  auto c = pipeline::minimize(load_circuit(p.circuit), cfg, &report);
  pipeline::write_file(p.out, circuit::serialize(c));
  if (p.report.empty()) {
    std::cout << report.str();
  } else {
    pipeline::write_file(p.report, report.str());
  }
  std::cout << stats(c) << "\n";
  return kAccept;
}

int cmd_setup(const Paths& p, const PipelineConfig& cfg) {
  auto s = pipeline::setup(load_circuit(p.circuit), cfg);
  pipeline::write_file(p.ek, crypto::serialize(s.keys.ek));
  pipeline::write_file(p.vk, crypto::serialize(s.keys.vk));
  if (!p.qap.empty()) pipeline::write_file(p.qap, qap::serialize(s.qap));
  std::cout << "k " << s.qap.k() << " d " << s.qap.d() << " n_io " << s.qap.n_io << "\n";
  return kAccept;
}

int cmd_prove(const Paths& p, const PipelineConfig& cfg) {
  auto c = load_circuit(p.circuit);
  auto ek = crypto::parse_evaluation_key(pipeline::read_file(p.ek));
  auto inputs = pipeline::read_values(p.inputs, c.bit_width);
  auto r = pipeline::prove(c, ek, inputs, cfg, p.tamper_witness);
  pipeline::write_file(p.proof, crypto::serialize(r.proof));
  const std::string out = pipeline::format_values(r.outputs, output_signs(c), c.bit_width);
  pipeline::write_file(p.outputs, out);
  std::cout << out;
  return kAccept;
}

int cmd_verify(const Paths& p, const PipelineConfig& cfg) {
  auto vk = crypto::parse_verification_key(pipeline::read_file(p.vk));
  auto x = pipeline::read_values(p.inputs, cfg.bit_width);
  auto y = pipeline::read_values(p.outputs, cfg.bit_width);
  bool ok = false;
  try {
    ok = pipeline::verify(vk, x, y, crypto::parse_proof(pipeline::read_file(p.proof)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MalformedProof) throw;
    std::cerr << "proof: " << e.what() << "\n";
  }
  std::cout << (ok ? "accepted" : "rejected") << "\n";
  return ok ? kAccept : kReject;
}

int cmd_script(const Paths& p, const PipelineConfig& cfg) {
  auto vk = crypto::parse_verification_key(pipeline::read_file(p.vk));
  auto proof = crypto::parse_proof(pipeline::read_file(p.proof));
  auto x = pipeline::read_values(p.inputs, cfg.bit_width);
  auto y = pipeline::read_values(p.outputs, cfg.bit_width);
  auto b = pipeline::make_bundle(vk, proof, x, y, cfg);
  pipeline::write_file(p.bundle, pipeline::serialize(b));
  const chain::Script& lock = b.funding.outputs[0].locking;
  const chain::Script& unlock = b.spending.inputs[0].unlocking;
  const chain::Script redeem = chain::parse_script(unlock.items.back().data);
  if (!p.scripts_dir.empty()) {
    std::filesystem::create_directories(p.scripts_dir);
    const std::filesystem::path dir(p.scripts_dir);
    pipeline::write_file((dir / "locking.txt").string(), chain::to_text(lock));
    pipeline::write_file((dir / "redeem.txt").string(), chain::to_text(redeem));
    pipeline::write_file((dir / "unlocking.txt").string(), chain::to_text(unlock));
  }
  const std::size_t vk_bytes = crypto::serialize(vk).size();
  std::cout << "vk_bytes " << vk_bytes << " chunks " << (vk_bytes + cfg.max_push - 1) / cfg.max_push
            << " locking " << chain::serialize(lock).size() << " redeem "
            << chain::serialize(redeem).size() << " unlocking " << chain::serialize(unlock).size()
            << "\n";
  return kAccept;
}

int cmd_run_chain(const Paths& p) {
  chain::ExecutionResult r;
  try {
    r = pipeline::run_chain(pipeline::parse_bundle(pipeline::read_file(p.bundle)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DeserializeError) throw;
    r = {false, e.what()};
  }
  if (r.accepted) {
    std::cout << "accepted\n";
  } else {
    std::cout << "rejected: " << r.reason << "\n";
  }
  return r.accepted ? kAccept : kReject;
}

int cmd_all(Paths p, const PipelineConfig& cfg) {
  std::filesystem::create_directories(p.work_dir);
  const std::filesystem::path dir(p.work_dir);
  auto at = [&](const char* name) { return (dir / name).string(); };
  p.out = at("circuit.txt");
  if (int rc = cmd_compile(p, cfg)) return rc;
  p.circuit = p.out;
  p.out = at("circuit.min.txt");
  p.report = at("minimize.report");
  if (int rc = cmd_minimize(p, cfg)) return rc;
  p.circuit = p.out;
  p.ek = at("ek.txt");
  p.vk = at("vk.txt");
  p.qap = at("qap.txt");
  if (int rc = cmd_setup(p, cfg)) return rc;
  p.proof = at("proof.txt");
  p.outputs = at("outputs.txt");
  if (int rc = cmd_prove(p, cfg)) return rc;
  PipelineConfig vcfg = cfg;
  vcfg.bit_width = load_circuit(p.circuit).bit_width;
  if (int rc = cmd_verify(p, vcfg)) return rc;
  p.bundle = at("bundle.json");
  p.scripts_dir = at("scripts");
  if (int rc = cmd_script(p, vcfg)) return rc;
  return cmd_run_chain(p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vcc: verifiable computation for C contracts"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with pipeline settings");

  PipelineConfig cfg;
  std::string strategy = "lpt";
  app.add_option("--bit-width,--bit_width,--bitwidth", cfg.bit_width, "Integer width n")
      ->capture_default_str();
  app.add_option("--field-modulus,--field_modulus", cfg.field_modulus, "Prime field modulus")
      ->capture_default_str();
  app.add_option("--max-unroll,--max_unroll", cfg.max_unroll, "Loop unrolling bound")
      ->capture_default_str();
  app.add_option("--cores", cfg.cores, "Minimizer worker threads")->capture_default_str();
  app.add_option("--strategy,--minimize-strategy,--minimize_strategy", strategy,
                 "Submodule schedule")
      ->check(CLI::IsMember({"lpt", "round-robin"}))
      ->capture_default_str();
  app.add_option("--max-push,--max_push", cfg.max_push, "Largest script push in bytes")
      ->capture_default_str();
  app.add_option("--max-script,--max_script", cfg.max_script, "Largest script in bytes")
      ->capture_default_str();
  app.add_option("--seed,--rng-seed,--rng_seed", cfg.rng_seed, "Key generation seed")
      ->capture_default_str();
  app.add_option("--backend", cfg.backend, "Pairing backend (mock, mock-scaled)")
      ->capture_default_str();

  Paths p;
  auto* compile = app.add_subcommand("compile", "C contract -> circuit");
  compile->add_option("sources", p.sources, "Main file first, then includable files")
      ->required()
      ->check(CLI::ExistingFile);
  compile->add_option("-o,--out", p.out, "Circuit file")->required();
  compile->add_option("-D,--define", p.defines, "NAME or NAME=VALUE");
  compile->add_option("--entry", p.entry, "Entry function")->capture_default_str();

  auto* minimize = app.add_subcommand("minimize", "Logic minimization of a circuit");
  minimize->add_option("circuit", p.circuit)->required()->check(CLI::ExistingFile);
  minimize->add_option("-o,--out", p.out, "Minimized circuit file")->required();
  minimize->add_option("--report", p.report, "Report file (default: stdout)");

  auto* setup = app.add_subcommand("setup", "Generate evaluation and verification keys");
  setup->add_option("circuit", p.circuit)->required()->check(CLI::ExistingFile);
  setup->add_option("--ek", p.ek, "Evaluation key file")->required();
  setup->add_option("--vk", p.vk, "Verification key file")->required();
  setup->add_option("--qap", p.qap, "Also write the QAP");

  auto* prove = app.add_subcommand("prove", "Evaluate the circuit and produce a proof");
  prove->add_option("circuit", p.circuit)->required()->check(CLI::ExistingFile);
  prove->add_option("--ek", p.ek)->required()->check(CLI::ExistingFile);
  prove->add_option("--inputs", p.inputs, "One decimal per line")->required()->check(CLI::ExistingFile);
  prove->add_option("--proof", p.proof, "Proof file")->required();
  prove->add_option("--outputs", p.outputs, "Outputs file")->required();
  prove->add_flag("--tamper-witness", p.tamper_witness, "Corrupt the witness (testing)");

  auto* verify = app.add_subcommand("verify", "Check a proof against public values");
  verify->add_option("--vk", p.vk)->required()->check(CLI::ExistingFile);
  verify->add_option("--inputs", p.inputs)->required()->check(CLI::ExistingFile);
  verify->add_option("--outputs", p.outputs)->required()->check(CLI::ExistingFile);
  verify->add_option("--proof", p.proof)->required()->check(CLI::ExistingFile);

  auto* script = app.add_subcommand("script", "Build funding and spending transactions");
  script->add_option("--vk", p.vk)->required()->check(CLI::ExistingFile);
  script->add_option("--proof", p.proof)->required()->check(CLI::ExistingFile);
  script->add_option("--inputs", p.inputs)->required()->check(CLI::ExistingFile);
  script->add_option("--outputs", p.outputs)->required()->check(CLI::ExistingFile);
  script->add_option("-o,--out", p.bundle, "Transaction bundle file")->required();
  script->add_option("--scripts-dir", p.scripts_dir, "Also write scripts in text form");

  auto* run_chain = app.add_subcommand("run-chain", "Validate a transaction bundle");
  run_chain->add_option("bundle", p.bundle)->required()->check(CLI::ExistingFile);

  auto* all = app.add_subcommand("all", "Run every stage on a contract");
  all->add_option("sources", p.sources)->required()->check(CLI::ExistingFile);
  all->add_option("--inputs", p.inputs)->required()->check(CLI::ExistingFile);
  all->add_option("--work-dir", p.work_dir)->capture_default_str();
  all->add_option("-D,--define", p.defines, "NAME or NAME=VALUE");
  all->add_option("--entry", p.entry)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    cfg.minimize_strategy = minimizer::parse_strategy(strategy);
    pipeline::validate(cfg);
    if (*compile) return cmd_compile(p, cfg);
    if (*minimize) return cmd_minimize(p, cfg);
    if (*setup) return cmd_setup(p, cfg);
    if (*prove) return cmd_prove(p, cfg);
    if (*verify) return cmd_verify(p, cfg);
    if (*script) return cmd_script(p, cfg);
    if (*run_chain) return cmd_run_chain(p);
    if (*all) return cmd_all(p, cfg);
  } catch (const Error& e) {
    report_error(e);
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
