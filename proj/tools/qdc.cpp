#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdc/circuit.hpp"
#include "qdc/core.hpp"
#include "qdc/densecoding.hpp"
#include "qdc/equivalence.hpp"
#include "qdc/rewrite.hpp"

namespace {

struct CliConfig {
  int d = 2;
  double tolerance = qdc::kDefaultTolerance;
  std::string output = "text";
  std::string ascii = "unicode";
};

std::string format_deviation(double dev) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", dev);
  return buf;
}

std::string format_amplitude(qdc::Complex a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+.6g%+.6gi", a.real(), a.imag());
  return buf;
}

std::string format_ket(const qdc::BasisState& ket) {
  std::string out = "|";
  for (int i = 0; i < ket.wires(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(ket.digits[static_cast<std::size_t>(i)]);
  }
  out += '>';
  return out;
}

struct Check {
  std::string name;
  double deviation;
};

int cmd_identities(const CliConfig& cfg) {
  const qdc::Dim dim(cfg.d);
  std::vector<Check> checks;

  for (qdc::GateKind kind : {qdc::GateKind::H, qdc::GateKind::X, qdc::GateKind::Z,
                             qdc::GateKind::CX, qdc::GateKind::CZ}) {
    for (bool dagger : {false, true}) {
      const qdc::Gate g = qdc::arity(kind) == 1
                              ? qdc::Gate{kind, {0, -1}, dagger}
                              : qdc::Gate{kind, {0, 1}, dagger};
      const qdc::Matrix m = qdc::gate_matrix(g, dim);
      const double dev = qdc::max_abs_diff(
          qdc::multiply(m, qdc::conjugate_transpose(m)), qdc::identity_matrix(m.size()));
      checks.push_back({std::string(qdc::kind_name(kind)) + (dagger ? "'" : "") +
                            " unitarity",
                        dev});
    }
  }

  const qdc::Circuit lhs(dim, 2, {qdc::Gate::cx(0, 1), qdc::Gate::h(1)});
  const qdc::Circuit rhs(dim, 2, {qdc::Gate::h(1), qdc::Gate::cz(0, 1, true)});
  checks.push_back(
      {"coupling conjugation", qdc::unitary_equal(lhs, rhs, cfg.tolerance).max_deviation});

  const qdc::Circuit coupling(dim, 2, {qdc::Gate::cx(0, 1)});
  checks.push_back({"coupling expansion round-trip",
                    qdc::unitary_equal(coupling, qdc::expand_cx(coupling, 0),
                                       cfg.tolerance)
                        .max_deviation});

  if (cfg.d == 2) {
    const qdc::Matrix h = qdc::gate_matrix(qdc::Gate::h(0), dim);
    const qdc::Matrix z = qdc::gate_matrix(qdc::Gate::z(0), dim);
    const qdc::Matrix x = qdc::gate_matrix(qdc::Gate::x(0), dim);
    checks.push_back(
        {"X = H Z H", qdc::max_abs_diff(x, qdc::multiply(h, qdc::multiply(z, h)))});
  }

  bool all_pass = true;
  for (const Check& c : checks) all_pass = all_pass && c.deviation <= cfg.tolerance;

  if (cfg.output == "json") {
    nlohmann::json list = nlohmann::json::array();
    for (const Check& c : checks) {
      list.push_back({{"name", c.name},
                      {"deviation", c.deviation},
                      {"pass", c.deviation <= cfg.tolerance}});
    }
    const nlohmann::json j = {{"d", cfg.d},
                              {"tolerance", cfg.tolerance},
                              {"checks", std::move(list)},
                              {"pass", all_pass}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "d = " << cfg.d << ", tolerance = " << cfg.tolerance << "\n";
    for (const Check& c : checks) {
      const bool pass = c.deviation <= cfg.tolerance;
      std::printf("%s  %-30s max deviation %s\n", pass ? "PASS" : "FAIL",
                  c.name.c_str(), format_deviation(c.deviation).c_str());
    }
    std::cout << (all_pass ? "all identities hold" : "identity check FAILED") << "\n";
  }
  return all_pass ? 0 : 1;
}

int cmd_deconstruct(const CliConfig& cfg, const std::string& emit_path) {
  const qdc::Dim dim(cfg.d);
  const qdc::DeconstructionTrace trace = qdc::deconstruct_pipeline(dim);
  const std::string trace_json = qdc::to_json(trace);

  if (!emit_path.empty()) {
    std::ofstream out(emit_path, std::ios::binary);
    if (!out) {
      throw std::invalid_argument("cannot open " + emit_path + " for writing");
    }
    out << trace_json << "\n";
  }

  if (cfg.output == "json") {
    std::cout << trace_json << "\n";
    return 0;
  }

  const bool unicode = cfg.ascii == "unicode";
  for (std::size_t i = 0; i < trace.stages.size(); ++i) {
    const char label = static_cast<char>('a' + i);
    std::cout << "stage " << label << ":\n"
              << qdc::render_ascii(trace.stages[i], unicode);
    if (i < trace.steps.size()) {
      const qdc::RewriteStep& step = trace.steps[i];
      std::cout << "step " << label << "->" << static_cast<char>(label + 1) << "  "
                << qdc::rule_name(step.rule) << "  positions [";
      for (std::size_t p = 0; p < step.positions.size(); ++p) {
        std::cout << (p > 0 ? "," : "") << step.positions[p];
      }
      std::cout << "]  " << (step.verification.pass ? "PASS" : "FAIL")
                << "  max deviation "
                << format_deviation(step.verification.max_deviation) << "\n";
    }
    std::cout << "\n";
  }
  std::cout << "all " << trace.steps.size() << " steps verified\n";
  return 0;
}

int cmd_protocol(const CliConfig& cfg, int x, int y, int shots, std::uint64_t seed) {
  const qdc::Dim dim(cfg.d);
  const qdc::Message m{x, y};
  const qdc::ProtocolOutcome outcome = qdc::run_protocol(dim, m);

  const qdc::Circuit automated = qdc::deconstruction_stages(dim).back();
  const qdc::StateVector automated_out =
      qdc::run(automated, qdc::BasisState({x, y, 0, 0}));
  const double automated_dev = qdc::max_abs_diff(
      automated_out, qdc::StateVector::basis(dim, 4, qdc::BasisState({x, y, x, y})));

  const bool pass = outcome.decoded == m &&
                    std::abs(outcome.probability - 1.0) <= cfg.tolerance &&
                    automated_dev <= cfg.tolerance;

  std::map<std::string, int> counts;
  if (shots > 0) {
    std::mt19937_64 rng(seed);
    for (int s = 0; s < shots; ++s) {
      const double u =
          static_cast<double>(rng() >> 11) * 0x1.0p-53;
      double cumulative = 0.0;
      std::size_t picked = outcome.final_state.size() - 1;
      for (std::size_t i = 0; i < outcome.final_state.size(); ++i) {
        cumulative += std::norm(outcome.final_state.amplitudes()[i]);
        if (u < cumulative) {
          picked = i;
          break;
        }
      }
      ++counts[format_ket(qdc::BasisState::from_index(dim, 2, picked))];
    }
  }

  if (cfg.output == "json") {
    nlohmann::json j = nlohmann::json::parse(qdc::to_json(outcome));
    j["automated_deviation"] = automated_dev;
    if (shots > 0) {
      nlohmann::json samples = nlohmann::json::object();
      for (const auto& [ket, count] : counts) samples[ket] = count;
      j["shots"] = std::move(samples);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("d = %d  sent (x=%d, y=%d)  decoded (x=%d, y=%d)  probability %.6f\n",
                cfg.d, m.x, m.y, outcome.decoded.x, outcome.decoded.y,
                outcome.probability);
    std::printf("automated circuit %s: |%d,%d,0,0> -> |%d,%d,%d,%d>  max deviation %s\n",
                automated_dev <= cfg.tolerance ? "agrees" : "DISAGREES", m.x, m.y,
                m.x, m.y, m.x, m.y, format_deviation(automated_dev).c_str());
    if (shots > 0) {
      std::cout << shots << " shots (seed " << seed << "):";
      for (const auto& [ket, count] : counts) {
        std::cout << "  " << ket << " x " << count;
      }
      std::cout << "\n";
    }
  }
  return pass ? 0 : 1;
}

int cmd_bell(const CliConfig& cfg) {
  const qdc::Dim dim(cfg.d);
  const std::vector<qdc::StateVector> states = qdc::bell_basis(dim);
  const double diag = 1.0 / std::sqrt(static_cast<double>(cfg.d));

  double max_off = 0.0;
  double max_diag_dev = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      qdc::Complex overlap{};
      for (std::size_t k = 0; k < states[i].size(); ++k) {
        overlap += std::conj(states[i].amplitudes()[k]) * states[j].amplitudes()[k];
      }
      if (i == j) {
        max_diag_dev = std::max(max_diag_dev, std::abs(overlap - qdc::Complex{1.0, 0.0}));
      } else {
        max_off = std::max(max_off, std::abs(overlap));
      }
    }
  }
  const bool pass = max_off <= cfg.tolerance && max_diag_dev <= cfg.tolerance;

  if (cfg.output == "json") {
    nlohmann::json list = nlohmann::json::array();
    for (int x = 0; x < cfg.d; ++x) {
      for (int y = 0; y < cfg.d; ++y) {
        const qdc::StateVector& s = states[static_cast<std::size_t>(x * cfg.d + y)];
        nlohmann::json amps = nlohmann::json::array();
        for (const qdc::Complex& a : s.amplitudes()) {
          amps.push_back({a.real(), a.imag()});
        }
        list.push_back({{"x", x}, {"y", y}, {"amplitudes", std::move(amps)}});
      }
    }
    const nlohmann::json j = {{"d", cfg.d},
                              {"states", std::move(list)},
                              {"max_off_diagonal", max_off},
                              {"max_diagonal_deviation", max_diag_dev},
                              {"pass", pass}};
    std::cout << j.dump(2) << "\n";
  } else {
    for (int x = 0; x < cfg.d; ++x) {
      for (int y = 0; y < cfg.d; ++y) {
        const qdc::StateVector& s = states[static_cast<std::size_t>(x * cfg.d + y)];
        std::cout << "(x=" << x << ", y=" << y << ")";
        for (std::size_t k = 0; k < s.size(); ++k) {
          const qdc::Complex a = s.amplitudes()[k];
          if (std::abs(a) == 0.0) continue;
          std::cout << "  " << format_amplitude(a) << " "
                    << format_ket(qdc::BasisState::from_index(dim, 2, k));
          if (std::abs(a - qdc::Complex{diag, 0.0}) < 1e-12) {
            std::cout << " [+1/sqrt(" << cfg.d << ")]";
          } else if (std::abs(a + qdc::Complex{diag, 0.0}) < 1e-12) {
            std::cout << " [-1/sqrt(" << cfg.d << ")]";
          }
        }
        std::cout << "\n";
      }
    }
    std::cout << "max off-diagonal overlap " << format_deviation(max_off)
              << ", max diagonal deviation " << format_deviation(max_diag_dev) << "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qudit dense-coding deconstruction toolkit"};
  app.require_subcommand(1);

  CliConfig cfg;
  int x = 0;
  int y = 0;
  int shots = 0;
  std::uint64_t seed = 1;
  std::string emit_path;

  const auto add_common = [&cfg](CLI::App* sub, bool with_ascii) {
    sub->add_option("--d", cfg.d, "qudit dimension")->check(CLI::Range(2, 16));
    sub->add_option("--tolerance", cfg.tolerance, "comparison tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--output", cfg.output, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    if (with_ascii) {
      sub->add_option("--ascii", cfg.ascii, "circuit drawing charset")
          ->check(CLI::IsMember({"unicode", "plain"}));
    }
  };

  CLI::App* identities =
      app.add_subcommand("identities", "verify the gate identities at the configured dimension");
  add_common(identities, false);

  CLI::App* deconstruct =
      app.add_subcommand("deconstruct", "run and verify the six-stage deconstruction");
  add_common(deconstruct, true);
  deconstruct->add_option("--emit-json", emit_path, "write the trace JSON to this path");

  CLI::App* protocol =
      app.add_subcommand("protocol", "transmit one two-digit message and decode it");
  add_common(protocol, false);
  protocol->add_option("--x", x, "phase digit");
  protocol->add_option("--y", y, "rotation digit");
  protocol->add_option("--shots", shots, "sample the readout distribution")
      ->check(CLI::NonNegativeNumber);
  protocol->add_option("--seed", seed, "sampler seed");

  CLI::App* bell = app.add_subcommand("bell", "list the encoded basis states and their overlaps");
  add_common(bell, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (identities->parsed()) return cmd_identities(cfg);
    if (deconstruct->parsed()) return cmd_deconstruct(cfg, emit_path);
    if (protocol->parsed()) return cmd_protocol(cfg, x, y, shots, seed);
    if (bell->parsed()) return cmd_bell(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
