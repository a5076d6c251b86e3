// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <CLI11.hpp>

#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qpend/envelope.hpp"
#include "qpend/errors.hpp"
#include "qpend/experiments.hpp"
#include "qpend/json_io.hpp"
#include "qpend/newton.hpp"
#include "qpend/parser.hpp"

namespace {

using namespace qpend;

// Exit codes: 0 success, 1 usage error, 2 input parse error, 3 numerical
// guard tripped.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitGuard = 3;

std::optional<Circuit> load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << path << ": error: cannot open file\n";
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ParseResult pr = parse_circuit(buf.str());
  if (!pr.ok()) {
    for (const ParseError& e : pr.errors) {
      std::cerr << path << ":" << e.line << ":" << e.column
                << ": error: " << e.message << "\n";
    }
    return std::nullopt;
  }
  return *pr.circuit;
}

std::optional<Json> load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << path << ": error: cannot open file\n";
    return std::nullopt;
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    std::cerr << path << ": error: " << e.what() << "\n";
    return std::nullopt;
  }
}

Json records_json(const std::vector<MeasurementRecord>& records) {
  Json out = Json::array();
  for (const MeasurementRecord& rec : records) out.push_back(to_json(rec));
  return out;
}

// Runs `body(i)` for i in [0, count) on `threads` workers, collecting one
// string per index; output order is the index order regardless of thread
// interleaving. Exceptions are re-thrown on the calling thread.
std::vector<std::string> ordered_parallel(
    long count, int threads, const std::function<std::string(long)>& body) {
  std::vector<std::string> out(static_cast<std::size_t>(count));
  if (threads <= 1) {
    for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = body(i);
    return out;
  }
  std::atomic<long> next{0};
  std::exception_ptr first_error = nullptr;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[static_cast<std::size_t>(i)] = body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

struct RunOpts {
  std::string file;
  long shots = 1;
  std::uint64_t seed = 0;
  std::string backend = "envelope";
  double ratio = 0.01;
  int steps = 320;
  int threads = 1;
};

int do_run(const RunOpts& o) {
  std::optional<Circuit> c = load_circuit(o.file);
  if (!c) return kExitParse;

  const bool mechanical = o.backend == "newton";
  ControlSchedule sched;
  IntegratorConfig cfg;
  if (mechanical) {
    sched = compile_circuit(*c, params_for_ratio(o.ratio));
    cfg.steps_per_carrier_period = o.steps;
  }

  auto line_for = [&](long shot) {
    const std::uint64_t stream =
        shot_stream_seed(o.seed, static_cast<std::uint64_t>(shot));
    ShotRng rng(stream);
    Json line;
    line["shot"] = shot;
    line["seed"] = stream;
    line["backend"] = o.backend;
    if (mechanical) {
      NewtonRunResult r =
          simulate_schedule(init_ground(c->n_qubits), sched, cfg, &rng);
      line["outcome_bits"] = r.outcome_bits;
      line["records"] = records_json(r.records);
      line["state"] = to_json(r.state);
      line["envelope_norm"] = r.envelope_norm;
      line["max_drift_per_period"] = r.max_drift_per_period;
    } else {
      RunResult r = run_circuit(*c, rng);
      line["outcome_bits"] = r.outcome_bits;
      line["records"] = records_json(r.records);
      line["state"] = to_json(r.state);
    }
    return line.dump();
  };

  for (const std::string& line : ordered_parallel(o.shots, o.threads, line_for)) {
    std::cout << line << "\n";
  }
  return kExitOk;
}

struct CompileOpts {
  std::string file;
  double ratio = 0.01;
  std::string output;
};

int do_compile(const CompileOpts& o) {
  std::optional<Circuit> c = load_circuit(o.file);
  if (!c) return kExitParse;
  ControlSchedule sched = compile_circuit(*c, params_for_ratio(o.ratio));
  const std::string text = to_json(sched).dump(2) + "\n";
  if (o.output.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(o.output);
  if (!out) {
    std::cerr << o.output << ": error: cannot write file\n";
    return kExitUsage;
  }
  out << text;
  return kExitOk;
}

struct NewtonOpts {
  std::string schedule_file;
  double ratio = 0.0;  // 0 keeps the schedule's own parameters
  int steps = 320;
  std::string trace_file;
  std::uint64_t seed = 0;
};

int do_newton(const NewtonOpts& o) {
  std::optional<Json> doc = load_json(o.schedule_file);
  if (!doc) return kExitParse;
  ControlSchedule sched;
  try {
    sched = schedule_from_json(*doc);
  } catch (const std::exception& e) {
    std::cerr << o.schedule_file << ": error: " << e.what() << "\n";
    return kExitParse;
  }
  if (o.ratio > 0.0) {
    sched = rescale_schedule(sched, o.ratio * sched.params.omega0);
  }
  IntegratorConfig cfg;
  cfg.steps_per_carrier_period = o.steps;

  std::ofstream trace_out;
  TraceSink sink;
  const TraceSink* sink_ptr = nullptr;
  if (!o.trace_file.empty()) {
    trace_out.open(o.trace_file);
    if (!trace_out) {
      std::cerr << o.trace_file << ": error: cannot write file\n";
      return kExitUsage;
    }
    trace_out << std::setprecision(17) << "time";
    const long n_pend = 1L << sched.n_qubits;
    for (long k = 1; k <= n_pend; ++k) trace_out << ",e" << k;
    trace_out << ",total\n";
    sink = [&trace_out](double t, const Eigen::VectorXd& energies,
                        double total) {
      trace_out << t;
      for (Eigen::Index k = 0; k < energies.size(); ++k) {
        trace_out << "," << energies(k);
      }
      trace_out << "," << total << "\n";
    };
    sink_ptr = &sink;
  }

  const std::uint64_t stream = shot_stream_seed(o.seed, 0);
  ShotRng rng(stream);
  NewtonRunResult res =
      simulate_schedule(init_ground(sched.n_qubits), sched, cfg, &rng, sink_ptr);

  // Envelope reference over the same schedule and draw stream: measurement
  // branches match, so the fidelity isolates the mechanical error.
  ShotRng env_rng(stream);
  RunResult env = run_schedule(sched, env_rng);

  Json j = to_json(res);
  j["fidelity_vs_envelope"] = fidelity(res.state.amplitudes, env.state.amplitudes);
  j["steps_per_carrier_period"] = o.steps;
  j["params"] = to_json(sched.params);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

struct ChshOpts {
  long shots = 200000;
  std::uint64_t seed = 0;
  bool exact = false;
  std::vector<double> angles = {kChshOptimalA[0], kChshOptimalA[1],
                                kChshOptimalB[0], kChshOptimalB[1]};
};

int do_chsh(const ChshOpts& o) {
  const std::array<double, 2> a{o.angles[0], o.angles[1]};
  const std::array<double, 2> b{o.angles[2], o.angles[3]};
  const ChshResult res =
      o.exact ? run_chsh_exact(a, b) : run_chsh_sampled(a, b, o.shots, o.seed);
  std::cout << to_json(res).dump(2) << "\n";
  return kExitOk;
}

struct AnticorrOpts {
  std::vector<double> axis = {0.0, 0.0};
  long shots = 10000;
  std::uint64_t seed = 0;
};

struct BitflipOpts {
  std::vector<int> flips;
  std::uint64_t seed = 0;
};

struct SweepOpts {
  std::vector<double> ratios = {0.04, 0.02, 0.01};
  int states = 10;
  std::uint64_t seed = 0;
  int steps = 200;
  int threads = 1;
};

int do_sweep(const SweepOpts& o) {
  IntegratorConfig cfg;
  cfg.steps_per_carrier_period = o.steps;

  SweepResult res;
  if (o.threads <= 1 || o.ratios.size() == 1) {
    res = gate_fidelity_sweep(o.ratios, o.states, o.seed, cfg);
  } else {
    // Grid points are independent (initial states depend only on the seed
    // and the case), so run one single-ratio sweep per point and merge the
    // cells back in grid order.
    std::vector<SweepResult> parts(o.ratios.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error = nullptr;
    std::mutex error_mu;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= o.ratios.size()) return;
        try {
          parts[i] = gate_fidelity_sweep({o.ratios[i]}, o.states, o.seed, cfg);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const int n_workers =
        std::min<int>(o.threads, static_cast<int>(o.ratios.size()));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    res = parts.front();
    res.ratios = o.ratios;
    res.all_monotone = true;
    res.min_fidelity_finest = 1.0;
    for (std::size_t ci = 0; ci < res.cases.size(); ++ci) {
      SweepCaseResult& cr = res.cases[ci];
      cr.cells.clear();
      for (const SweepResult& part : parts) {
        cr.cells.push_back(part.cases[ci].cells.front());
      }
      cr.monotone = true;
      for (std::size_t i = 1; i < cr.cells.size(); ++i) {
        const double prev = cr.cells[i - 1].mean_infidelity;
        if (cr.cells[i].mean_infidelity >
            std::max(prev, kSweepInfidelityFloor)) {
          cr.monotone = false;
        }
      }
      res.all_monotone = res.all_monotone && cr.monotone;
      res.min_fidelity_finest =
          std::min(res.min_fidelity_finest, cr.cells.back().min_fidelity);
    }
  }
  std::cout << to_json(res).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum circuits on classical coupled pendulums"};
  app.require_subcommand(1);

  RunOpts run_opts;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Run a circuit shot by shot, JSON line each");
  run_cmd->add_option("circuit", run_opts.file, "Circuit file")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--shots", run_opts.shots, "Number of shots")
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  run_cmd->add_option("--seed", run_opts.seed, "Master seed")
      ->capture_default_str();
  run_cmd
      ->add_option("--backend", run_opts.backend,
                   "State backend: envelope (rotating frame) or newton "
                   "(mechanical integration)")
      ->check(CLI::IsMember({"envelope", "newton"}))
      ->capture_default_str();
  run_cmd
      ->add_option("--ratio", run_opts.ratio,
                   "Detuning budget over carrier frequency (newton backend)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd
      ->add_option("--steps-per-period", run_opts.steps,
                   "Integrator steps per carrier period (newton backend)")
      ->check(CLI::Range(16, 1000000))
      ->capture_default_str();
  run_cmd->add_option("--threads", run_opts.threads, "Worker threads for shots")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  CompileOpts compile_opts;
  CLI::App* compile_cmd =
      app.add_subcommand("compile", "Compile a circuit to a control schedule");
  compile_cmd->add_option("circuit", compile_opts.file, "Circuit file")
      ->required()
      ->check(CLI::ExistingFile);
  compile_cmd
      ->add_option("--ratio", compile_opts.ratio,
                   "Detuning budget over carrier frequency")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  compile_cmd
      ->add_option("-o,--output", compile_opts.output,
                   "Write the schedule here instead of stdout");

  NewtonOpts newton_opts;
  CLI::App* newton_cmd = app.add_subcommand(
      "newton", "Integrate a control schedule mechanically and report");
  newton_cmd
      ->add_option("--schedule", newton_opts.schedule_file, "Schedule JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  newton_cmd
      ->add_option("--ratio", newton_opts.ratio,
                   "Rescale the schedule to this budget ratio before running")
      ->check(CLI::PositiveNumber);
  newton_cmd
      ->add_option("--steps-per-period", newton_opts.steps,
                   "Integrator steps per carrier period")
      ->check(CLI::Range(16, 1000000))
      ->capture_default_str();
  newton_cmd->add_option("--trace", newton_opts.trace_file,
                         "Write a per-step CSV energy trace here");
  newton_cmd->add_option("--seed", newton_opts.seed, "Master seed")
      ->capture_default_str();

  ChshOpts chsh_opts;
  CLI::App* chsh_cmd =
      app.add_subcommand("chsh", "CHSH test on singlet pendulum pairs");
  chsh_cmd->add_option("--shots", chsh_opts.shots, "Shots per setting")
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  chsh_cmd->add_option("--seed", chsh_opts.seed, "Master seed")
      ->capture_default_str();
  chsh_cmd->add_flag("--exact", chsh_opts.exact,
                     "Exact distributions instead of sampling");
  chsh_cmd
      ->add_option("--angles", chsh_opts.angles,
                   "Analyzer angles a1,a2,b1,b2 (radians)")
      ->delimiter(',')
      ->expected(4);

  AnticorrOpts anticorr_opts;
  CLI::App* anticorr_cmd = app.add_subcommand(
      "anticorr", "Same-axis anti-correlation of a singlet pair");
  anticorr_cmd
      ->add_option("--axis", anticorr_opts.axis,
                   "Measurement axis theta,phi (radians)")
      ->delimiter(',')
      ->expected(2);
  anticorr_cmd->add_option("--shots", anticorr_opts.shots, "Number of shots")
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  anticorr_cmd->add_option("--seed", anticorr_opts.seed, "Master seed")
      ->capture_default_str();

  CLI::App* fig3_cmd = app.add_subcommand(
      "fig3", "Worked singlet example: quarter-turn, measure, readout");

  BitflipOpts bitflip_opts;
  CLI::App* bitflip_cmd = app.add_subcommand(
      "bitflip", "Three-pair repetition code demonstration");
  bitflip_cmd
      ->add_option("--flip", bitflip_opts.flips,
                   "Qubits to flip between encode and decode")
      ->delimiter(',')
      ->check(CLI::Range(0, 2));
  bitflip_cmd->add_option("--seed", bitflip_opts.seed, "Master seed")
      ->capture_default_str();

  SweepOpts sweep_opts;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Gate fidelity versus detuning ratio, mechanical backend");
  sweep_cmd->add_option("--ratios", sweep_opts.ratios, "Budget ratio grid")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--states", sweep_opts.states, "Random states per case")
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep_opts.seed, "Master seed")
      ->capture_default_str();
  sweep_cmd
      ->add_option("--steps-per-period", sweep_opts.steps,
                   "Integrator steps per carrier period")
      ->check(CLI::Range(16, 1000000))
      ->capture_default_str();
  sweep_cmd
      ->add_option("--threads", sweep_opts.threads,
                   "Worker threads for grid points")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return do_run(run_opts);
    if (compile_cmd->parsed()) return do_compile(compile_opts);
    if (newton_cmd->parsed()) return do_newton(newton_opts);
    if (chsh_cmd->parsed()) return do_chsh(chsh_opts);
    if (anticorr_cmd->parsed()) {
      const AnticorrResult res = run_anticorrelation(
          anticorr_opts.axis[0], anticorr_opts.axis[1], anticorr_opts.shots,
          anticorr_opts.seed);
      std::cout << to_json(res).dump(2) << "\n";
      return kExitOk;
    }
    if (fig3_cmd->parsed()) {
      std::cout << to_json(fig3_trace()).dump(2) << "\n";
      return kExitOk;
    }
    if (bitflip_cmd->parsed()) {
      const BitflipReport rep =
          run_bitflip_demo(bitflip_opts.flips, bitflip_opts.seed);
      std::cout << to_json(rep).dump(2) << "\n";
      return kExitOk;
    }
    if (sweep_cmd->parsed()) return do_sweep(sweep_opts);
  } catch (const NumericalGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
