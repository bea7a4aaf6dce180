// Copyright 2026 The Framekit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "framekit/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "framekit/analysis.hpp"
#include "framekit/completion.hpp"
#include "framekit/eigensteps.hpp"
#include "framekit/error.hpp"
#include "framekit/io.hpp"
#include "framekit/synthesis.hpp"

namespace framekit {
namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::string table;
  std::string output;
  std::string frame_output;
  std::string u1;
  std::string config;
  std::string format;
  std::string kind = "outer";
  std::string to;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  double sigma2 = 1.0;
  std::size_t trials = 0;
  std::size_t samples = 100000;
  std::size_t restarts = 8;
  bool oracle = false;
  bool pretty = false;
  std::string noise = "gaussian";
  std::string mu;
  std::string lambda;
  std::string rule = "first";
  unsigned threads = 1;
};

// Raised for reports that fail validation; carries the JSON report.
struct ValidationFailure {
  Json report;
};

std::string ReadText(const std::string& path, const char* what) {
  if (path.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("missing ") + what + " path");
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool IsJson(const RunConfig& cfg, const std::string& path) {
  if (!cfg.format.empty()) return cfg.format == "json";
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

bool OutputJson(const RunConfig& cfg, bool fallback) {
  if (cfg.format.empty()) return fallback;
  return cfg.format == "json";
}

// Runs `parse` on the contents of `path`, prefixing failures with the path.
template <typename Fn>
auto Load(const std::string& path, const char* what, Fn parse) {
  const std::string text = ReadText(path, what);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

std::optional<NormSequence> MuOverride(const RunConfig& cfg) {
  if (cfg.mu.empty()) return std::nullopt;
  return NormSequence(ParseNumberList(cfg.mu));
}

Frame LoadFrame(const RunConfig& cfg, const std::string& path) {
  return Load(path, "frame", [&](const std::string& text) {
    if (IsJson(cfg, path)) return FrameFromJson(Json::parse(text));
    std::istringstream in(text);
    return ReadFrameCsv(in);
  });
}

OuterEigenstepTable LoadOuter(const RunConfig& cfg, const std::string& path) {
  return Load(path, "table", [&](const std::string& text) {
    OuterEigenstepTable t;
    if (IsJson(cfg, path)) {
      t = OuterFromJson(Json::parse(text));
      if (auto mu = MuOverride(cfg)) t.mu = *mu;
    } else {
      std::istringstream in(text);
      t = ReadOuterCsv(in, MuOverride(cfg));
    }
    if (t.mu.size() != t.N) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "number of norms differs from N");
    }
    return t;
  });
}

InnerEigenstepTable LoadInner(const RunConfig& cfg, const std::string& path) {
  return Load(path, "table", [&](const std::string& text) {
    InnerEigenstepTable t;
    if (IsJson(cfg, path)) {
      t = InnerFromJson(Json::parse(text));
      if (auto mu = MuOverride(cfg)) t.mu = *mu;
    } else {
      std::istringstream in(text);
      t = ReadInnerCsv(in, MuOverride(cfg));
    }
    if (t.mu.size() != t.N) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "number of norms differs from N");
    }
    return t;
  });
}

Json Provenance(const RunConfig& cfg, std::optional<double> tol) {
  Json j{{"command", cfg.command}, {"seed", cfg.seed}};
  j["tol"] = tol ? Json(*tol) : Json(nullptr);
  return j;
}

std::string CsvHeader(const RunConfig& cfg, std::optional<double> tol) {
  std::string line = "# framekit " + cfg.command + " seed=" +
                     std::to_string(cfg.seed);
  if (tol) line += " tol=" + FormatNumber(*tol);
  return line + "\n";
}

void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + path);
  file << text;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

Json WithReport(Json base, const ValidationReport& report) {
  base["report"] = ReportToJson(report);
  return base;
}

std::string FrameText(const RunConfig& cfg, const Frame& frame,
                      std::optional<double> tol) {
  if (OutputJson(cfg, false)) {
    Json j = Provenance(cfg, tol);
    j["frame"] = FrameToJson(frame);
    return Dump(j);
  }
  std::ostringstream os;
  os << CsvHeader(cfg, tol);
  WriteFrameCsv(os, frame, cfg.pretty);
  return os.str();
}

std::string OuterText(const RunConfig& cfg, const OuterEigenstepTable& t) {
  if (OutputJson(cfg, false)) {
    Json j = Provenance(cfg, std::nullopt);
    j["table"] = OuterToJson(t);
    return Dump(j);
  }
  std::ostringstream os;
  os << CsvHeader(cfg, std::nullopt);
  WriteOuterCsv(os, t, cfg.pretty);
  return os.str();
}

std::string InnerText(const RunConfig& cfg, const InnerEigenstepTable& t) {
  if (OutputJson(cfg, false)) {
    Json j = Provenance(cfg, std::nullopt);
    j["table"] = InnerToJson(t);
    return Dump(j);
  }
  std::ostringstream os;
  os << CsvHeader(cfg, std::nullopt);
  WriteInnerCsv(os, t, cfg.pretty);
  return os.str();
}

Json Nullable(double value) {
  return std::isfinite(value) ? Json(value) : Json(nullptr);
}

Json SpectrumJson(const Spectrum& s) { return Json(s.values()); }

CancelRule ParseRule(const std::string& rule) {
  if (rule == "first") return CancelRule::kFirstOccurrence;
  if (rule == "last") return CancelRule::kLastOccurrence;
  throw Error(ErrorCode::kInvalidArgument,
              "--rule must be 'first' or 'last'");
}

int CmdValidate(const RunConfig& cfg, std::ostream& out) {
  Json j = Provenance(cfg, std::nullopt);
  j["kind"] = cfg.kind;
  ValidationReport report;
  if (cfg.kind == "inner") {
    report = ValidateInner(LoadInner(cfg, cfg.input));
  } else {
    report = ValidateOuter(LoadOuter(cfg, cfg.input));
  }
  Emit(cfg.output, Dump(WithReport(j, report)), out);
  return report.ok ? kExitOk : kExitValidationFailed;
}

int CmdConvert(const RunConfig& cfg, std::ostream& out) {
  if (cfg.kind == "inner") {
    if (cfg.dim == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "converting an inner table needs --dim M");
    }
    const InnerEigenstepTable inner = LoadInner(cfg, cfg.input);
    if (ValidationReport r = ValidateInner(inner); !r.ok) {
      throw ValidationFailure{WithReport(Provenance(cfg, std::nullopt), r)};
    }
    Emit(cfg.output, OuterText(cfg, InnerToOuter(inner, cfg.dim)), out);
  } else {
    const OuterEigenstepTable outer = LoadOuter(cfg, cfg.input);
    if (ValidationReport r = ValidateOuter(outer); !r.ok) {
      throw ValidationFailure{WithReport(Provenance(cfg, std::nullopt), r)};
    }
    Emit(cfg.output, InnerText(cfg, OuterToInner(outer)), out);
  }
  return kExitOk;
}

int CmdSample(const RunConfig& cfg, std::ostream& out) {
  if (cfg.lambda.empty() || cfg.mu.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sample needs --lambda and --mu");
  }
  const Spectrum lambda = Spectrum::FromUnsorted(ParseNumberList(cfg.lambda));
  const NormSequence mu(ParseNumberList(cfg.mu));
  Emit(cfg.output, OuterText(cfg, SampleEigensteps(lambda, mu, cfg.seed)),
       out);
  return kExitOk;
}

int CmdSynth(const RunConfig& cfg, std::ostream& out) {
  const OuterEigenstepTable table = LoadOuter(cfg, cfg.input);
  if (ValidationReport r = ValidateOuter(table); !r.ok) {
    throw ValidationFailure{WithReport(Provenance(cfg, std::nullopt), r)};
  }
  Matrix u1 = Matrix::Identity(static_cast<Eigen::Index>(table.M),
                               static_cast<Eigen::Index>(table.M));
  if (!cfg.u1.empty()) u1 = LoadFrame(cfg, cfg.u1).matrix();
  const Frame frame = ConstructFrame(table, u1, ParseRule(cfg.rule));
  Emit(cfg.output, FrameText(cfg, frame, std::nullopt), out);
  return kExitOk;
}

int CmdVerify(const RunConfig& cfg, std::ostream& out) {
  const double tol = cfg.tol.value_or(1e-7);
  const Frame frame = LoadFrame(cfg, cfg.input);
  const OuterEigenstepTable table = LoadOuter(cfg, cfg.table);
  const ValidationReport report = VerifyFrame(frame, table, tol);
  Emit(cfg.output, Dump(WithReport(Provenance(cfg, tol), report)), out);
  return report.ok ? kExitOk : kExitValidationFailed;
}

Json MonteCarloJson(const RunConfig& cfg, const Frame& frame) {
  const NoiseModel noise(cfg.sigma2, ParseNoiseDistribution(cfg.noise),
                         cfg.seed);
  const MonteCarloEstimate mc = MonteCarloMse(frame, CanonicalDual(frame),
                                              noise, cfg.trials, cfg.threads);
  return Json{{"estimate", mc.estimate},
              {"stderr", mc.standard_error},
              {"trials", mc.trials},
              {"seed", cfg.seed},
              {"noise", NoiseDistributionName(noise.distribution)}};
}

int CmdAnalyze(const RunConfig& cfg, std::ostream& out) {
  const double tol = cfg.tol.value_or(1e-8);
  const Frame frame = LoadFrame(cfg, cfg.input);
  const NoiseModel noise(cfg.sigma2, NoiseDistribution::kGaussian, cfg.seed);
  const FrameBounds bounds = GetFrameBounds(frame);
  const bool untf = IsUntf(frame, tol);
  const bool spans = bounds.lower > kTolEig;

  Json j = Provenance(cfg, tol);
  j["M"] = frame.M();
  j["N"] = frame.N();
  j["sigma2"] = cfg.sigma2;
  j["frame_bounds"] = Json{{"A", bounds.lower}, {"B", bounds.upper}};
  j["is_frame"] = spans;
  j["is_untf"] = untf;
  const Spectrum spectrum = PsdSpectrum(frame.FrameOperator());
  j["is_tight"] = spans && bounds.upper - bounds.lower <= tol;
  j["tightness_gap"] = bounds.upper - bounds.lower;
  // Mean eigenvalue: the constant of the nearest tight frame operator.
  j["tight_constant"] =
      spans ? Json(spectrum.Sum() / static_cast<double>(spectrum.size()))
            : Json(nullptr);
  j["mse_closed_form"] =
      spans ? Json(MseClosedForm(frame, noise)) : Json(nullptr);
  if (untf) j["mse_untf"] = MseUntf(frame.M(), frame.N(), cfg.sigma2);
  if (cfg.trials > 0 && spans) j["monte_carlo"] = MonteCarloJson(cfg, frame);
  Emit(cfg.output, Dump(j), out);
  return kExitOk;
}

int CmdSimulate(const RunConfig& cfg, std::ostream& out) {
  const Frame frame = LoadFrame(cfg, cfg.input);
  RunConfig c = cfg;
  if (c.trials == 0) c.trials = 10000;
  const NoiseModel noise(cfg.sigma2, ParseNoiseDistribution(cfg.noise),
                         cfg.seed);
  Json j = Provenance(cfg, std::nullopt);
  j["sigma2"] = cfg.sigma2;
  j["mse_closed_form"] = MseClosedForm(frame, noise);
  j["monte_carlo"] = MonteCarloJson(c, frame);
  Emit(cfg.output, Dump(j), out);
  return kExitOk;
}

int CmdComplete(const RunConfig& cfg, std::ostream& out) {
  if (cfg.mu.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "complete needs --mu");
  }
  CompletionProblem problem{LoadFrame(cfg, cfg.input), ParseNumberList(cfg.mu),
                            {}};
  problem.options.seed = cfg.seed;
  problem.options.restarts = cfg.restarts;
  if (cfg.tol) problem.options.tolerance = *cfg.tol;
  if (cfg.oracle) problem.options.oracle_samples = cfg.samples;
  const CompletionResult r = CompleteFrame(problem);

  Json j = Provenance(cfg, problem.options.tolerance);
  j["M"] = problem.initial.M();
  j["N0"] = problem.initial.N();
  j["mu_new"] = problem.mu_new;
  j["restarts"] = cfg.restarts;
  j["initial_objective"] =
      Nullable(CompletionObjective(InitialSpectrum(problem.initial)));
  j["objective"] = Nullable(r.objective);
  j["final_spectrum"] = SpectrumJson(r.final_spectrum);
  Json chain = Json::array();
  for (const Spectrum& s : r.chain) chain.push_back(SpectrumJson(s));
  j["chain"] = chain;
  j["chain_norms"] = r.chain_norms;
  Json appended = Json::array();
  for (Eigen::Index k = 0; k < r.appended.cols(); ++k) {
    const Vector v = r.appended.col(k);
    appended.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  }
  j["appended"] = appended;
  if (r.certificate) {
    j["certificate"] = Json{{"oracle_objective",
                             Nullable(r.certificate->oracle_objective)},
                            {"samples", r.certificate->samples},
                            {"seed", r.certificate->seed},
                            {"dominates", r.certificate->dominates}};
  }
  Emit(cfg.output, Dump(j), out);
  if (!cfg.frame_output.empty()) {
    RunConfig csv = cfg;
    csv.format = "csv";
    Emit(cfg.frame_output,
         FrameText(csv, r.completed, problem.options.tolerance), out);
  }
  return kExitOk;
}

// Flags from a JSON config file, placed before the user's flags so the
// latter win.
std::vector<std::string> ConfigArgs(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return {};
  const Json config = Load(path, "config", [](const std::string& text) {
    return Json::parse(text);
  });
  if (!config.is_object()) {
    throw Error(ErrorCode::kParse, path + ": config must be a JSON object");
  }
  std::vector<std::string> out;
  for (const auto& [key, value] : config.items()) {
    if (key == "config") continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back("--" + key);
    } else if (value.is_string()) {
      out.push_back("--" + key + "=" + value.get<std::string>());
    } else if (value.is_array()) {
      std::string list;
      for (const auto& v : value) {
        if (!list.empty()) list += ",";
        list += v.is_string() ? v.get<std::string>() : v.dump();
      }
      out.push_back("--" + key + "=" + list);
    } else {
      out.push_back("--" + key + "=" + value.dump());
    }
  }
  return out;
}

void PrintError(std::ostream& err, std::string_view code,
                const std::string& message) {
  err << Json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Finite frames from eigensteps: synthesis, MSE analysis and "
               "norm-constrained completion",
               "framekit"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  app.add_option("--input,-i", cfg.input, "Input table or frame");
  app.add_option("--table", cfg.table, "Eigenstep table for verify");
  app.add_option("--output,-o", cfg.output, "Output path (default stdout)");
  app.add_option("--frame-output", cfg.frame_output,
                 "Completed frame CSV for complete");
  app.add_option("--u1", cfg.u1, "Initial orthogonal basis (CSV) for synth");
  app.add_option("--config", cfg.config, "JSON file with default flags");
  app.add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--kind", cfg.kind, "Input table kind: outer or inner")
      ->check(CLI::IsMember({"outer", "inner"}));
  app.add_option("--dim", cfg.dim, "Ambient dimension M for inner -> outer");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--tol", cfg.tol, "Tolerance override");
  app.add_option("--sigma2", cfg.sigma2, "Noise variance");
  app.add_option("--trials", cfg.trials, "Monte-Carlo trials");
  app.add_option("--samples", cfg.samples, "Brute-force oracle samples");
  app.add_option("--restarts", cfg.restarts, "Optimizer restarts");
  app.add_flag("--oracle", cfg.oracle, "Attach a brute-force certificate");
  app.add_flag("--pretty", cfg.pretty, "4-decimal display output");
  app.add_option("--noise", cfg.noise, "gaussian or uniform")
      ->check(CLI::IsMember({"gaussian", "uniform"}));
  app.add_option("--mu", cfg.mu, "Squared norms, e.g. 1,1,1");
  app.add_option("--lambda", cfg.lambda, "Target spectrum, e.g. 5/3,5/3,5/3");
  app.add_option("--rule", cfg.rule, "Cancellation rule: first or last");
  app.add_option("--threads", cfg.threads, "Monte-Carlo worker threads");

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"validate", "Check an outer or inner eigenstep table"},
      {"convert", "Convert between outer and inner eigensteps"},
      {"sample", "Sample outer eigensteps for --lambda and --mu"},
      {"synth", "Construct a frame from an outer table"},
      {"verify", "Check a frame against an outer table"},
      {"analyze", "Frame bounds, tightness and reconstruction MSE"},
      {"simulate", "Monte-Carlo MSE of the canonical dual"},
      {"complete", "Append vectors with norms --mu minimizing the MSE"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    std::vector<std::string> argv = ConfigArgs(args);
    argv.insert(argv.end(), args.begin(), args.end());
    // CLI11 consumes arguments from the back.
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    PrintError(err, "usage", e.what());
    return kExitInputError;
  } catch (const Error& e) {
    PrintError(err, ErrorCodeName(e.code()), e.what());
    return kExitInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "validate") return CmdValidate(cfg, out);
    if (cfg.command == "convert") return CmdConvert(cfg, out);
    if (cfg.command == "sample") return CmdSample(cfg, out);
    if (cfg.command == "synth") return CmdSynth(cfg, out);
    if (cfg.command == "verify") return CmdVerify(cfg, out);
    if (cfg.command == "analyze") return CmdAnalyze(cfg, out);
    if (cfg.command == "simulate") return CmdSimulate(cfg, out);
    return CmdComplete(cfg, out);
  } catch (const ValidationFailure& f) {
    out << Dump(f.report);
    return kExitValidationFailed;
  } catch (const Error& e) {
    PrintError(err, ErrorCodeName(e.code()), e.what());
    return kExitInputError;
  }
}

}  // namespace framekit
