#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hitbend/bendcore.hpp"
#include "hitbend/density.hpp"
#include "hitbend/modsearch.hpp"

namespace hitbend {

struct PipelineConfig {
  std::string field = "q-sqrt2";  // "q-sqrt2" or "q"
  int n = 4;
  int genus = 2;
  std::optional<std::string> seed_rep;  // JSON file with an external seed
  std::string tuple_path;               // genus-2 tuple fixture; searched if empty
  int word_bound = 2;                   // closure certification
  int height_bound = 6;                 // irreducible-route search
  int unit_height_bound = 8;            // fundamental unit search
  int max_power = 3;                    // A^m retries
  int eta_word_bound = 6;
  std::vector<std::uint32_t> primes{5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  long denominator_bound = 1'000'000;

  Json to_json() const;
  static PipelineConfig from_json(const Json& j);
};

enum class RunStatus { Dense, NeedCover, Inconclusive, Failed };
std::string to_string(RunStatus s);
int exit_code(RunStatus s);

struct StepRecord {
  std::string name;
  std::string kind;  // rep | closure | bend | eta | family
  std::string artifact;
  std::string input_hash;
  std::string output_hash;
  Json summary;
};

struct PipelineRun {
  PipelineConfig config;
  std::vector<StepRecord> steps;
  RunStatus status = RunStatus::Failed;
  std::string error_code;
  std::string error_message;
  Json eta;  // NEED-COVER obligation
  std::vector<ClosureClass> closure_chain;
  std::optional<SurfaceRep> final_rep;
  std::optional<BendCertificate> bend;
  std::optional<SurfaceRep> bend_squared_rep;  // rho^{A^2}

  Json to_json() const;
};

/// When `run_dir` is non-empty every step artifact is written there.
PipelineRun run_numberfield_pipeline(const PipelineConfig& config, const std::string& run_dir = "");
PipelineRun run_rational_pipeline(const PipelineConfig& config, const std::string& run_dir = "");
/// Dispatches on config.field.
PipelineRun run_pipeline(const PipelineConfig& config, const std::string& run_dir = "");

struct VerifyReport {
  bool ok = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;
};

/// Re-derives every recorded certificate from the artifacts in `run_dir`.
VerifyReport verify_run(const std::string& run_dir);

/// Run directory root: $HITBEND_RUN_ROOT, else "runs".
std::string run_root();

}  // namespace hitbend
