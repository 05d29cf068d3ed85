#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace hitbend;
using namespace hitbend::testing;
namespace fs = std::filesystem;

namespace {

PipelineConfig config(const std::string& field, int n) {
  PipelineConfig c;
  c.field = field;
  c.n = n;
  c.tuple_path = fixture("delta344_genus2.json");
  return c;
}

std::string fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hitbend_test_" + name);
  fs::remove_all(p);
  return p.string();
}

std::string find_artifact(const std::string& dir, const std::string& kind) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    if (f.filename() == "run.json" || f.filename() == "config.json") continue;
    if (read_json_file(f.string()).at("kind") == kind) return f.string();
  }
  return "";
}

}  // namespace

TEST_CASE("rank-4 run over Q(sqrt2) is dense") {
  const PipelineRun run = run_pipeline(config("q-sqrt2", 4));
  CHECK(run.status == RunStatus::Dense);
  REQUIRE(run.closure_chain.size() >= 2);
  CHECK(run.closure_chain.front() == ClosureClass::PrincipalSL2);
  CHECK(run.closure_chain.back() == ClosureClass::FullSL);
  REQUIRE(run.final_rep.has_value());
  CHECK(run.final_rep->relator_holds());
  CHECK(run.final_rep->integral());
  REQUIRE(run.bend.has_value());
  CHECK(run.bend->valid());
  REQUIRE(run.bend_squared_rep.has_value());
  CHECK(run.bend_squared_rep->relator_holds());
  CHECK(run.bend_squared_rep->images[1] != run.final_rep->images[1]);
  CHECK(exit_code(run.status) == 0);
}

TEST_CASE("edge configurations") {
  const PipelineRun r7 = run_pipeline(config("q-sqrt2", 7));
  CHECK(r7.status == RunStatus::Failed);
  CHECK(r7.error_code == "G2Unsupported");

  const PipelineRun r2 = run_pipeline(config("q-sqrt2", 2));
  CHECK(r2.status == RunStatus::Dense);
  REQUIRE(r2.closure_chain.size() == 1);
  CHECK(r2.closure_chain[0] == ClosureClass::FullSL);

  const PipelineRun rq4 = run_pipeline(config("q", 4));
  CHECK(rq4.status == RunStatus::Failed);
  CHECK(rq4.error_code == "NoKnownSeed");
}

TEST_CASE("rank-5 rational run needs a cover") {
  const PipelineRun run = run_pipeline(config("q", 5));
  CHECK(run.status == RunStatus::NeedCover);
  CHECK(exit_code(run.status) == 2);
  REQUIRE(run.bend.has_value());
  CHECK(run.bend->one_multiplicity > 1);
  REQUIRE(run.closure_chain.size() >= 2);
  CHECK(run.closure_chain[0] == ClosureClass::PrincipalSL2);
  CHECK(run.closure_chain[1] == ClosureClass::SplitOrthogonal);
  REQUIRE(run.eta.contains("integral_charpoly"));
  const ZPoly cp = zpoly_from_json(run.eta.at("integral_charpoly"));
  const auto fac = factor_over_int(cp);
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.factors[0].first == zpoly({-1, 1}));
  CHECK(fac.factors[0].second == 1);
  CHECK(fac.factors[1].second == 1);
}

TEST_CASE("runs are deterministic and verifiable") {
  const std::string d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
  const PipelineRun a = run_pipeline(config("q-sqrt2", 4), d1);
  const PipelineRun b = run_pipeline(config("q-sqrt2", 4), d2);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].artifact == b.steps[i].artifact);
    CHECK(a.steps[i].output_hash == b.steps[i].output_hash);
  }
  const VerifyReport ok = verify_run(d1);
  CHECK(ok.ok);
  CHECK(ok.checks > 10);
  CHECK(ok.failures.empty());
}

TEST_CASE("verification detects tampering") {
  const std::string dir = fresh_dir("tamper");
  run_pipeline(config("q-sqrt2", 4), dir);
  const std::string bend = find_artifact(dir, "bend");
  REQUIRE_FALSE(bend.empty());
  Json j = read_json_file(bend);
  // perturb one entry of A
  Json& a = j["payload"]["A"];
  Json& entry = a["entries"][0][0];
  const NfElement old = element_from_json(entry, k2());
  entry = to_json(old + ab(1, 0));
  write_json_file(bend, j);
  const VerifyReport bad = verify_run(dir);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.failures.empty());

  const std::string dir2 = fresh_dir("missing");
  run_pipeline(config("q-sqrt2", 4), dir2);
  fs::remove(find_artifact(dir2, "closure"));
  CHECK_FALSE(verify_run(dir2).ok);
}

TEST_CASE("config round trip") {
  PipelineConfig c = config("q", 5);
  c.word_bound = 3;
  c.primes = {7, 11};
  const PipelineConfig back = PipelineConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(to_string(RunStatus::NeedCover) != to_string(RunStatus::Dense));
  CHECK(exit_code(RunStatus::Inconclusive) == 3);
  CHECK(exit_code(RunStatus::Failed) == 1);
}
