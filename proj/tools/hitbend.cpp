#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

#include "hitbend/pipeline.hpp"

using namespace hitbend;

namespace {

std::string default_tuple() { return std::string(HITBEND_FIXTURE_DIR) + "/delta344_genus2.json"; }

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(out, j);
    std::cerr << "wrote " << out << "\n";
  }
}

std::pair<KPoly, KPoly> split_for(const NfMatrix& g, bool drop_one) {
  KPoly f = g.charpoly();
  if (drop_one) f = divmod(f, KPoly::linear(g.ring(), g.ring().one())).first;
  const auto split = unit_normalized_split(f);
  require(split.has_value(), ErrorCode::PreconditionViolated, "charpoly of rho(a1) has no unit-normalized split");
  return *split;
}

/// A bare rep, or a run artifact wrapping one.
SurfaceRep load_rep(const std::string& path) {
  const Json j = read_json_file(path);
  return surface_rep_from_json(j.contains("payload") ? j.at("payload") : j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral Zariski-dense surface groups by bending"};
  app.require_subcommand(1);

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "end-to-end runs");
  pipeline->require_subcommand(1);
  auto* run_cmd = pipeline->add_subcommand("run", "run the bending pipeline");
  PipelineConfig cfg;
  cfg.tuple_path = default_tuple();
  std::string out_dir, seed_rep;
  run_cmd->add_option("--field", cfg.field, "q-sqrt2 or q")->check(CLI::IsMember({"q-sqrt2", "q"}));
  run_cmd->add_option("--n", cfg.n, "dimension")->required();
  run_cmd->add_option("--seed-rep", seed_rep, "external seed representation (JSON)");
  run_cmd->add_option("--tuple", cfg.tuple_path, "genus-2 tuple fixture (empty: search)");
  run_cmd->add_option("--word-bound", cfg.word_bound);
  run_cmd->add_option("--height-bound", cfg.height_bound);
  run_cmd->add_option("--eta-word-bound", cfg.eta_word_bound);
  run_cmd->add_option("--max-power", cfg.max_power);
  run_cmd->add_option("--out", out_dir, "run directory (default: $HITBEND_RUN_ROOT/<field>-n<n>)");
  auto* verify_cmd = pipeline->add_subcommand("verify", "re-check a run directory");
  std::string verify_dir;
  verify_cmd->add_option("dir", verify_dir)->required();

  // subgroup
  auto* subgroup = app.add_subcommand("subgroup", "surface subgroups of the (3,4,4) triangle group");
  auto* find_cmd = subgroup->add_subcommand("find", "search the index-12 genus-2 tuple");
  int index = 12, length_bound = 8;
  std::string tuple_out;
  find_cmd->add_option("--index", index)->check(CLI::IsMember({12}));
  find_cmd->add_option("--length-bound", length_bound);
  find_cmd->add_option("--out", tuple_out);
  subgroup->require_subcommand(1);

  // bend
  auto* bend_cmd = app.add_subcommand("bend", "construct and apply a bending matrix");
  std::string rep_path, method = "unit-blocks", curve = "a1", bend_out;
  int height = 6;
  bend_cmd->add_option("--rep", rep_path, "integral surface rep (JSON)")->required();
  bend_cmd->add_option("--curve", curve)->check(CLI::IsMember({"a1"}));
  bend_cmd->add_option("--method", method)->check(CLI::IsMember({"unit-blocks", "identity-blocks", "irreducible"}));
  bend_cmd->add_option("--height-bound", height);
  bend_cmd->add_option("--out", bend_out);

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "classify the Zariski closure");
  std::string certify_rep;
  int word_bound = 2;
  certify_cmd->add_option("--rep", certify_rep)->required();
  certify_cmd->add_option("--word-bound", word_bound);

  // search-eta
  auto* eta_cmd = app.add_subcommand("search-eta", "find a word with a prescribed mod-p charpoly");
  std::string eta_rep, mode = "one-split", prime = "auto";
  int eta_bound = 6;
  eta_cmd->add_option("--rep", eta_rep)->required();
  eta_cmd->add_option("--mode", mode)->check(CLI::IsMember({"one-split", "full"}));
  eta_cmd->add_option("--p", prime);
  eta_cmd->add_option("--word-bound", eta_bound);

  // borel-check
  auto* borel_cmd = app.add_subcommand("borel-check", "count reducible charpolys in Sp(2k, F_p)");
  int k = 1;
  unsigned p = 5;
  borel_cmd->add_option("--k", k);
  borel_cmd->add_option("--p", p);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (!seed_rep.empty()) cfg.seed_rep = seed_rep;
      if (out_dir.empty()) out_dir = (std::filesystem::path(run_root()) / (cfg.field + "-n" + std::to_string(cfg.n))).string();
      const auto t0 = std::chrono::steady_clock::now();
      const PipelineRun run = run_pipeline(cfg, out_dir);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      Json chain = Json::array();
      for (auto c : run.closure_chain) chain.push_back(to_string(c));
      std::cout << Json{{"status", to_string(run.status)},
                        {"closure_chain", chain},
                        {"error", run.error_message},
                        {"eta", run.eta},
                        {"run_dir", out_dir}}
                       .dump(2)
                << "\n";
      std::cerr << "elapsed " << secs << " s (not authoritative)\n";
      return exit_code(run.status);
    }
    if (verify_cmd->parsed()) {
      const VerifyReport r = verify_run(verify_dir);
      std::cout << Json{{"ok", r.ok}, {"checks", r.checks}, {"failures", r.failures}}.dump(2) << "\n";
      return r.ok ? 0 : 1;
    }
    if (find_cmd->parsed()) {
      emit(to_json(search_genus2_tuple(length_bound)), tuple_out);
      return 0;
    }
    if (bend_cmd->parsed()) {
      const SurfaceRep rep = load_rep(rep_path);
      const NfMatrix& g = rep.images[0];
      BendCertificate cert;
      if (method == "unit-blocks") {
        const auto [f1, f2] = split_for(g, false);
        cert = bend_matrix_unit_blocks(g, fundamental_unit_search(rep.field, 8), f1, f2);
      } else if (method == "identity-blocks") {
        const auto [f1, f2] = split_for(g, rep.n % 2 == 1);
        cert = bend_matrix_identity_blocks(g, f1, f2);
      } else {
        cert = bend_matrix_irreducible(g, height);
      }
      emit({{"certificate", to_json(cert)}, {"bent_rep", to_json(apply_bend(rep, cert))}}, bend_out);
      return 0;
    }
    if (certify_cmd->parsed()) {
      const SurfaceRep rep = load_rep(certify_rep);
      std::cout << to_json(certify_closure(rep, word_bound), rep.presentation()).dump(2) << "\n";
      return 0;
    }
    if (eta_cmd->parsed()) {
      const SurfaceRep rep = load_rep(eta_rep);
      std::vector<std::uint32_t> primes = PipelineConfig{}.primes;
      if (prime != "auto") primes = {static_cast<std::uint32_t>(std::stoul(prime))};
      Json skipped = Json::array();
      for (auto q : primes) {
        try {
          const auto residue = rep.field->is_rationals() ? std::nullopt : field_residue(rep.field, q);
          const ModPReduction red = reduce_mod_p(rep, q, residue);
          const WordHit hit = search_irreducible_word(red.gens, mode == "full" ? SearchMode::Full : SearchMode::OneSplit, eta_bound);
          const NfMatrix eta = rep.image(hit.word);
          Json out = {{"word", rep.presentation().spell(hit.word)}, {"prime", q}, {"skipped_primes", skipped}};
          if (auto z = to_z(eta.charpoly())) out["integral_charpoly"] = to_json(*z);
          else out["charpoly"] = to_json(eta.charpoly());
          std::cout << out.dump(2) << "\n";
          return 0;
        } catch (const Error& e) {
          skipped.push_back({{"p", q}, {"reason", e.what()}});
        }
      }
      std::cout << Json{{"found", false}, {"skipped_primes", skipped}}.dump(2) << "\n";
      return 1;
    }
    if (borel_cmd->parsed()) {
      const BorelCount b = borel_fraction_check(k, p);
      std::cout << Json{{"k", k}, {"p", p}, {"reducible", b.reducible}, {"total", b.total}, {"bound_holds", b.bound_holds}}.dump(2)
                << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
