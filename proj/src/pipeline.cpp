#include "hitbend/pipeline.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>

namespace hitbend {

namespace fs = std::filesystem;

// -------------------------------------------------------------------- config

Json PipelineConfig::to_json() const {
  Json j = {{"field", field},
            {"n", n},
            {"genus", genus},
            {"tuple_path", tuple_path},
            {"word_bound", word_bound},
            {"height_bound", height_bound},
            {"unit_height_bound", unit_height_bound},
            {"max_power", max_power},
            {"eta_word_bound", eta_word_bound},
            {"primes", primes},
            {"denominator_bound", denominator_bound}};
  j["seed_rep"] = seed_rep ? Json(*seed_rep) : Json();
  return j;
}

PipelineConfig PipelineConfig::from_json(const Json& j) {
  PipelineConfig c;
  c.field = j.value("field", c.field);
  c.n = j.value("n", c.n);
  c.genus = j.value("genus", c.genus);
  c.tuple_path = j.value("tuple_path", c.tuple_path);
  c.word_bound = j.value("word_bound", c.word_bound);
  c.height_bound = j.value("height_bound", c.height_bound);
  c.unit_height_bound = j.value("unit_height_bound", c.unit_height_bound);
  c.max_power = j.value("max_power", c.max_power);
  c.eta_word_bound = j.value("eta_word_bound", c.eta_word_bound);
  if (j.contains("primes")) c.primes = j.at("primes").get<std::vector<std::uint32_t>>();
  c.denominator_bound = j.value("denominator_bound", c.denominator_bound);
  if (j.contains("seed_rep") && j.at("seed_rep").is_string()) c.seed_rep = j.at("seed_rep").get<std::string>();
  return c;
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Dense: return "Dense";
    case RunStatus::NeedCover: return "NeedCover";
    case RunStatus::Inconclusive: return "Inconclusive";
    case RunStatus::Failed: return "Failed";
  }
  return "?";
}

int exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::Dense: return 0;
    case RunStatus::NeedCover: return 2;
    case RunStatus::Inconclusive: return 3;
    case RunStatus::Failed: return 1;
  }
  return 1;
}

Json PipelineRun::to_json() const {
  Json steps_j = Json::array();
  for (const auto& s : steps)
    steps_j.push_back({{"name", s.name},
                       {"kind", s.kind},
                       {"artifact", s.artifact},
                       {"input_hash", s.input_hash},
                       {"output_hash", s.output_hash},
                       {"summary", s.summary}});
  Json chain = Json::array();
  for (auto c : closure_chain) chain.push_back(to_string(c));
  return {{"config", config.to_json()},
          {"steps", steps_j},
          {"status", to_string(status)},
          {"error_code", error_code},
          {"error_message", error_message},
          {"closure_chain", chain},
          {"eta", eta}};
}

std::string run_root() {
  const char* env = std::getenv("HITBEND_RUN_ROOT");
  return env != nullptr && *env != '\0' ? std::string(env) : std::string("runs");
}

namespace {

class Recorder {
 public:
  Recorder(std::string dir, PipelineRun& run) : dir_(std::move(dir)), run_(run) {
    if (!dir_.empty()) {
      fs::create_directories(dir_);
      write_json_file((fs::path(dir_) / "config.json").string(), run_.config.to_json());
    }
  }

  /// Returns the artifact name.
  std::string record(const std::string& name, const std::string& kind, const Json& payload,
                     const std::string& input_artifact, Json summary = Json::object()) {
    char prefix[8];
    std::snprintf(prefix, sizeof prefix, "%02zu_", run_.steps.size());
    StepRecord s;
    s.name = name;
    s.kind = kind;
    s.artifact = prefix + name + ".json";
    s.output_hash = content_hash(payload);
    s.input_hash = input_artifact.empty() ? "" : hashes_.at(input_artifact);
    s.summary = std::move(summary);
    hashes_[s.artifact] = s.output_hash;
    if (!dir_.empty())
      write_json_file((fs::path(dir_) / s.artifact).string(),
                      {{"kind", kind}, {"name", name}, {"input", input_artifact}, {"payload", payload}});
    run_.steps.push_back(s);
    return s.artifact;
  }

  void finish() {
    if (!dir_.empty()) write_json_file((fs::path(dir_) / "run.json").string(), run_.to_json());
  }

 private:
  std::string dir_;
  PipelineRun& run_;
  std::map<std::string, std::string> hashes_;
};

struct Seeded {
  SurfaceRep rep;
  std::string artifact;
};

Seeded build_seed(const PipelineConfig& cfg, Recorder& rec, bool rational) {
  if (cfg.seed_rep) {
    SurfaceRep rep = surface_rep_from_json(read_json_file(*cfg.seed_rep));
    rep.verify();
    require(rep.n == cfg.n, ErrorCode::PreconditionViolated, "seed rep has the wrong dimension");
    require(rep.field->is_rationals() == rational, ErrorCode::PreconditionViolated, "seed rep has the wrong field");
    const std::string a0 = rec.record("seed_external", "rep", to_json(rep), "", {{"path", *cfg.seed_rep}});
    if (rep.integral()) return {rep, a0};
    const Integralization ig = integralize(rep, Integer(cfg.denominator_bound));
    return {ig.rep, rec.record("integral_seed", "rep", to_json(ig.rep), a0,
                               {{"rounds", ig.rounds}, {"conjugator", to_json(ig.p)}, {"integral", true}})};
  }
  require(cfg.genus == 2, ErrorCode::PreconditionViolated, "built-in seeds exist for genus 2 only");
  const Genus2Tuple tuple = cfg.tuple_path.empty() ? search_genus2_tuple(8) : load_genus2_tuple(cfg.tuple_path);
  const std::string a_tuple = rec.record("genus2_tuple", "tuple", to_json(tuple), "", {{"index", 12}});
  SurfaceRep rep = fuchsian_genus2_rep(tuple);
  const std::string a_fuchsian = rec.record("fuchsian_seed", "rep", to_json(rep), a_tuple, {{"integral", true}});
  rep = tau_n(rep, cfg.n);
  std::string last = rec.record("tau_n", "rep", to_json(rep), a_fuchsian, {{"n", cfg.n}});
  if (rational) {
    rep = descend_to_rationals(rep);
    rep.verify();
    last = rec.record("rational_descent", "rep", to_json(rep), last);
  }
  const Integralization ig = integralize(rep, Integer(cfg.denominator_bound));
  require(ig.rep.integral(), ErrorCode::IntegralityViolated, "integralization left denominators");
  last = rec.record("integral_seed", "rep", to_json(ig.rep), last,
                    {{"rounds", ig.rounds}, {"conjugator", to_json(ig.p)}, {"integral", true}});
  return {ig.rep, last};
}

std::string record_closure(Recorder& rec, PipelineRun& run, const std::string& name, const ClosureCertificate& c,
                           const SurfaceRep& rep, const std::string& rep_artifact) {
  run.closure_chain.push_back(c.cls);
  return rec.record(name, "closure", to_json(c, rep.presentation()), rep_artifact,
                    {{"class", to_string(c.cls)}, {"form_space_dim", c.form_space_dim}});
}

BendCertificate power_certificate(const BendCertificate& cert, const NfMatrix& rho_gamma, unsigned long m) {
  BendCertificate out = cert;
  out.a = cert.a.pow(m);
  out.checks = recheck(out.a, rho_gamma);
  out.one_multiplicity = eigenvalue_one_multiplicity(out.a);
  out.parameters["power"] = m;
  return out;
}

Json bend_summary(const BendCertificate& c, const std::optional<NfMatrix>& form) {
  Json s = {{"construction", to_string(c.construction)},
            {"valid", c.valid()},
            {"eigenvalue_one_multiplicity", c.one_multiplicity}};
  if (form) s["moves_form"] = c.a.transpose() * *form * c.a != *form;
  return s;
}

void record_family(Recorder& rec, PipelineRun& run, const SurfaceRep& rep, const std::string& rep_artifact,
                   const BendCertificate& cert) {
  const BendCertificate sq = power_certificate(cert, rep.images[0], 2);
  SurfaceRep bent_sq = apply_bend(rep, sq);
  const NfMatrix b1_a = rep.images[1] * cert.a;
  const bool differ = b1_a != bent_sq.images[1];
  rec.record("bend_family", "family",
             {{"b1_A", to_json(b1_a)}, {"b1_A2", to_json(bent_sq.images[1])}, {"differ", differ}}, rep_artifact,
             {{"differ", differ}});
  run.bend_squared_rep = std::move(bent_sq);
}

void set_error(PipelineRun& run, const Error& e) {
  run.status = e.code() == ErrorCode::Inconclusive ? RunStatus::Inconclusive : RunStatus::Failed;
  run.error_code = std::string(to_string(e.code()));
  run.error_message = e.what();
}

}  // namespace

// ------------------------------------------------------- number-field route

PipelineRun run_numberfield_pipeline(const PipelineConfig& cfg, const std::string& run_dir) {
  PipelineRun run;
  run.config = cfg;
  Recorder rec(run_dir, run);
  try {
    require(cfg.field == "q-sqrt2", ErrorCode::PreconditionViolated, "number-field route needs K != Q");
    require(cfg.n != 7, ErrorCode::G2Unsupported, "n = 7 admits a G2 closure, not handled");
    require(cfg.n >= 2, ErrorCode::PreconditionViolated, "n must be at least 2");
    Seeded seed = build_seed(cfg, rec, false);
    const ClosureCertificate c0 = certify_closure(seed.rep, cfg.word_bound);
    record_closure(rec, run, "closure_seed", c0, seed.rep, seed.artifact);
    run.final_rep = seed.rep;
    if (c0.cls == ClosureClass::FullSL) {
      run.status = RunStatus::Dense;
      rec.finish();
      return run;
    }

    const NfMatrix& g = seed.rep.images[0];
    BendCertificate cert;
    if (auto split = unit_normalized_split(g.charpoly())) {
      const NfElement u = fundamental_unit_search(seed.rep.field, cfg.unit_height_bound);
      cert = bend_matrix_unit_blocks(g, u, split->first, split->second);
    } else {
      cert = bend_matrix_irreducible(g, cfg.height_bound);
    }
    rec.record("bend", "bend", to_json(cert), seed.artifact, bend_summary(cert, c0.form));

    for (int m = 1; m <= cfg.max_power; ++m) {
      const BendCertificate cm = m == 1 ? cert : power_certificate(cert, g, static_cast<unsigned long>(m));
      if (m > 1) rec.record("bend_power_" + std::to_string(m), "bend", to_json(cm), seed.artifact, bend_summary(cm, c0.form));
      SurfaceRep bent = apply_bend(seed.rep, cm);
      const std::string a_bent = rec.record("bent_rep_" + std::to_string(m), "rep", to_json(bent), seed.artifact,
                                            {{"integral", bent.integral()}});
      const ClosureCertificate c1 = certify_closure(bent, cfg.word_bound);
      record_closure(rec, run, "closure_bent_" + std::to_string(m), c1, bent, a_bent);
      if (closure_strictly_increased(c0, c1) && c1.cls == ClosureClass::FullSL) {
        run.bend = cm;
        run.final_rep = bent;
        record_family(rec, run, seed.rep, seed.artifact, cm);
        run.status = RunStatus::Dense;
        rec.finish();
        return run;
      }
    }
    fail(ErrorCode::Inconclusive, "no power of the bending matrix reached a dense closure");
  } catch (const Error& e) {
    set_error(run, e);
  }
  rec.finish();
  return run;
}

// ---------------------------------------------------------- rational route

namespace {

bool one_times_irreducible(const NfMatrix& g) {
  const auto cp = to_z(g.charpoly());
  if (!cp) return false;
  const ZFactorization f = factor_over_int(*cp);
  const int n = static_cast<int>(g.rows());
  if (n % 2 == 0) return f.factors.size() == 1 && f.factors[0].second == 1;
  if (f.factors.size() != 2) return false;
  const ZPoly lin(std::vector<Integer>{-1, 1});
  return f.factors[0].second == 1 && f.factors[1].second == 1 && (f.factors[0].first == lin || f.factors[1].first == lin);
}

}  // namespace

PipelineRun run_rational_pipeline(const PipelineConfig& cfg, const std::string& run_dir) {
  PipelineRun run;
  run.config = cfg;
  Recorder rec(run_dir, run);
  try {
    require(cfg.field == "q", ErrorCode::PreconditionViolated, "rational route needs K = Q");
    require(cfg.n != 7, ErrorCode::G2Unsupported, "n = 7 admits a G2 closure, not handled");
    require(cfg.n % 2 == 1 || cfg.seed_rep.has_value(), ErrorCode::NoKnownSeed,
            "no rational integral seed is known for even n; pass --seed-rep");
    Seeded seed = build_seed(cfg, rec, true);
    ClosureCertificate prev = certify_closure(seed.rep, cfg.word_bound);
    record_closure(rec, run, "closure_seed", prev, seed.rep, seed.artifact);
    SurfaceRep cur = seed.rep;
    std::string cur_artifact = seed.artifact;
    run.final_rep = cur;

    auto bend_and_certify = [&](const BendCertificate& cert, const std::string& label) {
      rec.record(label, "bend", to_json(cert), cur_artifact, bend_summary(cert, prev.form));
      SurfaceRep bent = apply_bend(cur, cert);
      const std::string a_bent = rec.record(label + "_rep", "rep", to_json(bent), cur_artifact, {{"integral", bent.integral()}});
      const ClosureCertificate c = certify_closure(bent, cfg.word_bound);
      record_closure(rec, run, label + "_closure", c, bent, a_bent);
      require(closure_strictly_increased(prev, c), ErrorCode::Inconclusive,
              label + " did not enlarge the closure (" + to_string(prev.cls) + " -> " + to_string(c.cls) + ")");
      if (!run.bend) {
        run.bend = cert;
        record_family(rec, run, cur, cur_artifact, cert);
      }
      cur = std::move(bent);
      cur_artifact = a_bent;
      prev = c;
      run.final_rep = cur;
    };

    if (prev.cls == ClosureClass::PrincipalSL2) {
      const NfMatrix& g = cur.images[0];
      KPoly f = g.charpoly();
      if (cfg.n % 2 == 1) f = divmod(f, KPoly::linear(g.ring(), g.ring().one())).first;
      const auto split = unit_normalized_split(f);
      const BendCertificate cert = split ? bend_matrix_identity_blocks(g, split->first, split->second)
                                         : bend_matrix_irreducible(g, cfg.height_bound);
      bend_and_certify(cert, "stage1_bend");
    }
    if (prev.cls == ClosureClass::FullSL) {
      run.status = RunStatus::Dense;
      rec.finish();
      return run;
    }

    // Stage 2: leave Sp(2k) or SO(k+1,k).
    if (one_times_irreducible(cur.images[0])) {
      bend_and_certify(bend_matrix_irreducible(cur.images[0], cfg.height_bound), "stage2_bend");
      require(prev.cls == ClosureClass::FullSL, ErrorCode::Inconclusive, "stage-2 bend did not reach SL(n)");
      run.status = RunStatus::Dense;
      rec.finish();
      return run;
    }
    const SearchMode mode = cfg.n % 2 == 1 ? SearchMode::OneSplit : SearchMode::Full;
    Json skipped = Json::array();
    for (std::uint32_t p : cfg.primes) {
      ModPReduction red;
      try {
        red = reduce_mod_p(cur, p, std::nullopt);
      } catch (const Error& e) {
        skipped.push_back({{"p", p}, {"reason", e.what()}});
        continue;
      }
      WordHit hit;
      try {
        hit = search_irreducible_word(red.gens, mode, cfg.eta_word_bound);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotFoundWithinBound) throw;
        skipped.push_back({{"p", p}, {"reason", e.what()}});
        continue;
      }
      const NfMatrix eta = cur.image(hit.word);
      const auto zcp = to_z(eta.charpoly());
      require(zcp.has_value(), ErrorCode::IntegralityViolated, "eta has a non-integral charpoly");
      const ZFactorization fz = factor_over_int(*zcp);
      Json factors = Json::array();
      for (const auto& [q, e] : fz.factors) factors.push_back({{"factor", to_json(q)}, {"multiplicity", e}});
      Json fp_coeffs = Json::array();
      for (const auto& c : hit.charpoly.coeffs()) fp_coeffs.push_back(c.value());
      run.eta = {{"word", cur.presentation().spell(hit.word)},
                 {"prime", p},
                 {"mode", mode == SearchMode::OneSplit ? "one-split" : "full"},
                 {"charpoly_mod_p", fp_coeffs},
                 {"integral_charpoly", to_json(*zcp)},
                 {"integral_factors", factors},
                 {"skipped_primes", skipped},
                 {"obligation", "pass to a finite cover in which eta lifts to a simple nonseparating curve"}};
      require(one_times_irreducible(eta), ErrorCode::PreconditionViolated,
              "eta's integral charpoly does not have the certified shape");
      rec.record("eta", "eta", run.eta, cur_artifact, {{"word", run.eta["word"]}, {"prime", p}});
      run.status = RunStatus::NeedCover;
      rec.finish();
      return run;
    }
    fail(ErrorCode::NotFoundWithinBound, "no prime yielded an eta word within the bound");
  } catch (const Error& e) {
    set_error(run, e);
  }
  rec.finish();
  return run;
}

PipelineRun run_pipeline(const PipelineConfig& config, const std::string& run_dir) {
  return config.field == "q" ? run_rational_pipeline(config, run_dir) : run_numberfield_pipeline(config, run_dir);
}

// -------------------------------------------------------------------- verify

VerifyReport verify_run(const std::string& run_dir) {
  VerifyReport report;
  auto check = [&](bool ok, const std::string& what) {
    ++report.checks;
    if (!ok) {
      report.ok = false;
      report.failures.push_back(what);
    }
  };
  const fs::path dir(run_dir);
  if (!fs::exists(dir / "run.json")) {
    check(false, "missing run.json");
    return report;
  }
  Json run;
  try {
    run = read_json_file((dir / "run.json").string());
  } catch (const Error& e) {
    check(false, e.what());
    return report;
  }
  std::map<std::string, SurfaceRep> reps;
  for (const auto& step : run.at("steps")) {
    const std::string name = step.at("artifact").get<std::string>();
    const fs::path path = dir / name;
    if (!fs::exists(path)) {
      check(false, "missing artifact " + name);
      continue;
    }
    try {
      const Json art = read_json_file(path.string());
      const Json& payload = art.at("payload");
      check(content_hash(payload) == step.at("output_hash").get<std::string>(), name + ": content hash mismatch");
      const std::string kind = art.at("kind").get<std::string>();
      const std::string input = art.at("input").get<std::string>();
      const SurfaceRep* in = reps.count(input) ? &reps.at(input) : nullptr;
      if (!input.empty()) check(in != nullptr || kind == "rep", name + ": input " + input + " is not a verified rep");
      if (kind == "rep") {
        SurfaceRep rep = surface_rep_from_json(payload);
        check(rep.determinants_one(), name + ": determinant != 1");
        check(rep.relator_holds(), name + ": surface relator broken");
        if (step.at("summary").value("integral", false)) check(rep.integral(), name + ": entries not integral");
        reps.emplace(name, std::move(rep));
      } else if (kind == "bend" && in != nullptr) {
        const BendCertificate cert = bend_certificate_from_json(payload);
        const BendChecks c = recheck(cert.a, in->images[0]);
        check(c.centralizes, name + ": A does not centralize rho(a1)");
        check(c.integral && c.det_one, name + ": A is not in SL(n, O_K)");
        check(c.positive_distinct_spectrum == cert.checks.positive_distinct_spectrum &&
                  c.non_reciprocal_charpoly == cert.checks.non_reciprocal_charpoly,
              name + ": recorded spectral checks differ from recomputation");
        check(eigenvalue_one_multiplicity(cert.a) == cert.one_multiplicity, name + ": eigenvalue-1 multiplicity");
        BendCertificate re = cert;
        re.checks = c;
        check(re.valid(), name + ": certificate does not validate");
      } else if (kind == "closure" && in != nullptr) {
        const FormSpace fsp = invariant_form_space(in->images);
        check(fsp.dim() == payload.at("form_space_dim").get<std::size_t>(), name + ": form space dimension");
        if (!payload.at("form").is_null())
          check(form_preserved(in->images, matrix_from_json(payload.at("form"), in->field)),
                name + ": recorded form not preserved");
        if (!payload.at("refutation").is_null()) {
          const Word w = in->presentation().parse(payload.at("refutation").get<std::string>());
          check(!principal_sl2_test(in->image(w)).consistent, name + ": refutation word is principal");
        }
        const std::string cls = payload.at("class").get<std::string>();
        if (cls == "FullSL" && in->n != 2)
          check(fsp.dim() == 0 && !payload.at("refutation").is_null(), name + ": FullSL without its witnesses");
      } else if (kind == "eta" && in != nullptr) {
        const Word w = in->presentation().parse(payload.at("word").get<std::string>());
        const auto zcp = to_z(in->image(w).charpoly());
        check(zcp.has_value() && *zcp == zpoly_from_json(payload.at("integral_charpoly")), name + ": eta charpoly");
        check(one_times_irreducible(in->image(w)), name + ": eta charpoly shape");
      } else if (kind == "family") {
        check(payload.at("b1_A") != payload.at("b1_A2") && payload.at("differ").get<bool>(),
              name + ": rho^A and rho^{A^2} agree on b1");
      }
    } catch (const std::exception& e) {
      check(false, name + ": " + e.what());
    }
  }
  return report;
}

}  // namespace hitbend
