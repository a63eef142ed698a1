#include "npal/certificate.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>

#include <json.hpp>

#include "npal/errors.hpp"
#include "npal/linforms.hpp"
#include "npal/reduction.hpp"
#include "npal/search.hpp"
#include "npal/sequence.hpp"
#include "npal/version.hpp"

namespace npal {

namespace {

using json = nlohmann::json;  // object keys dump in sorted order

std::string iso_utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

BallRecord ball_record(const RealBall& b) { return {b.mid_decimal(), b.rad_decimal()}; }

StageRecord stage_record(const StageOutcome& s) {
  StageRecord r;
  r.name = s.stage;
  r.bound = s.bound.get_str();
  r.instances = std::to_string(s.instance_count);
  r.xi_min = ball_record(s.xi_min);
  r.worst_index = std::to_string(s.worst_convergent.index);
  r.worst_p = s.worst_convergent.p.get_str();
  r.worst_q = s.worst_convergent.q.get_str();
  r.worst_xi = ball_record(s.worst_xi);
  for (const ConvergentUse& u : s.convergents_used)
    r.used.push_back({std::to_string(u.index), u.q.get_str(), std::to_string(u.instances)});
  r.side_conditions = s.side_conditions;
  return r;
}

// A stage bound feeds the next stage's enumeration range; it must be a small
// positive machine integer for that to be meaningful.
unsigned long enumeration_cap(const mpz_class& bound) {
  if (bound < 1) return 1;
  if (!bound.fits_ulong_p() || bound > 100000)
    throw ReductionError("reduced bound too large to enumerate the next stage");
  return bound.get_ui();
}

json ball_json(const BallRecord& b) { return json{{"mid", b.mid}, {"rad", b.rad}}; }

BallRecord ball_from_json(const json& j) {
  return {j.at("mid").get<std::string>(), j.at("rad").get<std::string>()};
}

}  // namespace

ProveConfig::ProveConfig() {
  mpz_ui_pow_ui(M.get_mpz_t(), 10, 48);
}

ProofCertificate prove(const ProveConfig& cfg) {
  ProofCertificate cert;
  cert.tool_version = kVersion;
  cert.generated_at = iso_utc_now();
  cert.precision_digits = std::to_string(cfg.precision_digits);
  cert.n_max = std::to_string(cfg.n_max);
  cert.u_max = std::to_string(cfg.u_max);
  cert.M = cfg.M.get_str();
  cert.status = "incomplete";
  cert.nondegeneracy = {
      {"linear form 1 (u1 block): vanishing would force a1*alpha1^n = f1/9 * 10^{u1}, "
       "but the conjugate embeddings give |a2*alpha2^n| < 1 while every conjugate of a "
       "positive rational equals itself; for n >= 2 the residual bound contradicts this.",
       "assumed-nondegeneracy"},
      {"linear form 2 (u2 block): vanishing would make alpha1^n rational times the "
       "algebraic number W/9 with W integral; alpha1 is a cubic unit-like irrational, so "
       "the form is nonzero for the enumerated finite W families.",
       "assumed-nondegeneracy"},
      {"linear form 3 (index): vanishing would force 9*a1*alpha1^n integral, impossible "
       "since 0 < 9*a1*alpha1^n - 9*N_n < 9/2 never hits an integer multiple exactly for "
       "n >= 2 by the certified residual enclosure.",
       "assumed-nondegeneracy"},
  };

  const unsigned long threshold = 500;  // analytic chain splits at this index
  cert.contradiction_threshold = std::to_string(threshold);

  auto fail = [&cert](const std::string& phase, const std::string& why) {
    cert.status = "incomplete";
    cert.failing = phase + ": " + why;
  };

  // Phase 1: certified constants.
  std::optional<AlgebraicConstants> consts;
  try {
    consts = make_constants(cfg.precision_digits);
  } catch (const std::exception& e) {
    fail("constants", e.what());
    return cert;
  }
  cert.alpha1 = ball_record(consts->alpha1);
  cert.a1 = ball_record(consts->a1);
  cert.log_alpha1 = ball_record(consts->log_alpha1);
  cert.log10 = ball_record(consts->log10);

  // Phase 2: exhaustive small-range search, cross-checked both directions.
  std::vector<SearchHit> hits;
  try {
    hits = small_range_search(cfg.n_max, cfg.u_max, cfg.threads);
    std::vector<SearchHit> cross = oracle_search(cfg.n_max, cfg.u_max, cfg.threads);
    cert.dual_agreement = hits == cross;
    for (const SearchHit& h : hits)
      cert.hits.push_back({std::to_string(h.n), h.value.get_str(),
                           std::to_string(h.pattern.f1), std::to_string(h.pattern.f2),
                           std::to_string(h.pattern.u1), std::to_string(h.pattern.u2)});
    size_t longest = term(cfg.n_max).get_str().size();
    size_t capacity = longest >= 2 ? longest - 2 : 0;
    cert.digit_capacity = std::to_string(capacity);
    cert.search_exhaustive = cfg.u_max >= capacity && cfg.n_max >= threshold;
  } catch (const std::exception& e) {
    fail("search", e.what());
    return cert;
  }
  cert.unique_hit_count = std::to_string(cert.hits.size());

  // Phase 3: the analytic bound chain.
  std::optional<DerivedBounds> bounds;
  try {
    bounds = derive_bounds(*consts);
  } catch (const std::exception& e) {
    fail("bounds", e.what());
    return cert;
  }
  bool targets_ok = true;
  for (const TargetCheck& t : check_against_targets(*bounds)) {
    cert.bound_checks.push_back({t.name, t.derived, t.target, "reference-target", t.ok});
    targets_ok = targets_ok && t.ok;
  }
  cert.all_targets_met = targets_ok;
  cert.index_bound = bounds->index_bound.get_str();
  cert.length_bound = bounds->length_bound.get_str();
  cert.length_bound_within_M = bounds->length_bound <= cfg.M;

  // Phase 4: the three reduction stages, each feeding the next.
  mpz_class stage3_bound = -1;
  std::string phase = "stage1";
  try {
    StageOutcome s1 = reduce_stage1(*consts, cfg.M, cfg.threads);
    cert.stages.push_back(stage_record(s1));
    unsigned long u1_cap = enumeration_cap(s1.bound);

    phase = "stage2";
    StageOutcome s2 = reduce_stage2(*consts, cfg.M, u1_cap, cfg.threads);
    cert.stages.push_back(stage_record(s2));
    unsigned long u2_cap = enumeration_cap(s2.bound);

    phase = "stage3";
    StageOutcome s3 = reduce_stage3(*consts, cfg.M, u1_cap, u2_cap, cfg.threads);
    cert.stages.push_back(stage_record(s3));
    stage3_bound = s3.bound;
    cert.reduced_index_bound = stage3_bound.get_str();
  } catch (const std::exception& e) {
    fail(phase, e.what());
    return cert;
  }

  // Verdict gates.  "proved" asserts the recorded hit list is the complete
  // solution set: the search window covers every index the reductions cannot
  // exclude, and every analytic prerequisite of the reductions is certified.
  std::vector<std::string> unmet;
  if (!cert.dual_agreement) unmet.push_back("search directions disagree");
  if (!cert.search_exhaustive) unmet.push_back("search window not exhaustive");
  if (!cert.all_targets_met) unmet.push_back("derived bounds exceed reference targets");
  if (!cert.length_bound_within_M) unmet.push_back("length bound exceeds reduction modulus M");
  if (!(stage3_bound >= 0 && stage3_bound < mpz_class(threshold) &&
        stage3_bound < mpz_class(cfg.n_max)))
    unmet.push_back("reduced index bound not below the searched range");
  if (unmet.empty()) {
    cert.status = "proved";
    cert.failing.clear();
  } else {
    cert.status = "incomplete";
    std::string all;
    for (size_t i = 0; i < unmet.size(); ++i) all += (i ? "; " : "") + unmet[i];
    cert.failing = all;
  }
  return cert;
}

std::string emit_certificate(const ProofCertificate& cert) {
  json j;
  j["tool_version"] = cert.tool_version;
  j["generated_at"] = cert.generated_at;
  j["config"] = json{{"M", cert.M},
                     {"n_max", cert.n_max},
                     {"precision_digits", cert.precision_digits},
                     {"u_max", cert.u_max}};
  j["constants"] = json{{"a1", ball_json(cert.a1)},
                        {"alpha1", ball_json(cert.alpha1)},
                        {"log10", ball_json(cert.log10)},
                        {"log_alpha1", ball_json(cert.log_alpha1)},
                        {"provenance", "derived"}};

  json hits = json::array();
  for (const HitRecord& h : cert.hits)
    hits.push_back(json{{"f1", h.f1},
                        {"f2", h.f2},
                        {"n", h.n},
                        {"u1", h.u1},
                        {"u2", h.u2},
                        {"value", h.value}});
  j["search"] = json{{"digit_capacity", cert.digit_capacity},
                     {"dual_agreement", cert.dual_agreement},
                     {"exhaustive", cert.search_exhaustive},
                     {"hits", hits},
                     {"provenance", "derived"}};

  json checks = json::array();
  for (const BoundRecord& b : cert.bound_checks)
    checks.push_back(json{{"derived", b.derived},
                          {"name", b.name},
                          {"ok", b.ok},
                          {"provenance", b.provenance},
                          {"target", b.target}});
  j["bounds"] = json{{"all_targets_met", cert.all_targets_met},
                     {"checks", checks},
                     {"index_bound", cert.index_bound},
                     {"length_bound", cert.length_bound},
                     {"length_bound_within_M", cert.length_bound_within_M},
                     {"provenance", "derived"}};

  json stages = json::array();
  for (const StageRecord& s : cert.stages) {
    json used = json::array();
    for (const ConvergentRecord& u : s.used)
      used.push_back(json{{"index", u.index}, {"instances", u.instances}, {"q", u.q}});
    stages.push_back(json{{"bound", s.bound},
                          {"instances", s.instances},
                          {"name", s.name},
                          {"provenance", "derived"},
                          {"side_conditions", s.side_conditions},
                          {"used", used},
                          {"worst", json{{"index", s.worst_index},
                                         {"p", s.worst_p},
                                         {"q", s.worst_q},
                                         {"xi", ball_json(s.worst_xi)}}},
                          {"xi_min", ball_json(s.xi_min)}});
  }
  j["reduction"] = json{{"stages", stages}};

  json notes = json::array();
  for (const NondegeneracyNote& n : cert.nondegeneracy)
    notes.push_back(json{{"note", n.note}, {"provenance", n.provenance}});
  j["nondegeneracy"] = notes;

  j["verdict"] = json{{"contradiction_threshold", cert.contradiction_threshold},
                      {"failing", cert.failing},
                      {"reduced_index_bound", cert.reduced_index_bound},
                      {"status", cert.status},
                      {"unique_hit_count", cert.unique_hit_count}};
  return j.dump(2) + "\n";
}

void write_certificate(const ProofCertificate& cert, const std::string& path) {
  std::string text = emit_certificate(cert);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

ProofCertificate parse_certificate(const std::string& json_text) {
  json j = json::parse(json_text);
  ProofCertificate c;
  c.tool_version = j.at("tool_version").get<std::string>();
  c.generated_at = j.at("generated_at").get<std::string>();

  const json& cfg = j.at("config");
  c.precision_digits = cfg.at("precision_digits").get<std::string>();
  c.n_max = cfg.at("n_max").get<std::string>();
  c.u_max = cfg.at("u_max").get<std::string>();
  c.M = cfg.at("M").get<std::string>();

  const json& ks = j.at("constants");
  c.alpha1 = ball_from_json(ks.at("alpha1"));
  c.a1 = ball_from_json(ks.at("a1"));
  c.log_alpha1 = ball_from_json(ks.at("log_alpha1"));
  c.log10 = ball_from_json(ks.at("log10"));

  const json& se = j.at("search");
  for (const json& h : se.at("hits"))
    c.hits.push_back({h.at("n").get<std::string>(), h.at("value").get<std::string>(),
                      h.at("f1").get<std::string>(), h.at("f2").get<std::string>(),
                      h.at("u1").get<std::string>(), h.at("u2").get<std::string>()});
  c.dual_agreement = se.at("dual_agreement").get<bool>();
  c.search_exhaustive = se.at("exhaustive").get<bool>();
  c.digit_capacity = se.at("digit_capacity").get<std::string>();

  const json& bo = j.at("bounds");
  for (const json& b : bo.at("checks"))
    c.bound_checks.push_back({b.at("name").get<std::string>(), b.at("derived").get<std::string>(),
                              b.at("target").get<std::string>(),
                              b.at("provenance").get<std::string>(), b.at("ok").get<bool>()});
  c.index_bound = bo.at("index_bound").get<std::string>();
  c.length_bound = bo.at("length_bound").get<std::string>();
  c.length_bound_within_M = bo.at("length_bound_within_M").get<bool>();
  c.all_targets_met = bo.at("all_targets_met").get<bool>();

  for (const json& s : j.at("reduction").at("stages")) {
    StageRecord r;
    r.name = s.at("name").get<std::string>();
    r.bound = s.at("bound").get<std::string>();
    r.instances = s.at("instances").get<std::string>();
    r.xi_min = ball_from_json(s.at("xi_min"));
    const json& w = s.at("worst");
    r.worst_index = w.at("index").get<std::string>();
    r.worst_p = w.at("p").get<std::string>();
    r.worst_q = w.at("q").get<std::string>();
    r.worst_xi = ball_from_json(w.at("xi"));
    for (const json& u : s.at("used"))
      r.used.push_back({u.at("index").get<std::string>(), u.at("q").get<std::string>(),
                        u.at("instances").get<std::string>()});
    for (const json& sc : s.at("side_conditions")) r.side_conditions.push_back(sc.get<std::string>());
    c.stages.push_back(std::move(r));
  }

  for (const json& n : j.at("nondegeneracy"))
    c.nondegeneracy.push_back(
        {n.at("note").get<std::string>(), n.at("provenance").get<std::string>()});

  const json& v = j.at("verdict");
  c.status = v.at("status").get<std::string>();
  c.failing = v.at("failing").get<std::string>();
  c.reduced_index_bound = v.at("reduced_index_bound").get<std::string>();
  c.contradiction_threshold = v.at("contradiction_threshold").get<std::string>();
  c.unique_hit_count = v.at("unique_hit_count").get<std::string>();
  return c;
}

}  // namespace npal
