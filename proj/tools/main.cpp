#include <gmpxx.h>

#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "npal/certificate.hpp"
#include "npal/constants.hpp"
#include "npal/errors.hpp"
#include "npal/linforms.hpp"
#include "npal/reduction.hpp"
#include "npal/search.hpp"
#include "npal/sequence.hpp"
#include "npal/version.hpp"

namespace {

using nlohmann::json;

int resolve_threads(int t) {
  if (t > 0) return t;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

mpz_class parse_modulus(const std::string& s) {
  mpz_class m;
  if (m.set_str(s, 10) != 0 || m <= 0)
    throw npal::DomainError("--M must be a positive decimal integer");
  return m;
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + out_path);
}

json ball_json(const npal::RealBall& b) {
  return json{{"mid", b.mid_decimal()}, {"rad", b.rad_decimal()}};
}

json hits_json(const std::vector<npal::SearchHit>& hits) {
  json a = json::array();
  for (const npal::SearchHit& h : hits)
    a.push_back(json{{"f1", std::to_string(h.pattern.f1)},
                     {"f2", std::to_string(h.pattern.f2)},
                     {"n", std::to_string(h.n)},
                     {"u1", std::to_string(h.pattern.u1)},
                     {"u2", std::to_string(h.pattern.u2)},
                     {"value", h.value.get_str()}});
  return a;
}

json stage_json(const npal::StageOutcome& s) {
  json used = json::array();
  for (const npal::ConvergentUse& u : s.convergents_used)
    used.push_back(json{{"index", std::to_string(u.index)},
                        {"instances", std::to_string(u.instances)},
                        {"q", u.q.get_str()}});
  return json{{"bound", s.bound.get_str()},
              {"instances", std::to_string(s.instance_count)},
              {"name", s.stage},
              {"side_conditions", s.side_conditions},
              {"used", used},
              {"worst", json{{"index", std::to_string(s.worst_convergent.index)},
                             {"p", s.worst_convergent.p.get_str()},
                             {"q", s.worst_convergent.q.get_str()},
                             {"xi", ball_json(s.worst_xi)}}},
              {"xi_min", ball_json(s.xi_min)}};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string default_M = "1" + std::string(48, '0');  // 10^48

  CLI::App app{"certified prover: terms of N(k+3)=N(k+2)+N(k), N0=0, N1=N2=1 "
               "that are palindromic concatenations of two distinct repdigits"};
  app.set_version_flag("--version", npal::kVersion);
  app.require_subcommand(1);

  auto* term_cmd = app.add_subcommand("term", "print one exact term of the sequence");
  unsigned long term_n = 0;
  bool term_binet = false;
  long term_prec = 256;
  std::string term_out;
  term_cmd->add_option("n", term_n, "term index")->required();
  term_cmd->add_flag("--binet", term_binet,
                     "also certify that the closed form rounds to the same integer");
  term_cmd->add_option("--precision-digits", term_prec, "working precision, decimal digits")
      ->capture_default_str();
  term_cmd->add_option("--out", term_out, "write JSON to this path ('-' = stdout)");

  auto* search_cmd =
      app.add_subcommand("search", "exhaustive pattern search over a term range, both directions");
  unsigned long search_nmax = 500, search_umax = 100;
  int search_threads = 0;
  std::string search_out;
  search_cmd->add_option("--n-max", search_nmax, "largest term index scanned")
      ->capture_default_str();
  search_cmd->add_option("--u-max", search_umax, "largest repdigit block length considered")
      ->capture_default_str();
  search_cmd->add_option("--threads", search_threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  search_cmd->add_option("--out", search_out, "write JSON to this path ('-' = stdout)");

  auto* bounds_cmd =
      app.add_subcommand("bounds", "derive the analytic index and length bounds");
  long bounds_prec = 256;
  std::string bounds_out;
  bounds_cmd->add_option("--precision-digits", bounds_prec, "working precision, decimal digits")
      ->capture_default_str();
  bounds_cmd->add_option("--out", bounds_out, "write JSON to this path ('-' = stdout)");

  auto* reduce_cmd = app.add_subcommand("reduce", "run one continued-fraction reduction stage");
  int reduce_stage = 0;
  long reduce_prec = 256;
  std::string reduce_M = default_M;
  unsigned long reduce_u1 = 52, reduce_u2 = 57;
  int reduce_threads = 0;
  std::string reduce_out;
  reduce_cmd->add_option("--stage", reduce_stage, "stage number")
      ->required()
      ->check(CLI::Range(1, 3));
  reduce_cmd->add_option("--precision-digits", reduce_prec, "working precision, decimal digits")
      ->capture_default_str();
  reduce_cmd->add_option("--M", reduce_M, "reduction modulus bound, decimal")
      ->capture_default_str();
  reduce_cmd->add_option("--u1-max", reduce_u1, "leading-block cap fed into stages 2 and 3")
      ->capture_default_str();
  reduce_cmd->add_option("--u2-max", reduce_u2, "middle-block cap fed into stage 3")
      ->capture_default_str();
  reduce_cmd->add_option("--threads", reduce_threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  reduce_cmd->add_option("--out", reduce_out, "write JSON to this path ('-' = stdout)");

  auto* prove_cmd =
      app.add_subcommand("prove", "run every phase and emit the full proof certificate");
  long prove_prec = 256;
  unsigned long prove_nmax = 500, prove_umax = 100;
  std::string prove_M = default_M;
  int prove_threads = 0;
  std::string prove_out;
  prove_cmd->add_option("--precision-digits", prove_prec, "working precision, decimal digits")
      ->capture_default_str();
  prove_cmd->add_option("--n-max", prove_nmax, "largest term index scanned")
      ->capture_default_str();
  prove_cmd->add_option("--u-max", prove_umax, "largest repdigit block length considered")
      ->capture_default_str();
  prove_cmd->add_option("--M", prove_M, "reduction modulus bound, decimal")
      ->capture_default_str();
  prove_cmd->add_option("--threads", prove_threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  prove_cmd->add_option("--out", prove_out, "write the certificate to this path ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (term_cmd->parsed()) {
      mpz_class v = npal::term(term_n);
      bool agrees = false;
      if (term_binet) {
        npal::AlgebraicConstants c = npal::make_constants(term_prec);
        agrees = npal::binet_term(term_n, c) == v;
        if (!agrees) {
          std::cerr << "closed form disagrees with the recurrence at n=" << term_n << "\n";
          return 2;
        }
      }
      if (term_out.empty()) {
        std::cout << v.get_str() << "\n";
        if (term_binet) std::cout << "binet-agrees: true\n";
      } else {
        json j{{"n", std::to_string(term_n)}, {"value", v.get_str()}};
        if (term_binet) j["binet_agrees"] = true;
        emit(j, term_out);
      }
      return 0;
    }

    if (search_cmd->parsed()) {
      int threads = resolve_threads(search_threads);
      std::vector<npal::SearchHit> fwd = npal::small_range_search(search_nmax, search_umax, threads);
      std::vector<npal::SearchHit> rev = npal::oracle_search(search_nmax, search_umax, threads);
      bool agree = fwd == rev;
      json j{{"dual_agreement", agree},
             {"hits", hits_json(fwd)},
             {"n_max", std::to_string(search_nmax)},
             {"u_max", std::to_string(search_umax)}};
      emit(j, search_out);
      if (!agree) {
        std::cerr << "search directions disagree\n";
        return 2;
      }
      return 0;
    }

    if (bounds_cmd->parsed()) {
      npal::AlgebraicConstants c = npal::make_constants(bounds_prec);
      npal::DerivedBounds b = npal::derive_bounds(c);
      json checks = json::array();
      bool all_ok = true;
      for (const npal::TargetCheck& t : npal::check_against_targets(b)) {
        checks.push_back(json{{"derived", t.derived},
                              {"name", t.name},
                              {"ok", t.ok},
                              {"provenance", "reference-target"},
                              {"target", t.target}});
        all_ok = all_ok && t.ok;
      }
      json j{{"all_targets_met", all_ok},
             {"checks", checks},
             {"index_bound", b.index_bound.get_str()},
             {"length_bound", b.length_bound.get_str()},
             {"precision_digits", std::to_string(bounds_prec)}};
      emit(j, bounds_out);
      return all_ok ? 0 : 2;
    }

    if (reduce_cmd->parsed()) {
      mpz_class M = parse_modulus(reduce_M);
      int threads = resolve_threads(reduce_threads);
      npal::AlgebraicConstants c = npal::make_constants(reduce_prec);
      npal::StageOutcome s =
          reduce_stage == 1 ? npal::reduce_stage1(c, M, threads)
          : reduce_stage == 2
              ? npal::reduce_stage2(c, M, reduce_u1, threads)
              : npal::reduce_stage3(c, M, reduce_u1, reduce_u2, threads);
      json j = stage_json(s);
      j["M"] = M.get_str();
      j["precision_digits"] = std::to_string(reduce_prec);
      emit(j, reduce_out);
      return 0;
    }

    if (prove_cmd->parsed()) {
      npal::ProveConfig cfg;
      cfg.precision_digits = prove_prec;
      cfg.n_max = prove_nmax;
      cfg.u_max = prove_umax;
      cfg.M = parse_modulus(prove_M);
      cfg.threads = resolve_threads(prove_threads);
      npal::ProofCertificate cert = npal::prove(cfg);
      npal::write_certificate(cert, prove_out);
      std::cerr << "status: " << cert.status
                << (cert.failing.empty() ? "" : " (" + cert.failing + ")") << "\n";
      return cert.status == "proved" ? 0 : 2;
    }
  } catch (const npal::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const npal::PrecisionError& e) {
    std::cerr << "precision failure: " << e.what() << "\n";
    return 2;
  } catch (const npal::ReductionError& e) {
    std::cerr << "reduction failure: " << e.what() << "\n";
    return 2;
  } catch (const npal::InvalidPattern& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
