#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace npal {

// Inputs of a full proof run.
struct ProveConfig {
  long precision_digits = 256;
  unsigned long n_max = 500;
  unsigned long u_max = 100;
  mpz_class M;  // reduction modulus bound; 10^48 when default-constructed
  int threads = 1;

  ProveConfig();
};

// All certificate payloads are decimal strings so the serialized form is
// exact and platform-independent.
struct BallRecord {
  std::string mid;
  std::string rad;
  bool operator==(const BallRecord&) const = default;
};

struct HitRecord {
  std::string n;
  std::string value;
  std::string f1, f2, u1, u2;
  bool operator==(const HitRecord&) const = default;
};

struct BoundRecord {
  std::string name;
  std::string derived;
  std::string target;
  std::string provenance;  // "derived" vs "reference-target"
  bool ok;
  bool operator==(const BoundRecord&) const = default;
};

struct ConvergentRecord {
  std::string index;
  std::string q;
  std::string instances;
  bool operator==(const ConvergentRecord&) const = default;
};

struct StageRecord {
  std::string name;
  std::string bound;
  std::string instances;
  BallRecord xi_min;
  std::string worst_index;
  std::string worst_p;
  std::string worst_q;
  BallRecord worst_xi;
  std::vector<ConvergentRecord> used;
  std::vector<std::string> side_conditions;
  bool operator==(const StageRecord&) const = default;
};

struct NondegeneracyNote {
  std::string note;
  std::string provenance;  // "assumed-nondegeneracy"
  bool operator==(const NondegeneracyNote&) const = default;
};

// Machine-readable record of a full run: configuration, certified constants,
// search results, the analytic bound chain, the three reduction stages, and
// the verdict gates.  Serialization is canonical (sorted keys, numbers as
// decimal strings, fixed indentation), so two runs with the same config and
// tool version are byte-identical except for `generated_at`.
struct ProofCertificate {
  std::string tool_version;
  std::string generated_at;  // the only field excluded from determinism

  std::string precision_digits;
  std::string n_max;
  std::string u_max;
  std::string M;

  BallRecord alpha1, a1, log_alpha1, log10;

  std::vector<HitRecord> hits;
  bool dual_agreement = false;
  bool search_exhaustive = false;
  std::string digit_capacity;

  std::vector<BoundRecord> bound_checks;
  std::string index_bound;
  std::string length_bound;
  bool length_bound_within_M = false;
  bool all_targets_met = false;

  std::vector<StageRecord> stages;

  std::vector<NondegeneracyNote> nondegeneracy;

  std::string status;  // "proved" | "incomplete"
  std::string failing;
  std::string reduced_index_bound;
  std::string contradiction_threshold;
  std::string unique_hit_count;

  bool operator==(const ProofCertificate&) const = default;
};

// Runs every phase and assembles the certificate.  Precision or reduction
// failures in a phase mark the certificate "incomplete" with the failing
// phase and its signal recorded; they do not throw.
ProofCertificate prove(const ProveConfig& cfg);

// Canonical serialization: deterministic bytes (see ProofCertificate).
std::string emit_certificate(const ProofCertificate& cert);

// Writes emit_certificate output to a file path, or stdout when path is
// empty or "-".  Throws std::runtime_error on I/O failure.
void write_certificate(const ProofCertificate& cert, const std::string& path);

// Inverse of emit_certificate; parse(emit(c)) == c.
ProofCertificate parse_certificate(const std::string& json_text);

}  // namespace npal
