#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treemult/families.hpp"
#include "treemult/lambda.hpp"

namespace treemult {

enum class TheoremStatus { Consistent, Violation, NotApplicable };

std::string_view to_string(TheoremStatus status) noexcept;
TheoremStatus parse_theorem_status(std::string_view text);

/// One audited (tree, lambda) pair.
///
/// thm13 checks the p-1 characterization: m = p-1 iff T is in Gamma_gamma.
/// thm14 checks the p-2 characterization per Gamma2_0 reading: m = p-2 iff T
/// is in Gamma2_gamma; only evaluated when lambda is an eigenvalue of T.
struct VerificationRecord {
  std::string tree;  // canonical graph6
  unsigned i = 0;
  unsigned denominator = 0;
  unsigned n = 0;
  unsigned p = 0;
  unsigned gamma = 0;
  unsigned m = 0;
  bool bound_ok = true;
  TheoremStatus thm13 = TheoremStatus::Consistent;
  std::vector<std::pair<Gamma2Mode, TheoremStatus>> thm14;
  std::vector<std::pair<Gamma2Mode, FamilyTag>> classification;
  std::string notes;

  TheoremStatus thm14_status(Gamma2Mode mode) const;
  FamilyTag classification_for(Gamma2Mode mode) const;
  bool flagged() const;
};

/// One JSON object per line; field names are part of the record file format.
std::string to_json_line(const VerificationRecord& record);
VerificationRecord record_from_json(std::string_view line);

struct LemmaToggles {
  bool path_multiplicity = true;
  bool parter_wiener = true;
  bool branch_lemma = true;
  bool pendant_deletion = true;
};

struct SweepConfig {
  std::size_t n_min = 1;
  std::size_t n_max = 10;
  unsigned max_denominator = 11;
  std::vector<Gamma2Mode> modes{Gamma2Mode::Broad};
  unsigned workers = 1;
  /// JSON-lines record file; empty disables persistence. The summary is
  /// written next to it with ".summary.json" appended.
  std::filesystem::path output;

  LemmaToggles lemma_checks;
  std::size_t path_n_max = 200;
  unsigned path_max_denominator = 40;
  std::size_t family_n_max = 14;
  unsigned family_k_max = 3;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

/// Violation counts for the p-2 characterization under one Gamma2_0 reading,
/// split by pendant count (paths, exactly three pendants, four or more).
struct ModeCounts {
  std::size_t evaluated = 0;
  std::size_t path_violations = 0;
  std::size_t three_pendant_violations = 0;
  std::size_t general_violations = 0;

  std::size_t total() const { return path_violations + three_pendant_violations + general_violations; }
};

struct SweepSummary {
  std::size_t trees = 0;
  std::size_t pairs = 0;
  std::size_t bound_violations = 0;
  std::size_t thm13_violations = 0;
  std::map<Gamma2Mode, ModeCounts> per_mode;

  /// Broad-mode failures are bugs or genuine counterexamples; strict-mode
  /// failures are fidelity findings and are reported separately.
  std::size_t violations() const;
  std::size_t strict_discrepancies() const;
};

void tally(SweepSummary& summary, const VerificationRecord& record);

struct SweepReport {
  SweepSummary summary;
  /// Every record with a failed check, in output order.
  std::vector<VerificationRecord> findings;
  double seconds = 0.0;
  unsigned workers = 1;
};

std::string summary_json(const SweepReport& report);

/// Exhaustive check over every tree with n_min <= n <= n_max and every
/// Chebyshev lambda with M <= max_denominator. Records are ordered by
/// (n, enumeration order, M, i) regardless of worker count. Throws
/// Error(EngineMismatch) if the two multiplicity engines ever disagree and
/// Error(IoFailure) if the record file cannot be written.
SweepReport sweep(const SweepConfig& config);

/// Audits one tree for every lambda in lambdas (shared classifier).
std::vector<VerificationRecord> audit_tree(const Tree& t, const std::vector<LambdaSpec>& lambdas,
                                           const std::vector<Gamma2Mode>& modes, const Classifier& classifier);

struct LemmaFinding {
  std::string lemma;
  std::string tree;
  std::string lambda;
  std::string detail;
};

struct LemmaReport {
  std::map<std::string, std::size_t> checked;
  std::map<std::string, std::size_t> violations;
  std::vector<LemmaFinding> findings;

  std::size_t total_violations() const;
};

/// Lemma property suites:
///   path_multiplicity      m(P_n) <= 1 with equality iff M | n+1 (paths up to path_n_max, M <= path_max_denominator)
///   parter_wiener_i/ii/iii existence and shape of a Parter vertex (trees n_min..n_max, M <= max_denominator)
///   branch_lemma           m(T-w) = m(T)+1 iff some branch H has m(H - u) = m(H) - 1 (same range)
///   pendant_deletion_i/ii  lambda is an eigenvalue of every Gamma_k member and deleting any pendant
///                          vertex lowers m by one (generated members, k <= family_k_max, n <= family_n_max)
LemmaReport lemma_suite(const SweepConfig& config);

struct AuditEntry {
  std::string tree;
  unsigned p = 0;
  unsigned level = 0;
  std::string residue;
};

struct AuditReport {
  std::size_t trees = 0;
  /// Non-Chebyshev roots at a multiplicity level k >= max(2, p-2).
  std::vector<AuditEntry> flags;
  /// Simple non-Chebyshev roots of trees with p = 3, where m = 1 = p-2.
  std::vector<AuditEntry> scope_notes;
};

AuditReport chebyshev_completeness_audit(std::size_t n_max, std::size_t n_min = 1);

}  // namespace treemult
