#include "treemult/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "treemult/enumerate.hpp"
#include "treemult/error.hpp"
#include "treemult/graph6.hpp"
#include "treemult/spectrum.hpp"

namespace treemult {

using json = nlohmann::ordered_json;

std::string_view to_string(TheoremStatus status) noexcept {
  switch (status) {
    case TheoremStatus::Consistent: return "CONSISTENT";
    case TheoremStatus::Violation: return "VIOLATION";
    case TheoremStatus::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

TheoremStatus parse_theorem_status(std::string_view text) {
  if (text == "CONSISTENT") return TheoremStatus::Consistent;
  if (text == "VIOLATION") return TheoremStatus::Violation;
  if (text == "NOT_APPLICABLE") return TheoremStatus::NotApplicable;
  throw std::invalid_argument("bad status '" + std::string(text) + "'");
}

TheoremStatus VerificationRecord::thm14_status(Gamma2Mode mode) const {
  for (const auto& [m, s] : thm14) {
    if (m == mode) return s;
  }
  throw std::out_of_range("record has no entry for mode " + std::string(to_string(mode)));
}

FamilyTag VerificationRecord::classification_for(Gamma2Mode mode) const {
  for (const auto& [m, tag] : classification) {
    if (m == mode) return tag;
  }
  throw std::out_of_range("record has no entry for mode " + std::string(to_string(mode)));
}

bool VerificationRecord::flagged() const {
  if (!bound_ok || thm13 == TheoremStatus::Violation) return true;
  return std::any_of(thm14.begin(), thm14.end(), [](const auto& e) { return e.second == TheoremStatus::Violation; });
}

std::string to_json_line(const VerificationRecord& r) {
  json j;
  j["tree"] = r.tree;
  j["lambda"] = {r.i, r.denominator};
  j["p"] = r.p;
  j["gamma"] = r.gamma;
  j["m"] = r.m;
  j["bound_ok"] = r.bound_ok;
  j["thm13_status"] = std::string(to_string(r.thm13));
  json thm14 = json::object();
  for (const auto& [mode, s] : r.thm14) thm14[std::string(to_string(mode))] = std::string(to_string(s));
  j["thm14_status"] = std::move(thm14);
  json cls = json::object();
  for (const auto& [mode, tag] : r.classification) cls[std::string(to_string(mode))] = tag.to_string();
  j["classification"] = std::move(cls);
  j["notes"] = r.notes;
  return j.dump();
}

VerificationRecord record_from_json(std::string_view line) {
  VerificationRecord r;
  try {
    const json j = json::parse(line);
    r.tree = j.at("tree").get<std::string>();
    r.i = j.at("lambda").at(0).get<unsigned>();
    r.denominator = j.at("lambda").at(1).get<unsigned>();
    r.p = j.at("p").get<unsigned>();
    r.gamma = j.at("gamma").get<unsigned>();
    r.m = j.at("m").get<unsigned>();
    r.bound_ok = j.at("bound_ok").get<bool>();
    r.thm13 = parse_theorem_status(j.at("thm13_status").get<std::string>());
    for (const auto& [mode, s] : j.at("thm14_status").items()) {
      r.thm14.emplace_back(parse_gamma2_mode(mode), parse_theorem_status(s.get<std::string>()));
    }
    for (const auto& [mode, tag] : j.at("classification").items()) {
      r.classification.emplace_back(parse_gamma2_mode(mode), FamilyTag::parse(tag.get<std::string>()));
    }
    r.notes = j.value("notes", "");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad record: ") + e.what());
  }
  r.n = static_cast<unsigned>(decode_graph6(r.tree).first);
  return r;
}

void SweepConfig::validate() const {
  if (n_min < 1 || n_min > n_max) throw std::invalid_argument("need 1 <= n_min <= n_max");
  if (n_max > kDefaultEnumerationCap) {
    throw Error(ErrorCode::LimitExceeded,
                "n_max = " + std::to_string(n_max) + " exceeds cap " + std::to_string(kDefaultEnumerationCap));
  }
  if (max_denominator < 2) throw std::invalid_argument("M_max must be at least 2");
  if (modes.empty()) throw std::invalid_argument("at least one mode is required");
  if (path_max_denominator < 2) throw std::invalid_argument("path M_max must be at least 2");
  if (family_n_max > kGenerationCap) {
    throw Error(ErrorCode::LimitExceeded, "family n_max exceeds cap " + std::to_string(kGenerationCap));
  }
}

std::size_t SweepSummary::violations() const {
  std::size_t total = bound_violations + thm13_violations;
  if (auto it = per_mode.find(Gamma2Mode::Broad); it != per_mode.end()) total += it->second.total();
  return total;
}

std::size_t SweepSummary::strict_discrepancies() const {
  auto it = per_mode.find(Gamma2Mode::Strict);
  return it == per_mode.end() ? 0 : it->second.total();
}

void tally(SweepSummary& summary, const VerificationRecord& r) {
  ++summary.pairs;
  if (!r.bound_ok) ++summary.bound_violations;
  if (r.thm13 == TheoremStatus::Violation) ++summary.thm13_violations;
  for (const auto& [mode, status] : r.thm14) {
    ModeCounts& counts = summary.per_mode[mode];
    if (status == TheoremStatus::NotApplicable) continue;
    ++counts.evaluated;
    if (status != TheoremStatus::Violation) continue;
    if (r.p <= 2) {
      ++counts.path_violations;
    } else if (r.p == 3) {
      ++counts.three_pendant_violations;
    } else {
      ++counts.general_violations;
    }
  }
}

std::string summary_json(const SweepReport& report) {
  const SweepSummary& s = report.summary;
  json j;
  j["trees"] = s.trees;
  j["pairs"] = s.pairs;
  j["bound"] = {{"violations", s.bound_violations}};
  j["p_minus_1"] = {{"violations", s.thm13_violations}};
  json modes = json::object();
  for (const auto& [mode, c] : s.per_mode) {
    modes[std::string(to_string(mode))] = {
        {mode == Gamma2Mode::Broad ? "violations" : "discrepancies", c.total()},
        {"evaluated", c.evaluated},
        {"p_eq_2", c.path_violations},
        {"p_eq_3", c.three_pendant_violations},
        {"p_ge_4", c.general_violations},
    };
  }
  j["p_minus_2"] = std::move(modes);
  j["violations"] = s.violations();
  j["strict_discrepancies"] = s.strict_discrepancies();
  j["seconds"] = report.seconds;
  j["workers"] = report.workers;
  return j.dump(2);
}

namespace {

std::string describe(Gamma2Mode mode, unsigned m, unsigned p, const FamilyTag& tag) {
  std::string out = "p-2 characterization (" + std::string(to_string(mode)) + "): ";
  out += m + 2 == p ? "m = p-2" : "m = " + std::to_string(m) + " != p-2";
  out += " but class " + tag.to_string();
  return out;
}

}  // namespace

std::vector<VerificationRecord> audit_tree(const Tree& t, const std::vector<LambdaSpec>& lambdas,
                                           const std::vector<Gamma2Mode>& modes, const Classifier& classifier) {
  const std::string g6 = emit_graph6(t);
  const Polynomial cp = char_poly(t);
  const auto p = static_cast<unsigned>(pendant_count(t));
  const auto gamma = static_cast<unsigned>(major_count(t));
  const bool path = t.is_path();

  std::vector<VerificationRecord> out;
  out.reserve(lambdas.size());
  for (const LambdaSpec& lambda : lambdas) {
    VerificationRecord r;
    r.tree = g6;
    r.i = lambda.numerator();
    r.denominator = lambda.denominator();
    r.n = static_cast<unsigned>(t.size());
    r.p = p;
    r.gamma = gamma;
    r.m = multiplicity(cp, lambda.minimal_poly());
    const unsigned by_rank = multiplicity_via_rank(t, lambda);
    if (by_rank != r.m) {
      throw Error(ErrorCode::EngineMismatch, g6 + " at " + lambda.to_string() + ": charpoly gives " +
                                                std::to_string(r.m) + ", rank gives " + std::to_string(by_rank));
    }
    r.bound_ok = path ? r.m <= 1 : r.m + 1 <= p;

    std::vector<std::string> notes;
    if (!r.bound_ok) notes.emplace_back("multiplicity bound exceeded");

    const bool in_gamma = classifier.in_gamma(t, lambda);
    const bool at_p1 = r.m + 1 == p;
    r.thm13 = at_p1 == in_gamma ? TheoremStatus::Consistent : TheoremStatus::Violation;
    if (r.thm13 == TheoremStatus::Violation) {
      notes.push_back(std::string("p-1 characterization: ") + (at_p1 ? "m = p-1 but not GAMMA" : "GAMMA but m != p-1"));
    }

    for (Gamma2Mode mode : modes) {
      const FamilyTag tag = classifier.classify_tag(t, lambda, mode);
      r.classification.emplace_back(mode, tag);
      TheoremStatus status = TheoremStatus::NotApplicable;
      if (r.m >= 1) {
        const bool member = tag.family == Family::Gamma2;
        status = (r.m + 2 == p) == member ? TheoremStatus::Consistent : TheoremStatus::Violation;
        if (status == TheoremStatus::Violation) notes.push_back(describe(mode, r.m, p, tag));
      }
      r.thm14.emplace_back(mode, status);
    }
    for (std::size_t k = 0; k < notes.size(); ++k) r.notes += (k ? "; " : "") + notes[k];
    out.push_back(std::move(r));
  }
  return out;
}

SweepReport sweep(const SweepConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto& lambdas = chebyshev_lambdas(config.max_denominator);
  const unsigned workers = std::max(1u, config.workers);
  const Classifier classifier;

  std::ofstream records;
  if (!config.output.empty()) {
    records.open(config.output, std::ios::trunc);
    if (!records) throw Error(ErrorCode::IoFailure, "cannot open " + config.output.string());
  }

  SweepReport report;
  report.workers = workers;
  constexpr std::size_t kBatch = 256;
  std::vector<Tree> batch;
  std::vector<std::vector<VerificationRecord>> results;

  auto flush = [&] {
    results.assign(batch.size(), {});
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (std::size_t idx = next++; idx < batch.size(); idx = next++) {
        try {
          results[idx] = audit_tree(batch[idx], lambdas, config.modes, classifier);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = batch.size();
        }
      }
    };
    if (workers == 1 || batch.size() == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, batch.size()));
      for (unsigned w = 0; w < count; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& tree_records : results) {
      ++report.summary.trees;
      for (const auto& r : tree_records) {
        tally(report.summary, r);
        if (r.flagged()) report.findings.push_back(r);
        if (records.is_open()) records << to_json_line(r) << '\n';
      }
    }
    if (records.is_open() && !records) throw Error(ErrorCode::IoFailure, "write failed: " + config.output.string());
    batch.clear();
  };

  for (std::size_t n = config.n_min; n <= config.n_max; ++n) {
    FreeTreeEnumerator trees(n, kDefaultEnumerationCap);
    while (auto t = trees.next()) {
      batch.push_back(std::move(*t));
      if (batch.size() == kBatch) flush();
    }
  }
  if (!batch.empty()) flush();

  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (records.is_open()) {
    records.close();
    if (!records) throw Error(ErrorCode::IoFailure, "write failed: " + config.output.string());
    auto summary_path = config.output;
    summary_path += ".summary.json";
    std::ofstream summary(summary_path, std::ios::trunc);
    summary << summary_json(report) << '\n';
    if (!summary) throw Error(ErrorCode::IoFailure, "write failed: " + summary_path.string());
  }
  return report;
}

std::size_t LemmaReport::total_violations() const {
  std::size_t total = 0;
  for (const auto& [name, count] : violations) total += count;
  return total;
}

namespace {

class LemmaChecker {
 public:
  explicit LemmaChecker(LemmaReport& report) : report_(report) {}

  void check(const std::string& lemma, bool ok, const Tree& t, const LambdaSpec& lambda, const std::string& detail) {
    ++report_.checked[lemma];
    report_.violations[lemma] += 0;
    if (ok) return;
    ++report_.violations[lemma];
    report_.findings.push_back({lemma, emit_graph6(t), lambda.to_string(), detail});
  }

 private:
  LemmaReport& report_;
};

// Characteristic polynomials of every component of T - v, for all v, plus
// the same one level deeper (H - attach) for the branch lemma.
struct DeletionData {
  std::vector<ForestDecomposition> forests;
  std::vector<std::vector<Polynomial>> component_polys;
  std::vector<std::vector<Polynomial>> reduced_polys;  // product over H - attach
};

DeletionData deletion_data(const Tree& t) {
  DeletionData d;
  for (Vertex v = 0; v < t.size(); ++v) {
    ForestDecomposition forest = delete_vertex(t, v);
    std::vector<Polynomial> polys;
    std::vector<Polynomial> reduced;
    for (const auto& comp : forest.components) {
      polys.push_back(char_poly(comp.tree));
      Polynomial product = Polynomial::constant(1);
      for (const auto& sub : delete_vertex(comp.tree, comp.attach).components) product *= char_poly(sub.tree);
      reduced.push_back(std::move(product));
    }
    d.forests.push_back(std::move(forest));
    d.component_polys.push_back(std::move(polys));
    d.reduced_polys.push_back(std::move(reduced));
  }
  return d;
}

void parter_and_branch(const Tree& t, const LambdaSpec& lambda, const Polynomial& cp, const DeletionData& d,
                       const LemmaToggles& toggles, LemmaChecker& check) {
  const Polynomial& mu = lambda.minimal_poly();
  const unsigned m = multiplicity(cp, mu);
  const std::size_t n = t.size();
  std::vector<std::vector<unsigned>> comp_m(n);
  std::vector<unsigned> mv(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& poly : d.component_polys[v]) {
      comp_m[v].push_back(multiplicity(poly, mu));
      mv[v] += comp_m[v].back();
    }
  }

  if (toggles.parter_wiener && m >= 1 && std::any_of(mv.begin(), mv.end(), [](unsigned x) { return x >= 1; })) {
    bool found_i = false;
    bool found_ii = false;
    bool found_iii = false;
    for (Vertex w = 0; w < n; ++w) {
      if (mv[w] != m + 1) continue;
      found_i = true;
      const auto carrying = std::count_if(comp_m[w].begin(), comp_m[w].end(), [](unsigned x) { return x >= 1; });
      const auto simple = std::count(comp_m[w].begin(), comp_m[w].end(), 1u);
      if (t.degree(w) >= 3 && carrying >= 3) found_ii = true;
      if (t.degree(w) >= 2 && simple >= 2) found_iii = true;
    }
    const std::string m_text = "m = " + std::to_string(m);
    check.check("parter_wiener_i", found_i, t, lambda, m_text + ", no vertex w with m(T-w) = m+1");
    if (m >= 2) check.check("parter_wiener_ii", found_ii, t, lambda, m_text + ", no Parter vertex of the required shape");
    if (m == 1) check.check("parter_wiener_iii", found_iii, t, lambda, m_text + ", no Parter vertex of the required shape");
  }

  if (toggles.branch_lemma) {
    for (Vertex w = 0; w < n; ++w) {
      if (mv[w] == 0) continue;
      bool branch = false;
      for (std::size_t c = 0; c < comp_m[w].size(); ++c) {
        if (multiplicity(d.reduced_polys[w][c], mu) + 1 == comp_m[w][c]) branch = true;
      }
      const bool parter = mv[w] == m + 1;
      check.check("branch_lemma", parter == branch, t, lambda,
                  "w = " + std::to_string(w) + ": m(T-w) = m+1 is " + (parter ? "true" : "false") +
                      " but a qualifying branch " + (branch ? "exists" : "does not exist"));
    }
  }
}

}  // namespace

LemmaReport lemma_suite(const SweepConfig& config) {
  config.validate();
  LemmaReport report;
  LemmaChecker check(report);
  const LemmaToggles& toggles = config.lemma_checks;

  if (toggles.path_multiplicity) {
    const auto& lambdas = chebyshev_lambdas(config.path_max_denominator);
    Polynomial prev = Polynomial::constant(1);
    Polynomial cur = Polynomial::x();
    for (std::size_t n = 1; n <= config.path_n_max; ++n) {
      const Tree path = Tree::path(n);
      for (const LambdaSpec& lambda : lambdas) {
        const unsigned m = multiplicity(cur, lambda.minimal_poly());
        const bool divides = (n + 1) % lambda.denominator() == 0;
        check.check("path_multiplicity", m <= 1 && (m == 1) == divides, path, lambda,
                    "m(P_" + std::to_string(n) + ") = " + std::to_string(m));
      }
      Polynomial next = Polynomial::x() * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
  }

  if (toggles.parter_wiener || toggles.branch_lemma) {
    const auto& lambdas = chebyshev_lambdas(config.max_denominator);
    for (std::size_t n = config.n_min; n <= config.n_max; ++n) {
      for_each_tree(n, [&](const Tree& t) {
        const Polynomial cp = char_poly(t);
        const DeletionData d = deletion_data(t);
        for (const LambdaSpec& lambda : lambdas) parter_and_branch(t, lambda, cp, d, toggles, check);
        return true;
      });
    }
  }

  if (toggles.pendant_deletion) {
    for (const LambdaSpec& lambda : chebyshev_lambdas(config.max_denominator)) {
      for (unsigned k = 0; k <= config.family_k_max; ++k) {
        for (const Tree& t : generate(Family::Gamma, k, lambda, config.family_n_max)) {
          const unsigned m = multiplicity(t, lambda);
          check.check("pendant_deletion_i", m >= 1, t, lambda, "lambda is not an eigenvalue of a Gamma member");
          for (Vertex v : pendant_vertices(t)) {
            const unsigned mv = t.size() == 1 ? 0 : multiplicity(delete_vertex(t, v), lambda);
            check.check("pendant_deletion_ii", mv + 1 == m, t, lambda,
                        "pendant " + std::to_string(v) + ": m(T-v) = " + std::to_string(mv) +
                            ", m(T) = " + std::to_string(m));
          }
        }
      }
    }
  }
  return report;
}

AuditReport chebyshev_completeness_audit(std::size_t n_max, std::size_t n_min) {
  if (n_max > kDefaultEnumerationCap) {
    throw Error(ErrorCode::LimitExceeded,
                "n_max = " + std::to_string(n_max) + " exceeds cap " + std::to_string(kDefaultEnumerationCap));
  }
  AuditReport report;
  for (std::size_t n = std::max<std::size_t>(1, n_min); n <= n_max; ++n) {
    for_each_tree(n, [&](const Tree& t) {
      ++report.trees;
      const auto p = static_cast<unsigned>(pendant_count(t));
      const unsigned threshold = std::max(2u, p >= 2 ? p - 2 : 0u);
      const EigenSupportProfile profile = eigen_support_audit(t);
      for (const SupportLevel& level : profile.levels) {
        if (!level.has_uncovered_roots()) continue;
        AuditEntry entry{emit_graph6(t), p, level.multiplicity, level.residue.to_string()};
        if (level.multiplicity >= threshold) {
          report.flags.push_back(std::move(entry));
        } else if (level.multiplicity == 1 && p == 3) {
          report.scope_notes.push_back(std::move(entry));
        }
      }
      return true;
    });
  }
  return report;
}

}  // namespace treemult
