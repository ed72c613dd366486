#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "treemult/error.hpp"
#include "treemult/graph6.hpp"
#include "treemult/verify.hpp"

using treemult::FamilyTag;
using treemult::Gamma2Mode;
using treemult::SweepConfig;
using treemult::TheoremStatus;
using treemult::Tree;
using treemult::VerificationRecord;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("treemult_test_" + name);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<VerificationRecord> read_records(const std::filesystem::path& path) {
  std::vector<VerificationRecord> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) out.push_back(treemult::record_from_json(line));
  return out;
}

}  // namespace

TEST(Verify, RecordJsonRoundTrip) {
  VerificationRecord r;
  r.tree = "Cs";
  r.i = 1;
  r.denominator = 6;
  r.n = 4;
  r.p = 3;
  r.gamma = 1;
  r.m = 1;
  r.thm14 = {{Gamma2Mode::Broad, TheoremStatus::Consistent}, {Gamma2Mode::Strict, TheoremStatus::Violation}};
  r.classification = {{Gamma2Mode::Broad, FamilyTag{treemult::Family::Gamma2, 1}}, {Gamma2Mode::Strict, FamilyTag{}}};
  r.notes = "note";
  const std::string line = treemult::to_json_line(r);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(line.rfind(R"({"tree":"Cs","lambda":[1,6],"p":3,"gamma":1,"m":1,"bound_ok":true,)", 0), 0u);
  const VerificationRecord back = treemult::record_from_json(line);
  EXPECT_EQ(treemult::to_json_line(back), line);
  EXPECT_EQ(back.n, 4u);
  EXPECT_TRUE(back.flagged());
  EXPECT_EQ(back.classification_for(Gamma2Mode::Broad).to_string(), "GAMMA2(1)");
  EXPECT_THROW(treemult::record_from_json("{}"), std::invalid_argument);
}

TEST(Verify, ConfigValidation) {
  SweepConfig c;
  c.n_max = 21;
  EXPECT_THROW(c.validate(), treemult::Error);
  c.n_max = 5;
  c.max_denominator = 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.max_denominator = 2;
  c.modes.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.modes = {Gamma2Mode::Broad};
  c.n_min = 6;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Verify, SmallSweepRecordsPathNotApplicable) {
  SweepConfig c;
  c.n_max = 4;
  c.max_denominator = 2;
  const auto report = treemult::sweep(c);
  EXPECT_EQ(report.summary.trees, 5u);
  EXPECT_EQ(report.summary.pairs, 5u);
  EXPECT_EQ(report.summary.violations(), 0u);

  c.output = temp_file("p4.jsonl");
  treemult::sweep(c);
  const std::string p4 = treemult::emit_graph6(Tree::path(4));
  bool found = false;
  for (const auto& r : read_records(c.output)) {
    if (r.tree != p4) continue;
    found = true;
    EXPECT_EQ(r.m, 0u);
    EXPECT_EQ(r.thm14_status(Gamma2Mode::Broad), TheoremStatus::NotApplicable);
  }
  EXPECT_TRUE(found);
}

TEST(Verify, RecordInvariantsHold) {
  SweepConfig c;
  c.n_max = 8;
  c.max_denominator = 9;
  c.modes = {Gamma2Mode::Broad, Gamma2Mode::Strict};
  c.output = temp_file("inv.jsonl");
  treemult::sweep(c);
  const auto records = read_records(c.output);
  ASSERT_FALSE(records.empty());
  for (const auto& r : records) {
    const bool path = r.gamma == 0;
    EXPECT_EQ(r.bound_ok, (path && r.m <= 1) || r.m + 1 <= r.p);
    const bool gamma = r.classification_for(Gamma2Mode::Broad) == FamilyTag{treemult::Family::Gamma, r.gamma};
    EXPECT_EQ(r.thm13 == TheoremStatus::Consistent, (r.m + 1 == r.p) == gamma);
    for (Gamma2Mode mode : {Gamma2Mode::Broad, Gamma2Mode::Strict}) {
      const auto status = r.thm14_status(mode);
      if (r.m == 0) {
        EXPECT_EQ(status, TheoremStatus::NotApplicable);
        continue;
      }
      const bool member = r.classification_for(mode) == FamilyTag{treemult::Family::Gamma2, r.gamma};
      EXPECT_EQ(status == TheoremStatus::Consistent, (r.m + 2 == r.p) == member);
    }
    EXPECT_EQ(r.flagged(), !r.notes.empty());
  }
}

TEST(Verify, OutputIndependentOfWorkerCount) {
  SweepConfig c;
  c.n_max = 10;
  c.max_denominator = 8;
  c.modes = {Gamma2Mode::Broad, Gamma2Mode::Strict};
  c.output = temp_file("w1.jsonl");
  c.workers = 1;
  const auto one = treemult::sweep(c);
  c.output = temp_file("w3.jsonl");
  c.workers = 3;
  const auto three = treemult::sweep(c);
  EXPECT_EQ(slurp(temp_file("w1.jsonl")), slurp(temp_file("w3.jsonl")));
  EXPECT_EQ(one.summary.pairs, three.summary.pairs);
  EXPECT_TRUE(std::filesystem::exists(temp_file("w3.jsonl.summary.json")));
}

TEST(Verify, UnwritableOutputIsIoFailure) {
  SweepConfig c;
  c.n_max = 3;
  c.max_denominator = 3;
  c.output = "/nonexistent-dir/records.jsonl";
  try {
    treemult::sweep(c);
    ADD_FAILURE() << "expected IO_FAILURE";
  } catch (const treemult::Error& e) {
    EXPECT_EQ(e.code(), treemult::ErrorCode::IoFailure);
  }
}

TEST(Verify, StrictDiscrepanciesIncludeKnownExemplars) {
  SweepConfig c;
  c.n_max = 8;
  c.max_denominator = 8;
  c.modes = {Gamma2Mode::Strict, Gamma2Mode::Broad};
  const auto report = treemult::sweep(c);
  const std::string star = treemult::emit_graph6(Tree::star(3));
  const std::string spider = treemult::emit_graph6(Tree::spider({3, 3, 1}));
  bool saw_star = false;
  bool saw_spider = false;
  for (const auto& r : report.findings) {
    if (r.thm14_status(Gamma2Mode::Strict) != TheoremStatus::Violation) continue;
    if (r.tree == star && r.i == 1 && r.denominator == 6) saw_star = true;
    if (r.tree == spider && r.i == 1 && r.denominator == 3) saw_spider = true;
    if (r.p == 3) {
      // Every three-pendant discrepancy is a broad member.
      EXPECT_EQ(r.classification_for(Gamma2Mode::Broad).to_string(), "GAMMA2(1)");
    }
  }
  EXPECT_TRUE(saw_star);
  EXPECT_TRUE(saw_spider);
}

TEST(Verify, SummaryRetally) {
  SweepConfig c;
  c.n_max = 7;
  c.max_denominator = 8;
  c.modes = {Gamma2Mode::Broad, Gamma2Mode::Strict};
  c.output = temp_file("tally.jsonl");
  const auto report = treemult::sweep(c);
  treemult::SweepSummary again;
  for (const auto& r : read_records(c.output)) treemult::tally(again, r);
  EXPECT_EQ(again.pairs, report.summary.pairs);
  EXPECT_EQ(again.violations(), report.summary.violations());
  EXPECT_EQ(again.strict_discrepancies(), report.summary.strict_discrepancies());
}

TEST(Verify, LemmaSuitesOnSmallRange) {
  SweepConfig c;
  c.n_max = 8;
  c.max_denominator = 9;
  c.path_n_max = 60;
  c.path_max_denominator = 20;
  c.family_n_max = 10;
  const auto report = treemult::lemma_suite(c);
  for (const char* name : {"path_multiplicity", "parter_wiener_i", "parter_wiener_ii", "parter_wiener_iii",
                           "branch_lemma", "pendant_deletion_i", "pendant_deletion_ii"}) {
    ASSERT_TRUE(report.checked.count(name)) << name;
    EXPECT_GT(report.checked.at(name), 0u) << name;
    EXPECT_EQ(report.violations.at(name), 0u) << name;
  }
  EXPECT_EQ(report.total_violations(), 0u);
}

TEST(Verify, LemmaTogglesSkipSuites) {
  SweepConfig c;
  c.n_max = 5;
  c.max_denominator = 5;
  c.lemma_checks = {true, false, false, false};
  c.path_n_max = 10;
  const auto report = treemult::lemma_suite(c);
  EXPECT_TRUE(report.checked.count("path_multiplicity"));
  EXPECT_FALSE(report.checked.count("parter_wiener_i"));
  EXPECT_FALSE(report.checked.count("pendant_deletion_ii"));
}

TEST(Verify, ChebyshevAuditExamples) {
  const auto report = treemult::chebyshev_completeness_audit(8);
  const std::string star = treemult::emit_graph6(Tree::star(3));
  const std::string spider = treemult::emit_graph6(Tree::spider({1, 2, 4}));
  const std::string path = treemult::emit_graph6(Tree::path(7));
  for (const auto& f : report.flags) {
    EXPECT_NE(f.tree, star);
    EXPECT_NE(f.tree, path);
  }
  bool spider_noted = false;
  for (const auto& note : report.scope_notes) {
    EXPECT_EQ(note.p, 3u);
    EXPECT_EQ(note.level, 1u);
    EXPECT_NE(note.tree, path);
    if (note.tree == spider) {
      spider_noted = true;
      EXPECT_EQ(note.residue, "x^8 - 7x^6 + 14x^4 - 8x^2 + 1");
    }
  }
  EXPECT_TRUE(spider_noted);
}
