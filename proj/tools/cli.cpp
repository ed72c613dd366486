#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "treemult/enumerate.hpp"
#include "treemult/error.hpp"
#include "treemult/families.hpp"
#include "treemult/graph6.hpp"
#include "treemult/spectrum.hpp"
#include "treemult/verify.hpp"

namespace treemult::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kOutputDirEnv = "TREEMULT_OUTPUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TreeInput {
  std::string graph6;
  std::string positional;
  std::string edges;
  std::string edges_file;
};

struct Options {
  TreeInput input;
  std::string lambda;
  std::string mode = "broad";
  std::string format = "human";
  std::string family;
  unsigned k = 0;
  std::size_t n = 0;
  std::size_t n_min = 1;
  std::size_t n_max = 0;
  unsigned m_max = 0;
  std::vector<std::string> modes{"broad"};
  unsigned workers = 1;
  std::string out_path;
  bool lemmas = false;
  std::string report_path;
};

void add_tree_input(CLI::App* cmd, TreeInput& input) {
  cmd->add_option("tree", input.positional, "graph6 string");
  cmd->add_option("--graph6", input.graph6, "graph6 string");
  cmd->add_option("--edges", input.edges, "inline edge list, e.g. 0-1,1-2");
  cmd->add_option("--edges-file", input.edges_file, "JSON file {\"n\": .., \"edges\": [[u, v], ..]}");
}

void add_format(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "human or json")->check(CLI::IsMember({"human", "json"}));
}

Tree read_tree(const std::string& source, const std::function<Tree()>& parse) {
  try {
    return parse();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotATree || e.code() == ErrorCode::MalformedGraph6) {
      throw UsageError("NOT_A_TREE: " + source + ": " + e.what());
    }
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError("NOT_A_TREE: " + source + ": " + e.what());
  }
}

// Resolves the tree input to a list of (tree, echoed source) pairs. Without an
// explicit source, graph6 lines are read from standard input.
std::vector<std::pair<Tree, bool>> load_trees(const TreeInput& input, std::istream& in) {
  const int sources = !input.graph6.empty() + !input.positional.empty() + !input.edges.empty() +
                      !input.edges_file.empty();
  if (sources > 1) throw UsageError("give exactly one tree input");
  std::vector<std::pair<Tree, bool>> trees;
  if (!input.graph6.empty() || !input.positional.empty()) {
    const std::string& text = input.graph6.empty() ? input.positional : input.graph6;
    trees.emplace_back(read_tree("graph6 '" + text + "'", [&] { return parse_graph6(text); }), false);
  } else if (!input.edges.empty()) {
    trees.emplace_back(read_tree("edges '" + input.edges + "'", [&] { return parse_edge_list(input.edges); }), false);
  } else if (!input.edges_file.empty()) {
    std::ifstream file(input.edges_file);
    if (!file) throw UsageError("cannot read " + input.edges_file);
    std::stringstream buffer;
    buffer << file.rdbuf();
    trees.emplace_back(read_tree(input.edges_file, [&] { return tree_from_json(buffer.str()); }), false);
  } else {
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (line.empty()) continue;
      trees.emplace_back(read_tree("graph6 '" + line + "'", [&] { return parse_graph6(line); }), true);
    }
    if (trees.empty()) throw UsageError("no tree given (use --graph6, --edges, --edges-file or stdin)");
  }
  return trees;
}

LambdaSpec parse_lambda(const std::string& text) {
  try {
    return LambdaSpec::parse(text);
  } catch (const Error& e) {
    throw UsageError(std::string("INVALID_SPEC: lambda must be i/M with 1 <= i < M and gcd(i, M) = 1, got '") +
                     text + "'");
  }
}

Gamma2Mode parse_mode(const std::string& text) {
  try {
    return parse_gamma2_mode(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string prefix(const Tree& t, bool echo) { return echo ? emit_graph6(t) + " " : ""; }

json coefficient(const Integer& c) {
  if (c.fits_slong_p()) return c.get_si();
  return c.get_str();
}

int cmd_mult(const Options& opt, std::istream& in, std::ostream& out) {
  const LambdaSpec lambda = parse_lambda(opt.lambda);
  for (const auto& [t, echo] : load_trees(opt.input, in)) {
    const unsigned m = multiplicity(t, lambda);
    const std::size_t p = pendant_count(t);
    const std::size_t gamma = major_count(t);
    if (opt.format == "json") {
      out << json{{"tree", emit_graph6(t)}, {"lambda", lambda.to_string()}, {"m", m}, {"p", p}, {"gamma", gamma}}.dump()
          << '\n';
    } else {
      out << prefix(t, echo) << "m=" << m << " p=" << p << " gamma=" << gamma << '\n';
    }
  }
  return kExitOk;
}

int cmd_charpoly(const Options& opt, std::istream& in, std::ostream& out) {
  for (const auto& [t, echo] : load_trees(opt.input, in)) {
    const Polynomial cp = char_poly(t);
    // Highest degree first.
    std::vector<Integer> coeffs(cp.coeffs().rbegin(), cp.coeffs().rend());
    if (opt.format == "json") {
      json list = json::array();
      for (const auto& c : coeffs) list.push_back(coefficient(c));
      out << json{{"tree", emit_graph6(t)}, {"charpoly", cp.to_string()}, {"coefficients", list}}.dump() << '\n';
    } else {
      out << prefix(t, echo) << cp.to_string() << "  [";
      for (std::size_t k = 0; k < coeffs.size(); ++k) out << (k ? " " : "") << coeffs[k].get_str();
      out << "]\n";
    }
  }
  return kExitOk;
}

json witness_json(const FamilyResult& result) {
  json steps = json::array();
  for (const auto& step : result.witness) {
    json comps = json::array();
    for (const auto& c : step.components) {
      comps.push_back({{"role", std::string(to_string(c.disposition))},
                       {"vertices", c.vertices},
                       {"attach", c.attach},
                       {"attach_pendant", c.attach_pendant}});
    }
    steps.push_back({{"family", step.family.to_string()},
                     {"major_vertex", step.major_vertex},
                     {"clause", step.clause},
                     {"components", comps}});
  }
  return steps;
}

int cmd_classify(const Options& opt, std::istream& in, std::ostream& out) {
  const LambdaSpec lambda = parse_lambda(opt.lambda);
  const Gamma2Mode mode = parse_mode(opt.mode);
  const Classifier classifier;
  for (const auto& [t, echo] : load_trees(opt.input, in)) {
    const FamilyResult result = classifier.classify(t, lambda, mode);
    if (opt.format == "json") {
      out << json{{"tree", emit_graph6(t)},
                  {"lambda", lambda.to_string()},
                  {"mode", std::string(to_string(mode))},
                  {"class", result.tag.to_string()},
                  {"witness", witness_json(result)}}
                 .dump()
          << '\n';
      continue;
    }
    out << prefix(t, echo) << result.tag.to_string() << '\n';
    for (const auto& step : result.witness) {
      out << "  " << step.family.to_string() << " clause " << step.clause << ": delete w=" << step.major_vertex << '\n';
      for (const auto& c : step.components) {
        out << "    " << to_string(c.disposition) << " {";
        for (std::size_t k = 0; k < c.vertices.size(); ++k) out << (k ? "," : "") << c.vertices[k];
        out << "} attach=" << c.attach << (c.attach_pendant ? " (pendant)" : " (non-pendant)") << '\n';
      }
    }
  }
  return kExitOk;
}

int cmd_generate(const Options& opt, std::ostream& out) {
  const LambdaSpec lambda = parse_lambda(opt.lambda);
  const Gamma2Mode mode = parse_mode(opt.mode);
  const Family family = opt.family == "gamma" ? Family::Gamma : Family::Gamma2;
  for (const Tree& t : generate(family, opt.k, lambda, opt.n_max, mode)) {
    if (opt.format == "json") {
      out << json{{"tree", emit_graph6(t)}, {"n", t.size()}}.dump() << '\n';
    } else {
      out << emit_graph6(t) << '\n';
    }
  }
  return kExitOk;
}

int cmd_enumerate(const Options& opt, std::ostream& out) {
  for_each_tree(opt.n, [&](const Tree& t) {
    if (opt.format == "json") {
      out << json{{"tree", emit_graph6(t)}, {"n", t.size()}}.dump() << '\n';
    } else {
      out << emit_graph6(t) << '\n';
    }
    return true;
  });
  return kExitOk;
}

std::filesystem::path output_path(const std::string& requested, const char* default_name) {
  const char* dir = std::getenv(kOutputDirEnv);
  if (requested.empty()) {
    if (dir == nullptr || *dir == '\0') return {};
    return std::filesystem::path(dir) / default_name;
  }
  std::filesystem::path path(requested);
  if (path.is_relative() && dir != nullptr && *dir != '\0') path = std::filesystem::path(dir) / path;
  return path;
}

json lemma_json(const LemmaReport& lemmas) {
  json checks = json::object();
  for (const auto& [name, count] : lemmas.checked) {
    checks[name] = {{"checked", count}, {"violations", lemmas.violations.at(name)}};
  }
  json findings = json::array();
  for (const auto& f : lemmas.findings) {
    findings.push_back({{"lemma", f.lemma}, {"tree", f.tree}, {"lambda", f.lambda}, {"detail", f.detail}});
  }
  return {{"checks", checks}, {"findings", findings}};
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  SweepConfig config;
  config.n_min = opt.n_min;
  config.n_max = opt.n_max;
  config.max_denominator = opt.m_max;
  config.workers = opt.workers;
  config.modes.clear();
  for (const auto& m : opt.modes) {
    const Gamma2Mode mode = parse_mode(m);
    if (std::find(config.modes.begin(), config.modes.end(), mode) == config.modes.end()) config.modes.push_back(mode);
  }
  config.output = output_path(opt.out_path, "records.jsonl");
  if (config.family_n_max > config.n_max) config.family_n_max = config.n_max;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const SweepReport report = sweep(config);
  out << summary_json(report) << '\n';
  std::size_t violations = report.summary.violations();
  if (opt.lemmas) {
    const LemmaReport lemmas = lemma_suite(config);
    out << lemma_json(lemmas).dump(2) << '\n';
    violations += lemmas.total_violations();
  }
  if (!config.output.empty()) err << "records written to " << config.output.string() << '\n';
  return violations == 0 ? kExitOk : kExitViolations;
}

int cmd_audit(const Options& opt, std::ostream& out) {
  const AuditReport report = chebyshev_completeness_audit(opt.n_max);
  auto entries = [](const std::vector<AuditEntry>& list) {
    json arr = json::array();
    for (const auto& e : list) arr.push_back({{"tree", e.tree}, {"p", e.p}, {"level", e.level}, {"residue", e.residue}});
    return arr;
  };
  if (opt.format == "json") {
    out << json{{"trees", report.trees}, {"flags", entries(report.flags)}, {"scope_notes", entries(report.scope_notes)}}
               .dump()
        << '\n';
  } else {
    out << "trees=" << report.trees << " flags=" << report.flags.size()
        << " scope_notes=" << report.scope_notes.size() << '\n';
    for (const auto& e : report.flags) {
      out << "flag " << e.tree << " p=" << e.p << " level=" << e.level << " residue=" << e.residue << '\n';
    }
    for (const auto& e : report.scope_notes) {
      out << "note " << e.tree << " p=" << e.p << " level=" << e.level << " residue=" << e.residue << '\n';
    }
  }
  return report.flags.empty() ? kExitOk : kExitViolations;
}

int cmd_report(const Options& opt, std::ostream& out) {
  std::ifstream file(opt.report_path);
  if (!file) throw Error(ErrorCode::IoFailure, "cannot read " + opt.report_path);
  SweepReport report;
  std::string line;
  std::string last_tree;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.empty()) continue;
    VerificationRecord r;
    try {
      r = record_from_json(line);
    } catch (const std::exception& e) {
      throw UsageError(opt.report_path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (r.tree != last_tree) {
      ++report.summary.trees;
      last_tree = r.tree;
    }
    tally(report.summary, r);
  }
  out << summary_json(report) << '\n';
  return report.summary.violations() == 0 ? kExitOk : kExitViolations;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenvalue multiplicities of trees at 2cos(i*pi/M)", "treemult"};
  app.require_subcommand(1);
  Options opt;

  auto* mult = app.add_subcommand("mult", "print m(T, lambda), p(T) and gamma(T)");
  add_tree_input(mult, opt.input);
  mult->add_option("--lambda", opt.lambda, "eigenvalue 2cos(i*pi/M) as i/M")->required();
  add_format(mult, opt);

  auto* charpoly = app.add_subcommand("charpoly", "print the characteristic polynomial");
  add_tree_input(charpoly, opt.input);
  add_format(charpoly, opt);

  auto* classify = app.add_subcommand("classify", "classify into GAMMA(k) / GAMMA2(k) with a witness chain");
  add_tree_input(classify, opt.input);
  classify->add_option("--lambda", opt.lambda, "eigenvalue as i/M")->required();
  classify->add_option("--mode", opt.mode, "strict or broad")->check(CLI::IsMember({"strict", "broad"}));
  add_format(classify, opt);

  auto* gen = app.add_subcommand("generate", "stream members of a family as graph6");
  gen->add_option("--family", opt.family, "gamma or gamma2")->required()->check(CLI::IsMember({"gamma", "gamma2"}));
  gen->add_option("--k", opt.k, "number of major vertices")->required();
  gen->add_option("--lambda", opt.lambda, "eigenvalue as i/M")->required();
  gen->add_option("--n-max", opt.n_max, "largest tree size")->required();
  gen->add_option("--mode", opt.mode, "strict or broad")->check(CLI::IsMember({"strict", "broad"}));
  add_format(gen, opt);

  auto* enumerate = app.add_subcommand("enumerate", "stream every tree on n vertices as canonical graph6");
  enumerate->add_option("--n", opt.n, "tree size")->required()->check(CLI::PositiveNumber);
  add_format(enumerate, opt);

  auto* verify = app.add_subcommand("verify", "exhaustive sweep; exit 1 on broad-mode violations");
  verify->add_option("--n-max", opt.n_max, "largest tree size")->required();
  verify->add_option("--n-min", opt.n_min, "smallest tree size");
  verify->add_option("--m-max", opt.m_max, "largest denominator M")->required();
  verify->add_option("--modes", opt.modes, "comma separated: broad,strict")->delimiter(',');
  verify->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--out", opt.out_path, "JSON-lines record file (relative to $TREEMULT_OUTPUT_DIR if set)");
  verify->add_flag("--lemmas", opt.lemmas, "also run the lemma property suites");

  auto* audit = app.add_subcommand("audit", "flag non-Chebyshev eigenvalues of high multiplicity");
  audit->add_option("--n-max", opt.n_max, "largest tree size")->required();
  add_format(audit, opt);

  auto* report = app.add_subcommand("report", "re-summarize a record file");
  report->add_option("path", opt.report_path, "record file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (mult->parsed()) return cmd_mult(opt, in, out);
    if (charpoly->parsed()) return cmd_charpoly(opt, in, out);
    if (classify->parsed()) return cmd_classify(opt, in, out);
    if (gen->parsed()) return cmd_generate(opt, out);
    if (enumerate->parsed()) return cmd_enumerate(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out, err);
    if (audit->parsed()) return cmd_audit(opt, out);
    if (report->parsed()) return cmd_report(opt, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::EngineMismatch ? kExitViolations : kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace treemult::cli
