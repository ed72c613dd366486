#include "treemult/families.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "treemult/canonical.hpp"
#include "treemult/error.hpp"
#include "treemult/spectrum.hpp"

namespace treemult {

std::string_view to_string(Gamma2Mode mode) noexcept { return mode == Gamma2Mode::Strict ? "strict" : "broad"; }

Gamma2Mode parse_gamma2_mode(std::string_view text) {
  if (text == "strict") return Gamma2Mode::Strict;
  if (text == "broad") return Gamma2Mode::Broad;
  throw std::invalid_argument("mode must be strict or broad, got '" + std::string(text) + "'");
}

std::string FamilyTag::to_string() const {
  switch (family) {
    case Family::Gamma: return "GAMMA(" + std::to_string(k) + ")";
    case Family::Gamma2: return "GAMMA2(" + std::to_string(k) + ")";
    case Family::None: break;
  }
  return "NONE";
}

FamilyTag FamilyTag::parse(std::string_view text) {
  if (text == "NONE") return {};
  auto index = [&](std::size_t prefix) {
    unsigned k = 0;
    auto body = text.substr(prefix, text.size() - prefix - 1);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
    if (ec != std::errc{} || ptr != body.data() + body.size() || !text.ends_with(")")) {
      throw std::invalid_argument("bad family tag '" + std::string(text) + "'");
    }
    return k;
  };
  if (text.starts_with("GAMMA2(")) return {Family::Gamma2, index(7)};
  if (text.starts_with("GAMMA(")) return {Family::Gamma, index(6)};
  throw std::invalid_argument("bad family tag '" + std::string(text) + "'");
}

std::string_view to_string(Disposition d) noexcept {
  switch (d) {
    case Disposition::Gamma0: return "gamma0";
    case Disposition::Gamma2Zero: return "gamma2_0";
    case Disposition::Gamma: return "gamma";
    case Disposition::Gamma2: return "gamma2";
  }
  return "?";
}

bool is_gamma0(const Tree& t, const LambdaSpec& lambda) {
  return t.is_path() && (t.size() + 1) % lambda.denominator() == 0;
}

bool is_gamma2_0(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) {
  if (!t.is_path()) return false;
  if (mode == Gamma2Mode::Strict) return (t.size() + 2) % lambda.denominator() == 0;
  return multiplicity(path_charpoly(t.size()), lambda.minimal_poly()) == 0;
}

// What deleting one major vertex w shows about T. Component indices refer to
// delete_vertex(T, w).components.
struct Classifier::Evaluation {
  static constexpr std::size_t kNone = ~std::size_t{0};

  ForestDecomposition forest;
  std::vector<Disposition> base;  // per component; only meaningful for paths
  bool gamma = false;
  std::size_t gamma_distinguished = kNone;
  unsigned gamma2_clause = 0;
  std::size_t gamma2_distinguished = kNone;
};

std::size_t Classifier::KeyHash::operator()(const Key& key) const noexcept {
  std::size_t h = std::hash<std::string>{}(key.code);
  h ^= (std::size_t{key.i} * 0x9E3779B97F4A7C15ULL) + (std::size_t{key.m} << 20) + static_cast<std::size_t>(key.mode);
  return h;
}

bool Classifier::path_gamma2_0(std::size_t n, const LambdaSpec& lambda, Gamma2Mode mode) const {
  if (mode == Gamma2Mode::Strict) return (n + 2) % lambda.denominator() == 0;
  const std::uint64_t key = (std::uint64_t{n} << 40) | (std::uint64_t{lambda.denominator()} << 20) | lambda.numerator();
  {
    std::shared_lock lock(path_mutex_);
    if (auto it = path_memo_.find(key); it != path_memo_.end()) return it->second;
  }
  const bool value = multiplicity(path_charpoly(n), lambda.minimal_poly()) == 0;
  std::unique_lock lock(path_mutex_);
  path_memo_[key] = value;
  return value;
}

Classifier::Evaluation Classifier::evaluate(const Tree& t, Vertex w, const LambdaSpec& lambda,
                                            Gamma2Mode mode) const {
  Evaluation ev;
  ev.forest = delete_vertex(t, w);
  const auto& comps = ev.forest.components;
  const std::size_t j = major_count(t);

  std::size_t non_path = Evaluation::kNone;
  std::size_t non_path_count = 0;
  bool all_pendant = true;
  std::size_t gamma0_paths = 0;
  std::size_t gamma2_0_paths = 0;
  bool paths_pendant = true;
  ev.base.resize(comps.size(), Disposition::Gamma0);

  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& comp = comps[c];
    const bool pendant = is_pendant(comp.tree, comp.attach);
    all_pendant = all_pendant && pendant;
    if (!comp.tree.is_path()) {
      non_path = c;
      ++non_path_count;
      continue;
    }
    paths_pendant = paths_pendant && pendant;
    if (is_gamma0(comp.tree, lambda)) {
      ++gamma0_paths;
      ev.base[c] = Disposition::Gamma0;
    } else if (path_gamma2_0(comp.tree.size(), lambda, mode)) {
      ++gamma2_0_paths;
      ev.base[c] = Disposition::Gamma2Zero;
    }
  }
  const std::size_t paths = comps.size() - non_path_count;

  if (j == 1) {
    // w is the only major vertex, so every component is a path.
    if (all_pendant && gamma0_paths == paths) ev.gamma = true;
    if (all_pendant && comps.size() == 3 && gamma2_0_paths == 3) {
      ev.gamma2_clause = 1;
    } else if (all_pendant && gamma2_0_paths == 1 && gamma0_paths == paths - 1) {
      ev.gamma2_clause = 2;
    }
    return ev;
  }

  // j >= 2: exactly one component carries the recursion.
  if (non_path_count != 1) return ev;
  const auto& inner = comps[non_path];
  if (major_count(inner.tree) != j - 1) return ev;
  const bool inner_pendant = is_pendant(inner.tree, inner.attach);
  const Membership m = membership(inner.tree, lambda, mode);

  if (all_pendant && m.gamma && gamma0_paths == paths) {
    ev.gamma = true;
    ev.gamma_distinguished = non_path;
  }
  if (all_pendant && m.gamma2 && gamma0_paths == paths) {
    ev.gamma2_clause = 1;
  } else if (!inner_pendant && paths_pendant && m.gamma && gamma0_paths == paths) {
    ev.gamma2_clause = 2;
  } else if (all_pendant && m.gamma && gamma2_0_paths == 1 && gamma0_paths == paths - 1) {
    ev.gamma2_clause = 3;
  }
  if (ev.gamma2_clause != 0) ev.gamma2_distinguished = non_path;
  return ev;
}

Classifier::Membership Classifier::compute(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) const {
  Membership out;
  if (t.is_path()) {
    out.gamma = is_gamma0(t, lambda);
    out.gamma2 = path_gamma2_0(t.size(), lambda, mode);
    return out;
  }
  for (Vertex w : major_vertices(t)) {
    const Evaluation ev = evaluate(t, w, lambda, mode);
    out.gamma = out.gamma || ev.gamma;
    out.gamma2 = out.gamma2 || ev.gamma2_clause != 0;
    if (out.gamma && out.gamma2) break;
  }
  return out;
}

Classifier::Membership Classifier::membership(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) const {
  Key key{canonical_code(t), lambda.numerator(), lambda.denominator(), mode};
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const Membership value = compute(t, lambda, mode);
  std::unique_lock lock(mutex_);
  memo_.insert_or_assign(std::move(key), value);
  return value;
}

bool Classifier::in_gamma(const Tree& t, const LambdaSpec& lambda) const {
  return membership(t, lambda, Gamma2Mode::Broad).gamma;
}

bool Classifier::in_gamma2(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) const {
  return membership(t, lambda, mode).gamma2;
}

std::size_t Classifier::memo_size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

FamilyTag Classifier::classify_tag(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) const {
  const auto k = static_cast<unsigned>(major_count(t));
  const Membership m = membership(t, lambda, mode);
  if (m.gamma) return {Family::Gamma, k};
  if (m.gamma2) return {Family::Gamma2, k};
  return {};
}

FamilyResult Classifier::classify(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) const {
  FamilyResult result;
  result.tag = classify_tag(t, lambda, mode);
  if (result.tag.family == Family::None) return result;

  Tree current = t;
  std::vector<Vertex> to_original(t.size());
  for (Vertex v = 0; v < t.size(); ++v) to_original[v] = v;
  Family family = result.tag.family;

  while (major_count(current) > 0) {
    const auto j = static_cast<unsigned>(major_count(current));
    bool advanced = false;
    for (Vertex w : major_vertices(current)) {
      Evaluation ev = evaluate(current, w, lambda, mode);
      const bool hit = family == Family::Gamma ? ev.gamma : ev.gamma2_clause != 0;
      if (!hit) continue;

      WitnessStep step;
      step.major_vertex = to_original[w];
      step.family = {family, j};
      step.clause = family == Family::Gamma ? 1 : ev.gamma2_clause;
      const std::size_t distinguished = family == Family::Gamma ? ev.gamma_distinguished : ev.gamma2_distinguished;
      // Clauses 2 and 3 of Gamma2_j recurse into a Gamma_{j-1} member.
      const Family next_family =
          family == Family::Gamma2 && (step.clause == 2 || step.clause == 3) ? Family::Gamma : family;

      for (std::size_t c = 0; c < ev.forest.components.size(); ++c) {
        const auto& comp = ev.forest.components[c];
        ComponentRole role;
        if (c == distinguished) {
          role.disposition = next_family == Family::Gamma ? Disposition::Gamma : Disposition::Gamma2;
        } else {
          role.disposition = ev.base[c];
        }
        for (Vertex local : comp.to_parent) role.vertices.push_back(to_original[local]);
        std::sort(role.vertices.begin(), role.vertices.end());
        role.attach = to_original[comp.to_parent[comp.attach]];
        role.attach_pendant = is_pendant(comp.tree, comp.attach);
        step.components.push_back(std::move(role));
      }
      result.witness.push_back(std::move(step));

      if (distinguished == Evaluation::kNone) return result;
      auto& comp = ev.forest.components[distinguished];
      std::vector<Vertex> composed(comp.to_parent.size());
      for (std::size_t v = 0; v < composed.size(); ++v) composed[v] = to_original[comp.to_parent[v]];
      to_original = std::move(composed);
      current = std::move(comp.tree);
      family = next_family;
      advanced = true;
      break;
    }
    if (!advanced) throw std::logic_error("classify: memo and witness search disagree");
  }
  return result;
}

FamilyResult classify(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) {
  return Classifier{}.classify(t, lambda, mode);
}

namespace {

// Bottom-up constructor of family members up to a size bound.
class MemberGenerator {
 public:
  MemberGenerator(const LambdaSpec& lambda, std::size_t n_max, Gamma2Mode mode) : n_max_(n_max) {
    for (std::size_t n = 1; n <= n_max; ++n) {
      const Tree p = Tree::path(n);
      if (is_gamma0(p, lambda)) gamma0_.push_back(n);
      if (is_gamma2_0(p, lambda, mode)) gamma2_0_.push_back(n);
    }
  }

  const std::vector<Tree>& members(Family family, unsigned k) {
    const auto key = std::make_pair(family, k);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::vector<Tree> built = family == Family::Gamma ? build_gamma(k) : build_gamma2(k);
    return cache_.emplace(key, std::move(built)).first->second;
  }

 private:
  // Calls emit on each multiset (non-decreasing) of lengths with at least
  // min_count entries and total at most budget.
  static void multisets(const std::vector<std::size_t>& lengths, std::size_t min_count, std::size_t budget,
                        const std::function<void(const std::vector<std::size_t>&)>& emit) {
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
      if (chosen.size() >= min_count) emit(chosen);
      for (std::size_t idx = from; idx < lengths.size() && lengths[idx] <= left; ++idx) {
        chosen.push_back(lengths[idx]);
        rec(idx, left - lengths[idx]);
        chosen.pop_back();
      }
    };
    rec(0, budget);
  }

  // base (possibly empty) plus a new vertex w adjacent to base vertex u and to
  // one endpoint of each path.
  static Tree join(const Tree* base, Vertex u, const std::vector<std::size_t>& paths) {
    std::vector<Edge> edges;
    Vertex next = 0;
    if (base != nullptr) {
      edges = base->edges();
      next = static_cast<Vertex>(base->size());
    }
    const Vertex w = next++;
    if (base != nullptr) edges.emplace_back(u, w);
    for (std::size_t len : paths) {
      Vertex prev = w;
      for (std::size_t s = 0; s < len; ++s) {
        edges.emplace_back(prev, next);
        prev = next++;
      }
    }
    return Tree(next, edges);
  }

  static std::size_t total(const std::vector<std::size_t>& lengths) {
    std::size_t sum = 0;
    for (auto l : lengths) sum += l;
    return sum;
  }

  void keep(const Tree& t) {
    if (t.size() > n_max_) return;
    auto form = canonical_form(t);
    if (found_.insert(form.code).second) pending_.push_back(relabel(t, form.order));
  }

  std::vector<Tree> take() {
    std::vector<Tree> out = std::move(pending_);
    pending_.clear();
    found_.clear();
    std::vector<std::pair<std::string, std::size_t>> keys;
    for (std::size_t idx = 0; idx < out.size(); ++idx) keys.emplace_back(canonical_code(out[idx]), idx);
    std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
      if (out[a.second].size() != out[b.second].size()) return out[a.second].size() < out[b.second].size();
      return a.first < b.first;
    });
    std::vector<Tree> sorted;
    sorted.reserve(out.size());
    for (const auto& key : keys) sorted.push_back(std::move(out[key.second]));
    return sorted;
  }

  std::vector<Tree> paths_of(const std::vector<std::size_t>& lengths) {
    for (auto n : lengths) keep(Tree::path(n));
    return take();
  }

  std::vector<Tree> build_gamma(unsigned k) {
    if (k == 0) return paths_of(gamma0_);
    if (k == 1) {
      if (n_max_ >= 1) multisets(gamma0_, 3, n_max_ - 1, [&](const auto& legs) { keep(join(nullptr, 0, legs)); });
      return take();
    }
    const auto& inner = members(Family::Gamma, k - 1);
    for (const Tree& base : inner) {
      if (base.size() + 3 > n_max_) continue;
      for (Vertex u : pendant_vertices(base)) {
        multisets(gamma0_, 2, n_max_ - base.size() - 1, [&](const auto& legs) { keep(join(&base, u, legs)); });
      }
    }
    return take();
  }

  std::vector<Tree> build_gamma2(unsigned k) {
    if (k == 0) return paths_of(gamma2_0_);
    if (k == 1) {
      if (n_max_ < 1) return take();
      const std::size_t budget = n_max_ - 1;
      multisets(gamma2_0_, 3, budget, [&](const auto& legs) {
        if (legs.size() == 3) keep(join(nullptr, 0, legs));
      });
      for (std::size_t odd : gamma2_0_) {
        if (odd > budget) break;
        multisets(gamma0_, 2, budget - odd, [&](const auto& legs) {
          auto all = legs;
          all.push_back(odd);
          keep(join(nullptr, 0, all));
        });
      }
      return take();
    }
    // Both inner families are built before anything is kept at this level.
    const std::vector<Tree> inner2 = members(Family::Gamma2, k - 1);
    const std::vector<Tree> inner = members(Family::Gamma, k - 1);
    // Clause 1: a Gamma2_{k-1} member attached at a pendant vertex.
    for (const Tree& base : inner2) {
      if (base.size() + 3 > n_max_) continue;
      for (Vertex u : pendant_vertices(base)) {
        multisets(gamma0_, 2, n_max_ - base.size() - 1, [&](const auto& legs) { keep(join(&base, u, legs)); });
      }
    }
    for (const Tree& base : inner) {
      if (base.size() + 3 > n_max_) continue;
      const std::size_t budget = n_max_ - base.size() - 1;
      // Clause 2: attached at a non-pendant vertex that is already major, so
      // the number of major vertices grows by exactly one.
      for (Vertex u : major_vertices(base)) {
        multisets(gamma0_, 2, budget, [&](const auto& legs) { keep(join(&base, u, legs)); });
      }
      // Clause 3: attached at a pendant vertex, plus one Gamma2_0 path.
      for (Vertex u : pendant_vertices(base)) {
        for (std::size_t odd : gamma2_0_) {
          if (odd > budget) break;
          multisets(gamma0_, 1, budget - odd, [&](const auto& legs) {
            auto all = legs;
            all.push_back(odd);
            keep(join(&base, u, all));
          });
        }
      }
    }
    return take();
  }

  std::size_t n_max_;
  std::vector<std::size_t> gamma0_;
  std::vector<std::size_t> gamma2_0_;
  std::map<std::pair<Family, unsigned>, std::vector<Tree>> cache_;
  std::set<std::string> found_;
  std::vector<Tree> pending_;
};

}  // namespace

std::vector<Tree> generate(Family family, unsigned k, const LambdaSpec& lambda, std::size_t n_max, Gamma2Mode mode) {
  if (n_max > kGenerationCap) {
    throw Error(ErrorCode::LimitExceeded,
                "n_max = " + std::to_string(n_max) + " exceeds cap " + std::to_string(kGenerationCap));
  }
  if (family == Family::None) throw std::invalid_argument("generate: family must be GAMMA or GAMMA2");
  MemberGenerator gen(lambda, n_max, mode);
  return gen.members(family, k);
}

}  // namespace treemult
