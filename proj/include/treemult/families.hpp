#pragma once

#include <cstddef>
#include <functional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "treemult/lambda.hpp"
#include "treemult/tree.hpp"

namespace treemult {

/// Reading of the base family Gamma2_0(lambda).
///   Strict: paths obtained from a Gamma_0 path by deleting a pendant vertex,
///           i.e. P_n with n = M - 2 (mod M).
///   Broad:  paths that do not have lambda as an eigenvalue.
enum class Gamma2Mode { Strict, Broad };

std::string_view to_string(Gamma2Mode mode) noexcept;
/// Accepts "strict" or "broad"; throws std::invalid_argument otherwise.
Gamma2Mode parse_gamma2_mode(std::string_view text);

enum class Family { Gamma, Gamma2, None };

struct FamilyTag {
  Family family = Family::None;
  unsigned k = 0;

  /// "GAMMA(k)", "GAMMA2(k)" or "NONE".
  std::string to_string() const;
  static FamilyTag parse(std::string_view text);

  friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

/// Role a component of T - w plays in a membership certificate.
enum class Disposition {
  Gamma0,      // path from Gamma_0
  Gamma2Zero,  // path from Gamma2_0
  Gamma,       // the distinguished member of Gamma_{j-1}
  Gamma2,      // the distinguished member of Gamma2_{j-1}
};

std::string_view to_string(Disposition d) noexcept;

struct ComponentRole {
  Disposition disposition = Disposition::Gamma0;
  /// Vertex ids of the component in the classified tree, ascending.
  std::vector<Vertex> vertices;
  /// Neighbor of the removed vertex inside the component (classified-tree id).
  Vertex attach = 0;
  bool attach_pendant = true;
};

/// One level of the recursive definition: T_j - w_j and what each component is.
struct WitnessStep {
  /// The major vertex w_j, as an id of the classified tree.
  Vertex major_vertex = 0;
  /// Family of the subtree this step certifies.
  FamilyTag family;
  /// Which alternative of the definition matched (1-based; 1 for Gamma).
  unsigned clause = 1;
  std::vector<ComponentRole> components;
};

struct FamilyResult {
  FamilyTag tag;
  /// Outermost step first; each later step decomposes the distinguished
  /// component of the previous one. Empty for paths and for NONE.
  std::vector<WitnessStep> witness;
};

/// Path with n = M - 1 (mod M).
bool is_gamma0(const Tree& t, const LambdaSpec& lambda);

bool is_gamma2_0(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode);

/// Membership tests for the recursive families with a shared memo table.
///
/// The memo is keyed on (canonical form, lambda, mode) and tolerates
/// concurrent callers; entries are idempotent so racing writers agree.
class Classifier {
 public:
  /// GAMMA(gamma(t)) if t is in Gamma_{gamma(t)}, else GAMMA2(gamma(t)) if t
  /// is in Gamma2_{gamma(t)}, else NONE.
  FamilyTag classify_tag(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) const;

  /// classify_tag plus the certificate chain. Major vertices are tried in
  /// ascending id order and the first that satisfies a clause is recorded.
  FamilyResult classify(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) const;

  bool in_gamma(const Tree& t, const LambdaSpec& lambda) const;
  bool in_gamma2(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) const;

  std::size_t memo_size() const;

 private:
  struct Membership {
    bool gamma = false;
    bool gamma2 = false;
  };
  struct Key {
    std::string code;
    unsigned i;
    unsigned m;
    Gamma2Mode mode;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept;
  };
  struct Evaluation;

  Membership membership(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) const;
  Membership compute(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode) const;
  Evaluation evaluate(const Tree& t, Vertex w, const LambdaSpec& lambda, Gamma2Mode mode) const;
  bool path_gamma2_0(std::size_t n, const LambdaSpec& lambda, Gamma2Mode mode) const;

  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Key, Membership, KeyHash> memo_;
  mutable std::shared_mutex path_mutex_;
  mutable std::unordered_map<std::uint64_t, bool> path_memo_;
};

/// One-shot classification with a private memo.
FamilyResult classify(const Tree& t, const LambdaSpec& lambda, Gamma2Mode mode = Gamma2Mode::Broad);

inline constexpr std::size_t kGenerationCap = 30;

/// Every member of Gamma_k(lambda) (family == Gamma) or Gamma2_k(lambda)
/// (family == Gamma2) with at most n_max vertices, built bottom-up from the
/// recursive definitions. One canonically labeled tree per isomorphism class,
/// ordered by (size, canonical code). Throws Error(LimitExceeded) when
/// n_max > kGenerationCap.
std::vector<Tree> generate(Family family, unsigned k, const LambdaSpec& lambda, std::size_t n_max,
                           Gamma2Mode mode = Gamma2Mode::Broad);

}  // namespace treemult
