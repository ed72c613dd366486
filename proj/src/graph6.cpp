#include "treemult/graph6.hpp"

#include <charconv>

#include "json.hpp"
#include "treemult/canonical.hpp"
#include "treemult/error.hpp"

namespace treemult {

namespace {

constexpr int kBias = 63;
constexpr std::size_t kMaxOrder = 258047;

void append_order(std::string& out, std::size_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
    return;
  }
  out.push_back(126);
  for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
}

}  // namespace

std::string encode_graph6(std::size_t n, const std::vector<Edge>& edges) {
  if (n > kMaxOrder) throw Error(ErrorCode::LimitExceeded, "graph6 order " + std::to_string(n));
  std::string out;
  append_order(out, n);
  // Upper triangle, column by column: bit (i, j) for i < j in order j = 1..n-1, i = 0..j-1.
  std::vector<bool> bits(n * (n - (n > 0)) / 2, false);
  for (auto [u, v] : edges) {
    if (u == v || u >= n || v >= n) throw std::invalid_argument("encode_graph6: bad edge");
    const std::size_t i = std::min(u, v);
    const std::size_t j = std::max(u, v);
    bits[j * (j - 1) / 2 + i] = true;
  }
  for (std::size_t k = 0; k < bits.size(); k += 6) {
    int chunk = 0;
    for (std::size_t b = 0; b < 6; ++b) {
      chunk <<= 1;
      if (k + b < bits.size() && bits[k + b]) chunk |= 1;
    }
    out.push_back(static_cast<char>(chunk + kBias));
  }
  return out;
}

std::pair<std::size_t, std::vector<Edge>> decode_graph6(std::string_view text) {
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::MalformedGraph6, "empty input");
  for (char c : text) {
    if (c < 63 || c > 126) throw Error(ErrorCode::MalformedGraph6, "byte out of range in '" + std::string(text) + "'");
  }

  std::size_t n = 0;
  std::size_t pos = 0;
  if (text[0] != 126) {
    n = static_cast<std::size_t>(text[0] - kBias);
    pos = 1;
  } else {
    if (text.size() < 4 || text[1] == 126) throw Error(ErrorCode::MalformedGraph6, "unsupported order prefix");
    for (std::size_t k = 1; k <= 3; ++k) n = (n << 6) | static_cast<std::size_t>(text[k] - kBias);
    pos = 4;
  }

  const std::size_t nbits = n * (n - (n > 0)) / 2;
  const std::size_t nbytes = (nbits + 5) / 6;
  if (text.size() - pos != nbytes) {
    throw Error(ErrorCode::MalformedGraph6, "expected " + std::to_string(nbytes) + " data bytes for n = " +
                                                std::to_string(n) + ", got " + std::to_string(text.size() - pos));
  }
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++bit) {
      const int chunk = text[pos + bit / 6] - kBias;
      if (chunk & (1 << (5 - bit % 6))) edges.emplace_back(i, j);
    }
  }
  return {n, std::move(edges)};
}

std::string emit_graph6(const Tree& t) {
  const Tree canon = canonical_tree(t);
  return encode_graph6(canon.size(), canon.edges());
}

Tree parse_graph6(std::string_view text) {
  auto [n, edges] = decode_graph6(text);
  if (n == 0) throw Error(ErrorCode::NotATree, "graph has no vertices");
  return Tree(n, edges);
}

Tree parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  Vertex max_id = 0;
  auto parse_id = [&](std::string_view part) {
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    Vertex value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw Error(ErrorCode::NotATree, "bad vertex id '" + std::string(part) + "'");
    }
    return value;
  };
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) throw Error(ErrorCode::NotATree, "bad edge '" + std::string(item) + "'");
    const Vertex u = parse_id(item.substr(0, dash));
    const Vertex v = parse_id(item.substr(dash + 1));
    max_id = std::max({max_id, u, v});
    edges.emplace_back(u, v);
  }
  return Tree(edges.empty() ? 1 : std::size_t{max_id} + 1, edges);
}

Tree tree_from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::NotATree, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw Error(ErrorCode::NotATree, "expected {\"n\": int, \"edges\": [[u, v], ...]}");
  }
  try {
    const auto n = doc.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    return Tree(n, edges);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::NotATree, std::string("bad edge list: ") + e.what());
  }
}

std::string tree_to_json(const Tree& t) {
  nlohmann::json doc;
  doc["n"] = t.size();
  doc["edges"] = nlohmann::json::array();
  for (auto [u, v] : t.edges()) doc["edges"].push_back({u, v});
  return doc.dump();
}

}  // namespace treemult
