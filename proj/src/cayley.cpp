#include "qcayley/cayley.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "qcayley/error.hpp"

namespace qcayley {

CayleyTree CayleyTree::build(const FreeProduct& group, int radius, std::size_t vertex_cap) {
  if (radius < 0) fail(ErrorCode::InvalidArgument, "radius must be nonnegative");
  CayleyTree tree(group);
  tree.radius_ = radius;
  tree.vertices_.push_back(IrrWord{});
  tree.index_.emplace(IrrWord{}, 0);

  const auto dirs = group.directions();
  std::size_t level_begin = 0;
  for (int r = 0; r < radius; ++r) {
    std::size_t level_end = tree.vertices_.size();
    std::vector<AscendingEdge> level_edges;
    for (std::size_t v = level_begin; v < level_end; ++v) {
      const IrrWord alpha = tree.vertices_[v];
      for (const auto& gamma : dirs) {
        Decomposition dec = group.fuse_generator(alpha, gamma);
        if (!dec.plus_part) continue;
        if (tree.index_.count(*dec.plus_part)) continue;  // non-tree inputs keep the first parent
        if (tree.vertices_.size() >= vertex_cap)
          fail(ErrorCode::RadiusTooLarge, "vertex count exceeds cap " + std::to_string(vertex_cap));
        tree.index_.emplace(*dec.plus_part, tree.vertices_.size());
        tree.vertices_.push_back(*dec.plus_part);
        level_edges.push_back({alpha, *dec.plus_part, gamma});
      }
    }
    // Length-lex order inside the new level.
    std::vector<std::size_t> order(tree.vertices_.size() - level_end);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = level_end + i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return tree.vertices_[a] < tree.vertices_[b]; });
    std::vector<IrrWord> sorted;
    sorted.reserve(order.size());
    for (auto i : order) sorted.push_back(std::move(tree.vertices_[i]));
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      tree.index_[sorted[i]] = level_end + i;
      tree.vertices_[level_end + i] = std::move(sorted[i]);
    }
    std::sort(level_edges.begin(), level_edges.end(),
              [](const AscendingEdge& a, const AscendingEdge& b) { return a.target < b.target; });
    for (auto& e : level_edges) tree.edges_.push_back(std::move(e));
    level_begin = level_end;
    if (level_begin == tree.vertices_.size()) break;
  }
  return tree;
}

bool CayleyTree::contains(const IrrWord& w) const { return index_.count(w) != 0; }

std::size_t CayleyTree::index_of(const IrrWord& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) fail(ErrorCode::IndexOutOfRange, "word " + format_word(w) + " not in tree");
  return it->second;
}

std::vector<AscendingEdge> CayleyTree::full_edges() const {
  std::vector<AscendingEdge> out = edges_;
  for (const auto& e : edges_) out.push_back({e.target, e.source, group_.conjugate(e.direction)});
  return out;
}

TreeCertificate is_directional_tree(const FreeProduct& group, int radius) {
  if (radius < 1) fail(ErrorCode::InvalidArgument, "radius must be at least 1");
  TreeCertificate cert;
  auto violate = [&](const IrrWord& v, const Direction& a, const Direction& b, const char* kind) {
    cert.is_directional_tree = false;
    cert.violations.push_back({v, a, b, kind});
  };

  // parent edge of every discovered vertex
  std::map<IrrWord, std::pair<IrrWord, Direction>> parent;
  std::vector<IrrWord> level{IrrWord{}};
  parent.emplace(IrrWord{}, std::make_pair(IrrWord{}, Direction{}));
  const auto dirs = group.directions();

  for (int r = 0; r < radius && !level.empty(); ++r) {
    std::vector<IrrWord> next;
    for (const auto& alpha : level) {
      std::map<IrrWord, Direction> targets;
      for (const auto& gamma : dirs) {
        Decomposition dec = group.fuse_generator(alpha, gamma);
        if (dec.minus_part && dec.minus_part->size() == alpha.size())
          violate(alpha, gamma, gamma, "level_edge");
        if (!dec.plus_part) continue;
        const IrrWord& beta = *dec.plus_part;
        if (auto t = targets.find(beta); t != targets.end()) {
          violate(beta, t->second, gamma, "duplicate_target");
          continue;
        }
        targets.emplace(beta, gamma);
        if (auto p = parent.find(beta); p != parent.end()) {
          violate(beta, p->second.second, gamma, "cycle");
          continue;
        }
        parent.emplace(beta, std::make_pair(alpha, gamma));
        next.push_back(beta);
      }
    }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  return cert;
}

std::size_t distance(const IrrWord& alpha) { return alpha.size(); }

std::vector<std::pair<IrrWord, IrrWord>> ascending_splittings(const IrrWord& alpha) {
  std::vector<std::pair<IrrWord, IrrWord>> out;
  for (std::size_t i = 0; i <= alpha.size(); ++i) {
    IrrWord b1, b2;
    b1.letters.assign(alpha.letters.begin(), alpha.letters.begin() + static_cast<std::ptrdiff_t>(i));
    b2.letters.assign(alpha.letters.begin() + static_cast<std::ptrdiff_t>(i), alpha.letters.end());
    out.emplace_back(std::move(b1), std::move(b2));
  }
  return out;
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "dot") return GraphFormat::Dot;
  if (name == "json") return GraphFormat::Json;
  fail(ErrorCode::UnsupportedFormat, "graph format '" + std::string(name) + "'");
}

std::string export_graph(const CayleyTree& tree, GraphFormat format) {
  if (format == GraphFormat::Json) {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : tree.vertices()) j["vertices"].push_back(format_word(v));
    j["edges"] = nlohmann::json::array();
    for (const auto& e : tree.ascending_edges())
      j["edges"].push_back({{"src", format_word(e.source)},
                            {"dst", format_word(e.target)},
                            {"direction", format_direction(e.direction)}});
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "digraph cayley {\n";
  for (const auto& v : tree.vertices()) os << "  \"" << format_word(v) << "\";\n";
  for (const auto& e : tree.ascending_edges())
    os << "  \"" << format_word(e.source) << "\" -> \"" << format_word(e.target) << "\" [dir_label=\""
       << format_direction(e.direction) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace qcayley
