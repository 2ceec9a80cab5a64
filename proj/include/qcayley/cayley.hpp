#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcayley/repring.hpp"

namespace qcayley {

inline constexpr std::size_t kDefaultVertexCap = 1000000;

struct AscendingEdge {
  IrrWord source;
  IrrWord target;
  Direction direction;
};

class CayleyTree {
 public:
  // Breadth-first generation with fuse_generator. RadiusTooLarge past the cap.
  static CayleyTree build(const FreeProduct& group, int radius, std::size_t vertex_cap = kDefaultVertexCap);

  const FreeProduct& group() const { return group_; }
  int radius() const { return radius_; }
  const IrrWord& origin() const { return vertices_.front(); }
  // Length-lexicographic.
  const std::vector<IrrWord>& vertices() const { return vertices_; }
  const std::vector<AscendingEdge>& ascending_edges() const { return edges_; }
  bool contains(const IrrWord& w) const;
  std::size_t index_of(const IrrWord& w) const;

  // Ascending edges plus their reversals (alpha', alpha, conj(gamma)).
  std::vector<AscendingEdge> full_edges() const;

 private:
  explicit CayleyTree(FreeProduct group) : group_(std::move(group)) {}

  FreeProduct group_;
  int radius_ = 0;
  std::vector<IrrWord> vertices_;
  std::vector<AscendingEdge> edges_;
  std::map<IrrWord, std::size_t> index_;
};

struct TreeViolation {
  IrrWord vertex;
  Direction first;
  Direction second;
  std::string kind;  // "cycle", "level_edge" or "duplicate_target"
};

struct TreeCertificate {
  bool is_directional_tree = true;
  std::vector<TreeViolation> violations;
};

TreeCertificate is_directional_tree(const FreeProduct& group, int radius);

std::size_t distance(const IrrWord& alpha);

// Prefix/suffix pairs, ordered by prefix length.
std::vector<std::pair<IrrWord, IrrWord>> ascending_splittings(const IrrWord& alpha);

enum class GraphFormat { Dot, Json };
GraphFormat parse_graph_format(std::string_view name);
std::string export_graph(const CayleyTree& tree, GraphFormat format);

}  // namespace qcayley
