#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gcert/word.hpp"

namespace gcert {

/// Folded core graph of a finitely generated subgroup of F_n.
///
/// Vertices are numbered in canonical breadth-first order from the
/// basepoint (vertex 0), visiting edges in letter order (a, A, b, B, ...).
/// Two graphs therefore compare equal iff they represent the same subgroup.
class SubgroupGraph {
 public:
  static constexpr int kNone = -1;

  explicit SubgroupGraph(std::size_t rank);

  std::size_t rank_ambient() const noexcept { return rank_; }
  std::size_t vertex_count() const noexcept { return out_.size(); }
  std::size_t edge_count() const noexcept;
  /// Target of the edge labelled `generator` leaving `vertex`, or kNone.
  int out(std::size_t vertex, std::size_t generator) const {
    return out_[vertex][generator];
  }
  int in(std::size_t vertex, std::size_t generator) const {
    return in_[vertex][generator];
  }
  /// Endpoint of reading letter `l` from `vertex`, or kNone.
  int step(std::size_t vertex, Letter l) const {
    return l.sign > 0 ? out_[vertex][l.generator] : in_[vertex][l.generator];
  }

  /// `v --a--> w` lines, one per edge, in canonical order.
  std::string to_text() const;

  friend bool operator==(const SubgroupGraph&, const SubgroupGraph&) = default;

 private:
  friend class Folder;

  std::size_t rank_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

struct LabeledEdge {
  std::size_t from;
  std::size_t generator;
  std::size_t to;
};

/// Folds an arbitrary labelled graph on vertices [0, vertex_count) with
/// basepoint 0, then trims it to the core of the basepoint component.
SubgroupGraph fold_edges(std::size_t rank, std::size_t vertex_count,
                         std::span<const LabeledEdge> edges);

/// Folds the petal graph of the generators. Identity words are skipped;
/// throws RankMismatch if a word is not of the given rank.
SubgroupGraph build_graph(std::size_t rank, std::span<const Word> generators);
inline SubgroupGraph build_graph(std::size_t rank,
                                 std::initializer_list<Word> generators) {
  return build_graph(rank, std::span<const Word>(generators.begin(), generators.size()));
}

/// First Betti number |E| - |V| + 1 of the core graph.
std::size_t subgroup_rank(const SubgroupGraph& g);

bool contains(const SubgroupGraph& g, const Word& w);

/// Free basis read off a breadth-first spanning tree: one word per non-tree
/// edge, in canonical edge order.
std::vector<Word> free_basis(const SubgroupGraph& g);

struct Trivial {
  friend bool operator==(const Trivial&, const Trivial&) = default;
};
struct InfiniteCyclic {
  Word generator;
  friend bool operator==(const InfiniteCyclic&, const InfiniteCyclic&) = default;
};
struct NonAbelianFree {
  std::size_t rank;
  std::vector<Word> basis;
  friend bool operator==(const NonAbelianFree&, const NonAbelianFree&) = default;
};
using SubgroupClass = std::variant<Trivial, InfiniteCyclic, NonAbelianFree>;

/// An InfiniteCyclic generator is oriented so that the first nontrivial
/// input word is a positive power of it.
SubgroupClass classify(std::span<const Word> generators);
inline SubgroupClass classify(std::initializer_list<Word> generators) {
  return classify(std::span<const Word>(generators.begin(), generators.size()));
}

std::string class_name(const SubgroupClass& c);

}  // namespace gcert
