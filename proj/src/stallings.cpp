#include "gcert/stallings.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <utility>

#include "gcert/error.hpp"

namespace gcert {

SubgroupGraph::SubgroupGraph(std::size_t rank)
    : rank_(rank),
      out_(1, std::vector<int>(rank, kNone)),
      in_(1, std::vector<int>(rank, kNone)) {}

std::size_t SubgroupGraph::edge_count() const noexcept {
  std::size_t e = 0;
  for (const auto& row : out_) {
    for (int t : row) e += t != kNone ? 1 : 0;
  }
  return e;
}

std::string SubgroupGraph::to_text() const {
  std::ostringstream os;
  for (std::size_t v = 0; v < out_.size(); ++v) {
    for (std::size_t g = 0; g < rank_; ++g) {
      if (out_[v][g] == kNone) continue;
      os << v << " --" << format_word(Word::generator(rank_, g)) << "--> "
         << out_[v][g] << "\n";
    }
  }
  return os.str();
}

// Union-find folding. Every merge detaches all edges of the absorbed vertex
// and re-inserts them at the surviving representative; insertion conflicts
// queue further merges.
class Folder {
 public:
  Folder(std::size_t rank, std::size_t vertex_count)
      : rank_(rank),
        parent_(vertex_count),
        out_(vertex_count, std::vector<int>(rank, SubgroupGraph::kNone)),
        in_(vertex_count, std::vector<int>(rank, SubgroupGraph::kNone)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  void add_edge(std::size_t from, std::size_t gen, std::size_t to) {
    insert(find(static_cast<int>(from)), gen, find(static_cast<int>(to)));
    drain();
  }

  SubgroupGraph finish() {
    const std::size_t n = parent_.size();
    std::vector<bool> alive(n, false);
    for (std::size_t v = 0; v < n; ++v) alive[v] = find(static_cast<int>(v)) == static_cast<int>(v);
    restrict_to_basepoint_component(alive);
    trim(alive);
    return canonical(alive);
  }

 private:
  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void insert(int from, std::size_t gen, int to) {
    int existing_out = out_[from][gen];
    if (existing_out != SubgroupGraph::kNone) {
      if (existing_out != to) pending_.emplace_back(existing_out, to);
      return;
    }
    int existing_in = in_[to][gen];
    if (existing_in != SubgroupGraph::kNone) {
      if (existing_in != from) pending_.emplace_back(existing_in, from);
      return;
    }
    out_[from][gen] = to;
    in_[to][gen] = from;
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.front();
      pending_.pop_front();
      merge(find(a), find(b));
    }
  }

  void merge(int a, int b) {
    if (a == b) return;
    if (b < a) std::swap(a, b);  // keep the smaller index, so 0 survives
    std::vector<std::tuple<int, std::size_t, int>> detached;
    for (std::size_t g = 0; g < rank_; ++g) {
      int t = out_[b][g];
      if (t != SubgroupGraph::kNone) {
        detached.emplace_back(b, g, t);
        out_[b][g] = SubgroupGraph::kNone;
        in_[t][g] = SubgroupGraph::kNone;
      }
      int s = in_[b][g];
      if (s != SubgroupGraph::kNone) {
        detached.emplace_back(s, g, b);
        in_[b][g] = SubgroupGraph::kNone;
        out_[s][g] = SubgroupGraph::kNone;
      }
    }
    parent_[b] = a;
    for (auto [s, g, t] : detached) insert(find(s), g, find(t));
  }

  std::size_t degree(std::size_t v) const {
    std::size_t d = 0;
    for (std::size_t g = 0; g < rank_; ++g) {
      d += out_[v][g] != SubgroupGraph::kNone ? 1 : 0;
      d += in_[v][g] != SubgroupGraph::kNone ? 1 : 0;
    }
    return d;
  }

  void remove_vertex(std::size_t v, std::vector<bool>& alive) {
    for (std::size_t g = 0; g < rank_; ++g) {
      if (int t = out_[v][g]; t != SubgroupGraph::kNone) in_[t][g] = SubgroupGraph::kNone;
      if (int s = in_[v][g]; s != SubgroupGraph::kNone) out_[s][g] = SubgroupGraph::kNone;
      out_[v][g] = SubgroupGraph::kNone;
      in_[v][g] = SubgroupGraph::kNone;
    }
    alive[v] = false;
  }

  void restrict_to_basepoint_component(std::vector<bool>& alive) {
    std::vector<bool> seen(alive.size(), false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t g = 0; g < rank_; ++g) {
        for (int w : {out_[v][g], in_[v][g]}) {
          if (w != SubgroupGraph::kNone && !seen[w]) {
            seen[w] = true;
            queue.push_back(static_cast<std::size_t>(w));
          }
        }
      }
    }
    for (std::size_t v = 0; v < alive.size(); ++v) {
      if (alive[v] && !seen[v]) remove_vertex(v, alive);
    }
  }

  // Removes non-basepoint vertices of degree <= 1 until none remain.
  void trim(std::vector<bool>& alive) {
    std::deque<std::size_t> queue;
    for (std::size_t v = 1; v < alive.size(); ++v) {
      if (alive[v] && degree(v) <= 1) queue.push_back(v);
    }
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      if (!alive[v] || degree(v) > 1) continue;
      std::vector<std::size_t> neighbours;
      for (std::size_t g = 0; g < rank_; ++g) {
        if (int t = out_[v][g]; t != SubgroupGraph::kNone) neighbours.push_back(static_cast<std::size_t>(t));
        if (int s = in_[v][g]; s != SubgroupGraph::kNone) neighbours.push_back(static_cast<std::size_t>(s));
      }
      remove_vertex(v, alive);
      for (std::size_t w : neighbours) {
        if (w != 0 && alive[w] && degree(w) <= 1) queue.push_back(w);
      }
    }
  }

  SubgroupGraph canonical(const std::vector<bool>& alive) {
    std::vector<int> label(alive.size(), SubgroupGraph::kNone);
    std::vector<std::size_t> order{0};
    label[0] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
      std::size_t v = order[head];
      for (std::size_t g = 0; g < rank_; ++g) {
        for (int w : {out_[v][g], in_[v][g]}) {
          if (w != SubgroupGraph::kNone && label[w] == SubgroupGraph::kNone) {
            label[w] = static_cast<int>(order.size());
            order.push_back(static_cast<std::size_t>(w));
          }
        }
      }
    }
    SubgroupGraph result(rank_);
    result.out_.assign(order.size(), std::vector<int>(rank_, SubgroupGraph::kNone));
    result.in_.assign(order.size(), std::vector<int>(rank_, SubgroupGraph::kNone));
    for (std::size_t v : order) {
      for (std::size_t g = 0; g < rank_; ++g) {
        if (int t = out_[v][g]; t != SubgroupGraph::kNone) {
          result.out_[label[v]][g] = label[t];
          result.in_[label[t]][g] = label[v];
        }
      }
    }
    return result;
  }

  std::size_t rank_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::deque<std::pair<int, int>> pending_;
};

SubgroupGraph fold_edges(std::size_t rank, std::size_t vertex_count,
                         std::span<const LabeledEdge> edges) {
  Folder folder(rank, std::max<std::size_t>(vertex_count, 1));
  for (const LabeledEdge& e : edges) {
    if (e.generator >= rank || e.from >= vertex_count || e.to >= vertex_count) {
      throw Error(ErrorCode::UnknownGenerator, "edge out of range");
    }
    folder.add_edge(e.from, e.generator, e.to);
  }
  return folder.finish();
}

SubgroupGraph build_graph(std::size_t rank, std::span<const Word> generators) {
  std::vector<LabeledEdge> edges;
  std::size_t vertices = 1;
  for (const Word& w : generators) {
    if (w.rank() != rank) {
      throw Error(ErrorCode::RankMismatch, "generator rank differs from graph rank");
    }
    if (w.empty()) continue;
    // Petal: 0 -> v1 -> ... -> v_{n-1} -> 0.
    std::size_t prev = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::size_t next = i + 1 == w.size() ? 0 : vertices++;
      Letter l = w[i];
      if (l.sign > 0) {
        edges.push_back({prev, l.generator, next});
      } else {
        edges.push_back({next, l.generator, prev});
      }
      prev = next;
    }
  }
  return fold_edges(rank, vertices, edges);
}

std::size_t subgroup_rank(const SubgroupGraph& g) {
  return g.edge_count() + 1 - g.vertex_count();
}

bool contains(const SubgroupGraph& g, const Word& w) {
  if (w.rank() != g.rank_ambient()) {
    throw Error(ErrorCode::RankMismatch, "word rank differs from graph rank");
  }
  int v = 0;
  for (Letter l : w.letters()) {
    v = g.step(static_cast<std::size_t>(v), l);
    if (v == SubgroupGraph::kNone) return false;
  }
  return v == 0;
}

std::vector<Word> free_basis(const SubgroupGraph& g) {
  const std::size_t n = g.vertex_count();
  const std::size_t rank = g.rank_ambient();
  std::vector<Word> path(n, Word(rank));
  std::vector<bool> reached(n, false);
  // Tree edge marks, keyed by (source vertex, generator).
  std::vector<std::vector<bool>> tree(n, std::vector<bool>(rank, false));
  std::vector<std::size_t> order{0};
  reached[0] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    std::size_t v = order[head];
    for (std::size_t gen = 0; gen < rank; ++gen) {
      if (int t = g.out(v, gen); t != SubgroupGraph::kNone && !reached[t]) {
        reached[t] = true;
        tree[v][gen] = true;
        path[t] = multiply(path[v], Word::generator(rank, gen));
        order.push_back(static_cast<std::size_t>(t));
      }
      if (int s = g.in(v, gen); s != SubgroupGraph::kNone && !reached[s]) {
        reached[s] = true;
        tree[s][gen] = true;
        path[s] = multiply(path[v], Word::generator(rank, gen, -1));
        order.push_back(static_cast<std::size_t>(s));
      }
    }
  }
  std::vector<Word> basis;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t gen = 0; gen < rank; ++gen) {
      int t = g.out(v, gen);
      if (t == SubgroupGraph::kNone || tree[v][gen]) continue;
      Word w = path[v];
      w.push_back(Letter{static_cast<std::uint16_t>(gen), 1});
      w.append(invert(path[t]));
      basis.push_back(std::move(w));
    }
  }
  return basis;
}

SubgroupClass classify(std::span<const Word> generators) {
  std::size_t rank = generators.empty() ? 0 : generators.front().rank();
  SubgroupGraph g = build_graph(rank, generators);
  std::vector<Word> basis = free_basis(g);
  if (basis.empty()) return Trivial{};
  if (basis.size() == 1) {
    // Orient so the first nontrivial input is a positive power.
    Word g = std::move(basis.front());
    auto first = std::find_if(generators.begin(), generators.end(),
                              [](const Word& w) { return !w.empty(); });
    RootDecomposition rg = primitive_root(g);
    RootDecomposition rh = primitive_root(*first);
    if (conjugate(rg.root, rg.conjugator) != conjugate(rh.root, rh.conjugator)) g = invert(g);
    return InfiniteCyclic{std::move(g)};
  }
  std::size_t r = basis.size();
  return NonAbelianFree{r, std::move(basis)};
}

std::string class_name(const SubgroupClass& c) {
  struct {
    std::string operator()(const Trivial&) const { return "Trivial"; }
    std::string operator()(const InfiniteCyclic&) const { return "InfiniteCyclic"; }
    std::string operator()(const NonAbelianFree&) const { return "NonAbelianFree"; }
  } visitor;
  return std::visit(visitor, c);
}

}  // namespace gcert
