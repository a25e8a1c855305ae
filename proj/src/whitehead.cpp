#include <algorithm>
#include <deque>
#include <limits>

#include "onerel/automorphism.hpp"

namespace onerel {

namespace {

constexpr int kInfinity = std::numeric_limits<int>::max() / 4;

// Undirected capacity graph on the 2n letter vertices of a Whitehead graph.
class CutGraph {
 public:
  explicit CutGraph(int vertices) : n_(vertices), cap_(static_cast<std::size_t>(vertices * vertices), 0) {}

  void add_edge(int u, int v, int c) {
    at(u, v) += c;
    at(v, u) += c;
  }

  // Edmonds-Karp. Returns the flow value and the source side of a minimum
  // cut (vertices reachable from s in the residual graph).
  std::pair<int, std::vector<bool>> min_cut(int s, int t) const {
    std::vector<int> residual = cap_;
    auto res = [&](int u, int v) -> int& { return residual[static_cast<std::size_t>(u * n_ + v)]; };
    int flow = 0;
    std::vector<int> parent(static_cast<std::size_t>(n_));
    for (;;) {
      std::fill(parent.begin(), parent.end(), -1);
      parent[static_cast<std::size_t>(s)] = s;
      std::deque<int> queue{s};
      while (!queue.empty() && parent[static_cast<std::size_t>(t)] < 0) {
        int u = queue.front();
        queue.pop_front();
        for (int v = 0; v < n_; ++v) {
          if (parent[static_cast<std::size_t>(v)] < 0 && res(u, v) > 0) {
            parent[static_cast<std::size_t>(v)] = u;
            queue.push_back(v);
          }
        }
      }
      if (parent[static_cast<std::size_t>(t)] < 0) break;
      int bottleneck = kInfinity;
      for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)]) {
        bottleneck = std::min(bottleneck, res(parent[static_cast<std::size_t>(v)], v));
      }
      for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)]) {
        res(parent[static_cast<std::size_t>(v)], v) -= bottleneck;
        res(v, parent[static_cast<std::size_t>(v)]) += bottleneck;
      }
      flow += bottleneck;
      if (flow >= kInfinity) break;
    }
    std::vector<bool> side(static_cast<std::size_t>(n_), false);
    for (int v = 0; v < n_; ++v) side[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(v)] >= 0;
    return {flow, std::move(side)};
  }

 private:
  int& at(int u, int v) { return cap_[static_cast<std::size_t>(u * n_ + v)]; }
  int n_;
  std::vector<int> cap_;
};

// Edge {u, v^-1} for every cyclically consecutive pair u v. For a Whitehead
// automorphism (A, a) the cyclic length changes by cut(A) - deg(a).
CutGraph whitehead_graph(const Word& cyclic, int rank) {
  CutGraph g(2 * rank);
  const std::size_t n = cyclic.size();
  for (std::size_t i = 0; i < n; ++i) {
    Letter u = cyclic[i];
    Letter v = cyclic[(i + 1) % n];
    g.add_edge(letter_vertex(u), letter_vertex(v.inverse()), 1);
  }
  return g;
}

struct Reduction {
  Automorphism move;
  Word result;
};

// First length-reducing Whitehead automorphism in enumeration order, or
// nothing when `cyclic` is Whitehead-minimal (within the allowed moves).
std::optional<Reduction> find_reduction(const Word& cyclic, int rank, std::optional<Generator> stable) {
  if (cyclic.size() < 2) return std::nullopt;
  for (int i = 1; i <= rank; ++i) {
    const auto deg = static_cast<int>(occurrence_count(cyclic, Generator(i)));
    if (deg == 0) continue;
    for (int sign : {1, -1}) {
      Letter a(Generator(i), sign);
      CutGraph g = whitehead_graph(cyclic, rank);
      if (stable && stable->index == i) {
        // Only conjugations by the stable letter fix its dual character:
        // keep x and x^-1 on the same side for every other generator.
        for (int x = 1; x <= rank; ++x) {
          if (x != i) g.add_edge(2 * (x - 1), 2 * (x - 1) + 1, kInfinity);
        }
      }
      auto [cut, side] = g.min_cut(letter_vertex(a), letter_vertex(a.inverse()));
      if (cut >= deg) continue;
      Automorphism move = whitehead_automorphism(rank, side, a);
      Word image = cyclically_reduce(apply(move, cyclic)).core;
      if (image.size() != cyclic.size() - static_cast<std::size_t>(deg - cut)) {
        throw std::logic_error("Whitehead cut formula disagrees with direct application");
      }
      return Reduction{std::move(move), std::move(image)};
    }
  }
  return std::nullopt;
}

WhiteheadResult minimize(const Word& w, int rank, std::optional<Generator> stable) {
  rank = std::max({rank, w.max_generator(), 1});
  Automorphism theta = Automorphism::identity(rank);
  Word current = cyclically_reduce(w).core;
  while (auto step = find_reduction(current, rank, stable)) {
    theta = compose(step->move, theta);
    current = std::move(step->result);
  }
  // Absorb the leftover conjugator so that theta(w) is exactly the result.
  auto [core, conj] = cyclically_reduce(apply(theta, w));
  if (!conj.empty()) theta = compose(conjugation(rank, conj), theta);
  return {std::move(core), std::move(theta)};
}

}  // namespace

WhiteheadResult whitehead_minimize(const Word& w, int rank) { return minimize(w, rank, std::nullopt); }

WhiteheadResult whitehead_minimize_fixing(const Word& w, int rank, Generator stable) {
  if (stable.index < 1 || stable.index > rank) throw PreconditionError("stable generator out of range");
  return minimize(w, rank, stable);
}

bool is_primitive(const Word& w, int rank) { return whitehead_minimize(w, rank).minimal.size() == 1; }

std::optional<FreeFactor> proper_free_factor(const Word& w, int rank) {
  if (rank < 1) throw PreconditionError("rank must be positive");
  if (w.max_generator() > rank) throw PreconditionError("word uses a generator beyond the rank");
  auto [minimal, theta] = whitehead_minimize(w, rank);
  for (int i = 1; i <= rank; ++i) {
    if (occurrence_count(minimal, Generator(i)) == 0) return FreeFactor{std::move(theta), Generator(i)};
  }
  return std::nullopt;
}

}  // namespace onerel
