#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crown/errors.hpp"

namespace crown {

/// A finite set with a reflexive symmetric relation. Vertices are indexed
/// 0..size()-1 in insertion order and carry unique labels.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  /// Relation = diagonal plus the symmetric closure of the edges. Explicit
  /// self-loops and unknown endpoints are rejected.
  static Graph make(std::vector<std::string> vertices,
                    const std::vector<std::pair<std::string, std::string>>& edges) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (!index.emplace(vertices[i], i).second) throw Error("duplicate vertex label '" + vertices[i] + "'");
    std::vector<Edge> idx;
    for (const auto& [a, b] : edges) {
      auto ia = index.find(a), ib = index.find(b);
      if (ia == index.end()) throw Error("unknown endpoint '" + a + "'");
      if (ib == index.end()) throw Error("unknown endpoint '" + b + "'");
      idx.emplace_back(ia->second, ib->second);
    }
    return from_indices(std::move(vertices), idx);
  }

  static Graph from_indices(std::vector<std::string> labels, std::span<const Edge> edges) {
    Graph g;
    const std::size_t n = labels.size();
    g.labels_ = std::move(labels);
    for (std::size_t i = 0; i < n; ++i)
      if (!g.index_.emplace(g.labels_[i], i).second) throw Error("duplicate vertex label '" + g.labels_[i] + "'");
    g.related_.assign(n * n, false);
    g.nbrs_.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.related_[i * n + i] = true;
    for (auto [a, b] : edges) {
      if (a >= n || b >= n) throw Error("edge endpoint out of range");
      if (a == b) throw Error("explicit self-loop at '" + g.labels_[a] + "' (the diagonal is implicit)");
      g.related_[a * n + b] = g.related_[b * n + a] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && g.related_[i * n + j]) g.nbrs_[i].push_back(j);
    return g;
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t x) const { return labels_.at(x); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::optional<std::size_t> index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// (x, y) is in the relation.
  bool related(std::size_t x, std::size_t y) const { return related_[x * size() + y]; }

  /// Adjacent vertices, excluding x itself.
  const std::vector<std::size_t>& neighbors(std::size_t x) const { return nbrs_.at(x); }
  std::size_t degree(std::size_t x) const { return nbrs_.at(x).size(); }

  /// Edges {x, y} as pairs x < y in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t x = 0; x < size(); ++x)
      for (auto y : nbrs_[x])
        if (x < y) out.emplace_back(x, y);
    return out;
  }

  std::size_t edge_count() const noexcept {
    std::size_t n = 0;
    for (const auto& v : nbrs_) n += v.size();
    return n / 2;
  }

  /// Size of the relation G_2 as a set of ordered pairs.
  std::size_t relation_size() const noexcept { return size() + 2 * edge_count(); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.related_ == b.related_;
  }

 private:
  Graph() = default;

  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
  std::vector<bool> related_;
  std::vector<std::vector<std::size_t>> nbrs_;
};

using GraphPtr = std::shared_ptr<const Graph>;

inline GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

/// A vertex map carrying the relation of the source into that of the target.
/// The pair map f_2 is determined by f_1.
class GraphMorphism {
 public:
  static GraphMorphism make(std::vector<std::size_t> vertex_map, GraphPtr source, GraphPtr target) {
    if (vertex_map.size() != source->size()) throw Error("vertex map is not total on the source");
    for (auto y : vertex_map)
      if (y >= target->size()) throw Error("vertex map leaves the target");
    for (std::size_t x = 0; x < source->size(); ++x)
      for (auto y : source->neighbors(x))
        if (!target->related(vertex_map[x], vertex_map[y]))
          throw NotAMorphism(source->label(x), source->label(y), target->label(vertex_map[x]),
                             target->label(vertex_map[y]));
    return GraphMorphism(std::move(vertex_map), std::move(source), std::move(target));
  }

  static GraphMorphism identity(GraphPtr g) {
    std::vector<std::size_t> id(g->size());
    std::iota(id.begin(), id.end(), std::size_t{0});
    return GraphMorphism(std::move(id), g, g);
  }

  const GraphPtr& source() const noexcept { return source_; }
  const GraphPtr& target() const noexcept { return target_; }
  const std::vector<std::size_t>& vertex_map() const noexcept { return map_; }
  std::size_t operator()(std::size_t x) const { return map_.at(x); }

  /// Same maps between equal graphs.
  friend bool operator==(const GraphMorphism& a, const GraphMorphism& b) {
    return a.map_ == b.map_ && *a.source_ == *b.source_ && *a.target_ == *b.target_;
  }

 private:
  GraphMorphism(std::vector<std::size_t> m, GraphPtr s, GraphPtr t)
      : source_(std::move(s)), target_(std::move(t)), map_(std::move(m)) {}

  GraphPtr source_;
  GraphPtr target_;
  std::vector<std::size_t> map_;
};

/// g after f.
inline GraphMorphism compose(const GraphMorphism& g, const GraphMorphism& f) {
  if (!(*f.target() == *g.source())) throw Error("morphisms are not composable");
  std::vector<std::size_t> m(f.source()->size());
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = g(f(x));
  return GraphMorphism::make(std::move(m), f.source(), g.target());
}

/// The images of vertices and of relation pairs jointly exhaust the common target.
inline bool is_cover(std::span<const GraphMorphism> fs) {
  if (fs.empty()) throw Error("cover check needs at least one morphism");
  const Graph& h = *fs.front().target();
  for (const auto& f : fs)
    if (!(*f.target() == h)) throw Error("cover candidates have different targets");
  const std::size_t n = h.size();
  std::vector<bool> vert(n, false), pair(n * n, false);
  for (const auto& f : fs) {
    const Graph& g = *f.source();
    for (std::size_t x = 0; x < g.size(); ++x) {
      vert[f(x)] = true;
      pair[f(x) * n + f(x)] = true;
      for (auto y : g.neighbors(x)) pair[f(x) * n + f(y)] = true;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!vert[x]) return false;
    for (std::size_t y = 0; y < n; ++y)
      if (h.related(x, y) && !pair[x * n + y]) return false;
  }
  return true;
}

/// For all distinct x, y some z has (x,z) outside the relation and (y,z) inside.
inline bool is_admissible(const Graph& g) {
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y) {
      if (x == y) continue;
      bool found = false;
      for (std::size_t z = 0; z < g.size() && !found; ++z) found = !g.related(x, z) && g.related(y, z);
      if (!found) return false;
    }
  return true;
}

inline bool is_triangle_free(const Graph& g) {
  for (auto [x, y] : g.edges())
    for (auto z : g.neighbors(y))
      if (z != x && g.related(x, z)) return false;
  return true;
}

inline std::size_t min_valency(const Graph& g) {
  std::size_t m = g.size() ? g.degree(0) : 0;
  for (std::size_t x = 0; x < g.size(); ++x) m = std::min(m, g.degree(x));
  return m;
}

struct CycleComponent {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  /// Every vertex of the component has degree 2 inside it.
  bool is_cycle = false;
};

/// Components of the subgraph spanned by edges incident to a valency-2 vertex.
struct Valency2Cycles {
  std::vector<CycleComponent> components;

  std::size_t count() const noexcept { return components.size(); }
  bool all_cycles() const {
    return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.is_cycle; });
  }
  std::vector<std::size_t> cycle_lengths() const {
    std::vector<std::size_t> out;
    for (const auto& c : components) out.push_back(c.edges);
    return out;
  }
};

inline Valency2Cycles valency2_cycle_count(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> sub(n);
  for (auto [x, y] : g.edges())
    if (g.degree(x) == 2 || g.degree(y) == 2) {
      sub[x].push_back(y);
      sub[y].push_back(x);
    }
  Valency2Cycles out;
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start] || sub[start].empty()) continue;
    CycleComponent comp;
    comp.is_cycle = true;
    std::size_t degree_sum = 0;
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      ++comp.vertices;
      degree_sum += sub[x].size();
      if (sub[x].size() != 2) comp.is_cycle = false;
      for (auto y : sub[x])
        if (!seen[y]) seen[y] = true, stack.push_back(y);
    }
    comp.edges = degree_sum / 2;
    out.components.push_back(comp);
  }
  return out;
}

namespace detail {

/// Joint colour refinement of two graphs, starting from degrees. Returns the
/// stable colourings, or nullopt if the colour histograms ever differ.
inline std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> refine_jointly(
    const Graph& g, const Graph& h) {
  auto init = [](const Graph& x) {
    std::vector<std::size_t> c(x.size());
    for (std::size_t v = 0; v < x.size(); ++v) c[v] = x.degree(v);
    return c;
  };
  std::vector<std::size_t> cg = init(g), ch = init(h);
  std::size_t classes = 0;
  while (true) {
    using Signature = std::pair<std::size_t, std::vector<std::size_t>>;
    std::map<Signature, std::size_t> palette;
    auto signature = [](const Graph& x, const std::vector<std::size_t>& c, std::size_t v) {
      std::vector<std::size_t> nb;
      for (auto u : x.neighbors(v)) nb.push_back(c[u]);
      std::sort(nb.begin(), nb.end());
      return Signature{c[v], std::move(nb)};
    };
    for (std::size_t v = 0; v < g.size(); ++v) palette.emplace(signature(g, cg, v), 0);
    for (std::size_t v = 0; v < h.size(); ++v) palette.emplace(signature(h, ch, v), 0);
    std::size_t next = 0;
    for (auto& [sig, id] : palette) id = next++;
    std::vector<std::size_t> ng(g.size()), nh(h.size());
    for (std::size_t v = 0; v < g.size(); ++v) ng[v] = palette.at(signature(g, cg, v));
    for (std::size_t v = 0; v < h.size(); ++v) nh[v] = palette.at(signature(h, ch, v));
    std::vector<std::size_t> hist_g(next, 0), hist_h(next, 0);
    for (auto c : ng) ++hist_g[c];
    for (auto c : nh) ++hist_h[c];
    if (hist_g != hist_h) return std::nullopt;
    cg = std::move(ng);
    ch = std::move(nh);
    if (next == classes) break;
    classes = next;
  }
  return std::pair{std::move(cg), std::move(ch)};
}

}  // namespace detail

/// An isomorphism g -> h as a vertex map, found by backtracking over colour
/// classes of the joint refinement.
inline std::optional<std::vector<std::size_t>> find_isomorphism(const Graph& g, const Graph& h,
                                                                std::size_t cap = 64) {
  if (g.size() > cap || h.size() > cap)
    throw CapExceeded("graph isomorphism capped at " + std::to_string(cap) + " vertices");
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return std::nullopt;
  if (g.size() == 0) return std::vector<std::size_t>{};
  auto colours = detail::refine_jointly(g, h);
  if (!colours) return std::nullopt;
  const auto& [cg, ch] = *colours;
  const std::size_t n = g.size();

  // Most constrained first: small colour classes, then high degree.
  std::vector<std::size_t> class_size(*std::max_element(cg.begin(), cg.end()) + 1, 0);
  for (auto c : cg) ++class_size[c];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (class_size[cg[a]] != class_size[cg[b]]) return class_size[cg[a]] < class_size[cg[b]];
    return g.degree(a) > g.degree(b);
  });

  std::vector<std::size_t> map(n, n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    const std::size_t x = order[k];
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || ch[y] != cg[x]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        const std::size_t u = order[i];
        ok = g.related(x, u) == h.related(y, map[u]);
      }
      if (!ok) continue;
      map[x] = y;
      used[y] = true;
      if (self(self, k + 1)) return true;
      used[y] = false;
    }
    map[x] = n;
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return map;
}

inline bool graphs_isomorphic(const Graph& g, const Graph& h, std::size_t cap = 64) {
  return find_isomorphism(g, h, cap).has_value();
}

/// The same graph with vertices renumbered: vertex x moves to position perm[x].
inline Graph relabel(const Graph& g, std::span<const std::size_t> perm) {
  std::vector<std::string> labels(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) labels[perm[x]] = g.label(x);
  std::vector<Graph::Edge> edges;
  for (auto [x, y] : g.edges()) edges.emplace_back(perm[x], perm[y]);
  return Graph::from_indices(std::move(labels), edges);
}

}  // namespace crown
