#pragma once

#include <string>
#include <vector>

#include "crown/graph.hpp"
#include "crown/signs.hpp"

namespace crown {

/// The vertex x_j^v of the strip B_n.
struct CrownVertex {
  int column;
  TriSign sign;

  std::string label() const { return "x" + std::to_string(column) + "^" + to_char(sign); }
};

/// Index of x_j^v in B_n. Columns ascend; within a column the order is + - 0.
/// Odd columns hold two vertices, even columns three.
inline std::size_t strip_index(int column, TriSign v) {
  if (column < 1) throw Error("column out of range");
  if (column % 2 == 1 && v == TriSign::Zero) throw Error("odd columns carry no 0 vertex");
  const auto j = static_cast<std::size_t>(column);
  return 2 * (j / 2) + 3 * ((j - 1) / 2) + static_cast<std::size_t>(order_rank(v));
}

/// Vertices of B_n in index order.
inline std::vector<CrownVertex> strip_vertices(int n) {
  std::vector<CrownVertex> out;
  for (int j = 1; j <= 2 * n + 1; ++j)
    for (TriSign v : kTriSigns)
      if (j % 2 == 0 || v != TriSign::Zero) out.push_back({j, v});
  return out;
}

/// B_n: for each i and v in U, the edges x_{2i-1}^v x_{2i}^v, x_{2i}^v x_{2i+1}^v,
/// x_{2i-1}^v x_{2i}^0 and x_{2i}^0 x_{2i+1}^v. 5n+2 vertices, 8n edges.
inline Graph build_B(int n) {
  if (n < 1) throw Error("strip needs n >= 1");
  std::vector<std::string> labels;
  for (const auto& x : strip_vertices(n)) labels.push_back(x.label());
  std::vector<Graph::Edge> edges;
  for (int i = 1; i <= n; ++i)
    for (Sign s : kSigns) {
      const TriSign v = to_tri(s);
      edges.emplace_back(strip_index(2 * i - 1, v), strip_index(2 * i, v));
      edges.emplace_back(strip_index(2 * i, v), strip_index(2 * i + 1, v));
      edges.emplace_back(strip_index(2 * i - 1, v), strip_index(2 * i, TriSign::Zero));
      edges.emplace_back(strip_index(2 * i, TriSign::Zero), strip_index(2 * i + 1, v));
    }
  return Graph::from_indices(std::move(labels), edges);
}

/// A subgraph together with its inclusion morphism.
struct Subgraph {
  GraphPtr graph;
  GraphMorphism inclusion;
};

/// A quotient graph together with its projection morphism.
struct Quotient {
  GraphPtr graph;
  GraphMorphism projection;
};

/// B_n with its pieces F_1..F_n and, for n >= 2, the crowns C_n^+ and C_n^-.
class CrownFamily {
 public:
  explicit CrownFamily(int n) : n_(n), strip_(share(build_B(n))) {
    for (int i = 1; i <= n; ++i) pieces_.push_back(make_piece(i));
    if (n >= 2) {
      crowns_.push_back(make_crown(Sign::Plus));
      crowns_.push_back(make_crown(Sign::Minus));
    }
  }

  int level() const noexcept { return n_; }
  const GraphPtr& strip() const noexcept { return strip_; }
  bool has_crowns() const noexcept { return !crowns_.empty(); }

  /// F_i with its inclusion e_i, 1 <= i <= n.
  const Subgraph& piece(int i) const {
    if (i < 1 || i > n_) throw Error("piece index out of range");
    return pieces_[static_cast<std::size_t>(i - 1)];
  }

  std::vector<GraphMorphism> piece_inclusions() const {
    std::vector<GraphMorphism> out;
    for (const auto& p : pieces_) out.push_back(p.inclusion);
    return out;
  }

  /// C_n^s with the projection f_n^s : B_n -> C_n^s.
  const Quotient& crown(Sign s) const {
    if (!has_crowns()) throw Error("crowns need n >= 2");
    return crowns_[s == Sign::Plus ? 0 : 1];
  }

  /// w_* : B_n -> B_n, x_j^v -> x_j^{w_j v}.
  GraphMorphism act_on_strip(const Word& w) const {
    require_level(w);
    std::vector<std::size_t> m;
    for (const auto& x : strip_vertices(n_)) m.push_back(strip_index(x.column, w[x.column] * x.sign));
    return GraphMorphism::make(std::move(m), strip_, strip_);
  }

  /// Restriction of w_* to the invariant piece F_i.
  GraphMorphism act_on_piece(const Word& w, int i) const {
    const auto on_strip = act_on_strip(w);
    const Subgraph& f = piece(i);
    const Graph& b = *strip_;
    std::vector<std::size_t> m;
    for (std::size_t x = 0; x < f.graph->size(); ++x) {
      const auto image = f.graph->index_of(b.label(on_strip(f.inclusion(x))));
      if (!image) throw Error("piece F_" + std::to_string(i) + " is not invariant");
      m.push_back(*image);
    }
    return GraphMorphism::make(std::move(m), f.graph, f.graph);
  }

  /// w_* : C_n^s -> C_n^t, t = w.s, the map commuting with the projections.
  GraphMorphism act_on_crown(const Word& w, Sign s) const { return descend(w, s, act_on_U(w, s)); }

  /// The vertex map C_n^s -> C_n^t induced by w, if it is well defined.
  GraphMorphism descend(const Word& w, Sign s, Sign t) const {
    const auto on_strip = act_on_strip(w);
    const Quotient& from = crown(s);
    const Quotient& to = crown(t);
    const std::size_t unset = to.graph->size();
    std::vector<std::size_t> m(from.graph->size(), unset);
    for (std::size_t x = 0; x < strip_->size(); ++x) {
      const std::size_t q = from.projection(x);
      const std::size_t image = to.projection(on_strip(x));
      if (m[q] == unset) {
        m[q] = image;
      } else if (m[q] != image) {
        throw IllDefinedQuotient("word " + w.to_string() + " does not descend from C^" + to_char(s) + " to C^" +
                                 to_char(t) + " at " + from.graph->label(q));
      }
    }
    return GraphMorphism::make(std::move(m), from.graph, to.graph);
  }

 private:
  void require_level(const Word& w) const {
    if (w.level() != n_) throw LevelMismatch("word level " + std::to_string(w.level()) + " on strip of level " +
                                             std::to_string(n_));
  }

  Subgraph make_piece(int i) const {
    const Graph& b = *strip_;
    std::vector<std::size_t> in_b;
    for (const auto& x : strip_vertices(n_))
      if (x.column >= 2 * i - 1 && x.column <= 2 * i + 1) in_b.push_back(strip_index(x.column, x.sign));
    std::vector<std::string> labels;
    std::vector<std::size_t> local(b.size(), b.size());
    for (std::size_t k = 0; k < in_b.size(); ++k) {
      labels.push_back(b.label(in_b[k]));
      local[in_b[k]] = k;
    }
    std::vector<Graph::Edge> edges;
    for (auto [x, y] : b.edges())
      if (local[x] < b.size() && local[y] < b.size()) edges.emplace_back(local[x], local[y]);
    auto g = share(Graph::from_indices(std::move(labels), edges));
    return {g, GraphMorphism::make(std::move(in_b), g, strip_)};
  }

  /// Identify x_{2n+1}^v with x_1^{sv}; quotient vertices keep their column-1 names.
  Quotient make_crown(Sign s) const {
    const Graph& b = *strip_;
    const std::size_t last = strip_index(2 * n_ + 1, TriSign::Plus);
    std::vector<std::size_t> proj(b.size());
    for (std::size_t x = 0; x < b.size(); ++x) proj[x] = x;
    for (Sign v : kSigns) proj[strip_index(2 * n_ + 1, to_tri(v))] = strip_index(1, to_tri(v * s));
    std::vector<std::string> labels(b.labels().begin(), b.labels().begin() + static_cast<std::ptrdiff_t>(last));
    std::vector<Graph::Edge> edges;
    for (auto [x, y] : b.edges()) edges.emplace_back(proj[x], proj[y]);
    auto g = share(Graph::from_indices(std::move(labels), edges));
    return {g, GraphMorphism::make(std::move(proj), strip_, g)};
  }

  int n_;
  GraphPtr strip_;
  std::vector<Subgraph> pieces_;
  std::vector<Quotient> crowns_;
};

/// F_i as a standalone graph with its inclusion into a fresh B_n.
inline Subgraph build_F(int n, int i) { return CrownFamily(n).piece(i); }

/// C_n^s with the projection f_n^s from a fresh B_n.
inline Quotient build_C(int n, Sign s) {
  if (n < 2) throw Error("crowns need n >= 2");
  return CrownFamily(n).crown(s);
}

}  // namespace crown
