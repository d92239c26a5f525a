#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crown/graph.hpp"
#include "crown/graph_algebra.hpp"
#include "crown/loday.hpp"
#include "crown/matrix.hpp"
#include "crown/signs.hpp"

// JSON encodings. Coefficients are written as exact strings ("1", "-1/2", "3").

namespace crown {

using json = nlohmann::json;

inline json to_json(const Word& w) { return w.to_string(); }

template <FieldScalar K>
json to_json(const MonoidAlgElem<K>& x) {
  json out = json::array();
  for (const auto& [w, c] : x.terms()) out.push_back({{"coeff", c.to_string()}, {"word", w.to_string()}});
  return out;
}

/// Rebuilds an element from its {coeff, word} list. Coefficients must be integers.
template <FieldScalar K>
MonoidAlgElem<K> monoid_elem_from_json(const json& j, int n, FieldSpec f) {
  auto out = MonoidAlgElem<K>::zero(n, f);
  for (const auto& term : j) {
    const auto w = Word::parse(term.at("word").get<std::string>());
    if (w.level() != n) throw LevelMismatch("word level differs from the element level");
    out.add_term(w, K::from_int(std::stol(term.at("coeff").get<std::string>()), f));
  }
  return out;
}

inline json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [x, y] : g.edges()) edges.push_back({g.label(x), g.label(y)});
  return {{"vertices", g.labels()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  return Graph::make(j.at("vertices").get<std::vector<std::string>>(), edges);
}

/// Nonzero entries as [row, col, "c"], column-major.
template <FieldScalar K>
json sparse_triples(const Matrix<K>& m) {
  json out = json::array();
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c)) out.push_back({r, c, v.to_string()});
  return out;
}

template <FieldScalar K>
json to_json(const Matrix<K>& m) {
  return {{"field", m.field().name()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", sparse_triples(m)}};
}

/// structure_constants: [i, j, k, "c"] with e_i e_j = sum c e_k, all ordered pairs.
template <FieldScalar K>
json to_json(const Algebra<K>& a) {
  json sc = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (const auto& [k, c] : a.product(i, j)) sc.push_back({i, j, k, c.to_string()});
  return {{"field", a.field().name()}, {"basis", a.basis()}, {"structure_constants", sc}};
}

template <FieldScalar K>
json to_json(const NatTransData<K>& eta) {
  json comps = json::array();
  for (std::size_t p = 1; p <= eta.r; ++p) comps.push_back(sparse_triples(eta.at(p)));
  return {{"r", eta.r},
          {"field", eta.source->field().name()},
          {"dims", {eta.source->dim(), eta.target->dim()}},
          {"components", comps}};
}

}  // namespace crown
