#pragma once

// Independent reference implementations and random generators for the tests.
// Nothing here calls into the library's algorithms except constructors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crown/crown.hpp"

namespace oracle {

using crown::FieldSpec;

template <typename K>
using Dense = std::vector<std::vector<K>>;

template <typename K>
Dense<K> to_dense(const crown::Matrix<K>& m) {
  Dense<K> d(m.rows(), std::vector<K>(m.cols(), K::from_int(0, m.field())));
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c)) d[r][c] = v;
  return d;
}

template <typename K>
crown::Matrix<K> from_dense(const Dense<K>& d, FieldSpec f, std::size_t cols) {
  crown::Matrix<K> m(f, d.size(), cols);
  for (std::size_t c = 0; c < cols; ++c) {
    crown::SparseVec<K> col;
    for (std::size_t r = 0; r < d.size(); ++r)
      if (!d[r][c].is_zero()) col.emplace_back(r, d[r][c]);
    m.set_column(c, col);
  }
  return m;
}

/// Row-echelon rank by textbook Gaussian elimination on a dense copy.
template <typename K>
std::size_t dense_rank(Dense<K> a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c].is_zero()) continue;
      const K f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
    }
    ++r;
  }
  return r;
}

template <typename K>
Dense<K> dense_mul(const Dense<K>& a, const Dense<K>& b, FieldSpec f) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  Dense<K> out(n, std::vector<K>(m, K::from_int(0, f)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) out[i][j] = out[i][j] + a[i][l] * b[l][j];
  return out;
}

/// (A ⊗ B)[(i,k),(j,l)] = A[i][j] B[k][l], first factor most significant.
template <typename K>
Dense<K> dense_kron(const Dense<K>& a, const Dense<K>& b, FieldSpec f) {
  const std::size_t ar = a.size(), ac = a.empty() ? 0 : a[0].size();
  const std::size_t br = b.size(), bc = b.empty() ? 0 : b[0].size();
  Dense<K> out(ar * br, std::vector<K>(ac * bc, K::from_int(0, f)));
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l) out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
  return out;
}

template <typename K>
crown::Matrix<K> random_matrix(std::mt19937_64& rng, FieldSpec f, std::size_t rows, std::size_t cols,
                               double density = 0.4, long range = 4) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<long> val(-range, range);
  crown::Matrix<K> m(f, rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    crown::SparseVec<K> col;
    for (std::size_t r = 0; r < rows; ++r)
      if (keep(rng)) {
        const K v = K::from_int(val(rng), f);
        if (!v.is_zero()) col.emplace_back(r, v);
      }
    m.set_column(c, col);
  }
  return m;
}

/// W_n by definition: filter all of V^{2n+1}.
inline std::vector<std::string> brute_force_words(int n) {
  const std::size_t len = static_cast<std::size_t>(2 * n + 1);
  const char alphabet[] = {'+', '-', '0'};
  std::vector<std::string> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < len; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::string s(len, '+');
    std::size_t c = code;
    for (std::size_t i = 0; i < len; ++i, c /= 3) s[i] = alphabet[c % 3];
    auto val = [](char ch) { return ch == '+' ? 1 : ch == '-' ? -1 : 0; };
    bool ok = true;
    for (std::size_t j = 0; j < len; j += 2) ok = ok && s[j] != '0';
    for (std::size_t j = 0; j + 1 < len; ++j) ok = ok && val(s[j]) * val(s[j + 1]) != -1;
    if (ok) out.push_back(s);
  }
  return out;
}

/// Coordinatewise product of sign strings.
inline std::string word_product(const std::string& a, const std::string& b) {
  std::string out(a.size(), '0');
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == '0' || b[i] == '0') out[i] = '0';
    else out[i] = a[i] == b[i] ? '+' : '-';
  }
  return out;
}

/// g_S: 0 at positions 2i for i in S, + elsewhere (S as 1-based indices).
inline std::string g_subset(int n, const std::vector<int>& s) {
  std::string w(static_cast<std::size_t>(2 * n + 1), '+');
  for (int i : s) w[static_cast<std::size_t>(2 * i - 1)] = '0';
  return w;
}

/// Z_n = sum over S of (-1)^{|S|} g_S, as word -> integer coefficient.
inline std::map<std::string, long> z_expansion(int n) {
  std::map<std::string, long> out;
  for (unsigned mask = 0; mask < (1U << n); ++mask) {
    std::vector<int> s;
    for (int i = 1; i <= n; ++i)
      if (mask & (1U << (i - 1))) s.push_back(i);
    out[g_subset(n, s)] += (s.size() % 2 ? -1 : 1);
  }
  return out;
}

/// Erdos-Renyi graph on vertices "v0".."v{n-1}".
inline crown::Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<crown::Graph::Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (edge(rng)) edges.emplace_back(i, j);
  return crown::Graph::from_indices(labels, edges);
}

/// A random vertex map G -> H that happens to be a morphism, by rejection.
inline std::vector<std::size_t> random_morphism_map(std::mt19937_64& rng, const crown::Graph& g, const crown::Graph& h,
                                                    int tries = 2000) {
  std::uniform_int_distribution<std::size_t> pick(0, h.size() - 1);
  for (int t = 0; t < tries; ++t) {
    std::vector<std::size_t> m(g.size());
    for (auto& x : m) x = pick(rng);
    bool ok = true;
    for (std::size_t x = 0; x < g.size() && ok; ++x)
      for (std::size_t y = 0; y < g.size() && ok; ++y) ok = !g.related(x, y) || h.related(m[x], m[y]);
    if (ok) return m;
  }
  return {};
}

/// Q(G) straight from the definition, keyed by names: degree 1 is k^{G_1},
/// degree 2 the Σ_2-coinvariants of k^{G_2}. Returns the product table of
/// vertex indicators as (x, y) -> name of the orbit of (x, y).
inline std::map<std::pair<std::string, std::string>, std::string> q_products(const crown::Graph& g) {
  std::map<std::pair<std::string, std::string>, std::string> out;
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y)
      if (g.related(x, y)) {
        const auto& a = g.label(std::min(x, y));
        const auto& b = g.label(std::max(x, y));
        out[{g.label(x), g.label(y)}] = a + "*" + b;
      }
  return out;
}

/// Q(f) on coinvariants by definition: the class of delta_(a,b) pulls back
/// to the sum over ordered (x, y) in G_2 with (f x, f y) = (a, b) of the class
/// of delta_(x,y). Keyed by orbit names; values are integer multiplicities.
inline std::map<std::string, std::map<std::string, long>> q_pullback_degree2(const crown::GraphMorphism& f) {
  const crown::Graph& g = *f.source();
  const crown::Graph& h = *f.target();
  auto orbit = [](const crown::Graph& gr, std::size_t x, std::size_t y) {
    return gr.label(std::min(x, y)) + "*" + gr.label(std::max(x, y));
  };
  std::map<std::string, std::map<std::string, long>> out;
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = a; b < h.size(); ++b) {
      if (!h.related(a, b)) continue;
      auto& col = out[orbit(h, a, b)];
      for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y)
          if (g.related(x, y) && f(x) == a && f(y) == b) col[orbit(g, x, y)] += 1;
    }
  return out;
}

}  // namespace oracle
