#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "crown/errors.hpp"
#include "crown/graph.hpp"
#include "crown/matrix.hpp"
#include "crown/scalar.hpp"

namespace crown {

/// Finite-dimensional commutative non-unital algebra given by structure
/// constants: product(i, j) is the sparse vector e_i e_j.
template <FieldScalar K>
class Algebra {
 public:
  Algebra(FieldSpec field, std::vector<std::string> basis, std::vector<SparseVec<K>> table)
      : field_(field), basis_(std::move(basis)), table_(std::move(table)) {
    const std::size_t d = basis_.size();
    if (table_.size() != d * d) throw DimensionMismatch("structure table must be dim x dim");
    for (auto& v : table_) {
      canonicalize(v);
      if (!v.empty() && v.back().first >= d) throw DimensionMismatch("structure constant index out of range");
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (table_[i * d + j] != table_[j * d + i]) throw Error("structure constants are not symmetric");
  }

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<std::string>& basis() const noexcept { return basis_; }
  const SparseVec<K>& product(std::size_t i, std::size_t j) const { return table_.at(i * dim() + j); }

  SparseVec<K> multiply(const SparseVec<K>& a, const SparseVec<K>& b) const {
    SparseVec<K> out;
    for (const auto& [i, x] : a)
      for (const auto& [j, y] : b) {
        const K c = x * y;
        for (const auto& [k, z] : product(i, j)) out.emplace_back(k, z * c);
      }
    canonicalize(out);
    return out;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        if (product(i, j) != product(j, i)) return false;
    return true;
  }

  bool is_associative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k)
          if (multiply(product(i, j), unit(k)) != multiply(unit(i), product(j, k))) return false;
    return true;
  }

  SparseVec<K> unit(std::size_t i) const { return {{i, K::from_int(1, field_)}}; }

 private:
  FieldSpec field_;
  std::vector<std::string> basis_;
  std::vector<SparseVec<K>> table_;
};

template <FieldScalar K>
using AlgebraPtr = std::shared_ptr<const Algebra<K>>;

/// Graded algebra concentrated in degrees 1 and 2. product holds the
/// degree-2 vector of every product of two degree-1 basis elements; all other
/// products vanish.
template <FieldScalar K>
struct GradedAlgebra {
  FieldSpec field;
  std::vector<std::string> degree1;
  std::vector<std::string> degree2;
  std::vector<SparseVec<K>> product;

  std::size_t dim() const noexcept { return degree1.size() + degree2.size(); }
  const SparseVec<K>& mul(std::size_t i, std::size_t j) const { return product.at(i * degree1.size() + j); }

  /// Forget the grading: degree-1 basis first, then degree 2.
  Algebra<K> forget() const {
    const std::size_t d1 = degree1.size(), d = dim();
    std::vector<std::string> basis = degree1;
    basis.insert(basis.end(), degree2.begin(), degree2.end());
    std::vector<SparseVec<K>> table(d * d);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d1; ++j) {
        SparseVec<K> v = mul(i, j);
        for (auto& e : v) e.first += d1;
        table[i * d + j] = std::move(v);
      }
    return Algebra<K>(field, std::move(basis), std::move(table));
  }
};

/// Linear map between algebras, expected to be multiplicative.
template <FieldScalar K>
struct AlgebraHom {
  AlgebraPtr<K> source;
  AlgebraPtr<K> target;
  Matrix<K> matrix;

  bool is_multiplicative() const {
    for (std::size_t i = 0; i < source->dim(); ++i)
      for (std::size_t j = 0; j < source->dim(); ++j) {
        const auto lhs = matvec(matrix, source->product(i, j));
        const auto rhs = target->multiply(matrix.column(i), matrix.column(j));
        if (lhs != rhs) return false;
      }
    return true;
  }
};

/// Basis indices of Q(G): vertex x is x; the diagonal orbit of x is |G_1| + x;
/// edge k (lexicographic) is 2|G_1| + k.
class OrbitIndex {
 public:
  explicit OrbitIndex(const Graph& g) : n_(g.size()), index_(n_ * n_, npos) {
    for (std::size_t x = 0; x < n_; ++x) index_[x * n_ + x] = n_ + x;
    const auto edges = g.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto [x, y] = edges[k];
      index_[x * n_ + y] = index_[y * n_ + x] = 2 * n_ + k;
    }
    dim_ = 2 * n_ + edges.size();
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Basis index of the orbit of (x, y), or npos if the pair is not related.
  std::size_t orbit(std::size_t x, std::size_t y) const { return index_[x * n_ + y]; }
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t n_;
  std::vector<std::size_t> index_;
  std::size_t dim_ = 0;
};

/// Q^•(G): degree 1 spanned by the vertex indicators, degree 2 by the
/// Σ_2-orbits of G_2 (diagonal orbits first, then edges).
template <FieldScalar K>
GradedAlgebra<K> q_graded(const Graph& g, FieldSpec field) {
  const std::size_t n = g.size();
  GradedAlgebra<K> a{field, g.labels(), {}, std::vector<SparseVec<K>>(n * n)};
  for (std::size_t x = 0; x < n; ++x) a.degree2.push_back(g.label(x) + "*" + g.label(x));
  for (auto [x, y] : g.edges()) a.degree2.push_back(g.label(x) + "*" + g.label(y));
  const OrbitIndex orbits(g);
  const K one = K::from_int(1, field);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (g.related(x, y)) a.product[x * n + y] = {{orbits.orbit(x, y) - n, one}};
  return a;
}

/// Q(G): the same algebra without the grading.
template <FieldScalar K>
Algebra<K> q_ungraded(const Graph& g, FieldSpec field) {
  return q_graded<K>(g, field).forget();
}

/// Matrix of Q(f) : Q(H) -> Q(G) for f : G -> H. Degree 1 is pullback along
/// f_1; degree 2 is the map on coinvariants induced by pullback along f_2.
template <FieldScalar K>
Matrix<K> q_hom_matrix(const GraphMorphism& f, FieldSpec field) {
  const Graph& g = *f.source();
  const Graph& h = *f.target();
  const OrbitIndex og(g), oh(h);
  const K one = K::from_int(1, field);
  std::vector<SparseVec<K>> cols(oh.dim());
  for (std::size_t x = 0; x < g.size(); ++x) cols[f(x)].emplace_back(x, one);
  // An orbit class of H pulls back through its representative (a, b), a <= b:
  // collect every ordered pair of G_2 landing exactly on it.
  auto visit = [&](std::size_t x, std::size_t y) {
    const std::size_t a = f(x), b = f(y);
    if (a <= b) cols[oh.orbit(a, b)].emplace_back(og.orbit(x, y), one);
  };
  for (std::size_t x = 0; x < g.size(); ++x) {
    visit(x, x);
    for (auto y : g.neighbors(x)) visit(x, y);
  }
  Matrix<K> m(field, og.dim(), oh.dim());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, std::move(cols[j]));
  return m;
}

/// Q(f) as an algebra homomorphism Q(target) -> Q(source).
template <FieldScalar K>
AlgebraHom<K> q_hom(const GraphMorphism& f, FieldSpec field) {
  auto src = std::make_shared<const Algebra<K>>(q_ungraded<K>(*f.target(), field));
  auto tgt = std::make_shared<const Algebra<K>>(q_ungraded<K>(*f.source(), field));
  return {src, tgt, q_hom_matrix<K>(f, field)};
}

/// The stacked map (Q(f_i))_i : Q(H) -> prod Q(G_i) has full column rank.
template <FieldScalar K>
bool cover_injectivity(std::span<const GraphMorphism> fs, FieldSpec field) {
  if (!is_cover(fs)) throw Error("morphisms do not form a cover");
  std::vector<Matrix<K>> blocks;
  for (const auto& f : fs) blocks.push_back(q_hom_matrix<K>(f, field));
  const Matrix<K> stacked = vstack<K>(blocks);
  return rank(stacked) == stacked.cols();
}

/// Iterated product of basis elements. Empty input is a caller bug.
template <FieldScalar K>
SparseVec<K> mult_multiset(const Algebra<K>& a, std::span<const std::size_t> factors) {
  if (factors.empty()) throw Error("empty product");
  SparseVec<K> acc = a.unit(factors[0]);
  for (std::size_t k = 1; k < factors.size() && !acc.empty(); ++k) acc = a.multiply(acc, a.unit(factors[k]));
  return acc;
}

/// Recovers the grading of an algebra with A^3 = 0: degree 2 is the
/// annihilator {b : bA = 0}, degree 1 the quotient by it, represented by the
/// basis vectors at the pivot columns of the multiplication map.
template <FieldScalar K>
GradedAlgebra<K> annihilator_grading(const Algebra<K>& a) {
  const std::size_t d = a.dim();
  // b -> (b e_0, ..., b e_{d-1}), rows indexed j*d + i.
  Matrix<K> mult(a.field(), d * d, d);
  for (std::size_t k = 0; k < d; ++k) {
    SparseVec<K> col;
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [i, v] : a.product(k, j)) col.emplace_back(j * d + i, v);
    mult.set_column(k, std::move(col));
  }
  const KernelBasis<K> ker = kernel(mult);

  GradedAlgebra<K> out{a.field(), {}, {}, {}};
  std::vector<std::size_t> position(d, d);
  for (std::size_t k = 0; k < ker.free_columns.size(); ++k) {
    position[ker.free_columns[k]] = k;
    out.degree2.push_back(a.basis()[ker.free_columns[k]]);
  }
  for (auto c : ker.pivot_columns) out.degree1.push_back(a.basis()[c]);

  const std::size_t d1 = ker.pivot_columns.size();
  out.product.resize(d1 * d1);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j) {
      const SparseVec<K>& u = a.product(ker.pivot_columns[i], ker.pivot_columns[j]);
      if (!matvec(mult, u).empty()) throw Unsupported("product leaves the annihilator: the algebra has A^3 != 0");
      // u lies in the kernel, so its coordinates are its free-column entries.
      SparseVec<K> coords;
      for (const auto& [idx, v] : u)
        if (position[idx] < d) coords.emplace_back(position[idx], v);
      canonicalize(coords);
      out.product[i * d1 + j] = std::move(coords);
    }
  return out;
}

/// A point of P(A^1) over F_p, normalized so the first nonzero coordinate is 1.
struct ProjPoint {
  std::vector<std::uint32_t> coords;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;

  std::optional<std::size_t> unit_index() const {
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == 0) continue;
      if (coords[i] != 1 || at) return std::nullopt;
      at = i;
    }
    return at;
  }
};

struct ProjectiveCaps {
  std::uint64_t max_points = std::uint64_t{1} << 24;
  /// Bound on the memory of the dependence bitsets, which grow quadratically.
  std::uint64_t max_bitset_bytes = std::uint64_t{1} << 30;
};

/// P(A^1) with the dependence relation [a] # [b] <=> ab != 0.
class ProjectiveDependence {
 public:
  template <FieldScalar K>
  ProjectiveDependence(const GradedAlgebra<K>& a, ProjectiveCaps caps = {}) {
    if constexpr (!std::is_same_v<K, Fp>) {
      throw Unsupported("projective enumeration needs a prime field");
    } else {
      const std::uint32_t q = a.field.p;
      const std::size_t d = a.degree1.size();
      if (checked_power(q, d) > caps.max_points)
        throw CapExceeded("|F|^dim = " + std::to_string(q) + "^" + std::to_string(d) + " exceeds the point cap");
      enumerate(q, d);
      const std::uint64_t words = (points_.size() + 63) / 64;
      if (words * 8 * points_.size() > caps.max_bitset_bytes)
        throw CapExceeded("dependence bitsets exceed the memory cap");
      words_ = words;
      build_dependence(a, q);
    }
  }

  const std::vector<ProjPoint>& points() const noexcept { return points_; }
  bool dependent(std::size_t p, std::size_t s) const { return (bits_[p * words_ + s / 64] >> (s % 64)) & 1U; }

  /// p^# is contained in s^#.
  bool below(std::size_t p, std::size_t s) const {
    for (std::size_t w = 0; w < words_; ++w)
      if (bits_[p * words_ + w] & ~bits_[s * words_ + w]) return false;
    return true;
  }

  /// Points p with {s : s <~ p} = {p}.
  std::vector<std::size_t> minimal() const {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < points_.size(); ++p) {
      bool minimal = true;
      for (std::size_t s = 0; s < points_.size() && minimal; ++s) minimal = s == p || !below(s, p);
      if (minimal) out.push_back(p);
    }
    return out;
  }

 private:
  void enumerate(std::uint32_t q, std::size_t d) {
    for (std::size_t lead = 0; lead < d; ++lead) {
      const std::size_t tail = d - lead - 1;
      const std::uint64_t count = checked_power(q, tail);
      for (std::uint64_t t = 0; t < count; ++t) {
        ProjPoint pt{std::vector<std::uint32_t>(d, 0)};
        pt.coords[lead] = 1;
        std::uint64_t rest = t;
        for (std::size_t k = d; k-- > lead + 1;) {
          pt.coords[k] = static_cast<std::uint32_t>(rest % q);
          rest /= q;
        }
        points_.push_back(std::move(pt));
      }
    }
  }

  template <class Graded>
  void build_dependence(const Graded& a, std::uint32_t q) {
    struct Term {
      std::size_t x, y, out;
      std::uint64_t c;
    };
    const std::size_t d1 = a.degree1.size();
    std::vector<Term> terms;
    for (std::size_t x = 0; x < d1; ++x)
      for (std::size_t y = 0; y < d1; ++y)
        for (const auto& [o, c] : a.mul(x, y)) terms.push_back({x, y, o, c.value()});
    const std::size_t n = points_.size();
    bits_.assign(n * words_, 0);
    std::vector<std::uint64_t> acc(a.degree2.size());
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t s = p; s < n; ++s) {
        std::fill(acc.begin(), acc.end(), 0);
        const auto& u = points_[p].coords;
        const auto& v = points_[s].coords;
        for (const auto& t : terms)
          if (u[t.x] && v[t.y]) acc[t.out] = (acc[t.out] + t.c * u[t.x] % q * v[t.y]) % q;
        const bool dep = std::any_of(acc.begin(), acc.end(), [](auto z) { return z != 0; });
        if (dep) {
          bits_[p * words_ + s / 64] |= std::uint64_t{1} << (s % 64);
          bits_[s * words_ + p / 64] |= std::uint64_t{1} << (p % 64);
        }
      }
  }

  std::vector<ProjPoint> points_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

template <FieldScalar K>
std::vector<ProjPoint> minimal_points(const GradedAlgebra<K>& a, ProjectiveCaps caps = {}) {
  const ProjectiveDependence dep(a, caps);
  std::vector<ProjPoint> out;
  for (auto p : dep.minimal()) out.push_back(dep.points()[p]);
  return out;
}

/// Graph on the minimal points of P(B^1), related by dependence, where B is
/// the annihilator grading of a. Points that are basis vectors keep the
/// basis label; others are named by their coordinates.
template <FieldScalar K>
Graph reconstruct_graph(const Algebra<K>& a, ProjectiveCaps caps = {}) {
  const GradedAlgebra<K> graded = annihilator_grading(a);
  const ProjectiveDependence dep(graded, caps);
  const auto minimal = dep.minimal();
  std::vector<std::string> labels;
  for (auto p : minimal) {
    const ProjPoint& pt = dep.points()[p];
    if (auto u = pt.unit_index()) {
      labels.push_back(graded.degree1[*u]);
    } else {
      std::string s = "[";
      for (std::size_t i = 0; i < pt.coords.size(); ++i) s += (i ? "," : "") + std::to_string(pt.coords[i]);
      labels.push_back(s + "]");
    }
  }
  std::vector<Graph::Edge> edges;
  for (std::size_t i = 0; i < minimal.size(); ++i)
    for (std::size_t j = i + 1; j < minimal.size(); ++j)
      if (dep.dependent(minimal[i], minimal[j])) edges.emplace_back(i, j);
  return Graph::from_indices(std::move(labels), edges);
}

}  // namespace crown
