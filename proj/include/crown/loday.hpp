#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crown/errors.hpp"
#include "crown/graph_algebra.hpp"
#include "crown/matrix.hpp"

namespace crown {

/// A surjection <p> -> <q>. images[i] is the (0-based) image of i.
class Surjection {
 public:
  static Surjection make(std::size_t q, std::vector<std::size_t> images) {
    if (q == 0 || images.empty()) throw Error("surjection sizes must be positive");
    std::vector<bool> hit(q, false);
    for (auto v : images) {
      if (v >= q) throw Error("surjection image out of range");
      hit[v] = true;
    }
    for (bool h : hit)
      if (!h) throw Error("map is not surjective");
    return Surjection(q, std::move(images));
  }

  static Surjection identity(std::size_t p) {
    std::vector<std::size_t> im(p);
    for (std::size_t i = 0; i < p; ++i) im[i] = i;
    return Surjection(p, std::move(im));
  }

  std::size_t source() const noexcept { return images_.size(); }
  std::size_t target() const noexcept { return q_; }
  std::size_t operator()(std::size_t i) const { return images_.at(i); }
  const std::vector<std::size_t>& images() const noexcept { return images_; }

  /// 1-based image list, e.g. "<3>-><2>:1,1,2".
  std::string to_string() const {
    std::string s = "<" + std::to_string(source()) + ">-><" + std::to_string(q_) + ">:";
    for (std::size_t i = 0; i < images_.size(); ++i) s += (i ? "," : "") + std::to_string(images_[i] + 1);
    return s;
  }

  friend bool operator==(const Surjection&, const Surjection&) = default;

 private:
  Surjection(std::size_t q, std::vector<std::size_t> im) : q_(q), images_(std::move(im)) {}
  std::size_t q_;
  std::vector<std::size_t> images_;
};

/// All surjections <p> -> <q>, in lexicographic order of their image lists.
inline std::vector<Surjection> surjections(std::size_t p, std::size_t q, std::size_t max_p = 6) {
  if (p == 0 || q == 0) throw Error("surjection sizes must be positive");
  if (p > max_p) throw CapExceeded("surjection enumeration capped at p = " + std::to_string(max_p));
  std::vector<Surjection> out;
  if (q > p) return out;
  std::vector<std::size_t> im(p, 0);
  while (true) {
    std::vector<bool> hit(q, false);
    for (auto v : im) hit[v] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) out.push_back(Surjection::make(q, im));
    std::size_t k = p;
    while (k > 0 && im[k - 1] == q - 1) im[--k] = 0;
    if (k == 0) break;
    ++im[k - 1];
  }
  return out;
}

/// t after s.
inline Surjection surj_compose(const Surjection& t, const Surjection& s) {
  if (s.target() != t.source()) throw DimensionMismatch("surjections are not composable");
  std::vector<std::size_t> im(s.source());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = t(s(i));
  return Surjection::make(t.target(), std::move(im));
}

/// L(A)(s) : A^{⊗p} -> A^{⊗q}; the basis tensor (k_1..k_p) goes to the tensor
/// product over j of the products of e_{k_i} with s(i) = j.
template <FieldScalar K>
Matrix<K> loday_matrix(const Algebra<K>& a, const Surjection& s, std::size_t max_dim = std::size_t{1} << 22) {
  const std::size_t d = a.dim(), p = s.source(), q = s.target();
  const std::size_t cols = checked_power(d, p);
  if (cols > max_dim) throw CapExceeded("tensor dimension " + std::to_string(d) + "^" + std::to_string(p) + " exceeds cap");
  const std::vector<std::size_t> dims(q, d);
  Matrix<K> m(a.field(), checked_power(d, q), cols);
  std::vector<std::vector<std::size_t>> groups(q);
  std::vector<SparseVec<K>> factors(q);
  for (std::size_t col = 0; col < cols; ++col) {
    const auto digits = tensor_digits(col, d, p);
    for (auto& g : groups) g.clear();
    for (std::size_t i = 0; i < p; ++i) groups[s(i)].push_back(digits[i]);
    bool zero = false;
    for (std::size_t j = 0; j < q && !zero; ++j) {
      factors[j] = mult_multiset(a, std::span<const std::size_t>(groups[j]));
      zero = factors[j].empty();
    }
    if (!zero) m.set_column(col, tensor_product<K>(factors, dims));
  }
  return m;
}

/// L^r(A) respects identities and composition of all surjections among
/// objects <1>..<r>.
template <FieldScalar K>
bool functor_check(const Algebra<K>& a, std::size_t r, std::size_t max_dim = std::size_t{1} << 22) {
  for (std::size_t p = 1; p <= r; ++p)
    if (!(loday_matrix(a, Surjection::identity(p), max_dim) == Matrix<K>::identity(a.field(), checked_power(a.dim(), p))))
      return false;
  for (std::size_t p = 1; p <= r; ++p)
    for (std::size_t q = 1; q <= p; ++q)
      for (const auto& s : surjections(p, q)) {
        const auto ls = loday_matrix(a, s, max_dim);
        for (std::size_t u = 1; u <= q; ++u)
          for (const auto& t : surjections(q, u))
            if (!(loday_matrix(a, surj_compose(t, s), max_dim) == compose(loday_matrix(a, t, max_dim), ls)))
              return false;
      }
  return true;
}

/// Components eta_p : source^{⊗p} -> target^{⊗p}, p = 1..r, of a morphism
/// between truncated representations.
template <FieldScalar K>
struct NatTransData {
  std::size_t r = 0;
  AlgebraPtr<K> source;
  AlgebraPtr<K> target;
  std::vector<Matrix<K>> components;

  const Matrix<K>& at(std::size_t p) const { return components.at(p - 1); }

  static NatTransData identity(AlgebraPtr<K> a, std::size_t r) {
    NatTransData out{r, a, a, {}};
    for (std::size_t p = 1; p <= r; ++p)
      out.components.push_back(Matrix<K>::identity(a->field(), checked_power(a->dim(), p)));
    return out;
  }
};

/// Where a naturality square fails.
struct NaturalityWitness {
  std::string surjection;
  std::size_t row;
  std::size_t col;
};

/// First failing square, in enumeration order, or nullopt if eta is natural.
template <FieldScalar K>
std::optional<NaturalityWitness> naturality_witness(const NatTransData<K>& eta,
                                                    std::size_t max_dim = std::size_t{1} << 22) {
  for (std::size_t p = 1; p <= eta.r; ++p)
    for (std::size_t q = 1; q <= p; ++q)
      for (const auto& s : surjections(p, q)) {
        const auto lhs = compose(eta.at(q), loday_matrix(*eta.source, s, max_dim));
        const auto rhs = compose(loday_matrix(*eta.target, s, max_dim), eta.at(p));
        const auto diff = lhs - rhs;
        if (auto at = diff.first_nonzero()) return NaturalityWitness{s.to_string(), at->first, at->second};
      }
  return std::nullopt;
}

template <FieldScalar K>
bool naturality_check(const NatTransData<K>& eta, std::size_t max_dim = std::size_t{1} << 22) {
  return !naturality_witness(eta, max_dim).has_value();
}

/// Componentwise eta o theta.
template <FieldScalar K>
NatTransData<K> compose(const NatTransData<K>& eta, const NatTransData<K>& theta) {
  if (eta.r != theta.r) throw DimensionMismatch("truncation levels differ");
  NatTransData<K> out{eta.r, theta.source, eta.target, {}};
  for (std::size_t p = 1; p <= eta.r; ++p) out.components.push_back(compose(eta.at(p), theta.at(p)));
  return out;
}

}  // namespace crown
