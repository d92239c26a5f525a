#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crown/crown_graphs.hpp"
#include "crown/graph_algebra.hpp"
#include "crown/loday.hpp"
#include "crown/signs.hpp"

namespace crown {

inline constexpr std::size_t kDefaultMaxTensorDim = std::size_t{1} << 22;

/// Which family of graphs a monoid algebra element acts on.
enum class ActionTarget { Strip, Crown };

/// The algebras Q(B_n), Q(C_n^+), Q(C_n^-) and the pullbacks Q(f_n^s) over a field.
template <FieldScalar K>
class CrownAlgebras {
 public:
  CrownAlgebras(int n, FieldSpec field) : family_(n), field_(field) {
    strip_ = std::make_shared<const Algebra<K>>(q_ungraded<K>(*family_.strip(), field));
    if (family_.has_crowns())
      for (Sign s : kSigns) {
        crowns_.push_back(std::make_shared<const Algebra<K>>(q_ungraded<K>(*family_.crown(s).graph, field)));
        projections_.push_back(q_hom_matrix<K>(family_.crown(s).projection, field));
      }
  }

  int level() const noexcept { return family_.level(); }
  const FieldSpec& field() const noexcept { return field_; }
  const CrownFamily& family() const noexcept { return family_; }
  const AlgebraPtr<K>& strip() const noexcept { return strip_; }
  const AlgebraPtr<K>& crown(Sign s) const { return crowns_.at(slot(s)); }

  /// Q(f_n^s) : Q(C_n^s) -> Q(B_n).
  const Matrix<K>& projection(Sign s) const { return projections_.at(slot(s)); }

  /// Q(w_*) on Q(B_n).
  Matrix<K> strip_action(const Word& w) const { return q_hom_matrix<K>(family_.act_on_strip(w), field_); }

  /// Q(w_*) : Q(C_n^t) -> Q(C_n^s) for w_* : C_n^s -> C_n^t.
  Matrix<K> crown_action(const Word& w, Sign s) const { return q_hom_matrix<K>(family_.act_on_crown(w, s), field_); }

 private:
  std::size_t slot(Sign s) const {
    if (crowns_.empty()) throw Error("crowns need n >= 2");
    return s == Sign::Plus ? 0 : 1;
  }

  CrownFamily family_;
  FieldSpec field_;
  AlgebraPtr<K> strip_;
  std::vector<AlgebraPtr<K>> crowns_;
  std::vector<Matrix<K>> projections_;
};

namespace detail {
inline void require_tensor_cap(std::size_t d, std::size_t p, std::size_t cap) {
  if (checked_power(d, p) > cap)
    throw CapExceeded("tensor dimension " + std::to_string(d) + "^" + std::to_string(p) + " exceeds cap " +
                      std::to_string(cap));
}
}  // namespace detail

/// b_n^r(X) (target Strip; s and t are ignored) or c_n^r(X|_{s->t}) (target
/// Crown, a map L^r(Q(C_n^t)) -> L^r(Q(C_n^s))). Each monoid term contributes
/// the p-th Kronecker power of its own matrix; the terms are summed afterwards.
template <FieldScalar K>
NatTransData<K> cofunctor_eval(const CrownAlgebras<K>& ctx, std::size_t r, const MonoidAlgElem<K>& x, Sign s,
                               Sign t, ActionTarget target, std::size_t max_dim = kDefaultMaxTensorDim) {
  if (x.level() != ctx.level()) throw LevelMismatch("element level differs from the crown level");
  if (x.field() != ctx.field()) throw FieldMismatch("element field differs");
  const bool on_crown = target == ActionTarget::Crown;
  if (on_crown && !homset_member(x, s, t))
    throw HomsetViolation(std::string("element is not in k[W_n(") + to_char(s) + "," + to_char(t) + ")]");

  NatTransData<K> out;
  out.r = r;
  out.source = on_crown ? ctx.crown(t) : ctx.strip();
  out.target = on_crown ? ctx.crown(s) : ctx.strip();
  const std::size_t d = out.source->dim();
  detail::require_tensor_cap(d, r, max_dim);
  for (std::size_t p = 1; p <= r; ++p) out.components.push_back(Matrix<K>::zero(ctx.field(), checked_power(d, p), checked_power(d, p)));
  for (const auto& [w, c] : x.terms()) {
    const Matrix<K> m = on_crown ? ctx.crown_action(w, s) : ctx.strip_action(w);
    Matrix<K> power = m;
    for (std::size_t p = 1; p <= r; ++p) {
      if (p > 1) power = kron(power, m);
      out.components[p - 1] = add(out.components[p - 1], power, c);
    }
  }
  return out;
}

/// Position of a nonzero entry of a candidate-zero operator.
struct ZeroWitness {
  std::size_t row;
  std::size_t col;
};

/// Applies sum_k c_k M_k^{⊗p} to each basis tensor in turn and reports the
/// first column with a nonzero image, without forming the operator.
template <FieldScalar K>
std::optional<ZeroWitness> stream_zero_witness(const std::vector<std::pair<K, Matrix<K>>>& terms, std::size_t p) {
  if (terms.empty()) return std::nullopt;
  const std::size_t d = terms.front().second.cols();
  const std::size_t rows_d = terms.front().second.rows();
  const std::vector<std::size_t> dims(p, rows_d);
  const std::size_t cols = checked_power(d, p);
  std::vector<SparseVec<K>> factors(p);
  SparseVec<K> acc;
  for (std::size_t col = 0; col < cols; ++col) {
    const auto digits = tensor_digits(col, d, p);
    acc.clear();
    for (const auto& [c, m] : terms) {
      bool zero = false;
      for (std::size_t l = 0; l < p && !zero; ++l) {
        factors[l] = m.column(digits[l]);
        zero = factors[l].empty();
      }
      if (zero) continue;
      for (auto& e : tensor_product<K>(factors, dims)) acc.emplace_back(e.first, e.second * c);
    }
    canonicalize(acc);
    if (!acc.empty()) return ZeroWitness{acc.front().first, col};
  }
  return std::nullopt;
}

template <FieldScalar K>
std::optional<ZeroWitness> materialized_zero_witness(const std::vector<std::pair<K, Matrix<K>>>& terms,
                                                     std::size_t p) {
  if (terms.empty()) return std::nullopt;
  const auto& m0 = terms.front().second;
  Matrix<K> sum = Matrix<K>::zero(m0.field(), checked_power(m0.rows(), p), checked_power(m0.cols(), p));
  for (const auto& [c, m] : terms) sum = add(sum, kron_power(m, p), c);
  if (auto at = sum.first_nonzero()) return ZeroWitness{at->first, at->second};
  return std::nullopt;
}

struct LemmaResult {
  int n = 0;
  std::size_t p = 0;
  bool zero = false;
  bool streamed = false;
  std::size_t dimension = 0;
  std::optional<ZeroWitness> witness;
};

/// Whether b_n^p(Z_n) vanishes at the object <p>:
/// sum over S of (-1)^|S| Q(g_S)^{⊗p} = 0 on Q(B_n)^{⊗p}.
/// Above stream_above columns the operator is evaluated column by column.
template <FieldScalar K>
LemmaResult lemma_check(const CrownAlgebras<K>& ctx, std::size_t p, std::size_t max_dim = kDefaultMaxTensorDim,
                        std::size_t stream_above = std::size_t{1} << 14) {
  if (p == 0) throw Error("tensor power must be positive");
  const std::size_t d = ctx.strip()->dim();
  detail::require_tensor_cap(d, p, max_dim);
  std::vector<std::pair<K, Matrix<K>>> terms;
  const auto z = build_Z<K>(ctx.level(), ctx.field());
  for (const auto& [w, c] : z.terms()) terms.emplace_back(c, ctx.strip_action(w));
  LemmaResult out;
  out.n = ctx.level();
  out.p = p;
  out.dimension = checked_power(d, p);
  out.streamed = out.dimension > stream_above;
  out.witness = out.streamed ? stream_zero_witness(terms, p) : materialized_zero_witness(terms, p);
  out.zero = !out.witness.has_value();
  return out;
}

/// The steps of the annihilation argument, each checked directly.
struct LemmaTrace {
  int n = 0;
  std::size_t p = 0;
  std::size_t embedding_rank = 0;
  std::size_t expected_rank = 0;
  /// E_p is injective.
  bool injective = false;
  std::size_t words_checked = 0;
  /// E_p intertwines the actions on Q(B_n)^{⊗p} and on the sum of the S_{i_1..i_p}.
  bool intertwines = false;
  std::size_t tuples = 0;
  /// Tuples on which some g_i (i missing from the tuple) acts as the identity.
  std::size_t tuples_with_trivial_generator = 0;
  /// Tuples on which Z_n acts as zero, checked directly.
  std::size_t tuples_annihilated = 0;
  /// Every tuple misses some index.
  bool every_tuple_misses = false;

  bool holds() const {
    return injective && intertwines && every_tuple_misses && tuples_with_trivial_generator == tuples &&
           tuples_annihilated == tuples;
  }
};

template <FieldScalar K>
LemmaTrace lemma_proof_trace(const CrownAlgebras<K>& ctx, std::size_t p, std::size_t max_dim = kDefaultMaxTensorDim) {
  const CrownFamily& fam = ctx.family();
  const int n = fam.level();
  const FieldSpec f = ctx.field();
  LemmaTrace tr;
  tr.n = n;
  tr.p = p;

  std::vector<Matrix<K>> restrictions;
  for (int i = 1; i <= n; ++i) restrictions.push_back(q_hom_matrix<K>(fam.piece(i).inclusion, f));
  const Matrix<K> e1 = vstack<K>(restrictions);
  detail::require_tensor_cap(std::max(e1.rows(), e1.cols()), p, max_dim);
  const Matrix<K> ep = kron_power(e1, p);
  tr.embedding_rank = rank(ep);
  tr.expected_rank = checked_power(ctx.strip()->dim(), p);
  tr.injective = tr.embedding_rank == tr.expected_rank && ep.cols() == tr.expected_rank;

  auto piece_action = [&](const Word& w) {
    std::vector<Matrix<K>> blocks;
    for (int i = 1; i <= n; ++i) blocks.push_back(q_hom_matrix<K>(fam.act_on_piece(w, i), f));
    return block_diagonal<K>(blocks);
  };

  std::vector<Word> words;
  if (n <= 3) {
    words = wn_enumerate(n);
  } else {
    words.push_back(Word::identity(n));
    for (int i = 1; i <= n; ++i) words.push_back(gen_g(n, i)), words.push_back(gen_h(n, i));
  }
  tr.intertwines = true;
  for (const auto& w : words) {
    const auto lhs = compose(ep, kron_power(ctx.strip_action(w), p));
    const auto rhs = compose(kron_power(piece_action(w), p), ep);
    ++tr.words_checked;
    if (!(lhs == rhs)) {
      tr.intertwines = false;
      break;
    }
  }

  // Per-summand: S_{i_1..i_p} = Q(F_{i_1}) ⊗ ... ⊗ Q(F_{i_p}).
  const auto z = build_Z<K>(n, f);
  tr.every_tuple_misses = true;
  const std::size_t count = checked_power(static_cast<std::size_t>(n), p);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto tuple = tensor_digits(idx, static_cast<std::size_t>(n), p);
    ++tr.tuples;
    std::vector<bool> present(static_cast<std::size_t>(n), false);
    for (auto i : tuple) present[i] = true;
    int missing = 0;
    for (int i = 1; i <= n && !missing; ++i)
      if (!present[static_cast<std::size_t>(i - 1)]) missing = i;
    if (!missing) {
      tr.every_tuple_misses = false;
      continue;
    }
    auto factor_action = [&](const Word& w) {
      Matrix<K> acc = Matrix<K>::identity(f, 1);
      for (auto i : tuple) acc = kron(acc, q_hom_matrix<K>(fam.act_on_piece(w, static_cast<int>(i) + 1), f));
      return acc;
    };
    const Matrix<K> g_action = factor_action(gen_g(n, missing));
    if (g_action == Matrix<K>::identity(f, g_action.cols())) ++tr.tuples_with_trivial_generator;
    Matrix<K> z_action = Matrix<K>::zero(f, g_action.rows(), g_action.cols());
    for (const auto& [w, c] : z.terms()) z_action = add(z_action, factor_action(w), c);
    if (z_action.is_zero()) ++tr.tuples_annihilated;
  }
  return tr;
}

/// b_n^r(X)_p Q(f_n^t)^{⊗p} = Q(f_n^s)^{⊗p} c_n^r(X|_{s->t})_p for p = 1..r.
template <FieldScalar K>
bool transport_square_check(const CrownAlgebras<K>& ctx, std::size_t r, const MonoidAlgElem<K>& x, Sign s, Sign t,
                            std::size_t max_dim = kDefaultMaxTensorDim) {
  const auto b = cofunctor_eval(ctx, r, x, s, t, ActionTarget::Strip, max_dim);
  const auto c = cofunctor_eval(ctx, r, x, s, t, ActionTarget::Crown, max_dim);
  for (std::size_t p = 1; p <= r; ++p) {
    const auto lhs = compose(b.at(p), kron_power(ctx.projection(t), p));
    const auto rhs = compose(kron_power(ctx.projection(s), p), c.at(p));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

struct IsoReport {
  int n = 0;
  std::size_t r = 0;
  bool forward_natural = false;
  bool backward_natural = false;
  /// c(X|_{+->t}) o c(X|_{t->+}) is the identity at every object.
  bool identity_on_plus = false;
  bool identity_on_minus = false;
  /// Only evaluated for X = T_n: the composites equal 1 - c(Z_n) and c(Z_n) = 0.
  std::optional<bool> factored_identity;
  std::string witness;

  bool pass() const { return forward_natural && backward_natural && identity_on_plus && identity_on_minus; }
};

namespace detail {
template <FieldScalar K>
Sign image_of(const MonoidAlgElem<K>& x, Sign s) {
  if (x.is_zero()) throw HomsetViolation("zero element has no definite hom-set");
  const Sign t = act_on_U(x.terms().begin()->first, s);
  if (!homset_member(x, s, t)) throw HomsetViolation("element is not supported on a single hom-set");
  return t;
}

template <FieldScalar K>
std::optional<std::string> identity_witness(const NatTransData<K>& eta) {
  for (std::size_t p = 1; p <= eta.r; ++p) {
    const auto diff = eta.at(p) - Matrix<K>::identity(eta.at(p).field(), eta.at(p).cols());
    if (auto at = diff.first_nonzero())
      return "p=" + std::to_string(p) + " entry (" + std::to_string(at->first) + "," + std::to_string(at->second) + ")";
  }
  return std::nullopt;
}
}  // namespace detail

/// Checks that c_n^r(X|_{-->+}) and c_n^r(X|_{+->-}) are natural and mutually
/// inverse, r = n - 1 by default. With X = T_n this establishes
/// L^{n-1}(Q(C_n^+)) ≅ L^{n-1}(Q(C_n^-)).
template <FieldScalar K>
IsoReport iso_check(const CrownAlgebras<K>& ctx, const MonoidAlgElem<K>& x, std::optional<std::size_t> r = {},
                    std::size_t max_dim = kDefaultMaxTensorDim) {
  const int n = ctx.level();
  if (n < 2) throw Error("crowns need n >= 2");
  IsoReport rep;
  rep.n = n;
  rep.r = r.value_or(static_cast<std::size_t>(n - 1));

  const Sign t_plus = detail::image_of(x, Sign::Plus);
  const Sign t_minus = detail::image_of(x, Sign::Minus);
  // forward: c(X|_{u->+}) : L(C^+) -> L(C^u) where u.X = +; backward: c(X|_{+->t(+)}).
  const Sign into_plus = t_minus == Sign::Plus ? Sign::Minus : Sign::Plus;
  if (detail::image_of(x, into_plus) != Sign::Plus) throw HomsetViolation("no hom-set of the element ends at +");
  const auto forward = cofunctor_eval(ctx, rep.r, x, into_plus, Sign::Plus, ActionTarget::Crown, max_dim);
  const auto backward = cofunctor_eval(ctx, rep.r, x, Sign::Plus, t_plus, ActionTarget::Crown, max_dim);
  rep.forward_natural = naturality_check(forward, max_dim);
  rep.backward_natural = naturality_check(backward, max_dim);

  // c(X|_{s->t}) o c(X|_{t->s}), an endomorphism of L(C^s).
  const auto round_trip = [&](Sign s, Sign t) {
    if (detail::image_of(x, t) != s) throw HomsetViolation("element does not return to its start");
    const auto a = cofunctor_eval(ctx, rep.r, x, s, t, ActionTarget::Crown, max_dim);
    const auto b = cofunctor_eval(ctx, rep.r, x, t, s, ActionTarget::Crown, max_dim);
    return compose(a, b);
  };
  const auto round_plus = round_trip(Sign::Plus, t_plus);
  const auto round_minus = round_trip(Sign::Minus, t_minus);
  const auto wp = detail::identity_witness(round_plus);
  const auto wm = detail::identity_witness(round_minus);
  rep.identity_on_plus = !wp;
  rep.identity_on_minus = !wm;
  if (wp) rep.witness = "+: " + *wp;
  else if (wm) rep.witness = "-: " + *wm;

  if (x == build_T<K>(n, ctx.field())) {
    const auto z = build_Z<K>(n, ctx.field());
    bool factored = true;
    for (Sign s : kSigns) {
      const auto cz = cofunctor_eval(ctx, rep.r, z, s, s, ActionTarget::Crown, max_dim);
      const auto& round = s == Sign::Plus ? round_plus : round_minus;
      for (std::size_t p = 1; p <= rep.r; ++p) {
        const auto expected = Matrix<K>::identity(ctx.field(), cz.at(p).cols()) - cz.at(p);
        factored = factored && cz.at(p).is_zero() && round.at(p) == expected;
      }
    }
    rep.factored_identity = factored;
  }
  return rep;
}

template <FieldScalar K>
IsoReport iso_check(const CrownAlgebras<K>& ctx, std::optional<std::size_t> r = {},
                    std::size_t max_dim = kDefaultMaxTensorDim) {
  return iso_check(ctx, build_T<K>(ctx.level(), ctx.field()), r, max_dim);
}

}  // namespace crown
