#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "crown/errors.hpp"
#include "crown/scalar.hpp"

namespace crown {

/// An element of V = {1, -1, 0} under multiplication.
enum class TriSign : std::int8_t { Plus = 1, Minus = -1, Zero = 0 };

/// An element of U = {1, -1}.
enum class Sign : std::int8_t { Plus = 1, Minus = -1 };

constexpr TriSign operator*(TriSign a, TriSign b) noexcept {
  return static_cast<TriSign>(static_cast<std::int8_t>(a) * static_cast<std::int8_t>(b));
}

constexpr TriSign to_tri(Sign s) noexcept { return static_cast<TriSign>(s); }
constexpr Sign operator-(Sign s) noexcept { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
constexpr Sign operator*(Sign a, Sign b) noexcept { return a == b ? Sign::Plus : Sign::Minus; }

constexpr char to_char(TriSign s) noexcept {
  return s == TriSign::Plus ? '+' : s == TriSign::Minus ? '-' : '0';
}
constexpr char to_char(Sign s) noexcept { return to_char(to_tri(s)); }

/// Position of a sign in the fixed order + < - < 0.
constexpr int order_rank(TriSign s) noexcept {
  return s == TriSign::Plus ? 0 : s == TriSign::Minus ? 1 : 2;
}

inline constexpr TriSign kTriSigns[] = {TriSign::Plus, TriSign::Minus, TriSign::Zero};
inline constexpr Sign kSigns[] = {Sign::Plus, Sign::Minus};

/// Element of the monoid W_n: a word w_1 ... w_{2n+1} over V with nonzero
/// odd positions and adjacent products in {1, 0}.
class Word {
 public:
  /// Checks both membership conditions. Throws RejectedWord at the first
  /// violation, scanning positions left to right.
  static Word validate(std::vector<TriSign> coords) {
    if (coords.size() < 3 || coords.size() % 2 == 0)
      throw RejectedWord(0, "length must be odd and at least 3");
    for (std::size_t j = 0; j < coords.size(); ++j) {
      if (j % 2 == 0 && coords[j] == TriSign::Zero) throw RejectedWord(j + 1, "odd position is 0");
      if (j + 1 < coords.size() && coords[j] * coords[j + 1] == TriSign::Minus)
        throw RejectedWord(j + 1, "adjacent product is -1");
    }
    return Word(std::move(coords));
  }

  static Word parse(std::string_view text) {
    std::vector<TriSign> coords;
    for (char c : text) {
      switch (c) {
        case '+': coords.push_back(TriSign::Plus); break;
        case '-': coords.push_back(TriSign::Minus); break;
        case '0': coords.push_back(TriSign::Zero); break;
        default: throw RejectedWord(coords.size() + 1, std::string("unknown symbol '") + c + "'");
      }
    }
    return validate(std::move(coords));
  }

  static Word identity(int n) { return Word(std::vector<TriSign>(2 * n + 1, TriSign::Plus)); }

  int level() const noexcept { return static_cast<int>(coords_.size() / 2); }
  std::size_t size() const noexcept { return coords_.size(); }
  const std::vector<TriSign>& coords() const noexcept { return coords_; }

  /// 1-based coordinate w_j.
  TriSign operator[](std::size_t j) const { return coords_.at(j - 1); }

  std::string to_string() const {
    std::string s;
    for (auto c : coords_) s.push_back(to_char(c));
    return s;
  }

  friend Word operator*(const Word& a, const Word& b) {
    if (a.size() != b.size()) throw LevelMismatch("word levels differ");
    std::vector<TriSign> c(a.size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.coords_[j] * b.coords_[j];
    return Word(std::move(c));
  }

  friend bool operator==(const Word&, const Word&) = default;

  /// Lexicographic with + < - < 0.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (auto c = order_rank(a.coords_[j]) <=> order_rank(b.coords_[j]); c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  explicit Word(std::vector<TriSign> coords) : coords_(std::move(coords)) {}
  std::vector<TriSign> coords_;
};

/// Left action of W_n on U: w . s = w_1 w_{2n+1} s.
inline Sign act_on_U(const Word& w, Sign s) {
  const TriSign r = w[1] * w[w.size()] * to_tri(s);
  return r == TriSign::Plus ? Sign::Plus : Sign::Minus;
}

/// All elements of W_n in increasing order. Count is 2 * 3^n.
inline std::vector<Word> wn_enumerate(int n, int cap = 8) {
  if (n < 1) throw Error("level must be at least 1");
  if (n > cap) throw CapExceeded("W_n enumeration capped at n = " + std::to_string(cap));
  std::vector<Word> out;
  std::vector<TriSign> cur;
  const std::size_t len = 2 * static_cast<std::size_t>(n) + 1;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == len) {
      out.push_back(Word::validate(cur));
      return;
    }
    for (TriSign s : kTriSigns) {
      if (cur.size() % 2 == 0 && s == TriSign::Zero) continue;
      if (!cur.empty() && cur.back() * s == TriSign::Minus) continue;
      cur.push_back(s);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

/// g_i: all +, with 0 at position 2i.
inline Word gen_g(int n, int i) {
  if (i < 1 || i > n) throw Error("generator index out of range");
  std::vector<TriSign> c(2 * n + 1, TriSign::Plus);
  c[2 * i - 1] = TriSign::Zero;
  return Word::validate(std::move(c));
}

/// h_i: - at positions 1..2i-1, 0 at 2i, + afterwards.
inline Word gen_h(int n, int i) {
  if (i < 1 || i > n) throw Error("generator index out of range");
  std::vector<TriSign> c(2 * n + 1, TriSign::Plus);
  for (int j = 0; j < 2 * i - 1; ++j) c[j] = TriSign::Minus;
  c[2 * i - 1] = TriSign::Zero;
  return Word::validate(std::move(c));
}

/// Element of the monoid algebra k[W_n]: a finite formal sum of words.
template <FieldScalar K>
class MonoidAlgElem {
 public:
  using Terms = std::map<Word, K>;

  MonoidAlgElem(int n, FieldSpec field) : n_(n), field_(field) {}

  static MonoidAlgElem zero(int n, FieldSpec f) { return MonoidAlgElem(n, f); }
  static MonoidAlgElem one(int n, FieldSpec f) { return basis(Word::identity(n), f); }

  /// The element [w].
  static MonoidAlgElem basis(const Word& w, FieldSpec f) {
    MonoidAlgElem e(w.level(), f);
    e.terms_.emplace(w, K::from_int(1, f));
    return e;
  }

  int level() const noexcept { return n_; }
  const FieldSpec& field() const noexcept { return field_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  K coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? K::from_int(0, field_) : it->second;
  }

  void add_term(const Word& w, const K& c) {
    if (w.level() != n_) throw LevelMismatch("word level differs from element level");
    if (c.field() != field_) throw FieldMismatch("coefficient field differs");
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  friend MonoidAlgElem operator+(const MonoidAlgElem& a, const MonoidAlgElem& b) {
    a.require_compatible(b);
    MonoidAlgElem out = a;
    for (const auto& [w, c] : b.terms_) out.add_term(w, c);
    return out;
  }

  friend MonoidAlgElem operator-(const MonoidAlgElem& a, const MonoidAlgElem& b) {
    return a + b.scaled(K::from_int(-1, b.field_));
  }

  MonoidAlgElem scaled(const K& c) const {
    MonoidAlgElem out(n_, field_);
    if (c.is_zero()) return out;
    for (const auto& [w, x] : terms_) out.terms_.emplace(w, x * c);
    return out;
  }

  /// Convolution product extending [w][w'] = [ww'].
  friend MonoidAlgElem operator*(const MonoidAlgElem& a, const MonoidAlgElem& b) {
    a.require_compatible(b);
    MonoidAlgElem out(a.n_, a.field_);
    for (const auto& [w, x] : a.terms_)
      for (const auto& [v, y] : b.terms_) out.add_term(w * v, x * y);
    return out;
  }

  friend bool operator==(const MonoidAlgElem& a, const MonoidAlgElem& b) {
    return a.n_ == b.n_ && a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  void require_compatible(const MonoidAlgElem& o) const {
    if (n_ != o.n_) throw LevelMismatch("monoid algebra levels differ");
    if (field_ != o.field_) throw FieldMismatch("monoid algebra fields differ");
  }

  int n_;
  FieldSpec field_;
  Terms terms_;
};

template <FieldScalar K>
MonoidAlgElem<K> one_minus(const Word& w, FieldSpec f) {
  return MonoidAlgElem<K>::one(w.level(), f) - MonoidAlgElem<K>::basis(w, f);
}

/// T_n = sum_i (1 - [g_1]) ... (1 - [g_{i-1}]) [h_i].
template <FieldScalar K>
MonoidAlgElem<K> build_T(int n, FieldSpec f) {
  if (n < 1) throw Error("level must be at least 1");
  MonoidAlgElem<K> sum(n, f);
  MonoidAlgElem<K> prefix = MonoidAlgElem<K>::one(n, f);
  for (int i = 1; i <= n; ++i) {
    sum = sum + prefix * MonoidAlgElem<K>::basis(gen_h(n, i), f);
    prefix = prefix * one_minus<K>(gen_g(n, i), f);
  }
  return sum;
}

/// Z_n = (1 - [g_1]) ... (1 - [g_n]).
template <FieldScalar K>
MonoidAlgElem<K> build_Z(int n, FieldSpec f) {
  if (n < 1) throw Error("level must be at least 1");
  MonoidAlgElem<K> prod = MonoidAlgElem<K>::one(n, f);
  for (int i = 1; i <= n; ++i) prod = prod * one_minus<K>(gen_g(n, i), f);
  return prod;
}

/// T_n^2 + Z_n == 1 in k[W_n].
template <FieldScalar K>
bool check_T_squared(int n, FieldSpec f) {
  const auto t = build_T<K>(n, f);
  return t * t + build_Z<K>(n, f) == MonoidAlgElem<K>::one(n, f);
}

/// True iff every word in the support of x carries s to t.
template <FieldScalar K>
bool homset_member(const MonoidAlgElem<K>& x, Sign s, Sign t) {
  return std::all_of(x.terms().begin(), x.terms().end(),
                     [&](const auto& term) { return act_on_U(term.first, s) == t; });
}

}  // namespace crown
