#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "crown/errors.hpp"

namespace crown {

/// The ground field: either the rationals or a prime field F_p.
struct FieldSpec {
  enum class Kind { Rationals, PrimeField };

  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {}; }

  static FieldSpec prime(std::uint32_t p) {
    if (!is_prime(p)) throw Error("field modulus " + std::to_string(p) + " is not prime");
    return {Kind::PrimeField, p};
  }

  bool is_rational() const noexcept { return kind == Kind::Rationals; }

  /// Textual form used by the CLI and JSON: "rational" or "fp:<p>".
  std::string name() const { return is_rational() ? "rational" : "fp:" + std::to_string(p); }

  static FieldSpec parse(std::string_view text) {
    if (text == "rational" || text == "Q") return rationals();
    if (text.starts_with("fp:")) {
      const std::string digits(text.substr(3));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
          digits.size() > 9)
        throw Error("bad field modulus '" + digits + "'");
      return prime(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    throw Error("unknown field '" + std::string(text) + "' (expected rational or fp:<p>)");
  }

  static bool is_prime(std::uint32_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  bool operator==(const FieldSpec&) const = default;
};

/// Exact rational number. GMP keeps it reduced with a positive denominator.
class Rational {
 public:
  Rational() = default;
  explicit Rational(long v) : v_(v) {}
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    v_.canonicalize();
  }

  static Rational from_int(long v, const FieldSpec& f) {
    if (!f.is_rational()) throw FieldMismatch("rational scalar requested for " + f.name());
    return Rational(v);
  }

  FieldSpec field() const noexcept { return FieldSpec::rationals(); }
  bool is_zero() const noexcept { return sgn(v_) == 0; }
  const mpq_class& value() const noexcept { return v_; }
  std::string to_string() const { return v_.get_str(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }

 private:
  mpq_class v_{0};
};

/// Element of F_p. The modulus travels with the value.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t v, std::uint32_t p) : v_(static_cast<std::uint32_t>(v % p)), p_(p) {}

  static Fp from_int(long v, const FieldSpec& f) {
    if (f.is_rational()) throw FieldMismatch("prime-field scalar requested for rational field");
    const long m = static_cast<long>(f.p);
    long r = v % m;
    if (r < 0) r += m;
    return Fp(static_cast<std::uint64_t>(r), f.p);
  }

  FieldSpec field() const noexcept { return {FieldSpec::Kind::PrimeField, p_}; }
  bool is_zero() const noexcept { return v_ == 0; }
  std::uint32_t value() const noexcept { return v_; }
  std::uint32_t modulus() const noexcept { return p_; }
  std::string to_string() const { return std::to_string(v_); }

  friend Fp operator+(Fp a, Fp b) { return Fp(std::uint64_t{a.v_} + b.v_, a.p_); }
  friend Fp operator-(Fp a, Fp b) { return Fp(std::uint64_t{a.v_} + a.p_ - b.v_, a.p_); }
  friend Fp operator*(Fp a, Fp b) { return Fp(std::uint64_t{a.v_} * b.v_, a.p_); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return Fp(std::uint64_t{p_} - v_, p_); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.p_ == b.p_; }

  Fp pow(std::uint64_t e) const {
    Fp base = *this, acc(1, p_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero");
    return pow(p_ - 2);
  }

 private:
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 2;
};

/// Exact field scalar usable by every kernel in the library.
template <class K>
concept FieldScalar = std::regular<K> && requires(const K a, const K b, long n, const FieldSpec f) {
  { K::from_int(n, f) } -> std::same_as<K>;
  { a.field() } -> std::same_as<FieldSpec>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.to_string() } -> std::same_as<std::string>;
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
};

static_assert(FieldScalar<Rational>);
static_assert(FieldScalar<Fp>);

}  // namespace crown
