#pragma once

#include <concepts>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "homlts/errors.hpp"

namespace homlts {

/// Which field the scalars live in: the rationals, or GF(p) with p > 3 prime.
///
/// Characteristics 2 and 3 are rejected because alternation and three-term
/// cyclic sums degenerate there.
class FieldSpec {
 public:
  enum class Kind { rationals, prime };

  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec{}; }

  static FieldSpec prime_field(std::uint64_t p) {
    if (p <= 3) throw precondition_error("GF(p) requires p > 3, got " + std::to_string(p));
    if (p >= (std::uint64_t{1} << 31))
      throw precondition_error("GF(p) requires p < 2^31, got " + std::to_string(p));
    if (!is_prime(p)) throw precondition_error(std::to_string(p) + " is not prime");
    FieldSpec f;
    f.kind_ = Kind::prime;
    f.p_ = p;
    return f;
  }

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::rationals; }
  std::uint64_t characteristic() const { return p_; }

  std::string name() const { return is_rational() ? "Q" : "GF(" + std::to_string(p_) + ")"; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
      if (n % q == 0) return false;
    return true;
  }

 private:
  Kind kind_ = Kind::rationals;
  std::uint64_t p_ = 0;
};

/// How strictly scalar text is validated. File formats demand the canonical
/// spelling; command-line values may be any integer or fraction.
enum class ScalarSyntax { canonical, lenient };

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// Decimal integer without sign; canonical means no superfluous leading zero.
inline bool canonical_natural(std::string_view s) {
  return all_digits(s) && (s.size() == 1 || s[0] != '0');
}

struct Fraction {
  mpz_class num;
  mpz_class den{1};
};

inline Fraction parse_fraction(std::string_view text, ScalarSyntax syntax) {
  const auto fail = [&](const char* why) {
    return parse_error("invalid scalar \"" + std::string(text) + "\": " + why);
  };
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || (s[0] == '+' && syntax == ScalarSyntax::lenient))) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  const std::string_view num = s.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
    throw fail("expected an integer or p/q");
  Fraction out;
  out.num = mpz_class(std::string(num));
  if (slash != std::string_view::npos) out.den = mpz_class(std::string(den));
  if (out.den == 0) throw fail("zero denominator");
  if (syntax == ScalarSyntax::canonical) {
    if (!canonical_natural(num) || (slash != std::string_view::npos && !canonical_natural(den)))
      throw fail("leading zeros are not canonical");
    if (negative && out.num == 0) throw fail("negative zero is not canonical");
    if (slash != std::string_view::npos) {
      if (out.den == 1) throw fail("denominator 1 is not canonical");
      if (gcd(out.num, out.den) != 1) throw fail("not in lowest terms");
    }
  }
  if (negative) out.num = -out.num;
  return out;
}

}  // namespace detail

/// Exact rational number in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  explicit Rational(long n) : q_(n) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Rational from_int(const FieldSpec& field, long n) {
    require_field(field);
    return Rational(n);
  }

  static Rational parse(std::string_view text, const FieldSpec& field,
                        ScalarSyntax syntax = ScalarSyntax::canonical) {
    require_field(field);
    auto f = detail::parse_fraction(text, syntax);
    return Rational(mpq_class(f.num, f.den));
  }

  FieldSpec field() const { return FieldSpec::rationals(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }

  Rational inverse() const {
    if (is_zero()) throw precondition_error("division by zero");
    return Rational(mpq_class(1) / q_);
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw precondition_error("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  /// Adds a*b in place; the hot path of every elimination loop.
  void add_product(const Rational& a, const Rational& b) { q_ += a.q_ * b.q_; }

  std::string to_string() const { return q_.get_str(); }
  const mpq_class& value() const { return q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static void require_field(const FieldSpec& field) {
    if (!field.is_rational()) throw field_mismatch("rational scalar requested for " + field.name());
  }

  mpq_class q_;
};

/// Residue modulo a runtime prime p, stored in [0, p).
///
/// A default-constructed value is an unbound zero: it combines with residues
/// of any modulus. Combining two bound residues of different moduli throws
/// field_mismatch.
class ModP {
 public:
  ModP() = default;

  static ModP from_int(const FieldSpec& field, long n) {
    require_field(field);
    const auto p = static_cast<std::int64_t>(field.characteristic());
    std::int64_t r = static_cast<std::int64_t>(n) % p;
    if (r < 0) r += p;
    return ModP(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(p));
  }

  static ModP parse(std::string_view text, const FieldSpec& field,
                    ScalarSyntax syntax = ScalarSyntax::canonical) {
    require_field(field);
    const auto p = field.characteristic();
    if (syntax == ScalarSyntax::canonical) {
      if (!detail::canonical_natural(text))
        throw parse_error("invalid residue \"" + std::string(text) + "\": expected a decimal in [0," +
                          std::to_string(p) + ")");
      const mpz_class v(std::string{text});
      if (v >= mpz_class(static_cast<unsigned long>(p)))
        throw parse_error("residue " + std::string(text) + " out of range [0," + std::to_string(p) + ")");
      return ModP(static_cast<std::uint32_t>(v.get_ui()), static_cast<std::uint32_t>(p));
    }
    auto f = detail::parse_fraction(text, syntax);
    const mpz_class pz(static_cast<unsigned long>(p));
    mpz_class num = f.num % pz;
    if (num < 0) num += pz;
    mpz_class den = f.den % pz;
    if (den == 0) throw parse_error("denominator of \"" + std::string(text) + "\" vanishes mod p");
    const ModP a(static_cast<std::uint32_t>(num.get_ui()), static_cast<std::uint32_t>(p));
    const ModP b(static_cast<std::uint32_t>(den.get_ui()), static_cast<std::uint32_t>(p));
    return a / b;
  }

  FieldSpec field() const {
    if (p_ == 0) throw precondition_error("unbound residue has no field");
    return FieldSpec::prime_field(p_);
  }

  std::uint32_t residue() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  ModP inverse() const {
    if (v_ == 0) throw precondition_error("division by zero");
    // Fermat: v^(p-2).
    std::uint64_t base = v_, result = 1, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return ModP(static_cast<std::uint32_t>(result), p_);
  }

  ModP& operator+=(const ModP& o) {
    bind(o);
    std::uint32_t s = v_ + o.v_;
    if (s >= p_) s -= p_;
    v_ = s;
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    bind(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    bind(o);
    v_ = p_ == 0 ? 0 : static_cast<std::uint32_t>(std::uint64_t{v_} * o.v_ % p_);
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend ModP operator-(const ModP& a) { return ModP(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_); }
  friend bool operator==(const ModP& a, const ModP& b) {
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_) throw field_mismatch();
    return a.v_ == b.v_;
  }

  void add_product(const ModP& a, const ModP& b) { *this += a * b; }

  std::string to_string() const { return std::to_string(v_); }

  friend std::ostream& operator<<(std::ostream& os, const ModP& r) { return os << r.v_; }

 private:
  ModP(std::uint32_t v, std::uint32_t p) : v_(v), p_(p) {}

  static void require_field(const FieldSpec& field) {
    if (field.is_rational()) throw field_mismatch("residue requested for Q");
  }

  void bind(const ModP& o) {
    if (o.p_ == 0) return;
    if (p_ == 0) {
      p_ = o.p_;
    } else if (p_ != o.p_) {
      throw field_mismatch("field mismatch: GF(" + std::to_string(p_) + ") vs GF(" +
                           std::to_string(o.p_) + ")");
    }
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

/// Exact field element usable by every algorithm in the library.
template <class K>
concept FieldScalar = std::regular<K> && requires(K a, const K& b, const FieldSpec& f, long n,
                                                  std::string_view s) {
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.inverse() } -> std::same_as<K>;
  { a.to_string() } -> std::same_as<std::string>;
  { a.add_product(b, b) };
  { K::from_int(f, n) } -> std::same_as<K>;
  { K::parse(s, f) } -> std::same_as<K>;
};

/// Scalar type tag for the field kind, for runtime dispatch.
template <FieldScalar K>
inline bool scalar_matches(const FieldSpec& f) {
  if constexpr (std::same_as<K, Rational>) return f.is_rational();
  else return !f.is_rational();
}

/// Portable deterministic generator: mt19937_64 is fully specified by the
/// standard; distributions are not, so draws are reduced by hand.
using Rng = std::mt19937_64;

inline std::uint64_t draw_below(Rng& rng, std::uint64_t bound) { return rng() % bound; }

/// Uniform residue over GF(p); over Q a small integer in [-bound, bound].
template <FieldScalar K>
K random_scalar(const FieldSpec& field, Rng& rng, long bound = 5) {
  if (field.is_rational()) {
    const auto span = static_cast<std::uint64_t>(2 * bound + 1);
    return K::from_int(field, static_cast<long>(draw_below(rng, span)) - bound);
  }
  return K::from_int(field, static_cast<long>(draw_below(rng, field.characteristic())));
}

}  // namespace homlts
