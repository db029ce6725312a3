#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fzx/rng.hpp"

namespace fzx::gf2m {

/// Field element of GF(2^m): bit i is the coefficient of x^i.
using Element = std::uint32_t;

inline constexpr unsigned kMinDegree = 3;
inline constexpr unsigned kMaxDegree = 32;

/// Pinned minimal-weight primitive polynomial for each 3 <= m <= 32, as a
/// bitmask including the x^m term.
std::uint64_t default_modulus(unsigned m);

/// True iff `modulus` has degree m and x generates the multiplicative group
/// of GF(2)[x]/(modulus). Checked by factoring 2^m - 1.
bool is_primitive(unsigned m, std::uint64_t modulus);

/// GF(2^m) for 3 <= m <= 32. Immutable and cheap to copy; small fields carry
/// shared log/antilog tables.
class Field {
 public:
  explicit Field(unsigned m);
  /// Throws BadParameter unless `modulus` is a primitive polynomial of degree m.
  Field(unsigned m, std::uint64_t modulus);

  unsigned degree() const noexcept { return m_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  /// 2^m.
  std::uint64_t size() const noexcept { return std::uint64_t{1} << m_; }
  /// 2^m - 1, the number of nonzero elements.
  std::uint64_t nonzero_count() const noexcept { return size() - 1; }
  bool contains(std::uint64_t v) const noexcept { return v < size(); }

  static Element add(Element a, Element b) noexcept { return a ^ b; }
  Element mul(Element a, Element b) const noexcept;
  Element sqr(Element a) const noexcept { return mul(a, a); }
  /// Throws ArithmeticError for a = 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  /// 0^0 = 1.
  Element pow(Element a, std::uint64_t e) const noexcept;

  /// Big-endian, ceil(m/8) bytes.
  std::size_t element_bytes() const noexcept { return (m_ + 7) / 8; }
  void write(Element a, std::vector<std::uint8_t>& out) const;
  /// Throws MalformedInput on wrong length or a value >= 2^m.
  Element read(std::span<const std::uint8_t> bytes) const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.m_ == b.m_ && a.modulus_ == b.modulus_;
  }

 private:
  struct Tables;

  Element clmul_reduce(Element a, Element b) const noexcept;

  unsigned m_;
  std::uint64_t modulus_;
  std::shared_ptr<const Tables> tables_;
};

/// Polynomial over GF(2^m), lowest degree first, never carrying a zero
/// leading coefficient.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Element> coeffs) : c_(std::move(coeffs)) { normalize(); }
  Poly(std::initializer_list<Element> coeffs) : c_(coeffs) { normalize(); }

  static Poly monomial(Element coeff, std::size_t degree);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  Element coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  Element lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  std::span<const Element> coeffs() const noexcept { return c_; }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Element> c_;
};

Poly poly_add(const Poly& f, const Poly& g);
Poly poly_mul(const Field& field, const Poly& f, const Poly& g);
Poly poly_scale(const Field& field, const Poly& f, Element c);
/// (quotient, remainder). Throws ArithmeticError when g is zero.
std::pair<Poly, Poly> poly_divmod(const Field& field, const Poly& f, const Poly& g);
Poly poly_mod(const Field& field, const Poly& f, const Poly& g);
Element poly_eval(const Field& field, const Poly& f, Element x);
Poly poly_monic(const Field& field, const Poly& f);
/// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const Field& field, Poly a, Poly b);
/// prod (z - r) over the given roots.
Poly poly_from_roots(const Field& field, std::span<const Element> roots);

/// All roots of f, sorted, when f has deg(f) distinct roots in the field;
/// std::nullopt when f is not squarefree or does not split. Equal-degree
/// splitting uses trace maps with constants drawn from `rng`. Throws
/// ArithmeticError for the zero polynomial and InternalFailure when 64
/// splitting attempts in a row fail.
std::optional<std::vector<Element>> poly_roots(const Field& field, const Poly& f, Rng& rng);

/// Exhaustive scan; every element x with f(x) = 0, sorted. Requires m <= 16.
std::vector<Element> brute_roots(const Field& field, const Poly& f);

}  // namespace fzx::gf2m
