#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fzx/gf2m.hpp"
#include "fzx/rng.hpp"

namespace fzx::codec {

using gf2m::Element;
using gf2m::Field;
using gf2m::Poly;

/// Binary BCH code of length n = 2^m - 1 with odd designed distance delta.
/// Positions are the nonzero field elements.
class BchCode {
 public:
  BchCode(Field field, unsigned delta);
  static BchCode with_capacity(Field field, unsigned t) { return BchCode(std::move(field), 2 * t + 1); }

  const Field& field() const noexcept { return field_; }
  unsigned delta() const noexcept { return delta_; }
  unsigned t() const noexcept { return (delta_ - 1) / 2; }
  std::uint64_t length() const noexcept { return field_.nonzero_count(); }

 private:
  Field field_;
  unsigned delta_;
};

/// Odd power sums s_1, s_3, ..., s_{2t-1}; the even ones are squares.
struct Syndrome {
  std::vector<Element> odd_sums;

  bool is_zero() const noexcept {
    for (auto s : odd_sums) {
      if (s != 0) return false;
    }
    return true;
  }
  Syndrome& operator^=(const Syndrome& other);
  friend Syndrome operator^(Syndrome a, const Syndrome& b) { return a ^= b; }
  friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

/// Sorted nonzero positions of a binary word.
using SupportSet = std::vector<Element>;

/// s_{2j+1} = sum over x in support of x^(2j+1). O(|support| * t) multiplies.
/// Throws BadParameter on a zero or out-of-range position.
Syndrome syndrome_from_support(const BchCode& code, std::span<const Element> support);

/// (s_1, s_2, ..., s_{delta-1}) with s_{2i} = s_i^2.
std::vector<Element> expand_syndrome(const BchCode& code, const Syndrome& syn);

/// The unique support of weight <= t with this syndrome. Solves the key
/// equation with the partial extended Euclidean algorithm, finds the roots of
/// the locator, inverts them, then re-encodes to verify. Never touches all n
/// positions. Throws DecodeFailure if any step shows the weight exceeds t.
SupportSet support_from_syndrome(const BchCode& code, const Syndrome& syn, Rng& rng);
/// Same, with a fixed internal seed for the root splitter. The output does
/// not depend on the seed.
SupportSet support_from_syndrome(const BchCode& code, const Syndrome& syn);

/// t elements, each big-endian ceil(m/8) bytes, s_1 first.
std::vector<std::uint8_t> serialize_syndrome(const Field& field, const Syndrome& syn);
Syndrome parse_syndrome(const Field& field, unsigned t, std::span<const std::uint8_t> bytes);

/// Evaluation point and value.
using RsPoint = std::pair<Element, Element>;

/// Berlekamp-Welch: the unique polynomial of degree <= deg_bound agreeing
/// with at least points.size() - max_wrong of the points. deg_bound = -1
/// asks for the zero polynomial. Requires
/// points.size() - max_wrong > deg_bound + max_wrong (BadParameter otherwise)
/// and distinct x (BadParameter). Throws DecodeFailure when no such
/// polynomial exists.
Poly rs_decode(const Field& field, std::span<const RsPoint> points, int deg_bound, unsigned max_wrong);

/// Binary [n, k] code given by a parity-check matrix, for n <= 24. Words are
/// bitmasks with bit i at position i; syndrome bit j is row j dotted with
/// the word.
class SmallLinearCode {
 public:
  SmallLinearCode(unsigned n, std::vector<std::uint32_t> parity_rows);

  /// [7,4,3] Hamming code whose column i is the binary expansion of i + 1.
  static SmallLinearCode hamming7();

  unsigned n() const noexcept { return n_; }
  unsigned k() const noexcept { return n_ - static_cast<unsigned>(rows_.size()); }
  unsigned redundancy() const noexcept { return static_cast<unsigned>(rows_.size()); }
  const std::vector<std::uint32_t>& parity_rows() const noexcept { return rows_; }
  /// Row basis of the code, k entries.
  const std::vector<std::uint32_t>& generator_rows() const noexcept { return gen_; }
  unsigned min_distance() const noexcept { return dmin_; }
  unsigned t() const noexcept { return dmin_ == 0 ? 0 : (dmin_ - 1) / 2; }

  /// Codeword for a k-bit message: XOR of the generator rows it selects.
  std::uint32_t encode(std::uint32_t message) const noexcept;

 private:
  unsigned n_;
  std::vector<std::uint32_t> rows_;
  std::vector<std::uint32_t> gen_;
  unsigned dmin_ = 0;
};

std::uint32_t small_syndrome(const SmallLinearCode& code, std::uint32_t word);
/// Minimum-weight word with syndrome s; ties go to the numerically smallest.
std::uint32_t small_decode_brute(const SmallLinearCode& code, std::uint32_t syndrome);

}  // namespace fzx::codec
