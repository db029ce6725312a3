#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fzx/bitvec.hpp"
#include "fzx/codec.hpp"
#include "fzx/gf2m.hpp"
#include "fzx/rng.hpp"

namespace fzx::setdiff {

using gf2m::Element;
using gf2m::Field;

/// Subset of GF(2^m)*: sorted, no duplicates, no zero.
class ElementSet {
 public:
  /// Sorts; throws BadParameter on duplicates, zero, or elements outside the field.
  ElementSet(Field field, std::vector<Element> elems);
  explicit ElementSet(Field field) : field_(std::move(field)) {}

  const Field& field() const noexcept { return field_; }
  const std::vector<Element>& elems() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool contains(Element x) const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  Field field_;
  std::vector<Element> elems_;
};

ElementSet symmetric_difference(const ElementSet& a, const ElementSet& b);
/// a \ b.
ElementSet set_minus(const ElementSet& a, const ElementSet& b);
/// s distinct elements drawn uniformly from GF(2^m)*.
ElementSet random_set(const Field& field, std::size_t s, Rng& rng);

// ---------------------------------------------------------------------------
// PinSketch: the BCH syndrome of the characteristic vector.

struct PinSketchData {
  unsigned t = 0;
  codec::Syndrome syn;
  friend bool operator==(const PinSketchData&, const PinSketchData&) = default;
};

PinSketchData pinsketch_ss(const ElementSet& w, unsigned t);
/// w' xor the decoded difference; sizes of w and w' may differ.
ElementSet pinsketch_rec(const ElementSet& w_prime, const PinSketchData& sk, Rng& rng);
ElementSet pinsketch_rec(const ElementSet& w_prime, const PinSketchData& sk);

// ---------------------------------------------------------------------------
// Improved Juels-Sudan: the top t coefficients of prod (z - x).

/// Odd capacities are rounded down; same-size sets are an even distance apart.
unsigned ijs_effective_t(unsigned t) noexcept;

struct IjsSketchData {
  unsigned s = 0;
  unsigned t = 0;                    // even
  std::vector<Element> top_coeffs;   // a_{s-1}, a_{s-2}, ..., a_{s-t}
  friend bool operator==(const IjsSketchData&, const IjsSketchData&) = default;
};

IjsSketchData ijs_ss(const ElementSet& w, unsigned t);
ElementSet ijs_rec(const ElementSet& w_prime, const IjsSketchData& sk, Rng& rng);
ElementSet ijs_rec(const ElementSet& w_prime, const IjsSketchData& sk);

// ---------------------------------------------------------------------------
// Original Juels-Sudan: s points on a random polynomial of degree < s - t,
// hidden among r - s chaff points off it.

struct OrigJsSketchData {
  unsigned s = 0;
  unsigned r = 0;
  unsigned t = 0;
  std::vector<std::pair<Element, Element>> pairs;  // sorted by x
  friend bool operator==(const OrigJsSketchData&, const OrigJsSketchData&) = default;
};

OrigJsSketchData origjs_ss(const ElementSet& w, unsigned r, unsigned t, Rng& rng);
ElementSet origjs_rec(const ElementSet& w_prime, const OrigJsSketchData& sk);

// ---------------------------------------------------------------------------

enum class SetScheme { pinsketch, ijs, origjs };

/// n is the universe size as each bound states it: 2^m - 1 for PinSketch,
/// 2^m for IJS, and the number of possible x values for original JS.
struct SetLossParams {
  double n = 0;
  unsigned t = 0;
  unsigned s = 0;  // original JS only
  unsigned r = 0;  // original JS only
};

/// PinSketch t log2(n+1); IJS t log2 n;
/// original JS t log2 n + log2 C(n,r) - log2 C(n-s,r-s) + 2.
double setdiff_entropy_loss(SetScheme scheme, const SetLossParams& p);

/// Injective set -> bit string used as extractor input. Characteristic
/// vector of 2^m - 1 bits when that is at most 256; otherwise the sorted
/// elements, m bits each LSB-first, zero padded to 256 bits.
unsigned set_encoding_bits(const Field& field);
BitVec encode_set(const ElementSet& w);

}  // namespace fzx::setdiff
