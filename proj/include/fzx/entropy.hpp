#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fzx/bitvec.hpp"
#include "fzx/error.hpp"
#include "fzx/rng.hpp"

namespace fzx::entropy {

/// Largest support the enumeration helpers accept.
inline constexpr std::size_t kMaxSupport = std::size_t{1} << 24;
inline constexpr double kNormTolerance = 1e-9;

/// Outcomes are byte strings.
using Outcome = std::string;

/// n-bit integer as a ceil(n/8)-byte big-endian outcome.
Outcome outcome_of(std::uint64_t value, unsigned nbits);

/// Explicit outcome -> probability table. Probabilities are nonnegative and
/// sum to 1 within kNormTolerance; zero entries are dropped.
class FiniteDistribution {
 public:
  explicit FiniteDistribution(std::map<Outcome, double> probs);

  static FiniteDistribution uniform_bits(unsigned nbits);
  static FiniteDistribution point_mass(Outcome outcome);

  const std::map<Outcome, double>& probs() const noexcept { return probs_; }
  double prob(const Outcome& o) const;

 private:
  std::map<Outcome, double> probs_;
};

class JointDistribution {
 public:
  using Key = std::pair<Outcome, Outcome>;
  explicit JointDistribution(std::map<Key, double> probs);

  const std::map<Key, double>& probs() const noexcept { return probs_; }
  FiniteDistribution first() const;
  FiniteDistribution second() const;
  /// The pair (A, B) flattened to one outcome.
  FiniteDistribution flatten() const;

 private:
  std::map<Key, double> probs_;
};

/// 1/2 sum_v |Pr(A = v) - Pr(B = v)|.
double statistical_distance(const FiniteDistribution& a, const FiniteDistribution& b);
/// -log2 max_a Pr[A = a].
double min_entropy(const FiniteDistribution& a);
/// -log2 E_b[max_a Pr[A = a | B = b]] for A the first coordinate.
double avg_min_entropy(const JointDistribution& j);
/// H_inf(A | B = b) for one value b in the support of B.
double conditional_min_entropy(const JointDistribution& j, const Outcome& b);

/// floor(residual - 2 log2(1/eps) + 2), clamped at 0. eps in (0, 1].
unsigned max_extractable_bits(double residual_entropy, double eps);

/// GF(2^n) for 1 <= n <= 256 with a sparse modulus: the pinned primitive
/// polynomial for 3 <= n <= 32, otherwise the lexicographically first
/// irreducible trinomial, else pentanomial.
class WideField {
 public:
  using Value = std::array<std::uint64_t, 4>;

  explicit WideField(unsigned n);

  unsigned degree() const noexcept { return n_; }
  /// Exponents of the modulus below x^n, descending.
  const std::vector<unsigned>& low_terms() const noexcept { return low_terms_; }
  Value mul(const Value& a, const Value& b) const noexcept;

 private:
  unsigned n_;
  std::vector<unsigned> low_terms_;
};

/// Truncated field multiplication: H_x(w) = low l bits of x * w in GF(2^n).
/// Bit i of a BitVec is the coefficient of z^i.
class UHash {
 public:
  /// 1 <= l_bits <= n_bits <= 256.
  UHash(unsigned n_bits, unsigned l_bits);

  unsigned n_bits() const noexcept { return field_.degree(); }
  unsigned l_bits() const noexcept { return l_bits_; }
  const WideField& field() const noexcept { return field_; }

  /// Throws BadParameter on length mismatch.
  BitVec hash(const BitVec& key, const BitVec& input) const;
  std::uint64_t hash_small(std::uint64_t key, std::uint64_t input) const;

 private:
  WideField field_;
  unsigned l_bits_;
};

/// SD(<H_X(W), X>, <U_l, X>) computed exhaustively over all 2^n keys. W's
/// outcomes must be outcome_of(v, n). Requires n <= 16.
double extractor_distance(const FiniteDistribution& w, const UHash& hash);

/// Value sum_i bit_i 2^i as ceil(len/8) big-endian bytes.
std::vector<std::uint8_t> bits_to_int_bytes(const BitVec& bits);
BitVec int_bytes_to_bits(std::span<const std::uint8_t> bytes, std::size_t nbits);

struct ExtractedKey {
  BitVec r;
  std::vector<std::uint8_t> helper;

  std::vector<std::uint8_t> key_bytes() const { return bits_to_int_bytes(r); }
};

/// [u16 BE sketch length][sketch][ceil(n/8) bytes of the seed x].
std::vector<std::uint8_t> pack_helper(std::span<const std::uint8_t> sketch, const BitVec& seed);
/// Throws MalformedInput on any length inconsistency.
std::pair<std::vector<std::uint8_t>, BitVec> unpack_helper(std::span<const std::uint8_t> helper,
                                                           unsigned seed_bits);

template <class W>
struct SecureSketch {
  std::function<std::vector<std::uint8_t>(const W&, Rng&)> sketch;
  std::function<W(const W&, std::span<const std::uint8_t>)> recover;
};

/// Injective map from metric-space elements to n-bit strings.
template <class W>
using Encoder = std::function<BitVec(const W&)>;

/// P = (SS(w), x) with fresh uniform x; R = H_x(encode(w)).
template <class W>
ExtractedKey compose_gen(const SecureSketch<W>& ss, const W& w, const Encoder<W>& encode,
                         const UHash& hash, Rng& rng) {
  const std::vector<std::uint8_t> sketch = ss.sketch(w, rng);
  const BitVec seed = BitVec::random(rng, hash.n_bits());
  return ExtractedKey{hash.hash(seed, encode(w)), pack_helper(sketch, seed)};
}

/// Recovers w from w' and the sketch in P, then re-derives R.
template <class W>
BitVec compose_rep(const SecureSketch<W>& ss, const W& w_prime, std::span<const std::uint8_t> helper,
                   const Encoder<W>& encode, const UHash& hash) {
  auto [sketch, seed] = unpack_helper(helper, hash.n_bits());
  const W w = ss.recover(w_prime, sketch);
  return hash.hash(seed, encode(w));
}

}  // namespace fzx::entropy
