#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "fzx/bitvec.hpp"
#include "fzx/codec.hpp"
#include "fzx/rng.hpp"

namespace fzx::hamming {

/// A binary linear code used as the Hamming-metric sketch engine. For BCH
/// codes, bit i of a word is the position held by field element i + 1, and
/// the syndrome is the t odd power sums, each m bits MSB-first, s_1 first.
/// For small codes, syndrome bit j is parity row j.
class HammingParams {
 public:
  /// BCH code of length 2^m - 1 correcting t errors; m <= 20.
  static HammingParams bch(unsigned m, unsigned t);

  explicit HammingParams(codec::BchCode code);
  explicit HammingParams(codec::SmallLinearCode code);

  std::size_t n() const noexcept;
  std::size_t k() const noexcept;
  unsigned t() const noexcept;
  std::size_t syndrome_bits() const noexcept;
  const std::variant<codec::BchCode, codec::SmallLinearCode>& code() const noexcept { return code_; }

  BitVec syndrome(const BitVec& word) const;
  /// The error pattern of weight <= t with this syndrome; DecodeFailure if none.
  BitVec error_from_syndrome(const BitVec& syn) const;
  BitVec random_codeword(Rng& rng) const;

  /// Bit packing between syndrome values and sketch bits (BCH only).
  BitVec pack(const codec::Syndrome& syn) const;
  codec::Syndrome unpack(const BitVec& bits) const;

 private:
  struct BchTables;
  void check_word(const BitVec& w) const;

  std::variant<codec::BchCode, codec::SmallLinearCode> code_;
  std::shared_ptr<const BchTables> bch_;
};

struct SyndromeSketch {
  BitVec syn_bits;
  friend bool operator==(const SyndromeSketch&, const SyndromeSketch&) = default;
};

struct CodeOffsetSketch {
  BitVec shift;
  friend bool operator==(const CodeOffsetSketch&, const CodeOffsetSketch&) = default;
};

struct PermutedSketch {
  std::vector<std::uint32_t> perm;  // position i of w moves to perm[i]
  BitVec syn_bits;
  friend bool operator==(const PermutedSketch&, const PermutedSketch&) = default;
};

SyndromeSketch ss_syndrome(const HammingParams& p, const BitVec& w);
BitVec rec_syndrome(const HammingParams& p, const BitVec& w_prime, const SyndromeSketch& sk);

CodeOffsetSketch ss_code_offset(const HammingParams& p, const BitVec& w, Rng& rng);
BitVec rec_code_offset(const HammingParams& p, const BitVec& w_prime, const CodeOffsetSketch& sk);

PermutedSketch ss_permuted(const HammingParams& p, const BitVec& w, Rng& rng);
BitVec rec_permuted(const HammingParams& p, const BitVec& w_prime, const PermutedSketch& sk);

/// out[perm[i]] = w[i].
BitVec apply_permutation(std::span<const std::uint32_t> perm, const BitVec& w);
BitVec apply_inverse_permutation(std::span<const std::uint32_t> perm, const BitVec& w);
bool is_permutation(std::span<const std::uint32_t> perm);

/// n - k bits.
double hamming_entropy_loss(std::size_t n, std::size_t k);

}  // namespace fzx::hamming
