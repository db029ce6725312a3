#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fzx/rng.hpp"

namespace fzx {

/// Fixed-length bit string. Bit i of the word is position i; the byte form
/// is MSB-first (bit 0 is the high bit of byte 0) with zero padding.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits) : size_(nbits), words_((nbits + 63) / 64, 0) {}

  /// Throws MalformedInput if the byte count is wrong or pad bits are set.
  static BitVec from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits);
  /// "0110..." with position 0 first.
  static BitVec from_string(const std::string& bits);
  static BitVec random(Rng& rng, std::size_t nbits);

  std::vector<std::uint8_t> to_bytes() const;
  std::string to_string() const;

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool v = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    if (v) {
      words_[i / 64] |= bit;
    } else {
      words_[i / 64] &= ~bit;
    }
  }
  void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  std::size_t weight() const noexcept;
  std::vector<std::size_t> ones() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Appends fixed-width big-endian fields to a bit stream.
class BitWriter {
 public:
  void put(std::uint64_t value, unsigned width);
  std::size_t bit_count() const noexcept { return nbits_; }
  std::vector<std::uint8_t> finish() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t nbits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  /// Throws MalformedInput when the stream runs out.
  std::uint64_t get(unsigned width);
  /// True when every unread bit in the final byte is zero and no whole bytes remain.
  bool at_clean_end() const noexcept;

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> bytes);
/// Accepts upper or lower case; throws MalformedInput on odd length or bad digits.
std::vector<std::uint8_t> from_hex(const std::string& hex);

}  // namespace fzx
