#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fzx/entropy.hpp"
#include "fzx/setdiff.hpp"

namespace fzx::edit {

/// Alphabet of size F = 2^bits_per_symbol. A string holds one symbol value
/// per char; every value is below F.
struct Alphabet {
  unsigned bits_per_symbol = 8;

  static Alphabet binary() { return {1}; }
  static Alphabet bytes() { return {8}; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << bits_per_symbol; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

/// Field degree holding c-shingles: c * bits_per_symbol + 1, at most 32.
unsigned shingle_field_degree(unsigned c, Alphabet a);

struct ShingleSet {
  unsigned c = 0;
  std::vector<std::string> shingles;  // sorted bytewise, distinct
  friend bool operator==(const ShingleSet&, const ShingleSet&) = default;
};

/// 1-based positions of the disjoint shingles of w in its sorted shingle
/// set. The last shingle starts at n - c and may overlap the one before it.
struct RecoveryInfo {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> indices;  // ceil(n / c) entries
  friend bool operator==(const RecoveryInfo&, const RecoveryInfo&) = default;
};

struct EditSketch {
  Alphabet alphabet;
  unsigned c = 0;
  unsigned t_edit = 0;
  setdiff::PinSketchData s1;  // capacity (2c - 1) t_edit
  RecoveryInfo s2;
  friend bool operator==(const EditSketch&, const EditSketch&) = default;
};

/// Throws BadParameter unless 1 <= c <= |w|.
ShingleSet shingle(const std::string& w, unsigned c);
RecoveryInfo recovery_info(const std::string& w, unsigned c);
/// Throws BadParameter on an index outside [1, |ss|].
std::string unshingle(const ShingleSet& ss, const RecoveryInfo& g);

/// Shingle b maps to F^c + value(b), value read big-endian in base F.
setdiff::ElementSet shingles_to_set(const ShingleSet& ss, Alphabet a);
ShingleSet set_to_shingles(const setdiff::ElementSet& v, unsigned c, Alphabet a);

unsigned set_capacity(unsigned c, unsigned t_edit);

EditSketch edit_ss(const std::string& w, unsigned c, unsigned t_edit, Alphabet a);
/// w' may be shorter or longer than w. Throws DecodeFailure unless the
/// output re-sketches to sk.
std::string edit_rec(const std::string& w_prime, const EditSketch& sk);

/// Index width in bits: ceil(log2(n - c + 1)).
unsigned index_width(std::uint32_t n, unsigned c);
/// [u32 n][u16 c][u16 t_edit] then one bit stream: the syndrome (t_set * m
/// bits) followed by each index minus one in index_width bits.
std::vector<std::uint8_t> serialize_edit_payload(const EditSketch& sk);
EditSketch parse_edit_payload(std::span<const std::uint8_t> bytes, Alphabet a);

/// Extractor input for a shingle set: characteristic vector over the F^c
/// possible shingles when that is at most 256 bits, else the sorted field
/// elements m bits each, zero padded to 256 bits.
unsigned shingle_encoding_bits(unsigned c, Alphabet a);
BitVec encode_shingles(const ShingleSet& ss, Alphabet a);

/// R hashes the shingle set of w; P holds the serialized edit sketch and the seed.
entropy::ExtractedKey edit_gen(const std::string& w, unsigned c, unsigned t_edit, unsigned l_bits, Alphabet a,
                               Rng& rng);
BitVec edit_rep(const std::string& w_prime, std::span<const std::uint8_t> helper, unsigned l_bits, Alphabet a);

/// ceil(n/c) log2(n-c+1) + (2c-1) t ceil(log2(F^c+1)), plus 2 log2(1/eps) - 2 with eps.
double edit_entropy_loss(std::uint32_t n, unsigned c, unsigned t, Alphabet a, std::optional<double> eps = {});
/// Argmin of edit_entropy_loss over c in [2, n-1]; ties go to the smaller c.
unsigned optimal_shingle_len(std::uint32_t n, unsigned t, Alphabet a);
/// (n log n / (4 t log F))^(1/3).
double stationary_shingle_len(std::uint32_t n, unsigned t, Alphabet a);
/// (4^(1/3) + 2^(-1/3)) (t log F)^(1/3) (n log n)^(2/3).
double approx_min_edit_loss(std::uint32_t n, unsigned t, Alphabet a);

}  // namespace fzx::edit
