#include "fzx/bitvec.hpp"

#include <bit>

#include "fzx/error.hpp"

namespace fzx {

Rng seeded_from_os() {
  std::random_device rd;
  std::seed_seq seq{rd(), rd(), rd(), rd()};
  return Rng(seq);
}

BitVec BitVec::from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  if (bytes.size() != (nbits + 7) / 8) {
    throw MalformedInput("expected " + std::to_string((nbits + 7) / 8) + " bytes for " +
                         std::to_string(nbits) + " bits, got " + std::to_string(bytes.size()));
  }
  BitVec v(nbits);
  for (std::size_t i = 0; i < bytes.size() * 8; ++i) {
    const bool bit = (bytes[i / 8] >> (7 - i % 8)) & 1U;
    if (i >= nbits) {
      if (bit) throw MalformedInput("nonzero padding bits");
    } else if (bit) {
      v.set(i);
    }
  }
  return v;
}

BitVec BitVec::from_string(const std::string& bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw BadParameter("bit string may only contain 0 and 1");
    }
  }
  return v;
}

BitVec BitVec::random(Rng& rng, std::size_t nbits) {
  BitVec v(nbits);
  for (auto& w : v.words_) w = rng();
  if (nbits % 64 != 0 && !v.words_.empty()) {
    v.words_.back() &= (std::uint64_t{1} << (nbits % 64)) - 1;
  }
  return v;
}

std::vector<std::uint8_t> BitVec::to_bytes() const {
  std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

std::string BitVec::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::size_t BitVec::weight() const noexcept {
  std::size_t w = 0;
  for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

std::vector<std::size_t> BitVec::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t word = words_[wi];
    while (word != 0) {
      out.push_back(wi * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  if (other.size_ != size_) throw BadParameter("bit length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

void BitWriter::put(std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) {
    if (nbits_ % 8 == 0) bytes_.push_back(0);
    if ((value >> i) & 1U) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (nbits_ % 8));
    ++nbits_;
  }
}

std::uint64_t BitReader::get(unsigned width) {
  if (pos_ + width > bytes_.size() * 8) throw MalformedInput("bit stream truncated");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i, ++pos_) {
    v = (v << 1) | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1U);
  }
  return v;
}

bool BitReader::at_clean_end() const noexcept {
  if ((pos_ + 7) / 8 != bytes_.size()) return false;
  for (std::size_t i = pos_; i < bytes_.size() * 8; ++i) {
    if ((bytes_[i / 8] >> (7 - i % 8)) & 1U) return false;
  }
  return true;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

namespace {
int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

std::vector<std::uint8_t> from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw MalformedInput("odd-length hex string");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_digit(hex[2 * i]);
    const int lo = hex_digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw MalformedInput("invalid hex digit");
    out[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return out;
}

}  // namespace fzx
