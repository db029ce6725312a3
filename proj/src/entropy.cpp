#include "fzx/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "fzx/gf2m.hpp"

namespace fzx::entropy {

namespace {

template <class Map>
Map validated(Map probs) {
  if (probs.size() > kMaxSupport) throw BadParameter("distribution support exceeds 2^24 outcomes");
  double total = 0.0;
  for (auto it = probs.begin(); it != probs.end();) {
    if (!(it->second >= 0.0)) throw BadParameter("negative or NaN probability");
    total += it->second;
    it = it->second == 0.0 ? probs.erase(it) : std::next(it);
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw BadParameter("probabilities sum to " + std::to_string(total) + ", not 1");
  }
  return probs;
}

}  // namespace

Outcome outcome_of(std::uint64_t value, unsigned nbits) {
  Outcome o((nbits + 7) / 8, '\0');
  for (std::size_t i = o.size(); i-- > 0;) {
    o[i] = static_cast<char>(value & 0xFF);
    value >>= 8;
  }
  return o;
}

FiniteDistribution::FiniteDistribution(std::map<Outcome, double> probs) : probs_(validated(std::move(probs))) {}

FiniteDistribution FiniteDistribution::uniform_bits(unsigned nbits) {
  if (nbits > 24) throw BadParameter("distribution support exceeds 2^24 outcomes");
  std::map<Outcome, double> p;
  const std::uint64_t count = std::uint64_t{1} << nbits;
  for (std::uint64_t v = 0; v < count; ++v) p[outcome_of(v, nbits)] = 1.0 / static_cast<double>(count);
  return FiniteDistribution(std::move(p));
}

FiniteDistribution FiniteDistribution::point_mass(Outcome outcome) {
  return FiniteDistribution({{std::move(outcome), 1.0}});
}

double FiniteDistribution::prob(const Outcome& o) const {
  auto it = probs_.find(o);
  return it == probs_.end() ? 0.0 : it->second;
}

JointDistribution::JointDistribution(std::map<Key, double> probs) : probs_(validated(std::move(probs))) {}

FiniteDistribution JointDistribution::first() const {
  std::map<Outcome, double> p;
  for (const auto& [k, v] : probs_) p[k.first] += v;
  return FiniteDistribution(std::move(p));
}

FiniteDistribution JointDistribution::second() const {
  std::map<Outcome, double> p;
  for (const auto& [k, v] : probs_) p[k.second] += v;
  return FiniteDistribution(std::move(p));
}

FiniteDistribution JointDistribution::flatten() const {
  std::map<Outcome, double> p;
  for (const auto& [k, v] : probs_) {
    // length-prefix the first part so distinct pairs stay distinct
    Outcome o = outcome_of(k.first.size(), 32) + k.first + k.second;
    p[std::move(o)] += v;
  }
  return FiniteDistribution(std::move(p));
}

double statistical_distance(const FiniteDistribution& a, const FiniteDistribution& b) {
  double sum = 0.0;
  for (const auto& [o, p] : a.probs()) sum += std::abs(p - b.prob(o));
  for (const auto& [o, p] : b.probs()) {
    if (a.probs().find(o) == a.probs().end()) sum += p;
  }
  return std::clamp(sum / 2.0, 0.0, 1.0);
}

double min_entropy(const FiniteDistribution& a) {
  double best = 0.0;
  for (const auto& [o, p] : a.probs()) best = std::max(best, p);
  return -std::log2(best);
}

double avg_min_entropy(const JointDistribution& j) {
  // E_b[max_a Pr[a | b]] = sum_b max_a Pr[a, b]
  std::map<Outcome, double> best;
  for (const auto& [k, p] : j.probs()) {
    double& slot = best[k.second];
    slot = std::max(slot, p);
  }
  double guess = 0.0;
  for (const auto& [b, p] : best) guess += p;
  return -std::log2(guess);
}

double conditional_min_entropy(const JointDistribution& j, const Outcome& b) {
  double total = 0.0;
  double best = 0.0;
  for (const auto& [k, p] : j.probs()) {
    if (k.second != b) continue;
    total += p;
    best = std::max(best, p);
  }
  if (total == 0.0) throw BadParameter("conditioning value has probability zero");
  return -std::log2(best / total);
}

unsigned max_extractable_bits(double residual_entropy, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw BadParameter("eps must be in (0, 1]");
  const double bits = residual_entropy - 2.0 * std::log2(1.0 / eps) + 2.0;
  if (bits <= 0.0) return 0;
  return static_cast<unsigned>(std::floor(bits + 1e-9));
}

// ---------------------------------------------------------------------------
// GF(2^n) for the hash family

namespace {

// Polynomials over GF(2) of degree < 512.
using Wide = std::array<std::uint64_t, 8>;

int wide_degree(const Wide& p) {
  for (int w = 7; w >= 0; --w) {
    if (p[w] != 0) return w * 64 + 63 - std::countl_zero(p[w]);
  }
  return -1;
}

bool wide_bit(const Wide& p, int i) { return (p[i / 64] >> (i % 64)) & 1U; }

void xor_shifted(Wide& dst, const Wide& src, int shift) {
  const int ws = shift / 64;
  const int bs = shift % 64;
  for (int i = 7; i >= ws; --i) {
    std::uint64_t v = src[i - ws] << bs;
    if (bs != 0 && i - ws - 1 >= 0) v |= src[i - ws - 1] >> (64 - bs);
    dst[i] ^= v;
  }
}

Wide wide_mod(Wide p, const Wide& f) {
  const int df = wide_degree(f);
  for (int i = wide_degree(p); i >= df; --i) {
    if (wide_bit(p, i)) xor_shifted(p, f, i - df);
  }
  return p;
}

Wide wide_mulmod(const Wide& a, const Wide& b, const Wide& f) {
  Wide r{};
  const int db = wide_degree(b);
  for (int i = 0; i <= db; ++i) {
    if (wide_bit(b, i)) xor_shifted(r, a, i);
  }
  return wide_mod(r, f);
}

Wide wide_gcd(Wide a, Wide b) {
  while (wide_degree(b) >= 0) {
    Wide r = wide_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

// Ben-Or: f of degree n is irreducible iff gcd(f, x^(2^i) - x) = 1 for i <= n/2.
bool irreducible(const Wide& f, unsigned n) {
  Wide x{};
  x[0] = 2;
  Wide u = x;
  for (unsigned i = 1; i <= n / 2; ++i) {
    u = wide_mulmod(u, u, f);
    Wide diff = u;
    diff[0] ^= 2;
    if (wide_degree(wide_gcd(f, diff)) > 0) return false;
  }
  return true;
}

Wide from_terms(unsigned n, const std::vector<unsigned>& low) {
  Wide f{};
  f[n / 64] |= std::uint64_t{1} << (n % 64);
  for (auto e : low) f[e / 64] ^= std::uint64_t{1} << (e % 64);
  return f;
}

std::vector<unsigned> search_modulus(unsigned n) {
  if (n == 1) return {0};
  for (unsigned k = 1; k < n; ++k) {
    std::vector<unsigned> low{k, 0};
    if (irreducible(from_terms(n, low), n)) return low;
  }
  for (unsigned a = 3; a < n; ++a) {
    for (unsigned b = 2; b < a; ++b) {
      for (unsigned c = 1; c < b; ++c) {
        std::vector<unsigned> low{a, b, c, 0};
        if (irreducible(from_terms(n, low), n)) return low;
      }
    }
  }
  throw InternalFailure("no irreducible pentanomial found");
}

}  // namespace

WideField::WideField(unsigned n) : n_(n) {
  if (n == 0 || n > 256) throw BadParameter("hash field degree must be in [1, 256]");
  if (n >= gf2m::kMinDegree && n <= gf2m::kMaxDegree) {
    const std::uint64_t mod = gf2m::default_modulus(n);
    for (unsigned e = n; e-- > 0;) {
      if ((mod >> e) & 1U) low_terms_.push_back(e);
    }
  } else {
    low_terms_ = search_modulus(n);
  }
}

WideField::Value WideField::mul(const Value& a, const Value& b) const noexcept {
  Wide r{};
  Wide aw{};
  std::copy(a.begin(), a.end(), aw.begin());
  for (unsigned i = 0; i < n_; ++i) {
    if ((b[i / 64] >> (i % 64)) & 1U) xor_shifted(r, aw, static_cast<int>(i));
  }
  for (int i = 2 * static_cast<int>(n_) - 2; i >= static_cast<int>(n_); --i) {
    if (!wide_bit(r, i)) continue;
    r[i / 64] ^= std::uint64_t{1} << (i % 64);
    for (auto e : low_terms_) {
      const int pos = i - static_cast<int>(n_) + static_cast<int>(e);
      r[pos / 64] ^= std::uint64_t{1} << (pos % 64);
    }
  }
  Value out{};
  std::copy(r.begin(), r.begin() + 4, out.begin());
  return out;
}

UHash::UHash(unsigned n_bits, unsigned l_bits) : field_(n_bits), l_bits_(l_bits) {
  if (l_bits == 0 || l_bits > n_bits) throw BadParameter("hash output length must be in [1, n_bits]");
}

namespace {

WideField::Value to_value(const BitVec& v) {
  WideField::Value out{};
  const auto words = v.words();
  std::copy(words.begin(), words.end(), out.begin());
  return out;
}

}  // namespace

BitVec UHash::hash(const BitVec& key, const BitVec& input) const {
  if (key.size() != n_bits() || input.size() != n_bits()) {
    throw BadParameter("hash key and input must both be " + std::to_string(n_bits()) + " bits");
  }
  const auto product = field_.mul(to_value(key), to_value(input));
  BitVec out(l_bits_);
  for (unsigned i = 0; i < l_bits_; ++i) {
    if ((product[i / 64] >> (i % 64)) & 1U) out.set(i);
  }
  return out;
}

std::uint64_t UHash::hash_small(std::uint64_t key, std::uint64_t input) const {
  if (n_bits() > 64) throw BadParameter("hash_small needs n_bits <= 64");
  const auto product = field_.mul({key, 0, 0, 0}, {input, 0, 0, 0});
  return l_bits_ == 64 ? product[0] : product[0] & ((std::uint64_t{1} << l_bits_) - 1);
}

double extractor_distance(const FiniteDistribution& w, const UHash& hash) {
  const unsigned n = hash.n_bits();
  if (n > 16) throw BadParameter("extractor_distance enumerates keys; n must be <= 16");
  const std::uint64_t keys = std::uint64_t{1} << n;
  const std::uint64_t outs = std::uint64_t{1} << hash.l_bits();
  std::vector<std::pair<std::uint64_t, double>> inputs;
  for (const auto& [o, p] : w.probs()) {
    if (o.size() != (n + 7) / 8) throw BadParameter("outcome width does not match hash input");
    std::uint64_t v = 0;
    for (unsigned char c : o) v = (v << 8) | c;
    if (v >= keys) throw BadParameter("outcome exceeds hash input range");
    inputs.emplace_back(v, p);
  }
  // Pr[H_X(W) = h, X = x] against the uniform 1/(2^l 2^n).
  const double uniform = 1.0 / static_cast<double>(outs * keys);
  double sum = 0.0;
  std::vector<double> row(outs);
  for (std::uint64_t x = 0; x < keys; ++x) {
    std::fill(row.begin(), row.end(), 0.0);
    for (const auto& [v, p] : inputs) row[hash.hash_small(x, v)] += p / static_cast<double>(keys);
    for (double r : row) sum += std::abs(r - uniform);
  }
  return sum / 2.0;
}

std::vector<std::uint8_t> bits_to_int_bytes(const BitVec& bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits.get(i)) out[out.size() - 1 - i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
  }
  return out;
}

BitVec int_bytes_to_bits(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  if (bytes.size() != (nbits + 7) / 8) throw MalformedInput("integer field has wrong width");
  BitVec out(nbits);
  for (std::size_t i = 0; i < bytes.size() * 8; ++i) {
    const bool bit = (bytes[bytes.size() - 1 - i / 8] >> (i % 8)) & 1U;
    if (!bit) continue;
    if (i >= nbits) throw MalformedInput("integer field exceeds its bit width");
    out.set(i);
  }
  return out;
}

std::vector<std::uint8_t> pack_helper(std::span<const std::uint8_t> sketch, const BitVec& seed) {
  if (sketch.size() > 0xFFFF) throw BadParameter("sketch too large for helper payload");
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(sketch.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(sketch.size() & 0xFF));
  out.insert(out.end(), sketch.begin(), sketch.end());
  const auto x = bits_to_int_bytes(seed);
  out.insert(out.end(), x.begin(), x.end());
  return out;
}

std::pair<std::vector<std::uint8_t>, BitVec> unpack_helper(std::span<const std::uint8_t> helper,
                                                           unsigned seed_bits) {
  if (helper.size() < 2) throw MalformedInput("helper payload truncated");
  const std::size_t len = (std::size_t{helper[0]} << 8) | helper[1];
  const std::size_t seed_bytes = (seed_bits + 7) / 8;
  if (helper.size() != 2 + len + seed_bytes) throw MalformedInput("helper payload length mismatch");
  std::vector<std::uint8_t> sketch(helper.begin() + 2, helper.begin() + 2 + static_cast<long>(len));
  return {std::move(sketch), int_bytes_to_bits(helper.subspan(2 + len), seed_bits)};
}

}  // namespace fzx::entropy
