#include "fzx/hamming.hpp"

#include <bit>
#include <string>

#include "fzx/error.hpp"

namespace fzx::hamming {

using codec::BchCode;
using codec::SmallLinearCode;
using codec::Syndrome;
using gf2m::Element;

namespace {

constexpr unsigned kMaxHammingDegree = 20;
// Precompute per-position syndromes while the table stays below this size.
constexpr std::size_t kColumnTableLimit = std::size_t{1} << 23;

// dst ^= src << shift, both over GF(2).
void xor_shifted(BitVec& dst, const BitVec& src, std::size_t shift) {
  for (auto i : src.ones()) {
    if (i + shift < dst.size()) dst.flip(i + shift);
  }
}

}  // namespace

struct HammingParams::BchTables {
  std::vector<std::size_t> generator_terms;  // exponents of g(x) over GF(2)
  std::size_t generator_degree = 0;
  std::vector<Element> alpha_pow;            // alpha^i for i < n
  std::vector<Element> columns;              // n * t odd power sums, empty if too large
};

HammingParams HammingParams::bch(unsigned m, unsigned t) {
  return HammingParams(BchCode::with_capacity(gf2m::Field(m), t));
}

HammingParams::HammingParams(BchCode code) : code_(code) {
  const auto& f = code.field();
  if (f.degree() > kMaxHammingDegree) {
    throw BadParameter("Hamming-metric BCH words are limited to m <= 20");
  }
  auto tables = std::make_shared<BchTables>();
  const std::size_t n = code.length();

  tables->alpha_pow.resize(n);
  Element a = 1;
  for (std::size_t i = 0; i < n; ++i) {
    tables->alpha_pow[i] = a;
    a = f.mul(a, 2);
  }

  // g = product of minimal polynomials of alpha^j over the odd j < delta.
  std::vector<bool> covered(n, false);
  gf2m::Poly g{1};
  for (std::size_t j = 1; j < code.delta(); j += 2) {
    if (covered[j]) continue;
    std::vector<Element> roots;
    std::size_t e = j;
    while (!covered[e]) {
      covered[e] = true;
      roots.push_back(tables->alpha_pow[e]);
      e = (2 * e) % n;
    }
    g = gf2m::poly_mul(f, g, gf2m::poly_from_roots(f, roots));
  }
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
    if (g.coeffs()[i] > 1) throw InternalFailure("BCH generator has non-binary coefficient");
    if (g.coeffs()[i] == 1) tables->generator_terms.push_back(i);
  }
  tables->generator_degree = static_cast<std::size_t>(g.degree());

  if (n * code.t() <= kColumnTableLimit) {
    tables->columns.reserve(n * code.t());
    for (std::size_t i = 0; i < n; ++i) {
      const Element x = static_cast<Element>(i + 1);
      const auto syn = codec::syndrome_from_support(code, std::span<const Element>(&x, 1));
      tables->columns.insert(tables->columns.end(), syn.odd_sums.begin(), syn.odd_sums.end());
    }
  }
  bch_ = std::move(tables);
}

HammingParams::HammingParams(SmallLinearCode code) : code_(std::move(code)) {}

std::size_t HammingParams::n() const noexcept {
  if (const auto* b = std::get_if<BchCode>(&code_)) return b->length();
  return std::get<SmallLinearCode>(code_).n();
}

std::size_t HammingParams::k() const noexcept {
  if (std::holds_alternative<BchCode>(code_)) return n() - bch_->generator_degree;
  return std::get<SmallLinearCode>(code_).k();
}

unsigned HammingParams::t() const noexcept {
  if (const auto* b = std::get_if<BchCode>(&code_)) return b->t();
  return std::get<SmallLinearCode>(code_).t();
}

std::size_t HammingParams::syndrome_bits() const noexcept {
  if (const auto* b = std::get_if<BchCode>(&code_)) return std::size_t{b->t()} * b->field().degree();
  return std::get<SmallLinearCode>(code_).redundancy();
}

void HammingParams::check_word(const BitVec& w) const {
  if (w.size() != n()) {
    throw BadParameter("word has " + std::to_string(w.size()) + " bits, code length is " + std::to_string(n()));
  }
}

BitVec HammingParams::pack(const Syndrome& syn) const {
  const auto& code = std::get<BchCode>(code_);
  const unsigned m = code.field().degree();
  BitVec bits(syndrome_bits());
  for (std::size_t j = 0; j < syn.odd_sums.size(); ++j) {
    for (unsigned i = 0; i < m; ++i) {
      if ((syn.odd_sums[j] >> (m - 1 - i)) & 1U) bits.set(j * m + i);
    }
  }
  return bits;
}

Syndrome HammingParams::unpack(const BitVec& bits) const {
  const auto& code = std::get<BchCode>(code_);
  if (bits.size() != syndrome_bits()) throw BadParameter("syndrome bit length mismatch");
  const unsigned m = code.field().degree();
  Syndrome syn{std::vector<Element>(code.t(), 0)};
  for (std::size_t j = 0; j < code.t(); ++j) {
    for (unsigned i = 0; i < m; ++i) {
      if (bits.get(j * m + i)) syn.odd_sums[j] |= Element{1} << (m - 1 - i);
    }
  }
  return syn;
}

BitVec HammingParams::syndrome(const BitVec& word) const {
  check_word(word);
  if (const auto* small = std::get_if<SmallLinearCode>(&code_)) {
    const auto s = codec::small_syndrome(*small, static_cast<std::uint32_t>(word.words()[0]));
    BitVec bits(syndrome_bits());
    for (std::size_t j = 0; j < bits.size(); ++j) bits.set(j, (s >> j) & 1U);
    return bits;
  }
  const auto& code = std::get<BchCode>(code_);
  const unsigned t = code.t();
  Syndrome syn{std::vector<Element>(t, 0)};
  const auto ones = word.ones();
  if (!bch_->columns.empty()) {
    for (auto i : ones) {
      for (unsigned j = 0; j < t; ++j) syn.odd_sums[j] ^= bch_->columns[i * t + j];
    }
  } else {
    std::vector<Element> support;
    support.reserve(ones.size());
    for (auto i : ones) support.push_back(static_cast<Element>(i + 1));
    syn = codec::syndrome_from_support(code, support);
  }
  return pack(syn);
}

BitVec HammingParams::error_from_syndrome(const BitVec& syn) const {
  if (syn.size() != syndrome_bits()) throw BadParameter("syndrome bit length mismatch");
  BitVec e(n());
  if (const auto* small = std::get_if<SmallLinearCode>(&code_)) {
    const auto s = static_cast<std::uint32_t>(syn.size() == 0 ? 0 : syn.words()[0]);
    const auto leader = codec::small_decode_brute(*small, s);
    if (static_cast<unsigned>(std::popcount(leader)) > small->t()) {
      throw DecodeFailure("no error pattern of weight <= t has this syndrome");
    }
    for (unsigned i = 0; i < small->n(); ++i) e.set(i, (leader >> i) & 1U);
    return e;
  }
  const auto& code = std::get<BchCode>(code_);
  for (Element x : codec::support_from_syndrome(code, unpack(syn))) e.set(x - 1);
  return e;
}

BitVec HammingParams::random_codeword(Rng& rng) const {
  if (const auto* small = std::get_if<SmallLinearCode>(&code_)) {
    const auto msg = static_cast<std::uint32_t>(uniform_below(rng, std::uint64_t{1} << small->k()));
    const auto c = small->encode(msg);
    BitVec out(n());
    for (unsigned i = 0; i < small->n(); ++i) out.set(i, (c >> i) & 1U);
    return out;
  }
  // c(x) = u(x) g(x); coefficient i sits at the position of alpha^i.
  const BitVec u = BitVec::random(rng, k());
  BitVec c(n());
  for (auto e : bch_->generator_terms) xor_shifted(c, u, e);
  BitVec out(n());
  for (auto i : c.ones()) out.set(bch_->alpha_pow[i] - 1);
  return out;
}

// ---------------------------------------------------------------------------

SyndromeSketch ss_syndrome(const HammingParams& p, const BitVec& w) { return {p.syndrome(w)}; }

BitVec rec_syndrome(const HammingParams& p, const BitVec& w_prime, const SyndromeSketch& sk) {
  const BitVec diff = p.syndrome(w_prime) ^ sk.syn_bits;
  return w_prime ^ p.error_from_syndrome(diff);
}

CodeOffsetSketch ss_code_offset(const HammingParams& p, const BitVec& w, Rng& rng) {
  if (w.size() != p.n()) throw BadParameter("word length does not match code length");
  return {w ^ p.random_codeword(rng)};
}

BitVec rec_code_offset(const HammingParams& p, const BitVec& w_prime, const CodeOffsetSketch& sk) {
  // w' - sk is a codeword plus the error; decode it and shift back.
  const BitVec noisy = w_prime ^ sk.shift;
  const BitVec c = noisy ^ p.error_from_syndrome(p.syndrome(noisy));
  return sk.shift ^ c;
}

bool is_permutation(std::span<const std::uint32_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (auto v : perm) {
    if (v >= perm.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

BitVec apply_permutation(std::span<const std::uint32_t> perm, const BitVec& w) {
  if (perm.size() != w.size()) throw BadParameter("permutation length mismatch");
  BitVec out(w.size());
  for (auto i : w.ones()) out.set(perm[i]);
  return out;
}

BitVec apply_inverse_permutation(std::span<const std::uint32_t> perm, const BitVec& w) {
  if (perm.size() != w.size()) throw BadParameter("permutation length mismatch");
  BitVec out(w.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (w.get(perm[i])) out.set(i);
  }
  return out;
}

PermutedSketch ss_permuted(const HammingParams& p, const BitVec& w, Rng& rng) {
  if (w.size() != p.n()) throw BadParameter("word length does not match code length");
  std::vector<std::uint32_t> perm(p.n());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<std::uint32_t>(i);
  shuffle(rng, std::span<std::uint32_t>(perm));
  BitVec syn = p.syndrome(apply_permutation(perm, w));
  return {std::move(perm), std::move(syn)};
}

BitVec rec_permuted(const HammingParams& p, const BitVec& w_prime, const PermutedSketch& sk) {
  if (!is_permutation(sk.perm) || sk.perm.size() != p.n()) throw BadParameter("invalid permutation");
  const BitVec permuted = apply_permutation(sk.perm, w_prime);
  const BitVec fixed = rec_syndrome(p, permuted, SyndromeSketch{sk.syn_bits});
  return apply_inverse_permutation(sk.perm, fixed);
}

double hamming_entropy_loss(std::size_t n, std::size_t k) {
  if (k > n) throw BadParameter("k must not exceed n");
  return static_cast<double>(n - k);
}

}  // namespace fzx::hamming
