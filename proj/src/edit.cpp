#include "fzx/edit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "fzx/error.hpp"

namespace fzx::edit {

using gf2m::Element;
using setdiff::ElementSet;

namespace {

constexpr unsigned kMaxFieldDegree = 32;
constexpr unsigned kShingleHashBits = 256;

void check_alphabet(Alphabet a) {
  if (a.bits_per_symbol == 0 || a.bits_per_symbol > 8) throw BadParameter("alphabet must have 2 to 256 symbols");
}

void check_string(const std::string& w, Alphabet a) {
  for (char ch : w) {
    if (static_cast<unsigned char>(ch) >= a.size()) throw BadParameter("symbol outside the alphabet");
  }
}

std::uint64_t shingle_value(const std::string& s, Alphabet a) {
  std::uint64_t v = 0;
  for (char ch : s) v = (v << a.bits_per_symbol) | static_cast<unsigned char>(ch);
  return v;
}

std::string value_shingle(std::uint64_t v, unsigned c, Alphabet a) {
  std::string s(c, '\0');
  const std::uint64_t mask = a.size() - 1;
  for (unsigned i = c; i-- > 0;) {
    s[i] = static_cast<char>(v & mask);
    v >>= a.bits_per_symbol;
  }
  return s;
}

// Characters of w covered by index j of its recovery info start here.
std::size_t window_start(std::size_t j, std::size_t count, std::size_t n, unsigned c) {
  return j + 1 == count ? n - c : j * c;
}

}  // namespace

unsigned shingle_field_degree(unsigned c, Alphabet a) {
  check_alphabet(a);
  if (c == 0) throw BadParameter("shingle length must be at least 1");
  const std::uint64_t m = std::uint64_t{c} * a.bits_per_symbol + 1;
  if (m > kMaxFieldDegree) throw BadParameter("shingles of this length do not fit GF(2^32)");
  if (m < gf2m::kMinDegree) throw BadParameter("shingles must carry at least 2 bits");
  return static_cast<unsigned>(m);
}

ShingleSet shingle(const std::string& w, unsigned c) {
  if (c == 0 || c > w.size()) throw BadParameter("shingle length must be in [1, |w|]");
  ShingleSet ss{c, {}};
  ss.shingles.reserve(w.size() - c + 1);
  for (std::size_t i = 0; i + c <= w.size(); ++i) ss.shingles.push_back(w.substr(i, c));
  std::sort(ss.shingles.begin(), ss.shingles.end());
  ss.shingles.erase(std::unique(ss.shingles.begin(), ss.shingles.end()), ss.shingles.end());
  return ss;
}

RecoveryInfo recovery_info(const std::string& w, unsigned c) {
  const ShingleSet ss = shingle(w, c);
  const std::size_t n = w.size();
  const std::size_t count = (n + c - 1) / c;
  RecoveryInfo g{static_cast<std::uint32_t>(n), {}};
  for (std::size_t j = 0; j < count; ++j) {
    const std::string piece = w.substr(window_start(j, count, n, c), c);
    const auto it = std::lower_bound(ss.shingles.begin(), ss.shingles.end(), piece);
    g.indices.push_back(static_cast<std::uint32_t>(it - ss.shingles.begin() + 1));
  }
  return g;
}

std::string unshingle(const ShingleSet& ss, const RecoveryInfo& g) {
  const unsigned c = ss.c;
  const std::size_t n = g.n;
  if (c == 0 || n < c) throw BadParameter("recovery info shorter than one shingle");
  const std::size_t count = (n + c - 1) / c;
  if (g.indices.size() != count) throw BadParameter("recovery info has the wrong number of indices");
  std::string w;
  w.reserve(n);
  for (std::size_t j = 0; j < count; ++j) {
    const auto idx = g.indices[j];
    if (idx == 0 || idx > ss.shingles.size()) throw BadParameter("recovery index out of range");
    const std::string& piece = ss.shingles[idx - 1];
    // The final window overlaps its predecessor; keep only the new tail.
    w.append(piece, w.size() - window_start(j, count, n, c), std::string::npos);
  }
  return w;
}

ElementSet shingles_to_set(const ShingleSet& ss, Alphabet a) {
  const unsigned m = shingle_field_degree(ss.c, a);
  const std::uint64_t top = std::uint64_t{1} << (ss.c * a.bits_per_symbol);
  std::vector<Element> elems;
  elems.reserve(ss.shingles.size());
  for (const auto& s : ss.shingles) {
    if (s.size() != ss.c) throw BadParameter("shingle of the wrong length");
    check_string(s, a);
    elems.push_back(static_cast<Element>(top | shingle_value(s, a)));
  }
  return ElementSet(gf2m::Field(m), std::move(elems));
}

ShingleSet set_to_shingles(const ElementSet& v, unsigned c, Alphabet a) {
  const unsigned width = c * a.bits_per_symbol;
  const std::uint64_t top = std::uint64_t{1} << width;
  ShingleSet ss{c, {}};
  for (Element x : v.elems()) {
    if ((x >> width) != 1) throw DecodeFailure("set element is not a shingle encoding");
    ss.shingles.push_back(value_shingle(x & (top - 1), c, a));
  }
  return ss;
}

unsigned set_capacity(unsigned c, unsigned t_edit) { return (2 * c - 1) * t_edit; }

EditSketch edit_ss(const std::string& w, unsigned c, unsigned t_edit, Alphabet a) {
  check_alphabet(a);
  check_string(w, a);
  if (t_edit == 0) throw BadParameter("t_edit must be at least 1");
  if (w.size() > std::numeric_limits<std::uint32_t>::max()) throw BadParameter("string too long");
  const ShingleSet ss = shingle(w, c);
  const ElementSet v = shingles_to_set(ss, a);
  const unsigned t_set = set_capacity(c, t_edit);
  if (2 * std::uint64_t{t_set} + 1 > v.field().nonzero_count()) {
    throw BadParameter("set capacity (2c-1)t exceeds what GF(2^" + std::to_string(v.field().degree()) +
                       ") supports; use a longer shingle or a smaller t");
  }
  return EditSketch{a, c, t_edit, setdiff::pinsketch_ss(v, t_set), recovery_info(w, c)};
}

std::string edit_rec(const std::string& w_prime, const EditSketch& sk) {
  check_alphabet(sk.alphabet);
  check_string(w_prime, sk.alphabet);
  const gf2m::Field field(shingle_field_degree(sk.c, sk.alphabet));
  const ElementSet v_prime = w_prime.size() >= sk.c ? shingles_to_set(shingle(w_prime, sk.c), sk.alphabet)
                                                     : ElementSet(field);
  const ElementSet v = setdiff::pinsketch_rec(v_prime, sk.s1);
  std::string w;
  try {
    w = unshingle(set_to_shingles(v, sk.c, sk.alphabet), sk.s2);
  } catch (const BadParameter& e) {
    throw DecodeFailure(std::string("recovered shingles are inconsistent: ") + e.what());
  }
  if (!(edit_ss(w, sk.c, sk.t_edit, sk.alphabet) == sk)) throw DecodeFailure("recovered string does not re-sketch");
  return w;
}

// ---------------------------------------------------------------------------

unsigned index_width(std::uint32_t n, unsigned c) {
  if (c == 0 || n < c) throw BadParameter("need 1 <= c <= n");
  const std::uint64_t count = std::uint64_t{n} - c + 1;
  return static_cast<unsigned>(std::bit_width(count - 1));
}

std::vector<std::uint8_t> serialize_edit_payload(const EditSketch& sk) {
  const unsigned m = shingle_field_degree(sk.c, sk.alphabet);
  if (sk.c > 0xFFFF || sk.t_edit > 0xFFFF) throw BadParameter("c and t_edit must fit 16 bits");
  BitWriter out;
  out.put(sk.s2.n, 32);
  out.put(sk.c, 16);
  out.put(sk.t_edit, 16);
  for (Element s : sk.s1.syn.odd_sums) out.put(s, m);
  const unsigned width = index_width(sk.s2.n, sk.c);
  for (auto idx : sk.s2.indices) out.put(idx - 1, width);
  return out.finish();
}

EditSketch parse_edit_payload(std::span<const std::uint8_t> bytes, Alphabet a) {
  BitReader in(bytes);
  EditSketch sk;
  sk.alphabet = a;
  sk.s2.n = static_cast<std::uint32_t>(in.get(32));
  sk.c = static_cast<unsigned>(in.get(16));
  sk.t_edit = static_cast<unsigned>(in.get(16));
  if (sk.c == 0 || sk.t_edit == 0 || sk.s2.n < sk.c) throw MalformedInput("edit sketch header out of range");
  unsigned m = 0;
  try {
    m = shingle_field_degree(sk.c, a);
  } catch (const BadParameter& e) {
    throw MalformedInput(e.what());
  }
  sk.s1.t = set_capacity(sk.c, sk.t_edit);
  if (2 * std::uint64_t{sk.s1.t} + 1 > (std::uint64_t{1} << m) - 1) throw MalformedInput("edit capacity too large");
  for (unsigned j = 0; j < sk.s1.t; ++j) sk.s1.syn.odd_sums.push_back(static_cast<Element>(in.get(m)));
  const unsigned width = index_width(sk.s2.n, sk.c);
  const std::size_t count = (std::size_t{sk.s2.n} + sk.c - 1) / sk.c;
  for (std::size_t j = 0; j < count; ++j) sk.s2.indices.push_back(static_cast<std::uint32_t>(in.get(width) + 1));
  if (!in.at_clean_end()) throw MalformedInput("trailing data after edit sketch");
  return sk;
}

// ---------------------------------------------------------------------------

unsigned shingle_encoding_bits(unsigned c, Alphabet a) {
  const unsigned width = c * a.bits_per_symbol;
  return width <= 8 ? (1U << width) : kShingleHashBits;
}

BitVec encode_shingles(const ShingleSet& ss, Alphabet a) {
  const unsigned bits = shingle_encoding_bits(ss.c, a);
  BitVec out(bits);
  if (ss.c * a.bits_per_symbol <= 8) {
    for (const auto& s : ss.shingles) out.set(shingle_value(s, a));
    return out;
  }
  const unsigned m = shingle_field_degree(ss.c, a);
  if (ss.shingles.size() > kShingleHashBits / m) {
    throw BadParameter("shingle set too large for the extractor encoding: at most " +
                       std::to_string(kShingleHashBits / m) + " shingles");
  }
  const ElementSet v = shingles_to_set(ss, a);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (unsigned b = 0; b < m; ++b) {
      if ((v.elems()[i] >> b) & 1U) out.set(i * m + b);
    }
  }
  return out;
}

namespace {

entropy::SecureSketch<std::string> edit_scheme(unsigned c, unsigned t_edit, Alphabet a) {
  return {
      [=](const std::string& w, Rng&) { return serialize_edit_payload(edit_ss(w, c, t_edit, a)); },
      [=](const std::string& w_prime, std::span<const std::uint8_t> bytes) {
        return edit_rec(w_prime, parse_edit_payload(bytes, a));
      },
  };
}

}  // namespace

entropy::ExtractedKey edit_gen(const std::string& w, unsigned c, unsigned t_edit, unsigned l_bits, Alphabet a,
                               Rng& rng) {
  const entropy::UHash hash(shingle_encoding_bits(c, a), l_bits);
  const entropy::Encoder<std::string> encode = [=](const std::string& s) { return encode_shingles(shingle(s, c), a); };
  return entropy::compose_gen(edit_scheme(c, t_edit, a), w, encode, hash, rng);
}

BitVec edit_rep(const std::string& w_prime, std::span<const std::uint8_t> helper, unsigned l_bits, Alphabet a) {
  // c sits at a fixed offset of the sketch: after the u16 length and the u32 n.
  if (helper.size() < 8) throw MalformedInput("helper too short");
  const unsigned c = (unsigned{helper[6]} << 8) | helper[7];
  if (c == 0) throw MalformedInput("edit sketch header out of range");
  unsigned bits = 0;
  try {
    shingle_field_degree(c, a);
    bits = shingle_encoding_bits(c, a);
  } catch (const BadParameter& e) {
    throw MalformedInput(e.what());
  }
  const entropy::UHash hash(bits, l_bits);
  const entropy::Encoder<std::string> encode = [=](const std::string& s) { return encode_shingles(shingle(s, c), a); };
  return entropy::compose_rep(edit_scheme(c, 1, a), w_prime, helper, encode, hash);
}

// ---------------------------------------------------------------------------

double edit_entropy_loss(std::uint32_t n, unsigned c, unsigned t, Alphabet a, std::optional<double> eps) {
  check_alphabet(a);
  if (c == 0 || c >= n) throw BadParameter("need 1 <= c < n");
  const double count = std::ceil(static_cast<double>(n) / c);
  // F^c is a power of two, so ceil(log2(F^c + 1)) = c log2 F + 1.
  const double element_bits = static_cast<double>(c) * a.bits_per_symbol + 1;
  double loss = count * std::log2(static_cast<double>(n - c + 1)) + (2.0 * c - 1) * t * element_bits;
  if (eps) {
    if (!(*eps > 0 && *eps <= 1)) throw BadParameter("eps must be in (0, 1]");
    loss += 2 * std::log2(1 / *eps) - 2;
  }
  return loss;
}

unsigned optimal_shingle_len(std::uint32_t n, unsigned t, Alphabet a) {
  if (n < 3) throw BadParameter("need n >= 3 to choose c in [2, n-1]");
  if (t == 0) throw BadParameter("t must be at least 1");
  unsigned best = 2;
  double best_loss = edit_entropy_loss(n, 2, t, a);
  for (unsigned c = 3; c < n; ++c) {
    const double loss = edit_entropy_loss(n, c, t, a);
    if (loss < best_loss) {
      best = c;
      best_loss = loss;
    }
  }
  return best;
}

double stationary_shingle_len(std::uint32_t n, unsigned t, Alphabet a) {
  const double nn = n;
  return std::cbrt(nn * std::log2(nn) / (4.0 * t * a.bits_per_symbol));
}

double approx_min_edit_loss(std::uint32_t n, unsigned t, Alphabet a) {
  const double nn = n;
  return (std::cbrt(4.0) + 1 / std::cbrt(2.0)) * std::cbrt(double(t) * a.bits_per_symbol) *
         std::pow(nn * std::log2(nn), 2.0 / 3.0);
}

}  // namespace fzx::edit
