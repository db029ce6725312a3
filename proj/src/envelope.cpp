#include <algorithm>
#include <string>

#include "fzx/app.hpp"

namespace fzx::app {

using gf2m::Element;

namespace {

constexpr std::uint8_t kMagic[4] = {'F', 'Z', 'X', '1'};
constexpr std::size_t kHeaderBytes = 8;
constexpr unsigned kMaxHammingDegree = 20;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::size_t bytes_for_bits(std::uint64_t bits) { return static_cast<std::size_t>((bits + 7) / 8); }

void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, unsigned nbytes) {
  for (unsigned i = nbytes; i-- > 0;) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_be(std::span<const std::uint8_t> bytes, std::size_t offset, unsigned nbytes) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < nbytes; ++i) v = (v << 8) | bytes[offset + i];
  return v;
}

void put_header(std::vector<std::uint8_t>& out, SchemeId id, unsigned m, unsigned t) {
  if (m > 0xFF || t > 0xFFFF) throw BadParameter("m or t does not fit the envelope header");
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(static_cast<std::uint8_t>(id));
  out.push_back(static_cast<std::uint8_t>(m));
  put_be(out, t, 2);
}

void put_packed(std::vector<std::uint8_t>& out, std::span<const Element> values, unsigned m) {
  BitWriter w;
  for (auto v : values) w.put(v, m);
  const auto bytes = w.finish();
  out.insert(out.end(), bytes.begin(), bytes.end());
}

void append(std::vector<std::uint8_t>& out, const std::vector<std::uint8_t>& bytes) {
  out.insert(out.end(), bytes.begin(), bytes.end());
}

[[noreturn]] void fail(EnvelopeError code, const std::string& what) { throw MalformedEnvelope(code, what); }

void require_field(bool ok, const std::string& what) {
  if (!ok) fail(EnvelopeError::invalid_field, what);
}

// Checks the payload is exactly `expected` bytes long.
void require_length(std::span<const std::uint8_t> payload, std::size_t expected) {
  if (payload.size() < expected) {
    fail(EnvelopeError::truncated, "payload has " + std::to_string(payload.size()) + " bytes, expected " +
                                       std::to_string(expected));
  }
  if (payload.size() > expected) {
    fail(EnvelopeError::length_mismatch, "payload has " + std::to_string(payload.size()) + " bytes, expected " +
                                             std::to_string(expected));
  }
}

std::vector<Element> read_packed(std::span<const std::uint8_t> payload, std::size_t count, unsigned m) {
  BitReader r(payload);
  std::vector<Element> values(count);
  for (auto& v : values) v = static_cast<Element>(r.get(m));
  if (!r.at_clean_end()) fail(EnvelopeError::length_mismatch, "nonzero padding bits");
  return values;
}

BitVec read_bits(std::span<const std::uint8_t> payload, std::size_t nbits) {
  require_length(payload, bytes_for_bits(nbits));
  try {
    return BitVec::from_bytes(payload, nbits);
  } catch (const MalformedInput& e) {
    fail(EnvelopeError::length_mismatch, e.what());
  }
}

void check_bch(unsigned m, unsigned t) {
  require_field(m >= gf2m::kMinDegree && m <= gf2m::kMaxDegree, "m out of range");
  require_field(t >= 1 && 2 * std::uint64_t{t} + 1 <= (std::uint64_t{1} << m) - 1, "t out of range for m");
}

void check_hamming(unsigned m, unsigned t) {
  check_bch(m, t);
  require_field(m <= kMaxHammingDegree, "Hamming words are limited to m <= 20");
}

}  // namespace

const char* to_string(EnvelopeError e) noexcept {
  switch (e) {
    case EnvelopeError::bad_magic: return "bad magic";
    case EnvelopeError::unknown_scheme: return "unknown scheme";
    case EnvelopeError::truncated: return "truncated";
    case EnvelopeError::length_mismatch: return "length mismatch";
    case EnvelopeError::invalid_field: return "invalid field";
  }
  return "unknown";
}

MalformedEnvelope::MalformedEnvelope(EnvelopeError code, const std::string& what)
    : MalformedInput(std::string("malformed envelope (") + to_string(code) + "): " + what), code_(code) {}

SchemeId scheme_of(const Envelope& env) noexcept {
  return std::visit(Overloaded{
                        [](const HammingSyndromeEnvelope&) { return SchemeId::hamming_syndrome; },
                        [](const CodeOffsetEnvelope&) { return SchemeId::code_offset; },
                        [](const PermutedEnvelope&) { return SchemeId::permuted; },
                        [](const PinSketchEnvelope&) { return SchemeId::pinsketch; },
                        [](const IjsEnvelope&) { return SchemeId::ijs; },
                        [](const EditEnvelope&) { return SchemeId::edit; },
                        [](const OrigJsEnvelope&) { return SchemeId::origjs; },
                    },
                    env);
}

std::vector<std::uint8_t> serialize(const Envelope& env) {
  std::vector<std::uint8_t> out;
  std::visit(Overloaded{
                 [&](const HammingSyndromeEnvelope& e) {
                   if (e.sketch.syn_bits.size() != std::size_t{e.m} * e.t) throw BadParameter("syndrome length");
                   put_header(out, SchemeId::hamming_syndrome, e.m, e.t);
                   append(out, e.sketch.syn_bits.to_bytes());
                 },
                 [&](const CodeOffsetEnvelope& e) {
                   if (e.sketch.shift.size() != (std::size_t{1} << e.m) - 1) throw BadParameter("shift length");
                   put_header(out, SchemeId::code_offset, e.m, e.t);
                   append(out, e.sketch.shift.to_bytes());
                 },
                 [&](const PermutedEnvelope& e) {
                   if (e.sketch.perm.size() != (std::size_t{1} << e.m) - 1) throw BadParameter("permutation length");
                   if (e.sketch.syn_bits.size() != std::size_t{e.m} * e.t) throw BadParameter("syndrome length");
                   put_header(out, SchemeId::permuted, e.m, e.t);
                   for (auto p : e.sketch.perm) put_be(out, p, 4);
                   append(out, e.sketch.syn_bits.to_bytes());
                 },
                 [&](const PinSketchEnvelope& e) {
                   put_header(out, SchemeId::pinsketch, e.m, e.sketch.t);
                   put_packed(out, e.sketch.syn.odd_sums, e.m);
                 },
                 [&](const IjsEnvelope& e) {
                   put_header(out, SchemeId::ijs, e.m, e.sketch.t);
                   put_be(out, e.sketch.s, 4);
                   put_packed(out, e.sketch.top_coeffs, e.m);
                 },
                 [&](const EditEnvelope& e) {
                   put_header(out, SchemeId::edit, e.m, e.sketch.t_edit);
                   append(out, edit::serialize_edit_payload(e.sketch));
                 },
                 [&](const OrigJsEnvelope& e) {
                   put_header(out, SchemeId::origjs, e.m, e.sketch.t);
                   put_be(out, e.sketch.s, 4);
                   put_be(out, e.sketch.r, 4);
                   BitWriter w;
                   for (const auto& [x, y] : e.sketch.pairs) {
                     w.put(x, e.m);
                     w.put(y, e.m);
                   }
                   append(out, w.finish());
                 },
             },
             env);
  return out;
}

Envelope deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) fail(EnvelopeError::truncated, "shorter than the magic");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) fail(EnvelopeError::bad_magic, "not FZX1");
  if (bytes.size() < kHeaderBytes) fail(EnvelopeError::truncated, "header cut short");
  const auto id = bytes[4];
  const unsigned m = bytes[5];
  const auto t = static_cast<unsigned>(get_be(bytes, 6, 2));
  auto rest = bytes.subspan(kHeaderBytes);

  // Reads a fixed-size aux header and advances past it.
  auto take_aux = [&](std::size_t n) {
    if (rest.size() < n) fail(EnvelopeError::truncated, "aux header cut short");
    const auto aux = rest.first(n);
    rest = rest.subspan(n);
    return aux;
  };

  switch (static_cast<SchemeId>(id)) {
    case SchemeId::hamming_syndrome: {
      check_hamming(m, t);
      return HammingSyndromeEnvelope{m, t, {read_bits(rest, std::size_t{m} * t)}};
    }
    case SchemeId::code_offset: {
      check_hamming(m, t);
      return CodeOffsetEnvelope{m, t, {read_bits(rest, (std::size_t{1} << m) - 1)}};
    }
    case SchemeId::permuted: {
      check_hamming(m, t);
      const std::size_t n = (std::size_t{1} << m) - 1;
      const auto perm_bytes = take_aux(4 * n);
      std::vector<std::uint32_t> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(get_be(perm_bytes, 4 * i, 4));
      require_field(hamming::is_permutation(perm), "not a permutation of the positions");
      return PermutedEnvelope{m, t, {std::move(perm), read_bits(rest, std::size_t{m} * t)}};
    }
    case SchemeId::pinsketch: {
      check_bch(m, t);
      require_length(rest, bytes_for_bits(std::uint64_t{m} * t));
      return PinSketchEnvelope{m, {t, {read_packed(rest, t, m)}}};
    }
    case SchemeId::ijs: {
      require_field(m >= gf2m::kMinDegree && m <= gf2m::kMaxDegree, "m out of range");
      const auto s = static_cast<unsigned>(get_be(take_aux(4), 0, 4));
      require_field(t % 2 == 0 && t <= s && s <= (std::uint64_t{1} << m) - 1, "IJS s and t out of range");
      require_length(rest, bytes_for_bits(std::uint64_t{m} * t));
      return IjsEnvelope{m, {s, t, read_packed(rest, t, m)}};
    }
    case SchemeId::edit: {
      require_field(m >= gf2m::kMinDegree && m <= gf2m::kMaxDegree, "m out of range");
      if (rest.size() < 8) fail(EnvelopeError::truncated, "edit header cut short");
      const auto c = static_cast<unsigned>(get_be(rest, 4, 2));
      require_field(c >= 1 && (m - 1) % c == 0 && (m - 1) / c >= 1 && (m - 1) / c <= 8,
                    "m is not c * bits_per_symbol + 1");
      const edit::Alphabet a{(m - 1) / c};
      const auto n = static_cast<std::uint32_t>(get_be(rest, 0, 4));
      const auto t_edit = static_cast<unsigned>(get_be(rest, 6, 2));
      require_field(t_edit == t, "header t differs from payload t_edit");
      require_field(t_edit >= 1 && n >= c, "edit n, c, t out of range");
      const std::uint64_t t_set = edit::set_capacity(c, t_edit);
      require_field(2 * t_set + 1 <= (std::uint64_t{1} << m) - 1, "edit capacity too large for m");
      const std::uint64_t count = (std::uint64_t{n} + c - 1) / c;
      require_length(rest, bytes_for_bits(64 + t_set * m + count * edit::index_width(n, c)));
      edit::EditSketch sk;
      try {
        sk = edit::parse_edit_payload(rest, a);
      } catch (const MalformedInput& e) {
        fail(EnvelopeError::length_mismatch, e.what());
      }
      return EditEnvelope{m, std::move(sk)};
    }
    case SchemeId::origjs: {
      require_field(m >= gf2m::kMinDegree && m <= gf2m::kMaxDegree, "m out of range");
      const auto aux = take_aux(8);
      const auto s = static_cast<unsigned>(get_be(aux, 0, 4));
      const auto r = static_cast<unsigned>(get_be(aux, 4, 4));
      require_field(s < r && r <= (std::uint64_t{1} << m) - 1 && t <= s, "original JS s, r, t out of range");
      require_length(rest, bytes_for_bits(2 * std::uint64_t{m} * r));
      const auto flat = read_packed(rest, 2 * std::size_t{r}, m);
      setdiff::OrigJsSketchData sk{s, r, t, {}};
      for (std::size_t i = 0; i < r; ++i) {
        const Element x = flat[2 * i];
        require_field(x != 0 && (i == 0 || flat[2 * i - 2] < x), "pairs must have distinct sorted nonzero x");
        sk.pairs.emplace_back(x, flat[2 * i + 1]);
      }
      return OrigJsEnvelope{m, std::move(sk)};
    }
  }
  fail(EnvelopeError::unknown_scheme, "scheme id " + std::to_string(id));
}

ReconcileReport reconcile_respond(const setdiff::ElementSet& local, const Envelope& env) {
  const auto* pin = std::get_if<PinSketchEnvelope>(&env);
  if (pin == nullptr) throw BadParameter("reconciliation needs a PinSketch envelope");
  if (local.field().degree() != pin->m) throw BadParameter("local set and sketch use different fields");
  const setdiff::ElementSet remote = setdiff::pinsketch_rec(local, pin->sketch);
  return {setdiff::set_minus(local, remote), setdiff::set_minus(remote, local)};
}

}  // namespace fzx::app
