#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fzx/edit.hpp"
#include "fzx/error.hpp"
#include "fzx/hamming.hpp"
#include "fzx/setdiff.hpp"

namespace fzx::app {

enum class SchemeId : std::uint8_t {
  hamming_syndrome = 0x01,
  code_offset = 0x02,
  pinsketch = 0x03,
  ijs = 0x04,
  edit = 0x05,
  permuted = 0x06,
  origjs = 0x07,
};

enum class EnvelopeError { bad_magic, unknown_scheme, truncated, length_mismatch, invalid_field };

const char* to_string(EnvelopeError e) noexcept;

class MalformedEnvelope : public MalformedInput {
 public:
  MalformedEnvelope(EnvelopeError code, const std::string& what);
  EnvelopeError code() const noexcept { return code_; }

 private:
  EnvelopeError code_;
};

// Hamming envelopes describe BCH(m, t) words of n = 2^m - 1 bits.
struct HammingSyndromeEnvelope {
  unsigned m = 0;
  unsigned t = 0;
  hamming::SyndromeSketch sketch;
  friend bool operator==(const HammingSyndromeEnvelope&, const HammingSyndromeEnvelope&) = default;
};

struct CodeOffsetEnvelope {
  unsigned m = 0;
  unsigned t = 0;
  hamming::CodeOffsetSketch sketch;
  friend bool operator==(const CodeOffsetEnvelope&, const CodeOffsetEnvelope&) = default;
};

struct PermutedEnvelope {
  unsigned m = 0;
  unsigned t = 0;
  hamming::PermutedSketch sketch;
  friend bool operator==(const PermutedEnvelope&, const PermutedEnvelope&) = default;
};

struct PinSketchEnvelope {
  unsigned m = 0;
  setdiff::PinSketchData sketch;
  friend bool operator==(const PinSketchEnvelope&, const PinSketchEnvelope&) = default;
};

struct IjsEnvelope {
  unsigned m = 0;
  setdiff::IjsSketchData sketch;
  friend bool operator==(const IjsEnvelope&, const IjsEnvelope&) = default;
};

/// m = c * bits_per_symbol + 1 identifies the alphabet.
struct EditEnvelope {
  unsigned m = 0;
  edit::EditSketch sketch;
  friend bool operator==(const EditEnvelope&, const EditEnvelope&) = default;
};

struct OrigJsEnvelope {
  unsigned m = 0;
  setdiff::OrigJsSketchData sketch;
  friend bool operator==(const OrigJsEnvelope&, const OrigJsEnvelope&) = default;
};

using Envelope = std::variant<HammingSyndromeEnvelope, CodeOffsetEnvelope, PermutedEnvelope, PinSketchEnvelope,
                              IjsEnvelope, EditEnvelope, OrigJsEnvelope>;

SchemeId scheme_of(const Envelope& env) noexcept;

/// "FZX1" | scheme u8 | m u8 | t u16 | aux | payload, big-endian.
std::vector<std::uint8_t> serialize(const Envelope& env);
/// Throws MalformedEnvelope; the code tells bad magic, unknown scheme,
/// truncation, length mismatch and out-of-range fields apart.
Envelope deserialize(std::span<const std::uint8_t> bytes);

struct ReconcileReport {
  setdiff::ElementSet local_only;
  setdiff::ElementSet remote_only;
};

/// Recovers the remote set from a PinSketch envelope and splits the
/// difference. BadParameter for other schemes or a field mismatch.
ReconcileReport reconcile_respond(const setdiff::ElementSet& local, const Envelope& env);

/// Set files: one lowercase hex element per line; blank lines ignored.
setdiff::ElementSet parse_set_file(const std::string& text, const gf2m::Field& field);
std::string format_set_file(const setdiff::ElementSet& set);

/// Exit codes: 0 success, 1 internal error, 2 decode failure,
/// 3 malformed input, 4 bad parameters.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fzx::app
