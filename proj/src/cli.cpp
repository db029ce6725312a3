#include <CLI11.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "fzx/app.hpp"
#include "fzx/entropy.hpp"

namespace fzx::app {

using setdiff::ElementSet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitDecode = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitBadParam = 4;

enum class Kind { hamming_syn, hamming_offset, hamming_perm, pinsketch, ijs, origjs, edit };

const std::map<std::string, Kind> kSchemeNames = {
    {"hamming-syn", Kind::hamming_syn}, {"hamming-offset", Kind::hamming_offset},
    {"hamming-perm", Kind::hamming_perm}, {"pinsketch", Kind::pinsketch},
    {"ijs", Kind::ijs},                 {"origjs", Kind::origjs},
    {"edit", Kind::edit},
};

struct Options {
  std::string scheme = "pinsketch";
  unsigned m = 0;
  unsigned t = 0;
  unsigned c = 0;
  unsigned r = 0;
  unsigned s = 0;
  std::uint32_t n = 0;
  std::optional<std::uint64_t> seed;
  std::string input;
  std::string output;
  std::string sketch;
  std::string helper;
  std::string local;
  unsigned out_bits = 0;
  std::optional<double> eps;
  std::optional<double> entropy;
  std::string alphabet = "bytes";
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  if (path.empty()) throw BadParameter("missing input file");
  std::ifstream f(path, std::ios::binary);
  if (!f) throw MalformedInput("cannot read " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string read_text(const std::string& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream f(path, std::ios::binary);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("cannot write " + path);
}

void emit(const Options& o, std::ostream& out, std::span<const std::uint8_t> bytes) {
  if (o.output.empty()) {
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  } else {
    write_file(o.output, bytes);
  }
}

std::vector<std::uint8_t> text_bytes(const std::string& s) { return {s.begin(), s.end()}; }

Kind kind_of(const std::string& name) {
  const auto it = kSchemeNames.find(name);
  if (it == kSchemeNames.end()) throw BadParameter("unknown scheme " + name);
  return it->second;
}

Kind kind_of(const Envelope& env) {
  switch (scheme_of(env)) {
    case SchemeId::hamming_syndrome: return Kind::hamming_syn;
    case SchemeId::code_offset: return Kind::hamming_offset;
    case SchemeId::permuted: return Kind::hamming_perm;
    case SchemeId::pinsketch: return Kind::pinsketch;
    case SchemeId::ijs: return Kind::ijs;
    case SchemeId::edit: return Kind::edit;
    case SchemeId::origjs: return Kind::origjs;
  }
  throw InternalFailure("unhandled scheme");
}

bool is_hamming(Kind k) { return k == Kind::hamming_syn || k == Kind::hamming_offset || k == Kind::hamming_perm; }
bool is_set(Kind k) { return k == Kind::pinsketch || k == Kind::ijs || k == Kind::origjs; }

edit::Alphabet alphabet_of(const std::string& name) {
  if (name == "binary") return edit::Alphabet::binary();
  if (name == "bytes") return edit::Alphabet::bytes();
  throw BadParameter("alphabet must be binary or bytes");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw BadParameter(what);
}

// Binary-alphabet strings are files of '0'/'1' characters; whitespace is ignored.
std::string read_edit_string(const std::vector<std::uint8_t>& bytes, edit::Alphabet a) {
  if (a == edit::Alphabet::bytes()) return {bytes.begin(), bytes.end()};
  std::string w;
  for (auto b : bytes) {
    if (std::isspace(b)) continue;
    if (b != '0' && b != '1') throw MalformedInput("binary strings may contain only 0 and 1");
    w.push_back(static_cast<char>(b - '0'));
  }
  return w;
}

std::vector<std::uint8_t> write_edit_string(const std::string& w, edit::Alphabet a) {
  if (a == edit::Alphabet::bytes()) return text_bytes(w);
  std::string s;
  for (char ch : w) s.push_back(static_cast<char>('0' + ch));
  s.push_back('\n');
  return text_bytes(s);
}

BitVec read_word(const std::vector<std::uint8_t>& bytes, std::size_t n) { return BitVec::from_bytes(bytes, n); }

ElementSet read_set(const std::string& path, unsigned m) { return parse_set_file(read_text(path), gf2m::Field(m)); }

unsigned edit_c(const Options& o, std::uint32_t n, edit::Alphabet a) {
  return o.c != 0 ? o.c : edit::optimal_shingle_len(n, o.t, a);
}

// ---------------------------------------------------------------------------
// Sketch and recovery for each scheme, all through envelopes.

Envelope make_envelope(Kind kind, const Options& o, const std::vector<std::uint8_t>& input, Rng& rng,
                       std::ostream& err) {
  if (is_hamming(kind)) {
    const auto p = hamming::HammingParams::bch(o.m, o.t);
    const BitVec w = read_word(input, p.n());
    if (kind == Kind::hamming_syn) return HammingSyndromeEnvelope{o.m, o.t, hamming::ss_syndrome(p, w)};
    if (kind == Kind::hamming_offset) return CodeOffsetEnvelope{o.m, o.t, hamming::ss_code_offset(p, w, rng)};
    return PermutedEnvelope{o.m, o.t, hamming::ss_permuted(p, w, rng)};
  }
  if (is_set(kind)) {
    const ElementSet w = parse_set_file(std::string(input.begin(), input.end()), gf2m::Field(o.m));
    if (kind == Kind::pinsketch) return PinSketchEnvelope{o.m, setdiff::pinsketch_ss(w, o.t)};
    if (kind == Kind::ijs) {
      if (o.t % 2 != 0) err << "warning: IJS capacity must be even; using t = " << setdiff::ijs_effective_t(o.t) << "\n";
      return IjsEnvelope{o.m, setdiff::ijs_ss(w, o.t)};
    }
    require(o.r != 0, "origjs needs --r");
    return OrigJsEnvelope{o.m, setdiff::origjs_ss(w, o.r, o.t, rng)};
  }
  const auto a = alphabet_of(o.alphabet);
  const std::string w = read_edit_string(input, a);
  require(w.size() >= 3 || o.c != 0, "edit strings need at least 3 symbols to choose c");
  const unsigned c = edit_c(o, static_cast<std::uint32_t>(w.size()), a);
  return EditEnvelope{edit::shingle_field_degree(c, a), edit::edit_ss(w, c, o.t, a)};
}

std::vector<std::uint8_t> recover_native(const Envelope& env, const std::vector<std::uint8_t>& input) {
  return std::visit(
      [&](const auto& e) -> std::vector<std::uint8_t> {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, HammingSyndromeEnvelope>) {
          const auto p = hamming::HammingParams::bch(e.m, e.t);
          return hamming::rec_syndrome(p, read_word(input, p.n()), e.sketch).to_bytes();
        } else if constexpr (std::is_same_v<E, CodeOffsetEnvelope>) {
          const auto p = hamming::HammingParams::bch(e.m, e.t);
          return hamming::rec_code_offset(p, read_word(input, p.n()), e.sketch).to_bytes();
        } else if constexpr (std::is_same_v<E, PermutedEnvelope>) {
          const auto p = hamming::HammingParams::bch(e.m, e.t);
          return hamming::rec_permuted(p, read_word(input, p.n()), e.sketch).to_bytes();
        } else if constexpr (std::is_same_v<E, EditEnvelope>) {
          const auto a = e.sketch.alphabet;
          return write_edit_string(edit::edit_rec(read_edit_string(input, a), e.sketch), a);
        } else {
          const gf2m::Field field(e.m);
          const ElementSet w_prime = parse_set_file(std::string(input.begin(), input.end()), field);
          if constexpr (std::is_same_v<E, PinSketchEnvelope>) {
            return text_bytes(format_set_file(setdiff::pinsketch_rec(w_prime, e.sketch)));
          } else if constexpr (std::is_same_v<E, IjsEnvelope>) {
            return text_bytes(format_set_file(setdiff::ijs_rec(w_prime, e.sketch)));
          } else {
            return text_bytes(format_set_file(setdiff::origjs_rec(w_prime, e.sketch)));
          }
        }
      },
      env);
}

// ---------------------------------------------------------------------------
// Entropy accounting.

struct LossReport {
  std::vector<std::pair<std::string, std::string>> rows;
  double loss = 0;
};

std::string fmt(double v) {
  std::ostringstream s;
  if (std::abs(v - std::round(v)) < 1e-9) {
    s << static_cast<long long>(std::llround(v));
  } else {
    s << std::fixed << std::setprecision(3) << v;
  }
  return s.str();
}

LossReport loss_report(Kind kind, const Options& o) {
  LossReport rep;
  auto row = [&](const std::string& k, double v) { rep.rows.emplace_back(k, fmt(v)); };
  rep.rows.emplace_back("scheme", o.scheme);
  if (kind == Kind::edit) {
    const auto a = alphabet_of(o.alphabet);
    require(o.n >= 3, "edit params need --n >= 3 (string length)");
    require(o.t >= 1, "edit params need --t >= 1");
    const unsigned c = edit_c(o, o.n, a);
    const unsigned width = edit::index_width(o.n, c);
    const double count = std::ceil(static_cast<double>(o.n) / c);
    const unsigned t_set = edit::set_capacity(c, o.t);
    const double element_bits = static_cast<double>(c) * a.bits_per_symbol + 1;
    rep.loss = edit::edit_entropy_loss(o.n, c, o.t, a);
    rep.rows.emplace_back("alphabet", o.alphabet);
    row("n", o.n);
    row("t_edit", o.t);
    row("c", c);
    row("t_set", t_set);
    row("sketch_bits", t_set * element_bits + count * width);
    row("entropy_loss_bits", rep.loss);
    row("stationary_c", edit::stationary_shingle_len(o.n, o.t, a));
    row("approx_min_loss_bits", edit::approx_min_edit_loss(o.n, o.t, a));
    return rep;
  }
  require(o.m >= gf2m::kMinDegree && o.m <= gf2m::kMaxDegree, "--m must be in [3, 32]");
  const double universe = std::ldexp(1.0, static_cast<int>(o.m)) - 1;
  row("m", o.m);
  if (is_hamming(kind)) {
    const auto p = hamming::HammingParams::bch(o.m, o.t);
    rep.loss = hamming::hamming_entropy_loss(p.n(), p.k());
    row("n", static_cast<double>(p.n()));
    row("k", static_cast<double>(p.k()));
    row("t", o.t);
    double bits = static_cast<double>(p.syndrome_bits());
    if (kind == Kind::hamming_offset) bits = static_cast<double>(p.n());
    if (kind == Kind::hamming_perm) bits += 32.0 * static_cast<double>(p.n());
    row("sketch_bits", bits);
  } else if (kind == Kind::pinsketch) {
    require(o.t >= 1, "--t must be at least 1");
    rep.loss = setdiff::setdiff_entropy_loss(setdiff::SetScheme::pinsketch, {universe, o.t});
    row("n", universe);
    row("t", o.t);
    row("sketch_bits", double(o.t) * o.m);
  } else if (kind == Kind::ijs) {
    const unsigned t = setdiff::ijs_effective_t(o.t);
    rep.loss = setdiff::setdiff_entropy_loss(setdiff::SetScheme::ijs, {universe + 1, t});
    row("n", universe + 1);
    row("t", t);
    row("sketch_bits", double(t) * o.m);
  } else {
    require(o.s != 0 && o.r != 0, "origjs params need --s and --r");
    rep.loss = setdiff::setdiff_entropy_loss(setdiff::SetScheme::origjs, {universe, o.t, o.s, o.r});
    row("n", universe);
    row("s", o.s);
    row("r", o.r);
    row("t", o.t);
    row("sketch_bits", 2.0 * o.m * o.r);
  }
  row("entropy_loss_bits", rep.loss);
  return rep;
}

// The parameters an envelope implies, for rep's entropy accounting.
Options options_from(const Envelope& env, Options o) {
  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        o.m = e.m;
        if constexpr (std::is_same_v<E, EditEnvelope>) {
          o.t = e.sketch.t_edit;
          o.c = e.sketch.c;
          o.n = e.sketch.s2.n;
          o.alphabet = e.sketch.alphabet == edit::Alphabet::binary() ? "binary" : "bytes";
        } else if constexpr (std::is_same_v<E, HammingSyndromeEnvelope> || std::is_same_v<E, CodeOffsetEnvelope> ||
                             std::is_same_v<E, PermutedEnvelope>) {
          o.t = e.t;
        } else {
          o.t = e.sketch.t;
          if constexpr (std::is_same_v<E, OrigJsEnvelope>) {
            o.s = e.sketch.s;
            o.r = e.sketch.r;
          }
        }
      },
      env);
  for (const auto& [name, k] : kSchemeNames) {
    if (k == kind_of(env)) o.scheme = name;
  }
  return o;
}

unsigned key_bits(Kind kind, const Options& o) {
  if (o.out_bits != 0) return o.out_bits;
  require(o.entropy.has_value() && o.eps.has_value(), "give --out-bits, or --entropy with --eps");
  const double residual = *o.entropy - loss_report(kind, o).loss;
  const unsigned l = entropy::max_extractable_bits(residual, *o.eps);
  require(l >= 1, "no key bits remain after the entropy loss");
  return l;
}

// ---------------------------------------------------------------------------
// Fuzzy extraction: every scheme's sketch is its serialized envelope.

template <class W>
struct Extraction {
  entropy::SecureSketch<W> ss;
  entropy::Encoder<W> encode;
  unsigned n_bits;
};

template <class W, class Make, class Rec>
entropy::SecureSketch<W> envelope_scheme(Make make, Rec rec) {
  return {
      [make](const W& w, Rng& rng) { return serialize(make(w, rng)); },
      [rec](const W& w_prime, std::span<const std::uint8_t> bytes) { return rec(w_prime, deserialize(bytes)); },
  };
}

template <class E>
const E& expect(const Envelope& env) {
  const auto* e = std::get_if<E>(&env);
  if (e == nullptr) throw MalformedInput("helper holds a sketch for a different scheme");
  return *e;
}

Extraction<BitVec> hamming_extraction(Kind kind, unsigned m, unsigned t) {
  const auto p = hamming::HammingParams::bch(m, t);
  auto make = [=](const BitVec& w, Rng& rng) -> Envelope {
    if (kind == Kind::hamming_syn) return HammingSyndromeEnvelope{m, t, hamming::ss_syndrome(p, w)};
    if (kind == Kind::hamming_offset) return CodeOffsetEnvelope{m, t, hamming::ss_code_offset(p, w, rng)};
    return PermutedEnvelope{m, t, hamming::ss_permuted(p, w, rng)};
  };
  auto rec = [=](const BitVec& w_prime, const Envelope& env) {
    if (kind == Kind::hamming_syn) return hamming::rec_syndrome(p, w_prime, expect<HammingSyndromeEnvelope>(env).sketch);
    if (kind == Kind::hamming_offset) return hamming::rec_code_offset(p, w_prime, expect<CodeOffsetEnvelope>(env).sketch);
    return hamming::rec_permuted(p, w_prime, expect<PermutedEnvelope>(env).sketch);
  };
  return {envelope_scheme<BitVec>(make, rec), [](const BitVec& w) { return w; }, static_cast<unsigned>(p.n())};
}

Extraction<ElementSet> set_extraction(Kind kind, const Options& o) {
  const unsigned m = o.m;
  const unsigned t = o.t;
  const unsigned r = o.r;
  auto make = [=](const ElementSet& w, Rng& rng) -> Envelope {
    if (kind == Kind::pinsketch) return PinSketchEnvelope{m, setdiff::pinsketch_ss(w, t)};
    if (kind == Kind::ijs) return IjsEnvelope{m, setdiff::ijs_ss(w, t)};
    return OrigJsEnvelope{m, setdiff::origjs_ss(w, r, t, rng)};
  };
  auto rec = [=](const ElementSet& w_prime, const Envelope& env) {
    if (kind == Kind::pinsketch) return setdiff::pinsketch_rec(w_prime, expect<PinSketchEnvelope>(env).sketch);
    if (kind == Kind::ijs) return setdiff::ijs_rec(w_prime, expect<IjsEnvelope>(env).sketch);
    return setdiff::origjs_rec(w_prime, expect<OrigJsEnvelope>(env).sketch);
  };
  return {envelope_scheme<ElementSet>(make, rec), setdiff::encode_set,
          setdiff::set_encoding_bits(gf2m::Field(m))};
}

Extraction<std::string> edit_extraction(unsigned c, unsigned t, edit::Alphabet a) {
  auto make = [=](const std::string& w, Rng&) -> Envelope {
    return EditEnvelope{edit::shingle_field_degree(c, a), edit::edit_ss(w, c, t, a)};
  };
  auto rec = [](const std::string& w_prime, const Envelope& env) {
    return edit::edit_rec(w_prime, expect<EditEnvelope>(env).sketch);
  };
  auto encode = [=](const std::string& w) { return edit::encode_shingles(edit::shingle(w, c), a); };
  return {envelope_scheme<std::string>(make, rec), encode, edit::shingle_encoding_bits(c, a)};
}

void print_key(std::ostream& out, const BitVec& r) { out << to_hex(entropy::bits_to_int_bytes(r)) << "\n"; }

template <class W>
void run_gen(const Extraction<W>& x, const W& w, unsigned l, const Options& o, Rng& rng, std::ostream& out) {
  const entropy::UHash hash(x.n_bits, l);
  const auto key = entropy::compose_gen(x.ss, w, x.encode, hash, rng);
  write_file(o.output, key.helper);
  print_key(out, key.r);
}

template <class W>
void run_rep(const Extraction<W>& x, const W& w_prime, unsigned l, std::span<const std::uint8_t> helper,
             std::ostream& out) {
  const entropy::UHash hash(x.n_bits, l);
  print_key(out, entropy::compose_rep(x.ss, w_prime, helper, x.encode, hash));
}

// Reads the envelope inside a helper without knowing the seed length.
Envelope helper_envelope(std::span<const std::uint8_t> helper) {
  if (helper.size() < 2) throw MalformedInput("helper too short");
  const std::size_t len = (std::size_t{helper[0]} << 8) | helper[1];
  if (helper.size() < 2 + len) throw MalformedInput("helper sketch truncated");
  return deserialize(helper.subspan(2, len));
}

// ---------------------------------------------------------------------------

int cmd_sketch(const Options& o, Rng& rng, std::ostream& out, std::ostream& err) {
  const Kind kind = kind_of(o.scheme);
  emit(o, out, serialize(make_envelope(kind, o, read_file(o.input), rng, err)));
  return kExitOk;
}

int cmd_recover(const Options& o, std::ostream& out) {
  const Envelope env = deserialize(read_file(o.sketch));
  emit(o, out, recover_native(env, read_file(o.input)));
  return kExitOk;
}

int cmd_gen(const Options& o, Rng& rng, std::ostream& out, std::ostream& err) {
  const Kind kind = kind_of(o.scheme);
  const auto input = read_file(o.input);
  if (is_hamming(kind)) {
    const unsigned l = key_bits(kind, o);
    const auto x = hamming_extraction(kind, o.m, o.t);
    run_gen(x, read_word(input, x.n_bits), l, o, rng, out);
  } else if (is_set(kind)) {
    if (kind == Kind::ijs && o.t % 2 != 0) {
      err << "warning: IJS capacity must be even; using t = " << setdiff::ijs_effective_t(o.t) << "\n";
    }
    const unsigned l = key_bits(kind, o);
    const ElementSet w = parse_set_file(std::string(input.begin(), input.end()), gf2m::Field(o.m));
    run_gen(set_extraction(kind, o), w, l, o, rng, out);
  } else {
    const auto a = alphabet_of(o.alphabet);
    const std::string w = read_edit_string(input, a);
    Options eo = o;
    eo.n = static_cast<std::uint32_t>(w.size());
    eo.c = edit_c(o, eo.n, a);
    const unsigned l = key_bits(kind, eo);
    run_gen(edit_extraction(eo.c, o.t, a), w, l, o, rng, out);
  }
  return kExitOk;
}

int cmd_rep(const Options& cli, std::ostream& out) {
  const auto helper = read_file(cli.helper);
  const Envelope env = helper_envelope(helper);
  const Options o = options_from(env, cli);
  const Kind kind = kind_of(env);
  const unsigned l = key_bits(kind, o);
  const auto input = read_file(o.input);
  if (is_hamming(kind)) {
    const auto x = hamming_extraction(kind, o.m, o.t);
    run_rep(x, read_word(input, x.n_bits), l, helper, out);
  } else if (is_set(kind)) {
    run_rep(set_extraction(kind, o), parse_set_file(std::string(input.begin(), input.end()), gf2m::Field(o.m)), l,
            helper, out);
  } else {
    const auto a = alphabet_of(o.alphabet);
    run_rep(edit_extraction(o.c, o.t, a), read_edit_string(input, a), l, helper, out);
  }
  return kExitOk;
}

int cmd_reconcile(const Options& o, std::ostream& out) {
  const Envelope env = deserialize(read_file(o.sketch));
  const auto* pin = std::get_if<PinSketchEnvelope>(&env);
  if (pin == nullptr) throw BadParameter("reconcile needs a PinSketch sketch");
  const ReconcileReport rep = reconcile_respond(read_set(o.local, pin->m), env);
  for (auto x : rep.local_only.elems()) out << "local_only " << std::hex << x << std::dec << "\n";
  for (auto x : rep.remote_only.elems()) out << "remote_only " << std::hex << x << std::dec << "\n";
  return kExitOk;
}

int cmd_params(const Options& o, std::ostream& out) {
  const Kind kind = kind_of(o.scheme);
  const LossReport rep = loss_report(kind, o);
  for (const auto& [k, v] : rep.rows) out << k << " " << v << "\n";
  if (o.entropy) {
    const double residual = *o.entropy - rep.loss;
    out << "residual_entropy_bits " << fmt(residual) << "\n";
    if (o.eps) out << "extractable_bits " << entropy::max_extractable_bits(residual, *o.eps) << "\n";
  }
  return kExitOk;
}

void add_scheme_options(CLI::App* cmd, Options& o) {
  std::vector<std::string> names;
  for (const auto& [name, k] : kSchemeNames) names.push_back(name);
  cmd->add_option("--scheme", o.scheme, "sketch scheme")->check(CLI::IsMember(names));
  cmd->add_option("--m", o.m, "field degree (set and Hamming schemes)");
  cmd->add_option("--t", o.t, "error capacity");
  cmd->add_option("--c", o.c, "shingle length (edit; default: optimal)");
  cmd->add_option("--r", o.r, "sketch size (origjs)");
  cmd->add_option("--alphabet", o.alphabet, "edit alphabet")->check(CLI::IsMember({"binary", "bytes"}));
}

void add_key_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--out-bits", o.out_bits, "key length in bits");
  cmd->add_option("--eps", o.eps, "target distance from uniform");
  cmd->add_option("--entropy", o.entropy, "min-entropy of the input in bits");
}

}  // namespace

setdiff::ElementSet parse_set_file(const std::string& text, const gf2m::Field& field) {
  std::vector<gf2m::Element> elems;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v, 16);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.size() > 8) {
      throw MalformedInput("line " + std::to_string(lineno) + ": not a hex element");
    }
    elems.push_back(static_cast<gf2m::Element>(v));
  }
  try {
    return ElementSet(field, std::move(elems));
  } catch (const BadParameter& e) {
    throw MalformedInput(std::string("set file: ") + e.what());
  }
}

std::string format_set_file(const setdiff::ElementSet& set) {
  std::ostringstream s;
  s << std::hex;
  for (auto x : set.elems()) s << x << "\n";
  return s.str();
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"fzx: secure sketches and fuzzy extractors for noisy inputs"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "RNG seed (default: OS entropy)");

  auto* sketch = app.add_subcommand("sketch", "write the secure sketch of an input");
  add_scheme_options(sketch, o);
  sketch->add_option("-i,--input", o.input, "input file")->required();
  sketch->add_option("-o,--output", o.output, "sketch file")->required();

  auto* recover = app.add_subcommand("recover", "recover the original from a close input and its sketch");
  recover->add_option("-s,--sketch", o.sketch, "sketch file")->required();
  recover->add_option("-i,--input", o.input, "close input file")->required();
  recover->add_option("-o,--output", o.output, "recovered output (default: stdout)");

  auto* gen = app.add_subcommand("gen", "derive a key and write the public helper");
  add_scheme_options(gen, o);
  add_key_options(gen, o);
  gen->add_option("-i,--input", o.input, "input file")->required();
  gen->add_option("-o,--output,--helper", o.output, "helper file")->required();

  auto* rep = app.add_subcommand("rep", "reproduce a key from a close input and the helper");
  add_key_options(rep, o);
  rep->add_option("--helper", o.helper, "helper file")->required();
  rep->add_option("-i,--input", o.input, "close input file")->required();

  auto* reconcile = app.add_subcommand("reconcile", "report the difference between a local set and a PinSketch");
  reconcile->add_option("--local", o.local, "local set file")->required();
  reconcile->add_option("-s,--sketch", o.sketch, "remote PinSketch file")->required();

  auto* params = app.add_subcommand("params", "print sketch size and entropy loss");
  add_scheme_options(params, o);
  add_key_options(params, o);
  params->add_option("--n", o.n, "string length (edit)");
  params->add_option("--s", o.s, "set size (origjs)");

  // Options after the subcommand name are also accepted before it.
  for (auto* cmd : {sketch, recover, gen, rep, reconcile, params}) cmd->add_option("--seed", o.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadParam;
  }

  try {
    Rng rng = o.seed ? Rng(*o.seed) : seeded_from_os();
    if (*sketch) return cmd_sketch(o, rng, out, err);
    if (*recover) return cmd_recover(o, out);
    if (*gen) return cmd_gen(o, rng, out, err);
    if (*rep) return cmd_rep(o, out);
    if (*reconcile) return cmd_reconcile(o, out);
    return cmd_params(o, out);
  } catch (const DecodeFailure& e) {
    err << "decode failure: " << e.what() << "\n";
    return kExitDecode;
  } catch (const MalformedInput& e) {
    err << "malformed input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const BadParameter& e) {
    err << "bad parameter: " << e.what() << "\n";
    return kExitBadParam;
  } catch (const ArithmeticError& e) {
    err << "bad parameter: " << e.what() << "\n";
    return kExitBadParam;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace fzx::app
