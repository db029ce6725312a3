#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "fzx/app.hpp"
#include "fzx/codec.hpp"
#include "fzx/entropy.hpp"
#include "fzx/error.hpp"

namespace py = pybind11;
using namespace fzx;
using setdiff::ElementSet;

namespace {

using Bytes = std::vector<std::uint8_t>;

Rng make_rng(std::optional<std::uint64_t> seed) { return seed ? Rng(*seed) : seeded_from_os(); }

py::bytes to_py(const Bytes& b) { return {reinterpret_cast<const char*>(b.data()), b.size()}; }

Bytes from_py(const py::bytes& b) {
  const std::string s = b;
  return {s.begin(), s.end()};
}

ElementSet make_set(unsigned m, std::vector<gf2m::Element> elems) { return ElementSet(gf2m::Field(m), std::move(elems)); }

edit::Alphabet alphabet_of(bool binary) { return binary ? edit::Alphabet::binary() : edit::Alphabet::bytes(); }

// Binary edit strings are '0'/'1' text at the Python boundary.
std::string to_symbols(const std::string& s, bool binary) {
  if (!binary) return s;
  std::string out;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw BadParameter("binary strings hold only '0' and '1'");
    out.push_back(static_cast<char>(ch - '0'));
  }
  return out;
}

std::string from_symbols(const std::string& s, bool binary) {
  if (!binary) return s;
  std::string out;
  for (char ch : s) out.push_back(static_cast<char>('0' + ch));
  return out;
}

hamming::HammingParams hamming_of(const app::Envelope& env) {
  return std::visit(
      [](const auto& e) -> hamming::HammingParams {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, app::HammingSyndromeEnvelope> || std::is_same_v<E, app::CodeOffsetEnvelope> ||
                      std::is_same_v<E, app::PermutedEnvelope>) {
          return hamming::HammingParams::bch(e.m, e.t);
        } else {
          throw BadParameter("not a Hamming envelope");
        }
      },
      env);
}

py::bytes hamming_sketch(const std::string& bits, unsigned m, unsigned t, const std::string& scheme,
                         std::optional<std::uint64_t> seed) {
  const auto p = hamming::HammingParams::bch(m, t);
  const auto w = BitVec::from_string(bits);
  auto rng = make_rng(seed);
  if (scheme == "syn") return to_py(app::serialize(app::HammingSyndromeEnvelope{m, t, hamming::ss_syndrome(p, w)}));
  if (scheme == "offset") return to_py(app::serialize(app::CodeOffsetEnvelope{m, t, hamming::ss_code_offset(p, w, rng)}));
  if (scheme == "perm") return to_py(app::serialize(app::PermutedEnvelope{m, t, hamming::ss_permuted(p, w, rng)}));
  throw BadParameter("scheme must be syn, offset or perm");
}

std::string hamming_recover(const py::bytes& envelope, const std::string& bits) {
  const auto env = app::deserialize(from_py(envelope));
  const auto p = hamming_of(env);
  const auto wp = BitVec::from_string(bits);
  if (auto* e = std::get_if<app::HammingSyndromeEnvelope>(&env)) return hamming::rec_syndrome(p, wp, e->sketch).to_string();
  if (auto* e = std::get_if<app::CodeOffsetEnvelope>(&env)) return hamming::rec_code_offset(p, wp, e->sketch).to_string();
  return hamming::rec_permuted(p, wp, std::get<app::PermutedEnvelope>(env).sketch).to_string();
}

py::bytes set_sketch(const std::vector<gf2m::Element>& elems, unsigned m, unsigned t, const std::string& scheme,
                     unsigned r, std::optional<std::uint64_t> seed) {
  const auto w = make_set(m, elems);
  if (scheme == "pinsketch") return to_py(app::serialize(app::PinSketchEnvelope{m, setdiff::pinsketch_ss(w, t)}));
  if (scheme == "ijs") return to_py(app::serialize(app::IjsEnvelope{m, setdiff::ijs_ss(w, t)}));
  if (scheme == "origjs") {
    auto rng = make_rng(seed);
    return to_py(app::serialize(app::OrigJsEnvelope{m, setdiff::origjs_ss(w, r, t, rng)}));
  }
  throw BadParameter("scheme must be pinsketch, ijs or origjs");
}

std::vector<gf2m::Element> set_recover(const py::bytes& envelope, const std::vector<gf2m::Element>& elems) {
  const auto env = app::deserialize(from_py(envelope));
  if (auto* e = std::get_if<app::PinSketchEnvelope>(&env)) return setdiff::pinsketch_rec(make_set(e->m, elems), e->sketch).elems();
  if (auto* e = std::get_if<app::IjsEnvelope>(&env)) return setdiff::ijs_rec(make_set(e->m, elems), e->sketch).elems();
  if (auto* e = std::get_if<app::OrigJsEnvelope>(&env)) return setdiff::origjs_rec(make_set(e->m, elems), e->sketch).elems();
  throw BadParameter("not a set-difference envelope");
}

py::bytes edit_sketch(const std::string& text, unsigned t, std::optional<unsigned> c, bool binary) {
  const auto a = alphabet_of(binary);
  const auto w = to_symbols(text, binary);
  const unsigned len = c ? *c : edit::optimal_shingle_len(static_cast<std::uint32_t>(w.size()), t, a);
  return to_py(app::serialize(app::EditEnvelope{edit::shingle_field_degree(len, a), edit::edit_ss(w, len, t, a)}));
}

// str for the binary alphabet, bytes otherwise.
py::object edit_recover(const py::bytes& envelope, const std::string& text) {
  const auto env = app::deserialize(from_py(envelope));
  const auto* e = std::get_if<app::EditEnvelope>(&env);
  if (e == nullptr) throw BadParameter("not an edit envelope");
  const bool binary = e->sketch.alphabet == edit::Alphabet::binary();
  const auto w = edit::edit_rec(to_symbols(text, binary), e->sketch);
  if (binary) return py::str(from_symbols(w, true));
  return py::bytes(w);
}

py::tuple reconcile(const std::vector<gf2m::Element>& local, const py::bytes& envelope) {
  const auto env = app::deserialize(from_py(envelope));
  const auto* e = std::get_if<app::PinSketchEnvelope>(&env);
  if (e == nullptr) throw BadParameter("reconciliation needs a PinSketch envelope");
  const auto rep = app::reconcile_respond(make_set(e->m, local), env);
  return py::make_tuple(rep.local_only.elems(), rep.remote_only.elems());
}

entropy::FiniteDistribution distribution_of(const std::map<std::string, double>& probs) {
  return entropy::FiniteDistribution(std::map<entropy::Outcome, double>(probs.begin(), probs.end()));
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> all{"fzx"};
  all.insert(all.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : all) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = app::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(fzx, mod) {
  mod.doc() = "Secure sketches and fuzzy extractors for Hamming, set-difference and edit distance.";

  auto base = py::register_exception<Error>(mod, "Error");
  py::register_exception<DecodeFailure>(mod, "DecodeFailure", base.ptr());
  py::register_exception<MalformedInput>(mod, "MalformedInput", base.ptr());
  py::register_exception<BadParameter>(mod, "BadParameter", base.ptr());
  py::register_exception<ArithmeticError>(mod, "ArithmeticError", base.ptr());
  py::register_exception<InternalFailure>(mod, "InternalFailure", base.ptr());

  mod.def("field_mul", [](unsigned m, gf2m::Element a, gf2m::Element b) { return gf2m::Field(m).mul(a, b); },
          py::arg("m"), py::arg("a"), py::arg("b"));
  mod.def("field_inv", [](unsigned m, gf2m::Element a) { return gf2m::Field(m).inv(a); }, py::arg("m"), py::arg("a"));

  mod.def(
      "syndrome_from_support",
      [](unsigned m, unsigned t, const std::vector<gf2m::Element>& support) {
        return codec::syndrome_from_support(codec::BchCode::with_capacity(gf2m::Field(m), t), support).odd_sums;
      },
      py::arg("m"), py::arg("t"), py::arg("support"), "Odd power sums s_1, s_3, ..., s_{2t-1}.");
  mod.def(
      "support_from_syndrome",
      [](unsigned m, const std::vector<gf2m::Element>& odd_sums) {
        const codec::BchCode code = codec::BchCode::with_capacity(gf2m::Field(m), static_cast<unsigned>(odd_sums.size()));
        return codec::support_from_syndrome(code, codec::Syndrome{odd_sums});
      },
      py::arg("m"), py::arg("odd_sums"), "The unique support of weight <= t; raises DecodeFailure otherwise.");

  mod.def("hamming_sketch", &hamming_sketch, py::arg("bits"), py::arg("m"), py::arg("t"), py::arg("scheme") = "syn",
          py::arg("seed") = py::none(), "Envelope for a '0'/'1' string of length 2^m - 1.");
  mod.def("hamming_recover", &hamming_recover, py::arg("envelope"), py::arg("bits"));
  mod.def("set_sketch", &set_sketch, py::arg("elements"), py::arg("m"), py::arg("t"), py::arg("scheme") = "pinsketch",
          py::arg("r") = 0, py::arg("seed") = py::none());
  mod.def("set_recover", &set_recover, py::arg("envelope"), py::arg("elements"));
  mod.def("edit_sketch", &edit_sketch, py::arg("text"), py::arg("t"), py::arg("c") = py::none(),
          py::arg("binary") = false, "Shingle length defaults to the loss-minimizing c.");
  mod.def("edit_recover", &edit_recover, py::arg("envelope"), py::arg("text"));
  mod.def("reconcile", &reconcile, py::arg("local"), py::arg("envelope"), "(local_only, remote_only).");
  mod.def(
      "envelope_scheme", [](const py::bytes& envelope) {
        return static_cast<int>(app::scheme_of(app::deserialize(from_py(envelope))));
      },
      py::arg("envelope"));

  mod.def("min_entropy", [](const std::map<std::string, double>& p) { return entropy::min_entropy(distribution_of(p)); },
          py::arg("probs"));
  mod.def(
      "statistical_distance",
      [](const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
        return entropy::statistical_distance(distribution_of(a), distribution_of(b));
      },
      py::arg("a"), py::arg("b"));
  mod.def("max_extractable_bits", &entropy::max_extractable_bits, py::arg("residual_entropy"), py::arg("eps"));
  mod.def(
      "uhash",
      [](unsigned n, unsigned l, std::uint64_t key, std::uint64_t input) {
        return entropy::UHash(n, l).hash_small(key, input);
      },
      py::arg("n"), py::arg("l"), py::arg("key"), py::arg("input"), "Low l bits of key * input in GF(2^n), n <= 64.");

  mod.def("run_cli", &run_cli, py::arg("args"), "Runs the command line in process: (exit_code, stdout, stderr).");
}
