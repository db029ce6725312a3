#include <doctest.h>

#include <bitset>
#include <cmath>
#include <set>

#include "fzx/app.hpp"
#include "fzx/entropy.hpp"
#include "fzx/error.hpp"
#include "fzx/gf2m.hpp"

using namespace fzx;
using namespace fzx::entropy;

namespace {

FiniteDistribution dist(std::map<Outcome, double> p) { return FiniteDistribution(std::move(p)); }

// GF(2)[x] polynomials of degree < 520 for an independent irreducibility check.
using P2 = std::bitset<520>;

int deg(const P2& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[static_cast<std::size_t>(i)]) return i;
  }
  return -1;
}

P2 mod2(P2 a, const P2& f) {
  const int df = deg(f);
  for (int i = deg(a); i >= df; --i) {
    if (a[static_cast<std::size_t>(i)]) a ^= f << static_cast<std::size_t>(i - df);
  }
  return a;
}

P2 mulmod2(const P2& a, const P2& b, const P2& f) {
  P2 r;
  for (int i = 0; i <= deg(b); ++i) {
    if (b[static_cast<std::size_t>(i)]) r ^= a << static_cast<std::size_t>(i);
  }
  return mod2(r, f);
}

P2 gcd2(P2 a, P2 b) {
  while (deg(b) >= 0) {
    a = mod2(a, b);
    std::swap(a, b);
  }
  return a;
}

// Rabin: x^(2^n) = x mod f and gcd(x^(2^(n/p)) - x, f) = 1 for primes p | n.
bool rabin_irreducible(const P2& f) {
  const int n = deg(f);
  P2 x;
  x[1] = true;
  std::vector<P2> frob{mod2(x, f)};
  for (int i = 1; i <= n; ++i) frob.push_back(mulmod2(frob.back(), frob.back(), f));
  P2 last = frob[static_cast<std::size_t>(n)] ^ mod2(x, f);
  if (deg(last) >= 0) return false;
  int rest = n;
  for (int p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    P2 d = frob[static_cast<std::size_t>(n / p)] ^ mod2(x, f);
    if (deg(gcd2(f, d)) != 0) return false;
  }
  return true;
}

P2 poly_of(unsigned n, const std::vector<unsigned>& low) {
  P2 f;
  f[n] = true;
  for (auto e : low) f[e] = true;
  return f;
}

// Shift-and-add product over the modulus given by low terms.
std::vector<bool> naive_field_mul(const std::vector<bool>& a, const std::vector<bool>& b, unsigned n,
                                  const std::vector<unsigned>& low) {
  std::vector<bool> acc(n, false), x = a;
  for (unsigned i = 0; i < n; ++i) {
    if (b[i]) {
      for (unsigned j = 0; j < n; ++j) acc[j] = acc[j] ^ x[j];
    }
    const bool carry = x[n - 1];
    for (unsigned j = n - 1; j > 0; --j) x[j] = x[j - 1];
    x[0] = false;
    if (carry) {
      for (auto e : low) x[e] = !x[e];
    }
  }
  return acc;
}

// SD(<H_X(W), X>, <U_l, X>) from its definition, by full enumeration.
double naive_extractor_distance(const std::vector<double>& pw, const UHash& h) {
  const std::uint64_t keys = std::uint64_t{1} << h.n_bits();
  const std::uint64_t outs = std::uint64_t{1} << h.l_bits();
  double sd = 0;
  for (std::uint64_t x = 0; x < keys; ++x) {
    std::vector<double> p(outs, 0.0);
    for (std::uint64_t w = 0; w < pw.size(); ++w) p[h.hash_small(x, w)] += pw[w];
    for (double v : p) sd += std::abs(v - 1.0 / static_cast<double>(outs));
  }
  return sd / (2.0 * static_cast<double>(keys));
}

JointDistribution random_joint(Rng& rng, unsigned na, unsigned nb) {
  std::map<JointDistribution::Key, double> p;
  double total = 0;
  std::vector<std::pair<JointDistribution::Key, double>> raw;
  for (unsigned a = 0; a < na; ++a) {
    for (unsigned b = 0; b < nb; ++b) {
      // Sparse and skewed weights so conditionals differ.
      const double u = static_cast<double>(uniform_below(rng, 1000));
      const double w = uniform_below(rng, 3) == 0 ? 0.0 : u * u;
      raw.push_back({{outcome_of(a, 8), outcome_of(b, 8)}, w});
      total += w;
    }
  }
  if (total == 0) {
    raw[0].second = 1;
    total = 1;
  }
  for (auto& [k, w] : raw) {
    if (w > 0) p[k] = w / total;
  }
  return JointDistribution(std::move(p));
}

}  // namespace

TEST_CASE("statistical distance examples") {
  const auto u1 = FiniteDistribution::uniform_bits(1);
  CHECK(statistical_distance(u1, u1) == 0.0);
  CHECK(statistical_distance(FiniteDistribution::point_mass(outcome_of(0, 1)),
                             FiniteDistribution::point_mass(outcome_of(1, 1))) == doctest::Approx(1.0));
  const auto skew = dist({{outcome_of(0, 1), 0.75}, {outcome_of(1, 1), 0.25}});
  CHECK(statistical_distance(u1, skew) == doctest::Approx(0.5 * (0.25 + 0.25)));
  CHECK(statistical_distance(skew, u1) == statistical_distance(u1, skew));
}

TEST_CASE("statistical distance is a metric on random distributions") {
  Rng rng(20);
  auto draw = [&] {
    std::map<Outcome, double> p;
    double total = 0;
    for (unsigned v = 0; v < 6; ++v) {
      const double w = static_cast<double>(uniform_below(rng, 100));
      if (w > 0) p[outcome_of(v, 8)] = w;
      total += w;
    }
    if (total == 0) return FiniteDistribution::point_mass(outcome_of(0, 8));
    for (auto& [k, w] : p) w /= total;
    return dist(p);
  };
  for (int i = 0; i < 200; ++i) {
    const auto a = draw(), b = draw(), c = draw();
    const double ab = statistical_distance(a, b);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0 + 1e-12);
    CHECK(statistical_distance(a, c) <= ab + statistical_distance(b, c) + 1e-12);
  }
}

TEST_CASE("min-entropy examples") {
  CHECK(min_entropy(FiniteDistribution::uniform_bits(5)) == doctest::Approx(5.0));
  CHECK(min_entropy(FiniteDistribution::point_mass("a")) == doctest::Approx(0.0));
  CHECK(min_entropy(dist({{"a", 0.5}, {"b", 0.25}, {"c", 0.25}})) == doctest::Approx(-std::log2(0.5)));
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(dist({{"a", 0.5}, {"b", 0.4}}), BadParameter);
  CHECK_THROWS_AS(dist({{"a", 1.5}, {"b", -0.5}}), BadParameter);
  CHECK_NOTHROW(dist({{"a", 0.5 + 1e-10}, {"b", 0.5}}));
  CHECK_THROWS_AS(FiniteDistribution::uniform_bits(25), BadParameter);
  CHECK(outcome_of(0x1234, 12) == std::string("\x12\x34", 2));
}

TEST_CASE("average min-entropy examples") {
  // A independent of B, A uniform on 2 bits.
  std::map<JointDistribution::Key, double> indep;
  for (unsigned a = 0; a < 4; ++a) {
    for (unsigned b = 0; b < 2; ++b) indep[{outcome_of(a, 2), outcome_of(b, 1)}] = 1.0 / 8;
  }
  CHECK(avg_min_entropy(JointDistribution(indep)) == doctest::Approx(2.0));

  // B uniform on 2 bits; A = B when B's first bit is 0, else A is fresh uniform.
  std::map<JointDistribution::Key, double> ex;
  for (unsigned b = 0; b < 4; ++b) {
    for (unsigned a = 0; a < 4; ++a) {
      const bool first_bit = (b >> 1) & 1U;
      const double pa = first_bit ? 0.25 : (a == b ? 1.0 : 0.0);
      if (pa > 0) ex[{outcome_of(a, 2), outcome_of(b, 2)}] = 0.25 * pa;
    }
  }
  const JointDistribution j(ex);
  CHECK(j.probs().size() == 2 + 8);
  CHECK(avg_min_entropy(j) == doctest::Approx(-std::log2(0.5 * 1.0 + 0.5 * 0.25)));
  CHECK(avg_min_entropy(j) == doctest::Approx(0.678).epsilon(1e-3));
  CHECK(conditional_min_entropy(j, outcome_of(0, 2)) == doctest::Approx(0.0));
  CHECK(conditional_min_entropy(j, outcome_of(3, 2)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(conditional_min_entropy(j, "zz"), BadParameter);

  std::map<JointDistribution::Key, double> same;
  for (unsigned v = 0; v < 2; ++v) same[{outcome_of(v, 1), outcome_of(v, 1)}] = 0.5;
  CHECK(avg_min_entropy(JointDistribution(same)) == doctest::Approx(0.0));
}

TEST_CASE("chain rule: conditioning on lambda bits costs at most lambda") {
  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    const unsigned na = 1 + static_cast<unsigned>(uniform_below(rng, 8));
    const unsigned nb = 1 + static_cast<unsigned>(uniform_below(rng, 8));
    const auto j = random_joint(rng, na, nb);
    const double lambda = std::log2(static_cast<double>(j.second().probs().size()));
    CHECK(avg_min_entropy(j) >= min_entropy(j.flatten()) - lambda - 1e-9);
    // Conditioning never adds entropy.
    CHECK(avg_min_entropy(j) <= min_entropy(j.first()) + 1e-9);
  }
}

TEST_CASE("few values of B fall far below the average min-entropy") {
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    const auto j = random_joint(rng, 2 + static_cast<unsigned>(uniform_below(rng, 6)),
                                2 + static_cast<unsigned>(uniform_below(rng, 6)));
    const double avg = avg_min_entropy(j);
    const auto b = j.second();
    for (double delta : {0.5, 0.25}) {
      double mass = 0;
      for (const auto& [v, p] : b.probs()) {
        if (conditional_min_entropy(j, v) < avg - std::log2(1 / delta)) mass += p;
      }
      CHECK(mass <= delta + 1e-12);
    }
  }
}

TEST_CASE("max extractable bits") {
  CHECK(max_extractable_bits(10, 0.25) == 8);
  CHECK(max_extractable_bits(2, std::ldexp(1.0, -40)) == 0);
  CHECK(max_extractable_bits(128, std::ldexp(1.0, -64)) == 2);
  CHECK(max_extractable_bits(4, 0.5) == 4);
  CHECK_THROWS_AS(max_extractable_bits(4, 0.0), BadParameter);
  CHECK_THROWS_AS(max_extractable_bits(4, 1.5), BadParameter);
}

TEST_CASE("universal hash zero inputs and length checks") {
  Rng rng(23);
  const UHash h(40, 17);
  for (int i = 0; i < 20; ++i) {
    const auto v = BitVec::random(rng, 40);
    CHECK(h.hash(BitVec(40), v) == BitVec(17));
    CHECK(h.hash(v, BitVec(40)) == BitVec(17));
  }
  CHECK_THROWS_AS(h.hash(BitVec(39), BitVec(40)), BadParameter);
  CHECK_THROWS_AS(h.hash(BitVec(40), BitVec(41)), BadParameter);
  CHECK_THROWS_AS(UHash(8, 9), BadParameter);
  CHECK_THROWS_AS(UHash(8, 0), BadParameter);
  CHECK_THROWS_AS(UHash(257, 8), BadParameter);
}

TEST_CASE("universal hash collision count over all keys") {
  const UHash h(8, 2);
  for (std::uint64_t a : {0U, 5U, 200U}) {
    for (std::uint64_t b : {1U, 77U, 255U}) {
      if (a == b) continue;
      int collisions = 0;
      for (std::uint64_t x = 0; x < 256; ++x) collisions += h.hash_small(x, a) == h.hash_small(x, b);
      CHECK(collisions == 64);
    }
  }
}

TEST_CASE("hash agrees with field multiplication for n <= 32") {
  Rng rng(24);
  for (unsigned n = 3; n <= 32; ++n) {
    const gf2m::Field f(n);
    const UHash h(n, n);
    for (int i = 0; i < 100; ++i) {
      const auto a = static_cast<gf2m::Element>(uniform_below(rng, f.size()));
      const auto b = static_cast<gf2m::Element>(uniform_below(rng, f.size()));
      REQUIRE(h.hash_small(a, b) == f.mul(a, b));
    }
  }
}

TEST_CASE("wide hash moduli are irreducible and products match shift-and-add") {
  Rng rng(25);
  for (unsigned n : {1U, 2U, 33U, 64U, 100U, 128U, 200U, 256U}) {
    INFO("n = " << n);
    const UHash h(n, n);
    const auto& low = h.field().low_terms();
    REQUIRE(!low.empty());
    CHECK(low.back() == 0);
    CHECK(std::is_sorted(low.rbegin(), low.rend()));
    CHECK((low.size() == 1 || low.size() == 2 || low.size() == 4));
    CHECK(rabin_irreducible(poly_of(n, low)));
    for (int i = 0; i < 20; ++i) {
      const auto a = BitVec::random(rng, n), b = BitVec::random(rng, n);
      std::vector<bool> va(n), vb(n);
      for (unsigned k = 0; k < n; ++k) {
        va[k] = a.get(k);
        vb[k] = b.get(k);
      }
      const auto want = naive_field_mul(va, vb, n, low);
      const auto got = h.hash(a, b);
      for (unsigned k = 0; k < n; ++k) REQUIRE(got.get(k) == want[k]);
    }
  }
}

TEST_CASE("wide modulus is the first irreducible trinomial, else a pentanomial") {
  for (unsigned n : {33U, 65U, 100U}) {
    const WideField wf(n);
    const auto& low = wf.low_terms();
    REQUIRE(low.size() == 2);
    for (unsigned k = 1; k < low[0]; ++k) CHECK_FALSE(rabin_irreducible(poly_of(n, {k, 0})));
  }
  // Degree 64 has no irreducible trinomial.
  for (unsigned k = 1; k < 64; ++k) CHECK_FALSE(rabin_irreducible(poly_of(64, {k, 0})));
  CHECK(WideField(64).low_terms().size() == 4);
  CHECK(WideField(8).low_terms() == std::vector<unsigned>{4, 3, 2, 0});
}

TEST_CASE("leftover hash bound on a battery of 8-bit sources") {
  std::vector<std::pair<std::string, std::vector<double>>> battery;
  battery.emplace_back("uniform", std::vector<double>(256, 1.0 / 256));
  std::vector<double> geo(256);
  double total = 0;
  for (unsigned v = 0; v < 256; ++v) total += geo[v] = std::pow(0.97, v);
  for (auto& p : geo) p /= total;
  battery.emplace_back("geometric", geo);
  std::vector<double> two(256, 0.0);
  two[3] = 0.5;
  two[200] = 0.5;
  battery.emplace_back("two-point", two);
  std::vector<double> flat(256, 0.0);
  for (unsigned v = 0; v < 64; ++v) flat[v * 4 + 1] = 1.0 / 64;
  battery.emplace_back("flat-64", flat);

  for (const auto& [name, pw] : battery) {
    std::map<Outcome, double> m;
    for (unsigned v = 0; v < 256; ++v) {
      if (pw[v] > 0) m[outcome_of(v, 8)] = pw[v];
    }
    const FiniteDistribution w(m);
    const double h = min_entropy(w);
    for (unsigned l = 1; l <= 4; ++l) {
      INFO(name << ", l = " << l);
      const UHash hash(8, l);
      const double sd = extractor_distance(w, hash);
      CHECK(sd == doctest::Approx(naive_extractor_distance(pw, hash)).epsilon(1e-9));
      CHECK(sd <= 0.5 * std::sqrt(std::ldexp(1.0, static_cast<int>(l)) / std::exp2(h)) + 1e-12);
    }
  }
}

TEST_CASE("integer byte order for keys") {
  BitVec r(12);
  r.set(0);
  r.set(11);
  CHECK(bits_to_int_bytes(r) == std::vector<std::uint8_t>{0x08, 0x01});
  CHECK(int_bytes_to_bits(bits_to_int_bytes(r), 12) == r);
  const std::vector<std::uint8_t> wide{0x10, 0x00};
  CHECK_THROWS_AS(int_bytes_to_bits(wide, 12), MalformedInput);
}

TEST_CASE("helper payload layout") {
  BitVec seed(12);
  seed.set(0);
  const std::vector<std::uint8_t> sk{0xAA, 0xBB, 0xCC};
  const auto p = pack_helper(sk, seed);
  CHECK(p == std::vector<std::uint8_t>{0x00, 0x03, 0xAA, 0xBB, 0xCC, 0x00, 0x01});
  const auto [sk2, seed2] = unpack_helper(p, 12);
  CHECK(sk2 == sk);
  CHECK(seed2 == seed);
  for (std::size_t cut = 0; cut < p.size(); ++cut) {
    CHECK_THROWS_AS(unpack_helper(std::span(p).first(cut), 12), MalformedInput);
  }
  auto longer = p;
  longer.push_back(0);
  CHECK_THROWS_AS(unpack_helper(longer, 12), MalformedInput);
}

namespace {

using app::Envelope;

template <class W, class Make, class Rec>
SecureSketch<W> via_envelope(Make make, Rec rec) {
  return SecureSketch<W>{
      [make](const W& w, Rng& rng) { return app::serialize(make(w, rng)); },
      [rec](const W& wp, std::span<const std::uint8_t> bytes) { return rec(wp, app::deserialize(bytes)); }};
}

BitVec flip_up_to(BitVec w, unsigned t, Rng& rng) {
  const auto k = uniform_below(rng, t + 1);
  std::set<std::size_t> pos;
  while (pos.size() < k) pos.insert(uniform_below(rng, w.size()));
  for (auto i : pos) w.flip(i);
  return w;
}

// Replaces d random members of w with fresh elements outside it.
setdiff::ElementSet swap_members(const setdiff::ElementSet& w, unsigned d, Rng& rng) {
  std::vector<gf2m::Element> e = w.elems();
  shuffle(rng, std::span(e));
  e.resize(e.size() - d);
  std::set<gf2m::Element> have(w.elems().begin(), w.elems().end());
  while (e.size() < w.size()) {
    const auto x = static_cast<gf2m::Element>(1 + uniform_below(rng, w.field().nonzero_count()));
    if (have.insert(x).second) e.push_back(x);
  }
  return setdiff::ElementSet(w.field(), e);
}

template <class W>
void round_trips(const SecureSketch<W>& ss, const Encoder<W>& enc, const UHash& h, Rng& rng,
                 const std::function<W(Rng&)>& draw, const std::function<W(const W&, Rng&)>& perturb) {
  for (int i = 0; i < 1000; ++i) {
    const W w = draw(rng);
    const auto key = compose_gen(ss, w, enc, h, rng);
    REQUIRE(key.r.size() == h.l_bits());
    REQUIRE(compose_rep(ss, w, key.helper, enc, h) == key.r);
    REQUIRE(compose_rep(ss, perturb(w, rng), key.helper, enc, h) == key.r);
  }
}

}  // namespace

TEST_CASE("composition round trips for every sketcher") {
  Rng rng(26);
  const unsigned m = 4, t = 2;
  const auto hp = hamming::HammingParams::bch(m, t);
  const Encoder<BitVec> ident = [](const BitVec& w) { return w; };
  const UHash h15(15, 6);
  const std::function<BitVec(Rng&)> draw_word = [](Rng& r) { return BitVec::random(r, 15); };
  const std::function<BitVec(const BitVec&, Rng&)> near_word = [](const BitVec& w, Rng& r) {
    return flip_up_to(w, 2, r);
  };

  SUBCASE("syndrome") {
    const auto ss = via_envelope<BitVec>(
        [&](const BitVec& w, Rng&) { return Envelope{app::HammingSyndromeEnvelope{m, t, hamming::ss_syndrome(hp, w)}}; },
        [&](const BitVec& wp, const Envelope& e) {
          return hamming::rec_syndrome(hp, wp, std::get<app::HammingSyndromeEnvelope>(e).sketch);
        });
    round_trips(ss, ident, h15, rng, draw_word, near_word);
  }
  SUBCASE("code offset") {
    const auto ss = via_envelope<BitVec>(
        [&](const BitVec& w, Rng& r) {
          return Envelope{app::CodeOffsetEnvelope{m, t, hamming::ss_code_offset(hp, w, r)}};
        },
        [&](const BitVec& wp, const Envelope& e) {
          return hamming::rec_code_offset(hp, wp, std::get<app::CodeOffsetEnvelope>(e).sketch);
        });
    round_trips(ss, ident, h15, rng, draw_word, near_word);
  }
  SUBCASE("permuted") {
    const auto ss = via_envelope<BitVec>(
        [&](const BitVec& w, Rng& r) { return Envelope{app::PermutedEnvelope{m, t, hamming::ss_permuted(hp, w, r)}}; },
        [&](const BitVec& wp, const Envelope& e) {
          return hamming::rec_permuted(hp, wp, std::get<app::PermutedEnvelope>(e).sketch);
        });
    round_trips(ss, ident, h15, rng, draw_word, near_word);
  }

  const gf2m::Field f(6);
  const Encoder<setdiff::ElementSet> enc_set = [](const setdiff::ElementSet& w) { return setdiff::encode_set(w); };
  const UHash h63(setdiff::set_encoding_bits(f), 20);
  const std::function<setdiff::ElementSet(Rng&)> draw_set = [&](Rng& r) { return setdiff::random_set(f, 8, r); };

  SUBCASE("pinsketch") {
    const auto ss = via_envelope<setdiff::ElementSet>(
        [&](const setdiff::ElementSet& w, Rng&) { return Envelope{app::PinSketchEnvelope{6, setdiff::pinsketch_ss(w, 4)}}; },
        [&](const setdiff::ElementSet& wp, const Envelope& e) {
          return setdiff::pinsketch_rec(wp, std::get<app::PinSketchEnvelope>(e).sketch);
        });
    // Sizes may change: drop some, add some, four changes in all.
    const std::function<setdiff::ElementSet(const setdiff::ElementSet&, Rng&)> near = [&](const auto& w, Rng& r) {
      std::vector<gf2m::Element> diff;
      const auto k = uniform_below(r, 5);
      while (diff.size() < k) {
        const auto x = static_cast<gf2m::Element>(1 + uniform_below(r, 63));
        if (std::find(diff.begin(), diff.end(), x) == diff.end()) diff.push_back(x);
      }
      return setdiff::symmetric_difference(w, setdiff::ElementSet(f, diff));
    };
    round_trips(ss, enc_set, h63, rng, draw_set, near);
  }
  SUBCASE("improved Juels-Sudan") {
    const auto ss = via_envelope<setdiff::ElementSet>(
        [&](const setdiff::ElementSet& w, Rng&) { return Envelope{app::IjsEnvelope{6, setdiff::ijs_ss(w, 4)}}; },
        [&](const setdiff::ElementSet& wp, const Envelope& e) {
          return setdiff::ijs_rec(wp, std::get<app::IjsEnvelope>(e).sketch);
        });
    const std::function<setdiff::ElementSet(const setdiff::ElementSet&, Rng&)> near = [](const auto& w, Rng& r) {
      return swap_members(w, static_cast<unsigned>(uniform_below(r, 3)), r);
    };
    round_trips(ss, enc_set, h63, rng, draw_set, near);
  }
  SUBCASE("original Juels-Sudan") {
    const auto ss = via_envelope<setdiff::ElementSet>(
        [&](const setdiff::ElementSet& w, Rng& r) {
          return Envelope{app::OrigJsEnvelope{6, setdiff::origjs_ss(w, 20, 4, r)}};
        },
        [&](const setdiff::ElementSet& wp, const Envelope& e) {
          return setdiff::origjs_rec(wp, std::get<app::OrigJsEnvelope>(e).sketch);
        });
    const std::function<setdiff::ElementSet(const setdiff::ElementSet&, Rng&)> near = [](const auto& w, Rng& r) {
      return swap_members(w, static_cast<unsigned>(uniform_below(r, 3)), r);
    };
    round_trips(ss, enc_set, h63, rng, draw_set, near);
  }
  SUBCASE("edit") {
    const auto a = edit::Alphabet::binary();
    for (int i = 0; i < 1000; ++i) {
      std::string w(32, '\0');
      for (auto& ch : w) ch = static_cast<char>(uniform_below(rng, 2));
      const auto key = edit::edit_gen(w, 3, 1, 6, a, rng);
      REQUIRE(edit::edit_rep(w, key.helper, 6, a) == key.r);
      std::string wp = w;
      const auto pos = uniform_below(rng, wp.size());
      switch (uniform_below(rng, 3)) {
        case 0: wp.erase(pos, 1); break;
        case 1: wp.insert(pos, 1, static_cast<char>(uniform_below(rng, 2))); break;
        default: wp[pos] ^= 1; break;
      }
      REQUIRE(edit::edit_rep(wp, key.helper, 6, a) == key.r);
    }
  }
}

TEST_CASE("composition replays under a fixed seed and rejects damaged helpers") {
  const auto hp = hamming::HammingParams(codec::SmallLinearCode::hamming7());
  const SecureSketch<BitVec> ss{
      [&](const BitVec& w, Rng&) { return hamming::ss_syndrome(hp, w).syn_bits.to_bytes(); },
      [&](const BitVec& wp, std::span<const std::uint8_t> b) {
        return hamming::rec_syndrome(hp, wp, {BitVec::from_bytes(b, 3)});
      }};
  const Encoder<BitVec> ident = [](const BitVec& w) { return w; };
  const UHash h(7, 4);
  const BitVec w(7);
  Rng r1(99), r2(99);
  const auto k1 = compose_gen(ss, w, ident, h, r1);
  const auto k2 = compose_gen(ss, w, ident, h, r2);
  CHECK(k1.r == k2.r);
  CHECK(k1.helper == k2.helper);
  CHECK(compose_rep(ss, w, k1.helper, ident, h) == k1.r);

  Rng rng(27);
  for (int i = 0; i < 50; ++i) {
    const auto v = BitVec::random(rng, 7);
    const auto key = compose_gen(ss, v, ident, h, rng);
    BitVec near = v;
    near.flip(uniform_below(rng, 7));
    CHECK(compose_rep(ss, near, key.helper, ident, h) == key.r);
  }

  auto cut = k1.helper;
  cut.pop_back();
  CHECK_THROWS_AS(compose_rep(ss, w, cut, ident, h), MalformedInput);
  CHECK_THROWS_AS(compose_rep(ss, w, std::vector<std::uint8_t>{0x00}, ident, h), MalformedInput);
}
