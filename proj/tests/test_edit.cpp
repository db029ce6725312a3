#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fzx/edit.hpp"
#include "fzx/error.hpp"

using namespace fzx;
using namespace fzx::edit;

namespace {

std::string random_string(std::size_t n, Alphabet a, Rng& rng) {
  std::string s(n, '\0');
  for (auto& ch : s) ch = static_cast<char>(uniform_below(rng, a.size()));
  return s;
}

// One random insertion or deletion.
std::string indel(std::string s, Alphabet a, Rng& rng) {
  if (!s.empty() && uniform_below(rng, 2) == 0) {
    s.erase(uniform_below(rng, s.size()), 1);
  } else {
    s.insert(uniform_below(rng, s.size() + 1), 1, static_cast<char>(uniform_below(rng, a.size())));
  }
  return s;
}

// Window set computed independently of shingle().
std::set<std::string> windows(const std::string& w, unsigned c) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + c <= w.size(); ++i) out.insert(w.substr(i, c));
  return out;
}

std::size_t set_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> d;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d));
  return d.size();
}

double loss_formula(double n, double c, double t, double bits) {
  return std::ceil(n / c) * std::log2(n - c + 1) + (2 * c - 1) * t * std::ceil(std::log2(std::exp2(c * bits) + 1));
}

}  // namespace

TEST_CASE("shingling examples") {
  const std::string w = "abcdecdeah";
  const auto ss = shingle(w, 3);
  CHECK(ss.c == 3);
  CHECK(ss.shingles == std::vector<std::string>{"abc", "bcd", "cde", "dea", "dec", "eah", "ecd"});
  CHECK(recovery_info(w, 3).indices == std::vector<std::uint32_t>{1, 5, 4, 6});
  CHECK(recovery_info(w, 3).n == 10);
  CHECK(unshingle(ss, recovery_info(w, 3)) == w);

  CHECK(shingle(w, 10).shingles == std::vector<std::string>{w});
  CHECK(recovery_info(w, 10).indices == std::vector<std::uint32_t>{1});
  CHECK(shingle("aaaa", 2).shingles == std::vector<std::string>{"aa"});

  // |w| = 5, c = 3: windows at 0 and 2.
  const auto g = recovery_info("abcde", 3);
  CHECK(g.indices.size() == 2);
  CHECK(shingle("abcde", 3).shingles[g.indices[1] - 1] == "cde");
  CHECK(unshingle(shingle("abcde", 3), g) == "abcde");

  CHECK_THROWS_AS(shingle(w, 0), BadParameter);
  CHECK_THROWS_AS(shingle(w, 11), BadParameter);
  auto bad = recovery_info(w, 3);
  bad.indices[0] = 8;
  CHECK_THROWS_AS(unshingle(ss, bad), BadParameter);
  bad.indices[0] = 0;
  CHECK_THROWS_AS(unshingle(ss, bad), BadParameter);
}

TEST_CASE("shingle sets match all windows and unshingling inverts") {
  Rng rng(70);
  for (int i = 0; i < 10000; ++i) {
    const auto n = 8 + uniform_below(rng, 121);
    const auto c = static_cast<unsigned>(2 + uniform_below(rng, 7));
    const auto w = random_string(n, Alphabet::binary(), rng);
    const auto ss = shingle(w, c);
    const auto win = windows(w, c);
    REQUIRE(ss.shingles == std::vector<std::string>(win.begin(), win.end()));
    const auto g = recovery_info(w, c);
    REQUIRE(g.indices.size() == (n + c - 1) / c);
    REQUIRE(unshingle(ss, g) == w);
  }
}

TEST_CASE("a k-edit changes at most (2c - 1) k shingles") {
  Rng rng(71);
  for (int i = 0; i < 10000; ++i) {
    const auto n = 8 + uniform_below(rng, 57);
    const auto c = static_cast<unsigned>(2 + uniform_below(rng, 5));
    const Alphabet a{static_cast<unsigned>(1 + uniform_below(rng, 2))};
    const auto k = static_cast<unsigned>(1 + uniform_below(rng, 3));
    const auto w = random_string(n, a, rng);
    auto wp = w;
    for (unsigned j = 0; j < k; ++j) wp = indel(wp, a, rng);
    if (wp.size() < c) continue;
    REQUIRE(set_distance(shingle(w, c).shingles, shingle(wp, c).shingles) <= (2 * c - 1) * k);
  }
}

TEST_CASE("shingle field embedding") {
  const auto bin = Alphabet::binary();
  CHECK(shingle_field_degree(3, bin) == 4);
  CHECK(shingle_field_degree(3, Alphabet::bytes()) == 25);
  CHECK_THROWS_AS(shingle_field_degree(4, Alphabet::bytes()), BadParameter);
  CHECK_THROWS_AS(shingle_field_degree(1, bin), BadParameter);

  const std::string w{0, 1, 1, 0, 1};
  const auto ss = shingle(w, 3);
  const auto v = shingles_to_set(ss, bin);
  // "011" -> 8 + 3, "101" -> 8 + 5, "110" -> 8 + 6.
  CHECK(v.elems() == std::vector<gf2m::Element>{11, 13, 14});
  CHECK(set_to_shingles(v, 3, bin) == ss);
  CHECK_THROWS_AS(set_to_shingles(setdiff::ElementSet(gf2m::Field(4), {3}), 3, bin), DecodeFailure);

  const auto bytes = shingles_to_set(shingle("ab", 2), Alphabet::bytes());
  CHECK(bytes.elems() == std::vector<gf2m::Element>{0x10000 + 0x6162});
}

TEST_CASE("edit sketch round trips at n = 64, t = 2") {
  const auto bin = Alphabet::binary();
  const unsigned c = optimal_shingle_len(64, 2, bin);
  CHECK(c == 4);
  CHECK(set_capacity(c, 2) == 14);
  Rng rng(72);
  for (int i = 0; i < 1000; ++i) {
    const auto w = random_string(64, bin, rng);
    const auto sk = edit_ss(w, c, 2, bin);
    CHECK(sk.s1.t == 14);
    REQUIRE(edit_rec(w, sk) == w);
    auto wp = w;
    const auto k = uniform_below(rng, 3);
    for (std::uint64_t j = 0; j < k; ++j) wp = indel(wp, bin, rng);
    REQUIRE(edit_rec(wp, sk) == w);
  }
}

TEST_CASE("edit sketch over bytes and beyond capacity") {
  const auto bytes = Alphabet::bytes();
  Rng rng(73);
  const std::string w = "the quick brown fox jumps over the lazy dog";
  const auto sk = edit_ss(w, 2, 1, bytes);
  CHECK(edit_rec("the quick brown fox jumps over the lazy dogs", sk) == w);
  CHECK(edit_rec("the quick brown fx jumps over the lazy dog", sk) == w);
  // A substitution is a deletion plus an insertion: distance 2 > t.
  CHECK_THROWS_AS(edit_rec("the quick brown fox jumps over the lazy cog", sk), DecodeFailure);
  CHECK_THROWS_AS(edit_rec("t", sk), DecodeFailure);

  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const auto v = random_string(40, bytes, rng);
    const auto s = edit_ss(v, 2, 1, bytes);
    auto far = v;
    for (int j = 0; j < 6; ++j) far = indel(far, bytes, rng);
    try {
      const auto got = edit_rec(far, s);
      CHECK(edit_ss(got, 2, 1, bytes) == s);
    } catch (const DecodeFailure&) {
      ++failures;
    }
  }
  CHECK(failures >= 180);
  CHECK_THROWS_AS(edit_ss(w, 2, 0, bytes), BadParameter);
  // (2c - 1) t = 45 needs 91 nonzero elements, more than GF(8) has.
  CHECK_THROWS_AS(edit_ss(random_string(40, Alphabet::binary(), rng), 2, 15, Alphabet::binary()), BadParameter);
}

TEST_CASE("edit sketch serialization") {
  Rng rng(74);
  const auto bin = Alphabet::binary();
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::uint32_t>(8 + uniform_below(rng, 200));
    const auto c = static_cast<unsigned>(2 + uniform_below(rng, 6));
    const auto t = static_cast<unsigned>(1 + uniform_below(rng, 2));
    const auto w = random_string(n, bin, rng);
    EditSketch sk;
    try {
      sk = edit_ss(w, c, t, bin);
    } catch (const BadParameter&) {
      continue;
    }
    const auto bytes = serialize_edit_payload(sk);
    REQUIRE(parse_edit_payload(bytes, bin) == sk);
    // Everything after the 8-byte header is bounded by the loss accounting.
    const double bound = std::ceil(static_cast<double>(n) / c) * std::ceil(std::log2(n - c + 1.0)) +
                         set_capacity(c, t) * std::ceil(std::log2(std::exp2(c) + 1));
    CHECK(static_cast<double>(bytes.size() - 8) * 8 < bound + 8);
    CHECK(index_width(n, c) == static_cast<unsigned>(std::ceil(std::log2(n - c + 1.0))));
  }
  const auto sk = edit_ss("abcdecdeah", 3, 1, Alphabet::bytes());
  const auto bytes = serialize_edit_payload(sk);
  CHECK(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 8) ==
        std::vector<std::uint8_t>{0, 0, 0, 10, 0, 3, 0, 1});
  CHECK(bytes.size() == 8 + (5 * 25 + 4 * 3 + 7) / 8);
  auto longer = bytes;
  longer.push_back(0);
  CHECK_THROWS_AS(parse_edit_payload(longer, Alphabet::bytes()), MalformedInput);
  CHECK_THROWS_AS(parse_edit_payload(std::span(bytes).first(bytes.size() - 1), Alphabet::bytes()), MalformedInput);
}

TEST_CASE("edit extractor") {
  const auto bin = Alphabet::binary();
  Rng rng(75);
  for (int i = 0; i < 300; ++i) {
    const auto w = random_string(64, bin, rng);
    const auto key = edit_gen(w, 4, 2, 12, bin, rng);
    CHECK(key.r.size() == 12);
    CHECK(edit_rep(w, key.helper, 12, bin) == key.r);
    auto wp = w;
    for (std::uint64_t j = 0, k = 1 + uniform_below(rng, 2); j < k; ++j) wp = indel(wp, bin, rng);
    CHECK(edit_rep(wp, key.helper, 12, bin) == key.r);
  }
  const auto w = random_string(64, bin, rng);
  auto key = edit_gen(w, 4, 2, 12, bin, rng);
  // R hashes the shingle set: strings with equal shingle sets share R.
  key.helper.pop_back();
  CHECK_THROWS_AS(edit_rep(w, key.helper, 12, bin), MalformedInput);
  CHECK_THROWS_AS(edit_rep(w, std::vector<std::uint8_t>{1, 2, 3}, 12, bin), MalformedInput);
  CHECK(shingle_encoding_bits(4, bin) == 16);
  CHECK(shingle_encoding_bits(3, Alphabet::bytes()) == 256);
}

TEST_CASE("entropy loss formula and optimizer") {
  const auto bin = Alphabet::binary();
  CHECK(edit_entropy_loss(1000, 6, 10, bin) == doctest::Approx(loss_formula(1000, 6, 10, 1)));
  CHECK(edit_entropy_loss(1000, 6, 10, bin, 0.25) == doctest::Approx(loss_formula(1000, 6, 10, 1) + 4 - 2));
  CHECK(edit_entropy_loss(200, 3, 2, Alphabet::bytes()) == doctest::Approx(loss_formula(200, 3, 2, 8)));
  CHECK(stationary_shingle_len(1000, 10, bin) == doctest::Approx(std::cbrt(1000 * std::log2(1000.0) / 40)));
  CHECK(stationary_shingle_len(1000, 10, bin) == doctest::Approx(6.29).epsilon(1e-3));

  for (auto [n, t, bits] : {std::tuple{1000U, 10U, 1U}, std::tuple{64U, 2U, 1U}, std::tuple{5000U, 3U, 8U},
                            std::tuple{300U, 1U, 2U}}) {
    const Alphabet a{bits};
    unsigned best = 2;
    for (unsigned c = 3; c < n; ++c) {
      if (loss_formula(n, c, t, bits) < loss_formula(n, best, t, bits)) best = c;
    }
    INFO("n = " << n << ", t = " << t);
    CHECK(optimal_shingle_len(n, t, a) == best);
    const double st = stationary_shingle_len(n, t, a);
    CHECK(std::abs(static_cast<double>(best) - st) <= 2.0);
  }

  for (unsigned t = 1; t < 20; ++t) CHECK(edit_entropy_loss(1000, 6, t + 1, bin) > edit_entropy_loss(1000, 6, t, bin));
  CHECK_THROWS_AS(edit_entropy_loss(10, 10, 1, bin), BadParameter);
  CHECK_THROWS_AS(optimal_shingle_len(100, 0, bin), BadParameter);
}

TEST_CASE("approximate minimum loss is within 15 percent of the scan") {
  const auto bin = Alphabet::binary();
  CHECK((std::cbrt(4.0) + 1 / std::cbrt(2.0)) == doctest::Approx(2.38).epsilon(1e-3));
  for (auto [n, t] : {std::pair{1000U, 10U}, std::pair{10000U, 10U}, std::pair{100000U, 20U}}) {
    const double exact = edit_entropy_loss(n, optimal_shingle_len(n, t, bin), t, bin);
    const double approx = approx_min_edit_loss(n, t, bin);
    INFO("n = " << n << ", exact = " << exact << ", approx = " << approx);
    CHECK(std::abs(approx - exact) <= 0.15 * exact);
  }
}
