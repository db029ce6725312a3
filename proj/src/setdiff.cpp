#include "fzx/setdiff.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <unordered_set>

#include "fzx/error.hpp"

namespace fzx::setdiff {

using codec::BchCode;
using gf2m::Poly;

namespace {

constexpr unsigned kRecoverySeed = 0x5EED5EED;
constexpr unsigned kSetHashBits = 256;

double log2_binomial(double n, double k) {
  return (std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)) / std::log(2.0);
}

// `count` distinct nonzero elements outside `exclude`, in draw order.
std::vector<Element> draw_distinct(const Field& f, std::size_t count, const ElementSet& exclude, Rng& rng) {
  const std::uint64_t n = f.nonzero_count();
  const std::uint64_t available = n - exclude.size();
  if (count > available) throw BadParameter("not enough universe elements");
  std::vector<Element> out;
  out.reserve(count);
  if (2 * count <= available) {
    std::unordered_set<Element> taken;
    while (out.size() < count) {
      const auto x = static_cast<Element>(1 + uniform_below(rng, n));
      if (exclude.contains(x) || !taken.insert(x).second) continue;
      out.push_back(x);
    }
    return out;
  }
  std::vector<Element> pool;
  pool.reserve(available);
  for (std::uint64_t x = 1; x <= n; ++x) {
    if (!exclude.contains(static_cast<Element>(x))) pool.push_back(static_cast<Element>(x));
  }
  shuffle(rng, std::span<Element>(pool));
  pool.resize(count);
  return pool;
}

std::size_t distance(const ElementSet& a, const ElementSet& b) { return symmetric_difference(a, b).size(); }

}  // namespace

ElementSet::ElementSet(Field field, std::vector<Element> elems) : field_(std::move(field)), elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (elems_[i] == 0) throw BadParameter("0 is not in the universe GF(2^m)*");
    if (!field_.contains(elems_[i])) throw BadParameter("element " + std::to_string(elems_[i]) + " outside the field");
    if (i > 0 && elems_[i] == elems_[i - 1]) throw BadParameter("duplicate set element");
  }
}

bool ElementSet::contains(Element x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

ElementSet symmetric_difference(const ElementSet& a, const ElementSet& b) {
  if (!(a.field() == b.field())) throw BadParameter("sets over different fields");
  std::vector<Element> out;
  std::set_symmetric_difference(a.elems().begin(), a.elems().end(), b.elems().begin(), b.elems().end(),
                                std::back_inserter(out));
  return ElementSet(a.field(), std::move(out));
}

ElementSet set_minus(const ElementSet& a, const ElementSet& b) {
  if (!(a.field() == b.field())) throw BadParameter("sets over different fields");
  std::vector<Element> out;
  std::set_difference(a.elems().begin(), a.elems().end(), b.elems().begin(), b.elems().end(),
                      std::back_inserter(out));
  return ElementSet(a.field(), std::move(out));
}

ElementSet random_set(const Field& field, std::size_t s, Rng& rng) {
  return ElementSet(field, draw_distinct(field, s, ElementSet(field), rng));
}

// ---------------------------------------------------------------------------

PinSketchData pinsketch_ss(const ElementSet& w, unsigned t) {
  if (t == 0) throw BadParameter("PinSketch needs t >= 1");
  const auto code = BchCode::with_capacity(w.field(), t);
  return {t, codec::syndrome_from_support(code, w.elems())};
}

ElementSet pinsketch_rec(const ElementSet& w_prime, const PinSketchData& sk, Rng& rng) {
  if (sk.syn.odd_sums.size() != sk.t) throw BadParameter("PinSketch syndrome length differs from t");
  const auto code = BchCode::with_capacity(w_prime.field(), sk.t);
  const auto diff = codec::syndrome_from_support(code, w_prime.elems()) ^ sk.syn;
  const ElementSet v(w_prime.field(), codec::support_from_syndrome(code, diff, rng));
  ElementSet w = symmetric_difference(w_prime, v);
  if (!(pinsketch_ss(w, sk.t) == sk)) throw DecodeFailure("recovered set does not reproduce the sketch");
  return w;
}

ElementSet pinsketch_rec(const ElementSet& w_prime, const PinSketchData& sk) {
  Rng rng(kRecoverySeed);
  return pinsketch_rec(w_prime, sk, rng);
}

// ---------------------------------------------------------------------------

unsigned ijs_effective_t(unsigned t) noexcept { return t & ~1U; }

IjsSketchData ijs_ss(const ElementSet& w, unsigned t) {
  const auto s = static_cast<unsigned>(w.size());
  t = ijs_effective_t(t);
  if (t > s) throw BadParameter("IJS needs t <= s");
  const Poly p = gf2m::poly_from_roots(w.field(), w.elems());
  IjsSketchData sk{s, t, {}};
  for (unsigned i = 1; i <= t; ++i) sk.top_coeffs.push_back(p.coeff(s - i));
  return sk;
}

ElementSet ijs_rec(const ElementSet& w_prime, const IjsSketchData& sk, Rng& rng) {
  const Field& f = w_prime.field();
  if (sk.t % 2 != 0 || sk.t > sk.s || sk.top_coeffs.size() != sk.t) throw BadParameter("malformed IJS sketch");
  if (w_prime.size() != sk.s) throw BadParameter("IJS needs |w'| = s");
  for (auto a : sk.top_coeffs) {
    if (!f.contains(a)) throw BadParameter("IJS coefficient outside the field");
  }

  std::vector<Element> high(sk.s + 1, 0);
  high[sk.s] = 1;
  for (unsigned i = 1; i <= sk.t; ++i) high[sk.s - i] = sk.top_coeffs[i - 1];
  const Poly p_high(std::move(high));

  // On w, p_low = p_high since p' = p_high + p_low vanishes there.
  std::vector<codec::RsPoint> points;
  points.reserve(sk.s);
  for (Element x : w_prime.elems()) points.emplace_back(x, gf2m::poly_eval(f, p_high, x));
  const int deg_bound = static_cast<int>(sk.s) - static_cast<int>(sk.t) - 1;
  const Poly p_low = codec::rs_decode(f, points, deg_bound, sk.t / 2);
  const Poly p = gf2m::poly_add(p_high, p_low);

  std::vector<Element> agree;
  for (const auto& [x, y] : points) {
    if (gf2m::poly_eval(f, p_low, x) == y) agree.push_back(x);
  }
  const auto [rest, rem] = gf2m::poly_divmod(f, p, gf2m::poly_from_roots(f, agree));
  if (!rem.is_zero()) throw InternalFailure("agreeing point is not a root");
  const auto others = gf2m::poly_roots(f, rest, rng);
  if (!others) throw DecodeFailure("IJS polynomial does not split into distinct roots");

  std::vector<Element> elems = agree;
  for (Element x : *others) {
    if (x == 0 || std::find(agree.begin(), agree.end(), x) != agree.end()) {
      throw DecodeFailure("IJS polynomial is not the polynomial of a set");
    }
    elems.push_back(x);
  }
  ElementSet w(f, std::move(elems));
  if (!(ijs_ss(w, sk.t) == sk) || distance(w, w_prime) > sk.t) {
    throw DecodeFailure("recovered set does not verify");
  }
  return w;
}

ElementSet ijs_rec(const ElementSet& w_prime, const IjsSketchData& sk) {
  Rng rng(kRecoverySeed);
  return ijs_rec(w_prime, sk, rng);
}

// ---------------------------------------------------------------------------

OrigJsSketchData origjs_ss(const ElementSet& w, unsigned r, unsigned t, Rng& rng) {
  const Field& f = w.field();
  const auto s = static_cast<unsigned>(w.size());
  if (!(s < r && r <= f.nonzero_count())) throw BadParameter("original JS needs s < r <= 2^m - 1");
  if (t > s) throw BadParameter("original JS needs t <= s");

  std::vector<Element> coeffs(s - t);
  for (auto& c : coeffs) c = static_cast<Element>(uniform_below(rng, f.size()));
  const Poly p(std::move(coeffs));

  OrigJsSketchData sk{s, r, t, {}};
  sk.pairs.reserve(r);
  for (Element x : w.elems()) sk.pairs.emplace_back(x, gf2m::poly_eval(f, p, x));
  for (Element x : draw_distinct(f, r - s, w, rng)) {
    const Element on_curve = gf2m::poly_eval(f, p, x);
    Element y = on_curve;
    while (y == on_curve) y = static_cast<Element>(uniform_below(rng, f.size()));
    sk.pairs.emplace_back(x, y);
  }
  std::sort(sk.pairs.begin(), sk.pairs.end());
  return sk;
}

ElementSet origjs_rec(const ElementSet& w_prime, const OrigJsSketchData& sk) {
  const Field& f = w_prime.field();
  if (sk.pairs.size() != sk.r || !(sk.s < sk.r) || sk.t > sk.s) throw BadParameter("malformed original JS sketch");
  for (std::size_t i = 0; i < sk.pairs.size(); ++i) {
    const auto [x, y] = sk.pairs[i];
    if (x == 0 || !f.contains(x) || !f.contains(y)) throw BadParameter("original JS pair outside the field");
    if (i > 0 && sk.pairs[i - 1].first >= x) throw BadParameter("original JS pairs not strictly sorted by x");
  }
  if (w_prime.size() != sk.s) throw BadParameter("original JS needs |w'| = s");

  std::vector<codec::RsPoint> points;
  for (const auto& pr : sk.pairs) {
    if (w_prime.contains(pr.first)) points.push_back(pr);
  }
  const unsigned dropped = sk.s - static_cast<unsigned>(points.size());
  const unsigned budget = sk.t / 2;
  if (dropped > budget) throw DecodeFailure("too few elements of w' appear in the sketch");

  const int deg_bound = static_cast<int>(sk.s) - static_cast<int>(sk.t) - 1;
  const Poly p = codec::rs_decode(f, points, deg_bound, budget - dropped);

  std::vector<Element> elems;
  for (const auto& [x, y] : sk.pairs) {
    if (gf2m::poly_eval(f, p, x) == y) elems.push_back(x);
  }
  ElementSet w(f, std::move(elems));
  if (w.size() != sk.s || distance(w, w_prime) > sk.t) throw DecodeFailure("recovered set does not verify");
  return w;
}

// ---------------------------------------------------------------------------

double setdiff_entropy_loss(SetScheme scheme, const SetLossParams& p) {
  const double t = p.t;
  switch (scheme) {
    case SetScheme::pinsketch:
      return t * std::log2(p.n + 1);
    case SetScheme::ijs:
      return t * std::log2(p.n);
    case SetScheme::origjs:
      if (!(p.s < p.r && p.r <= p.n)) throw BadParameter("original JS needs s < r <= n");
      return t * std::log2(p.n) + log2_binomial(p.n, p.r) - log2_binomial(p.n - p.s, p.r - p.s) + 2;
  }
  throw BadParameter("unknown set scheme");
}

unsigned set_encoding_bits(const Field& field) {
  const auto n = field.nonzero_count();
  return n <= kSetHashBits ? static_cast<unsigned>(n) : kSetHashBits;
}

BitVec encode_set(const ElementSet& w) {
  const Field& f = w.field();
  const unsigned bits = set_encoding_bits(f);
  BitVec out(bits);
  if (f.nonzero_count() <= kSetHashBits) {
    for (Element x : w.elems()) out.set(x - 1);
    return out;
  }
  const unsigned m = f.degree();
  if (w.size() > kSetHashBits / m) {
    throw BadParameter("set too large for the extractor encoding: at most " + std::to_string(kSetHashBits / m) +
                       " elements at m = " + std::to_string(m));
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (unsigned b = 0; b < m; ++b) {
      if ((w.elems()[i] >> b) & 1U) out.set(i * m + b);
    }
  }
  return out;
}

}  // namespace fzx::setdiff
