#include <algorithm>
#include <cassert>
#include <string>

#include "fzx/codec.hpp"
#include "fzx/error.hpp"

namespace fzx::codec {

BchCode::BchCode(Field field, unsigned delta) : field_(std::move(field)), delta_(delta) {
  if (delta_ % 2 == 0 || delta_ < 3 || delta_ > field_.nonzero_count()) {
    throw BadParameter("BCH designed distance must be odd and in [3, 2^m - 1], got " +
                       std::to_string(delta_));
  }
}

Syndrome& Syndrome::operator^=(const Syndrome& other) {
  if (other.odd_sums.size() != odd_sums.size()) throw BadParameter("syndrome length mismatch");
  for (std::size_t i = 0; i < odd_sums.size(); ++i) odd_sums[i] ^= other.odd_sums[i];
  return *this;
}

Syndrome syndrome_from_support(const BchCode& code, std::span<const Element> support) {
  const Field& f = code.field();
  Syndrome syn{std::vector<Element>(code.t(), 0)};
  for (Element x : support) {
    if (x == 0 || !f.contains(x)) throw BadParameter("support positions must be nonzero field elements");
    const Element x2 = f.sqr(x);
    Element p = x;
    for (unsigned j = 0; j < code.t(); ++j) {
      syn.odd_sums[j] ^= p;
      p = f.mul(p, x2);
    }
  }
  return syn;
}

std::vector<Element> expand_syndrome(const BchCode& code, const Syndrome& syn) {
  if (syn.odd_sums.size() != code.t()) throw BadParameter("syndrome length does not match code");
  const Field& f = code.field();
  std::vector<Element> full(code.delta() - 1);
  for (std::size_t i = 1; i <= full.size(); ++i) {
    full[i - 1] = (i % 2 == 1) ? syn.odd_sums[(i - 1) / 2] : f.sqr(full[i / 2 - 1]);
  }
  return full;
}

SupportSet support_from_syndrome(const BchCode& code, const Syndrome& syn, Rng& rng) {
  if (syn.odd_sums.size() != code.t()) throw BadParameter("syndrome length does not match code");
  if (syn.is_zero()) return {};
  const Field& f = code.field();
  const unsigned t = code.t();
  const std::vector<Element> full = expand_syndrome(code, syn);

  // S(z)/z has s_l as the coefficient of z^(l-1).
  Poly r_old = Poly::monomial(1, code.delta() - 1);
  Poly r_cur(full);
  Poly v_old;
  Poly v_cur{1};
  while (r_cur.degree() >= static_cast<int>(t)) {
    auto [q, r_new] = poly_divmod(f, r_old, r_cur);
    Poly v_new = poly_add(v_old, poly_mul(f, q, v_cur));
    r_old = std::move(r_cur);
    r_cur = std::move(r_new);
    v_old = std::move(v_cur);
    v_cur = std::move(v_new);
  }
  const Element c = v_cur.coeff(0);
  if (c == 0) throw DecodeFailure("error locator has zero constant term");
  const Element c_inv = f.inv(c);
  const Poly sigma = poly_scale(f, v_cur, c_inv);
  if (sigma.degree() > static_cast<int>(t)) throw DecodeFailure("error locator degree exceeds t");

#ifndef NDEBUG
  {
    // S(z) sigma(z) = omega(z) mod z^delta with omega = z R_cur(z) / c.
    std::vector<Element> s_coeffs(full.size() + 1, 0);
    std::copy(full.begin(), full.end(), s_coeffs.begin() + 1);
    const Poly lhs = poly_mul(f, Poly(std::move(s_coeffs)), sigma);
    const Poly omega = poly_mul(f, Poly{0, 1}, poly_scale(f, r_cur, c_inv));
    for (unsigned i = 0; i < code.delta(); ++i) assert(lhs.coeff(i) == omega.coeff(i));
  }
#endif

  const auto roots = gf2m::poly_roots(f, sigma, rng);
  if (!roots) throw DecodeFailure("error locator does not split into distinct roots");

  SupportSet positions;
  positions.reserve(roots->size());
  for (Element r : *roots) positions.push_back(f.inv(r));
  std::sort(positions.begin(), positions.end());

  if (syndrome_from_support(code, positions) != syn) {
    throw DecodeFailure("decoded support does not reproduce the syndrome");
  }
  return positions;
}

SupportSet support_from_syndrome(const BchCode& code, const Syndrome& syn) {
  Rng rng(0x5EED5EEDULL);
  return support_from_syndrome(code, syn, rng);
}

std::vector<std::uint8_t> serialize_syndrome(const Field& field, const Syndrome& syn) {
  std::vector<std::uint8_t> out;
  out.reserve(syn.odd_sums.size() * field.element_bytes());
  for (Element s : syn.odd_sums) field.write(s, out);
  return out;
}

Syndrome parse_syndrome(const Field& field, unsigned t, std::span<const std::uint8_t> bytes) {
  const std::size_t w = field.element_bytes();
  if (bytes.size() != static_cast<std::size_t>(t) * w) throw MalformedInput("syndrome has wrong length");
  Syndrome syn;
  for (unsigned j = 0; j < t; ++j) syn.odd_sums.push_back(field.read(bytes.subspan(j * w, w)));
  return syn;
}

}  // namespace fzx::codec
