#include "fzx/gf2m.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "fzx/error.hpp"

namespace fzx::gf2m {

namespace {

// x^m + low terms; trinomials where one exists, otherwise the lightest
// pentanomial.
constexpr std::array<std::uint64_t, kMaxDegree + 1> kPrimitive = {
    0,           0,           0,
    0xB,          // 3: x^3+x+1
    0x13,         // 4: x^4+x+1
    0x25,         // 5: x^5+x^2+1
    0x43,         // 6: x^6+x+1
    0x83,         // 7: x^7+x+1
    0x11D,        // 8: x^8+x^4+x^3+x^2+1
    0x211,        // 9: x^9+x^4+1
    0x409,        // 10: x^10+x^3+1
    0x805,        // 11: x^11+x^2+1
    0x1053,       // 12: x^12+x^6+x^4+x+1
    0x201B,       // 13: x^13+x^4+x^3+x+1
    0x4443,       // 14: x^14+x^10+x^6+x+1
    0x8003,       // 15: x^15+x+1
    0x1100B,      // 16: x^16+x^12+x^3+x+1
    0x20009,      // 17: x^17+x^3+1
    0x40081,      // 18: x^18+x^7+1
    0x80027,      // 19: x^19+x^5+x^2+x+1
    0x100009,     // 20: x^20+x^3+1
    0x200005,     // 21: x^21+x^2+1
    0x400003,     // 22: x^22+x+1
    0x800021,     // 23: x^23+x^5+1
    0x1000087,    // 24: x^24+x^7+x^2+x+1
    0x2000009,    // 25: x^25+x^3+1
    0x4000047,    // 26: x^26+x^6+x^2+x+1
    0x8000027,    // 27: x^27+x^5+x^2+x+1
    0x10000009,   // 28: x^28+x^3+1
    0x20000005,   // 29: x^29+x^2+1
    0x40800007,   // 30: x^30+x^23+x^2+x+1
    0x80000009,   // 31: x^31+x^3+1
    0x100400007,  // 32: x^32+x^22+x^2+x+1
};

// Fields up to this degree multiply through log tables.
constexpr unsigned kTableMaxDegree = 12;

std::uint64_t clmul(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t r = 0;
  while (b != 0) {
    r ^= a & (0 - (b & 1U));
    a <<= 1;
    b >>= 1;
  }
  return r;
}

std::uint64_t reduce(std::uint64_t v, std::uint64_t modulus, unsigned m) noexcept {
  for (unsigned i = 2 * m - 2; i >= m; --i) {
    v ^= (modulus << (i - m)) & (0 - ((v >> i) & 1U));
  }
  return v;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t modulus, unsigned m) {
  std::uint64_t r = 1;
  while (e != 0) {
    if (e & 1U) r = reduce(clmul(r, a), modulus, m);
    a = reduce(clmul(a, a), modulus, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void check_degree(unsigned m) {
  if (m < kMinDegree || m > kMaxDegree) {
    throw BadParameter("field degree must be in [3, 32], got " + std::to_string(m));
  }
}

}  // namespace

struct Field::Tables {
  std::vector<Element> exp;  // 2n entries so log a + log b needs no reduction
  std::vector<std::uint32_t> log;
};

std::uint64_t default_modulus(unsigned m) {
  check_degree(m);
  return kPrimitive[m];
}

bool is_primitive(unsigned m, std::uint64_t modulus) {
  if (m < kMinDegree || m > kMaxDegree) return false;
  if ((modulus >> m) != 1 || (modulus & 1U) == 0) return false;
  const std::uint64_t order = (std::uint64_t{1} << m) - 1;
  if (powmod(2, order, modulus, m) != 1) return false;
  for (auto p : prime_factors(order)) {
    if (powmod(2, order / p, modulus, m) == 1) return false;
  }
  return true;
}

Field::Field(unsigned m) : Field(m, default_modulus(m)) {}

Field::Field(unsigned m, std::uint64_t modulus) : m_(m), modulus_(modulus) {
  check_degree(m);
  if (modulus != kPrimitive[m] && !is_primitive(m, modulus)) {
    throw BadParameter("modulus is not a primitive polynomial of degree " + std::to_string(m));
  }
  if (m <= kTableMaxDegree) {
    auto t = std::make_shared<Tables>();
    const std::size_t n = (std::size_t{1} << m) - 1;
    t->exp.resize(2 * n);
    t->log.assign(n + 1, 0);
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < n; ++i) {
      t->exp[i] = static_cast<Element>(v);
      t->exp[i + n] = static_cast<Element>(v);
      t->log[v] = static_cast<std::uint32_t>(i);
      v = reduce(v << 1, modulus, m);
    }
    tables_ = std::move(t);
  }
}

Element Field::clmul_reduce(Element a, Element b) const noexcept {
  return static_cast<Element>(reduce(clmul(a, b), modulus_, m_));
}

Element Field::mul(Element a, Element b) const noexcept {
  if (tables_) {
    if (a == 0 || b == 0) return 0;
    return tables_->exp[tables_->log[a] + tables_->log[b]];
  }
  return clmul_reduce(a, b);
}

Element Field::inv(Element a) const {
  if (a == 0) throw ArithmeticError("inverse of zero");
  if (tables_) {
    const std::size_t n = nonzero_count();
    return tables_->exp[(n - tables_->log[a]) % n];
  }
  return pow(a, size() - 2);
}

Element Field::pow(Element a, std::uint64_t e) const noexcept {
  Element r = 1;
  while (e != 0) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

void Field::write(Element a, std::vector<std::uint8_t>& out) const {
  for (std::size_t i = element_bytes(); i-- > 0;) {
    out.push_back(static_cast<std::uint8_t>(a >> (8 * i)));
  }
}

Element Field::read(std::span<const std::uint8_t> bytes) const {
  if (bytes.size() != element_bytes()) throw MalformedInput("wrong field element width");
  std::uint64_t v = 0;
  for (auto b : bytes) v = (v << 8) | b;
  if (!contains(v)) throw MalformedInput("field element out of range");
  return static_cast<Element>(v);
}

// ---------------------------------------------------------------------------
// Polynomials

Poly Poly::monomial(Element coeff, std::size_t degree) {
  std::vector<Element> c(degree + 1, 0);
  c[degree] = coeff;
  return Poly(std::move(c));
}

Poly poly_add(const Poly& f, const Poly& g) {
  const auto& big = f.degree() >= g.degree() ? f : g;
  const auto& small = f.degree() >= g.degree() ? g : f;
  std::vector<Element> c(big.coeffs().begin(), big.coeffs().end());
  for (std::size_t i = 0; i < small.coeffs().size(); ++i) c[i] ^= small.coeffs()[i];
  return Poly(std::move(c));
}

Poly poly_mul(const Field& field, const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const auto fc = f.coeffs();
  const auto gc = g.coeffs();
  std::vector<Element> c(fc.size() + gc.size() - 1, 0);
  for (std::size_t i = 0; i < fc.size(); ++i) {
    if (fc[i] == 0) continue;
    for (std::size_t j = 0; j < gc.size(); ++j) c[i + j] ^= field.mul(fc[i], gc[j]);
  }
  return Poly(std::move(c));
}

Poly poly_scale(const Field& field, const Poly& f, Element c) {
  std::vector<Element> out(f.coeffs().begin(), f.coeffs().end());
  for (auto& v : out) v = field.mul(v, c);
  return Poly(std::move(out));
}

std::pair<Poly, Poly> poly_divmod(const Field& field, const Poly& f, const Poly& g) {
  if (g.is_zero()) throw ArithmeticError("division by the zero polynomial");
  if (f.degree() < g.degree()) return {Poly{}, f};
  std::vector<Element> rem(f.coeffs().begin(), f.coeffs().end());
  const auto gc = g.coeffs();
  const std::size_t dg = gc.size() - 1;
  const Element lead_inv = field.inv(g.lead());
  std::vector<Element> quot(rem.size() - dg, 0);
  for (std::size_t i = rem.size(); i-- > dg;) {
    if (rem[i] == 0) continue;
    const Element q = field.mul(rem[i], lead_inv);
    quot[i - dg] = q;
    for (std::size_t j = 0; j <= dg; ++j) rem[i - dg + j] ^= field.mul(q, gc[j]);
  }
  rem.resize(dg);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly poly_mod(const Field& field, const Poly& f, const Poly& g) {
  return poly_divmod(field, f, g).second;
}

Element poly_eval(const Field& field, const Poly& f, Element x) {
  Element acc = 0;
  const auto c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = field.mul(acc, x) ^ c[i];
  return acc;
}

Poly poly_monic(const Field& field, const Poly& f) {
  if (f.is_zero()) return f;
  return poly_scale(field, f, field.inv(f.lead()));
}

Poly poly_gcd(const Field& field, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(field, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(field, a);
}

Poly poly_from_roots(const Field& field, std::span<const Element> roots) {
  std::vector<Element> c{1};
  for (auto r : roots) {
    // multiply by (z + r)
    c.push_back(0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] ^ field.mul(c[i], r);
    c[0] = field.mul(c[0], r);
  }
  return Poly(std::move(c));
}

namespace {

// f(z)^2 mod g; squaring is additive in characteristic 2.
Poly sqr_mod(const Field& field, const Poly& f, const Poly& g) {
  if (f.is_zero()) return f;
  std::vector<Element> c(2 * f.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) c[2 * i] = field.sqr(f.coeffs()[i]);
  return poly_mod(field, Poly(std::move(c)), g);
}

constexpr int kSplitAttempts = 64;

// g is monic, squarefree and splits into linear factors.
void split_roots(const Field& field, const Poly& g, Rng& rng, std::vector<Element>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(g.coeff(0));
    return;
  }
  for (int attempt = 0; attempt < kSplitAttempts; ++attempt) {
    const auto c = static_cast<Element>(1 + uniform_below(rng, field.nonzero_count()));
    // Tr(c z) = sum_{i<m} (c z)^(2^i) mod g
    Poly term = poly_mod(field, Poly{0, c}, g);
    Poly trace = term;
    for (unsigned i = 1; i < field.degree(); ++i) {
      term = sqr_mod(field, term, g);
      trace = poly_add(trace, term);
    }
    Poly h = poly_gcd(field, g, trace);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      auto [rest, rem] = poly_divmod(field, g, h);
      split_roots(field, h, rng, out);
      split_roots(field, rest, rng, out);
      return;
    }
  }
  throw InternalFailure("equal-degree splitting did not converge");
}

}  // namespace

std::optional<std::vector<Element>> poly_roots(const Field& field, const Poly& f, Rng& rng) {
  if (f.is_zero()) throw ArithmeticError("roots of the zero polynomial");
  const Poly g = poly_monic(field, f);
  if (g.degree() == 0) return std::vector<Element>{};

  // g has deg(g) distinct roots iff g divides z^(2^m) - z.
  const Poly z_mod = poly_mod(field, Poly{0, 1}, g);
  Poly frob = z_mod;
  for (unsigned i = 0; i < field.degree(); ++i) frob = sqr_mod(field, frob, g);
  if (frob != z_mod) return std::nullopt;

  std::vector<Element> roots;
  roots.reserve(static_cast<std::size_t>(g.degree()));
  split_roots(field, g, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Element> brute_roots(const Field& field, const Poly& f) {
  if (field.degree() > 16) throw BadParameter("brute_roots is limited to m <= 16");
  std::vector<Element> out;
  for (std::uint64_t x = 0; x < field.size(); ++x) {
    if (poly_eval(field, f, static_cast<Element>(x)) == 0) out.push_back(static_cast<Element>(x));
  }
  return out;
}

}  // namespace fzx::gf2m
