#include <algorithm>
#include <optional>

#include "fzx/codec.hpp"
#include "fzx/error.hpp"

namespace fzx::codec {

namespace {

// Solves A x = b given as an augmented matrix. Free variables are set to 0.
std::optional<std::vector<Element>> solve(const Field& f, std::vector<std::vector<Element>> rows,
                                          std::size_t unknowns) {
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Element inv = f.inv(rows[rank][col]);
    for (auto& v : rows[rank]) v = f.mul(v, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Element factor = rows[r][col];
      for (std::size_t c = col; c <= unknowns; ++c) rows[r][c] ^= f.mul(factor, rows[rank][c]);
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (rows[r][unknowns] != 0) return std::nullopt;
  }
  std::vector<Element> x(unknowns, 0);
  for (std::size_t r = 0; r < rank; ++r) x[pivot_cols[r]] = rows[r][unknowns];
  return x;
}

std::size_t agreements(const Field& f, const Poly& p, std::span<const RsPoint> points) {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [&](const RsPoint& pt) {
    return poly_eval(f, p, pt.first) == pt.second;
  }));
}

}  // namespace

Poly rs_decode(const Field& field, std::span<const RsPoint> points, int deg_bound, unsigned max_wrong) {
  const auto n_points = static_cast<long>(points.size());
  const long e = max_wrong;
  if (deg_bound < -1) throw BadParameter("degree bound must be >= -1");
  if (n_points - e <= deg_bound + e) {
    throw BadParameter("outside the unique-decoding regime: need #points - max_wrong > deg_bound + max_wrong");
  }
  std::vector<Element> xs;
  xs.reserve(points.size());
  for (const auto& [x, y] : points) {
    if (!field.contains(x) || !field.contains(y)) throw BadParameter("point outside the field");
    xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) throw BadParameter("duplicate evaluation point");

  const std::size_t need = points.size() - max_wrong;
  if (deg_bound == -1) {
    if (agreements(field, Poly{}, points) < need) throw DecodeFailure("no polynomial within the error bound");
    return {};
  }

  // Unknowns: E_0..E_{e-1} (E monic of degree e), then Q_0..Q_{e+d}.
  const std::size_t ne = static_cast<std::size_t>(e);
  const std::size_t nq = static_cast<std::size_t>(e + deg_bound + 1);
  const std::size_t unknowns = ne + nq;
  std::vector<std::vector<Element>> rows;
  rows.reserve(points.size());
  for (const auto& [x, y] : points) {
    std::vector<Element> row(unknowns + 1, 0);
    Element xp = 1;
    for (std::size_t j = 0; j < std::max(ne, nq); ++j) {
      if (j < ne) row[j] = field.mul(y, xp);
      if (j < nq) row[ne + j] = xp;
      xp = field.mul(xp, x);
    }
    row[unknowns] = field.mul(y, field.pow(x, ne));
    rows.push_back(std::move(row));
  }
  const auto sol = solve(field, std::move(rows), unknowns);
  if (!sol) throw DecodeFailure("Berlekamp-Welch system is inconsistent");

  std::vector<Element> e_coeffs(sol->begin(), sol->begin() + static_cast<long>(ne));
  e_coeffs.push_back(1);
  std::vector<Element> q_coeffs(sol->begin() + static_cast<long>(ne), sol->end());
  auto [quot, rem] = poly_divmod(field, Poly(std::move(q_coeffs)), Poly(std::move(e_coeffs)));
  if (!rem.is_zero() || quot.degree() > deg_bound) throw DecodeFailure("error locator does not divide");
  if (agreements(field, quot, points) < need) throw DecodeFailure("too few agreeing points");
  return quot;
}

}  // namespace fzx::codec
