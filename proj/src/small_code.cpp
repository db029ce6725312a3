#include <bit>
#include <string>

#include "fzx/codec.hpp"
#include "fzx/error.hpp"

namespace fzx::codec {

namespace {

unsigned parity(std::uint32_t v) noexcept { return static_cast<unsigned>(std::popcount(v)) & 1U; }

}  // namespace

SmallLinearCode::SmallLinearCode(unsigned n, std::vector<std::uint32_t> parity_rows)
    : n_(n), rows_(std::move(parity_rows)) {
  if (n_ == 0 || n_ > 24) throw BadParameter("small linear codes need 1 <= n <= 24");
  if (rows_.size() > n_) throw BadParameter("more parity rows than positions");
  const std::uint32_t mask = (std::uint32_t{1} << n_) - 1;
  for (auto r : rows_) {
    if ((r & ~mask) != 0) throw BadParameter("parity row wider than n");
  }

  // Reduced row echelon form of H; free columns give the null-space basis.
  std::vector<std::uint32_t> h = rows_;
  std::vector<unsigned> pivots;
  std::size_t rank = 0;
  for (unsigned col = 0; col < n_ && rank < h.size(); ++col) {
    std::size_t p = rank;
    while (p < h.size() && !((h[p] >> col) & 1U)) ++p;
    if (p == h.size()) continue;
    std::swap(h[rank], h[p]);
    for (std::size_t r = 0; r < h.size(); ++r) {
      if (r != rank && ((h[r] >> col) & 1U)) h[r] ^= h[rank];
    }
    pivots.push_back(col);
    ++rank;
  }
  if (rank != rows_.size()) throw BadParameter("parity rows are linearly dependent");

  for (unsigned col = 0; col < n_; ++col) {
    bool is_pivot = false;
    for (auto p : pivots) is_pivot = is_pivot || p == col;
    if (is_pivot) continue;
    std::uint32_t g = std::uint32_t{1} << col;
    for (std::size_t r = 0; r < rank; ++r) {
      if ((h[r] >> col) & 1U) g |= std::uint32_t{1} << pivots[r];
    }
    gen_.push_back(g);
  }

  dmin_ = 0;
  for (std::uint32_t msg = 1; msg < (std::uint32_t{1} << gen_.size()); ++msg) {
    const auto w = static_cast<unsigned>(std::popcount(encode(msg)));
    if (dmin_ == 0 || w < dmin_) dmin_ = w;
  }
}

SmallLinearCode SmallLinearCode::hamming7() {
  std::vector<std::uint32_t> rows(3, 0);
  for (unsigned i = 0; i < 7; ++i) {
    for (unsigned j = 0; j < 3; ++j) {
      if (((i + 1) >> j) & 1U) rows[j] |= std::uint32_t{1} << i;
    }
  }
  return SmallLinearCode(7, std::move(rows));
}

std::uint32_t SmallLinearCode::encode(std::uint32_t message) const noexcept {
  std::uint32_t c = 0;
  for (std::size_t i = 0; i < gen_.size(); ++i) {
    if ((message >> i) & 1U) c ^= gen_[i];
  }
  return c;
}

std::uint32_t small_syndrome(const SmallLinearCode& code, std::uint32_t word) {
  std::uint32_t s = 0;
  const auto& rows = code.parity_rows();
  for (std::size_t j = 0; j < rows.size(); ++j) s |= parity(rows[j] & word) << j;
  return s;
}

std::uint32_t small_decode_brute(const SmallLinearCode& code, std::uint32_t syndrome) {
  const std::uint32_t limit = std::uint32_t{1} << code.n();
  std::uint32_t best = 0;
  int best_weight = -1;
  for (std::uint32_t v = 0; v < limit; ++v) {
    const int w = std::popcount(v);
    if (best_weight >= 0 && w >= best_weight) continue;
    if (small_syndrome(code, v) == syndrome) {
      best = v;
      best_weight = w;
    }
  }
  if (best_weight < 0) throw DecodeFailure("syndrome not reachable");
  return best;
}

}  // namespace fzx::codec
