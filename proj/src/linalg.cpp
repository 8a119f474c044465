#include "gmalg/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gmalg {

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows() || a.modulus() != b.modulus())
    throw std::invalid_argument("mat_mul: shape or modulus mismatch");
  const std::uint32_t p = a.modulus();
  Mat c(a.rows(), b.cols(), p);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (a.rows() * b.cols() > 4096)
#endif
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<std::uint64_t> acc(b.cols(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      std::uint64_t f = a(i, k);
      if (!f) continue;
      const std::uint32_t* br = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] += f * br[j];
    }
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = std::uint32_t(acc[j] % p);
  }
  return c;
}

Vec mat_apply(const Mat& a, const Vec& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("mat_apply: shape mismatch");
  const std::uint32_t p = a.modulus();
  Vec y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::uint64_t acc = 0;
    const std::uint32_t* ar = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) acc += std::uint64_t(ar[j]) * x[j];
    y[i] = std::uint32_t(acc % p);
  }
  return y;
}

namespace {

ElimMode default_mode() {
#ifdef _OPENMP
  if (omp_get_max_threads() > 1) return ElimMode::OpenMP;
#endif
  return ElimMode::Serial;
}

ElimMode g_mode = default_mode();

}  // namespace

void set_elimination_mode(ElimMode mode) { g_mode = mode; }
ElimMode elimination_mode() { return g_mode; }

// ---------------------------------------------------------------------------
// RowSpace (serial streaming kernel)
// ---------------------------------------------------------------------------

RowSpace::RowSpace(std::size_t cols, std::uint32_t p) : cols_(cols), p_(p) {
  // workspace entries grow by at most (p-1)^2 per eliminated pivot
  std::uint64_t step = std::uint64_t(p - 1) * (p - 1);
  reduce_every_ = step ? (~std::uint64_t(0) / 2) / step : ~std::uint64_t(0);
  if (reduce_every_ == 0) reduce_every_ = 1;
}

bool RowSpace::add_row(const Vec& v) {
  assert(v.size() == cols_);
  return add_row(v.data());
}

bool RowSpace::add_row(const std::uint32_t* data) {
  std::vector<std::uint64_t> ws(data, data + cols_);
  std::uint64_t steps = 0;
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    const std::size_t pc = pivots_[t];
    std::uint32_t f = std::uint32_t(ws[pc] % p_);
    if (!f) continue;
    const std::uint32_t f2 = p_ - f;
    const std::uint32_t* er = rows_[t].data();
    for (std::size_t j = pc; j < cols_; ++j) ws[j] += std::uint64_t(f2) * er[j];
    if (++steps >= reduce_every_) {
      for (auto& x : ws) x %= p_;
      steps = 0;
    }
  }
  Vec r(cols_);
  std::size_t lead = cols_;
  for (std::size_t j = 0; j < cols_; ++j) {
    r[j] = std::uint32_t(ws[j] % p_);
    if (lead == cols_ && r[j]) lead = j;
  }
  if (lead == cols_) return false;
  if (r[lead] != 1) {
    const std::uint32_t s = mod_inv(r[lead], p_);
    for (std::size_t j = lead; j < cols_; ++j) r[j] = mod_mul(s, r[j], p_);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
  const std::size_t idx = std::size_t(pos - pivots_.begin());
  pivots_.insert(pos, lead);
  rows_.insert(rows_.begin() + idx, std::move(r));
  reduced_ = false;
  return true;
}

Vec RowSpace::reduce(const Vec& v) const {
  assert(v.size() == cols_);
  std::vector<std::uint64_t> ws(v.begin(), v.end());
  std::uint64_t steps = 0;
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    const std::size_t pc = pivots_[t];
    std::uint32_t f = std::uint32_t(ws[pc] % p_);
    if (!f) continue;
    const std::uint32_t f2 = p_ - f;
    const std::uint32_t* er = rows_[t].data();
    for (std::size_t j = pc; j < cols_; ++j) ws[j] += std::uint64_t(f2) * er[j];
    if (++steps >= reduce_every_) {
      for (auto& x : ws) x %= p_;
      steps = 0;
    }
  }
  Vec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = std::uint32_t(ws[j] % p_);
  return r;
}

void RowSpace::back_substitute() {
  if (reduced_) return;
  for (std::size_t i = rows_.size(); i-- > 0;) {
    std::vector<std::uint64_t> ws(rows_[i].begin(), rows_[i].end());
    std::uint64_t steps = 0;
    for (std::size_t t = i + 1; t < rows_.size(); ++t) {
      const std::size_t pc = pivots_[t];
      std::uint32_t f = std::uint32_t(ws[pc] % p_);
      if (!f) continue;
      const std::uint32_t f2 = p_ - f;
      const std::uint32_t* er = rows_[t].data();
      for (std::size_t j = pc; j < cols_; ++j) ws[j] += std::uint64_t(f2) * er[j];
      if (++steps >= reduce_every_) {
        for (auto& x : ws) x %= p_;
        steps = 0;
      }
    }
    for (std::size_t j = 0; j < cols_; ++j) rows_[i][j] = std::uint32_t(ws[j] % p_);
  }
  reduced_ = true;
}

const std::vector<Vec>& RowSpace::canonical_rows() {
  back_substitute();
  return rows_;
}

std::vector<Vec> RowSpace::kernel_of_rows() {
  back_substitute();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots_) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t fc = 0; fc < cols_; ++fc) {
    if (is_pivot[fc]) continue;
    Vec k(cols_, 0);
    k[fc] = 1;
    for (std::size_t t = 0; t < rows_.size(); ++t) k[pivots_[t]] = mod_neg(rows_[t][fc], p_);
    out.push_back(std::move(k));
  }
  return out;
}

// ---------------------------------------------------------------------------
// rref kernels
// ---------------------------------------------------------------------------

Echelon rref_serial(const Mat& m) {
  RowSpace rs(m.cols(), m.modulus());
  for (std::size_t i = 0; i < m.rows(); ++i) rs.add_row(m.row(i));
  const auto& rows = rs.canonical_rows();
  Echelon e;
  e.reduced = Mat::from_rows(rows, m.cols(), m.modulus());
  e.pivots = rs.pivots();
  return e;
}

Echelon rref_openmp(const Mat& m) {
  Mat w = m;
  const std::uint32_t p = m.modulus();
  const Barrett br(p);
  const std::size_t rows = w.rows(), cols = w.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (w(i, c)) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(w(r, j), w(sel, j));
    if (w(r, c) != 1) {
      const std::uint32_t s = mod_inv(w(r, c), p);
      for (std::size_t j = c; j < cols; ++j) w(r, j) = mod_mul(s, w(r, j), p);
    }
    const std::uint32_t* pr = w.row(r);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const std::uint32_t f = w(i, c);
      if (!f) continue;
      const std::uint32_t f2 = p - f;
      std::uint32_t* wr = w.row(i);
      for (std::size_t j = c; j < cols; ++j)
        wr[j] = br.reduce(wr[j] + std::uint64_t(f2) * pr[j]);
    }
    pivots.push_back(c);
    ++r;
  }
  Echelon e;
  e.reduced = Mat(r, cols, p);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) e.reduced(i, j) = w(i, j);
  e.pivots = std::move(pivots);
  return e;
}

Echelon rref(const Mat& m) {
  return g_mode == ElimMode::OpenMP ? rref_openmp(m) : rref_serial(m);
}

std::optional<Mat> mat_inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("mat_inverse: not square");
  const std::size_t n = a.rows();
  Mat aug(n, 2 * n, a.modulus());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(n, n, a.modulus());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::optional<AffineSolution> solve_affine(const Mat& a, const Vec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_affine: shape mismatch");
  const std::size_t n = a.cols();
  Mat aug(a.rows(), n + 1, a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  Echelon e = rref(aug);
  for (auto c : e.pivots)
    if (c == n) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(n, 0);
  for (std::size_t t = 0; t < e.rank(); ++t) sol.particular[e.pivots[t]] = e.reduced(t, n);
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  for (std::size_t fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    Vec k(n, 0);
    k[fc] = 1;
    for (std::size_t t = 0; t < e.rank(); ++t)
      k[e.pivots[t]] = mod_neg(e.reduced(t, fc), a.modulus());
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

std::vector<Vec> kernel_basis(const Mat& a) {
  RowSpace rs(a.cols(), a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i) rs.add_row(a.row(i));
  return rs.kernel_of_rows();
}

std::vector<Vec> canonical_span(const std::vector<Vec>& vectors, std::size_t n,
                                std::uint32_t p) {
  RowSpace rs(n, p);
  for (const auto& v : vectors) rs.add_row(v);
  return rs.canonical_rows();
}

bool subspace_contains(const std::vector<Vec>& basis, const Vec& v, std::uint32_t p) {
  RowSpace rs(v.size(), p);
  for (const auto& b : basis) rs.add_row(b);
  return rs.contains(v);
}

bool subspace_subset(const std::vector<Vec>& sub, const std::vector<Vec>& super,
                     std::size_t n, std::uint32_t p) {
  RowSpace rs(n, p);
  for (const auto& v : super) rs.add_row(v);
  for (const auto& v : sub)
    if (!rs.contains(v)) return false;
  return true;
}

bool same_subspace(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t n,
                   std::uint32_t p) {
  return canonical_span(a, n, p) == canonical_span(b, n, p);
}

}  // namespace gmalg
