#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gmalg/fp.hpp"

namespace gmalg {

// Dense row-major matrix over F_p.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

  static Mat identity(std::size_t n, std::uint32_t p) {
    Mat m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // columns of the matrix are the given vectors
  static Mat from_columns(const std::vector<Vec>& cols, std::size_t nrows, std::uint32_t p) {
    Mat m(nrows, cols.size(), p);
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  static Mat from_rows(const std::vector<Vec>& rows, std::size_t ncols, std::uint32_t p) {
    Mat m(rows.size(), ncols, p);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < ncols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }

  std::uint32_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::uint32_t* row(std::size_t i) { return a_.data() + i * cols_; }
  const std::uint32_t* row(std::size_t i) const { return a_.data() + i * cols_; }

  Vec row_vec(std::size_t i) const { return Vec(row(i), row(i) + cols_); }
  void set_row(std::size_t i, const Vec& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  Vec col_vec(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Mat transposed() const {
    Mat t(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Mat&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::uint32_t p_ = 0;
  std::vector<std::uint32_t> a_;
};

Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_apply(const Mat& a, const Vec& x);  // a * x
std::optional<Mat> mat_inverse(const Mat& a);

// Third-order tensor t[i][j][k] over F_p.
struct Tensor3 {
  std::size_t d0 = 0, d1 = 0, d2 = 0;
  std::vector<std::uint32_t> a;

  Tensor3() = default;
  Tensor3(std::size_t n0, std::size_t n1, std::size_t n2)
      : d0(n0), d1(n1), d2(n2), a(n0 * n1 * n2, 0) {}

  std::uint32_t& at(std::size_t i, std::size_t j, std::size_t k) {
    return a[(i * d1 + j) * d2 + k];
  }
  std::uint32_t at(std::size_t i, std::size_t j, std::size_t k) const {
    return a[(i * d1 + j) * d2 + k];
  }
  bool operator==(const Tensor3&) const = default;
};

// ---------------------------------------------------------------------------
// Elimination kernels.
//
// rref() is the single entry point; it dispatches between a serial
// streaming kernel (the reference) and an OpenMP Gauss-Jordan kernel.
// Both produce the reduced row echelon form of the row space with zero
// rows dropped and rows sorted by pivot column; since RREF is canonical
// the two kernels agree bit for bit.
// ---------------------------------------------------------------------------

enum class ElimMode { Serial, OpenMP };
void set_elimination_mode(ElimMode mode);
ElimMode elimination_mode();

struct Echelon {
  Mat reduced;                       // rank x cols, pivots scaled to 1
  std::vector<std::size_t> pivots;   // pivot column per row
  std::size_t rank() const { return pivots.size(); }
};

Echelon rref(const Mat& m);
Echelon rref_serial(const Mat& m);
Echelon rref_openmp(const Mat& m);

// Streaming row-space accumulator. Rows are reduced on insertion against
// the current echelon set using lazy 64-bit accumulation (one remainder
// per column per insert instead of one per multiply).
class RowSpace {
 public:
  RowSpace(std::size_t cols, std::uint32_t p);

  bool add_row(const Vec& v);               // returns true if the rank grew
  bool add_row(const std::uint32_t* data);  // length cols, entries in [0,p)

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }

  // residual of v after reduction; zero entries at every pivot column,
  // and zero overall iff v lies in the row space
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

  // canonical reduced-echelon rows (idempotent; finalizes in place)
  const std::vector<Vec>& canonical_rows();
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // basis of { x : R x = 0 } where R stacks the accumulated rows;
  // finalizes in place
  std::vector<Vec> kernel_of_rows();

 private:
  void back_substitute();

  std::size_t cols_;
  std::uint32_t p_;
  std::uint64_t reduce_every_;  // overflow guard for the 64-bit workspace
  std::vector<Vec> rows_;       // echelon rows sorted by pivot, pivot = 1
  std::vector<std::size_t> pivots_;
  bool reduced_ = false;
};

struct AffineSolution {
  Vec particular;            // free coordinates set to zero
  std::vector<Vec> kernel;   // canonical basis of the homogeneous solutions
};

// Solve a x = b; nullopt when the system is inconsistent.
std::optional<AffineSolution> solve_affine(const Mat& a, const Vec& b);

std::vector<Vec> kernel_basis(const Mat& a);

// canonical (rref) basis of the span of the given vectors
std::vector<Vec> canonical_span(const std::vector<Vec>& vectors, std::size_t n,
                                std::uint32_t p);

bool subspace_contains(const std::vector<Vec>& basis, const Vec& v, std::uint32_t p);

bool subspace_subset(const std::vector<Vec>& sub, const std::vector<Vec>& super,
                     std::size_t n, std::uint32_t p);

bool same_subspace(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t n,
                   std::uint32_t p);

}  // namespace gmalg
