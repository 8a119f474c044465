#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmalg/linalg.hpp"

namespace gmalg {

// Finite-dimensional associative unital algebra over F_p, presented by
// structure constants: e_i * e_j = sum_k mult[i][j][k] e_k.
class Algebra {
 public:
  Algebra() = default;
  Algebra(std::size_t dim, std::uint32_t p);

  std::size_t dim() const { return dim_; }
  std::uint32_t p() const { return p_; }

  std::uint32_t& c(std::size_t i, std::size_t j, std::size_t k) { return mult_.at(i, j, k); }
  std::uint32_t c(std::size_t i, std::size_t j, std::size_t k) const { return mult_.at(i, j, k); }
  const Tensor3& mult() const { return mult_; }
  Tensor3& mult() { return mult_; }

  const Vec& unit() const { return unit_; }
  void set_unit(Vec u) { unit_ = std::move(u); }

  Vec basis_vec(std::size_t i) const {
    Vec v(dim_, 0);
    v[i] = 1;
    return v;
  }

  Vec mul(const Vec& x, const Vec& y) const;
  Vec mul_basis(std::size_t i, std::size_t j) const;  // e_i * e_j
  Vec bracket(const Vec& x, const Vec& y) const;      // xy - yx
  Vec square(const Vec& x) const { return mul(x, x); }

  bool is_commutative() const;

  bool operator==(const Algebra&) const = default;

 private:
  std::size_t dim_ = 0;
  std::uint32_t p_ = 0;
  Tensor3 mult_;
  Vec unit_;
};

struct AxiomViolation {
  enum Kind { Associativity, LeftUnit, RightUnit };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;
  std::string describe() const;
  bool operator==(const AxiomViolation&) const = default;
};

// Reports every failed associativity / unit-law basis triple.
std::vector<AxiomViolation> validate_algebra(const Algebra& a);

// Canonical basis of the center, computed as the joint kernel of all
// basis commutator constraints [z, e_i] = 0.
std::vector<Vec> center_basis(const Algebra& a);

// Linear map between coordinate spaces; column j holds the image of e_j.
struct LinearMap {
  std::size_t source_dim = 0, target_dim = 0;
  Mat m;

  LinearMap() = default;
  LinearMap(std::size_t src, std::size_t dst, std::uint32_t p)
      : source_dim(src), target_dim(dst), m(dst, src, p) {}
  explicit LinearMap(Mat mat)
      : source_dim(mat.cols()), target_dim(mat.rows()), m(std::move(mat)) {}

  Vec apply(const Vec& x) const { return mat_apply(m, x); }
  Vec column(std::size_t j) const { return m.col_vec(j); }
  void set_column(std::size_t j, const Vec& v) {
    for (std::size_t i = 0; i < target_dim; ++i) m(i, j) = v[i];
  }
  Vec vectorized() const;  // row-major flattening of m
  static LinearMap from_vectorized(const Vec& v, std::size_t src, std::size_t dst,
                                   std::uint32_t p);
  bool operator==(const LinearMap&) const = default;
};

// Canonical basis of { f : [f(x), x] = 0 for all x }, assembled from the
// polarized condition [f(e_i), e_j] + [f(e_j), e_i] = 0 (valid since p is odd).
std::vector<LinearMap> commuting_linear_map_space(const Algebra& a);

// Pointwise check of a single map, used as an independent verifier.
bool is_commuting_linear_map(const Algebra& a, const LinearMap& f);

// Witness of the proper form f(x) = z x + eta(x) with z central and eta
// mapping into the center.
struct ProperLinearWitness {
  Vec z;          // element of the algebra, inside span(center)
  LinearMap eta;  // endomorphism with image inside span(center)
};

std::optional<ProperLinearWitness> proper_linear_decompose(const Algebra& a,
                                                           const LinearMap& f);

// --- stock algebras used by builders and tests ---

Algebra field_algebra(std::uint32_t p);                       // F_p
Algebra matrix_algebra(std::size_t n, std::uint32_t p);       // M_n(F_p), basis e_rc row-major
Algebra upper_triangular_algebra(std::size_t n, std::uint32_t p);  // T_n(F_p), basis e_rc, r<=c
Algebra direct_sum(const Algebra& a, const Algebra& b);

// basis index helpers for the stock algebras
std::size_t matrix_unit_index(std::size_t n, std::size_t r, std::size_t c);
std::size_t triangular_unit_index(std::size_t n, std::size_t r, std::size_t c);

}  // namespace gmalg
