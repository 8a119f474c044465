#include "gmalg/algebra.hpp"

#include <cassert>
#include <stdexcept>

namespace gmalg {

Algebra::Algebra(std::size_t dim, std::uint32_t p)
    : dim_(dim), p_(p), mult_(dim, dim, dim), unit_(dim, 0) {
  if (!is_odd_prime(p)) throw std::invalid_argument("Algebra: modulus must be an odd prime");
}

Vec Algebra::mul(const Vec& x, const Vec& y) const {
  assert(x.size() == dim_ && y.size() == dim_);
  std::vector<std::uint64_t> acc(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!y[j]) continue;
      const std::uint64_t f = std::uint64_t(x[i]) * y[j] % p_;
      if (!f) continue;
      for (std::size_t k = 0; k < dim_; ++k) acc[k] += f * mult_.at(i, j, k);
    }
  }
  Vec r(dim_);
  for (std::size_t k = 0; k < dim_; ++k) r[k] = std::uint32_t(acc[k] % p_);
  return r;
}

Vec Algebra::mul_basis(std::size_t i, std::size_t j) const {
  Vec r(dim_);
  for (std::size_t k = 0; k < dim_; ++k) r[k] = mult_.at(i, j, k);
  return r;
}

Vec Algebra::bracket(const Vec& x, const Vec& y) const {
  return vec_sub(mul(x, y), mul(y, x), p_);
}

bool Algebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if (mul_basis(i, j) != mul_basis(j, i)) return false;
  return true;
}

std::string AxiomViolation::describe() const {
  switch (kind) {
    case Associativity:
      return "(e" + std::to_string(i) + " e" + std::to_string(j) + ") e" + std::to_string(k) +
             " != e" + std::to_string(i) + " (e" + std::to_string(j) + " e" + std::to_string(k) +
             ")";
    case LeftUnit:
      return "1 e" + std::to_string(i) + " != e" + std::to_string(i);
    default:
      return "e" + std::to_string(i) + " 1 != e" + std::to_string(i);
  }
}

std::vector<AxiomViolation> validate_algebra(const Algebra& a) {
  std::vector<AxiomViolation> out;
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i) {
    if (a.mul(a.unit(), a.basis_vec(i)) != a.basis_vec(i))
      out.push_back({AxiomViolation::LeftUnit, i, 0, 0});
    if (a.mul(a.basis_vec(i), a.unit()) != a.basis_vec(i))
      out.push_back({AxiomViolation::RightUnit, i, 0, 0});
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vec ij = a.mul_basis(i, j);
      for (std::size_t k = 0; k < d; ++k) {
        const Vec lhs = a.mul(ij, a.basis_vec(k));
        const Vec rhs = a.mul(a.basis_vec(i), a.mul_basis(j, k));
        if (lhs != rhs) out.push_back({AxiomViolation::Associativity, i, j, k});
      }
    }
  return out;
}

std::vector<Vec> center_basis(const Algebra& a) {
  const std::size_t d = a.dim();
  RowSpace rs(d, a.p());
  // [z, e_i] = 0: coordinate dd of sum_j z_j (e_j e_i - e_i e_j)
  Vec row(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t dd = 0; dd < d; ++dd) {
      for (std::size_t j = 0; j < d; ++j)
        row[j] = mod_sub(a.c(j, i, dd), a.c(i, j, dd), a.p());
      rs.add_row(row);
    }
  return rs.kernel_of_rows();
}

Vec LinearMap::vectorized() const {
  Vec v(target_dim * source_dim);
  for (std::size_t k = 0; k < target_dim; ++k)
    for (std::size_t i = 0; i < source_dim; ++i) v[k * source_dim + i] = m(k, i);
  return v;
}

LinearMap LinearMap::from_vectorized(const Vec& v, std::size_t src, std::size_t dst,
                                     std::uint32_t p) {
  LinearMap f(src, dst, p);
  for (std::size_t k = 0; k < dst; ++k)
    for (std::size_t i = 0; i < src; ++i) f.m(k, i) = v[k * src + i];
  return f;
}

std::vector<LinearMap> commuting_linear_map_space(const Algebra& a) {
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  // ad[j](dd, k) = coordinate dd of [e_k, e_j]
  std::vector<Mat> ad(d, Mat(d, d, p));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t dd = 0; dd < d; ++dd)
        ad[j](dd, k) = mod_sub(a.c(k, j, dd), a.c(j, k, dd), p);

  RowSpace rs(d * d, p);  // unknown f(k,i) at position k*d+i
  Vec row(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t dd = 0; dd < d; ++dd) {
        std::fill(row.begin(), row.end(), 0);
        for (std::size_t k = 0; k < d; ++k) {
          row[k * d + i] = mod_add(row[k * d + i], ad[j](dd, k), p);
          row[k * d + j] = mod_add(row[k * d + j], ad[i](dd, k), p);
        }
        rs.add_row(row);
      }
  std::vector<LinearMap> out;
  for (const auto& v : rs.kernel_of_rows())
    out.push_back(LinearMap::from_vectorized(v, d, d, p));
  return out;
}

bool is_commuting_linear_map(const Algebra& a, const LinearMap& f) {
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const Vec lhs = a.bracket(f.column(i), a.basis_vec(j));
      const Vec rhs = a.bracket(f.column(j), a.basis_vec(i));
      if (!vec_is_zero(vec_add(lhs, rhs, a.p()))) return false;
    }
  return true;
}

std::optional<ProperLinearWitness> proper_linear_decompose(const Algebra& a,
                                                           const LinearMap& f) {
  if (f.source_dim != a.dim() || f.target_dim != a.dim())
    throw std::invalid_argument("proper_linear_decompose: f must be an endomorphism");
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  const std::vector<Vec> zb = center_basis(a);
  const std::size_t dz = zb.size();
  // unknowns: zeta_s (dz), then eta_{s,i} (dz*d); equations f(e_i) = z e_i + eta(e_i)
  const std::size_t nunk = dz + dz * d;
  Mat sys(d * d, nunk, p);
  Vec rhs(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    const Vec fi = f.column(i);
    for (std::size_t dd = 0; dd < d; ++dd) {
      const std::size_t r = i * d + dd;
      rhs[r] = fi[dd];
      for (std::size_t s = 0; s < dz; ++s) {
        sys(r, s) = a.mul(zb[s], a.basis_vec(i))[dd];
        sys(r, dz + s * d + i) = zb[s][dd];
      }
    }
  }
  auto sol = solve_affine(sys, rhs);
  if (!sol) return std::nullopt;
  ProperLinearWitness w;
  w.z.assign(d, 0);
  for (std::size_t s = 0; s < dz; ++s) w.z = vec_add(w.z, vec_scale(sol->particular[s], zb[s], p), p);
  w.eta = LinearMap(d, d, p);
  for (std::size_t i = 0; i < d; ++i) {
    Vec col(d, 0);
    for (std::size_t s = 0; s < dz; ++s)
      col = vec_add(col, vec_scale(sol->particular[dz + s * d + i], zb[s], p), p);
    w.eta.set_column(i, col);
  }
  return w;
}

Algebra field_algebra(std::uint32_t p) {
  Algebra a(1, p);
  a.c(0, 0, 0) = 1;
  a.set_unit({1});
  return a;
}

std::size_t matrix_unit_index(std::size_t n, std::size_t r, std::size_t c) { return r * n + c; }

Algebra matrix_algebra(std::size_t n, std::uint32_t p) {
  Algebra a(n * n, p);
  // e_rc e_st = delta_{cs} e_rt
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t t = 0; t < n; ++t)
        a.c(matrix_unit_index(n, r, c), matrix_unit_index(n, c, t),
            matrix_unit_index(n, r, t)) = 1;
  Vec u(n * n, 0);
  for (std::size_t r = 0; r < n; ++r) u[matrix_unit_index(n, r, r)] = 1;
  a.set_unit(std::move(u));
  return a;
}

std::size_t triangular_unit_index(std::size_t n, std::size_t r, std::size_t c) {
  assert(r <= c && c < n);
  // row-major over pairs r <= c: row r starts after n + (n-1) + ... + (n-r+1)
  std::size_t off = 0;
  for (std::size_t i = 0; i < r; ++i) off += n - i;
  return off + (c - r);
}

Algebra upper_triangular_algebra(std::size_t n, std::uint32_t p) {
  const std::size_t d = n * (n + 1) / 2;
  Algebra a(d, p);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c)
      for (std::size_t t = c; t < n; ++t)
        a.c(triangular_unit_index(n, r, c), triangular_unit_index(n, c, t),
            triangular_unit_index(n, r, t)) = 1;
  Vec u(d, 0);
  for (std::size_t r = 0; r < n; ++r) u[triangular_unit_index(n, r, r)] = 1;
  a.set_unit(std::move(u));
  return a;
}

Algebra direct_sum(const Algebra& a, const Algebra& b) {
  if (a.p() != b.p()) throw std::invalid_argument("direct_sum: modulus mismatch");
  const std::size_t da = a.dim(), db = b.dim();
  Algebra s(da + db, a.p());
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < da; ++k) s.c(i, j, k) = a.c(i, j, k);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < db; ++k) s.c(da + i, da + j, da + k) = b.c(i, j, k);
  Vec u(da + db, 0);
  for (std::size_t i = 0; i < da; ++i) u[i] = a.unit()[i];
  for (std::size_t i = 0; i < db; ++i) u[da + i] = b.unit()[i];
  s.set_unit(std::move(u));
  return s;
}

}  // namespace gmalg
