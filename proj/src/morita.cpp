#include "gmalg/morita.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gmalg {

Vec Bimodule::act_left(const Vec& a, const Vec& u) const {
  assert(a.size() == left_dim && u.size() == dim);
  std::vector<std::uint64_t> acc(dim, 0);
  for (std::size_t i = 0; i < left_dim; ++i) {
    if (!a[i]) continue;
    for (std::size_t m = 0; m < dim; ++m) {
      if (!u[m]) continue;
      const std::uint64_t f = std::uint64_t(a[i]) * u[m] % p;
      if (!f) continue;
      for (std::size_t k = 0; k < dim; ++k) acc[k] += f * left.at(i, m, k);
    }
  }
  Vec r(dim);
  for (std::size_t k = 0; k < dim; ++k) r[k] = std::uint32_t(acc[k] % p);
  return r;
}

Vec Bimodule::act_right(const Vec& u, const Vec& b) const {
  assert(u.size() == dim && b.size() == right_dim);
  std::vector<std::uint64_t> acc(dim, 0);
  for (std::size_t m = 0; m < dim; ++m) {
    if (!u[m]) continue;
    for (std::size_t j = 0; j < right_dim; ++j) {
      if (!b[j]) continue;
      const std::uint64_t f = std::uint64_t(u[m]) * b[j] % p;
      if (!f) continue;
      for (std::size_t k = 0; k < dim; ++k) acc[k] += f * right.at(m, j, k);
    }
  }
  Vec r(dim);
  for (std::size_t k = 0; k < dim; ++k) r[k] = std::uint32_t(acc[k] % p);
  return r;
}

Vec MoritaContext::pairing_phi(const Vec& m, const Vec& n) const {
  const std::uint32_t p = A.p();
  std::vector<std::uint64_t> acc(A.dim(), 0);
  for (std::size_t i = 0; i < M.dim; ++i) {
    if (!m[i]) continue;
    for (std::size_t j = 0; j < N.dim; ++j) {
      if (!n[j]) continue;
      const std::uint64_t f = std::uint64_t(m[i]) * n[j] % p;
      if (!f) continue;
      for (std::size_t k = 0; k < A.dim(); ++k) acc[k] += f * phi.at(i, j, k);
    }
  }
  Vec r(A.dim());
  for (std::size_t k = 0; k < A.dim(); ++k) r[k] = std::uint32_t(acc[k] % p);
  return r;
}

Vec MoritaContext::pairing_psi(const Vec& n, const Vec& m) const {
  const std::uint32_t p = B.p();
  std::vector<std::uint64_t> acc(B.dim(), 0);
  for (std::size_t i = 0; i < N.dim; ++i) {
    if (!n[i]) continue;
    for (std::size_t j = 0; j < M.dim; ++j) {
      if (!m[j]) continue;
      const std::uint64_t f = std::uint64_t(n[i]) * m[j] % p;
      if (!f) continue;
      for (std::size_t k = 0; k < B.dim(); ++k) acc[k] += f * psi.at(i, j, k);
    }
  }
  Vec r(B.dim());
  for (std::size_t k = 0; k < B.dim(); ++k) r[k] = std::uint32_t(acc[k] % p);
  return r;
}

std::string MoritaViolation::describe() const {
  return axiom + " at (" + std::to_string(idx[0]) + "," + std::to_string(idx[1]) + "," +
         std::to_string(idx[2]) + ")";
}

namespace {

struct BlockElem {
  Vec a, m, n, b;
};

BlockElem block_mul(const MoritaContext& c, const BlockElem& x, const BlockElem& y) {
  const std::uint32_t p = c.A.p();
  BlockElem r;
  r.a = vec_add(c.A.mul(x.a, y.a), c.pairing_phi(x.m, y.n), p);
  r.m = vec_add(c.M.act_left(x.a, y.m), c.M.act_right(x.m, y.b), p);
  r.n = vec_add(c.N.act_right(x.n, y.a), c.N.act_left(x.b, y.n), p);
  r.b = vec_add(c.pairing_psi(x.n, y.m), c.B.mul(x.b, y.b), p);
  return r;
}

}  // namespace

std::vector<MoritaViolation> validate_morita(const MoritaContext& c) {
  std::vector<MoritaViolation> out;
  const std::size_t da = c.A.dim(), db = c.B.dim(), dm = c.M.dim, dn = c.N.dim;
  auto bv = [](std::size_t d, std::size_t i) {
    Vec v(d, 0);
    v[i] = 1;
    return v;
  };

  if (dm + dn == 0) out.push_back({"M_or_N_nonzero", {0, 0, 0}});

  // bimodule axioms for M
  for (std::size_t m = 0; m < dm; ++m) {
    const Vec um = bv(dm, m);
    if (c.M.act_left(c.A.unit(), um) != um) out.push_back({"M_left_unit", {m, 0, 0}});
    if (c.M.act_right(um, c.B.unit()) != um) out.push_back({"M_right_unit", {m, 0, 0}});
  }
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t m = 0; m < dm; ++m) {
        const Vec um = bv(dm, m);
        if (c.M.act_left(c.A.mul_basis(i, j), um) !=
            c.M.act_left(bv(da, i), c.M.act_left(bv(da, j), um)))
          out.push_back({"M_left_assoc", {i, j, m}});
      }
  for (std::size_t m = 0; m < dm; ++m)
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < db; ++j) {
        const Vec um = bv(dm, m);
        if (c.M.act_right(um, c.B.mul_basis(i, j)) !=
            c.M.act_right(c.M.act_right(um, bv(db, i)), bv(db, j)))
          out.push_back({"M_right_assoc", {m, i, j}});
      }
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t m = 0; m < dm; ++m)
      for (std::size_t j = 0; j < db; ++j) {
        const Vec um = bv(dm, m);
        if (c.M.act_right(c.M.act_left(bv(da, i), um), bv(db, j)) !=
            c.M.act_left(bv(da, i), c.M.act_right(um, bv(db, j))))
          out.push_back({"M_bimodule_compat", {i, m, j}});
      }

  // bimodule axioms for N (left B, right A)
  for (std::size_t n = 0; n < dn; ++n) {
    const Vec vn = bv(dn, n);
    if (c.N.act_left(c.B.unit(), vn) != vn) out.push_back({"N_left_unit", {n, 0, 0}});
    if (c.N.act_right(vn, c.A.unit()) != vn) out.push_back({"N_right_unit", {n, 0, 0}});
  }
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t n = 0; n < dn; ++n) {
        const Vec vn = bv(dn, n);
        if (c.N.act_left(c.B.mul_basis(i, j), vn) !=
            c.N.act_left(bv(db, i), c.N.act_left(bv(db, j), vn)))
          out.push_back({"N_left_assoc", {i, j, n}});
      }
  for (std::size_t n = 0; n < dn; ++n)
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        const Vec vn = bv(dn, n);
        if (c.N.act_right(vn, c.A.mul_basis(i, j)) !=
            c.N.act_right(c.N.act_right(vn, bv(da, i)), bv(da, j)))
          out.push_back({"N_right_assoc", {n, i, j}});
      }
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t n = 0; n < dn; ++n)
      for (std::size_t j = 0; j < da; ++j) {
        const Vec vn = bv(dn, n);
        if (c.N.act_right(c.N.act_left(bv(db, i), vn), bv(da, j)) !=
            c.N.act_left(bv(db, i), c.N.act_right(vn, bv(da, j))))
          out.push_back({"N_bimodule_compat", {i, n, j}});
      }

  // pairing module-homomorphism laws
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t m = 0; m < dm; ++m)
      for (std::size_t n = 0; n < dn; ++n) {
        const Vec um = bv(dm, m), vn = bv(dn, n), ei = bv(da, i);
        if (c.pairing_phi(c.M.act_left(ei, um), vn) !=
            c.A.mul(ei, c.pairing_phi(um, vn)))
          out.push_back({"phi_left_A_linear", {i, m, n}});
        if (c.pairing_phi(um, c.N.act_right(vn, ei)) !=
            c.A.mul(c.pairing_phi(um, vn), ei))
          out.push_back({"phi_right_A_linear", {m, n, i}});
      }
  for (std::size_t m = 0; m < dm; ++m)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t n = 0; n < dn; ++n) {
        const Vec um = bv(dm, m), vn = bv(dn, n), ej = bv(db, j);
        if (c.pairing_phi(c.M.act_right(um, ej), vn) !=
            c.pairing_phi(um, c.N.act_left(ej, vn)))
          out.push_back({"phi_balanced", {m, j, n}});
      }
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t n = 0; n < dn; ++n)
      for (std::size_t m = 0; m < dm; ++m) {
        const Vec um = bv(dm, m), vn = bv(dn, n), ej = bv(db, j);
        if (c.pairing_psi(c.N.act_left(ej, vn), um) !=
            c.B.mul(ej, c.pairing_psi(vn, um)))
          out.push_back({"psi_left_B_linear", {j, n, m}});
        if (c.pairing_psi(vn, c.M.act_right(um, ej)) !=
            c.B.mul(c.pairing_psi(vn, um), ej))
          out.push_back({"psi_right_B_linear", {n, m, j}});
      }
  for (std::size_t n = 0; n < dn; ++n)
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t m = 0; m < dm; ++m) {
        const Vec um = bv(dm, m), vn = bv(dn, n), ei = bv(da, i);
        if (c.pairing_psi(c.N.act_right(vn, ei), um) !=
            c.pairing_psi(vn, c.M.act_left(ei, um)))
          out.push_back({"psi_balanced", {n, i, m}});
      }

  // associativity diagrams
  for (std::size_t m = 0; m < dm; ++m)
    for (std::size_t n = 0; n < dn; ++n)
      for (std::size_t m2 = 0; m2 < dm; ++m2) {
        const Vec um = bv(dm, m), vn = bv(dn, n), um2 = bv(dm, m2);
        if (c.M.act_left(c.pairing_phi(um, vn), um2) !=
            c.M.act_right(um, c.pairing_psi(vn, um2)))
          out.push_back({"diagram_phi(m,n)m'=m.psi(n,m')", {m, n, m2}});
      }
  for (std::size_t n = 0; n < dn; ++n)
    for (std::size_t m = 0; m < dm; ++m)
      for (std::size_t n2 = 0; n2 < dn; ++n2) {
        const Vec um = bv(dm, m), vn = bv(dn, n), vn2 = bv(dn, n2);
        if (c.N.act_left(c.pairing_psi(vn, um), vn2) !=
            c.N.act_right(vn, c.pairing_phi(um, vn2)))
          out.push_back({"diagram_psi(n,m)n'=n.phi(m,n')", {n, m, n2}});
      }

  return out;
}

// ---------------------------------------------------------------------------
// Gma
// ---------------------------------------------------------------------------

Gma::Gma(MoritaContext ctx) : ctx_(std::move(ctx)) {
  const std::size_t da = ctx_.A.dim(), dm = ctx_.M.dim, dn = ctx_.N.dim, db = ctx_.B.dim();
  const std::size_t d = da + dm + dn + db;
  const std::uint32_t p = ctx_.A.p();
  if (ctx_.B.p() != p || ctx_.M.p != p || ctx_.N.p != p)
    throw std::invalid_argument("Gma: mixed moduli");
  if (ctx_.M.left_dim != da || ctx_.M.right_dim != db || ctx_.N.left_dim != db ||
      ctx_.N.right_dim != da)
    throw std::invalid_argument("Gma: bimodule dimensions do not match the corner algebras");

  flat_ = Algebra(d, p);
  auto to_blocks = [&](std::size_t idx) {
    BlockElem e{Vec(da, 0), Vec(dm, 0), Vec(dn, 0), Vec(db, 0)};
    if (idx < da)
      e.a[idx] = 1;
    else if (idx < da + dm)
      e.m[idx - da] = 1;
    else if (idx < da + dm + dn)
      e.n[idx - da - dm] = 1;
    else
      e.b[idx - da - dm - dn] = 1;
    return e;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const BlockElem r = block_mul(ctx_, to_blocks(i), to_blocks(j));
      for (std::size_t k = 0; k < da; ++k) flat_.c(i, j, k) = r.a[k];
      for (std::size_t k = 0; k < dm; ++k) flat_.c(i, j, da + k) = r.m[k];
      for (std::size_t k = 0; k < dn; ++k) flat_.c(i, j, da + dm + k) = r.n[k];
      for (std::size_t k = 0; k < db; ++k) flat_.c(i, j, da + dm + dn + k) = r.b[k];
    }
  Vec u(d, 0);
  for (std::size_t k = 0; k < da; ++k) u[k] = ctx_.A.unit()[k];
  for (std::size_t k = 0; k < db; ++k) u[da + dm + dn + k] = ctx_.B.unit()[k];
  flat_.set_unit(std::move(u));
}

std::size_t Gma::block_of(std::size_t flat_idx) const {
  if (flat_idx < off_m()) return 0;
  if (flat_idx < off_n()) return 1;
  if (flat_idx < off_b()) return 2;
  return 3;
}

std::size_t Gma::block_offset(std::size_t blk) const {
  switch (blk) {
    case 0: return off_a();
    case 1: return off_m();
    case 2: return off_n();
    default: return off_b();
  }
}

std::size_t Gma::block_dim(std::size_t blk) const {
  switch (blk) {
    case 0: return dim_a();
    case 1: return dim_m();
    case 2: return dim_n();
    default: return dim_b();
  }
}

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

Gma build_block_partition(std::size_t n, std::size_t k, std::uint32_t p) {
  if (k == 0 || k >= n) throw std::invalid_argument("build_block_partition: need 0 < k < n");
  if (!is_odd_prime(p)) throw std::invalid_argument("build_block_partition: p must be an odd prime");
  const std::size_t q = n - k;
  MoritaContext c;
  c.A = matrix_algebra(k, p);
  c.B = matrix_algebra(q, p);
  c.M = Bimodule(k * q, k * k, q * q, p);
  c.N = Bimodule(q * k, q * q, k * k, p);
  auto mi = [&](std::size_t r, std::size_t cc) { return r * q + cc; };  // k x q block
  auto ni = [&](std::size_t r, std::size_t cc) { return r * k + cc; };  // q x k block
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t cc = 0; cc < q; ++cc)
        c.M.left.at(matrix_unit_index(k, i, j), mi(j, cc), mi(i, cc)) = 1;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t s = 0; s < q; ++s)
      for (std::size_t t = 0; t < q; ++t)
        c.M.right.at(mi(r, s), matrix_unit_index(q, s, t), mi(r, t)) = 1;
  for (std::size_t s = 0; s < q; ++s)
    for (std::size_t t = 0; t < q; ++t)
      for (std::size_t cc = 0; cc < k; ++cc)
        c.N.left.at(matrix_unit_index(q, s, t), ni(t, cc), ni(s, cc)) = 1;
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t t = 0; t < k; ++t)
        c.N.right.at(ni(r, s), matrix_unit_index(k, s, t), ni(r, t)) = 1;
  c.phi = Tensor3(k * q, q * k, k * k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t s = 0; s < q; ++s)
      for (std::size_t t = 0; t < k; ++t)
        c.phi.at(mi(r, s), ni(s, t), matrix_unit_index(k, r, t)) = 1;
  c.psi = Tensor3(q * k, k * q, q * q);
  for (std::size_t s = 0; s < q; ++s)
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t cc = 0; cc < q; ++cc)
        c.psi.at(ni(s, t), mi(t, cc), matrix_unit_index(q, s, cc)) = 1;
  return Gma(std::move(c));
}

std::size_t block_partition_flat_index(std::size_t n, std::size_t k, std::size_t r,
                                       std::size_t c) {
  const std::size_t q = n - k;
  if (r < k && c < k) return r * k + c;
  if (r < k) return k * k + r * q + (c - k);
  if (c < k) return k * k + k * q + (r - k) * k + c;
  return k * k + 2 * k * q + (r - k) * q + (c - k);
}

Gma build_triangular(Algebra a, Bimodule m, Algebra b) {
  if (m.dim == 0)
    throw std::invalid_argument("build_triangular: M must be nonzero (a GMA needs M or N != 0)");
  if (m.left_dim != a.dim() || m.right_dim != b.dim() || m.p != a.p() || b.p() != a.p())
    throw std::invalid_argument("build_triangular: bimodule does not fit the corner algebras");
  MoritaContext c;
  const std::uint32_t p = a.p();
  const std::size_t da = a.dim(), db = b.dim(), dm = m.dim;
  c.A = std::move(a);
  c.B = std::move(b);
  c.M = std::move(m);
  c.N = Bimodule(0, db, da, p);
  c.phi = Tensor3(dm, 0, da);
  c.psi = Tensor3(0, dm, db);
  return Gma(std::move(c));
}

Gma build_triangular_tn(std::size_t n, std::uint32_t p) {
  if (n < 2) throw std::invalid_argument("build_triangular_tn: need n >= 2");
  Algebra a = field_algebra(p);
  Algebra b = upper_triangular_algebra(n - 1, p);
  Bimodule m(n - 1, 1, b.dim(), p);
  for (std::size_t i = 0; i < n - 1; ++i) m.left.at(0, i, i) = 1;
  for (std::size_t r = 0; r < n - 1; ++r)
    for (std::size_t cc = r; cc < n - 1; ++cc)
      m.right.at(r, triangular_unit_index(n - 1, r, cc), cc) = 1;
  return build_triangular(std::move(a), std::move(m), std::move(b));
}

Gma build_nonloyal_demo(std::uint32_t p) {
  Algebra corner = direct_sum(field_algebra(p), field_algebra(p));
  Bimodule m(2, 2, 2, p);
  for (std::size_t i = 0; i < 2; ++i) {
    m.left.at(i, i, i) = 1;
    m.right.at(i, i, i) = 1;
  }
  return build_triangular(corner, std::move(m), corner);
}

namespace {

// coordinates of v in the given basis (rows of a full-rank list)
Vec express_in_basis(const std::vector<Vec>& basis, const Vec& v, std::size_t n,
                     std::uint32_t p) {
  auto sol = solve_affine(Mat::from_columns(basis, n, p), v);
  if (!sol) throw std::runtime_error("express_in_basis: vector outside span");
  return sol->particular;
}

}  // namespace

Mat peirce_coordinate_map(const Algebra& a, const Vec& e) {
  const std::uint32_t p = a.p();
  const std::size_t d = a.dim();
  const Vec f = vec_sub(a.unit(), e, p);
  std::vector<Vec> images[4];
  for (std::size_t i = 0; i < d; ++i) {
    const Vec x = a.basis_vec(i);
    images[0].push_back(a.mul(e, a.mul(x, e)));
    images[1].push_back(a.mul(e, a.mul(x, f)));
    images[2].push_back(a.mul(f, a.mul(x, e)));
    images[3].push_back(a.mul(f, a.mul(x, f)));
  }
  std::vector<Vec> cols;
  for (auto& im : images)
    for (auto& v : canonical_span(im, d, p)) cols.push_back(v);
  return Mat::from_columns(cols, d, p);
}

Gma build_from_idempotent(const Algebra& a, const Vec& e) {
  const std::uint32_t p = a.p();
  const std::size_t d = a.dim();
  if (e.size() != d) throw std::invalid_argument("build_from_idempotent: bad idempotent size");
  if (a.mul(e, e) != e) throw NotIdempotentError("build_from_idempotent: e*e != e");
  if (vec_is_zero(e) || e == a.unit())
    throw TrivialIdempotentError("build_from_idempotent: e must differ from 0 and 1");
  const Vec f = vec_sub(a.unit(), e, p);

  auto corner_basis = [&](const Vec& l, const Vec& r) {
    std::vector<Vec> im;
    for (std::size_t i = 0; i < d; ++i) im.push_back(a.mul(l, a.mul(a.basis_vec(i), r)));
    return canonical_span(im, d, p);
  };
  const std::vector<Vec> ba = corner_basis(e, e), bm = corner_basis(e, f),
                         bn = corner_basis(f, e), bb = corner_basis(f, f);
  const std::size_t da = ba.size(), dm = bm.size(), dn = bn.size(), db = bb.size();
  assert(da + dm + dn + db == d);

  auto expr = [&](const std::vector<Vec>& basis, const Vec& v) {
    return express_in_basis(basis, v, d, p);
  };

  MoritaContext c;
  c.A = Algebra(da, p);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Vec prod = expr(ba, a.mul(ba[i], ba[j]));
      for (std::size_t k = 0; k < da; ++k) c.A.c(i, j, k) = prod[k];
    }
  c.A.set_unit(expr(ba, e));
  c.B = Algebra(db, p);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      const Vec prod = expr(bb, a.mul(bb[i], bb[j]));
      for (std::size_t k = 0; k < db; ++k) c.B.c(i, j, k) = prod[k];
    }
  c.B.set_unit(expr(bb, f));

  c.M = Bimodule(dm, da, db, p);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t m = 0; m < dm; ++m) {
      const Vec v = expr(bm, a.mul(ba[i], bm[m]));
      for (std::size_t k = 0; k < dm; ++k) c.M.left.at(i, m, k) = v[k];
    }
  for (std::size_t m = 0; m < dm; ++m)
    for (std::size_t j = 0; j < db; ++j) {
      const Vec v = expr(bm, a.mul(bm[m], bb[j]));
      for (std::size_t k = 0; k < dm; ++k) c.M.right.at(m, j, k) = v[k];
    }
  c.N = Bimodule(dn, db, da, p);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t n = 0; n < dn; ++n) {
      const Vec v = expr(bn, a.mul(bb[j], bn[n]));
      for (std::size_t k = 0; k < dn; ++k) c.N.left.at(j, n, k) = v[k];
    }
  for (std::size_t n = 0; n < dn; ++n)
    for (std::size_t i = 0; i < da; ++i) {
      const Vec v = expr(bn, a.mul(bn[n], ba[i]));
      for (std::size_t k = 0; k < dn; ++k) c.N.right.at(n, i, k) = v[k];
    }
  c.phi = Tensor3(dm, dn, da);
  for (std::size_t m = 0; m < dm; ++m)
    for (std::size_t n = 0; n < dn; ++n) {
      const Vec v = expr(ba, a.mul(bm[m], bn[n]));
      for (std::size_t k = 0; k < da; ++k) c.phi.at(m, n, k) = v[k];
    }
  c.psi = Tensor3(dn, dm, db);
  for (std::size_t n = 0; n < dn; ++n)
    for (std::size_t m = 0; m < dm; ++m) {
      const Vec v = expr(bb, a.mul(bn[n], bm[m]));
      for (std::size_t k = 0; k < db; ++k) c.psi.at(n, m, k) = v[k];
    }
  return Gma(std::move(c));
}

// ---------------------------------------------------------------------------
// center machinery
// ---------------------------------------------------------------------------

CenterData gma_center(const Gma& g) {
  const MoritaContext& c = g.context();
  const std::uint32_t p = g.p();
  const std::size_t da = g.dim_a(), db = g.dim_b(), dm = g.dim_m(), dn = g.dim_n();
  // unknowns (a | b); constraints: a in Z(A), b in Z(B), a.u = u.b, v.a = b.v
  RowSpace rs(da + db, p);
  Vec row(da + db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t dd = 0; dd < da; ++dd) {
      std::fill(row.begin(), row.end(), 0);
      for (std::size_t j = 0; j < da; ++j) row[j] = mod_sub(c.A.c(j, i, dd), c.A.c(i, j, dd), p);
      rs.add_row(row);
    }
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t dd = 0; dd < db; ++dd) {
      std::fill(row.begin(), row.end(), 0);
      for (std::size_t j = 0; j < db; ++j)
        row[da + j] = mod_sub(c.B.c(j, i, dd), c.B.c(i, j, dd), p);
      rs.add_row(row);
    }
  for (std::size_t m = 0; m < dm; ++m)
    for (std::size_t k = 0; k < dm; ++k) {
      std::fill(row.begin(), row.end(), 0);
      for (std::size_t i = 0; i < da; ++i) row[i] = c.M.left.at(i, m, k);
      for (std::size_t j = 0; j < db; ++j) row[da + j] = mod_neg(c.M.right.at(m, j, k), p);
      rs.add_row(row);
    }
  for (std::size_t n = 0; n < dn; ++n)
    for (std::size_t k = 0; k < dn; ++k) {
      std::fill(row.begin(), row.end(), 0);
      for (std::size_t i = 0; i < da; ++i) row[i] = c.N.right.at(n, i, k);
      for (std::size_t j = 0; j < db; ++j) row[da + j] = mod_neg(c.N.left.at(j, n, k), p);
      rs.add_row(row);
    }

  CenterData out;
  std::vector<Vec> flat_basis;
  for (const auto& ab : rs.kernel_of_rows()) {
    Vec z(g.dim(), 0);
    for (std::size_t i = 0; i < da; ++i) z[g.off_a() + i] = ab[i];
    for (std::size_t j = 0; j < db; ++j) z[g.off_b() + j] = ab[da + j];
    flat_basis.push_back(std::move(z));
  }
  out.basis = canonical_span(flat_basis, g.dim(), p);
  for (const auto& z : out.basis) {
    out.pi_a.push_back(g.part_a(z));
    out.pi_b.push_back(g.part_b(z));
  }
  out.pi_a_span = canonical_span(out.pi_a, da, p);
  out.pi_b_span = canonical_span(out.pi_b, db, p);
  out.phi_well_defined = out.pi_a_span.size() == out.basis.size();
  out.phi_injective = out.pi_b_span.size() == out.basis.size();
  return out;
}

std::optional<Vec> phi_apply(const CenterData& c, const Gma& g, const Vec& a) {
  if (c.basis.empty()) return std::nullopt;
  auto sol = solve_affine(Mat::from_columns(c.pi_a, g.dim_a(), g.p()), a);
  if (!sol) return std::nullopt;
  Vec b(g.dim_b(), 0);
  for (std::size_t s = 0; s < c.basis.size(); ++s)
    b = vec_add(b, vec_scale(sol->particular[s], c.pi_b[s], g.p()), g.p());
  return b;
}

std::optional<Vec> phi_inverse_apply(const CenterData& c, const Gma& g, const Vec& b) {
  if (c.basis.empty()) return std::nullopt;
  auto sol = solve_affine(Mat::from_columns(c.pi_b, g.dim_b(), g.p()), b);
  if (!sol) return std::nullopt;
  Vec a(g.dim_a(), 0);
  for (std::size_t s = 0; s < c.basis.size(); ++s)
    a = vec_add(a, vec_scale(sol->particular[s], c.pi_a[s], g.p()), g.p());
  return a;
}

// ---------------------------------------------------------------------------
// module checks
// ---------------------------------------------------------------------------

FaithfulResult check_module_faithful(const Gma& g, Side side) {
  const MoritaContext& c = g.context();
  const std::uint32_t p = g.p();
  const std::size_t dm = g.dim_m();
  std::vector<Vec> ker;
  if (side == Side::Left) {
    const std::size_t da = g.dim_a();
    Mat sys(dm * dm, da, p);
    for (std::size_t m = 0; m < dm; ++m)
      for (std::size_t k = 0; k < dm; ++k)
        for (std::size_t i = 0; i < da; ++i) sys(m * dm + k, i) = c.M.left.at(i, m, k);
    ker = kernel_basis(sys);
  } else {
    const std::size_t db = g.dim_b();
    Mat sys(dm * dm, db, p);
    for (std::size_t m = 0; m < dm; ++m)
      for (std::size_t k = 0; k < dm; ++k)
        for (std::size_t j = 0; j < db; ++j) sys(m * dm + k, j) = c.M.right.at(m, j, k);
    ker = kernel_basis(sys);
  }
  FaithfulResult r;
  r.faithful = ker.empty();
  if (!ker.empty()) r.witness = ker.front();
  return r;
}

namespace {

bool annihilates_module(const Gma& g, const Vec& a, const Vec& b) {
  const MoritaContext& c = g.context();
  for (std::size_t m = 0; m < g.dim_m(); ++m) {
    Vec u(g.dim_m(), 0);
    u[m] = 1;
    if (!vec_is_zero(c.M.act_right(c.M.act_left(a, u), b))) return false;
  }
  return true;
}

}  // namespace

LoyalResult check_loyal(const Gma& g, std::uint64_t cap) {
  const std::uint32_t p = g.p();
  const std::size_t da = g.dim_a(), db = g.dim_b();
  const std::uint64_t total = pow_capped(p, da + db, cap);
  if (total > cap) return {LoyalResult::TooLarge, {}, {}};
  const std::uint64_t na = pow_capped(p, da, cap), nb = pow_capped(p, db, cap);

#ifdef _OPENMP
  if (elimination_mode() == ElimMode::OpenMP) {
    // block-parallel scan; the least witness inside the first block that
    // holds one equals the global least witness
    const std::uint64_t block = 4096;
    for (std::uint64_t a0 = 1; a0 < na; a0 += block) {
      const std::uint64_t a1 = std::min(na, a0 + block);
      std::uint64_t best_a = ~std::uint64_t(0), best_b = 0;
#pragma omp parallel
      {
        std::uint64_t loc_a = ~std::uint64_t(0), loc_b = 0;
#pragma omp for schedule(static) nowait
        for (std::int64_t ia = std::int64_t(a0); ia < std::int64_t(a1); ++ia) {
          if (std::uint64_t(ia) > loc_a) continue;
          const Vec a = index_to_vec(std::uint64_t(ia), da, p);
          for (std::uint64_t ib = 1; ib < nb; ++ib) {
            const Vec b = index_to_vec(ib, db, p);
            if (annihilates_module(g, a, b)) {
              loc_a = std::uint64_t(ia);
              loc_b = ib;
              break;
            }
          }
        }
#pragma omp critical
        if (loc_a < best_a || (loc_a == best_a && loc_b < best_b)) {
          best_a = loc_a;
          best_b = loc_b;
        }
      }
      if (best_a != ~std::uint64_t(0))
        return {LoyalResult::Witness, index_to_vec(best_a, da, p), index_to_vec(best_b, db, p)};
    }
    return {LoyalResult::Loyal, {}, {}};
  }
#endif
  for (std::uint64_t ia = 1; ia < na; ++ia) {
    const Vec a = index_to_vec(ia, da, p);
    for (std::uint64_t ib = 1; ib < nb; ++ib) {
      const Vec b = index_to_vec(ib, db, p);
      if (annihilates_module(g, a, b)) return {LoyalResult::Witness, a, b};
    }
  }
  return {LoyalResult::Loyal, {}, {}};
}

// ---------------------------------------------------------------------------
// structural sub-checks
// ---------------------------------------------------------------------------

std::optional<Vec> central_ideal_witness(const Gma& g) {
  const std::uint32_t p = g.p();
  CenterData cd = gma_center(g);
  const std::size_t dz = cd.dim();
  if (dz == 0) return std::nullopt;
  RowSpace zspan(g.dim(), p);
  for (const auto& z : cd.basis) zspan.add_row(z);
  // v = sum_s c_s z_s with v e_i in Z(G) for every basis e_i
  Mat sys(g.dim() * g.dim(), dz, p);
  for (std::size_t s = 0; s < dz; ++s)
    for (std::size_t i = 0; i < g.dim(); ++i) {
      const Vec res = zspan.reduce(g.flat().mul(cd.basis[s], g.flat().basis_vec(i)));
      for (std::size_t dd = 0; dd < g.dim(); ++dd) sys(i * g.dim() + dd, s) = res[dd];
    }
  const auto ker = kernel_basis(sys);
  if (ker.empty()) return std::nullopt;
  Vec v(g.dim(), 0);
  for (std::size_t s = 0; s < dz; ++s)
    v = vec_add(v, vec_scale(ker.front()[s], cd.basis[s], p), p);
  return v;
}

DomainCheck center_domain_check(const Gma& g, std::uint64_t cap) {
  const std::uint32_t p = g.p();
  CenterData cd = gma_center(g);
  const std::size_t dz = cd.dim();
  const std::uint64_t count = pow_capped(p, dz, cap);
  if (count > cap) return {DomainCheck::Skipped, {}, {}};
  if (dz == 0) return {DomainCheck::Domain, {}, {}};
  // structure constants of the center subalgebra
  Mat basis_cols = Mat::from_columns(cd.basis, g.dim(), p);
  Tensor3 zc(dz, dz, dz);
  for (std::size_t s = 0; s < dz; ++s)
    for (std::size_t t = 0; t < dz; ++t) {
      auto sol = solve_affine(basis_cols, g.flat().mul(cd.basis[s], cd.basis[t]));
      if (!sol) throw std::runtime_error("center not closed under multiplication");
      for (std::size_t k = 0; k < dz; ++k) zc.at(s, t, k) = sol->particular[k];
    }
  for (std::uint64_t ix = 1; ix < count; ++ix) {
    const Vec x = index_to_vec(ix, dz, p);
    Mat mul_by_x(dz, dz, p);
    for (std::size_t t = 0; t < dz; ++t)
      for (std::size_t k = 0; k < dz; ++k) {
        std::uint64_t acc = 0;
        for (std::size_t s = 0; s < dz; ++s) acc += std::uint64_t(x[s]) * zc.at(s, t, k);
        mul_by_x(k, t) = std::uint32_t(acc % p);
      }
    const auto ker = kernel_basis(mul_by_x);
    if (!ker.empty()) {
      Vec xf(g.dim(), 0), yf(g.dim(), 0);
      for (std::size_t s = 0; s < dz; ++s) {
        xf = vec_add(xf, vec_scale(x[s], cd.basis[s], p), p);
        yf = vec_add(yf, vec_scale(ker.front()[s], cd.basis[s], p), p);
      }
      return {DomainCheck::ZeroDivisor, xf, yf};
    }
  }
  return {DomainCheck::Domain, {}, {}};
}

IndependencePair independent_pair(const Gma& g, std::uint64_t cap) {
  const MoritaContext& c = g.context();
  const std::uint32_t p = g.p();
  const std::size_t dm = g.dim_m(), db = g.dim_b();
  auto independent = [&](const Vec& m0, const Vec& b0) {
    const Vec mb = c.M.act_right(m0, b0);
    RowSpace rs(dm, p);
    rs.add_row(m0);
    rs.add_row(mb);
    return rs.rank() == 2;
  };
  for (std::size_t im = 0; im < dm; ++im)
    for (std::size_t jb = 0; jb < db; ++jb) {
      Vec m0(dm, 0), b0(db, 0);
      m0[im] = 1;
      b0[jb] = 1;
      if (independent(m0, b0)) return {true, false, m0, b0};
    }
  const std::uint64_t total = pow_capped(p, dm + db, cap);
  if (total > cap) return {false, true, {}, {}};
  const std::uint64_t nm = pow_capped(p, dm, cap), nb = pow_capped(p, db, cap);
  for (std::uint64_t im = 1; im < nm; ++im) {
    const Vec m0 = index_to_vec(im, dm, p);
    for (std::uint64_t jb = 1; jb < nb; ++jb) {
      const Vec b0 = index_to_vec(jb, db, p);
      if (independent(m0, b0)) return {true, false, m0, b0};
    }
  }
  return {false, false, {}, {}};
}

bool commuting_maps_all_proper(const Algebra& a) {
  for (const auto& f : commuting_linear_map_space(a))
    if (!proper_linear_decompose(a, f)) return false;
  return true;
}

bool HypothesisReport::all_satisfied() const {
  for (const auto& c : conditions)
    if (c.status == ConditionVerdict::False && !c.informational) return false;
  return true;
}

const ConditionVerdict* HypothesisReport::find(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace gmalg
