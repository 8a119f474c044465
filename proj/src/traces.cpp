#include "gmalg/traces.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gmalg {

Vec BilinearMap::eval(const Vec& x, const Vec& y) const {
  assert(x.size() == dim && y.size() == dim);
  std::vector<std::uint64_t> acc(dim, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (!y[j]) continue;
      const std::uint64_t f = std::uint64_t(x[i]) * y[j] % p;
      if (!f) continue;
      for (std::size_t k = 0; k < dim; ++k) acc[k] += f * t.at(i, j, k);
    }
  }
  Vec r(dim);
  for (std::size_t k = 0; k < dim; ++k) r[k] = std::uint32_t(acc[k] % p);
  return r;
}

BilinearMap BilinearMap::symmetric_part() const {
  BilinearMap s(dim, p);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        s.t.at(i, j, k) = mod_half(mod_add(t.at(i, j, k), t.at(j, i, k), p), p);
  return s;
}

bool BilinearMap::is_symmetric() const {
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        if (t.at(i, j, k) != t.at(j, i, k)) return false;
  return true;
}

std::size_t BilinearMap::pair_index(std::size_t i, std::size_t j, std::size_t d) {
  if (i > j) std::swap(i, j);
  // pairs (i, i..d-1) laid out consecutively
  return i * d - i * (i + 1) / 2 + i + (j - i);
}

Vec BilinearMap::vectorized_sym() const {
  const std::size_t np = pair_count(dim);
  Vec v(np * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        v[pair_index(i, j, dim) * dim + k] = t.at(i, j, k);
  return v;
}

BilinearMap BilinearMap::from_vectorized_sym(const Vec& v, std::size_t d, std::uint32_t p) {
  BilinearMap q(d, p);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const std::uint32_t c = v[pair_index(i, j, d) * d + k];
        q.t.at(i, j, k) = c;
        q.t.at(j, i, k) = c;
      }
  return q;
}

Vec evaluate_trace(const BilinearMap& q, const Vec& x) { return q.eval(x, x); }

// ---------------------------------------------------------------------------
// commuting / centralizing predicates
// ---------------------------------------------------------------------------

namespace {

// ad[j](dd, c) = coordinate dd of [e_c, e_j]
std::vector<Mat> adjoint_tables(const Algebra& a) {
  const std::size_t d = a.dim();
  std::vector<Mat> ad(d, Mat(d, d, a.p()));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t dd = 0; dd < d; ++dd)
        ad[j](dd, c) = mod_sub(a.c(c, j, dd), a.c(j, c, dd), a.p());
  return ad;
}

// S(x,y,z) = [B(x,y),z] + [B(y,z),x] + [B(z,x),y] for symmetric B;
// S(x,x,x) = 3 [B(x,x), x]
Vec polarized_value(const Algebra& a, const BilinearMap& sym, std::size_t i, std::size_t j,
                    std::size_t k) {
  Vec s = a.bracket(sym.value(i, j), a.basis_vec(k));
  s = vec_add(s, a.bracket(sym.value(j, k), a.basis_vec(i)), a.p());
  s = vec_add(s, a.bracket(sym.value(k, i), a.basis_vec(j)), a.p());
  return s;
}

// residual map modulo a subspace given by its echelon basis
struct CenterProjector {
  RowSpace span;
  explicit CenterProjector(const std::vector<Vec>& basis, std::size_t d, std::uint32_t p)
      : span(d, p) {
    for (const auto& v : basis) span.add_row(v);
  }
  Vec residual(const Vec& v) const { return span.reduce(v); }
};

TraceCheck trace_predicate(const Algebra& a, const std::vector<Vec>& center,
                           const BilinearMap& q, bool centralizing, std::uint64_t cap) {
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  const BilinearMap sym = q.symmetric_part();
  const CenterProjector proj(center, d, p);
  auto violation = [&](const Vec& value) {
    return centralizing ? !vec_is_zero(proj.residual(value)) : !vec_is_zero(value);
  };

  if (p >= 5) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j)
        for (std::size_t k = j; k < d; ++k) {
          if (!violation(polarized_value(a, sym, i, j, k))) continue;
          // the cubic map cannot vanish on the span of this triple: scan it
          for (std::uint64_t ix = 1; ix < std::uint64_t(p) * p * p; ++ix) {
            const Vec co = index_to_vec(ix, 3, p);
            Vec x(d, 0);
            x[i] = mod_add(x[i], co[0], p);
            x[j] = mod_add(x[j], co[1], p);
            x[k] = mod_add(x[k], co[2], p);
            if (violation(a.bracket(q.eval(x, x), x))) return {TraceCheck::Witness, x};
          }
          throw std::logic_error("trace_predicate: polarization witness not found");
        }
    return {TraceCheck::Holds, {}};
  }

  const std::uint64_t total = pow_capped(p, d, cap);
  if (total > cap) return {TraceCheck::TooLarge, {}};
  for (std::uint64_t ix = 1; ix < total; ++ix) {
    const Vec x = index_to_vec(ix, d, p);
    if (violation(a.bracket(q.eval(x, x), x))) return {TraceCheck::Witness, x};
  }
  return {TraceCheck::Holds, {}};
}

}  // namespace

TraceCheck is_commuting_trace(const Gma& g, const BilinearMap& q, std::uint64_t cap) {
  return trace_predicate(g.flat(), gma_center(g).basis, q, false, cap);
}

TraceCheck is_centralizing_trace(const Gma& g, const BilinearMap& q, std::uint64_t cap) {
  return trace_predicate(g.flat(), gma_center(g).basis, q, true, cap);
}

// ---------------------------------------------------------------------------
// trace spaces
// ---------------------------------------------------------------------------

namespace {

std::vector<BilinearMap> kernel_to_maps(std::vector<Vec> kernel, std::size_t d,
                                        std::uint32_t p) {
  std::vector<BilinearMap> out;
  out.reserve(kernel.size());
  for (const auto& v : kernel) out.push_back(BilinearMap::from_vectorized_sym(v, d, p));
  return out;
}

// rows of the polarized constraint system for one basis triple (i,j,k):
// one row per output coordinate, over unknowns u[{a,b}, c]
void assemble_triple_rows(const std::vector<Mat>& ad, std::size_t d, std::uint32_t p,
                          std::size_t i, std::size_t j, std::size_t k,
                          std::vector<Vec>& rows) {
  const std::size_t np = BilinearMap::pair_count(d);
  rows.assign(d, Vec(np * d, 0));
  const std::size_t pij = BilinearMap::pair_index(i, j, d);
  const std::size_t pjk = BilinearMap::pair_index(j, k, d);
  const std::size_t pki = BilinearMap::pair_index(k, i, d);
  for (std::size_t dd = 0; dd < d; ++dd) {
    Vec& row = rows[dd];
    for (std::size_t c = 0; c < d; ++c) {
      row[pij * d + c] = mod_add(row[pij * d + c], ad[k](dd, c), p);
      row[pjk * d + c] = mod_add(row[pjk * d + c], ad[i](dd, c), p);
      row[pki * d + c] = mod_add(row[pki * d + c], ad[j](dd, c), p);
    }
  }
}

// replace the d coordinate rows by their projection modulo the center:
// row'_dd = row_dd - sum_s zrow_s[dd] * row_{pivot_s}, non-pivot dd only
std::vector<Vec> project_rows(const std::vector<Vec>& rows, const std::vector<Vec>& zrows,
                              const std::vector<std::size_t>& zpivots, std::uint32_t p) {
  const std::size_t d = rows.size();
  std::vector<bool> is_pivot(d, false);
  for (auto c : zpivots) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t dd = 0; dd < d; ++dd) {
    if (is_pivot[dd]) continue;
    Vec r = rows[dd];
    for (std::size_t s = 0; s < zrows.size(); ++s) {
      const std::uint32_t f = zrows[s][dd];
      if (!f) continue;
      vec_axpy(r, p - f, rows[zpivots[s]], p);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<BilinearMap> trace_space_enumerated(const Algebra& a,
                                                const std::vector<Vec>& center,
                                                TraceKind kind, std::uint64_t cap) {
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  const std::uint64_t total = pow_capped(p, d, cap);
  if (total > cap)
    throw TooLargeError("trace_space: enumeration of " + std::to_string(d) +
                        " coordinates over F_" + std::to_string(p) + " exceeds the cap");
  const std::size_t np = BilinearMap::pair_count(d);
  CenterProjector proj(center, d, p);
  std::vector<Vec> zrows;
  std::vector<std::size_t> zpivots;
  if (kind == TraceKind::Centralizing) {
    RowSpace tmp(d, p);
    for (const auto& v : center) tmp.add_row(v);
    zrows = tmp.canonical_rows();
    zpivots = tmp.pivots();
  }
  const std::vector<Mat> ad = adjoint_tables(a);

  RowSpace rs(np * d, p);
  for (std::uint64_t ix = 1; ix < total; ++ix) {
    const Vec x = index_to_vec(ix, d, p);
    // adx(dd,c) = [e_c, x]_dd
    Mat adx(d, d, p);
    for (std::size_t kk = 0; kk < d; ++kk) {
      if (!x[kk]) continue;
      for (std::size_t dd = 0; dd < d; ++dd)
        for (std::size_t c = 0; c < d; ++c)
          adx(dd, c) = mod_add(adx(dd, c), mod_mul(x[kk], ad[kk](dd, c), p), p);
    }
    std::vector<Vec> rows(d, Vec(np * d, 0));
    for (std::size_t ai = 0; ai < d; ++ai) {
      if (!x[ai]) continue;
      for (std::size_t bi = ai; bi < d; ++bi) {
        if (!x[bi]) continue;
        std::uint32_t w = mod_mul(x[ai], x[bi], p);
        if (ai != bi) w = mod_add(w, w, p);
        const std::size_t pr = BilinearMap::pair_index(ai, bi, d);
        for (std::size_t dd = 0; dd < d; ++dd)
          for (std::size_t c = 0; c < d; ++c)
            rows[dd][pr * d + c] =
                mod_add(rows[dd][pr * d + c], mod_mul(w, adx(dd, c), p), p);
      }
    }
    if (kind == TraceKind::Centralizing) {
      for (auto& r : project_rows(rows, zrows, zpivots, p)) rs.add_row(r);
    } else {
      for (auto& r : rows) rs.add_row(r);
    }
  }
  return kernel_to_maps(rs.kernel_of_rows(), d, p);
}

std::vector<BilinearMap> trace_space(const Algebra& a, const std::vector<Vec>& center,
                                     TraceKind kind, std::uint64_t cap) {
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  if (p < 5) return trace_space_enumerated(a, center, kind, cap);

  std::vector<Vec> zrows;
  std::vector<std::size_t> zpivots;
  if (kind == TraceKind::Centralizing) {
    RowSpace tmp(d, p);
    for (const auto& v : center) tmp.add_row(v);
    zrows = tmp.canonical_rows();
    zpivots = tmp.pivots();
  }
  const std::vector<Mat> ad = adjoint_tables(a);
  const std::size_t np = BilinearMap::pair_count(d);

  if (elimination_mode() == ElimMode::OpenMP) {
    // materialize the full constraint matrix so the parallel kernel can
    // chew on it
    std::vector<std::size_t> triples;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j)
        for (std::size_t k = j; k < d; ++k) {
          triples.push_back(i);
          triples.push_back(j);
          triples.push_back(k);
        }
    const std::size_t nt = triples.size() / 3;
    const std::size_t rows_per =
        kind == TraceKind::Centralizing ? d - zpivots.size() : d;
    Mat sys(nt * rows_per, np * d, p);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::size_t t = 0; t < nt; ++t) {
      std::vector<Vec> rows;
      assemble_triple_rows(ad, d, p, triples[3 * t], triples[3 * t + 1], triples[3 * t + 2],
                           rows);
      if (kind == TraceKind::Centralizing) rows = project_rows(rows, zrows, zpivots, p);
      for (std::size_t r = 0; r < rows.size(); ++r) sys.set_row(t * rows_per + r, rows[r]);
    }
    Echelon e = rref_openmp(sys);
    RowSpace rs(np * d, p);
    for (std::size_t i = 0; i < e.rank(); ++i) rs.add_row(e.reduced.row(i));
    return kernel_to_maps(rs.kernel_of_rows(), d, p);
  }

  RowSpace rs(np * d, p);
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t k = j; k < d; ++k) {
        assemble_triple_rows(ad, d, p, i, j, k, rows);
        if (kind == TraceKind::Centralizing) {
          for (auto& r : project_rows(rows, zrows, zpivots, p)) rs.add_row(r);
        } else {
          for (auto& r : rows) rs.add_row(r);
        }
      }
  return kernel_to_maps(rs.kernel_of_rows(), d, p);
}

std::vector<BilinearMap> trace_space(const Gma& g, TraceKind kind, std::uint64_t cap) {
  return trace_space(g.flat(), gma_center(g).basis, kind, cap);
}

// ---------------------------------------------------------------------------
// properness
// ---------------------------------------------------------------------------

std::vector<Vec> properness_generators(const Algebra& a, const std::vector<Vec>& center) {
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  const std::size_t np = BilinearMap::pair_count(d);
  const std::uint32_t inv2 = mod_inv(2, p);
  std::vector<Vec> gens;

  auto sym_tensor = [&](auto&& value_at) {
    Vec v(np * d, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        const Vec val = value_at(i, j);
        for (std::size_t k = 0; k < d; ++k)
          v[BilinearMap::pair_index(i, j, d) * d + k] = val[k];
      }
    return v;
  };

  for (const auto& z : center) {
    gens.push_back(sym_tensor([&](std::size_t i, std::size_t j) {
      const Vec s = vec_add(a.mul_basis(i, j), a.mul_basis(j, i), p);
      return vec_scale(inv2, a.mul(z, s), p);
    }));
  }
  for (const auto& z : center)
    for (std::size_t ii = 0; ii < d; ++ii) {
      gens.push_back(sym_tensor([&](std::size_t i, std::size_t j) {
        Vec val(d, 0);
        if (i == ii) val = vec_add(val, a.mul(z, a.basis_vec(j)), p);
        if (j == ii) val = vec_add(val, a.mul(z, a.basis_vec(i)), p);
        return vec_scale(inv2, val, p);
      }));
    }
  for (const auto& z : center)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        Vec v(np * d, 0);
        for (std::size_t k = 0; k < d; ++k)
          v[BilinearMap::pair_index(i, j, d) * d + k] = z[k];
        gens.push_back(std::move(v));
      }
  return gens;
}

std::vector<BilinearMap> properness_subspace(const Algebra& a,
                                             const std::vector<Vec>& center) {
  const std::size_t d = a.dim();
  return kernel_to_maps(
      canonical_span(properness_generators(a, center), BilinearMap::pair_count(d) * d, a.p()),
      d, a.p());
}

std::vector<BilinearMap> properness_subspace(const Gma& g) {
  return properness_subspace(g.flat(), gma_center(g).basis);
}

std::optional<ProperDecomposition> proper_trace_decompose(const Algebra& a,
                                                          const std::vector<Vec>& center,
                                                          const BilinearMap& q,
                                                          bool prefer_nonzero_z) {
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  const std::size_t np = BilinearMap::pair_count(d);
  const std::size_t dz = center.size();
  const std::vector<Vec> gens = properness_generators(a, center);
  const Mat sys = Mat::from_columns(gens, np * d, p);
  const Vec rhs = q.symmetric_part().vectorized_sym();
  auto sol = solve_affine(sys, rhs);
  if (!sol) return std::nullopt;

  if (prefer_nonzero_z) {
    const bool z_zero = std::all_of(sol->particular.begin(), sol->particular.begin() + dz,
                                    [](std::uint32_t c) { return c == 0; });
    if (z_zero) {
      for (const auto& k : sol->kernel) {
        bool kz = false;
        for (std::size_t s = 0; s < dz; ++s) kz = kz || k[s] != 0;
        if (kz) {
          sol->particular = vec_add(sol->particular, k, p);
          break;
        }
      }
    }
  }

  ProperDecomposition out;
  out.dim = d;
  out.p = p;
  out.center = center;
  out.z_center.assign(sol->particular.begin(), sol->particular.begin() + dz);
  out.mu = Mat(dz, d, p);
  for (std::size_t s = 0; s < dz; ++s)
    for (std::size_t i = 0; i < d; ++i) out.mu(s, i) = sol->particular[dz + s * d + i];
  out.nu = Mat(dz, np, p);
  for (std::size_t s = 0; s < dz; ++s)
    for (std::size_t pr = 0; pr < np; ++pr)
      out.nu(s, pr) = sol->particular[dz + dz * d + s * np + pr];
  return out;
}

std::optional<ProperDecomposition> proper_trace_decompose(const Gma& g,
                                                          const BilinearMap& q) {
  return proper_trace_decompose(g.flat(), gma_center(g).basis, q);
}

Vec ProperDecomposition::z_flat() const {
  Vec z(dim, 0);
  for (std::size_t s = 0; s < center.size(); ++s)
    z = vec_add(z, vec_scale(z_center[s], center[s], p), p);
  return z;
}

BilinearMap ProperDecomposition::reconstruct(const Algebra& a) const {
  const std::size_t d = dim;
  const std::uint32_t inv2 = mod_inv(2, p);
  const Vec z = z_flat();
  BilinearMap out(d, p);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      // z (e_i e_j + e_j e_i)/2
      Vec val = vec_scale(inv2, a.mul(z, vec_add(a.mul_basis(i, j), a.mul_basis(j, i), p)), p);
      // (mu(e_i) e_j + mu(e_j) e_i)/2
      Vec mi(d, 0), mj(d, 0);
      for (std::size_t s = 0; s < center.size(); ++s) {
        mi = vec_add(mi, vec_scale(mu(s, i), center[s], p), p);
        mj = vec_add(mj, vec_scale(mu(s, j), center[s], p), p);
      }
      Vec cross = vec_add(a.mul(mi, a.basis_vec(j)), a.mul(mj, a.basis_vec(i)), p);
      val = vec_add(val, vec_scale(inv2, cross, p), p);
      // nu(e_i, e_j)
      const std::size_t pr = BilinearMap::pair_index(i, j, d);
      for (std::size_t s = 0; s < center.size(); ++s)
        val = vec_add(val, vec_scale(nu(s, pr), center[s], p), p);
      out.set_value(i, j, val);
      out.set_value(j, i, val);
    }
  return out;
}

// ---------------------------------------------------------------------------
// block components
// ---------------------------------------------------------------------------

BlockComponents::BlockComponents(const Gma& g, const BilinearMap& q, std::uint64_t cap)
    : g_(&g), sym_(q.symmetric_part()), center_(gma_center(g)) {
  if (q.dim != g.dim() || q.p != g.p())
    throw std::invalid_argument("BlockComponents: map does not live on g");
  compute_derived(cap);
}

Vec BlockComponents::component(std::size_t bi, std::size_t bj, std::size_t u, std::size_t v,
                               std::size_t out) const {
  assert(bi <= bj);
  const Gma& g = *g_;
  const std::size_t gu = g.block_offset(bi) + u, gv = g.block_offset(bj) + v;
  Vec val = sym_.value(gu, gv);
  if (bi != bj) val = vec_add(val, val, g.p());
  return g.part(val, out);
}

namespace {

Vec component_general(const Gma& g, const BilinearMap& sym, std::size_t bi, std::size_t bj,
                      const Vec& u, const Vec& v, std::size_t out) {
  Vec val = sym.eval(g.embed_block(u, bi), g.embed_block(v, bj));
  if (bi != bj) val = vec_add(val, val, g.p());
  return g.part(val, out);
}

}  // namespace

const BlockComponents::Derived& BlockComponents::derived() const {
  if (!derived_) throw std::runtime_error("block components: " + derived_failure_);
  return *derived_;
}

void BlockComponents::compute_derived(std::uint64_t cap) {
  const Gma& g = *g_;
  const std::uint32_t p = g.p();
  const std::size_t da = g.dim_a(), dm = g.dim_m(), dn = g.dim_n(), db = g.dim_b();

  const TraceCheck comm = trace_predicate(g.flat(), center_.basis, sym_, false, cap);
  if (comm.status != TraceCheck::Holds) {
    derived_failure_ = comm.status == TraceCheck::TooLarge
                           ? "commuting check exceeded the enumeration cap"
                           : "trace is not commuting";
    return;
  }

  auto inv_phi = [&](const Vec& b) { return phi_inverse_apply(center_, g, b); };
  auto fwd_phi = [&](const Vec& a) { return phi_apply(center_, g, a); };

  Derived d;
  const Vec unit_a = g.context().A.unit(), unit_b = g.context().B.unit();

  d.alpha = Mat(da, dm, p);
  for (std::size_t m = 0; m < dm; ++m) {
    Vec um(dm, 0);
    um[m] = 1;
    const Vec f12 = component_general(g, sym_, 0, 1, unit_a, um, 0);
    const Vec k12 = component_general(g, sym_, 0, 1, unit_a, um, 3);
    const auto pre = inv_phi(k12);
    if (!pre) {
      derived_failure_ = "phi^-1 undefined on k_12(1, u_" + std::to_string(m) + ")";
      return;
    }
    const Vec a = vec_sub(f12, *pre, p);
    for (std::size_t i = 0; i < da; ++i) d.alpha(i, m) = a[i];
  }

  d.tau = Mat(da, dn, p);
  for (std::size_t n = 0; n < dn; ++n) {
    Vec vn(dn, 0);
    vn[n] = 1;
    const Vec f13 = component_general(g, sym_, 0, 2, unit_a, vn, 0);
    const Vec k13 = component_general(g, sym_, 0, 2, unit_a, vn, 3);
    const auto pre = inv_phi(k13);
    if (!pre) {
      derived_failure_ = "phi^-1 undefined on k_13(1, v_" + std::to_string(n) + ")";
      return;
    }
    const Vec t = vec_sub(f13, *pre, p);
    for (std::size_t i = 0; i < da; ++i) d.tau(i, n) = t[i];
  }

  // gamma, delta from the proper decomposition of a1 -> f_14(a1, b_j) on A
  d.gamma = Mat(da, db, p);
  d.delta = Tensor3(da, db, da);
  for (std::size_t j = 0; j < db; ++j) {
    LinearMap lj(da, da, p);
    for (std::size_t i = 0; i < da; ++i)
      lj.set_column(i, component(0, 3, i, j, 0));
    auto w = proper_linear_decompose(g.context().A, lj);
    if (!w) {
      derived_failure_ = "a1 -> f_14(a1, b_" + std::to_string(j) + ") is not proper on A";
      return;
    }
    for (std::size_t i = 0; i < da; ++i) d.gamma(i, j) = w->z[i];
    for (std::size_t i = 0; i < da; ++i) {
      const Vec col = w->eta.column(i);
      for (std::size_t k = 0; k < da; ++k) d.delta.at(i, j, k) = col[k];
    }
  }

  d.gammap = Mat(db, da, p);
  for (std::size_t i = 0; i < da; ++i) {
    Vec ei(da, 0);
    ei[i] = 1;
    const Vec k14_1 = component_general(g, sym_, 0, 3, ei, unit_b, 3);
    Vec delta_i1(da, 0);
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k)
        delta_i1[k] = mod_add(delta_i1[k], mod_mul(unit_b[j], d.delta.at(i, j, k), p), p);
    const auto ph = fwd_phi(delta_i1);
    if (!ph) {
      derived_failure_ = "phi undefined on delta(e_" + std::to_string(i) + ", 1)";
      return;
    }
    const Vec gp = vec_sub(k14_1, *ph, p);
    for (std::size_t k = 0; k < db; ++k) d.gammap(k, i) = gp[k];
  }

  const Vec f11 = component_general(g, sym_, 0, 0, unit_a, unit_a, 0);
  const Vec k11 = component_general(g, sym_, 0, 0, unit_a, unit_a, 3);
  const Vec f44 = component_general(g, sym_, 3, 3, unit_b, unit_b, 0);
  const Vec k44 = component_general(g, sym_, 3, 3, unit_b, unit_b, 3);
  const auto phi_f11 = fwd_phi(f11);
  if (!phi_f11) {
    derived_failure_ = "phi undefined on f_11(1,1)";
    return;
  }
  d.zeta = vec_sub(*phi_f11, k11, p);
  const auto inv_k44 = inv_phi(k44);
  if (!inv_k44) {
    derived_failure_ = "phi^-1 undefined on k_44(1,1)";
    return;
  }
  d.theta = vec_sub(*inv_k44, f44, p);

  Vec gamma_1(da, 0);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t i = 0; i < da; ++i)
      gamma_1[i] = mod_add(gamma_1[i], mod_mul(unit_b[j], d.gamma(i, j), p), p);
  d.eps = vec_sub(d.theta, gamma_1, p);
  Vec gammap_1(db, 0);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < db; ++k)
      gammap_1[k] = mod_add(gammap_1[k], mod_mul(unit_a[i], d.gammap(k, i), p), p);
  d.epsp = vec_sub(d.zeta, gammap_1, p);

  derived_ = std::move(d);
}

// ---------------------------------------------------------------------------
// component identity checks
// ---------------------------------------------------------------------------

std::vector<std::string> check_component_identities(const Gma& g, const BilinearMap& q) {
  std::vector<std::string> bad;
  BlockComponents bc(g, q);
  if (!bc.derived_available()) return {"derived data unavailable: " + bc.derived_failure()};
  const auto& dv = bc.derived();
  const std::uint32_t p = g.p();
  const MoritaContext& ctx = g.context();
  const std::size_t da = g.dim_a(), dm = g.dim_m(), dn = g.dim_n(), db = g.dim_b();
  const std::uint32_t inv2 = mod_inv(2, p);

  auto fail = [&](const std::string& name) {
    if (bad.empty() || bad.back() != name) bad.push_back(name);
  };

  // off-pattern components vanish
  const std::size_t h_vanish[][2] = {{0, 0}, {0, 1}, {0, 3}, {1, 1}, {1, 3}, {3, 3}};
  for (const auto& pr : h_vanish)
    for (std::size_t u = 0; u < g.block_dim(pr[0]); ++u)
      for (std::size_t v = 0; v < g.block_dim(pr[1]); ++v)
        if (!vec_is_zero(bc.component(pr[0], pr[1], u, v, 2))) fail("h_components_vanish");
  const std::size_t g_vanish[][2] = {{0, 0}, {0, 2}, {0, 3}, {2, 2}, {2, 3}, {3, 3}};
  for (const auto& pr : g_vanish)
    for (std::size_t u = 0; u < g.block_dim(pr[0]); ++u)
      for (std::size_t v = 0; v < g.block_dim(pr[1]); ++v)
        if (!vec_is_zero(bc.component(pr[0], pr[1], u, v, 1))) fail("g_components_vanish");

  // corner-central components
  const std::vector<Vec> za = center_basis(ctx.A), zb = center_basis(ctx.B);
  const std::size_t f_central[][2] = {{1, 1}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};
  for (const auto& pr : f_central)
    for (std::size_t u = 0; u < g.block_dim(pr[0]); ++u)
      for (std::size_t v = 0; v < g.block_dim(pr[1]); ++v)
        if (!subspace_contains(za, bc.component(pr[0], pr[1], u, v, 0), p))
          fail("f_components_central");
  const std::size_t k_central[][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 2}};
  for (const auto& pr : k_central)
    for (std::size_t u = 0; u < g.block_dim(pr[0]); ++u)
      for (std::size_t v = 0; v < g.block_dim(pr[1]); ++v)
        if (!subspace_contains(zb, bc.component(pr[0], pr[1], u, v, 3), p))
          fail("k_components_central");

  // diag(f_22, k_22) and diag(f_33, k_33) lie in Z(G)
  const auto& zg = bc.center().basis;
  auto diag_central = [&](const Vec& a, const Vec& b) {
    Vec x = vec_add(g.embed_a(a), g.embed_b(b), p);
    return subspace_contains(zg, x, p);
  };
  for (std::size_t u = 0; u < dm; ++u)
    for (std::size_t v = u; v < dm; ++v)
      if (!diag_central(bc.component(1, 1, u, v, 0), bc.component(1, 1, u, v, 3)))
        fail("f22_k22_diagonal_central");
  for (std::size_t u = 0; u < dn; ++u)
    for (std::size_t v = u; v < dn; ++v)
      if (!diag_central(bc.component(2, 2, u, v, 0), bc.component(2, 2, u, v, 3)))
        fail("f33_k33_diagonal_central");

  auto phi_of = [&](const Vec& a) { return phi_apply(bc.center(), g, a); };
  auto phi_inv_of = [&](const Vec& b) { return phi_inverse_apply(bc.center(), g, b); };

  // f_12 = alpha(a2) a1 + phi^-1(k_12), k_24 = phi(alpha(a2)) a4 + phi(f_24)
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t u = 0; u < dm; ++u) {
      const Vec alpha_u = dv.alpha.col_vec(u);
      const auto pre = phi_inv_of(bc.component(0, 1, i, u, 3));
      if (!pre) {
        fail("f12_transfer_formula");
        continue;
      }
      const Vec want =
          vec_add(ctx.A.mul(alpha_u, ctx.A.basis_vec(i)), *pre, p);
      if (bc.component(0, 1, i, u, 0) != want) fail("f12_transfer_formula");
    }
  for (std::size_t u = 0; u < dm; ++u)
    for (std::size_t j = 0; j < db; ++j) {
      const auto pa = phi_of(dv.alpha.col_vec(u));
      const auto pf = phi_of(bc.component(1, 3, u, j, 0));
      if (!pa || !pf) {
        fail("k24_transfer_formula");
        continue;
      }
      const Vec want = vec_add(ctx.B.mul(*pa, ctx.B.basis_vec(j)), *pf, p);
      if (bc.component(1, 3, u, j, 3) != want) fail("k24_transfer_formula");
    }

  // mirror formulas with tau
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t v = 0; v < dn; ++v) {
      const auto pre = phi_inv_of(bc.component(0, 2, i, v, 3));
      if (!pre) {
        fail("f13_transfer_formula");
        continue;
      }
      const Vec want = vec_add(ctx.A.mul(dv.tau.col_vec(v), ctx.A.basis_vec(i)), *pre, p);
      if (bc.component(0, 2, i, v, 0) != want) fail("f13_transfer_formula");
    }
  for (std::size_t v = 0; v < dn; ++v)
    for (std::size_t j = 0; j < db; ++j) {
      const auto pt = phi_of(dv.tau.col_vec(v));
      const auto pf = phi_of(bc.component(2, 3, v, j, 0));
      if (!pt || !pf) {
        fail("k34_transfer_formula");
        continue;
      }
      const Vec want = vec_add(ctx.B.mul(*pt, ctx.B.basis_vec(j)), *pf, p);
      if (bc.component(2, 3, v, j, 3) != want) fail("k34_transfer_formula");
    }

  // proper forms of f_14 and k_14
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      Vec delta_ij(da);
      for (std::size_t k = 0; k < da; ++k) delta_ij[k] = dv.delta.at(i, j, k);
      const Vec want_f =
          vec_add(ctx.A.mul(dv.gamma.col_vec(j), ctx.A.basis_vec(i)), delta_ij, p);
      if (bc.component(0, 3, i, j, 0) != want_f) fail("f14_proper_form");
      const auto pd = phi_of(delta_ij);
      if (!pd) {
        fail("k14_transfer_formula");
        continue;
      }
      const Vec want_k =
          vec_add(ctx.B.mul(dv.gammap.col_vec(i), ctx.B.basis_vec(j)), *pd, p);
      if (bc.component(0, 3, i, j, 3) != want_k) fail("k14_transfer_formula");
    }

  // leading form of g_12 and g_24
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t u = 0; u < dm; ++u) {
      Vec um(dm, 0);
      um[u] = 1;
      const auto pg = phi_inv_of(dv.gammap.col_vec(i));
      if (!pg) {
        fail("g12_leading_formula");
        continue;
      }
      Vec want = ctx.M.act_left(ctx.A.mul(dv.eps, ctx.A.basis_vec(i)), um);
      want = vec_add(want, ctx.M.act_left(*pg, um), p);
      if (bc.component(0, 1, i, u, 1) != want) fail("g12_leading_formula");
    }
  for (std::size_t u = 0; u < dm; ++u)
    for (std::size_t j = 0; j < db; ++j) {
      Vec um(dm, 0);
      um[u] = 1;
      const auto pg = phi_of(dv.gamma.col_vec(j));
      if (!pg) {
        fail("g24_leading_formula");
        continue;
      }
      const Vec inner = vec_add(ctx.B.mul(dv.epsp, ctx.B.basis_vec(j)), *pg, p);
      if (bc.component(1, 3, u, j, 1) != ctx.M.act_right(um, inner)) fail("g24_leading_formula");
    }

  // leading form of h_13 and h_34
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t v = 0; v < dn; ++v) {
      Vec vn(dn, 0);
      vn[v] = 1;
      Vec want = ctx.N.act_right(ctx.N.act_right(vn, dv.eps), ctx.A.basis_vec(i));
      want = vec_add(want, ctx.N.act_left(dv.gammap.col_vec(i), vn), p);
      if (bc.component(0, 2, i, v, 2) != want) fail("h13_leading_formula");
    }
  for (std::size_t v = 0; v < dn; ++v)
    for (std::size_t j = 0; j < db; ++j) {
      Vec vn(dn, 0);
      vn[v] = 1;
      const auto pg = phi_of(dv.gamma.col_vec(j));
      if (!pg) {
        fail("h34_leading_formula");
        continue;
      }
      Vec want = ctx.N.act_left(ctx.B.mul(dv.epsp, ctx.B.basis_vec(j)), vn);
      want = vec_add(want, ctx.N.act_left(*pg, vn), p);
      if (bc.component(2, 3, v, j, 2) != want) fail("h34_leading_formula");
    }

  // leading form of f_11, polarized over pairs
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = i; j < da; ++j) {
      const auto pre = phi_inv_of(bc.component(0, 0, i, j, 3));
      const auto pgi = phi_inv_of(dv.gammap.col_vec(i));
      const auto pgj = phi_inv_of(dv.gammap.col_vec(j));
      if (!pre || !pgi || !pgj) {
        fail("f11_leading_formula");
        continue;
      }
      Vec want = vec_scale(
          inv2,
          ctx.A.mul(dv.eps, vec_add(ctx.A.mul_basis(i, j), ctx.A.mul_basis(j, i), p)), p);
      Vec cross = vec_add(ctx.A.mul(*pgi, ctx.A.basis_vec(j)),
                          ctx.A.mul(*pgj, ctx.A.basis_vec(i)), p);
      want = vec_add(want, vec_scale(inv2, cross, p), p);
      want = vec_add(want, *pre, p);
      if (bc.component(0, 0, i, j, 0) != want) fail("f11_leading_formula");
    }

  // leading form of k_44, mirror
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = i; j < db; ++j) {
      const auto pf = phi_of(bc.component(3, 3, i, j, 0));
      const auto pgi = phi_of(dv.gamma.col_vec(i));
      const auto pgj = phi_of(dv.gamma.col_vec(j));
      if (!pf || !pgi || !pgj) {
        fail("k44_leading_formula");
        continue;
      }
      Vec want = vec_scale(
          inv2,
          ctx.B.mul(dv.epsp, vec_add(ctx.B.mul_basis(i, j), ctx.B.mul_basis(j, i), p)), p);
      Vec cross = vec_add(ctx.B.mul(*pgi, ctx.B.basis_vec(j)),
                          ctx.B.mul(*pgj, ctx.B.basis_vec(i)), p);
      want = vec_add(want, vec_scale(inv2, cross, p), p);
      want = vec_add(want, *pf, p);
      if (bc.component(3, 3, i, j, 3) != want) fail("k44_leading_formula");
    }

  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  return bad;
}

// ---------------------------------------------------------------------------
// hypothesis reports (declared in morita.hpp; they draw on the trace space)
// ---------------------------------------------------------------------------

namespace {

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

ConditionVerdict verdict(const std::string& name, bool ok, std::string detail = "") {
  return {name, ok ? ConditionVerdict::True : ConditionVerdict::False, std::move(detail)};
}

void add_faithfulness(const Gma& g, HypothesisReport& r) {
  const auto fl = check_module_faithful(g, Side::Left);
  const auto fr = check_module_faithful(g, Side::Right);
  r.conditions.push_back(verdict("M_faithful_left", fl.faithful,
                                 fl.faithful ? "" : "annihilator " + vec_str(fl.witness)));
  r.conditions.push_back(verdict("M_faithful_right", fr.faithful,
                                 fr.faithful ? "" : "annihilator " + vec_str(fr.witness)));
}

void add_loyalty(const Gma& g, std::uint64_t cap, HypothesisReport& r) {
  const auto loyal = check_loyal(g, cap);
  if (loyal.status == LoyalResult::TooLarge)
    throw TooLargeError("loyalty scan exceeds the enumeration cap");
  r.conditions.push_back(verdict(
      "M_loyal", loyal.status == LoyalResult::Loyal,
      loyal.status == LoyalResult::Loyal
          ? ""
          : "a=" + vec_str(loyal.a) + " b=" + vec_str(loyal.b) + " annihilate M"));
}

void add_lemma_checks(const Gma& g, std::uint64_t cap, HypothesisReport& r) {
  const auto ideal = central_ideal_witness(g);
  r.conditions.push_back(verdict("no_nonzero_central_ideals", !ideal,
                                 ideal ? "ideal generator " + vec_str(*ideal) : ""));
  const auto dom = center_domain_check(g, std::min<std::uint64_t>(cap, 10000));
  if (dom.status == DomainCheck::Skipped) {
    r.conditions.push_back(
        {"center_is_domain", ConditionVerdict::Skipped, "center too large to enumerate"});
  } else {
    r.conditions.push_back(verdict("center_is_domain", dom.status == DomainCheck::Domain,
                                   dom.status == DomainCheck::Domain
                                       ? ""
                                       : vec_str(dom.x) + " * " + vec_str(dom.y) + " = 0"));
  }
}

}  // namespace

HypothesisReport hypothesis_report(const Gma& g, const std::string& theorem,
                                   std::uint64_t cap) {
  HypothesisReport r;
  r.theorem = theorem;
  const CenterData cd = gma_center(g);
  const std::vector<Vec> za = center_basis(g.context().A);
  const std::vector<Vec> zb = center_basis(g.context().B);
  const Algebra& A = g.context().A;
  const Algebra& B = g.context().B;

  if (theorem == "3.4" || theorem == "4.3-target") {
    add_faithfulness(g, r);
    r.conditions.push_back(verdict("commuting_maps_proper_on_A", commuting_maps_all_proper(A)));
    r.conditions.push_back(verdict("commuting_maps_proper_on_B", commuting_maps_all_proper(B)));
    r.conditions.push_back(
        verdict("piA_center_equals_ZA", same_subspace(cd.pi_a_span, za, A.dim(), g.p())));
    r.conditions.push_back(verdict("ZA_proper_subset", za.size() < A.dim(),
                                   za.size() < A.dim() ? "" : "Z(A) = A"));
    r.conditions.push_back(
        verdict("piB_center_equals_ZB", same_subspace(cd.pi_b_span, zb, B.dim(), g.p())));
    r.conditions.push_back(verdict("ZB_proper_subset", zb.size() < B.dim(),
                                   zb.size() < B.dim() ? "" : "Z(B) = B"));
    add_loyalty(g, cap, r);
    r.conditions.push_back(verdict("A_noncommutative", !A.is_commutative()));
    r.conditions.push_back(verdict("B_noncommutative", !B.is_commutative()));
    if (theorem == "4.3-target") {
      r.conditions.push_back({"source_noncommutativity", ConditionVerdict::Skipped,
                              "condition (3) concerns the source algebra"});
    }
  } else if (theorem == "3.17") {
    add_faithfulness(g, r);
    r.conditions.push_back(verdict("A_is_base_ring", A.dim() == 1));
    const bool g_central = cd.dim() == 1 && subspace_contains(cd.basis, g.flat().unit(), g.p());
    r.conditions.push_back(verdict("G_central_over_Fp", g_central));
    const bool b_central = zb.size() == 1 && subspace_contains(zb, B.unit(), g.p());
    r.conditions.push_back(verdict("B_central_over_Fp", b_central));
    r.conditions.push_back(verdict("B_noncommutative", !B.is_commutative()));
    r.conditions.push_back(verdict("commuting_maps_proper_on_B", commuting_maps_all_proper(B)));
    r.conditions.push_back(
        {"scalar_torsion_free", ConditionVerdict::True, "automatic over a prime field"});
    const auto pair = independent_pair(g, cap);
    if (pair.found) {
      r.conditions.push_back(verdict("independent_pair_exists", true,
                                     "m0=" + vec_str(pair.m0) + " b0=" + vec_str(pair.b0)));
    } else if (pair.capped) {
      r.conditions.push_back({"independent_pair_exists", ConditionVerdict::Skipped,
                              "no independent basis pair; exhaustive scan exceeds the cap"});
    } else {
      r.conditions.push_back(verdict("independent_pair_exists", false, "no pair exists"));
    }
  } else if (theorem == "4.2") {
    add_faithfulness(g, r);
    const auto traces = trace_space(g, TraceKind::Commuting, cap);
    const auto proper = properness_subspace(g);
    RowSpace span(BilinearMap::pair_count(g.dim()) * g.dim(), g.p());
    for (const auto& q : proper) span.add_row(q.vectorized_sym());
    bool contained = true;
    std::string detail;
    for (std::size_t i = 0; i < traces.size(); ++i)
      if (!span.contains(traces[i].vectorized_sym())) {
        contained = false;
        detail = "trace-space basis element " + std::to_string(i) + " is not proper";
        break;
      }
    r.conditions.push_back(verdict("all_commuting_traces_proper", contained, detail));
    const bool nc = !A.is_commutative() || !B.is_commutative();
    r.conditions.push_back(verdict("A_or_B_noncommutative", nc));
    auto side_a = verdict("A_noncommutative", !A.is_commutative());
    auto side_b = verdict("B_noncommutative", !B.is_commutative());
    side_a.informational = true;
    side_b.informational = true;
    r.conditions.push_back(side_a);
    r.conditions.push_back(side_b);
    add_loyalty(g, cap, r);
  } else {
    throw std::invalid_argument("hypothesis_report: unknown theorem '" + theorem + "'");
  }

  add_lemma_checks(g, cap, r);
  return r;
}

}  // namespace gmalg
