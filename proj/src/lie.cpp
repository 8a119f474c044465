#include "gmalg/lie.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gmalg {

LieCheck is_lie_isomorphism(const LinearMap& l, const Gma& g, const Gma& g2) {
  if (l.source_dim != g.dim() || l.target_dim != g2.dim() || g.dim() != g2.dim())
    return {LieCheck::DimensionMismatch, {}, {0, 0}};
  const auto ker = kernel_basis(l.m);
  if (!ker.empty()) return {LieCheck::NotBijective, ker.front(), {0, 0}};
  const Algebra& src = g.flat();
  const Algebra& dst = g2.flat();
  for (std::size_t i = 0; i < src.dim(); ++i)
    for (std::size_t j = i + 1; j < src.dim(); ++j) {
      const Vec lhs = l.apply(src.bracket(src.basis_vec(i), src.basis_vec(j)));
      const Vec rhs = dst.bracket(l.column(i), l.column(j));
      if (lhs != rhs) return {LieCheck::BracketFails, {}, {i, j}};
    }
  return {LieCheck::Ok, {}, {0, 0}};
}

namespace {

Vec identity_value(const Algebra& a, const Vec& x, const Vec& y) {
  // [[x^2, y], [x, y]]
  return a.bracket(a.bracket(a.square(x), y), a.bracket(x, y));
}

}  // namespace

IdentityCheck check_polynomial_identity(const Gma& g, std::uint64_t cap) {
  const Algebra& a = g.flat();
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();

  if (p >= 5) {
    // full multilinearization: 12 P(x,y) once the x-slots are symmetrized
    // over S_3 and the y-slots over S_2
    auto term = [&](std::size_t x1, std::size_t x2, std::size_t x3, std::size_t y1,
                    std::size_t y2) {
      const Vec inner = a.bracket(a.mul_basis(x1, x2), a.basis_vec(y1));
      const Vec outer = a.bracket(a.basis_vec(x3), a.basis_vec(y2));
      return a.bracket(inner, outer);
    };
    const std::size_t perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (std::size_t ia = 0; ia < d; ++ia)
      for (std::size_t ib = ia; ib < d; ++ib)
        for (std::size_t ic = ib; ic < d; ++ic)
          for (std::size_t id = 0; id < d; ++id)
            for (std::size_t ie = id; ie < d; ++ie) {
              const std::size_t xs[3] = {ia, ib, ic};
              Vec acc(d, 0);
              for (const auto& pm : perms) {
                acc = vec_add(acc, term(xs[pm[0]], xs[pm[1]], xs[pm[2]], id, ie), p);
                acc = vec_add(acc, term(xs[pm[0]], xs[pm[1]], xs[pm[2]], ie, id), p);
              }
              if (vec_is_zero(acc)) continue;
              // the identity cannot vanish on span{e_ia,e_ib,e_ic} x span{e_id,e_ie}
              for (std::uint64_t ix = 1; ix < std::uint64_t(p) * p * p; ++ix) {
                const Vec cx = index_to_vec(ix, 3, p);
                Vec x(d, 0);
                x[ia] = mod_add(x[ia], cx[0], p);
                x[ib] = mod_add(x[ib], cx[1], p);
                x[ic] = mod_add(x[ic], cx[2], p);
                for (std::uint64_t iy = 1; iy < std::uint64_t(p) * p; ++iy) {
                  const Vec cy = index_to_vec(iy, 2, p);
                  Vec y(d, 0);
                  y[id] = mod_add(y[id], cy[0], p);
                  y[ie] = mod_add(y[ie], cy[1], p);
                  if (!vec_is_zero(identity_value(a, x, y)))
                    return {IdentityCheck::Violated, x, y};
                }
              }
              throw std::logic_error("check_polynomial_identity: witness not found in span");
            }
    return {IdentityCheck::Holds, {}, {}};
  }

  const std::uint64_t total = pow_capped(p, 2 * d, cap);
  if (total > cap) return {IdentityCheck::TooLarge, {}, {}};
  const std::uint64_t n = pow_capped(p, d, cap);
  for (std::uint64_t ix = 1; ix < n; ++ix) {
    const Vec x = index_to_vec(ix, d, p);
    for (std::uint64_t iy = 1; iy < n; ++iy) {
      const Vec y = index_to_vec(iy, d, p);
      if (!vec_is_zero(identity_value(a, x, y))) return {IdentityCheck::Violated, x, y};
    }
  }
  return {IdentityCheck::Holds, {}, {}};
}

namespace {

// first pair (i <= j) whose polarized equations make the proper-form
// system inconsistent; used to annotate NotProperTrace failures. The
// system (gens | rhs) is inconsistent iff (0,...,0 | 1) lies in the row
// space of the augmented equation rows.
std::optional<std::pair<std::size_t, std::size_t>> inconsistent_pair(
    const Algebra& a, const std::vector<Vec>& center, const BilinearMap& sym) {
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  const auto gens = properness_generators(a, center);
  const std::size_t ng = gens.size();
  RowSpace acc(ng + 1, p);
  Vec probe(ng + 1, 0);
  probe[ng] = 1;
  Vec row(ng + 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const Vec val = sym.value(i, j);
      const std::size_t pr = BilinearMap::pair_index(i, j, d);
      for (std::size_t k = 0; k < d; ++k) {
        const std::size_t pos = pr * d + k;
        for (std::size_t u = 0; u < ng; ++u) row[u] = gens[u][pos];
        row[ng] = val[k];
        acc.add_row(row);
      }
      if (acc.contains(probe)) return std::make_pair(i, j);
    }
  return std::nullopt;
}

}  // namespace

LieResult lie_decompose(const LinearMap& l, const Gma& g, const Gma& g2) {
  if (l.source_dim != g.dim() || l.target_dim != g2.dim() || g.dim() != g2.dim())
    throw std::invalid_argument("lie_decompose: dimension mismatch");
  const std::uint32_t p = g.p();
  const std::size_t d = g.dim();
  const auto linv = mat_inverse(l.m);
  if (!linv) throw std::invalid_argument("lie_decompose: l is not bijective");

  // q(y, z) = l(l^-1(y) l^-1(z)) on the target
  BilinearMap q(d, p);
  std::vector<Vec> pre(d);
  for (std::size_t i = 0; i < d; ++i) pre[i] = linv->col_vec(i);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      q.set_value(i, j, l.apply(g.flat().mul(pre[i], pre[j])));

  const CenterData cd2 = gma_center(g2);
  auto dec = proper_trace_decompose(g2.flat(), cd2.basis, q, /*prefer_nonzero_z=*/true);
  if (!dec) {
    LieFailure f;
    f.code = LieFailure::NotProperTrace;
    f.pair = inconsistent_pair(g2.flat(), cd2.basis, q.symmetric_part());
    f.detail = "the trace of q(y,z) = l(l^-1(y) l^-1(z)) admits no proper form";
    return f;
  }
  if (vec_is_zero(dec->z_center)) {
    LieFailure f;
    f.code = LieFailure::LambdaZero;
    f.detail = "every proper form of the squaring trace has lambda = 0";
    return f;
  }

  const Vec lambda_flat = dec->z_flat();
  const std::uint32_t inv2 = mod_inv(2, p);
  LinearMap m0(d, d, p);
  for (std::size_t i = 0; i < d; ++i) {
    const Vec li = l.column(i);
    Vec mu_li(d, 0);  // mu_1(l(e_i)) in flat coordinates
    for (std::size_t s = 0; s < cd2.dim(); ++s) {
      std::uint64_t coeff = 0;
      for (std::size_t j = 0; j < d; ++j) coeff += std::uint64_t(dec->mu(s, j)) * li[j];
      mu_li = vec_add(mu_li, vec_scale(std::uint32_t(coeff % p), cd2.basis[s], p), p);
    }
    m0.set_column(i, vec_add(g2.flat().mul(lambda_flat, li), vec_scale(inv2, mu_li, p), p));
  }

  // classification by the direct tests
  auto first_fail = [&](bool anti) -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Vec lhs = m0.apply(g.flat().mul_basis(i, j));
        const Vec rhs = anti ? g2.flat().mul(m0.column(j), m0.column(i))
                             : g2.flat().mul(m0.column(i), m0.column(j));
        if (lhs != rhs) return std::make_pair(i, j);
      }
    return std::nullopt;
  };
  const auto fail_mult = first_fail(false);
  const auto fail_anti = first_fail(true);
  if (fail_mult && fail_anti) {
    LieFailure f;
    f.code = LieFailure::NeitherKind;
    f.pair = fail_mult;
    f.detail = "m0 is neither multiplicative nor anti-multiplicative";
    return f;
  }

  LieDecomposition out;
  out.lambda = dec->z_center;
  out.lambda_flat = lambda_flat;
  out.mu1 = dec->mu;
  out.degenerate_both_kinds = !fail_mult && !fail_anti;
  if (!fail_mult) {
    out.kind = LieKind::Homomorphism;
    out.m = m0;
  } else {
    out.kind = LieKind::NegativeOfAntiHomomorphism;
    LinearMap neg(d, d, p);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) neg.m(i, j) = mod_neg(m0.m(i, j), p);
    out.m = neg;
  }
  out.n = LinearMap(d, d, p);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out.n.m(i, j) = mod_sub(l.m(i, j), out.m.m(i, j), p);

  const Vec unit2 = g2.flat().unit();
  if (cd2.dim() == 1 && subspace_contains(cd2.basis, unit2, p)) {
    Vec h(d, 0);
    std::size_t lead = 0;
    while (lead < d && unit2[lead] == 0) ++lead;
    assert(lead < d);
    const std::uint32_t inv_u = mod_inv(unit2[lead], p);
    for (std::size_t i = 0; i < d; ++i) h[i] = mod_mul(out.n.m(lead, i), inv_u, p);
    out.h = std::move(h);
  }

  const auto bad = verify_standard_form(l, out, g, g2);
  // surjectivity is an extra conclusion, not a decomposition invariant
  std::vector<std::string> core;
  for (const auto& b : bad)
    if (b != "m_surjective") core.push_back(b);
  if (!core.empty()) {
    LieFailure f;
    f.code = LieFailure::NeitherKind;
    f.detail = "decomposition failed verification: " + core.front();
    return f;
  }
  return out;
}

std::vector<std::string> verify_standard_form(const LinearMap& l,
                                              const LieDecomposition& dec, const Gma& g,
                                              const Gma& g2) {
  std::vector<std::string> bad;
  const std::uint32_t p = g.p();
  const std::size_t d = g.dim();
  if (dec.m.source_dim != d || dec.n.source_dim != d || l.source_dim != d ||
      g2.dim() != d) {
    return {"shape_mismatch"};
  }
  const Algebra& src = g.flat();
  const Algebra& dst = g2.flat();

  bool sum_ok = true;
  for (std::size_t i = 0; i < d && sum_ok; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (l.m(i, j) != mod_add(dec.m.m(i, j), dec.n.m(i, j), p)) {
        sum_ok = false;
        break;
      }
  if (!sum_ok) bad.push_back("l_equals_m_plus_n");

  const CenterData cd2 = gma_center(g2);
  for (std::size_t i = 0; i < d; ++i)
    if (!subspace_contains(cd2.basis, dec.n.column(i), p)) {
      bad.push_back("n_center_valued");
      break;
    }

  bool n_comm_ok = true;
  for (std::size_t i = 0; i < d && n_comm_ok; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (!vec_is_zero(dec.n.apply(src.bracket(src.basis_vec(i), src.basis_vec(j))))) {
        n_comm_ok = false;
        break;
      }
  if (!n_comm_ok) bad.push_back("n_vanishes_on_commutators");

  bool kind_ok = true;
  for (std::size_t i = 0; i < d && kind_ok; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec lhs, rhs;
      if (dec.kind == LieKind::Homomorphism) {
        lhs = dec.m.apply(src.mul_basis(i, j));
        rhs = dst.mul(dec.m.column(i), dec.m.column(j));
      } else {
        // -m must be an anti-homomorphism: (-m)(xy) = (-m)(y)(-m)(x)
        lhs = vec_scale(p - 1, dec.m.apply(src.mul_basis(i, j)), p);
        rhs = dst.mul(vec_scale(p - 1, dec.m.column(j), p),
                      vec_scale(p - 1, dec.m.column(i), p));
      }
      if (lhs != rhs) {
        kind_ok = false;
        break;
      }
    }
  if (!kind_ok)
    bad.push_back(dec.kind == LieKind::Homomorphism ? "m_multiplicative"
                                                    : "m_negative_of_anti_homomorphism");

  if (!kernel_basis(dec.m.m).empty()) bad.push_back("m_injective");

  if (cd2.dim() == 1 && subspace_contains(cd2.basis, dst.unit(), p)) {
    Echelon e = rref(dec.m.m);
    if (e.rank() != d) bad.push_back("m_surjective");
    const Vec m1 = dec.m.apply(src.unit());
    const Vec neg_unit = vec_scale(p - 1, dst.unit(), p);
    if (m1 != dst.unit() && m1 != neg_unit) bad.push_back("m_unit_pm_one");
  }
  return bad;
}

}  // namespace gmalg
