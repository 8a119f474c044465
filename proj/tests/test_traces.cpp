#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gmalg/traces.hpp"

using namespace gmalg;

namespace {

constexpr std::uint64_t kCap = 1000000;

Gma t2_f3() {
  Bimodule m(1, 1, 1, 3);
  m.left.at(0, 0, 0) = 1;
  m.right.at(0, 0, 0) = 1;
  return build_triangular(field_algebra(3), m, field_algebra(3));
}

// q(x, y) = x y
BilinearMap product_map(const Algebra& a) {
  BilinearMap q(a.dim(), a.p());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) q.set_value(i, j, a.mul_basis(i, j));
  return q;
}

// q(x, y) = e x y for a fixed element e
BilinearMap left_scaled_product(const Algebra& a, const Vec& e) {
  BilinearMap q(a.dim(), a.p());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) q.set_value(i, j, a.mul(e, a.mul_basis(i, j)));
  return q;
}

BilinearMap commutator_half(const Algebra& a) {
  const std::uint32_t inv2 = mod_inv(2, a.p());
  BilinearMap q(a.dim(), a.p());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      q.set_value(i, j, vec_scale(inv2, a.bracket(a.basis_vec(i), a.basis_vec(j)), a.p()));
  return q;
}

std::vector<Vec> vectorize(const std::vector<BilinearMap>& maps) {
  std::vector<Vec> out;
  for (const auto& q : maps) out.push_back(q.vectorized_sym());
  return out;
}

}  // namespace

TEST_CASE("evaluate_trace on fixed inputs") {
  const Gma g = build_block_partition(2, 1, 5);
  const Algebra& a = g.flat();
  const BilinearMap q = product_map(a);
  Vec x(4, 0);
  x[block_partition_flat_index(2, 1, 0, 1)] = 1;
  x[block_partition_flat_index(2, 1, 1, 0)] = 1;
  CHECK(evaluate_trace(q, x) == a.unit());  // (e12 + e21)^2 = 1
  CHECK(evaluate_trace(BilinearMap(4, 5), x) == Vec(4, 0));
  const BilinearMap c = commutator_half(a);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(evaluate_trace(c, a.basis_vec(i)) == Vec(4, 0));
}

TEST_CASE("commuting/centralizing predicates over F_5") {
  const Gma g = build_block_partition(2, 1, 5);
  const Algebra& a = g.flat();
  CHECK(is_commuting_trace(g, product_map(a), kCap).ok());
  CHECK(is_centralizing_trace(g, product_map(a), kCap).ok());

  // central scalar-valued symmetric map
  BilinearMap nu(4, 5);
  nu.set_value(1, 2, a.unit());
  nu.set_value(2, 1, a.unit());
  CHECK(is_commuting_trace(g, nu, kCap).ok());

  const BilinearMap bad = left_scaled_product(a, a.basis_vec(0));
  const auto r = is_commuting_trace(g, bad, kCap);
  REQUIRE(r.status == TraceCheck::Witness);
  CHECK_FALSE(vec_is_zero(a.bracket(bad.eval(r.witness, r.witness), r.witness)));
  const auto r2 = is_commuting_trace(g, bad, kCap);
  CHECK(r2.witness == r.witness);  // deterministic
  const auto rc = is_centralizing_trace(g, bad, kCap);
  REQUIRE(rc.status == TraceCheck::Witness);
  const CenterData cd = gma_center(g);
  CHECK_FALSE(
      subspace_contains(cd.basis, a.bracket(bad.eval(rc.witness, rc.witness), rc.witness), 5));
}

TEST_CASE("predicates over F_3 fall back to enumeration") {
  const Gma g = t2_f3();
  const Algebra& a = g.flat();
  CHECK(is_commuting_trace(g, product_map(a), kCap).ok());
  const BilinearMap bad = left_scaled_product(a, a.basis_vec(0));
  const auto r = is_commuting_trace(g, bad, kCap);
  REQUIRE(r.status == TraceCheck::Witness);
  CHECK_FALSE(vec_is_zero(a.bracket(bad.eval(r.witness, r.witness), r.witness)));
  CHECK(is_commuting_trace(g, bad, 10).status == TraceCheck::TooLarge);
}

TEST_CASE("predicates agree with exhaustive enumeration on random maps") {
  std::mt19937 rng(99);
  const Gma g = build_block_partition(2, 1, 5);
  const Algebra& a = g.flat();
  const CenterData cd = gma_center(g);
  RowSpace zspan(4, 5);
  for (const auto& z : cd.basis) zspan.add_row(z);
  std::uniform_int_distribution<std::uint32_t> dist(0, 4);
  for (int trial = 0; trial < 25; ++trial) {
    BilinearMap q(4, 5);
    for (auto& c : q.t.a) c = dist(rng);
    bool brute_comm = true, brute_cent = true;
    for (std::uint64_t ix = 1; ix < 625; ++ix) {
      const Vec x = index_to_vec(ix, 4, 5);
      const Vec br = a.bracket(q.eval(x, x), x);
      brute_comm = brute_comm && vec_is_zero(br);
      brute_cent = brute_cent && zspan.contains(br);
      // the trace only sees the symmetric part
      CHECK(evaluate_trace(q, x) == evaluate_trace(q.symmetric_part(), x));
    }
    CHECK(is_commuting_trace(g, q, kCap).ok() == brute_comm);
    CHECK(is_centralizing_trace(g, q, kCap).ok() == brute_cent);
  }
}

TEST_CASE("centralizing space matches the exhaustive assembly") {
  const Gma g = build_triangular_tn(3, 5);
  const CenterData cd = gma_center(g);
  const auto polarized = trace_space(g, TraceKind::Centralizing, kCap);
  const auto enumerated =
      trace_space_enumerated(g.flat(), cd.basis, TraceKind::Centralizing, 20000);
  REQUIRE(enumerated.size() == polarized.size());
  for (std::size_t i = 0; i < polarized.size(); ++i) CHECK(enumerated[i] == polarized[i]);
}

TEST_CASE("trace space of a one-dimensional algebra is everything") {
  const Algebra a = field_algebra(5);
  const auto center = center_basis(a);
  CHECK(trace_space(a, center, TraceKind::Commuting, kCap).size() == 1);
  CHECK(properness_subspace(a, center).size() == 1);
}

TEST_CASE("commuting trace space of T_3(F_5)") {
  const Gma g = build_triangular_tn(3, 5);
  const auto space = trace_space(g, TraceKind::Commuting, kCap);
  CHECK(space.size() == 28);
  for (const auto& q : space) {
    CHECK(q.is_symmetric());
    CHECK(is_commuting_trace(g, q, kCap).ok());
  }

  // exhaustive cross-check: the same space assembled from all 5^6 points
  const CenterData cd = gma_center(g);
  const auto enumerated = trace_space_enumerated(g.flat(), cd.basis, TraceKind::Commuting, 20000);
  REQUIRE(enumerated.size() == space.size());
  for (std::size_t i = 0; i < space.size(); ++i) CHECK(enumerated[i] == space[i]);
}

TEST_CASE("centralizing equals commuting on T_3(F_5)") {
  const Gma g = build_triangular_tn(3, 5);
  const auto comm = trace_space(g, TraceKind::Commuting, kCap);
  const auto cent = trace_space(g, TraceKind::Centralizing, kCap);
  const std::size_t n = BilinearMap::pair_count(g.dim()) * g.dim();
  CHECK(same_subspace(vectorize(comm), vectorize(cent), n, g.p()));
}

TEST_CASE("centralizing contains commuting on full 3 1 5") {
  const Gma g = build_block_partition(3, 1, 5);
  const auto comm = trace_space(g, TraceKind::Commuting, kCap);
  const auto cent = trace_space(g, TraceKind::Centralizing, kCap);
  const std::size_t n = BilinearMap::pair_count(g.dim()) * g.dim();
  CHECK(subspace_subset(vectorize(comm), vectorize(cent), n, g.p()));
}

namespace {

// unital algebra spanned by 1, u, v, w with uv = w, vu = 0 and all other
// products of u, v, w zero; its center is span{1, w}
Algebra heisenberg(std::uint32_t p) {
  Algebra a(4, p);
  for (std::size_t i = 0; i < 4; ++i) {
    a.c(0, i, i) = 1;
    if (i) a.c(i, 0, i) = 1;
  }
  a.c(1, 2, 3) = 1;  // u v = w
  a.set_unit({1, 0, 0, 0});
  return a;
}

}  // namespace

TEST_CASE("centralizing strictly contains commuting on the Heisenberg algebra") {
  for (std::uint32_t p : {5u, 3u}) {  // polarized route and enumeration route
    const Algebra a = heisenberg(p);
    REQUIRE(validate_algebra(a).empty());
    const auto z = center_basis(a);
    REQUIRE(z.size() == 2);

    const auto comm = trace_space(a, z, TraceKind::Commuting, kCap);
    const auto cent = trace_space(a, z, TraceKind::Centralizing, kCap);
    const std::size_t n = BilinearMap::pair_count(4) * 4;
    CHECK(cent.size() > comm.size());
    CHECK(subspace_subset(vectorize(comm), vectorize(cent), n, p));

    // q(x, y) = x_u y_u v has [T_q(x), x] = -x_u^3 w: central, nonzero
    BilinearMap q(4, p);
    q.t.at(1, 1, 2) = 1;
    CHECK(subspace_contains(vectorize(cent), q.vectorized_sym(), p));
    CHECK_FALSE(subspace_contains(vectorize(comm), q.vectorized_sym(), p));

    // pointwise confirmation on every element
    RowSpace zspan(4, p);
    for (const auto& zz : z) zspan.add_row(zz);
    bool all_central = true, some_nonzero = false;
    for (std::uint64_t ix = 1; ix < pow_capped(p, 4, kCap); ++ix) {
      const Vec x = index_to_vec(ix, 4, p);
      const Vec br = a.bracket(q.eval(x, x), x);
      all_central = all_central && zspan.contains(br);
      some_nonzero = some_nonzero || !vec_is_zero(br);
    }
    CHECK(all_central);
    CHECK(some_nonzero);

    // proper forms sit inside the commuting space
    const auto prop = properness_subspace(a, z);
    CHECK(subspace_subset(vectorize(prop), vectorize(comm), n, p));
  }
}

TEST_CASE("enumeration fallback respects the cap") {
  const Gma g = t2_f3();
  CHECK_THROWS_AS(trace_space(g, TraceKind::Commuting, 10), TooLargeError);
}

TEST_CASE("hypothesis report 4.2 on full 4 2 5") {
  const auto r = hypothesis_report(build_block_partition(4, 2, 5), "4.2", kCap);
  CHECK(r.all_satisfied());
}

TEST_CASE("properness subspace basics") {
  const Gma g = build_block_partition(2, 1, 5);
  const Algebra& a = g.flat();
  const auto proper = properness_subspace(g);

  // contains the symmetrized product (z = 1, mu = 0, nu = 0)
  BilinearMap symprod(4, 5);
  const std::uint32_t inv2 = mod_inv(2, 5);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      symprod.set_value(
          i, j, vec_scale(inv2, vec_add(a.mul_basis(i, j), a.mul_basis(j, i), 5), 5));
  CHECK(subspace_contains(vectorize(proper), symprod.vectorized_sym(), 5));

  // contains mu-only maps q(x,y) = (tau(x) y + tau(y) x)/2 with tau = x_0
  BilinearMap muonly(4, 5);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Vec val(4, 0);
      if (i == 0) val = vec_add(val, a.basis_vec(j), 5);
      if (j == 0) val = vec_add(val, a.basis_vec(i), 5);
      muonly.set_value(i, j, vec_scale(inv2, val, 5));
    }
  CHECK(subspace_contains(vectorize(proper), muonly.vectorized_sym(), 5));
}

TEST_CASE("every proper-form trace is commuting") {
  for (const Gma& g : {build_block_partition(3, 1, 5), build_triangular_tn(3, 5)})
    for (const auto& q : properness_subspace(g)) CHECK(is_commuting_trace(g, q, kCap).ok());
}

TEST_CASE("completeness: commuting traces are proper on theorem instances") {
  for (const Gma& g : {build_block_partition(3, 1, 5), build_triangular_tn(3, 5)}) {
    const auto space = trace_space(g, TraceKind::Commuting, kCap);
    const auto proper = properness_subspace(g);
    const std::size_t n = BilinearMap::pair_count(g.dim()) * g.dim();
    CHECK(same_subspace(vectorize(space), vectorize(proper), n, g.p()));
    for (const auto& q : space) {
      auto dec = proper_trace_decompose(g, q);
      REQUIRE(dec);
      CHECK(dec->reconstruct(g.flat()) == q.symmetric_part());
    }
  }
}

TEST_CASE("commuting traces of T_2(F_3) are proper (p = 3 route)") {
  const Gma g = t2_f3();
  const auto space = trace_space(g, TraceKind::Commuting, kCap);
  for (const auto& q : space) {
    auto dec = proper_trace_decompose(g, q);
    REQUIRE(dec);
    CHECK(dec->reconstruct(g.flat()) == q.symmetric_part());
  }
}

TEST_CASE("proper_trace_decompose fixed cases") {
  SUBCASE("x y on T_2(F_3)") {
    const Gma g = t2_f3();
    auto dec = proper_trace_decompose(g, product_map(g.flat()));
    REQUIRE(dec);
    CHECK(dec->z_center == Vec{1});
    CHECK(dec->mu == Mat(1, 3, 3));
    CHECK(dec->nu == Mat(1, 6, 3));
    CHECK(dec->z_flat() == g.flat().unit());
  }
  SUBCASE("commutator has zero trace and the zero decomposition") {
    const Gma g = build_block_partition(2, 1, 5);
    auto dec = proper_trace_decompose(g, commutator_half(g.flat()));
    REQUIRE(dec);
    CHECK(vec_is_zero(dec->z_center));
    CHECK(dec->mu == Mat(1, 4, 5));
    CHECK(dec->nu == Mat(1, 10, 5));
  }
  SUBCASE("non-commuting traces are not proper") {
    const Gma g = build_block_partition(2, 1, 5);
    CHECK_FALSE(proper_trace_decompose(g, left_scaled_product(g.flat(), g.flat().basis_vec(0))));
  }
}

TEST_CASE("random proper forms decompose with exact reconstruction") {
  std::mt19937 rng(57);
  const Gma g = build_block_partition(4, 2, 5);
  const CenterData cd = gma_center(g);
  const auto gens = properness_generators(g.flat(), cd.basis);
  const std::size_t n = BilinearMap::pair_count(g.dim()) * g.dim();
  std::uniform_int_distribution<std::uint32_t> dist(0, 4);
  for (int trial = 0; trial < 5; ++trial) {
    Vec tensor(n, 0);
    for (const auto& gvec : gens) tensor = vec_add(tensor, vec_scale(dist(rng), gvec, 5), 5);
    const BilinearMap q = BilinearMap::from_vectorized_sym(tensor, g.dim(), 5);
    auto dec = proper_trace_decompose(g, q);
    REQUIRE(dec);
    CHECK(dec->reconstruct(g.flat()) == q);  // q is already symmetric
  }
}

TEST_CASE("block components of the product trace on full 4 2 5") {
  const Gma g = build_block_partition(4, 2, 5);
  const MoritaContext& ctx = g.context();
  const BilinearMap q = product_map(g.flat());
  BlockComponents bc(g, q);

  for (std::size_t i = 0; i < g.dim_a(); ++i)
    for (std::size_t u = 0; u < g.dim_m(); ++u) {
      Vec um(g.dim_m(), 0);
      um[u] = 1;
      CHECK(bc.gcomp(1, 2, i, u) == ctx.M.act_left(ctx.A.basis_vec(i), um));
    }
  for (std::size_t u = 0; u < g.dim_m(); ++u)
    for (std::size_t j = 0; j < g.dim_b(); ++j) {
      Vec um(g.dim_m(), 0);
      um[u] = 1;
      CHECK(bc.gcomp(2, 4, u, j) == ctx.M.act_right(um, ctx.B.basis_vec(j)));
    }
  for (std::size_t i = 0; i < g.dim_a(); ++i)
    for (std::size_t v = 0; v < g.dim_n(); ++v) {
      Vec vn(g.dim_n(), 0);
      vn[v] = 1;
      CHECK(bc.h(1, 3, i, v) == ctx.N.act_right(vn, ctx.A.basis_vec(i)));
    }
  for (std::size_t v = 0; v < g.dim_n(); ++v)
    for (std::size_t j = 0; j < g.dim_b(); ++j) {
      Vec vn(g.dim_n(), 0);
      vn[v] = 1;
      CHECK(bc.h(3, 4, v, j) == ctx.N.act_left(ctx.B.basis_vec(j), vn));
    }
  for (std::size_t u = 0; u < g.dim_m(); ++u)
    for (std::size_t v = 0; v < g.dim_n(); ++v) {
      Vec um(g.dim_m(), 0), vn(g.dim_n(), 0);
      um[u] = 1;
      vn[v] = 1;
      CHECK(bc.f(2, 3, u, v) == ctx.pairing_phi(um, vn));
      CHECK(bc.k(2, 3, u, v) == ctx.pairing_psi(vn, um));
    }
  // the remaining g and h components vanish
  const std::size_t g_vanish[][2] = {{1, 1}, {1, 3}, {1, 4}, {3, 3}, {3, 4}, {4, 4}};
  for (const auto& pr : g_vanish)
    for (std::size_t u = 0; u < g.block_dim(pr[0] - 1); ++u)
      for (std::size_t v = 0; v < g.block_dim(pr[1] - 1); ++v)
        CHECK(vec_is_zero(bc.gcomp(pr[0], pr[1], u, v)));

  REQUIRE(bc.derived_available());
  CHECK(bc.derived().eps == ctx.A.unit());
  CHECK(bc.derived().epsp == ctx.B.unit());
  const Vec diag = vec_add(g.embed_a(bc.derived().eps), g.embed_b(bc.derived().epsp), 5);
  CHECK(diag == g.flat().unit());

  auto dec = proper_trace_decompose(g, q);
  REQUIRE(dec);
  CHECK(dec->reconstruct(g.flat()) == q.symmetric_part());
}

TEST_CASE("block components of the zero map vanish") {
  const Gma g = build_block_partition(3, 1, 5);
  BlockComponents bc(g, BilinearMap(g.dim(), 5));
  for (std::size_t bi = 0; bi < 4; ++bi)
    for (std::size_t bj = bi; bj < 4; ++bj)
      for (std::size_t u = 0; u < g.block_dim(bi); ++u)
        for (std::size_t v = 0; v < g.block_dim(bj); ++v)
          for (std::size_t out = 0; out < 4; ++out)
            CHECK(vec_is_zero(bc.component(bi, bj, u, v, out)));
}

TEST_CASE("block lemma checks pass on commuting traces of full 3 1 5") {
  const Gma g = build_block_partition(3, 1, 5);
  const auto space = trace_space(g, TraceKind::Commuting, kCap);
  REQUIRE(space.size() == 55);
  for (std::size_t i = 0; i < space.size(); i += 9)
    CHECK(check_component_identities(g, space[i]).empty());
  CHECK(check_component_identities(g, product_map(g.flat())).empty());
}

TEST_CASE("block lemma checks reject non-commuting input") {
  const Gma g = build_block_partition(2, 1, 5);
  const auto bad = check_component_identities(g, left_scaled_product(g.flat(), g.flat().basis_vec(0)));
  REQUIRE(bad.size() == 1);
  CHECK(bad.front() == "derived data unavailable: trace is not commuting");
}

TEST_CASE("hypothesis report 4.2 on full 3 1 5") {
  const auto r = hypothesis_report(build_block_partition(3, 1, 5), "4.2", kCap);
  CHECK(r.all_satisfied());
  const auto* c = r.find("all_commuting_traces_proper");
  REQUIRE(c);
  CHECK(c->status == ConditionVerdict::True);
}

TEST_CASE("hypothesis report 4.3-target mirrors 3.4 on the target side") {
  const auto r = hypothesis_report(build_block_partition(4, 2, 5), "4.3-target", kCap);
  CHECK(r.all_satisfied());
}
