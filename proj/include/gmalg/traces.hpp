#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmalg/morita.hpp"

namespace gmalg {

// Bilinear map q on a d-dimensional algebra: t[i][j] holds the coordinates
// of q(e_i, e_j). Its trace is x -> q(x, x), which only sees the symmetric
// part (q(x,y)+q(y,x))/2.
struct BilinearMap {
  std::size_t dim = 0;
  std::uint32_t p = 0;
  Tensor3 t;  // d x d x d

  BilinearMap() = default;
  BilinearMap(std::size_t d, std::uint32_t mod) : dim(d), p(mod), t(d, d, d) {}

  Vec value(std::size_t i, std::size_t j) const {
    Vec v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = t.at(i, j, k);
    return v;
  }
  void set_value(std::size_t i, std::size_t j, const Vec& v) {
    for (std::size_t k = 0; k < dim; ++k) t.at(i, j, k) = v[k];
  }

  Vec eval(const Vec& x, const Vec& y) const;
  BilinearMap symmetric_part() const;
  bool is_symmetric() const;

  // symmetric tensors flattened over (pair index, coordinate); the pair
  // index runs over i <= j in lexicographic order
  Vec vectorized_sym() const;
  static BilinearMap from_vectorized_sym(const Vec& v, std::size_t d, std::uint32_t p);
  static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t d);
  static std::size_t pair_count(std::size_t d) { return d * (d + 1) / 2; }

  bool operator==(const BilinearMap&) const = default;
};

Vec evaluate_trace(const BilinearMap& q, const Vec& x);

enum class TraceKind { Commuting, Centralizing };

struct TraceCheck {
  enum Status { Holds, Witness, TooLarge } status = Holds;
  Vec witness;  // x with [q(x,x), x] violating the condition
  bool ok() const { return status == Holds; }
};

// [T_q(x), x] = 0 for all x. For p >= 5 decided through the trilinear
// polarization on basis triples; for p = 3 by exhaustive enumeration when
// p^dim fits under the cap.
TraceCheck is_commuting_trace(const Gma& g, const BilinearMap& q, std::uint64_t cap);

// [T_q(x), x] in Z(G) for all x; same method with constraints projected
// onto the non-pivot coordinates of the center's rref.
TraceCheck is_centralizing_trace(const Gma& g, const BilinearMap& q, std::uint64_t cap);

// Canonical basis of the space of symmetric bilinear maps whose trace is
// commuting (resp. centralizing). Throws TooLargeError on the p = 3
// enumeration fallback when the cap is exceeded.
std::vector<BilinearMap> trace_space(const Gma& g, TraceKind kind, std::uint64_t cap);

// Span of the traces of proper form z x^2 + mu(x) x + nu(x,x), as
// symmetric bilinear maps.
std::vector<BilinearMap> properness_subspace(const Gma& g);

// spanning set of that space in the unknown order (z_s | mu_{s,i} |
// nu_{s,pair}), each as a vectorized symmetric tensor
std::vector<Vec> properness_generators(const Algebra& a, const std::vector<Vec>& center);

// algebra-level cores (the Gma functions operate on g.flat())
std::vector<BilinearMap> trace_space(const Algebra& a, const std::vector<Vec>& center,
                                     TraceKind kind, std::uint64_t cap);
std::vector<BilinearMap> properness_subspace(const Algebra& a,
                                             const std::vector<Vec>& center);

// Constraints assembled from every point of F_p^dim instead of from the
// polarized system; the p = 3 route, and an exhaustive cross-check of the
// polarized assembly for any p. Throws TooLargeError past the cap.
std::vector<BilinearMap> trace_space_enumerated(const Algebra& a,
                                                const std::vector<Vec>& center,
                                                TraceKind kind, std::uint64_t cap);

struct ProperDecomposition {
  Vec z_center;   // coordinates of z in the center basis
  Mat mu;         // dimZ x d: center coordinates of mu(e_i) per column i
  Mat nu;         // dimZ x pair_count(d): center coordinates of nu(e_i, e_j)
  std::vector<Vec> center;  // the center basis the coordinates refer to
  std::size_t dim = 0;
  std::uint32_t p = 0;

  Vec z_flat() const;
  // symmetric map whose trace is z x^2 + mu(x) x + nu(x,x)
  BilinearMap reconstruct(const Algebra& a) const;
};

// Solve T_q(x) = z x^2 + mu(x) x + nu(x,x) with z, mu, nu center-valued;
// nullopt when inconsistent. The identity is quadratic in x, so the
// pair-polarized system is exact for every odd p.
std::optional<ProperDecomposition> proper_trace_decompose(const Gma& g,
                                                          const BilinearMap& q);
// prefer_nonzero_z: when the canonical solution has z = 0 but the solution
// set contains one with z != 0, shift by the first such kernel direction
// (the Lie decomposition needs a nonzero leading coefficient whenever one
// exists)
std::optional<ProperDecomposition> proper_trace_decompose(const Algebra& a,
                                                          const std::vector<Vec>& center,
                                                          const BilinearMap& q,
                                                          bool prefer_nonzero_z = false);

// Corner-valued components of a trace on the block coordinates
// (A_1, A_2, A_3, A_4) = (A, M, N, B), plus the derived data of the
// decomposition identities. Raw components always exist; the derived part
// requires a commuting trace.
class BlockComponents {
 public:
  BlockComponents(const Gma& g, const BilinearMap& q, std::uint64_t cap = 1000000);

  // component of T_q with inputs restricted to blocks bi <= bj and output
  // projected onto block `out`; indices are local to the blocks
  Vec component(std::size_t bi, std::size_t bj, std::size_t u, std::size_t v,
                std::size_t out) const;

  // component accessors: blocks are 1-based (1=A, 2=M, 3=N, 4=B)
  Vec f(std::size_t i, std::size_t j, std::size_t u, std::size_t v) const {
    return component(i - 1, j - 1, u, v, 0);
  }
  Vec gcomp(std::size_t i, std::size_t j, std::size_t u, std::size_t v) const {
    return component(i - 1, j - 1, u, v, 1);
  }
  Vec h(std::size_t i, std::size_t j, std::size_t u, std::size_t v) const {
    return component(i - 1, j - 1, u, v, 2);
  }
  Vec k(std::size_t i, std::size_t j, std::size_t u, std::size_t v) const {
    return component(i - 1, j - 1, u, v, 3);
  }

  struct Derived {
    Mat alpha;   // M -> A coords, image in pi_A(Z(G))
    Mat tau;     // N -> A coords
    Mat gamma;   // B -> A coords (gamma(b) in Z(A))
    Mat gammap;  // A -> B coords (gamma'(a) in Z(B))
    Tensor3 delta;  // dimA x dimB x dimA
    Vec zeta;    // in B
    Vec theta;   // in A
    Vec eps;     // in A
    Vec epsp;    // in B
  };

  bool derived_available() const { return derived_.has_value(); }
  const std::string& derived_failure() const { return derived_failure_; }
  const Derived& derived() const;

  const Gma& gma() const { return *g_; }
  const CenterData& center() const { return center_; }

 private:
  void compute_derived(std::uint64_t cap);

  const Gma* g_;
  BilinearMap sym_;
  CenterData center_;
  std::optional<Derived> derived_;
  std::string derived_failure_;
};

// Checks the vanishing patterns, centrality statements and component
// formulas of the trace decomposition on all basis tuples; returns the
// names of violated clauses.
std::vector<std::string> check_component_identities(const Gma& g, const BilinearMap& q);

}  // namespace gmalg
