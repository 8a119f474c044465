#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmalg/algebra.hpp"

namespace gmalg {

// Bimodule over a pair of algebras, given by action tensors:
//   left[i][m][k]:  e_i . u_m = sum_k left[i][m][k] u_k
//   right[m][j][k]: u_m . e_j = sum_k right[m][j][k] u_k
struct Bimodule {
  std::size_t dim = 0;
  std::size_t left_dim = 0;   // dim of the algebra acting from the left
  std::size_t right_dim = 0;  // dim of the algebra acting from the right
  std::uint32_t p = 0;
  Tensor3 left;   // left_dim x dim x dim
  Tensor3 right;  // dim x right_dim x dim

  Bimodule() = default;
  Bimodule(std::size_t d, std::size_t ld, std::size_t rd, std::uint32_t mod)
      : dim(d), left_dim(ld), right_dim(rd), p(mod), left(ld, d, d), right(d, rd, d) {}

  Vec act_left(const Vec& a, const Vec& u) const;
  Vec act_right(const Vec& u, const Vec& b) const;
  bool operator==(const Bimodule&) const = default;
};

// Morita context (A, B, M, N, Phi, Psi). M is an (A,B)-bimodule and N a
// (B,A)-bimodule; the pairings are Phi: M x N -> A and Psi: N x M -> B.
struct MoritaContext {
  Algebra A, B;
  Bimodule M;  // left A, right B
  Bimodule N;  // left B, right A
  Tensor3 phi;  // dimM x dimN x dimA
  Tensor3 psi;  // dimN x dimM x dimB

  Vec pairing_phi(const Vec& m, const Vec& n) const;
  Vec pairing_psi(const Vec& n, const Vec& m) const;
  bool operator==(const MoritaContext&) const = default;
};

struct MoritaViolation {
  std::string axiom;                 // which law failed
  std::array<std::size_t, 3> idx;    // offending basis indices
  std::string describe() const;
};

// Checks every bimodule and pairing law of the context on basis tuples.
std::vector<MoritaViolation> validate_morita(const MoritaContext& ctx);

// Generalized matrix algebra [A M; N B]: a Morita context together with its
// flattened structure-constant algebra on coordinates (A | M | N | B).
class Gma {
 public:
  explicit Gma(MoritaContext ctx);

  const MoritaContext& context() const { return ctx_; }
  const Algebra& flat() const { return flat_; }
  std::size_t dim() const { return flat_.dim(); }
  std::uint32_t p() const { return flat_.p(); }

  std::size_t dim_a() const { return ctx_.A.dim(); }
  std::size_t dim_m() const { return ctx_.M.dim; }
  std::size_t dim_n() const { return ctx_.N.dim; }
  std::size_t dim_b() const { return ctx_.B.dim(); }
  std::size_t off_a() const { return 0; }
  std::size_t off_m() const { return dim_a(); }
  std::size_t off_n() const { return dim_a() + dim_m(); }
  std::size_t off_b() const { return dim_a() + dim_m() + dim_n(); }

  // which of the four blocks a flat coordinate belongs to (0=A,1=M,2=N,3=B)
  std::size_t block_of(std::size_t flat_idx) const;
  std::size_t block_offset(std::size_t blk) const;
  std::size_t block_dim(std::size_t blk) const;

  Vec part_a(const Vec& x) const { return slice(x, off_a(), dim_a()); }
  Vec part_m(const Vec& x) const { return slice(x, off_m(), dim_m()); }
  Vec part_n(const Vec& x) const { return slice(x, off_n(), dim_n()); }
  Vec part_b(const Vec& x) const { return slice(x, off_b(), dim_b()); }
  Vec part(const Vec& x, std::size_t blk) const {
    return slice(x, block_offset(blk), block_dim(blk));
  }

  Vec embed_a(const Vec& a) const { return embed(a, off_a()); }
  Vec embed_m(const Vec& m) const { return embed(m, off_m()); }
  Vec embed_n(const Vec& n) const { return embed(n, off_n()); }
  Vec embed_b(const Vec& b) const { return embed(b, off_b()); }
  Vec embed_block(const Vec& v, std::size_t blk) const {
    return embed(v, block_offset(blk));
  }

  Vec unit_a_embedded() const { return embed_a(ctx_.A.unit()); }
  Vec unit_b_embedded() const { return embed_b(ctx_.B.unit()); }

 private:
  Vec slice(const Vec& x, std::size_t off, std::size_t len) const {
    return Vec(x.begin() + off, x.begin() + off + len);
  }
  Vec embed(const Vec& v, std::size_t off) const {
    Vec x(dim(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) x[off + i] = v[i];
    return x;
  }

  MoritaContext ctx_;
  Algebra flat_;
};

// --- builders ---

struct NotIdempotentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct TrivialIdempotentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// M_n(F_p) split as [M_k, M_{k x (n-k)}; M_{(n-k) x k}, M_{n-k}].
Gma build_block_partition(std::size_t n, std::size_t k, std::uint32_t p);

// Upper triangular [A M; 0 B] with zero pairings; M must be nonzero.
Gma build_triangular(Algebra a, Bimodule m, Algebra b);

// T_n(F_p) written as [F_p, row vectors; 0, T_{n-1}(F_p)].
Gma build_triangular_tn(std::size_t n, std::uint32_t p);

// Peirce decomposition of a at the idempotent e (corners eAe, eAf, fAe, fAf).
Gma build_from_idempotent(const Algebra& a, const Vec& e);
// change of basis: columns are the corner basis vectors inside a, so it maps
// flat Gma coordinates to coordinates of a
Mat peirce_coordinate_map(const Algebra& a, const Vec& e);

// A = B = F_p + F_p acting coordinate-wise on M = F_p + F_p: faithful on
// both sides but not loyal.
Gma build_nonloyal_demo(std::uint32_t p);

// flat coordinate of entry (r,c) of M_n under the (n,k) block partition
std::size_t block_partition_flat_index(std::size_t n, std::size_t k, std::size_t r,
                                       std::size_t c);

// --- center machinery ---

struct CenterData {
  std::vector<Vec> basis;      // canonical basis of Z(G), flat coordinates
  std::vector<Vec> pi_a;       // A-parts of basis (aligned)
  std::vector<Vec> pi_b;       // B-parts of basis (aligned)
  std::vector<Vec> pi_a_span;  // canonical basis of pi_A(Z(G))
  std::vector<Vec> pi_b_span;  // canonical basis of pi_B(Z(G))
  bool phi_well_defined = false;  // no central (0, b) with b != 0
  bool phi_injective = false;     // no central (a, 0) with a != 0
  std::size_t dim() const { return basis.size(); }
};

CenterData gma_center(const Gma& g);

// The unique b with diag(a, b) central; nullopt when a is not in
// pi_A(Z(G)). When phi is not well defined the canonical solution is
// returned (flagged in CenterData).
std::optional<Vec> phi_apply(const CenterData& c, const Gma& g, const Vec& a);
std::optional<Vec> phi_inverse_apply(const CenterData& c, const Gma& g, const Vec& b);

// --- module checks ---

enum class Side { Left, Right };

struct FaithfulResult {
  bool faithful = false;
  Vec witness;  // nonzero annihilator when not faithful
};

FaithfulResult check_module_faithful(const Gma& g, Side side);

struct LoyalResult {
  enum Status { Loyal, Witness, TooLarge } status = Loyal;
  Vec a, b;  // annihilating pair when status == Witness
};

// Exhaustive scan over nonzero pairs (a, b) in index order, where the
// index of a vector is sum_i v_i p^i; the returned witness is the least
// pair in that order. TooLarge when p^(dimA+dimB) exceeds the cap.
LoyalResult check_loyal(const Gma& g, std::uint64_t cap);

// --- hypothesis reports ---

struct ConditionVerdict {
  std::string name;
  enum Status { True, False, Skipped } status = True;
  std::string detail;        // witness or note
  bool informational = false;  // reported but not part of the hypothesis set
};

struct HypothesisReport {
  std::string theorem;
  std::vector<ConditionVerdict> conditions;
  bool all_satisfied() const;
  const ConditionVerdict* find(const std::string& name) const;
};

// theorem is one of "3.4", "3.17", "4.2", "4.3-target"
HypothesisReport hypothesis_report(const Gma& g, const std::string& theorem,
                                   std::uint64_t cap);

// shared sub-checks of the reports:
// largest ideal of flat contained in its center; nonzero vector when it exists
std::optional<Vec> central_ideal_witness(const Gma& g);
// zero-divisor pair in Z(G), searched when p^dimZ <= cap
struct DomainCheck {
  enum Status { Domain, ZeroDivisor, Skipped } status = Domain;
  Vec x, y;
};
DomainCheck center_domain_check(const Gma& g, std::uint64_t cap);

// independence witness (a pair m0, b0 with m0 b0 and m0 linearly
// independent): basis-pair scan first, then
// exhaustive scan in index order under the cap
struct IndependencePair {
  bool found = false;
  bool capped = false;  // basis pairs dependent and the exhaustive scan hit the cap
  Vec m0, b0;
};
IndependencePair independent_pair(const Gma& g, std::uint64_t cap);

// every basis element of the commuting-map space of `a` admits a proper
// linear decomposition
bool commuting_maps_all_proper(const Algebra& a);

}  // namespace gmalg
