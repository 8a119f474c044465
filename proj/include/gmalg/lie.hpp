#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gmalg/traces.hpp"

namespace gmalg {

struct LieCheck {
  enum Status { Ok, DimensionMismatch, NotBijective, BracketFails } status = Ok;
  Vec kernel_witness;                     // for NotBijective
  std::pair<std::size_t, std::size_t> pair{0, 0};  // basis pair for BracketFails
  bool ok() const { return status == Ok; }
};

// l is a Lie isomorphism iff it is bijective and preserves brackets on all
// basis pairs.
LieCheck is_lie_isomorphism(const LinearMap& l, const Gma& g, const Gma& g2);

struct IdentityCheck {
  enum Status { Holds, Violated, TooLarge } status = Holds;
  Vec x, y;  // witness pair when Violated
};

// Does [[x^2, y], [x, y]] vanish identically on g? Multilinearized on basis
// tuples for p >= 5, enumerated for p = 3 (cap on p^(2 dim)).
IdentityCheck check_polynomial_identity(const Gma& g, std::uint64_t cap);

enum class LieKind { Homomorphism, NegativeOfAntiHomomorphism };

struct LieDecomposition {
  Vec lambda;           // center coordinates (basis of Z(G')) of the leading coefficient
  Vec lambda_flat;      // the same element in flat G' coordinates
  Mat mu1;              // dimZ' x dimG': center coordinates of mu_1 per basis column
  LinearMap m;          // the (anti-)multiplicative part, l = m + n
  LinearMap n;          // center-valued, vanishes on commutators
  LieKind kind = LieKind::Homomorphism;
  bool degenerate_both_kinds = false;  // both tests passed (commutative-like target)
  std::optional<Vec> h;  // scalar functional with n(x) = h(x) 1 when G' is central
};

struct LieFailure {
  enum Code { NotProperTrace, LambdaZero, NeitherKind } code = NotProperTrace;
  std::optional<std::pair<std::size_t, std::size_t>> pair;  // offending basis pair
  std::string detail;
};

using LieResult = std::variant<LieDecomposition, LieFailure>;

// Standard-form decomposition of a Lie isomorphism l : G -> G':
//   (i)   q(y, z) = l(l^-1(y) l^-1(z)) on G'
//   (ii)  proper decomposition of its trace -> (lambda, mu_1, nu_1)
//   (iii) lambda must be nonzero
//   (iv)  m0(x) = lambda l(x) + mu_1(l(x))/2
//   (v)   m0 multiplicative -> homomorphism kind; m0 anti-multiplicative ->
//         m = -m0 is the negative of an anti-homomorphism
// The kind is decided by the direct tests, never read off lambda.
LieResult lie_decompose(const LinearMap& l, const Gma& g, const Gma& g2);

// Re-checks every clause of the decomposition independently of how it was
// produced; returns the violated clause names (empty = ok). When the
// center of g2 is one-dimensional, surjectivity of m and m(1) = +-1 are
// checked as well.
std::vector<std::string> verify_standard_form(const LinearMap& l,
                                              const LieDecomposition& dec, const Gma& g,
                                              const Gma& g2);

}  // namespace gmalg
