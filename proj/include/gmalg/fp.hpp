#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gmalg {

// Coordinate vector of residues in [0, p). The modulus travels with the
// enclosing object (matrix, algebra, ...), not with each entry.
using Vec = std::vector<std::uint32_t>;

inline bool is_odd_prime(std::uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint32_t d = 3; d * std::uint64_t(d) <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

inline std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t(a) + b;
  return std::uint32_t(s >= p ? s - p : s);
}

inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : std::uint32_t(a + std::uint64_t(p) - b);
}

inline std::uint32_t mod_neg(std::uint32_t a, std::uint32_t p) { return a ? p - a : 0; }

inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return std::uint32_t(std::uint64_t(a) * b % p);
}

inline std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t base = a % p, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return std::uint32_t(acc);
}

inline std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  assert(a % p != 0);
  return mod_pow(a % p, p - 2, p);
}

// a/2 mod p, p odd
inline std::uint32_t mod_half(std::uint32_t a, std::uint32_t p) {
  return (a % 2 == 0) ? a / 2 : std::uint32_t((a + std::uint64_t(p)) / 2);
}

// Residue tagged with its modulus; convenience type for scalar-level code.
struct Fp {
  std::uint32_t v = 0;
  std::uint32_t p = 0;

  Fp() = default;
  Fp(std::int64_t value, std::uint32_t modulus) : p(modulus) {
    std::int64_t r = value % std::int64_t(modulus);
    v = std::uint32_t(r < 0 ? r + modulus : r);
  }

  friend Fp operator+(Fp a, Fp b) { assert(a.p == b.p); return Fp(mod_add(a.v, b.v, a.p), a.p); }
  friend Fp operator-(Fp a, Fp b) { assert(a.p == b.p); return Fp(mod_sub(a.v, b.v, a.p), a.p); }
  friend Fp operator*(Fp a, Fp b) { assert(a.p == b.p); return Fp(mod_mul(a.v, b.v, a.p), a.p); }
  friend Fp operator-(Fp a) { return Fp(mod_neg(a.v, a.p), a.p); }
  friend Fp operator/(Fp a, Fp b) { assert(a.p == b.p); return a * b.inv(); }
  Fp inv() const { return Fp(mod_inv(v, p), p); }
  Fp pow(std::uint64_t e) const { return Fp(mod_pow(v, e, p), p); }
  bool operator==(const Fp&) const = default;
};

// Barrett reducer: division-free remainder for a fixed modulus,
// valid for inputs below 2^63.
struct Barrett {
  std::uint64_t p = 1;
  std::uint64_t magic = 0;

  Barrett() = default;
  explicit Barrett(std::uint32_t m) : p(m), magic(~std::uint64_t(0) / m) {}

  std::uint32_t reduce(std::uint64_t a) const {
    std::uint64_t q = std::uint64_t((static_cast<unsigned __int128>(a) * magic) >> 64);
    std::uint64_t r = a - q * p;
    while (r >= p) r -= p;
    return std::uint32_t(r);
  }
};

inline Vec vec_add(const Vec& a, const Vec& b, std::uint32_t p) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_add(a[i], b[i], p);
  return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b, std::uint32_t p) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_sub(a[i], b[i], p);
  return r;
}

inline Vec vec_scale(std::uint32_t c, const Vec& a, std::uint32_t p) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_mul(c, a[i], p);
  return r;
}

inline void vec_axpy(Vec& y, std::uint32_t c, const Vec& x, std::uint32_t p) {
  assert(y.size() == x.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = std::uint32_t((y[i] + std::uint64_t(c) * x[i]) % p);
}

inline bool vec_is_zero(const Vec& a) {
  for (auto x : a)
    if (x) return false;
  return true;
}

// vector with the given index in the LSB-first enumeration of F_p^dim:
// coordinate i is digit i of idx in base p
inline Vec index_to_vec(std::uint64_t idx, std::size_t dim, std::uint32_t p) {
  Vec v(dim, 0);
  for (std::size_t i = 0; i < dim && idx; ++i) {
    v[i] = std::uint32_t(idx % p);
    idx /= p;
  }
  return v;
}

// base^e, saturating at cap + 1
inline std::uint64_t pow_capped(std::uint64_t base, std::size_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > cap / base + 1) return cap + 1;
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

// thrown when an exhaustive search would exceed its configured cap
struct TooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gmalg
