#include "gmalg/json_io.hpp"

namespace gmalg {

namespace {

const Json& expect_field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw JsonError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonError(path + "." + key + ": missing");
  return *it;
}

std::uint64_t expect_uint(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw JsonError(path + ": expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::uint32_t expect_residue(const Json& j, std::uint32_t p, const std::string& path) {
  const std::uint64_t v = expect_uint(j, path);
  if (v >= p) throw JsonError(path + ": residue " + std::to_string(v) + " not in [0," +
                              std::to_string(p) + ")");
  return std::uint32_t(v);
}

const Json& expect_array(const Json& j, std::size_t len, const std::string& path) {
  if (!j.is_array()) throw JsonError(path + ": expected an array");
  if (j.size() != len)
    throw JsonError(path + ": expected " + std::to_string(len) + " entries, got " +
                    std::to_string(j.size()));
  return j;
}

Vec parse_vec(const Json& j, std::size_t len, std::uint32_t p, const std::string& path) {
  expect_array(j, len, path);
  Vec v(len);
  for (std::size_t i = 0; i < len; ++i)
    v[i] = expect_residue(j[i], p, path + "[" + std::to_string(i) + "]");
  return v;
}

Json tensor3_to_json(const Tensor3& t) {
  if (t.d0 * t.d1 * t.d2 == 0) return Json::array();
  Json out = Json::array();
  for (std::size_t i = 0; i < t.d0; ++i) {
    Json mid = Json::array();
    for (std::size_t j = 0; j < t.d1; ++j) {
      Json inner = Json::array();
      for (std::size_t k = 0; k < t.d2; ++k) inner.push_back(t.at(i, j, k));
      mid.push_back(std::move(inner));
    }
    out.push_back(std::move(mid));
  }
  return out;
}

Tensor3 parse_tensor3(const Json& j, std::size_t d0, std::size_t d1, std::size_t d2,
                      std::uint32_t p, const std::string& path) {
  Tensor3 t(d0, d1, d2);
  if (d0 * d1 * d2 == 0) {
    if (!j.is_array()) throw JsonError(path + ": expected an array");
    return t;
  }
  expect_array(j, d0, path);
  for (std::size_t i = 0; i < d0; ++i) {
    const std::string pi = path + "[" + std::to_string(i) + "]";
    expect_array(j[i], d1, pi);
    for (std::size_t jj = 0; jj < d1; ++jj) {
      const std::string pj = pi + "[" + std::to_string(jj) + "]";
      expect_array(j[i][jj], d2, pj);
      for (std::size_t k = 0; k < d2; ++k)
        t.at(i, jj, k) = expect_residue(j[i][jj][k], p, pj + "[" + std::to_string(k) + "]");
    }
  }
  return t;
}

}  // namespace

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

Json algebra_to_json(const Algebra& a) {
  return Json{{"p", a.p()},
              {"dim", a.dim()},
              {"unit", vec_to_json(a.unit())},
              {"mult", tensor3_to_json(a.mult())}};
}

Algebra algebra_from_json(const Json& j, const std::string& path) {
  const std::uint64_t p = expect_uint(expect_field(j, "p", path), path + ".p");
  if (p > 0x7fffffffULL || !is_odd_prime(std::uint32_t(p)))
    throw JsonError(path + ".p: " + std::to_string(p) + " is not an odd prime below 2^31");
  const std::size_t dim =
      std::size_t(expect_uint(expect_field(j, "dim", path), path + ".dim"));
  if (dim == 0) throw JsonError(path + ".dim: algebras here are unital, dim must be >= 1");
  if (dim > 256) throw JsonError(path + ".dim: " + std::to_string(dim) + " exceeds the supported bound 256");
  Algebra a(dim, std::uint32_t(p));
  a.set_unit(parse_vec(expect_field(j, "unit", path), dim, std::uint32_t(p), path + ".unit"));
  a.mult() = parse_tensor3(expect_field(j, "mult", path), dim, dim, dim, std::uint32_t(p),
                           path + ".mult");
  return a;
}

Json gma_to_json(const Gma& g) {
  const MoritaContext& c = g.context();
  return Json{{"p", g.p()},
              {"A", algebra_to_json(c.A)},
              {"B", algebra_to_json(c.B)},
              {"M",
               {{"dim", c.M.dim},
                {"left", tensor3_to_json(c.M.left)},
                {"right", tensor3_to_json(c.M.right)}}},
              {"N",
               {{"dim", c.N.dim},
                {"left", tensor3_to_json(c.N.left)},
                {"right", tensor3_to_json(c.N.right)}}},
              {"phiMN", tensor3_to_json(c.phi)},
              {"psiNM", tensor3_to_json(c.psi)}};
}

Gma gma_from_json(const Json& j, const std::string& path) {
  const std::uint64_t p64 = expect_uint(expect_field(j, "p", path), path + ".p");
  if (p64 > 0x7fffffffULL || !is_odd_prime(std::uint32_t(p64)))
    throw JsonError(path + ".p: " + std::to_string(p64) + " is not an odd prime below 2^31");
  const std::uint32_t p = std::uint32_t(p64);
  MoritaContext c;
  c.A = algebra_from_json(expect_field(j, "A", path), path + ".A");
  c.B = algebra_from_json(expect_field(j, "B", path), path + ".B");
  if (c.A.p() != p) throw JsonError(path + ".A.p: differs from top-level p");
  if (c.B.p() != p) throw JsonError(path + ".B.p: differs from top-level p");

  const Json& jm = expect_field(j, "M", path);
  const std::size_t dm =
      std::size_t(expect_uint(expect_field(jm, "dim", path + ".M"), path + ".M.dim"));
  if (dm > 256) throw JsonError(path + ".M.dim: exceeds the supported bound 256");
  c.M = Bimodule(dm, c.A.dim(), c.B.dim(), p);
  c.M.left = parse_tensor3(expect_field(jm, "left", path + ".M"), c.A.dim(), dm, dm, p,
                           path + ".M.left");
  c.M.right = parse_tensor3(expect_field(jm, "right", path + ".M"), dm, c.B.dim(), dm, p,
                            path + ".M.right");

  const Json& jn = expect_field(j, "N", path);
  const std::size_t dn =
      std::size_t(expect_uint(expect_field(jn, "dim", path + ".N"), path + ".N.dim"));
  if (dn > 256) throw JsonError(path + ".N.dim: exceeds the supported bound 256");
  c.N = Bimodule(dn, c.B.dim(), c.A.dim(), p);
  c.N.left = parse_tensor3(expect_field(jn, "left", path + ".N"), c.B.dim(), dn, dn, p,
                           path + ".N.left");
  c.N.right = parse_tensor3(expect_field(jn, "right", path + ".N"), dn, c.A.dim(), dn, p,
                            path + ".N.right");

  c.phi = parse_tensor3(expect_field(j, "phiMN", path), dm, dn, c.A.dim(), p, path + ".phiMN");
  c.psi = parse_tensor3(expect_field(j, "psiNM", path), dn, dm, c.B.dim(), p, path + ".psiNM");
  return Gma(std::move(c));
}

Json bilinear_to_json(const BilinearMap& q) {
  return Json{{"dim", q.dim}, {"tensor", tensor3_to_json(q.t)}};
}

BilinearMap bilinear_from_json(const Json& j, std::size_t expect_dim, std::uint32_t p,
                               const std::string& path) {
  const std::size_t dim =
      std::size_t(expect_uint(expect_field(j, "dim", path), path + ".dim"));
  if (dim != expect_dim)
    throw JsonError(path + ".dim: expected " + std::to_string(expect_dim) + " (the flat GMA dimension), got " +
                    std::to_string(dim));
  BilinearMap q(dim, p);
  q.t = parse_tensor3(expect_field(j, "tensor", path), dim, dim, dim, p, path + ".tensor");
  return q;
}

Json linear_map_to_json(const LinearMap& l) {
  Json cols = Json::array();
  for (std::size_t jcol = 0; jcol < l.source_dim; ++jcol)
    cols.push_back(vec_to_json(l.column(jcol)));
  return Json{{"source_dim", l.source_dim}, {"target_dim", l.target_dim}, {"matrix", cols}};
}

LinearMap linear_map_from_json(const Json& j, std::uint32_t p, const std::string& path) {
  const std::size_t src =
      std::size_t(expect_uint(expect_field(j, "source_dim", path), path + ".source_dim"));
  const std::size_t dst =
      std::size_t(expect_uint(expect_field(j, "target_dim", path), path + ".target_dim"));
  if (src > 65536 || dst > 65536)
    throw JsonError(path + ": map dimensions exceed the supported bound");
  LinearMap l(src, dst, p);
  const Json& cols = expect_array(expect_field(j, "matrix", path), src, path + ".matrix");
  for (std::size_t jcol = 0; jcol < src; ++jcol)
    l.set_column(jcol, parse_vec(cols[jcol], dst, p,
                                 path + ".matrix[" + std::to_string(jcol) + "]"));
  return l;
}

}  // namespace gmalg
