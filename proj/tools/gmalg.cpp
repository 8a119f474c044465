#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gmalg/json_io.hpp"
#include "gmalg/lie.hpp"

using namespace gmalg;

namespace {

struct Options {
  bool as_json = false;
  bool serial = false;
  bool parallel = false;
  bool timing = false;
  bool emit_basis = false;
  std::uint64_t cap = 1000000;
};

Json read_json_file(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw JsonError(path + ": cannot open");
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw JsonError(path + ": " + e.what());
  }
}

std::string fmt_vec(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

Json basis_to_json(const std::vector<Vec>& basis) {
  Json out = Json::array();
  for (const auto& v : basis) out.push_back(vec_to_json(v));
  return out;
}

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row_vec(i)));
  return rows;
}

// emits the report and turns the verdict into the process exit code
int finish(const Options& opt, Json report, bool ok,
           const std::vector<std::string>& human,
           std::chrono::steady_clock::time_point t0) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  if (opt.as_json) {
    report["ok"] = ok;
    if (opt.timing) report["timing_ms"] = ms;
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& line : human) std::cout << line << "\n";
    std::cout << (ok ? "verdict: ok" : "verdict: FAIL") << " (" << ms << " ms)\n";
  }
  return ok ? 0 : 1;
}

int cmd_validate(const Options& opt, const std::string& file) {
  const auto t0 = std::chrono::steady_clock::now();
  const Json j = read_json_file(file);
  Json report;
  std::vector<std::string> human;
  bool ok = true;
  if (j.is_object() && j.contains("mult")) {
    const Algebra a = algebra_from_json(j);
    const auto bad = validate_algebra(a);
    report = Json{{"command", "validate"}, {"kind", "algebra"}, {"violations", Json::array()}};
    for (const auto& v : bad) {
      report["violations"].push_back(v.describe());
      human.push_back("violated: " + v.describe());
    }
    ok = bad.empty();
    human.insert(human.begin(), "algebra dim " + std::to_string(a.dim()) + " over F_" +
                                    std::to_string(a.p()) + ": " +
                                    std::to_string(bad.size()) + " violations");
  } else {
    const Gma g = gma_from_json(j);
    const auto bad = validate_morita(g.context());
    const auto bad_a = validate_algebra(g.context().A);
    const auto bad_b = validate_algebra(g.context().B);
    const auto bad_flat = validate_algebra(g.flat());
    report = Json{{"command", "validate"},
                  {"kind", "gma"},
                  {"dims",
                   {{"A", g.dim_a()}, {"M", g.dim_m()}, {"N", g.dim_n()}, {"B", g.dim_b()}}},
                  {"morita_violations", Json::array()},
                  {"corner_violations", Json::array()},
                  {"flat_violations", Json::array()}};
    for (const auto& v : bad) {
      report["morita_violations"].push_back(v.describe());
      human.push_back("violated: " + v.describe());
    }
    for (const auto& v : bad_a) report["corner_violations"].push_back("A: " + v.describe());
    for (const auto& v : bad_b) report["corner_violations"].push_back("B: " + v.describe());
    for (const auto& v : bad_flat) report["flat_violations"].push_back(v.describe());
    ok = bad.empty() && bad_a.empty() && bad_b.empty() && bad_flat.empty();
    human.insert(human.begin(),
                 "gma [A M; N B] dims (" + std::to_string(g.dim_a()) + "," +
                     std::to_string(g.dim_m()) + "," + std::to_string(g.dim_n()) + "," +
                     std::to_string(g.dim_b()) + ") over F_" + std::to_string(g.p()) + ": " +
                     std::to_string(bad.size() + bad_a.size() + bad_b.size() + bad_flat.size()) +
                     " violations");
  }
  return finish(opt, std::move(report), ok, human, t0);
}

int cmd_catalog(const Options& opt, const std::vector<std::string>& args) {
  (void)opt;
  if (args.empty()) throw CLI::ValidationError("catalog", "missing instance name");
  const std::string& name = args[0];
  auto num = [&](std::size_t i) -> std::uint64_t {
    if (i >= args.size()) throw CLI::ValidationError("catalog", "missing argument");
    return std::stoull(args[i]);
  };
  Gma g = [&]() {
    if (name == "full") return build_block_partition(num(1), num(2), std::uint32_t(num(3)));
    if (name == "triangular") return build_triangular_tn(num(1), std::uint32_t(num(2)));
    if (name == "nonloyal-demo") return build_nonloyal_demo(std::uint32_t(num(1)));
    if (name == "peirce") {
      if (args.size() == 4) {
        // peirce n k p: M_n(F_p) at the diagonal idempotent of rank k
        const std::size_t n = num(1), k = num(2);
        const std::uint32_t p = std::uint32_t(num(3));
        Algebra a = matrix_algebra(n, p);
        Vec e(n * n, 0);
        if (k == 0 || k >= n)
          throw CLI::ValidationError("catalog", "peirce needs 0 < k < n");
        for (std::size_t i = 0; i < k; ++i) e[matrix_unit_index(n, i, i)] = 1;
        return build_from_idempotent(a, e);
      }
      if (args.size() == 3) {
        // peirce <algebra.json> <c0,c1,...>
        const Algebra a = algebra_from_json(read_json_file(args[1]));
        Vec e;
        std::stringstream ss(args[2]);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          const unsigned long v = std::stoul(tok);
          if (v >= a.p())
            throw CLI::ValidationError("catalog", "idempotent coordinate " + tok +
                                                      " is not a residue mod " +
                                                      std::to_string(a.p()));
          e.push_back(std::uint32_t(v));
        }
        if (e.size() != a.dim())
          throw CLI::ValidationError("catalog", "idempotent has wrong length");
        return build_from_idempotent(a, e);
      }
      throw CLI::ValidationError("catalog", "usage: peirce n k p | peirce alg.json c0,c1,...");
    }
    throw CLI::ValidationError(
        "catalog", "unknown instance '" + name +
                       "' (expected full, triangular, peirce, nonloyal-demo)");
  }();
  std::cout << gma_to_json(g).dump(2) << "\n";
  return 0;
}

int cmd_center(const Options& opt, const std::string& file) {
  const auto t0 = std::chrono::steady_clock::now();
  const Gma g = gma_from_json(read_json_file(file));
  const CenterData cd = gma_center(g);
  Json phi_images = Json::array();
  bool phi_ok = true;
  for (const auto& a : cd.pi_a_span) {
    const auto b = phi_apply(cd, g, a);
    if (b)
      phi_images.push_back(vec_to_json(*b));
    else
      phi_ok = false;
  }
  Json report{{"command", "center"},
              {"dim", cd.dim()},
              {"basis", basis_to_json(cd.basis)},
              {"pi_a_span", basis_to_json(cd.pi_a_span)},
              {"pi_b_span", basis_to_json(cd.pi_b_span)},
              {"phi_domain_basis", basis_to_json(cd.pi_a_span)},
              {"phi_images", phi_images},
              {"phi_well_defined", cd.phi_well_defined},
              {"phi_injective", cd.phi_injective}};
  std::vector<std::string> human = {
      "center dimension " + std::to_string(cd.dim()),
      std::string("phi well-defined: ") + (cd.phi_well_defined ? "yes" : "no"),
      std::string("phi injective: ") + (cd.phi_injective ? "yes" : "no")};
  for (const auto& z : cd.basis) human.push_back("  basis " + fmt_vec(z));
  return finish(opt, std::move(report), phi_ok, human, t0);
}

int cmd_hypotheses(const Options& opt, const std::string& theorem, const std::string& file) {
  const auto t0 = std::chrono::steady_clock::now();
  const Gma g = gma_from_json(read_json_file(file));
  const HypothesisReport r = hypothesis_report(g, theorem, opt.cap);
  Json conditions = Json::array();
  std::vector<std::string> human = {"theorem " + theorem + " hypothesis report"};
  for (const auto& c : r.conditions) {
    const char* st = c.status == ConditionVerdict::True    ? "true"
                     : c.status == ConditionVerdict::False ? "false"
                                                           : "skipped";
    conditions.push_back(Json{{"name", c.name},
                              {"status", st},
                              {"detail", c.detail},
                              {"informational", c.informational}});
    std::string line = std::string("  [") +
                       (c.status == ConditionVerdict::True    ? "ok"
                        : c.status == ConditionVerdict::False ? "FAIL"
                                                              : "skip") +
                       "] " + c.name;
    if (!c.detail.empty()) line += "  (" + c.detail + ")";
    if (c.informational) line += "  [informational]";
    human.push_back(line);
  }
  Json report{{"command", "hypotheses"}, {"theorem", theorem}, {"conditions", conditions}};
  return finish(opt, std::move(report), r.all_satisfied(), human, t0);
}

int cmd_trace_space(const Options& opt, const std::string& kind_name,
                    const std::string& file) {
  const auto t0 = std::chrono::steady_clock::now();
  const Gma g = gma_from_json(read_json_file(file));
  const TraceKind kind =
      kind_name == "centralizing" ? TraceKind::Centralizing : TraceKind::Commuting;
  const auto space = trace_space(g, kind, opt.cap);
  const auto proper = properness_subspace(g);
  RowSpace span(BilinearMap::pair_count(g.dim()) * g.dim(), g.p());
  for (const auto& q : proper) span.add_row(q.vectorized_sym());
  bool contained = true;
  for (const auto& q : space) contained = contained && span.contains(q.vectorized_sym());
  Json report{{"command", "trace-space"},
              {"kind", kind_name},
              {"dim", space.size()},
              {"properness_dim", proper.size()},
              {"contained_in_properness", contained}};
  if (opt.emit_basis) {
    Json basis = Json::array();
    for (const auto& q : space) basis.push_back(bilinear_to_json(q));
    report["basis"] = basis;
  }
  std::vector<std::string> human = {
      kind_name + " trace space dimension " + std::to_string(space.size()),
      "properness subspace dimension " + std::to_string(proper.size()),
      std::string("contained in properness subspace: ") + (contained ? "yes" : "no")};
  return finish(opt, std::move(report), true, human, t0);
}

int cmd_decompose_trace(const Options& opt, const std::string& gfile,
                        const std::string& qfile) {
  const auto t0 = std::chrono::steady_clock::now();
  const Gma g = gma_from_json(read_json_file(gfile));
  const BilinearMap q = bilinear_from_json(read_json_file(qfile), g.dim(), g.p());
  auto dec = proper_trace_decompose(g, q);
  if (!dec)
    return finish(opt, Json{{"command", "decompose-trace"}, {"proper", false}}, false,
                  {"NotProper: the trace admits no form z x^2 + mu(x) x + nu(x,x)"}, t0);
  const bool exact = dec->reconstruct(g.flat()) == q.symmetric_part();
  Json report{{"command", "decompose-trace"},
              {"proper", true},
              {"z_center", vec_to_json(dec->z_center)},
              {"z_flat", vec_to_json(dec->z_flat())},
              {"mu", mat_to_json(dec->mu)},
              {"nu", mat_to_json(dec->nu)},
              {"center_basis", basis_to_json(dec->center)},
              {"reconstruction_exact", exact}};
  std::vector<std::string> human = {"proper: z = " + fmt_vec(dec->z_flat()),
                                    std::string("reconstruction exact: ") +
                                        (exact ? "yes" : "no")};
  return finish(opt, std::move(report), exact, human, t0);
}

int cmd_block_components(const Options& opt, const std::string& gfile,
                         const std::string& qfile) {
  const auto t0 = std::chrono::steady_clock::now();
  const Gma g = gma_from_json(read_json_file(gfile));
  const BilinearMap q = bilinear_from_json(read_json_file(qfile), g.dim(), g.p());
  BlockComponents bc(g, q, opt.cap);

  const char* names[4] = {"f", "g", "h", "k"};
  Json comps;
  for (std::size_t out = 0; out < 4; ++out)
    for (std::size_t bi = 0; bi < 4; ++bi)
      for (std::size_t bj = bi; bj < 4; ++bj) {
        Json tensor = Json::array();
        for (std::size_t u = 0; u < g.block_dim(bi); ++u) {
          Json row = Json::array();
          for (std::size_t v = 0; v < g.block_dim(bj); ++v)
            row.push_back(vec_to_json(bc.component(bi, bj, u, v, out)));
          tensor.push_back(std::move(row));
        }
        comps[std::string(names[out]) + "_" + std::to_string(bi + 1) +
              std::to_string(bj + 1)] = std::move(tensor);
      }
  Json report{{"command", "block-components"},
              {"components", comps},
              {"derived_available", bc.derived_available()}};
  std::vector<std::string> human;
  if (bc.derived_available()) {
    const auto& dv = bc.derived();
    report["derived"] = Json{{"alpha", mat_to_json(dv.alpha)},
                             {"tau", mat_to_json(dv.tau)},
                             {"gamma", mat_to_json(dv.gamma)},
                             {"gamma_prime", mat_to_json(dv.gammap)},
                             {"zeta", vec_to_json(dv.zeta)},
                             {"theta", vec_to_json(dv.theta)},
                             {"eps", vec_to_json(dv.eps)},
                             {"eps_prime", vec_to_json(dv.epsp)}};
    const auto bad = check_component_identities(g, q);
    Json violated = Json::array();
    for (const auto& b : bad) violated.push_back(b);
    report["violated_clauses"] = violated;
    human.push_back("derived data: eps = " + fmt_vec(dv.eps) + ", eps' = " + fmt_vec(dv.epsp));
    human.push_back("violated decomposition clauses: " + std::to_string(bad.size()));
    for (const auto& b : bad) human.push_back("  " + b);
    return finish(opt, std::move(report), bad.empty(), human, t0);
  }
  report["derived_failure"] = bc.derived_failure();
  human.push_back("raw components extracted; derived data unavailable: " +
                  bc.derived_failure());
  return finish(opt, std::move(report), true, human, t0);
}

int cmd_decompose_lie(const Options& opt, const std::string& gfile, const std::string& g2file,
                      const std::string& lfile) {
  const auto t0 = std::chrono::steady_clock::now();
  const Gma g = gma_from_json(read_json_file(gfile));
  const Gma g2 = gma_from_json(read_json_file(g2file));
  const LinearMap l = linear_map_from_json(read_json_file(lfile), g.p());
  const auto check = is_lie_isomorphism(l, g, g2);
  if (!check.ok()) {
    const char* why = check.status == LieCheck::DimensionMismatch ? "dimension mismatch"
                      : check.status == LieCheck::NotBijective    ? "not bijective"
                                                                  : "bracket not preserved";
    Json report{{"command", "decompose-lie"}, {"lie_isomorphism", false}, {"reason", why}};
    if (check.status == LieCheck::BracketFails)
      report["pair"] = Json::array({check.pair.first, check.pair.second});
    if (check.status == LieCheck::NotBijective)
      report["kernel_witness"] = vec_to_json(check.kernel_witness);
    return finish(opt, std::move(report), false, {std::string("not a Lie isomorphism: ") + why},
                  t0);
  }
  const auto res = lie_decompose(l, g, g2);
  if (std::holds_alternative<LieFailure>(res)) {
    const auto& f = std::get<LieFailure>(res);
    const char* code = f.code == LieFailure::NotProperTrace ? "NotProperTrace"
                       : f.code == LieFailure::LambdaZero   ? "LambdaZero"
                                                            : "NeitherKind";
    Json report{{"command", "decompose-lie"},
                {"lie_isomorphism", true},
                {"status", "failure"},
                {"failure_code", code},
                {"detail", f.detail}};
    if (f.pair) report["pair"] = Json::array({f.pair->first, f.pair->second});
    return finish(opt, std::move(report), false,
                  {std::string("decomposition failed: ") + code + " — " + f.detail}, t0);
  }
  const auto& dec = std::get<LieDecomposition>(res);
  const auto bad = verify_standard_form(l, dec, g, g2);
  Json violated = Json::array();
  for (const auto& b : bad) violated.push_back(b);
  Json report{{"command", "decompose-lie"},
              {"lie_isomorphism", true},
              {"status", "ok"},
              {"kind", dec.kind == LieKind::Homomorphism ? "homomorphism"
                                                         : "negative-of-anti-homomorphism"},
              {"degenerate_both_kinds", dec.degenerate_both_kinds},
              {"lambda", vec_to_json(dec.lambda)},
              {"lambda_flat", vec_to_json(dec.lambda_flat)},
              {"m", linear_map_to_json(dec.m)},
              {"n", linear_map_to_json(dec.n)},
              {"violated_clauses", violated}};
  if (dec.h) report["h"] = vec_to_json(*dec.h);
  std::vector<std::string> human = {
      std::string("kind: ") + (dec.kind == LieKind::Homomorphism
                                   ? "homomorphism"
                                   : "negative-of-anti-homomorphism"),
      "lambda = " + fmt_vec(dec.lambda_flat),
      "violated clauses: " + std::to_string(bad.size())};
  return finish(opt, std::move(report), bad.empty(), human, t0);
}

int cmd_check_identity(const Options& opt, const std::string& file) {
  const auto t0 = std::chrono::steady_clock::now();
  const Gma g = gma_from_json(read_json_file(file));
  const auto r = check_polynomial_identity(g, opt.cap);
  if (r.status == IdentityCheck::TooLarge)
    throw TooLargeError("identity check exceeds the enumeration cap");
  Json report{{"command", "check-identity"}, {"holds", r.status == IdentityCheck::Holds}};
  std::vector<std::string> human;
  if (r.status == IdentityCheck::Holds) {
    human.push_back("[[x^2,y],[x,y]] vanishes identically");
  } else {
    report["witness_x"] = vec_to_json(r.x);
    report["witness_y"] = vec_to_json(r.y);
    human.push_back("identity violated at x = " + fmt_vec(r.x) + ", y = " + fmt_vec(r.y));
  }
  return finish(opt, std::move(report), r.status == IdentityCheck::Holds, human, t0);
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"generalized matrix algebra toolkit"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.as_json, "emit a machine-readable JSON report");
  app.add_flag("--serial", opt.serial, "force the serial elimination kernel");
  app.add_flag("--parallel", opt.parallel, "force the OpenMP elimination kernel");
  app.add_flag("--timing", opt.timing, "include timing in JSON reports");
  app.add_option("--enum-cap", opt.cap, "bound for exhaustive enumerations")
      ->capture_default_str();

  std::string file, file2, file3, theorem = "3.4", kind = "commuting";
  std::vector<std::string> catalog_args;

  auto* validate = app.add_subcommand("validate", "check a GMA or algebra spec");
  validate->add_option("spec", file, "JSON file ('-' for stdin)")->required();

  auto* catalog = app.add_subcommand("catalog", "emit a built-in instance spec");
  catalog->add_option("args", catalog_args,
                      "full n k p | triangular n p | peirce n k p | peirce alg.json "
                      "c0,c1,... | nonloyal-demo p");

  auto* center = app.add_subcommand("center", "center, projections and phi");
  center->add_option("spec", file, "GMA JSON file")->required();

  auto* hyp = app.add_subcommand("hypotheses", "evaluate theorem hypotheses");
  hyp->add_option("--theorem", theorem, "3.4 | 3.17 | 4.2 | 4.3-target")
      ->capture_default_str();
  hyp->add_option("spec", file, "GMA JSON file")->required();

  auto* tspace = app.add_subcommand("trace-space", "solution space of trace conditions");
  tspace->add_option("--kind", kind, "commuting | centralizing")->capture_default_str();
  tspace->add_flag("--emit-basis", opt.emit_basis, "include the basis in the JSON report");
  tspace->add_option("spec", file, "GMA JSON file")->required();

  auto* dtrace = app.add_subcommand("decompose-trace", "proper form of a bilinear trace");
  dtrace->add_option("spec", file, "GMA JSON file")->required();
  dtrace->add_option("map", file2, "bilinear map JSON file")->required();

  auto* bcomp = app.add_subcommand("block-components", "corner components of a trace");
  bcomp->add_option("spec", file, "GMA JSON file")->required();
  bcomp->add_option("map", file2, "bilinear map JSON file")->required();

  auto* dlie = app.add_subcommand("decompose-lie", "standard form of a Lie isomorphism");
  dlie->add_option("source", file, "source GMA JSON file")->required();
  dlie->add_option("target", file2, "target GMA JSON file")->required();
  dlie->add_option("map", file3, "linear map JSON file")->required();

  auto* ident = app.add_subcommand("check-identity", "test the identity [[x^2,y],[x,y]]");
  ident->add_option("spec", file, "GMA JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  if (opt.serial) set_elimination_mode(ElimMode::Serial);
  if (opt.parallel) set_elimination_mode(ElimMode::OpenMP);

  try {
    if (*validate) return cmd_validate(opt, file);
    if (*catalog) return cmd_catalog(opt, catalog_args);
    if (*center) return cmd_center(opt, file);
    if (*hyp) return cmd_hypotheses(opt, theorem, file);
    if (*tspace) return cmd_trace_space(opt, kind, file);
    if (*dtrace) return cmd_decompose_trace(opt, file, file2);
    if (*bcomp) return cmd_block_components(opt, file, file2);
    if (*dlie) return cmd_decompose_lie(opt, file, file2, file3);
    if (*ident) return cmd_check_identity(opt, file);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
