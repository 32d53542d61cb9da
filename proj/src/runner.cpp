#include "symfix/runner.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "symfix/census.hpp"
#include "symfix/epw.hpp"
#include "symfix/instance.hpp"
#include "symfix/lefschetz.hpp"
#include "symfix/report.hpp"

namespace symfix::cli {

using exalg::QMat;

namespace {

struct TaggedCert {
  std::string section;
  Certificate cert;
};

Json cert_json(const Certificate& c) {
  Json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["detail"] = c.detail;
  return j;
}

Json census_report_json(const CensusReport& report) {
  Json j;
  j["points"] = report.n;
  j["k3_surfaces"] = report.k;
  j["abelian_surfaces"] = report.abelian;
  Json items = Json::array();
  for (const auto& item : report.items) {
    Json ji;
    ji["provenance"] = item.provenance;
    ji["description"] = item.description;
    items.push_back(std::move(ji));
  }
  j["items"] = std::move(items);
  j["notes"] = report.notes;
  return j;
}

std::string profile_string(long n, long k, long ab) {
  return "(" + std::to_string(n) + ", " + std::to_string(k) + ", " + std::to_string(ab) + ")";
}

std::string poly_in_tau(const std::array<Scalar, 3>& c) {
  return scalar_to_string(c[0]) + " + " + scalar_to_string(c[1]) + " tau + " +
         scalar_to_string(c[2]) + " tau^2";
}

// ------------------------------------------------------------- classify

Json classify_section(std::vector<TaggedCert>& certs) {
  using namespace symfix::lefschetz;
  Json sec;
  auto push = [&certs](std::string name, bool passed, std::string detail) {
    certs.push_back({"classify", Certificate{std::move(name), passed, std::move(detail)}});
  };

  // Local terms, straight from the ring arithmetic.
  Json terms;
  terms["point"] = {{"O", scalar_to_string(point_local_term(Sheaf::O))},
                    {"Omega1", scalar_to_string(point_local_term(Sheaf::Omega1))},
                    {"Omega2", scalar_to_string(point_local_term(Sheaf::Omega2))}};
  auto surf = [](Sheaf f) {
    GradedClass g = surface_local_term(f);
    Json j;
    j["constant"] = scalar_to_string(g.c0());
    j["c2Y"] = scalar_to_string(g.c2y());
    j["a"] = scalar_to_string(g.a());
    return j;
  };
  terms["surface"] = {{"O", surf(Sheaf::O)},
                      {"Omega1", surf(Sheaf::Omega1)},
                      {"Omega2", surf(Sheaf::Omega2)}};
  sec["local_terms"] = std::move(terms);

  auto mat = classification_matrix();
  Json jm = Json::array();
  for (const auto& row : mat) {
    Json jr = Json::array();
    for (const auto& e : row) jr.push_back(scalar_to_string(e));
    jm.push_back(std::move(jr));
  }
  sec["system_matrix"] = std::move(jm);
  QMat qm(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) qm.at(i, j) = mat[static_cast<size_t>(i)][static_cast<size_t>(j)];
  Scalar det = qm.det();
  sec["system_determinant"] = scalar_to_string(det);
  push("fixed-point system is nonsingular", det == frac(-1, 4),
       "determinant = " + scalar_to_string(det) + " (expected -1/4)");

  SolutionPolynomials polys = solution_polynomials();
  Json jp;
  jp["points"] = poly_in_tau(polys.n);
  jp["k3_surfaces"] = poly_in_tau(polys.k);
  jp["abelian_sum"] = poly_in_tau(polys.sum_a);
  sec["solution_polynomials"] = std::move(jp);
  bool closed_forms = polys.n == std::array<Scalar, 3>{Scalar(33), Scalar(4), Scalar(-1)} &&
                      polys.k == std::array<Scalar, 3>{frac(-9, 16), Scalar(0), frac(1, 16)};
  push("closed forms N = -tau^2 + 4 tau + 33 and 16 K = tau^2 - 9", closed_forms,
       "N(tau) = " + poly_in_tau(polys.n) + "; K(tau) = " + poly_in_tau(polys.k));

  std::vector<ClassificationSolution> sols = solve_classification();
  Json jsols = Json::array();
  for (const auto& s : sols) {
    Json js;
    js["trace"] = s.tau;
    js["points"] = s.n;
    js["k3_surfaces"] = s.k;
    js["abelian_sum"] = scalar_to_string(s.sum_a);
    jsols.push_back(std::move(js));
  }
  sec["solutions"] = std::move(jsols);
  bool three = sols.size() == 3;
  bool profiles = three && sols[0].tau == -3 && sols[0].n == 12 && sols[0].k == 0 &&
                  sols[0].sum_a == 36 && sols[1].tau == 3 && sols[1].n == 36 &&
                  sols[1].k == 0 && sols[1].sum_a == 12 && sols[2].tau == 5 &&
                  sols[2].n == 28 && sols[2].k == 1 && sols[2].sum_a == 36;
  push("exactly three admissible traces", three,
       std::to_string(sols.size()) + " traces survive the integrality filter");
  push("profiles are (-3, 12, 0, 36), (3, 36, 0, 12), (5, 28, 1, 36)", profiles,
       "listed as (trace, points, k3s, abelian_sum)");

  RationalSolution at7 = solve_at(7);
  RationalSolution atm7 = solve_at(-7);
  Json jexc = Json::array();
  {
    Json e;
    e["trace"] = 7;
    e["k3_surfaces"] = scalar_to_string(at7.k);
    e["reason"] = "K = " + scalar_to_string(at7.k) + " is not an integer";
    jexc.push_back(std::move(e));
  }
  {
    Json e;
    e["trace"] = -7;
    e["points"] = scalar_to_string(atm7.n);
    e["reason"] = "N = " + scalar_to_string(atm7.n) + " is negative";
    jexc.push_back(std::move(e));
  }
  sec["excluded"] = std::move(jexc);
  push("trace 7 dies by K-integrality alone", at7.k == frac(5, 2) && at7.n == Scalar(12),
       "K(7) = " + scalar_to_string(at7.k) + ", N(7) = " + scalar_to_string(at7.n));
  push("trace -7 dies by point positivity", atm7.n == Scalar(-44),
       "N(-7) = " + scalar_to_string(atm7.n));

  bool corollaries = three;
  for (const auto& s : sols) corollaries = corollaries && corollary_check(s).ok();
  push("corollaries hold at every admissible trace", corollaries,
       "N >= 12; K <= 1; K = 1 forces N = 28; K = 0 forces a fixed abelian surface");

  Json jhodge;
  jhodge["b2"] = HodgeData::kB2;
  jhodge["h11"] = HodgeData::kH11;
  jhodge["h22"] = HodgeData::kH22;
  jhodge["betti4"] = HodgeData::betti(4);
  sec["hodge"] = std::move(jhodge);
  push("hodge diamond is symmetric with consistent middle",
       HodgeData::diamond_symmetric() && HodgeData::h22_consistent() &&
           HodgeData::betti(4) == 276,
       "b_4 = " + std::to_string(HodgeData::betti(4)));

  Json jlef = Json::array();
  for (const auto& s : sols) {
    LefschetzNumbers ln = lefschetz_numbers(s.tau);
    Json je;
    je["trace"] = s.tau;
    je["O"] = scalar_to_string(ln.l_o);
    je["Omega1"] = scalar_to_string(ln.l_omega1);
    je["Omega2"] = scalar_to_string(ln.l_omega2);
    jlef.push_back(std::move(je));
  }
  sec["lefschetz_numbers"] = std::move(jlef);

  return sec;
}

// -------------------------------------------------------------- hilbert

Json hilbert_section(const RunConfig& cfg, std::vector<TaggedCert>& certs) {
  using namespace symfix::census;
  Json sec;
  auto push = [&certs](std::string name, bool passed, std::string detail) {
    certs.push_back({"hilbert", Certificate{std::move(name), passed, std::move(detail)}});
  };

  CensusReport report = hilbert_census(cfg.hilbert_points);
  sec["fixed_points_on_surface"] = cfg.hilbert_points;
  sec["census"] = census_report_json(report);
  long expected = static_cast<long>(cfg.hilbert_points) * (cfg.hilbert_points - 1) / 2;
  push("pair count matches the binomial formula",
       report.n == expected && report.k == 1 && report.abelian == 0 &&
           report.items_cover_counts(),
       "profile " + profile_string(report.n, report.k, report.abelian) + " with " +
           std::to_string(report.items.size()) + " itemized constituents");

  HilbertDims dims = hilbert_invariant_dims(cfg.surface_trace);
  Json jd;
  jd["surface_trace"] = cfg.surface_trace;
  jd["invariant_dim_surface"] = dims.invariant_dim_surface;
  jd["invariant_dim_fourfold"] = dims.invariant_dim_fourfold;
  jd["fourfold_trace"] = dims.trace_fourfold;
  sec["invariant_dimensions"] = std::move(jd);
  push("invariant (1,1)-dimensions step up by the exceptional class",
       dims.invariant_dim_fourfold == dims.invariant_dim_surface + 1 &&
           dims.trace_fourfold == cfg.surface_trace + 1,
       "surface " + std::to_string(dims.invariant_dim_surface) + ", fourfold " +
           std::to_string(dims.invariant_dim_fourfold) + ", fourfold trace " +
           std::to_string(dims.trace_fourfold));

  if (cfg.hilbert_points == 8 && cfg.surface_trace == 4) {
    push("profile matches the trace-5 classification case",
         report.n == 28 && report.k == 1 && report.abelian == 0 && dims.trace_fourfold == 5,
         "(28, 1, 0) at fourfold trace 5, dimensions (12, 13)");
  }
  return sec;
}

// ----------------------------------------------------------------- fano

Json fano_section(std::vector<TaggedCert>& certs) {
  using namespace symfix::census;
  Json sec;
  auto push = [&certs](std::string name, bool passed, std::string detail) {
    certs.push_back({"fano", Certificate{std::move(name), passed, std::move(detail)}});
  };

  Json signs = Json::array();
  bool sign_pattern = true;
  for (int k = 1; k <= 3; ++k) {
    ResidueSignResult r = residue_sign(k);
    Json jr;
    jr["negated_coordinates"] = r.negated_coordinates;
    jr["sign"] = r.sign;
    jr["symplectic"] = r.symplectic;
    signs.push_back(std::move(jr));
    sign_pattern = sign_pattern && (r.sign == (k % 2 == 0 ? 1 : -1)) && (r.symplectic == (k == 2));
  }
  sec["volume_form_signs"] = std::move(signs);
  push("only the two-coordinate sign action is symplectic", sign_pattern,
       "signs -1, +1, -1 for one, two, three negated coordinates");

  FermatLinesReport lines = fermat_27_lines();
  Json jl;
  jl["count"] = lines.lines.size();
  jl["substitution_verified"] = lines.substitution_verified;
  jl["pairwise_distinct"] = lines.pairwise_distinct;
  Json jdesc = Json::array();
  for (const auto& line : lines.lines) jdesc.push_back(line.description());
  jl["lines"] = std::move(jdesc);
  sec["stable_lines"] = std::move(jl);
  push("27 invariant stable lines verified by exact substitution", lines.ok(),
       std::to_string(lines.lines.size()) + " lines, substitution " +
           (lines.substitution_verified ? "verified" : "FAILED") + ", distinctness " +
           (lines.pairwise_distinct ? "verified" : "FAILED"));

  FanoK3 k3 = fano_fixed_k3_equation(LinearForm::coordinate(0), LinearForm::coordinate(1),
                                     LinearForm::coordinate(2), CubicForm::fermat());
  sec["fixed_k3_equation"] = k3.equation();
  Certificate nondeg = fano_nondegeneracy(k3, 20);
  certs.push_back({"fano", nondeg});

  CensusReport report = fano_census();
  sec["census"] = census_report_json(report);
  push("census profile matches the trace-5 classification case",
       report.n == 28 && report.k == 1 && report.abelian == 0 && report.items_cover_counts(),
       "profile " + profile_string(report.n, report.k, report.abelian) + " with " +
           std::to_string(report.items.size()) + " itemized constituents");
  return sec;
}

// ------------------------------------------------------------------ epw

Json node_census_json(const epw::NodeCensus& nc) {
  Json j;
  j["quartic_degree"] = nc.quartic_degree;
  j["generic_line_roots"] = nc.generic_line_roots;
  j["charts_used"] = nc.charts_used;
  j["min_quadric_value"] = nc.min_quadric_value;
  j["branch_min_jacobian_sigma"] = nc.branch_min_jacobian_sigma;
  Json nodes = Json::array();
  for (const auto& n : nc.nodes) {
    Json jn;
    Json coords = Json::array();
    for (const auto& c : n.v) coords.push_back(Json::array({c.real(), c.imag()}));
    jn["v"] = std::move(coords);
    jn["quartic_residual"] = n.s_residual;
    jn["sigma5_ratio"] = n.sigma5;
    jn["rational_certified"] = n.rational_certified;
    if (n.rational_point) jn["rational_point"] = *n.rational_point;
    nodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

Json epw_section(const RunConfig& cfg, std::vector<TaggedCert>& certs) {
  Json sec;
  auto push = [&certs](std::string name, bool passed, std::string detail) {
    certs.push_back({"epw", Certificate{std::move(name), passed, std::move(detail)}});
  };

  Instance inst =
      cfg.instance_path.empty() ? bundled_instance() : load_instance(cfg.instance_path);
  if (cfg.seed) inst.search.seed = *cfg.seed;
  if (cfg.residual_tol) inst.search.residual_tol = *cfg.residual_tol;
  if (cfg.dedupe_tol) inst.search.dedupe_tol = *cfg.dedupe_tol;
  if (cfg.starts) inst.search.starts = *cfg.starts;
  if (cfg.threads) inst.search.threads = *cfg.threads;
  sec["instance"] = cfg.instance_path.empty() ? "bundled reference" : cfg.instance_path;
  sec["search"] = instance_to_json(inst).at("node_search");

  epw::InvariantLagrangian il = lagrangian_of(inst);
  epw::LGStarReport lg = epw::check_LG_star(il);
  Json jlg = Json::array();
  for (const auto& c : lg.certificates) {
    jlg.push_back(cert_json(c));
    certs.push_back({"epw", c});
  }
  sec["membership_certificates"] = std::move(jlg);
  if (!lg.all_passed()) {
    sec["aborted"] = "structured-family membership failed; downstream censuses skipped";
    return sec;
  }

  auto points = epw::eigen_fixed_points(il);
  Json jp = Json::array();
  bool fibers_ok = points.size() == 6;
  for (const auto& p : points) {
    Json je;
    je["lambda"] = scalar_to_string(p.lambda);
    je["fiber_dimension"] = p.fiber;
    jp.push_back(std::move(je));
    fibers_ok = fibers_ok && p.fiber == 1;
  }
  sec["eigen_points"] = std::move(jp);
  push("six eigen points, each with fiber dimension 1", fibers_ok,
       std::to_string(points.size()) + " points f1 + lambda f2 over the eigenvalues of u");

  epw::QuadricReport quad = epw::quadric_of_phi(il.phi);
  Json jq;
  jq["determinant"] = scalar_to_string(quad.det);
  jq["smooth"] = quad.smooth;
  sec["quadric"] = std::move(jq);
  push("the quadric of phi is smooth", quad.smooth,
       "det B = " + scalar_to_string(quad.det));

  epw::NodeCensus nodes = epw::node_census(il, inst.search);
  sec["node_census"] = node_census_json(nodes);
  for (const auto& c : nodes.certificates) certs.push_back({"epw", c});

  epw::FixedLocusDownstairs fl{lg, points, quad, nodes};
  if (fibers_ok && quad.smooth && nodes.all_passed()) {
    CensusReport upstairs = epw::census_upstairs(fl);
    sec["census"] = census_report_json(upstairs);
    push("upstairs census profile matches the trace-5 classification case",
         upstairs.n == 28 && upstairs.k == 1 && upstairs.abelian == 0 &&
             upstairs.items_cover_counts(),
         "profile " + profile_string(upstairs.n, upstairs.k, upstairs.abelian) + " with " +
             std::to_string(upstairs.items.size()) + " itemized constituents");
  } else {
    sec["aborted"] = "downstairs certificates failed; upstairs census skipped";
  }

  Json jobs = Json::array();
  bool verdicts_ok = true;
  for (int dp : {3, 4, 5}) {
    epw::ObstructionVerdict v = epw::smoothness_obstruction(dp);
    Json jv;
    jv["dim_plus"] = v.dim_plus;
    jv["obstructed"] = v.obstructed;
    jv["witness"] = v.witness;
    jobs.push_back(std::move(jv));
    verdicts_ok = verdicts_ok && (v.obstructed == (dp != 4));
  }
  sec["split_verdicts"] = std::move(jobs);
  push("splits 3 and 5 are obstructed, 4 is admissible", verdicts_ok,
       "dimension-count witnesses recorded per split");
  return sec;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult result;
  std::vector<TaggedCert> certs;

  Json sections;
  std::vector<std::string> wanted;
  if (cfg.subcommand == "all") {
    wanted = {"classify", "hilbert", "fano", "epw"};
  } else if (cfg.subcommand == "classify" || cfg.subcommand == "hilbert" ||
             cfg.subcommand == "fano" || cfg.subcommand == "epw") {
    wanted = {cfg.subcommand};
  } else {
    result.exit_code = 2;
    result.summary = "unknown subcommand '" + cfg.subcommand + "'";
    return result;
  }

  for (const std::string& name : wanted) {
    try {
      if (name == "classify") sections["classify"] = classify_section(certs);
      if (name == "hilbert") sections["hilbert"] = hilbert_section(cfg, certs);
      if (name == "fano") sections["fano"] = fano_section(certs);
      if (name == "epw") sections["epw"] = epw_section(cfg, certs);
    } catch (const std::exception& e) {
      certs.push_back(
          {name, Certificate{name + " section completed without errors", false, e.what()}});
    }
  }

  Json report;
  report["tool"] = "symfix";
  report["subcommand"] = cfg.subcommand;
  Json jc;
  jc["instance"] = cfg.instance_path.empty() ? "bundled reference" : cfg.instance_path;
  jc["hilbert_points"] = cfg.hilbert_points;
  jc["surface_trace"] = cfg.surface_trace;
  report["config"] = std::move(jc);
  report["sections"] = std::move(sections);

  Json jcerts = Json::array();
  const TaggedCert* first_fail = nullptr;
  int passed = 0;
  for (const auto& tc : certs) {
    Json j = cert_json(tc.cert);
    j["section"] = tc.section;
    jcerts.push_back(std::move(j));
    if (tc.cert.passed) {
      ++passed;
    } else if (!first_fail) {
      first_fail = &tc;
    }
  }
  report["certificates"] = std::move(jcerts);
  report["certificates_passed"] = passed;
  report["certificates_total"] = certs.size();
  report["all_passed"] = first_fail == nullptr;
  report["first_failure"] =
      first_fail ? Json(first_fail->section + ": " + first_fail->cert.name) : Json(nullptr);

  std::ostringstream out;
  if (cfg.verbosity >= 1) {
    std::string section;
    for (const auto& tc : certs) {
      if (tc.section != section) {
        section = tc.section;
        out << section << ":\n";
      }
      out << "  [" << (tc.cert.passed ? "ok" : "FAIL") << "] " << tc.cert.name;
      if (cfg.verbosity >= 2 || !tc.cert.passed) out << " -- " << tc.cert.detail;
      out << "\n";
    }
  }
  out << (first_fail ? "FAIL" : "PASS") << ": " << passed << "/" << certs.size()
      << " certificates passed";
  if (first_fail) out << "; first failure: " << first_fail->section << ": " << first_fail->cert.name;
  out << "\n";
  result.summary = out.str();
  result.exit_code = first_fail ? 1 : 0;
  result.report = std::move(report);

  if (!cfg.output_path.empty()) {
    std::ofstream f(cfg.output_path);
    if (!f) {
      result.summary += "error: cannot write report to '" + cfg.output_path + "'\n";
      result.exit_code = 2;
    } else {
      f << result.report.dump(2) << "\n";
    }
  }
  return result;
}

}  // namespace symfix::cli
