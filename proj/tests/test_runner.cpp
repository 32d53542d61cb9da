// End-to-end tests for the CLI layer: instance (de)serialization, the report
// runner, its certificate bookkeeping, and the failure paths that turn thrown
// errors into failed certificates instead of crashes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <symfix/instance.hpp>
#include <symfix/runner.hpp>

#include "testutil.hpp"

using namespace symfix;
using namespace symfix::cli;

namespace {

std::string fixture_path(const std::string& name) {
  return std::string(SYMFIX_FIXTURES_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/symfix-test-" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("bundled instance round-trips through json") {
  Instance inst = bundled_instance();
  Json j = instance_to_json(inst);
  CHECK(j.at("format") == "symfix-instance");
  CHECK(j.at("version") == 1);
  CHECK(j.at("u").at("kind") == "spectral");

  Instance back = instance_from_json(j);
  CHECK(back.u.matrix() == inst.u.matrix());
  CHECK(back.phi.matrix() == inst.phi.matrix());
  CHECK(back.search.seed == inst.search.seed);
  CHECK(back.search.starts == inst.search.starts);
  CHECK(back.search.threads == inst.search.threads);

  // to_json after from_json reproduces the document exactly.
  CHECK(instance_to_json(back) == j);
}

TEST_CASE("reference fixture matches the bundled instance") {
  Instance fixture = load_instance(fixture_path("reference.json"));
  Instance inst = bundled_instance();
  CHECK(fixture.u.matrix() == inst.u.matrix());
  CHECK(fixture.phi.matrix() == inst.phi.matrix());
  CHECK(fixture.search.seed == inst.search.seed);
  CHECK(fixture.search.residual_tol == inst.search.residual_tol);

  // The checked-in file is the canonical serialization, byte for byte.
  CHECK(slurp(fixture_path("reference.json")) == instance_to_json(inst).dump(2) + "\n");
}

TEST_CASE("matrix-form instance parses to the same operator") {
  Instance inst = bundled_instance();
  Json j = instance_to_json(inst);
  Json jm;
  jm["kind"] = "matrix";
  jm["matrix"] = qmat_to_json(inst.u.matrix());
  j["u"] = jm;
  Instance back = instance_from_json(j);
  CHECK(back.u.matrix() == inst.u.matrix());
}

TEST_CASE("instance parse failures carry a reason") {
  Instance inst = bundled_instance();
  Json good = instance_to_json(inst);

  {
    Json j = good;
    j["format"] = "something-else";
    CHECK_THROWS_WITH_AS(instance_from_json(j),
                         doctest::Contains("format"), std::invalid_argument);
  }
  {
    Json j = good;
    j["version"] = 2;
    CHECK_THROWS_WITH_AS(instance_from_json(j),
                         doctest::Contains("version"), std::invalid_argument);
  }
  {
    Json j = good;
    j["u"]["kind"] = "mystery";
    CHECK_THROWS_WITH_AS(instance_from_json(j),
                         doctest::Contains("kind"), std::invalid_argument);
  }
}

TEST_CASE("load_instance errors carry the path") {
  CHECK_THROWS_WITH_AS(load_instance("/does/not/exist.json"),
                       doctest::Contains("/does/not/exist.json"), std::invalid_argument);

  std::string bad = write_temp("notjson.json", "this is not json\n");
  CHECK_THROWS_WITH_AS(load_instance(bad), doctest::Contains(bad.c_str()), std::invalid_argument);
  std::remove(bad.c_str());
}

TEST_CASE("full run passes every certificate and is reproducible") {
  RunConfig cfg;
  cfg.subcommand = "all";
  cfg.verbosity = 1;
  RunResult first = run(cfg);
  RunResult second = run(cfg);

  CHECK(first.exit_code == 0);
  CHECK(first.report.at("all_passed") == true);
  CHECK(first.report.at("first_failure").is_null());
  CHECK(first.report.at("certificates_passed") == first.report.at("certificates_total"));
  CHECK(first.report.at("certificates_total").get<int>() >= 30);

  // Two runs with the same configuration produce byte-identical reports.
  CHECK(first.report.dump(2) == second.report.dump(2));
  CHECK(first.summary == second.summary);
  CHECK(first.summary.find("PASS:") != std::string::npos);
}

TEST_CASE("classify section reports the golden linear algebra") {
  RunConfig cfg;
  cfg.subcommand = "classify";
  RunResult res = run(cfg);
  REQUIRE(res.exit_code == 0);
  const Json& sec = res.report.at("sections").at("classify");

  CHECK(sec.at("system_determinant") == "-1/4");

  const Json& sols = sec.at("solutions");
  REQUIRE(sols.size() == 3);
  CHECK(sols[0].at("trace") == -3);
  CHECK(sols[0].at("points") == 12);
  CHECK(sols[0].at("k3_surfaces") == 0);
  CHECK(sols[1].at("trace") == 3);
  CHECK(sols[1].at("points") == 36);
  CHECK(sols[2].at("trace") == 5);
  CHECK(sols[2].at("points") == 28);
  CHECK(sols[2].at("k3_surfaces") == 1);

  // Closed forms displayed for the reader.
  const Json& polys = sec.at("solution_polynomials");
  CHECK(polys.at("points").get<std::string>().find("tau^2") != std::string::npos);

  // Both impossible traces carry their reason for exclusion.
  const Json& excluded = sec.at("excluded");
  REQUIRE(excluded.size() == 2);
  bool saw7 = false, sawm7 = false;
  for (const auto& e : excluded) {
    if (e.at("trace") == 7) {
      saw7 = true;
      CHECK(e.at("k3_surfaces") == "5/2");
    }
    if (e.at("trace") == -7) {
      sawm7 = true;
      CHECK(e.at("points") == "-44");
    }
  }
  CHECK(saw7);
  CHECK(sawm7);

  CHECK(sec.at("hodge").at("betti4") == 276);
}

TEST_CASE("census items cover the reported counts with provenance") {
  RunConfig cfg;
  cfg.subcommand = "all";
  RunResult res = run(cfg);
  REQUIRE(res.exit_code == 0);

  for (const char* section : {"hilbert", "fano", "epw"}) {
    const Json& census = res.report.at("sections").at(section).at("census");
    const long counted = census.at("points").get<long>() +
                         census.at("k3_surfaces").get<long>() +
                         census.at("abelian_surfaces").get<long>();
    const Json& items = census.at("items");
    CHECK_MESSAGE(static_cast<long>(items.size()) == counted, section);
    for (const auto& item : items) {
      CHECK(!item.at("provenance").get<std::string>().empty());
      CHECK(!item.at("description").get<std::string>().empty());
    }
  }

  // All three censuses land on the same classification row.
  for (const char* section : {"hilbert", "fano", "epw"}) {
    const Json& census = res.report.at("sections").at(section).at("census");
    CHECK(census.at("points") == 28);
    CHECK(census.at("k3_surfaces") == 1);
    CHECK(census.at("abelian_surfaces") == 0);
  }
}

TEST_CASE("single-section subcommands restrict the report") {
  for (const char* sub : {"classify", "hilbert", "fano", "epw"}) {
    RunConfig cfg;
    cfg.subcommand = sub;
    RunResult res = run(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.report.at("subcommand") == sub);
    CHECK(res.report.at("sections").size() == 1);
    CHECK(res.report.at("sections").contains(sub));
    for (const auto& c : res.report.at("certificates")) {
      CHECK(c.at("section") == sub);
    }
  }
}

TEST_CASE("unknown subcommand is rejected with exit 2") {
  RunConfig cfg;
  cfg.subcommand = "frobnicate";
  RunResult res = run(cfg);
  CHECK(res.exit_code == 2);
  CHECK(res.summary.find("frobnicate") != std::string::npos);
}

TEST_CASE("search overrides show up in the report") {
  RunConfig cfg;
  cfg.subcommand = "epw";
  cfg.seed = 7;
  cfg.starts = 900;
  cfg.threads = 2;
  RunResult res = run(cfg);
  CHECK(res.exit_code == 0);
  const Json& search = res.report.at("sections").at("epw").at("search");
  CHECK(search.at("seed") == 7);
  CHECK(search.at("starts") == 900);
  CHECK(search.at("threads") == 2);
  // A different seed still finds all sixteen nodes.
  CHECK(res.report.at("sections").at("epw").at("node_census").at("nodes").size() == 16);
}

TEST_CASE("an unloadable instance becomes a failed certificate, not a crash") {
  Instance inst = bundled_instance();
  Json j = instance_to_json(inst);
  // A singular phi is rejected while loading; the path must survive into
  // the failed certificate's detail.
  j["phi"] = Json::array({Json::array({"0", "0", "0", "0"}), Json::array({"0", "0", "0", "0"}),
                          Json::array({"0", "0", "0", "0"}), Json::array({"0", "0", "0", "0"})});
  std::string path = write_temp("singular-phi.json", j.dump(2) + "\n");

  RunConfig cfg;
  cfg.subcommand = "epw";
  cfg.instance_path = path;
  RunResult res = run(cfg);
  std::remove(path.c_str());

  CHECK(res.exit_code == 1);
  CHECK(res.report.at("all_passed") == false);
  const std::string first = res.report.at("first_failure").get<std::string>();
  CHECK(first.find("epw") != std::string::npos);
  // The thrown message (with the offending file) is preserved as the detail.
  bool found = false;
  for (const auto& c : res.report.at("certificates")) {
    if (c.at("passed") == false && c.at("detail").get<std::string>().find(path) != std::string::npos) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("a degenerate operator fails its certificate rather than crashing") {
  Instance inst = bundled_instance();
  Json j = instance_to_json(inst);
  // Duplicate eigenvalues parse fine (the eigenvector matrix stays
  // invertible) but must then fail the distinctness certificate.
  j["u"]["eigenvalues"] = Json::array({"1", "1", "3", "4", "5", "6"});
  std::string path = write_temp("degenerate.json", j.dump(2) + "\n");

  RunConfig cfg;
  cfg.subcommand = "epw";
  cfg.instance_path = path;
  RunResult res = run(cfg);
  std::remove(path.c_str());

  CHECK(res.exit_code == 1);
  CHECK(res.report.at("all_passed") == false);
  bool distinct_failed = false;
  for (const auto& c : res.report.at("certificates")) {
    if (c.at("name") == "u has 6 distinct eigenvalues") {
      distinct_failed = (c.at("passed") == false);
    }
  }
  CHECK(distinct_failed);
  CHECK(res.report.at("sections").at("epw").contains("aborted"));
}

TEST_CASE("missing instance file fails cleanly") {
  RunConfig cfg;
  cfg.subcommand = "epw";
  cfg.instance_path = "/no/such/instance.json";
  RunResult res = run(cfg);
  CHECK(res.exit_code == 1);
  CHECK(res.report.at("all_passed") == false);
}

TEST_CASE("report file is written verbatim") {
  std::string path = "/tmp/symfix-test-report.json";
  RunConfig cfg;
  cfg.subcommand = "classify";
  cfg.output_path = path;
  RunResult res = run(cfg);
  CHECK(res.exit_code == 0);
  CHECK(slurp(path) == res.report.dump(2) + "\n");
  std::remove(path.c_str());
}

TEST_CASE("unwritable report path is an error") {
  RunConfig cfg;
  cfg.subcommand = "classify";
  cfg.output_path = "/no/such/dir/report.json";
  RunResult res = run(cfg);
  CHECK(res.exit_code == 2);
}

TEST_CASE("hilbert parameters flow through the report") {
  RunConfig cfg;
  cfg.subcommand = "hilbert";
  cfg.hilbert_points = 10;
  cfg.surface_trace = 6;
  RunResult res = run(cfg);
  const Json& sec = res.report.at("sections").at("hilbert");
  // C(10,2) = 45 pairs; always exactly one fixed K3 (the resolved quotient).
  CHECK(sec.at("census").at("points") == 45);
  CHECK(sec.at("census").at("k3_surfaces") == 1);
  // (20 + 6)/2 = 13 invariant classes on the surface, stepping up by one.
  CHECK(sec.at("invariant_dimensions").at("invariant_dim_surface") == 13);
  CHECK(sec.at("invariant_dimensions").at("invariant_dim_fourfold") == 14);
  CHECK(sec.at("invariant_dimensions").at("fourfold_trace") == 7);
  // The (8, 4) profile certificate only applies to the reference parameters,
  // so with (10, 6) it is skipped rather than failed.
  CHECK(res.exit_code == 0);
}

TEST_CASE("verbosity controls the summary, not the report") {
  RunConfig base;
  base.subcommand = "classify";

  RunConfig quiet = base;
  quiet.verbosity = 0;
  RunConfig loud = base;
  loud.verbosity = 2;

  RunResult rq = run(quiet);
  RunResult rl = run(loud);
  CHECK(rq.report.dump(2) == rl.report.dump(2));
  CHECK(rq.summary.size() < rl.summary.size());
  CHECK(rq.summary.find("[ok]") == std::string::npos);
  CHECK(rl.summary.find(" -- ") != std::string::npos);
}
