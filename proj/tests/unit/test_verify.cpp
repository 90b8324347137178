#include <string>
#include <vector>

#include <doctest.h>

#include "core/errors.hpp"
#include "core/verify.hpp"

using namespace defexp;

TEST_CASE("registry lists identities in a stable order") {
  const std::vector<std::string> ids = identity_ids();
  CHECK(ids.size() > 40);
  CHECK(identity_count() == static_cast<int>(ids.size()));
  CHECK(ids.front() == "genpow.reflection");
  CHECK(std::string(identity_id_cstr(0)) == ids.front());
  CHECK(identity_id_cstr(-1) == nullptr);
  CHECK(identity_id_cstr(identity_count()) == nullptr);
  for (const std::string& id : ids) {
    CHECK(!identity_description(id).empty());
    CHECK(identity_default_tolerance(id) > 0.0);
  }
}

TEST_CASE("glob matching") {
  CHECK(glob_match("*", "anything"));
  CHECK(glob_match("genpow.*", "genpow.reflection"));
  CHECK(!glob_match("genpow.*", "defexp.connection"));
  CHECK(glob_match("*.connection", "defexp.connection"));
  CHECK(glob_match("defexp.sub_?ositive", "defexp.sub_positive"));
  CHECK(!glob_match("", "x"));
  CHECK(glob_match("", ""));
}

TEST_CASE("run_identity produces a meaningful report") {
  GridSpec grid;
  grid.samples_per_h = 20;
  const IdentityReport r = run_identity("defexp.sub_oplus_product", grid);
  CHECK(r.identity_id == "defexp.sub_oplus_product");
  CHECK(r.samples > 0);
  CHECK(r.tolerance == 1e-11);
  CHECK(r.passed);
  CHECK(r.max_scaled_err <= r.tolerance);
  CHECK(!r.grid_spec.empty());
  CHECK(!r.worst_point.empty());
}

TEST_CASE("run_identity honors a tolerance override") {
  GridSpec grid;
  grid.samples_per_h = 20;
  // An absurdly tight tolerance must flip the verdict, not the errors.
  const IdentityReport strict =
      run_identity("defexp.sub_oplus_product", grid, 1e-30);
  CHECK(strict.tolerance == 1e-30);
  CHECK(!strict.passed);
}

TEST_CASE("unknown identities are rejected") {
  GridSpec grid;
  CHECK_THROWS_AS(run_identity("nonexistent", grid), UnknownIdentity);
  CHECK_THROWS_AS(identity_description("nope"), UnknownIdentity);
  CHECK_THROWS_AS(run_matching("zzz*", grid), UnknownIdentity);
}

TEST_CASE("an unsatisfiable grid raises EmptyGrid rather than passing") {
  GridSpec grid;
  grid.samples_per_h = 5;
  // Every x makes |h x| far exceed the termination guard's 0.25 cap for
  // every h in the default list, so no draw is admissible.
  grid.x_lo = 900.0;
  grid.x_hi = 1000.0;
  CHECK_THROWS_AS(run_identity("series.sub_exact_termination", grid),
                  EmptyGrid);
}

TEST_CASE("run_matching selects by pattern") {
  GridSpec grid;
  grid.samples_per_h = 10;
  const auto reports = run_matching("genpow.*", grid);
  CHECK(reports.size() >= 7);
  for (const IdentityReport& r : reports) {
    CHECK(r.identity_id.rfind("genpow.", 0) == 0);
    CHECK(r.passed);
  }
}

TEST_CASE("identical seeds give bit-identical reports") {
  GridSpec grid;
  grid.samples_per_h = 15;
  grid.seed = 4242;
  const auto a = run_all(grid);
  const auto b = run_all(grid);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].identity_id == b[i].identity_id);
    CHECK(a[i].samples == b[i].samples);
    CHECK(a[i].skipped == b[i].skipped);
    CHECK(a[i].max_abs_err == b[i].max_abs_err);
    CHECK(a[i].max_rel_err == b[i].max_rel_err);
    CHECK(a[i].max_scaled_err == b[i].max_scaled_err);
    CHECK(a[i].worst_point == b[i].worst_point);
    CHECK(a[i].passed == b[i].passed);
  }
}

TEST_CASE("uniform sampling mode is deterministic and seed-independent") {
  GridSpec grid;
  grid.samples_per_h = 15;
  grid.mode = SampleMode::uniform;
  grid.seed = 1;
  const IdentityReport a = run_identity("defexp.sub_additive_y", grid);
  grid.seed = 999;
  const IdentityReport b = run_identity("defexp.sub_additive_y", grid);
  CHECK(a.passed);
  CHECK(a.max_scaled_err == b.max_scaled_err);
  CHECK(a.worst_point == b.worst_point);
  CHECK(a.grid_spec.find("uniform") != std::string::npos);
}

TEST_CASE("different seeds agree on verdicts") {
  GridSpec grid;
  grid.samples_per_h = 15;
  grid.seed = 42;
  const auto a = run_all(grid);
  grid.seed = 43;
  const auto b = run_all(grid);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].passed == b[i].passed);
  }
}

TEST_CASE("the full registry passes at default settings") {
  GridSpec grid;
  const auto reports = run_all(grid);
  CHECK(all_passed(reports));
  for (const IdentityReport& r : reports) {
    CHECK(r.samples > 0);
    if (!r.passed) {
      MESSAGE("failed: ", r.identity_id, " err ", r.max_scaled_err, " tol ",
              r.tolerance, " at ", r.worst_point);
    }
  }
}
