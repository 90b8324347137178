#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace defexp {

/// How grid points are drawn: seeded pseudo-random samples, or a
/// deterministic equidistributed (Weyl) sequence that ignores the seed.
enum class SampleMode { random, uniform };

/// Sampling plan shared by every identity check.  Random draws are
/// reproducible from the seed; each identity derives its own stream from
/// (seed, identity id), so reports are independent of evaluation order.
struct GridSpec {
  double x_lo = -2.0;
  double x_hi = 2.0;
  double y_lo = -2.0;
  double y_hi = 2.0;
  std::vector<double> h_values = {-1.0, -0.5, -0.1, 0.1, 0.5, 1.0};
  int samples_per_h = 50;
  SampleMode mode = SampleMode::random;
  std::uint64_t seed = 42;

  std::string describe() const;
};

/// Result of checking one identity over a grid.  The governing error
/// measure is max_scaled_err = max |lhs - rhs| / max(1, |rhs|), i.e.
/// relative error above magnitude 1 and absolute error below it.
struct IdentityReport {
  std::string identity_id;
  std::string grid_spec;
  long samples = 0;   // admissible points actually checked
  long skipped = 0;   // draws rejected by domain / conditioning guards
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  double max_scaled_err = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string worst_point;  // the sample attaining max_scaled_err
};

/// Registry ids in deterministic (registry) order.
std::vector<std::string> identity_ids();

/// Number of registered identities.
int identity_count();

/// Id of the index-th registry entry as a pointer with static storage;
/// nullptr when out of range.
const char* identity_id_cstr(int index);

/// One-line statement of what the identity asserts.  Throws UnknownIdentity.
std::string identity_description(const std::string& id);

/// Tolerance the registry assigns to the identity.  Throws UnknownIdentity.
double identity_default_tolerance(const std::string& id);

/// Shell-style match: '*' any run, '?' any single character.
bool glob_match(const std::string& pattern, const std::string& text);

/// Evaluate one identity.  tolerance <= 0 selects the registry default.
/// Throws UnknownIdentity for ids not in the registry and EmptyGrid when no
/// grid point survives the guards.
IdentityReport run_identity(const std::string& id, const GridSpec& grid,
                            double tolerance = 0.0);

/// Run the whole registry (deterministic order, identities evaluated
/// concurrently).
std::vector<IdentityReport> run_all(const GridSpec& grid);

/// Run the ids matching a glob pattern; throws UnknownIdentity when the
/// pattern selects nothing.
std::vector<IdentityReport> run_matching(const std::string& pattern,
                                         const GridSpec& grid);

bool all_passed(const std::vector<IdentityReport>& reports);

}  // namespace defexp
