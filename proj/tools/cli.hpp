#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "deb/bounds.hpp"
#include "deb/innerprod.hpp"
#include "deb/potentials.hpp"

namespace deb::cli {

enum ExitCode { kOk = 0, kUsage = 1, kRange = 2, kConsistency = 3 };

struct MethodFailure {
  std::string method;
  std::string reason;
};

struct SideResult {
  std::vector<BoundReport> reports;
  std::vector<MethodFailure> skipped;
  const BoundReport* best(Side side) const;
};

struct BoundRequest {
  int n = 0;
  double N = 0.0;
  int tau = 0;
  std::string side = "strip";
  std::optional<double> u;
  std::optional<double> l;
  std::optional<std::string> method;
};

struct BoundResult {
  InnerProductRange range;
  SideResult lower;
  SideResult upper;
};

/// Runs every method that applies to the request. Throws RangeError when N
/// lies outside [D(n,tau), D(n,tau+1)].
BoundResult compute_bounds(const BoundRequest& req, const Potential& h);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deb::cli
