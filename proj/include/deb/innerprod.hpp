#pragma once

#include <optional>
#include <string>

namespace deb {

inline constexpr double kOpenEndpointEps = 1e-9;

struct InnerProductRange {
  double lo = -1.0;
  double hi = 1.0 - kOpenEndpointEps;
  std::string lo_source = "trivial";
  std::string hi_source = "trivial";
  // An empty intersection proves that no design with these parameters exists.
  bool feasible = true;
};

/// Upper bound on the largest inner product of a design of strength tau (2 or 4).
double u_bound(int n, double N, int tau);

/// Lower bound on the smallest inner product of a design of strength tau (2 or 4).
double l_bound(int n, double N, int tau);

struct EvenRange {
  double xi = 0.0;
  double eta = 0.0;
};

/// Smallest and largest roots of prod_{i=1..k} (t - beta_i)^2 = gamma_0 N prod (1 + beta_i)^2.
EvenRange even_range(int n, double N, int k);

InnerProductRange best_range(int n, double N, int tau, std::optional<double> user_u = std::nullopt,
                             std::optional<double> user_l = std::nullopt);

}  // namespace deb
