#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <utility>
#include <vector>

#include "deb/potentials.hpp"

namespace deb {

/// Ordered-pair multiset of inner products of a spherical code.
struct InnerProductDistribution {
  struct Entry {
    double t = 0.0;
    std::uint64_t count = 0;
  };

  int n = 0;
  std::uint64_t N = 0;
  std::vector<Entry> entries;

  std::uint64_t total_count() const;
};

InnerProductDistribution simplex(int n);

/// Two mutually orthogonal regular simplices with a and b vertices in
/// dimension a + b - 2.
InnerProductDistribution orthogonal_simplices(int a, int b);

InnerProductDistribution cross_polytope(int n);

/// Distance distribution seen from one codeword of a distance-invariant
/// binary code: pairs (d, A_d) with A_0 = 1, so N = sum A_d. Each class maps to
/// t = 1 - 2d/n_bits with N * A_d ordered pairs.
InnerProductDistribution binary_embed(const std::vector<std::pair<int, std::uint64_t>>& distance_distribution,
                                      int n_bits);

/// Spherical embedding of the Kerdock code of length 2^{2l} from its
/// distance distribution.
InnerProductDistribution kerdock(int l);

/// Sum over ordered pairs of h(t). Returns +inf when h is infinite at an entry.
double energy(const InnerProductDistribution& dist, const Potential& h);

/// S_j = N + sum count * P_j(t), j = 1..max_j.
std::vector<double> moment_sums(const InnerProductDistribution& dist, int max_j);

/// Largest tau <= max_tau with |S_j| <= 1e-8 N^2 for all 1 <= j <= tau.
int strength(const InnerProductDistribution& dist, int max_tau = 20);

/// Points from CSV rows of n floats; each row must have unit norm within 1e-8.
std::vector<std::vector<double>> read_points_csv(std::istream& in);

/// Distribution from explicit coordinates (Gram matrix), merging inner
/// products that agree within 1e-10.
InnerProductDistribution distribution_from_points(const std::vector<std::vector<double>>& points);

/// Riesz s-energy of the Mimura design {k,k} as an unordered pair sum.
double mimura_energy_unordered(int k, double s);

/// Riesz s-energy of the configuration {2, 2k-2} as an unordered pair sum.
double competing_energy_unordered(int k, double s);

/// Smallest s in (0, s_max] beyond which {k,k} has larger Riesz energy than
/// {2, 2k-2}; empty when no sign change is found.
std::optional<double> mimura_crossover(int k, double s_max = 64.0);

}  // namespace deb
