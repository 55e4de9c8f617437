#include "deb/codes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "deb/errors.hpp"
#include "deb/orthopoly.hpp"
#include "deb/simd.hpp"

namespace deb {
namespace {

void add_entry(InnerProductDistribution& d, double t, std::uint64_t count) {
  for (auto& e : d.entries) {
    if (std::abs(e.t - t) <= 1e-14) {
      e.count += count;
      return;
    }
  }
  d.entries.push_back({t, count});
}

void sort_entries(InnerProductDistribution& d) {
  std::sort(d.entries.begin(), d.entries.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
}

}  // namespace

std::uint64_t InnerProductDistribution::total_count() const {
  std::uint64_t s = 0;
  for (const auto& e : entries) s += e.count;
  return s;
}

InnerProductDistribution simplex(int n) {
  if (n < 1) throw RangeError("simplex needs n >= 1");
  const std::uint64_t N = n + 1;
  return {n, N, {{-1.0 / n, N * (N - 1)}}};
}

InnerProductDistribution orthogonal_simplices(int a, int b) {
  if (a < 2 || b < 2) throw RangeError("orthogonal_simplices needs a, b >= 2");
  InnerProductDistribution d;
  d.n = a + b - 2;
  d.N = a + b;
  add_entry(d, -1.0 / (a - 1), static_cast<std::uint64_t>(a) * (a - 1));
  add_entry(d, -1.0 / (b - 1), static_cast<std::uint64_t>(b) * (b - 1));
  add_entry(d, 0.0, 2ull * a * b);
  sort_entries(d);
  return d;
}

InnerProductDistribution cross_polytope(int n) {
  if (n < 1) throw RangeError("cross_polytope needs n >= 1");
  InnerProductDistribution d;
  d.n = n;
  d.N = 2ull * n;
  d.entries.push_back({-1.0, d.N});
  if (n > 1) d.entries.push_back({0.0, d.N * (d.N - 2)});
  return d;
}

InnerProductDistribution binary_embed(const std::vector<std::pair<int, std::uint64_t>>& dist, int n_bits) {
  if (n_bits < 1) throw RangeError("n_bits must be >= 1");
  std::uint64_t N = 0;
  std::uint64_t self = 0;
  for (const auto& [d, a] : dist) {
    if (d < 0 || d > n_bits) throw RangeError("distance " + std::to_string(d) + " outside [0, n_bits]");
    N += a;
    if (d == 0) self += a;
  }
  if (self != 1)
    throw RangeError("distance-0 class must count exactly the codeword itself (A_0 = 1); repeated points are not allowed");
  InnerProductDistribution out;
  out.n = n_bits;
  out.N = N;
  for (const auto& [d, a] : dist) {
    if (d == 0 || a == 0) continue;
    add_entry(out, 1.0 - 2.0 * d / n_bits, N * a);
  }
  sort_entries(out);
  if (out.total_count() != N * (N - 1)) throw RangeError("distance distribution counts are inconsistent with N(N-1)");
  return out;
}

InnerProductDistribution kerdock(int l) {
  if (l < 2) throw RangeError("kerdock needs l >= 2");
  if (l > 7) throw RangeError("kerdock(l) pair counts overflow for l > 7");
  const int n = 1 << (2 * l);
  const int half = n / 2;
  const int root_half = 1 << (l - 1);
  const std::uint64_t side = static_cast<std::uint64_t>(n) * (half - 1);
  return binary_embed({{0, 1}, {half - root_half, side}, {half, 2ull * n - 2}, {half + root_half, side}, {n, 1}}, n);
}

double energy(const InnerProductDistribution& dist, const Potential& h) {
  std::vector<double> values;
  std::vector<double> counts;
  for (const auto& e : dist.entries) {
    values.push_back(h(e.t));
    counts.push_back(static_cast<double>(e.count));
  }
  for (double v : values)
    if (std::isinf(v)) return std::numeric_limits<double>::infinity();
  return simd::dot(values, counts);
}

std::vector<double> moment_sums(const InnerProductDistribution& dist, int max_j) {
  std::vector<double> ts;
  std::vector<double> counts;
  for (const auto& e : dist.entries) {
    ts.push_back(e.t);
    counts.push_back(static_cast<double>(e.count));
  }
  std::vector<double> p(ts.size());
  std::vector<double> s;
  for (int j = 1; j <= max_j; ++j) {
    simd::gegenbauer(dist.n, j, ts, p);
    s.push_back(static_cast<double>(dist.N) + simd::dot(p, counts));
  }
  return s;
}

int strength(const InnerProductDistribution& dist, int max_tau) {
  if (dist.n < 2) throw RangeError("strength needs dimension n >= 2");
  const double n2 = static_cast<double>(dist.N) * static_cast<double>(dist.N);
  const auto s = moment_sums(dist, max_tau);
  int tau = 0;
  while (tau < max_tau && std::abs(s[tau]) <= 1e-8 * n2) ++tau;
  return tau;
}

std::vector<std::vector<double>> read_points_csv(std::istream& in) {
  std::vector<std::vector<double>> pts;
  std::string line;
  std::size_t dim = 0;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> p;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        p.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw InputError("row " + std::to_string(row) + ": not a number: '" + cell + "'");
      }
    }
    if (dim == 0) dim = p.size();
    if (p.size() != dim) throw InputError("row " + std::to_string(row) + " has a different dimension");
    double norm2 = 0.0;
    for (double x : p) norm2 += x * x;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-8)
      throw InputError("row " + std::to_string(row) + " is not a unit vector (norm " + std::to_string(std::sqrt(norm2)) + ")");
    pts.push_back(std::move(p));
  }
  if (pts.size() < 2) throw InputError("need at least two points");
  return pts;
}

InnerProductDistribution distribution_from_points(const std::vector<std::vector<double>>& points) {
  if (points.size() < 2) throw InputError("need at least two points");
  InnerProductDistribution d;
  d.n = static_cast<int>(points.front().size());
  d.N = points.size();
  std::vector<double> ts;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      double t = simd::dot(points[i], points[j]);
      if (t >= 1.0 - 1e-10) throw InputError("repeated point in coordinate input");
      ts.push_back(std::max(-1.0, t));
    }
  }
  std::sort(ts.begin(), ts.end());
  for (double t : ts) {
    if (!d.entries.empty() && t - d.entries.back().t <= 1e-10) {
      ++d.entries.back().count;
    } else {
      d.entries.push_back({t, 1});
    }
  }
  return d;
}

double mimura_energy_unordered(int k, double s) {
  if (k < 2) throw RangeError("k must be >= 2");
  const double kk = k;
  return kk * kk / std::pow(2.0, s / 2) * (1.0 + kk * (kk - 1) / (kk * kk) * std::pow((kk - 1) / kk, s / 2));
}

double competing_energy_unordered(int k, double s) {
  if (k < 2) throw RangeError("k must be >= 2");
  const double m = 2.0 * k - 2;
  const double p = std::pow(2.0, s / 2);
  return 2 * m / p * (1.0 + 1.0 / (2 * m * p) + (2.0 * k - 3) / 4 * std::pow((2.0 * k - 3) / m, s / 2));
}

std::optional<double> mimura_crossover(int k, double s_max) {
  auto diff = [k](double s) { return mimura_energy_unordered(k, s) - competing_energy_unordered(k, s); };
  if (!(diff(s_max) > 0)) return std::nullopt;
  // walk down from s_max to the last s where {k,k} is not worse
  constexpr double kStep = 0.01;
  double hi = s_max;
  double lo = s_max - kStep;
  while (lo > 0 && diff(lo) > 0) {
    hi = lo;
    lo -= kStep;
  }
  if (lo <= 0) return 0.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (diff(mid) > 0) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace deb
