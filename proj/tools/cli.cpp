#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "deb/codes.hpp"
#include "deb/errors.hpp"
#include "deb/json_io.hpp"
#include "deb/levenshtein.hpp"

namespace deb::cli {
namespace {

double env_tolerance() {
  const char* v = std::getenv("DEB_TOL");
  if (v == nullptr || *v == '\0') return 1e-9;
  char* end = nullptr;
  const double tol = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(tol > 0.0)) throw InputError(std::string("DEB_TOL is not a positive number: ") + v);
  return tol;
}

template <class F>
void attempt(SideResult& side, const std::string& method, const std::optional<std::string>& only, F&& f) {
  if (only && *only != method) return;
  try {
    side.reports.push_back(f());
  } catch (const RangeError& e) {
    side.skipped.push_back({method, e.what()});
  }
}

Json side_json(const SideResult& r, Side side) {
  Json j;
  const BoundReport* best = r.best(side);
  j["best"] = best ? Json(best->value) : Json(nullptr);
  j["best_method"] = best ? Json(best->method) : Json(nullptr);
  j["reports"] = r.reports;
  Json skipped = Json::array();
  for (const auto& s : r.skipped) skipped.push_back({{"method", s.method}, {"reason", s.reason}});
  j["skipped"] = skipped;
  return j;
}

void verify_all(const BoundResult& res, const Potential& h, double tol) {
  CertifyOptions opt;
  opt.tol = tol;
  for (const auto* side : {&res.lower, &res.upper}) {
    for (const auto& r : side->reports) {
      const Reverification v = reverify(r, h, opt);
      if (!v.ok) {
        std::ostringstream os;
        os << "verification failed for " << r.method << ": margin " << v.margin.min_margin << " at t = "
           << v.margin.argmin << ", coefficients " << (v.coeff_ok ? "ok" : "violated") << ", value error "
           << v.value_rel_error;
        throw ConsistencyError(os.str());
      }
    }
  }
}

// "3:6,8" -> 3 4 5 6 8
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string piece;
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InputError("invalid grid value '" + s + "' in '" + text + "'");
    }
  };
  while (std::getline(ss, piece, ',')) {
    const auto colon = piece.find(':');
    if (colon == std::string::npos) {
      values.push_back(number(piece));
      continue;
    }
    const double a = number(piece.substr(0, colon));
    const double b = number(piece.substr(colon + 1));
    if (b < a || b - a > 1e6) throw InputError("invalid range '" + piece + "'");
    for (double x = a; x <= b + 1e-9; x += 1.0) values.push_back(x);
  }
  if (values.empty()) throw InputError("empty grid '" + text + "'");
  return values;
}

struct SweepPoint {
  int n = 0;
  double N = 0.0;
  int tau = 0;
};

struct SweepRow {
  SweepPoint p;
  double s = std::nan("");
  const BoundReport* lower = nullptr;
  const BoundReport* upper = nullptr;
  BoundResult result;
  std::string status = "ok";
};

int cmd_bound(const BoundRequest& req, const std::string& potential, bool verify, int indent, std::ostream& out) {
  const Potential h = parse_potential(potential);
  const BoundResult res = compute_bounds(req, h);
  if (verify) verify_all(res, h, env_tolerance());
  Json j;
  j["spec"] = DesignSpec{req.n, req.tau, req.N};
  j["potential"] = h.spec();
  if (h.name() == "log") j["potential_offset"] = h.offset();
  j["side"] = req.side;
  j["range"] = res.range;
  if (req.side != "upper") j["lower"] = side_json(res.lower, Side::lower);
  if (req.side != "lower") j["upper"] = side_json(res.upper, Side::upper);
  j["verified"] = verify;
  out << dump_json(j, indent) << "\n";
  return kOk;
}

int cmd_code(const std::string& builder, int n, int a, int b, int l, const std::string& file,
             const std::string& potential, int max_tau, int indent, std::ostream& out) {
  InnerProductDistribution d;
  if (builder == "simplex") {
    d = simplex(n);
  } else if (builder == "cross_polytope") {
    d = cross_polytope(n);
  } else if (builder == "orthogonal_simplices" || builder == "mimura") {
    d = orthogonal_simplices(a, builder == "mimura" ? a : b);
  } else if (builder == "kerdock") {
    d = kerdock(l);
  } else if (builder == "points") {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open '" + file + "'");
    d = distribution_from_points(read_points_csv(in));
  } else {
    throw InputError("unknown builder '" + builder + "'");
  }
  Json j;
  j["builder"] = builder;
  j["distribution"] = d;
  if (d.n >= 2) {
    j["strength"] = strength(d, max_tau);
    j["moment_sums"] = moment_sums(d, max_tau);
  }
  if (!potential.empty()) {
    const Potential h = parse_potential(potential);
    const double e = energy(d, h);
    j["potential"] = h.spec();
    j["energy"] = e;
    j["energy_finite"] = std::isfinite(e);
    j["energy_convention"] = "ordered pairs";
  }
  out << dump_json(j, indent) << "\n";
  return kOk;
}

int cmd_sweep(const std::string& ns, const std::string& taus, const std::string& Ns, const std::string& potential,
              std::optional<double> u, const std::string& format, int threads, bool verify, int indent, std::ostream& out) {
  const Potential h = parse_potential(potential);
  const double tol = verify ? env_tolerance() : 0.0;
  std::vector<SweepPoint> grid;
  for (double nv : parse_grid(ns)) {
    for (double tv : parse_grid(taus)) {
      const int n = static_cast<int>(nv);
      const int tau = static_cast<int>(tv);
      if (n < 3 || tau < 1) throw InputError("sweep needs n >= 3 and tau >= 1");
      if (Ns.empty()) {
        const auto lo = dgs_bound(n, tau);
        const auto hi = dgs_bound(n, tau + 1);
        for (auto N = lo; N <= hi; ++N) grid.push_back({n, static_cast<double>(N), tau});
      } else {
        for (double N : parse_grid(Ns)) grid.push_back({n, N, tau});
      }
      if (grid.size() > 200000) throw InputError("sweep grid exceeds 200000 points");
    }
  }

  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      SweepRow& row = rows[i];
      row.p = grid[i];
      try {
        row.s = solve_cardinality(row.p.n, row.p.tau, row.p.N);
        BoundRequest req{row.p.n, row.p.N, row.p.tau, "strip", u, std::nullopt, std::nullopt};
        row.result = compute_bounds(req, h);
        if (verify) verify_all(row.result, h, tol);
        row.lower = row.result.lower.best(Side::lower);
        row.upper = row.result.upper.best(Side::upper);
      } catch (const RangeError& e) {
        row.status = std::string("range: ") + e.what();
      } catch (const ConsistencyError& e) {
        row.status = std::string("consistency: ") + e.what();
      }
    }
  };
  const int count = std::max(1, threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  bool failed = false;
  if (format == "csv") {
    out << "n,N,tau,s,lower_best,upper_best,lower_method,upper_method,lower_margin,upper_margin,status\n";
    for (const auto& r : rows) {
      auto cell = [](const BoundReport* b, auto get) { return b ? get(*b) : std::string(); };
      std::string status = r.status;
      std::replace(status.begin(), status.end(), ',', ';');
      out << r.p.n << ',' << format_double(r.p.N) << ',' << r.p.tau << ','
          << (std::isnan(r.s) ? std::string() : format_double(r.s)) << ','
          << cell(r.lower, [](const BoundReport& b) { return format_double(b.value); }) << ','
          << cell(r.upper, [](const BoundReport& b) { return format_double(b.value); }) << ','
          << cell(r.lower, [](const BoundReport& b) { return b.method; }) << ','
          << cell(r.upper, [](const BoundReport& b) { return b.method; }) << ','
          << cell(r.lower, [](const BoundReport& b) { return format_double(b.margin.min_margin); }) << ','
          << cell(r.upper, [](const BoundReport& b) { return format_double(b.margin.min_margin); }) << ','
          << '"' << status << '"' << "\n";
      failed = failed || r.status.rfind("consistency", 0) == 0;
    }
  } else if (format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json j;
      j["spec"] = DesignSpec{r.p.n, r.p.tau, r.p.N};
      j["s"] = r.s;
      j["lower_best"] = r.lower ? Json(r.lower->value) : Json(nullptr);
      j["upper_best"] = r.upper ? Json(r.upper->value) : Json(nullptr);
      j["lower_method"] = r.lower ? Json(r.lower->method) : Json(nullptr);
      j["upper_method"] = r.upper ? Json(r.upper->method) : Json(nullptr);
      j["status"] = r.status;
      arr.push_back(j);
      failed = failed || r.status.rfind("consistency", 0) == 0;
    }
    out << dump_json(arr, indent) << "\n";
  } else {
    throw InputError("unknown sweep format '" + format + "' (csv or json)");
  }
  return failed ? kConsistency : kOk;
}

}  // namespace

const BoundReport* SideResult::best(Side side) const {
  const BoundReport* b = nullptr;
  for (const auto& r : reports) {
    if (!r.accepted) continue;
    if (b == nullptr || (side == Side::lower ? r.value > b->value : r.value < b->value)) b = &r;
  }
  return b;
}

BoundResult compute_bounds(const BoundRequest& req, const Potential& h) {
  const int n = req.n;
  const double N = req.N;
  const int tau = req.tau;
  if (n < 3) throw RangeError("dimension n must be >= 3");
  solve_cardinality(n, tau, N);  // range check with the admissible interval in the message

  BoundResult res;
  res.range = best_range(n, N, tau, req.u, req.l);
  if (!res.range.feasible) {
    std::ostringstream os;
    os << "empty inner-product range [" << res.range.lo << ", " << res.range.hi << "]: no design with n=" << n
       << ", N=" << N << ", tau=" << tau << " satisfies the given bounds";
    throw RangeError(os.str());
  }
  const auto& only = req.method;
  if (req.side != "upper") {
    attempt(res.lower, "ulb", only, [&] { return ulb(n, N, tau, h); });
    if (tau % 2 == 0)
      attempt(res.lower, "improved_even_lower", only,
              [&] { return improved_even_lower(n, N, tau / 2, h, res.range.lo); });
    if (tau == 2) attempt(res.lower, "lower_2design", only, [&] { return lower_2design(n, N, h); });
  }
  if (req.side != "lower") {
    if (tau == 2) attempt(res.upper, "upper_2design", only, [&] { return upper_2design(n, N, h); });
    if (tau == 3 || tau == 4) attempt(res.upper, "upper_cubic", only, [&] { return upper_cubic(n, N, tau, h, req.u); });
    if (tau % 2 == 1) {
      if (req.u) {
        attempt(res.upper, "strip_odd", only, [&] { return strip_odd(n, N, tau, h, *req.u); });
      } else if (!only || *only == "strip_odd") {
        res.upper.skipped.push_back({"strip_odd", "needs an upper inner-product bound --u"});
      }
    }
  }
  return res;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy bounds for spherical designs with polynomial certificates", "deb"};
  app.require_subcommand(1);
  app.fallthrough();
  int indent = 2;
  app.add_option("--indent", indent, "JSON indentation (0 for one line)");

  BoundRequest breq;
  std::string potential = "riesz:s=1";
  bool verify = false;
  auto* bound = app.add_subcommand("bound", "Lower and upper energy bounds with certificates");
  bound->add_option("--n", breq.n, "Dimension")->required();
  bound->add_option("--N", breq.N, "Cardinality")->required();
  bound->add_option("--tau", breq.tau, "Strength")->required();
  bound->add_option("--potential", potential, "riesz:s=..., log, gauss:c=..., poly:c0,c1,...");
  bound->add_option("--side", breq.side, "lower, upper or strip")->check(CLI::IsMember({"lower", "upper", "strip"}));
  bound->add_option("--u", breq.u, "Upper bound on inner products");
  bound->add_option("--l", breq.l, "Lower bound on inner products");
  bound->add_option("--method", breq.method, "Run a single method")
      ->check(CLI::IsMember({"ulb", "improved_even_lower", "lower_2design", "upper_2design", "upper_cubic", "strip_odd"}));
  bound->add_flag("--verify", verify, "Re-check every certificate before output");

  int qn = 0;
  int qtau = 0;
  double qN = 0.0;
  auto* quad = app.add_subcommand("quadrature", "Levenshtein quadrature rule");
  quad->add_option("--n", qn)->required();
  quad->add_option("--tau", qtau)->required();
  quad->add_option("--N", qN)->required();

  int tn = 0;
  int ttau = 0;
  double tN = 0.0;
  int jmax = 0;
  auto* testfn = app.add_subcommand("testfn", "Test functions Q_j");
  testfn->add_option("--n", tn)->required();
  testfn->add_option("--tau", ttau)->required();
  testfn->add_option("--N", tN)->required();
  testfn->add_option("--jmax", jmax)->required();

  std::string builder;
  int cn = 3;
  int ca = 2;
  int cb = 2;
  int cl = 2;
  int max_tau = 10;
  std::string file;
  std::string code_potential;
  auto* code = app.add_subcommand("code", "Energy and strength of an explicit configuration");
  code->add_option("--builder", builder, "simplex, cross_polytope, orthogonal_simplices, mimura, kerdock, points")
      ->required();
  code->add_option("--n", cn);
  code->add_option("--a", ca, "First simplex size (mimura: k)");
  code->add_option("--b", cb);
  code->add_option("--l", cl, "Kerdock parameter");
  code->add_option("--file", file, "CSV of unit vectors for the points builder");
  code->add_option("--potential", code_potential);
  code->add_option("--max-tau", max_tau);

  std::string sn;
  std::string stau;
  std::string sN;
  std::string format = "csv";
  std::optional<double> su;
  int threads = 0;
  bool sverify = false;
  std::string sweep_potential = "riesz:s=1";
  auto* sweep = app.add_subcommand("sweep", "Bounds over a parameter grid");
  sweep->add_option("--n", sn, "e.g. 3:10 or 3,4,8")->required();
  sweep->add_option("--tau", stau)->required();
  sweep->add_option("--N", sN, "Cardinalities; default: every integer in the admissible interval");
  sweep->add_option("--potential", sweep_potential);
  sweep->add_option("--u", su);
  sweep->add_option("--format", format);
  sweep->add_option("--threads", threads);
  sweep->add_flag("--verify", sverify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (bound->parsed()) return cmd_bound(breq, potential, verify, indent, out);
    if (quad->parsed()) {
      out << dump_json(Json(quadrature_rule(qn, qtau, qN)), indent) << "\n";
      return kOk;
    }
    if (testfn->parsed()) {
      out << dump_json(Json(test_table(tn, ttau, tN, jmax)), indent) << "\n";
      return kOk;
    }
    if (code->parsed()) return cmd_code(builder, cn, ca, cb, cl, file, code_potential, max_tau, indent, out);
    if (sweep->parsed()) return cmd_sweep(sn, stau, sN, sweep_potential, su, format, threads, sverify, indent, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << "\n";
    return kRange;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << "\n";
    return kConsistency;
  }
  return kUsage;
}

}  // namespace deb::cli
