#include "deb/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace deb {

void to_json(Json& j, const Poly& p) { j = std::vector<double>(p.coeffs().begin(), p.coeffs().end()); }

void to_json(Json& j, const GegExpansion& g) { j = Json{{"n", g.n}, {"coeffs", g.coeffs}}; }

void to_json(Json& j, const DesignSpec& s) { j = Json{{"n", s.n}, {"tau", s.tau}, {"N", s.N}}; }

void to_json(Json& j, const QuadratureRule& r) {
  j = Json{{"n", r.spec.n},
           {"tau", r.spec.tau},
           {"N", r.spec.N},
           {"s", r.s},
           {"parity", r.parity == Parity::odd ? "odd" : "even"},
           {"nodes", r.nodes},
           {"weights", r.weights},
           {"exactness_residuals", r.exactness_residuals},
           {"boundary", r.boundary},
           {"condition", r.condition}};
}

void to_json(Json& j, const InnerProductRange& r) {
  j = Json{{"lo", r.lo}, {"hi", r.hi}, {"lo_source", r.lo_source}, {"hi_source", r.hi_source}, {"feasible", r.feasible}};
}

void to_json(Json& j, const MarginReport& m) {
  j = Json{{"relation", m.relation == Relation::below ? "below" : "above"},
           {"min_margin", m.min_margin},
           {"argmin", m.argmin},
           {"lo", m.lo},
           {"hi", m.hi},
           {"tol", m.tol},
           {"passes", m.passes}};
}

void to_json(Json& j, const BoundReport& r) {
  j = Json{{"spec", r.spec},
           {"side", to_string(r.side)},
           {"method", r.method},
           {"potential", r.potential},
           {"value", r.value},
           {"accepted", r.accepted},
           {"certificate",
            {{"poly", r.certificate.poly},
             {"gegenbauer", r.certificate.gegenbauer.coeffs},
             {"interval", {r.certificate.lo, r.certificate.hi}}}},
           {"margins",
            {{"sign", r.margin},
             {"flagged_coeff", r.flagged_coeff},
             {"flagged_index", r.flagged_index},
             {"coeff_ok", r.coeff_ok}}},
           {"notes", r.notes}};
  if (r.closed_form) j["closed_form"] = *r.closed_form;
  if (r.improvement)
    j["improvement"] = Json{{"j", r.improvement->j}, {"eps", r.improvement->eps}, {"q", r.improvement->q}, {"gain", r.improvement->gain}};
}

void to_json(Json& j, const TestFunctionTable& t) {
  Json q = Json::object();
  for (std::size_t i = 0; i < t.values.size(); ++i) q[std::to_string(t.j_min + static_cast<int>(i))] = t.values[i];
  j = Json{{"spec", t.spec}, {"s", t.s}, {"Q", q}};
}

void to_json(Json& j, const InnerProductDistribution& d) {
  Json entries = Json::array();
  for (const auto& e : d.entries) entries.push_back({{"t", e.t}, {"count", e.count}});
  j = Json{{"n", d.n}, {"N", d.N}, {"entries", entries}};
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        write(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += indent > 0 ? ", " : ",";
        first = false;
        write(v, indent, depth + 1, out);
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

}  // namespace deb
