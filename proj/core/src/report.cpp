#include "mixbound/report.hpp"

#include "mixbound/chain_io.hpp"
#include "mixbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace mixbound {

BoundReport BoundReport::make(std::string name, double lhs, double rhs) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.evaluate();
  return r;
}

void BoundReport::evaluate() {
  slack = rhs - lhs;
  pass = std::isfinite(slack) && slack >= -kSlackTolerance * (1.0 + std::abs(rhs));
}

bool all_pass(const std::vector<BoundReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

const BoundReport& worst(const std::vector<BoundReport>& reports) {
  if (reports.empty()) throw BadRange("worst: no reports");
  auto scaled = [](const BoundReport& r) { return r.slack / (1.0 + std::abs(r.rhs)); };
  return *std::min_element(reports.begin(), reports.end(),
                           [&](const auto& a, const auto& b) { return scaled(a) < scaled(b); });
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& reports) {
  os << "kernel,name,eps,ell,x,M,lhs,rhs,slack,pass\n";
  for (const auto& r : reports) {
    os << csv_field(r.kernel) << ',' << r.name << ',';
    if (!std::isnan(r.eps)) os << format_number(r.eps);
    os << ',';
    if (r.ell > 0) os << r.ell;
    os << ',';
    if (r.x >= 0) os << r.x;
    os << ',';
    if (!std::isnan(r.M)) os << format_number(r.M);
    os << ',' << format_number(r.lhs) << ',' << format_number(r.rhs) << ','
       << format_number(r.slack) << ',' << (r.pass ? "pass" : "FAIL") << '\n';
  }
}

}  // namespace mixbound
