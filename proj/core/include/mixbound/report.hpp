#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace mixbound {

/// pass <=> slack >= -kSlackTolerance * (1 + |rhs|).
inline constexpr double kSlackTolerance = 1e-9;

/// One evaluated inequality lhs <= rhs.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;

  // Context; unset fields are NaN / -1 / 0 and print empty.
  std::string kernel;
  double eps = std::numeric_limits<double>::quiet_NaN();
  int ell = 0;
  long x = -1;
  double M = std::numeric_limits<double>::quiet_NaN();

  static BoundReport make(std::string name, double lhs, double rhs);

  BoundReport& with_kernel(std::string k) { kernel = std::move(k); return *this; }
  BoundReport& with_eps(double e) { eps = e; return *this; }
  BoundReport& with_ell(int l) { ell = l; return *this; }
  BoundReport& with_x(long state) { x = state; return *this; }
  BoundReport& with_M(double m) { M = m; return *this; }

  /// Recomputes slack and pass from lhs and rhs.
  void evaluate();
};

bool all_pass(const std::vector<BoundReport>& reports);

/// The report with the smallest slack / (1 + |rhs|), i.e. closest to failing.
const BoundReport& worst(const std::vector<BoundReport>& reports);

/// Quotes a CSV cell when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& reports);

}  // namespace mixbound
