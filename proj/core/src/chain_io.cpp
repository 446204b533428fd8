#include "mixbound/chain_io.hpp"

#include "mixbound/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace mixbound {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw NumericalFailure("format_number: conversion failed");
  return std::string(buf, ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view s, const std::string& what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidSpec("malformed number for '" + what + "': '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s, const std::string& what) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidSpec("malformed integer for '" + what + "': '" + std::string(s) + "'");
  }
  return v;
}

std::vector<double> parse_row(std::string_view line) {
  std::vector<double> row;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto cell = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    row.push_back(parse_double(cell, "matrix entry"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return row;
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows) {
  const auto n = rows.size();
  if (n == 0) throw InvalidSpec("matrix CSV is empty");
  Matrix M(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InvalidSpec("matrix CSV row " + std::to_string(i) + " has " +
                        std::to_string(rows[i].size()) + " entries, expected " +
                        std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      M(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return M;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidSpec("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Matrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
    if (!line.empty() && line.front() != '#') rows.push_back(parse_row(line));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return rows_to_matrix(rows);
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  return parse_matrix_csv(read_file(path));
}

ChainFamilySpec parse_chain_spec(std::string_view text, const std::filesystem::path& base_dir) {
  std::map<std::string, std::string> kv;
  std::vector<std::vector<double>> inline_rows;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
    ++line_no;
    if (!line.empty() && line.front() != '#') {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw InvalidSpec("line " + std::to_string(line_no) + ": expected key=value");
      }
      std::string key(trim(line.substr(0, eq)));
      std::string value(trim(line.substr(eq + 1)));
      if (key == "row") {
        inline_rows.push_back(parse_row(value));
      } else {
        if (kv.count(key)) throw InvalidSpec("duplicate key '" + key + "'");
        kv.emplace(std::move(key), std::move(value));
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw InvalidSpec("missing key '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  const Family family = parse_family(take("family"));
  ChainFamilySpec spec;
  switch (family) {
    case Family::Cycle:
      spec = ChainFamilySpec::cycle(parse_int(take("n"), "n"));
      break;
    case Family::Complete:
      spec = ChainFamilySpec::complete(parse_int(take("n"), "n"));
      break;
    case Family::Torus: {
      const int d = parse_int(take("d"), "d");
      spec = ChainFamilySpec::torus(d, parse_int(take("m"), "m"));
      break;
    }
    case Family::Hypercube:
      spec = ChainFamilySpec::hypercube(parse_int(take("d"), "d"));
      break;
    case Family::DlpBirthDeath: {
      const int n = parse_int(take("n"), "n");
      const double lambda = parse_double(take("lambda"), "lambda");
      const double eps = parse_double(take("eps"), "eps");
      const int k = kv.count("k") ? parse_int(take("k"), "k") : n;
      spec = ChainFamilySpec::dlp(n, lambda, eps, k);
      break;
    }
    case Family::Custom: {
      if (kv.count("matrix")) {
        if (!inline_rows.empty()) throw InvalidSpec("give either matrix= or row= lines, not both");
        std::filesystem::path p = take("matrix");
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        spec = ChainFamilySpec::custom_matrix(read_matrix_csv(p));
      } else {
        spec = ChainFamilySpec::custom_matrix(rows_to_matrix(inline_rows));
        inline_rows.clear();
      }
      break;
    }
  }
  if (!kv.empty()) throw InvalidSpec("unknown key '" + kv.begin()->first + "'");
  if (!inline_rows.empty()) throw InvalidSpec("row= lines are only valid for family=custom");
  spec.check();
  return spec;
}

ChainFamilySpec load_chain_spec(const std::filesystem::path& path) {
  return parse_chain_spec(read_file(path), path.parent_path());
}

std::string canonical_text(const ChainFamilySpec& spec) {
  std::ostringstream os;
  os << "family=" << family_name(spec.family) << '\n';
  switch (spec.family) {
    case Family::Cycle:
    case Family::Complete:
      os << "n=" << spec.n << '\n';
      break;
    case Family::Torus:
      os << "d=" << spec.d << '\n' << "m=" << spec.m << '\n';
      break;
    case Family::Hypercube:
      os << "d=" << spec.d << '\n';
      break;
    case Family::DlpBirthDeath:
      os << "n=" << spec.n << '\n'
         << "lambda=" << format_number(spec.lambda) << '\n'
         << "eps=" << format_number(spec.eps) << '\n'
         << "k=" << spec.k << '\n';
      break;
    case Family::Custom:
      for (Index i = 0; i < spec.custom.rows(); ++i) {
        os << "row=";
        for (Index j = 0; j < spec.custom.cols(); ++j) {
          if (j) os << ',';
          os << format_number(spec.custom(i, j));
        }
        os << '\n';
      }
      break;
  }
  return os.str();
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_hex(std::string_view text) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
  return buf;
}

void write_matrix_csv(std::ostream& os, const Matrix& M) {
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j) os << ',';
      os << format_number(M(i, j));
    }
    os << '\n';
  }
}

void write_kernel_csv(std::ostream& os, const TransitionKernel& kernel) {
  write_matrix_csv(os, kernel.P());
  for (Index i = 0; i < kernel.size(); ++i) {
    if (i) os << ',';
    os << format_number(kernel.pi()(i));
  }
  os << '\n';
}

}  // namespace mixbound
