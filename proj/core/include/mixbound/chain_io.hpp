#pragma once

#include "mixbound/chain.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mixbound {

/// Formats a double with 17 significant digits and '.' as decimal separator.
std::string format_number(double v);

/// Parses a chain-spec: UTF-8 `key=value` lines, `#` comments, blank lines
/// ignored. Recognized keys: family, n, d, m, lambda, eps, k, matrix.
/// `matrix` names a CSV file (resolved against `base_dir`) for family=custom.
/// Throws InvalidSpec on unknown keys, missing keys or malformed values.
ChainFamilySpec parse_chain_spec(std::string_view text,
                                 const std::filesystem::path& base_dir = {});
ChainFamilySpec load_chain_spec(const std::filesystem::path& path);

/// Canonical key=value rendering; parse_chain_spec(canonical_text(s)) == s.
/// Custom matrices are embedded inline as `row=` lines.
std::string canonical_text(const ChainFamilySpec& spec);

/// 64-bit FNV-1a of the text, as 16 lowercase hex digits.
std::string digest_hex(std::string_view text);
std::uint64_t fnv1a64(std::string_view text);

/// n rows of n comma-separated decimals.
Matrix parse_matrix_csv(std::string_view text);
Matrix read_matrix_csv(const std::filesystem::path& path);

void write_matrix_csv(std::ostream& os, const Matrix& M);
/// Matrix rows followed by one line holding pi.
void write_kernel_csv(std::ostream& os, const TransitionKernel& kernel);

}  // namespace mixbound
