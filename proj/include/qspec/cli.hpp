#pragma once

// Command-line front end.
//
// Matrix files are JSON objects {"n": N, "entries": [[[a,b,c,d], ...], ...]}
// with N rows of N quaternions. Every command prints one JSON envelope
//   {"command", "args", "input_digest", "payload", "tolerances", "timing_ms"}
// on standard output, or {"command", "args", "error": {"code", "message"}}
// on failure. Floating point values are written with 17 significant digits.
//
// Exit codes: 0 success, 1 input or argument error, 2 domain error,
// 3 numerical failure (including a verification suite that does not pass).

#include "qspec/error.hpp"
#include "qspec/qmatrix.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qspec::cli {

// Throws ParseError, NonSquare or NonFiniteEntry.
QMatrix parse_matrix_text(std::string_view text);
QMatrix parse_matrix(const std::filesystem::path& path);

nlohmann::ordered_json matrix_to_json(const QMatrix& a);

// JSON text with every floating point number printed as %.17g. Non-finite
// numbers are written as the strings "inf", "-inf" and "nan".
std::string dump(const nlohmann::ordered_json& value);

// "sha256:<hex>" of the bytes.
std::string digest(std::string_view bytes);

int exit_code(ErrorCode code) noexcept;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qspec::cli
