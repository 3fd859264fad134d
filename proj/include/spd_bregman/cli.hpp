#pragma once

// Command-line front end. Matrices are read from small JSON documents of the
// form {"dim": n, "rows": [[...], ...], "name": "..."}; every command prints
// exactly one JSON result document on `out`.

#include <iosfwd>
#include <string>

#include "spd_bregman/errors.hpp"
#include "spd_bregman/spd_core.hpp"

namespace spdb::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitDualDomain = 3,
  kExitDimMismatch = 4,
};

/// DualDomainViolation -> 3, DimMismatch -> 4, anything else -> 2.
int exit_code_for(ErrorCode code);

struct MatrixFile {
  Matrix rows;
  std::string name;
};

/// Parses the text of a matrix document. Throws SpdError(ParseError) naming
/// `source` and the malformed field.
MatrixFile parse_matrix_document(const std::string& text, const std::string& source);

/// Reads and parses a file; the file path is used as the default name.
MatrixFile read_matrix_file(const std::string& path);

/// Serializes a matrix in the same shape `parse_matrix_document` accepts.
std::string matrix_document(const Matrix& m, const std::string& name = {});

/// Entry point shared by the executable and the tests. argv[0] is ignored.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spdb::cli
