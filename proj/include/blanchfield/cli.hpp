#ifndef BLANCHFIELD_CLI_HPP
#define BLANCHFIELD_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blanchfield/seifert.hpp"

namespace blanchfield::cli {

inline constexpr int kSchemaVersion = 1;

/// Exit codes of `run`.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;
inline constexpr int kMathError = 2;
inline constexpr int kInternal = 3;

/// Parsed link file. Exactly one of the three payloads is set, matching mode.
/// "matrix" mode carries a C-complex matrix directly as polynomial strings
/// and is what `transform` writes.
struct LinkFile {
  enum class Mode { Family, Boundary, Matrix };
  Mode mode = Mode::Family;
  std::string label;
  std::optional<SeifertFamily> family;
  std::optional<BoundarySeifert> boundary;
  std::optional<CMatrix> matrix;

  /// Assembles (and thereby validates) H.
  CMatrix c_matrix() const;
};

/// Throws ValidationError with the offending location on schema errors.
LinkFile parse_link_file(std::string_view json_text);
LinkFile read_link_file(const std::string& path);

/// Matrix-mode JSON for H.
std::string matrix_file_json(const CMatrix& H, const std::string& label);

/// Splits "a, b / (c, d)" at top-level commas and parses each piece.
RfVector parse_vector(std::string_view text, int nvars);

/// Entry point behind the `blanchfield` binary; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blanchfield::cli

#endif  // BLANCHFIELD_CLI_HPP
