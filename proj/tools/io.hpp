#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hvh/core.hpp"
#include "hvh/sparse.hpp"

namespace hvh::cli {

/// Unreadable or malformed input (exit code 2).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class InputMode {
    objective, ///< points are objective vectors
    decision,  ///< points are decision vectors of a built-in problem
};

/// Built-in problem parameters for decision-mode documents.
struct ProblemParams {
    std::string name = "quad";
    std::vector<Point> centers;
};

struct InputDocument {
    std::vector<Point> points;
    Point reference;
    InputMode mode = InputMode::objective;
    std::optional<ProblemParams> problem;
};

/// {"points": [[...], ...], "reference": [...], "mode": "objective" | "decision",
///  "problem": {"name": "quad", "centers": [[...], ...]}}. mode and problem are optional;
/// decision mode requires problem.
InputDocument parse_json_document(std::string_view text);

/// One point per line, comma-separated. Blank lines and lines starting with '#' are skipped.
std::vector<Point> parse_csv_points(std::string_view text);

/// "r1,r2,..." as given to --ref.
Point parse_vector(std::string_view text);

/// Reads a JSON document, or CSV points when the path ends in ".csv". `reference`
/// replaces the document's reference and is required for CSV input.
InputDocument read_input(const std::string& path, const std::optional<Point>& reference);

/// 17 significant digits (%.17g), enough to read back the same double.
std::string format_double(double value);

/// "dim=N", "nonzeros=K", then one "row col value" line per entry of the symmetric
/// closure, sorted by (row, col).
void write_sparse(std::ostream& out, const SparseSymMatrix& matrix);

/// Inverse of write_sparse. Reads the header and exactly `nonzeros` entry lines, leaving
/// anything after them unread. Throws ParseError on malformed text.
SparseSymMatrix read_sparse(std::istream& in);

/// Comma-separated rows.
void write_dense_csv(std::ostream& out, const Eigen::MatrixXd& matrix);

} // namespace hvh::cli
