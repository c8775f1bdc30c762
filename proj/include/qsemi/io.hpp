#pragma once

// Serialization: form JSON, matrix binary/CSV, and trailing metadata blocks.
//
// Form JSON:   {"n": 1, "Q": {"re": [[...]], "im": [[...]]}}, row-major,
//              coordinates (x_1..x_n, xi_1..xi_n).
// Matrix file: 8-byte magic "QSEMIMTX", uint64 dimension, then dim*dim
//              (re, im) float64 pairs, row-major, all little-endian.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qsemi/quadratic_form.hpp"

namespace qsemi {

using ordered_json = nlohmann::ordered_json;

/// Throws ParseError on schema violations or an asymmetric matrix.
ComplexQuadraticForm form_from_json(const nlohmann::json& j);
ComplexQuadraticForm parse_form(const std::string& text);
ordered_json form_to_json(const ComplexQuadraticForm& form);

/// A catalog id, or else a path to a form JSON file.
ComplexQuadraticForm load_form(const std::string& source);

/// Shortest decimal that round-trips, independent of the C++ locale.
std::string format_double(double v);

/// Key/value pairs appended to every emitted file.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Trailing "# key: value" lines.
void write_csv_metadata(std::ostream& out, const Metadata& meta);
ordered_json metadata_json(const Metadata& meta);

void write_matrix_binary(std::ostream& out, const CMat& m);
/// Throws ParseError on a bad magic, truncated data or a non-square size.
CMat read_matrix_binary(std::istream& in);
/// Header "row,col,re,im", one line per entry.
void write_matrix_csv(std::ostream& out, const CMat& m);

ordered_json complex_json(cplx z);
ordered_json real_matrix_json(const RMat& m);

}  // namespace qsemi
