#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "grpnet/path.hpp"
#include "grpnet/types.hpp"

namespace grpnet::io {

/// Malformed or inconsistent input files. Messages carry row/column context.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CsvTable {
    Matrix values;
    std::vector<std::string> header;  // empty when the file has no header row
};

/**
 * Comma-separated numbers with '.' as the decimal point. The first line is
 * treated as a header when none of its cells parse as numbers. Blank lines
 * are skipped. `source` names the input in error messages.
 */
CsvTable parse_csv(std::istream& in, const std::string& source);
CsvTable read_csv(const std::string& path);

DesignMatrix read_design(const std::string& path);

/// Gaussian: n x M numeric matrix. Multinomial: a single column of 1-based
/// integer class labels, or an n x M one-hot matrix.
ResponseMatrix read_response(const std::string& path, Family family);

/**
 * Path serialization:
 *   { family, alpha, n_features, n_responses, lambdas: [...],
 *     fits: [ { lambda, intercept: [M], coef: { "k": [M] }, n_active,
 *               iterations, outer_iterations, kkt_max_violation,
 *               converged, objective, screened_size } ] }
 * Only nonzero coefficient rows are written; keys are 0-based feature indices.
 */
std::string path_to_json(const PathFit& path, int indent = 2);
PathFit path_from_json(const std::string& text);

}  // namespace grpnet::io
