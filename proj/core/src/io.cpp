#include "grpnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace grpnet::io {
namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

bool parse_number(const std::string& cell, double& out)
{
    if (cell.empty()) return false;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::ifstream open(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return in;
}

}  // namespace

CsvTable parse_csv(std::istream& in, const std::string& source)
{
    CsvTable table;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (first) {
            first = false;
            width = cells.size();
            double unused = 0.0;
            const bool any_numeric =
                std::any_of(cells.begin(), cells.end(), [&](const std::string& c) { return parse_number(c, unused); });
            if (!any_numeric) {
                table.header = cells;
                continue;
            }
        }
        if (cells.size() != width) {
            std::ostringstream os;
            os << source << ": row " << line_no << " has " << cells.size() << " columns, expected " << width;
            throw InputError(os.str());
        }
        std::vector<double> values(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!parse_number(cells[c], values[c])) {
                std::ostringstream os;
                os << source << ": row " << line_no << ", column " << c + 1 << ": '" << cells[c]
                   << "' is not a finite number";
                throw InputError(os.str());
            }
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw InputError(source + ": no data rows");

    table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            table.values(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
        }
    }
    return table;
}

CsvTable read_csv(const std::string& path)
{
    auto in = open(path);
    return parse_csv(in, path);
}

DesignMatrix read_design(const std::string& path)
{
    CsvTable table = read_csv(path);
    try {
        return DesignMatrix(std::move(table.values));
    } catch (const std::invalid_argument& e) {
        throw InputError(path + ": " + e.what());
    }
}

ResponseMatrix read_response(const std::string& path, Family family)
{
    CsvTable table = read_csv(path);
    try {
        if (family == Family::Gaussian) return ResponseMatrix(std::move(table.values), Family::Gaussian);
        if (table.values.cols() > 1) return ResponseMatrix(std::move(table.values), Family::Multinomial);

        std::vector<int> labels(static_cast<std::size_t>(table.values.rows()));
        int classes = 0;
        for (Index i = 0; i < table.values.rows(); ++i) {
            const double v = table.values(i, 0);
            if (v != std::floor(v) || v < 1.0 || v > 1e6) {
                std::ostringstream os;
                os << path << ": row " << i + 1 << " (data row), column 1: class label " << v
                   << " is not a positive integer";
                throw InputError(os.str());
            }
            labels[static_cast<std::size_t>(i)] = static_cast<int>(v);
            classes = std::max(classes, static_cast<int>(v));
        }
        return ResponseMatrix::from_labels(labels, classes);
    } catch (const std::invalid_argument& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string path_to_json(const PathFit& path, int indent)
{
    using nlohmann::json;
    json out;
    out["family"] = family_name(path.family);
    out["alpha"] = path.alpha;
    const Index p = path.fits.empty() ? 0 : path.fits.front().coef.n_features();
    const Index m = path.fits.empty() ? 0 : path.fits.front().coef.n_responses();
    out["n_features"] = p;
    out["n_responses"] = m;
    out["lambdas"] = path.lambdas;
    json fits = json::array();
    for (const auto& f : path.fits) {
        json entry;
        entry["lambda"] = f.lambda;
        entry["intercept"] = std::vector<double>(f.coef.intercept.data(), f.coef.intercept.data() + m);
        json coef = json::object();
        for (Index k = 0; k < p; ++k) {
            if (f.coef.beta.row(k).isZero(0.0)) continue;
            std::vector<double> row(static_cast<std::size_t>(m));
            for (Index j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] = f.coef.beta(k, j);
            coef[std::to_string(k)] = std::move(row);
        }
        entry["coef"] = std::move(coef);
        entry["n_active"] = f.n_active;
        entry["iterations"] = f.iterations;
        entry["outer_iterations"] = f.outer_iterations;
        entry["kkt_max_violation"] = f.kkt_max_violation;
        entry["converged"] = f.converged;
        entry["objective"] = f.objective;
        entry["screened_size"] = f.screened_size;
        fits.push_back(std::move(entry));
    }
    out["fits"] = std::move(fits);
    return out.dump(indent);
}

PathFit path_from_json(const std::string& text)
{
    using nlohmann::json;
    try {
        const json in = json::parse(text);
        PathFit path;
        path.family = parse_family(in.at("family").get<std::string>());
        path.alpha = in.at("alpha").get<double>();
        const auto p = in.at("n_features").get<Index>();
        const auto m = in.at("n_responses").get<Index>();
        path.lambdas = in.at("lambdas").get<std::vector<double>>();
        for (const auto& entry : in.at("fits")) {
            PathPoint f;
            f.lambda = entry.at("lambda").get<double>();
            f.coef = CoefficientMatrix::zeros(p, m);
            const auto intercept = entry.at("intercept").get<std::vector<double>>();
            if (static_cast<Index>(intercept.size()) != m) throw InputError("intercept length mismatch");
            for (Index j = 0; j < m; ++j) f.coef.intercept[j] = intercept[static_cast<std::size_t>(j)];
            for (const auto& [key, row] : entry.at("coef").items()) {
                const Index k = std::stol(key);
                const auto values = row.get<std::vector<double>>();
                if (k < 0 || k >= p || static_cast<Index>(values.size()) != m) {
                    throw InputError("coefficient row '" + key + "' out of range");
                }
                for (Index j = 0; j < m; ++j) f.coef.beta(k, j) = values[static_cast<std::size_t>(j)];
            }
            f.n_active = entry.at("n_active").get<Index>();
            f.iterations = entry.at("iterations").get<int>();
            f.outer_iterations = entry.value("outer_iterations", 0);
            f.kkt_max_violation = entry.at("kkt_max_violation").get<double>();
            f.converged = entry.at("converged").get<bool>();
            f.objective = entry.value("objective", 0.0);
            f.screened_size = entry.value("screened_size", Index{0});
            path.fits.push_back(std::move(f));
        }
        return path;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed path JSON: ") + e.what());
    }
}

}  // namespace grpnet::io
