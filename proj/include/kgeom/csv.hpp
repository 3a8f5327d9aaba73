#pragma once

#include <Eigen/Core>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kgeom/cloud.hpp"
#include "kgeom/errors.hpp"
#include "kgeom/kernels.hpp"
#include "kgeom/surface_ops.hpp"

namespace kgeom {

/// Malformed CSV content (as opposed to an unreadable file).
class CsvFormatError : public Error {
public:
  using Error::Error;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? ""
                                         : field.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace detail

/// Points with optional per-point values, the one on-disk format for
/// clouds and values-on-clouds: header `x1,...,xd[,y]`, `#` comments.
struct CloudData {
  Eigen::MatrixXd points;
  std::optional<Eigen::VectorXd> values;
};

inline void write_cloud_csv(std::ostream& out, const Eigen::MatrixXd& points,
                            const Eigen::VectorXd* values = nullptr) {
  const Eigen::Index d = points.cols();
  for (Eigen::Index c = 0; c < d; ++c) {
    out << (c ? "," : "") << "x" << (c + 1);
  }
  if (values) out << ",y";
  out << '\n';
  for (Eigen::Index r = 0; r < points.rows(); ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      out << (c ? "," : "") << detail::format_double(points(r, c));
    }
    if (values) out << ',' << detail::format_double((*values)[r]);
    out << '\n';
  }
}

inline CloudData read_cloud_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = detail::split_csv_line(line);
    break;
  }
  if (header.empty()) throw CsvFormatError("cloud file has no header row");

  int dim = 0;
  bool has_values = false;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "x" + std::to_string(c + 1)) {
      ++dim;
    } else if (header[c] == "y" && c + 1 == header.size()) {
      has_values = true;
    } else {
      throw CsvFormatError("unexpected CSV column '" + header[c] +
                           "' (expected x1,...,xd[,y])");
    }
  }
  if (dim == 0) throw CsvFormatError("cloud file has no coordinate columns");

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != header.size()) {
      throw CsvFormatError("line " + std::to_string(line_no) + " has " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(header.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      std::size_t used = 0;
      try {
        row[c] = std::stod(fields[c], &used);
      } catch (const std::exception&) {
        throw CsvFormatError("line " + std::to_string(line_no) +
                             ": cannot parse '" + fields[c] + "'");
      }
      if (used != fields[c].size()) {
        throw CsvFormatError("line " + std::to_string(line_no) +
                             ": cannot parse '" + fields[c] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvFormatError("cloud file has no data rows");

  CloudData data;
  data.points.resize(rows.size(), dim);
  if (has_values) data.values.emplace(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < dim; ++c) data.points(r, c) = rows[r][c];
    if (has_values) (*data.values)[r] = rows[r][dim];
  }
  return data;
}

inline CloudData read_cloud_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  return read_cloud_csv(in);
}

inline void write_cloud_csv_file(const std::string& path,
                                 const Eigen::MatrixXd& points,
                                 const Eigen::VectorXd* values = nullptr) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "'");
  write_cloud_csv(out, points, values);
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

/// Dense operator matrix, row-major, with a `#` header carrying
/// kind/n/m/kernel/alpha.
inline void write_operator_csv(std::ostream& out, const OperatorMatrix& op) {
  out << "# kind=";
  if (op.kind == OperatorKind::LaplaceBeltrami) {
    out << "lb";
  } else {
    out << "grad" << (op.component + 1);
  }
  out << " n=" << op.matrix.rows() << " m=" << op.matrix.cols()
      << " kernel=" << to_string(op.spec)
      << " alpha=" << detail::format_double(op.alpha) << '\n';
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < op.matrix.cols(); ++c) {
      out << (c ? "," : "") << detail::format_double(op.matrix(r, c));
    }
    out << '\n';
  }
}

}  // namespace kgeom
