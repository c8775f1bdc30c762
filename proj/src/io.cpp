#include "qsemi/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qsemi/catalog.hpp"
#include "qsemi/errors.hpp"

namespace qsemi {

namespace {

constexpr std::array<char, 8> kMagic{'Q', 'S', 'E', 'M', 'I', 'M', 'T', 'X'};

RMat matrix_field(const nlohmann::json& j, const char* name, int dim) {
  if (!j.contains(name) || !j.at(name).is_array()) {
    throw ParseError(std::string("form JSON: Q.") + name + " must be an array of rows");
  }
  const auto& rows = j.at(name);
  if (static_cast<int>(rows.size()) != dim) {
    throw ParseError(std::string("form JSON: Q.") + name + " must have " + std::to_string(dim) +
                     " rows");
  }
  RMat m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ParseError(std::string("form JSON: row ") + std::to_string(r) + " of Q." + name +
                       " must have " + std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      if (!row[c].is_number()) throw ParseError("form JSON: non-numeric matrix entry");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw ParseError("matrix file truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

ComplexQuadraticForm form_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("form JSON must be an object");
  if (!j.contains("n") || !j.at("n").is_number_integer()) {
    throw ParseError("form JSON: \"n\" must be an integer");
  }
  const auto n = j.at("n").get<long long>();
  if (n < 1 || n > 64) throw ParseError("form JSON: n must be in [1, 64]");
  if (!j.contains("Q") || !j.at("Q").is_object()) {
    throw ParseError("form JSON: \"Q\" must be an object with \"re\" and \"im\"");
  }
  const int dim = static_cast<int>(2 * n);
  const RMat re = matrix_field(j.at("Q"), "re", dim);
  const RMat im = matrix_field(j.at("Q"), "im", dim);
  try {
    return ComplexQuadraticForm::from_parts(re, im);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("form JSON: ") + e.what());
  }
}

ComplexQuadraticForm parse_form(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return form_from_json(j);
}

ordered_json form_to_json(const ComplexQuadraticForm& form) {
  ordered_json out;
  out["n"] = form.n();
  out["Q"]["re"] = real_matrix_json(form.re());
  out["Q"]["im"] = real_matrix_json(form.im());
  return out;
}

ComplexQuadraticForm load_form(const std::string& source) {
  if (auto entry = find_catalog_entry(source)) return entry->form;
  std::ifstream in(source, std::ios::binary);
  if (!in) throw ParseError("cannot open form file (and no catalog entry named) '" + source + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_form(buf.str());
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv_metadata(std::ostream& out, const Metadata& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << ": " << v << '\n';
}

ordered_json metadata_json(const Metadata& meta) {
  ordered_json out = ordered_json::object();
  for (const auto& [k, v] : meta) out[k] = v;
  return out;
}

void write_matrix_binary(std::ostream& out, const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix file requires a square matrix");
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      put_u64(out, std::bit_cast<std::uint64_t>(m(r, c).real()));
      put_u64(out, std::bit_cast<std::uint64_t>(m(r, c).imag()));
    }
  }
}

CMat read_matrix_binary(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw ParseError("not a matrix file (bad magic)");
  }
  const std::uint64_t dim = get_u64(in);
  if (dim > (1u << 20)) throw ParseError("matrix file: implausible dimension");
  CMat m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double re = std::bit_cast<double>(get_u64(in));
      const double im = std::bit_cast<double>(get_u64(in));
      m(r, c) = cplx(re, im);
    }
  }
  return m;
}

void write_matrix_csv(std::ostream& out, const CMat& m) {
  out << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << r << ',' << c << ',' << format_double(m(r, c).real()) << ','
          << format_double(m(r, c).imag()) << '\n';
    }
  }
}

ordered_json complex_json(cplx z) {
  ordered_json out;
  out["re"] = z.real();
  out["im"] = z.imag();
  return out;
}

ordered_json real_matrix_json(const RMat& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qsemi
