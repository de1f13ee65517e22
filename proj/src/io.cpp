#include "rlhaar/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rlhaar::io {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write to " + tmp + " failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tail_curve_csv(const RateCurve& curve) {
  std::string out = "n,mean,std_error,replicas,seed\n";
  for (const auto& row : curve.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += format_double(row.estimate.mean);
    out += ',';
    out += format_double(row.estimate.std_error);
    out += ',';
    out += std::to_string(row.estimate.replicas);
    out += ',';
    out += std::to_string(row.estimate.master_seed);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_real(const std::string& field, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') {
    throw std::invalid_argument("tail CSV: bad real at line " + std::to_string(line_no));
  }
  return v;
}

}  // namespace

RateCurve parse_tail_curve_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line != "n,mean,std_error,replicas,seed") {
    throw std::invalid_argument("tail CSV: missing or wrong header");
  }
  RateCurve curve;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 5) {
      throw std::invalid_argument("tail CSV: expected 5 fields at line " + std::to_string(line_no));
    }
    RateCurve::Row row;
    try {
      row.n = std::stoll(fields[0]);
      row.estimate.replicas = std::stoll(fields[3]);
      row.estimate.master_seed = std::stoull(fields[4]);
    } catch (const std::exception&) {
      throw std::invalid_argument("tail CSV: bad integer at line " + std::to_string(line_no));
    }
    row.estimate.mean = parse_real(fields[1], line_no);
    row.estimate.std_error = parse_real(fields[2], line_no);
    curve.rows.push_back(row);
  }
  if (curve.rows.empty()) throw std::invalid_argument("tail CSV: no data rows");
  return curve;
}

}  // namespace rlhaar::io
