#include "wedge/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "wedge/error.hpp"

namespace wedge::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view field, std::size_t line, std::size_t col) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
    throw ValidationError("line " + std::to_string(line) + ", field " + std::to_string(col) + ": not a number: '" +
                          std::string(field) + "'");
  return v;
}

std::vector<std::vector<double>> parse_rows_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t col = 0;
    while (true) {
      const auto comma = line.find(',');
      row.push_back(parse_number(line.substr(0, comma), line_no, ++col));
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("empty input");
  return rows;
}

std::vector<std::vector<double>> json_rows(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("JSON input needs a \"") + key + "\" array");
  const auto& data = j.at(key);
  if (!data.is_array() || data.empty()) throw ValidationError(std::string("\"") + key + "\" must be a nonempty array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : data) {
    if (!r.is_array()) throw ValidationError("each row must be an array of numbers");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) throw ValidationError("matrix entries must be numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

bool looks_like_json(std::string_view text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string_view::npos && text[p] == '{';
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

DenseMatrix parse_matrix_csv(std::string_view text) { return DenseMatrix::from_rows(parse_rows_csv(text)); }

DenseMatrix parse_matrix_json(std::string_view text) { return DenseMatrix::from_rows(json_rows(parse_json(text), "data")); }

DenseMatrix parse_matrix(std::string_view text) {
  return looks_like_json(text) ? parse_matrix_json(text) : parse_matrix_csv(text);
}

std::string to_csv(const DenseMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

KernelSpec parse_kernel(std::string_view text) {
  if (!looks_like_json(text)) return KernelSpec::tabulated(parse_matrix_csv(text));
  const auto j = parse_json(text);
  const DenseMatrix values = DenseMatrix::from_rows(json_rows(j, "values"));
  if (!j.contains("nodes")) return KernelSpec::tabulated(values);
  std::vector<double> nodes;
  for (const auto& v : j.at("nodes")) {
    if (!v.is_number()) throw ValidationError("kernel nodes must be numbers");
    nodes.push_back(v.get<double>());
  }
  return KernelSpec::tabulated(values, std::move(nodes));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << content;
}

}  // namespace wedge::io
