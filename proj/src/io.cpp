#include "mch/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mch/errors.hpp"

namespace mch {

std::string float17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

void render(const nlohmann::ordered_json& j, std::string& out, int indent) {
  using value_t = nlohmann::ordered_json::value_t;
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (j.type()) {
    case value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + "  ";
        escape_into(out, it.key());
        out += ": ";
        render(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ", ";
        first = false;
        render(v, out, indent);
      }
      out += "]";
      return;
    }
    case value_t::number_float:
      out += float17(j.get<double>());
      return;
    case value_t::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case value_t::string:
      escape_into(out, j.get<std::string>());
      return;
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string to_json_text(const nlohmann::ordered_json& j) {
  std::string out;
  render(j, out, 0);
  out += "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << text;
  if (!f) throw IoError("write failed: " + path);
}

void write_field_csv(const std::string& path, const GridField& field) {
  std::string out = "x,m";
  const int K = field.has_derivs(4) ? 4 : (field.has_derivs(2) ? 2 : 0);
  const char* names[4] = {"mx", "mxx", "mxxx", "mxxxx"};
  for (int k = 0; k < K; ++k) {
    out += ',';
    out += names[k];
  }
  out += '\n';
  for (std::size_t j = 0; j < field.n; ++j) {
    out += float17(field.x0 + field.h * static_cast<double>(j));
    out += ',';
    out += float17(field.m[j]);
    for (int k = 0; k < K; ++k) {
      out += ',';
      out += float17(field.dm[k][j]);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

GridField read_field_csv(const std::string& path, double kappa,
                         bool periodic) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(f, line)) throw IoError("empty CSV: " + path);
  int cols = 1;
  for (char c : line)
    if (c == ',') ++cols;
  const int K = cols - 2;
  if (K < 0 || K > 4) throw IoError("unexpected column count in " + path);

  GridField field;
  field.kappa = kappa;
  field.periodic = periodic;
  std::vector<double> xs;
  for (int k = 0; k < K; ++k) field.dm[k].clear();
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (static_cast<int>(row.size()) != cols)
      throw IoError("ragged CSV row in " + path);
    xs.push_back(row[0]);
    field.m.push_back(row[1]);
    for (int k = 0; k < K; ++k) field.dm[k].push_back(row[2 + k]);
  }
  if (xs.size() < 2) throw IoError("CSV has fewer than two rows: " + path);
  field.n = xs.size();
  field.x0 = xs.front();
  field.h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  return field;
}

}  // namespace mch
