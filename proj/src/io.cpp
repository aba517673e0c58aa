#include "shapecur/io.hpp"

#include <json.hpp>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace shapecur {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "': " + std::strerror(errno));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "': " + std::strerror(errno));
  out << content;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string curve_to_csv(const SampledCurve& curve) {
  std::string s = curve.closed ? "# closed=true\n" : "# closed=false\n";
  s += "t,x,y\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    s += format_double(curve.params[i]) + "," + format_double(curve.points[i].x()) + "," +
         format_double(curve.points[i].y()) + "\n";
  }
  return s;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, const std::string& source, std::size_t line) {
  const std::string f = trim(field);
  double v = 0.0;
  const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || res.ec != std::errc() || res.ptr != f.data() + f.size()) {
    throw ParseError(source + ": not a number: '" + f + "'", line);
  }
  return v;
}

}  // namespace

SampledCurve curve_from_csv(const std::string& text, const std::string& source) {
  SampledCurve c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto pos = t.find("closed=");
      if (pos != std::string::npos) {
        const std::string v = trim(t.substr(pos + 7));
        if (v == "true") {
          c.closed = true;
        } else if (v == "false") {
          c.closed = false;
        } else {
          throw ParseError(source + ": closed must be true or false", lineno);
        }
      }
      continue;
    }
    if (!header) {
      if (t != "t,x,y") throw ParseError(source + ": expected header 't,x,y'", lineno);
      header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(t);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 3) throw ParseError(source + ": expected 3 fields", lineno);
    c.params.push_back(parse_number(fields[0], source, lineno));
    c.points.emplace_back(parse_number(fields[1], source, lineno), parse_number(fields[2], source, lineno));
  }
  if (!header) throw ParseError(source + ": missing header 't,x,y'", lineno);
  return c;
}

void save_curve(const std::string& path, const SampledCurve& curve) {
  write_text_file(path, curve_to_csv(curve));
}

SampledCurve load_curve(const std::string& path) { return curve_from_csv(read_text_file(path), path); }

std::string current_to_json(const CurrentVector& f) {
  nlohmann::ordered_json j;
  j["space"] = nlohmann::ordered_json::parse(f.space.to_json());
  j["fx"] = std::vector<double>(f.fx.data(), f.fx.data() + f.fx.size());
  j["fy"] = std::vector<double>(f.fy.data(), f.fy.data() + f.fy.size());
  return j.dump();
}

CurrentVector current_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    CurrentVector f;
    f.space = SpaceDescriptor::from_json(j.at("space").dump());
    const auto fx = j.at("fx").get<std::vector<double>>();
    const auto fy = j.at("fy").get<std::vector<double>>();
    if (fx.size() != fy.size()) throw ConfigurationError("fx and fy differ in length");
    f.fx = Eigen::Map<const Vector>(fx.data(), static_cast<Eigen::Index>(fx.size()));
    f.fy = Eigen::Map<const Vector>(fy.data(), static_cast<Eigen::Index>(fy.size()));
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("invalid current JSON: ") + e.what());
  }
}

std::string current_to_csv(const CurrentVector& f) {
  std::string s = "dof,fx,fy\n";
  for (Eigen::Index i = 0; i < f.fx.size(); ++i) {
    s += std::to_string(i) + "," + format_double(f.fx[i]) + "," + format_double(f.fy[i]) + "\n";
  }
  return s;
}

std::string matrix_to_csv(const Matrix& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += format_double(m(i, j));
    }
    s += "\n";
  }
  return s;
}

void Table::add(std::vector<double> row) {
  if (row.size() != columns.size()) throw ConfigurationError("table row has wrong width");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string s;
  for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
  s += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + format_double(r[i]);
    s += "\n";
  }
  return s;
}

}  // namespace shapecur
