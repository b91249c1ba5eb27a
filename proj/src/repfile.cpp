#include "margulis/repfile.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "margulis/error.hpp"

namespace margulis {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) { throw LoadError(2, "SchemaError", what); }

Matrix parse_matrix(const json& j, std::size_t n, const std::string& where) {
  std::vector<double> values;
  if (!j.is_array()) schema_error(where + ": expected an array");
  if (!j.empty() && j.front().is_array()) {
    if (j.size() != n) schema_error(where + ": expected " + std::to_string(n) + " rows");
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != n) schema_error(where + ": ragged row");
      for (const auto& x : row) {
        if (!x.is_number()) schema_error(where + ": non-numeric entry");
        values.push_back(x.get<double>());
      }
    }
  } else {
    if (j.size() != n * n) schema_error(where + ": expected " + std::to_string(n * n) + " entries");
    for (const auto& x : j) {
      if (!x.is_number()) schema_error(where + ": non-numeric entry");
      values.push_back(x.get<double>());
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) schema_error(where + ": non-finite entry");
  }
  return Matrix(n, n, values);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw LoadError(1, "ParseError", std::string("unparseable JSON: ") + e.what());
  }
}

std::size_t positive_size(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 1) {
    schema_error(std::string("missing or invalid \"") + key + "\"");
  }
  return static_cast<std::size_t>(doc[key].get<long long>());
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(1, "IoError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw LoadError(1, "IoError", "cannot read " + path);
  return ss.str();
}

RepFile parse_rep_file(std::string_view text, const Tolerances& tol) {
  const json doc = parse_json(text);
  if (!doc.is_object()) schema_error("top level must be an object");
  const std::size_t n = positive_size(doc, "n");
  if (n < 2 || n > 12) schema_error("n must lie in 2..12");
  const std::size_t k = positive_size(doc, "k");
  if (!doc.contains("generators") || !doc["generators"].is_array()) schema_error("missing \"generators\"");
  const json& gens = doc["generators"];
  if (gens.size() != k) schema_error("\"generators\" has " + std::to_string(gens.size()) + " entries, k = " +
                                     std::to_string(k));
  if (k > 26) schema_error("at most 26 generators");
  std::vector<Matrix> rho;
  std::vector<Matrix> u;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string where = "generator " + std::to_string(i);
    if (!gens[i].is_object() || !gens[i].contains("rho") || !gens[i].contains("u")) {
      schema_error(where + ": needs \"rho\" and \"u\"");
    }
    rho.push_back(parse_matrix(gens[i]["rho"], n, where + ".rho"));
    u.push_back(parse_matrix(gens[i]["u"], n, where + ".u"));
  }
  RepFile f;
  if (doc.contains("name") && doc["name"].is_string()) f.name = doc["name"].get<std::string>();
  if (doc.contains("description") && doc["description"].is_string()) {
    f.description = doc["description"].get<std::string>();
  }
  try {
    f.rep = AffineRepresentation::make(std::move(rho), std::move(u), tol);
  } catch (const MathError& e) {
    throw LoadError(2, std::string(to_string(e.kind())), e.what());
  }
  return f;
}

RepFile load_rep_file(const std::string& path, const Tolerances& tol) {
  return parse_rep_file(read_text_file(path), tol);
}

std::vector<AffineParabolic> parse_parabolics(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("spaces") || !doc["spaces"].is_array()) {
    schema_error("expected an object with a \"spaces\" array");
  }
  const json& spaces = doc["spaces"];
  if (spaces.empty()) schema_error("\"spaces\" is empty");
  std::size_t n = 0;
  if (doc.contains("n")) {
    n = positive_size(doc, "n");
  } else {
    const json& f = spaces.front().value("frame", json::array());
    n = f.size() > 0 && f.front().is_array() ? f.size()
                                             : static_cast<std::size_t>(std::lround(std::sqrt(f.size())));
  }
  if (n < 2 || n > 12) schema_error("n must lie in 2..12");
  std::vector<AffineParabolic> out;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const std::string where = "space " + std::to_string(i);
    if (!spaces[i].is_object() || !spaces[i].contains("frame") || !spaces[i].contains("base")) {
      schema_error(where + ": needs \"frame\" and \"base\"");
    }
    const Matrix frame = parse_matrix(spaces[i]["frame"], n, where + ".frame");
    Matrix base = parse_matrix(spaces[i]["base"], n, where + ".base");
    if (!is_traceless(base)) schema_error(where + ": base is not traceless");
    try {
      out.push_back({Flag(frame), std::move(base)});
    } catch (const MathError& e) {
      schema_error(where + ": " + e.what());
    }
  }
  return out;
}

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_array(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_number(v[i]);
  }
  return s + "]";
}

std::string format_matrix(const Matrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ", ";
    std::vector<double> row(m.values().begin() + static_cast<std::ptrdiff_t>(i * m.cols()),
                            m.values().begin() + static_cast<std::ptrdiff_t>((i + 1) * m.cols()));
    s += format_array(row);
  }
  return s + "]";
}

std::string quote(std::string_view s) { return json(std::string(s)).dump(); }

std::string rep_file_json(const RepFile& f) {
  std::string s = "{\n";
  s += "  \"name\": " + quote(f.name) + ",\n";
  s += "  \"description\": " + quote(f.description) + ",\n";
  s += "  \"n\": " + std::to_string(f.rep.n) + ",\n";
  s += "  \"k\": " + std::to_string(f.rep.k()) + ",\n";
  s += "  \"generators\": [\n";
  for (std::size_t i = 0; i < f.rep.k(); ++i) {
    s += "    {\"rho\": " + format_matrix(f.rep.rho[i]) + ",\n     \"u\": " + format_matrix(f.rep.u[i]) + "}";
    s += i + 1 < f.rep.k() ? ",\n" : "\n";
  }
  s += "  ]\n}\n";
  return s;
}

}  // namespace margulis
