#include "rank1/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rank1/error.hpp"

namespace rank1 {

namespace {

using nlohmann::json;

std::string where(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::size_t index_field(const json& e, const char* key, const std::string& ctx) {
  if (!e.contains(key)) throw Error(ErrorCode::Parse, ctx + ": missing \"" + key + "\"");
  const json& v = e.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw Error(ErrorCode::Parse, ctx + ": \"" + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

Rational value_field(const json& e, const std::string& ctx) {
  if (!e.contains("value")) throw Error(ErrorCode::Parse, ctx + ": missing \"value\"");
  const json& v = e.at("value");
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (!v.is_string())
    throw Error(ErrorCode::Parse, ctx + ": \"value\" must be a string such as \"4/25\" or \"0.16\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& err) {
    throw Error(ErrorCode::Parse, ctx + ": " + err.detail());
  }
}

}  // namespace

PartialMatrix parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto colon = msg.rfind(": ");
    std::string detail = colon == std::string::npos ? msg : msg.substr(colon + 2);
    throw Error(ErrorCode::Parse, where(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + detail);
  }
  if (!doc.is_object()) throw Error(ErrorCode::Parse, "instance must be a JSON object");
  std::size_t rows = index_field(doc, "rows", "instance");
  std::size_t cols = index_field(doc, "cols", "instance");
  if (!doc.contains("entries") || !doc.at("entries").is_array())
    throw Error(ErrorCode::Parse, "instance: \"entries\" must be an array");
  std::vector<Entry> entries;
  std::size_t k = 0;
  for (const json& e : doc.at("entries")) {
    std::string ctx = "entries[" + std::to_string(k++) + "]";
    if (!e.is_object()) throw Error(ErrorCode::Parse, ctx + ": must be an object");
    entries.push_back({index_field(e, "row", ctx), index_field(e, "col", ctx), value_field(e, ctx)});
  }
  return PartialMatrix(rows, cols, entries);
}

PartialMatrix read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

std::string instance_to_json(const PartialMatrix& m, int indent) {
  json doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  doc["entries"] = json::array();
  for (const auto& [p, v] : m.entries())
    doc["entries"].push_back({{"row", p.row}, {"col", p.col}, {"value", to_string(v)}});
  return doc.dump(indent);
}

std::string format_real(const Real& x) { return x.to_string(); }

std::vector<std::vector<std::string>> format_matrix(const RankOneFactorization& f) {
  std::vector<std::vector<std::string>> out(f.u.size(), std::vector<std::string>(f.v.size()));
  for (std::size_t i = 0; i < f.u.size(); ++i)
    for (std::size_t j = 0; j < f.v.size(); ++j) out[i][j] = format_real(f.entry(i, j));
  return out;
}

}  // namespace rank1
