#include "tiv/tensor_io.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>
#include <sstream>

namespace tiv {

namespace {

int positive_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw std::invalid_argument(std::string("tensor file needs an integer \"") + key + "\"");
  }
  auto v = j[key].get<long long>();
  if (v < 1 || v > 64) throw std::invalid_argument(std::string("tensor dimension \"") + key + "\" out of range");
  return static_cast<int>(v);
}

Rational entry_value(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
  throw std::invalid_argument("entry " + key + " must be a rational string \"p/q\" or an integer");
}

}  // namespace

TensorFile parse_tensor_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed tensor JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("tensor file must be a JSON object");

  TensorFile file;
  file.m = positive_int(j, "m");
  file.n = positive_int(j, "n");
  if (!j.contains("entries")) return file;

  const auto& entries = j["entries"];
  if (!entries.is_object()) throw std::invalid_argument("\"entries\" must be an object");
  static const std::regex key_pattern(R"(\s*T\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]\s*)");
  RationalTensor values(file.m, file.n);
  for (const auto& [key, value] : entries.items()) {
    std::smatch match;
    if (!std::regex_match(key, match, key_pattern)) throw std::invalid_argument("bad entry key '" + key + "'");
    const int i = std::stoi(match[1]);
    const int jj = std::stoi(match[2]);
    const int k = std::stoi(match[3]);
    if (i < 1 || i > file.m || jj < 1 || jj > file.n || k < 1 || k > 2) {
      throw std::invalid_argument("entry " + key + " is outside a " + std::to_string(file.m) + "x" +
                                  std::to_string(file.n) + "x2 tensor");
    }
    values.at(i, jj, k) = entry_value(value, key);
  }
  file.values = std::move(values);
  return file;
}

TensorFile load_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tensor_json(buffer.str());
}

std::string to_json(const TensorFile& file) {
  nlohmann::ordered_json j;
  j["m"] = file.m;
  j["n"] = file.n;
  if (file.values) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::object();
    for (int k = 1; k <= 2; ++k) {
      for (int jj = 1; jj <= file.n; ++jj) {
        for (int i = 1; i <= file.m; ++i) {
          entries[Variable{"T", {i, jj, k}}.name()] = to_string(file.values->at(i, jj, k));
        }
      }
    }
    j["entries"] = std::move(entries);
  }
  return j.dump(2) + "\n";
}

void save_tensor_file(const std::filesystem::path& path, const TensorFile& file) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  out << to_json(file);
}

}  // namespace tiv
