#include <doctest.h>

#include "tiv/tensor_io.hpp"

#include <filesystem>

using namespace tiv;

TEST_CASE("numeric tensor files") {
  auto file = parse_tensor_json(R"({"m":2,"n":2,"entries":{"T[1,1,1]":"2/4","T[2,2,2]":-3,"T[1,2,1]":"7"}})");
  CHECK(file.m == 2);
  CHECK(file.n == 2);
  REQUIRE_FALSE(file.symbolic());
  CHECK(file.values->at(1, 1, 1) == Rational(1, 2));
  CHECK(file.values->at(2, 2, 2) == -3);
  CHECK(file.values->at(1, 2, 1) == 7);
  CHECK(file.values->at(2, 1, 1) == 0);
}

TEST_CASE("symbolic tensor files") {
  auto file = parse_tensor_json(R"({"m":1,"n":2})");
  CHECK(file.symbolic());
  CHECK(file.m == 1);
  CHECK(file.n == 2);
}

TEST_CASE("malformed tensor files") {
  CHECK_THROWS_AS(parse_tensor_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tensor_json(R"({"n":2})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tensor_json(R"({"m":0,"n":2})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tensor_json(R"({"m":1,"n":1,"entries":{"T[2,1,1]":"1"}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tensor_json(R"({"m":1,"n":1,"entries":{"T[1,1,3]":"1"}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tensor_json(R"({"m":1,"n":1,"entries":{"X[1,1,1]":"1"}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tensor_json(R"({"m":1,"n":1,"entries":{"T[1,1,1]":"1/0"}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tensor_json(R"({"m":1,"n":1,"entries":{"T[1,1,1]":1.5}})"), std::invalid_argument);
  CHECK_THROWS_AS(load_tensor_file("/nonexistent/tensor.json"), std::invalid_argument);
}

TEST_CASE("save and load round trip") {
  auto file = parse_tensor_json(R"({"m":2,"n":3,"entries":{"T[2,3,2]":"-6/4","T[1,1,1]":"5"}})");
  std::string text = to_json(file);
  CHECK(text.find("\"-3/2\"") != std::string::npos);
  CHECK(parse_tensor_json(text) == file);
  CHECK(to_json(parse_tensor_json(text)) == text);

  auto path = std::filesystem::temp_directory_path() / "tiv_roundtrip.json";
  save_tensor_file(path, file);
  CHECK(load_tensor_file(path) == file);
  std::filesystem::remove(path);

  auto symbolic = parse_tensor_json(R"({"m":1,"n":2})");
  CHECK(parse_tensor_json(to_json(symbolic)) == symbolic);
}
