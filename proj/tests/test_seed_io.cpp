#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcluster/error.hpp"
#include "qcluster/grassmann.hpp"
#include "qcluster/sampling.hpp"
#include "qcluster/seed_io.hpp"
#include "support.hpp"

using namespace qcluster;

TEST_CASE("identity-frame seeds omit the frame") {
  auto g = rectangles_seed(3, 6);
  std::string text = seed_to_json(g.seed);
  CHECK(text.find("frame") == std::string::npos);
  QuantumSeed back = seed_from_json(text);
  CHECK(back == g.seed);
  CHECK(seed_to_json(back) == text);
}

TEST_CASE("mutated seeds round-trip bit-exactly") {
  qtest::Gen gen(31);
  Rng rng(qtest::base_seed());
  for (int trial = 0; trial < 30; ++trial) {
    QuantumSeed s = random_compatible_seed(rng, gen.uniform(1, 4));
    const int steps = gen.uniform(0, 5);
    for (int i = 0; i < steps; ++i) s = mutate(s, gen.uniform(0, s.n_mutable() - 1));
    std::string text = seed_to_json(s);
    QuantumSeed back = seed_from_json(text);
    CHECK(back == s);
    CHECK(back.frame() == s.frame());
    CHECK(seed_to_json(back) == text);
  }
}

TEST_CASE("malformed seed files") {
  auto code = [](const char* text) {
    try {
      seed_from_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidParams;
  };
  CHECK(code("{") == ErrorCode::ParseError);
  CHECK(code(R"({"labels": ["a"], "btilde": [[0]]})") == ErrorCode::ParseError);
  CHECK(code(R"({"labels": ["a"], "btilde": [[0.5]], "lambda": [[0]]})") == ErrorCode::ParseError);
  CHECK(code(R"({"labels": ["a","b"], "btilde": [[0],[1]], "lambda": [[0,1],[2]]})") == ErrorCode::ParseError);
  CHECK(code(R"({"labels": ["a"], "btilde": [[0]], "lambda": [[0]], "frame": ["X[1]"]})") == ErrorCode::ParseError);
  CHECK_THROWS_AS(read_seed_file("/nonexistent/seed.json"), Error);
}
