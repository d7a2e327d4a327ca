#include "blanchfield/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "blanchfield/moves.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace blanchfield;
using testing_support::F;
using testing_support::int_matrix;
using testing_support::P;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string catalog(const std::string& name) { return std::string(BLANCHFIELD_CATALOG_DIR) + "/" + name + ".json"; }

std::string golden(const std::string& name) {
  std::ifstream is(std::string(BLANCHFIELD_GOLDEN_DIR) + "/" + name + ".txt");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string scratch(const std::string& name, const std::string& content = "") {
  const auto dir = std::filesystem::temp_directory_path() / "blanchfield_cli_tests";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / name).string();
  if (!content.empty()) std::ofstream(path) << content;
  return path;
}

const char* kCatalog[] = {"trefoil",        "figure_eight",     "two_variable_n1", "boundary_split",
                          "boundary_trefoil", "rank_deficient", "unit",            "empty",
                          "zero"};

}  // namespace

TEST_CASE("catalog validates") {
  for (const char* name : kCatalog) {
    CAPTURE(name);
    const Result r = run({"validate", catalog(name)});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.rfind("valid: ", 0) == 0);
  }
  const Result j = run({"validate", catalog("trefoil"), "--json"});
  const auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["valid"] == true);
  CHECK(parsed["n"] == 2);
}

TEST_CASE("validation failures") {
  SUBCASE("missing sign key") {
    const auto path = scratch("missing.json", R"({"schema": 1, "mode": "family", "mu": 2,
      "matrices": {"--": [[1]], "-+": [[0]], "+-": [[0]]}})");
    const Result r = run({"validate", path});
    CHECK(r.code == cli::kInvalid);
    CHECK(r.err.find("\"++\"") != std::string::npos);
  }
  SUBCASE("boundary block symmetry") {
    const auto path = scratch("asym.json", R"({"schema": 1, "mode": "boundary", "genera": [1, 1],
      "A": [[0,0,1,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})");
    const Result r = run({"validate", path});
    CHECK(r.code == cli::kInvalid);
    CHECK(r.err.find("(1,3)") != std::string::npos);
  }
  SUBCASE("non-hermitian assembly") {
    const auto path = scratch("broken.json", R"({"schema": 1, "mode": "family", "mu": 1,
      "matrices": {"-": [[-1, 1], [0, -1]], "+": [[1, 0], [0, 1]]}})");
    const Result r = run({"validate", path});
    CHECK(r.code == cli::kInvalid);
    CHECK(r.err.find("(1,1)") != std::string::npos);
  }
  SUBCASE("malformed input") {
    CHECK(run({"validate", scratch("bad.json", "{\"schema\": 1, ")}).code == cli::kInvalid);
    CHECK(run({"validate", scratch("v2.json", R"({"schema": 2, "mode": "family"})")}).code == cli::kInvalid);
    const Result ragged =
        run({"validate", scratch("ragged.json", R"({"schema": 1, "mode": "family", "mu": 1,
          "matrices": {"-": [[1, 0], [0]], "+": [[1, 0], [0, 1]]}})")});
    CHECK(ragged.code == cli::kInvalid);
    CHECK(ragged.err.find("matrices[\"-\"][1]") != std::string::npos);
    CHECK(run({"validate", scratch("entry.json", R"({"schema": 1, "mode": "matrix", "mu": 1, "H": [["1 +* t"]]})")})
              .code == cli::kInvalid);
    CHECK(run({"validate", "/nonexistent/file.json"}).code == cli::kInvalid);
    CHECK(run({}).code == cli::kInvalid);
    CHECK(run({"pair", catalog("trefoil"), "--v", "1,0"}).code == cli::kInvalid);
  }
  SUBCASE("big integers as strings") {
    const auto path = scratch("big.json", R"({"schema": 1, "mode": "family", "mu": 1,
      "matrices": {"-": [["123456789012345678901234567890"]], "+": [["123456789012345678901234567890"]]}})");
    const Result r = run({"delta", path});
    CHECK(r.code == cli::kOk);
  }
}

TEST_CASE("delta output") {
  const Result r = run({"delta", catalog("trefoil")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("delta = t - 1 + t^-1\n") != std::string::npos);
  CHECK(run({"delta", catalog("figure_eight")}).out.find("delta = t - 3 + t^-1\n") != std::string::npos);
  const Result z = run({"delta", catalog("zero")});
  CHECK(z.out.find("free rank = 2\n") != std::string::npos);
  CHECK(z.out.find("delta = 1\n") != std::string::npos);

  const auto j = nlohmann::json::parse(run({"delta", catalog("rank_deficient"), "--json"}).out);
  CHECK(j["rho"] == 2);
  CHECK(j["free_rank"] == 1);
  CHECK(parse_laurent(j["delta"].get<std::string>(), 1) == P("t - 1 + t^-1"));
}

TEST_CASE("golden outputs are stable") {
  for (const char* name : {"trefoil", "figure_eight", "two_variable_n1", "rank_deficient", "zero", "boundary_split",
                           "unit"}) {
    CAPTURE(name);
    CHECK(run({"delta", catalog(name)}).out == golden(std::string("delta_") + name));
  }
  for (const char* name : {"trefoil", "figure_eight", "two_variable_n1", "boundary_split", "unit"}) {
    CAPTURE(name);
    const std::string first = run({"form", catalog(name)}).out;
    CHECK(first == golden(std::string("form_") + name));
    CHECK(run({"form", catalog(name)}).out == first);
  }
}

TEST_CASE("form output") {
  const Result r = run({"form", catalog("trefoil")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.rfind("# Bl = -lambda_H", 0) == 0);
  CHECK(run({"form", catalog("unit")}).out.find("(1,1) [0] mod Λ_S") != std::string::npos);

  const Result singular = run({"form", catalog("rank_deficient")});
  CHECK(singular.code == cli::kMathError);
  CHECK(singular.err.find("pair") != std::string::npos);

  // JSON round trip against the API.
  const CMatrix h = knot_c_matrix(int_matrix({{-1, 1}, {0, -1}}));
  const BlForm api = blanchfield_matrix(torsion_order(h));
  for (const char* sign : {"bl", "lambda"}) {
    const auto j = nlohmann::json::parse(run({"form", catalog("trefoil"), "--json", "--sign", sign}).out);
    CHECK(j["convention"] == sign);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < 2; ++k) {
        const QmodLS back{parse_ratfunc(j["matrix"][i][k].get<std::string>(), 1)};
        CHECK(back == (std::string(sign) == "bl" ? api.matrix[i][k] : -api.matrix[i][k]));
        CHECK(divide_exact(P("t^2 - t + 1"), strip_units(back.rep.den()).core).has_value());
      }
    }
  }
}

TEST_CASE("pair output") {
  const Result r = run({"pair", catalog("trefoil"), "--v", "1,0", "--w", "1,0"});
  CHECK(r.code == cli::kOk);
  const CMatrix h = knot_c_matrix(int_matrix({{-1, 1}, {0, -1}}));
  const RatFunc inv11 = inverse_q(h.matrix())(0, 0);
  CHECK(r.out == to_string(QmodLS{inv11}, 1) + "\n");
  CHECK(run({"pair", catalog("trefoil"), "--v", "0,0", "--w", "1,0"}).out == "[0] mod Λ_S\n");

  const auto j = nlohmann::json::parse(
      run({"pair", catalog("trefoil"), "--v", "1, t", "--w", "(1 - t)/(1 - t^-1), 0", "--sign", "bl", "--json"}).out);
  RfVector v(2);
  v << F("1"), F("t");
  RfVector w(2);
  w << F("-t"), F("0");
  CHECK(QmodLS{parse_ratfunc(j["value"].get<std::string>(), 1)} ==
        pair(torsion_order(h), v, w, Convention::Blanchfield));

  const Result nt = run({"pair", catalog("rank_deficient"), "--v", "1,0,0", "--w", "0,0,1"});
  CHECK(nt.code == cli::kMathError);
  CHECK(nt.err.find("rank") != std::string::npos);
  CHECK(run({"pair", catalog("trefoil"), "--v", "1/(1+t),0", "--w", "1,0"}).code == cli::kInvalid);
  CHECK(run({"pair", catalog("trefoil"), "--v", "1", "--w", "1,0"}).code == cli::kInvalid);
}

TEST_CASE("boundary output") {
  // The knot case reproduces the family-mode trefoil.
  CHECK(run({"delta", catalog("boundary_trefoil")}).out == run({"delta", catalog("trefoil")}).out);
  CHECK(run({"form", catalog("boundary_trefoil")}).out == run({"form", catalog("trefoil")}).out);

  const Result split = run({"boundary", catalog("boundary_split")});
  CHECK(split.code == cli::kOk);
  CHECK(split.out.find("delta = " + to_string(P("(t1 - 1 + t1^-1)*(t2 - 3 + t2^-1)", 2), 2)) != std::string::npos);

  const Result m = run({"boundary", catalog("boundary_split"), "--v", "1,0,0,t2", "--w", "0,1,1,0"});
  CHECK(m.code == cli::kOk);
  CHECK(m.out.find("verdict: MATCH") != std::string::npos);
  const auto j =
      nlohmann::json::parse(run({"boundary", catalog("boundary_trefoil"), "--v", "1,0", "--w", "0,1", "--json"}).out);
  CHECK(j["verdict"] == "MATCH");

  const auto singular = scratch("boundary_zero.json", R"({"schema": 1, "mode": "boundary", "genera": [1],
    "A": [[0, 0], [0, 0]]})");
  const Result s = run({"boundary", singular, "--v", "0,0", "--w", "0,0"});
  CHECK(s.code == cli::kOk);
  CHECK(s.err.find("general path only") != std::string::npos);

  CHECK(run({"boundary", catalog("trefoil")}).code == cli::kInvalid);
}

TEST_CASE("transform") {
  SUBCASE("mirror twice is the identity") {
    const auto once = scratch("m1.json");
    const auto twice = scratch("m2.json");
    CHECK(run({"transform", catalog("trefoil"), "--op", "mirror", "-o", once}).code == cli::kOk);
    CHECK(run({"transform", once, "--op", "mirror", "-o", twice}).code == cli::kOk);
    CHECK(cli::read_link_file(twice).c_matrix().matrix() == cli::read_link_file(catalog("trefoil")).c_matrix().matrix());
    const auto j = nlohmann::json::parse(std::ifstream(once));
    CHECK(j["witness"][0]["relation"] == "negating");
  }
  SUBCASE("sum with the empty matrix") {
    const Result r = run({"transform", catalog("trefoil"), "--op", "sum", "--with", catalog("empty")});
    CHECK(r.code == cli::kOk);
    const cli::LinkFile f = cli::parse_link_file(r.out);
    CHECK(f.mode == cli::LinkFile::Mode::Matrix);
    CHECK(f.c_matrix().matrix() == cli::read_link_file(catalog("trefoil")).c_matrix().matrix());
  }
  SUBCASE("connected sum of two knots is the block sum") {
    const Result r = run({"transform", catalog("trefoil"), "--op", "connected-sum", "--with", catalog("figure_eight")});
    REQUIRE(r.code == cli::kOk);
    const CMatrix h = cli::parse_link_file(r.out).c_matrix();
    const CMatrix a = cli::read_link_file(catalog("trefoil")).c_matrix();
    const CMatrix b = cli::read_link_file(catalog("figure_eight")).c_matrix();
    CHECK(h.matrix() == block_sum({a, b}).matrix());
    CHECK(run({"transform", catalog("trefoil"), "--op", "connected-sum", "--with", catalog("two_variable_n1"),
               "--disjoint", "--check"})
              .code == cli::kOk);
  }
  SUBCASE("witness maps replay") {
    const Result r = run({"transform", catalog("trefoil"), "--op", "stab2", "--xi", "1 - t, t^-1", "--lam",
                          "t - 2 + t^-1", "--alpha", "-t^2*(1 - t)", "--check"});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.err.find("ok") != std::string::npos);
    const auto j = nlohmann::json::parse(r.out);
    const cli::LinkFile f = cli::parse_link_file(r.out);
    const auto& w = j["witness"][0];
    RfMatrix map(4, 2);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 2; ++k) map(i, k) = parse_ratfunc(w["map"][i][k].get<std::string>(), 1);
    const CMatrix source = cli::read_link_file(catalog("trefoil")).c_matrix();
    CHECK(check_isometry(FormIsometry{source, f.c_matrix(), map, Relation::Isometry}, 4, 9).ok());
    CHECK(run({"delta", scratch("s2.json", r.out)}).out.find("delta = t - 1 + t^-1\n") != std::string::npos);
  }
  SUBCASE("argument errors") {
    CHECK(run({"transform", catalog("trefoil"), "--op", "sum"}).code == cli::kInvalid);
    CHECK(run({"transform", catalog("trefoil"), "--op", "bogus"}).code == cli::kInvalid);
    CHECK(run({"transform", catalog("trefoil"), "--op", "sum", "--with", catalog("two_variable_n1")}).code ==
          cli::kInvalid);
    CHECK(run({"transform", catalog("trefoil"), "--op", "stab2", "--alpha", "2"}).code == cli::kInvalid);
    CHECK(run({"transform", catalog("trefoil"), "--op", "mirror", "--disjoint"}).code == cli::kInvalid);
  }
}

TEST_CASE("vector parsing") {
  const RfVector v = cli::parse_vector("1, (1 - t)/(1 - t^-1), t^2", 1);
  REQUIRE(v.size() == 3);
  CHECK(v(1) == F("-t"));
  CHECK_THROWS_AS(cli::parse_vector("1,,2", 1), ValidationError);
}
