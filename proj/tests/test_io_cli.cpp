#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <doctest.h>

#include "chiy/cli.hpp"
#include "chiy/error.hpp"
#include "chiy/io.hpp"
#include "oracle.hpp"

using namespace chiy;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("chiy_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

ErrorKind parse_error(const std::string& text) {
  try {
    parse_datum(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error for " << text);
  return ErrorKind::InvalidArgument;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("datum json encoding") {
  const json j = datum_to_json(gen_s6(1, 2));
  CHECK(j == json::parse(R"({"dim":6,"fixed_points":[{"weights":[-3,1,2]},{"weights":[-2,-1,3]}]})"));
  CHECK(parse_datum(j.dump()) == gen_s6(1, 2));
}

TEST_CASE("json round trip") {
  std::mt19937 rng(1);
  for (int iter = 0; iter < 200; ++iter) {
    const auto d = test::random_generator_datum(rng, 6);
    CHECK(datum_from_json(json::parse(datum_to_json(d).dump())) == d);
  }
}

TEST_CASE("malformed documents") {
  CHECK(parse_error("{not json") == ErrorKind::Parse);
  CHECK(parse_error(R"({"fixed_points":[]})") == ErrorKind::Parse);
  CHECK(parse_error(R"({"dim":5,"fixed_points":[]})") == ErrorKind::Parse);
  CHECK(parse_error(R"({"dim":4,"fixed_points":[{"weights":[1]}]})") == ErrorKind::WrongArity);
  CHECK(parse_error(R"({"dim":2,"fixed_points":[{"weights":[0]}]})") == ErrorKind::ZeroWeight);
  CHECK(parse_error(R"({"dim":2,"fixed_points":[{"weights":["a"]}]})") == ErrorKind::Parse);
  try {
    parse_datum(R"({"dim":4,"fixed_points":[{"weights":[1,2]},{"weights":[3]}]})");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("fixed_points[1].weights") != std::string::npos);
  }
}

TEST_CASE("cli verify") {
  const auto good = write_temp("s6.json", datum_to_json(gen_s6(1, 2)).dump());
  const Run r = run({"verify", good});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("rigidity: pass") != std::string::npos);
  CHECK(r.out.find("all checks passed") != std::string::npos);

  const auto bad = write_temp("bad.json", R"({"dim":4,"fixed_points":[{"weights":[1,2]},{"weights":[-2,-1]}]})");
  const Run b = run({"verify", bad, "--format", "json"});
  CHECK(b.code == kExitFinding);
  const json j = json::parse(b.out);
  bool saw_rigidity = false;
  for (const auto& check : j["checks"]) {
    if (check["check"] == "rigidity") {
      saw_rigidity = true;
      CHECK(check["passed"] == false);
      CHECK(check["witness"]["nonconstant_degrees"].size() == 3);
    }
  }
  CHECK(saw_rigidity);

  // Existence pairing holds, strict pairing does not.
  const auto uneven = write_temp("uneven.json", R"({"dim":4,"fixed_points":[{"weights":[1,1]},{"weights":[-1,2]},{"weights":[-2,1]}]})");
  CHECK(run({"verify", uneven}).out.find("weight_pairing: pass") != std::string::npos);
  CHECK(run({"verify", uneven, "--strict-pairing"}).out.find("weight_pairing_strict: fail") != std::string::npos);
}

TEST_CASE("cli chi") {
  const auto good = write_temp("chi_s6.json", datum_to_json(gen_s6(1, 2)).dump());
  const Run r = run({"chi", good});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "0,-1,1,0\n0,1,1,0\n");
  const Run j = run({"chi", good, "--format", "json"});
  CHECK(json::parse(j.out) == json::parse(R"({"chi":[0,-1,1,0],"n_vector":[0,1,1,0]})"));

  const auto bad = write_temp("chi_bad.json", R"({"dim":4,"fixed_points":[{"weights":[1,2]},{"weights":[-2,-1]}]})");
  const Run b = run({"chi", bad});
  CHECK(b.code == kExitFinding);
  CHECK(b.err.find("nonconstant_degrees") != std::string::npos);

  const auto empty = write_temp("chi_empty.json", R"({"dim":2,"fixed_points":[]})");
  CHECK(run({"chi", empty}).code == kExitUsage);
  const auto arity = write_temp("chi_arity.json", R"({"dim":4,"fixed_points":[{"weights":[1]}]})");
  const Run a = run({"chi", arity});
  CHECK(a.code == kExitUsage);
  CHECK(a.err.find("WrongArity") != std::string::npos);
  CHECK(run({"chi", "/nonexistent/file.json"}).code == kExitUsage);
}

TEST_CASE("cli example") {
  CHECK(json::parse(run({"example", "s6", "--a", "1", "--b", "2"}).out) == datum_to_json(gen_s6(1, 2)));
  const std::vector<Weight> e{0, 1, 3};
  CHECK(json::parse(run({"example", "cpn", "--exps", "0,1,3"}).out) == datum_to_json(gen_cpn(e)));
  CHECK(json::parse(run({"example", "s2", "--w", "2"}).out) == datum_to_json(gen_s2(2)));
  CHECK(run({"example", "cpn", "--exps", "0,1,1"}).code == kExitUsage);

  const auto s2 = write_temp("ex_s2.json", datum_to_json(gen_s2(1)).dump());
  const auto s6 = write_temp("ex_s6.json", datum_to_json(gen_s6(1, 2)).dump());
  CHECK(parse_datum(run({"example", "product", s2, s6}).out) == product(gen_s2(1), gen_s6(1, 2)));
  CHECK(parse_datum(run({"example", "union", s2, s2}).out) == disjoint_union(gen_s2(1), gen_s2(1)));
  CHECK(run({"example", "union", s2, s6}).code == kExitUsage);
}

TEST_CASE("cli enumerate") {
  const Run r = run({"enumerate", "--n", "3", "--points", "2", "--max-weight", "3"});
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["count"] == 2);
  CHECK(j.contains("weight_bound_note"));

  const Run csv = run({"enumerate", "--n", "3", "--points", "2", "--max-weight", "3", "--format", "csv"});
  const auto lines = split(csv.out, '\n');
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "dim,k,weight_types,n_vector,chi,rigidity,weight_pairing,smallest_weight_pairing,kosniowski,"
                    "crowded,middle_range");
  // CSV and JSON agree on the numbers.
  for (std::size_t row = 0; row < 2; ++row) {
    const auto cells = split(lines[row + 1], ',');
    const auto& a = j["admissible"][row];
    CHECK(cells[0] == std::to_string(a["dim"].get<int>()));
    CHECK(cells[1] == std::to_string(a["fixed_points"].size()));
    std::string chi;
    for (const auto& c : a["chi"]) chi += (chi.empty() ? "" : ";") + std::to_string(c.get<long long>());
    CHECK(cells[4] == chi);
  }

  CHECK(run({"enumerate", "--n", "3", "--points", "4", "--max-weight", "3", "--max-candidates", "10"}).code ==
        kExitResource);
  CHECK(run({"enumerate", "--n", "3", "--points", "2", "--max-weight", "0"}).code == kExitUsage);
  CHECK(run({"enumerate", "--n", "2", "--points", "2", "--max-weight", "2", "--brute-force"}).code == kExitOk);
  const Run exp = run({"enumerate", "--n", "2", "--points", "3", "--max-weight", "2", "--experiments"});
  CHECK(json::parse(exp.out).contains("open_questions"));
}

TEST_CASE("cli bounds and classify") {
  const Run b = run({"bounds", "--max-dim", "12"});
  CHECK(b.code == kExitOk);
  CHECK(b.out.find("2, 1, 2\n") != std::string::npos);
  CHECK(b.out.find("12, 4, 4\n") != std::string::npos);
  CHECK(run({"bounds", "--max-dim", "7"}).code == kExitUsage);
  CHECK(run({"bounds", "--max-dim", "0"}).code == kExitUsage);

  const Run c = run({"classify", "--points", "2", "--max-weight", "2", "--n", "1,2,3"});
  CHECK(c.code == kExitOk);
  CHECK(json::parse(c.out)["consistent"] == true);
  CHECK(run({"classify", "--points", "4", "--max-weight", "2", "--n", "1"}).code == kExitUsage);
}

TEST_CASE("cli usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"verify"}).code == kExitUsage);
}
