#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "majq/circuit_json.hpp"
#include "majq/cli.hpp"
#include "majq/synth.hpp"

using namespace majq;
namespace fs = std::filesystem;

namespace {

struct result {
  int code = 0;
  std::string out;
  std::string err;
};

result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "majq_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (l == line) {
      return true;
    }
  }
  return false;
}

} // namespace

TEST_CASE("circuit JSON round trip") {
  for (std::size_t n = 1; n <= 200; ++n) {
    const auto c = synthesize(n);
    REQUIRE(circuit_from_json(circuit_to_json(c)) == c);
  }
  const auto t = trivial_circuit(1);
  CHECK(circuit_from_json(circuit_to_json(t)) == t);

  depth_two_circuit w;
  w.n = 2;
  w.first_level.emplace_back(index_set{0, 1}, std::vector<std::int64_t>{2, 1}, 2);
  w.output = threshold_gate({0}, 1);
  w.declared_k = 3;
  CHECK(circuit_from_json(circuit_to_json(w)) == w);
}

TEST_CASE("circuit JSON layout") {
  const auto text = circuit_to_json(synthesize(1));
  CHECK(text.find("\"n\": 1") != std::string::npos);
  CHECK(text.find("{\"inputs\":[0],\"weights\":[1],\"threshold\":1}") != std::string::npos);
}

TEST_CASE("circuit JSON errors name the field") {
  const auto bad = [](const std::string& text, const std::string& field) {
    CAPTURE(text);
    try {
      circuit_from_json(text);
      FAIL("accepted");
    } catch (const parse_error& e) {
      CHECK(std::string(e.what()).rfind(field, 0) == 0);
    }
  };
  const std::string out = R"("output": {"inputs": [0], "weights": [1], "threshold": 1})";
  bad(R"({"n": 2, "k": 2, "gates": [{"inputs": [0, 1], "weights": [1, 0], "threshold": 1}], )" + out + "}",
      "gates[0].weights[1]");
  bad(R"({"n": 2, "k": 2, "gates": [{"inputs": [1, 0], "weights": [1, 1], "threshold": 1}], )" + out + "}",
      "gates[0].inputs");
  bad(R"({"n": 2, "k": 2, "gates": [{"inputs": [0, 2], "weights": [1, 1], "threshold": 1}], )" + out + "}",
      "gates[0].inputs");
  bad(R"({"n": 2, "k": 2, "gates": [{"inputs": [0, 1], "weights": [1], "threshold": 1}], )" + out + "}",
      "gates[0].weights");
  bad(R"({"n": 2, "k": 1, "gates": [{"inputs": [0, 1], "weights": [1, 1], "threshold": 1}], )" + out + "}",
      "gates[0]");
  bad(R"({"n": 2, "k": 2, "gates": [{"inputs": [0], "weights": [1], "threshold": 1}],
        "output": {"inputs": [1], "weights": [1], "threshold": 1}})",
      "output.inputs");
  bad(R"({"n": "2", "k": 2, "gates": [], "output": {"inputs": [], "weights": [], "threshold": 0}})", "n");
  bad("{", "");
}

TEST_CASE("cli synth and verify") {
  const auto path = scratch("c6.json");
  auto r = run({"synth", "--n", "6", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "gates: 5"));
  CHECK(has_line(r.out, "fan-in: 5"));
  CHECK(circuit_from_json(slurp(path)) == synthesize(6));

  r = run({"synth", "--n", "6"});
  CHECK(r.code == 0);
  CHECK(circuit_from_json(r.out) == synthesize(6));
  CHECK(has_line(r.err, "gates: 5"));

  r = run({"verify", "--circuit", path.string()});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "equivalent (n = 6, 64 inputs)"));

  auto tampered = synthesize(6);
  tampered.output = threshold_gate(tampered.output.inputs(), 4);
  const auto bad = scratch("bad6.json");
  std::ofstream(bad) << circuit_to_json(tampered);
  r = run({"verify", "--circuit", bad.string()});
  CHECK(r.code == 1);
  CHECK(has_line(r.out, "counterexample: " + verify_exhaustive(tampered).counterexample->to_string()));

  r = run({"synth", "--n", "5", "--trivial"});
  CHECK(has_line(r.err, "fan-in: 5"));
}

TEST_CASE("cli solve") {
  auto r = run({"solve", "--model", "adjustable", "--n", "6", "--k", "3", "--input", "101100"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "answer: 1"));
  CHECK(has_line(r.out, "queries: 4"));
  CHECK(has_line(r.out, "bound: 4"));
  CHECK(has_line(r.out, "expected: 1"));

  r = run({"solve", "--model", "fixed", "--n", "4", "--k", "2", "--input", "1100", "--trace"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "queries: 4"));
  CHECK(has_line(r.out, "bound: "));
  CHECK(r.out.find("trace: P2 case2") != std::string::npos);

  r = run({"solve", "--model", "fixed", "--n", "20", "--k", "6", "--random", "--seed", "9"});
  CHECK(r.code == 0);
  const auto again = run({"solve", "--model", "fixed", "--n", "20", "--k", "6", "--random", "--seed", "9"});
  CHECK(r.out == again.out);

  r = run({"solve", "--model", "fixed", "--n", "7", "--k", "3", "--adversary"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "ambiguous: false"));
  CHECK(r.out.find("completion_zeros: ") != std::string::npos);
}

TEST_CASE("cli bench") {
  const auto path = scratch("bench.csv");
  auto r = run({"bench", "--model", "adjustable", "--n", "1:4", "--k", "2:3", "--exhaustive", "--out", path.string()});
  CHECK(r.code == 0);
  const auto csv = slurp(path);
  CHECK(csv.rfind("n,k,max_queries,bound,inputs_tested\n", 0) == 0);
  CHECK(has_line(csv, "2,2,2,2,4"));
  CHECK_FALSE(has_line(csv, "2,3,2,2,4"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 5);

  r = run({"bench", "--model", "fixed", "--n", "10", "--k", "4:5", "--samples", "50", "--seed", "1", "--out",
           path.string()});
  CHECK(r.code == 0);
  const auto fixed = slurp(path);
  CHECK(fixed.find("\n10,4,") != std::string::npos);
  CHECK(fixed.find(",,50\n") != std::string::npos);
  // 2 (10/1 + 1)(log2 5 + 4)
  CHECK(fixed.find("\n10,5,") != std::string::npos);
  CHECK(fixed.find(",139.0824,50\n") != std::string::npos);
}

TEST_CASE("cli edges") {
  auto r = run({"edges", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "6\n");
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"synth"}).code == 64);
  CHECK(run({"solve", "--model", "exact", "--n", "3", "--k", "2", "--input", "101"}).code == 64);
  CHECK(run({"solve", "--model", "fixed", "--n", "3", "--k", "2"}).code == 64);
  CHECK(run({"solve", "--model", "fixed", "--n", "3", "--k", "2", "--random"}).code == 64);
  CHECK(run({"bench", "--model", "fixed", "--n", "3:1", "--k", "2", "--exhaustive", "--out", "x.csv"}).code == 64);
  CHECK(run({"synth", "--n", "0"}).code == 65);
  CHECK(run({"solve", "--model", "fixed", "--n", "3", "--k", "2", "--input", "10"}).code == 65);
  CHECK(run({"solve", "--model", "fixed", "--n", "3", "--k", "4", "--input", "101"}).code == 65);
  CHECK(run({"verify", "--circuit", "/nonexistent/c.json"}).code == 65);
  CHECK(run({"edges", "--n", "21"}).code == 65);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("bench --exhaustive stays within the bound column") {
  const auto path = scratch("bench_bound.csv");
  for (const char* model : {"adjustable", "fixed"}) {
    CAPTURE(model);
    const auto r = run({"bench", "--model", model, "--n", "1:10", "--k", "1:10", "--exhaustive", "--out",
                        path.string()});
    REQUIRE(r.code == 0);
    std::istringstream csv(slurp(path));
    std::string line;
    std::getline(csv, line);
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
      ++rows;
      std::istringstream cells(line);
      std::string n, k, max_queries, bound, inputs;
      std::getline(cells, n, ',');
      std::getline(cells, k, ',');
      std::getline(cells, max_queries, ',');
      std::getline(cells, bound, ',');
      std::getline(cells, inputs, ',');
      CHECK(inputs == std::to_string(std::uint64_t{1} << std::stoul(n)));
      if (!bound.empty()) {
        CHECK(std::stod(max_queries) <= std::stod(bound));
      } else {
        CHECK(std::string(model) == "fixed");
        CHECK(std::stoul(k) < 5);
      }
    }
    CHECK(rows == 55);
  }
}
