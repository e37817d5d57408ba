#include "majq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "majq/adaptive.hpp"
#include "majq/circuit_json.hpp"
#include "majq/oracles.hpp"
#include "majq/random.hpp"
#include "majq/synth.hpp"

namespace majq::cli {

namespace {

/// Bad flag combination detected after CLI11 parsing.
class usage_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct span_arg {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

span_arg parse_span(const std::string& text, const char* flag) {
  span_arg s;
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      s.lo = s.hi = std::stoul(text, &used);
      if (used != text.size()) {
        throw std::invalid_argument(text);
      }
    } else {
      const auto a = text.substr(0, colon);
      const auto b = text.substr(colon + 1);
      s.lo = std::stoul(a, &used);
      if (used != a.size()) {
        throw std::invalid_argument(text);
      }
      s.hi = std::stoul(b, &used);
      if (used != b.size()) {
        throw std::invalid_argument(text);
      }
    }
  } catch (const std::logic_error&) {
    throw usage_error(std::string(flag) + " expects A:B, got '" + text + "'");
  }
  if (s.lo > s.hi) {
    throw usage_error(std::string(flag) + " range is empty: '" + text + "'");
  }
  return s;
}

std::string format_bound(const std::optional<double>& bound) {
  if (!bound) {
    return "";
  }
  if (*bound == static_cast<double>(static_cast<std::uint64_t>(*bound))) {
    return std::to_string(static_cast<std::uint64_t>(*bound));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", *bound);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw precondition_error("cannot read " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw precondition_error("cannot write " + path);
  }
}

solve_report run_solver(const std::string& model, oracle& o, std::size_t n, std::size_t k, bool trace = false) {
  if (model == "fixed") {
    return solve_fixed(o, n, k, {trace, {}});
  }
  return solve_adjustable(o, n, k, trace);
}

// ---------------------------------------------------------------------------

struct synth_args {
  std::size_t n = 0;
  bool trivial = false;
  std::string out;
};

int cmd_synth(const synth_args& a, std::ostream& out, std::ostream& err) {
  const auto c = a.trivial ? trivial_circuit(a.n) : synthesize(a.n);
  const auto text = circuit_to_json(c);
  std::ostream* summary = &out;
  if (a.out.empty()) {
    out << text;
    summary = &err;
  } else {
    write_file(a.out, text);
  }
  *summary << "gates: " << c.first_level.size() << "\n"
           << "fan-in: " << circuit_fanin(c) << "\n";
  return exit_ok;
}

struct verify_args {
  std::string circuit;
  std::size_t limit = 24;
};

int cmd_verify(const verify_args& a, std::ostream& out) {
  const auto c = circuit_from_json(read_file(a.circuit));
  const auto result = verify_exhaustive(c, a.limit);
  if (result.equivalent()) {
    out << "equivalent (n = " << c.n << ", " << (std::uint64_t{1} << c.n) << " inputs)\n";
    return exit_ok;
  }
  out << "counterexample: " << result.counterexample->to_string() << "\n";
  return exit_not_equivalent;
}

struct solve_args {
  std::string model;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string input;
  bool random = false;
  std::optional<std::uint64_t> seed;
  bool adversary = false;
  bool trace = false;
};

int cmd_solve(const solve_args& a, std::ostream& out) {
  const int modes = (a.input.empty() ? 0 : 1) + (a.random ? 1 : 0) + (a.adversary ? 1 : 0);
  if (modes != 1) {
    throw usage_error("solve needs exactly one of --input, --random, --adversary");
  }
  if (a.random != a.seed.has_value()) {
    throw usage_error("--random and --seed go together");
  }

  out << "model: " << a.model << "\nn: " << a.n << "\nk: " << a.k << "\n";
  if (a.adversary) {
    adversary_oracle o(a.n, a.k);
    const auto report = run_solver(a.model, o, a.n, a.k, a.trace);
    for (const auto& line : report.trace) {
      out << "trace: " << line << "\n";
    }
    const auto [zeros, ones] = o.completions();
    const bool consistent = !o.is_ambiguous() && majority(zeros) == report.answer;
    out << "answer: " << report.answer << "\nqueries: " << report.queries << "\nbound: " << format_bound(report.bound)
        << "\ncompletion_zeros: " << zeros.to_string() << "\ncompletion_ones: " << ones.to_string()
        << "\nambiguous: " << (o.is_ambiguous() ? "true" : "false") << "\n";
    return consistent ? exit_ok : exit_wrong_answer;
  }

  bit_vector x;
  if (a.random) {
    splitmix64 rng(*a.seed);
    x = rng.bits(a.n);
  } else {
    x = bit_vector::from_string(a.input);
    if (x.size() != a.n) {
      throw precondition_error("--input has " + std::to_string(x.size()) + " bits but --n is " +
                               std::to_string(a.n));
    }
  }
  honest_oracle o(x, a.k);
  const auto report = run_solver(a.model, o, a.n, a.k, a.trace);
  for (const auto& line : report.trace) {
    out << "trace: " << line << "\n";
  }
  const bool expected = majority(x);
  out << "input: " << x.to_string() << "\nanswer: " << report.answer << "\nqueries: " << report.queries
      << "\nbound: " << format_bound(report.bound) << "\nexpected: " << expected << "\n";
  return report.answer == expected ? exit_ok : exit_wrong_answer;
}

struct bench_args {
  std::string model;
  std::string n_span;
  std::string k_span;
  bool exhaustive = false;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_bench(const bench_args& a, std::ostream& out, std::ostream& err) {
  if (a.exhaustive == a.samples.has_value()) {
    throw usage_error("bench needs exactly one of --exhaustive, --samples");
  }
  if (a.samples.has_value() != a.seed.has_value()) {
    throw usage_error("--samples and --seed go together");
  }
  const auto ns = parse_span(a.n_span, "--n");
  const auto ks = parse_span(a.k_span, "--k");
  if (ns.lo == 0) {
    throw precondition_error("--n must start at 1 or more");
  }
  if (a.exhaustive && ns.hi > 24) {
    throw precondition_error("--exhaustive is limited to n <= 24");
  }

  std::string csv = "n,k,max_queries,bound,inputs_tested\n";
  std::size_t wrong = 0;
  for (std::size_t n = ns.lo; n <= ns.hi; ++n) {
    for (std::size_t k = std::max<std::size_t>(ks.lo, 1); k <= std::min(ks.hi, n); ++k) {
      // Each cell gets its own stream so rows do not depend on the cell order.
      splitmix64 rng(a.seed.value_or(0) ^ (n * 0x100000001b3ULL + k));
      const std::uint64_t inputs = a.exhaustive ? (std::uint64_t{1} << n) : *a.samples;
      std::size_t max_queries = 0;
      std::optional<double> bound;
      for (std::uint64_t v = 0; v < inputs; ++v) {
        const auto x = a.exhaustive ? bit_vector::from_mask(v, n) : rng.bits(n);
        honest_oracle o(x, k);
        o.set_logging(false);
        const auto report = run_solver(a.model, o, n, k);
        max_queries = std::max(max_queries, report.queries);
        bound = report.bound;
        if (report.answer != majority(x)) {
          ++wrong;
          err << "wrong answer: model=" << a.model << " n=" << n << " k=" << k << " x=" << x.to_string() << "\n";
        }
      }
      csv += std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(max_queries) + "," +
             format_bound(bound) + "," + std::to_string(inputs) + "\n";
    }
  }
  write_file(a.out, csv);
  out << "wrote " << a.out << "\n";
  return wrong == 0 ? exit_ok : exit_wrong_answer;
}

int cmd_edges(std::size_t n, std::ostream& out) {
  out << boundary_edges(majority_table(n), n) << "\n";
  return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Depth-two majority circuits and adaptive majority query algorithms", "majq"};
  app.require_subcommand(1);

  synth_args sa;
  auto* synth = app.add_subcommand("synth", "Build a depth-two circuit for MAJ_n and write it as JSON");
  synth->add_option("--n", sa.n, "Number of inputs")->required();
  synth->add_flag("--trivial", sa.trivial, "Singleton gates under one MAJ_n output gate (fan-in n)");
  synth->add_option("--out", sa.out, "Output path (default: standard output)");

  verify_args va;
  auto* verify = app.add_subcommand("verify", "Exhaustively compare a circuit with MAJ_n");
  verify->add_option("--circuit", va.circuit, "Circuit JSON file")->required();
  verify->add_option("--limit", va.limit, "Refuse circuits with more inputs than this")->capture_default_str();

  solve_args so;
  auto* solve = app.add_subcommand("solve", "Run a query algorithm against one oracle");
  solve->add_option("--model", so.model, "fixed or adjustable")
      ->required()
      ->check(CLI::IsMember({"fixed", "adjustable"}));
  solve->add_option("--n", so.n, "Number of bits")->required();
  solve->add_option("--k", so.k, "Largest query size")->required();
  solve->add_option("--input", so.input, "Hidden input as a bitstring, index 0 first");
  solve->add_flag("--random", so.random, "Draw the hidden input from --seed");
  solve->add_option("--seed", so.seed, "SplitMix64 seed");
  solve->add_flag("--adversary", so.adversary, "Answer with the lower-bound adversary");
  solve->add_flag("--trace", so.trace, "Print every algorithm step");

  bench_args ba;
  auto* bench = app.add_subcommand("bench", "Maximum query counts over a grid of (n, k), as CSV");
  bench->add_option("--model", ba.model, "fixed or adjustable")
      ->required()
      ->check(CLI::IsMember({"fixed", "adjustable"}));
  bench->add_option("--n", ba.n_span, "Range A:B")->required();
  bench->add_option("--k", ba.k_span, "Range C:D (cells with k > n are skipped)")->required();
  bench->add_flag("--exhaustive", ba.exhaustive, "Try all 2^n inputs");
  bench->add_option("--samples", ba.samples, "Random inputs per cell");
  bench->add_option("--seed", ba.seed, "SplitMix64 seed for --samples");
  bench->add_option("--out", ba.out, "CSV path")->required();

  std::size_t edges_n = 0;
  auto* edges = app.add_subcommand("edges", "Count hypercube edges on which MAJ_n changes");
  edges->add_option("--n", edges_n, "Number of variables (<= 20)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  }

  try {
    if (synth->parsed()) {
      return cmd_synth(sa, out, err);
    }
    if (verify->parsed()) {
      return cmd_verify(va, out);
    }
    if (solve->parsed()) {
      return cmd_solve(so, out);
    }
    if (bench->parsed()) {
      return cmd_bench(ba, out, err);
    }
    return cmd_edges(edges_n, out);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return exit_precondition;
  }
}

} // namespace majq::cli
