#include "polyinv/pipeline.hpp"
#include "polyinv/solvability.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

// Splits "x=0,y=1/2" into an initial state over the program's variables.
// Unknown names are an error; variables left out start at 0.
polyinv::State parse_init(const std::string& text, const std::vector<std::string>& vars) {
  polyinv::State state(vars.size(), polyinv::Rational(0));
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad --init entry '" + item + "': expected name=value");
    std::string name = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    value.erase(value.find_last_not_of(" \t") + 1);
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw std::runtime_error("--init names unknown variable '" + name + "'");
    state[static_cast<std::size_t>(it - vars.begin())] = polyinv::rational_from_string(value);
  }
  return state;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_solvability(const polyinv::Program& p) {
  auto bodies = p.loop_bodies();
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    polyinv::SolvablePartition part = polyinv::check_solvable(bodies[b], p.vars);
    std::cout << "body " << b << ": solvable, blocks";
    for (const auto& block : part.blocks) {
      std::cout << " {";
      for (std::size_t i = 0; i < block.size(); ++i)
        std::cout << (i ? ", " : "") << p.vars[block[i]];
      std::cout << "}";
    }
    std::cout << "\n";
  }
}

void print_linearized(const polyinv::LinearSystem& sys) {
  std::cout << "basis (" << sys.basis.size() << "):";
  for (std::size_t i = 0; i < sys.basis.size(); ++i)
    std::cout << (i ? ", " : " ") << sys.basis[i].str(sys.names);
  std::cout << "\n";
  for (std::size_t b = 0; b < sys.matrices.size(); ++b) {
    std::cout << "body " << b << ":\n";
    const auto& m = sys.matrices[b];
    for (std::size_t r = 0; r < m.nr; ++r) {
      std::cout << "  [";
      for (std::size_t c = 0; c < m.nc; ++c)
        std::cout << (c ? ", " : "") << polyinv::rational_to_string(m.at(r, c));
      std::cout << "]\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  // --elevate-on-irrational takes an optional degree, which CLI11 flags do not
  // model, so it is stripped from argv before the regular parse.
  bool elevate = false;
  unsigned elevation_degree = 0;
  std::vector<char*> args;
  args.reserve(static_cast<std::size_t>(argc));
  for (int i = 0; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--elevate-on-irrational") {
      elevate = true;
      continue;
    }
    const std::string prefix = "--elevate-on-irrational=";
    if (a.rfind(prefix, 0) == 0) {
      elevate = true;
      try {
        elevation_degree = static_cast<unsigned>(std::stoul(a.substr(prefix.size())));
      } catch (const std::exception&) {
        std::cerr << "error: bad elevation degree in '" << a << "'\n";
        return 2;
      }
      continue;
    }
    args.push_back(argv[i]);
  }

  CLI::App app{"polynomial equality invariant generator for simple loops"};

  std::string file;
  std::string format = "text";
  std::string init_text;
  std::string bench_dir;
  int degree = -1;
  unsigned reps = 3;
  bool explain_solvability = false;
  bool dump_linearized = false;
  polyinv::AnalyzeConfig cfg;

  app.add_option("file", file, "loop program to analyze");
  app.add_option("--degree", degree, "invariant degree bound (default: file directive or 2)");
  app.add_option("--format", format, "output format: text, json, annotated")
      ->check(CLI::IsMember({"text", "json", "annotated"}));
  app.add_option("--init", init_text, "initial state, e.g. \"x=0,y=1/2\" (others start at 0)");
  app.add_option("--oracle-iters", cfg.oracle_iters, "trace length for the numeric check");
  app.add_option("--oracle-runs", cfg.oracle_runs, "random starts for the numeric check");
  app.add_option("--seed", cfg.oracle_seed, "seed for the numeric check");
  app.add_option("--max-combos", cfg.max_combos, "cap on eigenvalue combinations");
  app.add_option("--max-basis", cfg.basis_limit, "cap on the linearization basis size");
  app.add_option("--timeout", cfg.timeout_seconds, "analysis time limit in seconds");
  app.add_flag("--timings", cfg.with_timings, "include phase timings in the output");
  app.add_flag("--explain-solvability", explain_solvability,
               "print the solvable block structure and exit");
  app.add_flag("--dump-linearized", dump_linearized,
               "print the basis and transition matrices and exit");
  app.add_option("--bench", bench_dir, "run every .loop file in a directory and print a table");
  app.add_option("--reps", reps, "timing repetitions per benchmark program");

  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  cfg.elevate_on_irrational = elevate;
  cfg.elevation_degree = elevation_degree;

  try {
    if (!bench_dir.empty()) {
      if (degree >= 0) cfg.degree = static_cast<unsigned>(degree);
      auto rows = polyinv::bench(bench_dir, reps, cfg);
      std::cout << polyinv::bench_table(rows);
      return 0;
    }

    if (file.empty()) {
      std::cerr << "error: no input file\n";
      return 2;
    }

    std::string source = read_file(file);
    polyinv::Program p = polyinv::parse(source);

    if (degree >= 0)
      cfg.degree = static_cast<unsigned>(degree);
    else if (auto d = polyinv::degree_directive(source))
      cfg.degree = *d;

    if (explain_solvability) {
      print_solvability(p);
      return 0;
    }
    if (dump_linearized) {
      auto bodies = p.loop_bodies();
      for (const auto& b : bodies) polyinv::check_solvable(b, p.vars);
      print_linearized(polyinv::linearize_bodies(bodies, cfg.degree, p.vars, cfg.basis_limit));
      return 0;
    }

    if (!init_text.empty()) {
      try {
        cfg.init = parse_init(init_text, p.vars);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }
    }

    polyinv::Report r = polyinv::analyze(p, cfg);
    if (format == "json")
      std::cout << r.to_json();
    else if (format == "annotated")
      std::cout << r.to_annotated();
    else
      std::cout << r.to_text();
    return 0;
  } catch (const polyinv::SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const polyinv::NestedLoopError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const polyinv::UnboundVariableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const polyinv::NotSolvableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const polyinv::SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const polyinv::TimeoutError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
