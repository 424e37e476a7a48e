#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qconcur/bounds.hpp"
#include "qconcur/io.hpp"
#include "qconcur/oracle.hpp"
#include "qconcur/scan.hpp"
#include "qconcur/selftest.hpp"
#include "qconcur/states.hpp"

namespace {

using namespace qconcur;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw validation_error("cannot parse weight '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> parse_bounds(const std::string& text) {
  if (text.empty() || text == "all") return {};
  return split_list(text);
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
  if (!path) {
    std::cout << content;
    return;
  }
  std::ofstream out(*path);
  if (!out) throw validation_error("cannot open output file '" + *path + "'");
  out << content;
}

struct ComputeArgs {
  std::string state_path, family, bounds = "all", format = "json";
  std::optional<std::string> out;
  int n = 3;
  std::optional<double> p, x, theta;
  std::string weights;
};

DensityMatrix resolve_state(const ComputeArgs& a) {
  if (!a.state_path.empty()) {
    return to_density(read_state_file(a.state_path));
  }
  if (a.family.empty()) {
    throw validation_error("compute: give either --state or --family");
  }
  auto need = [](const std::optional<double>& v, const char* flag) {
    if (!v) throw validation_error(std::string("compute: this family needs ") + flag);
    return *v;
  };
  if (a.family == "w-noise" || a.family == "ghz-noise") {
    return make_family(a.family, a.n).make(need(a.p, "--p"));
  }
  if (a.family == "dct-noise") {
    return make_family(a.family, 3, parse_weights(a.weights)).make(need(a.x, "--x"));
  }
  if (a.family == "gen-ghz") {
    return make_family(a.family, a.n).make(need(a.theta, "--theta"));
  }
  if (a.family == "gen-w") {
    const std::vector<double> w = parse_weights(a.weights);
    if (w.size() < 2) {
      throw validation_error("compute: gen-w needs --weights with the amplitudes");
    }
    std::vector<Complex> coeffs(w.begin(), w.end());
    return projector(generalized_w(coeffs));
  }
  return make_family(a.family, a.n).make(0.0);  // "w", "ghz"
}

int cmd_compute(const ComputeArgs& a) {
  const DensityMatrix rho = resolve_state(a);
  const BoundReport report = full_report(rho, ToleranceConfig{}, parse_bounds(a.bounds));
  if (a.format == "csv") {
    write_output(a.out, report_to_csv(report));
  } else {
    nlohmann::json doc = report_to_json(report);
    doc["dims"] = rho.dims().dims();
    write_output(a.out, doc.dump(2) + "\n");
  }
  return 0;
}

struct ScanArgs {
  std::string family, bounds = "all", format = "csv", weights;
  std::optional<std::string> out;
  int n = 3, grid = 201, threads = 1;
  double tol = 1e-4;
  std::optional<double> from, to;
};

int cmd_scan(const ScanArgs& a) {
  const StateFamily family = make_family(a.family, a.n, parse_weights(a.weights));
  ScanOptions opt;
  opt.grid = a.grid;
  opt.tol = a.tol;
  opt.from = a.from;
  opt.to = a.to;
  opt.bounds = parse_bounds(a.bounds);
  opt.threads = a.threads;
  const ScanResult result = run_scan(family, opt);

  if (a.format == "json") {
    nlohmann::json doc = scan_summary_json(result);
    doc["param_values"] = result.grid;
    for (size_t b = 0; b < result.bound_ids.size(); ++b) {
      doc["values"][result.bound_ids[b]] = result.values[b];
      doc["raws"][result.bound_ids[b]] = result.raws[b];
    }
    write_output(a.out, doc.dump(2) + "\n");
  } else {
    write_output(a.out, scan_to_csv(result));
    if (a.out) {
      // summary goes to stdout when the table went to a file
      std::cout << scan_summary_json(result).dump(2) << "\n";
    } else {
      std::cerr << scan_summary_json(result).dump(2) << "\n";
    }
  }
  return 0;
}

int cmd_selftest(std::uint64_t seed, double perturbation) {
  SelftestOptions opt;
  opt.seed = seed;
  opt.injected_perturbation = perturbation;
  const auto results = run_selftest(opt);
  int passed = 0;
  for (const SuiteResult& r : results) {
    std::printf("%-26s %s%s%s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                r.passed ? "" : "  ", r.passed ? "" : r.detail.c_str());
    passed += r.passed;
  }
  std::printf("selftest: %s (%d/%zu)\n", all_passed(results) ? "PASS" : "FAIL", passed,
              results.size());
  return all_passed(results) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concurrence bounds for multipartite density matrices"};
  app.require_subcommand(1);

  ComputeArgs ca;
  CLI::App* compute = app.add_subcommand("compute", "Evaluate bounds for one state");
  compute->add_option("--state", ca.state_path, "State file (JSON)");
  compute->add_option("--family", ca.family,
                      "State family: w, ghz, gen-ghz, gen-w, w-noise, ghz-noise, dct-noise");
  compute->add_option("--n", ca.n, "Number of qubits for family states");
  compute->add_option("--p", [&ca](const std::vector<std::string>& v) {
    ca.p = std::stod(v[0]);
    return true;
  }, "Noise-family weight p");
  compute->add_option("--x", [&ca](const std::vector<std::string>& v) {
    ca.x = std::stod(v[0]);
    return true;
  }, "dct-noise weight x");
  compute->add_option("--theta", [&ca](const std::vector<std::string>& v) {
    ca.theta = std::stod(v[0]);
    return true;
  }, "gen-ghz angle");
  compute->add_option("--weights", ca.weights, "Comma list of family weights");
  compute->add_option("--bounds", ca.bounds, "Comma list of bound ids, or 'all'");
  compute->add_option("--format", ca.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  compute->add_option("--out", [&ca](const std::vector<std::string>& v) {
    ca.out = v[0];
    return true;
  }, "Output file (default stdout)");

  ScanArgs sa;
  CLI::App* scan = app.add_subcommand("scan", "Sweep a family and find detection thresholds");
  scan->add_option("--family", sa.family, "w-noise, ghz-noise, gen-ghz, gen-w, dct-noise")
      ->required();
  scan->add_option("--bounds", sa.bounds, "Comma list of bound ids, or 'all'");
  scan->add_option("--n", sa.n, "Number of qubits");
  scan->add_option("--weights", sa.weights, "dct-noise weights l0p,l0m,l1,l2,l3");
  scan->add_option("--grid", sa.grid, "Grid resolution");
  scan->add_option("--tol", sa.tol, "Bisection tolerance for thresholds");
  scan->add_option("--from", [&sa](const std::vector<std::string>& v) {
    sa.from = std::stod(v[0]);
    return true;
  }, "Range start (default per family)");
  scan->add_option("--to", [&sa](const std::vector<std::string>& v) {
    sa.to = std::stod(v[0]);
    return true;
  }, "Range end (default per family)");
  scan->add_option("--threads", sa.threads, "Worker threads for grid evaluation");
  scan->add_option("--format", sa.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--out", [&sa](const std::vector<std::string>& v) {
    sa.out = v[0];
    return true;
  }, "CSV output file");

  std::uint64_t seed = 20240901;
  double perturbation = 0.0;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the built-in validation suites");
  selftest->add_option("--seed", seed, "Base seed for the random suites");
  selftest->add_option("--inject-perturbation", perturbation,
                       "Scale error injected into a bound constant (sensitivity check)");

  try {
    app.parse(argc, argv);
    if (compute->parsed()) return cmd_compute(ca);
    if (scan->parsed()) return cmd_scan(sa);
    if (selftest->parsed()) return cmd_selftest(seed, perturbation);
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
