#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qconcur/bounds.hpp"
#include "qconcur/states.hpp"

namespace qconcur {

struct ScanOptions {
  int grid = 201;
  double tol = 1e-4;  // absolute bisection tolerance on the parameter
  std::optional<double> from, to;
  std::vector<std::string> bounds;
  ToleranceConfig tolcfg;
  int threads = 1;
};

struct ThresholdInfo {
  double value = 0.0;
  int iterations = 0;
  double bracket_halfwidth = 0.0;
};

/// A parameter sweep of one or more bounds over a state family. A detected
/// threshold brackets a sign change of the raw (unclamped) bound value.
struct ScanResult {
  std::string family;
  std::string param_name;
  std::vector<double> grid;
  std::vector<std::string> bound_ids;
  std::vector<std::vector<double>> values;  // [bound][grid point], clamped
  std::vector<std::vector<double>> raws;    // [bound][grid point]
  std::map<std::string, ThresholdInfo> thresholds;
};

ScanResult run_scan(const StateFamily& family, const ScanOptions& opt);

/// CSV columns: parameter, then value and raw per bound.
std::string scan_to_csv(const ScanResult& result);

nlohmann::json scan_summary_json(const ScanResult& result);

}  // namespace qconcur
