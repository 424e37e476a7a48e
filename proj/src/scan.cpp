#include "qconcur/scan.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "qconcur/io.hpp"

namespace qconcur {
namespace {

std::vector<double> evaluate_point(const StateFamily& family, double param,
                                   const std::vector<std::string>& bounds,
                                   const ToleranceConfig& cfg, bool raw) {
  const BoundReport report = full_report(family.make(param), cfg, bounds);
  std::vector<double> out;
  out.reserve(bounds.size());
  for (const std::string& id : bounds) {
    const auto it = report.entries.find(id);
    if (it == report.entries.end()) {
      throw validation_error("scan: bound '" + id + "' is not applicable to family '" +
                             family.id + "'");
    }
    out.push_back(raw ? it->second.raw : it->second.value);
  }
  return out;
}

}  // namespace

ScanResult run_scan(const StateFamily& family, const ScanOptions& opt) {
  if (opt.grid < 2) throw validation_error("scan: grid must have at least 2 points");
  if (opt.tol <= 0) throw validation_error("scan: tol must be positive");
  if (family.param_name.empty()) {
    throw validation_error("scan: family '" + family.id + "' has no scan parameter");
  }
  std::vector<std::string> bounds = opt.bounds;
  if (bounds.empty() || (bounds.size() == 1 && bounds[0] == "all")) {
    bounds = all_bound_ids();
  }

  ScanResult res;
  res.family = family.id;
  res.param_name = family.param_name;
  res.bound_ids = bounds;

  const double from = opt.from.value_or(family.default_from);
  const double to = opt.to.value_or(family.default_to);
  if (!(to > from)) throw validation_error("scan: range must satisfy from < to");

  res.grid.resize(opt.grid);
  for (int i = 0; i < opt.grid; ++i) {
    res.grid[i] = from + (to - from) * i / (opt.grid - 1);
  }

  res.values.assign(bounds.size(), std::vector<double>(opt.grid));
  res.raws.assign(bounds.size(), std::vector<double>(opt.grid));

  auto worker = [&](int first, int stride) {
    for (int i = first; i < opt.grid; i += stride) {
      const BoundReport report = full_report(family.make(res.grid[i]), opt.tolcfg, bounds);
      for (size_t b = 0; b < bounds.size(); ++b) {
        const auto it = report.entries.find(bounds[b]);
        if (it == report.entries.end()) {
          throw validation_error("scan: bound '" + bounds[b] +
                                 "' is not applicable to family '" + family.id + "'");
        }
        res.values[b][i] = it->second.value;
        res.raws[b][i] = it->second.raw;
      }
    }
  };

  const int nthreads = std::max(1, std::min(opt.threads, opt.grid));
  if (nthreads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nthreads);
    for (int w = 0; w < nthreads; ++w) {
      pool.emplace_back([&, w] {
        try {
          worker(w, nthreads);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  // threshold: first transition from a strictly negative region to positive
  for (size_t b = 0; b < bounds.size(); ++b) {
    const auto& raw = res.raws[b];
    bool seen_negative = false;
    for (int i = 0; i < opt.grid; ++i) {
      if (raw[i] < 0.0) seen_negative = true;
      if (i > 0 && raw[i] > 0.0 && raw[i - 1] <= 0.0 && seen_negative) {
        double lo = res.grid[i - 1], hi = res.grid[i];
        int iterations = 0;
        std::vector<std::string> one = {bounds[b]};
        while (hi - lo > opt.tol) {
          const double mid = 0.5 * (lo + hi);
          const double v = evaluate_point(family, mid, one, opt.tolcfg, /*raw=*/true)[0];
          (v > 0.0 ? hi : lo) = mid;
          ++iterations;
        }
        res.thresholds[bounds[b]] =
            ThresholdInfo{0.5 * (lo + hi), iterations, 0.5 * (hi - lo)};
        break;
      }
    }
  }
  return res;
}

std::string scan_to_csv(const ScanResult& result) {
  std::ostringstream os;
  os << result.param_name;
  for (const std::string& id : result.bound_ids) {
    os << ',' << id << ',' << id << "_raw";
  }
  os << '\n';
  for (size_t i = 0; i < result.grid.size(); ++i) {
    os << format_double(result.grid[i]);
    for (size_t b = 0; b < result.bound_ids.size(); ++b) {
      os << ',' << format_double(result.values[b][i]) << ','
         << format_double(result.raws[b][i]);
    }
    os << '\n';
  }
  return os.str();
}

nlohmann::json scan_summary_json(const ScanResult& result) {
  nlohmann::json thresholds = nlohmann::json::object();
  for (const std::string& id : result.bound_ids) {
    const auto it = result.thresholds.find(id);
    if (it == result.thresholds.end()) {
      thresholds[id] = nullptr;
    } else {
      thresholds[id] = {{"threshold", it->second.value},
                        {"iterations", it->second.iterations},
                        {"bracket_halfwidth", it->second.bracket_halfwidth}};
    }
  }
  return {{"family", result.family},
          {"parameter", result.param_name},
          {"from", result.grid.front()},
          {"to", result.grid.back()},
          {"grid", result.grid.size()},
          {"thresholds", std::move(thresholds)}};
}

}  // namespace qconcur
