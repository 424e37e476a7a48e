#include "qconcur/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qconcur {
namespace {

using nlohmann::json;

std::vector<Complex> parse_complex_list(const json& arr, const char* what) {
  if (!arr.is_array()) throw parse_error(std::string(what) + " must be an array");
  std::vector<Complex> out;
  out.reserve(arr.size());
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw parse_error(std::string(what) + " entries must be [re, im] pairs");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

json complex_list(const Complex* data, long n) {
  json arr = json::array();
  for (long i = 0; i < n; ++i) {
    arr.push_back({data[i].real(), data[i].imag()});
  }
  return arr;
}

json witness_json(const Bound& b) {
  if (const auto* cut = std::get_if<Bipartition>(&b.witness)) {
    return {{"type", "bipartition"},
            {"part1", cut->part1()},
            {"part2", cut->part2()},
            {"text", cut->to_string()}};
  }
  if (const auto* spec = std::get_if<GptSpec>(&b.witness)) {
    return {{"type", "gpt"},
            {"row_transposed", spec->row_transposed},
            {"col_transposed", spec->col_transposed},
            {"text", spec->to_string()}};
  }
  return nullptr;
}

std::string witness_text(const Bound& b) {
  if (const auto* cut = std::get_if<Bipartition>(&b.witness)) return cut->to_string();
  if (const auto* spec = std::get_if<GptSpec>(&b.witness)) return spec->to_string();
  return "";
}

}  // namespace

StateFile parse_state_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("state file: ") + e.what());
  }
  if (!doc.is_object()) throw parse_error("state file: top level must be an object");
  if (!doc.contains("dims")) throw parse_error("state file: missing 'dims'");
  if (!doc["dims"].is_array() || doc["dims"].empty()) {
    throw parse_error("state file: 'dims' must be a nonempty array");
  }
  std::vector<int> dims;
  for (const json& d : doc["dims"]) {
    if (!d.is_number_integer()) throw parse_error("state file: dims must be integers");
    dims.push_back(d.get<int>());
  }

  const bool has_matrix = doc.contains("matrix");
  const bool has_vector = doc.contains("vector");
  if (has_matrix == has_vector) {
    throw parse_error("state file: exactly one of 'matrix' or 'vector' is required");
  }

  StateFile sf;
  try {
    sf.dims = DimSpec(dims);
  } catch (const validation_error& e) {
    throw parse_error(std::string("state file: ") + e.what());
  }
  const long D = sf.dims.total_dim();

  if (has_matrix) {
    const auto entries = parse_complex_list(doc["matrix"], "'matrix'");
    if (static_cast<long>(entries.size()) != D * D) {
      throw parse_error("state file: 'matrix' must hold " + std::to_string(D * D) +
                        " entries (row-major)");
    }
    Matrix m(D, D);
    for (long r = 0; r < D; ++r) {
      for (long c = 0; c < D; ++c) m(r, c) = entries[r * D + c];
    }
    sf.matrix = std::move(m);
  } else {
    const auto entries = parse_complex_list(doc["vector"], "'vector'");
    if (static_cast<long>(entries.size()) != D) {
      throw parse_error("state file: 'vector' must hold " + std::to_string(D) +
                        " entries");
    }
    Vector v(D);
    for (long i = 0; i < D; ++i) v(i) = entries[i];
    sf.vector = std::move(v);
  }
  return sf;
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open state file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str());
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
  const long D = rho.side();
  std::vector<Complex> row_major(D * D);
  for (long r = 0; r < D; ++r) {
    for (long c = 0; c < D; ++c) row_major[r * D + c] = rho.mat()(r, c);
  }
  return {{"dims", rho.dims().dims()},
          {"matrix", complex_list(row_major.data(), D * D)}};
}

nlohmann::json state_to_json(const PureState& psi) {
  return {{"dims", psi.dims().dims()},
          {"vector", complex_list(psi.amp().data(), psi.side())}};
}

void write_state_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot write state file '" + path + "'");
  out << state_to_json(rho).dump(2) << '\n';
}

void write_state_file(const std::string& path, const PureState& psi) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot write state file '" + path + "'");
  out << state_to_json(psi).dump(2) << '\n';
}

DensityMatrix to_density(const StateFile& sf, const ValidationConfig& cfg) {
  if (sf.matrix) return DensityMatrix(sf.dims, *sf.matrix, cfg);
  if (sf.vector) return projector(PureState(sf.dims, *sf.vector));
  throw parse_error("state file holds neither a matrix nor a vector");
}

std::string bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    case BoundKind::bipartite_lower: return "bipartite_lower";
  }
  return "?";
}

nlohmann::json report_to_json(const BoundReport& report) {
  json bounds = json::object();
  for (const std::string& id : all_bound_ids()) {
    const auto it = report.entries.find(id);
    if (it == report.entries.end()) continue;
    const Bound& b = it->second;
    json e = {{"value", b.value},
              {"raw", b.raw},
              {"clamped", b.clamped},
              {"kind", bound_kind_name(b.kind)},
              {"witness", witness_json(b)}};
    if (!b.note.empty()) e["note"] = b.note;
    bounds[id] = std::move(e);
  }
  json out = {{"bounds", std::move(bounds)}};
  out["best_lower"] = report.best_lower ? json(*report.best_lower) : json(nullptr);
  out["best_upper"] = report.best_upper ? json(*report.best_upper) : json(nullptr);
  return out;
}

std::string report_to_csv(const BoundReport& report) {
  std::ostringstream os;
  os << "bound,value,raw,clamped,kind,witness,note\n";
  for (const std::string& id : all_bound_ids()) {
    const auto it = report.entries.find(id);
    if (it == report.entries.end()) continue;
    const Bound& b = it->second;
    os << id << ',' << format_double(b.value) << ',' << format_double(b.raw) << ','
       << (b.clamped ? 1 : 0) << ',' << bound_kind_name(b.kind) << ",\""
       << witness_text(b) << "\",\"" << b.note << "\"\n";
  }
  return os.str();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qconcur
