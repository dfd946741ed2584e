#include "lrlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace lrlab {

using nlohmann::json;

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += cells[k];
    }
    out += '\n';
  };
  append_row(header);
  for (const auto& r : rows) {
    if (r.size() != header.size()) throw Error("csv row width does not match the header");
    append_row(r);
  }
  return out;
}

std::string to_json_text(const json& doc) { return doc.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw Error("failed writing " + path.string());
}

json to_json(const BoundConstants& c) {
  json j;
  j["K"] = c.K;
  j["Q"] = c.Q;
  j["nu"] = c.nu;
  j["R"] = c.R;
  j["R_definition"] = kRadiusDefinition;
  j["gamma"] = c.gamma;
  j["xi"] = c.xi;
  j["lambda"] = c.lambda;
  j["M"] = c.M;
  j["Mtilde"] = c.Mtilde;
  j["Mtildetilde"] = c.Mtildetilde;
  j["h0"] = c.h0;
  j["h1"] = c.h1;
  j["zero_velocity"] = c.zero_velocity;
  j["norm_mode"] = to_string(c.norm_mode);
  return j;
}

json to_json(const ValidationReport& r) {
  json j;
  j["passed"] = r.passed;
  j["locality_radius"] = r.locality_radius;
  json list = json::array();
  for (const Violation& v : r.violations) {
    json e;
    e["kind"] = v.kind;
    e["value"] = v.value;
    e["message"] = v.message;
    json ids = json::array();
    for (const TermId& t : v.terms) ids.push_back({{"family", t.family}, {"index", t.index}});
    e["terms"] = ids;
    list.push_back(e);
  }
  j["violations"] = list;
  return j;
}

json to_json(const VelocityEstimate& v) {
  json j;
  j["threshold"] = v.threshold;
  j["v_emp"] = v.v_emp;
  j["intercept"] = v.intercept;
  j["residual"] = v.residual;
  json crossings = json::array();
  for (const auto& [d, t] : v.crossings) crossings.push_back({{"d", d}, {"t", t}});
  j["crossings"] = crossings;
  return j;
}

json to_json(const VerificationReport& r) {
  json j;
  j["method"] = to_string(r.method);
  j["passed"] = r.passed;
  j["slack"] = r.slack;
  j["points"] = r.entries.size();
  j["min_margin"] = r.entries.empty() ? json(nullptr) : json(r.min_margin);
  j["excluded_d"] = r.excluded_d;
  json failures = json::array();
  for (const MarginEntry& e : r.entries) {
    if (e.margin >= -r.slack) continue;
    failures.push_back(
        {{"d", e.d}, {"t", e.t}, {"measured", e.measured}, {"bound", e.bound}, {"margin", e.margin}});
  }
  j["failures"] = failures;
  return j;
}

std::string chains_csv(const std::vector<ChainCountTable>& tables, const BoundConstants& consts) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& t : tables) {
    for (int n = 0; n <= t.n_max(); ++n) {
      const auto k = static_cast<std::size_t>(n);
      rows.push_back({std::to_string(t.d), std::to_string(n), t.counts[k].str(),
                      format_real(closed_form_chain_bound(consts, n, t.d)), t.weighted[k].str()});
    }
  }
  return to_csv({"d", "n", "c_n", "closed_form", "c_n_weighted"}, rows);
}

std::string bound_csv(const std::vector<BoundCurve>& curves) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : curves) {
    for (const auto& [t, b] : c.samples) {
      rows.push_back({std::to_string(c.d), format_real(t), format_real(b)});
    }
  }
  return to_csv({"d", "t", "B"}, rows);
}

std::string sweep_csv(const SimulationSweep& sweep) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t q = 0; q < sweep.norms.size(); ++q) {
    for (std::size_t k = 0; k < sweep.t.size(); ++k) {
      rows.push_back({std::to_string(sweep.d[q]), format_real(sweep.t[k]),
                      format_real(sweep.norms[q][k])});
    }
  }
  return to_csv({"d", "t", "norm"}, rows);
}

std::string margins_csv(const std::vector<VerificationReport>& reports) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    for (const MarginEntry& e : r.entries) {
      rows.push_back({to_string(r.method), std::to_string(e.d), format_real(e.t),
                      format_real(e.measured), format_real(e.bound), format_real(e.margin)});
    }
  }
  return to_csv({"method", "d", "t", "measured", "bound", "margin"}, rows);
}

}  // namespace lrlab
