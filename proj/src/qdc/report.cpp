#include "qdc/report.hpp"

#include <cstdio>
#include <fstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qdc/version.hpp"

namespace qdc {

namespace {

std::string g10(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string meta_comment(const SweepMeta& meta) {
  std::string out;
  out += "# qdc ";
  out += kVersion;
  out += "\n# seed: " + std::to_string(meta.seed);
  out += "\n# gamma: " + g10(meta.gamma);
  out += "\n# events: " + std::to_string(meta.events);
  out += "\n# delta0: " + g10(meta.delta0);
  out += "\n# delta1: " + g10(meta.delta1);
  out += "\n";
  return out;
}

}  // namespace

std::string render_csv(const SweepResult& result) {
  std::string out = meta_comment(result.meta);
  out += "phi,alpha,mode,n0,n1,absorbed,f1_sim,f1_theory\n";
  for (const SweepRow& row : result.rows) {
    out += g10(row.phi);
    out += ',';
    out += g10(row.alpha);
    out += ',';
    out += to_string(row.mode);
    out += ',';
    out += std::to_string(row.n0);
    out += ',';
    out += std::to_string(row.n1);
    out += ',';
    out += std::to_string(row.absorbed);
    out += ',';
    out += g10(row.f1_sim);
    out += ',';
    out += g10(row.f1_theory);
    out += '\n';
  }
  return out;
}

std::string render_plotdata(const SweepResult& result, int theory_points) {
  std::string out = meta_comment(result.meta);

  // group rows by (alpha, mode) in order of first appearance
  std::vector<std::pair<double, Mode>> blocks;
  for (const SweepRow& row : result.rows) {
    const std::pair<double, Mode> key{row.alpha, row.mode};
    bool seen = false;
    for (const auto& b : blocks) seen = seen || (b == key);
    if (!seen) blocks.push_back(key);
  }

  for (const auto& [alpha, mode] : blocks) {
    out += "\n# alpha: " + g10(alpha) + "  mode: " + std::string(to_string(mode));
    out += "\n# columns: phi f1_sim f1_theory\n";
    for (const SweepRow& row : result.rows) {
      if (row.alpha != alpha || row.mode != mode) continue;
      out += g10(row.phi) + " " + g10(row.f1_sim) + " " + g10(row.f1_theory) + "\n";
    }
    out += "# columns: phi f1_theory (dense theory grid)\n";
    for (int j = 0; j < theory_points; ++j) {
      const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(theory_points);
      const double f1 = theory_fraction_d1(
          mode, {alpha, phi, result.meta.delta0, result.meta.delta1});
      out += g10(phi) + " " + g10(f1) + "\n";
    }
  }
  return out;
}

std::string render_json(const SweepResult& result) {
  nlohmann::json j;
  j["meta"] = {{"version", kVersion},      {"seed", result.meta.seed},
               {"gamma", result.meta.gamma}, {"events", result.meta.events},
               {"delta0", result.meta.delta0}, {"delta1", result.meta.delta1}};
  j["rows"] = nlohmann::json::array();
  for (const SweepRow& row : result.rows) {
    j["rows"].push_back({{"phi", row.phi},
                         {"alpha", row.alpha},
                         {"mode", std::string(to_string(row.mode))},
                         {"n0", row.n0},
                         {"n1", row.n1},
                         {"absorbed", row.absorbed},
                         {"f1_sim", row.f1_sim},
                         {"f1_theory", row.f1_theory}});
  }
  return j.dump(2) + "\n";
}

std::string render(const SweepResult& result, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return render_csv(result);
    case OutputFormat::PlotData: return render_plotdata(result);
    case OutputFormat::Json: return render_json(result);
  }
  return {};
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace qdc
