#pragma once

#include <string>

#include "qdc/experiment.hpp"

namespace qdc {

enum class OutputFormat { Csv, PlotData, Json };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV table: `#`-prefixed metadata comment lines, then the header
/// `phi,alpha,mode,n0,n1,absorbed,f1_sim,f1_theory` and one row per point.
/// Floating-point columns carry 10 significant digits; lines end in '\n'.
std::string render_csv(const SweepResult& result);

/// Plot-ready blocks, one per (alpha, mode) pair in row order, separated by a
/// blank line. Each block lists the simulated points as `phi f1_sim f1_theory`
/// followed by the closed-form curve sampled on a dense phi grid.
std::string render_plotdata(const SweepResult& result, int theory_points = 500);

/// JSON object with a `meta` section and a `rows` array.
std::string render_json(const SweepResult& result);

std::string render(const SweepResult& result, OutputFormat format);

/// Writes `contents` to `path`; throws IoError when the file cannot be
/// written.
void write_file(const std::string& path, const std::string& contents);

}  // namespace qdc
