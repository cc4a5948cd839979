// Command-line front end for the qdc shared library. Parses a sweep
// configuration, runs it through the C interface and emits machine-readable
// tables (csv, plotdata or json) on stdout or into a file.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdc/qdc.h"

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Accepts plain decimals plus pi expressions: "pi", "-pi", "pi/8", "3pi/4",
// "0.5*pi", "-7pi/40". Throws std::invalid_argument on anything else.
double parse_angle(const std::string& text) {
  std::string s;
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (s.empty()) throw std::invalid_argument("empty angle");

  auto to_number = [](const std::string& token) {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("trailing characters in angle");
    return value;
  };

  const std::size_t pos = s.find("pi");
  if (pos == std::string::npos) return to_number(s);

  std::string head = s.substr(0, pos);
  std::string tail = s.substr(pos + 2);

  double coefficient = 1.0;
  if (!head.empty() && head.back() == '*') head.pop_back();
  if (head == "-") {
    coefficient = -1.0;
  } else if (!head.empty() && head != "+") {
    coefficient = to_number(head);
  }

  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw std::invalid_argument("expected '/' after pi");
    divisor = to_number(tail.substr(1));
    if (divisor == 0.0) throw std::invalid_argument("division by zero in angle");
  }
  return coefficient * kPi / divisor;
}

struct ResultHandle {
  qdc_result* ptr = nullptr;
  ~ResultHandle() { qdc_result_free(ptr); }
};

struct ConfigHandle {
  qdc_config* ptr = nullptr;
  ConfigHandle() : ptr(qdc_config_new()) {}
  ~ConfigHandle() { qdc_config_free(ptr); }
};

[[noreturn]] void die(const char* where, qdc_status status) {
  std::fprintf(stderr, "qdc: %s: %s (%s)\n", where, qdc_status_message(status),
               qdc_last_error());
  std::exit(1);
}

void check(const char* where, qdc_status status) {
  if (status != QDC_OK) die(where, status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-by-event delayed-choice interferometer simulator"};

  std::string alpha_text = "0";
  bool all_alphas = false;
  std::string mode_text = "wheeler";
  int phi_points = QDC_DEFAULT_PHI_POINTS;
  std::uint64_t events = QDC_DEFAULT_EVENTS;
  std::string delta0_text = "pi/8";
  std::string delta1_text = "-7pi/40";
  double gamma = QDC_DEFAULT_GAMMA;
  std::uint64_t seed = QDC_DEFAULT_SEED;
  int jobs = 0;
  std::string output = "-";
  std::string format_text = "csv";
  bool check_flag = false;
  double tolerance = 0.03;

  auto* alpha_opt = app.add_option("--alpha", alpha_text,
                                   "Preparation angle in radians (accepts pi expressions, e.g. pi/8)");
  app.add_flag("--all-alphas", all_alphas,
               "Sweep alpha = l*pi/8 for l = 0..7 in both modes");
  app.add_option("--mode", mode_text, "wheeler, quantum or both")
      ->check(CLI::IsMember({"wheeler", "quantum", "both"}))
      ->capture_default_str();
  app.add_option("--phi-points", phi_points, "Evenly spaced phase points on [0, 2*pi)")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  app.add_option("--events", events, "Messengers per sweep point")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40))
      ->capture_default_str();
  app.add_option("--delta0", delta0_text, "Setup phase delta0 in radians")->capture_default_str();
  app.add_option("--delta1", delta1_text, "Setup phase delta1 in radians")->capture_default_str();
  app.add_option("--gamma", gamma, "Adaptive-unit memory constant in [0, 1)")
      ->check(CLI::Range(0.0, 0.9999999))
      ->capture_default_str();
  app.add_option("--seed", seed, "Base seed of the run")->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads (0 = all processors)")
      ->check(CLI::Range(0, 4096))
      ->capture_default_str();
  app.add_option("--output", output, "Output path ('-' = stdout)")->capture_default_str();
  app.add_option("--format", format_text, "csv, plotdata or json")
      ->check(CLI::IsMember({"csv", "plotdata", "json"}))
      ->capture_default_str();
  app.add_flag("--check", check_flag,
               "Exit nonzero unless max |f1_sim - f1_theory| <= tolerance");
  app.add_option("--tolerance", tolerance, "Tolerance used by --check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  double alpha = 0.0;
  double delta0 = 0.0;
  double delta1 = 0.0;
  try {
    alpha = parse_angle(alpha_text);
    delta0 = parse_angle(delta0_text);
    delta1 = parse_angle(delta1_text);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qdc: bad angle: %s\n", e.what());
    return 2;
  }
  if (all_alphas && alpha_opt->count() > 0) {
    std::fprintf(stderr, "qdc: --alpha and --all-alphas are mutually exclusive\n");
    return 2;
  }

  // expand into (alpha, mode) runs
  std::vector<std::pair<double, qdc_mode>> runs;
  if (all_alphas) {
    for (int l = 0; l < 8; ++l) {
      const double a = static_cast<double>(l) * kPi / 8.0;
      runs.push_back({a, QDC_MODE_WHEELER});
      runs.push_back({a, QDC_MODE_QUANTUM});
    }
  } else if (mode_text == "both") {
    runs.push_back({alpha, QDC_MODE_WHEELER});
    runs.push_back({alpha, QDC_MODE_QUANTUM});
  } else {
    runs.push_back({alpha, mode_text == "quantum" ? QDC_MODE_QUANTUM : QDC_MODE_WHEELER});
  }

  ResultHandle combined;
  for (const auto& [run_alpha, run_mode] : runs) {
    ConfigHandle config;
    if (config.ptr == nullptr) {
      std::fprintf(stderr, "qdc: out of memory\n");
      return 1;
    }
    check("set alpha", qdc_config_set_alpha(config.ptr, run_alpha));
    check("set mode", qdc_config_set_mode(config.ptr, run_mode));
    check("set phi grid", qdc_config_set_phi_count(config.ptr, phi_points));
    check("set events", qdc_config_set_events(config.ptr, events));
    check("set deltas", qdc_config_set_deltas(config.ptr, delta0, delta1));
    check("set gamma", qdc_config_set_gamma(config.ptr, gamma));
    check("set seed", qdc_config_set_seed(config.ptr, seed));
    check("set jobs", qdc_config_set_jobs(config.ptr, jobs));

    qdc_result* result = nullptr;
    check("run sweep", qdc_run_sweep(config.ptr, &result));
    if (combined.ptr == nullptr) {
      combined.ptr = result;
    } else {
      const qdc_status status = qdc_result_merge(combined.ptr, result);
      qdc_result_free(result);
      check("merge results", status);
    }
  }

  const qdc_format format = format_text == "plotdata" ? QDC_FORMAT_PLOTDATA
                            : format_text == "json"   ? QDC_FORMAT_JSON
                                                      : QDC_FORMAT_CSV;
  if (output == "-") {
    char* text = nullptr;
    check("render", qdc_result_render(combined.ptr, format, &text));
    std::fputs(text, stdout);
    qdc_string_free(text);
  } else {
    check("write output", qdc_result_write(combined.ptr, format, output.c_str()));
  }

  if (check_flag) {
    double max_abs = 0.0;
    double rms = 0.0;
    check("deviation", qdc_result_deviation(combined.ptr, &max_abs, &rms));
    const bool ok = max_abs <= tolerance;
    std::fprintf(stderr, "check: max|f1_sim - f1_theory| = %.6f, rms = %.6f, tolerance = %.6f: %s\n",
                 max_abs, rms, tolerance, ok ? "ok" : "FAIL");
    return ok ? 0 : 1;
  }
  return 0;
}
