#include "qdc/qdc.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "qdc/experiment.hpp"
#include "qdc/report.hpp"
#include "qdc/version.hpp"

struct qdc_config {
  qdc::ExperimentConfig cfg;
};

struct qdc_result {
  qdc::SweepResult res;
};

namespace {

thread_local std::string g_last_error;

qdc_status fail(qdc_status status, const char* detail) {
  g_last_error = detail;
  return status;
}

qdc_status fail(qdc_status status, const std::string& detail) {
  g_last_error = detail;
  return status;
}

// Runs `fn` and maps thrown exceptions onto status codes.
template <typename Fn>
qdc_status guarded(Fn&& fn) {
  try {
    fn();
    return QDC_OK;
  } catch (const qdc::TopologyError& e) {
    return fail(QDC_ERROR_TOPOLOGY, e.what());
  } catch (const qdc::AllAbsorbedError& e) {
    return fail(QDC_ERROR_ALL_ABSORBED, e.what());
  } catch (const qdc::IoError& e) {
    return fail(QDC_ERROR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(QDC_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(QDC_ERROR_INTERNAL, "unknown error");
  }
}

qdc::OutputFormat to_format(qdc_format format) {
  switch (format) {
    case QDC_FORMAT_CSV: return qdc::OutputFormat::Csv;
    case QDC_FORMAT_PLOTDATA: return qdc::OutputFormat::PlotData;
    case QDC_FORMAT_JSON: return qdc::OutputFormat::Json;
  }
  throw std::invalid_argument("unknown output format");
}

}  // namespace

extern "C" {

const char* qdc_version(void) { return qdc::kVersion; }

const char* qdc_status_message(qdc_status status) {
  switch (status) {
    case QDC_OK: return "ok";
    case QDC_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case QDC_ERROR_TOPOLOGY: return "topology error";
    case QDC_ERROR_ALL_ABSORBED: return "all events absorbed";
    case QDC_ERROR_IO: return "i/o error";
    case QDC_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qdc_last_error(void) { return g_last_error.c_str(); }

qdc_config* qdc_config_new(void) {
  return new (std::nothrow) qdc_config{};
}

void qdc_config_free(qdc_config* config) { delete config; }

qdc_status qdc_config_set_alpha(qdc_config* config, double alpha) {
  if (config == nullptr) return fail(QDC_ERROR_INVALID_ARGUMENT, "null config");
  if (!std::isfinite(alpha)) return fail(QDC_ERROR_INVALID_ARGUMENT, "alpha must be finite");
  config->cfg.alpha = alpha;
  return QDC_OK;
}

qdc_status qdc_config_set_mode(qdc_config* config, qdc_mode mode) {
  if (config == nullptr) return fail(QDC_ERROR_INVALID_ARGUMENT, "null config");
  if (mode != QDC_MODE_WHEELER && mode != QDC_MODE_QUANTUM) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "unknown mode");
  }
  config->cfg.mode = mode == QDC_MODE_WHEELER ? qdc::Mode::Wheeler : qdc::Mode::QuantumChoice;
  return QDC_OK;
}

qdc_status qdc_config_set_phi_count(qdc_config* config, int32_t count) {
  if (config == nullptr) return fail(QDC_ERROR_INVALID_ARGUMENT, "null config");
  if (count < 1) return fail(QDC_ERROR_INVALID_ARGUMENT, "phi count must be >= 1");
  config->cfg.phi_values = qdc::default_phi_grid(count);
  return QDC_OK;
}

qdc_status qdc_config_set_phi_values(qdc_config* config, const double* values,
                                     size_t count) {
  if (config == nullptr || values == nullptr || count == 0) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "need a non-empty phi list");
  }
  for (size_t i = 0; i < count; ++i) {
    if (!std::isfinite(values[i])) {
      return fail(QDC_ERROR_INVALID_ARGUMENT, "phi values must be finite");
    }
  }
  config->cfg.phi_values.assign(values, values + count);
  return QDC_OK;
}

qdc_status qdc_config_set_events(qdc_config* config, uint64_t events) {
  if (config == nullptr) return fail(QDC_ERROR_INVALID_ARGUMENT, "null config");
  if (events < 1) return fail(QDC_ERROR_INVALID_ARGUMENT, "events must be >= 1");
  config->cfg.events_per_point = events;
  return QDC_OK;
}

qdc_status qdc_config_set_deltas(qdc_config* config, double delta0, double delta1) {
  if (config == nullptr) return fail(QDC_ERROR_INVALID_ARGUMENT, "null config");
  if (!std::isfinite(delta0) || !std::isfinite(delta1)) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "deltas must be finite");
  }
  config->cfg.delta0 = delta0;
  config->cfg.delta1 = delta1;
  return QDC_OK;
}

qdc_status qdc_config_set_gamma(qdc_config* config, double gamma) {
  if (config == nullptr) return fail(QDC_ERROR_INVALID_ARGUMENT, "null config");
  if (!(gamma >= 0.0) || !(gamma < 1.0)) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "gamma must lie in [0, 1)");
  }
  config->cfg.gamma.value = gamma;
  return QDC_OK;
}

qdc_status qdc_config_set_seed(qdc_config* config, uint64_t seed) {
  if (config == nullptr) return fail(QDC_ERROR_INVALID_ARGUMENT, "null config");
  config->cfg.seed = seed;
  return QDC_OK;
}

qdc_status qdc_config_set_jobs(qdc_config* config, int32_t jobs) {
  if (config == nullptr) return fail(QDC_ERROR_INVALID_ARGUMENT, "null config");
  if (jobs < 0) return fail(QDC_ERROR_INVALID_ARGUMENT, "jobs must be >= 0");
  config->cfg.jobs = jobs;
  return QDC_OK;
}

qdc_status qdc_run_sweep(const qdc_config* config, qdc_result** out) {
  if (config == nullptr || out == nullptr) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "null config or output pointer");
  }
  *out = nullptr;
  return guarded([&] {
    auto result = std::make_unique<qdc_result>();
    result->res = qdc::run_sweep(config->cfg);
    *out = result.release();
  });
}

void qdc_result_free(qdc_result* result) { delete result; }

size_t qdc_result_size(const qdc_result* result) {
  return result == nullptr ? 0 : result->res.rows.size();
}

qdc_status qdc_result_row(const qdc_result* result, size_t idx, qdc_row* out) {
  if (result == nullptr || out == nullptr) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "null result or output pointer");
  }
  if (idx >= result->res.rows.size()) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "row index out of range");
  }
  const qdc::SweepRow& row = result->res.rows[idx];
  out->phi = row.phi;
  out->alpha = row.alpha;
  out->mode = row.mode == qdc::Mode::Wheeler ? QDC_MODE_WHEELER : QDC_MODE_QUANTUM;
  out->n0 = row.n0;
  out->n1 = row.n1;
  out->absorbed = row.absorbed;
  out->f1_sim = row.f1_sim;
  out->f1_theory = row.f1_theory;
  return QDC_OK;
}

qdc_status qdc_result_deviation(const qdc_result* result, double* max_abs, double* rms) {
  if (result == nullptr || max_abs == nullptr || rms == nullptr) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "null result or output pointer");
  }
  const qdc::DeviationStats stats = qdc::compare_to_theory(result->res);
  *max_abs = stats.max_abs;
  *rms = stats.rms;
  return QDC_OK;
}

qdc_status qdc_result_merge(qdc_result* dst, const qdc_result* src) {
  if (dst == nullptr || src == nullptr) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "null result");
  }
  const qdc::SweepMeta& a = dst->res.meta;
  const qdc::SweepMeta& b = src->res.meta;
  if (a.seed != b.seed || a.gamma != b.gamma || a.events != b.events ||
      a.delta0 != b.delta0 || a.delta1 != b.delta1) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "results have incompatible metadata");
  }
  dst->res.rows.insert(dst->res.rows.end(), src->res.rows.begin(), src->res.rows.end());
  return QDC_OK;
}

qdc_status qdc_result_render(const qdc_result* result, qdc_format format, char** out) {
  if (result == nullptr || out == nullptr) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "null result or output pointer");
  }
  *out = nullptr;
  return guarded([&] {
    const std::string text = qdc::render(result->res, to_format(format));
    char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
    if (buffer == nullptr) throw std::bad_alloc();
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out = buffer;
  });
}

qdc_status qdc_result_write(const qdc_result* result, qdc_format format, const char* path) {
  if (result == nullptr || path == nullptr) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "null result or path");
  }
  return guarded([&] {
    qdc::write_file(path, qdc::render(result->res, to_format(format)));
  });
}

void qdc_string_free(char* text) { std::free(text); }

qdc_status qdc_theory_wheeler(double alpha, double phi, double* i0, double* i1) {
  if (i0 == nullptr || i1 == nullptr) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "null output pointer");
  }
  return guarded([&] {
    const qdc::Intensities i = qdc::wheeler_intensities({alpha, phi, 0.0, 0.0});
    *i0 = i.i0;
    *i1 = i.i1;
  });
}

qdc_status qdc_theory_quantum(double alpha, double phi, double delta0,
                              double delta1, double* i0, double* i1) {
  if (i0 == nullptr || i1 == nullptr) {
    return fail(QDC_ERROR_INVALID_ARGUMENT, "null output pointer");
  }
  return guarded([&] {
    const qdc::Intensities i = qdc::quantum_intensities({alpha, phi, delta0, delta1});
    *i0 = i.i0;
    *i1 = i.i1;
  });
}

qdc_status qdc_theory_fraction_d1(double i0, double i1, double* f1) {
  if (f1 == nullptr) return fail(QDC_ERROR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] { *f1 = qdc::normalized_fraction_d1(i0, i1); });
}

}  // extern "C"
