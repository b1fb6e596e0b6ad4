#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace flexc {

// Raw single-channel recording.
struct SignalTrace {
  std::string channel_name;
  double sample_rate_hz = 0.0;
  std::vector<double> samples;
};

// Labeled feature matrix. Feature values are expected to lie in [0, 1]
// once a normalizer has been applied; the quantizer relies on that range.
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<double> x;  // row-major, n_samples * n_features
  std::vector<int> y;
  int n_classes = 0;

  size_t n_samples() const { return y.size(); }
  size_t n_features() const { return feature_names.size(); }
  double at(size_t row, size_t col) const { return x[row * n_features() + col]; }
  double& at(size_t row, size_t col) { return x[row * n_features() + col]; }

  // Column subset in the given order (used after feature selection).
  Dataset select_columns(const std::vector<int>& cols) const;
};

// Per-feature train min/max for [0, 1] scaling.
struct NormalizationParams {
  std::vector<double> min;
  std::vector<double> max;
};

struct ChannelSpec {
  std::string name;
  std::string file;    // CSV file, relative to the manifest directory
  std::string column;  // header name of the sample column
  double rate_hz = 0.0;
};

struct TraceManifest {
  std::vector<ChannelSpec> channels;
};

// Parameters of the synthetic dataset generator. Informative features are
// class-conditional Gaussians clipped to [0, 1]; noise features are uniform.
struct SynthSpec {
  int n_samples = 0;
  int n_informative = 0;
  int n_noise = 0;
  double separation = 3.0;  // distance between class centers, in sigmas
  int n_classes = 2;
};

// Statistics computed per channel and window, in emission order.
const std::vector<std::string>& window_stat_names();

std::vector<SignalTrace> load_traces(const std::string& dir, const TraceManifest& manifest);

// Windows every trace with the given length/stride (seconds) and emits one
// row per complete window with the per-channel statistics above. `labels`
// must contain one class per emitted window.
Dataset extract_features(const std::vector<SignalTrace>& traces, const std::vector<int>& labels,
                         int n_classes, double window_s, double stride_s);

size_t count_windows(const SignalTrace& trace, double window_s, double stride_s);

NormalizationParams fit_normalizer(const Dataset& train);
Dataset apply_normalizer(const Dataset& ds, const NormalizationParams& params);

// Deterministic stratified split. Per-class train counts follow
// largest-remainder apportionment of round(train_frac * n) seats.
std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, double train_frac, uint64_t seed);

Dataset synth_dataset(const SynthSpec& spec, uint64_t seed);

}  // namespace flexc
