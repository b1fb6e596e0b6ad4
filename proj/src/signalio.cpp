#include "flexc/signalio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "flexc/rng.hpp"

namespace flexc {

Dataset Dataset::select_columns(const std::vector<int>& cols) const {
  Dataset out;
  out.n_classes = n_classes;
  out.y = y;
  for (int c : cols) {
    if (c < 0 || static_cast<size_t>(c) >= n_features())
      throw std::invalid_argument("select_columns: column index out of range");
    out.feature_names.push_back(feature_names[c]);
  }
  out.x.resize(n_samples() * cols.size());
  for (size_t r = 0; r < n_samples(); ++r)
    for (size_t j = 0; j < cols.size(); ++j)
      out.x[r * cols.size() + j] = at(r, static_cast<size_t>(cols[j]));
  return out;
}

const std::vector<std::string>& window_stat_names() {
  static const std::vector<std::string> names = {
      "mean", "std",   "min",           "max",  "range",
      "rms",  "mean_abs_diff", "slope", "mean_crossings", "iqr"};
  return names;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_sample(const std::string& cell, const std::string& file, size_t row) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("non-numeric cell '" + cell + "' in " + file + " row " +
                             std::to_string(row));
  }
  if (pos != cell.size())
    throw std::runtime_error("non-numeric cell '" + cell + "' in " + file + " row " +
                             std::to_string(row));
  if (!std::isfinite(v))
    throw std::runtime_error("non-finite sample in " + file + " row " + std::to_string(row));
  return v;
}

double quantile_type7(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted[0];
  double pos = q * static_cast<double>(sorted.size() - 1);
  size_t lo = static_cast<size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[lo + 1] - sorted[lo]) * frac;
}

}  // namespace

std::vector<SignalTrace> load_traces(const std::string& dir, const TraceManifest& manifest) {
  std::vector<SignalTrace> traces;
  for (const ChannelSpec& ch : manifest.channels) {
    if (ch.rate_hz <= 0.0)
      throw std::invalid_argument("channel '" + ch.name + "': sample rate must be positive");
    std::string path = dir.empty() ? ch.file : dir + "/" + ch.file;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open channel file " + path);

    std::string header;
    if (!std::getline(in, header))
      throw std::runtime_error("empty channel file " + path);
    std::vector<std::string> cols = split_csv_line(header);
    auto it = std::find(cols.begin(), cols.end(), ch.column);
    if (it == cols.end())
      throw std::runtime_error("channel not found: column '" + ch.column + "' missing in " + path);
    size_t col_idx = static_cast<size_t>(it - cols.begin());

    SignalTrace trace;
    trace.channel_name = ch.name;
    trace.sample_rate_hz = ch.rate_hz;
    std::string line;
    size_t row = 1;
    while (std::getline(in, line)) {
      ++row;
      if (line.empty()) continue;
      std::vector<std::string> cells = split_csv_line(line);
      if (col_idx >= cells.size())
        throw std::runtime_error("short row " + std::to_string(row) + " in " + path);
      trace.samples.push_back(parse_sample(cells[col_idx], path, row));
    }
    if (trace.samples.empty()) throw std::runtime_error("no samples in " + path);
    traces.push_back(std::move(trace));
  }
  return traces;
}

size_t count_windows(const SignalTrace& trace, double window_s, double stride_s) {
  size_t len = static_cast<size_t>(std::llround(window_s * trace.sample_rate_hz));
  if (len == 0) len = 1;
  size_t n = 0;
  for (size_t w = 0;; ++w) {
    size_t start = static_cast<size_t>(std::llround(static_cast<double>(w) * stride_s * trace.sample_rate_hz));
    if (start + len > trace.samples.size()) break;
    ++n;
  }
  return n;
}

namespace {

void window_stats(const double* s, size_t n, double* out) {
  double mean = 0.0;
  double mn = s[0], mx = s[0];
  double sq = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mean += s[i];
    mn = std::min(mn, s[i]);
    mx = std::max(mx, s[i]);
    sq += s[i] * s[i];
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double d = s[i] - mean;
    var += d * d;
  }
  var /= static_cast<double>(n);

  double mad = 0.0;
  for (size_t i = 0; i + 1 < n; ++i) mad += std::fabs(s[i + 1] - s[i]);
  if (n > 1) mad /= static_cast<double>(n - 1);

  // Least-squares slope against the sample index.
  double slope = 0.0;
  if (n > 1) {
    double xbar = static_cast<double>(n - 1) / 2.0;
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double dx = static_cast<double>(i) - xbar;
      num += dx * (s[i] - mean);
      den += dx * dx;
    }
    slope = num / den;
  }

  double crossings = 0.0;
  for (size_t i = 0; i + 1 < n; ++i)
    if ((s[i] - mean) * (s[i + 1] - mean) < 0.0) crossings += 1.0;

  std::vector<double> sorted(s, s + n);
  std::sort(sorted.begin(), sorted.end());
  double iqr = quantile_type7(sorted, 0.75) - quantile_type7(sorted, 0.25);

  out[0] = mean;
  out[1] = std::sqrt(var);
  out[2] = mn;
  out[3] = mx;
  out[4] = mx - mn;
  out[5] = std::sqrt(sq / static_cast<double>(n));
  out[6] = mad;
  out[7] = slope;
  out[8] = crossings;
  out[9] = iqr;
}

}  // namespace

Dataset extract_features(const std::vector<SignalTrace>& traces, const std::vector<int>& labels,
                         int n_classes, double window_s, double stride_s) {
  if (window_s <= 0.0 || stride_s <= 0.0)
    throw std::invalid_argument("window and stride must be positive");
  if (traces.empty()) throw std::invalid_argument("no traces given");

  size_t rows = SIZE_MAX;
  for (const SignalTrace& t : traces) {
    size_t w = count_windows(t, window_s, stride_s);
    if (w == 0)
      throw std::invalid_argument("window longer than trace '" + t.channel_name + "'");
    rows = std::min(rows, w);
  }
  if (labels.size() != rows)
    throw std::invalid_argument("label sequence length mismatch: got " +
                                std::to_string(labels.size()) + ", expected " +
                                std::to_string(rows));

  const auto& stats = window_stat_names();
  Dataset ds;
  ds.n_classes = n_classes;
  ds.y = labels;
  for (const SignalTrace& t : traces)
    for (const std::string& s : stats) ds.feature_names.push_back(t.channel_name + "_" + s);
  ds.x.assign(rows * ds.n_features(), 0.0);

  for (size_t ti = 0; ti < traces.size(); ++ti) {
    const SignalTrace& t = traces[ti];
    size_t len = static_cast<size_t>(std::llround(window_s * t.sample_rate_hz));
    if (len == 0) len = 1;
    for (size_t w = 0; w < rows; ++w) {
      size_t start = static_cast<size_t>(std::llround(static_cast<double>(w) * stride_s * t.sample_rate_hz));
      double vals[10];
      window_stats(t.samples.data() + start, len, vals);
      for (size_t k = 0; k < stats.size(); ++k)
        ds.at(w, ti * stats.size() + k) = vals[k];
    }
  }
  return ds;
}

NormalizationParams fit_normalizer(const Dataset& train) {
  if (train.n_samples() == 0) throw std::invalid_argument("fit_normalizer: empty dataset");
  NormalizationParams p;
  size_t m = train.n_features();
  p.min.assign(m, 0.0);
  p.max.assign(m, 0.0);
  for (size_t f = 0; f < m; ++f) {
    double mn = train.at(0, f), mx = train.at(0, f);
    for (size_t r = 1; r < train.n_samples(); ++r) {
      mn = std::min(mn, train.at(r, f));
      mx = std::max(mx, train.at(r, f));
    }
    p.min[f] = mn;
    p.max[f] = mx;
  }
  return p;
}

Dataset apply_normalizer(const Dataset& ds, const NormalizationParams& params) {
  if (params.min.size() != ds.n_features())
    throw std::invalid_argument("apply_normalizer: feature count mismatch");
  Dataset out = ds;
  for (size_t f = 0; f < ds.n_features(); ++f) {
    double mn = params.min[f];
    double range = params.max[f] - mn;
    for (size_t r = 0; r < ds.n_samples(); ++r) {
      double v = range > 0.0 ? (ds.at(r, f) - mn) / range : 0.0;
      out.at(r, f) = std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, double train_frac, uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0))
    throw std::invalid_argument("train_frac must be in (0, 1)");
  std::vector<std::vector<size_t>> by_class(static_cast<size_t>(ds.n_classes));
  for (size_t i = 0; i < ds.n_samples(); ++i) {
    int c = ds.y[i];
    if (c < 0 || c >= ds.n_classes) throw std::invalid_argument("label out of range");
    by_class[static_cast<size_t>(c)].push_back(i);
  }
  for (size_t c = 0; c < by_class.size(); ++c)
    if (by_class[c].size() < 2)
      throw std::invalid_argument("class " + std::to_string(c) + " has fewer than 2 samples");

  // Largest-remainder apportionment of round(frac * n) train seats.
  size_t total_seats = static_cast<size_t>(std::llround(train_frac * static_cast<double>(ds.n_samples())));
  std::vector<size_t> take(by_class.size(), 0);
  std::vector<std::pair<double, size_t>> remainders;
  size_t assigned = 0;
  for (size_t c = 0; c < by_class.size(); ++c) {
    double exact = train_frac * static_cast<double>(by_class[c].size());
    take[c] = static_cast<size_t>(exact);
    assigned += take[c];
    remainders.push_back({exact - static_cast<double>(take[c]), c});
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (size_t i = 0; i < remainders.size() && assigned < total_seats; ++i) {
    size_t c = remainders[i].second;
    if (take[c] < by_class[c].size()) {
      ++take[c];
      ++assigned;
    }
  }
  // Both halves must see every class.
  for (size_t c = 0; c < by_class.size(); ++c)
    take[c] = std::clamp(take[c], size_t{1}, by_class[c].size() - 1);

  Rng rng(seed_hash(seed, "stratified_split"));
  std::vector<size_t> train_idx, test_idx;
  for (size_t c = 0; c < by_class.size(); ++c) {
    std::vector<size_t> idx = by_class[c];
    rng.shuffle(idx);
    for (size_t i = 0; i < idx.size(); ++i)
      (i < take[c] ? train_idx : test_idx).push_back(idx[i]);
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  auto gather = [&ds](const std::vector<size_t>& idx) {
    Dataset out;
    out.feature_names = ds.feature_names;
    out.n_classes = ds.n_classes;
    out.x.reserve(idx.size() * ds.n_features());
    for (size_t i : idx) {
      out.y.push_back(ds.y[i]);
      for (size_t f = 0; f < ds.n_features(); ++f) out.x.push_back(ds.at(i, f));
    }
    return out;
  };
  return {gather(train_idx), gather(test_idx)};
}

Dataset synth_dataset(const SynthSpec& spec, uint64_t seed) {
  if (spec.n_informative <= 0) throw std::invalid_argument("n_informative must be positive");
  if (spec.n_samples <= 0) throw std::invalid_argument("n_samples must be positive");
  if (spec.n_classes < 2) throw std::invalid_argument("need at least 2 classes");

  Dataset ds;
  ds.n_classes = spec.n_classes;
  for (int i = 0; i < spec.n_informative; ++i) ds.feature_names.push_back("inf" + std::to_string(i));
  for (int i = 0; i < spec.n_noise; ++i) ds.feature_names.push_back("noise" + std::to_string(i));

  // Class centers evenly spaced inside [0.2, 0.8]; sigma is derived from the
  // requested separation so adjacent centers sit `separation` sigmas apart.
  double gap = 0.6 / static_cast<double>(spec.n_classes - 1);
  double sigma = gap / std::max(spec.separation, 1e-9);

  Rng rng(seed_hash(seed, "synth_dataset"));
  size_t m = ds.n_features();
  ds.x.resize(static_cast<size_t>(spec.n_samples) * m);
  for (int i = 0; i < spec.n_samples; ++i) {
    int cls = i % spec.n_classes;
    ds.y.push_back(cls);
    double center = 0.2 + gap * static_cast<double>(cls);
    for (int f = 0; f < spec.n_informative; ++f)
      ds.x[static_cast<size_t>(i) * m + static_cast<size_t>(f)] =
          std::clamp(rng.normal(center, sigma), 0.0, 1.0);
    for (int f = 0; f < spec.n_noise; ++f)
      ds.x[static_cast<size_t>(i) * m + static_cast<size_t>(spec.n_informative + f)] =
          rng.uniform01();
  }
  return ds;
}

}  // namespace flexc
