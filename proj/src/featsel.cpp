#include "flexc/featsel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace flexc {

std::string to_string(FsMethod m) {
  switch (m) {
    case FsMethod::Disr: return "disr";
    case FsMethod::Fisher: return "fisher";
    case FsMethod::Jmi: return "jmi";
  }
  return "?";
}

FsMethod fs_method_from_string(const std::string& s) {
  if (s == "disr") return FsMethod::Disr;
  if (s == "fisher") return FsMethod::Fisher;
  if (s == "jmi") return FsMethod::Jmi;
  throw std::invalid_argument("unknown feature selection method '" + s + "'");
}

DiscretizedColumn discretize(const std::vector<double>& values, int bins) {
  if (bins < 2) throw std::invalid_argument("bin_count must be >= 2");
  DiscretizedColumn col;
  col.bin_count = bins;
  col.bins.reserve(values.size());
  for (double v : values) {
    int b = static_cast<int>(v * static_cast<double>(bins));
    col.bins.push_back(std::clamp(b, 0, bins - 1));
  }
  return col;
}

DiscretizedColumn feature_column(const Dataset& ds, int feature, int bins) {
  std::vector<double> vals(ds.n_samples());
  for (size_t r = 0; r < ds.n_samples(); ++r) vals[r] = ds.at(r, static_cast<size_t>(feature));
  return discretize(vals, bins);
}

DiscretizedColumn labels_column(const Dataset& ds) {
  DiscretizedColumn col;
  col.bin_count = std::max(ds.n_classes, 2);
  col.bins.assign(ds.y.begin(), ds.y.end());
  return col;
}

namespace {

double entropy_from_counts(const std::vector<size_t>& counts, size_t n) {
  double h = 0.0;
  for (size_t c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h;
}

void check_lengths(const DiscretizedColumn& a, const DiscretizedColumn& b) {
  if (a.bins.size() != b.bins.size())
    throw std::invalid_argument("column length mismatch");
  if (a.bins.empty()) throw std::invalid_argument("empty column");
}

}  // namespace

double entropy(const DiscretizedColumn& a) {
  if (a.bins.empty()) throw std::invalid_argument("empty column");
  std::vector<size_t> counts(static_cast<size_t>(a.bin_count), 0);
  for (int b : a.bins) counts[static_cast<size_t>(b)]++;
  return entropy_from_counts(counts, a.bins.size());
}

double joint_entropy(const DiscretizedColumn& a, const DiscretizedColumn& b) {
  check_lengths(a, b);
  std::vector<size_t> counts(static_cast<size_t>(a.bin_count) * static_cast<size_t>(b.bin_count), 0);
  for (size_t i = 0; i < a.bins.size(); ++i)
    counts[static_cast<size_t>(a.bins[i]) * static_cast<size_t>(b.bin_count) +
           static_cast<size_t>(b.bins[i])]++;
  return entropy_from_counts(counts, a.bins.size());
}

double joint_entropy3(const DiscretizedColumn& a, const DiscretizedColumn& b,
                      const DiscretizedColumn& c) {
  check_lengths(a, b);
  check_lengths(a, c);
  size_t nb = static_cast<size_t>(b.bin_count), nc = static_cast<size_t>(c.bin_count);
  std::vector<size_t> counts(static_cast<size_t>(a.bin_count) * nb * nc, 0);
  for (size_t i = 0; i < a.bins.size(); ++i)
    counts[(static_cast<size_t>(a.bins[i]) * nb + static_cast<size_t>(b.bins[i])) * nc +
           static_cast<size_t>(c.bins[i])]++;
  return entropy_from_counts(counts, a.bins.size());
}

double mutual_information(const DiscretizedColumn& a, const DiscretizedColumn& b) {
  check_lengths(a, b);
  double mi = entropy(a) + entropy(b) - joint_entropy(a, b);
  return std::max(mi, 0.0);
}

double mutual_information_joint(const DiscretizedColumn& a, const DiscretizedColumn& b,
                                const DiscretizedColumn& c) {
  check_lengths(a, b);
  check_lengths(a, c);
  double mi = joint_entropy(a, b) + entropy(c) - joint_entropy3(a, b, c);
  return std::max(mi, 0.0);
}

std::vector<double> fisher_scores(const Dataset& ds) {
  constexpr double kEps = 1e-12;
  size_t m = ds.n_features();
  size_t nc = static_cast<size_t>(ds.n_classes);
  std::vector<size_t> class_n(nc, 0);
  for (int y : ds.y) class_n[static_cast<size_t>(y)]++;
  size_t present = 0;
  for (size_t c : class_n)
    if (c > 0) ++present;
  if (present < 2) throw std::invalid_argument("fisher_scores: need at least 2 classes present");

  std::vector<double> scores(m, 0.0);
  std::vector<double> class_mean(nc), class_var(nc);
  for (size_t f = 0; f < m; ++f) {
    std::fill(class_mean.begin(), class_mean.end(), 0.0);
    std::fill(class_var.begin(), class_var.end(), 0.0);
    double mean = 0.0;
    for (size_t r = 0; r < ds.n_samples(); ++r) {
      class_mean[static_cast<size_t>(ds.y[r])] += ds.at(r, f);
      mean += ds.at(r, f);
    }
    mean /= static_cast<double>(ds.n_samples());
    for (size_t c = 0; c < nc; ++c)
      if (class_n[c]) class_mean[c] /= static_cast<double>(class_n[c]);
    for (size_t r = 0; r < ds.n_samples(); ++r) {
      double d = ds.at(r, f) - class_mean[static_cast<size_t>(ds.y[r])];
      class_var[static_cast<size_t>(ds.y[r])] += d * d;
    }
    double between = 0.0, within = 0.0;
    for (size_t c = 0; c < nc; ++c) {
      if (!class_n[c]) continue;
      double dm = class_mean[c] - mean;
      between += static_cast<double>(class_n[c]) * dm * dm;
      within += class_var[c];  // class_n * population variance
    }
    scores[f] = between / (within + kEps);
  }
  return scores;
}

SelectionResult select_features(const Dataset& ds, FsMethod method, int k, const FsOptions& opts) {
  int m = static_cast<int>(ds.n_features());
  if (k < 1 || k > m)
    throw std::invalid_argument("k must be in [1, " + std::to_string(m) + "], got " +
                                std::to_string(k));
  SelectionResult res;
  res.method = method;
  res.k = k;

  if (method == FsMethod::Fisher) {
    std::vector<double> scores = fisher_scores(ds);
    std::vector<int> order(static_cast<size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&scores](int a, int b) {
      if (scores[static_cast<size_t>(a)] != scores[static_cast<size_t>(b)])
        return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
      return a < b;
    });
    for (int i = 0; i < k; ++i) {
      res.selected.push_back(order[static_cast<size_t>(i)]);
      res.scores.push_back(scores[static_cast<size_t>(order[static_cast<size_t>(i)])]);
    }
    return res;
  }

  // Greedy forward selection for JMI / DISR.
  DiscretizedColumn labels = labels_column(ds);
  std::vector<DiscretizedColumn> cols;
  cols.reserve(static_cast<size_t>(m));
  for (int f = 0; f < m; ++f) cols.push_back(feature_column(ds, f, opts.bins));

  std::vector<bool> used(static_cast<size_t>(m), false);
  // First pick maximizes relevance with the labels.
  {
    int best = -1;
    double best_score = -1.0;
    for (int f = 0; f < m; ++f) {
      double s = mutual_information(cols[static_cast<size_t>(f)], labels);
      if (s > best_score) {
        best_score = s;
        best = f;
      }
    }
    used[static_cast<size_t>(best)] = true;
    res.selected.push_back(best);
    res.scores.push_back(best_score);
  }

  while (static_cast<int>(res.selected.size()) < k) {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int f = 0; f < m; ++f) {
      if (used[static_cast<size_t>(f)]) continue;
      double s = 0.0;
      for (int j : res.selected) {
        double pair_mi = mutual_information_joint(cols[static_cast<size_t>(j)],
                                                  cols[static_cast<size_t>(f)], labels);
        if (method == FsMethod::Jmi) {
          s += pair_mi;
        } else {
          double h = opts.disr_entropy_with_labels
                         ? joint_entropy3(cols[static_cast<size_t>(j)], cols[static_cast<size_t>(f)],
                                          labels)
                         : joint_entropy(cols[static_cast<size_t>(j)], cols[static_cast<size_t>(f)]);
          s += h > 0.0 ? pair_mi / h : 0.0;
        }
      }
      if (s > best_score) {
        best_score = s;
        best = f;
      }
    }
    used[static_cast<size_t>(best)] = true;
    res.selected.push_back(best);
    res.scores.push_back(best_score);
  }
  return res;
}

std::vector<SelectionResult> sweep_k(const Dataset& ds, FsMethod method,
                                     const std::vector<int>& k_grid, const FsOptions& opts) {
  if (k_grid.empty()) throw std::invalid_argument("empty k grid");
  int kmax = *std::max_element(k_grid.begin(), k_grid.end());
  SelectionResult full = select_features(ds, method, kmax, opts);
  std::vector<SelectionResult> out;
  for (int k : k_grid) {
    SelectionResult r;
    r.method = method;
    r.k = k;
    r.selected.assign(full.selected.begin(), full.selected.begin() + k);
    r.scores.assign(full.scores.begin(), full.scores.begin() + k);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace flexc
