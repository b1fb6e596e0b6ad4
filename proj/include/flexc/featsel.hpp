#pragma once

#include <string>
#include <vector>

#include "flexc/signalio.hpp"

namespace flexc {

enum class FsMethod { Disr, Fisher, Jmi };

std::string to_string(FsMethod m);
FsMethod fs_method_from_string(const std::string& s);

// Column quantized to equal-width bins over [0, 1]; class labels are
// represented the same way with one bin per class.
struct DiscretizedColumn {
  int bin_count = 0;
  std::vector<int> bins;
};

struct SelectionResult {
  FsMethod method = FsMethod::Fisher;
  int k = 0;
  std::vector<int> selected;   // selection order for the greedy methods
  std::vector<double> scores;  // criterion value at the time of selection
};

struct FsOptions {
  int bins = 10;
  // DISR divides the pairwise relevance by a joint entropy. The default
  // includes the labels in that entropy; set false to normalize by the
  // two-feature entropy only.
  bool disr_entropy_with_labels = true;
};

DiscretizedColumn discretize(const std::vector<double>& values, int bins);
DiscretizedColumn feature_column(const Dataset& ds, int feature, int bins);
DiscretizedColumn labels_column(const Dataset& ds);

double entropy(const DiscretizedColumn& a);
double joint_entropy(const DiscretizedColumn& a, const DiscretizedColumn& b);
double joint_entropy3(const DiscretizedColumn& a, const DiscretizedColumn& b,
                      const DiscretizedColumn& c);

// Plug-in mutual information in bits.
double mutual_information(const DiscretizedColumn& a, const DiscretizedColumn& b);
// I((a, b); c), treating the pair (a, b) as one variable.
double mutual_information_joint(const DiscretizedColumn& a, const DiscretizedColumn& b,
                                const DiscretizedColumn& c);

// Between-class over within-class variance per feature.
std::vector<double> fisher_scores(const Dataset& ds);

SelectionResult select_features(const Dataset& ds, FsMethod method, int k,
                                const FsOptions& opts = {});

// One selection per k. Greedy methods are evaluated once at the largest k;
// smaller results are prefixes of it.
std::vector<SelectionResult> sweep_k(const Dataset& ds, FsMethod method,
                                     const std::vector<int>& k_grid, const FsOptions& opts = {});

}  // namespace flexc
