#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "flexc/signalio.hpp"

namespace flexc {

enum class DtCriterion { Gini, Entropy };
enum class Algo { Dt, Svm, Mlp };

std::string to_string(DtCriterion c);
DtCriterion dt_criterion_from_string(const std::string& s);
std::string to_string(Algo a);
Algo algo_from_string(const std::string& s);

// Binary CART tree in preorder layout. Left branch is taken when
// x[feature] <= threshold.
struct DtNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int cls = -1;

  bool is_leaf() const { return left < 0; }
};

struct DecisionTree {
  std::vector<DtNode> nodes;
  DtCriterion criterion = DtCriterion::Gini;
  int n_features = 0;
  int n_classes = 0;

  int predict_row(const double* x) const;
};

// One-vs-rest linear classifier; predict = argmax_c (W_c . x + b_c).
struct LinearSvm {
  int n_features = 0;
  int n_classes = 0;
  std::vector<double> w;  // n_classes * n_features, row-major
  std::vector<double> b;  // n_classes

  int predict_row(const double* x) const;
};

struct DenseLayer {
  int in = 0;
  int out = 0;
  std::vector<double> w;      // out * in, row-major
  std::vector<double> b;      // out
  std::vector<uint8_t> mask;  // same shape as w; 0 entries are pruned

  size_t weight_count() const { return w.size(); }
};

// ReLU MLP; the final layer is linear and trained under softmax
// cross-entropy.
struct Mlp {
  std::vector<DenseLayer> layers;
  int n_classes = 0;

  int n_features() const { return layers.empty() ? 0 : layers.front().in; }
  int predict_row(const double* x) const;
  void forward(const double* x, std::vector<std::vector<double>>& activations) const;
};

using TrainedModel = std::variant<DecisionTree, LinearSvm, Mlp>;

int predict_row(const TrainedModel& m, const double* x);
std::vector<int> predict(const TrainedModel& m, const Dataset& ds);
int model_feature_count(const TrainedModel& m);

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth);
double macro_f1(const std::vector<int>& pred, const std::vector<int>& truth, int n_classes);

struct DtHyper {
  DtCriterion criterion = DtCriterion::Gini;
  int max_depth = 4;
};

struct SvmHyper {
  double c = 1.0;
  int epochs = 200;
};

struct MlpHyper {
  std::vector<int> arch = {8};
  double lr = 0.01;
  int epochs = 150;
};

struct HyperGrid {
  std::vector<DtHyper> dt;
  std::vector<SvmHyper> svm;
  std::vector<MlpHyper> mlp;

  static HyperGrid defaults();
  size_t size(Algo a) const;
};

DecisionTree train_dt(const Dataset& train, DtCriterion criterion, int max_depth, uint64_t seed);

// Primal subgradient descent on the one-vs-rest hinge loss with averaged
// iterates. c == 0 degenerates to pure regularization: the weights stay
// zero and only the biases learn.
LinearSvm train_svm(const Dataset& train, double c, int epochs, uint64_t seed);

struct MlpTrainOptions {
  int batch_size = 32;
  double momentum = 0.9;
  double val_frac = 0.1;  // early-stopping slice taken from the train set
};

Mlp train_mlp(const Dataset& train, const std::vector<int>& arch, double lr, int epochs,
              uint64_t seed, const MlpTrainOptions& opts = {});

// Continues training an existing network in place (used by pruning-aware
// retraining); masked weights stay exactly zero.
void train_mlp_inplace(Mlp& m, const Dataset& train, double lr, int epochs, uint64_t seed,
                       const MlpTrainOptions& opts = {});

// Mean loss and parameter gradients over the given rows. Exposed for the
// finite-difference check and the saliency computations.
double mlp_loss_and_grad(const Mlp& m, const Dataset& ds, const std::vector<size_t>& rows,
                         std::vector<std::vector<double>>& grad_w,
                         std::vector<std::vector<double>>& grad_b);

// Trains one cell of the grid directly.
TrainedModel train_with_hyper(const Dataset& train, Algo algo, const HyperGrid& grid, int hyper_id,
                              uint64_t seed);

struct GridSearchResult {
  TrainedModel model;
  int hyper_id = 0;
  double cv_accuracy = 0.0;
};

// Stratified k-fold cross-validation over the per-algorithm grid; ties keep
// the earlier grid entry; the winner is retrained on the full train split.
GridSearchResult grid_search(const Dataset& train, Algo algo, const HyperGrid& grid, int folds,
                             uint64_t seed);

std::vector<std::vector<size_t>> stratified_folds(const Dataset& ds, int folds, uint64_t seed);

}  // namespace flexc
