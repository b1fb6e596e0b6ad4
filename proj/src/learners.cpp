#include "flexc/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "flexc/rng.hpp"

namespace flexc {

std::string to_string(DtCriterion c) { return c == DtCriterion::Gini ? "gini" : "entropy"; }

DtCriterion dt_criterion_from_string(const std::string& s) {
  if (s == "gini") return DtCriterion::Gini;
  if (s == "entropy") return DtCriterion::Entropy;
  throw std::invalid_argument("unknown split criterion '" + s + "'");
}

std::string to_string(Algo a) {
  switch (a) {
    case Algo::Dt: return "dt";
    case Algo::Svm: return "svm";
    case Algo::Mlp: return "mlp";
  }
  return "?";
}

Algo algo_from_string(const std::string& s) {
  if (s == "dt") return Algo::Dt;
  if (s == "svm") return Algo::Svm;
  if (s == "mlp") return Algo::Mlp;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

// ---------------------------------------------------------------- predict

int DecisionTree::predict_row(const double* x) const {
  int i = 0;
  while (!nodes[static_cast<size_t>(i)].is_leaf()) {
    const DtNode& n = nodes[static_cast<size_t>(i)];
    i = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<size_t>(i)].cls;
}

int LinearSvm::predict_row(const double* x) const {
  int best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < n_classes; ++c) {
    double v = b[static_cast<size_t>(c)];
    for (int f = 0; f < n_features; ++f)
      v += w[static_cast<size_t>(c) * static_cast<size_t>(n_features) + static_cast<size_t>(f)] * x[f];
    if (v > best_v) {
      best_v = v;
      best = c;
    }
  }
  return best;
}

void Mlp::forward(const double* x, std::vector<std::vector<double>>& acts) const {
  acts.resize(layers.size() + 1);
  acts[0].assign(x, x + layers.front().in);
  for (size_t l = 0; l < layers.size(); ++l) {
    const DenseLayer& layer = layers[l];
    acts[l + 1].assign(static_cast<size_t>(layer.out), 0.0);
    for (int o = 0; o < layer.out; ++o) {
      double v = layer.b[static_cast<size_t>(o)];
      const double* wrow = layer.w.data() + static_cast<size_t>(o) * static_cast<size_t>(layer.in);
      for (int i = 0; i < layer.in; ++i) v += wrow[i] * acts[l][static_cast<size_t>(i)];
      if (l + 1 < layers.size()) v = std::max(v, 0.0);  // ReLU on hidden layers
      acts[l + 1][static_cast<size_t>(o)] = v;
    }
  }
}

int Mlp::predict_row(const double* x) const {
  std::vector<std::vector<double>> acts;
  forward(x, acts);
  const std::vector<double>& out = acts.back();
  return static_cast<int>(std::max_element(out.begin(), out.end()) - out.begin());
}

int predict_row(const TrainedModel& m, const double* x) {
  return std::visit([x](const auto& model) { return model.predict_row(x); }, m);
}

int model_feature_count(const TrainedModel& m) {
  return std::visit(
      [](const auto& model) -> int {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, Mlp>)
          return model.n_features();
        else
          return model.n_features;
      },
      m);
}

std::vector<int> predict(const TrainedModel& m, const Dataset& ds) {
  if (model_feature_count(m) != static_cast<int>(ds.n_features()))
    throw std::invalid_argument("predict: feature count mismatch");
  std::vector<int> out(ds.n_samples());
  for (size_t r = 0; r < ds.n_samples(); ++r)
    out[r] = predict_row(m, ds.x.data() + r * ds.n_features());
  return out;
}

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.empty() || pred.size() != truth.size())
    throw std::invalid_argument("accuracy: empty or mismatched label vectors");
  size_t hits = 0;
  for (size_t i = 0; i < pred.size(); ++i)
    if (pred[i] == truth[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

double macro_f1(const std::vector<int>& pred, const std::vector<int>& truth, int n_classes) {
  if (pred.empty() || pred.size() != truth.size())
    throw std::invalid_argument("macro_f1: empty or mismatched label vectors");
  std::vector<double> tp(static_cast<size_t>(n_classes), 0), fp(static_cast<size_t>(n_classes), 0),
      fn(static_cast<size_t>(n_classes), 0);
  for (size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == truth[i])
      tp[static_cast<size_t>(truth[i])] += 1;
    else {
      fp[static_cast<size_t>(pred[i])] += 1;
      fn[static_cast<size_t>(truth[i])] += 1;
    }
  }
  double sum = 0.0;
  for (int c = 0; c < n_classes; ++c) {
    double denom = 2 * tp[static_cast<size_t>(c)] + fp[static_cast<size_t>(c)] + fn[static_cast<size_t>(c)];
    sum += denom > 0 ? 2 * tp[static_cast<size_t>(c)] / denom : 0.0;
  }
  return sum / static_cast<double>(n_classes);
}

// -------------------------------------------------------------------- DT

namespace {

double impurity(const std::vector<size_t>& counts, size_t n, DtCriterion crit) {
  if (n == 0) return 0.0;
  double v = crit == DtCriterion::Gini ? 1.0 : 0.0;
  for (size_t c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(n);
    if (crit == DtCriterion::Gini)
      v -= p * p;
    else
      v -= p * std::log2(p);
  }
  return v;
}

int majority_class(const std::vector<size_t>& counts) {
  size_t best = 0;
  for (size_t c = 1; c < counts.size(); ++c)
    if (counts[c] > counts[best]) best = c;  // tie keeps the lower index
  return static_cast<int>(best);
}

struct TreeBuilder {
  const Dataset& ds;
  DtCriterion crit;
  int max_depth;
  std::vector<DtNode> nodes;

  int build(std::vector<size_t>& rows, int depth) {
    size_t nc = static_cast<size_t>(ds.n_classes);
    std::vector<size_t> counts(nc, 0);
    for (size_t r : rows) counts[static_cast<size_t>(ds.y[r])]++;
    double parent_imp = impurity(counts, rows.size(), crit);

    bool pure = false;
    for (size_t c = 0; c < nc; ++c)
      if (counts[c] == rows.size()) pure = true;

    int node_id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (pure || depth >= max_depth || rows.size() < 2) {
      nodes[static_cast<size_t>(node_id)].cls = majority_class(counts);
      return node_id;
    }

    // Greedy best split; strict improvement keeps the first (lowest
    // feature index, lowest threshold) candidate on ties.
    int best_f = -1;
    double best_thr = 0.0, best_gain = 0.0;
    std::vector<std::pair<double, size_t>> order(rows.size());
    std::vector<size_t> left_counts(nc);
    for (size_t f = 0; f < ds.n_features(); ++f) {
      for (size_t i = 0; i < rows.size(); ++i) order[i] = {ds.at(rows[i], f), rows[i]};
      std::sort(order.begin(), order.end());
      std::fill(left_counts.begin(), left_counts.end(), 0);
      for (size_t i = 0; i + 1 < order.size(); ++i) {
        left_counts[static_cast<size_t>(ds.y[order[i].second])]++;
        if (order[i].first == order[i + 1].first) continue;
        double thr = 0.5 * (order[i].first + order[i + 1].first);
        size_t nl = i + 1, nr = order.size() - nl;
        std::vector<size_t> right_counts(nc);
        for (size_t c = 0; c < nc; ++c) right_counts[c] = counts[c] - left_counts[c];
        double child = (static_cast<double>(nl) * impurity(left_counts, nl, crit) +
                        static_cast<double>(nr) * impurity(right_counts, nr, crit)) /
                       static_cast<double>(order.size());
        double gain = parent_imp - child;
        if (gain > best_gain + 1e-15) {
          best_gain = gain;
          best_f = static_cast<int>(f);
          best_thr = thr;
        }
      }
    }

    if (best_f < 0) {
      nodes[static_cast<size_t>(node_id)].cls = majority_class(counts);
      return node_id;
    }

    std::vector<size_t> left_rows, right_rows;
    for (size_t r : rows)
      (ds.at(r, static_cast<size_t>(best_f)) <= best_thr ? left_rows : right_rows).push_back(r);

    nodes[static_cast<size_t>(node_id)].feature = best_f;
    nodes[static_cast<size_t>(node_id)].threshold = best_thr;
    int left = build(left_rows, depth + 1);
    int right = build(right_rows, depth + 1);
    nodes[static_cast<size_t>(node_id)].left = left;
    nodes[static_cast<size_t>(node_id)].right = right;
    return node_id;
  }
};

}  // namespace

DecisionTree train_dt(const Dataset& train, DtCriterion criterion, int max_depth, uint64_t) {
  if (train.n_samples() == 0) throw std::invalid_argument("train_dt: empty train set");
  TreeBuilder builder{train, criterion, max_depth, {}};
  std::vector<size_t> rows(train.n_samples());
  std::iota(rows.begin(), rows.end(), 0);
  builder.build(rows, 0);
  DecisionTree dt;
  dt.nodes = std::move(builder.nodes);
  dt.criterion = criterion;
  dt.n_features = static_cast<int>(train.n_features());
  dt.n_classes = train.n_classes;
  return dt;
}

// ------------------------------------------------------------------- SVM

namespace {

double svm_objective(const LinearSvm& m, const Dataset& ds, double lambda) {
  double loss = 0.0;
  size_t nf = static_cast<size_t>(m.n_features);
  for (size_t r = 0; r < ds.n_samples(); ++r) {
    for (int c = 0; c < m.n_classes; ++c) {
      double y = ds.y[r] == c ? 1.0 : -1.0;
      double v = m.b[static_cast<size_t>(c)];
      for (size_t f = 0; f < nf; ++f) v += m.w[static_cast<size_t>(c) * nf + f] * ds.at(r, f);
      loss += std::max(0.0, 1.0 - y * v);
    }
  }
  loss /= static_cast<double>(ds.n_samples());
  double reg = 0.0;
  for (double wv : m.w) reg += wv * wv;
  return loss + 0.5 * lambda * reg;
}

}  // namespace

LinearSvm train_svm(const Dataset& train, double c, int epochs, uint64_t) {
  if (train.n_classes < 2) throw std::invalid_argument("train_svm: need at least 2 classes");
  size_t n = train.n_samples();
  size_t nf = train.n_features();
  LinearSvm m;
  m.n_features = static_cast<int>(nf);
  m.n_classes = train.n_classes;
  m.w.assign(static_cast<size_t>(train.n_classes) * nf, 0.0);
  m.b.assign(static_cast<size_t>(train.n_classes), 0.0);

  bool bias_only = c <= 0.0;  // pure regularizer: weights pinned at zero
  double lambda = bias_only ? 1.0 : 1.0 / (c * static_cast<double>(n));

  LinearSvm avg = m;   // running average of iterates
  LinearSvm best = m;  // averaged iterate with the lowest objective so far
  double best_obj = std::numeric_limits<double>::infinity();

  std::vector<double> gw(m.w.size()), gb(m.b.size());
  for (int epoch = 1; epoch <= epochs; ++epoch) {
    std::fill(gw.begin(), gw.end(), 0.0);
    std::fill(gb.begin(), gb.end(), 0.0);
    for (size_t r = 0; r < n; ++r) {
      for (int cl = 0; cl < m.n_classes; ++cl) {
        double y = train.y[r] == cl ? 1.0 : -1.0;
        double v = m.b[static_cast<size_t>(cl)];
        for (size_t f = 0; f < nf; ++f) v += m.w[static_cast<size_t>(cl) * nf + f] * train.at(r, f);
        if (y * v < 1.0) {
          for (size_t f = 0; f < nf; ++f) gw[static_cast<size_t>(cl) * nf + f] -= y * train.at(r, f);
          gb[static_cast<size_t>(cl)] -= y;
        }
      }
    }
    double inv_n = 1.0 / static_cast<double>(n);
    double eta = 1.0 / (lambda * static_cast<double>(epoch + 1));
    for (size_t i = 0; i < m.w.size(); ++i) {
      if (bias_only) continue;
      m.w[i] -= eta * (lambda * m.w[i] + gw[i] * inv_n);
    }
    double eta_b = bias_only ? 0.1 : eta;
    for (size_t i = 0; i < m.b.size(); ++i) m.b[i] -= eta_b * gb[i] * inv_n;

    double t = static_cast<double>(epoch);
    for (size_t i = 0; i < m.w.size(); ++i) avg.w[i] += (m.w[i] - avg.w[i]) / t;
    for (size_t i = 0; i < m.b.size(); ++i) avg.b[i] += (m.b[i] - avg.b[i]) / t;

    double obj = svm_objective(avg, train, lambda);
    if (obj < best_obj) {
      best_obj = obj;
      best = avg;
    }
  }
  return best;
}

// ------------------------------------------------------------------- MLP

namespace {

Mlp init_mlp(size_t n_features, const std::vector<int>& arch, int n_classes, Rng& rng) {
  Mlp m;
  m.n_classes = n_classes;
  std::vector<int> dims;
  dims.push_back(static_cast<int>(n_features));
  for (int h : arch) dims.push_back(h);
  dims.push_back(n_classes);
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    DenseLayer layer;
    layer.in = dims[l];
    layer.out = dims[l + 1];
    layer.w.resize(static_cast<size_t>(layer.in) * static_cast<size_t>(layer.out));
    layer.b.assign(static_cast<size_t>(layer.out), 0.0);
    layer.mask.assign(layer.w.size(), 1);
    double limit = std::sqrt(6.0 / static_cast<double>(layer.in));
    for (double& wv : layer.w) wv = rng.uniform(-limit, limit);
    m.layers.push_back(std::move(layer));
  }
  return m;
}

// Backprop for a set of rows; accumulates into grad (already sized/zeroed).
double backprop_rows(const Mlp& m, const Dataset& ds, const size_t* rows, size_t count,
                     std::vector<std::vector<double>>& grad_w,
                     std::vector<std::vector<double>>& grad_b) {
  double loss = 0.0;
  std::vector<std::vector<double>> acts;
  std::vector<std::vector<double>> delta(m.layers.size());
  for (size_t s = 0; s < count; ++s) {
    size_t r = rows[s];
    m.forward(ds.x.data() + r * ds.n_features(), acts);

    // Softmax cross-entropy on the final linear outputs.
    const std::vector<double>& out = acts.back();
    double mx = *std::max_element(out.begin(), out.end());
    double z = 0.0;
    for (double v : out) z += std::exp(v - mx);
    std::vector<double>& dout = delta[m.layers.size() - 1];
    dout.resize(out.size());
    for (size_t c = 0; c < out.size(); ++c) {
      double p = std::exp(out[c] - mx) / z;
      dout[c] = p - (static_cast<int>(c) == ds.y[r] ? 1.0 : 0.0);
      if (static_cast<int>(c) == ds.y[r]) loss -= std::log(std::max(p, 1e-300));
    }

    for (size_t l = m.layers.size(); l-- > 0;) {
      const DenseLayer& layer = m.layers[l];
      std::vector<double>& d = delta[l];
      for (int o = 0; o < layer.out; ++o) {
        double dv = d[static_cast<size_t>(o)];
        grad_b[l][static_cast<size_t>(o)] += dv;
        double* gw = grad_w[l].data() + static_cast<size_t>(o) * static_cast<size_t>(layer.in);
        for (int i = 0; i < layer.in; ++i) gw[i] += dv * acts[l][static_cast<size_t>(i)];
      }
      if (l == 0) break;
      std::vector<double>& dprev = delta[l - 1];
      dprev.assign(static_cast<size_t>(layer.in), 0.0);
      for (int o = 0; o < layer.out; ++o) {
        double dv = d[static_cast<size_t>(o)];
        const double* wrow = layer.w.data() + static_cast<size_t>(o) * static_cast<size_t>(layer.in);
        for (int i = 0; i < layer.in; ++i) dprev[static_cast<size_t>(i)] += dv * wrow[i];
      }
      // ReLU derivative of the previous hidden activation.
      for (int i = 0; i < layer.in; ++i)
        if (acts[l][static_cast<size_t>(i)] <= 0.0) dprev[static_cast<size_t>(i)] = 0.0;
    }
  }
  return loss;
}

void size_grads(const Mlp& m, std::vector<std::vector<double>>& grad_w,
                std::vector<std::vector<double>>& grad_b) {
  grad_w.resize(m.layers.size());
  grad_b.resize(m.layers.size());
  for (size_t l = 0; l < m.layers.size(); ++l) {
    grad_w[l].assign(m.layers[l].w.size(), 0.0);
    grad_b[l].assign(m.layers[l].b.size(), 0.0);
  }
}

double eval_accuracy(const Mlp& m, const Dataset& ds, const std::vector<size_t>& rows) {
  if (rows.empty()) return 0.0;
  size_t hits = 0;
  for (size_t r : rows)
    if (m.predict_row(ds.x.data() + r * ds.n_features()) == ds.y[r]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(rows.size());
}

}  // namespace

double mlp_loss_and_grad(const Mlp& m, const Dataset& ds, const std::vector<size_t>& rows,
                         std::vector<std::vector<double>>& grad_w,
                         std::vector<std::vector<double>>& grad_b) {
  size_grads(m, grad_w, grad_b);
  double loss = backprop_rows(m, ds, rows.data(), rows.size(), grad_w, grad_b);
  double inv = 1.0 / static_cast<double>(rows.size());
  for (auto& g : grad_w)
    for (double& v : g) v *= inv;
  for (auto& g : grad_b)
    for (double& v : g) v *= inv;
  return loss * inv;
}

void train_mlp_inplace(Mlp& m, const Dataset& train, double lr, int epochs, uint64_t seed,
                       const MlpTrainOptions& opts) {
  size_t n = train.n_samples();
  Rng rng(seed_hash(seed, "mlp_train"));

  // Hold out a validation slice for early stopping when there is room.
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  size_t n_val = static_cast<size_t>(opts.val_frac * static_cast<double>(n));
  std::vector<size_t> val_rows(order.end() - static_cast<long>(n_val), order.end());
  std::vector<size_t> train_rows(order.begin(), order.end() - static_cast<long>(n_val));
  if (train_rows.empty()) {
    train_rows = order;
    val_rows.clear();
  }

  std::vector<std::vector<double>> grad_w, grad_b, vel_w, vel_b;
  size_grads(m, grad_w, grad_b);
  size_grads(m, vel_w, vel_b);

  Mlp best = m;
  double best_val = eval_accuracy(m, train, val_rows.empty() ? train_rows : val_rows);

  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(train_rows);
    for (size_t start = 0; start < train_rows.size(); start += static_cast<size_t>(opts.batch_size)) {
      size_t count = std::min(static_cast<size_t>(opts.batch_size), train_rows.size() - start);
      for (auto& g : grad_w) std::fill(g.begin(), g.end(), 0.0);
      for (auto& g : grad_b) std::fill(g.begin(), g.end(), 0.0);
      backprop_rows(m, train, train_rows.data() + start, count, grad_w, grad_b);
      double inv = 1.0 / static_cast<double>(count);
      for (size_t l = 0; l < m.layers.size(); ++l) {
        DenseLayer& layer = m.layers[l];
        for (size_t i = 0; i < layer.w.size(); ++i) {
          if (!layer.mask[i]) {
            layer.w[i] = 0.0;
            continue;
          }
          vel_w[l][i] = opts.momentum * vel_w[l][i] - lr * grad_w[l][i] * inv;
          layer.w[i] += vel_w[l][i];
        }
        for (size_t i = 0; i < layer.b.size(); ++i) {
          vel_b[l][i] = opts.momentum * vel_b[l][i] - lr * grad_b[l][i] * inv;
          layer.b[i] += vel_b[l][i];
        }
      }
    }
    double val = eval_accuracy(m, train, val_rows.empty() ? train_rows : val_rows);
    if (val > best_val) {
      best_val = val;
      best = m;
    }
  }
  if (epochs > 0) m = best;
}

Mlp train_mlp(const Dataset& train, const std::vector<int>& arch, double lr, int epochs,
              uint64_t seed, const MlpTrainOptions& opts) {
  if (train.n_samples() == 0) throw std::invalid_argument("train_mlp: empty train set");
  Rng init_rng(seed_hash(seed, "mlp_init"));
  Mlp m = init_mlp(train.n_features(), arch, train.n_classes, init_rng);
  train_mlp_inplace(m, train, lr, epochs, seed, opts);
  return m;
}

// ----------------------------------------------------------- grid search

HyperGrid HyperGrid::defaults() {
  HyperGrid g;
  for (int depth : {2, 3, 4, 6, 8}) {
    g.dt.push_back({DtCriterion::Gini, depth});
    g.dt.push_back({DtCriterion::Entropy, depth});
  }
  for (double c : {0.1, 1.0, 10.0}) g.svm.push_back({c, 200});
  for (const std::vector<int>& arch :
       std::vector<std::vector<int>>{{4}, {8}, {16}, {8, 4}})
    for (double lr : {0.01, 0.001}) g.mlp.push_back({arch, lr, 150});
  return g;
}

size_t HyperGrid::size(Algo a) const {
  switch (a) {
    case Algo::Dt: return dt.size();
    case Algo::Svm: return svm.size();
    case Algo::Mlp: return mlp.size();
  }
  return 0;
}

TrainedModel train_with_hyper(const Dataset& train, Algo algo, const HyperGrid& grid, int hyper_id,
                              uint64_t seed);

std::vector<std::vector<size_t>> stratified_folds(const Dataset& ds, int folds, uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("need at least 2 folds");
  std::vector<std::vector<size_t>> by_class(static_cast<size_t>(ds.n_classes));
  for (size_t i = 0; i < ds.n_samples(); ++i) by_class[static_cast<size_t>(ds.y[i])].push_back(i);
  for (size_t c = 0; c < by_class.size(); ++c)
    if (!by_class[c].empty() && by_class[c].size() < static_cast<size_t>(folds))
      throw std::invalid_argument("class " + std::to_string(c) +
                                  " has fewer samples than folds; stratified folding impossible");
  Rng rng(seed_hash(seed, "folds"));
  std::vector<std::vector<size_t>> out(static_cast<size_t>(folds));
  for (auto& idx : by_class) {
    std::vector<size_t> shuffled = idx;
    rng.shuffle(shuffled);
    for (size_t i = 0; i < shuffled.size(); ++i)
      out[i % static_cast<size_t>(folds)].push_back(shuffled[i]);
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

namespace {

Dataset gather_rows(const Dataset& ds, const std::vector<size_t>& rows) {
  Dataset out;
  out.feature_names = ds.feature_names;
  out.n_classes = ds.n_classes;
  for (size_t r : rows) {
    out.y.push_back(ds.y[r]);
    for (size_t f = 0; f < ds.n_features(); ++f) out.x.push_back(ds.at(r, f));
  }
  return out;
}

}  // namespace

TrainedModel train_with_hyper(const Dataset& train, Algo algo, const HyperGrid& grid, int hyper_id,
                              uint64_t seed) {
  switch (algo) {
    case Algo::Dt: {
      const DtHyper& h = grid.dt.at(static_cast<size_t>(hyper_id));
      return train_dt(train, h.criterion, h.max_depth, seed);
    }
    case Algo::Svm: {
      const SvmHyper& h = grid.svm.at(static_cast<size_t>(hyper_id));
      return train_svm(train, h.c, h.epochs, seed);
    }
    case Algo::Mlp: {
      const MlpHyper& h = grid.mlp.at(static_cast<size_t>(hyper_id));
      return train_mlp(train, h.arch, h.lr, h.epochs, seed);
    }
  }
  throw std::logic_error("unreachable");
}

GridSearchResult grid_search(const Dataset& train, Algo algo, const HyperGrid& grid, int folds,
                             uint64_t seed) {
  size_t n_configs = grid.size(algo);
  if (n_configs == 0) throw std::invalid_argument("grid_search: empty grid");
  std::vector<std::vector<size_t>> fold_idx = stratified_folds(train, folds, seed);

  int best_id = 0;
  double best_acc = -1.0;
  for (size_t cfg = 0; cfg < n_configs; ++cfg) {
    double acc_sum = 0.0;
    for (int f = 0; f < folds; ++f) {
      std::vector<size_t> train_rows;
      for (int g = 0; g < folds; ++g)
        if (g != f)
          train_rows.insert(train_rows.end(), fold_idx[static_cast<size_t>(g)].begin(),
                            fold_idx[static_cast<size_t>(g)].end());
      std::sort(train_rows.begin(), train_rows.end());
      Dataset fold_train = gather_rows(train, train_rows);
      Dataset fold_test = gather_rows(train, fold_idx[static_cast<size_t>(f)]);
      TrainedModel m = train_with_hyper(fold_train, algo, grid, static_cast<int>(cfg),
                                        seed_hash(seed, "cv" + std::to_string(cfg * 100 + static_cast<size_t>(f))));
      acc_sum += accuracy(predict(m, fold_test), fold_test.y);
    }
    double mean = acc_sum / static_cast<double>(folds);
    if (mean > best_acc) {
      best_acc = mean;
      best_id = static_cast<int>(cfg);
    }
  }

  GridSearchResult res;
  res.hyper_id = best_id;
  res.cv_accuracy = best_acc;
  res.model = train_with_hyper(train, algo, grid, best_id, seed_hash(seed, "final"));
  return res;
}

}  // namespace flexc
