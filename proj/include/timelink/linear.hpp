// One-vs-rest linear classifier trained by dual coordinate descent on the
// L2-regularized L2-loss SVM objective. Deterministic for a fixed seed.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "timelink/features.hpp"

namespace timelink {

struct TrainExample {
  FeatureVector x;
  std::string label;
};

// Declared defaults; a compliant convex solver trained to |tol| suffices.
struct Hyperparams {
  double c = 1.0;
  double tol = 1e-4;
  int max_epochs = 1000;
};

struct LinearModel {
  std::vector<std::string> labels;           // inventory, first-seen order
  std::vector<std::vector<double>> weights;  // per label, dim + 1 (bias last)
  std::uint32_t dim = 0;
  Hyperparams hp;
  std::uint64_t seed = 0;
};

struct Prediction {
  std::string label;
  std::vector<double> scores;  // parallel to the label inventory
  double confidence = 0.0;     // top score minus runner-up; 0 for one label
};

// Per-label dual objective after each epoch; non-increasing within a label.
struct TrainTrace {
  std::vector<std::vector<double>> objectives;
};

// Requires at least two distinct labels and uniform vector dimensionality.
// Examples keep their order; the per-epoch visiting order is shuffled by a
// generator seeded from (seed, label index).
LinearModel train(const std::vector<TrainExample>& data, const Hyperparams& hp = {},
                  std::uint64_t seed = 0, TrainTrace* trace = nullptr);

// Argmax of the per-label decision scores, ties broken by inventory order.
Prediction predict(const LinearModel& m, const FeatureVector& x);

// Versioned text format, hexfloat weights; byte-stable round trip.
std::string render_model(const LinearModel& m);
LinearModel parse_model(const std::string& text);
void save_model(const std::string& path, const LinearModel& m);
LinearModel load_model(const std::string& path);

}  // namespace timelink
