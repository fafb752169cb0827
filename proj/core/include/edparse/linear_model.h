#ifndef EDPARSE_LINEAR_MODEL_H_
#define EDPARSE_LINEAR_MODEL_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "edparse/conllu.h"
#include "edparse/features.h"
#include "edparse/transition.h"

namespace edparse {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Multiclass linear scorer over hashed features, one weight column per
// transition.
//
// Text file format (version 1):
//
//   edparse-model 1
//   feature_dim <D>
//   transitions <T>
//   <transition>            T lines, column order, trace encoding
//   weights <N>
//   <feature>\t<column>\t<weight>   N lines, sorted by (feature, column)
//
// Weights are written with 17 significant digits, so a save/load round
// trip is exact.
class LinearModel {
 public:
  LinearModel() = default;
  LinearModel(std::vector<Transition> transitions, std::uint32_t feature_dim);

  const std::vector<Transition>& transitions() const { return transitions_; }
  std::uint32_t feature_dim() const { return feature_dim_; }
  std::optional<int> ColumnOf(const Transition& t) const;
  std::vector<std::string> EdgeLabels() const;

  double Weight(std::uint32_t feature, int column) const;
  void SetWeight(std::uint32_t feature, int column, double value);
  size_t NonZeroWeights() const { return weights_.size(); }

  double Score(const FeatureVector& features, int column) const;
  // Index into `candidates` of the highest score; ties go to the smaller
  // column. Candidates unknown to the model score -infinity.
  size_t Best(const FeatureVector& features,
              std::span<const Transition> candidates) const;

  void Save(std::ostream& out) const;
  static LinearModel Load(std::istream& in);

 private:
  std::uint64_t Key(std::uint32_t feature, int column) const {
    return static_cast<std::uint64_t>(feature) * transitions_.size() +
           static_cast<std::uint64_t>(column);
  }

  std::vector<Transition> transitions_;
  std::map<Transition, int> columns_;
  std::uint32_t feature_dim_ = kDefaultFeatureDim;
  std::unordered_map<std::uint64_t, double> weights_;
};

struct TrainOptions {
  int epochs = 10;
  std::uint64_t seed = 1;
  ConstraintParams params;
  int budget_multiplier = 50;
  std::uint32_t feature_dim = kDefaultFeatureDim;
};

struct EpochStats {
  int epoch = 0;
  std::int64_t correct = 0;  // oracle steps where the argmax was right
  std::int64_t total = 0;
  double accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / total;
  }
};

struct TrainResult {
  LinearModel model;
  std::vector<EpochStats> epochs;
  // "<sent_id or ordinal>: <diagnostic>" for sentences the oracle cannot
  // derive; they are left out of training.
  std::vector<std::string> dropped;
};

// Averaged perceptron by imitation of the static oracle. The transition
// inventory is Shift, Reduce-0, Reduce-1, Node, Swap, Finish followed by
// Left/Right edges over the sorted training labels. Sentence order is
// reshuffled each epoch from `seed`. Throws ModelError for an empty
// treebank or one where no sentence is derivable.
TrainResult Train(const Document& treebank, const TrainOptions& options,
                  std::ostream* log = nullptr);

// Fraction of oracle steps on which the model's best legal transition
// equals the oracle's, following the oracle's path. Non-derivable
// sentences are skipped.
EpochStats OracleAccuracy(const LinearModel& model, const Document& treebank,
                          const ConstraintParams& params = {},
                          int budget_multiplier = 50);

// Shift, Reduce-0, Reduce-1, Node, Swap, Finish, then Left/Right per label.
std::vector<Transition> TransitionInventory(
    const std::vector<std::string>& labels);

}  // namespace edparse

#endif  // EDPARSE_LINEAR_MODEL_H_
