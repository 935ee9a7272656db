// Copyright 2026 The Singledet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SINGLEDET_MODEL_H_
#define SINGLEDET_MODEL_H_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "singledet/embeddings.h"
#include "singledet/features.h"
#include "singledet/ops.h"
#include "singledet/rng.h"
#include "singledet/tensor.h"

namespace singledet {

class ModelConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Hyperparameters of the three-branch classifier. Defaults reproduce the
// reference configuration: two CNN branches (mention words and context)
// with filter widths 2/3/4 x 64 filters and a dense-16 output, a syntactic
// MLP 3 -> 32 -> 16, and a head 48 -> 32 -> 8 -> 2.
struct ModelConfig {
  int embed_dim = 300;
  int max_mention_len = 10;
  int context_len = 10;
  ContextMode context_mode = ContextMode::kTwoByTwo;
  std::vector<int> filter_widths = {2, 3, 4};
  int filters_per_width = 64;
  int cnn_dense_out = 16;
  int syntactic_inputs = kNumSyntacticFlags;
  std::vector<int> syntactic_hidden = {32, 16};
  std::vector<int> final_hidden = {32, 8};
  int classes = 2;
  double dropout_rate = 0.2;
  bool use_words = true;
  bool use_context = true;
  bool use_syntactic = true;
  uint64_t seed = 0;
  // Multiplier on the Glorot-uniform limit sqrt(6 / (fan_in + fan_out)).
  double init_gain = 1.0;

  void Validate() const;

  // Feature-encoder settings matching this model's input shapes.
  FeatureConfig features() const;
  void ApplyFeatures(const FeatureConfig &cfg);

  int head_input_width() const;

  bool operator==(const ModelConfig &other) const = default;
};

// Closed-form number of scalar parameters the config allocates. Disabled
// branches keep their parameters, so ablations do not change the count.
size_t ExpectedParameterCount(const ModelConfig &cfg);

// Per-layer output shapes, recorded by a dry forward pass at build time.
struct ShapeTrace {
  Shape branch_input;               // [max_mention_len x embed_dim]
  std::vector<Shape> conv_outputs;  // one per filter width
  size_t branch_concat = 0;         // widths x filters
  size_t branch_output = 0;         // cnn_dense_out
  std::vector<size_t> syntactic;    // input, hidden...
  std::vector<size_t> head;         // input, hidden..., classes
};

// Intermediate values of one forward pass, consumed by Backward.
struct ForwardPass {
  struct Cnn {
    Tensor input;
    std::vector<Tensor> conv_pre;
    std::vector<std::vector<size_t>> argmax;
    Tensor concat;
    Tensor dense_pre;
  };
  struct Mlp {
    std::vector<Tensor> inputs;
    std::vector<Tensor> pre;
    std::vector<DropoutMask> masks;
  };
  Cnn words;
  Cnn context;
  Mlp syntactic;
  Mlp head;
  Tensor head_input;
  Tensor head_output;
  Tensor logits;
  Tensor probs;
};

// Two-class output: index 0 is NON-SINGLETON, index 1 is SINGLETON.
using Probabilities = std::array<double, 2>;

// argmax with ties resolved to class 0.
int ArgMaxLabel(const Probabilities &probs);

class SingletonModel {
 public:
  // Allocates and initializes every parameter from `cfg.seed`. Throws
  // ModelConfigError on invalid configs or a table of the wrong dimension.
  SingletonModel(ModelConfig cfg, std::shared_ptr<const EmbeddingTable> table);

  const ModelConfig &config() const { return cfg_; }
  const EmbeddingTable &table() const { return *table_; }
  std::shared_ptr<const EmbeddingTable> table_ptr() const { return table_; }
  const ShapeTrace &shape_trace() const { return trace_; }

  std::vector<Parameter> &parameters() { return params_; }
  const std::vector<Parameter> &parameters() const { return params_; }
  std::vector<Parameter *> parameter_ptrs();
  size_t parameter_count() const;
  Parameter *FindParameter(std::string_view name);

  // Fills `pass` when non-null. `rng` drives dropout and is only read in
  // training mode.
  Probabilities Forward(const EncodedExample &ex, bool training, Rng &rng,
                        ForwardPass *pass = nullptr) const;
  Probabilities Predict(const EncodedExample &ex) const;
  int PredictLabel(const EncodedExample &ex) const;

  // Cross-entropy of the example in evaluation mode, from logits.
  double Loss(const EncodedExample &ex) const;

  // Accumulates d(loss)/d(params) * weight into the parameter grads and
  // returns the cross-entropy for `label`.
  double Backward(const ForwardPass &pass, int label, double weight = 1.0);

  void ZeroGrad();

  // FNV-1a over all parameter values.
  uint64_t ParameterFingerprint() const;

 private:
  struct CnnBranch {
    std::vector<size_t> conv_w;
    std::vector<size_t> conv_b;
    size_t dense_w = 0;
    size_t dense_b = 0;
  };
  struct MlpStack {
    std::vector<size_t> w;
    std::vector<size_t> b;
  };

  size_t AddParameter(const std::string &name, Shape shape);
  CnnBranch AddCnnBranch(const std::string &prefix);
  MlpStack AddMlp(const std::string &prefix, int inputs,
                  const std::vector<int> &widths);
  void Initialize();
  void TraceShapes();

  Tensor CnnForward(const CnnBranch &branch, std::span<const int> ids,
                    ForwardPass::Cnn *cache) const;
  void CnnBackward(const CnnBranch &branch, const ForwardPass::Cnn &cache,
                   const Tensor &dy);
  Tensor MlpForward(const MlpStack &stack, Tensor x, bool training, Rng &rng,
                    ForwardPass::Mlp *cache) const;
  Tensor MlpBackward(const MlpStack &stack, const ForwardPass::Mlp &cache,
                     Tensor dy);
  Tensor Logits(const EncodedExample &ex, bool training, Rng &rng,
                ForwardPass *pass) const;

  ModelConfig cfg_;
  std::shared_ptr<const EmbeddingTable> table_;
  std::vector<Parameter> params_;
  CnnBranch words_;
  CnnBranch context_;
  MlpStack syntactic_;
  MlpStack head_;
  size_t out_w_ = 0;
  size_t out_b_ = 0;
  ShapeTrace trace_;
};

}  // namespace singledet

#endif  // SINGLEDET_MODEL_H_
