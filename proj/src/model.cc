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

#include "singledet/model.h"

#include <algorithm>
#include <cmath>

namespace singledet {

void ModelConfig::Validate() const {
  if (classes != 2) throw ModelConfigError("the classifier has exactly 2 classes");
  if (!use_words && !use_context && !use_syntactic) {
    throw ModelConfigError("at least one input branch must be enabled");
  }
  if (embed_dim <= 0 || max_mention_len <= 0 || context_len <= 0 ||
      filters_per_width <= 0 || cnn_dense_out <= 0 || syntactic_inputs <= 0) {
    throw ModelConfigError("model dimensions must be positive");
  }
  if (filter_widths.empty()) throw ModelConfigError("no filter widths given");
  const int shortest = std::min(max_mention_len, context_len);
  for (int k : filter_widths) {
    if (k <= 0) throw ModelConfigError("filter widths must be positive");
    if (k > shortest) {
      throw ModelConfigError("filter width " + std::to_string(k) +
                             " exceeds the shortest input length " +
                             std::to_string(shortest));
    }
  }
  if (syntactic_hidden.empty()) {
    throw ModelConfigError("syntactic branch needs at least one layer");
  }
  for (int w : syntactic_hidden) {
    if (w <= 0) throw ModelConfigError("layer widths must be positive");
  }
  for (int w : final_hidden) {
    if (w <= 0) throw ModelConfigError("layer widths must be positive");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ModelConfigError("dropout rate must lie in [0, 1)");
  }
  if (!(init_gain > 0.0)) throw ModelConfigError("init gain must be positive");
}

FeatureConfig ModelConfig::features() const {
  FeatureConfig f;
  f.max_mention_len = max_mention_len;
  f.context_len = context_len;
  f.context_mode = context_mode;
  f.use_words = use_words;
  f.use_context = use_context;
  f.use_syntactic = use_syntactic;
  f.extra_flags = syntactic_inputs - kNumSyntacticFlags;
  return f;
}

void ModelConfig::ApplyFeatures(const FeatureConfig &f) {
  max_mention_len = f.max_mention_len;
  context_len = f.context_len;
  context_mode = f.context_mode;
  use_words = f.use_words;
  use_context = f.use_context;
  use_syntactic = f.use_syntactic;
  syntactic_inputs = f.syntactic_width();
}

int ModelConfig::head_input_width() const {
  return 2 * cnn_dense_out + syntactic_hidden.back();
}

size_t ExpectedParameterCount(const ModelConfig &cfg) {
  const size_t d = cfg.embed_dim;
  const size_t nf = cfg.filters_per_width;
  size_t cnn = 0;
  for (int k : cfg.filter_widths) cnn += k * d * nf + nf;
  const size_t pooled = cfg.filter_widths.size() * nf;
  cnn += pooled * cfg.cnn_dense_out + cfg.cnn_dense_out;

  auto mlp = [](size_t in, const std::vector<int> &widths) {
    size_t n = 0;
    for (int w : widths) {
      n += in * w + w;
      in = w;
    }
    return n;
  };
  const size_t syn = mlp(cfg.syntactic_inputs, cfg.syntactic_hidden);
  std::vector<int> head = cfg.final_hidden;
  head.push_back(cfg.classes);
  return 2 * cnn + syn + mlp(cfg.head_input_width(), head);
}

int ArgMaxLabel(const Probabilities &probs) {
  return probs[1] > probs[0] ? 1 : 0;
}

SingletonModel::SingletonModel(ModelConfig cfg,
                               std::shared_ptr<const EmbeddingTable> table)
    : cfg_(std::move(cfg)), table_(std::move(table)) {
  cfg_.Validate();
  if (!table_) throw ModelConfigError("model needs an embedding table");
  if (table_->dim() != cfg_.embed_dim) {
    throw ModelConfigError("embedding table has dimension " +
                           std::to_string(table_->dim()) + ", model expects " +
                           std::to_string(cfg_.embed_dim));
  }
  words_ = AddCnnBranch("words");
  syntactic_ = AddMlp("syntactic", cfg_.syntactic_inputs, cfg_.syntactic_hidden);
  context_ = AddCnnBranch("context");
  head_ = AddMlp("head", cfg_.head_input_width(), cfg_.final_hidden);
  const int last = cfg_.final_hidden.empty() ? cfg_.head_input_width()
                                             : cfg_.final_hidden.back();
  out_w_ = AddParameter("output.w", {static_cast<size_t>(last),
                                     static_cast<size_t>(cfg_.classes)});
  out_b_ = AddParameter("output.b", {static_cast<size_t>(cfg_.classes)});
  Initialize();
  TraceShapes();
}

size_t SingletonModel::AddParameter(const std::string &name, Shape shape) {
  params_.emplace_back(name, std::move(shape));
  return params_.size() - 1;
}

SingletonModel::CnnBranch SingletonModel::AddCnnBranch(const std::string &prefix) {
  CnnBranch branch;
  const auto d = static_cast<size_t>(cfg_.embed_dim);
  const auto nf = static_cast<size_t>(cfg_.filters_per_width);
  for (int k : cfg_.filter_widths) {
    const std::string base = prefix + ".conv" + std::to_string(k);
    branch.conv_w.push_back(AddParameter(base + ".w", {static_cast<size_t>(k), d, nf}));
    branch.conv_b.push_back(AddParameter(base + ".b", {nf}));
  }
  const size_t pooled = cfg_.filter_widths.size() * nf;
  const auto out = static_cast<size_t>(cfg_.cnn_dense_out);
  branch.dense_w = AddParameter(prefix + ".dense.w", {pooled, out});
  branch.dense_b = AddParameter(prefix + ".dense.b", {out});
  return branch;
}

SingletonModel::MlpStack SingletonModel::AddMlp(const std::string &prefix,
                                                int inputs,
                                                const std::vector<int> &widths) {
  MlpStack stack;
  auto in = static_cast<size_t>(inputs);
  for (size_t l = 0; l < widths.size(); ++l) {
    const std::string base = prefix + ".dense" + std::to_string(l + 1);
    const auto out = static_cast<size_t>(widths[l]);
    stack.w.push_back(AddParameter(base + ".w", {in, out}));
    stack.b.push_back(AddParameter(base + ".b", {out}));
    in = out;
  }
  return stack;
}

void SingletonModel::Initialize() {
  Rng rng(cfg_.seed);
  for (Parameter &p : params_) {
    const Shape &s = p.value.shape();
    if (s.size() == 1) continue;  // biases start at zero
    double fan_in = 0.0;
    double fan_out = 0.0;
    if (s.size() == 2) {
      fan_in = static_cast<double>(s[0]);
      fan_out = static_cast<double>(s[1]);
    } else {
      fan_in = static_cast<double>(s[0] * s[1]);
      fan_out = static_cast<double>(s[0] * s[2]);
    }
    const double limit = cfg_.init_gain * std::sqrt(6.0 / (fan_in + fan_out));
    for (double &v : p.value.values()) v = rng.Uniform(-limit, limit);
  }
}

void SingletonModel::TraceShapes() {
  Rng unused(0);
  ForwardPass::Cnn cnn;
  const std::vector<int> pad(cfg_.max_mention_len, EmbeddingTable::kPaddingIndex);
  const Tensor branch_out = CnnForward(words_, pad, &cnn);
  trace_.branch_input = cnn.input.shape();
  for (const Tensor &t : cnn.conv_pre) trace_.conv_outputs.push_back(t.shape());
  trace_.branch_concat = cnn.concat.size();
  trace_.branch_output = branch_out.size();

  ForwardPass::Mlp syn;
  const Tensor syn_out =
      MlpForward(syntactic_, Tensor({static_cast<size_t>(cfg_.syntactic_inputs)}),
                 false, unused, &syn);
  for (const Tensor &x : syn.inputs) trace_.syntactic.push_back(x.size());
  trace_.syntactic.push_back(syn_out.size());

  ForwardPass::Mlp head;
  const Tensor hidden = MlpForward(
      head_, Tensor({static_cast<size_t>(cfg_.head_input_width())}), false,
      unused, &head);
  for (const Tensor &x : head.inputs) trace_.head.push_back(x.size());
  trace_.head.push_back(hidden.size());
  trace_.head.push_back(Dense(hidden, params_[out_w_], params_[out_b_]).size());

  // The trace must agree with the closed-form shapes.
  const auto nf = static_cast<size_t>(cfg_.filters_per_width);
  bool ok = trace_.branch_input ==
                Shape{static_cast<size_t>(cfg_.max_mention_len),
                      static_cast<size_t>(cfg_.embed_dim)} &&
            trace_.branch_concat == cfg_.filter_widths.size() * nf &&
            trace_.branch_output == static_cast<size_t>(cfg_.cnn_dense_out) &&
            trace_.syntactic.back() ==
                static_cast<size_t>(cfg_.syntactic_hidden.back()) &&
            trace_.head.front() == static_cast<size_t>(cfg_.head_input_width()) &&
            trace_.head.back() == static_cast<size_t>(cfg_.classes);
  for (size_t i = 0; ok && i < cfg_.filter_widths.size(); ++i) {
    ok = trace_.conv_outputs[i] ==
         Shape{static_cast<size_t>(cfg_.max_mention_len - cfg_.filter_widths[i] + 1),
               nf};
  }
  if (!ok || parameter_count() != ExpectedParameterCount(cfg_)) {
    throw std::logic_error("model shape trace disagrees with its configuration");
  }
}

std::vector<Parameter *> SingletonModel::parameter_ptrs() {
  std::vector<Parameter *> ptrs;
  ptrs.reserve(params_.size());
  for (Parameter &p : params_) ptrs.push_back(&p);
  return ptrs;
}

size_t SingletonModel::parameter_count() const {
  size_t n = 0;
  for (const Parameter &p : params_) n += p.value.size();
  return n;
}

Parameter *SingletonModel::FindParameter(std::string_view name) {
  for (Parameter &p : params_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

Tensor SingletonModel::CnnForward(const CnnBranch &branch,
                                  std::span<const int> ids,
                                  ForwardPass::Cnn *cache) const {
  Tensor x = EmbeddingGather(*table_, ids);
  std::vector<Tensor> pooled;
  pooled.reserve(branch.conv_w.size());
  for (size_t i = 0; i < branch.conv_w.size(); ++i) {
    Tensor pre = ConvText(x, params_[branch.conv_w[i]], params_[branch.conv_b[i]]);
    MaxPoolResult pool = MaxPoolOverTime(Relu(pre));
    pooled.push_back(std::move(pool.out));
    if (cache != nullptr) {
      cache->conv_pre.push_back(std::move(pre));
      cache->argmax.push_back(std::move(pool.argmax));
    }
  }
  Tensor concat = Concat(pooled);
  Tensor dense_pre = Dense(concat, params_[branch.dense_w], params_[branch.dense_b]);
  Tensor out = Relu(dense_pre);
  if (cache != nullptr) {
    cache->input = std::move(x);
    cache->concat = std::move(concat);
    cache->dense_pre = std::move(dense_pre);
  }
  return out;
}

void SingletonModel::CnnBackward(const CnnBranch &branch,
                                 const ForwardPass::Cnn &cache, const Tensor &dy) {
  Tensor d_pre = ReluBackward(cache.dense_pre, dy);
  Tensor d_concat = DenseBackward(cache.concat, params_[branch.dense_w],
                                  params_[branch.dense_b], d_pre);
  std::vector<size_t> sizes(branch.conv_w.size(),
                            static_cast<size_t>(cfg_.filters_per_width));
  std::vector<Tensor> d_pools = ConcatBackward(sizes, d_concat);
  for (size_t i = 0; i < branch.conv_w.size(); ++i) {
    Tensor d_relu =
        MaxPoolBackward(cache.conv_pre[i].shape(), cache.argmax[i], d_pools[i]);
    Tensor d_conv = ReluBackward(cache.conv_pre[i], d_relu);
    // Embeddings are frozen, so the input gradient is never needed.
    ConvTextBackward(cache.input, params_[branch.conv_w[i]],
                     params_[branch.conv_b[i]], d_conv, false);
  }
}

Tensor SingletonModel::MlpForward(const MlpStack &stack, Tensor x, bool training,
                                  Rng &rng, ForwardPass::Mlp *cache) const {
  for (size_t l = 0; l < stack.w.size(); ++l) {
    Tensor pre = Dense(x, params_[stack.w[l]], params_[stack.b[l]]);
    DropoutMask mask;
    Tensor out = Dropout(Relu(pre), cfg_.dropout_rate, rng, training, &mask);
    if (cache != nullptr) {
      cache->inputs.push_back(std::move(x));
      cache->pre.push_back(std::move(pre));
      cache->masks.push_back(std::move(mask));
    }
    x = std::move(out);
  }
  return x;
}

Tensor SingletonModel::MlpBackward(const MlpStack &stack,
                                   const ForwardPass::Mlp &cache, Tensor dy) {
  for (size_t l = stack.w.size(); l-- > 0;) {
    dy = DropoutBackward(cache.masks[l], dy);
    dy = ReluBackward(cache.pre[l], dy);
    dy = DenseBackward(cache.inputs[l], params_[stack.w[l]], params_[stack.b[l]], dy);
  }
  return dy;
}

Tensor SingletonModel::Logits(const EncodedExample &ex, bool training, Rng &rng,
                              ForwardPass *pass) const {
  if (ex.mention_ids.size() != static_cast<size_t>(cfg_.max_mention_len) ||
      ex.context_ids.size() != static_cast<size_t>(cfg_.context_len) ||
      ex.syntactic.size() != static_cast<size_t>(cfg_.syntactic_inputs)) {
    throw ShapeError("example shape (" + std::to_string(ex.mention_ids.size()) +
                     ", " + std::to_string(ex.context_ids.size()) + ", " +
                     std::to_string(ex.syntactic.size()) +
                     ") does not match the model inputs");
  }
  const auto branch_width = static_cast<size_t>(cfg_.cnn_dense_out);
  const auto syn_width = static_cast<size_t>(cfg_.syntactic_hidden.back());

  // Disabled branches contribute zero vectors so the head shape is fixed.
  Tensor word_out({branch_width});
  Tensor syn_out({syn_width});
  Tensor ctx_out({branch_width});
  if (cfg_.use_words) {
    word_out = CnnForward(words_, ex.mention_ids, pass ? &pass->words : nullptr);
  }
  if (cfg_.use_syntactic) {
    syn_out = MlpForward(syntactic_, Tensor::Vector(ex.syntactic), training, rng,
                         pass ? &pass->syntactic : nullptr);
  }
  if (cfg_.use_context) {
    ctx_out = CnnForward(context_, ex.context_ids, pass ? &pass->context : nullptr);
  }
  const Tensor parts[] = {word_out, syn_out, ctx_out};
  Tensor head_in = Concat(parts);
  Tensor hidden =
      MlpForward(head_, head_in, training, rng, pass ? &pass->head : nullptr);
  Tensor logits = Dense(hidden, params_[out_w_], params_[out_b_]);
  if (pass != nullptr) {
    pass->head_input = std::move(head_in);
    pass->head_output = std::move(hidden);
    pass->logits = logits;
  }
  return logits;
}

Probabilities SingletonModel::Forward(const EncodedExample &ex, bool training,
                                      Rng &rng, ForwardPass *pass) const {
  if (pass != nullptr) *pass = ForwardPass{};
  Tensor probs = Softmax(Logits(ex, training, rng, pass));
  if (pass != nullptr) pass->probs = probs;
  return {probs[0], probs[1]};
}

Probabilities SingletonModel::Predict(const EncodedExample &ex) const {
  Rng unused(0);
  return Forward(ex, false, unused);
}

int SingletonModel::PredictLabel(const EncodedExample &ex) const {
  return ArgMaxLabel(Predict(ex));
}

double SingletonModel::Loss(const EncodedExample &ex) const {
  Rng unused(0);
  return CrossEntropyFromLogits(Logits(ex, false, unused, nullptr), ex.label);
}

double SingletonModel::Backward(const ForwardPass &pass, int label, double weight) {
  const double loss = CrossEntropyFromLogits(pass.logits, label);
  Tensor dz = SoftmaxCrossEntropyBackward(pass.probs, label);
  for (double &v : dz.values()) v *= weight;

  Tensor d_hidden =
      DenseBackward(pass.head_output, params_[out_w_], params_[out_b_], dz);
  Tensor d_head_in = MlpBackward(head_, pass.head, std::move(d_hidden));

  const auto branch_width = static_cast<size_t>(cfg_.cnn_dense_out);
  const auto syn_width = static_cast<size_t>(cfg_.syntactic_hidden.back());
  const size_t sizes[] = {branch_width, syn_width, branch_width};
  std::vector<Tensor> d_parts = ConcatBackward(sizes, d_head_in);
  if (cfg_.use_words) CnnBackward(words_, pass.words, d_parts[0]);
  if (cfg_.use_syntactic) MlpBackward(syntactic_, pass.syntactic, d_parts[1]);
  if (cfg_.use_context) CnnBackward(context_, pass.context, d_parts[2]);
  return loss;
}

void SingletonModel::ZeroGrad() {
  for (Parameter &p : params_) p.ZeroGrad();
}

uint64_t SingletonModel::ParameterFingerprint() const {
  uint64_t h = 14695981039346656037ULL;
  for (const Parameter &p : params_) {
    const auto *bytes = reinterpret_cast<const unsigned char *>(p.value.data());
    for (size_t i = 0; i < p.value.size() * sizeof(double); ++i) {
      h = (h ^ bytes[i]) * 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace singledet
