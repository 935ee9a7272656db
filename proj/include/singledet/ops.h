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

#ifndef SINGLEDET_OPS_H_
#define SINGLEDET_OPS_H_

#include <span>
#include <vector>

#include "singledet/embeddings.h"
#include "singledet/rng.h"
#include "singledet/tensor.h"

// Forward and backward kernels for the classifier. Each Backward function
// takes the upstream gradient, returns the gradient with respect to the
// op's input and accumulates (+=) parameter gradients into Parameter::grad.

namespace singledet {

// Gathers embedding rows for `ids` into an [ids.size() x dim] tensor.
Tensor EmbeddingGather(const EmbeddingTable &table, std::span<const int> ids);

// Elementwise max(x, 0).
Tensor Relu(const Tensor &x);
// Passes dy where x > 0; the subgradient at 0 is 0.
Tensor ReluBackward(const Tensor &x, const Tensor &dy);

// Softmax of a rank-1 tensor, computed after subtracting the maximum.
Tensor Softmax(const Tensor &z);
Tensor SoftmaxBackward(const Tensor &probs, const Tensor &dprobs);

// y = x W + b with x [n_in], W [n_in x n_out], b [n_out].
Tensor Dense(const Tensor &x, const Parameter &w, const Parameter &b);
Tensor DenseBackward(const Tensor &x, Parameter &w, Parameter &b,
                     const Tensor &dy);

// Full-width text convolution. X [L x d], filters [k x d x F], bias [F];
// out[t, f] = sum_{i<k, j<d} X[t+i, j] * filters[i, j, f] + bias[f] for
// t in [0, L-k]. No activation is applied.
Tensor ConvText(const Tensor &x, const Parameter &filters, const Parameter &bias);
// Returns dX when `want_input_grad` is set, otherwise an empty tensor.
Tensor ConvTextBackward(const Tensor &x, Parameter &filters, Parameter &bias,
                        const Tensor &dy, bool want_input_grad = true);

// out[f] = max_t X[t, f]; ties resolve to the earliest row.
struct MaxPoolResult {
  Tensor out;
  std::vector<size_t> argmax;
};
MaxPoolResult MaxPoolOverTime(const Tensor &x);
Tensor MaxPoolBackward(const Shape &input_shape, std::span<const size_t> argmax,
                       const Tensor &dy);

// Inverted dropout. The mask holds the per-element multiplier (0 or
// 1/(1-rate)); it is empty in evaluation mode.
struct DropoutMask {
  std::vector<double> scale;
};
Tensor Dropout(const Tensor &x, double rate, Rng &rng, bool training,
               DropoutMask *mask);
Tensor DropoutBackward(const DropoutMask &mask, const Tensor &dy);

// Concatenation of rank-1 tensors.
Tensor Concat(std::span<const Tensor> xs);
std::vector<Tensor> ConcatBackward(std::span<const size_t> sizes, const Tensor &dy);

// -ln(probs[label]); probabilities are clamped below at the smallest
// normal double so the loss stays finite.
double SparseCrossEntropy(const Tensor &probs, int label);
// Gradient of SparseCrossEntropy(Softmax(z), label) with respect to z:
// probs - onehot(label).
Tensor SoftmaxCrossEntropyBackward(const Tensor &probs, int label);
// Numerically stable -log softmax(z)[label] from logits.
double CrossEntropyFromLogits(const Tensor &logits, int label);

}  // namespace singledet

#endif  // SINGLEDET_OPS_H_
