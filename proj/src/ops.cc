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

#include "singledet/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace singledet {

namespace {

void RequireRank(const Tensor &t, size_t rank, const char *what) {
  if (t.rank() != rank) {
    throw ShapeError(std::string(what) + " expects rank " + std::to_string(rank) +
                     ", got shape " + ShapeString(t.shape()));
  }
}

void RequireSameShape(const Tensor &a, const Tensor &b, const char *what) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(what) + ": shape " + ShapeString(a.shape()) +
                     " vs " + ShapeString(b.shape()));
  }
}

bool RowIsZero(std::span<const double> row) {
  return std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; });
}

}  // namespace

Tensor EmbeddingGather(const EmbeddingTable &table, std::span<const int> ids) {
  if (ids.empty()) throw ShapeError("embedding gather of an empty sequence");
  const auto dim = static_cast<size_t>(table.dim());
  Tensor out({ids.size(), dim});
  for (size_t t = 0; t < ids.size(); ++t) {
    auto row = table.Row(ids[t]);
    std::copy(row.begin(), row.end(), out.row(t).begin());
  }
  return out;
}

Tensor Relu(const Tensor &x) {
  Tensor y = x;
  for (double &v : y.values()) v = v > 0.0 ? v : 0.0;
  return y;
}

Tensor ReluBackward(const Tensor &x, const Tensor &dy) {
  RequireSameShape(x, dy, "ReluBackward");
  Tensor dx = dy;
  for (size_t i = 0; i < dx.size(); ++i) {
    if (!(x[i] > 0.0)) dx[i] = 0.0;
  }
  return dx;
}

Tensor Softmax(const Tensor &z) {
  RequireRank(z, 1, "Softmax");
  const double peak = *std::max_element(z.values().begin(), z.values().end());
  Tensor p = z;
  double sum = 0.0;
  for (double &v : p.values()) {
    v = std::exp(v - peak);
    sum += v;
  }
  for (double &v : p.values()) v /= sum;
  return p;
}

Tensor SoftmaxBackward(const Tensor &probs, const Tensor &dprobs) {
  RequireSameShape(probs, dprobs, "SoftmaxBackward");
  double dot = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) dot += probs[i] * dprobs[i];
  Tensor dz = probs;
  for (size_t i = 0; i < dz.size(); ++i) dz[i] = probs[i] * (dprobs[i] - dot);
  return dz;
}

Tensor Dense(const Tensor &x, const Parameter &w, const Parameter &b) {
  RequireRank(x, 1, "Dense input");
  const size_t n_in = x.size();
  if (w.value.rank() != 2 || w.value.dim(0) != n_in ||
      b.value.rank() != 1 || b.value.dim(0) != w.value.dim(1)) {
    throw ShapeError("Dense: input " + ShapeString(x.shape()) + ", weight " +
                     ShapeString(w.value.shape()) + ", bias " +
                     ShapeString(b.value.shape()));
  }
  const size_t n_out = w.value.dim(1);
  Tensor y = b.value;
  double *out = y.data();
  const double *weights = w.value.data();
  for (size_t i = 0; i < n_in; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double *wrow = weights + i * n_out;
    for (size_t o = 0; o < n_out; ++o) out[o] += xi * wrow[o];
  }
  return y;
}

Tensor DenseBackward(const Tensor &x, Parameter &w, Parameter &b,
                     const Tensor &dy) {
  const size_t n_in = x.size();
  const size_t n_out = w.value.dim(1);
  if (dy.rank() != 1 || dy.size() != n_out) {
    throw ShapeError("DenseBackward: upstream " + ShapeString(dy.shape()));
  }
  for (size_t o = 0; o < n_out; ++o) b.grad[o] += dy[o];
  Tensor dx({n_in});
  const double *weights = w.value.data();
  double *wgrad = w.grad.data();
  for (size_t i = 0; i < n_in; ++i) {
    const double *wrow = weights + i * n_out;
    double *grow = wgrad + i * n_out;
    const double xi = x[i];
    double acc = 0.0;
    for (size_t o = 0; o < n_out; ++o) {
      grow[o] += xi * dy[o];
      acc += wrow[o] * dy[o];
    }
    dx[i] = acc;
  }
  return dx;
}

Tensor ConvText(const Tensor &x, const Parameter &filters, const Parameter &bias) {
  RequireRank(x, 2, "ConvText input");
  const Shape &fs = filters.value.shape();
  if (fs.size() != 3 || fs[1] != x.dim(1) || bias.value.rank() != 1 ||
      bias.value.dim(0) != fs[2]) {
    throw ShapeError("ConvText: input " + ShapeString(x.shape()) + ", filters " +
                     ShapeString(fs) + ", bias " + ShapeString(bias.value.shape()));
  }
  const size_t len = x.dim(0);
  const size_t k = fs[0];
  const size_t d = fs[1];
  const size_t nf = fs[2];
  if (len < k) {
    throw ShapeError("ConvText: sequence length " + std::to_string(len) +
                     " shorter than filter width " + std::to_string(k));
  }
  const size_t steps = len - k + 1;

  std::vector<bool> zero_row(len);
  for (size_t r = 0; r < len; ++r) zero_row[r] = RowIsZero(x.row(r));

  Tensor y({steps, nf});
  const double *w = filters.value.data();
  for (size_t t = 0; t < steps; ++t) {
    double *out = y.data() + t * nf;
    std::copy(bias.value.data(), bias.value.data() + nf, out);
    for (size_t i = 0; i < k; ++i) {
      if (zero_row[t + i]) continue;
      const double *xrow = x.data() + (t + i) * d;
      const double *wslab = w + i * d * nf;
      for (size_t j = 0; j < d; ++j) {
        const double xv = xrow[j];
        const double *wf = wslab + j * nf;
        for (size_t f = 0; f < nf; ++f) out[f] += xv * wf[f];
      }
    }
  }
  return y;
}

Tensor ConvTextBackward(const Tensor &x, Parameter &filters, Parameter &bias,
                        const Tensor &dy, bool want_input_grad) {
  const size_t len = x.dim(0);
  const size_t k = filters.value.dim(0);
  const size_t d = filters.value.dim(1);
  const size_t nf = filters.value.dim(2);
  const size_t steps = len - k + 1;
  if (dy.rank() != 2 || dy.dim(0) != steps || dy.dim(1) != nf) {
    throw ShapeError("ConvTextBackward: upstream " + ShapeString(dy.shape()));
  }

  Tensor dx;
  if (want_input_grad) dx = Tensor({len, d});
  const double *w = filters.value.data();
  double *wgrad = filters.grad.data();
  for (size_t t = 0; t < steps; ++t) {
    const double *g = dy.data() + t * nf;
    if (RowIsZero(std::span<const double>(g, nf))) continue;
    for (size_t f = 0; f < nf; ++f) bias.grad[f] += g[f];
    for (size_t i = 0; i < k; ++i) {
      const double *xrow = x.data() + (t + i) * d;
      const bool skip_w = RowIsZero(std::span<const double>(xrow, d));
      double *dxrow = want_input_grad ? dx.data() + (t + i) * d : nullptr;
      if (skip_w && dxrow == nullptr) continue;
      for (size_t j = 0; j < d; ++j) {
        const size_t base = (i * d + j) * nf;
        if (!skip_w) {
          const double xv = xrow[j];
          double *gw = wgrad + base;
          for (size_t f = 0; f < nf; ++f) gw[f] += xv * g[f];
        }
        if (dxrow != nullptr) {
          const double *wf = w + base;
          double acc = 0.0;
          for (size_t f = 0; f < nf; ++f) acc += wf[f] * g[f];
          dxrow[j] += acc;
        }
      }
    }
  }
  return dx;
}

MaxPoolResult MaxPoolOverTime(const Tensor &x) {
  RequireRank(x, 2, "MaxPoolOverTime");
  const size_t steps = x.dim(0);
  const size_t nf = x.dim(1);
  MaxPoolResult result{Tensor({nf}), std::vector<size_t>(nf, 0)};
  for (size_t f = 0; f < nf; ++f) {
    double best = x.at(0, f);
    size_t best_t = 0;
    for (size_t t = 1; t < steps; ++t) {
      if (x.at(t, f) > best) {
        best = x.at(t, f);
        best_t = t;
      }
    }
    result.out[f] = best;
    result.argmax[f] = best_t;
  }
  return result;
}

Tensor MaxPoolBackward(const Shape &input_shape, std::span<const size_t> argmax,
                       const Tensor &dy) {
  if (input_shape.size() != 2 || argmax.size() != input_shape[1] ||
      dy.size() != input_shape[1]) {
    throw ShapeError("MaxPoolBackward: input " + ShapeString(input_shape) +
                     ", upstream " + ShapeString(dy.shape()));
  }
  Tensor dx(input_shape);
  for (size_t f = 0; f < argmax.size(); ++f) dx.at(argmax[f], f) += dy[f];
  return dx;
}

Tensor Dropout(const Tensor &x, double rate, Rng &rng, bool training,
               DropoutMask *mask) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw std::invalid_argument("dropout rate must lie in [0, 1)");
  }
  if (mask != nullptr) mask->scale.clear();
  if (!training || rate == 0.0) return x;
  const double keep_scale = 1.0 / (1.0 - rate);
  Tensor y = x;
  std::vector<double> scale(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    scale[i] = rng.Uniform() < rate ? 0.0 : keep_scale;
    y[i] *= scale[i];
  }
  if (mask != nullptr) mask->scale = std::move(scale);
  return y;
}

Tensor DropoutBackward(const DropoutMask &mask, const Tensor &dy) {
  if (mask.scale.empty()) return dy;
  if (mask.scale.size() != dy.size()) {
    throw ShapeError("DropoutBackward: mask/upstream size mismatch");
  }
  Tensor dx = dy;
  for (size_t i = 0; i < dx.size(); ++i) dx[i] *= mask.scale[i];
  return dx;
}

Tensor Concat(std::span<const Tensor> xs) {
  if (xs.empty()) throw ShapeError("Concat of an empty list");
  std::vector<double> data;
  for (const Tensor &x : xs) {
    RequireRank(x, 1, "Concat");
    data.insert(data.end(), x.values().begin(), x.values().end());
  }
  return Tensor::Vector(std::move(data));
}

std::vector<Tensor> ConcatBackward(std::span<const size_t> sizes, const Tensor &dy) {
  size_t total = 0;
  for (size_t n : sizes) total += n;
  if (dy.rank() != 1 || dy.size() != total) {
    throw ShapeError("ConcatBackward: upstream " + ShapeString(dy.shape()));
  }
  std::vector<Tensor> parts;
  size_t offset = 0;
  for (size_t n : sizes) {
    parts.push_back(Tensor::Vector(std::vector<double>(
        dy.values().begin() + offset, dy.values().begin() + offset + n)));
    offset += n;
  }
  return parts;
}

double SparseCrossEntropy(const Tensor &probs, int label) {
  if (label < 0 || static_cast<size_t>(label) >= probs.size()) {
    throw std::out_of_range("label " + std::to_string(label) +
                            " out of range for " + std::to_string(probs.size()) +
                            " classes");
  }
  const double p = std::max(probs[label], std::numeric_limits<double>::min());
  return -std::log(p);
}

Tensor SoftmaxCrossEntropyBackward(const Tensor &probs, int label) {
  if (label < 0 || static_cast<size_t>(label) >= probs.size()) {
    throw std::out_of_range("label " + std::to_string(label) + " out of range");
  }
  Tensor dz = probs;
  dz[label] -= 1.0;
  return dz;
}

double CrossEntropyFromLogits(const Tensor &logits, int label) {
  if (label < 0 || static_cast<size_t>(label) >= logits.size()) {
    throw std::out_of_range("label " + std::to_string(label) + " out of range");
  }
  const double peak =
      *std::max_element(logits.values().begin(), logits.values().end());
  double sum = 0.0;
  for (double z : logits.values()) sum += std::exp(z - peak);
  return peak + std::log(sum) - logits[label];
}

}  // namespace singledet
