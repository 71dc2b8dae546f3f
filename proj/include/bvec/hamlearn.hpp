// Copyright 2026 The bvec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Learned binary hashing from speaker triplets.
//
// The objective is a hinge over code distances: a triplet (anchor,
// same-speaker positive, impostor negative) contributes
// max(0, d(h, h+) - d(h, h-) + margin), plus lambda/2 * |params|^2.
// Since the sign binarization has no usable gradient, training runs on a
// smooth surrogate: activations pass through tanh(beta * a), codes map to
// (-1, 1), and the Hamming distance is replaced by soft_hamming, which
// agrees with it exactly on saturated +-1 vectors. Binarization happens
// only at encode time.
//
// Two model families:
//   FullLinearModel     b x D projection, all dimensions mixed jointly.
//                       With zero epochs this is exactly the sampled
//                       random-hyperplane model, in the shared generator.
//   BlockDiagonalModel  one independent block per input dimension; block i
//                       holds T_i (weight, bias) rows, i.e. T_i learned
//                       scalar thresholds for that coordinate. The bit
//                       budget T_i descends linearly (see bit_allocation).
//
// Per-bit biases exist only in the block family: a pure linear form on a
// scalar would make every bit of a block the same up to a fixed flip, so
// thresholds are what give extra bits representational power there.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bvec/binary_code.hpp"
#include "bvec/bit_allocation.hpp"
#include "bvec/dense_vector.hpp"
#include "bvec/errors.hpp"
#include "bvec/rng.hpp"

namespace bvec::hamlearn {

/// One training sample: anchor and positive share a speaker, the negative
/// is an impostor. Speaker labels travel along as metadata from the sampler.
struct Triplet {
  Triplet(DenseVector anchor_in, DenseVector positive_in, DenseVector negative_in,
          std::string speaker = {}, std::string impostor = {})
      : anchor(std::move(anchor_in)),
        positive(std::move(positive_in)),
        negative(std::move(negative_in)),
        anchor_speaker(std::move(speaker)),
        negative_speaker(std::move(impostor)) {
    if (anchor.dim() != positive.dim() || anchor.dim() != negative.dim()) {
      throw DimensionMismatch("Triplet: member dimensions differ");
    }
  }

  DenseVector anchor;
  DenseVector positive;
  DenseVector negative;
  std::string anchor_speaker;
  std::string negative_speaker;
};

struct TrainConfig {
  double lambda = 1e-4;           // regularization weight
  double learning_rate = 0.001;   // sized for the unit-scale init activations
  std::size_t epochs = 2;         // short refinement; 0 means "initialization only"
  std::size_t batch_size = 64;
  double margin = 1.0;
  double relaxation_beta = 2.0;  // sharpness of the tanh surrogate
  std::uint64_t seed = 0;

  void validate() const {
    if (lambda < 0.0) throw InvalidConfig("TrainConfig: lambda must be >= 0");
    if (!(learning_rate > 0.0)) throw InvalidConfig("TrainConfig: learning_rate must be > 0");
    if (batch_size == 0) throw InvalidConfig("TrainConfig: batch_size must be >= 1");
    if (!(margin > 0.0)) throw InvalidConfig("TrainConfig: margin must be > 0");
    if (!(relaxation_beta > 0.0)) throw InvalidConfig("TrainConfig: relaxation_beta must be > 0");
  }
};

/// Jointly learned b x D linear projection, no biases. Immutable.
class FullLinearModel {
 public:
  FullLinearModel(std::size_t dim_in, std::size_t nbits, std::vector<double> weights)
      : dim_in_(dim_in), nbits_(nbits), weights_(std::move(weights)) {
    if (dim_in == 0 || nbits == 0) {
      throw InvalidConfig("FullLinearModel: dims and bits must be >= 1");
    }
    if (weights_.size() != dim_in * nbits) {
      throw InvalidConfig("FullLinearModel: weight matrix shape mismatch");
    }
    for (double w : weights_) {
      if (!std::isfinite(w)) throw InvalidConfig("FullLinearModel: non-finite weight");
    }
  }

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t nbits() const noexcept { return nbits_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> row(std::size_t j) const {
    return std::span<const double>(weights_).subspan(j * dim_in_, dim_in_);
  }

 private:
  std::size_t dim_in_;
  std::size_t nbits_;
  std::vector<double> weights_;  // row-major nbits x dim_in
};

/// Learned thresholds for one input dimension: bit j of the block fires
/// when weight[j] * x_i + bias[j] >= 0.
struct ScalarBlock {
  std::vector<double> weight;
  std::vector<double> bias;
};

/// Block-diagonal model: one ScalarBlock per input dimension, widths given
/// by the bit allocation. Code width is the allocation's actual total.
class BlockDiagonalModel {
 public:
  BlockDiagonalModel(std::size_t dim_in, BitAllocation allocation,
                     std::vector<ScalarBlock> blocks)
      : dim_in_(dim_in), allocation_(std::move(allocation)), blocks_(std::move(blocks)) {
    if (dim_in == 0) throw InvalidConfig("BlockDiagonalModel: dims must be >= 1");
    if (allocation_.counts.size() != dim_in || blocks_.size() != dim_in) {
      throw InvalidConfig("BlockDiagonalModel: block count mismatch");
    }
    for (std::size_t i = 0; i < dim_in; ++i) {
      if (blocks_[i].weight.size() != allocation_.counts[i] ||
          blocks_[i].bias.size() != allocation_.counts[i]) {
        throw InvalidConfig("BlockDiagonalModel: block " + std::to_string(i) +
                            " width mismatch");
      }
      for (double w : blocks_[i].weight) {
        if (!std::isfinite(w)) throw InvalidConfig("BlockDiagonalModel: non-finite weight");
      }
      for (double c : blocks_[i].bias) {
        if (!std::isfinite(c)) throw InvalidConfig("BlockDiagonalModel: non-finite bias");
      }
    }
  }

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t nbits() const noexcept { return allocation_.actual_bits; }
  const BitAllocation& allocation() const noexcept { return allocation_; }
  std::span<const ScalarBlock> blocks() const noexcept { return blocks_; }

 private:
  std::size_t dim_in_;
  BitAllocation allocation_;
  std::vector<ScalarBlock> blocks_;
};

/// Hinge over exact code distances: max(0, d(h,h+) - d(h,h-) + margin).
inline double triplet_loss(const BinaryCode& h, const BinaryCode& hp,
                           const BinaryCode& hn, double margin = 1.0) {
  const double dp = static_cast<double>(hamming(h, hp));
  const double dn = static_cast<double>(hamming(h, hn));
  const double arg = dp - dn + margin;
  return arg > 0.0 ? arg : 0.0;
}

/// Smooth stand-in for the Hamming distance on (-1,1)-valued codes:
/// (B - u.v) / 2. Coincides with the integer distance when both inputs sit
/// exactly on {-1,+1} (0 mapped to -1, 1 to +1).
inline double soft_hamming(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DimensionMismatch("soft_hamming: lengths differ");
  return (static_cast<double>(u.size()) - dot(u, v)) / 2.0;
}

inline BinaryCode encode(const FullLinearModel& model, const DenseVector& x) {
  if (x.dim() != model.dim_in()) {
    throw DimensionMismatch("hamlearn::encode: input dimension mismatch");
  }
  BinaryCode code(model.nbits());
  for (std::size_t j = 0; j < model.nbits(); ++j) {
    if (dot(model.row(j), x.values()) >= 0.0) code.set_bit(j, true);
  }
  return code;
}

/// Block codes concatenate in dimension order, then bit order within the
/// block; the boundary activation 0 maps to 1, as everywhere else.
inline BinaryCode encode(const BlockDiagonalModel& model, const DenseVector& x) {
  if (x.dim() != model.dim_in()) {
    throw DimensionMismatch("hamlearn::encode: input dimension mismatch");
  }
  BinaryCode code(model.nbits());
  std::size_t bit = 0;
  for (std::size_t i = 0; i < model.dim_in(); ++i) {
    const ScalarBlock& block = model.blocks()[i];
    for (std::size_t j = 0; j < block.weight.size(); ++j, ++bit) {
      if (block.weight[j] * x[i] + block.bias[j] >= 0.0) code.set_bit(bit, true);
    }
  }
  return code;
}

namespace detail {

// Subgradient convention: the hinge contributes zero gradient at and below
// the kink (arg <= 0).

// Relaxed hinge term for one triplet under the full model. Fills the three
// nbits-sized scratch buffers; when grad is non-null and the hinge is
// active, accumulates d(arg)/dW into it (row-major nbits x dim).
inline double full_relaxed_term(std::span<const double> weights, std::size_t dim,
                                std::size_t nbits, const Triplet& t, double margin,
                                double beta, std::vector<double>& u,
                                std::vector<double>& up, std::vector<double>& un,
                                double* grad) {
  const auto x = t.anchor.values();
  const auto xp = t.positive.values();
  const auto xn = t.negative.values();
  double cross = 0.0;  // u.un - u.up
  for (std::size_t j = 0; j < nbits; ++j) {
    const std::span<const double> row = weights.subspan(j * dim, dim);
    u[j] = std::tanh(beta * dot(row, x));
    up[j] = std::tanh(beta * dot(row, xp));
    un[j] = std::tanh(beta * dot(row, xn));
    cross += u[j] * un[j] - u[j] * up[j];
  }
  const double arg = 0.5 * cross + margin;
  if (arg <= 0.0) return 0.0;
  if (grad != nullptr) {
    for (std::size_t j = 0; j < nbits; ++j) {
      const double ga = 0.5 * beta * (1.0 - u[j] * u[j]) * (un[j] - up[j]);
      const double gn = 0.5 * beta * u[j] * (1.0 - un[j] * un[j]);
      const double gp = -0.5 * beta * u[j] * (1.0 - up[j] * up[j]);
      double* grow = grad + j * dim;
      for (std::size_t k = 0; k < dim; ++k) {
        grow[k] += ga * x[k] + gn * xn[k] + gp * xp[k];
      }
    }
  }
  return arg;
}

// Scalar-block version: one dimension's coordinates (x, xp, xn), T rows of
// (weight, bias). Accumulates into gw/gc when non-null and active.
inline double block_relaxed_term(std::span<const double> w, std::span<const double> c,
                                 double x, double xp, double xn, double margin,
                                 double beta, double* gw, double* gc) {
  const std::size_t nbits = w.size();
  double cross = 0.0;
  double arg = margin;
  // Small T: two passes, recomputing tanh, beat buffering here.
  for (std::size_t j = 0; j < nbits; ++j) {
    const double u = std::tanh(beta * (w[j] * x + c[j]));
    const double upos = std::tanh(beta * (w[j] * xp + c[j]));
    const double uneg = std::tanh(beta * (w[j] * xn + c[j]));
    cross += u * uneg - u * upos;
  }
  arg += 0.5 * cross;
  if (arg <= 0.0) return 0.0;
  if (gw != nullptr) {
    for (std::size_t j = 0; j < nbits; ++j) {
      const double u = std::tanh(beta * (w[j] * x + c[j]));
      const double upos = std::tanh(beta * (w[j] * xp + c[j]));
      const double uneg = std::tanh(beta * (w[j] * xn + c[j]));
      const double da = 0.5 * beta * (1.0 - u * u) * (uneg - upos);
      const double dn = 0.5 * beta * u * (1.0 - uneg * uneg);
      const double dp = -0.5 * beta * u * (1.0 - upos * upos);
      gw[j] += da * x + dn * xn + dp * xp;
      gc[j] += da + dn + dp;
    }
  }
  return arg;
}

inline void shuffle_indices(std::vector<std::size_t>& order, GaussianRng& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform_below(i)]);
  }
}

inline double sum_squares(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

inline void check_triplet_dims(std::span<const Triplet> triplets, std::size_t dim) {
  for (const Triplet& t : triplets) {
    if (t.anchor.dim() != dim) {
      throw DimensionMismatch("triplet dimension does not match model dimension");
    }
  }
}

}  // namespace detail

/// Exact regularized objective: sum of binarized triplet hinges plus
/// lambda/2 * |W|^2 (Frobenius).
inline double objective(const FullLinearModel& model, std::span<const Triplet> triplets,
                        double lambda, double margin = 1.0) {
  detail::check_triplet_dims(triplets, model.dim_in());
  double acc = 0.5 * lambda * detail::sum_squares(model.weights());
  for (const Triplet& t : triplets) {
    acc += triplet_loss(encode(model, t.anchor), encode(model, t.positive),
                        encode(model, t.negative), margin);
  }
  return acc;
}

/// Exact objective for the block model. The squared-norm term covers biases
/// too; they are parameters like any other.
inline double objective(const BlockDiagonalModel& model, std::span<const Triplet> triplets,
                        double lambda, double margin = 1.0) {
  detail::check_triplet_dims(triplets, model.dim_in());
  double norm2 = 0.0;
  for (const ScalarBlock& block : model.blocks()) {
    norm2 += detail::sum_squares(block.weight) + detail::sum_squares(block.bias);
  }
  double acc = 0.5 * lambda * norm2;
  for (const Triplet& t : triplets) {
    acc += triplet_loss(encode(model, t.anchor), encode(model, t.positive),
                        encode(model, t.negative), margin);
  }
  return acc;
}

/// Training surrogate for the full model: tanh codes, soft Hamming inside
/// the hinge, same regularizer. This is the function whose gradient is
/// finite-difference checkable.
inline double relaxed_objective(const FullLinearModel& model,
                                std::span<const Triplet> triplets, double lambda,
                                double margin, double beta) {
  detail::check_triplet_dims(triplets, model.dim_in());
  const std::size_t nbits = model.nbits();
  std::vector<double> u(nbits), up(nbits), un(nbits);
  double acc = 0.5 * lambda * detail::sum_squares(model.weights());
  for (const Triplet& t : triplets) {
    acc += detail::full_relaxed_term(model.weights(), model.dim_in(), nbits, t,
                                     margin, beta, u, up, un, nullptr);
  }
  return acc;
}

/// Full-batch gradient of relaxed_objective with respect to the weights,
/// row-major like the weight matrix.
inline std::vector<double> relaxed_gradient(const FullLinearModel& model,
                                            std::span<const Triplet> triplets,
                                            double lambda, double margin, double beta) {
  detail::check_triplet_dims(triplets, model.dim_in());
  const std::size_t nbits = model.nbits();
  std::vector<double> grad(model.weights().size(), 0.0);
  std::vector<double> u(nbits), up(nbits), un(nbits);
  for (const Triplet& t : triplets) {
    detail::full_relaxed_term(model.weights(), model.dim_in(), nbits, t, margin,
                              beta, u, up, un, grad.data());
  }
  for (std::size_t k = 0; k < grad.size(); ++k) {
    grad[k] += lambda * model.weights()[k];
  }
  return grad;
}

/// Training surrogate the block trainer actually minimizes: every dimension
/// contributes its own relaxed hinge over just that block's bits (blocks
/// are trained independently), plus the joint regularizer.
inline double block_relaxed_objective(const BlockDiagonalModel& model,
                                      std::span<const Triplet> triplets, double lambda,
                                      double margin, double beta) {
  detail::check_triplet_dims(triplets, model.dim_in());
  double norm2 = 0.0;
  for (const ScalarBlock& block : model.blocks()) {
    norm2 += detail::sum_squares(block.weight) + detail::sum_squares(block.bias);
  }
  double acc = 0.5 * lambda * norm2;
  for (std::size_t i = 0; i < model.dim_in(); ++i) {
    const ScalarBlock& block = model.blocks()[i];
    for (const Triplet& t : triplets) {
      acc += detail::block_relaxed_term(block.weight, block.bias, t.anchor[i],
                                        t.positive[i], t.negative[i], margin, beta,
                                        nullptr, nullptr);
    }
  }
  return acc;
}

/// Full-batch gradient of block_relaxed_objective, shaped like the blocks.
inline std::vector<ScalarBlock> block_relaxed_gradient(const BlockDiagonalModel& model,
                                                       std::span<const Triplet> triplets,
                                                       double lambda, double margin,
                                                       double beta) {
  detail::check_triplet_dims(triplets, model.dim_in());
  std::vector<ScalarBlock> grad(model.dim_in());
  for (std::size_t i = 0; i < model.dim_in(); ++i) {
    const ScalarBlock& block = model.blocks()[i];
    grad[i].weight.assign(block.weight.size(), 0.0);
    grad[i].bias.assign(block.bias.size(), 0.0);
    for (const Triplet& t : triplets) {
      detail::block_relaxed_term(block.weight, block.bias, t.anchor[i], t.positive[i],
                                 t.negative[i], margin, beta, grad[i].weight.data(),
                                 grad[i].bias.data());
    }
    for (std::size_t j = 0; j < block.weight.size(); ++j) {
      grad[i].weight[j] += lambda * block.weight[j];
      grad[i].bias[j] += lambda * block.bias[j];
    }
  }
  return grad;
}

/// Mini-batch subgradient descent on the relaxed objective, constant step.
/// Weights start as i.i.d. standard normals drawn from GaussianRng(seed) in
/// row-major order; with epochs = 0 the result therefore encodes exactly
/// like lsh::sample_model(dim, nbits, seed). Deterministic in (data, cfg).
inline FullLinearModel train_full(std::span<const Triplet> triplets, std::size_t dim,
                                  std::size_t nbits, const TrainConfig& cfg) {
  cfg.validate();
  if (dim == 0 || nbits == 0) throw InvalidConfig("train_full: dims and bits must be >= 1");
  if (triplets.empty()) throw InvalidConfig("train_full: empty triplet set");
  detail::check_triplet_dims(triplets, dim);

  GaussianRng rng(cfg.seed);
  std::vector<double> weights(nbits * dim);
  for (auto& w : weights) w = rng.gaussian();

  const std::size_t n = triplets.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> grad(weights.size());
  std::vector<double> u(nbits), up(nbits), un(nbits);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    detail::shuffle_indices(order, rng);
    for (std::size_t start = 0; start < n; start += cfg.batch_size) {
      const std::size_t stop = std::min(n, start + cfg.batch_size);
      std::fill(grad.begin(), grad.end(), 0.0);
      double batch_loss = 0.0;
      for (std::size_t b = start; b < stop; ++b) {
        batch_loss += detail::full_relaxed_term(weights, dim, nbits, triplets[order[b]],
                                                cfg.margin, cfg.relaxation_beta, u, up,
                                                un, grad.data());
      }
      if (!std::isfinite(batch_loss)) {
        throw NumericalFailure("train_full: non-finite loss at epoch " +
                               std::to_string(epoch));
      }
      const double reg = cfg.lambda * static_cast<double>(stop - start) /
                         static_cast<double>(n);
      for (std::size_t k = 0; k < weights.size(); ++k) {
        weights[k] -= cfg.learning_rate * (grad[k] + reg * weights[k]);
      }
    }
  }
  return FullLinearModel(dim, nbits, std::move(weights));
}

/// Trains each dimension's block independently on that coordinate of the
/// triplets (scalar inputs augmented with a constant 1 for the bias row).
/// Block i draws from its own child stream derive_stream(seed, i), so the
/// result is identical whether blocks run sequentially or in parallel.
///
/// Initialization is data-scaled: weights are standard normal divided by the
/// coordinate's anchor spread, and bit j of a width-T block starts with its
/// threshold at the empirical (j+1)/(T+1) quantile of the anchor coordinate.
/// Activations then start at unit scale for any input scaling, and the bits
/// of a block start as an equal-mass partition of the observed values. Per
/// block the stream is consumed as exactly width gaussians.
inline BlockDiagonalModel train_block(std::span<const Triplet> triplets, std::size_t dim,
                                      std::size_t nbits, const TrainConfig& cfg) {
  cfg.validate();
  if (dim == 0 || nbits == 0) throw InvalidConfig("train_block: dims and bits must be >= 1");
  if (triplets.empty()) throw InvalidConfig("train_block: empty triplet set");
  detail::check_triplet_dims(triplets, dim);

  BitAllocation alloc = allocate_bits(dim, nbits);
  const std::size_t n = triplets.size();

  // Coordinate-major copies of the training data; block training reads one
  // dimension at a time and the Triplet layout is vector-major.
  std::vector<double> ax(dim * n), px(dim * n), nx(dim * n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < dim; ++i) {
      ax[i * n + t] = triplets[t].anchor[i];
      px[i * n + t] = triplets[t].positive[i];
      nx[i * n + t] = triplets[t].negative[i];
    }
  }

  std::vector<ScalarBlock> blocks(dim);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t width = alloc.counts[i];
    GaussianRng rng(derive_stream(cfg.seed, i));
    ScalarBlock& block = blocks[i];

    const double* anchors = ax.data() + i * n;
    double mean = 0.0;
    for (std::size_t t = 0; t < n; ++t) mean += anchors[t];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      var += (anchors[t] - mean) * (anchors[t] - mean);
    }
    const double spread = std::sqrt(var / static_cast<double>(n));
    const double scale = spread > 0.0 ? 1.0 / spread : 1.0;

    std::vector<double> sorted(anchors, anchors + n);
    std::sort(sorted.begin(), sorted.end());

    block.weight.resize(width);
    for (auto& w : block.weight) w = rng.gaussian() * scale;
    block.bias.resize(width);
    for (std::size_t j = 0; j < width; ++j) {
      const double q = static_cast<double>(j + 1) / static_cast<double>(width + 1);
      const double threshold = sorted[static_cast<std::size_t>(q * static_cast<double>(n - 1))];
      block.bias[j] = -block.weight[j] * threshold;
    }

    const double* x = ax.data() + i * n;
    const double* xp = px.data() + i * n;
    const double* xn = nx.data() + i * n;
    std::vector<double> gw(width), gc(width);
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
      detail::shuffle_indices(order, rng);
      for (std::size_t start = 0; start < n; start += cfg.batch_size) {
        const std::size_t stop = std::min(n, start + cfg.batch_size);
        std::fill(gw.begin(), gw.end(), 0.0);
        std::fill(gc.begin(), gc.end(), 0.0);
        double batch_loss = 0.0;
        for (std::size_t b = start; b < stop; ++b) {
          const std::size_t t = order[b];
          batch_loss += detail::block_relaxed_term(block.weight, block.bias, x[t],
                                                   xp[t], xn[t], cfg.margin,
                                                   cfg.relaxation_beta, gw.data(),
                                                   gc.data());
        }
        if (!std::isfinite(batch_loss)) {
          throw NumericalFailure("train_block: non-finite loss in block " +
                                 std::to_string(i) + " at epoch " +
                                 std::to_string(epoch));
        }
        const double reg = cfg.lambda * static_cast<double>(stop - start) /
                           static_cast<double>(n);
        for (std::size_t j = 0; j < width; ++j) {
          block.weight[j] -= cfg.learning_rate * (gw[j] + reg * block.weight[j]);
          block.bias[j] -= cfg.learning_rate * (gc[j] + reg * block.bias[j]);
        }
      }
    }
  }
  return BlockDiagonalModel(dim, std::move(alloc), std::move(blocks));
}

}  // namespace bvec::hamlearn
