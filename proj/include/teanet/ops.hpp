#pragma once

#include <string>
#include <vector>

#include "teanet/rng.hpp"
#include "teanet/tensor.hpp"

namespace teanet {

enum class Padding { valid, same };
enum class Mode { train, infer };

std::string to_string(Padding p);

// Output length of a strided window op: floor((L-k)/s)+1 under valid
// padding, ceil(L/s) under same padding.
int window_output_length(int input_length, int kernel, int stride, Padding padding);
// Zero rows implicitly prepended under same padding (TF convention: the
// larger half of the total pad goes to the right).
int window_pad_before(int input_length, int kernel, int stride, Padding padding);

// 1D convolution hyperparameters plus its learnable tensors. Weights are laid
// out [tap][in_channel][filter]; gradient buffers are sized on first use by a
// recording tape and overwritten by each backward pass.
struct ConvSpec {
  int kernel_size = 1;
  int stride = 1;
  Padding padding = Padding::same;
  int filters = 1;
  int in_channels = 1;

  std::vector<double> weights;
  std::vector<double> bias;
  std::vector<double> weights_grad;
  std::vector<double> bias_grad;

  static ConvSpec glorot(int kernel_size, int stride, Padding padding, int in_channels,
                         int filters, RngStream& rng);

  std::size_t weight_count() const {
    return static_cast<std::size_t>(kernel_size) * in_channels * filters;
  }
  int output_length(int input_length) const {
    return window_output_length(input_length, kernel_size, stride, padding);
  }
  void validate(const Shape3& input, const char* op_name) const;
};

struct PoolSpec {
  int pool_size = 2;
  int stride = 2;
  Padding padding = Padding::same;

  int output_length(int input_length) const {
    return window_output_length(input_length, pool_size, stride, padding);
  }
  void validate() const;
};

// Per-channel batch normalization state. `mode` selects batch statistics
// (train, updates the running averages) or the frozen running statistics
// (infer, a pure affine map).
struct BatchNormParams {
  int channels = 1;
  double epsilon = 1e-3;
  double momentum = 0.99;
  Mode mode = Mode::train;

  std::vector<double> scale;         // delta
  std::vector<double> shift;         // Delta
  std::vector<double> running_mean;  // mu
  std::vector<double> running_var;   // sigma^2

  std::vector<double> scale_grad;
  std::vector<double> shift_grad;

  static BatchNormParams init(int channels, double epsilon = 1e-3, double momentum = 0.99);
};

// Fully connected layer with softmax rows; maps (N,1,C) onto (N,1,out).
struct DenseSpec {
  int in_features = 1;
  int out_features = 2;

  std::vector<double> weights;  // [in][out]
  std::vector<double> bias;
  std::vector<double> weights_grad;
  std::vector<double> bias_grad;

  static DenseSpec glorot(int in_features, int out_features, RngStream& rng);
};

// Stateless forward passes. batchnorm mutates the running statistics when
// params.mode == train; everything else is pure.
Tensor3 conv1d(const Tensor3& x, const ConvSpec& spec);
Tensor3 conv1d_transpose(const Tensor3& x, const ConvSpec& spec);
Tensor3 maxpool1d(const Tensor3& x, const PoolSpec& spec);
Tensor3 batchnorm(const Tensor3& x, BatchNormParams& params);
Tensor3 relu(const Tensor3& x);
Tensor3 concat_channels(const std::vector<Tensor3>& xs);
Tensor3 global_avg_pool(const Tensor3& x);
Tensor3 dense_softmax(const Tensor3& x, const DenseSpec& spec);
Tensor3 dropout(const Tensor3& x, double rate, Mode mode, RngStream& rng);

namespace detail {
// Shared by the stateless op and the recording tape. In train mode fills the
// normalized activations and 1/sqrt(var+eps) caches when requested; in infer
// mode inv_std_out still receives the running-stat scale factors.
Tensor3 batchnorm_forward(const Tensor3& x, BatchNormParams& params, Tensor3* xhat_out,
                          std::vector<double>* inv_std_out);
}  // namespace detail

}  // namespace teanet
