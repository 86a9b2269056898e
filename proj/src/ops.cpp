#include "teanet/ops.hpp"

#include <algorithm>
#include <cmath>

#include "teanet/kernels.hpp"

namespace teanet {

std::string to_string(Padding p) { return p == Padding::valid ? "valid" : "same"; }

int window_output_length(int input_length, int kernel, int stride, Padding padding) {
  if (kernel < 1 || stride < 1) {
    throw Error::data("window op: kernel and stride must be >= 1, got kernel=" +
                      std::to_string(kernel) + " stride=" + std::to_string(stride));
  }
  if (padding == Padding::same) return (input_length + stride - 1) / stride;
  if (input_length < kernel) {
    throw Error::data("window op: input length " + std::to_string(input_length) +
                      " shorter than kernel " + std::to_string(kernel) +
                      " under valid padding");
  }
  return (input_length - kernel) / stride + 1;
}

int window_pad_before(int input_length, int kernel, int stride, Padding padding) {
  if (padding == Padding::valid) return 0;
  const int out = (input_length + stride - 1) / stride;
  const int total = std::max((out - 1) * stride + kernel - input_length, 0);
  return total / 2;  // remainder pads the right
}

ConvSpec ConvSpec::glorot(int kernel_size, int stride, Padding padding, int in_channels,
                          int filters, RngStream& rng) {
  ConvSpec spec;
  spec.kernel_size = kernel_size;
  spec.stride = stride;
  spec.padding = padding;
  spec.in_channels = in_channels;
  spec.filters = filters;
  const double limit =
      std::sqrt(6.0 / (static_cast<double>(kernel_size) * in_channels +
                       static_cast<double>(kernel_size) * filters));
  spec.weights.resize(spec.weight_count());
  for (double& w : spec.weights) w = rng.uniform(-limit, limit);
  spec.bias.assign(static_cast<std::size_t>(filters), 0.0);
  return spec;
}

void ConvSpec::validate(const Shape3& input, const char* op_name) const {
  if (kernel_size < 1 || stride < 1 || filters < 1 || in_channels < 1) {
    throw Error::data(std::string(op_name) + ": kernel/stride/filters/in_channels must be >= 1");
  }
  if (input.channels != in_channels) {
    throw Error::data(std::string(op_name) + ": input has " + std::to_string(input.channels) +
                      " channels, spec expects " + std::to_string(in_channels) +
                      " (input shape " + input.str() + ")");
  }
  if (weights.size() != weight_count() || bias.size() != static_cast<std::size_t>(filters)) {
    throw Error::data(std::string(op_name) + ": weight storage does not match spec (" +
                      std::to_string(weights.size()) + " weights for kernel " +
                      std::to_string(kernel_size) + " x " + std::to_string(in_channels) +
                      " x " + std::to_string(filters) + ")");
  }
  if (padding == Padding::valid && input.length < kernel_size) {
    throw Error::data(std::string(op_name) + ": input length " + std::to_string(input.length) +
                      " < kernel " + std::to_string(kernel_size) + " under valid padding");
  }
}

void PoolSpec::validate() const {
  if (pool_size < 1 || stride < 1) {
    throw Error::data("maxpool1d: pool size and stride must be >= 1, got p=" +
                      std::to_string(pool_size) + " s=" + std::to_string(stride));
  }
}

BatchNormParams BatchNormParams::init(int channels, double epsilon, double momentum) {
  BatchNormParams p;
  p.channels = channels;
  p.epsilon = epsilon;
  p.momentum = momentum;
  p.scale.assign(static_cast<std::size_t>(channels), 1.0);
  p.shift.assign(static_cast<std::size_t>(channels), 0.0);
  p.running_mean.assign(static_cast<std::size_t>(channels), 0.0);
  p.running_var.assign(static_cast<std::size_t>(channels), 1.0);
  return p;
}

DenseSpec DenseSpec::glorot(int in_features, int out_features, RngStream& rng) {
  DenseSpec spec;
  spec.in_features = in_features;
  spec.out_features = out_features;
  const double limit = std::sqrt(6.0 / (in_features + out_features));
  spec.weights.resize(static_cast<std::size_t>(in_features) * out_features);
  for (double& w : spec.weights) w = rng.uniform(-limit, limit);
  spec.bias.assign(static_cast<std::size_t>(out_features), 0.0);
  return spec;
}

Tensor3 conv1d(const Tensor3& x, const ConvSpec& spec) {
  spec.validate(x.shape(), "conv1d");
  Tensor3 y(x.batch(), spec.output_length(x.length()), spec.filters);
  kernels::conv1d_forward(x, spec, y);
  return y;
}

Tensor3 conv1d_transpose(const Tensor3& x, const ConvSpec& spec) {
  spec.validate(x.shape(), "conv1d_transpose");
  const int out_len = kernels::conv_transpose_output_length(x.length(), spec.kernel_size,
                                                            spec.stride, spec.padding);
  Tensor3 y(x.batch(), out_len, spec.filters);
  kernels::conv1d_transpose_forward(x, spec, y);
  return y;
}

Tensor3 maxpool1d(const Tensor3& x, const PoolSpec& spec) {
  spec.validate();
  Tensor3 y(x.batch(), spec.output_length(x.length()), x.channels());
  kernels::maxpool1d_forward(x, spec, y, nullptr);
  return y;
}

namespace detail {

Tensor3 batchnorm_forward(const Tensor3& x, BatchNormParams& params, Tensor3* xhat_out,
                          std::vector<double>* inv_std_out) {
  const int N = x.batch(), L = x.length(), C = x.channels();
  if (C != params.channels) {
    throw Error::data("batchnorm: input has " + std::to_string(C) +
                      " channels, params expect " + std::to_string(params.channels));
  }
  if (params.epsilon <= 0.0) throw Error::data("batchnorm: epsilon must be > 0");

  Tensor3 y(x.shape());
  if (xhat_out) *xhat_out = Tensor3(x.shape());
  if (inv_std_out) inv_std_out->assign(static_cast<std::size_t>(C), 0.0);
  const std::int64_t m = static_cast<std::int64_t>(N) * L;

  if (params.mode == Mode::train) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < C; ++c) {
      double sum = 0.0;
      for (int n = 0; n < N; ++n)
        for (int t = 0; t < L; ++t) sum += x.at(n, t, c);
      const double mean = sum / static_cast<double>(m);
      double sq = 0.0;
      for (int n = 0; n < N; ++n)
        for (int t = 0; t < L; ++t) {
          const double d = x.at(n, t, c) - mean;
          sq += d * d;
        }
      const double var = sq / static_cast<double>(m);  // population variance
      const double inv_std = 1.0 / std::sqrt(var + params.epsilon);
      for (int n = 0; n < N; ++n)
        for (int t = 0; t < L; ++t) {
          const double xh = (x.at(n, t, c) - mean) * inv_std;
          if (xhat_out) xhat_out->at(n, t, c) = xh;
          y.at(n, t, c) = params.scale[c] * xh + params.shift[c];
        }
      if (inv_std_out) (*inv_std_out)[c] = inv_std;
      params.running_mean[c] = params.momentum * params.running_mean[c] +
                               (1.0 - params.momentum) * mean;
      params.running_var[c] =
          params.momentum * params.running_var[c] + (1.0 - params.momentum) * var;
    }
  } else {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < C; ++c) {
      const double inv_std = 1.0 / std::sqrt(params.running_var[c] + params.epsilon);
      for (int n = 0; n < N; ++n)
        for (int t = 0; t < L; ++t) {
          const double xh = (x.at(n, t, c) - params.running_mean[c]) * inv_std;
          if (xhat_out) xhat_out->at(n, t, c) = xh;
          y.at(n, t, c) = params.scale[c] * xh + params.shift[c];
        }
      if (inv_std_out) (*inv_std_out)[c] = inv_std;
    }
  }
  return y;
}

}  // namespace detail

Tensor3 batchnorm(const Tensor3& x, BatchNormParams& params) {
  return detail::batchnorm_forward(x, params, nullptr, nullptr);
}

Tensor3 relu(const Tensor3& x) {
  Tensor3 y(x.shape());
  const std::int64_t n = x.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) y.raw()[i] = std::max(0.0, x.raw()[i]);
  return y;
}

Tensor3 concat_channels(const std::vector<Tensor3>& xs) {
  if (xs.empty()) throw Error::data("concat_channels: no inputs");
  const int N = xs[0].batch(), L = xs[0].length();
  int total = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].batch() != N || xs[i].length() != L) {
      throw Error::data("concat_channels: input 0 has shape " + xs[0].shape().str() +
                        " but input " + std::to_string(i) + " has shape " +
                        xs[i].shape().str() + " (batch and time must agree)");
    }
    total += xs[i].channels();
  }
  Tensor3 y(N, L, total);
#pragma omp parallel for collapse(2) schedule(static)
  for (int n = 0; n < N; ++n) {
    for (int t = 0; t < L; ++t) {
      double* row = y.data() + (static_cast<std::int64_t>(n) * L + t) * total;
      int off = 0;
      for (const Tensor3& x : xs) {
        const int c = x.channels();
        const double* src = x.data() + (static_cast<std::int64_t>(n) * L + t) * c;
        std::copy(src, src + c, row + off);
        off += c;
      }
    }
  }
  return y;
}

Tensor3 global_avg_pool(const Tensor3& x) {
  const int N = x.batch(), L = x.length(), C = x.channels();
  Tensor3 y(N, 1, C);
#pragma omp parallel for collapse(2) schedule(static)
  for (int n = 0; n < N; ++n) {
    for (int c = 0; c < C; ++c) {
      double sum = 0.0;
      for (int t = 0; t < L; ++t) sum += x.at(n, t, c);
      y.at(n, 0, c) = sum / L;
    }
  }
  return y;
}

Tensor3 dense_softmax(const Tensor3& x, const DenseSpec& spec) {
  const int N = x.batch(), C = x.channels(), O = spec.out_features;
  if (x.length() != 1 || C != spec.in_features) {
    throw Error::data("dense_softmax: expected input (N,1," + std::to_string(spec.in_features) +
                      "), got " + x.shape().str());
  }
  Tensor3 y(N, 1, O);
#pragma omp parallel for schedule(static)
  for (int n = 0; n < N; ++n) {
    double* row = y.data() + static_cast<std::int64_t>(n) * O;
    for (int o = 0; o < O; ++o) {
      double acc = spec.bias[o];
      for (int c = 0; c < C; ++c) acc += spec.weights[static_cast<std::size_t>(c) * O + o] * x.at(n, 0, c);
      row[o] = acc;
    }
    const double mx = *std::max_element(row, row + O);  // overflow guard
    double sum = 0.0;
    for (int o = 0; o < O; ++o) {
      row[o] = std::exp(row[o] - mx);
      sum += row[o];
    }
    for (int o = 0; o < O; ++o) row[o] /= sum;
  }
  return y;
}

Tensor3 dropout(const Tensor3& x, double rate, Mode mode, RngStream& rng) {
  if (rate < 0.0 || rate >= 1.0) {
    throw Error::data("dropout: rate must be in [0,1), got " + std::to_string(rate));
  }
  if (mode == Mode::infer || rate == 0.0) return x;
  Tensor3 y(x.shape());
  const double keep_scale = 1.0 / (1.0 - rate);
  const std::int64_t n = x.size();
  for (std::int64_t i = 0; i < n; ++i) {
    y.raw()[i] = rng.uniform() >= rate ? x.raw()[i] * keep_scale : 0.0;
  }
  return y;
}

}  // namespace teanet
