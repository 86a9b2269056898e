#pragma once

#include <span>
#include <vector>

#include "teanet/ops.hpp"
#include "teanet/tensor.hpp"

// Compute kernels behind the layer ops. The default implementations are
// OpenMP-parallel; every parallel loop assigns each output element to exactly
// one thread with a fixed inner summation order, so results are bit-identical
// for any thread count. kernels::serial holds independently written naive
// versions kept as the reference for tests and the benchmark.
namespace teanet::kernels {

// Transposed convolution output length (the inverse direction of
// window_output_length): L*s under same padding, L*s + max(k-s, 0) valid.
int conv_transpose_output_length(int input_length, int kernel, int stride, Padding padding);

void conv1d_forward(const Tensor3& x, const ConvSpec& spec, Tensor3& y);
void conv1d_backward_input(const Tensor3& gy, const ConvSpec& spec, Tensor3& gx);
void conv1d_backward_params(const Tensor3& x, const Tensor3& gy, const ConvSpec& spec,
                            std::span<double> gw, std::span<double> gb);

void conv1d_transpose_forward(const Tensor3& x, const ConvSpec& spec, Tensor3& y);
void conv1d_transpose_backward_input(const Tensor3& gy, const ConvSpec& spec, Tensor3& gx);
void conv1d_transpose_backward_params(const Tensor3& x, const Tensor3& gy,
                                      const ConvSpec& spec, std::span<double> gw,
                                      std::span<double> gb);

// argmax (when non-null) receives, per output element, the flat index of the
// winning input element; ties go to the first index in the window.
void maxpool1d_forward(const Tensor3& x, const PoolSpec& spec, Tensor3& y,
                       std::vector<std::int64_t>* argmax);
void maxpool1d_backward(const Tensor3& gy, const std::vector<std::int64_t>& argmax,
                        Tensor3& gx);

namespace serial {

void conv1d_forward(const Tensor3& x, const ConvSpec& spec, Tensor3& y);
void conv1d_backward_input(const Tensor3& gy, const ConvSpec& spec, Tensor3& gx);
void conv1d_backward_params(const Tensor3& x, const Tensor3& gy, const ConvSpec& spec,
                            std::span<double> gw, std::span<double> gb);

void conv1d_transpose_forward(const Tensor3& x, const ConvSpec& spec, Tensor3& y);
void conv1d_transpose_backward_input(const Tensor3& gy, const ConvSpec& spec, Tensor3& gx);
void conv1d_transpose_backward_params(const Tensor3& x, const Tensor3& gy,
                                      const ConvSpec& spec, std::span<double> gw,
                                      std::span<double> gb);

void maxpool1d_forward(const Tensor3& x, const PoolSpec& spec, Tensor3& y,
                       std::vector<std::int64_t>* argmax);
void maxpool1d_backward(const Tensor3& gy, const std::vector<std::int64_t>& argmax,
                        Tensor3& gx);

}  // namespace serial

}  // namespace teanet::kernels
