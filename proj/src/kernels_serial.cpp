#include <vector>

#include "teanet/kernels.hpp"

// Naive reference implementations, written against explicitly materialized
// zero-padded buffers and scatter loops so they share no structure with the
// parallel gather kernels they check.

namespace teanet::kernels::serial {

namespace {

// x padded along time with `before` leading and `after` trailing zeros.
std::vector<double> pad_time(const Tensor3& x, int before, int after) {
  const int N = x.batch(), L = x.length(), C = x.channels();
  const int Lp = L + before + after;
  std::vector<double> out(static_cast<std::size_t>(N) * Lp * C, 0.0);
  for (int n = 0; n < N; ++n)
    for (int i = 0; i < L; ++i)
      for (int c = 0; c < C; ++c)
        out[(static_cast<std::size_t>(n) * Lp + i + before) * C + c] = x.at(n, i, c);
  return out;
}

}  // namespace

void conv1d_forward(const Tensor3& x, const ConvSpec& spec, Tensor3& y) {
  const int N = x.batch(), L = x.length(), C = x.channels();
  const int K = spec.kernel_size, S = spec.stride, F = spec.filters;
  const int Lo = y.length();
  const int before = window_pad_before(L, K, S, spec.padding);
  const int Lp = std::max(L + before, (Lo - 1) * S + K);
  std::vector<double> xp = pad_time(x, before, Lp - L - before);

  for (int n = 0; n < N; ++n)
    for (int j = 0; j < Lo; ++j)
      for (int f = 0; f < F; ++f) {
        double acc = spec.bias[f];
        for (int t = 0; t < K; ++t)
          for (int c = 0; c < C; ++c)
            acc += spec.weights[(static_cast<std::size_t>(t) * C + c) * F + f] *
                   xp[(static_cast<std::size_t>(n) * Lp + j * S + t) * C + c];
        y.at(n, j, f) = acc;
      }
}

void conv1d_backward_input(const Tensor3& gy, const ConvSpec& spec, Tensor3& gx) {
  const int N = gx.batch(), L = gx.length(), C = gx.channels();
  const int K = spec.kernel_size, S = spec.stride, F = spec.filters;
  const int Lo = gy.length();
  const int before = window_pad_before(L, K, S, spec.padding);
  const int Lp = std::max(L + before, (Lo - 1) * S + K);

  std::vector<double> gxp(static_cast<std::size_t>(N) * Lp * C, 0.0);
  for (int n = 0; n < N; ++n)
    for (int j = 0; j < Lo; ++j)
      for (int t = 0; t < K; ++t)
        for (int c = 0; c < C; ++c)
          for (int f = 0; f < F; ++f)
            gxp[(static_cast<std::size_t>(n) * Lp + j * S + t) * C + c] +=
                spec.weights[(static_cast<std::size_t>(t) * C + c) * F + f] * gy.at(n, j, f);

  for (int n = 0; n < N; ++n)
    for (int i = 0; i < L; ++i)
      for (int c = 0; c < C; ++c)
        gx.at(n, i, c) = gxp[(static_cast<std::size_t>(n) * Lp + i + before) * C + c];
}

void conv1d_backward_params(const Tensor3& x, const Tensor3& gy, const ConvSpec& spec,
                            std::span<double> gw, std::span<double> gb) {
  const int N = x.batch(), L = x.length(), C = x.channels();
  const int K = spec.kernel_size, S = spec.stride, F = spec.filters;
  const int Lo = gy.length();
  const int before = window_pad_before(L, K, S, spec.padding);
  const int Lp = std::max(L + before, (Lo - 1) * S + K);
  std::vector<double> xp = pad_time(x, before, Lp - L - before);

  std::fill(gw.begin(), gw.end(), 0.0);
  std::fill(gb.begin(), gb.end(), 0.0);
  for (int n = 0; n < N; ++n)
    for (int j = 0; j < Lo; ++j)
      for (int f = 0; f < F; ++f) {
        const double g = gy.at(n, j, f);
        gb[f] += g;
        for (int t = 0; t < K; ++t)
          for (int c = 0; c < C; ++c)
            gw[(static_cast<std::size_t>(t) * C + c) * F + f] +=
                g * xp[(static_cast<std::size_t>(n) * Lp + j * S + t) * C + c];
      }
}

void conv1d_transpose_forward(const Tensor3& x, const ConvSpec& spec, Tensor3& y) {
  const int N = x.batch(), Li = x.length(), Ci = x.channels();
  const int K = spec.kernel_size, S = spec.stride, Co = spec.filters;
  const int Lo = y.length();
  const int before = window_pad_before(Lo, K, S, spec.padding);
  const int Lp = std::max(Lo + before, (Li - 1) * S + K);

  // Scatter each input step into the padded output, then crop.
  std::vector<double> yp(static_cast<std::size_t>(N) * Lp * Co, 0.0);
  for (int n = 0; n < N; ++n)
    for (int j = 0; j < Li; ++j)
      for (int t = 0; t < K; ++t)
        for (int c = 0; c < Ci; ++c)
          for (int f = 0; f < Co; ++f)
            yp[(static_cast<std::size_t>(n) * Lp + j * S + t) * Co + f] +=
                spec.weights[(static_cast<std::size_t>(t) * Ci + c) * Co + f] * x.at(n, j, c);

  for (int n = 0; n < N; ++n)
    for (int i = 0; i < Lo; ++i)
      for (int f = 0; f < Co; ++f)
        y.at(n, i, f) =
            yp[(static_cast<std::size_t>(n) * Lp + i + before) * Co + f] + spec.bias[f];
}

void conv1d_transpose_backward_input(const Tensor3& gy, const ConvSpec& spec, Tensor3& gx) {
  const int N = gx.batch(), Li = gx.length(), Ci = gx.channels();
  const int K = spec.kernel_size, S = spec.stride, Co = spec.filters;
  const int Lo = gy.length();
  const int before = window_pad_before(Lo, K, S, spec.padding);
  const int Lp = std::max(Lo + before, (Li - 1) * S + K);
  std::vector<double> gyp = pad_time(gy, before, Lp - Lo - before);

  for (int n = 0; n < N; ++n)
    for (int j = 0; j < Li; ++j)
      for (int c = 0; c < Ci; ++c) {
        double acc = 0.0;
        for (int t = 0; t < K; ++t)
          for (int f = 0; f < Co; ++f)
            acc += spec.weights[(static_cast<std::size_t>(t) * Ci + c) * Co + f] *
                   gyp[(static_cast<std::size_t>(n) * Lp + j * S + t) * Co + f];
        gx.at(n, j, c) = acc;
      }
}

void conv1d_transpose_backward_params(const Tensor3& x, const Tensor3& gy,
                                      const ConvSpec& spec, std::span<double> gw,
                                      std::span<double> gb) {
  const int N = x.batch(), Li = x.length(), Ci = x.channels();
  const int K = spec.kernel_size, S = spec.stride, Co = spec.filters;
  const int Lo = gy.length();
  const int before = window_pad_before(Lo, K, S, spec.padding);
  const int Lp = std::max(Lo + before, (Li - 1) * S + K);
  std::vector<double> gyp = pad_time(gy, before, Lp - Lo - before);

  std::fill(gw.begin(), gw.end(), 0.0);
  std::fill(gb.begin(), gb.end(), 0.0);
  for (int n = 0; n < N; ++n) {
    for (int j = 0; j < Li; ++j)
      for (int t = 0; t < K; ++t)
        for (int c = 0; c < Ci; ++c)
          for (int f = 0; f < Co; ++f)
            gw[(static_cast<std::size_t>(t) * Ci + c) * Co + f] +=
                x.at(n, j, c) * gyp[(static_cast<std::size_t>(n) * Lp + j * S + t) * Co + f];
    for (int i = 0; i < Lo; ++i)
      for (int f = 0; f < Co; ++f) gb[f] += gy.at(n, i, f);
  }
}

void maxpool1d_forward(const Tensor3& x, const PoolSpec& spec, Tensor3& y,
                       std::vector<std::int64_t>* argmax) {
  const int N = x.batch(), L = x.length(), C = x.channels();
  const int P = spec.pool_size, S = spec.stride;
  const int Lo = y.length();
  const int before = window_pad_before(L, P, S, spec.padding);
  if (argmax) argmax->assign(static_cast<std::size_t>(y.size()), -1);

  for (int n = 0; n < N; ++n)
    for (int j = 0; j < Lo; ++j)
      for (int c = 0; c < C; ++c) {
        double best = 0.0;
        std::int64_t best_idx = -1;
        for (int t = 0; t < P; ++t) {
          const int i = j * S + t - before;
          if (i < 0 || i >= L) continue;
          const double v = x.at(n, i, c);
          if (best_idx < 0 || v > best) {
            best = v;
            best_idx = (static_cast<std::int64_t>(n) * L + i) * C + c;
          }
        }
        y.at(n, j, c) = best;
        if (argmax) (*argmax)[(static_cast<std::size_t>(n) * Lo + j) * C + c] = best_idx;
      }
}

void maxpool1d_backward(const Tensor3& gy, const std::vector<std::int64_t>& argmax,
                        Tensor3& gx) {
  gx.fill(0.0);
  for (std::size_t i = 0; i < argmax.size(); ++i)
    if (argmax[i] >= 0) gx.raw()[static_cast<std::size_t>(argmax[i])] += gy.raw()[i];
}

}  // namespace teanet::kernels::serial
