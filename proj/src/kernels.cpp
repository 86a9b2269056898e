#include "teanet/kernels.hpp"

#include <algorithm>
#include <cstring>

// Backward kernels expect their output tensor pre-sized to the matching
// forward shape; contents are overwritten. All parallel loops write each
// output element from exactly one thread, keeping results independent of the
// thread count.

namespace teanet::kernels {

int conv_transpose_output_length(int input_length, int kernel, int stride, Padding padding) {
  if (padding == Padding::same) return input_length * stride;
  return input_length * stride + std::max(kernel - stride, 0);
}

void conv1d_forward(const Tensor3& x, const ConvSpec& spec, Tensor3& y) {
  const int N = x.batch(), L = x.length(), C = x.channels();
  const int K = spec.kernel_size, S = spec.stride, F = spec.filters;
  const int Lo = y.length();
  const int pad = window_pad_before(L, K, S, spec.padding);
  const double* w = spec.weights.data();
  const double* b = spec.bias.data();

#pragma omp parallel for collapse(2) schedule(static)
  for (int n = 0; n < N; ++n) {
    for (int j = 0; j < Lo; ++j) {
      double* row = y.data() + (static_cast<std::int64_t>(n) * Lo + j) * F;
      for (int f = 0; f < F; ++f) row[f] = b[f];
      for (int t = 0; t < K; ++t) {
        const int i = j * S + t - pad;
        if (i < 0 || i >= L) continue;
        const double* xrow = x.data() + (static_cast<std::int64_t>(n) * L + i) * C;
        const double* wrow = w + static_cast<std::int64_t>(t) * C * F;
        for (int c = 0; c < C; ++c) {
          const double xv = xrow[c];
          const double* wf = wrow + static_cast<std::int64_t>(c) * F;
          for (int f = 0; f < F; ++f) row[f] += wf[f] * xv;
        }
      }
    }
  }
}

void conv1d_backward_input(const Tensor3& gy, const ConvSpec& spec, Tensor3& gx) {
  const int N = gx.batch(), L = gx.length(), C = gx.channels();
  const int K = spec.kernel_size, S = spec.stride, F = spec.filters;
  const int Lo = gy.length();
  const int pad = window_pad_before(L, K, S, spec.padding);
  const double* w = spec.weights.data();

#pragma omp parallel for collapse(2) schedule(static)
  for (int n = 0; n < N; ++n) {
    for (int i = 0; i < L; ++i) {
      double* grow = gx.data() + (static_cast<std::int64_t>(n) * L + i) * C;
      std::fill(grow, grow + C, 0.0);
      for (int t = 0; t < K; ++t) {
        const int pos = i + pad - t;
        if (pos < 0 || pos % S != 0) continue;
        const int j = pos / S;
        if (j >= Lo) continue;
        const double* gyrow = gy.data() + (static_cast<std::int64_t>(n) * Lo + j) * F;
        const double* wrow = w + static_cast<std::int64_t>(t) * C * F;
        for (int c = 0; c < C; ++c) {
          const double* wf = wrow + static_cast<std::int64_t>(c) * F;
          double acc = 0.0;
          for (int f = 0; f < F; ++f) acc += wf[f] * gyrow[f];
          grow[c] += acc;
        }
      }
    }
  }
}

void conv1d_backward_params(const Tensor3& x, const Tensor3& gy, const ConvSpec& spec,
                            std::span<double> gw, std::span<double> gb) {
  const int N = x.batch(), L = x.length(), C = x.channels();
  const int K = spec.kernel_size, S = spec.stride, F = spec.filters;
  const int Lo = gy.length();
  const int pad = window_pad_before(L, K, S, spec.padding);

#pragma omp parallel for collapse(2) schedule(static)
  for (int t = 0; t < K; ++t) {
    for (int c = 0; c < C; ++c) {
      double* gwrow = gw.data() + (static_cast<std::int64_t>(t) * C + c) * F;
      std::fill(gwrow, gwrow + F, 0.0);
      for (int n = 0; n < N; ++n) {
        for (int j = 0; j < Lo; ++j) {
          const int i = j * S + t - pad;
          if (i < 0 || i >= L) continue;
          const double xv = x.at(n, i, c);
          const double* gyrow = gy.data() + (static_cast<std::int64_t>(n) * Lo + j) * F;
          for (int f = 0; f < F; ++f) gwrow[f] += xv * gyrow[f];
        }
      }
    }
  }

#pragma omp parallel for schedule(static)
  for (int f = 0; f < F; ++f) {
    double acc = 0.0;
    for (int n = 0; n < N; ++n)
      for (int j = 0; j < Lo; ++j) acc += gy.at(n, j, f);
    gb[f] = acc;
  }
}

void conv1d_transpose_forward(const Tensor3& x, const ConvSpec& spec, Tensor3& y) {
  const int N = x.batch(), Li = x.length(), Ci = x.channels();
  const int K = spec.kernel_size, S = spec.stride, Co = spec.filters;
  const int Lo = y.length();
  // Pad of the matched convolution running y-shape -> x-shape.
  const int pad = window_pad_before(Lo, K, S, spec.padding);
  const double* w = spec.weights.data();
  const double* b = spec.bias.data();

#pragma omp parallel for collapse(2) schedule(static)
  for (int n = 0; n < N; ++n) {
    for (int i = 0; i < Lo; ++i) {
      double* row = y.data() + (static_cast<std::int64_t>(n) * Lo + i) * Co;
      for (int f = 0; f < Co; ++f) row[f] = b[f];
      for (int t = 0; t < K; ++t) {
        const int pos = i + pad - t;
        if (pos < 0 || pos % S != 0) continue;
        const int j = pos / S;
        if (j >= Li) continue;
        const double* xrow = x.data() + (static_cast<std::int64_t>(n) * Li + j) * Ci;
        const double* wrow = w + static_cast<std::int64_t>(t) * Ci * Co;
        for (int c = 0; c < Ci; ++c) {
          const double xv = xrow[c];
          const double* wf = wrow + static_cast<std::int64_t>(c) * Co;
          for (int f = 0; f < Co; ++f) row[f] += wf[f] * xv;
        }
      }
    }
  }
}

void conv1d_transpose_backward_input(const Tensor3& gy, const ConvSpec& spec, Tensor3& gx) {
  const int N = gx.batch(), Li = gx.length(), Ci = gx.channels();
  const int K = spec.kernel_size, S = spec.stride, Co = spec.filters;
  const int Lo = gy.length();
  const int pad = window_pad_before(Lo, K, S, spec.padding);
  const double* w = spec.weights.data();

#pragma omp parallel for collapse(2) schedule(static)
  for (int n = 0; n < N; ++n) {
    for (int j = 0; j < Li; ++j) {
      double* grow = gx.data() + (static_cast<std::int64_t>(n) * Li + j) * Ci;
      std::fill(grow, grow + Ci, 0.0);
      for (int t = 0; t < K; ++t) {
        const int i = j * S + t - pad;
        if (i < 0 || i >= Lo) continue;
        const double* gyrow = gy.data() + (static_cast<std::int64_t>(n) * Lo + i) * Co;
        const double* wrow = w + static_cast<std::int64_t>(t) * Ci * Co;
        for (int c = 0; c < Ci; ++c) {
          const double* wf = wrow + static_cast<std::int64_t>(c) * Co;
          double acc = 0.0;
          for (int f = 0; f < Co; ++f) acc += wf[f] * gyrow[f];
          grow[c] += acc;
        }
      }
    }
  }
}

void conv1d_transpose_backward_params(const Tensor3& x, const Tensor3& gy,
                                      const ConvSpec& spec, std::span<double> gw,
                                      std::span<double> gb) {
  const int N = x.batch(), Li = x.length(), Ci = x.channels();
  const int K = spec.kernel_size, S = spec.stride, Co = spec.filters;
  const int Lo = gy.length();
  const int pad = window_pad_before(Lo, K, S, spec.padding);

#pragma omp parallel for collapse(2) schedule(static)
  for (int t = 0; t < K; ++t) {
    for (int c = 0; c < Ci; ++c) {
      double* gwrow = gw.data() + (static_cast<std::int64_t>(t) * Ci + c) * Co;
      std::fill(gwrow, gwrow + Co, 0.0);
      for (int n = 0; n < N; ++n) {
        for (int j = 0; j < Li; ++j) {
          const int i = j * S + t - pad;
          if (i < 0 || i >= Lo) continue;
          const double xv = x.at(n, j, c);
          const double* gyrow = gy.data() + (static_cast<std::int64_t>(n) * Lo + i) * Co;
          for (int f = 0; f < Co; ++f) gwrow[f] += xv * gyrow[f];
        }
      }
    }
  }

#pragma omp parallel for schedule(static)
  for (int f = 0; f < Co; ++f) {
    double acc = 0.0;
    for (int n = 0; n < N; ++n)
      for (int i = 0; i < Lo; ++i) acc += gy.at(n, i, f);
    gb[f] = acc;
  }
}

void maxpool1d_forward(const Tensor3& x, const PoolSpec& spec, Tensor3& y,
                       std::vector<std::int64_t>* argmax) {
  const int N = x.batch(), L = x.length(), C = x.channels();
  const int P = spec.pool_size, S = spec.stride;
  const int Lo = y.length();
  const int pad = window_pad_before(L, P, S, spec.padding);
  if (argmax) argmax->assign(static_cast<std::size_t>(y.size()), -1);

#pragma omp parallel for collapse(2) schedule(static)
  for (int n = 0; n < N; ++n) {
    for (int j = 0; j < Lo; ++j) {
      double* row = y.data() + (static_cast<std::int64_t>(n) * Lo + j) * C;
      std::int64_t* arow =
          argmax ? argmax->data() + (static_cast<std::int64_t>(n) * Lo + j) * C : nullptr;
      bool first = true;
      for (int t = 0; t < P; ++t) {
        const int i = j * S + t - pad;
        if (i < 0 || i >= L) continue;  // same padding acts as a -inf sentinel
        const std::int64_t base = (static_cast<std::int64_t>(n) * L + i) * C;
        const double* xrow = x.data() + base;
        if (first) {
          for (int c = 0; c < C; ++c) {
            row[c] = xrow[c];
            if (arow) arow[c] = base + c;
          }
          first = false;
        } else {
          for (int c = 0; c < C; ++c) {
            if (xrow[c] > row[c]) {  // strict: ties keep the first index
              row[c] = xrow[c];
              if (arow) arow[c] = base + c;
            }
          }
        }
      }
    }
  }
}

void maxpool1d_backward(const Tensor3& gy, const std::vector<std::int64_t>& argmax,
                        Tensor3& gx) {
  const int N = gy.batch(), Lo = gy.length(), C = gy.channels();
  gx.fill(0.0);
  // Windows overlap when stride < pool size, so scatter per (n, c) slice;
  // time windows never cross batch or channel.
#pragma omp parallel for collapse(2) schedule(static)
  for (int n = 0; n < N; ++n) {
    for (int c = 0; c < C; ++c) {
      for (int j = 0; j < Lo; ++j) {
        const std::int64_t src = (static_cast<std::int64_t>(n) * Lo + j) * C + c;
        const std::int64_t dst = argmax[src];
        if (dst >= 0) gx.raw()[static_cast<std::size_t>(dst)] += gy.raw()[src];
      }
    }
  }
}

}  // namespace teanet::kernels
