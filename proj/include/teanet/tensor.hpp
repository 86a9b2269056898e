#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "teanet/error.hpp"

namespace teanet {

struct Shape3 {
  int batch = 0;
  int length = 0;
  int channels = 0;

  bool operator==(const Shape3&) const = default;

  std::int64_t size() const {
    return static_cast<std::int64_t>(batch) * length * channels;
  }

  std::string str() const {
    return "(" + std::to_string(batch) + "," + std::to_string(length) + "," +
           std::to_string(channels) + ")";
  }
};

// Batched 1D feature map, row-major (batch, time, channels). The one value
// type that flows through the whole network; also reused for parameter
// tensors such as (kernel, in_channels, out_channels) conv weights.
class Tensor3 {
 public:
  Tensor3() = default;

  Tensor3(int batch, int length, int channels, double fill = 0.0)
      : Tensor3(Shape3{batch, length, channels}, fill) {}

  explicit Tensor3(Shape3 shape, double fill = 0.0) : shape_(shape) {
    if (shape.batch < 1 || shape.length < 1 || shape.channels < 1) {
      throw Error::data("Tensor3: all dimensions must be >= 1, got " + shape.str());
    }
    data_.assign(static_cast<std::size_t>(shape.size()), fill);
  }

  static Tensor3 from_values(int batch, int length, int channels,
                             std::vector<double> values) {
    Shape3 shape{batch, length, channels};
    if (static_cast<std::int64_t>(values.size()) != shape.size()) {
      throw Error::data("Tensor3: " + std::to_string(values.size()) +
                        " values do not fill shape " + shape.str());
    }
    Tensor3 t;
    t.shape_ = shape;
    t.data_ = std::move(values);
    return t;
  }

  const Shape3& shape() const { return shape_; }
  int batch() const { return shape_.batch; }
  int length() const { return shape_.length; }
  int channels() const { return shape_.channels; }
  std::int64_t size() const { return shape_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(int n, int t, int c) {
    assert(n >= 0 && n < shape_.batch && t >= 0 && t < shape_.length && c >= 0 &&
           c < shape_.channels);
    return data_[(static_cast<std::size_t>(n) * shape_.length + t) * shape_.channels + c];
  }
  double at(int n, int t, int c) const {
    return const_cast<Tensor3*>(this)->at(n, t, c);
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  bool all_finite() const {
    for (double v : data_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

 private:
  Shape3 shape_{};
  std::vector<double> data_;
};

}  // namespace teanet
