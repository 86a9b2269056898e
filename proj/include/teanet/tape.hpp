#pragma once

#include <functional>
#include <unordered_set>
#include <vector>

#include "teanet/ops.hpp"
#include "teanet/tensor.hpp"

namespace teanet {

// Handle to a tensor recorded on a tape.
struct Var {
  int id = -1;
};

// Reverse-mode record of one forward pass. Layer ops append their backward
// closures in recording order; backward() replays them in reverse, filling
// activation gradients here and parameter gradients in the specs' *_grad
// buffers (zeroed on first touch per tape, then overwritten by accumulation).
class Tape {
 public:
  Var leaf(Tensor3 value);
  const Tensor3& value(Var v) const;
  // Gradient of the backward() seed with respect to v; usage error until
  // backward() has run.
  const Tensor3& grad(Var v) const;

  // Seeds d(loss)/d(loss) = 1 and replays the record in reverse. loss must
  // be a scalar (1,1,1) recorded on this tape.
  void backward(Var loss);

  bool backward_done() const { return backward_done_; }
  std::size_t op_count() const { return records_.size(); }
  int slot_count() const { return static_cast<int>(slots_.size()); }

  // Recording interface used by the ops below.
  Var push(Tensor3 value);
  Tensor3& grad_slot(Var v);
  void record(std::function<void()> backward_fn);
  void touch_param(std::vector<double>* grad, std::size_t size);

 private:
  void check(Var v) const;

  struct Slot {
    Tensor3 value;
    Tensor3 grad;
  };
  std::vector<Slot> slots_;
  std::vector<std::function<void()>> records_;
  std::unordered_set<std::vector<double>*> touched_params_;
  bool backward_done_ = false;
};

// Recorded counterparts of the ops.hpp forwards.
Var conv1d(Tape& tape, Var x, ConvSpec& spec);
Var conv1d_transpose(Tape& tape, Var x, ConvSpec& spec);
Var maxpool1d(Tape& tape, Var x, const PoolSpec& spec);
Var batchnorm(Tape& tape, Var x, BatchNormParams& params);
Var relu(Tape& tape, Var x);
Var concat_channels(Tape& tape, const std::vector<Var>& xs);
Var global_avg_pool(Tape& tape, Var x);
Var dense_softmax(Tape& tape, Var x, DenseSpec& spec);
Var dropout(Tape& tape, Var x, double rate, Mode mode, RngStream& rng);

// Scalar readouts.
Var sum(Tape& tape, Var x);
Var weighted_sum(Tape& tape, Var x, Tensor3 weights);

}  // namespace teanet
