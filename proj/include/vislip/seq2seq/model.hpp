// vislip/seq2seq/model.hpp
//
// Attention-based encoder-decoder over token id sequences, written from
// scratch on Eigen dense matrices and templated on the scalar type
// (float for standard runs, double for gradient verification).
//
// Architecture:
//   - source embedding -> stacked unidirectional GRU encoder (2 layers in
//     the reference configuration),
//   - decoder initial state: final top-layer encoder state through a
//     learned tanh projection,
//   - per decode step: additive (content-based) attention over encoder
//     states queried by the previous decoder state, one GRU step on
//     [previous target embedding; context], and a softmax over the target
//     vocabulary from [decoder state; context].
//
// Target token id 0 is reserved for PAD and is masked out of the loss.
// compute_gradients produces exact analytic gradients of forward_loss
// under teacher forcing; tests check them against central finite
// differences.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "vislip/common.hpp"
#include "vislip/rng.hpp"

namespace vislip {

inline constexpr int kPadId = 0;

struct ModelConfig {
  int embed_dim = 32;
  int hidden_dim = 128;  // paper reference value: 1024
  int encoder_layers = 2;
  int attention_dim = 64;
  int source_vocab = 0;
  int target_vocab = 0;
  double init_scale = 1.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (embed_dim < 1 || hidden_dim < 1 || encoder_layers < 1 ||
        attention_dim < 1)
      throw ConfigError("model dimensions must be >= 1");
    if (source_vocab < 1 || target_vocab < 1)
      throw ConfigError("vocabulary sizes must be >= 1");
    if (init_scale < 0) throw ConfigError("init_scale must be >= 0");
  }
};

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// One GRU cell: update/reset/candidate gates with input and recurrent
/// weights. The candidate is n = tanh(W x + r .* (U h_prev) + b).
template <typename Scalar>
struct GruCell {
  Mat<Scalar> w_update, w_reset, w_cand;  // H x D
  Mat<Scalar> u_update, u_reset, u_cand;  // H x H
  Mat<Scalar> b_update, b_reset, b_cand;  // H x 1

  void resize(int hidden, int input) {
    w_update.resize(hidden, input);
    w_reset.resize(hidden, input);
    w_cand.resize(hidden, input);
    u_update.resize(hidden, hidden);
    u_reset.resize(hidden, hidden);
    u_cand.resize(hidden, hidden);
    b_update.resize(hidden, 1);
    b_reset.resize(hidden, 1);
    b_cand.resize(hidden, 1);
  }
};

template <typename Scalar>
struct ModelParams {
  ModelConfig config;

  Mat<Scalar> source_embedding;  // E x Vs, one column per token
  Mat<Scalar> target_embedding;  // E x Vt
  std::vector<GruCell<Scalar>> encoder;
  GruCell<Scalar> decoder;       // input dim E + H
  Mat<Scalar> w_init, b_init;    // H x H, H x 1 decoder-state bridge
  Mat<Scalar> attn_query;        // A x H
  Mat<Scalar> attn_key;          // A x H
  Mat<Scalar> attn_score;        // A x 1
  Mat<Scalar> w_out, b_out;      // Vt x 2H, Vt x 1

  void resize(const ModelConfig& cfg) {
    config = cfg;
    const int e = cfg.embed_dim, h = cfg.hidden_dim, a = cfg.attention_dim;
    source_embedding.resize(e, cfg.source_vocab);
    target_embedding.resize(e, cfg.target_vocab);
    encoder.resize(cfg.encoder_layers);
    for (int l = 0; l < cfg.encoder_layers; ++l)
      encoder[l].resize(h, l == 0 ? e : h);
    decoder.resize(h, e + h);
    w_init.resize(h, h);
    b_init.resize(h, 1);
    attn_query.resize(a, h);
    attn_key.resize(a, h);
    attn_score.resize(a, 1);
    w_out.resize(cfg.target_vocab, 2 * h);
    b_out.resize(cfg.target_vocab, 1);
  }
};

/// Applies f(name, tensor) to every parameter tensor in a fixed order.
/// The order defines the checkpoint layout and the init draw sequence.
template <typename Scalar, typename F>
void visit_tensors(ModelParams<Scalar>& p, F&& f) {
  f("source_embedding", p.source_embedding);
  f("target_embedding", p.target_embedding);
  for (std::size_t l = 0; l < p.encoder.size(); ++l) {
    const std::string prefix = "encoder." + std::to_string(l) + ".";
    f(prefix + "w_update", p.encoder[l].w_update);
    f(prefix + "w_reset", p.encoder[l].w_reset);
    f(prefix + "w_cand", p.encoder[l].w_cand);
    f(prefix + "u_update", p.encoder[l].u_update);
    f(prefix + "u_reset", p.encoder[l].u_reset);
    f(prefix + "u_cand", p.encoder[l].u_cand);
    f(prefix + "b_update", p.encoder[l].b_update);
    f(prefix + "b_reset", p.encoder[l].b_reset);
    f(prefix + "b_cand", p.encoder[l].b_cand);
  }
  f("decoder.w_update", p.decoder.w_update);
  f("decoder.w_reset", p.decoder.w_reset);
  f("decoder.w_cand", p.decoder.w_cand);
  f("decoder.u_update", p.decoder.u_update);
  f("decoder.u_reset", p.decoder.u_reset);
  f("decoder.u_cand", p.decoder.u_cand);
  f("decoder.b_update", p.decoder.b_update);
  f("decoder.b_reset", p.decoder.b_reset);
  f("decoder.b_cand", p.decoder.b_cand);
  f("w_init", p.w_init);
  f("b_init", p.b_init);
  f("attn_query", p.attn_query);
  f("attn_key", p.attn_key);
  f("attn_score", p.attn_score);
  f("w_out", p.w_out);
  f("b_out", p.b_out);
}

template <typename Scalar, typename F>
void visit_tensors(const ModelParams<Scalar>& p, F&& f) {
  visit_tensors(const_cast<ModelParams<Scalar>&>(p),
                [&](const std::string& name, Mat<Scalar>& m) {
                  f(name, static_cast<const Mat<Scalar>&>(m));
                });
}

template <typename Scalar>
std::size_t parameter_count(const ModelParams<Scalar>& p) {
  std::size_t n = 0;
  visit_tensors(p, [&](const std::string&, const Mat<Scalar>& m) {
    n += static_cast<std::size_t>(m.size());
  });
  return n;
}

template <typename Scalar>
ModelParams<Scalar> zeros_like(const ModelParams<Scalar>& p) {
  ModelParams<Scalar> z;
  z.resize(p.config);
  visit_tensors(z, [](const std::string&, Mat<Scalar>& m) { m.setZero(); });
  return z;
}

/// Deterministic initialization: weights uniform in [-s, s] with
/// s = init_scale / sqrt(fan_in), biases zero. fan_in is the input width
/// of the matrix (its column count); for the embeddings it is the
/// embedding dimension.
template <typename Scalar>
ModelParams<Scalar> init_model(const ModelConfig& config) {
  config.validate();
  ModelParams<Scalar> params;
  params.resize(config);
  Rng rng(config.seed);
  visit_tensors(params, [&](const std::string& name, Mat<Scalar>& m) {
    if (name.find("b_") != std::string::npos) {
      m.setZero();
      return;
    }
    const bool is_embedding = name.find("embedding") != std::string::npos;
    const double fan_in = is_embedding ? static_cast<double>(m.rows())
                                       : static_cast<double>(m.cols());
    const double s = config.init_scale / std::sqrt(fan_in);
    for (Eigen::Index col = 0; col < m.cols(); ++col)
      for (Eigen::Index row = 0; row < m.rows(); ++row)
        m(row, col) = static_cast<Scalar>(rng.uniform_real(-s, s));
  });
  return params;
}

/// One training example: encoded source tokens and the SOS...EOS-wrapped
/// (optionally PAD-padded) target. When `decoder_inputs` is non-empty it
/// replaces the teacher-forced inputs target[0..T-2] position by
/// position; gold labels always come from `target`.
struct EncodedExample {
  std::vector<int> source;
  std::vector<int> target;
  std::vector<int> decoder_inputs;
};

namespace detail {

template <typename Scalar>
struct GruSeqTrace {
  Mat<Scalar> inputs;    // D x S
  Vec<Scalar> h0;        // initial state
  Mat<Scalar> update;    // z
  Mat<Scalar> reset;     // r
  Mat<Scalar> rec_cand;  // U_n h_prev
  Mat<Scalar> cand;      // n
  Mat<Scalar> states;    // h
};

/// Runs one GRU layer over a whole sequence. The input-side products are
/// batched into three GEMMs; the recurrence is stepwise.
template <typename Scalar>
GruSeqTrace<Scalar> gru_seq_forward(const GruCell<Scalar>& cell,
                                    Mat<Scalar> inputs, Vec<Scalar> h0) {
  const Eigen::Index h = cell.u_update.rows();
  const Eigen::Index steps = inputs.cols();
  GruSeqTrace<Scalar> trace;
  trace.inputs = std::move(inputs);
  trace.h0 = std::move(h0);
  trace.update.resize(h, steps);
  trace.reset.resize(h, steps);
  trace.rec_cand.resize(h, steps);
  trace.cand.resize(h, steps);
  trace.states.resize(h, steps);

  const Mat<Scalar> wx_update = cell.w_update * trace.inputs;
  const Mat<Scalar> wx_reset = cell.w_reset * trace.inputs;
  const Mat<Scalar> wx_cand = cell.w_cand * trace.inputs;

  Vec<Scalar> h_prev = trace.h0;
  for (Eigen::Index j = 0; j < steps; ++j) {
    const Vec<Scalar> az =
        wx_update.col(j) + cell.u_update * h_prev + cell.b_update;
    const Vec<Scalar> ar =
        wx_reset.col(j) + cell.u_reset * h_prev + cell.b_reset;
    const Vec<Scalar> z = Scalar(1) / (Scalar(1) + (-az.array()).exp());
    const Vec<Scalar> r = Scalar(1) / (Scalar(1) + (-ar.array()).exp());
    const Vec<Scalar> un = cell.u_cand * h_prev;
    const Vec<Scalar> an =
        wx_cand.col(j) + (r.array() * un.array()).matrix() + cell.b_cand;
    const Vec<Scalar> n = an.array().tanh();
    trace.update.col(j) = z;
    trace.reset.col(j) = r;
    trace.rec_cand.col(j) = un;
    trace.cand.col(j) = n;
    trace.states.col(j) =
        ((Scalar(1) - z.array()) * n.array() + z.array() * h_prev.array());
    h_prev = trace.states.col(j);
  }
  return trace;
}

template <typename Scalar>
struct GruSeqGrads {
  Mat<Scalar> d_inputs;  // D x S
  Vec<Scalar> d_h0;
};

/// Backward through a GRU layer. `d_states` carries dL/dh_j contributions
/// from outside the layer; the recurrent flow is internal. Weight
/// gradients are accumulated into `cell_grad` (batched GEMMs over the
/// collected pre-activation gradients).
template <typename Scalar>
GruSeqGrads<Scalar> gru_seq_backward(const GruCell<Scalar>& cell,
                                     const GruSeqTrace<Scalar>& trace,
                                     const Mat<Scalar>& d_states,
                                     GruCell<Scalar>& cell_grad) {
  const Eigen::Index h = cell.u_update.rows();
  const Eigen::Index steps = trace.states.cols();
  Mat<Scalar> da_update(h, steps), da_reset(h, steps), da_cand(h, steps),
      d_rec_cand(h, steps);

  Vec<Scalar> d_carry = Vec<Scalar>::Zero(h);
  for (Eigen::Index j = steps - 1; j >= 0; --j) {
    const Vec<Scalar> dh = d_states.col(j) + d_carry;
    const auto z = trace.update.col(j).array();
    const auto r = trace.reset.col(j).array();
    const auto un = trace.rec_cand.col(j).array();
    const auto n = trace.cand.col(j).array();
    const Vec<Scalar> h_prev =
        j > 0 ? Vec<Scalar>(trace.states.col(j - 1)) : trace.h0;

    const Vec<Scalar> dz = (dh.array() * (h_prev.array() - n)).matrix();
    const Vec<Scalar> dac =
        (dh.array() * (Scalar(1) - z) * (Scalar(1) - n.square())).matrix();
    const Vec<Scalar> dun = (dac.array() * r).matrix();
    const Vec<Scalar> dar =
        (dac.array() * un * r * (Scalar(1) - r)).matrix();
    const Vec<Scalar> daz =
        (dz.array() * z * (Scalar(1) - z)).matrix();

    da_update.col(j) = daz;
    da_reset.col(j) = dar;
    da_cand.col(j) = dac;
    d_rec_cand.col(j) = dun;

    d_carry = (dh.array() * z).matrix();
    d_carry.noalias() += cell.u_cand.transpose() * dun;
    d_carry.noalias() += cell.u_reset.transpose() * dar;
    d_carry.noalias() += cell.u_update.transpose() * daz;
  }

  // Previous-state matrix [h0, h_0, ..., h_{S-2}] for the recurrent grads.
  Mat<Scalar> prev_states(h, steps);
  prev_states.col(0) = trace.h0;
  if (steps > 1)
    prev_states.rightCols(steps - 1) = trace.states.leftCols(steps - 1);

  cell_grad.w_update.noalias() += da_update * trace.inputs.transpose();
  cell_grad.w_reset.noalias() += da_reset * trace.inputs.transpose();
  cell_grad.w_cand.noalias() += da_cand * trace.inputs.transpose();
  cell_grad.u_update.noalias() += da_update * prev_states.transpose();
  cell_grad.u_reset.noalias() += da_reset * prev_states.transpose();
  cell_grad.u_cand.noalias() += d_rec_cand * prev_states.transpose();
  cell_grad.b_update += da_update.rowwise().sum();
  cell_grad.b_reset += da_reset.rowwise().sum();
  cell_grad.b_cand += da_cand.rowwise().sum();

  GruSeqGrads<Scalar> grads;
  grads.d_inputs.noalias() = cell.w_update.transpose() * da_update;
  grads.d_inputs.noalias() += cell.w_reset.transpose() * da_reset;
  grads.d_inputs.noalias() += cell.w_cand.transpose() * da_cand;
  grads.d_h0 = d_carry;
  return grads;
}

}  // namespace detail
}  // namespace vislip
