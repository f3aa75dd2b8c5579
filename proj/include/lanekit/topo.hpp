#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace lanekit::topo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Activation { kReLU, kIdentity };

struct MlpLayer {
  Matrix weight;  // out x in
  Vector bias;    // out
};

// Affine layers applied row-wise; hidden layers use the activation tag, the
// output layer is always linear.
struct MlpParams {
  std::vector<MlpLayer> layers;
  Activation hidden_activation = Activation::kReLU;

  Eigen::Index input_dim() const { return layers.front().weight.cols(); }
  Eigen::Index output_dim() const { return layers.back().weight.rows(); }
  void validate() const;
};

Matrix mlp_forward(const Matrix& x, const MlpParams& p);

struct MlpCache {
  std::vector<Matrix> inputs;  // input to each layer
  std::vector<Matrix> pre;     // pre-activation of each layer
};

Matrix mlp_forward_cached(const Matrix& x, const MlpParams& p, MlpCache& cache);

struct MlpGrads {
  std::vector<Matrix> d_weight;
  std::vector<Vector> d_bias;
};

// Returns the gradient w.r.t. the MLP input; fills grads when non-null.
Matrix mlp_backward(const MlpParams& p, const MlpCache& cache, const Matrix& grad_out,
                    MlpGrads* grads);

struct TopoBlockParams {
  MlpParams mlp_succ;    // D -> D, applied to M*F
  MlpParams mlp_prede;   // D -> D, applied to M^T*F
  MlpParams mlp_fuse;    // 3D -> D
  MlpParams head_end;    // D -> De
  MlpParams head_start;  // D -> De

  void validate() const;
};

// Connection head: logistic(E_e * E_s^T), entries in (0,1).
Matrix connection_scores(const Matrix& queries, const TopoBlockParams& p);

// Topology-guided feature enhancement:
//   fuse(concat(F, succ_mlp(M*F), prede_mlp(M^T*F)))
Matrix topo_enhance(const Matrix& f, const Matrix& m, const TopoBlockParams& p);

struct TopoBlockGrads {
  Matrix d_f;
  Matrix d_m;
  MlpGrads succ;
  MlpGrads prede;
  MlpGrads fuse;
};

TopoBlockGrads topo_block_backward(const Matrix& f, const Matrix& m, const TopoBlockParams& p,
                                   const Matrix& upstream);

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::size_t coords_checked = 0;
  std::size_t coords_skipped = 0;  // finite-difference step crossed a ReLU kink
};

// Compares topo_block_backward against central finite differences on the
// scalar loss sum(upstream .* topo_enhance(f, m, p)). Checks every coordinate
// of f, m and the enhancement MLP parameters when a tensor has at most
// max_coords_per_tensor entries, otherwise a deterministic random sample of
// that size. Coordinates whose +/-eps evaluations change a ReLU activation
// pattern are excluded from the maximum and counted as skipped.
GradCheckReport grad_check(const Matrix& f, const Matrix& m, const TopoBlockParams& p,
                           const Matrix& upstream, double eps = 1e-5,
                           std::size_t max_coords_per_tensor = 0,
                           std::uint64_t sample_seed = 0);

// Deterministic random instances for demos and tests.
MlpParams random_mlp(Eigen::Index in, Eigen::Index hidden, Eigen::Index out, std::uint64_t seed,
                     Activation act = Activation::kReLU);
TopoBlockParams random_block_params(Eigen::Index d, Eigen::Index d_e, std::uint64_t seed);

}  // namespace lanekit::topo
