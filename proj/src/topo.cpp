#include "lanekit/topo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "lanekit/rng.hpp"

namespace lanekit::topo {

void MlpParams::validate() const {
  if (layers.empty()) throw std::invalid_argument("MLP needs at least one layer");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const MlpLayer& l = layers[i];
    if (l.weight.rows() != l.bias.size()) {
      throw std::invalid_argument("MLP layer " + std::to_string(i) + ": bias size mismatch");
    }
    if (i > 0 && l.weight.cols() != layers[i - 1].weight.rows()) {
      throw std::invalid_argument("MLP layer " + std::to_string(i) + ": input dim mismatch");
    }
  }
}

namespace {

Matrix apply_activation(const Matrix& pre, Activation act) {
  if (act == Activation::kReLU) return pre.cwiseMax(0.0);
  return pre;
}

void check_input(const Matrix& x, const MlpParams& p) {
  if (x.cols() != p.input_dim()) {
    throw std::invalid_argument("MLP input has " + std::to_string(x.cols()) +
                                " columns, expected " + std::to_string(p.input_dim()));
  }
}

}  // namespace

Matrix mlp_forward(const Matrix& x, const MlpParams& p) {
  MlpCache cache;
  return mlp_forward_cached(x, p, cache);
}

Matrix mlp_forward_cached(const Matrix& x, const MlpParams& p, MlpCache& cache) {
  p.validate();
  check_input(x, p);
  cache.inputs.clear();
  cache.pre.clear();
  Matrix cur = x;
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    cache.inputs.push_back(cur);
    Matrix pre = (cur * p.layers[i].weight.transpose()).rowwise() + p.layers[i].bias.transpose();
    cache.pre.push_back(pre);
    const bool is_output = (i + 1 == p.layers.size());
    cur = is_output ? std::move(pre) : apply_activation(pre, p.hidden_activation);
  }
  return cur;
}

Matrix mlp_backward(const MlpParams& p, const MlpCache& cache, const Matrix& grad_out,
                    MlpGrads* grads) {
  if (grads) {
    grads->d_weight.assign(p.layers.size(), Matrix());
    grads->d_bias.assign(p.layers.size(), Vector());
  }
  Matrix g = grad_out;
  for (std::size_t i = p.layers.size(); i-- > 0;) {
    const bool is_output = (i + 1 == p.layers.size());
    if (!is_output && p.hidden_activation == Activation::kReLU) {
      g = g.cwiseProduct((cache.pre[i].array() > 0.0).cast<double>().matrix());
    }
    if (grads) {
      grads->d_weight[i] = g.transpose() * cache.inputs[i];
      grads->d_bias[i] = g.colwise().sum().transpose();
    }
    g = g * p.layers[i].weight;
  }
  return g;
}

void TopoBlockParams::validate() const {
  mlp_succ.validate();
  mlp_prede.validate();
  mlp_fuse.validate();
  head_end.validate();
  head_start.validate();
  const Eigen::Index d = mlp_succ.input_dim();
  if (mlp_succ.output_dim() != d || mlp_prede.input_dim() != d || mlp_prede.output_dim() != d) {
    throw std::invalid_argument("succ/prede MLPs must map D -> D");
  }
  if (mlp_fuse.input_dim() != 3 * d || mlp_fuse.output_dim() != d) {
    throw std::invalid_argument("fuse MLP must map 3D -> D");
  }
  if (head_end.input_dim() != d || head_start.input_dim() != d ||
      head_end.output_dim() != head_start.output_dim()) {
    throw std::invalid_argument("connection heads must map D -> De with equal De");
  }
}

Matrix connection_scores(const Matrix& queries, const TopoBlockParams& p) {
  p.validate();
  const Matrix e_end = mlp_forward(queries, p.head_end);
  const Matrix e_start = mlp_forward(queries, p.head_start);
  const Matrix raw = e_end * e_start.transpose();
  return raw.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

namespace {

void check_enhance_shapes(const Matrix& f, const Matrix& m, const TopoBlockParams& p) {
  if (f.cols() != p.mlp_succ.input_dim()) {
    throw std::invalid_argument("feature dim does not match block params");
  }
  if (m.rows() != f.rows() || m.cols() != f.rows()) {
    throw std::invalid_argument("topology matrix must be N x N for N feature rows");
  }
}

}  // namespace

Matrix topo_enhance(const Matrix& f, const Matrix& m, const TopoBlockParams& p) {
  p.validate();
  check_enhance_shapes(f, m, p);
  const Matrix f_succ = m * f;
  const Matrix f_prede = m.transpose() * f;
  const Matrix a = mlp_forward(f_succ, p.mlp_succ);
  const Matrix b = mlp_forward(f_prede, p.mlp_prede);
  Matrix concat(f.rows(), 3 * f.cols());
  concat << f, a, b;
  return mlp_forward(concat, p.mlp_fuse);
}

TopoBlockGrads topo_block_backward(const Matrix& f, const Matrix& m, const TopoBlockParams& p,
                                   const Matrix& upstream) {
  p.validate();
  check_enhance_shapes(f, m, p);
  if (upstream.rows() != f.rows() || upstream.cols() != f.cols()) {
    throw std::invalid_argument("upstream gradient shape must match the block output");
  }

  const Eigen::Index d = f.cols();
  const Matrix f_succ = m * f;
  const Matrix f_prede = m.transpose() * f;

  MlpCache cache_succ, cache_prede, cache_fuse;
  const Matrix a = mlp_forward_cached(f_succ, p.mlp_succ, cache_succ);
  const Matrix b = mlp_forward_cached(f_prede, p.mlp_prede, cache_prede);
  Matrix concat(f.rows(), 3 * d);
  concat << f, a, b;
  mlp_forward_cached(concat, p.mlp_fuse, cache_fuse);

  TopoBlockGrads out;
  const Matrix g_concat = mlp_backward(p.mlp_fuse, cache_fuse, upstream, &out.fuse);
  const Matrix g_f_direct = g_concat.leftCols(d);
  const Matrix g_a = g_concat.middleCols(d, d);
  const Matrix g_b = g_concat.rightCols(d);

  const Matrix g_succ_in = mlp_backward(p.mlp_succ, cache_succ, g_a, &out.succ);
  const Matrix g_prede_in = mlp_backward(p.mlp_prede, cache_prede, g_b, &out.prede);

  // f_succ = m f and f_prede = m^T f
  out.d_f = g_f_direct + m.transpose() * g_succ_in + m * g_prede_in;
  out.d_m = g_succ_in * f.transpose() + f * g_prede_in.transpose();
  return out;
}

namespace {

struct LossEval {
  double loss = 0.0;
  std::vector<char> relu_pattern;
};

void append_pattern(const MlpParams& p, const MlpCache& cache, std::vector<char>& sig) {
  if (p.hidden_activation != Activation::kReLU) return;
  for (std::size_t i = 0; i + 1 < cache.pre.size(); ++i) {
    const Matrix& pre = cache.pre[i];
    for (Eigen::Index k = 0; k < pre.size(); ++k) {
      sig.push_back(pre.data()[k] > 0.0 ? 1 : 0);
    }
  }
}

LossEval eval_loss(const Matrix& f, const Matrix& m, const TopoBlockParams& p,
                   const Matrix& upstream) {
  const Matrix f_succ = m * f;
  const Matrix f_prede = m.transpose() * f;
  MlpCache cache_succ, cache_prede, cache_fuse;
  const Matrix a = mlp_forward_cached(f_succ, p.mlp_succ, cache_succ);
  const Matrix b = mlp_forward_cached(f_prede, p.mlp_prede, cache_prede);
  Matrix concat(f.rows(), 3 * f.cols());
  concat << f, a, b;
  const Matrix out = mlp_forward_cached(concat, p.mlp_fuse, cache_fuse);

  LossEval ev;
  ev.loss = (upstream.array() * out.array()).sum();
  append_pattern(p.mlp_succ, cache_succ, ev.relu_pattern);
  append_pattern(p.mlp_prede, cache_prede, ev.relu_pattern);
  append_pattern(p.mlp_fuse, cache_fuse, ev.relu_pattern);
  return ev;
}

struct TensorRef {
  double* data;
  const double* analytic;
  Eigen::Index size;
};

}  // namespace

GradCheckReport grad_check(const Matrix& f, const Matrix& m, const TopoBlockParams& p,
                           const Matrix& upstream, double eps, std::size_t max_coords_per_tensor,
                           std::uint64_t sample_seed) {
  if (!(eps > 0.0)) throw std::invalid_argument("grad_check eps must be positive");

  const TopoBlockGrads analytic = topo_block_backward(f, m, p, upstream);

  Matrix f_mut = f;
  Matrix m_mut = m;
  TopoBlockParams p_mut = p;

  std::vector<TensorRef> refs;
  refs.push_back({f_mut.data(), analytic.d_f.data(), f_mut.size()});
  refs.push_back({m_mut.data(), analytic.d_m.data(), m_mut.size()});
  const auto add_mlp = [&refs](MlpParams& mlp, const MlpGrads& grads) {
    for (std::size_t i = 0; i < mlp.layers.size(); ++i) {
      refs.push_back({mlp.layers[i].weight.data(), grads.d_weight[i].data(),
                      mlp.layers[i].weight.size()});
      refs.push_back(
          {mlp.layers[i].bias.data(), grads.d_bias[i].data(), mlp.layers[i].bias.size()});
    }
  };
  add_mlp(p_mut.mlp_succ, analytic.succ);
  add_mlp(p_mut.mlp_prede, analytic.prede);
  add_mlp(p_mut.mlp_fuse, analytic.fuse);

  DeterministicRng rng(sample_seed);
  GradCheckReport report;
  for (const TensorRef& ref : refs) {
    std::vector<Eigen::Index> coords;
    const std::size_t n = static_cast<std::size_t>(ref.size);
    if (max_coords_per_tensor == 0 || n <= max_coords_per_tensor) {
      coords.resize(n);
      for (std::size_t i = 0; i < n; ++i) coords[i] = static_cast<Eigen::Index>(i);
    } else {
      std::unordered_set<std::uint64_t> seen;
      while (seen.size() < max_coords_per_tensor) {
        seen.insert(rng.below(ref.size));
      }
      coords.assign(seen.begin(), seen.end());
      std::sort(coords.begin(), coords.end());
    }

    for (const Eigen::Index idx : coords) {
      const double orig = ref.data[idx];
      ref.data[idx] = orig + eps;
      const LossEval plus = eval_loss(f_mut, m_mut, p_mut, upstream);
      ref.data[idx] = orig - eps;
      const LossEval minus = eval_loss(f_mut, m_mut, p_mut, upstream);
      ref.data[idx] = orig;

      if (plus.relu_pattern != minus.relu_pattern) {
        ++report.coords_skipped;
        continue;
      }
      const double numeric = (plus.loss - minus.loss) / (2.0 * eps);
      const double a = ref.analytic[idx];
      const double rel = std::abs(a - numeric) / std::max(1.0, std::abs(a));
      report.max_rel_err = std::max(report.max_rel_err, rel);
      ++report.coords_checked;
    }
  }
  return report;
}

MlpParams random_mlp(Eigen::Index in, Eigen::Index hidden, Eigen::Index out, std::uint64_t seed,
                     Activation act) {
  DeterministicRng rng(seed);
  const auto fill = [&rng](Eigen::Index rows, Eigen::Index cols) {
    Matrix w(rows, cols);
    const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      w.data()[i] = rng.uniform(-1.0, 1.0) * scale;
    }
    return w;
  };
  const auto fill_bias = [&rng](Eigen::Index n) {
    Vector b(n);
    for (Eigen::Index i = 0; i < n; ++i) b[i] = rng.uniform(-0.3, 0.3);
    return b;
  };
  MlpParams p;
  p.hidden_activation = act;
  p.layers.push_back({fill(hidden, in), fill_bias(hidden)});
  p.layers.push_back({fill(out, hidden), fill_bias(out)});
  return p;
}

TopoBlockParams random_block_params(Eigen::Index d, Eigen::Index d_e, std::uint64_t seed) {
  TopoBlockParams p;
  p.mlp_succ = random_mlp(d, d, d, seed * 6151 + 1);
  p.mlp_prede = random_mlp(d, d, d, seed * 6151 + 2);
  p.mlp_fuse = random_mlp(3 * d, d, d, seed * 6151 + 3);
  p.head_end = random_mlp(d, d, d_e, seed * 6151 + 4);
  p.head_start = random_mlp(d, d, d_e, seed * 6151 + 5);
  return p;
}

}  // namespace lanekit::topo
