#include "surropt/trainer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "surropt/errors.hpp"
#include "surropt/rng.hpp"

namespace surropt {

void TrainConfig::validate() const {
  for (int h : hidden_dims) {
    if (h <= 0) throw ConfigError("TrainConfig: hidden widths must be positive");
  }
  if (!(learning_rate > 0.0)) {
    throw ConfigError("TrainConfig: learning_rate must be positive");
  }
  if (epochs < 1) throw ConfigError("TrainConfig: epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("TrainConfig: batch_size must be >= 1");
  if (early_stop_patience < 1) {
    throw ConfigError("TrainConfig: early_stop_patience must be >= 1");
  }
}

namespace {

// Columns are samples throughout the trainer (n x batch layouts keep the
// layer passes as plain GEMMs).

void apply_activation(Activation kind, const Matrix& z, Matrix& value,
                      Matrix& deriv) {
  using Array = Eigen::ArrayXXd;
  switch (kind) {
    case Activation::Swish: {
      const Array t = (-z.array().abs()).exp();
      const Array sigma =
          (z.array() >= 0.0).select(1.0 / (1.0 + t), t / (1.0 + t));
      value = z.array() * sigma;
      deriv = sigma * (1.0 + z.array() * (1.0 - sigma));
      break;
    }
    case Activation::Tanh: {
      value = z.array().tanh();
      deriv = 1.0 - value.array().square();
      break;
    }
    case Activation::Sigmoid: {
      const Array t = (-z.array().abs()).exp();
      const Array sigma =
          (z.array() >= 0.0).select(1.0 / (1.0 + t), t / (1.0 + t));
      value = sigma;
      deriv = sigma * (1.0 - sigma);
      break;
    }
  }
}

struct AdamState {
  std::vector<Matrix> mw, vw;
  std::vector<Vector> mb, vb;
  long t = 0;
};

Matrix gather_columns(const Matrix& all, const std::vector<int>& idx) {
  Matrix out(all.rows(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out.col(i) = all.col(idx[i]);
  return out;
}

}  // namespace

TrainResult train_mlp(const Dataset& data, const TrainConfig& config) {
  config.validate();
  data.validate();
  const int n = data.input_dim();
  const int m = data.output_dim();

  const auto train_idx = data.indices_of(Split::Train);
  const auto val_idx = data.indices_of(Split::Val);
  if (train_idx.empty()) throw ConfigError("train_mlp: no rows tagged train");

  // Standardize on the training split; constant columns keep scale 1.
  Vector mu_x = Vector::Zero(n), sd_x = Vector::Ones(n);
  Vector mu_y = Vector::Zero(m), sd_y = Vector::Ones(m);
  const double n_train = static_cast<double>(train_idx.size());
  for (int r : train_idx) {
    mu_x += data.inputs.row(r).transpose();
    mu_y += data.targets.row(r).transpose();
  }
  mu_x /= n_train;
  mu_y /= n_train;
  Vector var_x = Vector::Zero(n), var_y = Vector::Zero(m);
  for (int r : train_idx) {
    var_x.array() +=
        (data.inputs.row(r).transpose() - mu_x).array().square();
    var_y.array() += (data.targets.row(r).transpose() - mu_y).array().square();
  }
  for (int i = 0; i < n; ++i) {
    const double s = std::sqrt(var_x[i] / n_train);
    if (s > 1e-12) sd_x[i] = s;
  }
  for (int j = 0; j < m; ++j) {
    const double s = std::sqrt(var_y[j] / n_train);
    if (s > 1e-12) sd_y[j] = s;
  }

  // Column-major standardized splits.
  const auto standardize = [&](const std::vector<int>& idx) {
    Matrix X(n, idx.size()), Y(m, idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      X.col(i) = (data.inputs.row(idx[i]).transpose() - mu_x).cwiseQuotient(sd_x);
      Y.col(i) = (data.targets.row(idx[i]).transpose() - mu_y).cwiseQuotient(sd_y);
    }
    return std::make_pair(std::move(X), std::move(Y));
  };
  const auto [X_train, Y_train] = standardize(train_idx);
  const auto [X_val, Y_val] = standardize(val_idx);
  Matrix Y_val_raw(m, val_idx.size());
  for (std::size_t i = 0; i < val_idx.size(); ++i) {
    Y_val_raw.col(i) = data.targets.row(val_idx[i]).transpose();
  }

  std::vector<int> dims;
  dims.push_back(n);
  for (int h : config.hidden_dims) dims.push_back(h);
  dims.push_back(m);
  const int layers = static_cast<int>(dims.size()) - 1;
  const int hidden = layers - 1;

  Rng rng(config.seed);
  std::vector<Matrix> W(layers);
  std::vector<Vector> b(layers);
  for (int l = 0; l < layers; ++l) {
    const double limit = std::sqrt(1.0 / dims[l]);
    W[l].resize(dims[l + 1], dims[l]);
    for (Eigen::Index r = 0; r < W[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < W[l].cols(); ++c) {
        W[l](r, c) = rng.uniform(-limit, limit);
      }
    }
    b[l] = Vector::Zero(dims[l + 1]);
  }

  AdamState adam;
  adam.mw.resize(layers);
  adam.vw.resize(layers);
  adam.mb.resize(layers);
  adam.vb.resize(layers);
  for (int l = 0; l < layers; ++l) {
    adam.mw[l] = Matrix::Zero(dims[l + 1], dims[l]);
    adam.vw[l] = Matrix::Zero(dims[l + 1], dims[l]);
    adam.mb[l] = Vector::Zero(dims[l + 1]);
    adam.vb[l] = Vector::Zero(dims[l + 1]);
  }
  constexpr double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;

  // Forward pass in standardized units; returns the output activations.
  const auto forward = [&](const Matrix& X) {
    Matrix a = X;
    Matrix deriv;
    for (int l = 0; l < hidden; ++l) {
      Matrix z = (W[l] * a).colwise() + b[l];
      apply_activation(config.activation, z, a, deriv);
    }
    return Matrix(((W[layers - 1] * a).colwise() + b[layers - 1]));
  };

  const auto val_mse_raw = [&]() {
    if (val_idx.empty()) return -1.0;
    const Matrix pred_std = forward(X_val);
    double sse = 0.0;
    for (Eigen::Index c = 0; c < pred_std.cols(); ++c) {
      const Vector raw = pred_std.col(c).cwiseProduct(sd_y) + mu_y;
      sse += (raw - Y_val_raw.col(c)).squaredNorm();
    }
    return sse / (static_cast<double>(val_idx.size()) * m);
  };

  std::vector<int> order(train_idx.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

  TrainResult result{
      MlpModel({n, m},
               {Matrix::Zero(m, n)},
               {Vector::Zero(m)},
               std::vector<Activation>{}),
      {},
      0,
      0.0};
  std::vector<Matrix> best_W = W;
  std::vector<Vector> best_b = b;
  double best_val = std::numeric_limits<double>::infinity();
  int best_epoch = 0;

  std::vector<Matrix> A(layers), Z(layers), D(hidden);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    Vector sse_std = Vector::Zero(m);

    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t stop =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      std::vector<int> batch(order.begin() + start, order.begin() + stop);
      const Matrix Xb = gather_columns(X_train, batch);
      const Matrix Yb = gather_columns(Y_train, batch);
      const double bsz = static_cast<double>(batch.size());

      // Forward with caches.
      Matrix a = Xb;
      for (int l = 0; l < hidden; ++l) {
        Z[l] = (W[l] * a).colwise() + b[l];
        apply_activation(config.activation, Z[l], A[l], D[l]);
        a = A[l];
      }
      const Matrix out = (W[layers - 1] * a).colwise() + b[layers - 1];
      const Matrix err = out - Yb;
      sse_std += err.array().square().matrix().rowwise().sum();

      // Backward.
      Matrix delta = (2.0 / (bsz * m)) * err;
      ++adam.t;
      const double corr1 = 1.0 - std::pow(beta1, static_cast<double>(adam.t));
      const double corr2 = 1.0 - std::pow(beta2, static_cast<double>(adam.t));
      for (int l = layers - 1; l >= 0; --l) {
        const Matrix& input = l == 0 ? Xb : A[l - 1];
        const Matrix gw = delta * input.transpose();
        const Vector gb = delta.rowwise().sum();
        if (l > 0) {
          delta = (W[l].transpose() * delta).cwiseProduct(D[l - 1]);
        }
        auto& mw = adam.mw[l];
        auto& vw = adam.vw[l];
        mw = beta1 * mw + (1.0 - beta1) * gw;
        vw = beta2 * vw + (1.0 - beta2) * gw.cwiseProduct(gw);
        W[l].array() -= config.learning_rate * (mw.array() / corr1) /
                        ((vw.array() / corr2).sqrt() + adam_eps);
        auto& mb = adam.mb[l];
        auto& vb = adam.vb[l];
        mb = beta1 * mb + (1.0 - beta1) * gb;
        vb = beta2 * vb + (1.0 - beta2) * gb.cwiseProduct(gb);
        b[l].array() -= config.learning_rate * (mb.array() / corr1) /
                        ((vb.array() / corr2).sqrt() + adam_eps);
      }
    }

    // Report in raw units: per-output scales fold back exactly.
    double train_mse = 0.0;
    for (int j = 0; j < m; ++j) {
      train_mse += sd_y[j] * sd_y[j] * sse_std[j];
    }
    train_mse /= (static_cast<double>(train_idx.size()) * m);
    if (!std::isfinite(train_mse)) {
      throw TrainError("train_mlp: loss diverged at epoch " +
                       std::to_string(epoch));
    }

    const double vmse = val_idx.empty() ? train_mse : val_mse_raw();
    result.history.push_back({epoch, train_mse, vmse});

    if (vmse < best_val) {
      best_val = vmse;
      best_epoch = epoch;
      best_W = W;
      best_b = b;
    } else if (epoch - best_epoch >= config.early_stop_patience) {
      break;
    }
  }

  // Fold standardization into the first and last affine layers so the
  // exported model consumes and produces raw units.
  W = std::move(best_W);
  b = std::move(best_b);
  const Vector inv_sd_x = sd_x.cwiseInverse();
  W[0] = W[0] * inv_sd_x.asDiagonal();
  b[0] -= W[0] * mu_x;
  W[layers - 1] = sd_y.asDiagonal() * W[layers - 1];
  b[layers - 1] = sd_y.cwiseProduct(b[layers - 1]) + mu_y;

  result.model = MlpModel(dims, std::move(W), std::move(b),
                          std::vector<Activation>(hidden, config.activation));
  result.best_epoch = best_epoch;
  result.best_val_mse = best_val;
  return result;
}

void write_history_csv(const std::vector<EpochStats>& history,
                       std::ostream& out) {
  const auto fmt = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  };
  out << "epoch,train_mse,val_mse\n";
  for (const auto& e : history) {
    out << e.epoch << ',' << fmt(e.train_mse) << ',' << fmt(e.val_mse) << '\n';
  }
}

}  // namespace surropt
