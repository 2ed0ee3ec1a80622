#include "fock.hpp"

#include <cmath>

#include "errors.hpp"
#include "mathutil.hpp"

namespace eyewit {

int default_dim(double alpha_abs2, double nbar) {
  int d = int(std::ceil(6.0 * (alpha_abs2 + nbar + 1.0)));
  return std::max(32, d);
}

Matrix displacement_columns(Complex alpha, int rows, int cols) {
  if (rows < cols || cols < 1)
    throw DimensionError("displacement_columns: need rows >= cols >= 1");
  Matrix d = Matrix::Zero(rows, cols);
  const double a2 = std::norm(alpha);
  if (a2 == 0.0) {
    for (int n = 0; n < cols; ++n) d(n, n) = 1.0;
    return d;
  }
  // column 0 is the coherent state, in log space to survive large |alpha|
  const double la = 0.5 * std::log(a2);
  const Complex phase = alpha / std::abs(alpha);
  Complex ph = 1.0;
  for (int m = 0; m < rows; ++m) {
    double lmag = -0.5 * a2 + m * la - 0.5 * log_factorial(m);
    d(m, 0) = std::exp(lmag) * ph;
    ph *= phase;
  }
  // D|n+1> = (a^dag - conj(alpha)) D|n> / sqrt(n+1)
  const Complex ac = std::conj(alpha);
  for (int n = 0; n + 1 < cols; ++n) {
    const double rn = 1.0 / std::sqrt(double(n + 1));
    d(0, n + 1) = -ac * d(0, n) * rn;
    for (int m = 1; m < rows; ++m)
      d(m, n + 1) = (std::sqrt(double(m)) * d(m - 1, n) - ac * d(m, n)) * rn;
  }
  return d;
}

FockOperator displacement_matrix(Complex alpha, int dim, double tail_tol) {
  if (dim < 1) throw DimensionError("displacement_matrix: dim >= 1 required");
  Matrix d = displacement_columns(alpha, dim, dim);
  const int ncheck = std::min(dim, std::max(4, int(std::ceil(std::norm(alpha)))));
  for (int n = 0; n < ncheck; ++n) {
    double defect = std::abs(1.0 - d.col(n).squaredNorm());
    if (defect > tail_tol)
      throw TruncationError("displacement_matrix: column " + std::to_string(n) +
                            " norm defect " + std::to_string(defect) +
                            " exceeds tail tolerance");
  }
  return FockOperator{std::move(d), false};
}

FockOperator thermal_state(double nbar, int dim, double tail_tol) {
  if (nbar < 0.0) throw std::invalid_argument("thermal_state: nbar >= 0 required");
  if (dim < 1) throw DimensionError("thermal_state: dim >= 1 required");
  Matrix m = Matrix::Zero(dim, dim);
  const double p = nbar / (1.0 + nbar);
  double w = 1.0 / (1.0 + nbar);
  double retained = 0.0;
  for (int k = 0; k < dim; ++k) {
    m(k, k) = w;
    retained += w;
    w *= p;
  }
  if (retained < 1.0 - tail_tol)
    throw TruncationError("thermal_state: retained probability " +
                          std::to_string(retained) + " below 1 - tail_tol");
  return FockOperator{std::move(m), true};
}

FockOperator loss_exponential(double eta, int dim) {
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = std::pow(1.0 - eta, n);
  return FockOperator{std::move(m), true};
}

FockOperator loss_channel(const FockOperator& state, double eta) {
  if (eta < 0.0 || eta > 1.0)
    throw std::invalid_argument("loss_channel: eta in [0,1] required");
  const int dim = state.dim();
  if (eta == 1.0) return state;
  Matrix out = Matrix::Zero(dim, dim);
  if (eta == 0.0) {
    out(0, 0) = state.entries.trace();
    return FockOperator{std::move(out), state.hermitian};
  }
  // Kraus A_k |n> = sqrt(C(n,k) eta^(n-k) (1-eta)^k) |n-k>
  for (int k = 0; k < dim; ++k) {
    for (int m = 0; m + k < dim; ++m) {
      const double fm = std::sqrt(binomial_pmf(k, m + k, 1.0 - eta));
      if (fm == 0.0) continue;
      for (int n = 0; n + k < dim; ++n) {
        const double fn = std::sqrt(binomial_pmf(k, n + k, 1.0 - eta));
        out(m, n) += fm * fn * state.entries(m + k, n + k);
      }
    }
  }
  return FockOperator{std::move(out), state.hermitian};
}

TwoModeState loss_channel(const TwoModeState& state, Mode mode, double eta) {
  if (eta < 0.0 || eta > 1.0)
    throw std::invalid_argument("loss_channel: eta in [0,1] required");
  if (eta == 1.0) return state;
  const int d = state.mode_dim;
  TwoModeState out{Matrix::Zero(d * d, d * d), d};
  // f(k, m) = sqrt(C(m+k, k) eta^m (1-eta)^k), zero when m + k >= d
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int m = 0; m + k < d; ++m)
      f(k, m) = std::sqrt(binomial_pmf(k, m + k, 1.0 - eta));
  if (mode == Mode::A) {
    // the spectator index is contiguous inside each d x d block
    for (int k = 0; k < d; ++k)
      for (int m = 0; m + k < d; ++m) {
        if (f(k, m) == 0.0) continue;
        for (int n = 0; n + k < d; ++n) {
          const double w = f(k, m) * f(k, n);
          if (w == 0.0) continue;
          out.entries.block(m * d, n * d, d, d).noalias() +=
              w * state.entries.block((m + k) * d, (n + k) * d, d, d);
        }
      }
  } else {
    std::vector<Eigen::ArrayXcd> fk(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k)
      fk[size_t(k)] = f.row(k).head(d - k).transpose().cast<Complex>();
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t) {
        auto bin = state.entries.block(s * d, t * d, d, d);
        auto bout = out.entries.block(s * d, t * d, d, d);
        for (int k = 0; k < d; ++k) {
          const int r = d - k;
          for (int n = 0; n < r; ++n) {
            if (f(k, n) == 0.0) continue;
            bout.col(n).head(r).array() +=
                (f(k, n) * fk[size_t(k)]) * bin.col(n + k).segment(k, r).array();
          }
        }
      }
  }
  return out;
}

TwoModeState split_single_mode(const FockOperator& state, double T) {
  if (T < 0.0 || T > 1.0)
    throw std::invalid_argument("split_single_mode: T in [0,1] required");
  const int d = state.dim();
  TwoModeState out{Matrix::Zero(d * d, d * d), d};
  auto idx = [d](int a, int b) { return a * d + b; };
  // |psi_n> = sum_k c_{n,k} |n-k, k>, mode B transmitted, all amplitudes
  // positive
  std::vector<std::vector<double>> c(static_cast<size_t>(d));
  for (int n = 0; n < d; ++n) {
    c[size_t(n)].resize(size_t(n) + 1);
    for (int k = 0; k <= n; ++k) c[size_t(n)][size_t(k)] = split_amplitude(k, n, T);
  }
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const Complex w = state.entries(m, n);
      if (w == Complex(0.0)) continue;
      for (int k = 0; k <= m; ++k) {
        const double cm = c[size_t(m)][size_t(k)];
        if (cm == 0.0) continue;
        for (int l = 0; l <= n; ++l) {
          const double cn = c[size_t(n)][size_t(l)];
          if (cn == 0.0) continue;
          out.entries(idx(m - k, k), idx(n - l, l)) += w * cm * cn;
        }
      }
    }
  }
  return out;
}

FockOperator tensor(const FockOperator& a, const FockOperator& b) {
  const int da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k)
      out.block(i * db, k * db, db, db) = a.entries(i, k) * b.entries;
  return FockOperator{std::move(out), a.hermitian && b.hermitian};
}

Complex expectation(const FockOperator& op, const FockOperator& state) {
  if (op.dim() != state.dim())
    throw DimensionError("expectation: dimension mismatch");
  // tr(AB) as an elementwise contraction, no matrix product
  return (op.entries.transpose().array() * state.entries.array()).sum();
}

Complex expectation(const FockOperator& two_mode_op, const TwoModeState& state) {
  if (two_mode_op.dim() != int(state.entries.rows()))
    throw DimensionError("expectation: dimension mismatch");
  return (two_mode_op.entries.transpose().array() * state.entries.array()).sum();
}

FockVector fock_basis(int n, int dim) {
  if (n < 0 || n >= dim) throw DimensionError("fock_basis: n out of range");
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return FockVector{std::move(v)};
}

FockVector coherent_vector(Complex alpha, int dim) {
  Matrix col = displacement_columns(alpha, dim, 1);
  return FockVector{col.col(0)};
}

FockOperator projector(const FockVector& v) {
  Matrix m = v.amplitudes * v.amplitudes.adjoint();
  return FockOperator{std::move(m), true};
}

double trace_real(const FockOperator& op) { return op.entries.trace().real(); }
double trace_real(const TwoModeState& state) { return state.entries.trace().real(); }

}  // namespace eyewit
