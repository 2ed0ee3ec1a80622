#include "witness.hpp"

#include "errors.hpp"
#include "mathutil.hpp"

namespace eyewit {

SigmaObservable sigma_observable(const DetectorSpec& det, Complex alpha, int dim) {
  if (dim < 1) throw DimensionError("sigma_observable: dim >= 1 required");
  Matrix s = displaced_sigma_elements(det, alpha, dim - 1);
  return SigmaObservable{FockOperator{std::move(s), true}, det, alpha};
}

WitnessMatrix witness_matrix_raw(const Matrix& sigma_a, const Matrix& sigma_b) {
  if (sigma_a.rows() != sigma_b.rows())
    throw DimensionError("witness_matrix: mode dimensions differ");
  const int d = int(sigma_a.rows());
  Matrix w = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const int l = i + j - k;
        if (l < 0 || l >= d) continue;
        w(i * d + j, k * d + l) = sigma_a(i, k) * sigma_b(j, l);
      }
  WitnessMatrix out{FockOperator{std::move(w), true}, d,
                    witness_elements_from(sigma_a, sigma_b)};
  return out;
}

WitnessMatrix witness_matrix(const SigmaObservable& sig_a,
                             const SigmaObservable& sig_b) {
  return witness_matrix_raw(sig_a.op.entries, sig_b.op.entries);
}

WitnessElements witness_elements_from(const Matrix& sa, const Matrix& sb) {
  WitnessElements e;
  e.w00_00 = sa(0, 0) * sb(0, 0);
  e.w01_01 = sa(0, 0) * sb(1, 1);
  e.w10_10 = sa(1, 1) * sb(0, 0);
  e.w11_11 = sa(1, 1) * sb(1, 1);
  e.w01_10 = sa(0, 1) * sb(1, 0);
  if (sa.rows() >= 3) {
    e.w11_20 = sa(1, 2) * sb(1, 0);
    e.w11_02 = sa(1, 0) * sb(1, 2);
  } else {
    e.w11_20 = e.w11_02 = 0.0;
  }
  return e;
}

double witness_expectation(const WitnessMatrix& w, const TwoModeState& rho) {
  Complex t = expectation(w.op, rho);
  // imaginary residue is a numerics diagnostic only
  return t.real();
}

double block_mixture_expectation(const Matrix& sigma_a, const Matrix& sigma_b,
                                 const Eigen::VectorXd& p, double T) {
  const int nmax = int(p.size()) - 1;
  if (sigma_a.rows() <= nmax || sigma_b.rows() <= nmax)
    throw DimensionError("block_mixture_expectation: sigma matrices too small");
  double total = 0.0;
  std::vector<double> c(size_t(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    if (p(n) == 0.0) continue;
    for (int k = 0; k <= n; ++k) c[size_t(k)] = split_amplitude(k, n, T);
    Complex v = 0.0;
    for (int k = 0; k <= n; ++k)
      for (int kp = 0; kp <= n; ++kp)
        v += c[size_t(k)] * c[size_t(kp)] * sigma_a(n - k, n - kp) *
             sigma_b(k, kp);
    total += p(n) * v.real();
  }
  return total;
}

}  // namespace eyewit
