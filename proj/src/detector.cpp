#include "detector.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "errors.hpp"
#include "jet.hpp"
#include "mathutil.hpp"

namespace eyewit {

static void check_detector(const DetectorSpec& det) {
  if (det.theta < 1) throw std::invalid_argument("DetectorSpec: theta >= 1 required");
  if (det.eta <= 0.0 || det.eta > 1.0)
    throw std::invalid_argument("DetectorSpec: eta in (0,1] required");
}

double no_click_prob_fock(const DetectorSpec& det, int n) {
  check_detector(det);
  if (n < 0) throw std::invalid_argument("no_click_prob_fock: n >= 0 required");
  if (n < det.theta) return 1.0;
  double p = 0.0;
  for (int m = 0; m < det.theta; ++m) p += binomial_pmf(m, n, det.eta);
  return p;
}

double no_click_prob_fock_derivative(const DetectorSpec& det, int n) {
  check_detector(det);
  const int order = det.theta - 1;
  const double x0 = 1.0 - det.eta;
  // f(x) = x^n / (1 - x); no-click prob = eta^theta / (theta-1)! * f^(theta-1)(x0)
  Jet x = Jet::variable(order, x0);
  Jet f = x.pow(n) * (1.0 - x).reciprocal();
  double d = f.derivative(order);
  for (int j = 1; j <= order; ++j) d /= double(j);
  return std::pow(det.eta, det.theta) * d;
}

FockOperator povm_ns_operator(const DetectorSpec& det, int dim) {
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = no_click_prob_fock(det, n);
  return FockOperator{std::move(m), true};
}

double seen_prob_coherent(const DetectorSpec& det, double nbar) {
  check_detector(det);
  if (nbar < 0.0) throw std::invalid_argument("seen_prob_coherent: nbar >= 0 required");
  const double lam = det.eta * nbar;
  if (lam == 0.0) return 0.0;
  if (lam > 30.0)
    return boost::math::gamma_p(double(det.theta), lam);
  double term = std::exp(-lam), cdf = term;
  for (int k = 1; k < det.theta; ++k) {
    term *= lam / double(k);
    cdf += term;
  }
  return 1.0 - cdf;
}

namespace {

// Jets shared across the matrix elements of one displaced observable: the
// variable x expanded at 1 - eta, powers of y = r (x - 1) and of x, and the
// combined envelope e^{r^2 (x-1)} / (1 - x).
struct DisplacedKernelCtx {
  Jet env_tail;
  std::vector<Jet> ypow, xpow;
};

DisplacedKernelCtx make_kernel_ctx(const DetectorSpec& det, double r, int nmax) {
  const int order = det.theta - 1;
  Jet x = Jet::variable(order, 1.0 - det.eta);
  Jet y = r * (x - 1.0);
  DisplacedKernelCtx c{(r * y).exp() * (1.0 - x).reciprocal(), {}, {}};
  c.ypow.reserve(size_t(2 * nmax) + 1);
  c.ypow.emplace_back(order, 1.0);
  for (int p = 1; p <= 2 * nmax; ++p) c.ypow.push_back(c.ypow.back() * y);
  c.xpow.reserve(size_t(nmax) + 1);
  c.xpow.emplace_back(order, 1.0);
  for (int p = 1; p <= nmax; ++p) c.xpow.push_back(c.xpow.back() * x);
  return c;
}

// <k| D(r)^dag x^N D(r) |k'> for real r and k <= k'. Normal ordering turns
// the conjugated number kernel into the finite sum
//   e^{r^2 (x-1)} sum_j c_j y^{i+j} x^{k'-j},  i = j + k - k',
//   c_j = sqrt(k! k'!) / (i! j! (k'-j)!),
// which stays well conditioned at large r where the displacement column
// recurrence loses all precision: every value-order term carries the same
// sign, so nothing cancels.
Jet displaced_xn_kernel(int k, int kp, const DisplacedKernelCtx& c) {
  Jet acc(c.env_tail.order());
  for (int j = std::max(0, kp - k); j <= kp; ++j) {
    const int i = j + k - kp;
    const double lc = 0.5 * (log_factorial(k) + log_factorial(kp)) -
                      log_factorial(i) - log_factorial(j) -
                      log_factorial(kp - j);
    acc = acc + std::exp(lc) * (c.ypow[size_t(i + j)] * c.xpow[size_t(kp - j)]);
  }
  return acc;
}

// eta^theta / (theta-1)! d^{theta-1} [envelope * kernel] at x = 1 - eta,
// the displaced analogue of the derivative no-click formula
double no_click_from_kernel(const DetectorSpec& det,
                            const DisplacedKernelCtx& c, int k, int kp) {
  const int order = det.theta - 1;
  Jet f = c.env_tail * displaced_xn_kernel(k, kp, c);
  double d = f.derivative(order);
  for (int j = 1; j <= order; ++j) d /= double(j);
  return std::pow(det.eta, det.theta) * d;
}

}  // namespace

double displaced_no_click_prob(const DetectorSpec& det, Complex beta, int n) {
  check_detector(det);
  if (n < 0)
    throw std::invalid_argument("displaced_no_click_prob: n >= 0 required");
  // a phase on beta rotates D but cancels on diagonal elements
  DisplacedKernelCtx c = make_kernel_ctx(det, std::abs(beta), n);
  return no_click_from_kernel(det, c, n, n);
}

Matrix displaced_sigma_elements(const DetectorSpec& det, Complex gamma,
                                int nmax) {
  check_detector(det);
  if (nmax < 0)
    throw DimensionError("displaced_sigma_elements: nmax >= 0 required");
  const double r = std::abs(gamma);
  const Complex phase = r > 0.0 ? gamma / r : Complex(1.0);
  DisplacedKernelCtx c = make_kernel_ctx(det, r, nmax);
  // arg(gamma) enters only through sigma(k,k') = e^{i arg (k-k')} sigma_r(k,k')
  std::vector<Complex> phpow(size_t(nmax) + 1);
  phpow[0] = 1.0;
  for (int d = 1; d <= nmax; ++d) phpow[size_t(d)] = phpow[size_t(d - 1)] * phase;
  Matrix s(nmax + 1, nmax + 1);
  for (int k = 0; k <= nmax; ++k)
    for (int kp = k; kp <= nmax; ++kp) {
      const double p = no_click_from_kernel(det, c, k, kp);
      const double val = 2.0 * p - (k == kp ? 1.0 : 0.0);
      const Complex z = val * std::conj(phpow[size_t(kp - k)]);
      s(k, kp) = z;
      s(kp, k) = std::conj(z);
    }
  return s;
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector bloch_vector(const DetectorSpec& det, Complex alpha) {
  Matrix s = displaced_sigma_elements(det, alpha, 1);
  BlochVector v;
  v.offset = 0.5 * (s(0, 0).real() + s(1, 1).real());
  v.z = 0.5 * (s(0, 0).real() - s(1, 1).real());
  v.x = s(0, 1).real() + 0.0;  // + 0.0 clears negative zero
  v.y = -s(0, 1).imag() + 0.0;
  return v;
}

}  // namespace eyewit
