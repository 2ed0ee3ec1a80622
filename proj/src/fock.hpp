#ifndef EYEWIT_FOCK_HPP
#define EYEWIT_FOCK_HPP

#include <Eigen/Dense>
#include <complex>

namespace eyewit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Default tail tolerance for truncation diagnostics.
constexpr double kTailTol = 1e-9;

/// Pure state on a truncated single-mode Fock space; index = photon number.
struct FockVector {
  Vector amplitudes;
  int dim() const { return int(amplitudes.size()); }
};

/// Dense operator (or density matrix) on a truncated single-mode Fock space.
struct FockOperator {
  Matrix entries;
  bool hermitian = false;
  int dim() const { return int(entries.rows()); }
};

/// Two-mode density matrix in the lexicographic |n_A, n_B> basis
/// (row index = n_A * dim + n_B).
struct TwoModeState {
  Matrix entries;
  int mode_dim = 0;
  Complex operator()(int na, int nb, int ma, int mb) const {
    return entries(na * mode_dim + nb, ma * mode_dim + mb);
  }
};

enum class Mode { A, B };

/// dim heuristic for states reaching |alpha|^2 + nbar mean photons.
int default_dim(double alpha_abs2, double nbar = 0.0);

/// Rectangular block <m|D(alpha)|n>, m < rows, n < cols, by the ladder
/// recurrence on columns. rows >= cols required.
Matrix displacement_columns(Complex alpha, int rows, int cols);

/// Square truncation of the displacement operator D(alpha). Throws
/// TruncationError when the leading columns lose more than tail_tol norm.
FockOperator displacement_matrix(Complex alpha, int dim, double tail_tol = kTailTol);

/// Thermal state diag (1/(1+nbar)) (nbar/(1+nbar))^k, no renormalization.
/// Throws TruncationError when the retained probability < 1 - tail_tol.
FockOperator thermal_state(double nbar, int dim, double tail_tol = kTailTol);

/// diag((1-eta)^n) -- the loss-damped number operator exponential.
FockOperator loss_exponential(double eta, int dim);

/// Bosonic pure-loss channel with transmission eta.
FockOperator loss_channel(const FockOperator& state, double eta);
TwoModeState loss_channel(const TwoModeState& state, Mode mode, double eta);

/// Beamsplitter with transmission T acting on (state, vacuum), mode B on
/// the transmitted port: BS|n,0> = sum_k sqrt(C(n,k) T^k (1-T)^(n-k)) |n-k, k>.
TwoModeState split_single_mode(const FockOperator& state, double T);

FockOperator tensor(const FockOperator& a, const FockOperator& b);

Complex expectation(const FockOperator& op, const FockOperator& state);
Complex expectation(const FockOperator& two_mode_op, const TwoModeState& state);

FockVector fock_basis(int n, int dim);
FockVector coherent_vector(Complex alpha, int dim);
FockOperator projector(const FockVector& v);

double trace_real(const FockOperator& op);
double trace_real(const TwoModeState& state);

}  // namespace eyewit

#endif
