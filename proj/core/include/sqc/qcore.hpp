#pragma once

#include "sqc/types.hpp"

namespace sqc {

CMat identity(int dim);
CMat sigma_x();
CMat sigma_y();
CMat sigma_z();

/// Tensor product: result((i*db+k),(j*db+l)) = a(i,j) * b(k,l).
CMat kron(const CMat& a, const CMat& b);

bool is_hermitian(const CMat& m, double tol = 1e-12);

/// U = exp(-i h t) through the eigendecomposition of Hermitian h, so the
/// result is unitary by construction. Rejects non-Hermitian input.
CMat hermitian_propagator(const CMat& h, double t);

/// Ladder and quadrature operators on the truncated Fock space {0..n_max},
/// with x = x0 (a + a^dag) and p = i/(2 x0) (a^dag - a).
struct FockOperators {
  CMat a;
  CMat a_dag;
  CMat x;
  CMat p;
};
FockOperators fock_operators(int n_max, const TrapSpec& trap);

/// Smallest truncation that keeps the |alpha| coherent tail below the gate,
/// ceil(|alpha|^2 + 10 |alpha|).
int coherent_required_nmax(double alpha_abs);

/// Coherent state amplitudes c_n = e^{-|a|^2/2} a^n / sqrt(n!) on {0..n_max},
/// renormalized after truncation. Throws TruncationError (naming the
/// required n_max) if the amplitude at n_max exceeds 1e-6.
CVec coherent_state(Cx alpha, int n_max);

double fidelity_pure(const CVec& a, const CVec& b);
double fidelity_mixed(const CMat& rho, const CVec& psi);

/// Trace out one factor of a d1 x d2 product space; keep = 0 keeps the first.
CMat partial_trace(const CMat& rho, int d1, int d2, int keep);

Cx expectation(const CMat& op, const CVec& s);

void normalize(CVec& v);

}  // namespace sqc
