#include "sqc/qcore.hpp"

#include <cmath>

namespace sqc {

CMat identity(int dim) { return CMat::Identity(dim, dim); }

CMat sigma_x() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMat sigma_y() {
  CMat m(2, 2);
  m << 0, Cx(0, -1), Cx(0, 1), 0;
  return m;
}

CMat sigma_z() {
  CMat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMat kron(const CMat& a, const CMat& b) {
  const auto ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  CMat out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j)
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

bool is_hermitian(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

CMat hermitian_propagator(const CMat& h, double t) {
  if (!is_hermitian(h, 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))) {
    throw std::invalid_argument("hermitian_propagator: generator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  CVec phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    phases[k] = std::exp(Cx(0, -w[k] * t));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

FockOperators fock_operators(int n_max, const TrapSpec& trap) {
  if (n_max < 2) throw std::invalid_argument("fock_operators: n_max must be >= 2");
  validate(trap);
  const int dim = n_max + 1;
  CMat a = CMat::Zero(dim, dim);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  const double x0 = trap.x0();
  FockOperators ops;
  ops.a_dag = a.adjoint();
  ops.x = x0 * (a + ops.a_dag);
  ops.p = Cx(0, 1) / (2.0 * x0) * (ops.a_dag - a);
  ops.a = std::move(a);
  return ops;
}

int coherent_required_nmax(double alpha_abs) {
  return int(std::ceil(alpha_abs * alpha_abs + 10.0 * alpha_abs));
}

CVec coherent_state(Cx alpha, int n_max) {
  if (n_max < 1) throw std::invalid_argument("coherent_state: n_max must be >= 1");
  CVec c(n_max + 1);
  // log-domain recursion keeps the factorial under control for large alpha
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n) c[n] = c[n - 1] * alpha / std::sqrt(double(n));
  if (std::abs(c[n_max]) >= 1e-6) {
    throw TruncationError("coherent_state: truncation too small for |alpha|=" +
                          std::to_string(std::abs(alpha)) + ", need n_max >= " +
                          std::to_string(coherent_required_nmax(std::abs(alpha))));
  }
  c /= c.norm();
  return c;
}

double fidelity_pure(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("fidelity_pure: dimension mismatch");
  return std::norm(a.dot(b));
}

double fidelity_mixed(const CMat& rho, const CVec& psi) {
  if (rho.rows() != psi.size() || rho.cols() != psi.size()) {
    throw std::invalid_argument("fidelity_mixed: dimension mismatch");
  }
  return (psi.adjoint() * rho * psi)(0).real();
}

CMat partial_trace(const CMat& rho, int d1, int d2, int keep) {
  if (rho.rows() != Eigen::Index(d1) * d2 || rho.cols() != rho.rows()) {
    throw std::invalid_argument("partial_trace: dimension mismatch");
  }
  if (keep != 0 && keep != 1) throw std::invalid_argument("partial_trace: keep must be 0 or 1");
  if (keep == 0) {
    CMat out = CMat::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k) out(i, j) += rho(i * d2 + k, j * d2 + k);
    return out;
  }
  CMat out = CMat::Zero(d2, d2);
  for (int k = 0; k < d2; ++k)
    for (int l = 0; l < d2; ++l)
      for (int i = 0; i < d1; ++i) out(k, l) += rho(i * d2 + k, i * d2 + l);
  return out;
}

Cx expectation(const CMat& op, const CVec& s) {
  if (op.rows() != s.size() || op.cols() != s.size()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  return (s.adjoint() * op * s)(0);
}

void normalize(CVec& v) {
  const double n = v.norm();
  if (n <= 0.0) throw std::invalid_argument("normalize: zero vector");
  v /= n;
}

}  // namespace sqc
