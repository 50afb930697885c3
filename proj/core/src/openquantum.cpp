#include "sqc/openquantum.hpp"

#include <cmath>

#include <Eigen/Sparse>

#include "sqc/qcore.hpp"
#include "sqc/selection.hpp"

namespace sqc {

void validate(const NoiseSpec& noise) {
  if (noise.gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (noise.p_error < 0.0 || noise.p_error >= 1.0) {
    throw std::invalid_argument("p_error must be in [0,1)");
  }
}

namespace {

using SpMat = Eigen::SparseMatrix<Cx>;

SpMat sparse(const CMat& m) {
  SpMat s = m.sparseView(1.0, 1e-300);
  s.makeCompressed();
  return s;
}

// Dissipator machinery shared by the public step and the protocol runs.
// Sparse operators keep the tridiagonal Fock couplings cheap at large n_max.
class LindbladSystem {
 public:
  LindbladSystem(const CMat& h, const std::vector<CMat>& channels) : dim_(int(h.rows())) {
    if (h.rows() != h.cols()) throw std::invalid_argument("lindblad: H must be square");
    h_ = sparse(h);
    for (const auto& c : channels) {
      if (c.rows() != h.rows() || c.cols() != h.cols()) {
        throw std::invalid_argument("lindblad: channel dimension mismatch");
      }
      c_.push_back(sparse(c));
      c_dag_.push_back(sparse(CMat(c.adjoint())));
      cdc_.push_back(sparse(CMat(c.adjoint() * c)));
    }
  }

  int dim() const { return dim_; }

  // Hermitian input in, Hermitian derivative out.
  void rhs(const CMat& rho, CMat& out) const {
    const CMat hr = h_ * rho;
    out = Cx(0, -1) * (hr - hr.adjoint());
    for (size_t k = 0; k < c_.size(); ++k) {
      const CMat cr = c_[k] * rho;
      out += cr * c_dag_[k];
      const CMat dr = cdc_[k] * rho;
      out -= 0.5 * (dr + dr.adjoint());
    }
  }

  CMat evolve(CMat rho, double time, double dt) const {
    if (time <= 0.0) return rho;
    const int steps = std::max(1, int(std::llround(time / dt)));
    const double h = time / steps;
    CMat k1(dim_, dim_), k2(dim_, dim_), k3(dim_, dim_), k4(dim_, dim_), tmp(dim_, dim_);
    for (int s = 0; s < steps; ++s) {
      rhs(rho, k1);
      tmp = rho + (h / 2.0) * k1;
      rhs(tmp, k2);
      tmp = rho + (h / 2.0) * k2;
      rhs(tmp, k3);
      tmp = rho + h * k3;
      rhs(tmp, k4);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!std::isfinite(rho(0, 0).real())) {
        throw ConvergenceError("lindblad: state diverged; reduce dt");
      }
    }
    return rho;
  }

 private:
  int dim_;
  SpMat h_;
  std::vector<SpMat> c_;
  std::vector<SpMat> c_dag_;
  std::vector<SpMat> cdc_;
};

double purity(const CMat& rho) { return rho.cwiseAbs2().sum(); }

void check_state(const CMat& rho, const char* where) {
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    throw ConvergenceError(std::string(where) + ": trace drifted to " + std::to_string(tr));
  }
}

// <f| rho |f> over the system factor, leaving the apparatus matrix.
CMat contract_system(const CMat& rho, const CVec& f, int sys_dim, int app_dim) {
  CMat out = CMat::Zero(app_dim, app_dim);
  for (int s = 0; s < sys_dim; ++s) {
    for (int t = 0; t < sys_dim; ++t) {
      const Cx w = std::conj(f[s]) * f[t];
      if (w == Cx(0.0)) continue;
      out += w * rho.block(s * app_dim, t * app_dim, app_dim, app_dim);
    }
  }
  return out;
}

}  // namespace

CMat lindblad_step(const CMat& rho, const CMat& h, const std::vector<CMat>& channels,
                   double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("lindblad_step: dt must be positive");
  LindbladSystem sys(h, channels);
  return sys.evolve(rho, dt, dt);
}

std::pair<CMat, double> post_select_system(const CMat& rho, const CVec& f, int sys_dim,
                                           int app_dim) {
  if (rho.rows() != Eigen::Index(sys_dim) * app_dim || rho.rows() != rho.cols() ||
      f.size() != sys_dim) {
    throw std::invalid_argument("post_select_system: dimension mismatch");
  }
  const CMat rho_app = contract_system(rho, f, sys_dim, app_dim);
  const double prob = rho_app.trace().real();
  if (prob <= 1e-12) {
    throw ConvergenceError("post_select_system: selection probability below 1e-12");
  }
  CMat ff = CMat::Zero(sys_dim, sys_dim);
  for (int s = 0; s < sys_dim; ++s)
    for (int t = 0; t < sys_dim; ++t) ff(s, t) = f[s] * std::conj(f[t]);
  return {kron(ff, rho_app) / prob, prob};
}

int default_transport_nmax(const TransportConfig& cfg) {
  const double alpha = cfg.d / (2.0 * cfg.trap.x0());
  return coherent_required_nmax(alpha) + 5;
}

OpenRunResult open_transport_run(const TransportConfig& cfg, const NoiseSpec& noise,
                                 int n_max, double dt) {
  validate(noise);
  const double x0 = cfg.trap.x0();
  const double alpha = cfg.d / (2.0 * x0);
  if (n_max < coherent_required_nmax(alpha)) {
    throw TruncationError("open_transport_run: n_max below the coherent-state gate (" +
                          std::to_string(coherent_required_nmax(alpha)) + ")");
  }
  const int nm = n_max + 1;
  const FockOperators fock = fock_operators(n_max, cfg.trap);
  const CMat eye_m = CMat::Identity(nm, nm);
  const CMat h = cfg.g * kron(sigma_x(), fock.p);
  std::vector<CMat> channels;
  if (noise.gamma > 0.0) {
    const double root = std::sqrt(noise.gamma);
    channels.push_back(root * kron(sigma_z(), eye_m));
    channels.push_back(root * kron(CMat::Identity(2, 2), fock.a));
    channels.push_back(root * kron(CMat::Identity(2, 2), fock.a_dag));
  }
  const LindbladSystem sys(h, channels);
  const SelectionPair pair = design_sigma_x_pair(cfg.p());
  const double dT = cfg.dT();
  if (dt <= 0.0) dt = std::min(1e-3, dT / 100.0);

  CMat rho_app = CMat::Zero(nm, nm);
  rho_app(0, 0) = 1.0;  // motional ground state at the origin

  CMat ii = CMat::Zero(2, 2);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) ii(s, t) = pair.i_state[s] * std::conj(pair.i_state[t]);

  OpenRunResult res;
  res.purity_trace.push_back(purity(rho_app));
  for (int n = 0; n < cfg.rounds; ++n) {
    CMat rho = kron(ii, rho_app);
    rho = sys.evolve(std::move(rho), dT, dt);
    check_state(rho, "open_transport_run");
    res.purity_trace.push_back(purity(rho));
    CMat projected = contract_system(rho, pair.f_state, 2, nm);
    const double prob = projected.trace().real();
    if (prob <= 1e-12) {
      throw ConvergenceError("open_transport_run: selection probability below 1e-12");
    }
    rho_app = projected / prob;
    res.actual_probability *= prob;
  }
  const CVec target = coherent_state(alpha, n_max);
  res.raw_fidelity = fidelity_mixed(rho_app, target);
  res.penalized_fidelity =
      res.raw_fidelity * std::pow(1.0 - noise.p_error, cfg.rounds);
  return res;
}

OpenRunResult open_search_run(const SearchConfig& cfg, const NoiseSpec& noise, double dt) {
  validate(noise);
  if (cfg.entries != 2) {
    throw std::invalid_argument("open_search_run: two-entry database only");
  }
  const CMat eye2 = CMat::Identity(2, 2);
  const CMat h = -cfg.g * kron(sigma_y(), sigma_y());
  std::vector<CMat> channels;
  if (noise.gamma > 0.0) {
    const double root = std::sqrt(noise.gamma);
    channels.push_back(root * kron(sigma_z(), eye2));
    channels.push_back(root * kron(eye2, sigma_z()));
  }
  const LindbladSystem sys(h, channels);
  const SelectionPair pair = design_sigma_y_pair(cfg.p());
  const double dT = cfg.dT();
  if (dt <= 0.0) dt = std::min(1e-3, dT / 100.0);

  CVec psi0(2);
  psi0 << std::sin(cfg.theta0), std::cos(cfg.theta0);
  CMat rho_t = psi0 * psi0.adjoint();

  CMat ii = CMat::Zero(2, 2);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) ii(s, t) = pair.i_state[s] * std::conj(pair.i_state[t]);

  OpenRunResult res;
  res.purity_trace.push_back(purity(rho_t));
  for (int n = 0; n < cfg.rounds; ++n) {
    CMat rho = kron(ii, rho_t);
    rho = sys.evolve(std::move(rho), dT, dt);
    check_state(rho, "open_search_run");
    res.purity_trace.push_back(purity(rho));
    CMat projected = contract_system(rho, pair.f_state, 2, 2);
    const double prob = projected.trace().real();
    if (prob <= 1e-12) {
      throw ConvergenceError("open_search_run: selection probability below 1e-12");
    }
    rho_t = projected / prob;
    res.actual_probability *= prob;
  }
  res.raw_fidelity = rho_t(cfg.target, cfg.target).real();
  res.penalized_fidelity =
      res.raw_fidelity * std::pow(1.0 - noise.p_error, cfg.rounds);
  return res;
}

std::optional<int> tradeoff_peak(const std::vector<ExperimentRecord>& records) {
  if (records.size() < 3) return std::nullopt;
  size_t best = 0;
  for (size_t k = 1; k < records.size(); ++k) {
    if (records[k].fidelity_penalized > records[best].fidelity_penalized) best = k;
  }
  if (best == 0 || best + 1 == records.size()) return std::nullopt;
  return int(std::lround(records[best].n));
}

}  // namespace sqc
