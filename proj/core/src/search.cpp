#include "sqc/search.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sqc/parallel.hpp"
#include "sqc/qcore.hpp"
#include "sqc/selection.hpp"

namespace sqc {

namespace {

void check_config(const SearchConfig& cfg) {
  if (!(cfg.g > 0.0)) throw std::invalid_argument("g must be positive");
  if (cfg.rounds < 1) throw std::invalid_argument("N must be >= 1");
  if (!(cfg.P > 0.0) || cfg.P > 1.0) throw std::invalid_argument("P must be in (0,1]");
  if (!(cfg.theta0 > 0.0) || !(cfg.theta0 < pi / 2.0)) {
    throw std::invalid_argument("theta0 must lie in (0, pi/2)");
  }
}

// exp(-i H dt) for a 2x2 Hermitian H, closed form
CMat expi2(const CMat& h, double dt) {
  const double c0 = h.trace().real() / 2.0;
  const CMat v = h - c0 * CMat::Identity(2, 2);
  const double vn = std::sqrt(std::max((v * v)(0, 0).real(), 0.0));
  const Cx phase = std::polar(1.0, -c0 * dt);
  if (vn < 1e-300) return phase * CMat::Identity(2, 2);
  return phase * (std::cos(vn * dt) * CMat::Identity(2, 2) -
                  Cx(0, 1) * std::sin(vn * dt) / vn * v);
}

}  // namespace

CVec grover_reference(int n_iter, double theta, const CVec& t_state,
                      const CVec& t_tilde) {
  if (n_iter < 0) throw std::invalid_argument("grover_reference: N must be >= 0");
  const double angle = (2.0 * n_iter + 1.0) / 2.0 * theta;
  return std::sin(angle) * t_state + std::cos(angle) * t_tilde;
}

CVec grover_reference(int n_iter, double theta) {
  CVec t(2), tt(2);
  t << 1, 0;
  tt << 0, 1;
  return grover_reference(n_iter, theta, t, tt);
}

SearchRunResult sqc_search_run(const SearchConfig& cfg) {
  check_config(cfg);
  if (cfg.entries != 2) {
    throw std::invalid_argument("sqc_search_run: two-entry database only");
  }
  const SelectionPair pair = design_sigma_y_pair(cfg.p());
  const CMat h = -cfg.g * kron(sigma_y(), sigma_y());
  const CMat u = hermitian_propagator(h, cfg.dT());

  CVec psi(2);
  psi << std::sin(cfg.theta0), std::cos(cfg.theta0);  // |+> database at pi/4

  SearchRunResult res;
  res.actual_probability = 1.0;
  for (int n = 0; n < cfg.rounds; ++n) {
    CVec joint(4);
    joint.segment(0, 2) = pair.i_state[0] * psi;
    joint.segment(2, 2) = pair.i_state[1] * psi;
    joint = u * joint;
    psi = std::conj(pair.f_state[0]) * joint.segment(0, 2) +
          std::conj(pair.f_state[1]) * joint.segment(2, 2);
    const double prob = psi.squaredNorm();
    if (prob < 1e-14) {
      throw ConvergenceError("sqc_search_run: post-selection probability vanished");
    }
    psi /= std::sqrt(prob);
    res.actual_probability *= prob;
  }
  res.fidelity = std::norm(psi[cfg.target]);
  res.final_state = std::move(psi);
  return res;
}

double aqc_search_run(const AdiabaticSpec& spec, double dt) {
  if (!(spec.T > 0.0)) throw std::invalid_argument("aqc_search_run: T must be positive");
  if (!(spec.amplitude > 0.0)) {
    throw std::invalid_argument("aqc_search_run: amplitude must be positive");
  }
  if (dt <= 0.0) dt = std::min(1e-3, spec.T / 1e4);
  const int steps = std::max(1, int(std::llround(spec.T / dt)));
  const double h = spec.T / steps;

  CVec psi(2);
  psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CVec plus = psi;
  CVec zero(2);
  zero << 1, 0;
  const CMat p_psi = plus * plus.adjoint();
  const CMat p_t = zero * zero.adjoint();
  const CMat eye = CMat::Identity(2, 2);

  for (int s = 0; s < steps; ++s) {
    const double lam = (s + 0.5) * h / spec.T;
    CMat ham;
    if (spec.family == AdiabaticFamily::type_i) {
      ham = (1.0 - lam) * spec.amplitude * sigma_x() + lam * spec.amplitude * sigma_z();
    } else {
      ham = (1.0 - lam) * spec.amplitude * (eye - p_psi) +
            lam * spec.amplitude * (eye - p_t);
    }
    psi = expi2(ham, h) * psi;
  }
  return std::norm(psi[0]);
}

double energy_cost(const std::function<CMat(double)>& hamiltonian, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("energy_cost: T must be positive");
  auto norm_f = [&](double t) {
    const CMat h = hamiltonian(t);
    return std::sqrt((h.adjoint() * h).trace().real());
  };
  using boost::math::quadrature::gauss_kronrod;
  const double integral = gauss_kronrod<double, 15>::integrate(norm_f, 0.0, T, 15, 1e-10);
  return integral / T;
}

double type_i_cost_coefficient() {
  return (2.0 * std::sqrt(2.0) - std::log(std::sqrt(2.0) - 1.0) +
          std::log(1.0 + std::sqrt(2.0))) /
         4.0;
}

double type_ii_cost_coefficient() { return (4.0 + 3.0 * std::log(3.0)) / 8.0; }

EqualizedAmplitudes equalize_cost(double g) {
  if (!(g > 0.0)) throw std::invalid_argument("equalize_cost: g must be positive");
  return {2.0 * g / type_i_cost_coefficient(), 2.0 * g / type_ii_cost_coefficient()};
}

GeneralRotation build_general_rotation(int target,
                                       const std::vector<double>& database_amplitudes) {
  const int dim = int(database_amplitudes.size());
  if (dim < 2) throw std::invalid_argument("database needs at least two entries");
  if (target < 0 || target >= dim) throw std::invalid_argument("target index out of range");
  double norm2 = 0.0;
  for (double c : database_amplitudes) norm2 += c * c;
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw std::invalid_argument("database amplitudes must be normalized");
  }
  const double st = database_amplitudes[target];
  if (!(st > 0.0)) {
    throw std::invalid_argument("database must overlap the target with positive amplitude");
  }
  const double ct2 = 1.0 - st * st;
  if (ct2 < 1e-12) {
    throw std::invalid_argument("database equals the target; complement undefined");
  }
  const double ct = std::sqrt(ct2);

  GeneralRotation rot;
  rot.dim = dim;
  rot.theta0 = std::asin(st);
  rot.target_state = CVec::Zero(dim);
  rot.target_state[target] = 1.0;
  CVec psi(dim);
  for (int k = 0; k < dim; ++k) psi[k] = database_amplitudes[k];
  rot.complement_state = (psi - st * rot.target_state) / ct;

  const CVec plus = (rot.target_state + rot.complement_state) / std::sqrt(2.0);
  const CVec minus = (rot.target_state - rot.complement_state) / std::sqrt(2.0);
  rot.jy = Cx(0, -0.5) * (minus * plus.adjoint() - plus * minus.adjoint());
  rot.sigma_y_eff = 2.0 * rot.jy;
  return rot;
}

SearchRunResult multiqubit_sqc_search(const SearchConfig& cfg,
                                      const std::vector<double>& database_amplitudes) {
  check_config(cfg);
  if (int(database_amplitudes.size()) != cfg.entries) {
    throw std::invalid_argument("multiqubit_sqc_search: database size != entries");
  }
  const GeneralRotation rot = build_general_rotation(cfg.target, database_amplitudes);
  const int dim = rot.dim;
  const double p = cfg.p();
  // timing from the database angle, not the configured default
  const double dT = (pi / 2.0 - rot.theta0) * std::sqrt(p) / (cfg.rounds * cfg.g);

  const SelectionPair pair = design_sigma_y_pair(p);
  const CMat h = -cfg.g * kron(sigma_y(), rot.sigma_y_eff);
  const CMat u = hermitian_propagator(h, dT);

  CVec psi(dim);
  for (int k = 0; k < dim; ++k) psi[k] = database_amplitudes[k];

  SearchRunResult res;
  res.actual_probability = 1.0;
  for (int n = 0; n < cfg.rounds; ++n) {
    CVec joint(2 * dim);
    joint.segment(0, dim) = pair.i_state[0] * psi;
    joint.segment(dim, dim) = pair.i_state[1] * psi;
    joint = u * joint;
    psi = std::conj(pair.f_state[0]) * joint.segment(0, dim) +
          std::conj(pair.f_state[1]) * joint.segment(dim, dim);
    const double prob = psi.squaredNorm();
    if (prob < 1e-14) {
      throw ConvergenceError("multiqubit_sqc_search: post-selection probability vanished");
    }
    psi /= std::sqrt(prob);
    res.actual_probability *= prob;
  }
  res.fidelity = std::norm(psi[cfg.target]);
  res.final_state = std::move(psi);
  return res;
}

MSSpec ms_design_spec() {
  MSSpec spec;
  spec.eta = 0.05;
  spec.nu = 1.0;
  spec.Omega = 0.02 * spec.nu;
  spec.delta = spec.nu - 2.0 * spec.eta * spec.Omega;  // gate phase pi/2 at t_MS
  spec.n_max = 20;
  return spec;
}

namespace {

// collective spin operators for two ions, J = (sigma^(1) + sigma^(2)) / 2
CMat collective_jy() {
  const CMat i2 = CMat::Identity(2, 2);
  return 0.5 * (kron(sigma_y(), i2) + kron(i2, sigma_y()));
}
CMat collective_jx() {
  const CMat i2 = CMat::Identity(2, 2);
  return 0.5 * (kron(sigma_x(), i2) + kron(i2, sigma_x()));
}

struct MSWork {
  CMat a;      // Fock ladder
  CMat a_dag;
  CMat jy;
  CMat jx;
};

MSWork ms_work(const MSSpec& spec) {
  if (spec.n_max < 2) throw std::invalid_argument("ms: n_max must be >= 2");
  if (spec.eps() == 0.0) throw std::invalid_argument("ms: eps must be nonzero");
  const int dim = spec.n_max + 1;
  MSWork w;
  w.a = CMat::Zero(dim, dim);
  for (int n = 1; n <= spec.n_max; ++n) w.a(n - 1, n) = std::sqrt(double(n));
  w.a_dag = w.a.adjoint();
  w.jy = collective_jy();
  w.jx = collective_jx();
  return w;
}

}  // namespace

CMat ms_effective_propagator(const MSSpec& spec, double t) {
  const MSWork w = ms_work(spec);
  const int nm = spec.n_max + 1;
  const double eps = spec.eps();
  const double k = spec.eta * spec.Omega;
  const Cx beta = k / eps * (std::exp(Cx(0, eps * t)) - 1.0);
  const double phase = k * k * t / eps - k * k * std::sin(eps * t) / (eps * eps);

  if (std::abs(beta) * std::sqrt(double(spec.n_max)) > 0.25 * spec.n_max) {
    throw TruncationError("ms_effective_propagator: displacement too large for n_max");
  }
  const CMat gen = beta * w.a_dag - std::conj(beta) * w.a;  // anti-Hermitian
  const CMat disp = hermitian_propagator(Cx(0, 1) * kron(w.jy, gen), 1.0);
  const CMat jy2 = kron(w.jy * w.jy, CMat::Identity(nm, nm));
  return disp * hermitian_propagator(jy2, -phase);
}

double lamb_dicke_parameter(const MSSpec& spec, const CVec& motional) {
  const MSWork w = ms_work(spec);
  const CMat q = w.a + w.a_dag;
  return spec.eta * std::sqrt(expectation(q * q, motional).real());
}

namespace {

// int_{t1}^{t2} e^{i mu s} ds
Cx osc_integral(double mu, double t1, double t2) {
  if (std::abs(mu * (t2 - t1)) < 1e-8) {
    return (t2 - t1) * std::exp(Cx(0, mu * (t1 + t2) / 2.0));
  }
  return (std::exp(Cx(0, mu * t2)) - std::exp(Cx(0, mu * t1))) / Cx(0, mu);
}

struct SidebandTones {
  // w(t) = A (e^{i eps t} + e^{i Sigma t}) multiplying a^dag in
  // H_s = J_y (x) (w a^dag + w* a)
  double amp;
  double w1;
  double w2;
};

Cx beta_increment(const SidebandTones& tn, double t1, double t2) {
  return Cx(0, -1) * tn.amp * (osc_integral(tn.w1, t1, t2) + osc_integral(tn.w2, t1, t2));
}

double phi_increment(const SidebandTones& tn, double t1, double t2) {
  const double freqs[2] = {tn.w1, tn.w2};
  Cx tot = 0.0;
  for (double wj : freqs) {
    for (double wk : freqs) {
      tot += tn.amp * tn.amp / Cx(0, wk) *
             (osc_integral(wk - wj, t1, t2) -
              std::exp(Cx(0, wk * t1)) * osc_integral(-wj, t1, t2));
    }
  }
  return -tot.imag();
}

// exp(alpha a^dag - alpha* a) on a Fock column via a short Taylor series;
// per-step increments are tiny so a few terms are exact to roundoff.
void apply_small_displacement(Eigen::Ref<CVec> col, Cx alpha, int n_max) {
  CVec acc = col;
  CVec tmp(col.size());
  for (int k = 1; k <= 6; ++k) {
    for (int n = 0; n <= n_max; ++n) {
      Cx v = 0.0;
      if (n > 0) v += alpha * std::sqrt(double(n)) * acc[n - 1];
      if (n < n_max) v -= std::conj(alpha) * std::sqrt(double(n + 1)) * acc[n + 1];
      tmp[n] = v / double(k);
    }
    acc = tmp;
    col += acc;
  }
}

}  // namespace

double ms_numeric_check(const MSSpec& spec, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("ms_numeric_check: dt must be positive");
  const MSWork w = ms_work(spec);
  const int nm = spec.n_max + 1;
  const double eps = spec.eps();
  const double delta = spec.delta;
  const double sigma_tone = spec.nu + delta;  // counter-rotating sideband
  const double t_end = spec.t_ms();
  const long steps = std::lround(t_end / dt);
  if (steps < 8) throw ConvergenceError("ms_numeric_check: dt too large for t_MS");
  const double h = t_end / steps;

  Eigen::SelfAdjointEigenSolver<CMat> es(w.jy);
  const Eigen::VectorXd m_of = es.eigenvalues();
  const CMat v = es.eigenvectors();
  const CMat a1 = v.adjoint() * w.jx * v;
  const CMat a2 = v.adjoint() * (w.jx * w.jx) * v;

  // test-state battery: spin part (x) motional part
  struct Probe {
    Eigen::Vector4cd spin;
    int phonon;
  };
  const double r2 = 1.0 / std::sqrt(2.0);
  std::vector<Probe> battery = {
      {{1, 0, 0, 0}, 0},          {{0, 1, 0, 0}, 0},
      {{0, 0, 0, 1}, 0},          {{r2, 0, 0, r2}, 0},
      {{0.5, 0.5, 0.5, 0.5}, 0},  {{0.5, Cx(0, 0.5), Cx(0, 0.5), -0.5}, 0},
      {{1, 0, 0, 0}, 1},          {{0, r2, r2, 0}, 0},
  };
  const int n_states = int(battery.size());

  for (const auto& probe : battery) {
    CVec mot = CVec::Zero(nm);
    mot[probe.phonon] = 1.0;
    if (lamb_dicke_parameter(spec, mot) > 0.3) {
      std::fprintf(stderr, "ms_numeric_check: Lamb-Dicke parameter above 0.3\n");
      break;
    }
  }

  // states held in the J_y eigenbasis: psi[state] is 4 x nm
  std::vector<CMat> psi(n_states);
  for (int sidx = 0; sidx < n_states; ++sidx) {
    Eigen::Vector4cd spin_jy = v.adjoint() * battery[sidx].spin;
    psi[sidx] = CMat::Zero(4, nm);
    psi[sidx].col(battery[sidx].phonon) = spin_jy;
  }

  const SidebandTones tones{-spec.eta * spec.Omega, eps, sigma_tone};
  auto carrier = [&](double theta) -> CMat {
    return CMat::Identity(4, 4) + (std::cos(theta) - 1.0) * a2 -
           Cx(0, 1) * std::sin(theta) * a1;
  };

  for (long step = 0; step < steps; ++step) {
    const double t1 = step * h;
    const double t2 = t1 + h;
    const double tm = t1 + h / 2.0;
    const double th1 = 2.0 * spec.Omega / delta * (std::sin(delta * tm) - std::sin(delta * t1));
    const double th2 = 2.0 * spec.Omega / delta * (std::sin(delta * t2) - std::sin(delta * tm));
    const CMat c1 = carrier(th1);
    const CMat c2 = carrier(th2);
    const Cx beta = beta_increment(tones, t1, t2);
    const double phi = phi_increment(tones, t1, t2);

    for (int sidx = 0; sidx < n_states; ++sidx) {
      CMat& st = psi[sidx];
      st = c1 * st;
      for (int r = 0; r < 4; ++r) {
        const double m = m_of[r];
        if (std::abs(m) < 1e-12) continue;
        CVec row = st.row(r).transpose();
        apply_small_displacement(row, m * beta, spec.n_max);
        st.row(r) = (std::exp(Cx(0, m * m * phi)) * row).transpose();
      }
      st = c2 * st;
    }
    if (!std::isfinite(psi[0](0, 0).real())) {
      throw ConvergenceError("ms_numeric_check: integration diverged");
    }
  }

  const CMat u_eff = ms_effective_propagator(spec, t_end);
  double fid_sum = 0.0;
  for (int sidx = 0; sidx < n_states; ++sidx) {
    // back to the computational spin basis, flattened spin (x) fock
    const CMat comp = v * psi[sidx];
    CVec numeric(4 * nm), initial(4 * nm);
    CVec mot = CVec::Zero(nm);
    mot[battery[sidx].phonon] = 1.0;
    for (int r = 0; r < 4; ++r) {
      numeric.segment(r * nm, nm) = comp.row(r).transpose();
      initial.segment(r * nm, nm) = battery[sidx].spin[r] * mot;
    }
    const CVec reference = u_eff * initial;
    fid_sum += std::norm(reference.dot(numeric));
  }
  return fid_sum / n_states;
}

std::vector<ExperimentRecord> search_sweep(double g, double P,
                                           const std::vector<int>& n_list,
                                           bool include_adiabatic, int jobs) {
  if (n_list.empty()) throw std::invalid_argument("search_sweep: empty N list");
  const EqualizedAmplitudes amps = equalize_cost(g);
  const int per = include_adiabatic ? 3 : 1;
  std::vector<ExperimentRecord> records(n_list.size() * per);
  parallel_for(int(n_list.size()), jobs, [&](int idx) {
    const int N = n_list[idx];
    SearchConfig cfg;
    cfg.g = g;
    cfg.rounds = N;
    cfg.P = P;
    const double T = cfg.total_time();

    ExperimentRecord rec;
    rec.protocol = "sqc";
    rec.n = N;
    rec.T = T;
    rec.dT = cfg.dT();
    rec.g = g;
    rec.theta0 = cfg.theta0;
    rec.P_nominal = P;
    const SearchRunResult r = sqc_search_run(cfg);
    rec.fidelity = r.fidelity;
    rec.P_actual = r.actual_probability;
    rec.cost = 2.0 * g;
    records[idx * per] = rec;

    if (include_adiabatic) {
      ExperimentRecord r1 = rec;
      r1.protocol = "aqc-type1";
      r1.P_nominal = 1.0;
      r1.P_actual = 1.0;
      r1.omega = amps.omega;
      r1.fidelity = aqc_search_run({AdiabaticFamily::type_i, amps.omega, T});
      r1.cost = 2.0 * g;
      records[idx * per + 1] = r1;

      ExperimentRecord r2 = rec;
      r2.protocol = "aqc-type2";
      r2.P_nominal = 1.0;
      r2.P_actual = 1.0;
      r2.k_scale = amps.k;
      r2.fidelity = aqc_search_run({AdiabaticFamily::type_ii, amps.k, T});
      r2.cost = 2.0 * g;
      records[idx * per + 2] = r2;
    }
  });
  return records;
}

}  // namespace sqc
