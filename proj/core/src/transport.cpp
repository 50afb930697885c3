#include "sqc/transport.hpp"

#include <cmath>

#include "sqc/parallel.hpp"
#include "sqc/qcore.hpp"
#include "sqc/selection.hpp"

namespace sqc {

namespace {

int next_pow2(int n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

int grid_points(double span, double x0, int min_points) {
  // keep at least ~16 samples per x0
  const int need = int(std::ceil(span * 16.0 / x0));
  return std::max(min_points, next_pow2(need));
}

void check_config(const TransportConfig& cfg) {
  if (!(cfg.g > 0.0)) throw std::invalid_argument("g must be positive");
  if (!(cfg.d > 0.0)) throw std::invalid_argument("d must be positive");
  if (cfg.rounds < 1) throw std::invalid_argument("N must be >= 1");
  if (!(cfg.P > 0.0) || cfg.P > 1.0) throw std::invalid_argument("P must be in (0,1]");
  validate(cfg.trap);
}

}  // namespace

GridSpec default_transport_grid(double d, double x0, int min_points) {
  const double half = std::abs(d) + 8.0 * x0;
  return make_grid(-half, half, grid_points(2.0 * half, x0, min_points));
}

GridSpec default_aqc_grid(double d, double x0, int min_points) {
  const double lo = -8.0 * x0 - 0.2 * std::abs(d);
  const double hi = d + 8.0 * x0 + 0.35 * std::abs(d);
  return make_grid(lo, hi, grid_points(hi - lo, x0, min_points));
}

TransportConfig make_transport_config(double g, double d, int rounds, double P,
                                      TrapSpec trap) {
  TransportConfig cfg;
  cfg.g = g;
  cfg.d = d;
  cfg.rounds = rounds;
  cfg.P = P;
  cfg.trap = trap;
  check_config(cfg);
  cfg.grid = default_transport_grid(d, trap.x0());
  return cfg;
}

TransportResult sqc_transport_closed(const TransportConfig& cfg) {
  check_config(cfg);
  const int N = cfg.rounds;
  const double p = cfg.p();
  const double sw = cfg.sigma_w();
  const double s = cfg.g * cfg.dT();
  const double x0 = cfg.trap.x0();

  // c[k] multiplies the Gaussian at (n - 2k) s after n rounds
  const double wp = (1.0 + sw) / 2.0;
  const double wm = (1.0 - sw) / 2.0;
  std::vector<double> c{1.0};
  for (int n = 0; n < N; ++n) {
    std::vector<double> next(n + 2, 0.0);
    for (int k = 0; k <= n; ++k) {
      next[k] += wp * c[k];
      next[k + 1] += wm * c[k];
    }
    c = std::move(next);
  }

  // overlap table by lattice distance: centers differ by 2(k-j)s
  std::vector<double> ov(N + 1);
  for (int m = 0; m <= N; ++m) {
    const double dd = 2.0 * m * s;
    ov[m] = std::exp(-dd * dd / (8.0 * x0 * x0));
  }
  double norm2 = 0.0;
  double num = 0.0;
  for (int k = 0; k <= N; ++k) {
    const double ck = c[k];
    const double off = (N - 2.0 * k) * s - cfg.d;
    num += ck * std::exp(-off * off / (8.0 * x0 * x0));
    for (int j = 0; j <= N; ++j) norm2 += ck * c[j] * ov[std::abs(k - j)];
  }

  TransportResult res;
  res.fidelity = num * num / norm2;
  res.nominal_probability = cfg.P;
  res.actual_probability = std::pow(p, N) * norm2;
  res.closed_state.width = x0;
  res.closed_state.terms.reserve(N + 1);
  for (int k = 0; k <= N; ++k) {
    res.closed_state.terms.push_back({Cx(c[k], 0.0), (N - 2.0 * k) * s});
  }
  return res;
}

TransportResult sqc_transport_grid(const TransportConfig& cfg) {
  check_config(cfg);
  const SelectionPair pair = design_sigma_x_pair(cfg.p());
  const double dT = cfg.dT();
  GridWavePacket psi = gaussian_ground_state(cfg.grid, cfg.trap, 0.0);

  TransportResult res;
  res.nominal_probability = cfg.P;
  res.actual_probability = 1.0;
  for (int n = 0; n < cfg.rounds; ++n) {
    SpinGridWavePacket sp;
    sp.grid = cfg.grid;
    sp.trap = cfg.trap;
    sp.up = pair.i_state[0] * psi.amps;
    sp.down = pair.i_state[1] * psi.amps;
    sp = conditional_translate(sp, cfg.g, dT);
    CVec projected = std::conj(pair.f_state[0]) * sp.up + std::conj(pair.f_state[1]) * sp.down;
    const double prob = projected.squaredNorm() * cfg.grid.dx();
    if (prob < 1e-12) {
      throw ConvergenceError("sqc_transport_grid: post-selection probability vanished");
    }
    psi.amps = projected / std::sqrt(prob);
    res.round_probabilities.push_back(prob);
    res.actual_probability *= prob;
  }
  const GridWavePacket target = gaussian_ground_state(cfg.grid, cfg.trap, cfg.d);
  res.fidelity = std::norm(grid_inner(target, psi));
  res.closed_state = sqc_transport_closed(cfg).closed_state;
  res.grid_state = std::move(psi);
  return res;
}

double aqc_transport(double d, double T, const TrapSpec& trap, const GridSpec& grid,
                     double dt) {
  if (!(T > 0.0)) throw std::invalid_argument("aqc_transport: T must be positive");
  if (d == 0.0) {
    // nothing to move; the ground state is stationary
    return 1.0;
  }
  GridWavePacket psi = gaussian_ground_state(grid, trap, 0.0);
  auto center = [d, T](double t) {
    const double u = std::min(t / T, 1.0);
    return d * u * u * (3.0 - 2.0 * u);
  };
  psi = evolve_split_operator(psi, center, dt, T);
  const GridWavePacket target = gaussian_ground_state(grid, trap, d);
  return std::norm(grid_inner(target, psi));
}

SettingParams setting_params(TransportSetting s) {
  switch (s) {
    case TransportSetting::one:
      return {0.75, 7.5, "i"};
    case TransportSetting::two:
      return {1.0, 10.0, "ii"};
    case TransportSetting::three:
      return {1.5, 15.0, "iii"};
  }
  throw std::invalid_argument("unknown transport setting");
}

std::vector<ExperimentRecord> transport_sweep(TransportSetting setting, double P,
                                              const std::vector<int>& n_list,
                                              TransportMethod method, int jobs,
                                              double aqc_dt) {
  if (n_list.empty()) throw std::invalid_argument("transport_sweep: empty N list");
  const SettingParams sp = setting_params(setting);
  const TrapSpec trap;
  const double x0 = trap.x0();
  const double d = sp.d_over_x0 * x0;

  std::vector<ExperimentRecord> records(n_list.size());
  parallel_for(int(n_list.size()), jobs, [&](int idx) {
    const int N = n_list[idx];
    TransportConfig cfg = make_transport_config(sp.g, d, N, P, trap);
    ExperimentRecord rec;
    rec.setting = sp.label;
    rec.n = N;
    rec.g = sp.g;
    rec.d_over_x0 = sp.d_over_x0;
    rec.P_nominal = P;
    rec.T = cfg.total_time();
    rec.dT = cfg.dT();
    switch (method) {
      case TransportMethod::closed: {
        const TransportResult r = sqc_transport_closed(cfg);
        rec.protocol = "sqc-closed";
        rec.fidelity = r.fidelity;
        rec.P_actual = r.actual_probability;
        break;
      }
      case TransportMethod::grid: {
        const TransportResult r = sqc_transport_grid(cfg);
        rec.protocol = "sqc-grid";
        rec.fidelity = r.fidelity;
        rec.P_actual = r.actual_probability;
        break;
      }
      case TransportMethod::aqc: {
        const GridSpec grid = default_aqc_grid(d, x0);
        rec.protocol = "aqc";
        rec.fidelity = aqc_transport(d, cfg.total_time(), trap, grid, aqc_dt);
        rec.P_actual = 1.0;
        rec.P_nominal = 1.0;
        rec.dT = 0.0;
        break;
      }
    }
    records[idx] = std::move(rec);
  });
  return records;
}

}  // namespace sqc
