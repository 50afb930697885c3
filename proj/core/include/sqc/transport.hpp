#pragma once

#include <optional>
#include <vector>

#include "sqc/record.hpp"
#include "sqc/wavepacket.hpp"

namespace sqc {

/// Fast-transport protocol parameters. Everything downstream of (g, d, N, P)
/// is derived on demand so the pieces cannot drift apart:
///   p = P^(1/N),  sigma_w = 1/sqrt(p),  T = (d/g) sqrt(p),  dT = T/N.
/// The timing rule inverts d = g T / sqrt(p).
struct TransportConfig {
  double g = 1.0;
  double d = 0.0;
  int rounds = 1;
  double P = 1.0;
  TrapSpec trap;
  GridSpec grid;

  double p() const { return std::pow(P, 1.0 / rounds); }
  double sigma_w() const { return 1.0 / std::sqrt(p()); }
  double total_time() const { return d / g * std::sqrt(p()); }
  double dT() const { return total_time() / rounds; }
};

/// Symmetric grid [-(|d|+8 x0), |d|+8 x0]: single-shot protocols put a branch
/// at -gT, so both sides need full margins.
GridSpec default_transport_grid(double d, double x0, int min_points = 2048);

/// AQC grid with extra room on the target side for trap-following overshoot.
GridSpec default_aqc_grid(double d, double x0, int min_points = 2048);

TransportConfig make_transport_config(double g, double d, int rounds, double P,
                                      TrapSpec trap = {});

struct TransportResult {
  double fidelity = 0.0;
  double nominal_probability = 1.0;
  double actual_probability = 1.0;
  GaussianSuperposition closed_state;          // closed-form route
  std::optional<GridWavePacket> grid_state;    // grid route
  std::vector<double> round_probabilities;     // grid route, one per selection
};

/// Exact route: N applications of cos(g dT p) - i sigma_w sin(g dT p) on the
/// initial Gaussian, expanded over the displacement lattice.
TransportResult sqc_transport_closed(const TransportConfig& cfg);

/// Protocol route on the grid: reset the controller to |i>, couple for dT,
/// project onto |f>, renormalize, N times.
TransportResult sqc_transport_grid(const TransportConfig& cfg);

/// Moving-trap baseline x_trap(t) = 3 d t^2/T^2 - 2 d t^3/T^3, scored against
/// the ground state at d. dt = 2e-4 holds the halving gate on the
/// nonadiabatic matched-T runs.
double aqc_transport(double d, double T, const TrapSpec& trap, const GridSpec& grid,
                     double dt = 2e-4);

enum class TransportSetting { one, two, three };  // (i)..(iii)

struct SettingParams {
  double g;
  double d_over_x0;
  const char* label;
};
SettingParams setting_params(TransportSetting s);

enum class TransportMethod { closed, grid, aqc };

/// One record per N; for the AQC method the operation time is matched to the
/// SQC timing rule, T = (d/g) P^(1/2N).
std::vector<ExperimentRecord> transport_sweep(TransportSetting setting, double P,
                                              const std::vector<int>& n_list,
                                              TransportMethod method, int jobs = 0,
                                              double aqc_dt = 2e-4);

}  // namespace sqc
