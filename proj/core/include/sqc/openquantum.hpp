#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sqc/record.hpp"
#include "sqc/search.hpp"
#include "sqc/transport.hpp"

namespace sqc {

/// Noise model of the open-system runs: one rate gamma shared by all collapse
/// operators, and a per-selection fidelity loss fraction applied after the
/// fact (not a quantum channel).
struct NoiseSpec {
  double gamma = 0.0;
  double p_error = 0.0;
};

void validate(const NoiseSpec& noise);

struct OpenRunResult {
  double raw_fidelity = 0.0;
  double penalized_fidelity = 0.0;  // raw * (1 - p_error)^N
  double actual_probability = 1.0;
  std::vector<double> purity_trace;  // tr(rho^2), sampled once per round
};

/// One classical RK4 step of
/// drho/dt = -i[H,rho] + sum_k (C_k rho C_k^dag - 1/2 {C_k^dag C_k, rho}).
/// Each stage derivative is traceless, so the trace is preserved to roundoff.
CMat lindblad_step(const CMat& rho, const CMat& h, const std::vector<CMat>& channels,
                   double dt);

/// Project the system factor onto |f>: rho -> (P_f (x) I) rho (P_f (x) I)/prob.
/// Throws when the selection probability is consumed (< 1e-12).
std::pair<CMat, double> post_select_system(const CMat& rho, const CVec& f, int sys_dim,
                                           int app_dim);

/// Truncation that passes the coherent-state gate for the target alpha =
/// d/(2 x0), with a small safety margin.
int default_transport_nmax(const TransportConfig& cfg);

/// Fig-3-style transport: Fock-space rounds of reset / Lindblad-evolve dT /
/// post-select under H = g sigma_x (x) p, dephasing sqrt(gamma) sigma_z on
/// the controller and damping sqrt(gamma) a, sqrt(gamma) a^dag on the mode.
/// Raw fidelity is <alpha| rho_A |alpha> against the displaced ground state.
/// dt = 0 applies the min(1e-3, dT/100) rule.
OpenRunResult open_transport_run(const TransportConfig& cfg, const NoiseSpec& noise,
                                 int n_max, double dt = 0.0);

/// Open two-qubit search with local dephasing sqrt(gamma) sigma_z on both
/// qubits; raw fidelity is <t| rho_target |t>.
OpenRunResult open_search_run(const SearchConfig& cfg, const NoiseSpec& noise,
                              double dt = 0.0);

/// N maximizing penalized fidelity over records sorted by N, if the maximum
/// is interior; otherwise nothing.
std::optional<int> tradeoff_peak(const std::vector<ExperimentRecord>& records);

}  // namespace sqc
