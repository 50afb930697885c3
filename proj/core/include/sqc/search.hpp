#pragma once

#include <functional>
#include <vector>

#include "sqc/record.hpp"
#include "sqc/types.hpp"

namespace sqc {

/// Analog-search protocol parameters. Derived quantities follow the same
/// discipline as transport: p = P^(1/N), sigma_w = 1/sqrt(p), and the
/// perfect-query timing g dT sigma_w = (pi/2 - theta0)/N.
struct SearchConfig {
  double g = 1.0;
  int rounds = 1;
  double P = 1.0;
  double theta0 = pi / 4.0;  // database half-angle; |+> database for N_G = 2
  int target = 0;
  int entries = 2;  // database dimension N_G

  double p() const { return std::pow(P, 1.0 / rounds); }
  double sigma_w() const { return 1.0 / std::sqrt(p()); }
  double dT() const { return (pi / 2.0 - theta0) * std::sqrt(p()) / (rounds * g); }
  double total_time() const { return rounds * dT(); }
};

/// sin((2N+1) theta/2)|t> + cos((2N+1) theta/2)|t~>; two-entry form uses
/// |t> = |0>, |t~> = |1>.
CVec grover_reference(int n_iter, double theta);
CVec grover_reference(int n_iter, double theta, const CVec& t_state,
                      const CVec& t_tilde);

struct SearchRunResult {
  double fidelity = 0.0;
  double actual_probability = 1.0;
  CVec final_state;
};

/// Full joint simulation of N selection rounds under H = -g sigma_y (x)
/// sigma_y with the phased pair; equals the per-round oracle
/// K = sqrt(p) cos(g dT) I + i sin(g dT) sigma_y applied N times.
SearchRunResult sqc_search_run(const SearchConfig& cfg);

enum class AdiabaticFamily { type_i, type_ii };

/// Linear-schedule interpolating Hamiltonians:
///   I:  (1-t/T) Omega sigma_x + (t/T) Delta sigma_z  (Omega = Delta = amplitude)
///   II: (1-t/T) K (I - |Psi><Psi|) + (t/T) K (I - |t><t|)
struct AdiabaticSpec {
  AdiabaticFamily family = AdiabaticFamily::type_i;
  double amplitude = 1.0;
  double T = 1.0;
};

/// Midpoint-exponential evolution from |+>, scored as |<0|psi(T)>|^2.
/// dt = 0 applies the min(1e-3, T/1e4) stepping rule.
double aqc_search_run(const AdiabaticSpec& spec, double dt = 0.0);

/// Time-averaged Frobenius norm (1/T) int_0^T ||H(t)|| dt by adaptive
/// quadrature (1e-9 relative).
double energy_cost(const std::function<CMat(double)>& hamiltonian, double T);

/// Closed-form cost coefficients C_I/Omega and C_II/K for Omega = Delta.
double type_i_cost_coefficient();
double type_ii_cost_coefficient();

struct EqualizedAmplitudes {
  double omega;
  double k;
};
/// Amplitudes solving C_I(Omega) = C_II(K) = C_SQC = 2g.
EqualizedAmplitudes equalize_cost(double g);

/// Rotation generator on span{|t>, |t~>}: with |+~> = (|t>+|t~>)/sqrt(2),
/// |-~> = (|t>-|t~>)/sqrt(2), J_y = -(i/2)(|-~><+~| - |+~><-~|) and the
/// doubled generator sigma_y_eff = 2 J_y satisfies
/// exp(i phi sigma_y_eff)|Psi(x)> = |Psi(x + phi)>.
struct GeneralRotation {
  int dim = 0;
  CVec target_state;
  CVec complement_state;
  CMat jy;
  CMat sigma_y_eff;
  double theta0 = 0.0;  // arcsin(<t|Psi>)
};
GeneralRotation build_general_rotation(int target,
                                       const std::vector<double>& database_amplitudes);

/// Search over an N_G-entry database driven by H = -g sigma_y (x) sigma_y_eff;
/// reduces to sqc_search_run for the two-entry uniform database. The
/// perfect-query angle comes from the database, theta0 = arcsin(<t|Psi>).
SearchRunResult multiqubit_sqc_search(const SearchConfig& cfg,
                                      const std::vector<double>& database_amplitudes);

/// Bichromatic two-ion drive parameters; eps = nu - delta is the sideband
/// detuning and t_MS = 2 pi / eps closes the motional loop. Sideband phases
/// are fixed at (phi_r, phi_b) = (-pi/2, pi/2).
struct MSSpec {
  double eta = 0.05;
  double Omega = 0.02;
  double nu = 1.0;
  double delta = 0.998;
  int n_max = 20;

  double eps() const { return nu - delta; }
  double t_ms() const { return 2.0 * pi / eps(); }
};

/// Regime used for the numeric verification: eta = 0.05, Omega = 0.02 nu,
/// eps = 2 eta Omega so the closed gate phase is pi/2 at t_MS.
MSSpec ms_design_spec();

/// Closed-form propagator on (two spins) (x) Fock:
/// U = D(beta(t) J_y) exp(i [eta^2 Om^2 t/eps - eta^2 Om^2 sin(eps t)/eps^2] J_y^2),
/// beta(t) = (eta Om/eps)(e^{i eps t} - 1).
CMat ms_effective_propagator(const MSSpec& spec, double t);

/// eta sqrt(<(a + a^dag)^2>) for a motional state.
double lamb_dicke_parameter(const MSSpec& spec, const CVec& motional);

/// Integrate the full bichromatic Hamiltonian (carrier + both sideband
/// tones) to t_MS and report the mean test-state fidelity against the
/// closed-form propagator. Second-order splitting whose carrier and
/// sideband sub-flows are integrated exactly within each step.
double ms_numeric_check(const MSSpec& spec, double dt);

/// One record per N for SQC and both adiabatic families at equalized cost.
std::vector<ExperimentRecord> search_sweep(double g, double P,
                                           const std::vector<int>& n_list,
                                           bool include_adiabatic, int jobs = 0);

}  // namespace sqc
