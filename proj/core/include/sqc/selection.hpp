#pragma once

#include <vector>

#include "sqc/types.hpp"

namespace sqc {

enum class SelectionKind { sigma_x_optimal, sigma_y_phased, eigen_anchored };

/// Pre/post-selection states of the two-level controller with success
/// probability p = |<f|i>|^2.
struct SelectionPair {
  double p = 1.0;
  Eigen::Vector2cd i_state;
  Eigen::Vector2cd f_state;
  SelectionKind kind = SelectionKind::sigma_x_optimal;
};

/// Branch coefficients of the post-selected cat in the measured operator's
/// eigenbasis, c_k = a_k conj(a~_k), plus the interference factor
/// Gamma = gT / (sqrt(2) x0) and the coupling area gT.
struct CatReadout {
  Cx c0;
  Cx c1;
  double gamma = 0.0;
  double gT = 1.0;
};

/// |i> = sqrt((1-q)/2)|0> + sqrt((1+q)/2)|1>, |f> with swapped coefficients,
/// q = sqrt(1-p); gives the optimal real weak value of sigma_x, 1/sqrt(p).
SelectionPair design_sigma_x_pair(double p);

/// Same magnitudes with the relative phase e^{-i pi/2} placed so that
/// sigma_y |i> = |f>, hence a real sigma_y weak value 1/sqrt(p).
SelectionPair design_sigma_y_pair(double p);

/// |i> = |0>, |f> = sqrt(p)|0> + sqrt(1-p)|1>: weak value sqrt(1-p)/sqrt(p),
/// strong-limit readout 2 sqrt(p(1-p)).
SelectionPair design_eigen_anchored_pair(double p);

/// <f|A|i> / <f|i>; throws for (near-)orthogonal selections.
Cx weak_value(const SelectionPair& pair, const CMat& op);

/// Expand both selections in the measured operator's eigenbasis (sigma_x for
/// the x-optimal and eigen-anchored kinds, sigma_y for the phased kind).
CatReadout cat_coefficients(const SelectionPair& pair);

/// Central shift of the cat in units of the coupling:
/// dx = (|c0|^2-|c1|^2) gT / (|c0|^2+|c1|^2 + (c0* c1 + c0 c1*) e^{-Gamma^2}).
double expected_shift(const CatReadout& cr);

struct ReadoutPoint {
  double p;
  double gamma;
  double shift_over_gT;
  double weak_limit;
  double strong_limit;
};

/// Weak-to-strong transition table dx/gT over (gamma, p); every row sits
/// between its analytic weak and strong limits.
std::vector<ReadoutPoint> readout_curve(SelectionKind kind,
                                        const std::vector<double>& gamma_list,
                                        const std::vector<double>& p_grid);

}  // namespace sqc
