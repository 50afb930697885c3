#include "sqc/selection.hpp"

#include <cmath>

#include "sqc/qcore.hpp"

namespace sqc {

namespace {

void check_p(double p) {
  if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("P must be in (0,1]");
}

}  // namespace

SelectionPair design_sigma_x_pair(double p) {
  check_p(p);
  const double q = std::sqrt(1.0 - p);
  const double a = std::sqrt((1.0 - q) / 2.0);
  const double b = std::sqrt((1.0 + q) / 2.0);
  SelectionPair pair;
  pair.p = p;
  pair.i_state << a, b;
  pair.f_state << b, a;
  pair.kind = SelectionKind::sigma_x_optimal;
  return pair;
}

SelectionPair design_sigma_y_pair(double p) {
  check_p(p);
  const double q = std::sqrt(1.0 - p);
  const double a = std::sqrt((1.0 - q) / 2.0);
  const double b = std::sqrt((1.0 + q) / 2.0);
  SelectionPair pair;
  pair.p = p;
  pair.i_state << a, Cx(0, 1) * b;
  pair.f_state << b, Cx(0, 1) * a;
  pair.kind = SelectionKind::sigma_y_phased;
  return pair;
}

SelectionPair design_eigen_anchored_pair(double p) {
  check_p(p);
  SelectionPair pair;
  pair.p = p;
  pair.i_state << 1, 0;
  pair.f_state << std::sqrt(p), std::sqrt(1.0 - p);
  pair.kind = SelectionKind::eigen_anchored;
  return pair;
}

Cx weak_value(const SelectionPair& pair, const CMat& op) {
  if (op.rows() != 2 || op.cols() != 2) {
    throw std::invalid_argument("weak_value: operator must act on the two-level system");
  }
  const Cx fi = pair.f_state.dot(pair.i_state);
  if (std::abs(fi) < 1e-14) {
    throw std::domain_error("weak_value: orthogonal selections, weak value undefined");
  }
  return pair.f_state.dot(op * pair.i_state) / fi;
}

CatReadout cat_coefficients(const SelectionPair& pair) {
  // eigenbasis of the measured operator, eigenvalue +1 first
  Eigen::Vector2cd e0, e1;
  if (pair.kind == SelectionKind::sigma_y_phased) {
    e0 << 1.0 / std::sqrt(2.0), Cx(0, 1) / std::sqrt(2.0);
    e1 << 1.0 / std::sqrt(2.0), Cx(0, -1) / std::sqrt(2.0);
  } else {
    e0 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    e1 << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  }
  CatReadout cr;
  cr.c0 = e0.dot(pair.i_state) * std::conj(e0.dot(pair.f_state));
  cr.c1 = e1.dot(pair.i_state) * std::conj(e1.dot(pair.f_state));
  return cr;
}

double expected_shift(const CatReadout& cr) {
  const double n0 = std::norm(cr.c0);
  const double n1 = std::norm(cr.c1);
  if (n0 == 0.0 && n1 == 0.0) throw std::invalid_argument("expected_shift: empty cat");
  const double cross = 2.0 * (std::conj(cr.c0) * cr.c1).real();
  const double den = n0 + n1 + cross * std::exp(-cr.gamma * cr.gamma);
  if (!(den > 0.0)) throw std::domain_error("expected_shift: vanishing denominator");
  return (n0 - n1) * cr.gT / den;
}

std::vector<ReadoutPoint> readout_curve(SelectionKind kind,
                                        const std::vector<double>& gamma_list,
                                        const std::vector<double>& p_grid) {
  std::vector<ReadoutPoint> out;
  out.reserve(gamma_list.size() * p_grid.size());
  for (double gamma : gamma_list) {
    for (double p : p_grid) {
      check_p(p);
      SelectionPair pair = (kind == SelectionKind::eigen_anchored)
                               ? design_eigen_anchored_pair(p)
                           : (kind == SelectionKind::sigma_y_phased)
                               ? design_sigma_y_pair(p)
                               : design_sigma_x_pair(p);
      CatReadout cr = cat_coefficients(pair);
      cr.gamma = gamma;
      cr.gT = 1.0;
      const double n0 = std::norm(cr.c0);
      const double n1 = std::norm(cr.c1);
      const double cross = 2.0 * (std::conj(cr.c0) * cr.c1).real();
      ReadoutPoint pt;
      pt.p = p;
      pt.gamma = gamma;
      pt.shift_over_gT = expected_shift(cr);
      pt.weak_limit = (n0 - n1) / (n0 + n1 + cross);
      pt.strong_limit = (n0 - n1) / (n0 + n1);
      out.push_back(pt);
    }
  }
  return out;
}

}  // namespace sqc
