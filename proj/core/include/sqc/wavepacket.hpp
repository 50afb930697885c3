#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "sqc/types.hpp"

namespace sqc {

/// Uniform position grid [x_min, x_max) with a power-of-two point count.
/// The discrete Fourier transform treats the grid as periodic, so spectral
/// translation is circular; packets must keep away from the edges.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_points = 0;

  double dx() const { return (x_max - x_min) / n_points; }
  double length() const { return x_max - x_min; }
  double point(int i) const { return x_min + i * dx(); }
};

GridSpec make_grid(double x_min, double x_max, int n_points);

struct GridWavePacket {
  GridSpec grid;
  CVec amps;
  TrapSpec trap;

  double norm2() const;  // sum |psi|^2 dx
  double mean_x() const;
  double var_x() const;
};

/// Internal-state (x) motional product state: two amplitude components on a
/// shared grid, normalized jointly.
struct SpinGridWavePacket {
  GridSpec grid;
  CVec up;
  CVec down;
  TrapSpec trap;

  double norm2() const;
};

/// Exact analytic state: sum of displaced Gaussians of one common width.
/// May be unnormalized; its norm^2 is the overlap form against itself.
struct GaussianTerm {
  Cx coeff;
  double center;
};
struct GaussianSuperposition {
  std::vector<GaussianTerm> terms;
  double width = 0.0;  // x0 of every term
};

/// Normalized ground state of the trap centered at `center`,
/// psi(x) ~ exp(-(x-c)^2 / (4 x0^2)).
GridWavePacket gaussian_ground_state(const GridSpec& grid, const TrapSpec& trap,
                                     double center);

/// exp(-i shift p) by momentum-space phase multiplication. Norm preserving;
/// integer-dx shifts reduce to circular index shifts.
GridWavePacket translate(const GridWavePacket& packet, double shift);

/// Strang-split evolution under H = p^2/2M + M nu^2 (x - c(t))^2 / 2 with a
/// moving trap center c(t); half potential, full kinetic, half potential per
/// step. Throws BoundaryError naming the offending time on edge contact.
GridWavePacket evolve_split_operator(const GridWavePacket& packet,
                                     const std::function<double(double)>& trap_center,
                                     double dt, double total_time);

/// Exact action of exp(-i g tau sigma_x (x) p): the sigma_x = +1 branch
/// translates by +g tau, the -1 branch by -g tau.
SpinGridWavePacket conditional_translate(const SpinGridWavePacket& sp, double g,
                                         double tau);

/// Bilinear overlap of two superpositions sharing one width; unit-norm
/// Gaussians displaced by D overlap as exp(-D^2 / (8 x0^2)).
Cx gaussian_overlap(const GaussianSuperposition& a, const GaussianSuperposition& b);

double gaussian_norm2(const GaussianSuperposition& a);

/// Sample a superposition on a grid and normalize.
GridWavePacket render(const GaussianSuperposition& gsup, const GridSpec& grid);
GridWavePacket render(const GaussianSuperposition& gsup, const GridSpec& grid,
                      const TrapSpec& trap);

/// Discrete inner product <a|b> = sum conj(a) b dx.
Cx grid_inner(const GridWavePacket& a, const GridWavePacket& b);

/// Map truncated Fock amplitudes onto the grid through the oscillator
/// eigenfunctions (stable normalized Hermite recurrence). The amplitude
/// variant keeps the input norm; the packet variant renormalizes.
CVec fock_to_grid_amplitudes(const CVec& fock_amps, const GridSpec& grid,
                             const TrapSpec& trap);
GridWavePacket fock_to_grid(const CVec& fock_amps, const GridSpec& grid,
                            const TrapSpec& trap);

/// CSV rows (x, Re psi, Im psi, |psi|^2).
void write_packet_csv(const GridWavePacket& packet, std::ostream& out);

}  // namespace sqc
