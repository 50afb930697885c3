#include "sqc/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>

#include <fftw3.h>

namespace sqc {

namespace {

constexpr double kEdgeTol = 1e-6;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// FFTW's planner is not thread safe; executions on private buffers are.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Fft {
 public:
  explicit Fft(int n) : n_(n) {
    buf_ = fftw_alloc_complex(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  ~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }

  void forward(CVec& v) { run(fwd_, v, 1.0); }
  void backward(CVec& v) { run(bwd_, v, 1.0 / n_); }

 private:
  void run(fftw_plan plan, CVec& v, double scale) {
    auto* b = reinterpret_cast<Cx*>(buf_);
    std::copy(v.data(), v.data() + n_, b);
    fftw_execute(plan);
    for (int j = 0; j < n_; ++j) v[j] = b[j] * scale;
  }

  int n_;
  fftw_complex* buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

// k_j in FFT ordering: 0..n/2-1, then -n/2..-1, in units 2 pi / L.
std::vector<double> momentum_grid(const GridSpec& g) {
  std::vector<double> k(g.n_points);
  const double dk = 2.0 * pi / g.length();
  for (int j = 0; j < g.n_points; ++j) {
    const int m = (j <= g.n_points / 2) ? j : j - g.n_points;
    k[j] = dk * m;
  }
  return k;
}

void check_edges(const CVec& amps, const std::string& what) {
  const double lo = std::abs(amps[0]);
  const double hi = std::abs(amps[amps.size() - 1]);
  if (lo >= kEdgeTol || hi >= kEdgeTol) {
    throw BoundaryError(what + ": wave packet touches the grid boundary (|psi_edge| = " +
                        std::to_string(std::max(lo, hi)) + ")");
  }
}

void spectral_translate(CVec& amps, const GridSpec& grid, double shift, Fft& fft) {
  const auto k = momentum_grid(grid);
  fft.forward(amps);
  for (int j = 0; j < grid.n_points; ++j) {
    amps[j] *= std::polar(1.0, -k[j] * shift);
  }
  fft.backward(amps);
}

// Unit-magnitude linear chirp exp(i lambda x_j), regenerated from std::polar
// every 64 points to stop the recurrence drifting.
void fill_linear_chirp(std::vector<Cx>& out, const GridSpec& g, double lambda) {
  const int n = g.n_points;
  const Cx step = std::polar(1.0, lambda * g.dx());
  for (int j = 0; j < n; ++j) {
    if (j % 64 == 0) {
      out[j] = std::polar(1.0, lambda * g.point(j));
    } else {
      out[j] = out[j - 1] * step;
    }
  }
}

}  // namespace

GridSpec make_grid(double x_min, double x_max, int n_points) {
  if (!(x_max > x_min)) throw std::invalid_argument("grid: x_max must exceed x_min");
  if (!power_of_two(n_points) || n_points < 256) {
    throw std::invalid_argument("grid: n_points must be a power of two >= 256");
  }
  return GridSpec{x_min, x_max, n_points};
}

double GridWavePacket::norm2() const { return amps.squaredNorm() * grid.dx(); }

double GridWavePacket::mean_x() const {
  double m = 0.0;
  for (int j = 0; j < grid.n_points; ++j) m += grid.point(j) * std::norm(amps[j]);
  return m * grid.dx() / norm2();
}

double GridWavePacket::var_x() const {
  const double mu = mean_x();
  double v = 0.0;
  for (int j = 0; j < grid.n_points; ++j) {
    const double d = grid.point(j) - mu;
    v += d * d * std::norm(amps[j]);
  }
  return v * grid.dx() / norm2();
}

double SpinGridWavePacket::norm2() const {
  return (up.squaredNorm() + down.squaredNorm()) * grid.dx();
}

GridWavePacket gaussian_ground_state(const GridSpec& grid, const TrapSpec& trap,
                                     double center) {
  validate(trap);
  const double x0 = trap.x0();
  CVec amps(grid.n_points);
  for (int j = 0; j < grid.n_points; ++j) {
    const double d = grid.point(j) - center;
    amps[j] = std::exp(-d * d / (4.0 * x0 * x0));
  }
  amps /= std::sqrt(amps.squaredNorm() * grid.dx());
  check_edges(amps, "gaussian_ground_state");
  return GridWavePacket{grid, std::move(amps), trap};
}

GridWavePacket translate(const GridWavePacket& packet, double shift) {
  GridWavePacket out = packet;
  Fft fft(packet.grid.n_points);
  spectral_translate(out.amps, out.grid, shift, fft);
  check_edges(out.amps, "translate");
  return out;
}

GridWavePacket evolve_split_operator(const GridWavePacket& packet,
                                     const std::function<double(double)>& trap_center,
                                     double dt, double total_time) {
  if (!(dt > 0.0) || !(total_time >= 0.0)) {
    throw std::invalid_argument("evolve_split_operator: dt and T must be positive");
  }
  const int steps = std::max(1, int(std::llround(total_time / dt)));
  if (std::abs(steps * dt - total_time) > 1e-9 * std::max(1.0, total_time)) {
    dt = total_time / steps;  // dt must divide T within rounding
  }

  const GridSpec& g = packet.grid;
  const int n = g.n_points;
  const double mass = packet.trap.mass;
  const double nu = packet.trap.nu;
  const double eta = mass * nu * nu * dt / 4.0;  // exp(-i eta (x - c)^2) per half kick

  Fft fft(n);
  const auto k = momentum_grid(g);
  std::vector<Cx> kin(n), quad(n), chirp(n);
  for (int j = 0; j < n; ++j) {
    kin[j] = std::polar(1.0, -dt * k[j] * k[j] / (2.0 * mass));
    quad[j] = std::polar(1.0, -eta * g.point(j) * g.point(j));
  }

  CVec amps = packet.amps;
  auto half_kick = [&](double t) {
    const double c = trap_center(t);
    fill_linear_chirp(chirp, g, 2.0 * eta * c);
    const Cx scale = std::polar(1.0, -eta * c * c);
    for (int j = 0; j < n; ++j) amps[j] *= quad[j] * chirp[j] * scale;
  };

  for (int s = 0; s < steps; ++s) {
    const double t = s * dt;
    half_kick(t);
    fft.forward(amps);
    for (int j = 0; j < n; ++j) amps[j] *= kin[j];
    fft.backward(amps);
    half_kick(t + dt);
    if (std::abs(amps[0]) >= kEdgeTol || std::abs(amps[n - 1]) >= kEdgeTol) {
      throw BoundaryError("evolve_split_operator: boundary contact at t = " +
                          std::to_string(t + dt));
    }
  }
  return GridWavePacket{g, std::move(amps), packet.trap};
}

SpinGridWavePacket conditional_translate(const SpinGridWavePacket& sp, double g,
                                         double tau) {
  const double s = g * tau;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CVec plus = (sp.up + sp.down) * inv_sqrt2;
  CVec minus = (sp.up - sp.down) * inv_sqrt2;
  Fft fft(sp.grid.n_points);
  spectral_translate(plus, sp.grid, s, fft);
  spectral_translate(minus, sp.grid, -s, fft);
  SpinGridWavePacket out;
  out.grid = sp.grid;
  out.trap = sp.trap;
  out.up = (plus + minus) * inv_sqrt2;
  out.down = (plus - minus) * inv_sqrt2;
  // joint edge amplitude: either component leaking counts
  const int n = sp.grid.n_points;
  const double edge = std::max(std::hypot(std::abs(out.up[0]), std::abs(out.down[0])),
                               std::hypot(std::abs(out.up[n - 1]), std::abs(out.down[n - 1])));
  if (edge >= kEdgeTol) {
    throw BoundaryError("conditional_translate: wave packet touches the grid boundary");
  }
  return out;
}

Cx gaussian_overlap(const GaussianSuperposition& a, const GaussianSuperposition& b) {
  if (std::abs(a.width - b.width) > 1e-12 * std::max(a.width, b.width)) {
    throw std::invalid_argument("gaussian_overlap: width mismatch");
  }
  const double w8 = 8.0 * a.width * a.width;
  Cx acc = 0.0;
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      const double d = ta.center - tb.center;
      acc += std::conj(ta.coeff) * tb.coeff * std::exp(-d * d / w8);
    }
  }
  return acc;
}

double gaussian_norm2(const GaussianSuperposition& a) {
  return gaussian_overlap(a, a).real();
}

GridWavePacket render(const GaussianSuperposition& gsup, const GridSpec& grid,
                      const TrapSpec& trap) {
  const double w = gsup.width;
  CVec amps = CVec::Zero(grid.n_points);
  const double norm0 = std::pow(2.0 * pi * w * w, -0.25);
  for (const auto& t : gsup.terms) {
    if (t.center <= grid.x_min || t.center >= grid.x_max) {
      throw BoundaryError("render: Gaussian center outside the grid");
    }
    for (int j = 0; j < grid.n_points; ++j) {
      const double d = grid.point(j) - t.center;
      amps[j] += t.coeff * norm0 * std::exp(-d * d / (4.0 * w * w));
    }
  }
  amps /= std::sqrt(amps.squaredNorm() * grid.dx());
  check_edges(amps, "render");
  return GridWavePacket{grid, std::move(amps), trap};
}

GridWavePacket render(const GaussianSuperposition& gsup, const GridSpec& grid) {
  // synthesize the trap this width belongs to (M = 1)
  const double w = gsup.width;
  return render(gsup, grid, TrapSpec{1.0, 1.0 / (2.0 * w * w)});
}

Cx grid_inner(const GridWavePacket& a, const GridWavePacket& b) {
  if (a.grid.n_points != b.grid.n_points || a.grid.x_min != b.grid.x_min ||
      a.grid.x_max != b.grid.x_max) {
    throw std::invalid_argument("grid_inner: grids differ");
  }
  return a.amps.dot(b.amps) * a.grid.dx();
}

CVec fock_to_grid_amplitudes(const CVec& fock_amps, const GridSpec& grid,
                             const TrapSpec& trap) {
  const double x0 = trap.x0();
  const int n = grid.n_points;
  const int levels = int(fock_amps.size());
  CVec amps = CVec::Zero(n);
  const double c0 = std::pow(2.0 * pi * x0 * x0, -0.25);
  std::vector<double> prev(n), cur(n), next(n);
  for (int j = 0; j < n; ++j) {
    const double u = grid.point(j) / (x0 * std::sqrt(2.0));
    cur[j] = c0 * std::exp(-u * u / 2.0);
  }
  for (int m = 0; m < levels; ++m) {
    if (fock_amps[m] != Cx(0.0)) {
      for (int j = 0; j < n; ++j) amps[j] += fock_amps[m] * cur[j];
    }
    if (m + 1 == levels) break;
    const double am = std::sqrt(2.0 / (m + 1.0));
    const double bm = std::sqrt(m / (m + 1.0));
    for (int j = 0; j < n; ++j) {
      const double u = grid.point(j) / (x0 * std::sqrt(2.0));
      next[j] = am * u * cur[j] - bm * prev[j];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return amps;
}

GridWavePacket fock_to_grid(const CVec& fock_amps, const GridSpec& grid,
                            const TrapSpec& trap) {
  CVec amps = fock_to_grid_amplitudes(fock_amps, grid, trap);
  const double n2 = amps.squaredNorm() * grid.dx();
  if (n2 <= 0.0) throw std::invalid_argument("fock_to_grid: zero state");
  amps /= std::sqrt(n2);
  check_edges(amps, "fock_to_grid");
  return GridWavePacket{grid, std::move(amps), trap};
}

void write_packet_csv(const GridWavePacket& packet, std::ostream& out) {
  out << "x,re,im,abs2\n";
  char line[128];
  for (int j = 0; j < packet.grid.n_points; ++j) {
    const Cx a = packet.amps[j];
    std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%.12g\n", packet.grid.point(j),
                  a.real(), a.imag(), std::norm(a));
    out << line;
  }
}

}  // namespace sqc
