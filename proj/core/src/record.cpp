#include "sqc/record.hpp"

#include <cstdio>
#include <ostream>

namespace sqc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

void emit_provenance(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& l : lines) out << "# " << l << "\n";
}

}  // namespace

void write_transport_csv(const std::vector<ExperimentRecord>& records, std::ostream& out,
                         const std::vector<std::string>& provenance) {
  emit_provenance(out, provenance);
  out << "setting,N,g,d_over_x0,P_nominal,P_actual,T,dT,fidelity,method\n";
  for (const auto& r : records) {
    out << r.setting << ',' << format_double(r.n) << ',' << format_double(r.g) << ','
        << format_double(r.d_over_x0) << ',' << format_double(r.P_nominal) << ','
        << format_double(r.P_actual) << ',' << format_double(r.T) << ','
        << format_double(r.dT) << ',' << format_double(r.fidelity) << ',' << r.protocol
        << "\n";
  }
}

void write_search_csv(const std::vector<ExperimentRecord>& records, std::ostream& out,
                      const std::vector<std::string>& provenance) {
  emit_provenance(out, provenance);
  out << "protocol,N_or_T,g,P_nominal,P_actual,fidelity,cost,Omega,K\n";
  for (const auto& r : records) {
    out << r.protocol << ',' << format_double(r.n) << ',' << format_double(r.g) << ','
        << format_double(r.P_nominal) << ',' << format_double(r.P_actual) << ','
        << format_double(r.fidelity) << ',' << format_double(r.cost) << ','
        << format_double(r.omega) << ',' << format_double(r.k_scale) << "\n";
  }
}

void write_open_csv(const std::vector<ExperimentRecord>& records, std::ostream& out,
                    const std::vector<std::string>& provenance) {
  emit_provenance(out, provenance);
  out << "protocol,setting,N,gamma,p_error,P_actual,fidelity_raw,fidelity_penalized,n_max\n";
  for (const auto& r : records) {
    out << r.protocol << ',' << r.setting << ',' << format_double(r.n) << ','
        << format_double(r.gamma) << ',' << format_double(r.p_error) << ','
        << format_double(r.P_actual) << ',' << format_double(r.fidelity) << ','
        << format_double(r.fidelity_penalized) << ',' << r.n_max << "\n";
  }
}

void write_readout_csv(const std::vector<ReadoutPoint>& points, std::ostream& out,
                       const std::vector<std::string>& provenance) {
  emit_provenance(out, provenance);
  out << "p,gamma,shift_over_gT,weak_limit,strong_limit\n";
  for (const auto& p : points) {
    out << format_double(p.p) << ',' << format_double(p.gamma) << ','
        << format_double(p.shift_over_gT) << ',' << format_double(p.weak_limit) << ','
        << format_double(p.strong_limit) << "\n";
  }
}

}  // namespace sqc
