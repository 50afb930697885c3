#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sqc/selection.hpp"

namespace sqc {

/// One sweep point. Protocol writers pick the columns that apply; every
/// numeric field is kept finite (zero when not applicable).
struct ExperimentRecord {
  std::string protocol;  // sqc-closed | sqc-grid | aqc | sqc | aqc-type1 | aqc-type2 | ...
  std::string setting;   // transport setting label: i | ii | iii (empty otherwise)
  double n = 0.0;        // selection rounds (sweep coordinate)
  double T = 0.0;
  double dT = 0.0;
  double g = 0.0;
  double d_over_x0 = 0.0;
  double theta0 = 0.0;
  double P_nominal = 1.0;
  double P_actual = 1.0;
  double fidelity = 0.0;
  double fidelity_penalized = 0.0;
  double cost = 0.0;
  double omega = 0.0;
  double k_scale = 0.0;
  double gamma = 0.0;
  double p_error = 0.0;
  int n_max = 0;
};

std::string format_double(double v);

/// setting,N,g,d_over_x0,P_nominal,P_actual,T,dT,fidelity,method
void write_transport_csv(const std::vector<ExperimentRecord>& records, std::ostream& out,
                         const std::vector<std::string>& provenance = {});

/// protocol,N_or_T,g,P_nominal,P_actual,fidelity,cost,Omega,K
void write_search_csv(const std::vector<ExperimentRecord>& records, std::ostream& out,
                      const std::vector<std::string>& provenance = {});

/// protocol,setting,N,gamma,p_error,P_actual,fidelity_raw,fidelity_penalized,n_max
void write_open_csv(const std::vector<ExperimentRecord>& records, std::ostream& out,
                    const std::vector<std::string>& provenance = {});

/// p,gamma,shift_over_gT,weak_limit,strong_limit
void write_readout_csv(const std::vector<ReadoutPoint>& points, std::ostream& out,
                       const std::vector<std::string>& provenance = {});

}  // namespace sqc
