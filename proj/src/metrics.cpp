#include "mqida/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mqida {

double aqe(double energy, double exact_energy) {
  if (exact_energy == 0.0)
    throw std::invalid_argument("aqe: exact energy must be nonzero");
  return 100.0 * energy / exact_energy;
}

double rqe(double energy, double exact_energy, double neel_energy) {
  const double span = std::abs(exact_energy - neel_energy);
  if (span == 0.0)
    throw std::invalid_argument("rqe: exact and Neel energies coincide");
  return 100.0 * std::abs(energy - neel_energy) / span;
}

double deviation_metric(const std::vector<double>& values, double best) {
  if (values.empty())
    throw std::invalid_argument("deviation_metric: empty batch");
  double s = 0.0;
  for (double v : values) s += std::abs(v - best);
  return s / static_cast<double>(values.size());
}

MetricSummary summarize_runs(const std::vector<double>& energies,
                             double exact_energy, double neel_energy) {
  if (energies.empty())
    throw std::invalid_argument("summarize_runs: no energies");
  MetricSummary m;
  m.n_runs = static_cast<int>(energies.size());
  m.e_best = *std::min_element(energies.begin(), energies.end());

  double sum = 0.0;
  for (double e : energies) sum += e;
  m.e_avg = sum / m.n_runs;
  double var = 0.0;
  for (double e : energies) var += (e - m.e_avg) * (e - m.e_avg);
  m.e_std = m.n_runs > 1 ? std::sqrt(var / (m.n_runs - 1)) : 0.0;

  std::vector<double> aqes, rqes;
  aqes.reserve(energies.size());
  rqes.reserve(energies.size());
  for (double e : energies) {
    aqes.push_back(aqe(e, exact_energy));
    rqes.push_back(rqe(e, exact_energy, neel_energy));
  }
  m.aqe_best = aqe(m.e_best, exact_energy);
  m.rqe_best = rqe(m.e_best, exact_energy, neel_energy);
  m.aqe_avg = 0.0;
  m.rqe_avg = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    m.aqe_avg += aqes[i];
    m.rqe_avg += rqes[i];
  }
  m.aqe_avg /= m.n_runs;
  m.rqe_avg /= m.n_runs;
  m.med = deviation_metric(energies, m.e_best);
  m.maed = deviation_metric(aqes, m.aqe_best);
  m.mred = deviation_metric(rqes, m.rqe_best);
  return m;
}

std::string metrics_csv_header() {
  return "lattice,ansatz,e_avg,e_best,aqe_avg,rqe_avg,aqe_best,rqe_best,"
         "med,maed,mred,e_std,n_runs";
}

std::string metrics_csv_row(const std::string& lattice,
                            const std::string& ansatz,
                            const MetricSummary& m) {
  std::ostringstream os;
  os.precision(10);
  os << lattice << ',' << ansatz << ',' << m.e_avg << ',' << m.e_best << ','
     << m.aqe_avg << ',' << m.rqe_avg << ',' << m.aqe_best << ','
     << m.rqe_best << ',' << m.med << ',' << m.maed << ',' << m.mred << ','
     << m.e_std << ',' << m.n_runs;
  return os.str();
}

}  // namespace mqida
