#pragma once

#include <string>
#include <vector>

namespace mqida {

/// Batch statistics against exact and Néel reference energies.
/// "Best" is the lowest energy; AQE = 100*E/E_exact and RQE rescales
/// between the Néel baseline (0) and the exact energy (100).
struct MetricSummary {
  int n_runs = 0;
  double e_avg = 0.0;
  double e_std = 0.0;
  double e_best = 0.0;
  double aqe_avg = 0.0;
  double aqe_best = 0.0;
  double rqe_avg = 0.0;
  double rqe_best = 0.0;
  double med = 0.0;   // mean |E_i - E_best|
  double maed = 0.0;  // mean |AQE_i - AQE_best|
  double mred = 0.0;  // mean |RQE_i - RQE_best|
};

double aqe(double energy, double exact_energy);
double rqe(double energy, double exact_energy, double neel_energy);

/// Mean absolute deviation from the batch's best value.
double deviation_metric(const std::vector<double>& values, double best);

MetricSummary summarize_runs(const std::vector<double>& energies,
                             double exact_energy, double neel_energy);

/// CSV in the order: lattice, ansatz, E_avg, E_best, AQE_avg, RQE_avg,
/// AQE_best, RQE_best, MED, MAED, MRED (E_std appended last).
std::string metrics_csv_header();
std::string metrics_csv_row(const std::string& lattice,
                            const std::string& ansatz,
                            const MetricSummary& m);

}  // namespace mqida
