#include "mqida/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mqida {

std::string AnsatzRequest::name() const {
  switch (kind) {
    case Kind::QidaCx: return "qida_cx";
    case Kind::QidaSo4: return "qida_so4";
    case Kind::Ladder: return "ladder_d" + std::to_string(depth);
  }
  return "?";
}

AnsatzRequest AnsatzRequest::parse(const std::string& text) {
  AnsatzRequest r;
  if (text == "qida_cx") {
    r.kind = Kind::QidaCx;
  } else if (text == "qida_so4") {
    r.kind = Kind::QidaSo4;
  } else if (text.rfind("ladder_d", 0) == 0) {
    r.kind = Kind::Ladder;
    r.depth = std::stoi(text.substr(8));
    if (r.depth < 1)
      throw std::invalid_argument("ansatz: ladder depth must be >= 1");
  } else {
    throw std::invalid_argument("ansatz: unknown kind '" + text + "'");
  }
  return r;
}

std::vector<double> ExperimentConfig::finesse_thresholds() const {
  if (!finesse.empty()) return finesse;
  std::vector<double> out;
  for (int k = 0; k < finesse_count; ++k) {
    const double t = finesse_start - k * finesse_step;
    // round to 12 places to avoid drift from repeated subtraction
    out.push_back(std::round(t * 1e12) / 1e12);
  }
  return out;
}

void ExperimentConfig::validate() const {
  lattice.validate();
  if (backend != "exact" && backend != "dmrg")
    throw std::invalid_argument("config: backend must be exact or dmrg");
  if (initial_state != "zero" && initial_state != "neel")
    throw std::invalid_argument("config: initial_state must be zero or neel");
  if (ansatze.empty())
    throw std::invalid_argument("config: at least one ansatz kind");
  if (n_runs < 1) throw std::invalid_argument("config: n_runs >= 1");
  if (threads < 1) throw std::invalid_argument("config: threads >= 1");
  if (dmrg_chi < 1 || dmrg_sweeps < 1)
    throw std::invalid_argument("config: dmrg parameters must be positive");
  if (qmi_pinning_eps < 0)
    throw std::invalid_argument("config: pinning strength must be >= 0");
  const auto thresholds = finesse_thresholds();
  if (thresholds.empty())
    throw std::invalid_argument("config: empty finesse-ratio list");
  double prev = 1.0 + 1e-12;
  for (double t : thresholds) {
    if (!(t > 0.0 && t < prev))
      throw std::invalid_argument(
          "config: finesse thresholds must be strictly decreasing in (0, 1]");
    prev = t;
  }
}

ExperimentConfig parse_config_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: bad JSON: ") + e.what());
  }
  ExperimentConfig c;
  c.name = j.value("name", std::string("experiment"));

  const auto& l = j.at("lattice");
  c.lattice.rows = l.at("rows").get<int>();
  c.lattice.cols = l.at("cols").get<int>();
  c.lattice.coupling_j = l.value("j", 1.0);
  c.lattice.field_h = l.value("h", 0.0);
  c.lattice.anisotropy = l.value("anisotropy", 1.0);

  c.backend = j.value("backend", std::string("exact"));
  if (j.contains("dmrg")) {
    c.dmrg_chi = j["dmrg"].value("chi", 64);
    c.dmrg_sweeps = j["dmrg"].value("sweeps", 12);
  }
  if (j.contains("finesse")) {
    const auto& f = j["finesse"];
    if (f.is_array()) {
      c.finesse = f.get<std::vector<double>>();
    } else {
      c.finesse_start = f.value("start", 0.9);
      c.finesse_step = f.value("step", 0.1);
      c.finesse_count = f.value("count", 9);
    }
  }
  if (j.contains("ansatze"))
    for (const auto& a : j["ansatze"])
      c.ansatze.push_back(AnsatzRequest::parse(a.get<std::string>()));
  c.n_runs = j.value("n_runs", 10);
  c.base_seed = j.value("base_seed", std::uint64_t{1});
  if (j.contains("optimizer")) {
    c.optimizer.grad_tol = j["optimizer"].value("grad_tol", 1e-6);
    c.optimizer.max_iters = j["optimizer"].value("max_iters", 10000);
  }
  c.initial_state = j.value("initial_state", std::string("zero"));
  c.out_dir = j.value("out_dir", std::string("out"));
  c.threads = j.value("threads", 1);
  if (j.contains("layer_merges"))
    c.layer_merges = j["layer_merges"].get<std::vector<std::vector<int>>>();
  c.qmi_pinning_eps = j.value("qmi_pinning_eps", 0.0);

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_json(os.str());
}

}  // namespace mqida
