#include "mqida/layers.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mqida {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    const int ra = find(a), rb = find(b);
    if (ra != rb) parent[static_cast<std::size_t>(ra)] = rb;
  }
  int n_components() {
    std::set<int> roots;
    for (int x = 0; x < static_cast<int>(parent.size()); ++x)
      roots.insert(find(x));
    return static_cast<int>(roots.size());
  }
};

void sort_candidates(std::vector<QubitPair>& cand, const Eigen::MatrixXd& m) {
  std::sort(cand.begin(), cand.end(), [&](const QubitPair& a,
                                          const QubitPair& b) {
    const double va = m(a.first, a.second), vb = m(b.first, b.second);
    if (va != vb) return va > vb;
    return a < b;
  });
}

}  // namespace

void FinesseRatio::validate() const {
  if (ratios.empty())
    throw std::invalid_argument("FinesseRatio: at least one threshold");
  double prev = 1.0 + 1e-12;
  for (double r : ratios) {
    if (!(r > 0.0 && r < prev))
      throw std::invalid_argument(
          "FinesseRatio: thresholds must be strictly decreasing in (0, 1]");
    prev = r;
  }
}

int LayerPlan::total_pairs() const {
  int k = 0;
  for (const auto& l : layers) k += static_cast<int>(l.size());
  return k;
}

std::string LayerPlan::to_text() const {
  std::ostringstream os;
  os << n_qubits << '\n';
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const bool closure = has_closure && li + 1 == layers.size();
    if (closure) os << "* ";
    for (std::size_t k = 0; k < layers[li].size(); ++k) {
      if (k) os << ' ';
      os << layers[li][k].first << '-' << layers[li][k].second;
    }
    os << '\n';
  }
  return os.str();
}

LayerPlan LayerPlan::from_text(const std::string& text) {
  std::istringstream is(text);
  LayerPlan plan;
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("LayerPlan: empty input");
  plan.n_qubits = std::stoi(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<QubitPair> layer;
    bool closure = false;
    while (ls >> tok) {
      if (tok == "*") {
        closure = true;
        continue;
      }
      const auto dash = tok.find('-');
      if (dash == std::string::npos)
        throw std::invalid_argument("LayerPlan: malformed pair '" + tok + "'");
      layer.emplace_back(std::stoi(tok.substr(0, dash)),
                         std::stoi(tok.substr(dash + 1)));
    }
    if (closure) plan.has_closure = true;
    if (!layer.empty()) plan.layers.push_back(std::move(layer));
  }
  plan.validate();
  return plan;
}

void LayerPlan::validate() const {
  if (n_qubits < 2) throw std::invalid_argument("LayerPlan: need >= 2 qubits");
  for (const auto& layer : layers) {
    if (layer.empty())
      throw std::invalid_argument("LayerPlan: empty layer");
    QubitPair prev{-1, -1};
    for (const auto& p : layer) {
      if (p.first < 0 || p.second >= n_qubits || p.first >= p.second)
        throw std::invalid_argument("LayerPlan: pair out of range");
      if (!(prev < p))
        throw std::invalid_argument("LayerPlan: pairs must be sorted");
      prev = p;
    }
  }
}

LayerPlan build_layers(const QmiMatrix& qmi, const FinesseRatio& finesse) {
  finesse.validate();
  const int n = qmi.n_sites;
  const Eigen::MatrixXd m = qmi.normalized().values;

  LayerPlan plan;
  plan.n_qubits = n;
  UnionFind uf(n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  int n_used = 0;

  double hi = 1.0 + 1e-12;
  for (std::size_t bi = 0; bi < finesse.ratios.size(); ++bi) {
    const double lo = finesse.ratios[bi];
    std::vector<QubitPair> cand;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = m(i, j);
        if ((v >= lo && v < hi) || (bi == 0 && v >= lo)) cand.emplace_back(i, j);
      }
    sort_candidates(cand, m);

    // Connectivity snapshot at the start of the band: pairs accepted here
    // see only the components committed by earlier bands.
    std::vector<int> snap(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) snap[static_cast<std::size_t>(x)] = uf.find(x);
    std::vector<QubitPair> layer;
    for (const auto& [i, j] : cand)
      if (snap[static_cast<std::size_t>(i)] !=
          snap[static_cast<std::size_t>(j)])
        layer.push_back({i, j});
    if (!layer.empty()) {
      for (const auto& [i, j] : layer) {
        uf.unite(i, j);
        for (int q : {i, j})
          if (!used[static_cast<std::size_t>(q)]) {
            used[static_cast<std::size_t>(q)] = true;
            ++n_used;
          }
      }
      std::sort(layer.begin(), layer.end());
      plan.layers.push_back(std::move(layer));
    }
    if (n_used == n && uf.n_components() == 1) break;
    hi = lo;
  }
  return plan;
}

LayerPlan single_threshold_qida(const QmiMatrix& qmi, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw std::invalid_argument("single_threshold_qida: threshold in (0, 1]");
  const int n = qmi.n_sites;
  const Eigen::MatrixXd m = qmi.normalized().values;
  std::vector<QubitPair> layer;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m(i, j) >= threshold) layer.emplace_back(i, j);
  LayerPlan plan;
  plan.n_qubits = n;
  if (!layer.empty()) plan.layers.push_back(std::move(layer));
  return plan;
}

void append_closure(LayerPlan& plan) {
  if (plan.has_closure)
    throw std::logic_error("append_closure: plan already closed");
  std::vector<QubitPair> closure;
  for (int q = 0; q + 1 < plan.n_qubits; ++q) closure.emplace_back(q, q + 1);
  plan.layers.push_back(std::move(closure));
  plan.has_closure = true;
}

void merge_layers(LayerPlan& plan, const std::vector<int>& indices) {
  if (indices.size() < 2) return;
  for (std::size_t k = 0; k + 1 < indices.size(); ++k)
    if (indices[k + 1] != indices[k] + 1)
      throw std::invalid_argument("merge_layers: indices must be contiguous");
  const int first = indices.front(), last = indices.back();
  const int limit = plan.n_entangler_layers();
  if (first < 0 || last >= limit)
    throw std::invalid_argument("merge_layers: index out of range");
  std::vector<QubitPair> merged;
  for (int li = first; li <= last; ++li)
    merged.insert(merged.end(),
                  plan.layers[static_cast<std::size_t>(li)].begin(),
                  plan.layers[static_cast<std::size_t>(li)].end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  plan.layers.erase(plan.layers.begin() + first + 1,
                    plan.layers.begin() + last + 1);
  plan.layers[static_cast<std::size_t>(first)] = std::move(merged);
}

}  // namespace mqida
