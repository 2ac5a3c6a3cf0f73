#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mqida/exact.hpp"
#include "mqida/lattice.hpp"
#include "mqida/layers.hpp"

using namespace mqida;

namespace {

QmiMatrix matrix_from(int n, const std::vector<std::tuple<int, int, double>>&
                              entries) {
  QmiMatrix q;
  q.n_sites = n;
  q.values = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j, v] : entries) q.values(i, j) = q.values(j, i) = v;
  return q;
}

}  // namespace

TEST_CASE("finesse validation") {
  const FinesseRatio good{{0.9, 0.8, 0.5}};
  CHECK_NOTHROW(good.validate());
  const FinesseRatio empty{};
  const FinesseRatio repeated{{0.5, 0.5}};
  const FinesseRatio rising{{0.5, 0.8}};
  const FinesseRatio above_one{{1.2}};
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
  CHECK_THROWS_AS(repeated.validate(), std::invalid_argument);
  CHECK_THROWS_AS(rising.validate(), std::invalid_argument);
  CHECK_THROWS_AS(above_one.validate(), std::invalid_argument);
}

TEST_CASE("first band is inclusive of 1.0") {
  // Two pairs at the maximum must both land in layer 1.
  const QmiMatrix q = matrix_from(
      4, {{0, 1, 1.0}, {2, 3, 1.0}, {1, 2, 0.45}});
  const LayerPlan plan = build_layers(q, FinesseRatio{{0.9, 0.4}});
  REQUIRE(plan.layers.size() == 2);
  const std::vector<QubitPair> l1{{0, 1}, {2, 3}};
  CHECK(plan.layers[0] == l1);
  const std::vector<QubitPair> l2{{1, 2}};
  CHECK(plan.layers[1] == l2);
}

TEST_CASE("snapshot-commit: pairs in one band ignore each other's merges") {
  // Both (0,1) and (1,2) fall in band one; with immediate commits the second
  // would be rejected once 0-1-2 merge, so snapshot semantics must keep both.
  const QmiMatrix q = matrix_from(3, {{0, 1, 1.0}, {1, 2, 0.95}});
  const LayerPlan plan = build_layers(q, FinesseRatio{{0.9}});
  REQUIRE(plan.layers.size() == 1);
  CHECK(plan.layers[0].size() == 2);
}

TEST_CASE("snapshot-commit regression on the 3x4 ground state") {
  const PauliHamiltonian h = build_heisenberg(LatticeSpec{3, 4});
  const QmiMatrix q = qmi_matrix(exact_ground_state(h).state);
  FinesseRatio finesse;
  for (int k = 0; k < 9; ++k) finesse.ratios.push_back(0.9 - 0.1 * k);
  const LayerPlan plan = build_layers(q, finesse);
  REQUIRE(plan.layers.size() == 4);
  const auto& l3 = plan.layers[2];
  const bool has_45 =
      std::find(l3.begin(), l3.end(), QubitPair{4, 5}) != l3.end();
  const bool has_59 =
      std::find(l3.begin(), l3.end(), QubitPair{5, 9}) != l3.end();
  CHECK(has_45);
  CHECK(has_59);
}

TEST_CASE("building stops once covered and connected") {
  // Everything already connects in band one; later bands add no layers.
  const QmiMatrix q = matrix_from(
      3, {{0, 1, 1.0}, {1, 2, 0.98}, {0, 2, 0.5}});
  const LayerPlan plan = build_layers(q, FinesseRatio{{0.9, 0.4, 0.1}});
  CHECK(plan.layers.size() == 1);
}

TEST_CASE("empty bands produce no layers") {
  const QmiMatrix q = matrix_from(3, {{0, 1, 1.0}, {1, 2, 0.3}});
  const LayerPlan plan = build_layers(q, FinesseRatio{{0.9, 0.6, 0.25}});
  REQUIRE(plan.layers.size() == 2);
  CHECK(plan.layers[0].size() == 1);
  CHECK(plan.layers[1].size() == 1);
}

TEST_CASE("single threshold variant") {
  const QmiMatrix q = matrix_from(
      3, {{0, 1, 1.0}, {1, 2, 0.7}, {0, 2, 0.2}});
  const LayerPlan plan = single_threshold_qida(q, 0.5);
  REQUIRE(plan.layers.size() == 1);
  CHECK(plan.layers[0].size() == 2);
}

TEST_CASE("closure and merges") {
  LayerPlan plan;
  plan.n_qubits = 4;
  plan.layers = {{{0, 1}}, {{2, 3}}, {{1, 2}}};
  merge_layers(plan, {0, 1});
  REQUIRE(plan.layers.size() == 2);
  const std::vector<QubitPair> merged{{0, 1}, {2, 3}};
  CHECK(plan.layers[0] == merged);
  append_closure(plan);
  CHECK(plan.has_closure);
  CHECK(plan.layers.back().size() == 3);
  CHECK_THROWS_AS(append_closure(plan), std::logic_error);
  CHECK_THROWS_AS(merge_layers(plan, {0, 2}), std::invalid_argument);
}

TEST_CASE("text round trip is canonical") {
  LayerPlan plan;
  plan.n_qubits = 5;
  plan.layers = {{{0, 1}, {2, 4}}, {{1, 2}}};
  append_closure(plan);
  const std::string text = plan.to_text();
  const LayerPlan back = LayerPlan::from_text(text);
  CHECK(back.n_qubits == plan.n_qubits);
  CHECK(back.layers == plan.layers);
  CHECK(back.has_closure);
  CHECK(back.to_text() == text);
  CHECK_THROWS(LayerPlan::from_text("4\n0-1 junk\n"));
}

TEST_CASE("golden plan files parse and validate") {
  for (const char* name :
       {"layers_3x3_iso.txt", "layers_3x4_iso.txt", "layers_2x6_iso.txt",
        "layers_3x4_h2.txt", "layers_3x4_aniso067.txt",
        "layers_3x4_aniso01.txt"}) {
    std::ifstream in(std::string(GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    const LayerPlan plan = LayerPlan::from_text(os.str());
    CHECK(plan.has_closure);
    CHECK(plan.to_text() == os.str());
  }
}
