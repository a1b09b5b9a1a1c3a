#include "demo_fixture.hpp"

#include <cmath>

namespace ddfdi::demo {

using Eigen::MatrixXd;

lti::SystemRealization demo_plant() {
  MatrixXd A(5, 5);
  A << 0.8, 0, 0, 0, 0,
      -0.8, 0, 0, 0, 0,
      -1, 0, -1.2, -0.5, -1.3,
      2, -0.6, 2.6, 1, 2.3,
      0.8, -0.9, 0.6, 0.1, 0;
  MatrixXd B(5, 1);
  B << 1, 0, 0, 0, 0;
  MatrixXd E(5, 2);
  E << 0, 0,
      0, 0,
      1, 1,
      0, 1,
      0, 0;
  MatrixXd C(3, 5);
  C << 1, 0, 0, 0, 0,
      0, 0, 1, -2, 0,
      -1, 0, 0, 1, 0;
  return lti::SystemRealization::create(std::move(A), std::move(B), std::move(C), std::move(E));
}

lti::UioMatrices demo_reference_uio() {
  MatrixXd A_uio(5, 5);
  A_uio << 0, 0, 0, 0, 0,
      -0.8, 0, 0, 0, 0,
      0.8, 0, 0, 0, 0,
      -1.6, 0, 0, 0, 0,
      0.8, -0.9, 0.6, 0.1, 0;
  MatrixXd B_u(5, 1);
  B_u << 1, 0, 1, -2, 0;
  MatrixXd B_y(5, 3);
  B_y << 0.8, 0, 0,
      0, 0, 0,
      0, 0, 0,
      0, 0, 0,
      0.9, 0.6, 1.3;
  MatrixXd D_uio(5, 3);
  D_uio << 0, 0, 0,
      0, 0, 0,
      1, 1, 2,
      3, 0, 1,
      0, 0, 0;
  MatrixXd C(3, 5);
  C << 1, 0, 0, 0, 0,
      0, 0, 1, -2, 0,
      -1, 0, 0, 1, 0;
  return lti::UioMatrices::create(std::move(A_uio), std::move(B_u), std::move(B_y),
                                  std::move(D_uio), std::move(C));
}

double fault_exp_max(int k, int k_f) {
  if (k < k_f) return 0.0;
  return std::max(0.1 + std::exp(-10.0 / (k - k_f + 1)), 0.9);
}

double fault_exp_min(int k, int k_f) {
  if (k < k_f) return 0.0;
  return std::min(0.1 + std::exp(-10.0 / (k - k_f + 1)), 0.9);
}

double fault_step(int k, int k_f, double amplitude) { return k < k_f ? 0.0 : amplitude; }

double demo_input(int k) { return 0.9 * std::sin(0.4 * k + 3.0); }

const std::vector<Scenario>& demo_scenarios() {
  static const std::vector<Scenario> scenarios = {
      {"a", 3, 10, "identification starts at the settling index, fault strikes later"},
      {"b", 3, 1, "fault strikes before the estimation error has settled"},
      {"c", 1, 10, "identification starts before the estimation error has settled"},
      {"d", 20, 5, "identification starts long after the fault"},
  };
  return scenarios;
}

}  // namespace ddfdi::demo
