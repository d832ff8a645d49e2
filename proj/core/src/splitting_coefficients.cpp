// Symmetric RKN splitting coefficient sets, BAB form. Values are the
// published double-precision constants for the 6-stage order-4 and
// 11-stage order-6 methods; the trailing entries are completed by the
// palindrome symmetry and the sum conditions so each family sums to 1
// exactly. Empirical order is pinned by the test suite.

#include "manybeam/proposed.hpp"

namespace manybeam {

namespace {

StepperSpec make_sp4() {
  const double b1 = 0.0829844064174052;
  const double b2 = 0.396309801498368;
  const double b3 = -0.0390563049223486;
  const double b4 = 1.0 - 2.0 * (b1 + b2 + b3);
  const double a1 = 0.245298957184271;
  const double a2 = 0.604872665711080;
  const double a3 = 0.5 - (a1 + a2);
  StepperSpec s;
  s.algorithm = StepAlgorithm::Splitting;
  s.name = "sp4";
  s.variant = SplitVariant::BAB;
  s.drift = {a1, a2, a3, a3, a2, a1};
  s.kick = {b1, b2, b3, b4, b3, b2, b1};
  s.validate();
  return s;
}

StepperSpec make_sp6() {
  const double b1 = 0.0414649985182624;
  const double b2 = 0.198128671918067;
  const double b3 = -0.0400061921041533;
  const double b4 = 0.0752539843015807;
  const double b5 = -0.0115113874206879;
  const double b6 = 0.5 - (b1 + b2 + b3 + b4 + b5);
  const double a1 = 0.123229775946271;
  const double a2 = 0.290553797799558;
  const double a3 = -0.127049212625417;
  const double a4 = -0.246331761062075;
  const double a5 = 0.357208872795928;
  const double a6 = 1.0 - 2.0 * (a1 + a2 + a3 + a4 + a5);
  StepperSpec s;
  s.algorithm = StepAlgorithm::Splitting;
  s.name = "sp6";
  s.variant = SplitVariant::BAB;
  s.drift = {a1, a2, a3, a4, a5, a6, a5, a4, a3, a2, a1};
  s.kick = {b1, b2, b3, b4, b5, b6, b6, b5, b4, b3, b2, b1};
  s.validate();
  return s;
}

StepperSpec make_rk4() {
  StepperSpec s;
  s.algorithm = StepAlgorithm::RK4;
  s.name = "rk4";
  s.validate();
  return s;
}

}  // namespace

const StepperSpec& StepperSpec::rk4() {
  static const StepperSpec s = make_rk4();
  return s;
}

const StepperSpec& StepperSpec::sp4() {
  static const StepperSpec s = make_sp4();
  return s;
}

const StepperSpec& StepperSpec::sp6() {
  static const StepperSpec s = make_sp6();
  return s;
}

}  // namespace manybeam
