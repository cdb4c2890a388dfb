#include "haarq/known_points.hpp"

#include <cmath>

namespace haarq {

DualPoint identity1_dual_point() {
  DualPoint p;
  p.W = SymMatrix(2);
  p.W.set(0, 1, 0.5);
  p.omega = {0.5, 0.5};
  return p;
}

DualPoint nand2_dual_point() {
  // domain order 00, 01, 10, 11 (integers 0..3)
  DualPoint p;
  p.W = SymMatrix(4);
  const double w = 1.0 / (2.0 * std::sqrt(2.0));
  p.W.set(1, 3, w);
  p.W.set(2, 3, w);
  p.omega = {0.0, 0.25, 0.25, 0.5};
  return p;
}

PartialBoolFn nand2_partial() { return PartialBoolFn::nand2().restricted({0, 1, 2}); }

DualPoint nand2_partial_dual_point() {
  DualPoint p;
  p.W = SymMatrix(3);
  p.omega = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  return p;
}

}  // namespace haarq
