// Small arithmetic expression parser used by the JSON case configuration:
// +, -, *, /, ^, sin, cos, exp, sqrt, atan2, the constant pi and the
// variables x, y, z, r (= sqrt(x^2+y^2)) and theta (= atan2(y, x)).
#pragma once

#include <memory>
#include <string>

#include "wg/mesh.hpp"

namespace wg {

class Expr {
 public:
  static Expr parse(const std::string& text);
  double operator()(const Vec3& p) const;
  bool valid() const { return root_ != nullptr; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
};

}  // namespace wg
