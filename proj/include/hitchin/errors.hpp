#pragma once
#include <stdexcept>
#include <string>

namespace hitchin {

struct NonConvergence : std::runtime_error {
  double last_residual;
  NonConvergence(const std::string& what, double res)
      : std::runtime_error(what), last_residual(res) {}
};

}  // namespace hitchin
