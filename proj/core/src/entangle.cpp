#include "qcournot/entangle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcournot {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw std::domain_error(std::string(name) + " must be finite");
  }
}

}  // namespace

EntangleParams::EntangleParams(double gamma1, double gamma2, double gamma12)
    : gamma1_(gamma1), gamma2_(gamma2), gamma12_(gamma12) {
  require_finite(gamma1, "gamma1");
  require_finite(gamma2, "gamma2");
  require_finite(gamma12, "gamma12");
  if (gamma12 < 0.0) {
    throw std::domain_error("gamma12 must be >= 0");
  }
}

EntangleParams EntangleParams::from_dgamma(double gamma12, double dgamma,
                                           DgammaSplit split) {
  require_finite(dgamma, "dgamma");
  switch (split) {
    case DgammaSplit::symmetric:
      return EntangleParams(dgamma / 2.0, -dgamma / 2.0, gamma12);
    case DgammaSplit::player1:
      return EntangleParams(dgamma, 0.0, gamma12);
    case DgammaSplit::player2:
      return EntangleParams(0.0, -dgamma, gamma12);
  }
  throw std::invalid_argument("unknown dgamma split");
}

}  // namespace qcournot
