#pragma once

namespace qcournot {

// How a gamma1 - gamma2 difference is distributed over the two players
// when only the difference is prescribed.
enum class DgammaSplit {
  symmetric,  // gamma1 = +dgamma/2, gamma2 = -dgamma/2
  player1,    // gamma1 = dgamma,    gamma2 = 0
  player2,    // gamma1 = 0,         gamma2 = -dgamma
};

// Squeezing parameters of the entangling stage: one single-mode parameter
// per player (either sign) and a joint two-mode parameter gamma12 >= 0.
// Only the difference dgamma = gamma1 - gamma2 and gamma12 affect
// entanglement and equilibrium payoffs; the sum fixes the strategy scale.
class EntangleParams {
 public:
  // Requires finite inputs and gamma12 >= 0.
  EntangleParams(double gamma1, double gamma2, double gamma12);

  static EntangleParams from_dgamma(double gamma12, double dgamma,
                                    DgammaSplit split = DgammaSplit::symmetric);

  double gamma1() const noexcept { return gamma1_; }
  double gamma2() const noexcept { return gamma2_; }
  double gamma12() const noexcept { return gamma12_; }
  double dgamma() const noexcept { return gamma1_ - gamma2_; }

 private:
  double gamma1_;
  double gamma2_;
  double gamma12_;
};

// One move per player: the magnitude of the momentum-generated displacement
// each applies to their own mode. Nonnegative by convention; the quantity
// each firm ends up producing is a linear image of both components.
struct StrategyProfile {
  double x1 = 0.0;
  double x2 = 0.0;
};

}  // namespace qcournot
