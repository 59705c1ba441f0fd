#pragma once

#include <cstddef>

#include "cmatrix.hpp"
#include "scenarios.hpp"

namespace qbell {

// Validated qubit/qutrit state. Construction enforces Hermiticity and unit
// trace within 1e-12 and eigenvalues >= -1e-10.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigenFloor = -1e-10;

  explicit DensityMatrix(CMatrix m);

  const CMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }

 private:
  CMatrix m_;
};

// Dimensionless gamma*time products for the two CHSH flight intervals:
// emission -> first measurement (applied to both qubits), then first ->
// second measurement. The conditional probabilities depend only on the
// combination 2*gamma_dt1 + gamma_dt2.
struct ChshTimeline {
  double gamma_dt1;
  double gamma_dt2;

  // The fixed reference split gamma_dt1 = gamma_dt2 = kappa*theta/9.
  static ChshTimeline even_split(double theta, double kappa);
};

enum class LgSystem { SpinHalf, SpinOne };
enum class LgChannel { Dephasing, Depolarizing };

// Phase damping E_0 rho E_0 + E_1 rho E_1 on a qubit: off-diagonal elements
// shrink by sqrt(1 - lambda), diagonal unchanged. lambda in [0, 1].
DensityMatrix apply_phase_damping(const DensityMatrix& rho, double lambda);

// Depolarizing channel on a qubit: Bloch vector scaled by 1 - 4*mu/3.
// mu in [0, 3/4].
DensityMatrix apply_depolarizing(const DensityMatrix& rho, double mu);

// Dephasing of a qutrit in the interaction picture: integrates
// d(rho)/ds = 2 N rho N - N^2 rho - rho N^2 with N = diag(-1, 0, +1) over
// s in [0, gamma_t] with a fixed-step 4th-order Runge-Kutta scheme.
DensityMatrix integrate_qutrit_dephasing(const DensityMatrix& rho,
                                         double gamma_t,
                                         double step = 0.002);

// Two-qubit density-matrix simulation of the CHSH run: singlet preparation,
// independent phase damping over interval 1, projective measurement on
// qubit A, phase damping over interval 2, measurement of the partner
// observable (at angle theta or theta/3 by role). The timeline must satisfy
// 2*gamma_dt1 + gamma_dt2 = kappa*theta/3.
ConditionalMatrix chsh_conditional_oracle(double theta, double kappa,
                                          PairRole role,
                                          const ChshTimeline& timeline);

// Leggett-Garg simulation: completely mixed preparation, measurement of the
// interaction-picture x-spin projector, channel evolution over the interval
// (x1 adjacent, x2 end-to-end), second measurement. Spin-1 supports only
// dephasing.
ConditionalMatrix lg_conditional_oracle(LgSystem system, LgChannel channel,
                                        double theta, double kappa,
                                        int interval_multiplier,
                                        double lindblad_step = 0.002);

// Max |closed form - oracle| over a theta x kappa grid covering every pair
// role of the scenario. theta spans [0.01, pi], kappa spans [0, kappa_max].
double oracle_max_deviation(Scenario scenario, std::size_t theta_steps = 20,
                            std::size_t kappa_steps = 10,
                            double kappa_max = 2.0);

// Agreement tolerance: 1e-10 for the exact Kraus-map (qubit) scenarios,
// 1e-8 for the Lindblad-integrated qutrit.
double oracle_tolerance(Scenario scenario);

}  // namespace qbell
