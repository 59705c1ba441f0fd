#include "oracle.hpp"

#include <cmath>
#include <numbers>

namespace qbell {

namespace {

using cd = std::complex<double>;

// Pauli matrices.
CMatrix pauli_x() {
  CMatrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2);
  m(0, 1) = cd(0.0, -1.0);
  m(1, 0) = cd(0.0, 1.0);
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

// Projector onto the m = +/-1 eigenstate of the equatorial spin direction
// (cos a, sin a, 0) . sigma.
CMatrix equatorial_projector(int m, double angle) {
  CMatrix n = pauli_x() * cd(std::cos(angle)) + pauli_y() * cd(std::sin(angle));
  return (CMatrix::identity(2) + n * cd(m)) * cd(0.5);
}

void phase_damping_kraus(double lambda, CMatrix& e0, CMatrix& e1) {
  e0 = CMatrix(2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - lambda);
  e1 = CMatrix(2);
  e1(1, 1) = std::sqrt(lambda);
}

// Independent phase damping on both qubits of a 4x4 state.
CMatrix two_qubit_phase_damping(const CMatrix& rho, double lambda) {
  CMatrix e0(2), e1(2);
  phase_damping_kraus(lambda, e0, e1);
  const CMatrix* ops[2] = {&e0, &e1};
  CMatrix out(4);
  for (const CMatrix* ka : ops)
    for (const CMatrix* kb : ops) {
      const CMatrix k = kron(*ka, *kb);
      out += k * rho * k.adjoint();
    }
  return out;
}

CMatrix singlet_state() {
  // (|01> - |10>)/sqrt(2) in the z basis.
  std::array<cd, 4> v{0.0, 1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2,
                      0.0};
  return outer(v);
}

// Interaction-picture projector onto the x-spin eigenstate m at time t,
// Pi_m(t) = U(t)^dag |x_m><x_m| U(t), for the qubit Hamiltonian
// H = -(hbar omega / 2) sigma_z, U(t) = exp(+i (omega t / 2) sigma_z).
CMatrix spin_half_x_projector(int m, double omega_t) {
  CMatrix u(2);
  u(0, 0) = std::exp(cd(0.0, +omega_t / 2.0));
  u(1, 1) = std::exp(cd(0.0, -omega_t / 2.0));
  std::array<cd, 2> xm{1.0 / std::numbers::sqrt2, m / std::numbers::sqrt2};
  return u.adjoint() * outer(xm) * u;
}

// Spin-1 x-component eigenvectors in the z basis (+1, 0, -1 ordering).
std::array<cd, 3> spin_one_x_vector(int m) {
  const double s = 1.0 / std::numbers::sqrt2;
  switch (m) {
    case +1: return {0.5, s, 0.5};
    case 0: return {s, 0.0, -s};
    default: return {0.5, -s, 0.5};
  }
}

// Pi_m(t) for the qutrit Hamiltonian H = -hbar omega diag(+1, 0, -1),
// U(t) = diag(e^{i omega t}, 1, e^{-i omega t}).
CMatrix spin_one_x_projector(int m, double omega_t) {
  CMatrix u(3);
  u(0, 0) = std::exp(cd(0.0, +omega_t));
  u(1, 1) = 1.0;
  u(2, 2) = std::exp(cd(0.0, -omega_t));
  return u.adjoint() * outer(spin_one_x_vector(m)) * u;
}

// Dephasing generator for the qutrit number operator N = diag(-1, 0, +1):
// L[rho] = 2 N rho N - N^2 rho - rho N^2, in gamma*t units.
CMatrix qutrit_dephasing_generator(const CMatrix& rho) {
  CMatrix n(3);
  n(0, 0) = -1.0;
  n(2, 2) = 1.0;
  const CMatrix n2 = n * n;
  return n * rho * n * cd(2.0) - n2 * rho - rho * n2;
}

CMatrix integrate_qutrit(CMatrix rho, double gamma_t, double step) {
  if (gamma_t <= 0.0) return rho;
  const auto nsteps =
      static_cast<std::size_t>(std::ceil(gamma_t / step));
  const double h = gamma_t / static_cast<double>(nsteps);
  for (std::size_t i = 0; i < nsteps; ++i) {
    const CMatrix k1 = qutrit_dephasing_generator(rho);
    const CMatrix k2 = qutrit_dephasing_generator(rho + k1 * cd(h / 2.0));
    const CMatrix k3 = qutrit_dephasing_generator(rho + k2 * cd(h / 2.0));
    const CMatrix k4 = qutrit_dephasing_generator(rho + k3 * cd(h));
    rho += (k1 + k2 * cd(2.0) + k3 * cd(2.0) + k4) * cd(h / 6.0);
  }
  return rho;
}

void check_theta_kappa(double theta, double kappa) {
  if (!std::isfinite(theta) || theta <= 0.0)
    throw ValidationError("oracle: theta must be positive and finite");
  if (!std::isfinite(kappa) || kappa < 0.0)
    throw ValidationError("oracle: kappa must be nonnegative and finite");
}

double max_abs_diff(const ConditionalMatrix& a, const ConditionalMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix m) : m_(m) {
  if (m_.dim() != 2 && m_.dim() != 3)
    throw ValidationError("density matrix: dimension must be 2 or 3");
  if (m_.max_hermiticity_defect() > kHermitianTol)
    throw ValidationError("density matrix: not Hermitian within 1e-12");
  const cd tr = m_.trace();
  if (std::abs(tr - cd(1.0)) > kTraceTol)
    throw ValidationError("density matrix: trace differs from 1 beyond 1e-12");
  if (m_.hermitian_eigenvalues().front() < kEigenFloor)
    throw ValidationError("density matrix: negative eigenvalue beyond -1e-10");
}

ChshTimeline ChshTimeline::even_split(double theta, double kappa) {
  const double part = kappa * theta / 9.0;
  return ChshTimeline{part, part};
}

DensityMatrix apply_phase_damping(const DensityMatrix& rho, double lambda) {
  if (rho.dim() != 2)
    throw UsageError("phase damping channel: expected a qubit state");
  if (!std::isfinite(lambda) || lambda < 0.0 || lambda > 1.0)
    throw ValidationError("phase damping channel: lambda must lie in [0, 1]");
  CMatrix e0(2), e1(2);
  phase_damping_kraus(lambda, e0, e1);
  return DensityMatrix(e0 * rho.matrix() * e0.adjoint() +
                       e1 * rho.matrix() * e1.adjoint());
}

DensityMatrix apply_depolarizing(const DensityMatrix& rho, double mu) {
  if (rho.dim() != 2)
    throw UsageError("depolarizing channel: expected a qubit state");
  if (!std::isfinite(mu) || mu < 0.0 || mu > 0.75)
    throw ValidationError("depolarizing channel: mu must lie in [0, 3/4]");
  const CMatrix& r = rho.matrix();
  CMatrix out = r * cd(1.0 - mu);
  const CMatrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  for (const CMatrix& s : paulis) out += s * r * s * cd(mu / 3.0);
  return DensityMatrix(out);
}

DensityMatrix integrate_qutrit_dephasing(const DensityMatrix& rho,
                                         double gamma_t, double step) {
  if (rho.dim() != 3)
    throw UsageError("qutrit dephasing: expected a qutrit state");
  if (!std::isfinite(gamma_t) || gamma_t < 0.0)
    throw ValidationError("qutrit dephasing: gamma_t must be nonnegative");
  if (!(step > 0.0))
    throw ValidationError("qutrit dephasing: step must be positive");
  return DensityMatrix(integrate_qutrit(rho.matrix(), gamma_t, step));
}

ConditionalMatrix chsh_conditional_oracle(double theta, double kappa,
                                          PairRole role,
                                          const ChshTimeline& timeline) {
  check_theta_kappa(theta, kappa);
  if (role != PairRole::ChshAB && role != PairRole::ChshSmallAngle)
    throw UsageError("chsh oracle: role must be a CHSH pair role");
  if (timeline.gamma_dt1 < 0.0 || timeline.gamma_dt2 < 0.0)
    throw ValidationError("chsh oracle: timeline parts must be nonnegative");
  const double target = kappa * theta / 3.0;
  const double combo = 2.0 * timeline.gamma_dt1 + timeline.gamma_dt2;
  if (std::abs(combo - target) > 1e-9 * (1.0 + target))
    throw ValidationError(
        "chsh oracle: timeline violates 2*gamma_dt1 + gamma_dt2 = kappa*theta/3");

  const double angle = role == PairRole::ChshAB ? theta : theta / 3.0;
  const double lam1 = 1.0 - std::exp(-2.0 * timeline.gamma_dt1);
  const double lam2 = 1.0 - std::exp(-2.0 * timeline.gamma_dt2);

  const CMatrix joint = two_qubit_phase_damping(singlet_state(), lam1);

  const int labels[2] = {+1, -1};
  std::array<double, 9> cells{};
  for (std::size_t i = 0; i < 2; ++i) {
    const CMatrix pa = kron(equatorial_projector(labels[i], 0.0),
                            CMatrix::identity(2));
    CMatrix post = pa * joint * pa;
    const double pm = post.trace().real();
    post *= cd(1.0 / pm);
    post = two_qubit_phase_damping(post, lam2);
    const CMatrix rho_b = partial_trace_first(post);
    for (std::size_t j = 0; j < 2; ++j) {
      const CMatrix pb = equatorial_projector(labels[j], angle);
      cells[i * 2 + j] = (pb * rho_b).trace().real();
    }
  }
  return ConditionalMatrix(2, cells);
}

ConditionalMatrix lg_conditional_oracle(LgSystem system, LgChannel channel,
                                        double theta, double kappa,
                                        int interval_multiplier,
                                        double lindblad_step) {
  check_theta_kappa(theta, kappa);
  if (interval_multiplier != 1 && interval_multiplier != 2)
    throw UsageError("lg oracle: interval multiplier must be 1 or 2");
  if (system == LgSystem::SpinOne && channel == LgChannel::Depolarizing)
    throw UsageError("lg oracle: spin-1 supports only the dephasing channel");

  const double omega_dt = interval_multiplier * theta;  // omega * interval
  const double gamma_dt = kappa * omega_dt;             // gamma * interval

  if (system == LgSystem::SpinHalf) {
    const int labels[2] = {+1, -1};
    std::array<double, 9> cells{};
    const DensityMatrix mixed(CMatrix::identity(2) * cd(0.5));
    for (std::size_t i = 0; i < 2; ++i) {
      const CMatrix pi_m = spin_half_x_projector(labels[i], 0.0);
      CMatrix post = pi_m * mixed.matrix() * pi_m;
      const double pm = post.trace().real();
      post *= cd(1.0 / pm);
      DensityMatrix evolved =
          channel == LgChannel::Dephasing
              ? apply_phase_damping(DensityMatrix(post),
                                    1.0 - std::exp(-2.0 * gamma_dt))
              : apply_depolarizing(DensityMatrix(post),
                                   0.75 * (1.0 - std::exp(-4.0 * gamma_dt)));
      for (std::size_t j = 0; j < 2; ++j) {
        const CMatrix pi_mp = spin_half_x_projector(labels[j], omega_dt);
        cells[i * 2 + j] = (pi_mp * evolved.matrix()).trace().real();
      }
    }
    return ConditionalMatrix(2, cells);
  }

  const int labels[3] = {+1, 0, -1};
  std::array<double, 9> cells{};
  const DensityMatrix mixed(CMatrix::identity(3) * cd(1.0 / 3.0));
  for (std::size_t i = 0; i < 3; ++i) {
    const CMatrix pi_m = spin_one_x_projector(labels[i], 0.0);
    CMatrix post = pi_m * mixed.matrix() * pi_m;
    const double pm = post.trace().real();
    post *= cd(1.0 / pm);
    const DensityMatrix evolved = integrate_qutrit_dephasing(
        DensityMatrix(post), gamma_dt, lindblad_step);
    for (std::size_t j = 0; j < 3; ++j) {
      const CMatrix pi_mp = spin_one_x_projector(labels[j], omega_dt);
      cells[i * 3 + j] = (pi_mp * evolved.matrix()).trace().real();
    }
  }
  return ConditionalMatrix(3, cells);
}

double oracle_max_deviation(Scenario scenario, std::size_t theta_steps,
                            std::size_t kappa_steps, double kappa_max) {
  if (theta_steps < 2 || kappa_steps < 2)
    throw ValidationError("oracle grid: need at least 2 steps per axis");
  if (!(kappa_max > 0.0))
    throw ValidationError("oracle grid: kappa_max must be positive");

  const double theta_min = 0.01;
  const double theta_max = std::numbers::pi;
  double worst = 0.0;
  for (std::size_t i = 0; i < theta_steps; ++i) {
    const double theta = theta_min + (theta_max - theta_min) * i /
                                         static_cast<double>(theta_steps - 1);
    for (std::size_t j = 0; j < kappa_steps; ++j) {
      const double kappa =
          kappa_max * j / static_cast<double>(kappa_steps - 1);
      const ScenarioSpec spec(scenario, theta, kappa);
      if (scenario == Scenario::ChshDephasing) {
        const ChshTimeline tl = ChshTimeline::even_split(theta, kappa);
        for (PairRole role : {PairRole::ChshAB, PairRole::ChshSmallAngle}) {
          worst = std::max(
              worst, max_abs_diff(pair_conditional(spec, role),
                                  chsh_conditional_oracle(theta, kappa, role, tl)));
        }
      } else {
        const LgSystem system = scenario == Scenario::LgSpinOneDephasing
                                    ? LgSystem::SpinOne
                                    : LgSystem::SpinHalf;
        const LgChannel channel =
            scenario == Scenario::LgSpinHalfDepolarizing
                ? LgChannel::Depolarizing
                : LgChannel::Dephasing;
        for (int mult : {1, 2}) {
          const PairRole role =
              mult == 1 ? PairRole::LgAdjacent : PairRole::LgEndToEnd;
          worst = std::max(
              worst,
              max_abs_diff(pair_conditional(spec, role),
                           lg_conditional_oracle(system, channel, theta, kappa,
                                                 mult)));
        }
      }
    }
  }
  return worst;
}

double oracle_tolerance(Scenario scenario) {
  return scenario == Scenario::LgSpinOneDephasing ? 1e-8 : 1e-10;
}

}  // namespace qbell
