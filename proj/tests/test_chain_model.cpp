#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "adiabatic_chain/chain_model.hpp"

using namespace adiabatic_chain;

namespace {

constexpr double tau = 500.0;
const PulseSchedule standard = PulseSchedule::symmetric(20.0, 5.0, tau);

} // namespace

TEST(Pulses, PeakValues)
{
  EXPECT_DOUBLE_EQ(pulse_a(standard, 0.0), -20.0);
  EXPECT_DOUBLE_EQ(pulse_b(standard, tau), -20.0);
}

TEST(Pulses, TailAtOppositeEnd)
{
  // -20 exp(-12.5), evaluated independently.
  const double expected = -7.453306344157342e-05;
  EXPECT_NEAR(pulse_a(standard, tau), expected, 1e-18);
  EXPECT_NEAR(pulse_b(standard, 0.0), expected, 1e-18);
  EXPECT_NEAR(expected, -20.0 * std::exp(-12.5), 1e-18);
}

TEST(Pulses, ZeroPeakIsIdenticallyZero)
{
  const auto flat = PulseSchedule::symmetric(0.0, 5.0, tau);
  for (double t : {-3.0, 0.0, 17.0, tau, 2 * tau}) {
    EXPECT_EQ(pulse_a(flat, t), 0.0);
    EXPECT_EQ(pulse_b(flat, t), 0.0);
  }
}

TEST(Pulses, MirrorSymmetryAndBounds)
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> time(0.0, tau);
  for (int i = 0; i < 1000; ++i) {
    const double t = time(rng);
    EXPECT_NEAR(pulse_b(standard, t), pulse_a(standard, tau - t), 1e-14);
    EXPECT_LE(pulse_a(standard, t), 0.0);
    EXPECT_GE(pulse_a(standard, t), -standard.mu_a_max);
    EXPECT_LE(pulse_b(standard, t), 0.0);
    EXPECT_GE(pulse_b(standard, t), -standard.mu_b_max);
  }
}

TEST(PulseSchedule, Validation)
{
  EXPECT_NO_THROW(standard.validate());
  EXPECT_THROW((PulseSchedule{20, 20, 0.0, tau}.validate()), std::invalid_argument);
  EXPECT_THROW((PulseSchedule{20, 20, 0.01, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((PulseSchedule{-1, 20, 0.01, tau}.validate()), std::invalid_argument);
  EXPECT_THROW((PulseSchedule{20, NAN, 0.01, tau}.validate()), std::invalid_argument);
  EXPECT_DOUBLE_EQ(standard.alpha_over_tau(), 5.0);
}

TEST(ChainSpec, UniformAndValidation)
{
  const auto c = ChainSpec::uniform(5, 1.0);
  EXPECT_EQ(c.n_sites(), 5);
  ASSERT_EQ(c.bond_couplings().size(), 4u);
  for (double b : c.bond_couplings())
    EXPECT_EQ(b, 1.0);
  EXPECT_TRUE(c.is_uniform());
  EXPECT_THROW(ChainSpec::uniform(1), std::invalid_argument);
  EXPECT_THROW(ChainSpec::uniform(3, 0.0), std::invalid_argument);
  EXPECT_THROW(ChainSpec::with_bonds(1.0, {1.0, -0.1}), std::invalid_argument);
  EXPECT_THROW(ChainSpec::with_bonds(1.0, {}), std::invalid_argument);
}

TEST(Hamiltonian, PulsesOffGivesBareChain)
{
  const auto h = hamiltonian_at(ChainSpec::uniform(3), PulseSchedule::symmetric(0.0, 5.0, tau), 123.0);
  EXPECT_EQ(h.diagonal, (std::vector<double>{0.0, 0.0, 0.0}));
  EXPECT_EQ(h.off_diagonal, (std::vector<double>{-1.0, -1.0}));
}

TEST(Hamiltonian, AtStart)
{
  const auto h = hamiltonian_at(ChainSpec::uniform(5), standard, 0.0);
  EXPECT_DOUBLE_EQ(h.diagonal[0], -20.0);
  EXPECT_NEAR(h.diagonal[4], -7.453306344157342e-05, 1e-18);
  for (int i = 1; i < 4; ++i)
    EXPECT_EQ(h.diagonal[i], 0.0);
  for (double e : h.off_diagonal)
    EXPECT_EQ(e, -1.0);
}

TEST(Hamiltonian, MidpointIsPersymmetric)
{
  const auto h = hamiltonian_at(ChainSpec::uniform(5), standard, tau / 2);
  EXPECT_EQ(h.diagonal[0], h.diagonal[4]);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      EXPECT_EQ(h(i, j), h(4 - j, 4 - i));
}

TEST(Hamiltonian, BandStructureProperty)
{
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> sites(2, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = sites(rng);
    std::vector<double> bonds(static_cast<std::size_t>(n - 1));
    for (double& b : bonds)
      b = 0.2 + unit(rng);
    const auto spec = ChainSpec::with_bonds(1.0, bonds);
    const PulseSchedule s{30 * unit(rng), 30 * unit(rng), 0.001 + unit(rng), 1.0 + 100 * unit(rng)};
    const double t = s.tau * unit(rng);
    const auto h = hamiltonian_at(spec, s, t);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        EXPECT_EQ(h(i, j), h(j, i));
        if (std::abs(i - j) > 1)
          EXPECT_EQ(h(i, j), 0.0);
      }
    for (int j = 0; j + 1 < n; ++j)
      EXPECT_EQ(h(j, j + 1), -bonds[j]);
    if (n > 2)
      for (int i = 1; i + 1 < n; ++i)
        EXPECT_EQ(h(i, i), 0.0);
  }
}

TEST(Hamiltonian, TwoSitesCarryBothPulses)
{
  const auto h = hamiltonian_at(ChainSpec::uniform(2), standard, tau / 2);
  EXPECT_DOUBLE_EQ(h.diagonal[0], pulse_a(standard, tau / 2));
  EXPECT_DOUBLE_EQ(h.diagonal[1], pulse_b(standard, tau / 2));
}

TEST(Disorder, ZeroDeltaIsExactlyUniform)
{
  const auto bonds = sample_disordered_couplings(ChainSpec::uniform(8, 1.3), DisorderSpec{0.0, 42, 5}, 3);
  for (double b : bonds)
    EXPECT_EQ(b, 1.3);
}

TEST(Disorder, BondsInsideOpenInterval)
{
  const auto spec = ChainSpec::uniform(5, 1.0);
  const DisorderSpec d{0.3, 99, 500};
  for (int k = 0; k < d.n_samples; ++k)
    for (double b : sample_disordered_couplings(spec, d, k)) {
      EXPECT_GT(b, 0.7);
      EXPECT_LT(b, 1.0);
    }
}

TEST(Disorder, DeterministicPerSeedAndIndex)
{
  const auto spec = ChainSpec::uniform(6, 1.0);
  const DisorderSpec d{0.2, 12345, 10};
  EXPECT_EQ(sample_disordered_couplings(spec, d, 4), sample_disordered_couplings(spec, d, 4));
  EXPECT_NE(sample_disordered_couplings(spec, d, 4), sample_disordered_couplings(spec, d, 5));
  EXPECT_NE(sample_disordered_couplings(spec, d, 4), sample_disordered_couplings(spec, DisorderSpec{0.2, 12346, 10}, 4));
}

TEST(Disorder, UniformSourceMean)
{
  // eps_j = (1 - J_j / J) / delta; mean over >= 1e4 draws must be 0.5 +- 0.01.
  const auto spec = ChainSpec::uniform(11, 1.0);
  const DisorderSpec d{0.5, 2024, 2000};
  double sum = 0.0;
  int count = 0;
  for (int k = 0; k < d.n_samples; ++k)
    for (double b : sample_disordered_couplings(spec, d, k)) {
      sum += (1.0 - b) / d.delta;
      ++count;
    }
  ASSERT_GE(count, 10000);
  EXPECT_NEAR(sum / count, 0.5, 0.01);
}

TEST(Disorder, Rejections)
{
  const auto spec = ChainSpec::uniform(5);
  EXPECT_THROW(sample_disordered_couplings(spec, DisorderSpec{1.0, 1, 3}, 0), std::invalid_argument);
  EXPECT_THROW(sample_disordered_couplings(spec, DisorderSpec{-0.1, 1, 3}, 0), std::invalid_argument);
  EXPECT_THROW(sample_disordered_couplings(spec, DisorderSpec{0.1, 1, 3}, 3), std::out_of_range);
  EXPECT_THROW(sample_disordered_couplings(spec, DisorderSpec{0.1, 1, 0}, 0), std::invalid_argument);
}
