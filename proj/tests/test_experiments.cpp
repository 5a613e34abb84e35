#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "adiabatic_chain/csv_io.hpp"
#include "adiabatic_chain/experiments.hpp"

using namespace adiabatic_chain;

namespace {

const ChainSpec five = ChainSpec::uniform(5, 1.0);

std::string as_csv(const SweepResult& r)
{
  std::ostringstream os;
  write_sweep_csv(os, r);
  return os.str();
}

} // namespace

TEST(SpectrumTrace, ColumnsAndEndpoints)
{
  const auto r = spectrum_trace(five, PulseSchedule::symmetric(20.0, 5.0, 500.0), 101);
  ASSERT_EQ(r.rows.size(), 101u);
  EXPECT_EQ(r.at(0, "t"), 0.0);
  EXPECT_EQ(r.at(100, "t"), 500.0);
  EXPECT_EQ(r.at(100, "t_over_tau"), 1.0);
  EXPECT_DOUBLE_EQ(r.at(0, "mu_a"), -20.0);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_LT(r.at(i, "eps_g"), r.at(i, "eps_1"));
    EXPECT_EQ(r.at(i, "gap"), r.at(i, "eps_1") - r.at(i, "eps_g"));
  }
  // Minimum of the sampled gap sits at the midpoint row.
  const auto gaps = r.column("gap");
  EXPECT_EQ(std::min_element(gaps.begin(), gaps.end()) - gaps.begin(), 50);
  EXPECT_THROW(spectrum_trace(five, PulseSchedule::symmetric(20.0, 5.0, 500.0), 1), std::invalid_argument);
}

TEST(GapVsN, TableAndFits)
{
  const auto g = gap_vs_n({20.0}, {5, 6, 7}, 5.0, 500.0, 1.0, 401);
  ASSERT_EQ(g.table.rows.size(), 3u);
  EXPECT_DOUBLE_EQ(g.table.at(0, "inv_n_squared"), 1.0 / 25);
  EXPECT_GT(g.table.at(0, "delta_min"), g.table.at(1, "delta_min"));
  EXPECT_GT(g.table.at(1, "delta_min"), g.table.at(2, "delta_min"));
  ASSERT_EQ(g.fits.rows.size(), 1u);
  EXPECT_GT(g.fits.at(0, "slope"), 0.0);
  EXPECT_GT(g.fits.at(0, "proportional_slope"), 0.0);
  EXPECT_THROW(gap_vs_n({20.0}, {2, 5}, 5.0, 500.0), std::invalid_argument);
  EXPECT_THROW(gap_vs_n({1.0}, {5}, 5.0, 500.0), std::invalid_argument);
}

TEST(GapVsAlpha, MidpointGapApproachesUniformChainGap)
{
  const auto r = gap_vs_alpha(five, 20.0, {2.0, 4.0, 5.0, 10.0, 15.0}, 500.0, 401);
  const double plateau = uniform_chain_gap(5, 1.0);
  EXPECT_NEAR(r.at(4, "delta_mid"), plateau, 1e-4 * plateau);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_LE(r.at(i, "delta_min"), r.at(i, "delta_mid") + 1e-12);
    EXPECT_LE(r.at(i, "delta_mid"), plateau + 1e-12);
    if (i > 0) {
      EXPECT_GE(r.at(i, "delta_min"), r.at(i - 1, "delta_min"));
      EXPECT_GE(r.at(i, "delta_mid"), r.at(i - 1, "delta_mid"));
    }
  }
  // Overlapping pulses: the minimum is the midpoint gap.
  EXPECT_NEAR(r.at(2, "delta_min"), r.at(2, "delta_mid"), 1e-9);
}

TEST(GapVsAlpha, SeparatedPulsesDipBelowUniformChainGap)
{
  // With well separated pulses the minimum comes from one pulse alone
  // sweeping its site level through the band edge; it sits off tau/2 and
  // below the bare-chain gap.
  const auto r = gap_vs_alpha(five, 20.0, {2.0, 10.0, 15.0}, 500.0, 401);
  EXPECT_LT(r.at(2, "delta_min"), 0.61);
  EXPECT_NEAR(r.at(1, "delta_min"), r.at(2, "delta_min"), 1e-5);
  EXPECT_GT(std::abs(r.at(2, "t_star") / 500.0 - 0.5), 0.1);
  EXPECT_THROW(gap_vs_alpha(five, 20.0, {3.0, 10.0}, 500.0), std::invalid_argument);
  EXPECT_THROW(gap_vs_alpha(five, 20.0, {2.0, 9.0}, 500.0), std::invalid_argument);
}

TEST(FidelityVsAlpha, RowsMatchDirectEvolution)
{
  const auto r = fidelity_vs_alpha(five, 20.0, 100.0, {3.0, 5.0, 7.0}, 4000);
  ASSERT_EQ(r.rows.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const double k = r.at(i, "alpha_over_tau");
    EXPECT_EQ(r.at(i, "fidelity"), transfer_fidelity(five, PulseSchedule::symmetric(20.0, k, 100.0), 4000));
    EXPECT_LE(r.at(i, "max_norm_error"), 1e-9);
  }
  EXPECT_THROW(fidelity_vs_alpha(five, 20.0, 100.0, {4.0, 7.0}, 100), std::invalid_argument);
}

TEST(PopulationTrace, StartsOnFirstSite)
{
  const auto tr = population_trace(five, PulseSchedule::symmetric(20.0, 5.0, 50.0), 2000);
  EXPECT_EQ(tr.n_steps, 2000);
  EXPECT_EQ(tr.populations.front()[0], 1.0);
  EXPECT_EQ(tr.times.size(), 1001u);
}

TEST(MinTime, ShortChainAndUnreachableTarget)
{
  const auto r = min_time_for_fidelity({3, 4}, 20.0, 5.0);
  ASSERT_EQ(r.table.rows.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const double hi = r.table.at(i, "tau_min");
    const double lo = r.table.at(i, "bracket_low");
    EXPECT_GE(r.table.at(i, "fidelity"), 0.995);
    EXPECT_LE(hi - lo, 0.01 * hi);
    EXPECT_LT(r.table.at(i, "convergence_delta"), 1e-3);
  }
  TimeSearchOptions impossible;
  impossible.target = 0.9999;
  impossible.tau_cap = 200.0;
  EXPECT_THROW(min_time_for_fidelity({5}, 20.0, 5.0, impossible), TargetUnreachable);
  TimeSearchOptions bad;
  bad.growth = 1.0;
  EXPECT_THROW(min_time_for_fidelity({5}, 20.0, 5.0, bad), std::invalid_argument);
}

TEST(FidelityGrid, OrderAndRange)
{
  const auto r = fidelity_grid(five, {10.0, 20.0}, {15.0, 25.0}, 100.0, 5.0, 2000);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.at(1, "mu_a_max"), 10.0);
  EXPECT_EQ(r.at(1, "mu_b_max"), 25.0);
  EXPECT_EQ(r.at(2, "mu_a_max"), 20.0);
  EXPECT_THROW(fidelity_grid(five, {9.0}, {20.0}, 100.0, 5.0, 100), std::invalid_argument);
  EXPECT_THROW(fidelity_grid(five, {20.0}, {26.0}, 100.0, 5.0, 100), std::invalid_argument);
}

TEST(FidelityGrid, MirrorSymmetricUnderPeakSwap)
{
  // Swapping the peaks is the chain reflection composed with time reversal.
  const auto r = fidelity_grid(five, {12.0, 18.0}, {12.0, 18.0}, 100.0, 5.0, 4000);
  EXPECT_NEAR(r.rows[1][2], r.rows[2][2], 1e-9);
}

TEST(Disorder, ZeroDeltaMatchesCleanChain)
{
  const auto s = PulseSchedule::symmetric(20.0, 5.0, 100.0);
  const auto e = disorder_ensemble(five, s, {0.0, 0.2}, 3, 7, 4000);
  ASSERT_EQ(e.samples.rows.size(), 6u);
  const double clean = transfer_fidelity(five, s, 4000);
  for (std::size_t k = 0; k < 3; ++k)
    EXPECT_EQ(e.samples.at(k, "fidelity"), clean);
  ASSERT_EQ(e.summary.rows.size(), 2u);
  EXPECT_EQ(e.summary.at(0, "min_fidelity"), clean);
  EXPECT_LE(e.summary.at(1, "min_fidelity"), e.summary.at(1, "mean_fidelity"));
  EXPECT_LE(e.summary.at(1, "mean_fidelity"), e.summary.at(1, "max_fidelity"));
  EXPECT_THROW(disorder_ensemble(five, s, {1.0}, 3, 7, 100), std::invalid_argument);
}

TEST(Disorder, CommonRandomNumbersAcrossDelta)
{
  // eps_j is shared by every delta for a given sample index.
  const auto s = PulseSchedule::symmetric(20.0, 5.0, 50.0);
  const auto e = disorder_ensemble(five, s, {0.1, 0.3}, 4, 11, 500);
  for (std::size_t k = 0; k < 4; ++k) {
    const double eps_lo_01 = (1.0 - e.samples.at(k, "max_bond")) / 0.1;
    const double eps_lo_03 = (1.0 - e.samples.at(4 + k, "max_bond")) / 0.3;
    EXPECT_NEAR(eps_lo_01, eps_lo_03, 1e-12);
  }
}

TEST(Reproducibility, ThreadCountDoesNotChangeOutput)
{
  const auto s = PulseSchedule::symmetric(20.0, 5.0, 60.0);
  setenv("ADIABATIC_CHAIN_THREADS", "1", 1);
  const auto serial = as_csv(disorder_ensemble(five, s, {0.1, 0.2}, 6, 3, 1500).samples);
  setenv("ADIABATIC_CHAIN_THREADS", "4", 1);
  const auto threaded = as_csv(disorder_ensemble(five, s, {0.1, 0.2}, 6, 3, 1500).samples);
  unsetenv("ADIABATIC_CHAIN_THREADS");
  EXPECT_EQ(serial, threaded);
  EXPECT_EQ(threaded, as_csv(disorder_ensemble(five, s, {0.1, 0.2}, 6, 3, 1500).samples));
}

TEST(CsvIo, HeaderAndRoundTrip)
{
  SweepResult r;
  r.name = "demo";
  r.columns = {"x", "y"};
  r.rows = {{0.1, 1.0 / 3.0}, {-2.5e-300, 6.02214076e23}};
  r.meta("k", 5);
  const auto text = as_csv(r);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> data;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.starts_with("#"))
      continue;
    if (!header_seen) {
      EXPECT_EQ(line, "x,y");
      header_seen = true;
      continue;
    }
    data.push_back(line);
  }
  ASSERT_EQ(data.size(), 2u);
  const auto comma = data[0].find(',');
  EXPECT_EQ(std::strtod(data[0].substr(0, comma).c_str(), nullptr), 0.1);
  EXPECT_EQ(std::strtod(data[0].substr(comma + 1).c_str(), nullptr), 1.0 / 3.0);
  const auto comma2 = data[1].find(',');
  EXPECT_EQ(std::strtod(data[1].substr(0, comma2).c_str(), nullptr), -2.5e-300);
  EXPECT_EQ(std::strtod(data[1].substr(comma2 + 1).c_str(), nullptr), 6.02214076e23);
  EXPECT_NE(text.find("# k: 5"), std::string::npos);
}
