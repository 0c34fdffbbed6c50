#include "hybridsail/energy.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace hybridsail {
namespace {

TEST(PowerTest, Examples) {
  const PowerModel pm;
  EXPECT_DOUBLE_EQ(InstantPower(pm, 0), 2.5);
  EXPECT_DOUBLE_EQ(InstantPower(pm, 1), 10.5);
  EXPECT_DOUBLE_EQ(InstantPower(pm, 2), 18.5);
  EXPECT_THROW(InstantPower(pm, 3), std::invalid_argument);
  EXPECT_THROW(InstantPower(pm, -1), std::invalid_argument);
  EXPECT_DOUBLE_EQ(InstantCurrent(pm, 8.1), 1.0);
  for (int m = 0; m <= 2; ++m) {
    const double i = InstantCurrent(pm, InstantPower(pm, m));
    EXPECT_TRUE(std::isfinite(i));
    EXPECT_GT(i, 0.0);
  }
}

TEST(PowerTest, Validate) {
  EXPECT_NO_THROW(Validate(PowerModel{}));
  EXPECT_THROW(Validate(PowerModel{0.0, 8.0, 8.1}), std::invalid_argument);
  EXPECT_THROW(Validate(PowerModel{2.5, -1.0, 8.1}), std::invalid_argument);
  EXPECT_THROW(Validate(PowerModel{2.5, 8.0, 9.0}), std::invalid_argument);
}

TEST(LedgerTest, ConstantPowerIsExact) {
  EnergyLedger ledger;
  for (int i = 0; i <= 1000; ++i) ledger.Append(0.1 * i, 5.0);
  EXPECT_NEAR(ledger.total(), 500.0, 1e-9);
  EXPECT_NEAR(ledger.Integrate(0.0, 100.0), 500.0, 1e-9);
  EXPECT_EQ(ledger.Integrate(12.3, 12.3), 0.0);
  EXPECT_NEAR(ledger.Integrate(12.34, 56.78), 5.0 * (56.78 - 12.34), 1e-9);
}

TEST(LedgerTest, TwoSamplesConstantExactly) {
  EnergyLedger ledger;
  ledger.Append(0.0, 5.0);
  ledger.Append(100.0, 5.0);
  EXPECT_EQ(ledger.total(), 500.0);
}

// Power that is linear between knots; the trapezoid is exact on it.
double PiecewisePower(double t) {
  if (t < 10.0) return 2.5 + 0.3 * t;
  if (t < 25.0) return 5.5 - 0.2 * (t - 10.0);
  return 2.5 + 1.5 * (t - 25.0);
}

double PiecewiseIntegral(double a, double b) {
  // Midpoint rule per linear piece is exact; split at the knots.
  const double knots[] = {a, 10.0, 25.0, b};
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double lo = std::max(a, std::min(b, knots[i]));
    const double hi = std::max(a, std::min(b, knots[i + 1]));
    if (hi > lo) sum += 0.5 * (PiecewisePower(lo) + PiecewisePower(hi)) * (hi - lo);
  }
  return sum;
}

TEST(LedgerTest, PiecewiseLinearPower) {
  EnergyLedger ledger;
  for (int i = 0; i <= 800; ++i) ledger.Append(0.05 * i, PiecewisePower(0.05 * i));
  const double exact = PiecewiseIntegral(0.0, 40.0);
  EXPECT_NEAR(ledger.total(), exact, 1e-9 * exact);
  const double part = PiecewiseIntegral(3.0, 33.0);
  EXPECT_NEAR(ledger.Integrate(3.0, 33.0), part, 1e-9 * part);
}

TEST(LedgerTest, AdditivityAndMonotonicity) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> p(2.5, 18.5);
  EnergyLedger ledger;
  for (int i = 0; i <= 2000; ++i) ledger.Append(0.05 * i, p(rng));
  for (std::size_t i = 1; i < ledger.samples().size(); ++i) {
    ASSERT_GE(ledger.samples()[i].cumulative, ledger.samples()[i - 1].cumulative);
  }
  std::uniform_real_distribution<double> t(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    double a = t(rng), b = t(rng), c = t(rng);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    ASSERT_NEAR(ledger.Integrate(a, b) + ledger.Integrate(b, c),
                ledger.Integrate(a, c), 1e-9);
  }
}

TEST(LedgerTest, RejectsBadSamples) {
  EnergyLedger ledger;
  ledger.Append(1.0, 2.5);
  EXPECT_THROW(ledger.Append(1.0, 2.5), std::invalid_argument);
  EXPECT_THROW(ledger.Append(2.0, -0.1), std::invalid_argument);
  EXPECT_THROW(ledger.Integrate(0.0, 1.0), std::out_of_range);
  EXPECT_THROW(ledger.Integrate(1.0, 0.5), std::out_of_range);
}

TEST(PerLoopTest, OneLoopConstantPower) {
  EnergyLedger ledger;
  for (int i = 0; i <= 100; ++i) ledger.Append(i, 3.0);
  ledger.MarkLoop(100.0);
  const auto loops = PerLoopEnergy(ledger);
  ASSERT_EQ(loops.size(), 1u);
  EXPECT_DOUBLE_EQ(loops[0], ledger.total());
}

TEST(PerLoopTest, SumEqualsSpan) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> p(2.5, 10.5);
  EnergyLedger ledger;
  for (int i = 0; i <= 1000; ++i) ledger.Append(0.1 * i, p(rng));
  for (double m : {13.3, 40.0, 61.25, 100.0}) ledger.MarkLoop(m);
  const auto loops = PerLoopEnergy(ledger);
  double sum = 0.0;
  for (double e : loops) sum += e;
  EXPECT_NEAR(sum, ledger.Integrate(0.0, 100.0), 1e-9);
  EXPECT_THROW(PerLoopEnergy(EnergyLedger{}), std::invalid_argument);
}

TEST(PerLoopTest, ReferenceTotals) {
  const double totals[] = {1275, 1172, 1344, 1376, 1446};
  const double per_loop[] = {255, 234, 269, 275, 289};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(totals[i] / 5.0, per_loop[i], 0.5);
  }
  EXPECT_DOUBLE_EQ(1172.0 / 5.0, 234.4);
}

TEST(TackingEnergyTest, HandComputedLedger) {
  const PowerModel pm;
  EnergyLedger ledger;
  // 0..10 s base, 10..12 s one motor, 12..30 base, 30..33 one motor, then base.
  for (int i = 0; i <= 400; ++i) {
    const double t = 0.1 * i;
    const bool on = (t >= 10.0 - 1e-9 && t < 12.0 - 1e-9) ||
                    (t >= 30.0 - 1e-9 && t < 33.0 - 1e-9);
    ledger.Append(t, InstantPower(pm, on ? 1 : 0), on ? 1 : 0);
    if (std::abs(t - 10.0) < 1e-9 || std::abs(t - 30.0) < 1e-9) {
      ledger.OpenTackWindow(t);
    }
    if (std::abs(t - 12.0) < 1e-9 || std::abs(t - 33.0) < 1e-9) {
      ledger.CloseTackWindow(t);
    }
  }
  ASSERT_EQ(ledger.tack_windows().size(), 2u);
  // Each window starts on a step and ends with one 0.1 s ramp back to base.
  const double w1 = 8.0 * (2.0 - 0.1) + 0.5 * 8.0 * 0.1;
  const double w2 = 8.0 * (3.0 - 0.1) + 0.5 * 8.0 * 0.1;
  EXPECT_NEAR(TackingEnergy(ledger, pm.base_power), 0.5 * (w1 + w2), 1e-9);
  EXPECT_THROW(TackingEnergy(EnergyLedger{}, 2.5), std::invalid_argument);
}

TEST(TackingEnergyTest, WindowBookkeeping) {
  EnergyLedger ledger;
  ledger.Append(0.0, 2.5);
  ledger.OpenTackWindow(0.0);
  ledger.OpenTackWindow(0.5);  // already open
  ledger.Append(1.0, 2.5);
  ledger.Finish();
  ASSERT_EQ(ledger.tack_windows().size(), 1u);
  EXPECT_EQ(ledger.tack_windows()[0].t_on, 0.0);
  EXPECT_EQ(ledger.tack_windows()[0].t_off, 1.0);
  EXPECT_FALSE(ledger.window_open());
}

TEST(FitLineTest, ExactLine) {
  std::vector<double> t, e;
  for (int i = 0; i < 50; ++i) {
    t.push_back(0.7 * i);
    e.push_back(3.0 * t.back() + 7.0);
  }
  const LineFit fit = FitLine(t, e);
  EXPECT_NEAR(fit.slope, 3.0, 1e-9);
  EXPECT_NEAR(fit.intercept, 7.0, 1e-9);
  EXPECT_NEAR(fit.r2, 1.0, 1e-9);
}

TEST(FitLineTest, TwoPoints) {
  const std::vector<double> t{1.0, 3.0}, e{2.0, 8.0};
  const LineFit fit = FitLine(t, e);
  EXPECT_DOUBLE_EQ(fit.slope, 3.0);
  EXPECT_DOUBLE_EQ(fit.intercept, -1.0);
}

TEST(FitLineTest, NormalEquationsOracle) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> noise(0.0, 0.5);
  std::vector<double> t, e;
  for (int i = 0; i < 200; ++i) {
    t.push_back(0.05 * i);
    e.push_back(2.2 * t.back() + 1.5 + noise(rng));
  }
  long double st = 0, se = 0, stt = 0, ste = 0;
  const long double n = t.size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    se += e[i];
    stt += static_cast<long double>(t[i]) * t[i];
    ste += static_cast<long double>(t[i]) * e[i];
  }
  const long double det = n * stt - st * st;
  const double slope = static_cast<double>((n * ste - st * se) / det);
  const double intercept = static_cast<double>((stt * se - st * ste) / det);
  const LineFit fit = FitLine(t, e);
  EXPECT_NEAR(fit.slope, slope, 1e-12);
  EXPECT_NEAR(fit.intercept, intercept, 1e-12);
  EXPECT_GT(fit.r2, 0.9);
  EXPECT_LE(fit.r2, 1.0);
}

TEST(FitLineTest, Degenerate) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(FitLine(one, one), std::invalid_argument);
  const std::vector<double> same{2.0, 2.0}, e{1.0, 3.0};
  EXPECT_THROW(FitLine(same, e), std::invalid_argument);
  const std::vector<double> three{1.0, 2.0, 3.0};
  EXPECT_THROW(FitLine(three, e), std::invalid_argument);
}

TEST(PredictTest, Examples) {
  const LineFit fit{3.0, 7.0, 1.0};
  EXPECT_DOUBLE_EQ(PredictEnergy(fit, 10.0), 37.0);
  EXPECT_DOUBLE_EQ(PredictEnergy(fit, 0.0), 7.0);
}

TEST(PredictTest, FitEnergyLineOnLedger) {
  EnergyLedger ledger;
  for (int i = 0; i <= 100; ++i) ledger.Append(i, 4.0);
  const LineFit fit = FitEnergyLine(ledger);
  EXPECT_NEAR(fit.slope, 4.0, 1e-12);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-9);
}

}  // namespace
}  // namespace hybridsail
