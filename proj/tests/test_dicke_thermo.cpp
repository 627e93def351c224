#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "gaugekit/dicke_thermo.hpp"
#include "gaugekit/error.hpp"
#include "oracles.hpp"

using namespace gaugekit;

namespace {

const std::vector<double> kDetunings{0.5, 0.8, 1.0, 1.5};

oracle::DickeGauge to_oracle(ThermoGauge g) {
  switch (g) {
    case ThermoGauge::dipole: return oracle::DickeGauge::dipole;
    case ThermoGauge::gi_coulomb: return oracle::DickeGauge::gi_coulomb;
    case ThermoGauge::standard_coulomb: return oracle::DickeGauge::standard_coulomb;
  }
  return oracle::DickeGauge::dipole;
}

// Relative deviation of the alpha = 2 standard-Coulomb branches from the
// dipole-gauge branches: max over both branches of |w' - w| / w. Frozen from
// the ladder-basis oracle.
struct DeviationFixture {
  double wx, lambda, value;
};
const DeviationFixture kDeviation[] = {
    {1.0, 0.4, 0.15878871947757},
    {1.0, 1.0, 0.754028824751375},
    {0.8, 0.4, 0.114446616769925},
    {0.8, 1.0, 0.602799068084963},
};

double relative_deviation(double wx, double lambda) {
  const auto d = oracle::dicke_thermo(oracle::DickeGauge::dipole, 1.0, wx, lambda, 2.0);
  const auto s = oracle::dicke_thermo(oracle::DickeGauge::standard_coulomb, 1.0, wx, lambda, 2.0);
  return std::max(std::abs(s[0] - d[0]) / d[0], std::abs(s[1] - d[1]) / d[1]);
}

}  // namespace

TEST(DickeThermo, BranchesMatchLadderOracle) {
  for (auto gauge : {ThermoGauge::dipole, ThermoGauge::gi_coulomb, ThermoGauge::standard_coulomb}) {
    for (double wx : kDetunings) {
      for (double lambda : {0.0, 0.1, 0.45, 1.0, 1.7, 2.0}) {
        const auto b = polariton_branches({1.0, wx, lambda, 2.0, gauge});
        const auto ref = oracle::dicke_thermo(to_oracle(gauge), 1.0, wx, lambda, 2.0);
        EXPECT_NEAR(b.lower, ref[0], 1e-10);
        EXPECT_NEAR(b.upper, ref[1], 1e-10);
        EXPECT_TRUE(b.stable);
      }
    }
  }
}

TEST(DickeThermo, NonUnitPhotonFrequency) {
  const auto b = polariton_branches({2.5, 1.1, 0.6, 2.0, ThermoGauge::dipole});
  const auto ref = oracle::dicke_thermo(oracle::DickeGauge::dipole, 2.5, 1.1, 0.6, 2.0);
  EXPECT_NEAR(b.lower, ref[0], 1e-10);
  EXPECT_NEAR(b.upper, ref[1], 1e-10);
}

TEST(DickeThermo, CharacteristicPolynomialIdentities) {
  for (double wx : kDetunings) {
    for (int i = 0; i <= 200; i += 5) {
      const double lambda = 0.01 * i;
      for (auto gauge : {ThermoGauge::dipole, ThermoGauge::gi_coulomb}) {
        const auto b = polariton_branches({1.0, wx, lambda, 2.0, gauge});
        const double s = b.lower * b.lower + b.upper * b.upper;
        const double p = b.lower * b.lower * b.upper * b.upper;
        EXPECT_NEAR(s, 1.0 + wx * wx + 4.0 * lambda * lambda * wx, 1e-9);
        EXPECT_NEAR(p, wx * wx, 1e-9);
      }
      const ThermoParams sp{1.0, wx, lambda, 2.0, ThermoGauge::standard_coulomb};
      const auto b = polariton_branches(sp);
      EXPECT_NEAR(b.lower * b.lower + b.upper * b.upper, 1.0 + wx * wx + 4.0 * sp.D_prime(), 1e-9);
    }
  }
}

TEST(DickeThermo, ResonanceQuarticRoots) {
  for (auto gauge : {ThermoGauge::dipole, ThermoGauge::gi_coulomb}) {
    const auto b = polariton_branches({1.0, 1.0, 0.5, 2.0, gauge});
    EXPECT_NEAR(b.lower, 0.61803, 5e-6);
    EXPECT_NEAR(b.upper, 1.61803, 5e-6);
  }
}

TEST(DickeThermo, PrintedCoulombFormExactWhenDiamagneticIsSingleTransition) {
  for (double wx : kDetunings) {
    for (double lambda : {0.0, 0.3, 0.5, 1.2, 2.0}) {
      const auto r = closed_form_report({1.0, wx, lambda, 2.0, ThermoGauge::gi_coulomb});
      EXPECT_LT(r.max_abs_difference, 1e-10);
    }
  }
  // With D' = 2 D the same printed form no longer describes the standard model
  // (the product of squared frequencies changes with D').
  const auto r = closed_form_report({1.0, 1.0, 0.8, 2.0, ThermoGauge::standard_coulomb});
  EXPECT_GT(r.max_abs_difference, 1e-3);
}

TEST(DickeThermo, PrintedDipoleFormDisagreesAtResonance) {
  const auto r = closed_form_report({1.0, 1.0, 0.5, 2.0, ThermoGauge::dipole});
  EXPECT_NEAR(r.printed.upper, std::sqrt((3.0 + std::sqrt(2.0)) / 2.0), 1e-12);
  EXPECT_NEAR(r.printed.lower, std::sqrt((3.0 - std::sqrt(2.0)) / 2.0), 1e-12);
  EXPECT_NEAR(r.reference.upper, 1.618033988749895, 1e-12);
  EXPECT_GT(r.max_abs_difference, 0.1);
  EXPECT_THROW(closed_form_dg({1.0, 1.0, 0.5, 2.0, ThermoGauge::gi_coulomb}), InvalidArgument);
  EXPECT_THROW(closed_form_cg({1.0, 1.0, 0.5, 2.0, ThermoGauge::dipole}), InvalidArgument);
}

TEST(DickeThermo, TrkResiduals) {
  for (double wx : kDetunings) {
    for (double lambda : {0.0, 0.1, 0.37, 1.0, 2.0}) {
      EXPECT_EQ(trk_thermo_residual({1.0, wx, lambda, 2.0, ThermoGauge::gi_coulomb}), 0.0);
      EXPECT_EQ(trk_thermo_residual({1.0, wx, lambda, 2.0, ThermoGauge::standard_coulomb}),
                (2.0 - 1.0) * wx * lambda * lambda);
      EXPECT_DOUBLE_EQ(trk_thermo_residual({1.0, wx, lambda, 3.7, ThermoGauge::standard_coulomb}),
                       (3.7 - 1.0) * wx * lambda * lambda);
    }
  }
}

TEST(DickeThermo, AllModelsStableOnTestedRange) {
  for (double alpha : {1.0, 2.0, 4.0}) {
    const auto table = sweep_branches(lambda_range(0.0, 2.0, 0.01), 0.8, alpha);
    for (const auto& row : table.rows) EXPECT_TRUE(row.stable) << row.lambda;
  }
}

TEST(DickeThermo, StandardCoulombDeviationFixtures) {
  for (const auto& f : kDeviation) {
    EXPECT_NEAR(relative_deviation(f.wx, f.lambda), f.value, 1e-12);
    const auto d = polariton_branches({1.0, f.wx, f.lambda, 2.0, ThermoGauge::dipole});
    const auto s = polariton_branches({1.0, f.wx, f.lambda, 2.0, ThermoGauge::standard_coulomb});
    const double lib = std::max(std::abs(s.lower - d.lower) / d.lower,
                                std::abs(s.upper - d.upper) / d.upper);
    EXPECT_NEAR(lib, f.value, 1e-10);
  }
}

TEST(DickeThermo, StandardCoulombDeviationIsMonotone) {
  for (double wx : {1.0, 0.8}) {
    double prev = -1.0;
    for (double lambda : lambda_range(0.0, 2.0, 0.01)) {
      const double dev = relative_deviation(wx, lambda);
      EXPECT_GE(dev, prev) << lambda;
      prev = dev;
    }
  }
  // At lambda = 0.1 the alpha = 2 model is already off by about 1 percent.
  EXPECT_GT(relative_deviation(1.0, 0.1), 1e-3);
  EXPECT_LT(relative_deviation(1.0, 0.1), 2e-2);
}

TEST(DickeThermo, SweepColumnsAndOrdering) {
  const auto grid = lambda_range(0.0, 2.0, 0.01);
  ASSERT_EQ(grid.size(), 201u);
  EXPECT_DOUBLE_EQ(grid.back(), 2.0);
  const auto serial = sweep_branches(grid, 0.8, 2.0, 1.0, 1);
  const auto parallel = sweep_branches(grid, 0.8, 2.0, 1.0, 4);
  ASSERT_EQ(serial.rows.size(), 201u);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& r = serial.rows[i];
    EXPECT_EQ(r.lambda, grid[i]);
    EXPECT_LT(std::abs(r.dg_lo - r.cg_lo), 1e-10);
    EXPECT_LT(std::abs(r.dg_hi - r.cg_hi), 1e-10);
    EXPECT_EQ(r.scg_hi, parallel.rows[i].scg_hi);
  }
  std::ostringstream out;
  write_spectrum_table_csv(out, serial);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "lambda,w_dg_lo,w_dg_hi,w_cg_lo,w_cg_hi,w_scg_lo,w_scg_hi");
}

TEST(DickeThermo, PrintedSweepUsesClosedForms) {
  const auto t = sweep_branches_printed({0.5}, 1.0, 2.0);
  EXPECT_TRUE(t.printed);
  EXPECT_NEAR(t.rows[0].dg_hi, std::sqrt((3.0 + std::sqrt(2.0)) / 2.0), 1e-12);
  EXPECT_NEAR(t.rows[0].cg_hi, 1.618033988749895, 1e-12);
}

TEST(DickeThermo, LimitUnitaryIsUnitary) {
  const auto u = limit_unitary(0.3, 12);
  EXPECT_LT(u.unitarity_error(), 1e-12);
  EXPECT_THROW(limit_unitary(0.3, 8), InvalidArgument);
  EXPECT_THROW(limit_unitary(0.3, 80), DimensionCapExceeded);
}

TEST(DickeThermo, StructuredUnitaryMatchesFullExponential) {
  // Compare against U (wx b+b) U+ + wc a+a with U from the generic exponential.
  const int cutoff = 12;
  const double wc = 1.0, wx = 0.8, lambda = 0.4;
  const auto u = limit_unitary(lambda, cutoff);
  const auto a = annihilator(cutoff);
  const auto id = identity(CompositeBasis::fock(cutoff));
  const auto h0 = wx * tensor(id, number_operator(cutoff));
  const auto reference = u * h0 * u.adjoint() + wc * tensor(number_operator(cutoff), id);
  const auto structured =
      build_two_mode_via_unitary(wc, wx, lambda, UnitarySide::matter, cutoff);
  EXPECT_LT((structured - reference).max_abs(), 1e-10);
}

TEST(DickeThermo, UnitaryConstructionGapsApproachBranches) {
  const ThermoParams p{1.0, 0.8, 0.5, 2.0, ThermoGauge::gi_coulomb};
  const auto b = polariton_branches(p);
  // Lowest excitations of two oscillators: sorted n w- + m w+.
  std::vector<double> ladder;
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m)
      if (n + m > 0) ladder.push_back(n * b.lower + m * b.upper);
  std::sort(ladder.begin(), ladder.end());
  double prev_error = 1.0;
  for (int cutoff : {12, 24}) {
    const auto gaps = excitation_gaps(build_via_limit_unitary(p, cutoff), 3);
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) err = std::max(err, std::abs(gaps[i] - ladder[i]));
    EXPECT_LT(err, prev_error);
    prev_error = err;
  }
  EXPECT_LT(prev_error, 1e-9);
}

TEST(DickeThermo, ValidationKeys) {
  try {
    polariton_branches({1.0, 1.0, 0.2, 0.5, ThermoGauge::standard_coulomb});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_EQ(e.key(), "alpha");
  }
  EXPECT_THROW(polariton_branches({1.0, -1.0, 0.2, 2.0, ThermoGauge::dipole}), InvalidArgument);
  EXPECT_THROW(lambda_range(0.0, 1.0, 0.0), InvalidArgument);
}
