#include <gtest/gtest.h>

#include "pacert/sweep.hpp"

using namespace pacert;

TEST(SweepConfig, RoundTrip) {
  SweepConfig c;
  c.n_start = 40;
  c.n_stop = 70;
  c.n_step = 6;
  c.k_list = {1, 3};
  c.exponent = 4;
  c.explicit_h = LocalBlock::from_matrix({{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}});
  c.tolerance = Rational(1, 1000);
  c.csv_path = "out.csv";
  c.plot_path = "out.svg";
  c.reference_c = Rational(3, 2);
  c.workers = 2;
  const std::string text = write_sweep_config(c);
  EXPECT_EQ(parse_sweep_config(text), c);
  EXPECT_EQ(write_sweep_config(parse_sweep_config(text)), text);
  EXPECT_EQ(parse_sweep_config(write_sweep_config(SweepConfig{})), SweepConfig{});
}

TEST(SweepConfig, Validation) {
  EXPECT_THROW(parse_sweep_config("n_step = 0\n"), std::domain_error);
  EXPECT_THROW(parse_sweep_config("n_start = 5\nn_stop = 9\n"), std::domain_error);
  EXPECT_THROW(parse_sweep_config("bogus = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_config("h = 1,2,3\n"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_config("k_list = -1\n"), std::domain_error);
  EXPECT_NO_THROW(parse_sweep_config("n_start = 5\nn_stop = 4\n"));  // empty range
}

TEST(Sweep, EmptyRangeGivesHeaderOnly) {
  SweepConfig c;
  c.n_start = 50;
  c.n_stop = 40;
  const SweepResult r = run_sweep(c);
  EXPECT_TRUE(r.rows.empty());
  EXPECT_EQ(sweep_csv(r), std::string(kSweepCsvHeader) + "\n");
}

TEST(Sweep, SmallRunIsOrderedAndDeterministic) {
  SweepConfig c;
  c.n_start = 30;
  c.n_stop = 45;
  c.n_step = 3;
  c.k_list = {2, 0, 1};
  c.workers = 3;
  const SweepResult a = run_sweep(c);
  c.workers = 1;
  const SweepResult b = run_sweep(c);
  EXPECT_EQ(sweep_csv(a), sweep_csv(b));
  ASSERT_EQ(a.rows.size(), 18u);
  EXPECT_EQ(a.rows.front().k, 0);
  EXPECT_EQ(a.rows.front().n, 30);
  EXPECT_EQ(a.rows.back().k, 2);
  EXPECT_EQ(a.rows.back().n, 45);
  for (const auto& row : a.rows) {
    EXPECT_EQ(row.verdict, Verdict::pass) << row.k << "," << row.n;
    EXPECT_LE(row.lambda_lo, row.lambda_hi);
    EXPECT_EQ(row.e_k, row.k == 0 ? 1 : row.k == 1 ? 221 : 30041);
  }
  EXPECT_EQ(a.n_emp.at(0), 30);
  EXPECT_EQ(a.n_emp.at(2), 30);
  const std::string svg = sweep_svg(a, Rational(1));
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_EQ(svg, sweep_svg(b, Rational(1)));
  const Json summary = sweep_summary_json(a);
  EXPECT_EQ(summary.at("summary").size(), 3u);
}

TEST(Sweep, ExplicitBlockOverridesWord) {
  SweepConfig c;
  c.explicit_h = LocalBlock::from_matrix({{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}});
  const SweepRow row = sweep_row(c, 1, 30);
  EXPECT_EQ(row.e_k, 2);
  EXPECT_EQ(row.n_k, 2);
  EXPECT_TRUE(row.error.empty());
}

TEST(Sweep, PreconditionFailureIsRecordedPerRow) {
  SweepConfig c;
  const SweepRow row = sweep_row(c, 1, 9);  // j = 3 is outside [5, n-5]
  EXPECT_EQ(row.verdict, Verdict::inconclusive);
  EXPECT_FALSE(row.error.empty());
}
