#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace touchvis;

namespace {

std::vector<double> edges(const std::vector<Bin>& bins) {
  std::vector<double> out;
  for (const auto& b : bins) out.push_back(b.lo);
  out.push_back(bins.back().hi);
  return out;
}

std::vector<double> edges(const std::vector<oracle::Bin>& bins) {
  std::vector<double> out;
  for (const auto& b : bins) out.push_back(b.lo);
  out.push_back(bins.back().hi);
  return out;
}

}  // namespace

TEST(DefaultSpec, FollowsEncodings) {
  const AggregateSpec iris = default_aggregate_spec(demo::iris().file.spec);
  EXPECT_EQ(iris.group_by, "sepalLength");
  EXPECT_EQ(iris.op, AggregateOp::Mean);
  EXPECT_EQ(iris.measure, "sepalWidth");

  ChartSpec bar;
  bar.type = ChartType::Bar;
  bar.x = {"state", FieldType::Nominal};
  bar.y = {"population", FieldType::Quantitative};
  const AggregateSpec b = default_aggregate_spec(bar);
  EXPECT_EQ(b.group_by, "state");
  EXPECT_EQ(b.op, AggregateOp::Mean);
  EXPECT_EQ(b.measure, "population");

  ChartSpec nominal_y = bar;
  nominal_y.y = {"region", FieldType::Nominal};
  EXPECT_EQ(default_aggregate_spec(nominal_y).op, AggregateOp::Count);
}

TEST(NiceBins, Examples) {
  const std::vector<double> a{0, 97, 13};
  const auto ba = nice_bins(a, 10);
  ASSERT_EQ(ba.size(), 10u);
  EXPECT_EQ(ba.front().lo, 0.0);
  EXPECT_EQ(ba.back().hi, 100.0);
  EXPECT_TRUE(ba.back().closed);
  EXPECT_FALSE(ba.front().closed);

  const std::vector<double> b{0.3, 4.1};
  EXPECT_EQ(nice_step(0.38), 0.5);
  EXPECT_EQ(edges(nice_bins(b, 10)), edges(oracle::nice_bins(0.3, 4.1, 10)));
  EXPECT_EQ(edges(nice_bins(b, 10)), (std::vector<double>{0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5}));

  const std::vector<double> c{5, 5, 5};
  EXPECT_EQ(nice_bins(c, 10), (std::vector<Bin>{{5, 5, true}}));
}

TEST(NiceBins, RandomRangesMatchOracle) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> mag(-6, 6);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const double scale = std::pow(10.0, mag(rng));
    const double lo = (unit(rng) - 0.5) * scale;
    const double hi = lo + unit(rng) * scale + 1e-12;
    const int target = 1 + static_cast<int>(unit(rng) * 20);
    const std::vector<double> v{lo, hi};
    const auto got = nice_bins(v, target);
    EXPECT_EQ(edges(got), edges(oracle::nice_bins(lo, hi, target))) << lo << " " << hi << " " << target;
    EXPECT_LE(static_cast<int>(got.size()), target + 1);
    EXPECT_LE(got.front().lo, lo);
    EXPECT_GE(got.back().hi, hi);
  }
}

TEST(NiceBins, HalfOpenMembership) {
  const std::vector<Bin> bins{{0, 10, false}, {10, 20, false}, {20, 30, true}};
  EXPECT_EQ(bin_index(bins, 0), 0u);
  EXPECT_EQ(bin_index(bins, 10), 1u);
  EXPECT_EQ(bin_index(bins, 19.999), 1u);
  EXPECT_EQ(bin_index(bins, 30), 2u);
  EXPECT_EQ(bin_label(bins[0], FieldType::Quantitative), "[0, 10)");
  EXPECT_EQ(bin_label(bins[2], FieldType::Quantitative), "[20, 30]");
}

TEST(ApplyAggregate, Arithmetic) {
  EXPECT_EQ(apply_aggregate(AggregateOp::Mean, {2, 4, 9}), 5.0);
  EXPECT_EQ(apply_aggregate(AggregateOp::Median, {9, 2, 4}), 4.0);
  EXPECT_EQ(apply_aggregate(AggregateOp::Median, {9, 2, 4, 5}), 4.5);
  EXPECT_EQ(apply_aggregate(AggregateOp::Count, {1, 1, 1}), 3.0);
  EXPECT_EQ(apply_aggregate(AggregateOp::Min, {3, -1, 2}), -1.0);
  EXPECT_EQ(apply_aggregate(AggregateOp::Max, {3, -1, 2}), 3.0);
  EXPECT_EQ(apply_aggregate(AggregateOp::Sum, {3, -1, 2}), 4.0);
}

TEST(Derive, CountPerNominalGroup) {
  const Dataset d({{"k", FieldType::Nominal}, {"v", FieldType::Quantitative}},
                  {{std::string("A"), 1.0}, {std::string("B"), 2.0}, {std::string("A"), 3.0}, {std::string("B"), 4.0},
                   {std::string("A"), 5.0}});
  ChartSpec base;
  base.type = ChartType::Bar;
  base.x = {"k", FieldType::Nominal};
  base.y = {"v", FieldType::Quantitative};
  const DerivedChart out = derive_aggregate(d, base, {"k", AggregateOp::Count, "", 10}, {0, 1, 2, 3, 4});
  ASSERT_EQ(out.data.size(), 2u);
  EXPECT_EQ(out.data.text(0, 0), "A");
  EXPECT_EQ(out.data.number(0, 1), 3.0);
  EXPECT_EQ(out.data.number(1, 1), 2.0);
  EXPECT_EQ(out.spec.y.field, "count");
  EXPECT_EQ(out.spec.type, ChartType::Bar);
}

TEST(Derive, MeanOfOneGroup) {
  const Dataset d = fixtures::xy_data({{1, 2}, {1.5, 4}, {1.9, 9}});
  const DerivedChart out = derive_aggregate(d, fixtures::xy_scatter(), {"x", AggregateOp::Mean, "y", 1}, {0, 1, 2});
  ASSERT_EQ(out.data.size(), 1u);
  EXPECT_EQ(out.data.number(0, 1), 5.0);
  EXPECT_EQ(out.spec.y.field, "mean(y)");
}

TEST(Derive, Errors) {
  const Dataset d = fixtures::grouped_data();
  const ChartSpec s = fixtures::grouped_bar();
  auto code = [&](const AggregateSpec& a, const RowSet& rows) {
    try {
      derive_aggregate(d, s, a, rows);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::UnknownCommand;
  };
  EXPECT_EQ(code({"g", AggregateOp::Sum, "v", 10}, {}), ErrorCode::AggregateRequiresSelection);
  EXPECT_EQ(code({"nope", AggregateOp::Sum, "v", 10}, {0}), ErrorCode::SpecError);
  EXPECT_EQ(code({"g", AggregateOp::Sum, "s", 10}, {0}), ErrorCode::SpecError);
  EXPECT_EQ(code({"g", AggregateOp::Sum, "v", 0}, {0}), ErrorCode::SpecError);
}

TEST(Derive, RandomRowsMatchGroupByOracle) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-50, 50);
  std::uniform_int_distribution<int> cat(0, 4);
  Dataset::Rows rows;
  for (int i = 0; i < 100; ++i) rows.push_back({u(rng), u(rng), std::string(1, static_cast<char>('a' + cat(rng)))});
  const Dataset d({{"p", FieldType::Quantitative}, {"q", FieldType::Quantitative}, {"c", FieldType::Nominal}},
                  std::move(rows));
  ChartSpec base = fixtures::xy_scatter();
  base.x.field = "p";
  base.y.field = "q";
  const AggregateOp ops[] = {AggregateOp::Count, AggregateOp::Sum, AggregateOp::Mean,
                             AggregateOp::Min,   AggregateOp::Max, AggregateOp::Median};
  for (int trial = 0; trial < 60; ++trial) {
    RowSet sel;
    for (RowId r = 0; r < 100; ++r) {
      if (rng() % 3 == 0) sel.insert(r);
    }
    if (sel.empty()) sel.insert(0);
    const int opi = trial % 6;
    const auto op = ops[opi];
    const bool nominal = trial % 2 == 0;
    const AggregateSpec agg{nominal ? "c" : "p", op, "q", 1 + trial % 12};
    const DerivedChart out = derive_aggregate(d, base, agg, sel);

    std::vector<double> expected;
    if (nominal) {
      std::vector<std::pair<std::string, double>> kv;
      for (RowId r : sel) kv.push_back({d.text(r, 2), d.number(r, 1)});
      for (const auto& [label, v] : oracle::group_nominal(kv, static_cast<oracle::Op>(opi))) {
        expected.push_back(v);
        EXPECT_EQ(out.data.text(static_cast<RowId>(expected.size() - 1), 0), label);
      }
    } else {
      std::vector<std::pair<double, double>> kv;
      for (RowId r : sel) kv.push_back({d.number(r, 0), d.number(r, 1)});
      expected = oracle::group_numeric(kv, agg.target_bins, static_cast<oracle::Op>(opi));
    }
    ASSERT_EQ(out.data.size(), expected.size()) << "trial " << trial;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_TRUE(oracle::relative_close(out.data.number(static_cast<RowId>(i), 1), expected[i], 1e-9))
          << "trial " << trial << " group " << i;
    }
  }
}

TEST(AggregateSelection, RemembersBase) {
  const Dataset d = fixtures::grouped_data();
  const auto r = aggregate_selection(d, fixtures::grouped_scatter(), {{0, 2, 3}, Provenance::Tap},
                                     {"g", AggregateOp::Sum, "v", 10});
  ASSERT_TRUE(r.view.aggregate);
  EXPECT_EQ(r.view.aggregate->base_selection, (RowSet{0, 2, 3}));
  EXPECT_EQ(r.view.visible, (RowSet{0, 1}));
  EXPECT_EQ(r.data.number(1, 1), 6.0);
  EXPECT_FALSE(r.spec.color);
}
