#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "qtseq/hadamard.hpp"
#include "qtseq/pipeline.hpp"
#include "qtseq/qhm.hpp"

using namespace qtseq;

namespace {

PipelineResult run(int n, Level level = Level::Hadamard) {
  PipelineOptions o;
  o.n = n;
  o.level = level;
  return run_pipeline(o);
}

std::size_t symmetric_count(const std::vector<ClassEntry>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const ClassEntry& c) { return c.symmetric; }));
}

}  // namespace

TEST(Level, Names) {
  for (Level l : {Level::WilliamsonType, Level::QuaternionType, Level::Hadamard}) EXPECT_EQ(parse_level(level_name(l)), l);
  EXPECT_THROW(parse_level("nope"), std::invalid_argument);
}

TEST(Pipeline, SmallOrdersMatchTable) {
  for (const auto& row : oracle::results_table()) {
    if (row.n > 11) break;
    const auto r = run(row.n);
    EXPECT_EQ(r.wt_classes.size(), static_cast<std::size_t>(row.w)) << "n=" << row.n;
    EXPECT_EQ(r.qt_classes.size(), static_cast<std::size_t>(row.q)) << "n=" << row.n;
    EXPECT_EQ(r.hadamard_classes.size(), static_cast<std::size_t>(row.h)) << "n=" << row.n;
    EXPECT_EQ(r.stats.filtered_pairs, static_cast<std::uint64_t>(row.pairs)) << "n=" << row.n;
  }
}

TEST(Pipeline, StopsAtRequestedLevel) {
  const auto wt = run(9, Level::WilliamsonType);
  EXPECT_EQ(wt.wt_classes.size(), 4u);
  EXPECT_TRUE(wt.qt_classes.empty());
  EXPECT_TRUE(wt.hadamard_classes.empty());
  EXPECT_EQ(&wt.classes(), &wt.wt_classes);
  const auto qt = run(9, Level::QuaternionType);
  EXPECT_EQ(qt.qt_classes.size(), 7u);
  EXPECT_TRUE(qt.hadamard_classes.empty());
  EXPECT_EQ(qt.classes().size(), 7u);
}

// The appendix lists one sequence per WT class, tagged by symmetry.
TEST(Pipeline, SymmetricSplitMatchesAppendix) {
  std::map<int, std::pair<std::size_t, std::size_t>> listed;  // n -> (sym, total)
  for (const auto& e : oracle::appendix()) {
    auto& [s, t] = listed[e.n];
    s += e.symmetric;
    ++t;
  }
  for (int n = 1; n <= 11; ++n) {
    const auto r = run(n, Level::WilliamsonType);
    ASSERT_TRUE(listed.count(n)) << n;
    EXPECT_EQ(r.wt_classes.size(), listed[n].second) << n;
    EXPECT_EQ(symmetric_count(r.wt_classes), listed[n].first) << n;
  }
}

TEST(Pipeline, OutputsAreValidAndSorted) {
  for (int n : {4, 8, 10}) {
    const auto r = run(n);
    for (const auto* list : {&r.wt_classes, &r.qt_classes, &r.hadamard_classes}) {
      EXPECT_TRUE(std::is_sorted(list->begin(), list->end(), [](const ClassEntry& a, const ClassEntry& b) {
        return a.representative < b.representative;
      }));
      for (const auto& c : *list) {
        EXPECT_TRUE(is_qt_quadruple(c.representative));
        EXPECT_TRUE(is_perfect(qt_to_perfect(c.representative)));
      }
    }
    for (const auto& c : r.wt_classes) EXPECT_TRUE(is_williamson_type(c.representative));
    // Hadamard classes are a subset of the QT classes with distinct certificates.
    std::set<QTQuadruple> qt;
    for (const auto& c : r.qt_classes) qt.insert(c.representative);
    std::set<std::string> certs;
    for (const auto& c : r.hadamard_classes) {
      EXPECT_TRUE(qt.count(c.representative));
      certs.insert(hadamard_certificate(build_qt_hadamard(c.representative)));
    }
    EXPECT_EQ(certs.size(), r.hadamard_classes.size());
    EXPECT_GE(r.expanded, r.wt_classes.size());
  }
}

TEST(Pipeline, RejectsBadOrder) {
  PipelineOptions o;
  o.n = 0;
  EXPECT_THROW(run_pipeline(o), std::invalid_argument);
}
