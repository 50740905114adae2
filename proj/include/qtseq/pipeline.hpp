#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qtseq/enumeration.hpp"
#include "qtseq/equivalence.hpp"

namespace qtseq {

enum class Level { WilliamsonType, QuaternionType, Hadamard };

std::string_view level_name(Level level);  // "wt", "qt", "hadamard"
Level parse_level(std::string_view name);   // throws std::invalid_argument

struct PipelineOptions {
  int n = 1;
  Level level = Level::Hadamard;
  EnumerationOptions enumeration;
  ExpandMode expand = ExpandMode::Full;
};

struct ClassEntry {
  QTQuadruple representative;
  bool symmetric = false;
};

struct PipelineTimings {
  double enumerate = 0, wt = 0, qt = 0, hadamard = 0, total = 0;
};

struct PipelineResult {
  int n = 0;
  Level level = Level::Hadamard;
  std::size_t raw_quadruples = 0;
  std::size_t expanded = 0;
  std::vector<ClassEntry> wt_classes;
  std::vector<ClassEntry> qt_classes;        // empty below the QT level
  std::vector<ClassEntry> hadamard_classes;  // empty below the Hadamard level
  EnumerationStats stats;
  PipelineTimings seconds;

  const std::vector<ClassEntry>& classes() const;
};

/// enumerate -> WT dedup -> expand -> QT dedup -> Hadamard dedup, stopping at
/// the requested level. Class lists are sorted by representative; the
/// Hadamard list keeps the first QT class of each matrix class in that order.
PipelineResult run_pipeline(const PipelineOptions& options);

}  // namespace qtseq
