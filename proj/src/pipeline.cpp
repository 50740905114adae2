#include "qtseq/pipeline.hpp"

#include <chrono>
#include <stdexcept>
#include <unordered_set>

#include "qtseq/hadamard.hpp"

namespace qtseq {

std::string_view level_name(Level level) {
  switch (level) {
    case Level::WilliamsonType: return "wt";
    case Level::QuaternionType: return "qt";
    case Level::Hadamard: return "hadamard";
  }
  return "?";
}

Level parse_level(std::string_view name) {
  if (name == "wt") return Level::WilliamsonType;
  if (name == "qt") return Level::QuaternionType;
  if (name == "hadamard") return Level::Hadamard;
  throw std::invalid_argument("unknown level '" + std::string(name) + "'");
}

const std::vector<ClassEntry>& PipelineResult::classes() const {
  switch (level) {
    case Level::WilliamsonType: return wt_classes;
    case Level::QuaternionType: return qt_classes;
    case Level::Hadamard: return hadamard_classes;
  }
  return wt_classes;
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<ClassEntry> entries(const std::vector<CanonicalForm>& forms) {
  std::vector<ClassEntry> out;
  out.reserve(forms.size());
  for (const auto& f : forms) out.push_back({f.representative, f.symmetric});
  return out;
}

}  // namespace

PipelineResult run_pipeline(const PipelineOptions& options) {
  const int n = options.n;
  if (n < 1 || n > kMaxEnumerationOrder) throw std::invalid_argument("order out of range");
  PipelineResult res;
  res.n = n;
  res.level = options.level;
  const auto start = Clock::now();

  auto t0 = Clock::now();
  EnumerationResult raw = enumerate_wt(n, options.enumeration);
  res.seconds.enumerate = since(t0);
  res.stats = raw.stats;
  res.raw_quadruples = raw.quadruples.size();

  t0 = Clock::now();
  const auto wt = dedup(raw.quadruples, EquivGroup::WilliamsonType);
  res.wt_classes = entries(wt);
  res.seconds.wt = since(t0);

  if (options.level != Level::WilliamsonType) {
    t0 = Clock::now();
    std::vector<QTQuadruple> reps;
    reps.reserve(wt.size());
    for (const auto& f : wt) reps.push_back(f.representative);
    const auto expanded = expand_for_qt(reps, n, options.expand);
    res.expanded = expanded.size();
    res.qt_classes = entries(dedup(expanded, EquivGroup::QuaternionType));
    res.seconds.qt = since(t0);
  }

  if (options.level == Level::Hadamard) {
    t0 = Clock::now();
    std::unordered_set<std::string> seen;
    for (const auto& c : res.qt_classes) {
      if (seen.insert(hadamard_certificate(build_qt_hadamard(c.representative))).second) {
        res.hadamard_classes.push_back(c);
      }
    }
    res.seconds.hadamard = since(t0);
  }
  res.seconds.total = since(start);
  return res;
}

}  // namespace qtseq
