#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <json.hpp>

#include "qtseq/pipeline.hpp"
#include "qtseq/qhm.hpp"

namespace qtseq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int n = 0;
  std::string level = "hadamard";
  std::string out;
  std::size_t mem_mib = 1024;
  int threads = 1;
  std::string format = "text";
  std::string temp_dir;
};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

// Content of a line without comments and surrounding blanks.
std::string payload(std::string line) {
  if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
  const auto b = line.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
}

std::string last_field(const std::string& s) {
  const auto p = s.find_last_of(" \t");
  return p == std::string::npos ? s : s.substr(p + 1);
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 1 || cfg.n > kMaxEnumerationOrder) throw UsageError("order must be in 1..24");
  if (cfg.mem_mib < 64) throw UsageError("memory budget must be at least 64 MiB");
  PipelineOptions opt;
  opt.n = cfg.n;
  opt.level = parse_level(cfg.level);
  opt.enumeration.memory_budget_bytes = cfg.mem_mib << 20;
  opt.enumeration.threads = std::max(1, cfg.threads);
  if (!cfg.temp_dir.empty()) opt.enumeration.temp_dir = cfg.temp_dir;
  const PipelineResult res = run_pipeline(opt);

  std::ostringstream body;
  std::size_t symmetric = 0;
  for (const auto& c : res.classes()) {
    body << c.representative.to_string() << ' ' << (c.symmetric ? "sym" : "nonsym") << '\n';
    symmetric += c.symmetric;
  }
  if (cfg.out.empty()) {
    out << body.str();
  } else {
    std::ofstream f(cfg.out);
    f << body.str();
    if (!f) throw std::runtime_error("cannot write " + cfg.out);
  }

  const std::size_t wt = res.wt_classes.size();
  const auto count_or_null = [&](Level l, std::size_t v) -> json {
    return static_cast<int>(res.level) >= static_cast<int>(l) ? json(v) : json(nullptr);
  };
  json summary = {
      {"n", res.n},
      {"level", level_name(res.level)},
      {"classes", res.classes().size()},
      {"symmetric", symmetric},
      {"wt", wt},
      {"wt_symmetric", std::count_if(res.wt_classes.begin(), res.wt_classes.end(),
                                     [](const ClassEntry& c) { return c.symmetric; })},
      {"qt", count_or_null(Level::QuaternionType, res.qt_classes.size())},
      {"hadamard", count_or_null(Level::Hadamard, res.hadamard_classes.size())},
      {"raw_quadruples", res.raw_quadruples},
      {"pairs", {{"raw", res.stats.raw_pairs}, {"amicable", res.stats.amicable_pairs}, {"filtered", res.stats.filtered_pairs}}},
      {"collisions", res.stats.collisions},
      {"spilled_bytes", res.stats.spilled_bytes},
      {"seconds",
       {{"enumerate", res.seconds.enumerate},
        {"wt", res.seconds.wt},
        {"qt", res.seconds.qt},
        {"hadamard", res.seconds.hadamard},
        {"total", res.seconds.total}}},
  };
  if (!cfg.out.empty()) {
    std::ofstream s(cfg.out + ".summary.json");
    s << summary.dump(2) << '\n';
    if (!s) throw std::runtime_error("cannot write summary for " + cfg.out);
  }
  const std::string q = summary["qt"].is_null() ? "-" : summary["qt"].dump();
  const std::string h = summary["hadamard"].is_null() ? "-" : summary["hadamard"].dump();
  if (cfg.format == "csv") {
    (cfg.out.empty() ? err : out) << "n,level,wt,qt,hadamard,symmetric,filtered_pairs,seconds\n"
                                         << res.n << ',' << level_name(res.level) << ',' << wt << ',' << q << ','
                                         << h << ',' << symmetric << ',' << res.stats.filtered_pairs << ','
                                         << fixed(res.seconds.total, 3) << '\n';
  } else {
    (cfg.out.empty() ? err : out) << "n=" << res.n << " level=" << level_name(res.level) << " W=" << wt
                                         << " Q=" << q << " H=" << h << " classes=" << res.classes().size()
                                         << " (" << symmetric << " symmetric) pairs=" << res.stats.filtered_pairs
                                         << " time=" << fixed(res.seconds.total, 3) << "s\n";
  }
  return kExitOk;
}

int cmd_convert(const std::string& file, const std::string& to, const std::string& out_path, std::ostream& out) {
  std::ostringstream body;
  const auto lines = read_lines(file);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const std::string p = payload(lines[l]);
    if (p.empty()) continue;
    try {
      if (to == "q24") {
        body << encode_symbols(qt_to_perfect(QTQuadruple::parse(p))) << '\n';
      } else {
        body << perfect_to_qt(decode_symbols(last_field(p))).to_string() << '\n';
      }
    } catch (const std::exception& e) {
      throw UsageError(file + ":" + std::to_string(l + 1) + ": " + e.what());
    }
  }
  if (out_path.empty()) {
    out << body.str();
  } else {
    std::ofstream f(out_path);
    f << body.str();
    if (!f) throw std::runtime_error("cannot write " + out_path);
  }
  return kExitOk;
}

int cmd_verify(const std::string& file, const std::string& kind, std::ostream& out) {
  if (kind == "qhm") {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    ExactMatrix m;
    try {
      m = parse_exact_matrix(ss.str());
    } catch (const std::exception& e) {
      throw UsageError(file + ": " + e.what());
    }
    const QhmCheck c = check_qhm(m);
    if (c.ok) {
      out << file << ": pass (order " << m.order() << ")\n";
      return kExitOk;
    }
    out << file << ": fail at (" << c.row << "," << c.col << "): " << c.reason << '\n';
    return kExitFailures;
  }
  std::size_t pass = 0, fail = 0;
  const auto lines = read_lines(file);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const std::string p = payload(lines[l]);
    if (p.empty()) continue;
    const std::string where = "line " + std::to_string(l + 1);
    try {
      if (kind == "qt") {
        const QuadrupleCheck c = check_qt_quadruple(QTQuadruple::parse(p));
        if (c.ok) {
          ++pass;
          out << where << ": pass\n";
        } else {
          ++fail;
          out << where << ": fail t=" << c.shift << " (" << c.condition << ")\n";
        }
      } else {
        const auto s = decode_symbols(last_field(p));
        if (const auto t = first_imperfect_shift(s)) {
          ++fail;
          out << where << ": fail t=" << *t << '\n';
        } else {
          ++pass;
          out << where << ": pass\n";
        }
      }
    } catch (const std::exception& e) {
      throw UsageError(file + ":" + std::to_string(l + 1) + ": " + e.what());
    }
  }
  out << pass << " passed, " << fail << " failed\n";
  return fail ? kExitFailures : kExitOk;
}

struct ReportRow {
  json w, q, h;
  double seconds = 0;
  json pairs;
  std::uintmax_t disk = 0;
  int level = -1;
};

int cmd_report(const std::string& dir, const std::string& format, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(dir)) throw UsageError("not a directory: " + dir);
  std::map<int, ReportRow> rows;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.size() > 13 && name.ends_with(".summary.json")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    json j;
    try {
      std::ifstream in(f);
      j = json::parse(in);
    } catch (const std::exception& e) {
      err << "skipping " << f.string() << ": " << e.what() << '\n';
      continue;
    }
    const int n = j.value("n", 0);
    const int lvl = static_cast<int>(parse_level(j.value("level", std::string("wt"))));
    ReportRow& r = rows[n];
    if (lvl < r.level) continue;  // keep the deepest run per order
    r.level = lvl;
    r.w = j["wt"];
    r.q = j["qt"];
    r.h = j["hadamard"];
    r.seconds = j["seconds"].value("total", 0.0);
    r.pairs = j["pairs"].value("filtered", json(nullptr));
    fs::path data = f;
    data.replace_extension();  // drop .json
    data.replace_extension();  // drop .summary
    r.disk = j.value("spilled_bytes", std::uintmax_t{0}) + (fs::exists(data) ? fs::file_size(data) : 0);
  }
  const auto cell = [](const json& v) { return v.is_null() ? std::string("-") : v.dump(); };
  const char sep = format == "csv" ? ',' : '\t';
  out << "n" << sep << "W_equ" << sep << "Q_equ" << sep << "H_equ" << sep << "time_s" << sep << "pairs" << sep
      << "disk_bytes\n";
  int prev = 0;
  for (const auto& [n, r] : rows) {
    for (int gap = prev + 1; prev && gap < n; ++gap) err << "note: no run for n=" << gap << '\n';
    prev = n;
    out << n << sep << cell(r.w) << sep << cell(r.q) << sep << cell(r.h) << sep << fixed(r.seconds, 3) << sep
        << cell(r.pairs) << sep << r.disk << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enumerate and verify QT sequence quadruples and quaternionic Hadamard matrices", "qtseq"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto* en = app.add_subcommand("enumerate", "Enumerate classes of QT quadruples of one order");
  en->add_option("-n,--order", cfg.n, "Sequence length")->required()->check(CLI::Range(1, kMaxEnumerationOrder));
  en->add_option("--level", cfg.level, "Equivalence level")->check(CLI::IsMember({"wt", "qt", "hadamard"}));
  en->add_option("--out", cfg.out, "Output file (default: stdout)");
  en->add_option("--mem", cfg.mem_mib, "Memory budget in MiB")->check(CLI::Range(64, 1 << 20));
  en->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1, 256));
  en->add_option("--format", cfg.format, "Summary format")->check(CLI::IsMember({"text", "csv"}));
  en->add_option("--tmp", cfg.temp_dir, "Directory for sort runs");

  std::string file, direction, kind, out_path, dir, format = "text";
  auto* cv = app.add_subcommand("convert", "Convert between quadruples and Q+ symbol strings");
  cv->add_option("file", file, "Input file")->required();
  cv->add_option("--to", direction, "Target form")->required()->check(CLI::IsMember({"q24", "qt"}));
  cv->add_option("--out", out_path, "Output file (default: stdout)");

  auto* vf = app.add_subcommand("verify", "Check quadruples, perfect sequences or a QHM");
  vf->add_option("file", file, "Input file")->required();
  vf->add_option("--kind", kind, "Object kind")->required()->check(CLI::IsMember({"qt", "perfect", "qhm"}));

  auto* rp = app.add_subcommand("report", "Tabulate enumerate summaries in a directory");
  rp->add_option("dir", dir, "Directory of .summary.json files")->required();
  rp->add_option("--format", format, "Table format")->check(CLI::IsMember({"text", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (*en) return cmd_enumerate(cfg, out, err);
    if (*cv) return cmd_convert(file, direction, out_path, out);
    if (*vf) return cmd_verify(file, kind, out);
    if (*rp) return cmd_report(dir, format, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailures;
  }
  return kExitUsage;
}

}  // namespace qtseq::cli
