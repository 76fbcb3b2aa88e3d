#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <random>
#include <sstream>

#include "orq/index_file.hpp"
#include "orq/oracle.hpp"

namespace orq::cli {

namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::ordered_json;

std::string at_line(uint64_t line) { return "line " + std::to_string(line) + ": "; }

std::vector<std::string> tokens(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> t;
  for (std::string w; in >> w;) t.push_back(w);
  return t;
}

bool to_u64(const std::string& s, uint64_t& v) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  return ec == std::errc() && p == end;
}

std::string pair_text(const Point& p) { return std::to_string(p.x) + "," + std::to_string(p.y); }

std::string result_line(const std::vector<Point>& pts) {
  if (pts.empty()) return "none";
  std::string s;
  for (const auto& p : pts) {
    if (!s.empty()) s += ' ';
    s += pair_text(p);
  }
  return s;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

}  // namespace

std::vector<Point> parse_points(std::istream& in) {
  std::vector<Point> pts;
  std::vector<uint64_t> lines;
  std::string line;
  for (uint64_t no = 1; std::getline(in, line); ++no) {
    const auto t = tokens(line);
    if (t.empty()) continue;
    Point p;
    if (t.size() != 2 || !to_u64(t[0], p.x) || !to_u64(t[1], p.y))
      throw DataError(at_line(no) + "expected two non-negative integers 'x y'");
    pts.push_back(p);
    lines.push_back(no);
  }
  std::vector<uint64_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](uint64_t i, uint64_t j) {
    return std::tie(pts[i].x, pts[i].y, lines[i]) < std::tie(pts[j].x, pts[j].y, lines[j]);
  });
  for (size_t k = 1; k < order.size(); ++k) {
    const uint64_t i = order[k - 1], j = order[k];
    if (pts[i] == pts[j])
      throw DataError(at_line(lines[j]) + "duplicate point " + std::to_string(pts[j].x) + " " +
                      std::to_string(pts[j].y) + " (first on line " + std::to_string(lines[i]) + ")");
  }
  return pts;
}

std::vector<Query> parse_queries(std::istream& in) {
  std::vector<Query> qs;
  std::string line;
  for (uint64_t no = 1; std::getline(in, line); ++no) {
    const auto t = tokens(line);
    if (t.empty()) continue;
    Query q;
    q.kind = t[0];
    if (q.kind != "report" && q.kind != "succ" && q.kind != "sorted")
      throw DataError(at_line(no) + "unknown query '" + q.kind + "'");
    const size_t want = q.kind == "sorted" ? 6 : 5;
    uint64_t limit = 0;
    if (!(t.size() == 5 || t.size() == want) || !to_u64(t[1], q.x1) || !to_u64(t[2], q.x2) ||
        !to_u64(t[3], q.y1) || !to_u64(t[4], q.y2) || (t.size() == 6 && !to_u64(t[5], limit)))
      throw DataError(at_line(no) + "expected '" + q.kind + " x1 x2 y1 y2" +
                      (q.kind == "sorted" ? " [k]'" : "'"));
    if (t.size() == 6) q.limit = limit;
    qs.push_back(q);
  }
  return qs;
}

int cmd_build(const BuildArgs& a, std::ostream& err) {
  Config cfg;
  IndexType type;
  try {
    type = parse_type(a.type);
    for (const auto& kv : a.config) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected KEY=VAL, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
  } catch (const std::invalid_argument& e) {
    err << "build: " << e.what() << "\n";
    return kUsage;
  }
  try {
    auto in = open_in(a.input);
    const auto pts = parse_points(in);
    AnyIndex idx;
    switch (type) {
      case IndexType::kReport:
        idx = build_report(pts, cfg);
        break;
      case IndexType::kSucc:
        idx = build_successor(pts, cfg);
        break;
      case IndexType::kSorted:
        idx = build_sorted_report(pts, cfg);
        break;
    }
    save_index(a.out, idx);
  } catch (const std::exception& e) {
    err << "build: " << a.input << ": " << e.what() << "\n";
    return kData;
  }
  return kOk;
}

int cmd_query(const QueryArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const AnyIndex idx = load_index(a.index);
    auto qin = open_in(a.queries);
    const auto qs = parse_queries(qin);
    const std::string type = type_name(index_type(idx));
    for (size_t i = 0; i < qs.size(); ++i)
      if (qs[i].kind != type)
        throw DataError("query " + std::to_string(i + 1) + ": '" + qs[i].kind + "' query on a '" + type +
                        "' index");
    std::ofstream file;
    if (!a.out.empty()) {
      file.open(a.out);
      if (!file) throw DataError("cannot open " + a.out);
    }
    std::ostream& dst = a.out.empty() ? out : file;
    for (const auto& q : qs) {
      std::vector<Point> res;
      if (const auto* r = std::get_if<ReportIndex>(&idx)) {
        res = r->report(q.x1, q.x2, q.y1, q.y2);
        std::sort(res.begin(), res.end(), [](const Point& p, const Point& o) {
          return std::tie(p.y, p.x) < std::tie(o.y, o.x);
        });
      } else if (const auto* s = std::get_if<SuccessorIndex>(&idx)) {
        if (auto p = s->successor(q.x1, q.x2, q.y1, q.y2)) res.push_back(*p);
      } else {
        res = std::get<SortedIndex>(idx).sorted(q.x1, q.x2, q.y1, q.y2, q.limit.value_or(~uint64_t{0}));
      }
      dst << result_line(res) << "\n";
    }
  } catch (const std::exception& e) {
    err << "query: " << e.what() << "\n";
    return kData;
  }
  return kOk;
}

// ---------------------------------------------------------------------------- verify

namespace {

struct Instance {
  std::vector<Point> pts;
  Config cfg;
  std::string shape, config_name;
};

Instance make_instance(uint64_t n, uint64_t c, std::mt19937_64& rng) {
  Instance inst;
  std::vector<uint64_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  switch (c % 3) {
    case 0:
      inst.shape = "permutation";
      for (uint64_t y = 0; y < n; ++y) inst.pts.push_back({perm[y], y});
      break;
    case 1: {
      inst.shape = "repeated x";
      const uint64_t u = std::max<uint64_t>(1, n / 8);
      for (uint64_t y = 0; y < n; ++y) inst.pts.push_back({rng() % u, y * 5 + rng() % 5});
      break;
    }
    default: {
      inst.shape = "wide coordinates";
      for (uint64_t i = 0; i < n; ++i) inst.pts.push_back({perm[i] << 30 | (rng() & 0xffff), rng() % (4 * n)});
      std::sort(inst.pts.begin(), inst.pts.end());
      inst.pts.erase(std::unique(inst.pts.begin(), inst.pts.end()), inst.pts.end());
      break;
    }
  }
  switch (c % 4) {
    case 0:
      inst.config_name = "default";
      break;
    case 1:
      inst.config_name = "tables off";
      inst.cfg.table_cap_bits = 0;
      inst.cfg.escalation = 2;
      break;
    case 2:
      inst.config_name = "small blocks";
      inst.cfg.large_fanout_bits = 2;
      inst.cfg.narrow_block = 8;
      inst.cfg.three_sided_block = 12;
      inst.cfg.three_sided_subblock = 2;
      inst.cfg.tiny_narrow = 4;
      break;
    default:
      inst.config_name = "explicit partial ranks";
      inst.cfg.small_alphabet_max = 2;
      inst.cfg.chunked_alphabet_max = 2;
      inst.cfg.inv_epsilon = 3;
      break;
  }
  return inst;
}

oracle::Rect random_rect(const std::vector<Point>& pts, std::mt19937_64& rng) {
  uint64_t mx = 0, my = 0;
  for (const auto& p : pts) mx = std::max(mx, p.x), my = std::max(my, p.y);
  auto coord = [&](uint64_t m) { return rng() % (m + 3); };
  oracle::Rect r{coord(mx), coord(mx), coord(my), coord(my)};
  if (rng() % 8 != 0) {
    if (r.x1 > r.x2) std::swap(r.x1, r.x2);
    if (r.y1 > r.y2) std::swap(r.y1, r.y2);
  }
  if (!pts.empty() && rng() % 5 == 0) {  // anchor a bound on an existing point
    const Point& p = pts[rng() % pts.size()];
    r.x1 = std::min(r.x1, p.x);
    r.x2 = std::max(r.x2, p.x);
  }
  return r;
}

std::vector<Point> as_set(std::vector<Point> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Answer of one engine for one rectangle, in a comparable form.
std::vector<Point> answer(const std::string& engine, const std::vector<Point>& pts, const Config& cfg,
                          const oracle::Rect& r) {
  if (engine == "report") return as_set(build_report(pts, cfg).report(r.x1, r.x2, r.y1, r.y2));
  if (engine == "succ") {
    auto p = build_successor(pts, cfg).successor(r.x1, r.x2, r.y1, r.y2);
    return p ? std::vector<Point>{*p} : std::vector<Point>{};
  }
  return build_sorted_report(pts, cfg).sorted(r.x1, r.x2, r.y1, r.y2, ~uint64_t{0});
}

std::vector<Point> expected(const std::string& engine, const std::vector<Point>& pts, const oracle::Rect& r) {
  if (engine == "report") return as_set(oracle::brute_report(pts, r));
  if (engine == "succ") {
    auto p = oracle::brute_successor(pts, r);
    return p ? std::vector<Point>{*p} : std::vector<Point>{};
  }
  return oracle::brute_sorted(pts, r, ~uint64_t{0});
}

// Greedily drops chunks of points while the mismatch persists.
std::vector<Point> minimize(const std::string& engine, std::vector<Point> pts, const Config& cfg,
                            const oracle::Rect& r) {
  auto fails = [&](const std::vector<Point>& p) {
    try {
      return answer(engine, p, cfg, r) != expected(engine, p, r);
    } catch (const std::exception&) {
      return true;
    }
  };
  for (size_t chunk = std::max<size_t>(pts.size() / 2, 1); chunk >= 1; chunk /= 2) {
    for (size_t i = 0; i < pts.size();) {
      std::vector<Point> trial(pts.begin(), pts.begin() + i);
      trial.insert(trial.end(), pts.begin() + std::min(pts.size(), i + chunk), pts.end());
      if (trial.size() < pts.size() && fails(trial)) pts = std::move(trial);
      else i += chunk;
    }
    if (chunk == 1) break;
  }
  return pts;
}

void dump(std::ostream& err, const std::string& what, const std::string& engine, const Instance& inst,
          uint64_t c, uint64_t seed, const oracle::Rect& r, const std::vector<Point>& pts) {
  err << "mismatch: " << what << "\n"
      << "engine " << engine << ", case " << c << ", seed " << seed << ", shape " << inst.shape << ", config "
      << inst.config_name << "\n"
      << "rect " << r.x1 << " " << r.x2 << " " << r.y1 << " " << r.y2 << "\n";
  if (engine != "cross") {
    err << "expected: " << result_line(expected(engine, pts, r)) << "\n";
    try {
      err << "got:      " << result_line(answer(engine, pts, inst.cfg, r)) << "\n";
    } catch (const std::exception& e) {
      err << "got:      exception: " << e.what() << "\n";
    }
  }
  for (const auto& [k, v] : inst.cfg.to_map()) err << "config " << k << "=" << v << "\n";
  err << "points (" << pts.size() << "):\n";
  for (const auto& p : pts) err << p.x << " " << p.y << "\n";
}

}  // namespace

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const bool all = a.type == "all";
  if (!all && a.type != "report" && a.type != "succ" && a.type != "sorted") {
    err << "verify: unknown type " << a.type << "\n";
    return kUsage;
  }
  auto want = [&](const char* t) { return all || a.type == t; };
  constexpr int kRects = 100;
  uint64_t checked = 0;
  for (uint64_t c = 0; c < a.cases; ++c) {
    std::mt19937_64 rng(a.seed * 0x9e3779b97f4a7c15ULL + c);
    const Instance inst = make_instance(a.n, c, rng);
    std::optional<ReportIndex> rep;
    std::optional<SuccessorIndex> suc;
    std::optional<SortedIndex> srt;
    if (want("report")) rep = build_report(inst.pts, inst.cfg);
    if (want("succ")) suc = build_successor(inst.pts, inst.cfg);
    if (want("sorted")) srt = build_sorted_report(inst.pts, inst.cfg);
    for (int q = 0; q < kRects; ++q) {
      const auto r = random_rect(inst.pts, rng);
      std::vector<Point> got_rep, got_srt;
      std::optional<Point> got_suc;
      auto fail = [&](const std::string& what, const std::string& engine) {
        const auto small = engine == "cross" ? inst.pts : minimize(engine, inst.pts, inst.cfg, r);
        dump(err, what, engine, inst, c, a.seed, r, small);
        return kMismatch;
      };
      if (rep) {
        got_rep = as_set(rep->report(r.x1, r.x2, r.y1, r.y2));
        if (got_rep != expected("report", inst.pts, r)) return fail("report differs from the oracle", "report");
      }
      if (suc) {
        got_suc = suc->successor(r.x1, r.x2, r.y1, r.y2);
        if (got_suc != oracle::brute_successor(inst.pts, r)) return fail("successor differs from the oracle", "succ");
      }
      if (srt) {
        got_srt = srt->sorted(r.x1, r.x2, r.y1, r.y2, ~uint64_t{0});
        if (got_srt != expected("sorted", inst.pts, r)) return fail("sorted differs from the oracle", "sorted");
        for (uint64_t k : {uint64_t{0}, uint64_t{1}, uint64_t{2}})
          if (srt->sorted(r.x1, r.x2, r.y1, r.y2, k) !=
              std::vector<Point>(got_srt.begin(), got_srt.begin() + std::min<uint64_t>(k, got_srt.size())))
            return fail("sorted prefix of length " + std::to_string(k) + " differs", "sorted");
      }
      if (suc && srt) {
        const auto first = got_srt.empty() ? std::nullopt : std::optional<Point>(got_srt.front());
        if (first != got_suc) return fail("first sorted point differs from the successor", "cross");
      }
      if (rep && srt && got_rep != as_set(got_srt)) return fail("report and sorted sets differ", "cross");
      ++checked;
    }
  }
  out << "verify: " << a.cases << " cases, n=" << a.n << ", " << checked << " rectangles, type " << a.type
      << ": ok\n";
  return kOk;
}

// ----------------------------------------------------------------------------- bench

namespace {

json counters_json(const OpCounters& c) {
  return {{"word_ops", c.word_ops},
          {"table_lookups", c.table_lookups},
          {"element_probes", c.element_probes},
          {"escalations", c.escalations}};
}

struct Stats {
  double mean = 0, median = 0;
};

Stats stats(std::vector<double> v) {
  Stats s;
  if (v.empty()) return s;
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
  std::sort(v.begin(), v.end());
  s.median = v.size() % 2 ? v[v.size() / 2] : (v[v.size() / 2 - 1] + v[v.size() / 2]) / 2;
  return s;
}

std::vector<Point> bench_points(uint64_t n, uint64_t sigma, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts(n);
  if (sigma == n) {
    std::vector<uint64_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (uint64_t y = 0; y < n; ++y) pts[y] = {perm[y], y};
  } else {
    for (uint64_t y = 0; y < n; ++y) pts[y] = {rng() % sigma, y};
  }
  return pts;
}

// Side lengths are log-uniform so that most rectangles are small.
std::vector<oracle::Rect> bench_rects(uint64_t n, uint64_t sigma, uint64_t count, uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5bd1e995);
  std::uniform_real_distribution<double> unit(0, 1);
  auto side = [&](uint64_t m) {
    const uint64_t len = static_cast<uint64_t>(std::exp2(unit(rng) * std::log2(double(std::max<uint64_t>(m, 1)))));
    const uint64_t lo = rng() % std::max<uint64_t>(m, 1);
    return std::pair(lo, std::min(lo + len, m ? m - 1 : 0));
  };
  std::vector<oracle::Rect> rs(count);
  for (auto& r : rs) {
    std::tie(r.x1, r.x2) = side(sigma);
    std::tie(r.y1, r.y2) = side(n);
  }
  return rs;
}

struct QueryRun {
  std::vector<double> probes, micros, output;
};

template <class F>
QueryRun run_queries(const std::vector<oracle::Rect>& rs, F&& f) {
  QueryRun q;
  for (const auto& r : rs) {
    const OpCounters before = counters();
    const auto t0 = Clock::now();
    const uint64_t out = f(r);
    const auto t1 = Clock::now();
    q.probes.push_back(double((counters() - before).element_probes));
    q.micros.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    q.output.push_back(double(out));
  }
  return q;
}

json query_json(const QueryRun& q) {
  const Stats p = stats(q.probes), l = stats(q.micros), o = stats(q.output);
  return {{"mean_probes", p.mean},       {"median_probes", p.median}, {"mean_output", o.mean},
          {"mean_latency_us", l.mean}, {"median_latency_us", l.median}};
}

template <class Build, class Query>
json bench_engine(const std::vector<Point>& pts, const std::vector<oracle::Rect>& rs, Build&& build,
                  Query&& query) {
  const OpCounters before = counters();
  const auto t0 = Clock::now();
  const auto idx = build(pts);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const OpCounters cost = counters() - before;
  const double n = double(pts.size());
  json j;
  j["build_seconds"] = secs;
  j["build_counters"] = counters_json(cost);
  j["word_ops_per_n_sqrt_lg_n"] = n > 1 ? double(cost.word_ops) / (n * std::sqrt(std::log2(n))) : 0.0;
  j["bits_per_point"] = n > 0 ? double(idx.engine().bits()) / n : 0.0;
  j["query"] = query_json(run_queries(rs, [&](const oracle::Rect& r) { return query(idx, r); }));
  return j;
}

uint64_t succ_query(const SuccessorIndex& s, const oracle::Rect& r) {
  return s.successor(r.x1, r.x2, r.y1, r.y2).has_value();
}

}  // namespace

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const bool all = a.type == "all";
  if (!all && a.type != "report" && a.type != "succ" && a.type != "sorted") {
    err << "bench: unknown type " << a.type << "\n";
    return kUsage;
  }
  const uint64_t sigma = a.sigma ? a.sigma : a.n;
  const auto pts = bench_points(a.n, sigma, a.seed);
  const auto rs = bench_rects(a.n, sigma, a.queries, a.seed);
  constexpr uint64_t kSortedLimit = 10;

  json j;
  j["n"] = a.n;
  j["sigma"] = sigma;
  j["seed"] = a.seed;
  j["queries"] = a.queries;
  json cfg;
  for (const auto& [k, v] : Config{}.resolved().to_map()) cfg[k] = v;
  j["config"] = cfg;
  json engines = json::object();
  if (all || a.type == "report")
    engines["report"] = bench_engine(
        pts, rs, [](const auto& p) { return build_report(p); },
        [](const ReportIndex& i, const oracle::Rect& r) { return i.report(r.x1, r.x2, r.y1, r.y2).size(); });
  if (all || a.type == "succ") {
    engines["succ"] = bench_engine(pts, rs, [](const auto& p) { return build_successor(p); }, succ_query);
    const auto base_pts = bench_points(a.base_n, a.base_n, a.seed);
    const auto base_idx = build_successor(base_pts);
    const auto base = run_queries(bench_rects(a.base_n, a.base_n, a.queries, a.seed),
                                  [&](const oracle::Rect& r) { return succ_query(base_idx, r); });
    const double base_mean = stats(base.probes).mean;
    const double mean = engines["succ"]["query"]["mean_probes"].get<double>();
    j["succ_probe_growth"] = {{"base_n", a.base_n},
                              {"base_mean_probes", base_mean},
                              {"ratio", base_mean > 0 ? mean / base_mean : 0.0}};
  }
  if (all || a.type == "sorted")
    engines["sorted"] = bench_engine(
        pts, rs, [](const auto& p) { return build_sorted_report(p); },
        [&](const SortedIndex& i, const oracle::Rect& r) { return i.sorted(r.x1, r.x2, r.y1, r.y2, kSortedLimit).size(); });
  j["engines"] = engines;

  if (a.json) {
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "n=" << a.n << " sigma=" << sigma << " queries=" << a.queries << " seed=" << a.seed << "\n";
  for (const auto& [name, e] : engines.items()) {
    out << name << ": build " << e["build_seconds"].get<double>() << " s, word_ops "
        << e["build_counters"]["word_ops"].get<uint64_t>() << " ("
        << e["word_ops_per_n_sqrt_lg_n"].get<double>() << " per n sqrt lg n), "
        << e["bits_per_point"].get<double>() << " bits/point\n"
        << "  probes mean " << e["query"]["mean_probes"].get<double>() << " median "
        << e["query"]["median_probes"].get<double>() << ", latency mean "
        << e["query"]["mean_latency_us"].get<double>() << " us median "
        << e["query"]["median_latency_us"].get<double>() << " us\n";
  }
  if (j.contains("succ_probe_growth"))
    out << "succ probe growth vs n=" << a.base_n << ": " << j["succ_probe_growth"]["ratio"].get<double>() << "\n";
  return kOk;
}

// ------------------------------------------------------------------------------- run

int run(int argc, char** argv) {
  CLI::App app{"Orthogonal range queries: build, query, verify and bench indexes"};
  app.require_subcommand(1);

  BuildArgs b;
  auto* build = app.add_subcommand("build", "Build an index from a point file");
  build->add_option("--input", b.input, "Point file: one 'x y' per line")->required();
  build->add_option("--type", b.type, "report | succ | sorted")->required();
  build->add_option("--out", b.out, "Index file to write")->required();
  build->add_option("--config", b.config, "Build parameter KEY=VAL (repeatable)");

  QueryArgs q;
  auto* query = app.add_subcommand("query", "Answer a batch of queries");
  query->add_option("--index", q.index, "Index file")->required();
  query->add_option("--queries", q.queries, "Query file")->required();
  query->add_option("--out", q.out, "Result file (default stdout)");

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "Check the engines against the oracles on random instances");
  verify->add_option("--n", v.n, "Points per instance");
  verify->add_option("--cases", v.cases, "Number of instances");
  verify->add_option("--seed", v.seed, "Random seed");
  verify->add_option("--type", v.type, "report | succ | sorted | all");

  BenchArgs be;
  auto* bench = app.add_subcommand("bench", "Measure construction and query cost");
  bench->add_option("--n", be.n, "Number of points");
  bench->add_option("--sigma", be.sigma, "x universe (default n: a permutation)");
  bench->add_option("--queries", be.queries, "Queries per engine");
  bench->add_option("--seed", be.seed, "Random seed");
  bench->add_option("--type", be.type, "report | succ | sorted | all");
  bench->add_option("--base-n", be.base_n, "Size of the reference successor index for probe growth");
  bench->add_flag("--json", be.json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (*build) return cmd_build(b, std::cerr);
  if (*query) return cmd_query(q, std::cout, std::cerr);
  if (*verify) return cmd_verify(v, std::cout, std::cerr);
  return cmd_bench(be, std::cout, std::cerr);
}

}  // namespace orq::cli
