#include "dposet/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dposet/error.hpp"

namespace dposet {

namespace {

void check_bound(int n, bool allow_extended) {
  if (n < 1) throw Error(Errc::BadSize, "level must be at least 1");
  const int cap = allow_extended ? kExtendedMaxLevel : kDefaultMaxLevel;
  if (n > cap)
    throw Error(Errc::TooLarge, "level " + std::to_string(n) + " exceeds the configured maximum " +
                                    std::to_string(cap));
}

unsigned worker_count(std::size_t jobs) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(jobs, 1)));
}

// Adds vertex n-1 to every representative of level n-1 in all possible ways.
Level extend_level(const Level& prev) {
  const int n = prev.n + 1;
  const int m = prev.n;
  const unsigned workers = worker_count(prev.members.size());
  std::vector<std::set<CanonCode>> found(workers);
  auto job = [&](unsigned w) {
    for (std::size_t r = w; r < prev.members.size(); r += workers) {
      const Digraph base = prev.members[r].to_digraph();
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * m + 1)); ++bits) {
        Digraph g(n);
        for (auto [u, v] : base.edges()) g.set_edge(u, v);
        for (int k = 0; k < m; ++k) {
          if ((bits >> k) & 1u) g.set_edge(m, k);
          if ((bits >> (m + k)) & 1u) g.set_edge(k, m);
        }
        if ((bits >> (2 * m)) & 1u) g.set_edge(m, m);
        found[w].insert(canonical_form(g));
      }
    }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
    for (auto& t : pool) t.join();
  }
  std::set<CanonCode> merged;
  for (auto& s : found) merged.insert(s.begin(), s.end());
  return Level{n, {merged.begin(), merged.end()}};
}

Level first_level() {
  return Level{1, {CanonCode::parse("1:0"), CanonCode::parse("1:1")}};
}

}  // namespace

std::vector<CanonCode> Catalog::all() const {
  std::vector<CanonCode> out;
  for (const auto& level : levels) out.insert(out.end(), level.members.begin(), level.members.end());
  return out;
}

Level enumerate_level(int n, bool allow_extended) {
  check_bound(n, allow_extended);
  Level level = first_level();
  while (level.n < n) level = extend_level(level);
  return level;
}

int emb_grade(const Digraph& g) { return g.size() + g.edge_count(); }

int emb_grade(const CanonCode& code) {
  const auto& t = code.text();
  return code.vertex_count() +
         static_cast<int>(std::count(t.begin() + t.find(':') + 1, t.end(), '1'));
}

std::vector<CanonCode> emb_lower_covers(const Digraph& g) {
  std::set<CanonCode> out;
  for (auto [u, v] : g.edges()) {
    Digraph h = g;
    h.set_edge(u, v, false);
    out.insert(canonical_form(h));
  }
  if (g.size() > 1) {
    std::vector<int> keep;
    for (int v = 0; v < g.size(); ++v) {
      if (g.out_mask(v) || g.in_mask(v)) continue;
      keep.clear();
      for (int k = 0; k < g.size(); ++k)
        if (k != v) keep.push_back(k);
      out.insert(canonical_form(induced(g, keep)));
    }
  }
  return {out.begin(), out.end()};
}

Catalog build_catalog(int max_n, bool allow_extended) {
  check_bound(max_n, allow_extended);
  Catalog c;
  c.max_n = max_n;
  c.levels.push_back(first_level());
  while (static_cast<int>(c.levels.size()) < max_n) c.levels.push_back(extend_level(c.levels.back()));

  std::set<CoverPair> sub, emb;
  for (const auto& level : c.levels) {
    for (const auto& code : level.members) {
      const Digraph g = code.to_digraph();
      if (level.n >= 2)
        for (const auto& lower : one_vertex_deletions(g)) sub.insert({lower, code});
      for (const auto& lower : emb_lower_covers(g)) emb.insert({lower, code});
    }
  }
  c.sub_covers.assign(sub.begin(), sub.end());
  c.emb_covers.assign(emb.begin(), emb.end());
  return c;
}

const Catalog& shared_catalog(int max_n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Catalog>> memo;
  std::lock_guard lock(mu);
  auto& slot = memo[max_n];
  if (!slot) slot = std::make_unique<Catalog>(build_catalog(max_n, true));
  return *slot;
}

namespace {

std::string dot_escape(const std::string& s) { return "\"" + s + "\""; }

std::string export_levels(const Catalog& c, ExportFormat format, int max_level) {
  if (format == ExportFormat::Json) {
    nlohmann::ordered_json j;
    j["kind"] = "levels";
    j["max_level"] = max_level;
    auto sizes = nlohmann::json::array();
    auto levels = nlohmann::ordered_json::array();
    for (const auto& level : c.levels) {
      if (level.n > max_level) break;
      sizes.push_back(level.members.size());
      nlohmann::ordered_json lj;
      lj["n"] = level.n;
      auto members = nlohmann::json::array();
      for (const auto& m : level.members) members.push_back(m.text());
      lj["members"] = members;
      levels.push_back(lj);
    }
    j["sizes"] = sizes;
    j["levels"] = levels;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "digraph levels {\n";
  for (const auto& level : c.levels) {
    if (level.n > max_level) break;
    os << "  subgraph level" << level.n << " {\n    rank=same;\n";
    for (const auto& m : level.members) os << "    " << dot_escape(m.text()) << ";\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_hasse(const Catalog& c, bool emb, ExportFormat format, int max_level) {
  std::vector<std::pair<CanonCode, int>> nodes;
  for (const auto& level : c.levels)
    for (const auto& m : level.members) {
      const int grade = emb ? emb_grade(m) : level.n;
      if (grade <= max_level) nodes.emplace_back(m, grade);
    }
  std::stable_sort(nodes.begin(), nodes.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  std::vector<const CoverPair*> arcs;
  for (const auto& p : emb ? c.emb_covers : c.sub_covers) {
    const int g = emb ? emb_grade(p.upper) : p.upper.vertex_count();
    if (g <= max_level) arcs.push_back(&p);
  }
  const int exact = std::min(max_level, c.max_n);
  if (format == ExportFormat::Json) {
    nlohmann::ordered_json j;
    j["kind"] = "hasse";
    j["order"] = emb ? "emb" : "sub";
    j["grading"] = emb ? "vertices+edges" : "vertices";
    j["max_level"] = max_level;
    j["truncated"] = emb;
    j["exact_through_grade"] = emb ? exact : max_level;
    auto jn = nlohmann::ordered_json::array();
    for (const auto& [code, grade] : nodes) {
      nlohmann::ordered_json x;
      x["code"] = code.text();
      x["grade"] = grade;
      jn.push_back(x);
    }
    auto je = nlohmann::json::array();
    for (const auto* p : arcs) je.push_back({p->lower.text(), p->upper.text()});
    j["nodes"] = jn;
    j["edges"] = je;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  if (emb)
    os << "// embeddability order, graded by |V|+|E|; stored universe has <= " << c.max_n
       << " vertices; exact through grade " << exact << "\n";
  else
    os << "// substructure order, graded by |V|\n";
  os << "digraph hasse_" << (emb ? "emb" : "sub") << " {\n  rankdir=BT;\n";
  for (const auto& [code, grade] : nodes)
    os << "  " << dot_escape(code.text()) << " [grade=" << grade << "];\n";
  for (const auto* p : arcs)
    os << "  " << dot_escape(p->lower.text()) << " -> " << dot_escape(p->upper.text()) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace

std::string export_catalog(const Catalog& catalog, ExportWhat what, ExportFormat format,
                           int max_level) {
  if (max_level <= 0) max_level = catalog.max_n;
  switch (what) {
    case ExportWhat::Levels: return export_levels(catalog, format, max_level);
    case ExportWhat::HasseSub: return export_hasse(catalog, false, format, max_level);
    case ExportWhat::HasseEmb: return export_hasse(catalog, true, format, max_level);
  }
  return {};
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("DPOSET_CACHE_DIR"); env && *env) return env;
  return ".dposet-cache";
}

void save_cache(const Catalog& catalog, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::CacheError, "cannot create " + dir.string() + ": " + ec.message());
  auto open = [&](const std::string& name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::CacheError, "cannot write " + (dir / name).string());
    return out;
  };
  for (const auto& level : catalog.levels) {
    auto out = open("level" + std::to_string(level.n) + ".txt");
    for (const auto& m : level.members) out << m.text() << '\n';
  }
  // Stale higher levels would make a later load see a larger catalog.
  for (int n = catalog.max_n + 1; std::filesystem::exists(dir / ("level" + std::to_string(n) + ".txt")); ++n)
    std::filesystem::remove(dir / ("level" + std::to_string(n) + ".txt"));
  for (const auto& [name, covers] :
       {std::pair{"sub_covers.txt", &catalog.sub_covers}, std::pair{"emb_covers.txt", &catalog.emb_covers}}) {
    auto out = open(name);
    for (const auto& p : *covers) out << p.lower.text() << '\t' << p.upper.text() << '\n';
  }
}

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(Errc::CacheError, "missing cache file " + file.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

CanonCode cache_code(const std::string& text, const std::filesystem::path& file, std::size_t line) {
  try {
    return CanonCode::parse(text);
  } catch (const Error& e) {
    throw Error(Errc::CacheError,
                file.string() + ":" + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace

Catalog load_cache(const std::filesystem::path& dir) {
  Catalog c;
  for (int n = 1;; ++n) {
    const auto file = dir / ("level" + std::to_string(n) + ".txt");
    if (!std::filesystem::exists(file)) break;
    Level level{n, {}};
    const auto lines = read_lines(file);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto code = cache_code(lines[i], file, i + 1);
      if (code.vertex_count() != n)
        throw Error(Errc::CacheError, file.string() + ":" + std::to_string(i + 1) +
                                          ": code has the wrong vertex count");
      if (!level.members.empty() && !(level.members.back() < code))
        throw Error(Errc::CacheError, file.string() + ":" + std::to_string(i + 1) +
                                          ": codes out of order");
      level.members.push_back(std::move(code));
    }
    if (level.members.empty())
      throw Error(Errc::CacheError, file.string() + ":1: empty level file");
    c.levels.push_back(std::move(level));
  }
  if (c.levels.empty()) throw Error(Errc::CacheError, dir.string() + ": no level files");
  c.max_n = static_cast<int>(c.levels.size());
  for (const auto& [name, covers] :
       {std::pair{"sub_covers.txt", &c.sub_covers}, std::pair{"emb_covers.txt", &c.emb_covers}}) {
    const auto file = dir / name;
    const auto lines = read_lines(file);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto tab = lines[i].find('\t');
      if (tab == std::string::npos)
        throw Error(Errc::CacheError, file.string() + ":" + std::to_string(i + 1) + ": missing tab");
      covers->push_back({cache_code(lines[i].substr(0, tab), file, i + 1),
                         cache_code(lines[i].substr(tab + 1), file, i + 1)});
    }
  }
  return c;
}

Catalog load_or_build(int max_n, const std::filesystem::path& dir, bool allow_extended) {
  check_bound(max_n, allow_extended);
  if (std::filesystem::exists(dir / ("level" + std::to_string(max_n) + ".txt"))) {
    try {
      Catalog cached = load_cache(dir);
      if (cached.max_n == max_n) return cached;
    } catch (const Error&) {
      // fall through and rebuild
    }
  }
  Catalog c = build_catalog(max_n, allow_extended);
  save_cache(c, dir);
  return c;
}

}  // namespace dposet
