#include "lemma_support.hpp"

#include <algorithm>
#include <sstream>

#include "dposet/error.hpp"

namespace dposet::detail {

CanonCode pair_code(std::string_view letter) {
  static const std::vector<std::pair<std::string_view, std::string_view>> table = {
      {"E", "2:0000"}, {"P", "2:0010"}, {"E'", "2:0110"}, {"A", "2:0001"}, {"B", "2:0011"},
      {"C", "2:0101"}, {"D", "2:0111"}, {"L", "2:1001"}, {"Q", "2:1011"}, {"L'", "2:1111"}};
  for (const auto& [name, code] : table)
    if (name == letter) return CanonCode::parse(code);
  throw Error(Errc::UnknownConstant, "no two-vertex type '" + std::string(letter) + "'");
}

Digraph pair_type(std::string_view letter) { return pair_code(letter).to_digraph(); }

int count_high_degree(const Digraph& g, int q) {
  int count = 0;
  for (int v = 0; v < g.size(); ++v)
    if (loop_free_degree(g, v) >= q) ++count;
  return count;
}

std::set<CanonCode> small_types(const Digraph& g, int k) {
  std::set<CanonCode> out;
  for (int s = 1; s <= std::min(k, g.size()); ++s) {
    auto t = substructure_types(g, s);
    out.insert(t.begin(), t.end());
  }
  return out;
}

bool sub(const Digraph& pattern, const Digraph& host) {
  return pattern.size() <= host.size() && is_substructure(pattern, host);
}

Digraph lf_part_or_empty(const Digraph& g, LoopPart which) {
  auto part = loop_part(g, which);
  if (!part) throw Error(Errc::EmptySubset, "loop part is empty");
  return *part;
}

namespace {

// Component lists: pairs (kind, size) with kind 'I' or 'O'.
void io_lists(int remaining, std::vector<std::pair<char, int>>& cur, std::pair<char, int> min_part,
              std::vector<std::vector<std::pair<char, int>>>& out) {
  if (!cur.empty()) out.push_back(cur);
  for (int size = 1; size <= remaining; ++size)
    for (char kind : {'I', 'O'}) {
      if (kind == 'O' && size < 3) continue;
      std::pair<char, int> part{kind, size};
      if (part < min_part) continue;
      cur.push_back(part);
      io_lists(remaining - size, cur, part, out);
      cur.pop_back();
    }
}

}  // namespace

std::vector<Digraph> io_universe(int max_n) {
  std::vector<std::vector<std::pair<char, int>>> lists;
  std::vector<std::pair<char, int>> cur;
  io_lists(max_n, cur, {'I', 0}, lists);
  std::vector<Digraph> out;
  for (const auto& list : lists) {
    std::optional<Digraph> g;
    for (auto [kind, size] : list) {
      Digraph c = kind == 'O' ? family(Family::O, size) : family(Family::I, size);
      g = g ? disjoint_union(*g, c) : c;
    }
    out.push_back(*g);
  }
  return out;
}

std::string io_key(const Digraph& g) {
  if (!is_io(g)) throw Error(Errc::BadParams, "not an IO-graph");
  std::vector<std::string> parts;
  for (const auto& c : wccs(g)) {
    const bool circle = c.size() >= 3 && c.edge_count() == c.size();
    parts.push_back((circle ? "O" : "I") + std::to_string(c.size()));
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& p : parts) key += (key.empty() ? "" : " ") + p;
  return key;
}

int param_int(const Params& p, const std::string& key, int fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::BadParams, "parameter " + key + " is not an integer: " + it->second);
  }
}

std::vector<int> param_ints(const Params& p, const std::string& key, std::vector<int> fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  std::vector<int> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(Errc::BadParams, "parameter " + key + " is not an integer list: " + it->second);
    }
  }
  if (out.empty()) throw Error(Errc::BadParams, "parameter " + key + " is empty");
  return out;
}

std::string param_str(const Params& p, const std::string& key, const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

Digraph param_graph(const std::string& name) {
  try {
    if (!name.empty() && name[0] == '@') return pair_type(name.substr(1));
    return named_digraph(name);
  } catch (const Error& e) {
    throw Error(Errc::BadParams, std::string("bad graph parameter: ") + e.what());
  }
}

std::set<CanonCode> arrow_pictures() {
  std::set<CanonCode> out;
  for (int extra = 0; extra < 4; ++extra) {
    Digraph two_loops(3);  // 0,1 looped -> 2
    two_loops.set_edge(0, 0);
    two_loops.set_edge(1, 1);
    two_loops.set_edge(0, 2);
    two_loops.set_edge(1, 2);
    if (extra & 1) two_loops.set_edge(0, 1);
    if (extra & 2) two_loops.set_edge(1, 0);
    out.insert(canonical_form(two_loops));
    Digraph one_loop(3);  // 0 looped -> 1, 2
    one_loop.set_edge(0, 0);
    one_loop.set_edge(0, 1);
    one_loop.set_edge(0, 2);
    if (extra & 1) one_loop.set_edge(1, 2);
    if (extra & 2) one_loop.set_edge(2, 1);
    out.insert(canonical_form(one_loop));
  }
  return out;
}

Digraph loop_to_two_plain() { return Digraph::from_edges(3, {{0, 0}, {0, 1}, {0, 2}}); }

std::set<CanonCode> asymmetric_squares() {
  std::set<CanonCode> out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      Digraph g = Digraph::from_edges(4, {{0, 0}, {1, 1}, {0, 2}, {1, 3}});
      if (a & 1) g.set_edge(0, 1);
      if (a & 2) g.set_edge(1, 0);
      if (b & 1) g.set_edge(2, 3);
      if (b & 2) g.set_edge(3, 2);
      out.insert(canonical_form(g));
    }
  return out;
}

std::string code_of(const Digraph& g) { return canonical_form(g).text(); }

LemmaReport timed(const std::string& id, LemmaMode mode, const Params& params,
                  const std::function<void(LemmaReport&)>& body) {
  LemmaReport r;
  r.id = id;
  r.mode = mode;
  r.params = params;
  const auto start = std::chrono::steady_clock::now();
  body(r);
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace dposet::detail
