#include <fstream>
#include <sstream>

#include "dposet/digraph.hpp"
#include "dposet/error.hpp"

namespace dposet {

Digraph parse_dgf(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw Error(Errc::BadFormat, "empty DGF input");

  int n = 0;
  if (lines[0].empty()) throw Error(Errc::BadFormat, "line 1: missing vertex count");
  for (char c : lines[0]) {
    if (c < '0' || c > '9') throw Error(Errc::BadFormat, "line 1: bad vertex count");
    n = n * 10 + (c - '0');
    if (n > Digraph::kMaxVertices)
      throw Error(Errc::TooLarge, "line 1: vertex count exceeds capacity");
  }
  if (n < 1) throw Error(Errc::BadFormat, "line 1: vertex count must be positive");
  if (static_cast<int>(lines.size()) != n + 1)
    throw Error(Errc::BadFormat, "expected " + std::to_string(n) + " matrix rows, got " +
                                     std::to_string(lines.size() - 1));
  Digraph g(n);
  for (int i = 0; i < n; ++i) {
    const auto row = lines[i + 1];
    if (static_cast<int>(row.size()) != n)
      throw Error(Errc::BadFormat, "line " + std::to_string(i + 2) + ": expected " +
                                       std::to_string(n) + " characters");
    for (int j = 0; j < n; ++j) {
      if (row[j] == '1')
        g.set_edge(i, j);
      else if (row[j] != '0')
        throw Error(Errc::BadFormat, "line " + std::to_string(i + 2) + ": non-binary character");
    }
  }
  return g;
}

Digraph read_dgf_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadFormat, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dgf(ss.str());
}

std::string to_dgf(const Digraph& g) {
  const int n = g.size();
  std::string out = std::to_string(n) + "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.push_back(g.edge(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

}  // namespace dposet
