#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dposet/digraph.hpp"
#include "dposet/families.hpp"

namespace dposet {

enum class LemmaMode { Universe, Targeted };
enum class LemmaStatus { Pass, Fail, Skipped };

using Params = std::map<std::string, std::string>;

struct LemmaCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct LemmaReport {
  std::string id;
  LemmaMode mode = LemmaMode::Universe;
  Params params;
  LemmaStatus status = LemmaStatus::Pass;
  std::string reason;  // set when skipped
  std::vector<std::vector<std::string>> counterexamples;
  double elapsed_seconds = 0;
  std::vector<LemmaCheck> checks;
  std::vector<std::string> notes;

  // Records a check; a failing check flips the status and stores the
  // counterexample (or the check name when none is given).
  void check(const std::string& name, bool pass, const std::string& detail = {},
             std::vector<std::string> counterexample = {});
  void skip(const std::string& why);
  bool passed() const { return status == LemmaStatus::Pass; }

  // timing=false leaves out elapsed_seconds for reproducible output.
  std::string to_json(bool pretty = false, bool timing = true) const;
};

struct LemmaInfo {
  std::string id;
  LemmaMode mode;
  std::string summary;
  int default_margin;  // universe mode only
};

const std::vector<LemmaInfo>& lemma_registry();
const LemmaInfo& lemma_info(std::string_view id);  // UnknownLemma

// Universe-mode lemmas; margin < 0 selects the lemma's default.
LemmaReport verify_lemma(std::string_view id, int universe_bound = 4, int margin = -1,
                         const Params& params = {});

// Targeted-mode lemmas at their default or given parameters.
LemmaReport verify_targeted(std::string_view id, const Params& params = {});

// Dispatches on the registry mode.
LemmaReport run_lemma(std::string_view id, int universe_bound = 4, int margin = -1,
                      const Params& params = {});

// Encode/decode pipeline on the edge-supporting construction.
struct DecodeContext {
  Digraph g;
  SupportSpec spec;
  SupportConstruct construct;

  DecodeContext(Digraph graph, SupportSpec s);
};

// X is the substructure of the construct on the given vertex subset (bit v for
// vertex v). Empty result: no vertex of G survives.
std::optional<Digraph> decode(const DecodeContext& ctx, std::uint64_t subset);

// Subset that keeps the vertices and edges of G listed by the masks
// (vertex_mask over V(G), edge_mask over the row-major edge list).
std::uint64_t forward_witness(const DecodeContext& ctx, std::uint64_t vertex_mask,
                              std::uint64_t edge_mask);

LemmaReport verify_main_theorem(const Digraph& g, const SupportSpec& spec, int samples,
                                std::uint64_t seed);

}  // namespace dposet
