#include <algorithm>
#include <unordered_map>

#include "dposet/error.hpp"
#include "dposet/fo.hpp"

namespace dposet::fo {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<int>& k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : k) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ull;
    return h;
  }
};

// Values: index >= 0 is a universe element; a negative value -1-c refers to
// constant c that lies outside the universe.
class Evaluator {
 public:
  Evaluator(const Formula& root, const Poset& u) : u_(u) { root_ = compile(root); }

  std::vector<std::string> slot_names() const { return names_; }
  int slot_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
  }

  void bind(int slot, int value) { env_[slot] = value; }
  bool run() { return eval(root_); }

 private:
  struct TermRef {
    int slot = -1;   // variable slot, or -1 for a constant
    int value = 0;   // constant value (see class comment)
  };
  struct Node {
    Kind kind;
    int slot = -1;
    std::vector<int> kids;
    TermRef a, b;
    std::vector<int> free_slots;
    std::unordered_map<std::vector<int>, bool, KeyHash> memo;
  };

  int slot_for(const std::string& name) {
    int s = slot_of(name);
    if (s >= 0) return s;
    names_.push_back(name);
    env_.push_back(-1);
    return static_cast<int>(names_.size()) - 1;
  }

  TermRef term_ref(const Term& t) {
    if (t.is_var) return {slot_for(t.name), 0};
    if (auto idx = u_.index_of(t.code)) return {-1, *idx};
    for (std::size_t c = 0; c < outside_.size(); ++c)
      if (outside_[c].first == t.code) return {-1, -1 - static_cast<int>(c)};
    outside_.emplace_back(t.code, t.code.to_digraph());
    return {-1, -static_cast<int>(outside_.size())};
  }

  int compile(const Formula& f) {
    Node node;
    node.kind = f.kind;
    if (f.kind == Kind::Leq || f.kind == Kind::Eq) {
      node.a = term_ref(f.lhs);
      node.b = term_ref(f.rhs);
    } else {
      if (f.kind == Kind::Forall || f.kind == Kind::Exists) node.slot = slot_for(f.var);
      for (const auto& k : f.kids) node.kids.push_back(compile(*k));
    }
    if (f.kind == Kind::Forall || f.kind == Kind::Exists)
      for (const auto& name : free_variables(f)) node.free_slots.push_back(slot_for(name));
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  int value(const TermRef& t) const { return t.slot >= 0 ? env_[t.slot] : t.value; }

  const Digraph& digraph_of(int v) {
    if (v < 0) return outside_[-1 - v].second;
    auto it = inside_graphs_.find(v);
    if (it == inside_graphs_.end()) it = inside_graphs_.emplace(v, u_.element(v).to_digraph()).first;
    return it->second;
  }

  const CanonCode& code_of(int v) const { return v >= 0 ? u_.element(v) : outside_[-1 - v].first; }

  bool leq(int a, int b) {
    if (a >= 0 && b >= 0) return u_.leq(a, b);
    const Digraph& ga = digraph_of(a);
    const Digraph& gb = digraph_of(b);
    return u_.order() == Order::Sub ? is_substructure(ga, gb) : is_embeddable(ga, gb);
  }

  bool eval(int id) {
    Node& n = nodes_[id];
    switch (n.kind) {
      case Kind::Leq: return leq(value(n.a), value(n.b));
      case Kind::Eq: {
        const int a = value(n.a), b = value(n.b);
        if (a >= 0 && b >= 0) return a == b;
        return code_of(a) == code_of(b);
      }
      case Kind::Not: return !eval(n.kids[0]);
      case Kind::And: return eval(n.kids[0]) && eval(n.kids[1]);
      case Kind::Or: return eval(n.kids[0]) || eval(n.kids[1]);
      case Kind::Implies: return !eval(n.kids[0]) || eval(n.kids[1]);
      case Kind::Iff: return eval(n.kids[0]) == eval(n.kids[1]);
      case Kind::Forall:
      case Kind::Exists: {
        std::vector<int> key;
        key.reserve(n.free_slots.size());
        for (int s : n.free_slots) key.push_back(env_[s]);
        if (auto it = n.memo.find(key); it != n.memo.end()) return it->second;
        const bool want = n.kind == Kind::Exists;
        const int slot = n.slot;
        const int body = n.kids[0];
        const int saved = env_[slot];
        bool result = !want;
        for (int x = 0; x < u_.size(); ++x) {
          env_[slot] = x;
          if (eval(body) == want) {
            result = want;
            break;
          }
        }
        env_[slot] = saved;
        nodes_[id].memo.emplace(std::move(key), result);
        return result;
      }
    }
    return false;
  }

  const Poset& u_;
  std::vector<Node> nodes_;
  int root_ = 0;
  std::vector<std::string> names_;
  std::vector<int> env_;
  std::vector<std::pair<CanonCode, Digraph>> outside_;
  std::unordered_map<int, Digraph> inside_graphs_;
};

}  // namespace

bool evaluate(const Formula& f, const Poset& universe, const Binding& binding) {
  Evaluator ev(f, universe);
  for (const auto& name : free_variables(f)) {
    auto it = binding.find(name);
    if (it == binding.end()) throw Error(Errc::UnboundVariable, "free variable '" + name + "' is not bound");
    auto canon = canonical_form(it->second.to_digraph());
    auto idx = universe.index_of(canon);
    if (!idx)
      throw Error(Errc::BadBinding, "'" + name + "' is bound to " + it->second.text() +
                                        ", which lies outside the universe");
    ev.bind(ev.slot_of(name), *idx);
  }
  return ev.run();
}

std::vector<CanonCode> defined_set(const Formula& f, const Poset& universe) {
  const auto free = free_variables(f);
  if (free.size() != 1)
    throw Error(Errc::BadArity, "defined_set needs exactly one free variable, found " +
                                    std::to_string(free.size()));
  Evaluator ev(f, universe);
  const int slot = ev.slot_of(*free.begin());
  std::vector<CanonCode> out;
  for (int x = 0; x < universe.size(); ++x) {
    ev.bind(slot, x);
    if (ev.run()) out.push_back(universe.element(x));
  }
  return out;
}

}  // namespace dposet::fo
