#include "mbca/hierarchy.hpp"

#include <algorithm>
#include <charconv>

namespace mbca {

std::string to_string(const OrdinalW2& a) {
  if (a.p == 0) return std::to_string(a.s);
  std::string out = "w*" + std::to_string(a.p);
  if (a.s > 0) out += "+" + std::to_string(a.s);
  return out;
}

namespace {

std::optional<Counter> parse_natural(std::string_view t) {
  Counter v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || v < 0) return std::nullopt;
  return v;
}

OrdinalW2 plus_one(OrdinalW2 a) { return {a.p, a.s + 1}; }

}  // namespace

std::optional<OrdinalW2> parse_ordinal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() != 'w') {
    auto s = parse_natural(text);
    if (!s) return std::nullopt;
    return OrdinalW2{0, *s};
  }
  if (text == "w") return OrdinalW2{1, 0};
  if (text.substr(0, 2) != "w*") return std::nullopt;
  text.remove_prefix(2);
  const auto plus = text.find('+');
  auto p = parse_natural(text.substr(0, plus));
  if (!p || *p == 0) return std::nullopt;
  if (plus == std::string_view::npos) return OrdinalW2{*p, 0};
  auto s = parse_natural(text.substr(plus + 1));
  if (!s || *s == 0) return std::nullopt;
  return OrdinalW2{*p, *s};
}

Analysis::Analysis(Mbca m, std::optional<LoopFilter> filter)
    : m_(std::make_shared<const Mbca>(std::move(m))), filter_(std::move(filter)) {
  oracle_ = std::make_unique<ReachOracle>(*m_);
  loops_ = mbca::loops(*m_, this->filter());
  essential_ = mbca::essential_sets(loops_);
  // Superchain nodes may sit at configurations the initial run never visits (derivation asks
  // from arbitrary starting counters), so they draw on every covering cycle.
  structural_ = mbca::loops(*m_, this->filter(), false);

  // Longest alternating chain ending in each essential set; subsets come first by size.
  auto order = essential_;
  std::sort(order.begin(), order.end(),
            [](const EssentialSet& a, const EssentialSet& b) { return popcount(a.set) < popcount(b.set); });
  for (const auto& f : order) {
    int best = 1;
    for (const auto& g : order)
      if (g.set != f.set && is_subset(g.set, f.set) && g.positive != f.positive)
        best = std::max(best, length_[g.set] + 1);
    length_[f.set] = best;
    m_value_ = std::max(m_value_, best);
  }
  build_nodes();
  build_omegas();
}

int Analysis::chain_length(StateSet f) const {
  auto it = length_.find(f);
  return it == length_.end() ? 0 : it->second;
}

bool Analysis::chain_sign(StateSet f) const {
  const bool own = m_->accepts_set(f);
  return chain_length(f) % 2 == 1 ? own : !own;
}

void Analysis::build_nodes() {
  if (m_value_ == 0) return;
  Counter top_entry = 0;
  for (const auto& d : structural_)
    if (chain_length(d.essential_set) == m_value_) top_entry = std::max(top_entry, entry_counter(d, filter()));
  const Counter k = static_cast<Counter>(m_->num_states());
  ceiling_ = top_entry + 2 * (k + 1) * (m_->max_increment() + 1);

  // One node per (anchor, set, counter). Zero-level loops anchor at counter 0 only; for
  // nonzero-level loops the one with the lowest entry counter represents the rest.
  struct Entries {
    std::optional<std::size_t> zero;
    std::optional<std::pair<Counter, std::size_t>> nonzero;
  };
  std::map<std::pair<StateId, StateSet>, Entries> by_anchor;
  for (std::size_t i = 0; i < structural_.size(); ++i) {
    const auto& d = structural_[i];
    if (chain_length(d.essential_set) != m_value_) continue;
    auto& e = by_anchor[{d.anchor, d.essential_set}];
    if (d.level == Level::Z) {
      if (!e.zero) e.zero = i;
      continue;
    }
    const Counter c = entry_counter(d, filter());
    if (!e.nonzero || c < e.nonzero->first) e.nonzero = std::make_pair(c, i);
  }
  for (const auto& [key, e] : by_anchor) {
    auto add = [&](Counter c, std::size_t loop) {
      nodes_at_[key].push_back(nodes_.size());
      nodes_.push_back({key.first, key.second, c, chain_sign(key.second), loop});
    };
    if (e.zero) add(0, *e.zero);
    if (e.nonzero)
      for (Counter c = e.nonzero->first; c <= ceiling_; ++c) add(c, e.nonzero->second);
  }
  node_memo_.assign(nodes_.size(), std::nullopt);
  node_busy_.assign(nodes_.size(), 0);
}

void Analysis::build_omegas() {
  if (m_value_ == 0) return;
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < structural_.size(); ++i) {
    const auto& d = structural_[i];
    if (d.level != Level::I || d.delta_kind != LoopKind::Equal) continue;
    if (chain_length(d.essential_set) != m_value_) continue;
    (chain_sign(d.essential_set) ? pos : neg).push_back(i);
  }
  for (std::size_t a : pos) {
    for (std::size_t b : neg) {
      const auto& da = structural_[a];
      const auto& db = structural_[b];
      const bool seen = std::any_of(omegas_.begin(), omegas_.end(), [&](const Omega& w) {
        return w.pos_set == da.essential_set && w.neg_set == db.essential_set;
      });
      if (seen) continue;
      const auto& from_a = *oracle_->from({da.anchor, ceiling_});
      const auto& from_b = *oracle_->from({db.anchor, ceiling_});
      if (!from_a.least_at_least(db.anchor, entry_counter(db, filter()))) continue;
      if (!from_b.least_at_least(da.anchor, entry_counter(da, filter()))) continue;
      omegas_.push_back({a, b, da.essential_set, db.essential_set});
    }
  }
  omega_next_.assign(omegas_.size(), {});
  for (std::size_t i = 0; i < omegas_.size(); ++i) {
    const StateSet here = omegas_[i].pos_set | omegas_[i].neg_set;
    for (std::size_t j = 0; j < omegas_.size(); ++j) {
      if (i == j) continue;
      const StateSet there = omegas_[j].pos_set | omegas_[j].neg_set;
      bool all = true;
      for (StateId x = 0; x < m_->num_states() && all; ++x) {
        if (!contains(here, x)) continue;
        const auto& r = *oracle_->from({x, ceiling_});
        for (StateId y = 0; y < m_->num_states() && all; ++y)
          if (contains(there, y)) all = r.unbounded(y);
      }
      if (all) omega_next_[i].push_back(j);
    }
  }
  for (const auto& w : omegas_) {
    std::array<std::unique_ptr<ReachOracle>, 2> pair;
    for (int sign = 0; sign < 2; ++sign) {
      const StateSet other = sign ? w.neg_set : w.pos_set;
      const StateSet all = m_->num_states() == 64 ? ~StateSet{0} : (StateSet{1} << m_->num_states()) - 1;
      entry_machines_.push_back(std::make_shared<const Mbca>(restrict_to(*m_, all & ~other, m_->name())));
      pair[sign] = std::make_unique<ReachOracle>(*entry_machines_.back());
    }
    entry_oracles_.push_back(std::move(pair));
  }
  omega_memo_.assign(omegas_.size(), std::nullopt);
  omega_best_next_.assign(omegas_.size(), std::nullopt);
  omega_busy_.assign(omegas_.size(), 0);
}

OrdinalW2 Analysis::omega_path(std::size_t w) const {
  if (omega_memo_[w]) return *omega_memo_[w];
  omega_busy_[w] = 1;
  OrdinalW2 best{1, 0};
  for (std::size_t next : omega_next_[w]) {
    if (omega_busy_[next]) continue;  // mutual links would loop; the shorter reading is kept
    const OrdinalW2 cand{omega_path(next).p + 1, 0};
    if (cand > best) {
      best = cand;
      omega_best_next_[w] = next;
    }
  }
  omega_busy_[w] = 0;
  omega_memo_[w] = best;
  return best;
}

bool Analysis::can_enter(std::size_t w, Configuration from, bool sign) const {
  const auto& o = omegas_[w];
  const StateSet other = sign ? o.neg_set : o.pos_set;
  const StateSet side = sign ? o.pos_set : o.neg_set;
  if (contains(other, from.state)) return false;
  const auto& r = *entry_oracles_[w][sign ? 1 : 0]->from(from);
  for (StateId q = 0; q < m_->num_states(); ++q)
    if (contains(side, q) && r.unbounded(q)) return true;
  return false;
}

std::vector<std::size_t> Analysis::reachable_nodes(Configuration from) const {
  std::vector<std::size_t> out;
  const auto& r = *oracle_->from(from);
  for (const auto& [key, list] : nodes_at_) {
    if (!r.reachable(key.first)) continue;
    for (std::size_t n : list) {
      const Counter c = nodes_[n].counter;
      // Counters above the ceiling are represented by the ceiling node.
      if (r.contains(key.first, c) || (c == ceiling_ && r.least_at_least(key.first, c))) out.push_back(n);
    }
  }
  return out;
}

const Analysis::Value& Analysis::node_value(std::size_t u) const {
  if (node_memo_[u]) return *node_memo_[u];
  node_busy_[u] = 1;
  const Node& nu = nodes_[u];
  Value best{{0, 1}, Choice::Alone, 0};
  for (std::size_t v : reachable_nodes({nu.anchor, nu.counter})) {
    if (nodes_[v].sign == nu.sign || node_busy_[v]) continue;
    const OrdinalW2 cand = plus_one(node_value(v).length);
    if (cand > best.length) best = {cand, Choice::Next, v};
  }
  for (std::size_t w = 0; w < omegas_.size(); ++w) {
    if (omegas_[w].pos_set == nu.set || omegas_[w].neg_set == nu.set) continue;
    if (!can_enter(w, {nu.anchor, nu.counter}, !nu.sign)) continue;
    const OrdinalW2 cand{omega_path(w).p, 1};
    if (cand > best.length) best = {cand, Choice::Enter, w};
  }
  node_busy_[u] = 0;
  node_memo_[u] = best;
  return *node_memo_[u];
}

OrdinalW2 Analysis::best(Configuration x, bool positive) const {
  OrdinalW2 out{0, 0};
  for (std::size_t v : reachable_nodes(x))
    if (nodes_[v].sign == positive) out = std::max(out, node_value(v).length);
  for (std::size_t w = 0; w < omegas_.size(); ++w)
    if (can_enter(w, x, positive)) out = std::max(out, OrdinalW2{omega_path(w).p, 0});
  return out;
}

InvariantTriple Analysis::invariants() const {
  InvariantTriple t;
  t.m = m_value_;
  if (m_value_ == 0) return t;
  const Configuration start{m_->initial(), 0};
  const OrdinalW2 pos = best(start, true), neg = best(start, false);
  t.n = std::max(pos, neg);
  t.s = pos == neg ? 0 : pos > neg ? 1 : -1;
  t.coarse_class = t.s > 0 ? 'C' : t.s < 0 ? 'D' : 'E';
  return t;
}

Chain Analysis::chain_for(StateSet f) const {
  Chain c;
  c.site = f;
  StateSet cur = f;
  c.sets.push_back(cur);
  while (chain_length(cur) > 1) {
    const bool sign = m_->accepts_set(cur);
    for (const auto& g : essential_) {
      if (g.set != cur && is_subset(g.set, cur) && g.positive != sign &&
          chain_length(g.set) == chain_length(cur) - 1) {
        cur = g.set;
        break;
      }
    }
    c.sets.push_back(cur);
  }
  std::reverse(c.sets.begin(), c.sets.end());
  c.positive = m_->accepts_set(c.sets.front());
  return c;
}

std::vector<Chain> Analysis::chains() const {
  std::vector<Chain> out;
  for (const auto& f : essential_) {
    const bool maximal = std::none_of(essential_.begin(), essential_.end(), [&](const EssentialSet& g) {
      return g.set != f.set && is_subset(f.set, g.set);
    });
    if (maximal) out.push_back(chain_for(f.set));
  }
  return out;
}

std::vector<OmegaLink> Analysis::omega_links() const {
  std::vector<OmegaLink> out;
  const auto& start = *oracle_->from({m_->initial(), 0});
  for (const auto& w : omegas_) {
    const auto& pos = structural_[w.pos_loop];
    const auto& neg = structural_[w.neg_loop];
    if (start.unbounded(pos.anchor) && start.unbounded(neg.anchor)) out.push_back({pos, neg});
  }
  return out;
}

Superchain Analysis::assemble(Configuration start, bool sign) const {
  Superchain sc;
  sc.positive = sign;
  sc.length = best(start, sign);
  std::optional<std::size_t> node, omega;
  for (std::size_t v : reachable_nodes(start))
    if (nodes_[v].sign == sign && node_value(v).length == sc.length) {
      node = v;
      break;
    }
  if (!node) {
    for (std::size_t w = 0; w < omegas_.size() && !omega; ++w)
      if (can_enter(w, start, sign) && OrdinalW2{omega_path(w).p, 0} == sc.length) omega = w;
    if (omega) sc.anchor_loop = structural_[sign ? omegas_[*omega].pos_loop : omegas_[*omega].neg_loop];
  }
  while (node) {
    const Node& n = nodes_[*node];
    sc.finite_part.push_back(chain_for(n.set));
    const Value& v = node_value(*node);
    node.reset();
    if (v.choice == Choice::Next) node = v.target;
    if (v.choice == Choice::Enter) omega = v.target;
  }
  while (omega) {
    sc.omega_part.push_back({structural_[omegas_[*omega].pos_loop], structural_[omegas_[*omega].neg_loop]});
    omega_path(*omega);
    omega = omega_best_next_[*omega];
  }
  return sc;
}

std::vector<Superchain> Analysis::superchains() const {
  std::vector<Superchain> out;
  const auto t = invariants();
  if (t.m == 0) return out;
  const Configuration start{m_->initial(), 0};
  for (bool sign : {true, false})
    if (best(start, sign) == t.n) out.push_back(assemble(start, sign));
  return out;
}

}  // namespace mbca
