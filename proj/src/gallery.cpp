#include "mbca/gallery.hpp"

#include <algorithm>
#include <bit>

namespace mbca {

ClassSpec spec_of(const WadgeName& n) {
  check_name(n);
  if (n.blocks.empty()) throw Error(ErrorKind::UnsupportedSpec, "the bare class E has no canonical member here");
  std::shared_ptr<const ClassSpec> tail;
  for (auto it = n.blocks.rbegin(); it != n.blocks.rend(); ++it) {
    auto spec = std::make_shared<ClassSpec>();
    spec->letter = it->letter;
    spec->m = it->m;
    spec->alpha = it->alpha;
    spec->tail = tail;
    tail = spec;
  }
  return *tail;
}

ClassSpec parse_class_spec(std::string_view text) { return spec_of(parse_name(text)); }

WadgeName induced_name(const ClassSpec& spec) {
  WadgeName n;
  for (const ClassSpec* s = &spec; s; s = s->tail.get()) n.blocks.push_back({s->letter, s->m, s->alpha});
  n.terminal_bare_e = n.blocks.back().letter == 'E';
  check_name(n);
  return n;
}

namespace {

class Builder {
 public:
  std::string state(const std::string& name) {
    c_.states.push_back(name);
    return name;
  }
  const std::string& letter(const std::string& name) {
    if (std::find(c_.alphabet.begin(), c_.alphabet.end(), name) == c_.alphabet.end()) c_.alphabet.push_back(name);
    return name;
  }
  void edge(const std::string& from, const std::string& a, const std::string& to, int delta) {
    c_.both(from, letter(a), to, delta);
  }
  void nonzero_edge(const std::string& from, const std::string& a, const std::string& to, int delta) {
    c_.nonzero(from, letter(a), to, delta);
  }
  void accept(std::vector<std::string> set) { c_.accept.push_back(std::move(set)); }
  std::size_t size() const { return c_.states.size(); }
  const std::vector<std::string>& states() const { return c_.states; }
  MbcaCandidate& candidate() { return c_; }

 private:
  MbcaCandidate c_;
};

// Complete graph r1..rm; letter j<i> jumps to r_i. A subset is accepted iff its largest
// index has the parity that makes {r1} ⊂ {r1,r2} ⊂ ... alternate from `positive`.
std::vector<std::string> chain_gadget(Builder& b, const std::string& prefix, int m, bool positive) {
  std::vector<std::string> r;
  for (int i = 1; i <= m; ++i) r.push_back(b.state(prefix + "r" + std::to_string(i)));
  for (const auto& from : r)
    for (int i = 1; i <= m; ++i) b.edge(from, "j" + std::to_string(i), r[i - 1], 0);
  for (unsigned subset = 1; subset < (1U << m); ++subset) {
    const int top = 32 - std::countl_zero(subset);
    if ((top % 2 == 1) != positive) continue;
    std::vector<std::string> members;
    for (int i = 0; i < m; ++i)
      if ((subset >> i) & 1U) members.push_back(r[i]);
    b.accept(members);
  }
  return r;
}

// Prime class with chain length m and superchain length alpha; returns the start state.
std::string prime(Builder& b, const std::string& prefix, bool positive, int m, OrdinalW2 alpha) {
  std::string start;
  std::vector<std::string> last;  // states of the previous component, bridged forward by "fwd"
  bool sign = positive;
  auto link = [&](const std::string& to) {
    for (const auto& from : last) b.edge(from, "fwd", to, 0);
  };
  for (Counter i = 1; i <= alpha.s; ++i) {
    auto g = chain_gadget(b, prefix + "g" + std::to_string(i), m, sign);
    if (start.empty()) start = g[0];
    link(g[0]);
    last = g;
    sign = !sign;
  }
  // After the loop `sign` is the opposite of the last gadget's sign.
  const bool entry = alpha.s > 0 ? sign : positive;
  const bool pump_sign = alpha.s > 0 ? !sign : positive;
  for (Counter u = 1; u <= alpha.p; ++u) {
    const std::string tag = std::to_string(u);
    const std::string pump = b.state(prefix + "p" + tag);
    b.edge(pump, "up", pump, 1);
    if (pump_sign) b.accept({pump});
    if (start.empty()) start = pump;
    link(pump);
    auto side_in = chain_gadget(b, prefix + "a" + tag, m, entry);
    auto side_out = chain_gadget(b, prefix + "b" + tag, m, !entry);
    b.edge(pump, "in", side_in[0], 0);
    for (const auto& x : side_in) b.nonzero_edge(x, "x", side_out[0], -1);
    for (const auto& y : side_out) b.nonzero_edge(y, "x", side_in[0], -1);
    last = side_in;
    last.insert(last.end(), side_out.begin(), side_out.end());
  }
  return start;
}

std::string build_class(Builder& b, const std::string& prefix, const ClassSpec& spec) {
  if (spec.letter != 'E') return prime(b, prefix, spec.letter == 'C', spec.m, spec.alpha);
  const std::string to_c = prefix + "toC", to_d = prefix + "toD";
  const std::string pos = prime(b, prefix + "C", true, spec.m, spec.alpha);
  const std::string neg = prime(b, prefix + "D", false, spec.m, spec.alpha);
  const std::size_t first = b.size();
  const std::string start = spec.tail ? build_class(b, prefix + "T", *spec.tail) : b.state(prefix + "z");
  const std::vector<std::string> branch(b.states().begin() + static_cast<std::ptrdiff_t>(first), b.states().end());
  for (const auto& q : branch) {
    b.edge(q, to_c, pos, 0);
    b.edge(q, to_d, neg, 0);
  }
  return start;
}

void check_box(const ClassSpec& spec, int depth) {
  auto unsupported = [](const std::string& why) { throw Error(ErrorKind::UnsupportedSpec, why); };
  if (depth > kMaxGalleryDepth) unsupported("nesting deeper than 3");
  if (spec.m < 1 || spec.m > kMaxGalleryM) unsupported("m outside [1, 4]");
  if (spec.alpha < OrdinalW2{0, 1} || spec.alpha.p > 3 || spec.alpha.s > 3) unsupported("alpha outside [1, w*3+3]");
  if (spec.tail) {
    if (spec.letter != 'E') unsupported("only E classes take a tail");
    if (spec.tail->m >= spec.m) unsupported("tail m must be smaller");
    check_box(*spec.tail, depth + 1);
  }
}

}  // namespace

Mbca canonical(const ClassSpec& spec) {
  check_box(spec, 1);
  induced_name(spec);
  Builder b;
  const std::string start = build_class(b, "", spec);
  if (b.size() > kMaxStates) throw Error(ErrorKind::UnsupportedSpec, "canonical machine exceeds 64 states");
  auto& c = b.candidate();
  c.name = "canonical";
  c.initial = start;
  return build(c);
}

std::vector<ClassSpec> gallery_box(const std::string& letters, int max_m, const std::vector<OrdinalW2>& alphas) {
  std::vector<ClassSpec> out;
  for (char letter : letters)
    for (int m = 1; m <= max_m; ++m)
      for (const auto& a : alphas) out.push_back({letter, m, a, nullptr});
  return out;
}

}  // namespace mbca
