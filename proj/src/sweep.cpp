#include "tln/sweep.hpp"

#include <algorithm>
#include <optional>

#include "tln/mutations.hpp"
#include "tln/regime.hpp"

namespace tln {

namespace {

struct Probe {
  std::vector<int> ids;
  std::string name;
};

std::vector<Probe> s_probes(int n) {
  std::vector<Probe> out;
  for (Subset sigma = 1; sigma <= full_subset(n); ++sigma)
    for (int i = 0; i < n; ++i) {
      auto ids = a_sigma(sigma, n);
      ids.push_back(s_element(sigma, i, n));
      out.push_back({std::move(ids), "s^{" + subset_name(sigma, n) + "}_" + std::to_string(i + 1)});
    }
  return out;
}

std::vector<Sign> probe_signs(const Network& net, const std::vector<Probe>& probes) {
  const GroundSet g(net);
  std::vector<Sign> out;
  out.reserve(probes.size());
  for (const auto& p : probes) out.push_back(g.sign(p.ids));
  return out;
}

bool has_zero(const std::vector<Sign>& s) { return std::find(s.begin(), s.end(), Sign::Zero) != s.end(); }

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

struct Crossing {
  Rational near, far;  // bracket ends, near is closer to the start of the path
  std::vector<std::size_t> probes;
};

}  // namespace

std::string SweepEvent::change() const { return support_change(before, after); }

std::string SweepResult::csv() const {
  std::string out = "lo,hi,before,after,change,walls\n";
  for (const auto& e : events) {
    std::string walls;
    for (const auto& w : e.walls) walls += (walls.empty() ? "" : " ") + w;
    out += to_exact_string(e.lo) + "," + to_exact_string(e.hi) + ",\"" + e.before.label() + "\",\"" + e.after.label() + "\",\"" +
           e.change() + "\",\"" + walls + "\"\n";
  }
  return out;
}

SweepResult sweep(const ParamPath& path, const Rational& tol) {
  path.check();
  if (tol <= 0) throw std::invalid_argument("sweep tolerance must be positive");
  const int n = path.base.n;
  const auto probes = s_probes(n);
  auto signs_at = [&](const Rational& v) { return probe_signs(path.at(v), probes); };
  auto fp_at = [&](const Rational& v) { return fp_from_chirotope(Chirotope::of(path.at(v))); };

  SweepResult res;
  res.param = path.target;
  res.from = path.from;
  res.to = path.to;
  for (const Rational* end : {&path.from, &path.to}) {
    const auto s = signs_at(*end);
    for (std::size_t r = 0; r < s.size(); ++r)
      if (s[r] == Sign::Zero)
        throw DegenerateError(probes[r].name + " = 0 at " + path.target.name() + " = " + to_exact_string(*end));
  }
  res.start = fp_at(path.from);
  res.end = fp_at(path.to);

  const Rational step = (path.to - path.from) / path.steps;
  Rational prev = path.from;
  auto prev_s = signs_at(prev);
  for (int k = 1; k <= path.steps; ++k) {
    Rational v = k == path.steps ? path.to : Rational(path.from + step * k);
    auto s = signs_at(v);
    // A grid point on a wall: nudge it forward inside the same step.
    for (int t = 1; has_zero(s) && k < path.steps && t < 50; ++t) {
      v = path.from + step * k + step * t / 1009;
      s = signs_at(v);
    }
    if (s == prev_s) {
      prev = v;
      continue;
    }

    std::vector<Crossing> crossings;
    for (std::size_t r = 0; r < s.size(); ++r) {
      if (s[r] == prev_s[r]) continue;
      Rational near = prev, far = v;
      const Sign start_sign = prev_s[r];
      while (abs_q(far - near) > tol) {
        Rational mid = (near + far) / 2;
        const Sign m = GroundSet(path.at(mid)).sign(probes[r].ids);
        if (m == Sign::Zero) {
          near = far = mid;
          break;
        }
        (m == start_sign ? near : far) = mid;
      }
      crossings.push_back({near, far, {r}});
    }
    const bool up = path.to > path.from;
    auto before = [&](const Rational& a, const Rational& b) { return up ? a < b : a > b; };
    std::sort(crossings.begin(), crossings.end(), [&](const Crossing& a, const Crossing& b) { return before(a.near, b.near); });
    // Brackets that touch or overlap cannot be ordered: one event.
    std::vector<Crossing> groups;
    for (auto& c : crossings) {
      if (!groups.empty() && !before(groups.back().far, c.near)) {
        auto& g = groups.back();
        if (before(g.far, c.far)) g.far = c.far;
        g.probes.insert(g.probes.end(), c.probes.begin(), c.probes.end());
      } else {
        groups.push_back(std::move(c));
      }
    }
    std::vector<Rational> points{prev};
    for (std::size_t g = 0; g + 1 < groups.size(); ++g) points.push_back((groups[g].far + groups[g + 1].near) / 2);
    points.push_back(v);
    std::vector<SupportFamily> fps;
    for (const auto& p : points) fps.push_back(fp_at(p));
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (fps[g] == fps[g + 1]) continue;
      SweepEvent e;
      e.lo = up ? groups[g].near : groups[g].far;
      e.hi = up ? groups[g].far : groups[g].near;
      e.before = fps[g];
      e.after = fps[g + 1];
      for (auto r : groups[g].probes) e.walls.push_back(probes[r].name);
      res.events.push_back(std::move(e));
    }
    prev = v;
    prev_s = std::move(s);
  }
  return res;
}

std::size_t full_support_basis(int i) {
  if (i < 0 || i > 2) throw IndexError("neuron index out of range");
  std::vector<int> ids{e_elem(i), h_elem(0), h_elem(1), h_elem(2)};
  std::sort(ids.begin(), ids.end());
  return BasisTable::get(3).rank(ids);
}

namespace {

Parameter weight(int i, int j) { return {Parameter::Kind::Weight, i, j}; }

std::string idx(int a, int b) { return std::to_string(a + 1) + std::to_string(b + 1); }

// Open interval of W_ab values that keep the edge status of b -> a.
std::pair<Rational, Rational> weight_box(const Network& net, const Digraph& g, int a, int b) {
  const Rational c = -net.input(a) / net.input(b);  // b -> a iff W_ab > c
  if (g.has(b, a)) return {c, Rational(0)};
  return {c - 3, c};
}

std::vector<Rational> grid(const std::pair<Rational, Rational>& box, int count) {
  std::vector<Rational> out;
  const Rational width = box.second - box.first;
  for (int t = 1; t <= count; ++t) {
    Rational v = box.first + width * t / (count + 1);
    // Round to thousandths while staying strictly inside the box.
    Rational scaled = v * 1000;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational r(q, 1000);
    r.canonicalize();
    if (r > box.first && r < box.second) v = r;
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

// Grid points of the (p, q) slice inside the graph-preserving box, nearest
// first.
std::vector<std::pair<Rational, Rational>> slice_points(const Network& net, const Digraph& g, Parameter p, Parameter q, int count) {
  const auto xs = grid(weight_box(net, g, p.i, p.j), count);
  const auto ys = grid(weight_box(net, g, q.i, q.j), count);
  const Rational x0 = p.get(net), y0 = q.get(net);
  std::vector<std::tuple<Rational, Rational, Rational>> cand;
  for (const auto& x : xs)
    for (const auto& y : ys) cand.emplace_back(abs_q(x - x0) + abs_q(y - y0), x, y);
  std::stable_sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& [d, x, y] : cand) out.emplace_back(x, y);
  return out;
}

bool admissible_move(const Network& trial, const Digraph& g) {
  try {
    if (graph_of(trial) != g) return false;
    fp_chirotope(trial);
  } catch (const DegenerateError&) {
    return false;
  }
  return true;
}

template <typename Goal>
std::optional<std::pair<Rational, Rational>> search_slice(const Network& net, const Digraph& g, Parameter p, Parameter q, int count, Goal goal) {
  for (const auto& [x, y] : slice_points(net, g, p, q, count)) {
    Network trial = net;
    p.set(trial, x);
    q.set(trial, y);
    if (admissible_move(trial, g) && goal(trial)) return std::make_pair(x, y);
  }
  return std::nullopt;
}

}  // namespace

std::string UnlockPlan::to_string() const {
  std::string out = "target s^{123}_" + std::to_string(i + 1) + " (" + sign_char(before) + ")\n";
  out += "relation b" + std::to_string(i + 1) + " s^{123}_" + std::to_string(i + 1) + " - Delta^{" + idx(i, j) + "}_" + std::to_string(k + 1) +
         " Delta^{" + idx(i, k) + "}_" + std::to_string(j + 1) + " + s^{" + (i < k ? idx(i, k) : idx(k, i)) + "}_" + std::to_string(i + 1) +
         " s^{" + (i < j ? idx(i, j) : idx(j, i)) + "}_" + std::to_string(i + 1) + " = 0\n";
  for (std::size_t p = 0; p < phases.size(); ++p) {
    out += "phase " + std::to_string(p + 1) + ": " + phases[p].goal + "\n";
    for (const auto& s : phases[p].steps)
      out += "  " + s.param.name() + ": " + to_exact_string(s.from) + " -> " + to_exact_string(s.to) + (s.to > s.from ? " (increase)" : " (decrease)") + "\n";
  }
  out += "result s^{123}_" + std::to_string(i + 1) + " " + sign_char(before) + " -> " + sign_char(after) + "\n";
  return out;
}

UnlockPlan unlock_path(const Network& net, std::size_t target) {
  if (net.n != 3) throw UnsupportedError("unlock_path is stated for n = 3");
  int i = -1;
  for (int c = 0; c < 3; ++c)
    if (full_support_basis(c) == target) i = c;
  if (i < 0) throw std::invalid_argument("unlock_path targets a determinant s^{123}_i");
  const Digraph g = graph_of(net);
  const int j = (i + 1) % 3 < (i + 2) % 3 ? (i + 1) % 3 : (i + 2) % 3;
  const int k = 3 - i - j;
  if (!bifurcation_allowed(g, i, j, k))
    throw UnsupportedError("s^{123}_" + std::to_string(i + 1) + " is pinned by the relation b_i s^{ijk}_i - Delta^{ij}_k Delta^{ik}_j + s^{ik}_i s^{ij}_i = 0 for graph " +
                           g.to_string());

  auto T = [&](const Network& x) { return sign_of(s_determinant(x, full_subset(3), i).value); };

  UnlockPlan plan;
  plan.i = i;
  plan.j = j;
  plan.k = k;
  plan.before = T(net);
  const Sign goal = -plan.before;
  auto flips = [&](const Network& x) { return T(x) == goal; };

  auto apply = [&](Network& cur, Parameter a, Parameter b, const std::pair<Rational, Rational>& to, UnlockPhase& phase) {
    for (auto [param, value] : {std::pair{a, to.first}, std::pair{b, to.second}}) {
      const Rational old = param.get(cur);
      if (old == value) continue;
      param.set(cur, value);
      if (graph_of(cur) != g) throw std::logic_error("unlock step changed the graph");
      phase.steps.push_back({param, old, value});
    }
    phase.after = cur;
  };
  auto flip_phase = [&](int m, int o) {
    return UnlockPhase{"move Delta^{" + idx(i, m) + "}_" + std::to_string(o + 1) + " to flip s^{123}_" + std::to_string(i + 1), {}, net};
  };

  // Phase two varies Delta^{im}_o through (W_io, W_mo). When no point of that
  // slice flips the target, phase one first flips Delta^{io}_m through
  // (W_im, W_om), which moves the slice.
  for (int m : {j, k}) {
    const int o = j + k - m;
    const Parameter a2 = weight(i, o), b2 = weight(m, o);
    if (auto hit = search_slice(net, g, a2, b2, 60, flips)) {
      Network cur = net;
      UnlockPhase phase = flip_phase(m, o);
      apply(cur, a2, b2, *hit, phase);
      plan.phases.push_back(std::move(phase));
      plan.after = T(cur);
      return plan;
    }
  }
  for (int m : {j, k}) {
    const int o = j + k - m;
    if (separates(g, m, i, o) || separates(g, m, o, i)) continue;
    const Parameter a1 = weight(i, m), b1 = weight(o, m);
    const Parameter a2 = weight(i, o), b2 = weight(m, o);
    const Sign d0 = sign_of(delta(net, i, o, m));
    std::size_t tried = 0;
    for (const auto& pt : slice_points(net, g, a1, b1, 40)) {
      Network mid = net;
      a1.set(mid, pt.first);
      b1.set(mid, pt.second);
      if (sign_of(delta(mid, i, o, m)) != -d0 || !admissible_move(mid, g)) continue;
      if (++tried > 40) break;
      const auto hit = search_slice(mid, g, a2, b2, 30, flips);
      if (!hit) continue;
      Network cur = net;
      UnlockPhase one{"flip Delta^{" + idx(i, o) + "}_" + std::to_string(m + 1) + " to unlock s^{123}_" + std::to_string(i + 1), {}, net};
      apply(cur, a1, b1, pt, one);
      UnlockPhase two = flip_phase(m, o);
      apply(cur, a2, b2, *hit, two);
      plan.phases.push_back(std::move(one));
      plan.phases.push_back(std::move(two));
      plan.after = T(cur);
      return plan;
    }
  }
  throw std::runtime_error("no graph-preserving move found that flips s^{123}_" + std::to_string(i + 1));
}

}  // namespace tln
