#include "tln/network.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tln {

int subset_size(Subset s) { return std::popcount(s); }

std::vector<int> members(Subset s) {
  std::vector<int> out;
  for (int i = 0; s != 0; ++i, s >>= 1)
    if (s & 1U) out.push_back(i);
  return out;
}

std::string subset_name(Subset s, int n) {
  if (s == 0) return "{}";
  std::string out;
  for (int i : members(s)) {
    if (n > 9 && !out.empty()) out += '.';
    out += std::to_string(i + 1);
  }
  return out;
}

Subset parse_subset(std::string_view text, int n) {
  if (text == "{}" || text.empty()) return 0;
  Subset s = 0;
  auto add = [&](int one_based) {
    if (one_based < 1 || one_based > n) throw ParseError("neuron index out of range in '" + std::string(text) + "'");
    s = with(s, one_based - 1);
  };
  if (n > 9) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto dot = text.find('.', pos);
      const auto part = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
      add(std::stoi(std::string(part)));
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw ParseError("bad subset '" + std::string(text) + "'");
      add(c - '0');
    }
  }
  return s;
}

bool support_less(Subset a, Subset b) {
  const int sa = subset_size(a), sb = subset_size(b);
  if (sa != sb) return sa < sb;
  const auto ma = members(a), mb = members(b);
  return ma < mb;
}

Network::Network(Matrix w, std::vector<Rational> inputs) : n(static_cast<int>(inputs.size())), W(std::move(w)), b(std::move(inputs)) {
  if (W.rows() != b.size() || W.cols() != b.size())
    throw DimensionError("network: W must be n x n with n = len(b)");
  if (n < 1) throw DimensionError("network: need at least one neuron");
}

std::vector<Violation> validate(const Network& net, NetworkClass cls) {
  std::vector<Violation> out;
  auto name = [](int i, int j) { return std::to_string(i + 1) + std::to_string(j + 1); };
  for (int i = 0; i < net.n; ++i) {
    if (net.w(i, i) != 0)
      out.push_back({Violation::Kind::NonzeroDiagonal, i, i, "W_" + name(i, i) + " != 0"});
  }
  if (cls == NetworkClass::General) return out;
  for (int i = 0; i < net.n; ++i)
    for (int j = 0; j < net.n; ++j)
      if (i != j && net.w(i, j) >= 0)
        out.push_back({Violation::Kind::NonNegativeWeight, i, j, "W_" + name(i, j) + " >= 0"});
  for (int i = 0; i < net.n; ++i)
    if (net.input(i) <= 0)
      out.push_back({Violation::Kind::NonPositiveInput, i, i, "b_" + std::to_string(i + 1) + " <= 0"});
  return out;
}

namespace {
void check_index(const Network& net, int i) {
  if (i < 0 || i >= net.n) throw IndexError("neuron index out of range");
}
}  // namespace

Rational s_pair(const Network& net, int i, int j) {
  check_index(net, i);
  check_index(net, j);
  if (i == j) throw IndexError("s_pair needs i != j");
  return net.input(i) * net.w(j, i) + net.input(j);
}

Rational delta(const Network& net, int i, int j, int k) {
  check_index(net, i);
  check_index(net, j);
  check_index(net, k);
  if (i == j || j == k || i == k) throw IndexError("delta needs three distinct indices");
  return net.input(j) * net.w(i, k) - net.input(i) * net.w(j, k);
}

Digraph::Digraph(int n) : n_(n), adj_(static_cast<std::size_t>(n * n), 0) {}

std::size_t Digraph::index(int from, int to) const {
  if (from < 0 || to < 0 || from >= n_ || to >= n_) throw IndexError("digraph node out of range");
  return static_cast<std::size_t>(from * n_ + to);
}

void Digraph::set(int from, int to, bool on) {
  if (from == to) throw IndexError("digraph: self-loops are not allowed");
  adj_[index(from, to)] = on ? 1 : 0;
}

bool Digraph::is_sink(int v) const {
  for (int u = 0; u < n_; ++u)
    if (u != v && has(v, u)) return false;
  return true;
}

std::vector<std::pair<int, int>> Digraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && has(i, j)) out.emplace_back(i, j);
  return out;
}

std::uint64_t Digraph::mask() const {
  if (n_ > 8) throw UnsupportedError("Digraph::mask needs n <= 8");
  std::uint64_t m = 0;
  for (auto [i, j] : edges()) m |= std::uint64_t{1} << (i * n_ + j);
  return m;
}

Digraph Digraph::from_mask(int n, std::uint64_t mask) {
  Digraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && ((mask >> (i * n + j)) & 1U)) g.set(i, j);
  return g;
}

Digraph Digraph::permuted(std::span<const int> perm) const {
  Digraph g(n_);
  for (auto [i, j] : edges()) g.set(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return g;
}

std::string Digraph::to_string() const {
  std::string out;
  for (auto [i, j] : edges()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i + 1) + ">" + std::to_string(j + 1);
  }
  return out;
}

Digraph Digraph::parse(std::string_view text, int n) {
  Digraph g(n);
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto gt = item.find('>');
    if (gt == std::string::npos) throw ParseError("bad edge '" + item + "', expected 'i>j'");
    int a = 0, b = 0;
    try {
      a = std::stoi(item.substr(0, gt));
      b = std::stoi(item.substr(gt + 1));
    } catch (const std::exception&) {
      throw ParseError("bad edge '" + item + "'");
    }
    if (a < 1 || b < 1 || a > n || b > n || a == b) throw ParseError("bad edge '" + item + "'");
    g.set(a - 1, b - 1);
  }
  return g;
}

Digraph graph_of(const Network& net) {
  Digraph g(net.n);
  for (int i = 0; i < net.n; ++i)
    for (int j = 0; j < net.n; ++j) {
      if (i == j) continue;
      const int s = sgn(s_pair(net, i, j));
      if (s == 0)
        throw DegenerateError("s^{" + std::to_string(i + 1) + std::to_string(j + 1) + "}_" + std::to_string(j + 1) +
                              " = 0: network lies on a graph boundary");
      if (s > 0) g.set(i, j);
    }
  return g;
}

bool separates(const Digraph& g, int m, int a, int b) { return g.has(m, a) && !g.has(m, b); }

bool non_separating(const Digraph& g, int m) {
  for (int a = 0; a < g.n(); ++a)
    for (int b = 0; b < g.n(); ++b)
      if (a != b && a != m && b != m && separates(g, m, a, b)) return false;
  return true;
}

Rational Parameter::get(const Network& net) const { return kind == Kind::Weight ? net.w(i, j) : net.input(i); }

void Parameter::set(Network& net, const Rational& value) const {
  if (kind == Kind::Weight)
    net.w(i, j) = value;
  else
    net.input(i) = value;
}

std::string Parameter::name() const {
  if (kind == Kind::Input) return "b" + std::to_string(i + 1);
  if (i < 9 && j < 9) return "W" + std::to_string(i + 1) + std::to_string(j + 1);
  return "W" + std::to_string(i + 1) + "," + std::to_string(j + 1);
}

Parameter Parameter::parse(std::string_view text, int n) {
  if (text.empty()) throw ParseError("empty parameter name");
  Parameter p;
  const std::string rest(text.substr(1));
  auto idx = [&](const std::string& s) {
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(s, &used);
      if (used != s.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("bad parameter '" + std::string(text) + "'");
    }
    if (v < 1 || v > n) throw ParseError("parameter index out of range in '" + std::string(text) + "'");
    return v - 1;
  };
  if (text[0] == 'b') {
    p.kind = Kind::Input;
    p.i = p.j = idx(rest);
  } else if (text[0] == 'W' || text[0] == 'w') {
    p.kind = Kind::Weight;
    if (const auto comma = rest.find(','); comma != std::string::npos) {
      p.i = idx(rest.substr(0, comma));
      p.j = idx(rest.substr(comma + 1));
    } else if (rest.size() == 2) {
      p.i = idx(rest.substr(0, 1));
      p.j = idx(rest.substr(1, 1));
    } else {
      throw ParseError("bad parameter '" + std::string(text) + "', expected e.g. W31");
    }
    if (p.i == p.j) throw ParseError("diagonal weights are fixed at zero");
  } else {
    throw ParseError("bad parameter '" + std::string(text) + "', expected W<ij> or b<i>");
  }
  return p;
}

void ParamPath::check() const {
  if (from == to) throw std::invalid_argument("parameter path: from == to");
  if (steps < 1) throw std::invalid_argument("parameter path: steps must be >= 1");
  for (const Rational* v : {&from, &to}) {
    if (target.kind == Parameter::Kind::Weight && *v >= 0)
      throw std::invalid_argument("parameter path: " + target.name() + " must stay < 0");
    if (target.kind == Parameter::Kind::Input && *v <= 0)
      throw std::invalid_argument("parameter path: " + target.name() + " must stay > 0");
  }
}

Network ParamPath::at(const Rational& value) const {
  Network net = base;
  target.set(net, value);
  return net;
}

namespace {
Rational json_number(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("network JSON: numbers must be decimal strings (got " + j.dump() + ")");
}
}  // namespace

Network parse_network_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("network JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("W") || !doc.contains("b"))
    throw ParseError("network JSON: expected object with keys n, W, b");
  const auto& jw = doc["W"];
  const auto& jb = doc["b"];
  if (!jw.is_array() || !jb.is_array()) throw ParseError("network JSON: W and b must be arrays");
  const std::size_t n = jb.size();
  if (doc.contains("n") && doc["n"].get<std::size_t>() != n) throw ParseError("network JSON: n does not match len(b)");
  if (jw.size() != n) throw ParseError("network JSON: W must have n rows");
  Matrix W(n, n);
  std::vector<Rational> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!jw[i].is_array() || jw[i].size() != n) throw ParseError("network JSON: W must be n x n");
    for (std::size_t j = 0; j < n; ++j) W(i, j) = json_number(jw[i][j]);
    b[i] = json_number(jb[i]);
  }
  return Network(std::move(W), std::move(b));
}

Network read_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open network file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network_json(ss.str());
}

std::string network_to_json(const Network& net) {
  // Hand-formatted so matrices stay one row per line.
  std::string out = "{\"n\": " + std::to_string(net.n) + ", \"W\": [";
  for (int i = 0; i < net.n; ++i) {
    out += i ? ",\n  [" : "\n  [";
    for (int j = 0; j < net.n; ++j) {
      if (j) out += ", ";
      out += "\"" + to_exact_string(net.w(i, j)) + "\"";
    }
    out += "]";
  }
  out += "],\n \"b\": [";
  for (int i = 0; i < net.n; ++i) {
    if (i) out += ", ";
    out += "\"" + to_exact_string(net.input(i)) + "\"";
  }
  out += "]}\n";
  return out;
}

}  // namespace tln
