#include "orbends/permgroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "orbends/errors.hpp"
#include "text_lines.hpp"

namespace orbends {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<char> hit(images_.size(), 0);
  for (Point p : images_) {
    if (p < 0 || p >= degree() || hit[p])
      throw input_error("image list is not a bijection");
    hit[p] = 1;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(int degree,
                                     std::span<const std::vector<Point>> cycles) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::vector<char> moved(degree, 0);
  for (const auto &cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point from = cycle[i];
      Point to = cycle[(i + 1) % cycle.size()];
      if (from < 0 || from >= degree || to < 0 || to >= degree)
        throw input_error("cycle point out of range");
      if (moved[from])
        throw input_error("point " + std::to_string(from) +
                          " appears in two cycles");
      moved[from] = 1;
      images[from] = to;
    }
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (int i = 0; i < degree(); ++i)
    inv[images_[i]] = i;
  Permutation result;
  result.images_ = std::move(inv);
  return result;
}

Permutation operator*(const Permutation &p, const Permutation &q) {
  if (p.degree() != q.degree())
    throw input_error("degree mismatch in permutation product");
  Permutation result;
  result.images_.resize(p.images_.size());
  for (int i = 0; i < p.degree(); ++i)
    result.images_[i] = q.images_[p.images_[i]];
  return result;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream out;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i] || images_[i] == i)
      continue;
    out << '(';
    for (int j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      if (j != i)
        out << ' ';
      out << j;
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

std::size_t PermutationHash::operator()(const Permutation &p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images())
    h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
  return h;
}

Permutation parse_permutation(std::string_view text, int degree) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos)
    throw input_error("empty permutation");
  if (s[first] != '(') {
    std::istringstream in(s);
    std::vector<Point> images;
    for (std::string tok; in >> tok;)
      images.push_back(static_cast<Point>(detail::parse_integer(tok, 0)));
    if (static_cast<int>(images.size()) != degree)
      throw input_error("image list has " + std::to_string(images.size()) +
                        " entries, expected " + std::to_string(degree));
    return Permutation(std::move(images));
  }
  std::vector<std::vector<Point>> cycles;
  std::size_t i = first;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '(')
      throw input_error("malformed cycle notation: '" + s + "'");
    auto close = s.find(')', i);
    if (close == std::string::npos)
      throw input_error("unterminated cycle: '" + s + "'");
    std::string inner = s.substr(i + 1, close - i - 1);
    for (char &c : inner)
      if (c == ',')
        c = ' ';
    std::istringstream in(inner);
    std::vector<Point> cycle;
    for (std::string tok; in >> tok;)
      cycle.push_back(static_cast<Point>(detail::parse_integer(tok, 0)));
    if (!cycle.empty())
      cycles.push_back(std::move(cycle));
    i = close + 1;
  }
  return Permutation::from_cycles(degree, cycles);
}

PermGroup::PermGroup(int degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree < 0)
    throw input_error("negative degree");
  if (generators_.empty())
    throw input_error("a permutation group needs at least one generator");
  for (const auto &g : generators_)
    if (g.degree() != degree)
      throw input_error("generator degree " + std::to_string(g.degree()) +
                        " differs from group degree " +
                        std::to_string(degree));
}

PermGroup PermGroup::trivial(int degree) {
  return PermGroup(degree, {Permutation::identity(degree)});
}

ElementEnumeration enumerate_elements(const PermGroup &g, std::size_t cap) {
  ElementEnumeration result;
  std::unordered_set<Permutation, PermutationHash> seen;
  auto id = Permutation::identity(g.degree());
  seen.insert(id);
  result.elements.push_back(id);
  for (std::size_t i = 0; i < result.elements.size(); ++i) {
    for (const auto &s : g.generators()) {
      Permutation next = result.elements[i] * s;
      if (seen.contains(next))
        continue;
      if (result.elements.size() >= cap) {
        result.complete = false;
        return result;
      }
      seen.insert(next);
      result.elements.push_back(std::move(next));
    }
  }
  return result;
}

namespace {

void check_point(const PermGroup &g, Point a) {
  if (a < 0 || a >= g.degree())
    throw input_error("point " + std::to_string(a) + " out of range [0, " +
                      std::to_string(g.degree()) + ")");
}

void require_transitive(const PermGroup &g, const char *op) {
  if (!is_transitive(g))
    throw precondition_error(std::string(op) + ": group is not transitive");
}

} // namespace

std::vector<Point> orbit(const PermGroup &g, Point a) {
  check_point(g, a);
  std::vector<char> seen(g.degree(), 0);
  std::vector<Point> result{a};
  seen[a] = 1;
  for (std::size_t i = 0; i < result.size(); ++i)
    for (const auto &s : g.generators()) {
      Point b = s(result[i]);
      if (!seen[b]) {
        seen[b] = 1;
        result.push_back(b);
      }
    }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::vector<Point>> orbits(const PermGroup &g) {
  std::vector<std::vector<Point>> result;
  std::vector<char> covered(g.degree(), 0);
  for (Point a = 0; a < g.degree(); ++a) {
    if (covered[a])
      continue;
    auto o = orbit(g, a);
    for (Point b : o)
      covered[b] = 1;
    result.push_back(std::move(o));
  }
  return result;
}

bool is_transitive(const PermGroup &g) {
  if (g.degree() == 0)
    return true;
  return orbit(g, 0).size() == static_cast<std::size_t>(g.degree());
}

PermGroup stabilizer_generators(const PermGroup &g, Point a) {
  check_point(g, a);
  const int n = g.degree();
  // transversal[b] maps a to b
  std::vector<std::optional<Permutation>> transversal(n);
  transversal[a] = Permutation::identity(n);
  std::vector<Point> queue{a};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Point b = queue[i];
    for (const auto &s : g.generators()) {
      Point c = s(b);
      if (!transversal[c]) {
        transversal[c] = *transversal[b] * s;
        queue.push_back(c);
      }
    }
  }
  std::set<Permutation> schreier;
  for (Point b : queue)
    for (const auto &s : g.generators()) {
      Permutation h = *transversal[b] * s * transversal[s(b)]->inverse();
      if (!h.is_identity())
        schreier.insert(std::move(h));
    }
  if (schreier.empty())
    return PermGroup::trivial(n);
  return PermGroup(n, {schreier.begin(), schreier.end()});
}

std::vector<Point> Orbital::section(Point a) const {
  std::vector<Point> result;
  auto it = std::lower_bound(pairs.begin(), pairs.end(),
                             std::pair<Point, Point>{a, -1});
  for (; it != pairs.end() && it->first == a; ++it)
    result.push_back(it->second);
  return result;
}

std::vector<Point> Orbital::reverse_section(Point a) const {
  std::vector<Point> result;
  for (auto [x, y] : pairs)
    if (y == a)
      result.push_back(x);
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

std::vector<std::pair<Point, Point>> pair_closure(const PermGroup &g, Point a,
                                                  Point b) {
  const int n = g.degree();
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  std::vector<std::pair<Point, Point>> result{{a, b}};
  seen[static_cast<std::size_t>(a) * n + b] = 1;
  for (std::size_t i = 0; i < result.size(); ++i)
    for (const auto &s : g.generators()) {
      auto [x, y] = result[i];
      Point sx = s(x), sy = s(y);
      auto key = static_cast<std::size_t>(sx) * n + sy;
      if (!seen[key]) {
        seen[key] = 1;
        result.emplace_back(sx, sy);
      }
    }
  std::sort(result.begin(), result.end());
  return result;
}

} // namespace

Orbital orbital_of(const PermGroup &g, Point a, Point b) {
  check_point(g, a);
  check_point(g, b);
  Orbital orb;
  orb.pairs = pair_closure(g, a, b);
  orb.base_pair = {a, orb.section(a).front()};
  return orb;
}

std::vector<Orbital> orbitals_at(const PermGroup &g, Point a) {
  check_point(g, a);
  require_transitive(g, "orbitals_at");
  auto stabilizer = stabilizer_generators(g, a);
  std::vector<Orbital> result;
  for (const auto &suborbit : orbits(stabilizer))
    result.push_back(orbital_of(g, a, suborbit.front()));
  std::sort(result.begin(), result.end(), [](const Orbital &x, const Orbital &y) {
    return x.base_pair < y.base_pair;
  });
  return result;
}

Digraph orbital_digraph(const PermGroup &g, const Orbital &orb) {
  if (orb.is_diagonal())
    throw input_error("orbital_digraph: diagonal orbital has only loops");
  return Digraph(g.degree(), orb.pairs);
}

Orbital paired_orbital(const PermGroup &g, const Orbital &orb) {
  auto [a, b] = orb.base_pair;
  Orbital paired;
  paired.pairs = pair_closure(g, b, a);
  auto sec = paired.section(a);
  paired.base_pair = sec.empty() ? std::pair{b, a} : std::pair{a, sec.front()};
  return paired;
}

std::vector<std::pair<std::size_t, std::size_t>>
paired_subdegrees(const PermGroup &g, Point a) {
  std::vector<std::pair<std::size_t, std::size_t>> result;
  for (const auto &orb : orbitals_at(g, a)) {
    auto paired = paired_orbital(g, orb);
    result.emplace_back(orb.section(a).size(), paired.section(a).size());
  }
  return result;
}

bool higman_primitivity(const PermGroup &g) {
  if (g.degree() < 2)
    throw precondition_error("higman_primitivity: degree must be at least 2");
  require_transitive(g, "higman_primitivity");
  for (const auto &orb : orbitals_at(g, 0))
    if (!orb.is_diagonal() && !is_connected(orbital_digraph(g, orb)))
      return false;
  return true;
}

Partition minimal_block_system(const PermGroup &g, Point a, Point b) {
  check_point(g, a);
  check_point(g, b);
  const int n = g.degree();
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Point x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  // Atkinson: every merge of classes must be propagated under each generator.
  std::deque<std::pair<Point, Point>> pending;
  auto merge = [&](Point x, Point y) {
    Point rx = find(x), ry = find(y);
    if (rx == ry)
      return;
    parent[std::max(rx, ry)] = std::min(rx, ry);
    pending.emplace_back(x, y);
  };
  merge(a, b);
  while (!pending.empty()) {
    auto [x, y] = pending.front();
    pending.pop_front();
    for (const auto &s : g.generators())
      merge(s(x), s(y));
  }
  std::vector<std::vector<Point>> by_root(n);
  for (Point x = 0; x < n; ++x)
    by_root[find(x)].push_back(x);
  Partition blocks;
  for (auto &block : by_root)
    if (!block.empty())
      blocks.push_back(std::move(block));
  return blocks;
}

std::optional<Partition> block_system_search(const PermGroup &g) {
  if (g.degree() < 2)
    throw precondition_error("block_system_search: degree must be at least 2");
  require_transitive(g, "block_system_search");
  for (Point b = 1; b < g.degree(); ++b) {
    auto blocks = minimal_block_system(g, 0, b);
    if (blocks.size() > 1)
      return blocks;
  }
  return std::nullopt;
}

PermGroup parse_permgroup(std::istream &in) {
  auto lines = detail::read_lines(in);
  if (lines.empty())
    throw parse_error(0, "empty group text");
  const auto &head = lines.front();
  if (head.tokens.size() != 2 || head.tokens[0] != "degree")
    throw parse_error(head.number, "expected 'degree <n>'");
  int n = static_cast<int>(detail::parse_integer(head.tokens[1], head.number));
  if (n < 0)
    throw parse_error(head.number, "negative degree");
  std::vector<Permutation> gens;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto &line = lines[i];
    if (line.tokens.empty() || line.tokens[0] != "g")
      throw parse_error(line.number, "expected 'g <permutation>'");
    try {
      gens.push_back(parse_permutation(detail::rest_of_line(line), n));
    } catch (const input_error &e) {
      throw parse_error(line.number, e.what());
    } catch (const parse_error &e) {
      throw parse_error(line.number, e.what());
    }
  }
  if (gens.empty())
    gens.push_back(Permutation::identity(n));
  return PermGroup(n, std::move(gens));
}

PermGroup parse_permgroup(const std::string &text) {
  std::istringstream in(text);
  return parse_permgroup(in);
}

std::string to_text(const PermGroup &g) {
  std::ostringstream out;
  out << "degree " << g.degree() << '\n';
  for (const auto &p : g.generators()) {
    out << 'g';
    for (Point x : p.images())
      out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

Permutation to_permutation(std::span<const Vertex> map) {
  return Permutation(std::vector<Point>(map.begin(), map.end()));
}

} // namespace orbends
