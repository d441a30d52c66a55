#include "orbends/amalgam.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <sstream>

#include "orbends/errors.hpp"
#include "text_lines.hpp"

namespace orbends {

AmalgamSpec::Factor AmalgamSpec::enumerate(PermGroup g, std::size_t cap) {
  auto listing = enumerate_elements(g, cap);
  if (!listing.complete)
    throw capacity_error("amalgam factor enumeration", cap,
                         listing.elements.size());
  Factor f{std::move(g), std::move(listing.elements), {}, {}, {}, {}, {}};
  for (std::size_t i = 0; i < f.elements.size(); ++i)
    f.lookup.emplace(f.elements[i], static_cast<int>(i));
  return f;
}

AmalgamSpec::AmalgamSpec(PermGroup a, PermGroup b,
                         std::vector<std::pair<Permutation, Permutation>> common,
                         std::size_t cap)
    : factors_{enumerate(std::move(a), cap), enumerate(std::move(b), cap)} {
  auto &fa = factors_[0];
  auto &fb = factors_[1];

  auto id_a = Permutation::identity(fa.group.degree());
  auto id_b = Permutation::identity(fb.group.degree());
  auto has_identity = std::any_of(common.begin(), common.end(), [&](auto &p) {
    return p.first == id_a && p.second == id_b;
  });
  if (!has_identity)
    common.insert(common.begin(), {id_a, id_b});
  std::stable_partition(common.begin(), common.end(), [&](auto &p) {
    return p.first == id_a && p.second == id_b;
  });

  for (const auto &[pa, pb] : common) {
    auto ia = element_index(Side::a, pa);
    auto ib = element_index(Side::b, pb);
    if (!ia)
      throw input_error("common element " + pa.to_cycle_string() +
                        " is not in factor A");
    if (!ib)
      throw input_error("common element " + pb.to_cycle_string() +
                        " is not in factor B");
    fa.common.push_back(*ia);
    fb.common.push_back(*ib);
  }
  common_order_ = common.size();

  std::vector<int> c_index_a(fa.elements.size(), -1);
  std::vector<int> c_index_b(fb.elements.size(), -1);
  for (std::size_t c = 0; c < common_order_; ++c) {
    if (c_index_a[fa.common[c]] != -1 || c_index_b[fb.common[c]] != -1)
      throw input_error("common subgroup list repeats an element");
    c_index_a[fa.common[c]] = static_cast<int>(c);
    c_index_b[fb.common[c]] = static_cast<int>(c);
  }
  // Closure and the homomorphism property on every product.
  for (std::size_t i = 0; i < common_order_; ++i)
    for (std::size_t j = 0; j < common_order_; ++j) {
      int ka = c_index_a[product(Side::a, fa.common[i], fa.common[j])];
      int kb = c_index_b[product(Side::b, fb.common[i], fb.common[j])];
      if (ka < 0 || kb < 0)
        throw input_error("common subgroup list is not closed under products");
      if (ka != kb)
        throw input_error("common subgroup pairing is not a homomorphism");
    }

  auto build_cosets = [&](Factor &f, const std::vector<int> &c_index) {
    const auto n = f.elements.size();
    f.coset_of.assign(n, -1);
    f.c_of.assign(n, -1);
    for (std::size_t z = 0; z < n; ++z) {
      if (f.coset_of[z] != -1)
        continue;
      int rep = static_cast<int>(f.reps.size());
      f.reps.push_back(static_cast<int>(z));
      for (std::size_t c = 0; c < common_order_; ++c) {
        int member = f.lookup.at(f.elements[f.common[c]] * f.elements[z]);
        f.coset_of[member] = rep;
        f.c_of[member] = static_cast<int>(c);
      }
    }
    (void)c_index;
  };
  build_cosets(fa, c_index_a);
  build_cosets(fb, c_index_b);

  if (index(Side::a) < 2 || index(Side::b) < 2)
    throw input_error("common subgroup must be proper in both factors (|A:C| = " +
                      std::to_string(index(Side::a)) + ", |B:C| = " +
                      std::to_string(index(Side::b)) + ")");
}

std::optional<int> AmalgamSpec::element_index(Side s, const Permutation &p) const {
  const auto &f = at(s);
  if (p.degree() != f.group.degree())
    return std::nullopt;
  auto it = f.lookup.find(p);
  if (it == f.lookup.end())
    return std::nullopt;
  return it->second;
}

int AmalgamSpec::product(Side s, int x, int y) const {
  const auto &f = at(s);
  return f.lookup.at(f.elements[x] * f.elements[y]);
}

int AmalgamSpec::inverse_of(Side s, int x) const {
  const auto &f = at(s);
  return f.lookup.at(f.elements[x].inverse());
}

AmalgamElement identity_element() { return {}; }

namespace {

// x <- y * x for a factor element y (element index on side s). The C-part
// stays leftmost, so no rewriting cascades past the first syllable.
void left_multiply(const AmalgamSpec &spec, Side s, int y, AmalgamElement &x) {
  int z = spec.product(s, y, spec.common_element(s, x.c_part));
  if (!x.syllables.empty() && x.syllables.front().side == s) {
    z = spec.product(s, z, spec.representative(s, x.syllables.front().rep));
    x.syllables.erase(x.syllables.begin());
  }
  auto [c, rep] = spec.split(s, z);
  x.c_part = c;
  if (rep != 0)
    x.syllables.insert(x.syllables.begin(), Syllable{s, rep});
}

} // namespace

AmalgamElement normalize(const AmalgamSpec &spec, std::span<const Letter> word) {
  std::vector<std::pair<Side, int>> indexed;
  indexed.reserve(word.size());
  for (const auto &letter : word) {
    auto idx = spec.element_index(letter.side, letter.element);
    if (!idx)
      throw input_error("letter " + letter.element.to_cycle_string() +
                        " is not an element of factor " +
                        side_name(letter.side));
    indexed.emplace_back(letter.side, *idx);
  }
  AmalgamElement result;
  for (auto it = indexed.rbegin(); it != indexed.rend(); ++it)
    left_multiply(spec, it->first, it->second, result);
  return result;
}

AmalgamElement multiply(const AmalgamSpec &spec, const AmalgamElement &x,
                        const AmalgamElement &y) {
  AmalgamElement result = y;
  for (auto it = x.syllables.rbegin(); it != x.syllables.rend(); ++it)
    left_multiply(spec, it->side, spec.representative(it->side, it->rep),
                  result);
  left_multiply(spec, Side::a, spec.common_element(Side::a, x.c_part), result);
  return result;
}

AmalgamElement inverse(const AmalgamSpec &spec, const AmalgamElement &x) {
  // (c x1 ... xn)^-1 = xn^-1 ... x1^-1 c^-1, folded from the right.
  AmalgamElement result;
  left_multiply(spec, Side::a,
                spec.inverse_of(Side::a, spec.common_element(Side::a, x.c_part)),
                result);
  for (const auto &syl : x.syllables)
    left_multiply(spec, syl.side,
                  spec.inverse_of(syl.side, spec.representative(syl.side, syl.rep)),
                  result);
  return result;
}

std::vector<Letter> to_word(const AmalgamSpec &spec, const AmalgamElement &x) {
  std::vector<Letter> word;
  word.push_back(
      {Side::a, spec.element(Side::a, spec.common_element(Side::a, x.c_part))});
  for (const auto &syl : x.syllables)
    word.push_back(
        {syl.side, spec.element(syl.side, spec.representative(syl.side, syl.rep))});
  return word;
}

std::size_t normal_form_count(const AmalgamSpec &spec, int max_syllables) {
  const std::size_t choices[2] = {spec.index(Side::a) - 1,
                                  spec.index(Side::b) - 1};
  std::size_t sequences = 1;
  for (int start = 0; start < 2; ++start) {
    std::size_t count = 1;
    for (int len = 1; len <= max_syllables; ++len) {
      count *= choices[(start + len - 1) % 2];
      sequences += count;
    }
  }
  return spec.common_order() * sequences;
}

std::vector<AmalgamElement> enumerate_elements(const AmalgamSpec &spec,
                                               int max_syllables,
                                               int syllable_cap,
                                               std::size_t element_cap) {
  if (max_syllables < 0)
    throw input_error("negative syllable bound");
  if (max_syllables > syllable_cap)
    throw capacity_error("amalgam syllable bound",
                         static_cast<std::size_t>(syllable_cap),
                         static_cast<std::size_t>(max_syllables));
  auto expected = normal_form_count(spec, max_syllables);
  if (expected > element_cap)
    throw capacity_error("amalgam element enumeration", element_cap, expected);

  // Sequences grouped by length, each layer extending the previous one.
  std::vector<std::vector<Syllable>> layer{{}};
  std::vector<std::vector<Syllable>> sequences{{}};
  for (int len = 1; len <= max_syllables; ++len) {
    std::vector<std::vector<Syllable>> next;
    for (const auto &seq : layer)
      for (Side s : {Side::a, Side::b}) {
        if (!seq.empty() && seq.back().side == s)
          continue;
        for (std::size_t rep = 1; rep < spec.index(s); ++rep) {
          auto extended = seq;
          extended.push_back({s, static_cast<int>(rep)});
          next.push_back(std::move(extended));
        }
      }
    std::sort(next.begin(), next.end());
    sequences.insert(sequences.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::vector<AmalgamElement> result;
  result.reserve(expected);
  for (const auto &seq : sequences)
    for (std::size_t c = 0; c < spec.common_order(); ++c)
      result.push_back({static_cast<int>(c), seq});
  return result;
}

std::optional<int> CosetTree::find(const CosetKey &key) const {
  auto it = index.find(key);
  if (it == index.end())
    return std::nullopt;
  return it->second;
}

std::vector<CosetKey> coset_neighbors(const AmalgamSpec &spec,
                                      const CosetKey &key) {
  // Edges at X s are the C-cosets C s and C x s (x a non-identity X-rep);
  // the far end of edge C e is Y e with a leading Y-syllable absorbed.
  const Side y = other(key.side);
  std::vector<CosetKey> result;
  CosetKey down{y, key.sequence};
  if (!down.sequence.empty() && down.sequence.front().side == y)
    down.sequence.erase(down.sequence.begin());
  result.push_back(std::move(down));
  for (std::size_t rep = 1; rep < spec.index(key.side); ++rep) {
    CosetKey up{y, key.sequence};
    up.sequence.insert(up.sequence.begin(),
                       Syllable{key.side, static_cast<int>(rep)});
    result.push_back(std::move(up));
  }
  return result;
}

CosetTree bass_serre_tree(const AmalgamSpec &spec, int radius,
                          std::size_t node_cap) {
  if (radius < 0)
    throw input_error("negative radius");
  CosetTree tree;
  tree.radius = radius;
  auto add = [&](CosetKey key, int depth) {
    if (tree.nodes.size() >= node_cap)
      throw capacity_error("coset tree nodes", node_cap, tree.nodes.size() + 1);
    int id = static_cast<int>(tree.nodes.size());
    tree.index.emplace(key, id);
    tree.nodes.push_back(std::move(key));
    tree.depth.push_back(depth);
    tree.adjacency.emplace_back();
    tree.frontier.push_back(depth == radius ? 1 : 0);
    return id;
  };
  tree.root = add(CosetKey{Side::a, {}}, 0);
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.depth[i] == radius)
      continue;
    for (auto &nb : coset_neighbors(spec, tree.nodes[i])) {
      auto found = tree.find(nb);
      int id = found ? *found : add(std::move(nb), tree.depth[i] + 1);
      auto &adj = tree.adjacency[i];
      if (std::find(adj.begin(), adj.end(), id) == adj.end()) {
        adj.push_back(id);
        tree.adjacency[id].push_back(static_cast<int>(i));
      }
    }
  }
  for (auto &adj : tree.adjacency)
    std::sort(adj.begin(), adj.end());
  return tree;
}

CosetKey act_on_coset(const AmalgamSpec &spec, const AmalgamElement &g,
                      const CosetKey &node) {
  AmalgamElement product = multiply(spec, AmalgamElement{0, node.sequence}, g);
  CosetKey image{node.side, std::move(product.syllables)};
  if (!image.sequence.empty() && image.sequence.front().side == node.side)
    image.sequence.erase(image.sequence.begin());
  return image;
}

std::optional<int> act_on_tree(const AmalgamSpec &spec, const CosetTree &tree,
                               const AmalgamElement &g, int node) {
  if (node < 0 || node >= static_cast<int>(tree.nodes.size()))
    throw input_error("coset tree node out of range");
  return tree.find(act_on_coset(spec, g, tree.nodes[node]));
}

std::vector<AmalgamElement> vertex_stabilizer(const AmalgamSpec &spec,
                                              const CosetKey &node,
                                              int max_syllables) {
  std::vector<AmalgamElement> result;
  for (auto &g : enumerate_elements(spec, max_syllables))
    if (act_on_coset(spec, g, node) == node)
      result.push_back(std::move(g));
  return result;
}

bool common_is_maximal(const AmalgamSpec &spec, Side s) {
  std::vector<char> in_common(spec.factor_order(s), 0);
  std::vector<Permutation> common;
  for (std::size_t c = 0; c < spec.common_order(); ++c) {
    int idx = spec.common_element(s, static_cast<int>(c));
    in_common[idx] = 1;
    common.push_back(spec.element(s, idx));
  }
  for (std::size_t x = 0; x < spec.factor_order(s); ++x) {
    if (in_common[x])
      continue;
    auto gens = common;
    gens.push_back(spec.element(s, static_cast<int>(x)));
    PermGroup h(spec.factor(s).degree(), std::move(gens));
    if (enumerate_elements(h).elements.size() != spec.factor_order(s))
      return false;
  }
  return true;
}

std::string format_element(const AmalgamSpec &spec, const AmalgamElement &x) {
  std::ostringstream out;
  out << "c="
      << spec.element(Side::a, spec.common_element(Side::a, x.c_part))
             .to_cycle_string();
  for (const auto &syl : x.syllables)
    out << ' ' << side_name(syl.side)
        << spec.element(syl.side, spec.representative(syl.side, syl.rep))
               .to_cycle_string();
  return out.str();
}

std::string format_coset(const AmalgamSpec &spec, const CosetKey &key) {
  std::ostringstream out;
  out << side_name(key.side);
  for (const auto &syl : key.sequence)
    out << '.' << side_name(syl.side)
        << spec.element(syl.side, spec.representative(syl.side, syl.rep))
               .to_cycle_string();
  return out.str();
}

AmalgamSpec parse_amalgam(std::istream &in) {
  auto lines = detail::read_lines(in);
  struct GroupBlock {
    int degree = -1;
    int line = 0;
    std::vector<Permutation> gens;
  };
  std::optional<GroupBlock> blocks[2];
  std::vector<std::pair<Permutation, Permutation>> common;
  enum class Section { none, a, b, common } section = Section::none;

  for (const auto &line : lines) {
    const auto &tok = line.tokens;
    if (tok[0] == "factor") {
      if (tok.size() != 2 || (tok[1] != "A" && tok[1] != "B"))
        throw parse_error(line.number, "expected 'factor A' or 'factor B'");
      section = tok[1] == "A" ? Section::a : Section::b;
      auto &slot = blocks[section == Section::a ? 0 : 1];
      if (slot)
        throw parse_error(line.number, "factor " + tok[1] + " given twice");
      slot.emplace();
      slot->line = line.number;
      continue;
    }
    if (tok[0] == "common") {
      section = Section::common;
      continue;
    }
    try {
      switch (section) {
      case Section::none:
        throw parse_error(line.number, "content before any block");
      case Section::a:
      case Section::b: {
        auto &block = *blocks[section == Section::a ? 0 : 1];
        if (tok[0] == "degree" && tok.size() == 2) {
          block.degree =
              static_cast<int>(detail::parse_integer(tok[1], line.number));
        } else if (tok[0] == "g" && block.degree >= 0) {
          block.gens.push_back(
              parse_permutation(detail::rest_of_line(line), block.degree));
        } else {
          throw parse_error(line.number, "expected 'degree <n>' then 'g' lines");
        }
        break;
      }
      case Section::common: {
        if (tok[0] != "c" || !blocks[0] || !blocks[1])
          throw parse_error(line.number,
                            "expected 'c <perm A> | <perm B>' after both factors");
        auto body = detail::rest_of_line(line);
        auto bar = body.find('|');
        if (bar == std::string::npos)
          throw parse_error(line.number, "missing '|' in common element");
        common.emplace_back(
            parse_permutation(body.substr(0, bar), blocks[0]->degree),
            parse_permutation(body.substr(bar + 1), blocks[1]->degree));
        break;
      }
      }
    } catch (const input_error &e) {
      throw parse_error(line.number, e.what());
    }
  }
  for (int i = 0; i < 2; ++i)
    if (!blocks[i] || blocks[i]->degree < 0)
      throw parse_error(0, std::string("missing factor ") + (i ? "B" : "A"));
  auto group = [](GroupBlock &b) {
    if (b.gens.empty())
      b.gens.push_back(Permutation::identity(b.degree));
    return PermGroup(b.degree, std::move(b.gens));
  };
  return AmalgamSpec(group(*blocks[0]), group(*blocks[1]), std::move(common));
}

AmalgamSpec parse_amalgam(const std::string &text) {
  std::istringstream in(text);
  return parse_amalgam(in);
}

} // namespace orbends
