#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbends/digraph.hpp"

namespace orbends {

using Point = int;

/// Bijection of {0..degree-1}. Acts on the right: p(a) is the image a^p, and
/// (p * q)(a) == q(p(a)).
class Permutation {
public:
  Permutation() = default;
  /// Throws input_error unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(int degree);
  /// Cycles use 0-based points; unspecified points are fixed.
  static Permutation from_cycles(int degree,
                                 std::span<const std::vector<Point>> cycles);

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  Point operator()(Point a) const { return images_[a]; }
  std::span<const Point> images() const noexcept { return images_; }
  bool is_identity() const noexcept;
  Permutation inverse() const;

  /// Cycle notation, "()" for the identity.
  std::string to_cycle_string() const;

  friend Permutation operator*(const Permutation &p, const Permutation &q);
  friend auto operator<=>(const Permutation &, const Permutation &) = default;
  friend bool operator==(const Permutation &, const Permutation &) = default;

private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation &p) const noexcept;
};

/// Permutation text: image list `2 0 1` or cycle notation `(0 1)(2 3)`.
Permutation parse_permutation(std::string_view text, int degree);

/// Group generated by a nonempty list of permutations of equal degree.
class PermGroup {
public:
  PermGroup(int degree, std::vector<Permutation> generators);
  static PermGroup trivial(int degree);

  int degree() const noexcept { return degree_; }
  const std::vector<Permutation> &generators() const noexcept {
    return generators_;
  }

private:
  int degree_;
  std::vector<Permutation> generators_;
};

inline constexpr std::size_t default_group_cap = 100000;

struct ElementEnumeration {
  std::vector<Permutation> elements; // identity first, then BFS order
  bool complete = true;              // false when the cap cut enumeration short
};

/// Breadth-first closure over the generators. Hitting the cap is reported
/// through `complete`, not thrown.
ElementEnumeration enumerate_elements(const PermGroup &g,
                                      std::size_t cap = default_group_cap);

std::vector<Point> orbit(const PermGroup &g, Point a);
std::vector<std::vector<Point>> orbits(const PermGroup &g);
bool is_transitive(const PermGroup &g);

/// Schreier generators of the point stabiliser G_a, deduplicated with the
/// identity dropped (the trivial group is returned as {identity}).
PermGroup stabilizer_generators(const PermGroup &g, Point a);

/// Orbit of the ordered pair (a, b) under G.
struct Orbital {
  std::pair<Point, Point> base_pair;
  std::vector<std::pair<Point, Point>> pairs; // sorted

  bool is_diagonal() const noexcept {
    return base_pair.first == base_pair.second;
  }
  /// {c : (a, c) in the orbital}, sorted.
  std::vector<Point> section(Point a) const;
  /// {c : (c, a) in the orbital}, sorted.
  std::vector<Point> reverse_section(Point a) const;

  friend bool operator==(const Orbital &, const Orbital &) = default;
};

/// The orbital containing (a, b), with base pair rebased to (a, c) for the
/// smallest such c.
Orbital orbital_of(const PermGroup &g, Point a, Point b);

/// One orbital per suborbit of G_a, ordered by representative. Requires a
/// transitive group.
std::vector<Orbital> orbitals_at(const PermGroup &g, Point a);

/// Throws input_error for the diagonal orbital.
Digraph orbital_digraph(const PermGroup &g, const Orbital &orb);

/// Orbital of the reversed pairs, based at the same first point.
Orbital paired_orbital(const PermGroup &g, const Orbital &orb);

/// (|D(a)|, |D*(a)|) for each orbital D at a, in orbitals_at order.
std::vector<std::pair<std::size_t, std::size_t>>
paired_subdegrees(const PermGroup &g, Point a);

/// Transitive G of degree >= 2 is primitive iff every non-diagonal orbital
/// digraph is connected.
bool higman_primitivity(const PermGroup &g);

using Partition = std::vector<std::vector<Point>>;

/// Nontrivial proper block system via minimal-block closure of {0, b} for
/// each b, or nullopt when G is primitive.
std::optional<Partition> block_system_search(const PermGroup &g);

/// Minimal block system in which `a` and `b` share a block.
Partition minimal_block_system(const PermGroup &g, Point a, Point b);

PermGroup parse_permgroup(std::istream &in);
PermGroup parse_permgroup(const std::string &text);
/// `degree <n>` followed by `g <image list>` lines.
std::string to_text(const PermGroup &g);

/// Permutation of points induced by a vertex map; throws on non-bijections.
Permutation to_permutation(std::span<const Vertex> map);

} // namespace orbends
