#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orbends/permgroup.hpp"

namespace orbends {

enum class Side : std::uint8_t { a = 0, b = 1 };

constexpr Side other(Side s) noexcept { return s == Side::a ? Side::b : Side::a; }
constexpr char side_name(Side s) noexcept { return s == Side::a ? 'A' : 'B'; }

/// Non-identity right-coset representative of C in one factor.
struct Syllable {
  Side side;
  int rep; // 1..|X:C|-1; 0 is reserved for the identity coset

  friend auto operator<=>(const Syllable &, const Syllable &) = default;
  friend bool operator==(const Syllable &, const Syllable &) = default;
};

/// Normal form c * x1 * ... * xn: c in C, xi alternating non-identity
/// representatives. Unique per group element for a fixed transversal.
struct AmalgamElement {
  int c_part = 0; // index into the common subgroup, 0 is the identity
  std::vector<Syllable> syllables;

  bool is_identity() const noexcept { return c_part == 0 && syllables.empty(); }

  friend auto operator<=>(const AmalgamElement &,
                          const AmalgamElement &) = default;
  friend bool operator==(const AmalgamElement &,
                         const AmalgamElement &) = default;
};

/// A factor element used as a word letter.
struct Letter {
  Side side;
  Permutation element;
};

/// Free product with amalgamation A *_C B of two finite permutation groups.
/// C is listed explicitly as pairs (image in A, image in B); the pairing must
/// be an isomorphism onto subgroups of both factors.
class AmalgamSpec {
public:
  AmalgamSpec(PermGroup a, PermGroup b,
              std::vector<std::pair<Permutation, Permutation>> common,
              std::size_t cap = default_group_cap);

  const PermGroup &factor(Side s) const { return at(s).group; }
  std::size_t factor_order(Side s) const { return at(s).elements.size(); }
  std::size_t common_order() const { return common_order_; }
  /// |X : C|
  std::size_t index(Side s) const { return at(s).reps.size(); }

  std::optional<int> element_index(Side s, const Permutation &p) const;
  const Permutation &element(Side s, int idx) const { return at(s).elements[idx]; }
  /// Element index of representative `rep` (rep 0 is the identity).
  int representative(Side s, int rep) const { return at(s).reps[rep]; }
  /// Element index of the common element `c` inside factor s.
  int common_element(Side s, int c) const { return at(s).common[c]; }
  /// Element index of x * y in factor s.
  int product(Side s, int x, int y) const;
  int inverse_of(Side s, int x) const;

  /// z == c * representative(rep)
  struct Split {
    int c;
    int rep;
  };
  Split split(Side s, int element_idx) const {
    return {at(s).c_of[element_idx], at(s).coset_of[element_idx]};
  }

private:
  struct Factor {
    PermGroup group;
    std::vector<Permutation> elements;
    std::unordered_map<Permutation, int, PermutationHash> lookup;
    std::vector<int> reps;     // element index per right coset, identity first
    std::vector<int> coset_of; // per element
    std::vector<int> c_of;     // per element: C-part of its split
    std::vector<int> common;   // per C index: element index
  };

  const Factor &at(Side s) const { return factors_[static_cast<int>(s)]; }
  static Factor enumerate(PermGroup g, std::size_t cap);

  std::array<Factor, 2> factors_;
  std::size_t common_order_ = 0;
};

AmalgamElement identity_element();

/// Normal form of a word of factor letters. Throws input_error for a letter
/// that is not an element of its declared factor.
AmalgamElement normalize(const AmalgamSpec &spec, std::span<const Letter> word);
AmalgamElement multiply(const AmalgamSpec &spec, const AmalgamElement &x,
                        const AmalgamElement &y);
AmalgamElement inverse(const AmalgamSpec &spec, const AmalgamElement &x);
/// Letters c, x1, ..., xn whose product is x.
std::vector<Letter> to_word(const AmalgamSpec &spec, const AmalgamElement &x);

inline constexpr int default_syllable_cap = 8;

/// Every normal form with at most `max_syllables` syllables, ordered by
/// length then lexicographically.
std::vector<AmalgamElement>
enumerate_elements(const AmalgamSpec &spec, int max_syllables,
                   int syllable_cap = default_syllable_cap,
                   std::size_t element_cap = 1000000);

/// |C| times the number of alternating representative sequences.
std::size_t normal_form_count(const AmalgamSpec &spec, int max_syllables);

/// Right coset X * s of factor X, where s is empty or begins on the other side.
struct CosetKey {
  Side side;
  std::vector<Syllable> sequence;

  friend auto operator<=>(const CosetKey &, const CosetKey &) = default;
  friend bool operator==(const CosetKey &, const CosetKey &) = default;
};

/// Ball of the Bass-Serre tree around the coset A. Vertices are right cosets
/// of A and B; edges are right cosets of C.
struct CosetTree {
  int radius = 0;
  int root = 0;
  std::vector<CosetKey> nodes;
  std::vector<int> depth;
  std::vector<std::vector<int>> adjacency;
  std::vector<char> frontier; // depth == radius
  std::map<CosetKey, int> index;

  std::optional<int> find(const CosetKey &key) const;
};

std::vector<CosetKey> coset_neighbors(const AmalgamSpec &spec,
                                      const CosetKey &key);

CosetTree bass_serre_tree(const AmalgamSpec &spec, int radius,
                          std::size_t node_cap = 100000);

/// Exact right translation X s -> X s g on the infinite tree.
CosetKey act_on_coset(const AmalgamSpec &spec, const AmalgamElement &g,
                      const CosetKey &node);

/// Image of a tree node, or nullopt when it leaves the generated radius.
std::optional<int> act_on_tree(const AmalgamSpec &spec, const CosetTree &tree,
                               const AmalgamElement &g, int node);

std::vector<AmalgamElement> vertex_stabilizer(const AmalgamSpec &spec,
                                              const CosetKey &node,
                                              int max_syllables);

/// True iff C is a maximal proper subgroup of factor s.
bool common_is_maximal(const AmalgamSpec &spec, Side s);

/// Human-readable normal form, e.g. "c=() A(0 1) B(0 1 2)".
std::string format_element(const AmalgamSpec &spec, const AmalgamElement &x);
std::string format_coset(const AmalgamSpec &spec, const CosetKey &key);

/// Blocks `factor A`, `factor B` (each `degree n` + `g` lines) and an
/// optional `common` block of `c <perm in A> | <perm in B>` lines.
AmalgamSpec parse_amalgam(std::istream &in);
AmalgamSpec parse_amalgam(const std::string &text);

} // namespace orbends
