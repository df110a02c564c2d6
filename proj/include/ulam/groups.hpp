#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ulam::groups {

// Finite group given by its full multiplication table. Immutable after
// construction; every constructor path runs validate().
struct FiniteGroup {
  int order = 0;
  std::vector<int> table;  // row-major order*order, table[a*order+b] = a.b
  int identity = 0;
  std::vector<int> inverses;
  std::vector<std::string> labels;  // optional display names
  std::string name;                 // construction recipe, e.g. "cyclic:6"

  int mul(int a, int b) const { return table[a * order + b]; }
  int inv(int a) const { return inverses[a]; }
  int element_order(int g) const;
  std::string label(int g) const;
  bool same_table(const FiniteGroup& other) const;

  // Checks all structural invariants (identity row/column, rows and columns
  // permutations, inverses, associativity). Throws LoadError naming the
  // offending row or triple.
  void validate() const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr cyclic_group(int n);
GroupPtr dihedral_group(int n);   // order 2n, r = index 1, s = index n
GroupPtr symmetric_group(int n);  // n <= 6; lex order of one-line notation

// Builds a group from a textual spec: "cyclic:n", "dihedral:n",
// "symmetric:n" or "file:path" (Cayley table file).
GroupPtr build_group(const std::string& spec);

// Constructs a validated group from a raw table (identity inferred).
GroupPtr group_from_table(std::vector<int> table, int order, std::string name);

// --------------------------------------------------------------------------
// Reduced words in a free group.

struct Letter {
  int gen = 0;   // generator index, 0-based
  int sign = 1;  // +1 or -1

  bool operator==(const Letter& o) const = default;
  Letter inverse() const { return {gen, -sign}; }
  // Enumeration rank: a < a^-1 < b < b^-1 < ...
  int rank() const { return 2 * gen + (sign < 0 ? 1 : 0); }
};

// A reduced word. The constructor taking letters requires them reduced;
// use multiply_words / concat_reduce to build from unreduced input.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::vector<Letter> letters);  // throws UsageError if unreduced

  static FreeWord parse(std::string_view text);  // "abA" etc.; throws LoadError
  std::string str() const;                       // identity -> ""

  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& letter(int i) const { return letters_[i]; }

  FreeWord inverse() const;
  FreeWord prefix(int len) const;

  bool operator==(const FreeWord& o) const = default;
  // length-then-lex order on letter ranks
  bool operator<(const FreeWord& o) const;

  // Max generator index occurring, plus one (0 for the identity).
  int generator_span() const;

 private:
  std::vector<Letter> letters_;
};

FreeWord multiply_words(const FreeWord& u, const FreeWord& v);
FreeWord power(const FreeWord& u, int n);
bool is_cyclically_reduced(const FreeWord& w);
FreeWord cyclic_reduction(const FreeWord& w);

// Length of the reduced product u.v, computed without building it.
int product_length(const FreeWord& u, const FreeWord& v);

// Number of reduced words of length <= L over k generators:
// 1 + sum_{m=1..L} 2k (2k-1)^(m-1). Throws UsageError when above `cap`.
std::uint64_t ball_size(int k, int L, std::uint64_t cap);

inline constexpr std::uint64_t kDefaultBallCap = 4'000'000;

// All reduced words of length <= L, ordered by length then lexicographically
// by letter rank. Deterministic.
std::vector<FreeWord> enumerate_ball(int k, int L,
                                     std::uint64_t cap = kDefaultBallCap);

// Packs a word into a 64-bit key (base 2k+1 digits). Requires
// (2k+1)^length to fit; enumerate_ball sizes always do.
std::uint64_t word_key(const FreeWord& w, int k);

// --------------------------------------------------------------------------
// Homomorphisms, coset systems, quotients.

struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<int> map;  // element index -> element index

  int operator()(int g) const { return map[g]; }
  bool is_surjective() const;
  std::vector<int> kernel() const;
  void validate() const;  // throws LoadError on a violating pair
};

// Left Lambda-cosets of a subgroup, with representatives R and retraction r.
// The subgroup is also materialized as a standalone FiniteGroup so that
// quasi-representations over it use contiguous indices.
struct CosetSystem {
  GroupPtr group;
  std::vector<int> subgroup;  // sorted parent indices, closed set
  std::vector<int> reps;      // coset representatives, ascending
  std::vector<int> retract;   // parent index -> its representative
  GroupPtr subgroup_group;    // Lambda as its own group
  std::vector<int> sub_to_parent;
  std::vector<int> parent_to_sub;  // -1 outside the subgroup

  int index() const { return static_cast<int>(reps.size()); }
  int rep_position(int rep) const;  // position of rep inside reps
};

// Validates H and builds the coset system. Representative of each coset is
// its minimal element index, except the subgroup's own coset which is always
// represented by the identity.
CosetSystem coset_system(const GroupPtr& G, std::vector<int> subgroup_elements);

// Subgroup helpers.
bool check_subgroup(const FiniteGroup& G, const std::vector<int>& H,
                    std::string* why);
bool check_normal(const FiniteGroup& G, const std::vector<int>& H,
                  std::string* why);
std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens);
std::vector<int> normal_closure(const FiniteGroup& G, std::vector<int> gens);
std::vector<std::vector<int>> enumerate_subgroups(const FiniteGroup& G);

// Quotient by a normal subgroup; returns the quotient group and the
// canonical surjection. Quotient elements are ordered by the minimal parent
// index contained in each coset.
std::pair<GroupPtr, GroupHom> quotient(const GroupPtr& G,
                                       const std::vector<int>& normal_subgroup);

}  // namespace ulam::groups
