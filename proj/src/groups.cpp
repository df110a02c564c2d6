#include "ulam/groups.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "ulam/errors.hpp"

namespace ulam::groups {

int FiniteGroup::element_order(int g) const {
  int x = g, n = 1;
  while (x != identity) {
    x = mul(x, g);
    ++n;
    if (n > order) throw LoadError("element order exceeds group order; table corrupt");
  }
  return n;
}

std::string FiniteGroup::label(int g) const {
  if (g >= 0 && g < static_cast<int>(labels.size()) && !labels[g].empty())
    return labels[g];
  return std::to_string(g);
}

bool FiniteGroup::same_table(const FiniteGroup& other) const {
  return order == other.order && identity == other.identity &&
         table == other.table;
}

void FiniteGroup::validate() const {
  const int n = order;
  if (n <= 0) throw LoadError("group order must be positive");
  if (static_cast<int>(table.size()) != n * n)
    throw LoadError("multiplication table has wrong size");
  for (int v : table)
    if (v < 0 || v >= n)
      throw LoadError(detail::concat("table entry ", v, " out of range 0..", n - 1));
  for (int g = 0; g < n; ++g) {
    if (mul(identity, g) != g || mul(g, identity) != g)
      throw LoadError(detail::concat("identity axiom fails at element ", g));
  }
  std::vector<char> seen(n);
  for (int g = 0; g < n; ++g) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int h = 0; h < n; ++h) {
      int v = mul(g, h);
      if (seen[v])
        throw LoadError(detail::concat("row ", g, " is not a permutation (value ",
                                       v, " repeats)"));
      seen[v] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int h = 0; h < n; ++h) {
      int v = mul(h, g);
      if (seen[v])
        throw LoadError(detail::concat("column ", g, " is not a permutation (value ",
                                       v, " repeats)"));
      seen[v] = 1;
    }
  }
  if (static_cast<int>(inverses.size()) != n)
    throw LoadError("inverse table has wrong size");
  for (int g = 0; g < n; ++g) {
    if (mul(g, inverses[g]) != identity || mul(inverses[g], g) != identity)
      throw LoadError(detail::concat("inverse axiom fails at element ", g));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = mul(a, b);
      for (int c = 0; c < n; ++c) {
        if (mul(ab, c) != mul(a, mul(b, c)))
          throw LoadError(detail::concat("associativity fails at triple (", a,
                                         ", ", b, ", ", c, ")"));
      }
    }
}

namespace {

std::vector<int> compute_inverses(const std::vector<int>& table, int n,
                                  int identity) {
  std::vector<int> inv(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (table[g * n + h] == identity && table[h * n + g] == identity) {
        inv[g] = h;
        break;
      }
    }
    if (inv[g] < 0)
      throw LoadError(detail::concat("element ", g, " has no inverse"));
  }
  return inv;
}

GroupPtr finalize(std::vector<int> table, int n, int identity,
                  std::vector<std::string> labels, std::string name) {
  auto g = std::make_shared<FiniteGroup>();
  g->order = n;
  g->table = std::move(table);
  g->identity = identity;
  g->inverses = compute_inverses(g->table, n, identity);
  g->labels = std::move(labels);
  g->name = std::move(name);
  g->validate();
  return g;
}

int find_identity(const std::vector<int>& table, int n) {
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int h = 0; h < n && ok; ++h)
      ok = table[e * n + h] == h && table[h * n + e] == h;
    if (ok) return e;
  }
  return -1;
}

}  // namespace

GroupPtr group_from_table(std::vector<int> table, int order, std::string name) {
  const int e = find_identity(table, order);
  if (e < 0) throw LoadError("table has no identity element");
  return finalize(std::move(table), order, e, {}, std::move(name));
}

GroupPtr cyclic_group(int n) {
  if (n < 1) throw UsageError("cyclic group order must be >= 1");
  std::vector<int> table(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) labels[a] = "g^" + std::to_string(a);
  return finalize(std::move(table), n, 0, std::move(labels),
                  "cyclic:" + std::to_string(n));
}

// Element i + n*j encodes r^i s^j; (i1,j1).(i2,j2) = (i1 + (-1)^j1 i2, j1+j2).
GroupPtr dihedral_group(int n) {
  if (n < 1) throw UsageError("dihedral parameter must be >= 1");
  const int order = 2 * n;
  std::vector<int> table(order * order);
  auto idx = [n](int i, int j) { return ((i % n) + n) % n + n * (j % 2); };
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          const int i = (j1 == 0) ? i1 + i2 : i1 - i2;
          table[idx(i1, j1) * order + idx(i2, j2)] = idx(i, j1 + j2);
        }
  std::vector<std::string> labels(order);
  for (int i = 0; i < n; ++i) {
    labels[i] = "r^" + std::to_string(i);
    labels[i + n] = "r^" + std::to_string(i) + "s";
  }
  return finalize(std::move(table), order, 0, std::move(labels),
                  "dihedral:" + std::to_string(n));
}

GroupPtr symmetric_group(int n) {
  if (n < 1) throw UsageError("symmetric group degree must be >= 1");
  if (n > 6)
    throw UsageError("symmetric group degree capped at 6 (720 elements) so "
                     "exhaustive checks stay tractable");
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  std::vector<int> p = base;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> lookup;
  for (int i = 0; i < order; ++i) lookup[perms[i]] = i;
  std::vector<int> table(order * order);
  std::vector<int> comp(n);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
      table[a * order + b] = lookup.at(comp);
    }
  std::vector<std::string> labels(order);
  for (int i = 0; i < order; ++i) {
    std::string s = "(";
    for (int x = 0; x < n; ++x) s += std::to_string(perms[i][x]);
    labels[i] = s + ")";
  }
  return finalize(std::move(table), order, 0, std::move(labels),
                  "symmetric:" + std::to_string(n));
}

namespace {

GroupPtr group_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open Cayley table file: " + path);
  int n = 0;
  if (!(in >> n) || n <= 0)
    throw LoadError("Cayley file must start with a positive order");
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      if (!(in >> table[g * n + h]))
        throw LoadError(detail::concat("Cayley file row ", g,
                                       " is truncated at column ", h));
      if (table[g * n + h] < 0 || table[g * n + h] >= n)
        throw LoadError(detail::concat("Cayley file row ", g, " column ", h,
                                       " has out-of-range entry ",
                                       table[g * n + h]));
    }
  return group_from_table(std::move(table), n, "file:" + path);
}

}  // namespace

GroupPtr build_group(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw UsageError("group spec must look like kind:arg, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "file") return group_from_file(arg);
  int n = 0;
  try {
    n = std::stoi(arg);
  } catch (const std::exception&) {
    throw UsageError("group spec parameter must be an integer, got '" + arg + "'");
  }
  if (kind == "cyclic") return cyclic_group(n);
  if (kind == "dihedral") return dihedral_group(n);
  if (kind == "symmetric") return symmetric_group(n);
  throw UsageError("unknown group kind '" + kind + "'");
}

// --------------------------------------------------------------------------
// FreeWord

FreeWord::FreeWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (const Letter& l : letters_) {
    if (l.gen < 0 || (l.sign != 1 && l.sign != -1))
      throw UsageError("malformed letter in word");
  }
  for (std::size_t i = 1; i < letters_.size(); ++i) {
    if (letters_[i] == letters_[i - 1].inverse())
      throw UsageError("word is not reduced at position " + std::to_string(i));
  }
}

FreeWord FreeWord::parse(std::string_view text) {
  std::vector<Letter> out;
  for (char c : text) {
    if (c >= 'a' && c <= 'z')
      out.push_back({c - 'a', 1});
    else if (c >= 'A' && c <= 'Z')
      out.push_back({c - 'A', -1});
    else
      throw LoadError(std::string("invalid word character '") + c + "'");
  }
  return FreeWord(std::move(out));
}

std::string FreeWord::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (const Letter& l : letters_)
    s += static_cast<char>((l.sign > 0 ? 'a' : 'A') + l.gen);
  return s;
}

FreeWord FreeWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l.sign = -l.sign;
  FreeWord w;
  w.letters_ = std::move(out);
  return w;
}

FreeWord FreeWord::prefix(int len) const {
  FreeWord w;
  w.letters_.assign(letters_.begin(), letters_.begin() + len);
  return w;
}

bool FreeWord::operator<(const FreeWord& o) const {
  if (letters_.size() != o.letters_.size())
    return letters_.size() < o.letters_.size();
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].rank() != o.letters_[i].rank())
      return letters_[i].rank() < o.letters_[i].rank();
  }
  return false;
}

int FreeWord::generator_span() const {
  int k = 0;
  for (const Letter& l : letters_) k = std::max(k, l.gen + 1);
  return k;
}

FreeWord multiply_words(const FreeWord& u, const FreeWord& v) {
  const auto& a = u.letters();
  const auto& b = v.letters();
  std::size_t i = a.size(), j = 0;
  while (i > 0 && j < b.size() && a[i - 1] == b[j].inverse()) {
    --i;
    ++j;
  }
  std::vector<Letter> out;
  out.reserve(i + b.size() - j);
  out.insert(out.end(), a.begin(), a.begin() + i);
  out.insert(out.end(), b.begin() + j, b.end());
  FreeWord w;
  // reduced by construction: junction letters differ, both halves reduced
  w = FreeWord(std::move(out));
  return w;
}

int product_length(const FreeWord& u, const FreeWord& v) {
  const auto& a = u.letters();
  const auto& b = v.letters();
  std::size_t c = 0;
  while (c < a.size() && c < b.size() &&
         a[a.size() - 1 - c] == b[c].inverse())
    ++c;
  return static_cast<int>(a.size() + b.size() - 2 * c);
}

FreeWord power(const FreeWord& u, int n) {
  if (n == 0) return FreeWord{};
  FreeWord base = n > 0 ? u : u.inverse();
  FreeWord acc;
  for (int i = 0; i < std::abs(n); ++i) acc = multiply_words(acc, base);
  return acc;
}

bool is_cyclically_reduced(const FreeWord& w) {
  if (w.length() <= 1) return true;
  return !(w.letter(0) == w.letter(w.length() - 1).inverse());
}

FreeWord cyclic_reduction(const FreeWord& w) {
  int lo = 0, hi = w.length();
  while (hi - lo >= 2 && w.letter(lo) == w.letter(hi - 1).inverse()) {
    ++lo;
    --hi;
  }
  std::vector<Letter> out(w.letters().begin() + lo, w.letters().begin() + hi);
  return FreeWord(std::move(out));
}

std::uint64_t ball_size(int k, int L, std::uint64_t cap) {
  if (k < 1) throw UsageError("generator count must be >= 1");
  if (L < 0) throw UsageError("ball radius must be >= 0");
  std::uint64_t total = 1, layer = 1;
  for (int m = 1; m <= L; ++m) {
    const std::uint64_t factor = (m == 1) ? 2 * static_cast<std::uint64_t>(k)
                                          : 2 * static_cast<std::uint64_t>(k) - 1;
    if (layer > cap / factor)
      throw UsageError(detail::concat("ball size exceeds cap ", cap,
                                      " at radius ", m));
    layer *= factor;
    if (total > cap - layer)
      throw UsageError(detail::concat("ball size exceeds cap ", cap,
                                      " at radius ", m));
    total += layer;
  }
  return total;
}

std::vector<FreeWord> enumerate_ball(int k, int L, std::uint64_t cap) {
  const std::uint64_t n = ball_size(k, L, cap);
  std::vector<FreeWord> out;
  out.reserve(n);
  out.emplace_back();
  std::size_t layer_begin = 0, layer_end = 1;
  std::vector<Letter> alphabet;
  for (int g = 0; g < k; ++g) {
    alphabet.push_back({g, 1});
    alphabet.push_back({g, -1});
  }
  for (int m = 1; m <= L; ++m) {
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      const FreeWord base = out[i];  // copy: out may reallocate below
      for (const Letter& l : alphabet) {
        if (!base.empty() && base.letter(base.length() - 1) == l.inverse())
          continue;
        std::vector<Letter> ext = base.letters();
        ext.push_back(l);
        out.push_back(FreeWord(std::move(ext)));
      }
    }
    layer_begin = layer_end;
    layer_end = out.size();
  }
  return out;
}

std::uint64_t word_key(const FreeWord& w, int k) {
  const std::uint64_t base = 2 * static_cast<std::uint64_t>(k) + 1;
  std::uint64_t key = 0;
  for (const Letter& l : w.letters()) {
    const std::uint64_t digit = static_cast<std::uint64_t>(l.rank()) + 1;
    if (key > (UINT64_MAX - digit) / base)
      throw UsageError("word too long to index");
    key = key * base + digit;
  }
  return key;
}

// --------------------------------------------------------------------------
// Homomorphisms, cosets, quotients

bool GroupHom::is_surjective() const {
  std::vector<char> hit(target->order, 0);
  for (int v : map) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

std::vector<int> GroupHom::kernel() const {
  std::vector<int> ker;
  for (int g = 0; g < source->order; ++g)
    if (map[g] == target->identity) ker.push_back(g);
  return ker;
}

void GroupHom::validate() const {
  if (static_cast<int>(map.size()) != source->order)
    throw LoadError("homomorphism map has wrong size");
  if (map[source->identity] != target->identity)
    throw LoadError("homomorphism does not preserve the identity");
  for (int a = 0; a < source->order; ++a)
    for (int b = 0; b < source->order; ++b)
      if (map[source->mul(a, b)] != target->mul(map[a], map[b]))
        throw LoadError(detail::concat("homomorphism fails at pair (", a, ", ",
                                       b, ")"));
}

bool check_subgroup(const FiniteGroup& G, const std::vector<int>& H,
                    std::string* why) {
  std::vector<char> member(G.order, 0);
  for (int h : H) {
    if (h < 0 || h >= G.order) {
      if (why) *why = detail::concat("element ", h, " out of range");
      return false;
    }
    member[h] = 1;
  }
  if (!member[G.identity]) {
    if (why) *why = "identity missing";
    return false;
  }
  for (int a : H) {
    if (!member[G.inv(a)]) {
      if (why) *why = detail::concat("inverse of ", a, " missing");
      return false;
    }
    for (int b : H)
      if (!member[G.mul(a, b)]) {
        if (why)
          *why = detail::concat("product of pair (", a, ", ", b, ") escapes");
        return false;
      }
  }
  return true;
}

bool check_normal(const FiniteGroup& G, const std::vector<int>& H,
                  std::string* why) {
  if (!check_subgroup(G, H, why)) return false;
  std::vector<char> member(G.order, 0);
  for (int h : H) member[h] = 1;
  for (int g = 0; g < G.order; ++g)
    for (int h : H) {
      const int c = G.mul(G.mul(g, h), G.inv(g));
      if (!member[c]) {
        if (why)
          *why = detail::concat("conjugate ", g, ".", h, ".", g,
                                "^-1 = ", c, " escapes");
        return false;
      }
    }
  return true;
}

std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens) {
  std::vector<char> member(G.order, 0);
  member[G.identity] = 1;
  std::vector<int> frontier{G.identity};
  for (int g : gens)
    if (!member[g]) {
      member[g] = 1;
      frontier.push_back(g);
    }
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < G.order; ++a) {
      if (!member[a]) continue;
      if (!member[G.inv(a)]) {
        member[G.inv(a)] = 1;
        grew = true;
      }
      for (int b = 0; b < G.order; ++b)
        if (member[b] && !member[G.mul(a, b)]) {
          member[G.mul(a, b)] = 1;
          grew = true;
        }
    }
  }
  std::vector<int> out;
  for (int g = 0; g < G.order; ++g)
    if (member[g]) out.push_back(g);
  return out;
}

std::vector<int> normal_closure(const FiniteGroup& G, std::vector<int> gens) {
  std::vector<int> conj;
  for (int h : gens)
    for (int g = 0; g < G.order; ++g)
      conj.push_back(G.mul(G.mul(g, h), G.inv(g)));
  return subgroup_closure(G, conj);
}

std::vector<std::vector<int>> enumerate_subgroups(const FiniteGroup& G) {
  std::set<std::vector<int>> found;
  found.insert(subgroup_closure(G, {}));
  for (int a = 0; a < G.order; ++a) {
    found.insert(subgroup_closure(G, {a}));
    for (int b = a + 1; b < G.order; ++b)
      found.insert(subgroup_closure(G, {a, b}));
  }
  return {found.begin(), found.end()};
}

CosetSystem coset_system(const GroupPtr& G, std::vector<int> subgroup_elements) {
  std::sort(subgroup_elements.begin(), subgroup_elements.end());
  subgroup_elements.erase(
      std::unique(subgroup_elements.begin(), subgroup_elements.end()),
      subgroup_elements.end());
  std::string why;
  if (!check_subgroup(*G, subgroup_elements, &why))
    throw UsageError("not a subgroup: " + why);

  CosetSystem cs;
  cs.group = G;
  cs.subgroup = subgroup_elements;

  // Identity represents the subgroup's own coset; every other coset is
  // represented by its minimal element index.
  std::vector<int> rep_of(G->order, -1);
  for (int g = 0; g < G->order; ++g) {
    if (rep_of[g] >= 0) continue;
    int rep = G->order;
    bool has_identity = false;
    std::vector<int> members;
    members.reserve(subgroup_elements.size());
    for (int h : subgroup_elements) {
      const int x = G->mul(h, g);  // left coset Lambda g
      members.push_back(x);
      rep = std::min(rep, x);
      has_identity = has_identity || x == G->identity;
    }
    if (has_identity) rep = G->identity;
    for (int x : members) rep_of[x] = rep;
  }
  cs.retract = rep_of;
  std::set<int> reps(rep_of.begin(), rep_of.end());
  cs.reps.assign(reps.begin(), reps.end());

  if (cs.reps.size() * subgroup_elements.size() !=
      static_cast<std::size_t>(G->order))
    throw LoadError("coset count inconsistent with subgroup order");

  // Materialize Lambda as its own group.
  const int m = static_cast<int>(subgroup_elements.size());
  cs.sub_to_parent = subgroup_elements;
  cs.parent_to_sub.assign(G->order, -1);
  for (int i = 0; i < m; ++i) cs.parent_to_sub[subgroup_elements[i]] = i;
  std::vector<int> table(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[i * m + j] =
          cs.parent_to_sub[G->mul(subgroup_elements[i], subgroup_elements[j])];
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = G->label(subgroup_elements[i]);
  auto sub = std::make_shared<FiniteGroup>();
  sub->order = m;
  sub->table = std::move(table);
  sub->identity = cs.parent_to_sub[G->identity];
  sub->inverses.resize(m);
  for (int i = 0; i < m; ++i)
    sub->inverses[i] = cs.parent_to_sub[G->inv(subgroup_elements[i])];
  sub->labels = std::move(labels);
  sub->name = G->name + "|subgroup";
  sub->validate();
  cs.subgroup_group = sub;

  // Retraction invariant: x.g.r(xg)^-1 lies in the subgroup for all x in R.
  for (int x : cs.reps)
    for (int g = 0; g < G->order; ++g) {
      const int xg = G->mul(x, g);
      if (cs.parent_to_sub[G->mul(xg, G->inv(cs.retract[xg]))] < 0)
        throw LoadError(detail::concat("retraction invariant fails at (", x,
                                       ", ", g, ")"));
    }
  return cs;
}

int CosetSystem::rep_position(int rep) const {
  const auto it = std::lower_bound(reps.begin(), reps.end(), rep);
  if (it == reps.end() || *it != rep)
    throw UsageError(detail::concat("element ", rep, " is not a representative"));
  return static_cast<int>(it - reps.begin());
}

std::pair<GroupPtr, GroupHom> quotient(const GroupPtr& G,
                                       const std::vector<int>& normal_subgroup) {
  std::string why;
  if (!check_normal(*G, normal_subgroup, &why))
    throw UsageError("not a normal subgroup: " + why);

  // Cosets ordered by minimal member.
  std::vector<int> coset_min(G->order, -1);
  for (int g = 0; g < G->order; ++g) {
    if (coset_min[g] >= 0) continue;
    int mn = G->order;
    std::vector<int> members;
    for (int h : normal_subgroup) {
      const int x = G->mul(h, g);
      members.push_back(x);
      mn = std::min(mn, x);
    }
    for (int x : members) coset_min[x] = mn;
  }
  std::set<int> mins(coset_min.begin(), coset_min.end());
  std::vector<int> rep_list(mins.begin(), mins.end());
  const int q = static_cast<int>(rep_list.size());
  std::vector<int> coset_index(G->order);
  for (int g = 0; g < G->order; ++g)
    coset_index[g] = static_cast<int>(
        std::lower_bound(rep_list.begin(), rep_list.end(), coset_min[g]) -
        rep_list.begin());

  std::vector<int> table(q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      table[a * q + b] = coset_index[G->mul(rep_list[a], rep_list[b])];

  std::vector<std::string> labels(q);
  for (int a = 0; a < q; ++a) labels[a] = "[" + G->label(rep_list[a]) + "]";
  auto Q = std::make_shared<FiniteGroup>();
  Q->order = q;
  Q->table = std::move(table);
  Q->identity = coset_index[G->identity];
  Q->inverses = compute_inverses(Q->table, q, Q->identity);
  Q->labels = std::move(labels);
  Q->name = G->name + "/N";
  Q->validate();

  GroupHom hom{G, Q, coset_index};
  hom.validate();
  if (!hom.is_surjective()) throw LoadError("quotient map is not surjective");
  // Kernel must be exactly the given normal subgroup.
  std::vector<int> ker = hom.kernel();
  std::vector<int> sorted = normal_subgroup;
  std::sort(sorted.begin(), sorted.end());
  if (ker != sorted) throw LoadError("quotient kernel mismatch");
  return {Q, hom};
}

}  // namespace ulam::groups
