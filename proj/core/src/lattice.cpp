#include "rspace/lattice.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <sstream>

namespace rspace {

DistLattice::DistLattice(std::vector<std::string> names, std::vector<std::vector<size_t>> add,
                         std::vector<std::vector<size_t>> mul, size_t zero, size_t one)
    : names_(std::move(names)), add_(std::move(add)), mul_(std::move(mul)), zero_(zero),
      one_(one) {
  size_t n = names_.size();
  if (n == 0) throw domain_error("lattice must be nonempty");
  if (add_.size() != n || mul_.size() != n) throw domain_error("operation table size mismatch");
  for (const auto& row : add_)
    if (row.size() != n) throw domain_error("operation table size mismatch");
  for (const auto& row : mul_)
    if (row.size() != n) throw domain_error("operation table size mismatch");
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      if (add_[a][b] >= n || mul_[a][b] >= n) throw domain_error("table entry out of range");
      if (add_[a][b] != add_[b][a] || mul_[a][b] != mul_[b][a])
        throw domain_error("operations must be commutative");
    }
  for (size_t a = 0; a < n; ++a) {
    if (add_[a][a] != a || mul_[a][a] != a) throw domain_error("operations must be idempotent");
    if (add_[a][zero_] != a) throw domain_error("0 is not neutral for +");
    if (mul_[a][one_] != a) throw domain_error("1 is not neutral for *");
    if (mul_[a][zero_] != zero_) throw domain_error("a*0 = 0 fails");
    if (add_[a][one_] != one_) throw domain_error("a+1 = 1 fails");
  }
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      if (add_[a][mul_[a][b]] != a || mul_[a][add_[a][b]] != a)
        throw domain_error("absorption fails");
      for (size_t c = 0; c < n; ++c) {
        if (add_[add_[a][b]][c] != add_[a][add_[b][c]])
          throw domain_error("+ is not associative");
        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
          throw domain_error("* is not associative");
        if (mul_[a][add_[b][c]] != add_[mul_[a][b]][mul_[a][c]])
          throw domain_error("* does not distribute over +");
      }
    }
}

std::string DistLattice::to_json() const {
  nlohmann::json j;
  j["elements"] = names_;
  j["add"] = add_;
  j["mul"] = mul_;
  j["zero"] = zero_;
  j["one"] = one_;
  return j.dump(2);
}

DistLattice DistLattice::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return DistLattice(j.at("elements").get<std::vector<std::string>>(),
                     j.at("add").get<std::vector<std::vector<size_t>>>(),
                     j.at("mul").get<std::vector<std::vector<size_t>>>(),
                     j.at("zero").get<size_t>(), j.at("one").get<size_t>());
}

namespace {

// antichain canonical form: sorted member masks with no containments
bool is_antichain(uint32_t members, size_t subsets) {
  for (size_t s = 0; s < subsets; ++s) {
    if (!(members & (1u << s))) continue;
    for (size_t t = 0; t < subsets; ++t) {
      if (s == t || !(members & (1u << t))) continue;
      if ((s & t) == s) return false;  // s subset of t: t is redundant
    }
  }
  return true;
}

uint32_t minimize_upset(uint32_t members, size_t subsets) {
  uint32_t out = 0;
  for (size_t s = 0; s < subsets; ++s) {
    if (!(members & (1u << s))) continue;
    bool minimal = true;
    for (size_t t = 0; t < subsets && minimal; ++t) {
      if (t == s || !(members & (1u << t))) continue;
      if ((t & s) == t) minimal = false;  // t subset of s
    }
    if (minimal) out |= (1u << s);
  }
  return out;
}

std::string antichain_name(uint32_t members, size_t n) {
  if (members == 0) return "0";
  if (members & 1u) return "1";  // contains the empty set: the top element
  std::ostringstream out;
  bool first_term = true;
  for (size_t s = 0; s < (1u << n); ++s) {
    if (!(members & (1u << s))) continue;
    if (!first_term) out << "+";
    bool first_factor = true;
    for (size_t i = 0; i < n; ++i) {
      if (!(s & (1u << i))) continue;
      if (!first_factor) out << "*";
      out << "x" << (i + 1);
      first_factor = false;
    }
    first_term = false;
  }
  return out.str();
}

}  // namespace

DistLattice free_dl(size_t n) {
  if (n > 4) throw domain_error("free distributive lattice guard: n <= 4");
  size_t subsets = 1u << n;
  std::vector<uint32_t> elements;
  for (uint32_t members = 0; members < (1u << subsets); ++members)
    if (is_antichain(members, subsets)) elements.push_back(members);
  std::map<uint32_t, size_t> index;
  for (size_t i = 0; i < elements.size(); ++i) index[elements[i]] = i;
  size_t count = elements.size();
  std::vector<std::vector<size_t>> add(count, std::vector<size_t>(count));
  std::vector<std::vector<size_t>> mul(count, std::vector<size_t>(count));
  for (size_t a = 0; a < count; ++a)
    for (size_t b = 0; b < count; ++b) {
      add[a][b] = index.at(minimize_upset(elements[a] | elements[b], subsets));
      uint32_t meet = 0;
      for (size_t s = 0; s < subsets; ++s) {
        if (!(elements[a] & (1u << s))) continue;
        for (size_t t = 0; t < subsets; ++t) {
          if (!(elements[b] & (1u << t))) continue;
          meet |= (1u << (s | t));
        }
      }
      mul[a][b] = index.at(minimize_upset(meet, subsets));
    }
  std::vector<std::string> names;
  for (uint32_t members : elements) names.push_back(antichain_name(members, n));
  return DistLattice(std::move(names), std::move(add), std::move(mul), index.at(0),
                     index.at(1));  // 0: empty antichain; 1: the antichain {emptyset}
}

namespace {

bool is_prime_ideal(const DistLattice& l, const std::vector<bool>& in) {
  size_t n = l.size();
  bool any = false, all = true;
  for (size_t a = 0; a < n; ++a) {
    if (in[a]) any = true;
    else all = false;
  }
  if (!any || all) return false;
  for (size_t a = 0; a < n; ++a) {
    if (!in[a]) continue;
    for (size_t b = 0; b < n; ++b) {
      if (l.leq(b, a) && !in[b]) return false;
      if (in[b] && !in[l.add(a, b)]) return false;
    }
  }
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (in[l.mul(a, b)] && !in[a] && !in[b]) return false;
  return true;
}

}  // namespace

SSpecResult sspec(const DistLattice& l) {
  if (l.size() > 200) throw domain_error("sspec guard: lattice larger than 200");
  std::vector<size_t> irreducibles;
  for (size_t j = 0; j < l.size(); ++j) {
    if (j == l.zero()) continue;
    bool irreducible = true;
    for (size_t a = 0; a < l.size() && irreducible; ++a)
      for (size_t b = 0; b < l.size() && irreducible; ++b)
        if (l.add(a, b) == j && a != j && b != j) irreducible = false;
    if (irreducible) irreducibles.push_back(j);
  }
  std::vector<std::vector<size_t>> primes;
  std::vector<std::string> labels;
  for (size_t j : irreducibles) {
    std::vector<bool> in(l.size(), false);
    for (size_t a = 0; a < l.size(); ++a)
      if (!l.leq(j, a)) in[a] = true;
    if (!is_prime_ideal(l, in))
      throw domain_error("join-irreducible did not induce a prime ideal");
    std::vector<size_t> members;
    for (size_t a = 0; a < l.size(); ++a)
      if (in[a]) members.push_back(a);
    primes.push_back(std::move(members));
    labels.push_back("p(" + l.names()[j] + ")");
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (size_t x = 0; x < primes.size(); ++x)
    for (size_t y = 0; y < primes.size(); ++y) {
      if (x == y) continue;
      // Zariski specialization order: p <= q iff p contains q
      if (std::includes(primes[x].begin(), primes[x].end(), primes[y].begin(), primes[y].end()))
        pairs.emplace_back(labels[x], labels[y]);
    }
  return SSpecResult{FinitePoset(std::move(labels), pairs), std::move(primes)};
}

std::vector<std::vector<size_t>> prime_ideals_brute_force(const DistLattice& l) {
  if (l.size() > 16) throw domain_error("brute-force prime enumeration guard: size <= 16");
  std::vector<std::vector<size_t>> primes;
  for (uint32_t mask = 1; mask < (1u << l.size()); ++mask) {
    std::vector<bool> in(l.size(), false);
    for (size_t a = 0; a < l.size(); ++a)
      if (mask & (1u << a)) in[a] = true;
    if (!is_prime_ideal(l, in)) continue;
    std::vector<size_t> members;
    for (size_t a = 0; a < l.size(); ++a)
      if (in[a]) members.push_back(a);
    primes.push_back(std::move(members));
  }
  return primes;
}

std::vector<uint32_t> closed_lattice_masks(const FinitePoset& s) {
  if (s.size() > 16) throw domain_error("closed-set lattice guard: poset larger than 16");
  std::vector<uint32_t> masks;
  for (uint32_t mask = 0; mask < (1u << s.size()); ++mask) {
    bool down = true;
    for (size_t p = 0; p < s.size() && down; ++p) {
      if (!(mask & (1u << p))) continue;
      for (size_t q = 0; q < s.size() && down; ++q)
        if (s.leq(q, p) && !(mask & (1u << q))) down = false;
    }
    if (down) masks.push_back(mask);
  }
  std::stable_sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });
  return masks;
}

DistLattice closed_lattice(const FinitePoset& s) {
  std::vector<uint32_t> masks = closed_lattice_masks(s);
  std::map<uint32_t, size_t> index;
  for (size_t i = 0; i < masks.size(); ++i) index[masks[i]] = i;
  size_t count = masks.size();
  std::vector<std::vector<size_t>> add(count, std::vector<size_t>(count));
  std::vector<std::vector<size_t>> mul(count, std::vector<size_t>(count));
  for (size_t a = 0; a < count; ++a)
    for (size_t b = 0; b < count; ++b) {
      add[a][b] = index.at(masks[a] & masks[b]);  // + is intersection
      mul[a][b] = index.at(masks[a] | masks[b]);  // * is union
    }
  std::vector<std::string> names;
  for (uint32_t mask : masks) names.push_back(subset_label(s.labels(), mask));
  uint32_t whole = s.size() == 32 ? ~0u : ((1u << s.size()) - 1u);
  return DistLattice(std::move(names), std::move(add), std::move(mul), index.at(whole),
                     index.at(0));
}

bool canonical_poset_iso(const FinitePoset& s) {
  std::vector<uint32_t> masks = closed_lattice_masks(s);
  DistLattice a = closed_lattice(s);
  SSpecResult ss = sspec(a);
  if (ss.poset.size() != s.size()) return false;
  // s |-> {closed sets containing s}
  std::vector<size_t> image(s.size());
  std::vector<bool> hit(ss.poset.size(), false);
  for (size_t p = 0; p < s.size(); ++p) {
    std::vector<size_t> members;
    for (size_t i = 0; i < masks.size(); ++i)
      if (masks[i] & (1u << p)) members.push_back(i);
    bool found = false;
    for (size_t t = 0; t < ss.primes.size() && !found; ++t)
      if (ss.primes[t] == members) {
        image[p] = t;
        if (hit[t]) return false;
        hit[t] = true;
        found = true;
      }
    if (!found) return false;
  }
  for (size_t p = 0; p < s.size(); ++p)
    for (size_t q = 0; q < s.size(); ++q)
      if (s.leq(p, q) != ss.poset.leq(image[p], image[q])) return false;
  return true;
}

bool canonical_lattice_iso(const DistLattice& l) {
  SSpecResult ss = sspec(l);
  std::vector<uint32_t> masks = closed_lattice_masks(ss.poset);
  DistLattice a = closed_lattice(ss.poset);
  if (a.size() != l.size()) return false;
  std::vector<bool> prime_contains(ss.primes.size() * l.size(), false);
  for (size_t t = 0; t < ss.primes.size(); ++t)
    for (size_t m : ss.primes[t]) prime_contains[t * l.size() + m] = true;
  std::vector<size_t> image(l.size());
  std::vector<bool> hit(a.size(), false);
  for (size_t x = 0; x < l.size(); ++x) {
    uint32_t mask = 0;
    for (size_t t = 0; t < ss.primes.size(); ++t)
      if (prime_contains[t * l.size() + x]) mask |= (1u << t);
    bool found = false;
    for (size_t i = 0; i < masks.size() && !found; ++i)
      if (masks[i] == mask) {
        image[x] = i;
        if (hit[i]) return false;
        hit[i] = true;
        found = true;
      }
    if (!found) return false;
  }
  if (image[l.zero()] != a.zero() || image[l.one()] != a.one()) return false;
  for (size_t x = 0; x < l.size(); ++x)
    for (size_t y = 0; y < l.size(); ++y) {
      if (image[l.add(x, y)] != a.add(image[x], image[y])) return false;
      if (image[l.mul(x, y)] != a.mul(image[x], image[y])) return false;
    }
  return true;
}

}  // namespace rspace
