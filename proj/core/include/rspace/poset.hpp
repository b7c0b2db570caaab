#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rspace/field.hpp"

namespace rspace {

struct PosetData;
class OpenSet;
class MonotoneMap;

/// Finite poset with the Alexandrov topology: opens are exactly the up-sets.
/// Elements are opaque interned labels; the order relation is validated
/// (reflexive, antisymmetric, transitive) on construction.
class FinitePoset {
public:
  FinitePoset(std::vector<std::string> labels,
              const std::vector<std::pair<std::string, std::string>>& leq_pairs);

  static FinitePoset point(const std::string& label = "*");
  /// Totally ordered poset 1 < 2 < ... < n.
  static FinitePoset chain(size_t n);

  size_t size() const;
  const std::vector<std::string>& labels() const;
  const std::string& label(size_t i) const;
  size_t index_of(const std::string& label) const;
  bool leq(size_t a, size_t b) const;

  bool is_upset(const std::vector<size_t>& carrier) const;
  std::vector<size_t> up_closure(const std::vector<size_t>& seed) const;
  OpenSet min_open(size_t p) const;
  OpenSet open(std::vector<size_t> carrier) const;
  OpenSet whole() const;
  OpenSet empty_open() const;
  /// All open subsets (guarded: |S| <= 16).
  std::vector<OpenSet> all_opens() const;

  std::vector<size_t> minimal_elements() const;
  std::vector<size_t> minimal_elements_of(const std::vector<size_t>& subset) const;
  /// Hasse edges a -> b with a covered by b.
  std::vector<std::pair<size_t, size_t>> covering_pairs() const;
  /// All pairs a <= b, a != b.
  std::vector<std::pair<size_t, size_t>> comparable_pairs() const;
  std::optional<size_t> minimum() const;

  bool same_order(const FinitePoset& other) const;

  std::string to_json() const;
  static FinitePoset from_json(const std::string& text);
  std::string to_dot() const;

  bool operator==(const FinitePoset& other) const;
  bool operator!=(const FinitePoset& other) const { return !(*this == other); }

  std::shared_ptr<const PosetData> data() const { return data_; }

private:
  explicit FinitePoset(std::shared_ptr<const PosetData> data) : data_(std::move(data)) {}
  std::shared_ptr<const PosetData> data_;

  friend FinitePoset poset_product(const FinitePoset&, const FinitePoset&,
                                   std::vector<std::pair<size_t, size_t>>*);
};

/// An open subset of a poset; the carrier is sorted and the up-set property
/// is checked on construction.
class OpenSet {
public:
  OpenSet(FinitePoset poset, std::vector<size_t> carrier);

  const FinitePoset& poset() const { return poset_; }
  const std::vector<size_t>& carrier() const { return carrier_; }
  bool contains(size_t p) const;
  bool subset_of(const OpenSet& other) const;
  OpenSet intersect(const OpenSet& other) const;
  OpenSet unite(const OpenSet& other) const;
  bool operator==(const OpenSet& other) const;
  bool operator!=(const OpenSet& other) const { return !(*this == other); }

private:
  FinitePoset poset_;
  std::vector<size_t> carrier_;
};

/// Order-preserving map between finite posets (equivalently, a continuous map
/// for the Alexandrov topologies; both characterizations are checked).
class MonotoneMap {
public:
  MonotoneMap(FinitePoset source, FinitePoset target, std::vector<size_t> images);

  static MonotoneMap identity(const FinitePoset& p);

  const FinitePoset& source() const { return source_; }
  const FinitePoset& target() const { return target_; }
  size_t apply(size_t p) const { return images_.at(p); }
  const std::vector<size_t>& images() const { return images_; }
  OpenSet preimage(const OpenSet& open) const;
  static MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner);

  bool operator==(const MonotoneMap& other) const;
  bool operator!=(const MonotoneMap& other) const { return !(*this == other); }

private:
  FinitePoset source_;
  FinitePoset target_;
  std::vector<size_t> images_;
};

/// A poset of subsets of a ground set, with per-element bitmasks kept for the
/// modules that need the subset semantics (affine charts, grassmann charts).
struct PartsPoset {
  FinitePoset poset;
  std::vector<std::string> ground;  // ground element labels, index = bit
  std::vector<uint32_t> masks;      // mask per poset element
  size_t index_of_mask(uint32_t mask) const;
};

std::string subset_label(const std::vector<std::string>& ground, uint32_t mask);

/// P_n: all subsets of {1..n} ordered by inclusion (2^n elements, n <= 20).
PartsPoset parts_poset(size_t n);
/// P_n^*: the open subposet of nonempty subsets (n >= 1).
PartsPoset nonempty_parts_poset(size_t n);
/// Powerset poset over arbitrary ground labels.
PartsPoset powerset_poset(const std::vector<std::string>& ground, bool include_empty);

/// All continuous maps S -> P_n (|S| <= 8), enumerated directly.
std::vector<MonotoneMap> enumerate_continuous_maps(const FinitePoset& s, size_t n);
/// The two constructive directions of the P_n universal property.
MonotoneMap map_from_opens(const FinitePoset& s, const std::vector<OpenSet>& opens);
std::vector<OpenSet> opens_from_map(const MonotoneMap& map, size_t n);

/// Topological half of the finite-space quotient attached to a covering:
/// points are classes of U^s (the intersection of the covering sets through
/// s), ordered by reverse inclusion of the U^s; returns the projection too.
std::pair<FinitePoset, MonotoneMap> covering_quotient_top(const FinitePoset& s,
                                                          const std::vector<OpenSet>& cover);

bool is_covering(const FinitePoset& s, const std::vector<OpenSet>& cover);

/// Product poset with the componentwise order; optionally reports the pair of
/// factor indices for each product element (in construction order).
FinitePoset poset_product(const FinitePoset& a, const FinitePoset& b,
                          std::vector<std::pair<size_t, size_t>>* pairs_out = nullptr);

/// Open subposet carried by an open set; reports the index embedding.
FinitePoset open_subposet(const OpenSet& open, std::vector<size_t>* embed_out = nullptr);

}  // namespace rspace
