#include "rspace/poset.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <sstream>

namespace rspace {

struct PosetData {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq;
  std::map<std::string, size_t> index;
};

namespace {

std::shared_ptr<const PosetData> make_data(std::vector<std::string> labels,
                                           std::vector<std::vector<bool>> leq) {
  auto data = std::make_shared<PosetData>();
  data->labels = std::move(labels);
  data->leq = std::move(leq);
  for (size_t i = 0; i < data->labels.size(); ++i) {
    if (data->index.count(data->labels[i]))
      throw domain_error("duplicate poset label: " + data->labels[i]);
    data->index[data->labels[i]] = i;
  }
  size_t n = data->labels.size();
  for (size_t i = 0; i < n; ++i)
    if (!data->leq[i][i]) throw domain_error("order not reflexive at " + data->labels[i]);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && data->leq[i][j] && data->leq[j][i])
        throw domain_error("order not antisymmetric: " + data->labels[i] + ", " + data->labels[j]);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (data->leq[i][j] && data->leq[j][k] && !data->leq[i][k])
          throw domain_error("order not transitive through " + data->labels[j]);
  return data;
}

}  // namespace

FinitePoset::FinitePoset(std::vector<std::string> labels,
                         const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
  size_t n = labels.size();
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < n; ++i) index[labels[i]] = i;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (const auto& [a, b] : leq_pairs) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end() || ib == index.end())
      throw domain_error("leq pair references unknown element");
    leq[ia->second][ib->second] = true;
  }
  data_ = make_data(std::move(labels), std::move(leq));
}

FinitePoset FinitePoset::point(const std::string& label) { return FinitePoset({label}, {}); }

FinitePoset FinitePoset::chain(size_t n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = i + 1; j <= n; ++j) pairs.emplace_back(std::to_string(i), std::to_string(j));
  return FinitePoset(std::move(labels), pairs);
}

size_t FinitePoset::size() const { return data_->labels.size(); }
const std::vector<std::string>& FinitePoset::labels() const { return data_->labels; }
const std::string& FinitePoset::label(size_t i) const { return data_->labels.at(i); }

size_t FinitePoset::index_of(const std::string& label) const {
  auto it = data_->index.find(label);
  if (it == data_->index.end()) throw domain_error("unknown poset element: " + label);
  return it->second;
}

bool FinitePoset::leq(size_t a, size_t b) const { return data_->leq.at(a).at(b); }

bool FinitePoset::is_upset(const std::vector<size_t>& carrier) const {
  for (size_t p : carrier)
    for (size_t q = 0; q < size(); ++q)
      if (leq(p, q) && std::find(carrier.begin(), carrier.end(), q) == carrier.end()) return false;
  return true;
}

std::vector<size_t> FinitePoset::up_closure(const std::vector<size_t>& seed) const {
  std::vector<bool> in(size(), false);
  for (size_t p : seed)
    for (size_t q = 0; q < size(); ++q)
      if (leq(p, q)) in[q] = true;
  std::vector<size_t> result;
  for (size_t q = 0; q < size(); ++q)
    if (in[q]) result.push_back(q);
  return result;
}

OpenSet FinitePoset::min_open(size_t p) const {
  if (p >= size()) throw domain_error("element index out of range");
  return OpenSet(*this, up_closure({p}));
}

OpenSet FinitePoset::open(std::vector<size_t> carrier) const {
  return OpenSet(*this, std::move(carrier));
}

OpenSet FinitePoset::whole() const {
  std::vector<size_t> all(size());
  for (size_t i = 0; i < size(); ++i) all[i] = i;
  return OpenSet(*this, std::move(all));
}

OpenSet FinitePoset::empty_open() const { return OpenSet(*this, {}); }

std::vector<OpenSet> FinitePoset::all_opens() const {
  if (size() > 16) throw domain_error("open-set enumeration guard: poset too large");
  std::vector<OpenSet> opens;
  for (uint32_t mask = 0; mask < (1u << size()); ++mask) {
    std::vector<size_t> carrier;
    for (size_t i = 0; i < size(); ++i)
      if (mask & (1u << i)) carrier.push_back(i);
    if (is_upset(carrier)) opens.emplace_back(*this, std::move(carrier));
  }
  return opens;
}

std::vector<size_t> FinitePoset::minimal_elements() const {
  std::vector<size_t> all(size());
  for (size_t i = 0; i < size(); ++i) all[i] = i;
  return minimal_elements_of(all);
}

std::vector<size_t> FinitePoset::minimal_elements_of(const std::vector<size_t>& subset) const {
  std::vector<size_t> result;
  for (size_t p : subset) {
    bool minimal = true;
    for (size_t q : subset)
      if (q != p && leq(q, p)) {
        minimal = false;
        break;
      }
    if (minimal) result.push_back(p);
  }
  return result;
}

std::vector<std::pair<size_t, size_t>> FinitePoset::covering_pairs() const {
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t a = 0; a < size(); ++a)
    for (size_t b = 0; b < size(); ++b) {
      if (a == b || !leq(a, b)) continue;
      bool covering = true;
      for (size_t c = 0; c < size(); ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) {
          covering = false;
          break;
        }
      if (covering) pairs.emplace_back(a, b);
    }
  return pairs;
}

std::vector<std::pair<size_t, size_t>> FinitePoset::comparable_pairs() const {
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t a = 0; a < size(); ++a)
    for (size_t b = 0; b < size(); ++b)
      if (a != b && leq(a, b)) pairs.emplace_back(a, b);
  return pairs;
}

std::optional<size_t> FinitePoset::minimum() const {
  for (size_t m = 0; m < size(); ++m) {
    bool min = true;
    for (size_t q = 0; q < size(); ++q)
      if (!leq(m, q)) {
        min = false;
        break;
      }
    if (min) return m;
  }
  return std::nullopt;
}

bool FinitePoset::same_order(const FinitePoset& other) const {
  if (size() != other.size()) return false;
  for (size_t i = 0; i < size(); ++i)
    for (size_t j = 0; j < size(); ++j)
      if (leq(i, j) != other.leq(i, j)) return false;
  return true;
}

bool FinitePoset::operator==(const FinitePoset& other) const {
  if (data_ == other.data_) return true;
  return data_->labels == other.data_->labels && same_order(other);
}

std::string FinitePoset::to_json() const {
  nlohmann::json j;
  j["elements"] = data_->labels;
  auto leq = nlohmann::json::array();
  for (size_t a = 0; a < size(); ++a)
    for (size_t b = 0; b < size(); ++b)
      if (this->leq(a, b)) leq.push_back({label(a), label(b)});
  j["leq"] = leq;
  return j.dump(2);
}

FinitePoset FinitePoset::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<std::string> labels = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : j.at("leq"))
    pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  return FinitePoset(std::move(labels), pairs);
}

std::string FinitePoset::to_dot() const {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n";
  for (size_t i = 0; i < size(); ++i)
    out << "  n" << i << " [label=\"" << label(i) << "\"];\n";
  for (const auto& [a, b] : covering_pairs()) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

OpenSet::OpenSet(FinitePoset poset, std::vector<size_t> carrier)
    : poset_(std::move(poset)), carrier_(std::move(carrier)) {
  std::sort(carrier_.begin(), carrier_.end());
  carrier_.erase(std::unique(carrier_.begin(), carrier_.end()), carrier_.end());
  for (size_t p : carrier_)
    if (p >= poset_.size()) throw domain_error("open-set element out of range");
  if (!poset_.is_upset(carrier_)) throw domain_error("carrier is not an up-set");
}

bool OpenSet::contains(size_t p) const {
  return std::binary_search(carrier_.begin(), carrier_.end(), p);
}

bool OpenSet::subset_of(const OpenSet& other) const {
  return std::includes(other.carrier_.begin(), other.carrier_.end(), carrier_.begin(),
                       carrier_.end());
}

OpenSet OpenSet::intersect(const OpenSet& other) const {
  std::vector<size_t> carrier;
  std::set_intersection(carrier_.begin(), carrier_.end(), other.carrier_.begin(),
                        other.carrier_.end(), std::back_inserter(carrier));
  return OpenSet(poset_, std::move(carrier));
}

OpenSet OpenSet::unite(const OpenSet& other) const {
  std::vector<size_t> carrier;
  std::set_union(carrier_.begin(), carrier_.end(), other.carrier_.begin(), other.carrier_.end(),
                 std::back_inserter(carrier));
  return OpenSet(poset_, std::move(carrier));
}

bool OpenSet::operator==(const OpenSet& other) const {
  return poset_ == other.poset_ && carrier_ == other.carrier_;
}

MonotoneMap::MonotoneMap(FinitePoset source, FinitePoset target, std::vector<size_t> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.size()) throw domain_error("monotone map image count mismatch");
  for (size_t v : images_)
    if (v >= target_.size()) throw domain_error("monotone map image out of range");
  for (size_t a = 0; a < source_.size(); ++a)
    for (size_t b = 0; b < source_.size(); ++b)
      if (source_.leq(a, b) && !target_.leq(images_[a], images_[b]))
        throw domain_error("map is not order-preserving");
}

MonotoneMap MonotoneMap::identity(const FinitePoset& p) {
  std::vector<size_t> images(p.size());
  for (size_t i = 0; i < p.size(); ++i) images[i] = i;
  return MonotoneMap(p, p, std::move(images));
}

OpenSet MonotoneMap::preimage(const OpenSet& open) const {
  if (open.poset() != target_) throw domain_error("preimage of open from wrong poset");
  std::vector<size_t> carrier;
  for (size_t p = 0; p < source_.size(); ++p)
    if (open.contains(images_[p])) carrier.push_back(p);
  return OpenSet(source_, std::move(carrier));
}

MonotoneMap MonotoneMap::compose(const MonotoneMap& outer, const MonotoneMap& inner) {
  if (inner.target_ != outer.source_) throw domain_error("monotone map composition mismatch");
  std::vector<size_t> images;
  for (size_t v : inner.images_) images.push_back(outer.images_[v]);
  return MonotoneMap(inner.source_, outer.target_, std::move(images));
}

bool MonotoneMap::operator==(const MonotoneMap& other) const {
  return source_ == other.source_ && target_ == other.target_ && images_ == other.images_;
}

std::string subset_label(const std::vector<std::string>& ground, uint32_t mask) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (size_t i = 0; i < ground.size(); ++i) {
    if (!(mask & (1u << i))) continue;
    if (!first) out << ",";
    out << ground[i];
    first = false;
  }
  out << "}";
  return out.str();
}

size_t PartsPoset::index_of_mask(uint32_t mask) const {
  for (size_t i = 0; i < masks.size(); ++i)
    if (masks[i] == mask) return i;
  throw domain_error("subset not present in parts poset");
}

PartsPoset powerset_poset(const std::vector<std::string>& ground, bool include_empty) {
  size_t n = ground.size();
  if (n > 20) throw domain_error("parts poset guard: ground set larger than 20");
  if (!include_empty && n == 0) throw domain_error("nonempty parts of an empty ground set");
  std::vector<uint32_t> masks;
  for (uint32_t mask = include_empty ? 0 : 1; mask < (1u << n); ++mask) masks.push_back(mask);
  // order: by popcount, then by ascending mask value (lex on sorted members)
  std::stable_sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });
  std::vector<std::string> labels;
  for (uint32_t m : masks) labels.push_back(subset_label(ground, m));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (size_t i = 0; i < masks.size(); ++i)
    for (size_t j = 0; j < masks.size(); ++j)
      if (i != j && (masks[i] & masks[j]) == masks[i]) pairs.emplace_back(labels[i], labels[j]);
  PartsPoset result{FinitePoset(std::move(labels), pairs), ground, std::move(masks)};
  return result;
}

PartsPoset parts_poset(size_t n) {
  std::vector<std::string> ground;
  for (size_t i = 1; i <= n; ++i) ground.push_back(std::to_string(i));
  return powerset_poset(ground, true);
}

PartsPoset nonempty_parts_poset(size_t n) {
  if (n == 0) throw domain_error("nonempty parts poset requires n >= 1");
  std::vector<std::string> ground;
  for (size_t i = 1; i <= n; ++i) ground.push_back(std::to_string(i));
  return powerset_poset(ground, false);
}

namespace {

void enumerate_rec(const FinitePoset& s, const FinitePoset& target,
                   const std::vector<size_t>& order, std::vector<size_t>& assignment, size_t k,
                   std::vector<MonotoneMap>& out) {
  if (k == order.size()) {
    std::vector<size_t> images(s.size());
    for (size_t i = 0; i < order.size(); ++i) images[order[i]] = assignment[i];
    out.emplace_back(s, target, std::move(images));
    return;
  }
  size_t p = order[k];
  for (size_t v = 0; v < target.size(); ++v) {
    bool ok = true;
    for (size_t i = 0; i < k && ok; ++i) {
      size_t q = order[i];
      if (s.leq(q, p) && !target.leq(assignment[i], v)) ok = false;
      if (s.leq(p, q) && !target.leq(v, assignment[i])) ok = false;
    }
    if (!ok) continue;
    assignment.push_back(v);
    enumerate_rec(s, target, order, assignment, k + 1, out);
    assignment.pop_back();
  }
}

}  // namespace

std::vector<MonotoneMap> enumerate_continuous_maps(const FinitePoset& s, size_t n) {
  if (s.size() > 8) throw domain_error("continuous-map enumeration guard: poset larger than 8");
  FinitePoset target = parts_poset(n).poset;
  // linear extension: stable sort by number of elements below
  std::vector<size_t> order(s.size());
  for (size_t i = 0; i < s.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    size_t ca = 0, cb = 0;
    for (size_t q = 0; q < s.size(); ++q) {
      if (s.leq(q, a)) ++ca;
      if (s.leq(q, b)) ++cb;
    }
    return ca < cb;
  });
  std::vector<MonotoneMap> out;
  std::vector<size_t> assignment;
  enumerate_rec(s, target, order, assignment, 0, out);
  return out;
}

MonotoneMap map_from_opens(const FinitePoset& s, const std::vector<OpenSet>& opens) {
  size_t n = opens.size();
  PartsPoset parts = parts_poset(n);
  std::vector<size_t> images;
  for (size_t p = 0; p < s.size(); ++p) {
    uint32_t mask = 0;
    for (size_t i = 0; i < n; ++i) {
      if (opens[i].poset() != s) throw domain_error("open set from wrong poset");
      if (opens[i].contains(p)) mask |= (1u << i);
    }
    images.push_back(parts.index_of_mask(mask));
  }
  return MonotoneMap(s, parts.poset, std::move(images));
}

std::vector<OpenSet> opens_from_map(const MonotoneMap& map, size_t n) {
  PartsPoset parts = parts_poset(n);
  if (map.target() != parts.poset) throw domain_error("map does not land in P_n");
  std::vector<OpenSet> opens;
  for (size_t i = 0; i < n; ++i) {
    size_t generator = parts.index_of_mask(1u << i);
    opens.push_back(map.preimage(parts.poset.min_open(generator)));
  }
  return opens;
}

bool is_covering(const FinitePoset& s, const std::vector<OpenSet>& cover) {
  std::vector<bool> hit(s.size(), false);
  for (const auto& u : cover) {
    if (u.poset() != s) throw domain_error("covering set from wrong poset");
    for (size_t p : u.carrier()) hit[p] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::pair<FinitePoset, MonotoneMap> covering_quotient_top(const FinitePoset& s,
                                                          const std::vector<OpenSet>& cover) {
  if (!is_covering(s, cover)) throw domain_error("family is not a covering");
  std::vector<std::vector<size_t>> usets(s.size());
  for (size_t p = 0; p < s.size(); ++p) {
    OpenSet acc = s.whole();
    for (const auto& u : cover)
      if (u.contains(p)) acc = acc.intersect(u);
    usets[p] = acc.carrier();
  }
  std::vector<std::vector<size_t>> classes;  // representative member lists
  std::vector<size_t> class_of(s.size());
  std::vector<std::vector<size_t>> class_usets;
  for (size_t p = 0; p < s.size(); ++p) {
    bool placed = false;
    for (size_t c = 0; c < class_usets.size(); ++c)
      if (class_usets[c] == usets[p]) {
        class_of[p] = c;
        classes[c].push_back(p);
        placed = true;
        break;
      }
    if (!placed) {
      class_of[p] = class_usets.size();
      class_usets.push_back(usets[p]);
      classes.push_back({p});
    }
  }
  std::vector<std::string> labels;
  for (const auto& members : classes) labels.push_back("[" + s.label(members.front()) + "]");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (size_t a = 0; a < classes.size(); ++a)
    for (size_t b = 0; b < classes.size(); ++b) {
      if (a == b) continue;
      // [a] <= [b] iff U^a contains U^b
      if (std::includes(class_usets[a].begin(), class_usets[a].end(), class_usets[b].begin(),
                        class_usets[b].end()))
        pairs.emplace_back(labels[a], labels[b]);
    }
  FinitePoset quotient(std::move(labels), pairs);
  MonotoneMap projection(s, quotient, std::vector<size_t>(class_of.begin(), class_of.end()));
  return {std::move(quotient), std::move(projection)};
}

FinitePoset poset_product(const FinitePoset& a, const FinitePoset& b,
                          std::vector<std::pair<size_t, size_t>>* pairs_out) {
  std::vector<std::string> labels;
  std::vector<std::pair<size_t, size_t>> index_pairs;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
      index_pairs.emplace_back(i, j);
    }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (size_t x = 0; x < index_pairs.size(); ++x)
    for (size_t y = 0; y < index_pairs.size(); ++y) {
      if (x == y) continue;
      if (a.leq(index_pairs[x].first, index_pairs[y].first) &&
          b.leq(index_pairs[x].second, index_pairs[y].second))
        pairs.emplace_back(labels[x], labels[y]);
    }
  if (pairs_out) *pairs_out = index_pairs;
  return FinitePoset(std::move(labels), pairs);
}

FinitePoset open_subposet(const OpenSet& open, std::vector<size_t>* embed_out) {
  const FinitePoset& s = open.poset();
  std::vector<std::string> labels;
  for (size_t p : open.carrier()) labels.push_back(s.label(p));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (size_t a : open.carrier())
    for (size_t b : open.carrier())
      if (a != b && s.leq(a, b)) pairs.emplace_back(s.label(a), s.label(b));
  if (embed_out) *embed_out = open.carrier();
  return FinitePoset(std::move(labels), pairs);
}

}  // namespace rspace
