#include "rspace/sheaf.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

namespace rspace {

namespace {

nlohmann::json ring_to_json(const LocalizedRing& ring) {
  nlohmann::json j;
  j["field"] = ring.field().to_string();
  j["vars"] = ring.poly_ring().vars();
  auto denoms = nlohmann::json::array();
  auto names = nlohmann::json::array();
  for (const auto& d : ring.denominators()) {
    denoms.push_back(d.poly.to_string());
    names.push_back(d.name);
  }
  j["denoms"] = denoms;
  j["denom_names"] = names;
  if (ring.is_degree0_marked()) j["degree0_weights"] = ring.degree0_part()->weights;
  return j;
}

LocalizedRing ring_from_json(const nlohmann::json& j) {
  Field field = Field::parse(j.at("field").get<std::string>());
  PolyRing pr(field, j.at("vars").get<std::vector<std::string>>());
  std::vector<Denominator> dens;
  auto denoms = j.at("denoms");
  for (size_t i = 0; i < denoms.size(); ++i) {
    std::string name = j.contains("denom_names") ? j.at("denom_names").at(i).get<std::string>()
                                                 : denoms.at(i).get<std::string>();
    dens.push_back({name, Poly::parse(pr, denoms.at(i).get<std::string>())});
  }
  std::optional<Grading> marking;
  if (j.contains("degree0_weights"))
    marking = Grading{j.at("degree0_weights").get<std::vector<long>>()};
  return LocalizedRing(pr, std::move(dens), std::move(marking));
}

nlohmann::json element_to_json(const RingElement& e) {
  nlohmann::json j;
  j["num"] = e.numerator().to_string();
  nlohmann::json den = nlohmann::json::object();
  for (size_t i = 0; i < e.denom_exponents().size(); ++i)
    if (e.denom_exponents()[i] > 0)
      den[e.owner().denominators()[i].name] = e.denom_exponents()[i];
  j["den"] = den;
  return j;
}

RingElement element_from_json(const LocalizedRing& ring, const nlohmann::json& j) {
  Poly num = Poly::parse(ring.poly_ring(), j.at("num").get<std::string>());
  std::vector<unsigned> dexp(ring.denominators().size(), 0);
  for (const auto& [name, exp] : j.at("den").items()) {
    bool found = false;
    for (size_t i = 0; i < ring.denominators().size(); ++i)
      if (ring.denominators()[i].name == name) {
        dexp[i] = exp.get<unsigned>();
        found = true;
      }
    if (!found) throw domain_error("unknown denominator in element: " + name);
  }
  return RingElement(ring, std::move(num), std::move(dexp));
}

}  // namespace

struct RingedSpaceData {
  FinitePoset poset;
  std::vector<LocalizedRing> stalks;
  std::map<std::pair<size_t, size_t>, RingHom> restrictions;
  std::string name;
};

RingedSpace::RingedSpace(FinitePoset poset, std::vector<LocalizedRing> stalks,
                         const RestrictionProvider& provider, std::string name) {
  if (stalks.size() != poset.size()) throw domain_error("stalk count does not match poset");
  auto data = std::make_shared<RingedSpaceData>(
      RingedSpaceData{std::move(poset), std::move(stalks), {}, std::move(name)});
  for (const auto& [p, q] : data->poset.comparable_pairs()) {
    RingHom hom = provider(p, q);
    if (hom.source() != data->stalks[p] || hom.target() != data->stalks[q])
      throw domain_error("restriction hom has wrong stalks at " + data->poset.label(p) + " <= " +
                         data->poset.label(q));
    data->restrictions.emplace(std::make_pair(p, q), std::move(hom));
  }
  for (size_t p = 0; p < data->poset.size(); ++p)
    data->restrictions.emplace(std::make_pair(p, p), RingHom::identity(data->stalks[p]));
  // functoriality on all chains
  for (const auto& [p, q] : data->poset.comparable_pairs()) {
    for (size_t r = 0; r < data->poset.size(); ++r) {
      if (r == p || r == q || !data->poset.leq(q, r)) continue;
      const RingHom& pq = data->restrictions.at({p, q});
      const RingHom& qr = data->restrictions.at({q, r});
      const RingHom& pr = data->restrictions.at({p, r});
      for (const auto& g : data->stalks[p].hom_generators())
        if (qr.apply(pq.apply(g)) != pr.apply(g))
          throw domain_error("restrictions are not functorial through " + data->poset.label(q));
    }
  }
  data_ = std::move(data);
}

RingedSpace RingedSpace::point(const LocalizedRing& stalk, const std::string& name) {
  return RingedSpace(FinitePoset::point(), {stalk},
                     [&](size_t, size_t) -> RingHom { throw domain_error("no pairs"); }, name);
}

const FinitePoset& RingedSpace::poset() const { return data_->poset; }
const std::string& RingedSpace::name() const { return data_->name; }
const LocalizedRing& RingedSpace::stalk(size_t p) const { return data_->stalks.at(p); }
const Field& RingedSpace::field() const {
  if (data_->stalks.empty()) throw domain_error("empty space has no field");
  return data_->stalks.front().field();
}

const RingHom& RingedSpace::restriction(size_t p, size_t q) const {
  auto it = data_->restrictions.find({p, q});
  if (it == data_->restrictions.end()) throw domain_error("elements are not comparable");
  return it->second;
}

bool RingedSpace::operator==(const RingedSpace& other) const {
  return data_ == other.data_ || spaces_match(*this, other);
}

std::string RingedSpace::to_json() const {
  nlohmann::json j;
  j["name"] = data_->name;
  j["poset"] = nlohmann::json::parse(data_->poset.to_json());
  auto stalks = nlohmann::json::array();
  for (const auto& s : data_->stalks) stalks.push_back(ring_to_json(s));
  j["stalks"] = stalks;
  auto restrictions = nlohmann::json::array();
  for (const auto& [p, q] : data_->poset.covering_pairs()) {
    nlohmann::json r;
    r["from"] = data_->poset.label(p);
    r["to"] = data_->poset.label(q);
    auto images = nlohmann::json::array();
    for (const auto& img : data_->restrictions.at({p, q}).var_images())
      images.push_back(element_to_json(img));
    r["images"] = images;
    restrictions.push_back(r);
  }
  j["restrictions"] = restrictions;
  return j.dump(2);
}

RingedSpace RingedSpace::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FinitePoset poset = FinitePoset::from_json(j.at("poset").dump());
  std::vector<LocalizedRing> stalks;
  for (const auto& s : j.at("stalks")) stalks.push_back(ring_from_json(s));
  std::map<std::pair<size_t, size_t>, RingHom> covering;
  for (const auto& r : j.at("restrictions")) {
    size_t p = poset.index_of(r.at("from").get<std::string>());
    size_t q = poset.index_of(r.at("to").get<std::string>());
    std::vector<RingElement> images;
    for (const auto& img : r.at("images")) images.push_back(element_from_json(stalks[q], img));
    covering.emplace(std::make_pair(p, q), RingHom(stalks[p], stalks[q], std::move(images)));
  }
  // extend covering-pair homs to all comparable pairs by path composition
  std::function<RingHom(size_t, size_t)> provider = [&](size_t p, size_t q) -> RingHom {
    auto it = covering.find({p, q});
    if (it != covering.end()) return it->second;
    for (size_t z = 0; z < poset.size(); ++z) {
      if (z == p || z == q) continue;
      if (covering.count({p, z}) && poset.leq(z, q))
        return RingHom::compose(provider(z, q), covering.at({p, z}));
    }
    throw domain_error("no restriction path from " + poset.label(p) + " to " + poset.label(q));
  };
  std::string name = j.value("name", "space");
  return RingedSpace(poset, stalks, provider, name);
}

std::string RingedSpace::to_dot() const {
  std::ostringstream out;
  out << "digraph space {\n  rankdir=BT;\n";
  for (size_t i = 0; i < size(); ++i)
    out << "  n" << i << " [label=\"" << poset().label(i) << "\\n" << stalk(i).to_string()
        << "\"];\n";
  for (const auto& [a, b] : poset().covering_pairs()) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

SpaceMorphism SpaceMorphism::identity(const RingedSpace& s) {
  std::vector<RingHom> comorphisms;
  for (size_t p = 0; p < s.size(); ++p) comorphisms.push_back(RingHom::identity(s.stalk(p)));
  return SpaceMorphism{s, s, MonotoneMap::identity(s.poset()), std::move(comorphisms)};
}

SpaceMorphism SpaceMorphism::compose(const SpaceMorphism& outer, const SpaceMorphism& inner) {
  if (!(inner.target == outer.source)) throw domain_error("morphism composition mismatch");
  std::vector<RingHom> comorphisms;
  for (size_t s = 0; s < inner.source.size(); ++s)
    comorphisms.push_back(
        RingHom::compose(inner.comorphisms[s], outer.comorphisms[inner.top.apply(s)]));
  return SpaceMorphism{inner.source, outer.target,
                       MonotoneMap::compose(outer.top, inner.top), std::move(comorphisms)};
}

bool SpaceMorphism::agrees_with(const SpaceMorphism& other) const {
  if (!(source == other.source) || !(target == other.target)) return false;
  if (top.images() != other.top.images()) return false;
  for (size_t s = 0; s < source.size(); ++s)
    if (!comorphisms[s].agrees_with(other.comorphisms[s])) return false;
  return true;
}

bool SpaceMorphism::is_identity() const {
  if (!(source == target)) return false;
  return agrees_with(identity(source));
}

MorphismCheck check_morphism(const SpaceMorphism& m) {
  auto fail = [](std::string reason) { return MorphismCheck{false, std::move(reason)}; };
  if (m.top.source() != m.source.poset() || m.top.target() != m.target.poset())
    return fail("topological map does not match the spaces");
  if (m.comorphisms.size() != m.source.size()) return fail("comorphism count mismatch");
  for (size_t s = 0; s < m.source.size(); ++s) {
    const RingHom& c = m.comorphisms[s];
    if (c.source() != m.target.stalk(m.top.apply(s)))
      return fail("comorphism at " + m.source.poset().label(s) + " has wrong source ring");
    if (c.target() != m.source.stalk(s))
      return fail("comorphism at " + m.source.poset().label(s) + " has wrong target ring");
    if (m.source.stalk(s).is_degree0_marked()) {
      for (const auto& g : c.source().hom_generators())
        if (!c.apply(g).in_degree0())
          return fail("comorphism at " + m.source.poset().label(s) +
                      " leaves the degree-zero subring");
    }
  }
  for (const auto& [s1, s2] : m.source.poset().comparable_pairs()) {
    size_t t1 = m.top.apply(s1), t2 = m.top.apply(s2);
    RingHom restr_source = m.source.restriction(s1, s2);
    RingHom restr_target = m.target.restriction(t1, t2);
    for (const auto& g : m.target.stalk(t1).hom_generators()) {
      if (restr_source.apply(m.comorphisms[s1].apply(g)) !=
          m.comorphisms[s2].apply(restr_target.apply(g)))
        return fail("square does not commute at " + m.source.poset().label(s1) + " <= " +
                    m.source.poset().label(s2));
    }
  }
  return {};
}

void require_valid(const SpaceMorphism& m) {
  MorphismCheck check = check_morphism(m);
  if (!check.ok) throw domain_error("invalid morphism: " + check.reason);
}

GlobalSection::GlobalSection(RingedSpace space, std::vector<RingElement> germs)
    : space_(std::move(space)), germs_(std::move(germs)) {
  if (germs_.size() != space_.size()) throw domain_error("one germ per point required");
  for (size_t p = 0; p < space_.size(); ++p)
    if (germs_[p].owner() != space_.stalk(p)) throw domain_error("germ in wrong stalk");
  for (const auto& [p, q] : space_.poset().comparable_pairs())
    if (space_.restriction(p, q).apply(germs_[p]) != germs_[q])
      throw domain_error("germs are not restriction-compatible");
}

GlobalSection GlobalSection::from_minimum(const RingedSpace& space, const RingElement& value) {
  auto m = space.poset().minimum();
  if (!m) throw domain_error("space has no minimum point");
  if (value.owner() != space.stalk(*m)) throw domain_error("value not in the minimum stalk");
  std::vector<RingElement> germs;
  for (size_t p = 0; p < space.size(); ++p) germs.push_back(space.restriction(*m, p).apply(value));
  return GlobalSection(space, std::move(germs));
}

GlobalSection GlobalSection::operator+(const GlobalSection& other) const {
  std::vector<RingElement> germs;
  for (size_t p = 0; p < germs_.size(); ++p) germs.push_back(germs_[p] + other.germs_[p]);
  return GlobalSection(space_, std::move(germs));
}

GlobalSection GlobalSection::operator*(const GlobalSection& other) const {
  std::vector<RingElement> germs;
  for (size_t p = 0; p < germs_.size(); ++p) germs.push_back(germs_[p] * other.germs_[p]);
  return GlobalSection(space_, std::move(germs));
}

bool GlobalSection::operator==(const GlobalSection& other) const {
  return space_ == other.space_ && germs_ == other.germs_;
}

GlobalSection GlobalSection::pullback(const SpaceMorphism& m) const {
  if (!(m.target == space_)) throw domain_error("pullback along morphism into another space");
  std::vector<RingElement> germs;
  for (size_t s = 0; s < m.source.size(); ++s)
    germs.push_back(m.comorphisms[s].apply(germs_[m.top.apply(s)]));
  return GlobalSection(m.source, std::move(germs));
}

OpenSet unit_locus(const GlobalSection& f) {
  std::vector<size_t> carrier;
  for (size_t p = 0; p < f.space().size(); ++p)
    if (f.germ(p).is_unit()) carrier.push_back(p);
  return OpenSet(f.space().poset(), std::move(carrier));
}

SectionSpace::SectionSpace(RingedSpace space, OpenSet domain)
    : space_(std::move(space)), domain_(std::move(domain)) {
  if (domain_.poset() != space_.poset()) throw domain_error("open set from another space");
  min_points_ = space_.poset().minimal_elements_of(domain_.carrier());
  if (min_points_.empty()) return;  // empty open: no presentation
  if (min_points_.size() == 1) {
    // an up-set with a unique minimal element is that element's minimal open
    ring_ = space_.stalk(min_points_[0]);
    return;
  }
  // inclusion-structured: shared ambient ring, identity restrictions, equal marking
  const auto& first = space_.stalk(domain_.carrier().front());
  inclusion_structured_ = true;
  for (size_t p : domain_.carrier()) {
    const auto& st = space_.stalk(p);
    if (st.poly_ring() != first.poly_ring() || st.degree0_part() != first.degree0_part()) {
      inclusion_structured_ = false;
      break;
    }
  }
  if (inclusion_structured_) {
    for (size_t p : domain_.carrier()) {
      for (size_t q : domain_.carrier()) {
        if (p == q || !space_.poset().leq(p, q)) continue;
        const auto& images = space_.restriction(p, q).var_images();
        for (size_t i = 0; i < images.size() && inclusion_structured_; ++i)
          if (images[i] != space_.stalk(q).var_element(i)) inclusion_structured_ = false;
      }
      if (!inclusion_structured_) break;
    }
  }
  if (!inclusion_structured_) return;
  // connectivity of minimal points through common upper points
  std::vector<size_t> component(min_points_.size(), 0);
  for (size_t i = 0; i < min_points_.size(); ++i) component[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < min_points_.size(); ++i)
      for (size_t j = i + 1; j < min_points_.size(); ++j) {
        if (component[i] == component[j]) continue;
        bool share = false;
        for (size_t q : domain_.carrier())
          if (space_.poset().leq(min_points_[i], q) && space_.poset().leq(min_points_[j], q)) {
            share = true;
            break;
          }
        if (share) {
          size_t lo = std::min(component[i], component[j]);
          size_t hi = std::max(component[i], component[j]);
          for (auto& c : component)
            if (c == hi) c = lo;
          changed = true;
        }
      }
  }
  for (size_t c : component)
    if (c != component.front()) return;  // disconnected: no single ring
  // common denominators across the minimal stalks, in first-stalk order
  std::vector<Denominator> common;
  const auto& base = space_.stalk(min_points_.front());
  for (const auto& d : base.denominators()) {
    bool everywhere = true;
    for (size_t p : min_points_) {
      bool present = false;
      for (const auto& e : space_.stalk(p).denominators())
        if (e.name == d.name && e.poly == d.poly) present = true;
      if (!present) {
        everywhere = false;
        break;
      }
    }
    if (everywhere) common.push_back(d);
  }
  ring_ = collapse_trivial_degree0(
      LocalizedRing(first.poly_ring(), std::move(common), first.degree0_part()));
}

bool SectionSpace::is_compatible(const std::vector<RingElement>& family) const {
  if (family.size() != min_points_.size()) throw domain_error("family arity mismatch");
  for (size_t i = 0; i < min_points_.size(); ++i)
    if (family[i].owner() != space_.stalk(min_points_[i]))
      throw domain_error("family value in wrong stalk");
  for (size_t i = 0; i < min_points_.size(); ++i)
    for (size_t j = i + 1; j < min_points_.size(); ++j)
      for (size_t q : domain_.carrier()) {
        if (!space_.poset().leq(min_points_[i], q) || !space_.poset().leq(min_points_[j], q))
          continue;
        if (space_.restriction(min_points_[i], q).apply(family[i]) !=
            space_.restriction(min_points_[j], q).apply(family[j]))
          return false;
      }
  return true;
}

RingHom SectionSpace::germ_hom(size_t p) const {
  if (!ring_) throw domain_error("section space has no ring presentation");
  if (!domain_.contains(p)) throw domain_error("point outside the domain");
  if (!inclusion_structured_) return space_.restriction(min_points_[0], p);
  std::vector<RingElement> images;
  for (size_t i = 0; i < ring_->poly_ring().arity(); ++i)
    images.push_back(space_.stalk(p).var_element(i));
  return RingHom(*ring_, space_.stalk(p), std::move(images));
}

SectionSpace sections(const RingedSpace& space, const OpenSet& domain) {
  return SectionSpace(space, domain);
}

std::pair<RingedSpace, SpaceMorphism> covering_quotient(const RingedSpace& s,
                                                        const std::vector<OpenSet>& cover) {
  auto [quotient_poset, projection] = covering_quotient_top(s.poset(), cover);
  // U^c per class, via any representative
  std::vector<OpenSet> usets;
  std::vector<SectionSpace> gammas;
  for (size_t c = 0; c < quotient_poset.size(); ++c) {
    size_t rep = 0;
    while (projection.apply(rep) != c) ++rep;
    OpenSet acc = s.poset().whole();
    for (const auto& u : cover)
      if (u.contains(rep)) acc = acc.intersect(u);
    usets.push_back(acc);
    gammas.emplace_back(s, acc);
    if (!gammas.back().as_ring())
      throw domain_error("sections over U^s at class " + quotient_poset.label(c) +
                         " have no ring presentation");
  }
  std::vector<LocalizedRing> stalks;
  for (const auto& g : gammas) stalks.push_back(*g.as_ring());
  auto provider = [&](size_t a, size_t b) -> RingHom {
    // Gamma(U^a) -> Gamma(U^b), with U^a containing U^b
    const LocalizedRing& src = *gammas[a].as_ring();
    const LocalizedRing& dst = *gammas[b].as_ring();
    if (src.poly_ring().arity() == 0) return RingHom(src, dst, {});
    size_t ma = gammas[a].min_points().front();
    size_t mb = gammas[b].min_points().front();
    if (gammas[a].min_points().size() == 1 && gammas[b].min_points().size() == 1 &&
        src == s.stalk(ma) && dst == s.stalk(mb))
      return s.restriction(ma, mb);
    if (src.poly_ring() != dst.poly_ring())
      throw domain_error("pushforward restriction does not factor through the section rings");
    std::vector<RingElement> images;
    for (size_t i = 0; i < dst.poly_ring().arity(); ++i) images.push_back(dst.var_element(i));
    return RingHom(src, dst, std::move(images));
  };
  RingedSpace quotient(quotient_poset, std::move(stalks), provider, s.name() + "/cover");
  std::vector<RingHom> comorphisms;
  for (size_t p = 0; p < s.size(); ++p) {
    size_t c = projection.apply(p);
    comorphisms.push_back(gammas[c].germ_hom(p));
  }
  SpaceMorphism pi{s, quotient, projection, std::move(comorphisms)};
  require_valid(pi);
  return {std::move(quotient), std::move(pi)};
}

namespace {

// element of a tensor factor, transplanted into the tensor ring by position
RingElement tensor_embed(const RingElement& e, const LocalizedRing& tensor, size_t var_shift,
                         size_t den_shift) {
  Poly num(tensor.poly_ring());
  for (const auto& [exps, c] : e.numerator().terms()) {
    ExpVec big(tensor.poly_ring().arity(), 0);
    for (size_t i = 0; i < exps.size(); ++i) big[i + var_shift] = exps[i];
    num.add_term(big, c);
  }
  std::vector<unsigned> dexp(tensor.denominators().size(), 0);
  for (size_t i = 0; i < e.denom_exponents().size(); ++i)
    dexp[i + den_shift] = e.denom_exponents()[i];
  return RingElement(tensor, std::move(num), std::move(dexp));
}

}  // namespace

FiberProduct fiber_product(const SpaceMorphism& f, const SpaceMorphism& g) {
  if (!(f.target == g.target)) throw domain_error("fiber product legs have different targets");
  require_valid(f);
  require_valid(g);
  const RingedSpace& s = f.source;
  const RingedSpace& sp = g.source;

  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t b = 0; b < sp.size(); ++b)
      if (f.top.apply(a) == g.top.apply(b)) pairs.emplace_back(a, b);
  std::vector<std::string> labels;
  for (const auto& [a, b] : pairs)
    labels.push_back("(" + s.poset().label(a) + "," + sp.poset().label(b) + ")");
  std::vector<std::pair<std::string, std::string>> order;
  for (size_t x = 0; x < pairs.size(); ++x)
    for (size_t y = 0; y < pairs.size(); ++y) {
      if (x == y) continue;
      if (s.poset().leq(pairs[x].first, pairs[y].first) &&
          sp.poset().leq(pairs[x].second, pairs[y].second))
        order.emplace_back(labels[x], labels[y]);
    }
  FinitePoset product_poset(labels, order);

  auto project = [&](const RingedSpace& total, bool left) {
    std::vector<size_t> images;
    for (const auto& [a, b] : pairs) images.push_back(left ? a : b);
    return MonotoneMap(total.poset(), left ? s.poset() : sp.poset(), std::move(images));
  };

  if (f.is_identity() || g.is_identity()) {
    bool left_id = f.is_identity();
    const SpaceMorphism& other = left_id ? g : f;
    const RingedSpace& carrier = other.source;
    std::vector<LocalizedRing> stalks;
    for (const auto& [a, b] : pairs) stalks.push_back(carrier.stalk(left_id ? b : a));
    auto provider = [&](size_t x, size_t y) {
      size_t cx = left_id ? pairs[x].second : pairs[x].first;
      size_t cy = left_id ? pairs[y].second : pairs[y].first;
      return carrier.restriction(cx, cy);
    };
    RingedSpace total(product_poset, std::move(stalks), provider,
                      s.name() + "x_T" + sp.name());
    std::vector<RingHom> co_left, co_right;
    for (size_t x = 0; x < pairs.size(); ++x) {
      size_t a = pairs[x].first, b = pairs[x].second;
      if (left_id) {
        co_left.push_back(other.comorphisms[b]);  // stalk_S(a)=stalk_T(a) -> stalk(b)
        co_right.push_back(RingHom::identity(carrier.stalk(b)));
      } else {
        co_left.push_back(RingHom::identity(carrier.stalk(a)));
        co_right.push_back(other.comorphisms[a]);
      }
    }
    SpaceMorphism pl{total, s, project(total, true), std::move(co_left)};
    SpaceMorphism pr{total, sp, project(total, false), std::move(co_right)};
    require_valid(pl);
    require_valid(pr);
    return FiberProduct{std::move(total), std::move(pl), std::move(pr)};
  }

  for (size_t t = 0; t < f.target.size(); ++t)
    if (f.target.stalk(t).poly_ring().arity() != 0 || !f.target.stalk(t).denominators().empty())
      throw domain_error(
          "fiber product needs a constant base or an identity leg (tensor class)");

  // any shared variable name forces a uniform rename
  bool clash = false;
  for (size_t a = 0; a < s.size() && !clash; ++a)
    for (size_t b = 0; b < sp.size() && !clash; ++b)
      for (const auto& v : s.stalk(a).poly_ring().vars())
        if (sp.stalk(b).poly_ring().var_index(v)) clash = true;
  std::string sa = clash ? "_1" : "";
  std::string sb = clash ? "_2" : "";

  std::vector<LocalizedRing> stalks;
  for (const auto& [a, b] : pairs) stalks.push_back(tensor_rings(s.stalk(a), sp.stalk(b), sa, sb));
  auto provider = [&](size_t x, size_t y) {
    size_t ax = pairs[x].first, bx = pairs[x].second;
    size_t ay = pairs[y].first, by = pairs[y].second;
    std::vector<RingElement> images;
    const LocalizedRing& target = stalks[y];
    size_t var_shift = s.stalk(ay).poly_ring().arity();
    size_t den_shift = s.stalk(ay).denominators().size();
    for (const auto& img : s.restriction(ax, ay).var_images())
      images.push_back(tensor_embed(img, target, 0, 0));
    for (const auto& img : sp.restriction(bx, by).var_images())
      images.push_back(tensor_embed(img, target, var_shift, den_shift));
    return RingHom(stalks[x], target, std::move(images));
  };
  RingedSpace total(product_poset, stalks, provider, s.name() + "x" + sp.name());
  std::vector<RingHom> co_left, co_right;
  for (size_t x = 0; x < pairs.size(); ++x) {
    size_t a = pairs[x].first, b = pairs[x].second;
    std::vector<RingElement> il, ir;
    for (size_t i = 0; i < s.stalk(a).poly_ring().arity(); ++i)
      il.push_back(tensor_embed(s.stalk(a).var_element(i), stalks[x], 0, 0));
    size_t var_shift = s.stalk(a).poly_ring().arity();
    size_t den_shift = s.stalk(a).denominators().size();
    for (size_t i = 0; i < sp.stalk(b).poly_ring().arity(); ++i)
      ir.push_back(tensor_embed(sp.stalk(b).var_element(i), stalks[x], var_shift, den_shift));
    co_left.emplace_back(s.stalk(a), stalks[x], std::move(il));
    co_right.emplace_back(sp.stalk(b), stalks[x], std::move(ir));
  }
  SpaceMorphism pl{total, s, project(total, true), std::move(co_left)};
  SpaceMorphism pr{total, sp, project(total, false), std::move(co_right)};
  require_valid(pl);
  require_valid(pr);
  return FiberProduct{std::move(total), std::move(pl), std::move(pr)};
}

SpaceMorphism fiber_pairing(const FiberProduct& fp, const SpaceMorphism& h1,
                            const SpaceMorphism& h2) {
  if (!(h1.source == h2.source)) throw domain_error("pairing legs have different sources");
  const RingedSpace& z = h1.source;
  const RingedSpace& total = fp.space;
  std::vector<size_t> images;
  for (size_t p = 0; p < z.size(); ++p) {
    size_t a = h1.top.apply(p), b = h2.top.apply(p);
    std::string label = "(" + fp.to_left.target.poset().label(a) + "," +
                        fp.to_right.target.poset().label(b) + ")";
    images.push_back(total.poset().index_of(label));
  }
  MonotoneMap top(z.poset(), total.poset(), images);
  std::vector<RingHom> comorphisms;
  for (size_t p = 0; p < z.size(); ++p) {
    size_t x = top.apply(p);
    const LocalizedRing& src = total.stalk(x);
    // variable images: left block then right block
    std::vector<RingElement> imgs;
    const auto& li = h1.comorphisms[p].var_images();
    const auto& ri = h2.comorphisms[p].var_images();
    if (li.size() + ri.size() != src.poly_ring().arity()) {
      // identity-leg form: stalk is one factor's ring
      if (src == h2.comorphisms[p].source())
        comorphisms.push_back(h2.comorphisms[p]);
      else
        comorphisms.push_back(h1.comorphisms[p]);
      continue;
    }
    imgs.insert(imgs.end(), li.begin(), li.end());
    imgs.insert(imgs.end(), ri.begin(), ri.end());
    comorphisms.emplace_back(src, z.stalk(p), std::move(imgs));
  }
  SpaceMorphism pairing{z, total, top, std::move(comorphisms)};
  require_valid(pairing);
  return pairing;
}

InvertibleModule::InvertibleModule(RingedSpace base, std::vector<std::string> basis_labels,
                                   std::map<std::pair<size_t, size_t>, RingElement> transitions)
    : base_(std::move(base)), basis_labels_(std::move(basis_labels)),
      transitions_(std::move(transitions)) {
  if (basis_labels_.size() != base_.size()) throw domain_error("one basis label per point");
  for (const auto& [pq, u] : transitions_) {
    if (!base_.poset().leq(pq.first, pq.second)) throw domain_error("transition on non-pair");
    if (u.owner() != base_.stalk(pq.second)) throw domain_error("transition unit in wrong stalk");
    if (!u.is_unit()) throw domain_error("transition element is not a unit");
    if (!u.in_degree0()) throw domain_error("transition leaves the degree-zero subring");
  }
  for (const auto& [p, q] : base_.poset().comparable_pairs())
    if (!transitions_.count({p, q})) throw domain_error("missing transition unit");
  for (const auto& [p, q] : base_.poset().comparable_pairs())
    for (size_t r = 0; r < base_.size(); ++r) {
      if (r == p || r == q || !base_.poset().leq(q, r)) continue;
      RingElement lhs = transitions_.at({p, r});
      RingElement rhs =
          transitions_.at({q, r}) * base_.restriction(q, r).apply(transitions_.at({p, q}));
      if (lhs != rhs) throw domain_error("transition cocycle violated");
    }
}

InvertibleModule InvertibleModule::trivial(const RingedSpace& base) {
  std::map<std::pair<size_t, size_t>, RingElement> transitions;
  for (const auto& [p, q] : base.poset().comparable_pairs())
    transitions.emplace(std::make_pair(p, q), base.stalk(q).one());
  std::vector<std::string> labels(base.size(), "e");
  return InvertibleModule(base, std::move(labels), std::move(transitions));
}

const RingElement& InvertibleModule::transition(size_t p, size_t q) const {
  return transitions_.at({p, q});
}

InvertibleModule InvertibleModule::tensor(const InvertibleModule& other) const {
  if (!(base_ == other.base_)) throw domain_error("tensor of modules on different spaces");
  std::map<std::pair<size_t, size_t>, RingElement> transitions;
  for (const auto& [pq, u] : transitions_)
    transitions.emplace(pq, u * other.transitions_.at(pq));
  std::vector<std::string> labels;
  for (size_t p = 0; p < base_.size(); ++p)
    labels.push_back(basis_labels_[p] + "*" + other.basis_labels_[p]);
  return InvertibleModule(base_, std::move(labels), std::move(transitions));
}

bool InvertibleModule::operator==(const InvertibleModule& other) const {
  return base_ == other.base_ && transitions_ == other.transitions_;
}

ModuleSection::ModuleSection(const InvertibleModule& module, std::vector<RingElement> coefficients)
    : coeffs_(std::move(coefficients)) {
  const RingedSpace& base = module.base();
  if (coeffs_.size() != base.size()) throw domain_error("one coefficient per point");
  for (size_t p = 0; p < base.size(); ++p) {
    if (coeffs_[p].owner() != base.stalk(p)) throw domain_error("coefficient in wrong stalk");
    if (!coeffs_[p].in_degree0())
      throw domain_error("coefficient leaves the degree-zero subring");
  }
  for (const auto& [p, q] : base.poset().comparable_pairs())
    if (coeffs_[q] != module.transition(p, q) * base.restriction(p, q).apply(coeffs_[p]))
      throw domain_error("section coefficients are not transition-compatible");
}

OpenSet ModuleSection::unit_locus(const InvertibleModule& module) const {
  std::vector<size_t> carrier;
  for (size_t p = 0; p < coeffs_.size(); ++p)
    if (coeffs_[p].is_unit()) carrier.push_back(p);
  return OpenSet(module.base().poset(), std::move(carrier));
}

InvertibleModule pullback_invertible(const SpaceMorphism& m, const InvertibleModule& l) {
  if (!(l.base() == m.target)) throw domain_error("module does not live on the morphism target");
  std::map<std::pair<size_t, size_t>, RingElement> transitions;
  for (const auto& [p, q] : m.source.poset().comparable_pairs()) {
    size_t fp = m.top.apply(p), fq = m.top.apply(q);
    RingElement u = fp == fq ? m.target.stalk(fq).one() : l.transition(fp, fq);
    RingElement pulled = m.comorphisms[q].apply(u);
    if (!pulled.is_unit())
      throw std::logic_error("pullback transition lost unitality");  // cannot happen on valid input
    transitions.emplace(std::make_pair(p, q), std::move(pulled));
  }
  std::vector<std::string> labels;
  for (size_t p = 0; p < m.source.size(); ++p)
    labels.push_back("h*" + l.basis_label(m.top.apply(p)));
  return InvertibleModule(m.source, std::move(labels), std::move(transitions));
}

ModuleSection pullback_section(const SpaceMorphism& m, const InvertibleModule& l,
                               const ModuleSection& s, const InvertibleModule& pulled) {
  if (!(l.base() == m.target)) throw domain_error("section module on another space");
  std::vector<RingElement> coeffs;
  for (size_t p = 0; p < m.source.size(); ++p)
    coeffs.push_back(m.comorphisms[p].apply(s.coefficient(m.top.apply(p))));
  return ModuleSection(pulled, std::move(coeffs));
}

AlgTopSection pullback_algtop_section(const SpaceMorphism& m, const InvertibleModule& l,
                                      const AlgTopSection& s, const InvertibleModule& pulled) {
  ModuleSection section = pullback_section(m, l, s.section, pulled);
  OpenSet open = m.top.preimage(s.open_part);
  for (size_t p : open.carrier())
    if (!section.coefficient(p).is_unit())
      throw std::logic_error("pulled-back section not invertible on pulled-back open");
  return AlgTopSection{std::move(section), std::move(open)};
}

FreeRankModule::FreeRankModule(RingedSpace base, size_t rank,
                               std::map<std::pair<size_t, size_t>, RingMatrix> transitions)
    : base_(std::move(base)), rank_(rank), transitions_(std::move(transitions)) {
  for (const auto& [pq, t] : transitions_) {
    if (t.rows() != rank_ || t.cols() != rank_) throw domain_error("transition matrix shape");
    if (t.ring() != base_.stalk(pq.second)) throw domain_error("transition in wrong stalk");
    if (!t.det().is_unit()) throw domain_error("transition determinant is not a unit");
    for (size_t i = 0; i < rank_; ++i)
      for (size_t j = 0; j < rank_; ++j)
        if (!t.at(i, j).in_degree0())
          throw domain_error("transition leaves the degree-zero subring");
  }
  for (const auto& [p, q] : base_.poset().comparable_pairs())
    if (!transitions_.count({p, q})) throw domain_error("missing transition matrix");
  for (const auto& [p, q] : base_.poset().comparable_pairs())
    for (size_t r = 0; r < base_.size(); ++r) {
      if (r == p || r == q || !base_.poset().leq(q, r)) continue;
      RingMatrix lhs = transitions_.at({p, r});
      RingMatrix rhs =
          transitions_.at({q, r}) * transitions_.at({p, q}).map(base_.restriction(q, r));
      if (!(lhs == rhs)) throw domain_error("matrix transition cocycle violated");
    }
}

FreeRankModule FreeRankModule::trivial(const RingedSpace& base, size_t rank) {
  std::map<std::pair<size_t, size_t>, RingMatrix> transitions;
  for (const auto& [p, q] : base.poset().comparable_pairs())
    transitions.emplace(std::make_pair(p, q), RingMatrix::identity(base.stalk(q), rank));
  return FreeRankModule(base, rank, std::move(transitions));
}

const RingMatrix& FreeRankModule::transition(size_t p, size_t q) const {
  return transitions_.at({p, q});
}

FreeModuleSection::FreeModuleSection(const FreeRankModule& module,
                                     std::vector<std::vector<RingElement>> coeffs)
    : coeffs_(std::move(coeffs)) {
  const RingedSpace& base = module.base();
  if (coeffs_.size() != base.size()) throw domain_error("one coefficient column per point");
  for (size_t p = 0; p < base.size(); ++p) {
    if (coeffs_[p].size() != module.rank()) throw domain_error("coefficient column length");
    for (const auto& c : coeffs_[p]) {
      if (c.owner() != base.stalk(p)) throw domain_error("coefficient in wrong stalk");
      if (!c.in_degree0()) throw domain_error("coefficient leaves the degree-zero subring");
    }
  }
  for (const auto& [p, q] : base.poset().comparable_pairs()) {
    RingHom restr = base.restriction(p, q);
    const RingMatrix& t = module.transition(p, q);
    for (size_t i = 0; i < module.rank(); ++i) {
      RingElement expect = base.stalk(q).zero();
      for (size_t k = 0; k < module.rank(); ++k)
        expect = expect + t.at(i, k) * restr.apply(coeffs_[p][k]);
      if (coeffs_[q][i] != expect)
        throw domain_error("free-module section not transition-compatible");
    }
  }
}

FreeRankModule pullback_free(const SpaceMorphism& m, const FreeRankModule& e) {
  if (!(e.base() == m.target)) throw domain_error("module does not live on the morphism target");
  std::map<std::pair<size_t, size_t>, RingMatrix> transitions;
  for (const auto& [p, q] : m.source.poset().comparable_pairs()) {
    size_t fp = m.top.apply(p), fq = m.top.apply(q);
    RingMatrix t = fp == fq ? RingMatrix::identity(m.target.stalk(fq), e.rank())
                            : e.transition(fp, fq);
    transitions.emplace(std::make_pair(p, q), t.map(m.comorphisms[q]));
  }
  return FreeRankModule(m.source, e.rank(), std::move(transitions));
}

FreeModuleSection pullback_free_section(const SpaceMorphism& m, const FreeRankModule& e,
                                        const FreeModuleSection& s, const FreeRankModule& pulled) {
  if (!(e.base() == m.target)) throw domain_error("section module on another space");
  std::vector<std::vector<RingElement>> coeffs;
  for (size_t p = 0; p < m.source.size(); ++p) {
    std::vector<RingElement> column;
    for (const auto& c : s.coefficients(m.top.apply(p)))
      column.push_back(m.comorphisms[p].apply(c));
    coeffs.push_back(std::move(column));
  }
  return FreeModuleSection(pulled, std::move(coeffs));
}

bool spaces_match(const RingedSpace& a, const RingedSpace& b) {
  if (a.poset().labels() != b.poset().labels()) return false;
  if (!a.poset().same_order(b.poset())) return false;
  for (size_t p = 0; p < a.size(); ++p)
    if (a.stalk(p) != b.stalk(p)) return false;
  for (const auto& [p, q] : a.poset().comparable_pairs())
    if (!a.restriction(p, q).agrees_with(b.restriction(p, q))) return false;
  return true;
}

bool mutually_inverse(const SpaceMorphism& f, const SpaceMorphism& g) {
  if (!(f.target == g.source) || !(g.target == f.source)) return false;
  return SpaceMorphism::compose(g, f).is_identity() &&
         SpaceMorphism::compose(f, g).is_identity();
}

}  // namespace rspace
