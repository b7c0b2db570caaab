#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "rspace/affine.hpp"
#include "rspace/grassmann.hpp"
#include "rspace/lattice.hpp"
#include "rspace/projective.hpp"
#include "rspace/stanley.hpp"

namespace rspace::cli {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  Field field = Field::rationals();
  std::vector<std::string> positional;
  bool check_relation = false;
  bool reduced = false;
  std::string cover = "whole";
  std::optional<uint32_t> face;
};

uint32_t parse_face(const std::string& text) {
  uint32_t mask = 0;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int v = std::stoi(tok);
    if (v < 1 || v > 20) throw Usage("face members must be in 1..20");
    mask |= (1u << (v - 1));
  }
  return mask;
}

Options parse_options(const std::vector<std::string>& args, size_t start) {
  Options opt;
  if (const char* env = std::getenv("RS_FIELD")) opt.field = Field::parse(env);
  for (size_t i = start; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto next = [&]() -> const std::string& {
      if (i + 1 >= args.size()) throw Usage("missing value after " + a);
      return args[++i];
    };
    if (a == "--format") opt.format = next();
    else if (a == "--field") opt.field = Field::parse(next());
    else if (a == "--seed") next();  // accepted for reproducible scripting; no sampling verbs yet
    else if (a == "--check-relation") opt.check_relation = true;
    else if (a == "--reduced") opt.reduced = true;
    else if (a == "--cover") opt.cover = next();
    else if (a == "--face") opt.face = parse_face(next());
    else if (a.rfind("--", 0) == 0) throw Usage("unknown flag: " + a);
    else opt.positional.push_back(a);
  }
  if (opt.format != "text" && opt.format != "json" && opt.format != "dot")
    throw Usage("format must be one of text, json, dot");
  return opt;
}

size_t arg_number(const Options& opt, size_t index, const std::string& what) {
  if (index >= opt.positional.size()) throw Usage("missing argument: " + what);
  try {
    return std::stoul(opt.positional[index]);
  } catch (const std::logic_error&) {
    throw Usage(what + " must be a number, got " + opt.positional[index]);
  }
}

long arg_integer(const Options& opt, size_t index, const std::string& what) {
  if (index >= opt.positional.size()) throw Usage("missing argument: " + what);
  try {
    return std::stol(opt.positional[index]);
  } catch (const std::logic_error&) {
    throw Usage(what + " must be an integer, got " + opt.positional[index]);
  }
}

std::string read_input(const Options& opt, size_t index, std::istream& in) {
  if (index >= opt.positional.size() || opt.positional[index] == "-") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(opt.positional[index]);
  if (!file) throw domain_error("cannot open file: " + opt.positional[index]);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void emit_space(const RingedSpace& space, const Options& opt, std::ostream& out) {
  if (opt.format == "json") {
    out << space.to_json() << "\n";
  } else if (opt.format == "dot") {
    out << space.to_dot();
  } else {
    out << space.name() << ": " << space.size() << " points\n";
    for (size_t p = 0; p < space.size(); ++p)
      out << "  " << space.poset().label(p) << "  ~  " << space.stalk(p).to_string() << "\n";
  }
}

void emit_poset(const FinitePoset& poset, const std::string& name, const Options& opt,
                std::ostream& out) {
  if (opt.format == "json") {
    out << poset.to_json() << "\n";
  } else if (opt.format == "dot") {
    out << poset.to_dot();
  } else {
    out << name << ": " << poset.size() << " elements, " << poset.covering_pairs().size()
        << " covering pairs\n";
  }
}

RingedSpace build_named_space(const std::string& spec, const Field& k) {
  std::string verb = spec;
  std::vector<size_t> params;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    verb = spec.substr(0, colon);
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ':')) params.push_back(std::stoul(tok));
  }
  auto param = [&](size_t i) {
    if (i >= params.size()) throw Usage("space spec " + spec + " is missing a parameter");
    return params[i];
  };
  if (verb == "point") return RingedSpace::point(LocalizedRing::constants(k), "pt");
  if (verb == "affine") return build_affine(k, param(0));
  if (verb == "affine-alg") return build_affine_alg(k, param(0));
  if (verb == "affine-top") return build_affine_top(k, param(0));
  if (verb == "punctured") return build_punctured(k, param(0));
  if (verb == "gm") return build_gm(k);
  if (verb == "projective") return build_projective(k, param(0));
  if (verb == "open-fn-space") return build_open_function_space(k, param(0));
  if (verb == "flag-chain") return build_flag_chain(k, param(0));
  if (verb == "epim") return build_epim(k, param(0), param(1));
  if (verb == "grass") return build_grass(k, param(0), param(1));
  throw Usage("unknown space spec: " + spec);
}

int cmd_twist(const Options& opt, std::ostream& out) {
  size_t n = arg_number(opt, 1, "n");
  long d = arg_integer(opt, 2, "d");
  InvertibleModule od = twisting_module(opt.field, n, d);
  const RingedSpace& pn = od.base();
  if (opt.format == "json") {
    nlohmann::json j;
    j["base"] = pn.name();
    j["degree"] = d;
    auto transitions = nlohmann::json::array();
    for (const auto& [p, q] : pn.poset().covering_pairs())
      transitions.push_back({{"from", pn.poset().label(p)},
                             {"to", pn.poset().label(q)},
                             {"unit", od.transition(p, q).to_string()}});
    j["transitions"] = transitions;
    auto basis = nlohmann::json::array();
    for (size_t p = 0; p < pn.size(); ++p) basis.push_back(od.basis_label(p));
    j["basis"] = basis;
    out << j.dump(2) << "\n";
  } else {
    out << "O(" << d << ") on " << pn.name() << "\n";
    for (const auto& [p, q] : pn.poset().covering_pairs())
      out << "  " << pn.poset().label(p) << " <= " << pn.poset().label(q) << " : "
          << od.transition(p, q).to_string() << "\n";
  }
  return 0;
}

int cmd_gamma(const Options& opt, std::ostream& out) {
  size_t n = arg_number(opt, 1, "n");
  long d = arg_integer(opt, 2, "d");
  auto labels = twisting_global_basis_labels(opt.field, n, d);
  auto basis = twisting_global_basis(opt.field, n, d);
  if (basis.size() != labels.size()) throw std::logic_error("basis/label mismatch");
  if (opt.format == "json") {
    nlohmann::json j;
    j["n"] = n;
    j["d"] = d;
    j["dimension"] = labels.size();
    j["basis"] = labels;
    out << j.dump(2) << "\n";
  } else {
    out << "dim Gamma(P^" << n << ", O(" << d << ")) = " << labels.size() << "\n";
    for (const auto& l : labels) out << "  " << l << "\n";
  }
  return 0;
}

int cmd_plucker(const Options& opt, std::ostream& out) {
  size_t r = arg_number(opt, 1, "r");
  size_t n = arg_number(opt, 2, "n");
  SpaceMorphism p = plucker(opt.field, r, n);
  nlohmann::json j;
  j["source"] = p.source.name();
  j["target"] = p.target.name();
  j["valid"] = true;
  if (opt.check_relation) {
    if (r != 2 || n != 4) throw Usage("--check-relation is the (2,4) Plucker relation");
    std::vector<uint32_t> deltas = r_subsets(4, 2);
    std::string normal_form = "0";
    for (size_t point = 0; point < p.source.size(); ++point) {
      RingMatrix z = grass_universal_matrix(p.source, point, 2, 4);
      auto d = [&](size_t t) { return det_delta(z, deltas[t]); };
      // p12*p34 - p13*p24 + p14*p23
      RingElement rel = d(0) * d(5) - d(1) * d(4) + d(2) * d(3);
      if (!rel.is_zero()) normal_form = rel.to_string();
    }
    j["relation"] = "p12*p34 - p13*p24 + p14*p23";
    j["normal_form"] = normal_form;
    if (opt.format == "json") out << j.dump(2) << "\n";
    else out << "relation normal form: " << normal_form << "\n";
    return normal_form == "0" ? 0 : 1;
  }
  if (opt.format == "json") out << j.dump(2) << "\n";
  else if (opt.format == "dot") out << p.source.to_dot();
  else out << p.source.name() << " -> " << p.target.name() << " valid\n";
  return 0;
}

int cmd_cm_check(const Options& opt, std::ostream& out, std::istream& in) {
  SimplicialComplex k = SimplicialComplex::from_json(read_input(opt, 1, in));
  CMCertificate cert = is_cohen_macaulay(k, opt.field, opt.reduced);
  nlohmann::json j;
  j["field"] = opt.field.to_string();
  j["reduced"] = opt.reduced;
  j["cohen_macaulay"] = cert.cohen_macaulay;
  if (!cert.cohen_macaulay) {
    auto face = nlohmann::json::array();
    for (size_t i = 0; i < k.ground_size(); ++i)
      if (cert.witness_face & (1u << i)) face.push_back(i + 1);
    j["witness"] = {{"face", face}, {"degree", cert.witness_degree}, {"note", cert.note}};
  }
  if (opt.format == "json") out << j.dump(2) << "\n";
  else {
    out << (cert.cohen_macaulay ? "Cohen-Macaulay over " : "not Cohen-Macaulay over ")
        << opt.field.to_string();
    if (!cert.cohen_macaulay) {
      std::vector<std::string> ground;
      for (size_t i = 1; i <= k.ground_size(); ++i) ground.push_back(std::to_string(i));
      out << " (witness face " << subset_label(ground, cert.witness_face) << ", degree "
          << cert.witness_degree << ")";
    }
    out << "\n";
  }
  return 0;
}

int cmd_check_morphism(const Options& opt, std::ostream& out) {
  if (opt.positional.size() < 2) throw Usage("check-morphism needs a morphism spec");
  const std::string& kind = opt.positional[1];
  std::optional<SpaceMorphism> m;
  if (kind == "identity") {
    if (opt.positional.size() < 3) throw Usage("check-morphism identity <space>");
    m = SpaceMorphism::identity(build_named_space(opt.positional[2], opt.field));
  } else if (kind == "plucker") {
    m = plucker(opt.field, arg_number(opt, 2, "r"), arg_number(opt, 3, "n"));
  } else if (kind == "grass-proj") {
    m = grass_projective_iso(opt.field, arg_number(opt, 2, "n")).first;
  } else if (kind == "proj-quotient") {
    size_t n = arg_number(opt, 2, "n");
    auto [quotient, projection] = quotient_by_gm(homothety_action(build_punctured(opt.field, n + 1)));
    m = projection;
  } else {
    throw Usage("unknown morphism spec: " + kind);
  }
  MorphismCheck check = check_morphism(*m);
  nlohmann::json j;
  j["valid"] = check.ok;
  j["reason"] = check.reason;
  if (opt.format == "json") out << j.dump(2) << "\n";
  else out << (check.ok ? "valid" : "invalid: " + check.reason) << "\n";
  return check.ok ? 0 : 1;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::istream& in) {
  if (args.empty()) throw Usage("no verb given");
  const std::string& verb = args[0];
  Options opt = parse_options(args, 0);

  if (verb == "parts") {
    emit_poset(parts_poset(arg_number(opt, 1, "n")).poset, "P_" + opt.positional[1], opt, out);
    return 0;
  }
  if (verb == "affine-alg" || verb == "affine-top" || verb == "affine" || verb == "punctured" ||
      verb == "gm" || verb == "projective" || verb == "open-fn-space" || verb == "flag-chain") {
    std::string spec = verb;
    if (verb != "gm") spec += ":" + std::to_string(arg_number(opt, 1, "n"));
    emit_space(build_named_space(spec, opt.field), opt, out);
    return 0;
  }
  if (verb == "epim" || verb == "grass") {
    std::string spec =
        verb + ":" + std::to_string(arg_number(opt, 1, "r")) + ":" + std::to_string(arg_number(opt, 2, "n"));
    emit_space(build_named_space(spec, opt.field), opt, out);
    return 0;
  }
  if (verb == "twist") return cmd_twist(opt, out);
  if (verb == "gamma") return cmd_gamma(opt, out);
  if (verb == "plucker") return cmd_plucker(opt, out);
  if (verb == "sr-ideal") {
    SimplicialComplex k = SimplicialComplex::from_json(read_input(opt, 1, in));
    MonomialIdeal ideal = sr_ideal(k);
    if (opt.format == "json") {
      nlohmann::json j;
      auto gens = nlohmann::json::array();
      for (uint32_t g : ideal.generators) {
        auto members = nlohmann::json::array();
        for (size_t i = 0; i < ideal.n; ++i)
          if (g & (1u << i)) members.push_back(i + 1);
        gens.push_back(members);
      }
      j["generators"] = gens;
      j["pretty"] = ideal.to_string();
      out << j.dump(2) << "\n";
    } else {
      out << ideal.to_string() << "\n";
    }
    return 0;
  }
  if (verb == "link") {
    SimplicialComplex k = SimplicialComplex::from_json(read_input(opt, 1, in));
    if (!opt.face) throw Usage("link needs --face i,j,...");
    out << link(k, *opt.face).to_json() << "\n";
    return 0;
  }
  if (verb == "homology") {
    SimplicialComplex k = SimplicialComplex::from_json(read_input(opt, 1, in));
    auto betti = reduced_homology(k, opt.field);
    nlohmann::json j;
    j["field"] = opt.field.to_string();
    nlohmann::json b = nlohmann::json::object();
    for (size_t i = 0; i < betti.size(); ++i)
      b[std::to_string(static_cast<long>(i) - 1)] = betti[i];
    j["betti"] = b;
    if (opt.format == "json") out << j.dump(2) << "\n";
    else {
      out << "reduced Betti numbers over " << opt.field.to_string() << ":";
      for (size_t i = 0; i < betti.size(); ++i)
        out << " b~" << (static_cast<long>(i) - 1) << "=" << betti[i];
      out << "\n";
    }
    return 0;
  }
  if (verb == "cm-check") return cmd_cm_check(opt, out, in);
  if (verb == "free-dl") {
    out << free_dl(arg_number(opt, 1, "n")).to_json() << "\n";
    return 0;
  }
  if (verb == "sspec") {
    DistLattice l = DistLattice::from_json(read_input(opt, 1, in));
    emit_poset(sspec(l).poset, "SSpec", opt, out);
    return 0;
  }
  if (verb == "fiber-product") {
    if (opt.positional.size() < 3) throw Usage("fiber-product <space> <space>");
    RingedSpace a = build_named_space(opt.positional[1], opt.field);
    RingedSpace b = build_named_space(opt.positional[2], opt.field);
    RingedSpace pt = RingedSpace::point(LocalizedRing::constants(opt.field), "pt");
    auto to_point = [&](const RingedSpace& s) {
      std::vector<RingHom> comorphisms;
      for (size_t p = 0; p < s.size(); ++p)
        comorphisms.emplace_back(pt.stalk(0), s.stalk(p), std::vector<RingElement>{});
      return SpaceMorphism{s, pt,
                           MonotoneMap(s.poset(), pt.poset(), std::vector<size_t>(s.size(), 0)),
                           std::move(comorphisms)};
    };
    emit_space(fiber_product(to_point(a), to_point(b)).space, opt, out);
    return 0;
  }
  if (verb == "cover-quotient") {
    if (opt.positional.size() < 2) throw Usage("cover-quotient <space> [--cover whole|min-opens]");
    RingedSpace s = build_named_space(opt.positional[1], opt.field);
    std::vector<OpenSet> cover;
    if (opt.cover == "whole") {
      cover.push_back(s.poset().whole());
    } else if (opt.cover == "min-opens") {
      for (size_t p = 0; p < s.size(); ++p) cover.push_back(s.poset().min_open(p));
    } else {
      throw Usage("cover must be whole or min-opens");
    }
    auto [quotient, projection] = covering_quotient(s, cover);
    emit_space(quotient, opt, out);
    return 0;
  }
  if (verb == "check-morphism") return cmd_check_morphism(opt, out);
  throw Usage("unknown verb: " + verb);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                std::istream& in) {
  try {
    return dispatch(args, out, in);
  } catch (const Usage& u) {
    nlohmann::json j;
    j["error"] = u.what();
    j["kind"] = "usage";
    err << j.dump() << "\n";
    return 2;
  } catch (const domain_error& e) {
    nlohmann::json j;
    j["error"] = e.what();
    j["kind"] = "domain";
    err << j.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json j;
    j["error"] = e.what();
    j["kind"] = "internal";
    err << j.dump() << "\n";
    return 1;
  }
}

}  // namespace rspace::cli
