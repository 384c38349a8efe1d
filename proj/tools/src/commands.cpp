#include "commands.hpp"

#include <functional>
#include <map>
#include <random>

namespace coarsecat::cli {

namespace {

using Handler = std::function<Report(const Document&, const Flags&)>;

Json names(const Carrier& c, const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (std::size_t i : idx) out.push_back(c.name(i));
  return out;
}

Json space_json(const GBCSpace& x) {
  Json out = to_json(x);
  out["describe"] = describe(x);
  return out;
}

Json legs_json(const std::vector<Morphism>& legs) {
  Json out = Json::array();
  for (const Morphism& m : legs) out.push_back(to_json(m.map())["table"]);
  return out;
}

Report verdict(Json body, bool holds) {
  body["holds"] = holds;
  return Report{std::move(body), holds ? 0 : 1};
}

Json start(const std::string& command) { return Json{{"command", command}}; }

std::vector<std::string> pick_spaces(const Document& doc, const Flags& flags, std::size_t want,
                                     const char* what) {
  std::vector<std::string> out = flags.spaces;
  if (out.empty()) {
    for (const auto& s : doc.spaces) {
      if (want != 0 && out.size() == want) break;
      out.push_back(s.name);
    }
  }
  if (want != 0 && out.size() != want) {
    throw InvalidArgument(std::string(what) + " needs " + std::to_string(want) + " space(s)");
  }
  return out;
}

const GBCSpace& finite_space(const Document& doc, const std::string& name) {
  const auto* x = std::get_if<GBCSpace>(&doc.space(name).space);
  if (x == nullptr) throw UnsupportedCombination("space \"" + name + "\" is symbolic");
  return *x;
}

std::vector<GBCSpace> finite_spaces(const Document& doc, const std::vector<std::string>& names_) {
  std::vector<GBCSpace> out;
  for (const auto& n : names_) out.push_back(finite_space(doc, n));
  return out;
}

std::vector<Morphism> pick_maps(const Document& doc, const Flags& flags, std::size_t want) {
  std::vector<std::string> chosen = flags.maps;
  if (chosen.empty()) {
    for (const auto& m : doc.maps) {
      if (chosen.size() == want) break;
      chosen.push_back(m.name);
    }
  }
  if (chosen.size() != want) throw InvalidArgument("command needs " + std::to_string(want) + " map(s)");
  std::vector<Morphism> out;
  for (const auto& n : chosen) out.push_back(build_morphism(doc, doc.map(n)));
  return out;
}

const DiagramEntry& pick_diagram(const Document& doc, const Flags& flags) {
  if (!flags.diagram.empty()) return doc.diagram(flags.diagram);
  if (doc.diagrams.empty()) throw InvalidArgument("document has no diagram");
  return doc.diagrams.front();
}

Side pick_side(const Flags& flags, Side fallback) {
  if (flags.side.empty()) return fallback;
  if (flags.side == "limit") return Side::Limit;
  if (flags.side == "colimit") return Side::Colimit;
  throw InvalidArgument("side must be \"limit\" or \"colimit\"");
}

PointSet subset(const GBCSpace& x, const std::vector<std::string>& points) {
  for (const auto& p : points) {
    if (!x.carrier().contains(p)) throw InvalidArgument("unknown point \"" + p + "\"");
  }
  return PointSet::from_names(x.carrier(), points);
}

Quantification quantification(const Flags& flags) {
  return flags.exhaustive ? Quantification::Exhaustive : Quantification::Fast;
}

Json limit_json(const LimitResult& l) {
  return Json{{"space", space_json(l.space)}, {"legs", legs_json(l.cone.legs)}};
}

Json colimit_json(const ColimitResult& c) {
  return Json{{"space", space_json(c.space)}, {"legs", legs_json(c.cocone.legs)}};
}

Report cmd_validate(const Document& doc, const Flags&) {
  Json body = start("validate");
  Json spaces = Json::object();
  for (const auto& s : doc.spaces) {
    spaces[s.name] = std::visit(
        [](const auto& x) -> Json {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, GBCSpace>) {
            return describe(x);
          } else {
            return x.describe();
          }
        },
        s.space);
  }
  body["spaces"] = std::move(spaces);
  bool all_ok = true;
  Json maps = Json::object();
  for (const auto& m : doc.maps) {
    Json entry;
    if (const auto* f = std::get_if<SetMap>(&m.map)) {
      const GBCSpace& dom = std::get<GBCSpace>(doc.space(m.dom).space);
      const GBCSpace& cod = std::get<GBCSpace>(doc.space(m.cod).space);
      const MorphismCheck check = validate_morphism(dom, cod, *f);
      entry["morphism"] = check.ok();
      Json violations = Json::array();
      for (const Violation& v : check.violations) violations.push_back(v.describe(dom, cod));
      entry["violations"] = std::move(violations);
      all_ok = all_ok && check.ok();
    } else {
      const SymMorphismVerdict v = validate_sym_morphism(std::get<SymSpace>(doc.space(m.dom).space),
                                                         std::get<SymSpace>(doc.space(m.cod).space),
                                                         std::get<SymMap>(m.map));
      entry["morphism"] = v.ok();
      entry["proper"] = v.proper;
      entry["controlled"] = v.controlled;
      if (!v.ok()) entry["reason"] = v.reason;
      all_ok = all_ok && v.ok();
    }
    maps[m.name] = std::move(entry);
  }
  body["maps"] = std::move(maps);
  Json diagrams = Json::object();
  for (const auto& d : doc.diagrams) {
    try {
      if (is_symbolic(doc, d)) {
        build_sym_diagram(doc, d);
      } else {
        build_diagram(doc, d);
      }
      diagrams[d.name] = Json{{"valid", true}};
    } catch (const NotAMorphism& e) {
      diagrams[d.name] = Json{{"valid", false}, {"reason", e.what()}};
      all_ok = false;
    }
  }
  body["diagrams"] = std::move(diagrams);
  return verdict(std::move(body), all_ok);
}

Report cmd_normalize(const Document& doc, const Flags&) { return Report{serialize(doc), 0}; }

Report cmd_product(const Document& doc, const Flags& flags) {
  const auto xs = finite_spaces(doc, pick_spaces(doc, flags, 0, "product"));
  Json body = start("product");
  body.update(limit_json(product(xs)));
  return Report{std::move(body), 0};
}

Report cmd_coproduct(const Document& doc, const Flags& flags) {
  const auto xs = finite_spaces(doc, pick_spaces(doc, flags, 0, "coproduct"));
  Json body = start("coproduct");
  body.update(colimit_json(coproduct(xs)));
  return Report{std::move(body), 0};
}

Report cmd_equalizer(const Document& doc, const Flags& flags) {
  const auto fs = pick_maps(doc, flags, 2);
  Json body = start("equalizer");
  body.update(limit_json(equalizer(fs[0], fs[1])));
  return Report{std::move(body), 0};
}

Report cmd_coequalizer(const Document& doc, const Flags& flags) {
  const auto fs = pick_maps(doc, flags, 2);
  Json body = start("coequalizer");
  body.update(colimit_json(coequalizer(fs[0], fs[1])));
  return Report{std::move(body), 0};
}

Report cmd_limit(const Document& doc, const Flags& flags) {
  const DiagramEntry& d = pick_diagram(doc, flags);
  if (is_symbolic(doc, d)) throw UnsupportedCombination("symbolic limits are not supported");
  Json body = start("limit");
  body.update(limit_json(limit(build_diagram(doc, d))));
  return Report{std::move(body), 0};
}

Report cmd_colimit(const Document& doc, const Flags& flags) {
  const DiagramEntry& d = pick_diagram(doc, flags);
  Json body = start("colimit");
  if (is_symbolic(doc, d)) {
    const SymSpace x = sym_pushout(build_sym_diagram(doc, d));
    body["space"] = to_json(x);
    body["tag"] = x.describe();
    Json legs = Json::array();
    for (std::size_t i = 0; i < d.spaces.size(); ++i) legs.push_back(to_json(SymMap::identity()));
    body["legs"] = std::move(legs);
  } else {
    body.update(colimit_json(colimit(build_diagram(doc, d))));
  }
  return Report{std::move(body), 0};
}

Report cmd_tensor(const Document& doc, const Flags& flags) {
  const auto xs = finite_spaces(doc, pick_spaces(doc, flags, 2, "tensor"));
  Json body = start("tensor");
  body["space"] = space_json(tensor(xs[0], xs[1]));
  return Report{std::move(body), 0};
}

Report cmd_pullback(const Document& doc, const Flags& flags) {
  if (flags.maps.size() > 1) throw InvalidArgument("pullback needs one map");
  if (flags.maps.empty() && doc.maps.empty()) throw InvalidArgument("document has no map");
  const MapEntry& m = flags.maps.empty() ? doc.maps.front() : doc.map(flags.maps.front());
  const GBCSpace& dom = finite_space(doc, m.dom);
  const GBCSpace& cod = finite_space(doc, m.cod);
  Json body = start("pullback");
  body["space"] = space_json(pullback_structure(std::get<SetMap>(m.map), cod, dom.action()));
  return Report{std::move(body), 0};
}

Report cmd_components(const Document& doc, const Flags& flags) {
  const GBCSpace& x = finite_space(doc, pick_spaces(doc, flags, 1, "components")[0]);
  Json classes = Json::array();
  const Components c = components(x);
  for (const PointSet& cls : c.classes) classes.push_back(to_json(cls));
  Json body = start("components");
  body["count"] = c.count();
  body["classes"] = std::move(classes);
  return Report{std::move(body), 0};
}

Report cmd_split(const Document& doc, const Flags& flags) {
  const GBCSpace& x = finite_space(doc, pick_spaces(doc, flags, 1, "split")[0]);
  const Split s = split(x);
  Json body = start("split");
  body["bounded_part"] = space_json(s.bounded_part);
  body["unbounded_part"] = space_json(s.unbounded_part);
  body["coproduct"] = space_json(s.coproduct);
  body["to_coproduct"] = to_json(s.to_coproduct.map())["table"];
  body["from_coproduct"] = to_json(s.from_coproduct.map())["table"];
  return Report{std::move(body), 0};
}

Report cmd_flasque(const Document& doc, const Flags& flags) {
  const GBCSpace& x = finite_space(doc, pick_spaces(doc, flags, 1, "flasque")[0]);
  std::optional<Morphism> witness;
  if (!flags.maps.empty()) witness = build_morphism(doc, doc.map(flags.maps.front()));
  const FlasqueVerdict v = is_flasque(x, witness, flags.search_cap);
  Json body = start("flasque");
  if (v.witness) body["witness"] = to_json(v.witness->map())["table"];
  if (!v.flasque) body["failed_condition"] = v.failed_condition;
  body["k"] = v.k;
  return verdict(std::move(body), v.flasque);
}

Report cmd_close(const Document& doc, const Flags& flags) {
  const auto fs = pick_maps(doc, flags, 2);
  Json body = start("close");
  const bool close = are_close(fs[0], fs[1]);
  if (!close) {
    Json pairs = Json::array();
    const Carrier& c = fs[0].cod().carrier();
    for (std::size_t x = 0; x < fs[0].dom().size(); ++x) {
      if (!fs[0].cod().max_entourage().contains(fs[0](x), fs[1](x))) {
        pairs.push_back(Json{{"point", fs[0].dom().carrier().name(x)},
                             {"images", Json::array({c.name(fs[0](x)), c.name(fs[1](x))})}});
      }
    }
    body["unrelated"] = std::move(pairs);
  }
  return verdict(std::move(body), close);
}

Report cmd_equivalent(const Document& doc, const Flags& flags) {
  const auto fs = pick_maps(doc, flags, 1);
  const EquivalenceVerdict v = is_equivalence(fs[0], flags.search_cap);
  Json body = start("equivalent");
  if (v.inverse) body["inverse"] = to_json(v.inverse->map())["table"];
  return verdict(std::move(body), v.equivalence);
}

Report cmd_excisive(const Document& doc, const Flags& flags) {
  const GBCSpace& x = finite_space(doc, pick_spaces(doc, flags, 1, "excisive")[0]);
  const ExcisionVerdict v =
      is_coarsely_excisive(x, subset(x, flags.y), subset(x, flags.z), quantification(flags), flags.search_cap);
  Json body = start("excisive");
  if (!v.excisive) {
    body["failed_condition"] = v.failed_condition;
    if (v.point) body["point"] = x.carrier().name(*v.point);
    if (v.entourage) body["entourage"] = to_json(*v.entourage);
  }
  return verdict(std::move(body), v.excisive);
}

Report cmd_nice(const Document& doc, const Flags& flags) {
  const GBCSpace& x = finite_space(doc, pick_spaces(doc, flags, 1, "nice")[0]);
  const NiceVerdict v = is_nice(x, subset(x, flags.y), quantification(flags), flags.search_cap);
  Json body = start("nice");
  if (v.failing_entourage) body["failing_entourage"] = to_json(*v.failing_entourage);
  if (v.retraction) body["retraction"] = to_json(*v.retraction)["table"];
  return verdict(std::move(body), v.nice);
}

Report cmd_admissible(const Document& doc, const Flags& flags) {
  const DiagramEntry& d = pick_diagram(doc, flags);
  Json body = start("admissible");
  if (is_symbolic(doc, d)) {
    const SymAdmissibility a = sym_admissible(build_sym_diagram(doc, d));
    if (a.witness) {
      Json chain = Json::array();
      for (std::size_t i : a.witness->chain) chain.push_back(d.labels[i]);
      body["witness"] = Json{{"point", a.witness->point},
                             {"object", d.labels[a.witness->object]},
                             {"chain", std::move(chain)},
                             {"preimage", a.witness->preimage.to_string()}};
    }
    return verdict(std::move(body), a.admissible);
  }
  const Diagram diagram = build_diagram(doc, d);
  const Admissibility a = admissible(diagram);
  body["rounds"] = a.rounds;
  if (a.witness) {
    Json chain = Json::array();
    for (std::size_t i : a.witness->chain) chain.push_back(d.labels[i]);
    const Carrier& oc = diagram.object(a.witness->object).carrier();
    body["witness"] = Json{{"point", a.colimit_carrier.name(a.witness->point)},
                           {"object", d.labels[a.witness->object]},
                           {"chain", std::move(chain)},
                           {"preimage", to_json(a.witness->preimage)},
                           {"escaping", oc.name(a.witness->escaping)}};
  }
  return verdict(std::move(body), a.admissible);
}

Report cmd_exists_classical(const Document& doc, const Flags& flags) {
  const DiagramEntry& d = pick_diagram(doc, flags);
  const Side side = pick_side(flags, Side::Colimit);
  const ClassicalExistence e = exists_in_classical(build_diagram(doc, d), side);
  Json body = start("exists-classical");
  body["side"] = side == Side::Limit ? "limit" : "colimit";
  body["object"] = space_json(e.object);
  if (!e.exists) body["unbounded_points"] = names(e.object.carrier(), e.unbounded_points);
  return verdict(std::move(body), e.exists);
}

Report cmd_oracle(const Document& doc, const Flags& flags) {
  Side side = pick_side(flags, Side::Limit);
  Diagram diagram;
  if (!flags.spaces.empty() || doc.diagrams.empty()) {
    diagram = Diagram::discrete(finite_spaces(doc, pick_spaces(doc, flags, 0, "oracle")));
  } else {
    diagram = build_diagram(doc, pick_diagram(doc, flags));
  }
  GBCSpace apex;
  std::vector<SetMap> legs;
  if (side == Side::Limit) {
    const LimitResult l = limit(diagram);
    apex = l.space;
    for (const Morphism& m : l.cone.legs) legs.push_back(m.map());
  } else {
    const ColimitResult c = colimit(diagram);
    apex = c.space;
    for (const Morphism& m : c.cocone.legs) legs.push_back(m.map());
  }
  OracleOptions options;
  options.test_cap = flags.test_cap;
  const Verdict v = universal_property_check(apex, legs, diagram, side, options);

  Json body = start("oracle");
  body["side"] = side == Side::Limit ? "limit" : "colimit";
  body["space"] = space_json(apex);
  body["tests"] = v.tests;
  body["cones"] = v.cones;
  if (!v.pass) {
    body["reason"] = v.reason;
    if (v.counterexample) {
      Json cx = Json{{"test", space_json(v.counterexample->test)}, {"mediators", v.counterexample->mediators}};
      Json cl = Json::array();
      for (const SetMap& f : v.counterexample->legs) cl.push_back(to_json(f)["table"]);
      cx["legs"] = std::move(cl);
      body["counterexample"] = std::move(cx);
    }
  }

  // Mutations cycle through: one leg at one point, the bounded region of the
  // apex, the maximal entourage of the apex.
  std::vector<std::size_t> mutable_legs;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const SetMap& f = legs[i];
    if (f.dom().size() > 0 && f.cod().size() > 1) mutable_legs.push_back(i);
  }
  std::vector<PointSet> regions = saturated_regions(apex.max_entourage());
  std::erase(regions, apex.bounded_region());
  std::vector<Relation> partitions;
  for (Relation& e : enumerate_partitions(apex.carrier())) {
    if (!(e == apex.max_entourage()) && thicken(e, apex.bounded_region()) == apex.bounded_region()) {
      partitions.push_back(std::move(e));
    }
  }
  std::mt19937_64 rng(flags.seed);
  std::size_t rejected = 0;
  std::size_t tried = 0;
  for (std::size_t t = 0; t < flags.mutations; ++t) {
    GBCSpace m_apex = apex;
    std::vector<SetMap> m_legs = legs;
    bool made = false;
    for (std::size_t k = 0; k < 3 && !made; ++k) {
      switch ((t + k) % 3) {
        case 0:
          if (mutable_legs.empty()) break;
          {
            const std::size_t leg = mutable_legs[rng() % mutable_legs.size()];
            const SetMap& f = legs[leg];
            std::vector<std::size_t> images(f.images().begin(), f.images().end());
            const std::size_t x = rng() % images.size();
            images[x] = (images[x] + 1 + rng() % (f.cod().size() - 1)) % f.cod().size();
            m_legs[leg] = SetMap(f.dom(), f.cod(), std::move(images));
            made = true;
          }
          break;
        case 1:
          if (regions.empty()) break;
          m_apex = GBCSpace(apex.max_entourage(), regions[rng() % regions.size()]);
          made = true;
          break;
        default:
          if (partitions.empty()) break;
          m_apex = GBCSpace(partitions[rng() % partitions.size()], apex.bounded_region());
          made = true;
          break;
      }
    }
    if (!made) break;
    ++tried;
    if (!universal_property_check(m_apex, m_legs, diagram, side, options).pass) ++rejected;
  }
  if (flags.mutations > 0) body["mutations"] = Json{{"tried", tried}, {"rejected", rejected}};
  return verdict(std::move(body), v.pass && rejected == tried);
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"validate", cmd_validate},
      {"normalize", cmd_normalize},
      {"product", cmd_product},
      {"coproduct", cmd_coproduct},
      {"equalizer", cmd_equalizer},
      {"coequalizer", cmd_coequalizer},
      {"limit", cmd_limit},
      {"colimit", cmd_colimit},
      {"tensor", cmd_tensor},
      {"pullback", cmd_pullback},
      {"components", cmd_components},
      {"split", cmd_split},
      {"flasque", cmd_flasque},
      {"close", cmd_close},
      {"equivalent", cmd_equivalent},
      {"excisive", cmd_excisive},
      {"nice", cmd_nice},
      {"admissible", cmd_admissible},
      {"exists-classical", cmd_exists_classical},
      {"oracle", cmd_oracle},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names_ = [] {
    std::vector<std::string> out;
    for (const auto& [name, handler] : handlers()) out.push_back(name);
    return out;
  }();
  return names_;
}

Report run(const std::string& command, const Document& doc, const Flags& flags) {
  auto it = handlers().find(command);
  if (it == handlers().end()) throw InvalidArgument("unknown command \"" + command + "\"");
  return it->second(doc, flags);
}

Report error_report(const std::string& command, const std::exception& e) {
  Json body = start(command);
  Json err;
  if (const auto* ce = dynamic_cast<const Error*>(&e)) {
    err["kind"] = ce->kind();
  } else {
    err["kind"] = "Error";
  }
  err["message"] = e.what();
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) err["where"] = pe->where();
  if (const auto* ie = dynamic_cast<const IncompatibleStructures*>(&e)) {
    err["witness"] = Json{{"coarse_class", ie->witness().coarse_class},
                          {"bounded_point", ie->witness().bounded_point},
                          {"escaping_point", ie->witness().escaping_point}};
  }
  if (const auto* ce = dynamic_cast<const CapExceeded*>(&e)) {
    err["cap"] = ce->cap();
    err["flag"] = ce->flag();
  }
  body["error"] = std::move(err);
  return Report{std::move(body), 2};
}

}  // namespace coarsecat::cli
