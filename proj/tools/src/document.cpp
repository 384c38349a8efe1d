#include "document.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace coarsecat::cli {

namespace {

std::string pointer(const std::string& base, std::string_view key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return base + "/" + escaped;
}

std::string pointer(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(what, where); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Nat as_nat(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(where, "expected a natural number");
  }
  return j.get<Nat>();
}

std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::size_t point(const Carrier& c, const Json& j, const std::string& where) {
  const std::string name = as_string(j, where);
  if (!c.contains(name)) fail(where, "unknown point \"" + name + "\"");
  return c.index(name);
}

// Forwards library errors raised while building a value, with a location.
template <typename F>
auto located(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), where);
  } catch (const CarrierMismatch& e) {
    throw ParseError(e.what(), where);
  }
}

BornTag born_tag(const std::string& s, const std::string& where) {
  if (s == "fin") return BornTag::Fin;
  if (s == "all") return BornTag::All;
  if (s == "triv") return BornTag::Triv;
  if (s == "fincap") return BornTag::FinCap;
  fail(where, "unknown bornology \"" + s + "\"");
}

CoarseTag coarse_tag(const std::string& s, const std::string& where) {
  if (s == "diag") return CoarseTag::Diag;
  if (s == "full") return CoarseTag::Full;
  if (s == "band") return CoarseTag::Band;
  if (s == "fingen") return CoarseTag::FinGen;
  fail(where, "unknown coarse structure \"" + s + "\"");
}

std::string lower(const char* s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

AnySpace parse_space(const Json& j, const std::string& where, std::size_t max_carrier) {
  if (!j.is_object()) fail(where, "expected an object");
  if (const Json* sym = optional_field(j, "symbolic"); sym && sym->is_boolean() && sym->get<bool>()) {
    const BornTag born = born_tag(as_string(field(j, "bornology", where), pointer(where, "bornology")), where);
    const CoarseTag coarse = coarse_tag(as_string(field(j, "coarse", where), pointer(where, "coarse")), where);
    std::vector<Nat> f;
    if (const Json* jf = optional_field(j, "F")) {
      const std::string w = pointer(where, "F");
      for (std::size_t i = 0; i < as_array(*jf, w).size(); ++i) f.push_back(as_nat((*jf)[i], pointer(w, i)));
    }
    std::vector<NatPair> r;
    if (const Json* jr = optional_field(j, "R")) {
      const std::string w = pointer(where, "R");
      for (std::size_t i = 0; i < as_array(*jr, w).size(); ++i) {
        const Json& p = (*jr)[i];
        if (!p.is_array() || p.size() != 2) fail(pointer(w, i), "expected a pair");
        r.emplace_back(as_nat(p[0], pointer(w, i)), as_nat(p[1], pointer(w, i)));
      }
    }
    return located(where, [&] { return SymSpace(born, coarse, f, r); });
  }

  const std::string wc = pointer(where, "carrier");
  const Json& jc = as_array(field(j, "carrier", where), wc);
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < jc.size(); ++i) {
    names.push_back(as_string(jc[i], pointer(wc, i)));
    if (!seen.insert(names.back()).second) fail(pointer(wc, i), "duplicate point \"" + names.back() + "\"");
  }
  if (names.size() > max_carrier) {
    throw CapExceeded("carrier at " + where + " has " + std::to_string(names.size()) +
                          " points, above the limit of " + std::to_string(max_carrier),
                      max_carrier, "COARSECAT_MAX_CARRIER");
  }
  const Carrier carrier(names);

  std::vector<Relation> coarse;
  if (const Json* jg = optional_field(j, "coarse_generators")) {
    const std::string w = pointer(where, "coarse_generators");
    for (std::size_t i = 0; i < as_array(*jg, w).size(); ++i) {
      const Json& p = (*jg)[i];
      if (!p.is_array() || p.size() != 2) fail(pointer(w, i), "expected a pair of points");
      Relation u(carrier);
      u.insert(point(carrier, p[0], pointer(w, i)), point(carrier, p[1], pointer(w, i)));
      coarse.push_back(std::move(u));
    }
  }
  std::vector<PointSet> bounded;
  if (const Json* jb = optional_field(j, "bounded_generators")) {
    const std::string w = pointer(where, "bounded_generators");
    for (std::size_t i = 0; i < as_array(*jb, w).size(); ++i) {
      const std::string wi = pointer(w, i);
      PointSet b(carrier);
      for (std::size_t k = 0; k < as_array((*jb)[i], wi).size(); ++k) {
        b.insert(point(carrier, (*jb)[i][k], pointer(wi, k)));
      }
      bounded.push_back(std::move(b));
    }
  }
  bool classical = false;
  if (const Json* jk = optional_field(j, "classical")) {
    if (!jk->is_boolean()) fail(pointer(where, "classical"), "expected a boolean");
    classical = jk->get<bool>();
  }
  std::optional<GroupAction> action;
  if (const Json* ja = optional_field(j, "action")) {
    const std::string w = pointer(where, "action");
    std::vector<std::vector<std::size_t>> perms;
    for (std::size_t i = 0; i < as_array(*ja, w).size(); ++i) {
      const std::string wi = pointer(w, i);
      const Json& jp = as_array((*ja)[i], wi);
      if (jp.size() != carrier.size()) fail(wi, "a generator lists one image per point");
      std::vector<std::size_t> perm;
      for (std::size_t k = 0; k < jp.size(); ++k) perm.push_back(point(carrier, jp[k], pointer(wi, k)));
      perms.push_back(std::move(perm));
    }
    action = located(w, [&] { return GroupAction(carrier, perms); });
  }
  return located(where, [&] { return from_generators(carrier, coarse, bounded, classical, action); });
}

AnyMap parse_map(const Json& j, const std::string& where, const AnySpace& dom, const AnySpace& cod) {
  if (!j.is_object()) fail(where, "expected an object");
  if (dom.index() != cod.index()) fail(where, "a map joins a finite and a symbolic space");
  if (const auto* x = std::get_if<GBCSpace>(&dom)) {
    const Carrier& dc = x->carrier();
    const Carrier& cc = std::get<GBCSpace>(cod).carrier();
    const std::string w = pointer(where, "table");
    const Json& table = field(j, "table", where);
    if (!table.is_object()) fail(w, "expected an object");
    std::vector<std::size_t> images(dc.size());
    std::vector<bool> given(dc.size(), false);
    for (const auto& [key, value] : table.items()) {
      if (!dc.contains(key)) fail(pointer(w, key), "unknown point \"" + key + "\"");
      images[dc.index(key)] = point(cc, value, pointer(w, key));
      given[dc.index(key)] = true;
    }
    for (std::size_t i = 0; i < dc.size(); ++i) {
      if (!given[i]) fail(w, "no image for \"" + dc.name(i) + "\"");
    }
    return SetMap(dc, cc, std::move(images));
  }

  const std::string wt = pointer(where, "tail");
  const Json& tail = as_array(field(j, "tail", where), wt);
  if (tail.size() != 3) fail(wt, "expected [N, a, b]");
  const Nat n = as_nat(tail[0], pointer(wt, 0));
  const Nat a = as_nat(tail[1], pointer(wt, 1));
  const std::int64_t b = as_int(tail[2], pointer(wt, 2));
  std::vector<std::optional<Nat>> given(n);
  if (const Json* je = optional_field(j, "exceptions")) {
    const std::string we = pointer(where, "exceptions");
    if (!je->is_object()) fail(we, "expected an object");
    for (const auto& [key, value] : je->items()) {
      Nat x = 0;
      try {
        std::size_t used = 0;
        x = std::stoull(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        fail(pointer(we, key), "expected a natural number key");
      }
      if (x >= n) fail(pointer(we, key), "exception at or above the threshold");
      given[x] = as_nat(value, pointer(we, key));
    }
  }
  std::vector<Nat> exceptions(n);
  for (Nat x = 0; x < n; ++x) {
    if (given[x]) {
      exceptions[x] = *given[x];
      continue;
    }
    const std::int64_t v = static_cast<std::int64_t>(a * x) + b;
    if (v < 0) fail(pointer(where, "exceptions"), "no image for " + std::to_string(x));
    exceptions[x] = static_cast<Nat>(v);
  }
  return located(where, [&] { return SymMap(std::move(exceptions), a, b); });
}

}  // namespace

const SpaceEntry& Document::space(std::string_view name) const {
  for (const auto& s : spaces) {
    if (s.name == name) return s;
  }
  throw ParseError("unknown space \"" + std::string(name) + "\"", "/spaces");
}

bool Document::has_space(std::string_view name) const {
  return std::any_of(spaces.begin(), spaces.end(), [&](const SpaceEntry& s) { return s.name == name; });
}

const MapEntry& Document::map(std::string_view name) const {
  for (const auto& m : maps) {
    if (m.name == name) return m;
  }
  throw ParseError("unknown map \"" + std::string(name) + "\"", "/maps");
}

const DiagramEntry& Document::diagram(std::string_view name) const {
  for (const auto& d : diagrams) {
    if (d.name == name) return d;
  }
  throw ParseError("unknown diagram \"" + std::string(name) + "\"", "/diagrams");
}

Document parse(std::string_view text, std::size_t max_carrier) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("; last read"); pos != std::string::npos) what = what.substr(0, pos);
    if (auto pos = what.find("] "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ParseError("syntax error: " + what,
                     "line " + std::to_string(line) + ", column " + std::to_string(column));
  }
  return parse_json(j, max_carrier);
}

Document parse_json(const Json& j, std::size_t max_carrier) {
  if (!j.is_object()) fail("", "expected a JSON object");
  Document doc;
  doc.version = as_string(field(j, "version", ""), "/version");
  if (doc.version != kFormatVersion) fail("/version", "unrecognized version \"" + doc.version + "\"");

  if (const Json* js = optional_field(j, "spaces")) {
    if (!js->is_object()) fail("/spaces", "expected an object");
    for (const auto& [name, value] : js->items()) {
      doc.spaces.push_back(SpaceEntry{name, parse_space(value, pointer("/spaces", name), max_carrier)});
    }
  }
  if (const Json* jm = optional_field(j, "maps")) {
    if (!jm->is_object()) fail("/maps", "expected an object");
    for (const auto& [name, value] : jm->items()) {
      const std::string w = pointer("/maps", name);
      const std::string dom = as_string(field(value, "dom", w), pointer(w, "dom"));
      const std::string cod = as_string(field(value, "cod", w), pointer(w, "cod"));
      if (!doc.has_space(dom)) fail(pointer(w, "dom"), "unknown space \"" + dom + "\"");
      if (!doc.has_space(cod)) fail(pointer(w, "cod"), "unknown space \"" + cod + "\"");
      doc.maps.push_back(MapEntry{name, dom, cod, parse_map(value, w, doc.space(dom).space, doc.space(cod).space)});
    }
  }
  if (const Json* jd = optional_field(j, "diagrams")) {
    if (!jd->is_object()) fail("/diagrams", "expected an object");
    for (const auto& [name, value] : jd->items()) {
      const std::string w = pointer("/diagrams", name);
      DiagramEntry d;
      d.name = name;
      const std::string wo = pointer(w, "objects");
      const Json& objects = field(value, "objects", w);
      if (!objects.is_object()) fail(wo, "expected an object");
      for (const auto& [label, space] : objects.items()) {
        const std::string s = as_string(space, pointer(wo, label));
        if (!doc.has_space(s)) fail(pointer(wo, label), "unknown space \"" + s + "\"");
        d.labels.push_back(label);
        d.spaces.push_back(s);
      }
      auto label_index = [&](const Json& l, const std::string& wl) {
        const std::string s = as_string(l, wl);
        auto it = std::find(d.labels.begin(), d.labels.end(), s);
        if (it == d.labels.end()) fail(wl, "unknown object \"" + s + "\"");
        return static_cast<std::size_t>(it - d.labels.begin());
      };
      if (const Json* ja = optional_field(value, "arrows")) {
        const std::string wa = pointer(w, "arrows");
        for (std::size_t i = 0; i < as_array(*ja, wa).size(); ++i) {
          const std::string wi = pointer(wa, i);
          const Json& arrow = (*ja)[i];
          ArrowEntry a;
          a.src = label_index(field(arrow, "src", wi), pointer(wi, "src"));
          a.dst = label_index(field(arrow, "dst", wi), pointer(wi, "dst"));
          const Json& map = field(arrow, "map", wi);
          if (map.is_string()) {
            a.ref = map.get<std::string>();
            const MapEntry* m = nullptr;
            for (const auto& e : doc.maps) {
              if (e.name == a.ref) m = &e;
            }
            if (m == nullptr) fail(pointer(wi, "map"), "unknown map \"" + a.ref + "\"");
            if (m->dom != d.spaces[a.src] || m->cod != d.spaces[a.dst]) {
              fail(pointer(wi, "map"), "map \"" + a.ref + "\" does not join the arrow's objects");
            }
            a.map = m->map;
          } else {
            a.map = parse_map(map, pointer(wi, "map"), doc.space(d.spaces[a.src]).space,
                              doc.space(d.spaces[a.dst]).space);
          }
          d.arrows.push_back(std::move(a));
        }
      }
      doc.diagrams.push_back(std::move(d));
    }
  }
  return doc;
}

Json to_json(const Relation& u) {
  Json out = Json::array();
  const Carrier& c = u.carrier();
  for (const auto& [x, y] : u.pairs()) out.push_back(Json::array({c.name(x), c.name(y)}));
  return out;
}

Json to_json(const PointSet& s) { return Json(s.names()); }

Json to_json(const GBCSpace& x) {
  const Carrier& c = x.carrier();
  Json out;
  out["carrier"] = Json(std::vector<std::string>(c.elements().begin(), c.elements().end()));
  // One generator per non-minimal point of each class, joined to the minimum.
  Json gens = Json::array();
  for (const PointSet& cls : components(x).classes) {
    const auto idx = cls.indices();
    for (std::size_t k = 1; k < idx.size(); ++k) gens.push_back(Json::array({c.name(idx[0]), c.name(idx[k])}));
  }
  out["coarse_generators"] = std::move(gens);
  Json bounded = Json::array();
  if (!x.classical() && !x.bounded_region().empty()) bounded.push_back(to_json(x.bounded_region()));
  out["bounded_generators"] = std::move(bounded);
  out["classical"] = x.classical();
  if (x.action()) {
    Json gens_a = Json::array();
    for (const SetMap& g : x.action()->generators()) {
      Json perm = Json::array();
      for (std::size_t i = 0; i < c.size(); ++i) perm.push_back(c.name(g(i)));
      gens_a.push_back(std::move(perm));
    }
    out["action"] = std::move(gens_a);
  }
  return out;
}

Json to_json(const SymSpace& x) {
  Json out;
  out["symbolic"] = true;
  out["bornology"] = lower(to_string(x.bornology()));
  out["F"] = x.f();
  out["coarse"] = lower(to_string(x.coarse()));
  Json r = Json::array();
  for (const auto& [a, b] : x.r()) {
    if (a < b) r.push_back(Json::array({a, b}));
  }
  out["R"] = std::move(r);
  return out;
}

Json to_json(const AnySpace& x) {
  return std::visit([](const auto& s) { return to_json(s); }, x);
}

Json to_json(const SetMap& f) {
  Json table = Json::object();
  for (std::size_t i = 0; i < f.dom().size(); ++i) table[f.dom().name(i)] = f.cod().name(f(i));
  return Json{{"table", std::move(table)}};
}

Json to_json(const SymMap& f) {
  Json exceptions = Json::object();
  for (Nat x = 0; x < f.threshold(); ++x) exceptions[std::to_string(x)] = f.exceptions()[x];
  return Json{{"exceptions", std::move(exceptions)}, {"tail", Json::array({f.threshold(), f.slope(), f.offset()})}};
}

Json to_json(const AnyMap& f) {
  return std::visit([](const auto& m) { return to_json(m); }, f);
}

Json serialize(const Document& doc) {
  Json out;
  out["version"] = doc.version;
  Json spaces = Json::object();
  for (const auto& s : doc.spaces) spaces[s.name] = to_json(s.space);
  out["spaces"] = std::move(spaces);
  Json maps = Json::object();
  for (const auto& m : doc.maps) {
    Json jm{{"dom", m.dom}, {"cod", m.cod}};
    jm.update(to_json(m.map));
    maps[m.name] = std::move(jm);
  }
  out["maps"] = std::move(maps);
  Json diagrams = Json::object();
  for (const auto& d : doc.diagrams) {
    Json objects = Json::object();
    for (std::size_t i = 0; i < d.labels.size(); ++i) objects[d.labels[i]] = d.spaces[i];
    Json arrows = Json::array();
    for (const auto& a : d.arrows) {
      arrows.push_back(Json{{"src", d.labels[a.src]},
                            {"dst", d.labels[a.dst]},
                            {"map", a.ref.empty() ? to_json(a.map) : Json(a.ref)}});
    }
    diagrams[d.name] = Json{{"objects", std::move(objects)}, {"arrows", std::move(arrows)}};
  }
  out["diagrams"] = std::move(diagrams);
  return out;
}

bool is_symbolic(const Document& doc, const DiagramEntry& d) {
  bool any_sym = false;
  bool any_fin = false;
  for (const auto& s : d.spaces) {
    (std::holds_alternative<SymSpace>(doc.space(s).space) ? any_sym : any_fin) = true;
  }
  if (any_sym && any_fin) {
    throw ParseError("diagram mixes finite and symbolic spaces", pointer("/diagrams", d.name));
  }
  return any_sym;
}

Diagram build_diagram(const Document& doc, const DiagramEntry& d) {
  if (is_symbolic(doc, d)) {
    throw ParseError("expected a diagram of finite spaces", pointer("/diagrams", d.name));
  }
  std::vector<GBCSpace> objects;
  for (const auto& s : d.spaces) objects.push_back(std::get<GBCSpace>(doc.space(s).space));
  std::vector<Arrow> arrows;
  for (const auto& a : d.arrows) {
    arrows.push_back(Arrow{a.src, a.dst, make_morphism(objects[a.src], objects[a.dst], std::get<SetMap>(a.map))});
  }
  return Diagram(std::move(objects), std::move(arrows), d.labels);
}

SymDiagram build_sym_diagram(const Document& doc, const DiagramEntry& d) {
  if (!is_symbolic(doc, d) && !d.spaces.empty()) {
    throw ParseError("expected a diagram of symbolic spaces", pointer("/diagrams", d.name));
  }
  std::vector<SymSpace> objects;
  for (const auto& s : d.spaces) objects.push_back(std::get<SymSpace>(doc.space(s).space));
  std::vector<SymArrow> arrows;
  for (const auto& a : d.arrows) arrows.push_back(SymArrow{a.src, a.dst, std::get<SymMap>(a.map)});
  return SymDiagram(std::move(objects), std::move(arrows), d.labels);
}

Morphism build_morphism(const Document& doc, const MapEntry& m) {
  const auto* dom = std::get_if<GBCSpace>(&doc.space(m.dom).space);
  if (dom == nullptr) throw ParseError("expected a map between finite spaces", pointer("/maps", m.name));
  return make_morphism(*dom, std::get<GBCSpace>(doc.space(m.cod).space), std::get<SetMap>(m.map));
}

}  // namespace coarsecat::cli
