#pragma once

// JSON documents holding named spaces, maps and diagrams.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "coarsecat/coarsecat.hpp"

namespace coarsecat::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";
inline constexpr std::size_t kDefaultMaxCarrier = 64;

// A located parse or validation failure. `where` is a JSON pointer into the
// document, or "line L, column C" for syntax errors.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string where)
      : Error(what), where_(std::move(where)) {}
  const char* kind() const noexcept override { return "ParseError"; }
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

using AnySpace = std::variant<GBCSpace, SymSpace>;
using AnyMap = std::variant<SetMap, SymMap>;

struct SpaceEntry {
  std::string name;
  AnySpace space;
};

struct MapEntry {
  std::string name;
  std::string dom;
  std::string cod;
  AnyMap map;
};

struct ArrowEntry {
  std::size_t src = 0;
  std::size_t dst = 0;
  AnyMap map;
  // Name of the referenced map, empty for inline maps.
  std::string ref;
};

struct DiagramEntry {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::string> spaces;
  std::vector<ArrowEntry> arrows;
};

struct Document {
  std::string version = kFormatVersion;
  std::vector<SpaceEntry> spaces;
  std::vector<MapEntry> maps;
  std::vector<DiagramEntry> diagrams;

  const SpaceEntry& space(std::string_view name) const;
  const MapEntry& map(std::string_view name) const;
  const DiagramEntry& diagram(std::string_view name) const;
  bool has_space(std::string_view name) const;
};

// Carriers above `max_carrier` points raise CapExceeded.
Document parse(std::string_view text, std::size_t max_carrier = kDefaultMaxCarrier);
Document parse_json(const Json& j, std::size_t max_carrier = kDefaultMaxCarrier);
Json serialize(const Document& doc);

Json to_json(const GBCSpace& x);
Json to_json(const SymSpace& x);
Json to_json(const AnySpace& x);
Json to_json(const SetMap& f);
Json to_json(const SymMap& f);
Json to_json(const AnyMap& f);
Json to_json(const Relation& u);
Json to_json(const PointSet& s);

// Finite diagrams need every object finite, symbolic ones every object symbolic.
bool is_symbolic(const Document& doc, const DiagramEntry& d);
Diagram build_diagram(const Document& doc, const DiagramEntry& d);
SymDiagram build_sym_diagram(const Document& doc, const DiagramEntry& d);
Morphism build_morphism(const Document& doc, const MapEntry& m);

// Bundled fixture documents: "exa_N" and "ex_PO".
std::optional<std::string_view> fixture_text(std::string_view name);

}  // namespace coarsecat::cli
