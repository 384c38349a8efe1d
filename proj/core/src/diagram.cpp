#include "coarsecat/diagram.hpp"

#include <algorithm>

#include "coarsecat/errors.hpp"

namespace coarsecat {

Diagram::Diagram(std::vector<GBCSpace> objects, std::vector<Arrow> arrows,
                 std::vector<std::string> names)
    : objects_(std::move(objects)), arrows_(std::move(arrows)), names_(std::move(names)) {
  if (names_.empty()) {
    for (std::size_t i = 0; i < objects_.size(); ++i) names_.push_back(std::to_string(i));
  }
  if (names_.size() != objects_.size()) throw InvalidArgument("diagram needs one name per object");
  for (const Arrow& a : arrows_) {
    if (a.src >= objects_.size() || a.dst >= objects_.size()) {
      throw InvalidArgument("arrow endpoint out of range");
    }
    if (!(a.map.dom() == objects_[a.src]) || !(a.map.cod() == objects_[a.dst])) {
      throw InvalidArgument("arrow " + names_[a.src] + " -> " + names_[a.dst] +
                            " is labeled by a morphism between other spaces");
    }
  }
  const auto acted = std::count_if(objects_.begin(), objects_.end(),
                                   [](const GBCSpace& x) { return x.action().has_value(); });
  if (acted != 0 && static_cast<std::size_t>(acted) != objects_.size()) {
    throw InvalidArgument("either every object of a diagram carries an action or none does");
  }
  equivariant_ = acted != 0;
  if (equivariant_) {
    const std::size_t count = objects_.front().action()->generator_count();
    for (const GBCSpace& x : objects_) {
      if (x.action()->generator_count() != count) {
        throw InvalidArgument("diagram objects are acted on by differently presented groups");
      }
    }
  }
}

bool Diagram::classical() const {
  return std::all_of(objects_.begin(), objects_.end(),
                     [](const GBCSpace& x) { return x.classical(); });
}

Diagram Diagram::empty() { return Diagram(); }

Diagram Diagram::single(const GBCSpace& x) { return Diagram({x}, {}); }

Diagram Diagram::discrete(std::vector<GBCSpace> objects) { return Diagram(std::move(objects), {}); }

Diagram Diagram::parallel(const Morphism& f, const Morphism& g) {
  return Diagram({f.dom(), f.cod()}, {Arrow{0, 1, f}, Arrow{0, 1, g}});
}

Diagram Diagram::span(const Morphism& f, const Morphism& g) {
  return Diagram({f.dom(), f.cod(), g.cod()}, {Arrow{0, 1, f}, Arrow{0, 2, g}});
}

Diagram Diagram::cospan(const Morphism& f, const Morphism& g) {
  return Diagram({f.dom(), g.dom(), f.cod()}, {Arrow{0, 2, f}, Arrow{1, 2, g}});
}

Diagram Diagram::chain(const Morphism& f, const Morphism& g) {
  return Diagram({f.dom(), f.cod(), g.cod()}, {Arrow{0, 1, f}, Arrow{1, 2, g}});
}

std::optional<std::string> check_cone(const Cone& c, const Diagram& d) {
  if (c.legs.size() != d.size()) return "cone has " + std::to_string(c.legs.size()) + " legs";
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (!(c.legs[j].dom() == c.apex) || !(c.legs[j].cod() == d.object(j))) {
      return "leg " + d.names()[j] + " has the wrong endpoints";
    }
  }
  for (const Arrow& a : d.arrows()) {
    for (std::size_t t = 0; t < c.apex.size(); ++t) {
      if (a.map(c.legs[a.src](t)) != c.legs[a.dst](t)) {
        return "legs do not commute with arrow " + d.names()[a.src] + " -> " + d.names()[a.dst];
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_cocone(const Cocone& c, const Diagram& d) {
  if (c.legs.size() != d.size()) return "cocone has " + std::to_string(c.legs.size()) + " legs";
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (!(c.legs[j].cod() == c.apex) || !(c.legs[j].dom() == d.object(j))) {
      return "leg " + d.names()[j] + " has the wrong endpoints";
    }
  }
  for (const Arrow& a : d.arrows()) {
    for (std::size_t x = 0; x < d.object(a.src).size(); ++x) {
      if (c.legs[a.dst](a.map(x)) != c.legs[a.src](x)) {
        return "legs do not commute with arrow " + d.names()[a.src] + " -> " + d.names()[a.dst];
      }
    }
  }
  return std::nullopt;
}

}  // namespace coarsecat
