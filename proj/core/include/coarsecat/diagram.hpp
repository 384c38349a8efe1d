#pragma once

// Finite diagrams: quivers labeled by spaces and morphisms.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coarsecat/space.hpp"

namespace coarsecat {

struct Arrow {
  std::size_t src = 0;
  std::size_t dst = 0;
  Morphism map;
};

class Diagram {
 public:
  Diagram() = default;
  // Validates that each arrow's morphism runs between the labels of its
  // endpoints, and that the spaces either all carry an action of the same
  // number of generators or none does.
  Diagram(std::vector<GBCSpace> objects, std::vector<Arrow> arrows,
          std::vector<std::string> names = {});

  std::size_t size() const noexcept { return objects_.size(); }
  const std::vector<GBCSpace>& objects() const noexcept { return objects_; }
  const GBCSpace& object(std::size_t i) const { return objects_.at(i); }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  bool equivariant() const noexcept { return equivariant_; }
  bool classical() const;

  // Common shapes.
  static Diagram empty();
  static Diagram single(const GBCSpace& x);
  static Diagram discrete(std::vector<GBCSpace> objects);
  static Diagram parallel(const Morphism& f, const Morphism& g);
  // x <- f - a - g -> y
  static Diagram span(const Morphism& f, const Morphism& g);
  // x - f -> a <- g - y
  static Diagram cospan(const Morphism& f, const Morphism& g);
  // x - f -> y - g -> z
  static Diagram chain(const Morphism& f, const Morphism& g);

 private:
  std::vector<GBCSpace> objects_;
  std::vector<Arrow> arrows_;
  std::vector<std::string> names_;
  bool equivariant_ = false;
};

struct Cone {
  GBCSpace apex;
  std::vector<Morphism> legs;
};

struct Cocone {
  GBCSpace apex;
  std::vector<Morphism> legs;
};

// Each leg runs apex -> object (cone) or object -> apex (cocone) and the legs
// commute with every arrow. Returns a description of the first failure.
std::optional<std::string> check_cone(const Cone& c, const Diagram& d);
std::optional<std::string> check_cocone(const Cocone& c, const Diagram& d);

}  // namespace coarsecat
