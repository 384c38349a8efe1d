#include "coarsecat/limits.hpp"

namespace coarsecat {

Split split(const GBCSpace& x) {
  const PointSet bounded = x.bounded_region();
  const PointSet unbounded = x.unbounded_region();
  const Morphism ib = subspace_inclusion(x, bounded);
  const Morphism ih = subspace_inclusion(x, unbounded);
  const std::vector<GBCSpace> parts{ib.dom(), ih.dom()};
  const ColimitResult c = coproduct(parts);

  // The inverse sends each point to its copy in the summand containing it.
  std::vector<std::size_t> img(x.size());
  const auto b_idx = bounded.indices();
  const auto h_idx = unbounded.indices();
  for (std::size_t i = 0; i < b_idx.size(); ++i) img[b_idx[i]] = c.cocone.legs[0](i);
  for (std::size_t i = 0; i < h_idx.size(); ++i) img[h_idx[i]] = c.cocone.legs[1](i);

  std::vector<std::size_t> back(c.space.size());
  for (std::size_t i = 0; i < b_idx.size(); ++i) back[c.cocone.legs[0](i)] = b_idx[i];
  for (std::size_t i = 0; i < h_idx.size(); ++i) back[c.cocone.legs[1](i)] = h_idx[i];

  return Split{ib.dom(), ih.dom(), c.space,
               make_morphism(x, c.space, SetMap(x.carrier(), c.space.carrier(), std::move(img))),
               make_morphism(c.space, x, SetMap(c.space.carrier(), x.carrier(), std::move(back)))};
}

}  // namespace coarsecat
