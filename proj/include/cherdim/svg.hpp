#ifndef CHERDIM_SVG_HPP
#define CHERDIM_SVG_HPP

#include <string>

#include "cherdim/apartment.hpp"
#include "cherdim/rootdata.hpp"

namespace cherdim::svg {

// Deterministic SVG of the rank-2 apartment around nu.rho^vee: alcove
// triangles, the nu-walls and the wall-group walls as two stroke classes,
// expected-dimension labels on the coset representatives (distinct style
// when the coset provably contributes zero), the fundamental alcove shaded.
// Throws invalid_input unless the relative rank is 2 and the slope elliptic.
std::string render_apartment(const rootdata::RootDatum& datum,
                             const apartment::SlopeSpec& slope);

}  // namespace cherdim::svg

#endif
