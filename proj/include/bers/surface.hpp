#pragma once

#include "bers/types.hpp"

namespace bers {

// Topological signature of an orientable finite-type surface.  Top-level
// surfaces have punctures only; pieces produced by cutting carry boundary
// circles as well.
struct SurfaceType {
  int genus = 0;
  int punctures = 0;
  int boundary_curves = 0;

  int xi() const { return 3 * genus + punctures; }
  int teich_dim() const { return 6 * genus - 6 + 2 * punctures; }
  int euler() const { return 2 - 2 * genus - punctures - boundary_curves; }
  // punctures and boundary circles together
  int ends() const { return punctures + boundary_curves; }
  // dimension of the Teichmueller space with freely varying boundary lengths;
  // for a piece this is what degenerates under restriction
  int moduli_dim() const { return 3 * genus - 3 + ends(); }
  int max_multicurve() const { return 3 * genus - 3 + punctures; }

  bool is_annulus() const {
    return genus == 0 && punctures + boundary_curves == 2;
  }
  bool is_pants_like() const { return euler() == -1; }

  friend bool operator==(const SurfaceType&, const SurfaceType&) = default;
};

// Validated constructor for top-level surfaces (punctured, no boundary).
SurfaceType make_surface(int genus, int punctures);

std::string to_string(const SurfaceType& s);

}  // namespace bers
