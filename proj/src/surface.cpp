#include "bers/surface.hpp"

namespace bers {

const char* errc_name(errc c) {
  switch (c) {
    case errc::complexity_too_low: return "complexity-too-low";
    case errc::closed_surface_unsupported: return "closed-surface-unsupported";
    case errc::matching_violation: return "matching-violation";
    case errc::not_connected: return "not-connected";
    case errc::peripheral: return "peripheral";
    case errc::empty_curve: return "empty";
    case errc::surface_mismatch: return "surface-mismatch";
    case errc::non_complete_structure: return "non-complete-structure";
    case errc::degenerate_structure: return "degenerate-structure";
    case errc::reducible_or_periodic: return "reducible-or-periodic";
    case errc::invalid_flip: return "invalid-flip";
    case errc::overlap: return "overlap";
    case errc::closed_curve_input: return "closed-curve-input";
    case errc::empty_piece: return "empty-piece";
    case errc::spanning_failure: return "spanning-failure";
    case errc::inconclusive_layer: return "inconclusive-layer";
    case errc::not_uml0: return "not-uml0";
    case errc::enumeration_budget_exceeded: return "enumeration-budget-exceeded";
    case errc::dimension_too_low: return "dimension-too-low";
    case errc::generator_mismatch: return "generator-mismatch";
    case errc::bad_input: return "bad-input";
  }
  return "unknown";
}

SurfaceType make_surface(int genus, int punctures) {
  require(genus >= 0 && punctures >= 0, errc::bad_input,
          "genus and punctures must be nonnegative");
  require(punctures >= 1, errc::closed_surface_unsupported,
          "closed surfaces are not supported; punctures must be >= 1");
  SurfaceType s{genus, punctures, 0};
  require(s.xi() >= 4, errc::complexity_too_low,
          "complexity xi = 3g + p must be >= 4, got " + std::to_string(s.xi()));
  return s;
}

std::string to_string(const SurfaceType& s) {
  std::string out = "S(" + std::to_string(s.genus) + "," +
                    std::to_string(s.punctures);
  if (s.boundary_curves > 0) out += ";b=" + std::to_string(s.boundary_curves);
  return out + ")";
}

}  // namespace bers
