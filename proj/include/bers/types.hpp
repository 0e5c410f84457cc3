#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bers {

// Edge weight vectors: integer coordinates for curves/multicurves, real
// coordinates for measured laminations and shear parameters.
using Weights = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using RealWeights = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2d;

enum class errc {
  complexity_too_low,
  closed_surface_unsupported,
  matching_violation,
  not_connected,
  peripheral,
  empty_curve,
  surface_mismatch,
  non_complete_structure,
  degenerate_structure,
  reducible_or_periodic,
  invalid_flip,
  overlap,
  closed_curve_input,
  empty_piece,
  spanning_failure,
  inconclusive_layer,
  not_uml0,
  enumeration_budget_exceeded,
  dimension_too_low,
  generator_mismatch,
  bad_input,
};

const char* errc_name(errc c);

// Library errors carry a machine-readable code; the CLI maps them to
// structured diagnostics and exit codes.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw error(code, msg);
}

inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace bers
