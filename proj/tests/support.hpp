#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string_view>

#include "nlcs/errors.hpp"
#include "nlcs/nonlinearity.hpp"
#include "nlcs/states.hpp"

namespace testing {

inline bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1.0});
}

inline bool close_strict(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// Keys used by the oracle script.
inline nlcs::NonlinearityModel oracle_model(std::string_view key) {
  if (key == "unit") return nlcs::model_unit();
  if (key == "pt3") return nlcs::model_poschl_teller(3.0);
  if (key == "hydrogen") return nlcs::model_hydrogen();
  if (key == "bg_half") return nlcs::model_barut_girardello(0.5);
  throw nlcs::UnknownModel(std::string(key));
}

// A point comfortably inside the model's radius, for property sampling.
inline double sample_x(std::mt19937& rng, const nlcs::NonlinearityModel& f) {
  const double hi = f.finite_radius() ? 0.9 * f.radius() * f.radius() : 12.0;
  return std::uniform_real_distribution<double>(1e-3, hi)(rng);
}

}  // namespace testing
