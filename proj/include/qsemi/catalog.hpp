#pragma once

// Named reference forms. Each pins one branch of the analysis.

#include <optional>
#include <string>
#include <vector>

#include "qsemi/quadratic_form.hpp"

namespace qsemi {

struct CatalogExpected {
  std::optional<double> a0;
  std::optional<double> theta_min, theta_max;
  std::optional<std::string> real_part_class;
};

struct CatalogEntry {
  std::string id;
  ComplexQuadraticForm form;
  std::string notes;
  CatalogExpected expected;
};

/// ho1d, rot1d (theta = pi/4), nil1d, mix2d, neg1d, iho1d.
const std::vector<CatalogEntry>& catalog();

/// Looks up an id; "rot1d(<theta>)" builds e^{i theta}(-x^2 - xi^2) for any
/// theta in (-pi/2, pi/2). Returns nullopt for unknown ids.
std::optional<CatalogEntry> find_catalog_entry(const std::string& id);

ComplexQuadraticForm ho1d();
ComplexQuadraticForm rot1d(double theta);
ComplexQuadraticForm nil1d();
ComplexQuadraticForm mix2d();
ComplexQuadraticForm neg1d();
ComplexQuadraticForm iho1d();

}  // namespace qsemi
