#include "qsemi/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace qsemi {

namespace {

ComplexQuadraticForm diag_form(std::initializer_list<cplx> entries) {
  const int dim = static_cast<int>(entries.size());
  CMat q = CMat::Zero(dim, dim);
  int i = 0;
  for (cplx e : entries) q(i, i) = e, ++i;
  return ComplexQuadraticForm(dim / 2, q);
}

}  // namespace

ComplexQuadraticForm ho1d() { return diag_form({-1.0, -1.0}); }

ComplexQuadraticForm rot1d(double theta) { return ho1d() * std::polar(1.0, theta); }

ComplexQuadraticForm nil1d() { return diag_form({cplx(-1.0, 1.0), cplx(0.0, 1.0)}); }

// Coordinates (x1, x2, xi1, xi2).
ComplexQuadraticForm mix2d() {
  return diag_form({-1.0, cplx(0.0, 1.0), -1.0, cplx(0.0, 1.0)});
}

ComplexQuadraticForm neg1d() { return diag_form({-1.0, 0.0}); }

ComplexQuadraticForm iho1d() { return diag_form({cplx(0.0, 1.0), cplx(0.0, 1.0)}); }

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v;
    v.push_back({"ho1d", ho1d(),
                 "harmonic oscillator -x^2-xi^2: spectrum -(2k+1), non-nilpotent real part",
                 {1.0, kPi, kPi, "non_nilpotent"}});
    v.push_back({"rot1d", rot1d(kPi / 4),
                 "rotated oscillator e^{i pi/4}(-x^2-xi^2): spectrum -e^{i pi/4}(2k+1)",
                 {std::cos(kPi / 4), -3 * kPi / 4, -3 * kPi / 4,
                  "non_nilpotent"}});
    v.push_back({"nil1d", nil1d(),
                 "(-1+i)x^2 + i xi^2: nilpotent real part, sector [pi/2, 3pi/4], order 2 on "
                 "the ray pi/2",
                 {std::pow(2.0, 0.25) * std::cos(3 * kPi / 8), kPi / 2, 3 * kPi / 4, "nilpotent"}});
    v.push_back({"mix2d", mix2d(),
                 "-x1^2-xi1^2 + i(x2^2+xi2^2): real Hamilton eigenvalues +-1 from the second "
                 "plane",
                 {1.0, kPi / 2, kPi, "non_nilpotent"}});
    v.push_back({"neg1d", neg1d(), "-x^2: not elliptic (vanishes on the xi axis)", {}});
    v.push_back({"iho1d", iho1d(),
                 "i(x^2+xi^2): elliptic, Re q = 0, isometric semigroup, no decay",
                 {std::nullopt, kPi / 2, kPi / 2, "zero"}});
    return v;
  }();
  return entries;
}

std::optional<CatalogEntry> find_catalog_entry(const std::string& id) {
  for (const auto& e : catalog()) {
    if (e.id == id) return e;
  }
  const std::string prefix = "rot1d(";
  if (id.rfind(prefix, 0) == 0 && id.size() > prefix.size() + 1 && id.back() == ')') {
    const std::string arg = id.substr(prefix.size(), id.size() - prefix.size() - 1);
    std::size_t used = 0;
    double theta = 0.0;
    try {
      theta = std::stod(arg, &used);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (used != arg.size() || !(std::abs(theta) < kPi / 2)) return std::nullopt;
    CatalogEntry e{id, rot1d(theta), "rotated oscillator e^{i theta}(-x^2-xi^2)", {}};
    e.expected.a0 = std::cos(theta);
    e.expected.real_part_class = "non_nilpotent";
    return e;
  }
  return std::nullopt;
}

}  // namespace qsemi
