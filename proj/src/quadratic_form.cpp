#include "qsemi/quadratic_form.hpp"

#include <stdexcept>
#include <string>

namespace qsemi {

namespace {

void require_dim(int expected, Eigen::Index got, const char* what) {
  if (got != expected) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(expected) + ", got " + std::to_string(got));
  }
}

}  // namespace

PhasePoint::PhasePoint(RVec coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0 || coords_.size() % 2 != 0) {
    throw std::invalid_argument("phase point must have positive even length");
  }
}

PhasePoint::PhasePoint(std::initializer_list<double> coords)
    : PhasePoint(RVec::Map(coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

ComplexQuadraticForm::ComplexQuadraticForm(int n, CMat q) : n_(n) {
  if (n < 1) throw std::invalid_argument("form dimension n must be positive");
  if (q.rows() != 2 * n || q.cols() != 2 * n) {
    throw std::invalid_argument("coefficient matrix must be " + std::to_string(2 * n) + "x" +
                                std::to_string(2 * n));
  }
  const double asym = (q - q.transpose()).norm();
  if (!(asym <= 1e-12 * (1.0 + q.norm()))) {
    throw std::invalid_argument("coefficient matrix is not symmetric (||Q - Q^T|| = " +
                                std::to_string(asym) + ")");
  }
  q_ = 0.5 * (q + q.transpose());
}

ComplexQuadraticForm ComplexQuadraticForm::from_parts(const RMat& re, const RMat& im) {
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    throw std::invalid_argument("real and imaginary parts differ in shape");
  }
  CMat q(re.rows(), re.cols());
  q.real() = re;
  q.imag() = im;
  return ComplexQuadraticForm(static_cast<int>(re.rows() / 2), std::move(q));
}

ComplexQuadraticForm ComplexQuadraticForm::zero(int n) {
  return ComplexQuadraticForm(n, CMat::Zero(2 * n, 2 * n));
}

ComplexQuadraticForm ComplexQuadraticForm::real_part() const {
  return ComplexQuadraticForm(n_, q_.real().cast<cplx>());
}

ComplexQuadraticForm ComplexQuadraticForm::imag_part() const {
  return ComplexQuadraticForm(n_, q_.imag().cast<cplx>());
}

ComplexQuadraticForm ComplexQuadraticForm::pullback(const RMat& m) const {
  require_dim(dim(), m.rows(), "pullback");
  require_dim(dim(), m.cols(), "pullback");
  const CMat mc = m.cast<cplx>();
  return ComplexQuadraticForm(n_, mc.transpose() * q_ * mc);
}

ComplexQuadraticForm ComplexQuadraticForm::operator*(cplx s) const {
  return ComplexQuadraticForm(n_, s * q_);
}

ComplexQuadraticForm ComplexQuadraticForm::operator+(const ComplexQuadraticForm& other) const {
  require_dim(dim(), other.dim(), "form sum");
  return ComplexQuadraticForm(n_, q_ + other.q_);
}

double ComplexQuadraticForm::norm() const { return q_.norm(); }

ComplexQuadraticForm HamiltonMap::form() const {
  const int n = dim() / 2;
  const CMat q = -symplectic_j(n).cast<cplx>() * f_;
  return ComplexQuadraticForm(n, 0.5 * (q + q.transpose()));
}

cplx evaluate(const ComplexQuadraticForm& form, const RVec& x) {
  require_dim(form.dim(), x.size(), "evaluate");
  const CVec xc = x.cast<cplx>();
  return xc.transpose() * form.matrix() * xc;
}

cplx evaluate(const ComplexQuadraticForm& form, const PhasePoint& x) {
  return evaluate(form, x.coords());
}

cplx polar(const ComplexQuadraticForm& form, const RVec& x, const RVec& y) {
  require_dim(form.dim(), x.size(), "polar");
  require_dim(form.dim(), y.size(), "polar");
  return x.cast<cplx>().transpose() * form.matrix() * y.cast<cplx>();
}

HamiltonMap hamilton_map(const ComplexQuadraticForm& form) {
  return HamiltonMap(symplectic_j(form.n()).cast<cplx>() * form.matrix());
}

ComplexQuadraticForm poisson_bracket(const ComplexQuadraticForm& f1,
                                     const ComplexQuadraticForm& f2) {
  require_dim(f1.dim(), f2.dim(), "poisson_bracket");
  const CMat a = hamilton_map(f1).matrix();
  const CMat b = hamilton_map(f2).matrix();
  return HamiltonMap(-2.0 * (a * b - b * a)).form();
}

}  // namespace qsemi
