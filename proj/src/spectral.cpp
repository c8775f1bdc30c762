#include "qsemi/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qsemi/errors.hpp"

namespace qsemi {

// ------------------------------------------------------- Hamilton spectrum

std::vector<HamiltonEig> hamilton_spectrum(const HamiltonMap& f, const Tolerances& tol) {
  const CMat& m = f.matrix();
  const int dim = f.dim();
  if (dim == 0) return {};
  const CVec eig = Eigen::ComplexEigenSolver<CMat>(m, false).eigenvalues();
  const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
  const double radius = tol.cluster * scale;

  // Single-linkage clustering.
  std::vector<int> parent(dim);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      if (std::abs(eig(i) - eig(j)) <= radius) parent[find(i)] = find(j);
    }
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const double d = std::abs(eig(i) - eig(j));
      if (find(i) != find(j) && d <= 10.0 * radius) {
        throw NumericalError("Hamilton eigenvalue clusters too close to separate (distance " +
                             std::to_string(d) + "); widen the clustering tolerance");
      }
    }
  }

  struct Cluster {
    cplx center{0.0, 0.0};
    int count = 0;
  };
  std::vector<Cluster> clusters;
  std::vector<int> root_index(dim, -1);
  for (int i = 0; i < dim; ++i) {
    const int r = find(i);
    if (root_index[r] < 0) {
      root_index[r] = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    Cluster& c = clusters[root_index[r]];
    c.center += eig(i);
    ++c.count;
  }
  for (auto& c : clusters) c.center /= static_cast<double>(c.count);

  // Enforce the pairing lambda <-> -lambda.
  const std::size_t nc = clusters.size();
  std::vector<int> partner(nc, -1);
  for (std::size_t i = 0; i < nc; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nc; ++j) {
      const double d = std::abs(clusters[i].center + clusters[j].center);
      if (d < best) best = d, partner[i] = static_cast<int>(j);
    }
    if (best > 10.0 * radius) {
      throw NumericalError("Hamilton eigenvalue without a -lambda partner");
    }
  }
  std::vector<HamiltonEig> out;
  out.reserve(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    const auto& c = clusters[i];
    const auto& p = clusters[partner[i]];
    if (partner[partner[i]] != static_cast<int>(i) || c.count != p.count) {
      throw NumericalError("inconsistent +-lambda pairing of Hamilton eigenvalues");
    }
    const cplx center = static_cast<int>(i) == partner[i] ? cplx(0.0, 0.0)
                                                           : 0.5 * (c.center - p.center);
    out.push_back({center, c.count});
  }
  std::sort(out.begin(), out.end(), [](const HamiltonEig& a, const HamiltonEig& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
  return out;
}

// ------------------------------------------------------------- real part

const char* to_string(RealPartClass::Kind kind) {
  switch (kind) {
    case RealPartClass::Kind::non_nilpotent:
      return "non_nilpotent";
    case RealPartClass::Kind::nilpotent:
      return "nilpotent";
    case RealPartClass::Kind::zero:
      return "zero";
  }
  return "?";
}

namespace {

double form_scale(const ComplexQuadraticForm& form) {
  return std::max(form.norm(), std::numeric_limits<double>::min());
}

/// Orthonormal basis of the range of m: left singular vectors with
/// singular value > rel * largest (or the `count` leading ones if count >= 0).
RMat orth_range(const RMat& m, double rel, int count = -1) {
  if (m.cols() == 0) return RMat(m.rows(), 0);
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeThinU);
  const RVec& s = svd.singularValues();
  int r = count;
  if (r < 0) {
    r = 0;
    const double cut = rel * (s.size() ? s(0) : 0.0);
    while (r < s.size() && s(r) > cut && s(r) > 0.0) ++r;
  }
  return svd.matrixU().leftCols(r);
}

/// Removes from v its components along the symplectic pairs (e_j, f_j),
/// e_j^T J f_j = 1, so that the result is sigma-orthogonal to all of them.
RMat project_off_pairs(RMat v, const RMat& e, const RMat& f, const RMat& j) {
  for (Eigen::Index c = 0; c < e.cols(); ++c) {
    const RVec je = j * e.col(c);
    const RVec jf = j * f.col(c);
    const RMat ce = v.transpose() * jf;  // (v^T J f) per column of v
    const RMat cf = v.transpose() * je;
    v -= e.col(c) * ce.transpose();
    v += f.col(c) * cf.transpose();
  }
  return v;
}

}  // namespace

void require_nonpositive_real_part(const ComplexQuadraticForm& form, const Tolerances& tol) {
  const double top = symmetric_eigenvalues(form.re())(form.dim() - 1);
  if (top > tol.definiteness * form_scale(form)) {
    throw HypothesisError("Re q is not non-positive (largest eigenvalue of Re Q is " +
                          std::to_string(top) + ")");
  }
}

bool real_part_vanishes(const ComplexQuadraticForm& form, const Tolerances& tol) {
  return spectral_norm(form.re()) <= tol.definiteness * form_scale(form);
}

RealPartClass classify_real_part(const ComplexQuadraticForm& form, const Tolerances& tol) {
  require_nonpositive_real_part(form, tol);
  RealPartClass out;
  if (real_part_vanishes(form, tol)) return out;
  const NormalForm nf = symplectic_normal_form(form, tol);
  out.k = nf.k;
  out.l = nf.l;
  out.lambdas = nf.lambdas;
  if (out.k > 0) {
    out.kind = RealPartClass::Kind::non_nilpotent;
  } else if (out.l > 0) {
    out.kind = RealPartClass::Kind::nilpotent;
    const RMat ref = hamilton_map(form).re();
    const double sq = (ref * ref).norm();
    if (sq > 1e-9 * ref.squaredNorm()) {
      throw NumericalError("Re F classified nilpotent but (Re F)^2 does not vanish");
    }
  }
  return out;
}

// ----------------------------------------------------------- normal form

RMat NormalForm::coefficients() const {
  const int n = static_cast<int>(chi.rows() / 2);
  RMat d = RMat::Zero(2 * n, 2 * n);
  for (int j = 0; j < k; ++j) d(j, j) = d(n + j, n + j) = lambdas[j];
  for (int j = k; j < k + l; ++j) d(j, j) = 1.0;
  return d;
}

RMat symplectic_basis(const RMat& span) {
  const Eigen::Index dim = span.rows();
  const RMat j = symplectic_j(static_cast<int>(dim / 2));
  RMat rest = orth_range(span, 1e-10);
  if (rest.cols() % 2 != 0) throw NumericalError("odd-dimensional subspace is not symplectic");
  const Eigen::Index p = rest.cols() / 2;
  RMat e(dim, p), f(dim, p);
  for (Eigen::Index c = 0; c < p; ++c) {
    const RVec a = rest.col(0);
    const RVec ja = j.transpose() * a;  // a^T J v = (J^T a) . v
    Eigen::Index best = -1;
    double best_val = 0.0;
    for (Eigen::Index i = 1; i < rest.cols(); ++i) {
      const double v = std::abs(ja.dot(rest.col(i)));
      if (v > best_val) best_val = v, best = i;
    }
    if (best < 0 || best_val < 1e-10) {
      throw NumericalError("subspace is not symplectic (degenerate sigma restriction)");
    }
    e.col(c) = a;
    f.col(c) = rest.col(best) / ja.dot(rest.col(best));
    RMat others(dim, rest.cols() - 2);
    for (Eigen::Index i = 1, o = 0; i < rest.cols(); ++i) {
      if (i != best) others.col(o++) = rest.col(i);
    }
    others = project_off_pairs(others, e.col(c), f.col(c), j);
    rest = orth_range(others, 0.0, static_cast<int>(others.cols()));
  }
  RMat out(dim, 2 * p);
  out << e, f;
  return out;
}

RMat symplectic_complement(const RMat& basis) {
  const Eigen::Index dim = basis.rows();
  const Eigen::Index p = basis.cols() / 2;
  if (2 * p == dim) return RMat(dim, 0);
  const RMat j = symplectic_j(static_cast<int>(dim / 2));
  const RMat proj = project_off_pairs(RMat::Identity(dim, dim), basis.leftCols(p),
                                      basis.rightCols(p), j);
  return symplectic_basis(orth_range(proj, 0.0, static_cast<int>(dim - 2 * p)));
}

NormalForm psd_normal_form(const RMat& a_in, double zero_tol) {
  const int dim = static_cast<int>(a_in.rows());
  const int n = dim / 2;
  const RMat a = 0.5 * (a_in + a_in.transpose());
  const RMat j = symplectic_j(n);
  const double anorm = std::max(spectral_norm(a), std::numeric_limits<double>::min());

  Eigen::SelfAdjointEigenSolver<RMat> es(a);
  if (es.eigenvalues()(0) < -zero_tol) {
    throw HypothesisError("form is not positive semidefinite");
  }
  // Eigenvalues at rounding level are zeroed before the square root, which
  // would otherwise lift them to O(sqrt(eps)) and fake oscillator pairs.
  const double eig_cut = std::max(zero_tol, 64.0 * std::numeric_limits<double>::epsilon() * anorm);
  const RVec sq = es.eigenvalues()
                      .unaryExpr([eig_cut](double v) { return v > eig_cut ? v : 0.0; })
                      .cwiseSqrt();
  const RMat s = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();
  const RMat k_mat = s * j * s;

  // Oscillator pairs from the singular structure of the skew matrix K = S J S.
  Eigen::JacobiSVD<RMat> svd(k_mat, Eigen::ComputeFullV);
  const RVec& sv = svd.singularValues();
  const double osc_tol = std::max(zero_tol, 1e-9 * anorm);
  int n_osc_vectors = 0;
  while (n_osc_vectors < sv.size() && sv(n_osc_vectors) > osc_tol) ++n_osc_vectors;

  struct Pair {
    RVec e, f;
    double lambda;
  };
  std::vector<Pair> osc;
  RMat accepted(dim, 0);
  for (int c = 0; c < n_osc_vectors && 2 * static_cast<int>(osc.size()) < n_osc_vectors; ++c) {
    RVec u = svd.matrixV().col(c);
    if (accepted.cols() > 0) u -= accepted * (accepted.transpose() * u);
    if (u.norm() < 0.5) continue;
    u.normalize();
    const RVec ku = k_mat * u;
    const double lambda = ku.norm();
    if (lambda <= osc_tol) continue;
    RVec w = -ku / lambda;
    if (accepted.cols() > 0) w -= accepted * (accepted.transpose() * w);
    w.normalize();
    accepted.conservativeResize(Eigen::NoChange, accepted.cols() + 2);
    accepted.col(accepted.cols() - 2) = u;
    accepted.col(accepted.cols() - 1) = w;
    const double scale = 1.0 / std::sqrt(lambda);
    Pair p{scale * (j * (s * u)), scale * (j * (s * w)), lambda};
    // Rotate within the pair so that e points along its dominant x-coordinate.
    int idx = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      const double v = p.e(i) * p.e(i) + p.f(i) * p.f(i);
      if (v > best + 1e-12) best = v, idx = i;
    }
    const double phi = std::atan2(p.f(idx), p.e(idx));
    const RVec e2 = std::cos(phi) * p.e + std::sin(phi) * p.f;
    const RVec f2 = -std::sin(phi) * p.e + std::cos(phi) * p.f;
    p.e = e2;
    p.f = f2;
    osc.push_back(std::move(p));
  }
  std::stable_sort(osc.begin(), osc.end(),
                   [](const Pair& x, const Pair& y) { return x.lambda > y.lambda; });
  const int k = static_cast<int>(osc.size());

  RMat e_osc(dim, k), f_osc(dim, k);
  for (int c = 0; c < k; ++c) e_osc.col(c) = osc[c].e, f_osc.col(c) = osc[c].f;

  // W = sigma-orthogonal of the oscillator part; there -J A is nilpotent of index 2.
  const RMat proj = project_off_pairs(RMat::Identity(dim, dim), e_osc, f_osc, j);
  const int m = n - k;
  const RMat bw = orth_range(proj, 0.0, 2 * m);
  std::vector<RVec> g, kernel;
  Eigen::SelfAdjointEigenSolver<RMat> esw;
  if (m > 0) {
    const RMat aw = bw.transpose() * a * bw;
    esw.compute(0.5 * (aw + aw.transpose()));
  }
  for (int c = 2 * m - 1; c >= 0; --c) {
    const double mu = esw.eigenvalues()(c);
    const RVec v = bw * esw.eigenvectors().col(c);
    if (mu > zero_tol) {
      g.push_back(v / std::sqrt(mu));
    } else {
      kernel.push_back(v);
    }
  }
  const int l = static_cast<int>(g.size());
  if (l > m) throw NumericalError("normal form: rank-one part exceeds the available dimension");

  RMat e1(dim, l), f1(dim, l);
  for (int c = 0; c < l; ++c) {
    RVec gc = g[c];
    Eigen::Index imax;
    gc.cwiseAbs().maxCoeff(&imax);
    if (gc(imax) < 0) gc = -gc;
    g[c] = gc;
    f1.col(c) = -j * (a * gc);
  }
  for (int c = 0; c < l; ++c) {
    RVec ec = g[c];
    for (int i = 0; i < l; ++i) ec -= 0.5 * g[i].dot(j * g[c]) * f1.col(i);
    e1.col(c) = ec;
  }

  RMat e2(dim, 0), f2(dim, 0);
  if (m - l > 0) {
    RMat kv(dim, static_cast<Eigen::Index>(kernel.size()));
    for (std::size_t c = 0; c < kernel.size(); ++c) kv.col(static_cast<Eigen::Index>(c)) = kernel[c];
    kv = project_off_pairs(kv, e1, f1, j);
    const RMat sb = symplectic_basis(orth_range(kv, 0.0, 2 * (m - l)));
    e2 = sb.leftCols(m - l);
    f2 = sb.rightCols(m - l);
  }

  NormalForm nf;
  nf.k = k;
  nf.l = l;
  for (const auto& p : osc) nf.lambdas.push_back(p.lambda);
  nf.chi.resize(dim, dim);
  nf.chi << e_osc, e1, e2, f_osc, f1, f2;

  const double chi2 = std::max(1.0, nf.chi.squaredNorm());
  const double sym_err = (nf.chi.transpose() * j * nf.chi - j).cwiseAbs().maxCoeff();
  const double form_err = (nf.chi.transpose() * a * nf.chi - nf.coefficients()).cwiseAbs().maxCoeff();
  if (sym_err > 1e-8 * chi2 || form_err > 1e-7 * anorm * chi2) {
    throw NumericalError("normal form verification failed (symplectic residual " +
                         std::to_string(sym_err) + ", form residual " + std::to_string(form_err) +
                         ")");
  }
  return nf;
}

NormalForm symplectic_normal_form(const ComplexQuadraticForm& form, const Tolerances& tol) {
  require_nonpositive_real_part(form, tol);
  return psd_normal_form(-form.re(), tol.definiteness * form_scale(form));
}

// --------------------------------------------------------- tensorization

RMat Tensorization::combined_basis() const {
  const Eigen::Index dim = std::max(s_basis.rows(), sperp_basis.rows());
  const Eigen::Index p = sperp_basis.cols() / 2, s = s_basis.cols() / 2;
  RMat b(dim, dim);
  b << sperp_basis.leftCols(p), s_basis.leftCols(s), sperp_basis.rightCols(p),
      s_basis.rightCols(s);
  return b;
}

Tensorization split_real_eigenspaces(const ComplexQuadraticForm& form, const Tolerances& tol) {
  const auto cert = check_elliptic(form, tol);
  if (cert.verdict == EllipticityCertificate::Verdict::not_elliptic) {
    throw HypothesisError("form is not elliptic");
  }
  if (cert.verdict == EllipticityCertificate::Verdict::indeterminate) {
    throw NumericalError("ellipticity of the form is indeterminate");
  }
  require_nonpositive_real_part(form, tol);

  const int dim = form.dim();
  const HamiltonMap fmap = hamilton_map(form);
  const CMat& f = fmap.matrix();
  const double fnorm = std::max(f.norm(), std::numeric_limits<double>::min());
  const auto spec = hamilton_spectrum(fmap, tol);

  std::vector<RVec> cols;
  int expected = 0;
  for (const auto& h : spec) {
    if (std::abs(h.lambda.imag()) > tol.real_eigenvalue * fnorm) continue;
    if (std::abs(h.lambda) <= tol.real_eigenvalue * fnorm) {
      throw HypothesisError("Hamilton map has a zero eigenvalue: the form is not elliptic");
    }
    const double lam = h.lambda.real();
    const CMat shifted = f - lam * CMat::Identity(dim, dim);
    Eigen::JacobiSVD<CMat> svd(shifted, Eigen::ComputeFullV);
    for (int c = 0; c < h.multiplicity; ++c) {
      const CVec v = svd.matrixV().col(dim - 1 - c);
      cols.push_back(v.real());
      cols.push_back(v.imag());
    }
    expected += h.multiplicity;
  }

  Tensorization out;
  const RMat j = symplectic_j(form.n());
  if (expected > 0) {
    RMat span(dim, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) span.col(static_cast<Eigen::Index>(c)) = cols[c];
    const RMat t0 = symplectic_basis(orth_range(span, 0.0, expected));
    const CMat t0c = t0.cast<cplx>();
    const CMat qs = t0c.transpose() * form.matrix() * t0c;
    const RMat ims = 0.5 * (qs.imag() + qs.imag().transpose());
    const RVec ev = symmetric_eigenvalues(ims);
    const double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    if (ev(0) > tol.definiteness * scale) {
      out.epsilon = 1;
    } else if (ev(ev.size() - 1) < -tol.definiteness * scale) {
      out.epsilon = -1;
    } else {
      throw NumericalError("Im q is not definite on the real-eigenvalue subspace");
    }
    const NormalForm nf = psd_normal_form(out.epsilon * ims, tol.definiteness * scale);
    if (nf.k * 2 != expected) {
      throw NumericalError("restriction of Im q to S is not a sum of oscillators");
    }
    out.mu = nf.lambdas;
    out.s_basis = t0 * nf.chi;
    const CMat sb = out.s_basis.cast<cplx>();
    const CMat qs2 = sb.transpose() * form.matrix() * sb;
    RMat target = RMat::Zero(expected, expected);
    for (int c = 0; c < nf.k; ++c) {
      target(c, c) = target(nf.k + c, nf.k + c) = out.epsilon * out.mu[c];
    }
    const double err = std::max(qs2.real().cwiseAbs().maxCoeff(),
                                (qs2.imag() - target).cwiseAbs().maxCoeff());
    if (err > 1e-7 * form_scale(form) * std::max(1.0, out.s_basis.squaredNorm())) {
      throw NumericalError("q restricted to S is not i eps sum mu (x^2 + xi^2)");
    }
    out.sperp_basis = symplectic_complement(out.s_basis);
  } else {
    out.s_basis = RMat(dim, 0);
    out.sperp_basis = RMat::Identity(dim, dim);
  }

  const int np = out.n_perp();
  if (np > 0) {
    const CMat pb = out.sperp_basis.cast<cplx>();
    const CMat qp = pb.transpose() * form.matrix() * pb;
    const RMat ap = -0.5 * (qp.real() + qp.real().transpose());
    const NormalForm nf = psd_normal_form(ap, tol.definiteness * form_scale(form));
    out.sperp_basis = out.sperp_basis * nf.chi;
    const CMat chic = nf.chi.cast<cplx>();
    out.q_tilde = ComplexQuadraticForm(np, chic.transpose() * qp * chic);
    const HamiltonMap ft = hamilton_map(*out.q_tilde);
    const CVec ev = Eigen::ComplexEigenSolver<CMat>(ft.matrix(), false).eigenvalues();
    const double fn = std::max(ft.matrix().norm(), std::numeric_limits<double>::min());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev(i).imag()) <= 1e-9 * fn) {
        throw NumericalError("restricted form still has a real Hamilton eigenvalue");
      }
    }
  }
  (void)j;
  return out;
}

// -------------------------------------------------------- operator spectrum

namespace {

struct Admissible {
  std::vector<HamiltonEig> eigs;
  std::vector<cplx> boundary;
  double a0 = 0.0;
  Sector sector = Sector::full_plane();
};

Admissible admissible_eigenvalues(const ComplexQuadraticForm& form, const Tolerances& tol) {
  const auto cert = check_elliptic(form, tol);
  if (cert.verdict == EllipticityCertificate::Verdict::not_elliptic) {
    throw HypothesisError("form is not elliptic");
  }
  if (cert.verdict == EllipticityCertificate::Verdict::indeterminate) {
    throw NumericalError("ellipticity of the form is indeterminate");
  }
  Admissible out;
  out.sector = numerical_range(form, cert);
  if (out.sector.is_full_plane()) {
    throw HypothesisError("numerical range is the whole plane; the spectrum formula does not apply");
  }
  const HamiltonMap f = hamilton_map(form);
  const double fnorm = std::max(f.matrix().norm(), std::numeric_limits<double>::min());
  for (const auto& h : hamilton_spectrum(f, tol)) {
    const cplx w = cplx(0.0, -1.0) * h.lambda;
    if (std::abs(w) <= tol.real_eigenvalue * fnorm) continue;
    if (!out.sector.contains(w, tol.sector_angle)) continue;
    out.eigs.push_back(h);
    out.a0 += h.multiplicity * (-w.real());
    if (out.sector.on_boundary(w, tol.sector_angle)) out.boundary.push_back(h.lambda);
  }
  return out;
}

}  // namespace

SpectrumReport operator_spectrum(const ComplexQuadraticForm& form, double radius,
                                 const Tolerances& tol) {
  if (!(radius > 0.0)) throw std::invalid_argument("spectrum radius must be positive");
  const Admissible adm = admissible_eigenvalues(form, tol);
  SpectrumReport rep;
  rep.admissible = adm.eigs;
  rep.boundary_lambdas = adm.boundary;
  rep.a0 = adm.a0;
  rep.radius = radius;
  rep.sector = adm.sector;

  const double phi = adm.sector.bisector();
  const cplx rot = std::polar(1.0, -phi);
  const std::size_t m = adm.eigs.size();
  std::vector<cplx> w(m);
  std::vector<double> proj(m);
  double base = 0.0;
  cplx z0{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    w[i] = cplx(0.0, -1.0) * adm.eigs[i].lambda;
    proj[i] = (rot * w[i]).real();
    if (!(proj[i] > 0.0)) throw NumericalError("admissible eigenvalue with no bisector projection");
    base += adm.eigs[i].multiplicity * proj[i];
    z0 += static_cast<double>(adm.eigs[i].multiplicity) * w[i];
  }

  constexpr std::size_t kMaxPoints = 2'000'000;
  std::vector<int> ks(m, 0);
  auto recurse = [&](auto&& self, std::size_t i, double p, cplx z) -> void {
    if (i == m) {
      if (std::abs(z) <= radius * (1.0 + 1e-12)) {
        SpectrumPoint pt{z, {}};
        for (std::size_t t = 0; t < m; ++t) {
          pt.gens.push_back({adm.eigs[t].lambda, adm.eigs[t].multiplicity, ks[t]});
        }
        rep.points.push_back(std::move(pt));
        if (rep.points.size() > kMaxPoints) {
          throw std::invalid_argument("spectrum radius too large: point count exceeds cap");
        }
      }
      return;
    }
    for (int k = 0;; ++k) {
      const double pk = p + 2.0 * k * proj[i];
      if (pk > radius * (1.0 + 1e-12)) break;
      ks[i] = k;
      self(self, i + 1, pk, z + 2.0 * k * w[i]);
    }
    ks[i] = 0;
  };
  if (m > 0 && base <= radius * (1.0 + 1e-12)) recurse(recurse, 0, base, z0);

  std::sort(rep.points.begin(), rep.points.end(),
            [](const SpectrumPoint& a, const SpectrumPoint& b) {
              const double ma = std::abs(a.z), mb = std::abs(b.z);
              if (std::abs(ma - mb) > 1e-12 * std::max(1.0, ma)) return ma < mb;
              return std::arg(a.z) < std::arg(b.z);
            });
  return rep;
}

DecayRate decay_rate(const ComplexQuadraticForm& form, const Tolerances& tol) {
  const auto cert = check_elliptic(form, tol);
  if (cert.verdict == EllipticityCertificate::Verdict::not_elliptic) {
    throw HypothesisError("form is not elliptic");
  }
  if (cert.verdict == EllipticityCertificate::Verdict::indeterminate) {
    throw NumericalError("ellipticity of the form is indeterminate");
  }
  require_nonpositive_real_part(form, tol);
  if (real_part_vanishes(form, tol)) {
    throw HypothesisError("Re q vanishes identically: the semigroup is isometric, no decay");
  }
  const Admissible adm = admissible_eigenvalues(form, tol);
  DecayRate out;
  out.a0 = adm.a0;
  if (!(out.a0 > tol.definiteness * form_scale(form))) {
    throw NumericalError("computed spectral abscissa is not positive");
  }
  const RealPartClass cls = classify_real_part(form, tol);
  if (cls.kind == RealPartClass::Kind::non_nilpotent) out.constant_free_rate = cls.lambdas.front();
  return out;
}

}  // namespace qsemi
