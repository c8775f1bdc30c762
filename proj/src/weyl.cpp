#include "qsemi/weyl.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace qsemi {

namespace {

void append_degree(int n, int remaining, int pos, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (pos == n - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    append_degree(n, remaining - v, pos + 1, cur, out);
  }
}

/// One ladder term: coefficient times a_j (dir = -1) or a_j^* (dir = +1).
struct Ladder {
  cplx coef;
  int j;
  int dir;
};

std::vector<std::vector<Ladder>> generators(int n) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<std::vector<Ladder>> w(2 * n);
  for (int j = 0; j < n; ++j) {
    w[j] = {{cplx(r, 0.0), j, -1}, {cplx(r, 0.0), j, +1}};
    w[n + j] = {{cplx(0.0, -r), j, -1}, {cplx(0.0, r), j, +1}};
  }
  return w;
}

}  // namespace

std::vector<std::vector<int>> hermite_basis(int n, int degree) {
  if (n < 1 || degree < 0) throw std::invalid_argument("hermite_basis: bad arguments");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  for (int d = 0; d <= degree; ++d) append_degree(n, d, 0, cur, out);
  return out;
}

std::size_t hermite_dimension(int n, int degree) {
  // binom(N + n, n) computed incrementally; exact for the sizes we admit.
  long double c = 1.0L;
  for (int i = 1; i <= n; ++i) c = c * (degree + i) / i;
  return static_cast<std::size_t>(std::llround(c));
}

std::size_t default_max_dim() {
  if (const char* env = std::getenv("QSEMI_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 20000;
}

TruncatedOperator weyl_matrix(const ComplexQuadraticForm& form, int degree, std::size_t max_dim) {
  if (degree < 2) throw std::invalid_argument("truncation degree N must be >= 2");
  const int n = form.n();
  const std::size_t dim = hermite_dimension(n, degree);
  if (dim > max_dim) {
    throw std::invalid_argument("truncation dimension " + std::to_string(dim) +
                                " exceeds the cap " + std::to_string(max_dim) +
                                " (set QSEMI_MAX_DIM to raise it)");
  }
  TruncatedOperator op;
  op.n = n;
  op.degree = degree;
  op.basis = hermite_basis(n, degree);

  // Multi-indices of degree <= N + 2 are encoded in base N + 3.
  const std::uint64_t base = static_cast<std::uint64_t>(degree) + 3;
  auto encode = [&](const std::vector<int>& alpha) {
    std::uint64_t key = 0;
    for (int v : alpha) key = key * base + static_cast<std::uint64_t>(v);
    return key;
  };
  std::unordered_map<std::uint64_t, Eigen::Index> index;
  index.reserve(dim);
  for (std::size_t i = 0; i < op.basis.size(); ++i) {
    index.emplace(encode(op.basis[i]), static_cast<Eigen::Index>(i));
  }

  const auto w = generators(n);
  const CMat& q = form.matrix();
  op.a = CMat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  CMat& a = op.a;

  parallel_for(dim, [&](std::size_t col) {
    const std::vector<int>& alpha = op.basis[col];
    for (int u = 0; u < 2 * n; ++u) {
      for (int v = 0; v < 2 * n; ++v) {
        const cplx quv = q(u, v);
        if (quv == cplx(0.0, 0.0)) continue;
        // w_u w_v h_alpha: apply w_v first, then w_u.
        for (const Ladder& lv : w[v]) {
          std::vector<int> beta = alpha;
          double cv;
          if (lv.dir < 0) {
            if (beta[lv.j] == 0) continue;
            cv = std::sqrt(static_cast<double>(beta[lv.j]));
            --beta[lv.j];
          } else {
            cv = std::sqrt(static_cast<double>(beta[lv.j] + 1));
            ++beta[lv.j];
          }
          for (const Ladder& lu : w[u]) {
            std::vector<int> gamma = beta;
            double cu;
            if (lu.dir < 0) {
              if (gamma[lu.j] == 0) continue;
              cu = std::sqrt(static_cast<double>(gamma[lu.j]));
              --gamma[lu.j];
            } else {
              cu = std::sqrt(static_cast<double>(gamma[lu.j] + 1));
              ++gamma[lu.j];
            }
            const auto it = index.find(encode(gamma));
            if (it == index.end()) continue;  // degree > N: compressed away
            a(it->second, static_cast<Eigen::Index>(col)) += quv * lv.coef * lu.coef * (cv * cu);
          }
        }
      }
    }
  });
  return op;
}

double scaling_identity_check(const ComplexQuadraticForm& form, double h) {
  if (!(h > 0.0 && h <= 1.0)) throw std::invalid_argument("scaling check requires 0 < h <= 1");
  const int n = form.n();
  const int dim = form.dim();
  // q(y, h eta): coefficients S_h = D_h Q D_h with D_h = diag(I, h I).
  RVec dh(dim), p(dim);
  for (int i = 0; i < n; ++i) {
    dh(i) = 1.0;
    dh(n + i) = h;
    p(i) = std::sqrt(h);
    p(n + i) = 1.0 / std::sqrt(h);
  }
  const CMat sh = dh.asDiagonal() * form.matrix() * dh.asDiagonal();
  // Substitute (y, eta) = (h^{1/2} x, h^{-1/2} xi) and divide by h.
  const CMat m = (p.asDiagonal() * sh * p.asDiagonal()) / h;
  return (m - form.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace qsemi
