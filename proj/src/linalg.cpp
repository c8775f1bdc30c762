#include "qsemi/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qsemi {

RMat symplectic_j(int n) {
  RMat j = RMat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -RMat::Identity(n, n);
  return j;
}

cplx sigma(const CVec& u, const CVec& v) {
  const auto n = u.size() / 2;
  return (u.tail(n).cwiseProduct(v.head(n))).sum() - (u.head(n).cwiseProduct(v.tail(n))).sum();
}

double sigma(const RVec& u, const RVec& v) {
  const auto n = u.size() / 2;
  return u.tail(n).dot(v.head(n)) - u.head(n).dot(v.tail(n));
}

double spectral_norm(const CMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<CMat> svd(a);
  return svd.singularValues()(0);
}

double spectral_norm(const RMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<RMat> svd(a);
  return svd.singularValues()(0);
}

double min_singular_value(const CMat& a) {
  Eigen::BDCSVD<CMat> svd(a);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

RVec symmetric_eigenvalues(const RMat& a) {
  Eigen::SelfAdjointEigenSolver<RMat> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double wrap_angle(double theta) {
  double w = std::remainder(theta, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qsemi
