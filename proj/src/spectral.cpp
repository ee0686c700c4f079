#include "spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include "quantlab/errors.hpp"

namespace quantlab::spectral {

namespace {

// The FFTW planner is not thread-safe; execution of an existing plan on new
// arrays is. Plans are cached per (N, axis, direction) and never destroyed.
fftw_plan plan_for(int N, Axis axis, int direction) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_tuple(N, static_cast<int>(axis), direction);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::vector<fftw_complex> buf(static_cast<std::size_t>(N) * N);
  const int n[] = {N};
  const int stride = axis == Axis::X ? 1 : N;
  const int dist = axis == Axis::X ? N : 1;
  fftw_plan p = fftw_plan_many_dft(1, n, N, buf.data(), nullptr, stride, dist, buf.data(), nullptr, stride,
                                   dist, direction, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw AccuracyError("FFTW could not create a plan of size " + std::to_string(N));
  cache.emplace(key, p);
  return p;
}

}  // namespace

Eigen::MatrixXcd derivative(const Eigen::MatrixXcd& f, Axis axis) {
  const int N = static_cast<int>(f.rows());
  if (f.cols() != N) throw ShapeError("spectral derivative expects a square grid");
  Eigen::MatrixXcd work = f;
  auto* data = reinterpret_cast<fftw_complex*>(work.data());
  fftw_execute_dft(plan_for(N, axis, FFTW_FORWARD), data, data);

  const double base = 2.0 * std::numbers::pi / N;
  for (int q = 0; q < N; ++q) {
    const int freq = q < N / 2 ? q : q - N;
    const std::complex<double> factor =
        (2 * q == N) ? std::complex<double>(0.0) : std::complex<double>(0.0, base * freq);
    if (axis == Axis::X)
      work.row(q) *= factor;
    else
      work.col(q) *= factor;
  }
  fftw_execute_dft(plan_for(N, axis, FFTW_BACKWARD), data, data);
  return work;
}

}  // namespace quantlab::spectral
