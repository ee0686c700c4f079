#pragma once

// FFTW-backed spectral derivative along one axis of a column-major N x N array.

#include <complex>

#include <Eigen/Dense>

namespace quantlab::spectral {

enum class Axis { X, Y };

/// d/dx or d/dy of a function periodic along `axis` with unit period.
Eigen::MatrixXcd derivative(const Eigen::MatrixXcd& f, Axis axis);

}  // namespace quantlab::spectral
