#ifndef SCHOTTKY_TYPES_HPP
#define SCHOTTKY_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace schottky {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using IVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double pi = 3.14159265358979323846;

struct SchottkyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSymmetricError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct NotPositiveDefiniteError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct RankDeficientError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct InvalidDeltaError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct SingularDenominatorError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct NoConvergenceError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct TrivialConfigurationError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct DenominatorUnderflowError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct WrongGenusError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct UnknownNameError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct DegenerateEllError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct SingularAError : SchottkyError {
    using SchottkyError::SchottkyError;
};
struct InvalidMatrixError : SchottkyError {
    using SchottkyError::SchottkyError;
};

// Round half-way cases toward zero, so +-1/2 is a stable fixed point of
// the fundamental-domain wrapping.
inline double round_half_toward_zero(double x) {
    double a = std::abs(x);
    double r = std::floor(a + 0.5);
    if (r - a == 0.5) r -= 1.0;
    return std::copysign(r, x);
}

}  // namespace schottky

#endif
