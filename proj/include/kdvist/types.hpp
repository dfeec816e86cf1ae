#pragma once

#include <complex>
#include <Eigen/Dense>

namespace kdvist {

using Real = double;
using Complex = std::complex<double>;
using Index = Eigen::Index;

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

// imaginary unit
inline constexpr Complex iu{0.0, 1.0};

inline constexpr Real pi = 3.141592653589793238462643383279502884;

} // namespace kdvist
