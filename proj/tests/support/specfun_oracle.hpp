#pragma once
// Independent 200-bit (about 60 digits) series oracle for the special functions, plus the reference grid.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <utility>
#include <vector>

namespace oracle {

using HP = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

inline const HP& tiny() {
  static const HP t = HP("1e-180");
  return t;
}

inline bool nonpos_int(const HP& x) { return x <= 0 && x == boost::multiprecision::round(x); }

inline HP rgamma(const HP& x) { return nonpos_int(x) ? HP(0) : HP(1) / boost::math::tgamma(x); }

// sum_k s^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)),  s = -1 for J, +1 for I
inline HP bessel_series(const HP& nu, const HP& x, int s) {
  const HP h = x / 2, q = h * h * s;
  HP t = pow(h, nu) * rgamma(nu + 1), sum = t;
  for (int k = 1; k < 10000; ++k) {
    t *= q / (HP(k) * (nu + k));
    sum += t;
    if (k > x && abs(t) < tiny() * abs(sum)) break;
  }
  return sum;
}

inline double J(double nu, double x) { return static_cast<double>(bessel_series(HP(nu), HP(x), -1)); }

inline double K(double nu, double z) {
  HP n(std::abs(nu));
  if (n == boost::multiprecision::round(n)) n += HP("1e-60");
  const HP pi = boost::math::constants::pi<HP>();
  const HP v = pi / 2 * (bessel_series(-n, HP(z), 1) - bessel_series(n, HP(z), 1)) / sin(n * pi);
  return static_cast<double>(v);
}

inline HP M(const HP& a, const HP& b, const HP& z) {
  HP t = 1, sum = 1;
  for (int n = 0; n < 100000; ++n) {
    t *= (a + n) * z / ((b + n) * (n + 1));
    sum += t;
    if (t == 0 || (n > abs(a) && n > z && abs(t) < tiny() * abs(sum))) break;
  }
  return sum;
}

inline HP U(const HP& a, HP b, const HP& z) {
  if (b == boost::multiprecision::round(b)) b += HP("1e-60");
  return boost::math::tgamma(1 - b) * rgamma(a - b + 1) * M(a, b, z) +
         boost::math::tgamma(b - 1) * rgamma(a) * pow(z, 1 - b) * M(a - b + 1, 2 - b, z);
}

inline double whittaker(bool m_kind, double a, double b, double z) {
  const HP A(a), B(b), Z(z);
  const HP pre = exp(-Z / 2) * pow(Z, B + HP(0.5));
  return static_cast<double>(pre * (m_kind ? M(B - A + HP(0.5), 1 + 2 * B, Z) : U(B - A + HP(0.5), 1 + 2 * B, Z)));
}

// ---- published grid -------------------------------------------------------------------

inline const std::vector<double>& j_orders() { static const std::vector<double> v{0, 0.5, 1, 2.5, 7.3}; return v; }
inline const std::vector<double>& j_args() {
  static const std::vector<double> v{1e-3, 0.3, 1, 2.2, 5, 11.7, 23.1, 37.9, 50};
  return v;
}
inline const std::vector<double>& k_orders() { static const std::vector<double> v{0, 0.3, 1, 2.5, 4}; return v; }
inline const std::vector<double>& k_args() {
  static const std::vector<double> v{1e-3, 0.05, 0.7, 2, 6.5, 15, 30, 50};
  return v;
}
inline const std::vector<std::pair<double, double>>& whittaker_params() {
  static const std::vector<std::pair<double, double>> v{{0.7, 0.3}, {1.5, 0},   {2.5, 1},
                                                         {-0.4, 0.8}, {3.25, 0.5}, {1.2, 1.7}};
  return v;
}
inline const std::vector<double>& whittaker_args() {
  static const std::vector<double> v{1e-3, 0.02, 0.5, 2, 7, 15, 30, 50};
  return v;
}

}  // namespace oracle
