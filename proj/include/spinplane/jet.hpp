#pragma once
// Truncated multivariate Taylor polynomials (forward-mode AD of arbitrary order).
//
// A Jet<T, NV, K> holds the Taylor coefficients c_{ij} of a function of NV (1 or 2)
// variables about a point, up to total degree K:
//     f(x0 + d) = sum_{i+j<=K} c_{ij} d1^i d2^j.
// Derivatives are recovered as i! j! c_{ij}.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <type_traits>

namespace spinplane {

using cplx = std::complex<double>;

namespace detail {

constexpr int jet_size(int nv, int k) { return nv == 1 ? k + 1 : (k + 1) * (k + 2) / 2; }

template <int NV, int K>
struct JetLayout {
  static constexpr int N = jet_size(NV, K);
  std::array<std::array<int, 2>, N> exps{};
  std::array<std::array<int, N>, N> prod{};   // index of exps[a]+exps[b], or -1

  static constexpr int index(int i, int j) {
    if constexpr (NV == 1) {
      return j == 0 && i <= K ? i : -1;
    } else {
      const int d = i + j;
      return d <= K ? d * (d + 1) / 2 + j : -1;
    }
  }

  constexpr JetLayout() {
    int idx = 0;
    for (int d = 0; d <= K; ++d) {
      if constexpr (NV == 1) {
        exps[idx++] = {d, 0};
      } else {
        for (int j = 0; j <= d; ++j) exps[idx++] = {d - j, j};
      }
    }
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        prod[a][b] = index(exps[a][0] + exps[b][0], exps[a][1] + exps[b][1]);
  }
};

template <class T> struct is_complex : std::false_type {};
template <class T> struct is_complex<std::complex<T>> : std::true_type {};

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace detail

template <class S>
concept JetScalar = std::is_arithmetic_v<S> || detail::is_complex<S>::value;

template <class T, int NV, int K>
class Jet {
  static_assert(NV == 1 || NV == 2, "jets of one or two variables");
  static_assert(K >= 0);

 public:
  using value_type = T;
  static constexpr int nvars = NV;
  static constexpr int order = K;
  static constexpr int size = detail::jet_size(NV, K);
  static constexpr detail::JetLayout<NV, K> layout{};

  std::array<T, size> c{};

  Jet() = default;
  Jet(T v) { c[0] = v; }  // NOLINT: constants promote implicitly
  template <class U>
    requires(std::is_arithmetic_v<U> && !std::is_same_v<U, T>)
  Jet(U v) { c[0] = T(v); }  // NOLINT

  // Independent variable v (0 or 1) expanded about x0.
  static Jet variable(T x0, int v = 0) {
    Jet r(x0);
    if constexpr (K >= 1) r.c[1 + v] = T(1);
    return r;
  }

  const T& value() const { return c[0]; }
  T coeff(int i, int j = 0) const {
    const int k = layout.index(i, j);
    return k < 0 ? T(0) : c[k];
  }
  T derivative(int i, int j = 0) const {
    return coeff(i, j) * detail::factorial(i) * detail::factorial(j);
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k < size; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k < size; ++k) c[k] -= o.c[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }
  template <JetScalar S>
  Jet& operator*=(S s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  Jet operator-() const {
    Jet r;
    for (int k = 0; k < size; ++k) r.c[k] = -c[k];
    return r;
  }

  // Same jet, with the constant term removed.
  Jet nilpotent() const {
    Jet r = *this;
    r.c[0] = T(0);
    return r;
  }
};

template <class T> struct is_jet : std::false_type {};
template <class T, int NV, int K> struct is_jet<Jet<T, NV, K>> : std::true_type {};
template <class T> inline constexpr bool is_jet_v = is_jet<std::remove_cvref_t<T>>::value;

// ---- arithmetic ---------------------------------------------------------------

template <class A, class B, int NV, int K>
auto operator*(const Jet<A, NV, K>& x, const Jet<B, NV, K>& y) {
  using R = decltype(A{} * B{});
  Jet<R, NV, K> r;
  constexpr auto& L = Jet<R, NV, K>::layout;
  for (int a = 0; a < Jet<R, NV, K>::size; ++a) {
    if (x.c[a] == A(0)) continue;
    for (int b = 0; b < Jet<R, NV, K>::size; ++b) {
      const int p = L.prod[a][b];
      if (p >= 0) r.c[p] += x.c[a] * y.c[b];
    }
  }
  return r;
}

template <class A, class B, int NV, int K>
auto operator+(const Jet<A, NV, K>& x, const Jet<B, NV, K>& y) {
  using R = decltype(A{} + B{});
  Jet<R, NV, K> r;
  for (int k = 0; k < Jet<R, NV, K>::size; ++k) r.c[k] = x.c[k] + y.c[k];
  return r;
}

template <class A, class B, int NV, int K>
auto operator-(const Jet<A, NV, K>& x, const Jet<B, NV, K>& y) {
  using R = decltype(A{} - B{});
  Jet<R, NV, K> r;
  for (int k = 0; k < Jet<R, NV, K>::size; ++k) r.c[k] = x.c[k] - y.c[k];
  return r;
}

template <class T, int NV, int K, JetScalar S>
auto operator*(const Jet<T, NV, K>& x, S s) {
  using R = decltype(T{} * s);
  Jet<R, NV, K> r;
  for (int k = 0; k < Jet<R, NV, K>::size; ++k) r.c[k] = x.c[k] * s;
  return r;
}
template <class T, int NV, int K, JetScalar S>
auto operator*(S s, const Jet<T, NV, K>& x) {
  return x * s;
}
template <class T, int NV, int K, JetScalar S>
auto operator/(const Jet<T, NV, K>& x, S s) {
  using R = decltype(T{} / s);
  Jet<R, NV, K> r;
  for (int k = 0; k < Jet<R, NV, K>::size; ++k) r.c[k] = x.c[k] / s;
  return r;
}
template <class T, int NV, int K, JetScalar S>
auto operator+(const Jet<T, NV, K>& x, S s) {
  using R = decltype(T{} + s);
  Jet<R, NV, K> r;
  for (int k = 0; k < Jet<R, NV, K>::size; ++k) r.c[k] = x.c[k];
  r.c[0] += s;
  return r;
}
template <class T, int NV, int K, JetScalar S>
auto operator+(S s, const Jet<T, NV, K>& x) {
  return x + s;
}
template <class T, int NV, int K, JetScalar S>
auto operator-(const Jet<T, NV, K>& x, S s) {
  return x + (-s);
}
template <class T, int NV, int K, JetScalar S>
auto operator-(S s, const Jet<T, NV, K>& x) {
  return (-x) + s;
}

// f(u) = sum_n a[n] (u - u0)^n, a[n] = f^{(n)}(u0)/n!
template <class T, int NV, int K, class A>
Jet<T, NV, K> compose(const Jet<T, NV, K>& u, const A& a) {
  const Jet<T, NV, K> d = u.nilpotent();
  Jet<T, NV, K> r{T(a[K])};
  for (int n = K - 1; n >= 0; --n) {
    r = r * d;
    r.c[0] += T(a[n]);
  }
  return r;
}

template <class T, int NV, int K>
Jet<T, NV, K> reciprocal(const Jet<T, NV, K>& u) {
  const T u0 = u.c[0];
  if (u0 == T(0)) throw std::domain_error("jet reciprocal of zero");
  std::array<T, K + 1> a;
  T p = T(1) / u0;
  for (int n = 0; n <= K; ++n) {
    a[n] = (n % 2 ? -p : p);
    p /= u0;
  }
  return compose(u, a);
}

template <class A, class B, int NV, int K>
auto operator/(const Jet<A, NV, K>& x, const Jet<B, NV, K>& y) {
  return x * reciprocal(y);
}
template <class T, int NV, int K, JetScalar S>
auto operator/(S s, const Jet<T, NV, K>& x) {
  return reciprocal(x) * s;
}

// ---- elementary functions ----------------------------------------------------

template <class T, int NV, int K>
Jet<T, NV, K> exp(const Jet<T, NV, K>& u) {
  using std::exp;
  std::array<T, K + 1> a;
  const T e = exp(u.c[0]);
  for (int n = 0; n <= K; ++n) a[n] = e / detail::factorial(n);
  return compose(u, a);
}

template <class T, int NV, int K>
Jet<T, NV, K> log(const Jet<T, NV, K>& u) {
  using std::log;
  std::array<T, K + 1> a;
  const T u0 = u.c[0];
  a[0] = log(u0);
  T p = T(1);
  for (int n = 1; n <= K; ++n) {
    p /= u0;
    a[n] = (n % 2 ? p : -p) / double(n);
  }
  return compose(u, a);
}

template <class T, int NV, int K>
Jet<T, NV, K> sin(const Jet<T, NV, K>& u) {
  using std::cos;
  using std::sin;
  const T s = sin(u.c[0]), co = cos(u.c[0]);
  std::array<T, K + 1> a;
  for (int n = 0; n <= K; ++n) {
    const T v = (n % 4 == 0) ? s : (n % 4 == 1) ? co : (n % 4 == 2) ? -s : -co;
    a[n] = v / detail::factorial(n);
  }
  return compose(u, a);
}

template <class T, int NV, int K>
Jet<T, NV, K> cos(const Jet<T, NV, K>& u) {
  using std::cos;
  using std::sin;
  const T s = sin(u.c[0]), co = cos(u.c[0]);
  std::array<T, K + 1> a;
  for (int n = 0; n <= K; ++n) {
    const T v = (n % 4 == 0) ? co : (n % 4 == 1) ? -s : (n % 4 == 2) ? -co : s;
    a[n] = v / detail::factorial(n);
  }
  return compose(u, a);
}

template <class T, int NV, int K>
Jet<T, NV, K> sinh(const Jet<T, NV, K>& u) {
  using std::cosh;
  using std::sinh;
  const T s = sinh(u.c[0]), ch = cosh(u.c[0]);
  std::array<T, K + 1> a;
  for (int n = 0; n <= K; ++n) a[n] = (n % 2 ? ch : s) / detail::factorial(n);
  return compose(u, a);
}

template <class T, int NV, int K>
Jet<T, NV, K> cosh(const Jet<T, NV, K>& u) {
  using std::cosh;
  using std::sinh;
  const T s = sinh(u.c[0]), ch = cosh(u.c[0]);
  std::array<T, K + 1> a;
  for (int n = 0; n <= K; ++n) a[n] = (n % 2 ? s : ch) / detail::factorial(n);
  return compose(u, a);
}

template <class T, int NV, int K>
Jet<T, NV, K> tanh(const Jet<T, NV, K>& u) {
  return sinh(u) / cosh(u);
}

// u^p for real p (u0 > 0 unless p is a nonnegative integer)
template <class T, int NV, int K>
Jet<T, NV, K> pow(const Jet<T, NV, K>& u, double p) {
  using std::pow;
  std::array<T, K + 1> a;
  const T u0 = u.c[0];
  double binom = 1.0;
  for (int n = 0; n <= K; ++n) {
    a[n] = binom * pow(u0, p - n);
    binom *= (p - n) / (n + 1);
  }
  return compose(u, a);
}

template <class T, int NV, int K>
Jet<T, NV, K> sqrt(const Jet<T, NV, K>& u) {
  return pow(u, 0.5);
}

template <class T, int NV, int K>
Jet<T, NV, K> square(const Jet<T, NV, K>& u) {
  return u * u;
}
inline double square(double x) { return x * x; }

template <int NV, int K>
Jet<double, NV, K> atan(const Jet<double, NV, K>& u) {
  const double u0 = u.c[0];
  // 1/(1 + (u0+t)^2) as a series in t, then integrate
  const double q0 = 1.0 + u0 * u0, q1 = 2.0 * u0;
  std::array<double, K + 1> g{}, a{};
  g[0] = 1.0 / q0;
  for (int n = 1; n < K; ++n) {
    double s = q1 * g[n - 1];
    if (n >= 2) s += g[n - 2];
    g[n] = -s / q0;
  }
  a[0] = std::atan(u0);
  for (int n = 1; n <= K; ++n) a[n] = g[n - 1] / n;
  return compose(u, a);
}

template <int NV, int K>
Jet<double, NV, K> atan2(const Jet<double, NV, K>& y, const Jet<double, NV, K>& x) {
  const double th = std::atan2(y.c[0], x.c[0]);
  Jet<double, NV, K> r;
  if (std::abs(x.c[0]) >= std::abs(y.c[0])) {
    r = atan(y / x);
  } else {
    r = -atan(x / y);
  }
  r.c[0] = th;
  return r;
}

template <class T, int NV, int K>
Jet<T, NV, K> hypot(const Jet<T, NV, K>& x, const Jet<T, NV, K>& y) {
  return sqrt(x * x + y * y);
}

// ---- derivatives and truncation ----------------------------------------------

// Partial derivative with respect to variable v; the top-degree coefficients of the
// result are unknown and set to zero (callers track the remaining valid order).
template <class T, int NV, int K>
Jet<T, NV, K> diff(const Jet<T, NV, K>& u, int v) {
  Jet<T, NV, K> r;
  constexpr auto& L = Jet<T, NV, K>::layout;
  for (int k = 0; k < Jet<T, NV, K>::size; ++k) {
    int i = L.exps[k][0], j = L.exps[k][1];
    if (v == 0) {
      const int s = L.index(i + 1, j);
      if (s >= 0) r.c[k] = u.c[s] * double(i + 1);
    } else {
      const int s = L.index(i, j + 1);
      if (s >= 0) r.c[k] = u.c[s] * double(j + 1);
    }
  }
  return r;
}

template <int K2, class T, int NV, int K>
Jet<T, NV, K2> truncate(const Jet<T, NV, K>& u) {
  static_assert(K2 <= K);
  Jet<T, NV, K2> r;
  for (int k = 0; k < Jet<T, NV, K2>::size; ++k) r.c[k] = u.c[k];
  return r;
}

template <class T, int NV, int K>
auto real_part(const Jet<T, NV, K>& u) {
  Jet<double, NV, K> r;
  for (int k = 0; k < Jet<T, NV, K>::size; ++k) r.c[k] = std::real(u.c[k]);
  return r;
}

template <int NV, int K>
Jet<cplx, NV, K> to_complex(const Jet<double, NV, K>& u) {
  Jet<cplx, NV, K> r;
  for (int k = 0; k < Jet<double, NV, K>::size; ++k) r.c[k] = u.c[k];
  return r;
}
inline cplx to_complex(double x) { return cplx(x, 0.0); }
inline cplx to_complex(cplx x) { return x; }
template <int NV, int K>
const Jet<cplx, NV, K>& to_complex(const Jet<cplx, NV, K>& u) {
  return u;
}

// Complex scalar for a real scalar type: double -> cplx, real jet -> complex jet.
template <class S> struct complex_of { using type = cplx; };
template <class T, int NV, int K> struct complex_of<Jet<T, NV, K>> {
  using type = Jet<cplx, NV, K>;
};
template <class S> using complex_of_t = typename complex_of<S>::type;

// Value of a scalar or jet.
inline double value_of(double x) { return x; }
inline cplx value_of(cplx x) { return x; }
template <class T, int NV, int K>
T value_of(const Jet<T, NV, K>& u) {
  return u.c[0];
}

// ---- fixed working types -----------------------------------------------------

inline constexpr int kPlaneOrder = 5;  // derivatives available in the plane
inline constexpr int kLineOrder = 8;   // derivatives available on a line

using Jet2 = Jet<double, 2, kPlaneOrder>;
using CJet2 = Jet<cplx, 2, kPlaneOrder>;
using Jet1 = Jet<double, 1, kLineOrder>;
using CJet1 = Jet<cplx, 1, kLineOrder>;

// A smooth scalar profile t -> f(t) written once over Jet1 (which also covers plain
// evaluation through the constant term).  Used for the free functions f1, f2, ...
using Profile = std::function<Jet1(const Jet1&)>;

inline double eval_profile(const Profile& f, double t) { return f(Jet1(t)).value(); }

template <int NV, int K>
Jet<double, NV, K> eval_profile(const Profile& f, const Jet<double, NV, K>& u) {
  static_assert(K <= kLineOrder, "profile order too low for this jet");
  const Jet1 t = f(Jet1::variable(u.c[0]));
  std::array<double, K + 1> a;
  for (int n = 0; n <= K; ++n) a[n] = t.c[n];
  return compose(u, a);
}

}  // namespace spinplane
