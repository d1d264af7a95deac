#include "polariscope/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace polariscope {
namespace {

// Factorials enter the Racah formulas only as ratios under a square
// root or inside alternating sums.  Carrying them as prime-exponent
// vectors keeps each term exactly represented until the final
// floating-point evaluation, which limits cancellation for the spin
// range used here (j <= ~8).
constexpr int kMaxN = 80;

const std::vector<int>& primes() {
  static const std::vector<int> p = [] {
    std::vector<int> out;
    for (int n = 2; n <= kMaxN; ++n) {
      bool prime = true;
      for (int d : out) {
        if (d * d > n) break;
        if (n % d == 0) { prime = false; break; }
      }
      if (prime) out.push_back(n);
    }
    return out;
  }();
  return p;
}

// Prime exponents of n! by Legendre's formula.
const std::vector<std::vector<int>>& factorial_exponents() {
  static const std::vector<std::vector<int>> table = [] {
    const auto& ps = primes();
    std::vector<std::vector<int>> t(kMaxN + 1, std::vector<int>(ps.size(), 0));
    for (int n = 2; n <= kMaxN; ++n) {
      t[n] = t[n - 1];
      int m = n;
      for (size_t i = 0; i < ps.size() && ps[i] <= m; ++i) {
        while (m % ps[i] == 0) {
          ++t[n][i];
          m /= ps[i];
        }
      }
    }
    return t;
  }();
  return table;
}

class FactRatio {
public:
  FactRatio() : e_(primes().size(), 0) {}

  // Multiplies by (n!)^sign.  n must be >= 0.
  void mul_fact(int n, int sign = 1) {
    const auto& fe = factorial_exponents().at(n);
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += sign * fe[i];
  }
  void mul_int(int n, int sign = 1) {
    const auto& ps = primes();
    for (size_t i = 0; i < ps.size() && n > 1; ++i) {
      while (n % ps[i] == 0) {
        e_[i] += sign;
        n /= ps[i];
      }
    }
  }

  // Evaluates the ratio raised to the given power (0.5 for the square
  // root prefactors).
  long double value(long double power = 1.0L) const {
    const auto& ps = primes();
    long double v = 1.0L;
    for (size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] != 0) v *= std::pow((long double)ps[i], power * e_[i]);
    }
    return v;
  }

private:
  std::vector<int> e_;
};

// Sum of half-integers as a plain integer; caller guarantees parity.
int as_int(HalfInt h) {
  if (h.twice() % 2 != 0) throw std::logic_error("half-integer where integer expected");
  return h.twice() / 2;
}

// Triangle coefficient Delta(a,b,c) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!
void mul_triangle(FactRatio& r, HalfInt a, HalfInt b, HalfInt c, int sign) {
  r.mul_fact(as_int(a + b - c), sign);
  r.mul_fact(as_int(a - b + c), sign);
  r.mul_fact(as_int(-a + b + c), sign);
  r.mul_fact(as_int(a + b + c) + 1, -sign);
}

}  // namespace

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                      HalfInt J, HalfInt M) {
  if (!j1.valid_projection(m1) || !j2.valid_projection(m2) ||
      !J.valid_projection(M)) {
    throw std::domain_error("clebsch_gordan: invalid projection for spin");
  }
  if ((m1 + m2) != M) return 0.0;
  if (!triangle_ok(j1, j2, J)) return 0.0;

  FactRatio pre;
  pre.mul_int(J.twice() + 1);  // 2J+1
  mul_triangle(pre, j1, j2, J, +1);
  pre.mul_fact(as_int(J + M));
  pre.mul_fact(as_int(J - M));
  pre.mul_fact(as_int(j1 - m1));
  pre.mul_fact(as_int(j1 + m1));
  pre.mul_fact(as_int(j2 - m2));
  pre.mul_fact(as_int(j2 + m2));

  const int kmin = std::max({0, as_int(j2 - J - m1), as_int(j1 + m2 - J)});
  const int kmax =
      std::min({as_int(j1 + j2 - J), as_int(j1 - m1), as_int(j2 + m2)});

  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    FactRatio term;
    term.mul_fact(k, -1);
    term.mul_fact(as_int(j1 + j2 - J) - k, -1);
    term.mul_fact(as_int(j1 - m1) - k, -1);
    term.mul_fact(as_int(j2 + m2) - k, -1);
    term.mul_fact(as_int(J - j2 + m1) + k, -1);
    term.mul_fact(as_int(J - j1 - m2) + k, -1);
    sum += (k % 2 == 0 ? 1.0L : -1.0L) * term.value();
  }
  return static_cast<double>(pre.value(0.5L) * sum);
}

double wigner6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5,
                HalfInt j6) {
  // Invalid triads return 0 by convention.
  if (!triangle_ok(j1, j2, j3) || !triangle_ok(j1, j5, j6) ||
      !triangle_ok(j4, j2, j6) || !triangle_ok(j4, j5, j3)) {
    return 0.0;
  }

  FactRatio pre;
  mul_triangle(pre, j1, j2, j3, +1);
  mul_triangle(pre, j1, j5, j6, +1);
  mul_triangle(pre, j4, j2, j6, +1);
  mul_triangle(pre, j4, j5, j3, +1);

  const int a1 = as_int(j1 + j2 + j3);
  const int a2 = as_int(j1 + j5 + j6);
  const int a3 = as_int(j4 + j2 + j6);
  const int a4 = as_int(j4 + j5 + j3);
  const int b1 = as_int(j1 + j2 + j4 + j5);
  const int b2 = as_int(j2 + j3 + j5 + j6);
  const int b3 = as_int(j3 + j1 + j6 + j4);

  const int tmin = std::max({a1, a2, a3, a4});
  const int tmax = std::min({b1, b2, b3});

  long double sum = 0.0L;
  for (int t = tmin; t <= tmax; ++t) {
    FactRatio term;
    term.mul_fact(t + 1);
    term.mul_fact(t - a1, -1);
    term.mul_fact(t - a2, -1);
    term.mul_fact(t - a3, -1);
    term.mul_fact(t - a4, -1);
    term.mul_fact(b1 - t, -1);
    term.mul_fact(b2 - t, -1);
    term.mul_fact(b3 - t, -1);
    sum += (t % 2 == 0 ? 1.0L : -1.0L) * term.value();
  }
  return static_cast<double>(pre.value(0.5L) * sum);
}

}  // namespace polariscope
