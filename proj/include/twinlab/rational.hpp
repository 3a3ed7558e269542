#ifndef TWINLAB_RATIONAL_HPP
#define TWINLAB_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "twinlab/error.hpp"

namespace twinlab {

// Small exact rational on 64-bit parts; the covolume sums stay tiny.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  static Rat make(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 an = n < 0 ? -n : n;
    __int128 g = d;
    while (an) { __int128 t = an; an = g % an; g = t; }
    if (g > 1) { n /= g; d /= g; }
    constexpr __int128 lim = static_cast<__int128>(__INT64_MAX__);
    if (n > lim || n < -lim || d > lim) throw Error("rational overflow");
    return Rat(static_cast<long long>(n), static_cast<long long>(d));
  }

  friend Rat operator+(Rat a, Rat b) {
    return make(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator-(Rat a, Rat b) { return a + Rat(-b.num, b.den); }
  friend Rat operator*(Rat a, Rat b) {
    return make(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator/(Rat a, Rat b) {
    if (b.num == 0) throw Error("rational division by zero");
    return make(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
  }
  friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(Rat a, Rat b) { return !(a == b); }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace twinlab

#endif
