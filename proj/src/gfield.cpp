#include "twinlab/gfield.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace twinlab {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Poly = std::vector<std::uint32_t>;  // coefficients mod p, constant first

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  // m monic of degree dm
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    if (lead != 0)
      for (std::size_t i = 0; i <= dm; ++i) {
        std::uint32_t& c = a[i + shift];
        c = (c + p - (lead * m[i]) % p) % p;
      }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), m, p);
}

// Trial division by every monic polynomial of degree 1..k/2.
bool poly_irreducible(const Poly& m, std::uint32_t p) {
  const std::size_t k = m.size() - 1;
  for (std::size_t d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly div(d + 1, 0);
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < d; ++i) { div[i] = t % p; t /= p; }
      div[d] = 1;
      // remainder of m modulo div
      Poly r = poly_mod(m, div, p);
      if (r.empty()) return false;
    }
  }
  return true;
}

std::uint32_t pack(const Poly& a, std::uint32_t p) {
  std::uint32_t v = 0, mul = 1;
  for (std::size_t i = 0; i < a.size(); ++i) { v += a[i] * mul; mul *= p; }
  return v;
}

Poly unpack(std::uint32_t v, std::uint32_t p, std::uint32_t k) {
  Poly a(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) { a[i] = v % p; v /= p; }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

}  // namespace

void FieldCtx::require_same(FieldElem a, FieldElem b) const {
  if (a.ctx != this || b.ctx != this)
    throw Error("field context mismatch");
}

FieldElem FieldCtx::from_int(std::uint64_t n) const {
  if (k == 1) return {this, static_cast<std::uint32_t>(n % p)};
  // interpret n base p digit-wise, reducing each digit
  Poly a;
  while (n) { a.push_back(static_cast<std::uint32_t>(n % p)); n /= p; }
  if (a.size() > k) a.resize(k);
  return {this, pack(a, p)};
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
  require_same(a, b);
  if (k == 1) return {this, (a.v + b.v) % p};
  Poly x = unpack(a.v, p, k), y = unpack(b.v, p, k);
  if (x.size() < y.size()) x.swap(y);
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = (x[i] + y[i]) % p;
  return {this, pack(x, p)};
}

FieldElem FieldCtx::neg(FieldElem a) const {
  require_same(a, a);
  if (k == 1) return {this, (p - a.v) % p};
  Poly x = unpack(a.v, p, k);
  for (auto& c : x) c = (p - c) % p;
  return {this, pack(x, p)};
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
  require_same(a, b);
  if (k == 1) return {this, (a.v * b.v) % p};
  Poly x = unpack(a.v, p, k), y = unpack(b.v, p, k);
  return {this, pack(poly_mulmod(x, y, modulus, p), p)};
}

FieldElem FieldCtx::pow(FieldElem a, long long e) const {
  require_same(a, a);
  long long m = static_cast<long long>(q) - 1;  // multiplicative order divides q-1
  if (a.is_zero()) {
    if (e < 0) throw Error("inversion of zero");
    return e == 0 ? one() : zero();
  }
  e %= m;
  if (e < 0) e += m;
  FieldElem r = one(), base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FieldElem FieldCtx::inv(FieldElem a) const {
  require_same(a, a);
  if (a.is_zero()) throw Error("inversion of zero in GF(" + name() + ")");
  return pow(a, -1);
}

const FieldCtx* field_new(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw Error("field characteristic must be prime: " + std::to_string(p));
  if (k < 1) throw Error("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > (1u << 16)) throw Error("field size exceeds 2^16");
  }

  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FieldCtx>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[{p, k}];
  if (!slot) {
    auto ctx = std::unique_ptr<FieldCtx>(new FieldCtx());
    ctx->p = p;
    ctx->k = k;
    ctx->q = static_cast<std::uint32_t>(q);
    if (k == 1) {
      ctx->modulus = {0, 1};  // placeholder x
    } else {
      // smallest non-leading coefficient vector, read as a base-p integer
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < k; ++i) count *= p;
      bool found = false;
      for (std::uint64_t idx = 0; idx < count && !found; ++idx) {
        Poly m(k + 1, 0);
        std::uint64_t t = idx;
        for (std::uint32_t i = 0; i < k; ++i) { m[i] = static_cast<std::uint32_t>(t % p); t /= p; }
        m[k] = 1;
        if (poly_irreducible(m, p)) {
          ctx->modulus = m;
          found = true;
        }
      }
      if (!found) throw Error("no irreducible modulus found");  // cannot happen
    }
    slot = std::move(ctx);
  }
  return slot.get();
}

const FieldCtx* parse_field(const std::string& spec) {
  auto pos = spec.find('^');
  try {
    if (pos == std::string::npos)
      return field_new(static_cast<std::uint32_t>(std::stoul(spec)), 1);
    return field_new(static_cast<std::uint32_t>(std::stoul(spec.substr(0, pos))),
                     static_cast<std::uint32_t>(std::stoul(spec.substr(pos + 1))));
  } catch (const std::logic_error&) {
    throw Error("bad field spec '" + spec + "' (expected p or p^k)");
  }
}

}  // namespace twinlab
