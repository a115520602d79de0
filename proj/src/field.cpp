#include "ramsey/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ramsey {

std::vector<Factor> factorize(std::uint64_t x) {
  std::vector<Factor> out;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) {
      int e = 0;
      while (x % d == 0) {
        x /= d;
        ++e;
      }
      out.push_back({d, e});
    }
  }
  if (x > 1) out.push_back({x, 1});
  return out;
}

std::string factorization_string(std::uint64_t x) {
  std::ostringstream os;
  os << x << " = ";
  auto f = factorize(x);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) os << " * ";
    os << f[i].prime;
    if (f[i].exponent > 1) os << "^" << f[i].exponent;
  }
  return os.str();
}

namespace {

// Polynomials over GF(p) as coefficient vectors, low degree first.
using Poly = std::vector<std::uint32_t>;

Poly unpack(std::uint32_t x, std::uint32_t p) {
  Poly d;
  while (x) {
    d.push_back(x % p);
    x /= p;
  }
  return d;
}

// True iff div (monic) divides a.
bool poly_divides(const Poly& div, Poly a, std::uint32_t p) {
  while (a.size() >= div.size()) {
    if (a.back() == 0) {
      a.pop_back();
      continue;
    }
    std::uint32_t coef = a.back();
    std::size_t shift = a.size() - div.size();
    for (std::size_t i = 0; i < div.size(); ++i) {
      std::uint64_t v = a[shift + i] + static_cast<std::uint64_t>(p) * p -
                        static_cast<std::uint64_t>(coef) * div[i] % p;
      a[shift + i] = static_cast<std::uint32_t>(v % p);
    }
    a.pop_back();
  }
  return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

// Smallest (by packed encoding) monic irreducible of degree n over GF(p).
// Trial division by every monic polynomial of degree <= n/2 is plenty at
// the n <= 6 scale this library targets.
Poly smallest_irreducible(std::uint32_t p, std::uint32_t n) {
  std::uint64_t limit = 1;
  for (std::uint32_t i = 0; i < n; ++i) limit *= p;
  for (std::uint64_t enc = 0; enc < limit; ++enc) {
    Poly cand = unpack(static_cast<std::uint32_t>(enc), p);
    cand.resize(n, 0);
    cand.push_back(1);
    bool irreducible = true;
    for (std::uint32_t d = 1; irreducible && d <= n / 2; ++d) {
      std::uint64_t dl = 1;
      for (std::uint32_t i = 0; i < d; ++i) dl *= p;
      for (std::uint64_t de = 0; de < dl; ++de) {
        Poly div = unpack(static_cast<std::uint32_t>(de), p);
        div.resize(d, 0);
        div.push_back(1);
        if (poly_divides(div, cand, p)) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) {
      cand.pop_back();  // keep c_0..c_{n-1}; the leading 1 is implicit
      return cand;
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

std::uint32_t FieldCtx::add_poly(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t r = 0, place = 1;
  while (a | b) {
    std::uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

std::uint32_t FieldCtx::neg_poly(std::uint32_t a) const {
  std::uint32_t r = 0, place = 1;
  while (a) {
    std::uint32_t c = a % p_;
    r += (c == 0 ? 0 : p_ - c) * place;
    a /= p_;
    place *= p_;
  }
  return r;
}

std::uint32_t FieldCtx::mul_raw(std::uint32_t a, std::uint32_t b) const {
  if (n_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  Poly pa = unpack(a, p_), pb = unpack(b, p_);
  if (pa.empty() || pb.empty()) return 0;
  Poly prod(pa.size() + pb.size() - 1, 0);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!pa[i]) continue;
    for (std::size_t j = 0; j < pb.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % p_);
    }
  }
  // reduce by the monic modulus: x^n = -(c_{n-1} x^{n-1} + ... + c_0)
  while (prod.size() > n_) {
    std::uint32_t top = prod.back();
    prod.pop_back();
    if (!top) continue;
    std::size_t base = prod.size() - n_;
    for (std::uint32_t i = 0; i < n_; ++i) {
      std::uint64_t v = prod[base + i] + static_cast<std::uint64_t>(p_) * p_ -
                        static_cast<std::uint64_t>(top) * modulus_[i] % p_;
      prod[base + i] = static_cast<std::uint32_t>(v % p_);
    }
  }
  std::uint32_t r = 0;
  for (std::size_t i = prod.size(); i-- > 0;) r = r * p_ + prod[i];
  return r;
}

void FieldCtx::init(std::uint32_t q, std::uint32_t omega_override, bool has_override) {
  if (q < 3) throw std::invalid_argument("field order must be at least 3, got " + std::to_string(q));
  auto f = factorize(q);
  if (f.size() != 1) {
    throw std::invalid_argument("field order must be a prime power: " + factorization_string(q));
  }
  q_ = q;
  p_ = static_cast<std::uint32_t>(f[0].prime);
  n_ = static_cast<std::uint32_t>(f[0].exponent);
  if (n_ > 1) modulus_ = smallest_irreducible(p_, n_);

  // Order test against the prime factorization of q-1: x has order q-1 iff
  // x^((q-1)/l) != 1 for every prime l | q-1.
  auto qm1_factors = factorize(q_ - 1);
  auto raw_pow = [&](std::uint32_t base, std::uint64_t e) {
    std::uint32_t acc = 1;
    while (e) {
      if (e & 1) acc = mul_raw(acc, base);
      base = mul_raw(base, base);
      e >>= 1;
    }
    return acc;
  };
  auto is_primitive = [&](std::uint32_t g) {
    for (const auto& pf : qm1_factors) {
      if (raw_pow(g, (q_ - 1) / pf.prime) == 1) return false;
    }
    return true;
  };

  if (has_override) {
    if (omega_override == 0 || omega_override >= q_ || !is_primitive(omega_override)) {
      throw std::invalid_argument("element " + std::to_string(omega_override) +
                                  " is not a primitive element of GF(" + std::to_string(q_) + ")");
    }
    omega_ = omega_override;
  } else {
    omega_ = 0;
    for (std::uint32_t g = 2; g < q_; ++g) {
      if (is_primitive(g)) {
        omega_ = g;
        break;
      }
    }
    if (!omega_) throw std::logic_error("no primitive element found");
  }

  exp_.assign(q_ - 1, 0);
  dlog_.assign(q_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t e = 0; e < q_ - 1; ++e) {
    exp_[e] = x;
    dlog_[x] = e;
    x = mul_raw(x, omega_);
  }
  if (x != 1) throw std::logic_error("primitive element order mismatch");
}

FieldCtx FieldCtx::build(std::uint32_t q) {
  FieldCtx ctx;
  ctx.init(q, 0, false);
  return ctx;
}

FieldCtx FieldCtx::build_with_omega(std::uint32_t q, std::uint32_t omega) {
  FieldCtx ctx;
  ctx.init(q, omega, true);
  return ctx;
}

std::uint32_t FieldCtx::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  std::uint32_t e = dlog_[a];
  return exp_[e == 0 ? 0 : q_ - 1 - e];
}

std::uint32_t FieldCtx::pow(std::uint32_t a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[dlog_[a] * (e % (q_ - 1)) % (q_ - 1)];
}

std::uint32_t FieldCtx::dlog(std::uint32_t x) const {
  if (x == 0) throw std::domain_error("discrete log of zero is undefined");
  if (x >= q_) throw std::domain_error("element out of range: " + std::to_string(x));
  return dlog_[x];
}

std::uint32_t FieldCtx::element_order(std::uint32_t x) const {
  if (x == 0) throw std::domain_error("order of zero is undefined");
  std::uint32_t e = dlog(x);
  std::uint64_t g = std::gcd<std::uint64_t>(e, q_ - 1);
  return static_cast<std::uint32_t>((q_ - 1) / g);
}

std::string FieldCtx::modulus_string() const {
  if (n_ == 1) return "x";
  std::ostringstream os;
  os << "x^" << n_;
  for (std::uint32_t i = n_; i-- > 0;) {
    std::uint32_t c = modulus_[i];
    if (!c) continue;
    os << "+";
    if (c != 1 || i == 0) os << c;
    if (i == 1) {
      os << "x";
    } else if (i > 1) {
      os << "x^" << i;
    }
  }
  return os.str();
}

std::string EdgeClass::str() const {
  switch (kind_) {
    case Kind::zero:
      return "0";
    case Kind::forward:
      return "F" + std::to_string(color_);
    case Kind::backward:
      return "B" + std::to_string(color_);
  }
  return "?";
}

ResidueSystem::ResidueSystem(std::shared_ptr<const FieldCtx> field, std::uint32_t k)
    : field_(std::move(field)), k_(k) {
  if (k_ < 2 || k_ % 2 != 0) {
    throw std::invalid_argument("k must be a positive even integer, got " + std::to_string(k_));
  }
  std::uint32_t q = field_->order();
  if (!is_admissible(k_, q)) {
    throw std::invalid_argument("q = " + std::to_string(q) + " violates q = k+1 (mod 2k) for k = " +
                                std::to_string(k_));
  }
}

ResidueSystem ResidueSystem::build(std::uint32_t k, std::uint32_t q) {
  return ResidueSystem(std::make_shared<const FieldCtx>(FieldCtx::build(q)), k);
}

bool is_admissible(std::uint32_t k, std::uint32_t q) {
  if (k < 2 || k % 2 != 0) return false;
  if (q < 3 || q % (2 * k) != (k + 1) % (2 * k)) return false;
  return factorize(q).size() == 1;
}

std::vector<std::uint32_t> admissible_q(std::uint32_t k, std::uint32_t q_max) {
  if (k < 2 || k % 2 != 0) {
    throw std::invalid_argument("k must be a positive even integer, got " + std::to_string(k));
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = k + 1; q <= q_max; q += 2 * k) {
    if (q >= 3 && factorize(q).size() == 1) out.push_back(q);
  }
  return out;
}

}  // namespace ramsey
