#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ramsey {

struct Factor {
  std::uint64_t prime;
  int exponent;
};

std::vector<Factor> factorize(std::uint64_t x);
std::string factorization_string(std::uint64_t x);

/// The finite field GF(p^n), q = p^n, with full exp/dlog tables.
///
/// Elements are encoded as integers in [0, q) by base-p packing of the
/// coefficients of their polynomial representation: sum c_i x^i maps to
/// sum c_i p^i. Encoding 0 is the additive identity, 1 the multiplicative
/// identity. The construction is canonical so that independent runs agree
/// bit for bit:
///   - for n > 1 the modulus is the monic irreducible of degree n whose
///     coefficient tuple (c_{n-1}, ..., c_0) is lexicographically smallest,
///     which is the smallest packed encoding;
///   - omega is the smallest element encoding of multiplicative order q-1.
class FieldCtx {
 public:
  static FieldCtx build(std::uint32_t q);
  // Same tables rebuilt on a caller-chosen primitive element. Rejects
  // elements whose order is not q-1.
  static FieldCtx build_with_omega(std::uint32_t q, std::uint32_t omega);

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return n_; }
  std::uint32_t omega() const { return omega_; }

  // Coefficients c_0..c_{n-1} of the monic modulus x^n + ...; empty for n = 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::string modulus_string() const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (n_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_poly(a, b);
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (n_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_poly(a);
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = dlog_[a] + dlog_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }

  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  /// omega^e for e in [0, q-1); larger exponents are reduced mod q-1.
  std::uint32_t exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

  /// Discrete log base omega; throws std::domain_error on x = 0.
  std::uint32_t dlog(std::uint32_t x) const;

  std::uint32_t element_order(std::uint32_t x) const;

 private:
  FieldCtx() = default;
  void init(std::uint32_t q, std::uint32_t omega_override, bool has_override);
  std::uint32_t add_poly(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg_poly(std::uint32_t a) const;
  std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t q_ = 0, p_ = 0, n_ = 0, omega_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;   // size q-1
  std::vector<std::uint32_t> dlog_;  // size q; slot 0 unused
};

/// One oriented, colored arc slot: either no arc in any color (Zero, the
/// digon case), or an arc u->v in color i (Forward(i)), or v->u in color i
/// (Backward(i)). Colors run 1..k/2.
class EdgeClass {
 public:
  enum class Kind : std::uint8_t { zero, forward, backward };

  constexpr EdgeClass() = default;
  static constexpr EdgeClass zero() { return {}; }
  static constexpr EdgeClass forward(std::uint32_t color) {
    return EdgeClass(Kind::forward, color);
  }
  static constexpr EdgeClass backward(std::uint32_t color) {
    return EdgeClass(Kind::backward, color);
  }

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::zero; }
  bool is_forward() const { return kind_ == Kind::forward; }
  bool is_backward() const { return kind_ == Kind::backward; }
  std::uint32_t color() const { return color_; }

  EdgeClass reversed() const {
    if (kind_ == Kind::zero) return *this;
    return EdgeClass(kind_ == Kind::forward ? Kind::backward : Kind::forward, color_);
  }

  std::string str() const;

  friend bool operator==(const EdgeClass&, const EdgeClass&) = default;

 private:
  constexpr EdgeClass(Kind k, std::uint32_t c) : kind_(k), color_(static_cast<std::uint8_t>(c)) {}
  Kind kind_ = Kind::zero;
  std::uint8_t color_ = 0;
};

/// k-th power coset structure over a field with q = k+1 (mod 2k):
/// S_k is the subgroup of k-th power residues, S_{k,i} = omega^{i-1} S_k for
/// i = 1..k/2, and -S_{k,i} fills the other half of the nonzero elements.
class ResidueSystem {
 public:
  ResidueSystem(std::shared_ptr<const FieldCtx> field, std::uint32_t k);
  static ResidueSystem build(std::uint32_t k, std::uint32_t q);

  const FieldCtx& field() const { return *field_; }
  std::shared_ptr<const FieldCtx> field_ptr() const { return field_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t half() const { return k_ / 2; }
  std::uint32_t coset_size() const { return (field_->order() - 1) / k_; }

  /// Classifies x: Zero, or Forward(i) when x in S_{k,i}, or Backward(i)
  /// when x in -S_{k,i}.
  EdgeClass pair_class(std::uint32_t x) const {
    if (x == 0) return EdgeClass::zero();
    std::uint32_t r = field_->dlog(x) % k_;
    if (r < k_ / 2) return EdgeClass::forward(r + 1);
    return EdgeClass::backward(r - k_ / 2 + 1);
  }

 private:
  std::shared_ptr<const FieldCtx> field_;
  std::uint32_t k_;
};

bool is_admissible(std::uint32_t k, std::uint32_t q);

/// All prime powers q <= q_max with q = k+1 (mod 2k), ascending.
std::vector<std::uint32_t> admissible_q(std::uint32_t k, std::uint32_t q_max);

}  // namespace ramsey
