#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdu/errors.hpp"

namespace cdu {

class Field;

// Handle for one field element. `index` packs the coefficient vector of the
// element in the polynomial basis as a base-p integer (constant term least
// significant); 0 encodes the zero element. Elements remember their field and
// refuse to mix with elements of another context.
class Elem {
 public:
  Elem() = default;
  uint32_t index() const { return idx_; }
  const Field* field() const { return field_; }
  bool is_zero() const { return idx_ == 0; }

  friend bool operator==(Elem a, Elem b);
  friend bool operator!=(Elem a, Elem b) { return !(a == b); }
  friend bool operator<(Elem a, Elem b);  // by index, same field required

 private:
  friend class Field;
  Elem(uint32_t idx, const Field* f) : idx_(idx), field_(f) {}
  uint32_t idx_ = 0;
  const Field* field_ = nullptr;
};

Elem operator+(Elem a, Elem b);
Elem operator-(Elem a, Elem b);
Elem operator*(Elem a, Elem b);
Elem operator-(Elem a);

// Elements of F_{p^N} fixed by x -> x^{p^m}, i.e. the copy of F_{p^m}.
struct SubfieldView {
  uint32_t degree = 0;            // m, a divisor of N
  std::vector<uint32_t> members;  // sorted indices, exactly p^m of them
  std::vector<uint8_t> bitmap;    // size p^N membership map

  bool contains(uint32_t index) const { return bitmap[index] != 0; }
  size_t size() const { return members.size(); }
};

// Immutable description of F_{p^N}: modulus, log/antilog tables, subfield
// lattice. All operations are const and safe to share across threads.
//
// Construction validates the modulus by trial division against every monic
// polynomial of degree <= N/2 and verifies that the designated generator g
// enumerates all p^N - 1 nonzero elements.
class Field {
 public:
  static constexpr uint64_t kMaxSize = uint64_t{1} << 24;

  // Default modulus from the built-in table (p in {2,3,5,7}, bounded degree).
  static Field build(uint32_t p, uint32_t degree);
  // Explicit modulus, coefficients high-to-low (monic, degree+1 entries).
  // generator_index, when given, must be primitive (otherwise the builder
  // scans for the least primitive element by index, starting from x).
  static Field build(uint32_t p, uint32_t degree,
                     std::span<const uint32_t> modulus_high_to_low,
                     std::optional<uint32_t> generator_index = std::nullopt);
  // Field spec string "p^N" or "p^N/c_N...c_0" (digits high-to-low).
  static Field from_spec(std::string_view spec);

  // Movable for factory returns; copies are forbidden so element handles
  // cannot silently split across two contexts. Keep a field at a stable
  // address once elements reference it.
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;
  Field(Field&&) = default;
  Field& operator=(Field&&) = default;

  uint32_t p() const { return p_; }
  uint32_t degree() const { return n_; }
  uint32_t size() const { return q_; }
  // Modulus digits high-to-low, e.g. "1011011" for w^6+w^4+w^3+w+1.
  std::string modulus_string() const;
  std::string spec_string() const;  // "p^N/c_N...c_0"

  Elem zero() const { return Elem(0, this); }
  Elem one() const { return Elem(1, this); }
  Elem generator() const { return Elem(g_, this); }
  Elem from_index(uint32_t index) const;
  Elem from_int(int64_t value) const;  // prime-subfield embedding, mod p
  Elem gpow(uint64_t k) const { return Elem(exp_[k % (q_ - 1)], this); }

  // Element literal: "0", decimal integer (prime subfield, negatives ok),
  // "g", or "g^k".
  Elem parse_elem(std::string_view text) const;
  // Canonical form: indices below p print as integers, otherwise "g^k".
  std::string format_elem(Elem x) const;
  std::string format_elem_index(uint32_t index) const;
  // Coefficient-vector echo, digits high-to-low (modulus-unambiguous).
  std::string coeff_string(uint32_t index) const;

  // Checked element ops.
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;                // DivisionByZero on 0
  Elem pow(Elem a, int64_t e) const;     // any integer exponent; 0^0 = 1
  Elem rel_trace(Elem x, uint32_t m) const;
  Elem rel_norm(Elem x, uint32_t m) const;
  int quadratic_character(Elem x) const;  // p odd; -1/0/+1

  // Discrete log base g; DivisionByZero on 0.
  uint32_t log(Elem x) const;

  const SubfieldView& subfield(uint32_t m) const;  // m | N
  std::vector<uint32_t> degree_divisors() const;

  // Raw index-space ops for dense loops. No cross-field checks.
  uint32_t add_idx(uint32_t a, uint32_t b) const {
    if (!add_table_.empty()) return add_table_[size_t(a) * q_ + b];
    return add_slow(a, b);
  }
  uint32_t sub_idx(uint32_t a, uint32_t b) const { return add_idx(a, neg_[b]); }
  uint32_t neg_idx(uint32_t a) const { return neg_[a]; }
  uint32_t mul_idx(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[size_t(log_[a]) + log_[b]];
  }
  uint32_t inv_idx(uint32_t a) const;
  uint32_t pow_idx(uint32_t a, int64_t e) const;
  uint32_t exp_idx(uint64_t k) const { return exp_[k % (q_ - 1)]; }
  uint32_t log_idx(uint32_t a) const;
  // Absolute trace to the prime field, as an integer residue in [0, p).
  uint32_t trace1_int(uint32_t a) const { return tr1_[a]; }
  uint32_t rel_trace_idx(uint32_t x, uint32_t m) const;
  uint32_t rel_norm_idx(uint32_t x, uint32_t m) const;

  // Reference multiplication path: schoolbook polynomial product reduced mod
  // the modulus, bypassing the log tables. Used for cross-validation.
  uint32_t mul_poly_ref(uint32_t a, uint32_t b) const;

 private:
  Field() = default;
  void init(uint32_t p, uint32_t degree, std::vector<uint32_t> modulus_low,
            std::optional<uint32_t> generator_index);
  uint32_t add_slow(uint32_t a, uint32_t b) const;
  void check(Elem a) const;

  uint32_t p_ = 0, n_ = 0, q_ = 0, g_ = 0;
  std::vector<uint32_t> modulus_low_;  // lowest-first, monic
  std::vector<uint32_t> exp_;          // size 2(q-1)
  std::vector<uint32_t> log_;          // size q, log_[0] unused
  std::vector<uint32_t> neg_;          // size q
  std::vector<uint32_t> tr1_;          // size q, absolute trace residues
  std::vector<uint32_t> add_table_;    // q*q when q <= kAddTableMaxQ
  std::map<uint32_t, SubfieldView> subfields_;

  static constexpr uint32_t kAddTableMaxQ = 2048;
};

// Largest e with 2^e dividing k; k >= 1.
int two_valuation(uint64_t k);

// Default modulus digits (high-to-low) for p^N, or nullptr when the table has
// no entry. Table covers p=2 N<=20, p=3 N<=12, p in {5,7} N<=8.
const char* default_modulus_digits(uint32_t p, uint32_t degree);

}  // namespace cdu
