#include "cdu/field.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace cdu {

namespace {

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Dense polynomial arithmetic over F_p, lowest-first coefficient vectors.
using Poly = std::vector<uint32_t>;

void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod d, d monic; in place.
void poly_mod(Poly& f, const Poly& d, uint32_t p) {
  while (f.size() >= d.size()) {
    uint32_t c = f.back();
    if (c != 0) {
      size_t shift = f.size() - d.size();
      for (size_t j = 0; j < d.size(); ++j) {
        uint64_t t = uint64_t(c) * d[j] % p;
        f[shift + j] = uint32_t((f[shift + j] + p - t) % p);
      }
    }
    f.pop_back();
    poly_trim(f);
    if (f.empty()) break;
  }
}

bool poly_divides(const Poly& d, Poly f, uint32_t p) {
  poly_mod(f, d, p);
  return f.empty();
}

}  // namespace

bool operator==(Elem a, Elem b) {
  if (a.field_ != b.field_)
    throw FieldMismatch("comparing elements of different fields");
  return a.idx_ == b.idx_;
}

bool operator<(Elem a, Elem b) {
  if (a.field() != b.field())
    throw FieldMismatch("ordering elements of different fields");
  return a.index() < b.index();
}

Elem operator+(Elem a, Elem b) { return a.field()->add(a, b); }
Elem operator-(Elem a, Elem b) { return a.field()->sub(a, b); }
Elem operator*(Elem a, Elem b) { return a.field()->mul(a, b); }
Elem operator-(Elem a) { return a.field()->neg(a); }

Field Field::build(uint32_t p, uint32_t degree) {
  const char* digits = default_modulus_digits(p, degree);
  if (!is_prime(p)) throw NotPrime("characteristic " + std::to_string(p) + " is not prime");
  if (degree == 0) throw DegreeMismatch("extension degree must be positive");
  if (!digits)
    throw SpecError("no default modulus for " + std::to_string(p) + "^" +
                    std::to_string(degree) + "; supply one explicitly");
  std::vector<uint32_t> high;
  for (const char* c = digits; *c; ++c) high.push_back(uint32_t(*c - '0'));
  return build(p, degree, high);
}

Field Field::build(uint32_t p, uint32_t degree,
                   std::span<const uint32_t> modulus_high_to_low,
                   std::optional<uint32_t> generator_index) {
  Field f;
  if (!is_prime(p)) throw NotPrime("characteristic " + std::to_string(p) + " is not prime");
  if (degree == 0) throw DegreeMismatch("extension degree must be positive");
  if (modulus_high_to_low.size() != degree + 1)
    throw DegreeMismatch("modulus must have degree+1 coefficients");
  std::vector<uint32_t> low(modulus_high_to_low.rbegin(), modulus_high_to_low.rend());
  f.init(p, degree, std::move(low), generator_index);
  return f;
}

Field Field::from_spec(std::string_view spec) {
  size_t caret = spec.find('^');
  if (caret == std::string_view::npos)
    throw SpecError("field spec must look like p^N or p^N/digits: " + std::string(spec));
  size_t slash = spec.find('/', caret);
  auto parse_u32 = [&](std::string_view s) {
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw SpecError("bad number in field spec: " + std::string(s));
    return v;
  };
  uint32_t p = parse_u32(spec.substr(0, caret));
  uint32_t n = parse_u32(spec.substr(caret + 1, (slash == std::string_view::npos
                                                     ? spec.size()
                                                     : slash) - caret - 1));
  if (slash == std::string_view::npos) return build(p, n);
  std::string_view digits = spec.substr(slash + 1);
  std::vector<uint32_t> high;
  for (char c : digits) {
    if (c < '0' || c > '9') throw SpecError("modulus digits must be decimal");
    high.push_back(uint32_t(c - '0'));
  }
  return build(p, n, high);
}

void Field::init(uint32_t p, uint32_t degree, std::vector<uint32_t> modulus_low,
                 std::optional<uint32_t> generator_index) {
  p_ = p;
  n_ = degree;
  uint64_t q = 1;
  for (uint32_t i = 0; i < n_; ++i) {
    q *= p_;
    if (q > kMaxSize)
      throw FieldTooLarge("p^N exceeds the 2^24 log-table cap");
  }
  q_ = uint32_t(q);
  modulus_low_ = std::move(modulus_low);
  for (uint32_t& c : modulus_low_) {
    if (c >= p_) throw SpecError("modulus coefficient out of range");
  }
  if (modulus_low_.back() != 1) throw DegreeMismatch("modulus must be monic");

  // Irreducibility by trial division against all monic divisors of
  // degree <= N/2.
  Poly mod(modulus_low_.begin(), modulus_low_.end());
  for (uint32_t d = 1; d <= n_ / 2; ++d) {
    uint64_t count = 1;
    for (uint32_t i = 0; i < d; ++i) count *= p_;
    for (uint64_t packed = 0; packed < count; ++packed) {
      Poly div(d + 1);
      uint64_t v = packed;
      for (uint32_t i = 0; i < d; ++i) {
        div[i] = uint32_t(v % p_);
        v /= p_;
      }
      div[d] = 1;
      if (poly_divides(div, mod, p_))
        throw ReducibleModulus("modulus has a factor of degree " + std::to_string(d));
    }
  }

  // Generator: requested index, else the class of x, else scan upward.
  uint32_t x_class;
  if (n_ == 1) {
    x_class = (p_ - modulus_low_[0]) % p_;
  } else {
    x_class = p_;  // coefficient vector (0,1,0,...)
  }
  exp_.assign(size_t(q_ - 1) * 2, 0);
  log_.assign(q_, 0);
  auto try_generator = [&](uint32_t cand) {
    if (cand == 0) return false;
    uint32_t cur = 1;
    for (uint32_t k = 0; k < q_ - 1; ++k) {
      if (k > 0 && cur == 1) return false;  // short cycle
      exp_[k] = cur;
      log_[cur] = k;
      cur = mul_poly_ref(cur, cand);
    }
    return cur == 1;
  };
  uint32_t g = 0;
  if (generator_index) {
    if (!try_generator(*generator_index))
      throw NotPrimitive("requested generator is not primitive");
    g = *generator_index;
  } else if (try_generator(x_class)) {
    g = x_class;
  } else {
    for (uint32_t cand = 2; cand < q_; ++cand) {
      if (try_generator(cand)) {
        g = cand;
        break;
      }
    }
    if (g == 0) throw NotPrimitive("no primitive element found");  // unreachable for a field
  }
  g_ = g;
  for (uint32_t k = 0; k < q_ - 1; ++k) exp_[size_t(q_ - 1) + k] = exp_[k];

  // Negation and absolute-trace tables.
  neg_.assign(q_, 0);
  for (uint32_t a = 0; a < q_; ++a) {
    uint32_t r = 0, w = 1, v = a;
    for (uint32_t i = 0; i < n_; ++i) {
      uint32_t dgt = v % p_;
      v /= p_;
      r += ((p_ - dgt) % p_) * w;
      w *= p_;
    }
    neg_[a] = r;
  }
  tr1_.assign(q_, 0);
  for (uint32_t a = 0; a < q_; ++a) {
    uint32_t t = rel_trace_idx(a, 1);
    tr1_[a] = t % p_;  // trace lands in the prime subfield; index is the residue
  }

  if (q_ <= kAddTableMaxQ) {
    add_table_.assign(size_t(q_) * q_, 0);
    for (uint32_t a = 0; a < q_; ++a)
      for (uint32_t b = 0; b < q_; ++b)
        add_table_[size_t(a) * q_ + b] = add_slow(a, b);
  }

  // Subfield lattice: one view per divisor of N.
  for (uint32_t m = 1; m <= n_; ++m) {
    if (n_ % m != 0) continue;
    SubfieldView view;
    view.degree = m;
    view.bitmap.assign(q_, 0);
    uint64_t pm = 1;
    for (uint32_t i = 0; i < m; ++i) pm *= p_;
    for (uint32_t a = 0; a < q_; ++a) {
      if (pow_idx(a, int64_t(pm)) == a) {
        view.bitmap[a] = 1;
        view.members.push_back(a);
      }
    }
    subfields_.emplace(m, std::move(view));
  }
}

uint32_t Field::mul_poly_ref(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  constexpr uint32_t kMaxDeg = 25;
  uint32_t da[kMaxDeg], db[kMaxDeg], prod[2 * kMaxDeg] = {0};
  uint32_t v = a;
  for (uint32_t i = 0; i < n_; ++i) {
    da[i] = v % p_;
    v /= p_;
  }
  v = b;
  for (uint32_t i = 0; i < n_; ++i) {
    db[i] = v % p_;
    v /= p_;
  }
  for (uint32_t i = 0; i < n_; ++i) {
    if (da[i] == 0) continue;
    for (uint32_t j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  // x^n = -sum_j mod_j x^j, applied top-down.
  for (uint32_t i = 2 * n_ - 2; i >= n_; --i) {
    uint32_t c = prod[i];
    if (c != 0) {
      for (uint32_t j = 0; j < n_; ++j)
        prod[i - n_ + j] = (prod[i - n_ + j] + c * (p_ - modulus_low_[j])) % p_;
      prod[i] = 0;
    }
    if (i == n_) break;
  }
  uint32_t r = 0, w = 1;
  for (uint32_t i = 0; i < n_; ++i) {
    r += prod[i] * w;
    w *= p_;
  }
  return r;
}

uint32_t Field::add_slow(uint32_t a, uint32_t b) const {
  if (p_ == 2) return a ^ b;
  uint32_t r = 0, w = 1;
  for (uint32_t i = 0; i < n_; ++i) {
    uint32_t d = a % p_ + b % p_;
    if (d >= p_) d -= p_;
    r += d * w;
    a /= p_;
    b /= p_;
    w *= p_;
  }
  return r;
}

uint32_t Field::inv_idx(uint32_t a) const {
  if (a == 0) throw DivisionByZero("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

uint32_t Field::pow_idx(uint32_t a, int64_t e) const {
  if (a == 0) {
    if (e == 0) return 1;  // 0^0 = 1 by the tabulation convention
    if (e < 0) throw DivisionByZero("negative power of zero");
    return 0;
  }
  int64_t m = int64_t(q_) - 1;
  int64_t r = e % m;
  if (r < 0) r += m;
  return exp_[uint64_t(log_[a]) * uint64_t(r) % uint64_t(m)];
}

uint32_t Field::log_idx(uint32_t a) const {
  if (a == 0) throw DivisionByZero("discrete log of zero");
  return log_[a];
}

uint32_t Field::rel_trace_idx(uint32_t x, uint32_t m) const {
  if (m == 0 || n_ % m != 0)
    throw NotADivisor("trace degree " + std::to_string(m) + " does not divide " +
                      std::to_string(n_));
  uint64_t pm = 1;
  for (uint32_t i = 0; i < m; ++i) pm *= p_;
  uint32_t acc = 0, cur = x;
  for (uint32_t i = 0; i < n_ / m; ++i) {
    acc = add_idx(acc, cur);
    cur = pow_idx(cur, int64_t(pm));
  }
  return acc;
}

uint32_t Field::rel_norm_idx(uint32_t x, uint32_t m) const {
  if (m == 0 || n_ % m != 0)
    throw NotADivisor("norm degree " + std::to_string(m) + " does not divide " +
                      std::to_string(n_));
  uint64_t pm = 1;
  for (uint32_t i = 0; i < m; ++i) pm *= p_;
  uint32_t acc = 1, cur = x;
  for (uint32_t i = 0; i < n_ / m; ++i) {
    acc = mul_idx(acc, cur);
    cur = pow_idx(cur, int64_t(pm));
  }
  return acc;
}

void Field::check(Elem a) const {
  if (a.field() != this)
    throw FieldMismatch("element belongs to a different field context");
}

Elem Field::from_index(uint32_t index) const {
  if (index >= q_) throw SpecError("element index out of range");
  return Elem(index, this);
}

Elem Field::from_int(int64_t value) const {
  int64_t r = value % int64_t(p_);
  if (r < 0) r += p_;
  return Elem(uint32_t(r), this);
}

Elem Field::add(Elem a, Elem b) const {
  check(a);
  check(b);
  return Elem(add_idx(a.index(), b.index()), this);
}

Elem Field::sub(Elem a, Elem b) const {
  check(a);
  check(b);
  return Elem(sub_idx(a.index(), b.index()), this);
}

Elem Field::neg(Elem a) const {
  check(a);
  return Elem(neg_[a.index()], this);
}

Elem Field::mul(Elem a, Elem b) const {
  check(a);
  check(b);
  return Elem(mul_idx(a.index(), b.index()), this);
}

Elem Field::inv(Elem a) const {
  check(a);
  return Elem(inv_idx(a.index()), this);
}

Elem Field::pow(Elem a, int64_t e) const {
  check(a);
  return Elem(pow_idx(a.index(), e), this);
}

Elem Field::rel_trace(Elem x, uint32_t m) const {
  check(x);
  return Elem(rel_trace_idx(x.index(), m), this);
}

Elem Field::rel_norm(Elem x, uint32_t m) const {
  check(x);
  return Elem(rel_norm_idx(x.index(), m), this);
}

int Field::quadratic_character(Elem x) const {
  check(x);
  if (p_ == 2) throw EvenCharacteristic("quadratic character needs odd p");
  if (x.is_zero()) return 0;
  return log_[x.index()] % 2 == 0 ? 1 : -1;
}

uint32_t Field::log(Elem x) const {
  check(x);
  return log_idx(x.index());
}

const SubfieldView& Field::subfield(uint32_t m) const {
  auto it = subfields_.find(m);
  if (it == subfields_.end())
    throw NotADivisor("no subfield of degree " + std::to_string(m) + " in degree " +
                      std::to_string(n_));
  return it->second;
}

std::vector<uint32_t> Field::degree_divisors() const {
  std::vector<uint32_t> out;
  for (const auto& [m, view] : subfields_) out.push_back(m);
  return out;
}

std::string Field::modulus_string() const {
  std::string s;
  for (auto it = modulus_low_.rbegin(); it != modulus_low_.rend(); ++it)
    s.push_back(char('0' + *it));
  return s;
}

std::string Field::spec_string() const {
  return std::to_string(p_) + "^" + std::to_string(n_) + "/" + modulus_string();
}

Elem Field::parse_elem(std::string_view text) const {
  if (text.empty()) throw SpecError("empty element literal");
  if (text == "g") return generator();
  if (text.rfind("g^", 0) == 0) {
    uint64_t k = 0;
    auto s = text.substr(2);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw SpecError("bad generator power: " + std::string(text));
    return gpow(k);
  }
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw SpecError("bad element literal: " + std::string(text));
  return from_int(v);
}

std::string Field::format_elem_index(uint32_t index) const {
  if (index < p_) return std::to_string(index);
  return "g^" + std::to_string(log_[index]);
}

std::string Field::format_elem(Elem x) const {
  check(x);
  return format_elem_index(x.index());
}

std::string Field::coeff_string(uint32_t index) const {
  std::string s(n_, '0');
  uint32_t v = index;
  for (uint32_t i = 0; i < n_; ++i) {
    s[n_ - 1 - i] = char('0' + v % p_);
    v /= p_;
  }
  return s;
}

int two_valuation(uint64_t k) {
  if (k == 0) throw SpecError("two_valuation needs a positive input");
  return std::countr_zero(k);
}

}  // namespace cdu
