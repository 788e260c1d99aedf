#include "cdu/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

namespace cdu {

namespace {

uint64_t reduce_exponent(uint64_t e, uint32_t q) {
  if (e == 0) return 0;
  uint64_t m = q - 1;
  return (e - 1) % m + 1;  // keeps e > 0 in [1, q-1]; preserves 0^e = 0
}

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, VarNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, ConstNode>) {
          return x.index == y.index;
        } else if constexpr (std::is_same_v<T, PowNode>) {
          return x.exponent == y.exponent && *x.base == *y.base;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          if (x.terms.size() != y.terms.size()) return false;
          for (size_t i = 0; i < x.terms.size(); ++i)
            if (x.terms[i].negated != y.terms[i].negated || !(*x.terms[i].expr == *y.terms[i].expr))
              return false;
          return true;
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          if (x.factors.size() != y.factors.size()) return false;
          for (size_t i = 0; i < x.factors.size(); ++i)
            if (!(*x.factors[i] == *y.factors[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<T, TraceNode>) {
          return x.degree == y.degree && *x.arg == *y.arg;
        } else {
          return x.coeffs == y.coeffs && x.degree == y.degree && *x.arg == *y.arg;
        }
      },
      a.node);
}

ExprPtr make_var() { return std::make_shared<Expr>(Expr::Node{VarNode{}}); }

ExprPtr make_const_index(uint32_t index) {
  return std::make_shared<Expr>(Expr::Node{ConstNode{index}});
}

ExprPtr make_const(const Field& K, Elem value) {
  if (value.field() != &K) throw FieldMismatch("constant from a different field");
  return make_const_index(value.index());
}

ExprPtr make_pow(ExprPtr base, uint64_t exponent, const Field& K) {
  return std::make_shared<Expr>(Expr::Node{PowNode{std::move(base), reduce_exponent(exponent, K.size())}});
}

ExprPtr make_sum(std::vector<SumNode::Term> terms) {
  if (terms.empty() || terms.front().negated)
    throw SpecError("sum needs a leading non-negated term");
  return std::make_shared<Expr>(Expr::Node{SumNode{std::move(terms)}});
}

ExprPtr make_add(ExprPtr a, ExprPtr b) {
  return make_sum({{false, std::move(a)}, {false, std::move(b)}});
}

ExprPtr make_sub(ExprPtr a, ExprPtr b) {
  return make_sum({{false, std::move(a)}, {true, std::move(b)}});
}

ExprPtr make_product(std::vector<ExprPtr> factors) {
  if (factors.empty()) throw SpecError("product needs at least one factor");
  return std::make_shared<Expr>(Expr::Node{ProductNode{std::move(factors)}});
}

ExprPtr make_trace(uint32_t degree, ExprPtr arg, const Field& K) {
  if (degree == 0 || K.degree() % degree != 0)
    throw NotADivisor("Tr[" + std::to_string(degree) + "] target does not divide field degree");
  return std::make_shared<Expr>(Expr::Node{TraceNode{degree, std::move(arg)}});
}

ExprPtr make_linearized(std::vector<uint32_t> coeff_indices, uint32_t t, ExprPtr arg,
                        const Field& K) {
  if (t == 0 || K.degree() % t != 0)
    throw NotADivisor("linearized subfield degree does not divide field degree");
  if (coeff_indices.empty() || coeff_indices.size() > K.degree() / t)
    throw DegreeMismatch("linearized coefficient count must be in [1, N/t]");
  for (uint32_t c : coeff_indices)
    if (c >= K.size()) throw SpecError("linearized coefficient out of range");
  return std::make_shared<Expr>(
      Expr::Node{LinearizedNode{std::move(coeff_indices), t, std::move(arg)}});
}

// ----------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view src, const Field& K) : src_(src), K_(K) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw SyntaxError(what + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  uint64_t integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') ++pos_;
    if (pos_ == start) fail("expected an integer");
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec == std::errc::result_out_of_range)
      throw ExponentOutOfRange("integer literal too large at position " + std::to_string(start));
    if (ec != std::errc() || ptr != src_.data() + pos_) fail("bad integer");
    return v;
  }

  ExprPtr expr() {
    std::vector<SumNode::Term> terms;
    terms.push_back({false, term()});
    while (true) {
      if (accept('+')) {
        terms.push_back({false, term()});
      } else if (accept('-')) {
        terms.push_back({true, term()});
      } else {
        break;
      }
    }
    if (terms.size() == 1) return terms.front().expr;
    return make_sum(std::move(terms));
  }

  ExprPtr term() {
    std::vector<ExprPtr> factors;
    factors.push_back(factor());
    while (accept('*')) factors.push_back(factor());
    if (factors.size() == 1) return factors.front();
    return make_product(std::move(factors));
  }

  ExprPtr factor() {
    ExprPtr a = atom();
    if (accept('^')) return make_pow(std::move(a), integer(), K_);
    return a;
  }

  Elem elem_literal() {
    skip_ws();
    if (peek() == 'g') {
      ++pos_;
      if (accept('^')) return K_.gpow(integer());
      return K_.generator();
    }
    return K_.from_int(int64_t(integer()));
  }

  ExprPtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (c >= '0' && c <= '9') {
      return make_const(K_, K_.from_int(int64_t(integer())));
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character");
    size_t word_start = pos_;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::string_view word = src_.substr(word_start, pos_ - word_start);
    if (word == "x") return make_var();
    if (word == "g") {
      if (peek() == '^') {
        ++pos_;
        return make_const(K_, K_.gpow(integer()));
      }
      return make_const(K_, K_.generator());
    }
    if (word == "Tr") {
      expect('[');
      uint64_t m = integer();
      expect(']');
      expect('(');
      ExprPtr arg = expr();
      expect(')');
      return make_trace(uint32_t(m), std::move(arg), K_);
    }
    if (word == "L") {
      expect('{');
      std::vector<uint32_t> coeffs;
      coeffs.push_back(elem_literal().index());
      while (accept(',')) coeffs.push_back(elem_literal().index());
      uint32_t t = 1;
      if (accept(';')) t = uint32_t(integer());
      expect('}');
      expect('(');
      ExprPtr arg = expr();
      expect(')');
      return make_linearized(std::move(coeffs), t, std::move(arg), K_);
    }
    throw UnknownSymbol("unknown symbol '" + std::string(word) + "' at position " +
                        std::to_string(word_start));
  }

  std::string_view src_;
  const Field& K_;
  size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(std::string_view source, const Field& K) { return Parser(source, K).run(); }

// ---------------------------------------------------------------- printing

namespace {

enum class Ctx { kTop, kSumTerm, kFactor, kPowBase };

void print(const Expr& e, const Field& K, Ctx ctx, std::string& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, VarNode>) {
          out += 'x';
        } else if constexpr (std::is_same_v<T, ConstNode>) {
          out += K.format_elem_index(node.index);
        } else if constexpr (std::is_same_v<T, PowNode>) {
          bool parens = ctx == Ctx::kPowBase;
          if (parens) out += '(';
          print(*node.base, K, Ctx::kPowBase, out);
          out += '^';
          out += std::to_string(node.exponent);
          if (parens) out += ')';
        } else if constexpr (std::is_same_v<T, SumNode>) {
          bool parens = ctx != Ctx::kTop;
          if (parens) out += '(';
          for (size_t i = 0; i < node.terms.size(); ++i) {
            if (i > 0) out += node.terms[i].negated ? " - " : " + ";
            print(*node.terms[i].expr, K, Ctx::kSumTerm, out);
          }
          if (parens) out += ')';
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          bool parens = ctx == Ctx::kFactor || ctx == Ctx::kPowBase;
          if (parens) out += '(';
          for (size_t i = 0; i < node.factors.size(); ++i) {
            if (i > 0) out += '*';
            print(*node.factors[i], K, Ctx::kFactor, out);
          }
          if (parens) out += ')';
        } else if constexpr (std::is_same_v<T, TraceNode>) {
          out += "Tr[";
          out += std::to_string(node.degree);
          out += "](";
          print(*node.arg, K, Ctx::kTop, out);
          out += ')';
        } else {
          out += "L{";
          for (size_t i = 0; i < node.coeffs.size(); ++i) {
            if (i > 0) out += ',';
            out += K.format_elem_index(node.coeffs[i]);
          }
          out += ';';
          out += std::to_string(node.degree);
          out += "}(";
          print(*node.arg, K, Ctx::kTop, out);
          out += ')';
        }
      },
      e.node);
}

}  // namespace

std::string to_string(const Expr& e, const Field& K) {
  std::string out;
  print(e, K, Ctx::kTop, out);
  return out;
}

// -------------------------------------------------------------- evaluation

namespace {

std::vector<uint32_t> eval(const Expr& e, const Field& K) {
  const uint32_t q = K.size();
  return std::visit(
      [&](const auto& node) -> std::vector<uint32_t> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, VarNode>) {
          std::vector<uint32_t> v(q);
          std::iota(v.begin(), v.end(), 0u);
          return v;
        } else if constexpr (std::is_same_v<T, ConstNode>) {
          return std::vector<uint32_t>(q, node.index);
        } else if constexpr (std::is_same_v<T, PowNode>) {
          std::vector<uint32_t> v = eval(*node.base, K);
          for (uint32_t& x : v) x = K.pow_idx(x, int64_t(node.exponent));
          return v;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          std::vector<uint32_t> acc = eval(*node.terms.front().expr, K);
          for (size_t i = 1; i < node.terms.size(); ++i) {
            std::vector<uint32_t> v = eval(*node.terms[i].expr, K);
            if (node.terms[i].negated)
              for (uint32_t x = 0; x < q; ++x) acc[x] = K.sub_idx(acc[x], v[x]);
            else
              for (uint32_t x = 0; x < q; ++x) acc[x] = K.add_idx(acc[x], v[x]);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          std::vector<uint32_t> acc = eval(*node.factors.front(), K);
          for (size_t i = 1; i < node.factors.size(); ++i) {
            std::vector<uint32_t> v = eval(*node.factors[i], K);
            for (uint32_t x = 0; x < q; ++x) acc[x] = K.mul_idx(acc[x], v[x]);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, TraceNode>) {
          std::vector<uint32_t> v = eval(*node.arg, K);
          for (uint32_t& x : v) x = K.rel_trace_idx(x, node.degree);
          return v;
        } else {
          std::vector<uint32_t> cur = eval(*node.arg, K);
          std::vector<uint32_t> acc(q, 0);
          uint64_t step = 1;
          for (uint32_t i = 0; i < node.degree; ++i) step *= K.p();
          for (size_t i = 0; i < node.coeffs.size(); ++i) {
            if (i > 0)
              for (uint32_t& x : cur) x = K.pow_idx(x, int64_t(step));
            uint32_t a = node.coeffs[i];
            if (a == 0) continue;
            for (uint32_t x = 0; x < q; ++x)
              acc[x] = K.add_idx(acc[x], K.mul_idx(a, cur[x]));
          }
          return acc;
        }
      },
      e.node);
}

}  // namespace

FuncTable tabulate(const Expr& e, const Field& K) { return FuncTable{&K, eval(e, K)}; }

FuncTable tabulate(std::string_view source, const Field& K) {
  return tabulate(*parse_expr(source, K), K);
}

bool is_permutation(const FuncTable& table) {
  std::vector<uint8_t> seen(table.values.size(), 0);
  for (uint32_t v : table.values) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool dickson_nonsingular(std::span<const uint32_t> coeff_indices, uint32_t t, const Field& K) {
  if (t == 0 || K.degree() % t != 0)
    throw NotADivisor("linearized subfield degree does not divide field degree");
  const uint32_t n = K.degree() / t;
  if (coeff_indices.size() > n)
    throw DegreeMismatch("too many linearized coefficients for the tower degree");
  std::vector<uint32_t> a(n, 0);
  std::copy(coeff_indices.begin(), coeff_indices.end(), a.begin());
  uint64_t qq = 1;
  for (uint32_t i = 0; i < t; ++i) qq *= K.p();

  // M(i, j) = a_{(j-i) mod n} ^ {q^i}
  std::vector<uint32_t> m(size_t(n) * n);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      uint32_t v = a[(j + n - i) % n];
      for (uint32_t s = 0; s < i; ++s) v = K.pow_idx(v, int64_t(qq));
      m[size_t(i) * n + j] = v;
    }
  }
  // Gaussian elimination with first-nonzero pivoting; exact over the field.
  for (uint32_t col = 0; col < n; ++col) {
    uint32_t pivot = n;
    for (uint32_t row = col; row < n; ++row) {
      if (m[size_t(row) * n + col] != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot == n) return false;  // singular
    if (pivot != col)
      for (uint32_t j = 0; j < n; ++j) std::swap(m[size_t(pivot) * n + j], m[size_t(col) * n + j]);
    uint32_t inv_p = K.inv_idx(m[size_t(col) * n + col]);
    for (uint32_t row = col + 1; row < n; ++row) {
      uint32_t f = K.mul_idx(m[size_t(row) * n + col], inv_p);
      if (f == 0) continue;
      for (uint32_t j = col; j < n; ++j) {
        uint32_t s = K.mul_idx(f, m[size_t(col) * n + j]);
        m[size_t(row) * n + j] = K.sub_idx(m[size_t(row) * n + j], s);
      }
    }
  }
  return true;
}

}  // namespace cdu
