#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cdu/field.hpp"

namespace cdu {

// AST for the (N,N)-function language:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' integer)?
//   atom   := 'x' | 'g' ('^' integer)? | integer
//          | 'Tr' '[' integer ']' '(' expr ')'
//          | 'L' '{' elemlist (';' integer)? '}' '(' expr ')'
//          | '(' expr ')'
// Element literals in L{...} are g-powers or integers; ';t' selects the
// linearized q = p^t (default 1). Exponents are reduced into [0, p^N-1] with
// 0^e = 0 for e > 0 and x^0 = 1 (including 0^0), so x^{p^N-2} tabulates the
// inverse function with 0 -> 0.

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct VarNode {};
struct ConstNode {
  uint32_t index = 0;
};
struct PowNode {
  ExprPtr base;
  uint64_t exponent = 0;  // already reduced
};
struct SumNode {
  struct Term {
    bool negated = false;
    ExprPtr expr;
  };
  std::vector<Term> terms;  // first term never negated
};
struct ProductNode {
  std::vector<ExprPtr> factors;
};
struct TraceNode {
  uint32_t degree = 0;  // target subfield degree m, m | N
  ExprPtr arg;
};
struct LinearizedNode {
  std::vector<uint32_t> coeffs;  // a_0..a_{n-1} element indices, Sum a_i y^{q^i}
  uint32_t degree = 1;           // t with q = p^t
  ExprPtr arg;
};

class Expr {
 public:
  using Node =
      std::variant<VarNode, ConstNode, PowNode, SumNode, ProductNode, TraceNode, LinearizedNode>;
  explicit Expr(Node n) : node(std::move(n)) {}
  Node node;
};

bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

ExprPtr make_var();
ExprPtr make_const(const Field& K, Elem value);
ExprPtr make_const_index(uint32_t index);
// Reduces the exponent into [0, p^N-1]; e > 0 maps to [1, p^N-1].
ExprPtr make_pow(ExprPtr base, uint64_t exponent, const Field& K);
ExprPtr make_sum(std::vector<SumNode::Term> terms);
ExprPtr make_add(ExprPtr a, ExprPtr b);
ExprPtr make_sub(ExprPtr a, ExprPtr b);
ExprPtr make_product(std::vector<ExprPtr> factors);
ExprPtr make_trace(uint32_t degree, ExprPtr arg, const Field& K);  // NotADivisor checked
ExprPtr make_linearized(std::vector<uint32_t> coeff_indices, uint32_t t, ExprPtr arg,
                        const Field& K);

// Parses per the grammar; constants resolve against K's primitive element.
// Throws SyntaxError (with position), UnknownSymbol, ExponentOutOfRange,
// NotADivisor, DegreeMismatch.
ExprPtr parse_expr(std::string_view source, const Field& K);

// Canonical source form; parse_expr(to_string(e)) reproduces e exactly.
std::string to_string(const Expr& e, const Field& K);
inline std::string to_string(const ExprPtr& e, const Field& K) { return to_string(*e, K); }

// Dense evaluation table of an (N,N)-function.
struct FuncTable {
  const Field* field = nullptr;
  std::vector<uint32_t> values;

  uint32_t size() const { return uint32_t(values.size()); }
  uint32_t operator[](uint32_t x) const { return values[x]; }
};

FuncTable tabulate(const Expr& e, const Field& K);
inline FuncTable tabulate(const ExprPtr& e, const Field& K) { return tabulate(*e, K); }
FuncTable tabulate(std::string_view source, const Field& K);

bool is_permutation(const FuncTable& table);

// Dickson criterion for the q-linearized polynomial Sum a_i x^{q^i}, q = p^t:
// the n x n matrix with entry (i,j) = a_{(j-i) mod n}^{q^i} is nonsingular
// exactly when the polynomial permutes the field. Determinant by Gaussian
// elimination over F_{p^N}.
bool dickson_nonsingular(std::span<const uint32_t> coeff_indices, uint32_t t, const Field& K);

}  // namespace cdu
