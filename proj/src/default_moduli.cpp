#include "cdu/field.hpp"

namespace cdu {

// Irreducible polynomial of degree N over F_p whose non-leading coefficient
// vector, read as a base-p integer (constant term least significant), is
// minimal among those making x a primitive element. The 2^6 entry deviates:
// it is pinned to w^6+w^4+w^3+w+1 so that analyses over F_{2^6} use the same
// generator convention as the bundled regression data.
namespace {

struct ModulusEntry {
  uint32_t p;
  uint32_t n;
  const char* digits;  // high-to-low
};

constexpr ModulusEntry kTable[] = {
    {2, 1, "11"},
    {2, 2, "111"},
    {2, 3, "1011"},
    {2, 4, "10011"},
    {2, 5, "100101"},
    {2, 6, "1011011"},
    {2, 7, "10000011"},
    {2, 8, "100011101"},
    {2, 9, "1000010001"},
    {2, 10, "10000001001"},
    {2, 11, "100000000101"},
    {2, 12, "1000001010011"},
    {2, 13, "10000000011011"},
    {2, 14, "100000000101011"},
    {2, 15, "1000000000000011"},
    {2, 16, "10000000000101101"},
    {2, 17, "100000000000001001"},
    {2, 18, "1000000000000100111"},
    {2, 19, "10000000000000100111"},
    {2, 20, "100000000000000001001"},
    {3, 1, "11"},
    {3, 2, "112"},
    {3, 3, "1021"},
    {3, 4, "10012"},
    {3, 5, "100021"},
    {3, 6, "1000012"},
    {3, 7, "10000121"},
    {3, 8, "100001002"},
    {3, 9, "1000002101"},
    {3, 10, "10000001012"},
    {3, 11, "100000000121"},
    {3, 12, "1000000021222"},
    {5, 1, "12"},
    {5, 2, "112"},
    {5, 3, "1032"},
    {5, 4, "10122"},
    {5, 5, "100042"},
    {5, 6, "1000012"},
    {5, 7, "10000032"},
    {5, 8, "100000123"},
    {7, 1, "12"},
    {7, 2, "113"},
    {7, 3, "1032"},
    {7, 4, "10135"},
    {7, 5, "100014"},
    {7, 6, "1000315"},
    {7, 7, "10000062"},
    {7, 8, "100000013"},
};

}  // namespace

const char* default_modulus_digits(uint32_t p, uint32_t degree) {
  for (const auto& e : kTable)
    if (e.p == p && e.n == degree) return e.digits;
  return nullptr;
}

}  // namespace cdu
