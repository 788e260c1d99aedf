#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdu/expr.hpp"
#include "cdu/field.hpp"

namespace cdu {

// c-DDT summary for one c: counts of solutions x of F(x+a) - c F(x) = b.
// When c = 1 the a = 0 row is excluded from the uniformity (and from the
// distribution); for c != 1 every a participates.
struct CDiffReport {
  uint32_t c = 0;  // element index
  uint64_t uniformity = 0;
  std::vector<uint32_t> row_max;  // max_b count(a, b), for every a
  // (count, frequency over admissible (a, b)), ascending by count.
  std::vector<std::pair<uint32_t, uint64_t>> distribution;
  // (a, b) pairs attaining the uniformity; filled when requested.
  std::vector<std::pair<uint32_t, uint32_t>> witnesses;
};

CDiffReport c_ddt(const FuncTable& F, Elem c, bool collect_witnesses = false);

// Streaming row maxima; agrees with c_ddt(F, c).uniformity.
uint64_t c_uniformity(const FuncTable& F, Elem c);

// All c with c-differential uniformity 1, including c = 0; c = 1 is skipped
// for p = 2 and participates for odd p (the PN case). Sorted by index.
std::vector<uint32_t> pcn_c_set(const FuncTable& F, unsigned threads = 1);

// Boomerang connectivity: entry (a, b) counts ordered pairs (x, y) solving
// F(x) - F(y) = b and F(x+a) - F(y+a) = b. Uniformity is the max over
// a != 0, b != 0.
struct BctReport {
  uint32_t boomerang_uniformity = 0;
  uint32_t q = 0;
  std::vector<uint32_t> counts;  // row-major [a * q + b]

  uint32_t at(uint32_t a, uint32_t b) const { return counts[size_t(a) * q + b]; }
};

BctReport bct(const FuncTable& F);

// Walsh spectrum: for every (a, b), b != 0, the residue counts
// N_j = #{x : Tr(b F(x)) - Tr(a x) = j in F_p}. Complex values and
// magnitudes derive from the exact integer count vectors.
class WalshSpectrum {
 public:
  WalshSpectrum(const Field& K, std::vector<uint32_t> counts);

  std::span<const uint32_t> residue_counts(uint32_t a, uint32_t b) const;
  double magnitude(uint32_t a, uint32_t b) const;
  // p = 2 only: W(a, b) = N_0 - N_1.
  int64_t signed_value(uint32_t a, uint32_t b) const;

  // Distinct complex Walsh values over all a and b != 0 (exact, via the
  // integer signatures N_j - N_{p-1}).
  size_t value_count() const;
  // Distinct magnitudes rounded to 1e-6 over the same range.
  size_t magnitude_count() const;
  double max_magnitude() const;
  // (magnitude rounded to 1e-6, multiplicity), ascending.
  std::vector<std::pair<double, uint64_t>> magnitude_histogram() const;

  const Field& field() const { return *field_; }

 private:
  const Field* field_;
  uint32_t q_, p_;
  std::vector<uint32_t> counts_;  // [((b-1) * q + a) * p + j]
};

WalshSpectrum walsh(const FuncTable& F);

// 2^{N-1} - max|W|/2 over b != 0; p = 2 only (OddCharacteristic otherwise).
uint64_t nonlinearity(const FuncTable& F);

// One-record aggregation: permutation flag, c = 1 uniformity, boomerang
// uniformity, Walsh value counts (and nonlinearity for p = 2), the PcN c-set
// and the full per-c uniformity profile.
struct SpectrumSummary {
  bool permutation = false;
  uint64_t du_c1 = 0;
  uint32_t boomerang = 0;
  std::optional<uint64_t> nl;  // p = 2 only
  size_t walsh_value_count = 0;
  size_t walsh_magnitude_count = 0;
  std::vector<uint32_t> pcn_c;   // element indices
  std::vector<uint64_t> per_c;   // uniformity for every c index
};

SpectrumSummary spectrum_summary(const FuncTable& F, unsigned threads = 1);

// Uniformity for every c index in [0, q); entry at c = 1 uses the a != 0
// convention.
std::vector<uint64_t> per_c_uniformity(const FuncTable& F, unsigned threads = 1);

}  // namespace cdu
