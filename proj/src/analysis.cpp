#include "cdu/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "cdu/parallel.hpp"

namespace cdu {

namespace {

constexpr uint32_t kWalshMaxQ = 4096;  // q^2 count vectors get materialized

void check_table(const FuncTable& F) {
  if (!F.field || F.values.size() != F.field->size())
    throw SpecError("function table does not match its field");
}

Elem checked_c(const FuncTable& F, Elem c) {
  check_table(F);
  if (c.field() != F.field) throw FieldMismatch("c belongs to a different field");
  return c;
}

}  // namespace

CDiffReport c_ddt(const FuncTable& F, Elem c, bool collect_witnesses) {
  checked_c(F, c);
  const Field& K = *F.field;
  const uint32_t q = K.size();
  const uint32_t ci = c.index();
  const bool skip_zero_row = (ci == 1);

  std::vector<uint32_t> cF(q);
  for (uint32_t x = 0; x < q; ++x) cF[x] = K.mul_idx(ci, F[x]);

  CDiffReport rep;
  rep.c = ci;
  rep.row_max.assign(q, 0);
  std::map<uint32_t, uint64_t> dist;
  std::vector<uint32_t> row(q);
  std::vector<std::vector<uint32_t>> witness_rows(collect_witnesses ? q : 0);

  for (uint32_t a = 0; a < q; ++a) {
    std::fill(row.begin(), row.end(), 0);
    for (uint32_t x = 0; x < q; ++x) {
      uint32_t b = K.sub_idx(F[K.add_idx(x, a)], cF[x]);
      ++row[b];
    }
    uint32_t mx = *std::max_element(row.begin(), row.end());
    rep.row_max[a] = mx;
    if (skip_zero_row && a == 0) continue;
    rep.uniformity = std::max<uint64_t>(rep.uniformity, mx);
    for (uint32_t b = 0; b < q; ++b) ++dist[row[b]];
    if (collect_witnesses) {
      witness_rows[a].clear();
      for (uint32_t b = 0; b < q; ++b)
        if (row[b] == mx) witness_rows[a].push_back(b);
    }
  }
  rep.distribution.assign(dist.begin(), dist.end());
  if (collect_witnesses) {
    for (uint32_t a = skip_zero_row ? 1 : 0; a < q; ++a) {
      if (rep.row_max[a] != rep.uniformity) continue;
      for (uint32_t b : witness_rows[a]) rep.witnesses.emplace_back(a, b);
    }
  }
  return rep;
}

uint64_t c_uniformity(const FuncTable& F, Elem c) {
  checked_c(F, c);
  const Field& K = *F.field;
  const uint32_t q = K.size();
  const uint32_t ci = c.index();

  std::vector<uint32_t> cF(q);
  for (uint32_t x = 0; x < q; ++x) cF[x] = K.mul_idx(ci, F[x]);

  uint64_t best = 0;
  std::vector<uint32_t> row(q);
  for (uint32_t a = (ci == 1) ? 1 : 0; a < q; ++a) {
    std::fill(row.begin(), row.end(), 0);
    uint32_t mx = 0;
    for (uint32_t x = 0; x < q; ++x) {
      uint32_t b = K.sub_idx(F[K.add_idx(x, a)], cF[x]);
      mx = std::max(mx, ++row[b]);
    }
    best = std::max<uint64_t>(best, mx);
  }
  return best;
}

std::vector<uint64_t> per_c_uniformity(const FuncTable& F, unsigned threads) {
  check_table(F);
  const Field& K = *F.field;
  std::vector<uint64_t> out(K.size());
  parallel_for(K.size(), threads,
               [&](size_t c) { out[c] = c_uniformity(F, K.from_index(uint32_t(c))); });
  return out;
}

std::vector<uint32_t> pcn_c_set(const FuncTable& F, unsigned threads) {
  check_table(F);
  const Field& K = *F.field;
  std::vector<uint8_t> flag(K.size(), 0);
  parallel_for(K.size(), threads, [&](size_t c) {
    if (K.p() == 2 && c == 1) return;
    flag[c] = c_uniformity(F, K.from_index(uint32_t(c))) == 1 ? 1 : 0;
  });
  std::vector<uint32_t> out;
  for (uint32_t c = 0; c < K.size(); ++c)
    if (flag[c]) out.push_back(c);
  return out;
}

BctReport bct(const FuncTable& F) {
  check_table(F);
  const Field& K = *F.field;
  const uint32_t q = K.size();
  BctReport rep;
  rep.q = q;
  rep.counts.assign(size_t(q) * q, 0);
  // Pair enumeration with the inner a-loop, straight from the two-equation
  // system; accepts non-bijective F.
  std::vector<uint32_t> shifted(size_t(q) * q);  // F(x + a) at [a * q + x]
  for (uint32_t a = 0; a < q; ++a)
    for (uint32_t x = 0; x < q; ++x) shifted[size_t(a) * q + x] = F[K.add_idx(x, a)];
  for (uint32_t x = 0; x < q; ++x) {
    for (uint32_t y = 0; y < q; ++y) {
      uint32_t b = K.sub_idx(F[x], F[y]);
      for (uint32_t a = 1; a < q; ++a) {
        if (K.sub_idx(shifted[size_t(a) * q + x], shifted[size_t(a) * q + y]) == b)
          ++rep.counts[size_t(a) * q + b];
      }
    }
  }
  uint32_t best = 0;
  for (uint32_t a = 1; a < q; ++a)
    for (uint32_t b = 1; b < q; ++b) best = std::max(best, rep.counts[size_t(a) * q + b]);
  rep.boomerang_uniformity = best;
  return rep;
}

WalshSpectrum::WalshSpectrum(const Field& K, std::vector<uint32_t> counts)
    : field_(&K), q_(K.size()), p_(K.p()), counts_(std::move(counts)) {}

std::span<const uint32_t> WalshSpectrum::residue_counts(uint32_t a, uint32_t b) const {
  if (b == 0 || b >= q_ || a >= q_) throw SpecError("walsh point out of range (b != 0 required)");
  return std::span<const uint32_t>(counts_).subspan((size_t(b - 1) * q_ + a) * p_, p_);
}

double WalshSpectrum::magnitude(uint32_t a, uint32_t b) const {
  auto n = residue_counts(a, b);
  double re = 0, im = 0;
  for (uint32_t j = 0; j < p_; ++j) {
    double ang = 2.0 * std::numbers::pi * j / p_;
    re += double(n[j]) * std::cos(ang);
    im += double(n[j]) * std::sin(ang);
  }
  return std::hypot(re, im);
}

int64_t WalshSpectrum::signed_value(uint32_t a, uint32_t b) const {
  if (p_ != 2) throw OddCharacteristic("signed Walsh value requires p = 2");
  auto n = residue_counts(a, b);
  return int64_t(n[0]) - int64_t(n[1]);
}

size_t WalshSpectrum::value_count() const {
  std::set<std::vector<int64_t>> sigs;
  for (uint32_t b = 1; b < q_; ++b) {
    for (uint32_t a = 0; a < q_; ++a) {
      auto n = residue_counts(a, b);
      std::vector<int64_t> sig(p_ - 1);
      for (uint32_t j = 0; j + 1 < p_; ++j) sig[j] = int64_t(n[j]) - int64_t(n[p_ - 1]);
      sigs.insert(std::move(sig));
    }
  }
  return sigs.size();
}

size_t WalshSpectrum::magnitude_count() const {
  std::set<int64_t> mags;
  for (uint32_t b = 1; b < q_; ++b)
    for (uint32_t a = 0; a < q_; ++a)
      mags.insert(llround(magnitude(a, b) * 1e6));
  return mags.size();
}

double WalshSpectrum::max_magnitude() const {
  double best = 0;
  for (uint32_t b = 1; b < q_; ++b)
    for (uint32_t a = 0; a < q_; ++a) best = std::max(best, magnitude(a, b));
  return best;
}

std::vector<std::pair<double, uint64_t>> WalshSpectrum::magnitude_histogram() const {
  std::map<int64_t, uint64_t> hist;
  for (uint32_t b = 1; b < q_; ++b)
    for (uint32_t a = 0; a < q_; ++a) ++hist[llround(magnitude(a, b) * 1e6)];
  std::vector<std::pair<double, uint64_t>> out;
  out.reserve(hist.size());
  for (auto [m, c] : hist) out.emplace_back(double(m) / 1e6, c);
  return out;
}

WalshSpectrum walsh(const FuncTable& F) {
  check_table(F);
  const Field& K = *F.field;
  const uint32_t q = K.size(), p = K.p();
  if (q > kWalshMaxQ)
    throw FieldTooLarge("walsh spectrum materialization is capped at p^N <= 4096");

  std::vector<uint8_t> ta(size_t(q) * q);  // Tr(a x) residues
  for (uint32_t a = 0; a < q; ++a)
    for (uint32_t x = 0; x < q; ++x) ta[size_t(a) * q + x] = uint8_t(K.trace1_int(K.mul_idx(a, x)));

  std::vector<uint32_t> counts(size_t(q - 1) * q * p, 0);
  std::vector<uint8_t> g(q);
  for (uint32_t b = 1; b < q; ++b) {
    for (uint32_t x = 0; x < q; ++x) g[x] = uint8_t(K.trace1_int(K.mul_idx(b, F[x])));
    for (uint32_t a = 0; a < q; ++a) {
      const uint8_t* row = &ta[size_t(a) * q];
      uint32_t* slot = &counts[(size_t(b - 1) * q + a) * p];
      for (uint32_t x = 0; x < q; ++x) {
        uint32_t j = g[x] + p - row[x];
        if (j >= p) j -= p;
        ++slot[j];
      }
    }
  }
  return WalshSpectrum(K, std::move(counts));
}

uint64_t nonlinearity(const FuncTable& F) {
  check_table(F);
  if (F.field->p() != 2) throw OddCharacteristic("nonlinearity is defined for p = 2 here");
  WalshSpectrum w = walsh(F);
  const uint32_t q = F.field->size();
  int64_t best = 0;
  for (uint32_t b = 1; b < q; ++b)
    for (uint32_t a = 0; a < q; ++a)
      best = std::max<int64_t>(best, std::llabs(w.signed_value(a, b)));
  return uint64_t(q / 2) - uint64_t(best) / 2;
}

SpectrumSummary spectrum_summary(const FuncTable& F, unsigned threads) {
  check_table(F);
  const Field& K = *F.field;
  SpectrumSummary s;
  s.permutation = is_permutation(F);
  s.per_c = per_c_uniformity(F, threads);
  s.du_c1 = s.per_c[1];
  for (uint32_t c = 0; c < K.size(); ++c) {
    if (K.p() == 2 && c == 1) continue;
    if (s.per_c[c] == 1) s.pcn_c.push_back(c);
  }
  s.boomerang = bct(F).boomerang_uniformity;
  WalshSpectrum w = walsh(F);
  s.walsh_value_count = w.value_count();
  s.walsh_magnitude_count = w.magnitude_count();
  if (K.p() == 2) s.nl = uint64_t(K.size() / 2) - uint64_t(llround(w.max_magnitude())) / 2;
  return s;
}

}  // namespace cdu
