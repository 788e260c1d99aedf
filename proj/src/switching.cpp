#include "cdu/switching.hpp"

#include <algorithm>
#include <map>

namespace cdu {

namespace {

void check_term_image(const SwitchTerm& term, const Field& K) {
  const SubfieldView& view = K.subfield(term.degree);
  for (uint32_t v : term.f.values)
    if (!view.contains(v))
      throw ImageNotInSubfield("switch term leaves its declared degree-" +
                               std::to_string(term.degree) + " subfield");
}

// cD_a g(x) = g(x+a) - c g(x) over the whole domain.
std::vector<uint32_t> c_derivative(const FuncTable& g, uint32_t a, uint32_t c) {
  const Field& K = *g.field;
  const uint32_t q = K.size();
  std::vector<uint32_t> d(q);
  for (uint32_t x = 0; x < q; ++x)
    d[x] = K.sub_idx(g[K.add_idx(x, a)], K.mul_idx(c, g[x]));
  return d;
}

}  // namespace

SwitchBuild build_switch(FuncTable base, std::vector<SwitchTerm> terms) {
  const Field& K = *base.field;
  for (const SwitchTerm& t : terms) {
    if (t.u == 0) throw SpecError("switch coefficient u must be nonzero");
    if (t.f.field != &K) throw FieldMismatch("switch term over a different field");
    check_term_image(t, K);
  }
  SwitchBuild out;
  out.h.field = &K;
  out.h.values = base.values;
  for (const SwitchTerm& t : terms)
    for (uint32_t x = 0; x < K.size(); ++x)
      out.h.values[x] = K.add_idx(out.h.values[x], K.mul_idx(t.u, t.f[x]));
  out.base = std::move(base);
  out.terms = std::move(terms);
  return out;
}

SwitchBuild build_switch(const SwitchSpecSrc& spec, const Field& K) {
  FuncTable base = tabulate(spec.base, K);
  std::vector<SwitchTerm> terms;
  terms.reserve(spec.terms.size());
  for (const auto& t : spec.terms) {
    SwitchTerm st;
    st.u = K.parse_elem(t.u).index();
    st.f = tabulate(t.f, K);
    st.degree = t.m;
    terms.push_back(std::move(st));
  }
  return build_switch(std::move(base), std::move(terms));
}

bool EpsilonSet::contains(uint32_t e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

EpsilonSet epsilon_set(const Field& K, Elem c, uint32_t m) {
  if (c.field() != &K) throw FieldMismatch("c from a different field");
  const SubfieldView& view = K.subfield(m);
  std::vector<uint8_t> seen(K.size(), 0);
  for (uint32_t alpha : view.members)
    for (uint32_t beta : view.members) {
      uint32_t e = K.sub_idx(alpha, K.mul_idx(c.index(), beta));
      seen[e] = 1;
    }
  EpsilonSet out;
  out.c = c.index();
  out.degree = m;
  for (uint32_t e = 1; e < K.size(); ++e)
    if (seen[e]) out.elements.push_back(e);
  return out;
}

std::optional<SwitchWitness> pcn_switch_criterion(const FuncTable& F,
                                                  std::span<const SwitchTerm> terms, Elem c) {
  const Field& K = *F.field;
  if (c.field() != &K) throw FieldMismatch("c from a different field");
  if (c_uniformity(F, c) != 1)
    throw BaseNotPcN("criterion requires the base function to be PcN at c = " +
                     K.format_elem(c));
  for (const SwitchTerm& t : terms) {
    if (t.u == 0) throw SpecError("switch coefficient u must be nonzero");
    check_term_image(t, K);
  }
  if (terms.empty()) return std::nullopt;

  const uint32_t q = K.size();
  const uint32_t ci = c.index();
  const size_t k = terms.size();
  std::vector<std::vector<uint32_t>> df(k);
  std::vector<uint32_t> eps(k);
  for (uint32_t a = 0; a < q; ++a) {
    std::vector<uint32_t> dF = c_derivative(F, a, ci);
    for (size_t i = 0; i < k; ++i) df[i] = c_derivative(terms[i].f, a, ci);
    for (uint32_t x = 0; x + 1 < q; ++x) {
      for (uint32_t y = x + 1; y < q; ++y) {
        bool any = false;
        for (size_t i = 0; i < k; ++i) {
          eps[i] = K.sub_idx(df[i][x], df[i][y]);
          any |= eps[i] != 0;
        }
        if (!any) continue;
        uint32_t rhs = 0;
        for (size_t i = 0; i < k; ++i)
          rhs = K.add_idx(rhs, K.mul_idx(terms[i].u, eps[i]));
        if (K.sub_idx(dF[x], dF[y]) == K.neg_idx(rhs))
          return SwitchWitness{a, x, y, eps};
      }
    }
  }
  return std::nullopt;
}

bool verify_witness(const FuncTable& F, std::span<const SwitchTerm> terms, Elem c,
                    const SwitchWitness& w) {
  const Field& K = *F.field;
  const uint32_t ci = c.index();
  if (w.x == w.y || w.epsilons.size() != terms.size()) return false;
  auto cda = [&](const FuncTable& g, uint32_t z) {
    return K.sub_idx(g[K.add_idx(z, w.a)], K.mul_idx(ci, g[z]));
  };
  bool any = false;
  uint32_t rhs = 0;
  for (size_t i = 0; i < terms.size(); ++i) {
    uint32_t e = K.sub_idx(cda(terms[i].f, w.x), cda(terms[i].f, w.y));
    if (e != w.epsilons[i]) return false;
    if (e != 0) {
      any = true;
      if (!epsilon_set(K, c, terms[i].degree).contains(e)) return false;
    }
    rhs = K.add_idx(rhs, K.mul_idx(terms[i].u, e));
  }
  if (!any) return false;
  return K.sub_idx(cda(F, w.x), cda(F, w.y)) == K.neg_idx(rhs);
}

uint64_t switch_uniformity_bound(const Field& K, Elem c, uint32_t m, bool base_pcn) {
  if (c.field() != &K) throw FieldMismatch("c from a different field");
  uint64_t qm = 1;
  for (uint32_t i = 0; i < m; ++i) qm *= K.p();
  bool inside = K.subfield(m).contains(c.index());
  uint64_t bound = inside ? qm : qm * qm;
  return base_pcn ? bound - 1 : bound;
}

bool delta_bound_check(bool base_pcn, Elem c, uint32_t m, uint64_t h_uniformity) {
  return h_uniformity <= switch_uniformity_bound(*c.field(), c, m, base_pcn);
}

std::vector<AaEpsilonCell> aa_epsilon_partition(const FuncTable& f, Elem a, Elem c, uint32_t m) {
  const Field& K = *f.field;
  if (a.field() != &K || c.field() != &K) throw FieldMismatch("a or c from a different field");
  SwitchTerm probe{1, f, m};
  check_term_image(probe, K);
  std::map<uint32_t, std::vector<uint32_t>> cells;
  std::vector<uint32_t> d = c_derivative(f, a.index(), c.index());
  for (uint32_t x = 0; x < K.size(); ++x) cells[d[x]].push_back(x);
  std::vector<AaEpsilonCell> out;
  out.reserve(cells.size());
  for (auto& [eps, members] : cells)
    out.push_back(AaEpsilonCell{a.index(), eps, std::move(members)});
  return out;
}

bool is_additive(const FuncTable& F) {
  const Field& K = *F.field;
  if (F[0] != 0) return false;
  for (uint32_t x = 0; x < K.size(); ++x)
    for (uint32_t y = x; y < K.size(); ++y)
      if (F[K.add_idx(x, y)] != K.add_idx(F[x], F[y])) return false;
  return true;
}

bool WitnessAudit::all_passed() const {
  for (const AuditClause& c : clauses)
    if (c.applicable && !c.passed) return false;
  return true;
}

WitnessAudit witness_structure_audit(const FuncTable& H, const FuncTable& F,
                                     std::span<const SwitchTerm> terms, Elem c, uint64_t delta) {
  const Field& K = *F.field;
  const uint32_t ci = c.index();
  if (c_uniformity(F, c) > delta)
    throw HypothesisViolated("audit requires c_uniformity(F, c) <= delta");

  WitnessAudit audit;
  audit.delta = delta;
  CDiffReport rep = c_ddt(H, c, /*collect_witnesses=*/true);
  audit.h_uniformity = rep.uniformity;
  audit.triggered = rep.uniformity > delta;
  if (!audit.triggered) {
    audit.clauses.push_back({"pairwise-epsilon", false, true, "uniformity within delta"});
    audit.clauses.push_back({"cells-distinct", false, true, "uniformity within delta"});
    audit.clauses.push_back({"extremal-gamma-pairs", false, true, "uniformity within delta"});
    return audit;
  }
  audit.a = rep.witnesses.front().first;
  audit.b = rep.witnesses.front().second;
  for (uint32_t x = 0; x < K.size(); ++x) {
    uint32_t v = K.sub_idx(H[K.add_idx(x, audit.a)], K.mul_idx(ci, H[x]));
    if (v == audit.b) audit.solutions.push_back(x);
  }

  // (i) pairwise relation between the F-differences and the term epsilons.
  AuditClause pairwise{"pairwise-epsilon", true, true, ""};
  std::vector<uint32_t> dF = c_derivative(F, audit.a, ci);
  std::vector<std::vector<uint32_t>> df;
  for (const SwitchTerm& t : terms) df.push_back(c_derivative(t.f, audit.a, ci));
  for (size_t i = 0; i < audit.solutions.size() && pairwise.passed; ++i) {
    for (size_t j = i + 1; j < audit.solutions.size(); ++j) {
      uint32_t xi = audit.solutions[i], xj = audit.solutions[j];
      uint32_t rhs = 0;
      for (size_t t = 0; t < terms.size(); ++t)
        rhs = K.add_idx(rhs, K.mul_idx(terms[t].u, K.sub_idx(df[t][xi], df[t][xj])));
      if (K.sub_idx(dF[xi], dF[xj]) != K.neg_idx(rhs)) {
        pairwise.passed = false;
        pairwise.detail = "failed at pair (" + K.format_elem_index(xi) + ", " +
                          K.format_elem_index(xj) + ")";
        break;
      }
    }
  }
  audit.clauses.push_back(std::move(pairwise));

  // (ii) the solutions must not sit in a single cell of every term.
  AuditClause cells{"cells-distinct", true, true, ""};
  bool all_terms_single = !terms.empty();
  for (size_t t = 0; t < terms.size(); ++t) {
    bool single = true;
    for (size_t i = 1; i < audit.solutions.size(); ++i)
      if (df[t][audit.solutions[i]] != df[t][audit.solutions[0]]) {
        single = false;
        break;
      }
    if (!single) {
      all_terms_single = false;
      break;
    }
  }
  if (all_terms_single && audit.solutions.size() > 1) {
    cells.passed = false;
    cells.detail = "all solutions share one A_{a,eps} cell per term";
  }
  audit.clauses.push_back(std::move(cells));

  // (iii) extremal case for an additive base and a single term.
  AuditClause extremal{"extremal-gamma-pairs", false, true, ""};
  if (terms.size() == 1 && is_additive(F)) {
    uint64_t sharp = switch_uniformity_bound(K, c, terms[0].degree, /*base_pcn=*/true);
    if (audit.h_uniformity == sharp) {
      extremal.applicable = true;
      const SubfieldView& sub = K.subfield(terms[0].degree);
      uint32_t u = terms[0].u;
      bool printed_all = true, flipped_all = true;
      for (uint32_t gamma : sub.members) {
        if (gamma == 0) continue;
        bool printed = false, flipped = false;
        uint32_t one_minus_c = K.sub_idx(1, ci);
        uint32_t c_minus_one = K.neg_idx(one_minus_c);
        uint32_t want_printed = K.mul_idx(u, K.mul_idx(c_minus_one, gamma));
        uint32_t want_flipped = K.mul_idx(u, K.mul_idx(one_minus_c, gamma));
        for (size_t i = 0; i < audit.solutions.size() && !(printed && flipped); ++i)
          for (size_t j = 0; j < audit.solutions.size(); ++j) {
            if (i == j) continue;
            uint32_t d = K.sub_idx(audit.solutions[i], audit.solutions[j]);
            uint32_t lhs = K.mul_idx(one_minus_c, F[d]);
            printed |= lhs == want_printed;
            flipped |= lhs == want_flipped;
          }
        printed_all &= printed;
        flipped_all &= flipped;
      }
      extremal.passed = printed_all || flipped_all;
      extremal.detail = std::string("printed form: ") + (printed_all ? "holds" : "fails") +
                        "; sign-flipped: " + (flipped_all ? "holds" : "fails");
    } else {
      extremal.detail = "uniformity not at the sharpened bound";
    }
  } else {
    extremal.detail = "needs a single term and an additive base";
  }
  audit.clauses.push_back(std::move(extremal));
  return audit;
}

}  // namespace cdu
