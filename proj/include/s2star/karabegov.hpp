#pragma once

#include <map>
#include <optional>
#include <vector>

#include "s2star/chart.hpp"
#include "s2star/linsolve.hpp"
#include "s2star/sfunction.hpp"
#include "s2star/star.hpp"

namespace s2star {

/// Chart-level data of the Karabegov representation: orientation of the
/// complex structure and the (1/h)-scaled equivariant family. Immutable once
/// selected; all the operators below are pure.
struct KarabegovConfig {
  OrbitParams params;
  ChartOrientation orientation;
  /// Preimage search and chart conversion happen below this filtration bound
  /// unless a caller passes an explicit one.
  unsigned max_degree = 12;
};

namespace detail {

/// Chart form of the equivariant family member f_Z for a generator.
inline ChartFunction chart_family(Gen z, const OrbitParams &params) {
  Scalar il = Scalar::i() * Scalar(params.lambda);
  switch (z) {
  case Gen::H: return chart_A().scaled(il);
  case Gen::X: return chart_B().scaled(il);
  case Gen::Y: return chart_C().scaled(il);
  }
  return ChartFunction::zero();
}

inline ChartVectorField holomorphic_part(const ChartVectorField &v,
                                         ChartOrientation orient) {
  if (orient == ChartOrientation::ZIsHolomorphic)
    return ChartVectorField{v.P, ChartFunction::zero()};
  return ChartVectorField{ChartFunction::zero(), v.Q};
}

inline ChartVectorField antiholomorphic_part(const ChartVectorField &v,
                                              ChartOrientation orient) {
  if (orient == ChartOrientation::ZIsHolomorphic)
    return ChartVectorField{ChartFunction::zero(), v.Q};
  return ChartVectorField{v.P, ChartFunction::zero()};
}

inline std::array<GaussRat, 4> gen_matrix_entries(Gen g) { return gen_matrix(g); }

} // namespace detail

/// opl_Z = xi_Z - (i/h) f_Z, the left representation operator at generator Z.
inline ChartFunction opl_gen(Gen z, const ChartFunction &f, ChartOrientation orient,
                             const OrbitParams &params) {
  ChartVectorField v = fundamental_field(detail::gen_matrix_entries(z));
  ChartVectorField xi = detail::holomorphic_part(v, orient);
  Scalar i_over_h = Scalar::i() / Scalar::h();
  return xi.apply(f) - (detail::chart_family(z, params) * f).scaled(i_over_h);
}

/// opr_Z = eta_Z + (i/h) f_Z.
inline ChartFunction opr_gen(Gen z, const ChartFunction &f, ChartOrientation orient,
                             const OrbitParams &params) {
  ChartVectorField v = fundamental_field(detail::gen_matrix_entries(z));
  ChartVectorField eta = detail::antiholomorphic_part(v, orient);
  Scalar i_over_h = Scalar::i() / Scalar::h();
  return eta.apply(f) + (detail::chart_family(z, params) * f).scaled(i_over_h);
}

/// Algebra extension of opl to U(sl2): opl(Y^a H^b X^c) =
/// opl(Y)^a opl(H)^b opl(X)^c applied left to right.
inline ChartFunction opl(const EnvElement &u, const ChartFunction &f,
                         ChartOrientation orient, const OrbitParams &params) {
  ChartFunction out = ChartFunction::zero();
  for (auto &[m, coeff] : u.terms()) {
    ChartFunction g = f;
    for (unsigned i = 0; i < m.c; ++i)
      g = opl_gen(Gen::X, g, orient, params);
    for (unsigned i = 0; i < m.b; ++i)
      g = opl_gen(Gen::H, g, orient, params);
    for (unsigned i = 0; i < m.a; ++i)
      g = opl_gen(Gen::Y, g, orient, params);
    out = out + g.scaled(coeff);
  }
  return out;
}

inline ChartFunction opr(const EnvElement &u, const ChartFunction &f,
                         ChartOrientation orient, const OrbitParams &params) {
  ChartFunction out = ChartFunction::zero();
  for (auto &[m, coeff] : u.terms()) {
    ChartFunction g = f;
    for (unsigned i = 0; i < m.c; ++i)
      g = opr_gen(Gen::X, g, orient, params);
    for (unsigned i = 0; i < m.b; ++i)
      g = opr_gen(Gen::H, g, orient, params);
    for (unsigned i = 0; i < m.a; ++i)
      g = opr_gen(Gen::Y, g, orient, params);
    out = out + g.scaled(coeff);
  }
  return out;
}

/// Opl(u) = opl(u) 1 as a chart function.
inline ChartFunction Opl(const EnvElement &u, ChartOrientation orient,
                         const OrbitParams &params) {
  return opl(u, ChartFunction::one(), orient, params);
}

inline ChartFunction Opr(const EnvElement &u, ChartOrientation orient,
                         const OrbitParams &params) {
  return opr(u, ChartFunction::one(), orient, params);
}

/// Tries both chart orientations and returns the single one for which
/// opl(Y) annihilates constants at the base point and Opl(u) pulled back to
/// the group agrees with the s-function for u in {H, X, Y, XY} at sample
/// points. Exactly one must pass; anything else is an implementation bug.
inline ChartOrientation select_orientation(const OrbitParams &params) {
  auto validates = [&](ChartOrientation orient) {
    // opl(Y) 1 must vanish at z = 0 (the base point).
    ChartFunction oy = Opl(EnvElement::gen(Gen::Y), orient, params);
    if (!oy.eval(GaussRat(0)).is_zero())
      return false;
    std::vector<EnvElement> us{EnvElement::gen(Gen::H), EnvElement::gen(Gen::X),
                               EnvElement::gen(Gen::Y),
                               pbw_mul(EnvElement::gen(Gen::X), EnvElement::gen(Gen::Y))};
    auto pts = sample_group_elements(5, /*require_u_nonzero=*/true);
    Scalar s = params.lambda_over_h();
    for (auto &u : us) {
      ChartFunction cf = Opl(u, orient, params);
      for (auto &k : pts) {
        if (cf.eval(chart_point(k)) != s_function(u, k, s))
          return false;
      }
    }
    return true;
  };
  bool z_ok = validates(ChartOrientation::ZIsHolomorphic);
  bool zb_ok = validates(ChartOrientation::ZbarIsHolomorphic);
  if (z_ok && zb_ok)
    throw MathError(MathError::Code::BothOrientationsValid,
                    "both chart orientations validate");
  if (!z_ok && !zb_ok)
    throw MathError(MathError::Code::NoOrientationValid,
                    "no chart orientation validates");
  return z_ok ? ChartOrientation::ZIsHolomorphic : ChartOrientation::ZbarIsHolomorphic;
}

inline KarabegovConfig make_karabegov_config(const OrbitParams &params,
                                             unsigned max_degree = 12) {
  return KarabegovConfig{params, select_orientation(params), max_degree};
}

/// The algebraic realization of Opl: L(u) = s_{lambda/h} u in ABC form.
/// The chart computation is a cross-check, not the definition.
inline InvariantPoly L_map(const EnvElement &u, const KarabegovConfig &cfg) {
  SpherePoly s = s_function_symbolic(u, cfg.params.lambda_over_h());
  return to_ABC(s, std::max(2 * u.filtration(), s.degree()));
}

struct PreimageResult {
  EnvElement element;
  /// Nullspace of the solve at the degree where it succeeded; nontrivial
  /// entries witness ker L.
  std::vector<EnvElement> kernel;
};

/// Minimal-filtration-degree solution of L(w) = p by one exact K-linear
/// solve per candidate degree.
inline PreimageResult solve_preimage(const InvariantPoly &p, unsigned degree,
                                     const KarabegovConfig &cfg) {
  for (unsigned d = 0; d <= degree; ++d) {
    std::vector<Mono3> basis;
    for (unsigned a = 0; a <= d; ++a)
      for (unsigned b = 0; a + b <= d; ++b)
        for (unsigned c = 0; a + b + c <= d; ++c)
          basis.push_back(Mono3{a, b, c});
    std::map<MonoAbc, std::size_t> row_of;
    auto row_index = [&row_of](const MonoAbc &m) {
      auto it = row_of.find(m);
      if (it != row_of.end())
        return it->second;
      std::size_t idx = row_of.size();
      row_of.emplace(m, idx);
      return idx;
    };
    std::vector<InvariantPoly> cols;
    cols.reserve(basis.size());
    for (auto &m : basis) {
      cols.push_back(L_map(EnvElement::monomial(m), cfg));
      for (auto &[mono, c] : cols.back().poly.terms())
        row_index(mono);
    }
    for (auto &[mono, c] : p.poly.terms())
      row_index(mono);
    SMat A(row_of.size(), SVec(basis.size(), Scalar::zero()));
    SVec rhs(row_of.size(), Scalar::zero());
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (auto &[mono, c] : cols[j].poly.terms())
        A[row_of[mono]][j] = c;
    for (auto &[mono, c] : p.poly.terms())
      rhs[row_of[mono]] = c;
    auto sol = solve_linear(std::move(A), std::move(rhs));
    if (!sol.solvable)
      continue;
    PreimageResult out;
    for (std::size_t j = 0; j < basis.size(); ++j)
      out.element.add_term(basis[j], sol.particular[j]);
    for (auto &v : sol.nullspace) {
      EnvElement k;
      for (std::size_t j = 0; j < basis.size(); ++j)
        k.add_term(basis[j], v[j]);
      out.kernel.push_back(std::move(k));
    }
    return out;
  }
  throw MathError(MathError::Code::NoPreimageWithinDegree,
                  "no L-preimage within filtration degree " + std::to_string(degree));
}

/// Conversion of a chart function back to ABC normal form by exact linear
/// matching of numerators over a common (1 + z zbar) power.
inline InvariantPoly chart_to_abc(const ChartFunction &f, unsigned degree_bound) {
  std::vector<MonoAbc> basis;
  for (unsigned d = 0; d <= degree_bound; ++d)
    for (unsigned ea = 0; ea <= std::min(1u, d); ++ea)
      for (unsigned eb = 0; ea + eb <= d; ++eb)
        basis.push_back(MonoAbc{ea, eb, d - ea - eb});
  std::vector<ChartFunction> cols;
  unsigned common_m = f.m;
  cols.reserve(basis.size());
  for (auto &m : basis) {
    cols.push_back(chart_of(InvariantPoly{AbcPoly::monomial(m)}));
    common_m = std::max(common_m, cols.back().m);
  }
  Poly2 disc = Poly2::one() + Poly2::monomial(Mono2{1, 1});
  std::map<Mono2, std::size_t> row_of;
  auto row_index = [&row_of](const Mono2 &m) {
    auto it = row_of.find(m);
    if (it != row_of.end())
      return it->second;
    std::size_t idx = row_of.size();
    row_of.emplace(m, idx);
    return idx;
  };
  std::vector<Poly2> col_nums;
  for (auto &c : cols) {
    col_nums.push_back(c.num * disc.pow(common_m - c.m));
    for (auto &[mono, s] : col_nums.back().terms())
      row_index(mono);
  }
  Poly2 rhs_num = f.num * disc.pow(common_m - f.m);
  for (auto &[mono, s] : rhs_num.terms())
    row_index(mono);
  SMat A(row_of.size(), SVec(basis.size(), Scalar::zero()));
  SVec rhs(row_of.size(), Scalar::zero());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (auto &[mono, s] : col_nums[j].terms())
      A[row_of[mono]][j] = s;
  for (auto &[mono, s] : rhs_num.terms())
    rhs[row_of[mono]] = s;
  auto sol = solve_linear(std::move(A), std::move(rhs));
  if (!sol.solvable)
    throw MathError(MathError::Code::ChartConversionFailed,
                    "chart function is not an ABC polynomial of degree <= " +
                        std::to_string(degree_bound));
  AbcPoly out;
  for (std::size_t j = 0; j < basis.size(); ++j)
    out.add_term(basis[j], sol.particular[j]);
  return InvariantPoly{out};
}

/// Karabegov's product: realize p as Opl of a preimage and apply the left
/// operator to q.
inline InvariantPoly karabegov_star(const InvariantPoly &p, const InvariantPoly &q,
                                    const KarabegovConfig &cfg) {
  unsigned start = p.degree();
  std::optional<PreimageResult> pre;
  for (unsigned d = start; d <= cfg.max_degree; ++d) {
    try {
      pre = solve_preimage(p, d, cfg);
      break;
    } catch (const MathError &e) {
      if (e.code() != MathError::Code::NoPreimageWithinDegree)
        throw;
    }
  }
  if (!pre)
    throw MathError(MathError::Code::NoPreimageWithinDegree,
                    "no L-preimage for the left factor within degree " +
                        std::to_string(cfg.max_degree));
  ChartFunction result = opl(pre->element, chart_of(q), cfg.orientation, cfg.params);
  return chart_to_abc(result, p.degree() + q.degree() + 2);
}

/// Both sides of the Lie-derivative identities
///   L_{X~_A} s u (e) = s(S(X_A) u)(e)   (left, tuples over X)
///   L_{Y~_A} s u (e) = s(u Y_A)(e)      (right, tuples over Y)
/// with the left side computed honestly through exp(-t ad) flow polynomials
/// and mixed partials at zero.
inline bool lie_derivative_identity_check(const EnvElement &u, unsigned tuple_length,
                                          Gen side, const OrbitParams &params) {
  if (side == Gen::H)
    throw MathError(MathError::Code::InvalidArgument, "tuples range over X or Y");
  Scalar s = params.lambda_over_h();
  // Multivariate flow polynomial: map from exponent vectors of (t_1..t_L) to
  // coefficients in U(sl2). Applying exp(-t_i ad_Z) multiplies out exactly.
  std::map<std::vector<unsigned>, EnvElement> flow;
  flow.emplace(std::vector<unsigned>(tuple_length, 0), u);
  for (unsigned i = 0; i < tuple_length; ++i) {
    std::map<std::vector<unsigned>, EnvElement> next;
    for (auto &[expo, elem] : flow) {
      EnvElement cur = elem;
      unsigned long k = 0;
      while (!cur.is_zero()) {
        auto e2 = expo;
        e2[i] = static_cast<unsigned>(k);
        auto it = next.find(e2);
        if (it == next.end())
          next.emplace(e2, cur);
        else
          it->second += cur;
        ++k;
        cur = ad_gen(side, cur).scaled(Scalar(GaussRat(Rat(-1, static_cast<long>(k)))));
      }
    }
    flow = std::move(next);
  }
  std::vector<unsigned> ones(tuple_length, 1);
  EnvElement mixed;
  auto it = flow.find(ones);
  if (it != flow.end())
    mixed = it->second;
  Scalar lhs = character(project0(mixed), s);
  // Right-hand sides per the identities.
  EnvElement tuple_elem = EnvElement::one();
  for (unsigned i = 0; i < tuple_length; ++i)
    tuple_elem = pbw_mul(tuple_elem, EnvElement::gen(side));
  Scalar rhs;
  if (side == Gen::X)
    rhs = character(project0(pbw_mul(antipode(tuple_elem), u)), s);
  else
    rhs = character(project0(pbw_mul(u, tuple_elem)), s);
  return lhs == rhs;
}

} // namespace s2star
