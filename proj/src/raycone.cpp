#include "copos/raycone.hpp"

#include <algorithm>

#include "copos/rational.hpp"
#include "copos/simplex.hpp"

namespace copos {

namespace {

// Extended rational mirroring ExtReal; arithmetic stays exact so the theorem
// identities can be tested as equalities.
struct ExtRational {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rational v;

  static ExtRational neg_inf() { return {Kind::NegInf, Rational()}; }
  static ExtRational pos_inf() { return {Kind::PosInf, Rational()}; }
  static ExtRational finite(Rational r) { return {Kind::Finite, r}; }

  bool operator==(const ExtRational& o) const {
    if (kind != o.kind) return false;
    return kind != Kind::Finite || v == o.v;
  }

  ExtReal to_ext_real() const {
    switch (kind) {
      case Kind::NegInf:
        return ExtReal::neg_inf();
      case Kind::PosInf:
        return ExtReal::pos_inf();
      default:
        return ExtReal::finite(v.to_double());
    }
  }
};

ExtRational ext_add(const ExtRational& a, const ExtRational& b) {
  using K = ExtRational::Kind;
  if (a.kind == K::NegInf || b.kind == K::NegInf) {
    if (a.kind == K::PosInf || b.kind == K::PosInf) {
      fail(ErrorCode::Internal, "indeterminate extended sum");
    }
    return ExtRational::neg_inf();
  }
  if (a.kind == K::PosInf || b.kind == K::PosInf) return ExtRational::pos_inf();
  return ExtRational::finite(a.v + b.v);
}

std::vector<Rational> to_rational(std::span<const double> v) {
  std::vector<Rational> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational::from_double(v[i]);
  return out;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct ConeData {
  std::vector<std::vector<Rational>> atoms;
  std::vector<Rational> h;  // <H0, atom_i>
};

ConeData prepare(const RayCone& cone, std::span<const double> h0) {
  if (static_cast<int>(h0.size()) != cone.dim) {
    fail(ErrorCode::InvalidArgument, "H0 dimension does not match cone");
  }
  ConeData data;
  std::vector<Rational> h0r = to_rational(h0);
  for (const auto& atom : cone.atoms) {
    if (static_cast<int>(atom.size()) != cone.dim) {
      fail(ErrorCode::InvalidArgument, "atom dimension does not match cone");
    }
    bool nonzero = false;
    for (double v : atom) nonzero = nonzero || v != 0.0;
    if (!nonzero) fail(ErrorCode::InvalidArgument, "cone atom must be nonzero");
    data.atoms.push_back(to_rational(atom));
    data.h.push_back(dot(data.atoms.back(), h0r));
  }
  return data;
}

bool condition_i0(const ConeData& data, std::span<const double> h0) {
  bool h0_nonzero = false;
  for (double v : h0) h0_nonzero = h0_nonzero || v != 0.0;
  if (!h0_nonzero) return false;
  bool has_positive = false;
  for (const Rational& hi : data.h) {
    if (hi.sign() < 0) return false;
    if (hi.sign() > 0) has_positive = true;
  }
  return has_positive;  // G(K,1) nonempty
}

ExtRational zeta_nonconvex_exact(const ConeData& data, const std::vector<Rational>& p,
                                 const Rational& rho) {
  if (rho.sign() == 0) {
    // Feasible set is the union of the recession rays and the origin.
    for (std::size_t i = 0; i < data.atoms.size(); ++i) {
      if (data.h[i].is_zero() && dot(data.atoms[i], p).sign() < 0) {
        return ExtRational::neg_inf();
      }
    }
    return ExtRational::finite(Rational());
  }
  bool found = false;
  Rational best;
  for (std::size_t i = 0; i < data.atoms.size(); ++i) {
    if (data.h[i].sign() <= 0) continue;
    Rational value = dot(data.atoms[i], p) * rho / data.h[i];
    if (!found || value < best) {
      best = value;
      found = true;
    }
  }
  if (!found) return ExtRational::pos_inf();
  return ExtRational::finite(best);
}

ExtRational zeta_convex_exact(const ConeData& data, const std::vector<Rational>& p,
                              const Rational& rho) {
  const int k = static_cast<int>(data.atoms.size());
  std::vector<std::vector<Rational>> a(1, std::vector<Rational>(k));
  std::vector<Rational> b{rho};
  std::vector<Rational> c(k);
  for (int i = 0; i < k; ++i) {
    a[0][i] = data.h[i];
    c[i] = dot(data.atoms[i], p);
  }
  detail::Simplex<Rational> solver;
  auto r = solver.solve(a, b, c);
  switch (r.status) {
    case detail::SimplexStatus::Infeasible:
      return ExtRational::pos_inf();
    case detail::SimplexStatus::Unbounded:
      return ExtRational::neg_inf();
    default:
      return ExtRational::finite(r.value);
  }
}

}  // namespace

bool check_condition_i0(const RayCone& cone, std::span<const double> h0) {
  ConeData data = prepare(cone, h0);
  return condition_i0(data, h0);
}

SliceReport slice(const RayCone& cone, std::span<const double> h0, double rho) {
  if (rho < 0.0) fail(ErrorCode::InvalidArgument, "slice level must be nonnegative");
  ConeData data = prepare(cone, h0);
  Rational rho_r = Rational::from_double(rho);

  SliceReport report;
  report.rho = rho;
  std::vector<std::vector<Rational>> seen;
  for (std::size_t i = 0; i < data.atoms.size(); ++i) {
    if (data.h[i].is_zero()) {
      report.recession_atoms.push_back(cone.atoms[i]);
      continue;
    }
    if (rho_r.sign() == 0 || data.h[i].sign() < 0) continue;
    std::vector<Rational> scaled(cone.dim);
    for (int j = 0; j < cone.dim; ++j) scaled[j] = data.atoms[i][j] * rho_r / data.h[i];
    if (std::find(seen.begin(), seen.end(), scaled) != seen.end()) continue;
    seen.push_back(scaled);
    std::vector<double> pt(cone.dim);
    for (int j = 0; j < cone.dim; ++j) pt[j] = scaled[j].to_double();
    report.slice_atoms.push_back(std::move(pt));
  }
  return report;
}

ExtReal zeta_nonconvex(const RayCone& cone, std::span<const double> h0,
                       std::span<const double> p, double rho) {
  ConeData data = prepare(cone, h0);
  return zeta_nonconvex_exact(data, to_rational(p), Rational::from_double(rho)).to_ext_real();
}

ExtReal zeta_convex(const RayCone& cone, std::span<const double> h0,
                    std::span<const double> p, double rho) {
  ConeData data = prepare(cone, h0);
  return zeta_convex_exact(data, to_rational(p), Rational::from_double(rho)).to_ext_real();
}

TheoremMain0Report verify_theorem_main0(const RayCone& cone, std::span<const double> h0,
                                        std::span<const double> q0) {
  ConeData data = prepare(cone, h0);
  if (!condition_i0(data, h0)) {
    fail(ErrorCode::InvalidArgument, "condition I0 violated for the given cone and H0");
  }
  std::vector<Rational> p = to_rational(q0);

  ExtRational nc1 = zeta_nonconvex_exact(data, p, Rational(1));
  ExtRational nc0 = zeta_nonconvex_exact(data, p, Rational(0));
  ExtRational co1 = zeta_convex_exact(data, p, Rational(1));
  ExtRational co0 = zeta_convex_exact(data, p, Rational(0));

  TheoremMain0Report report;
  report.zeta_nonconvex_1 = nc1.to_ext_real();
  report.zeta_nonconvex_0 = nc0.to_ext_real();
  report.zeta_convex_1 = co1.to_ext_real();
  report.zeta_convex_0 = co0.to_ext_real();
  report.recession_hull_match = (nc0 == co0);
  report.additive_identity = (co1 == ext_add(nc1, nc0));
  report.condition_ii0 =
      nc0.kind == ExtRational::Kind::Finite && nc0.v.sign() >= 0;
  report.equality = (co1 == nc1);
  report.iff_consistent =
      report.equality == (report.condition_ii0 || nc1.kind == ExtRational::Kind::NegInf);
  return report;
}

}  // namespace copos
