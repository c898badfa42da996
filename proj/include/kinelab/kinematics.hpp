#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kinelab/gen_complex.hpp"
#include "kinelab/matrix.hpp"
#include "kinelab/quaternion.hpp"

namespace kinelab {

/// Bracket coefficients [K,H] = p P, [K,P] = h H, [H,P] = k K.
struct StructureConstants {
  double p = 0.0;
  double h = 0.0;
  double k = 0.0;

  friend constexpr bool operator==(const StructureConstants& a, const StructureConstants& b) {
    return a.p == b.p && a.h == b.h && a.k == b.k;
  }
};

/// Constants of the two-parameter family: (1, -kappa2, kappa1).
inline StructureConstants family_constants(const CurvatureParams& params) {
  return {1.0, -params.kappa2.value, params.kappa1.value};
}

inline bool is_normalized(const StructureConstants& sc) {
  const auto ok = [](double c) { return c == -1.0 || c == 0.0 || c == 1.0; };
  return ok(sc.p) && ok(sc.h) && ok(sc.k);
}

/// Basis rescalings (K,H,P) -> (+-K,+-H,+-P) multiply all three constants by
/// one common sign; the canonical orbit representative has its first nonzero
/// constant positive.
inline StructureConstants sign_canonicalize(const StructureConstants& sc) {
  double lead = sc.p != 0.0 ? sc.p : (sc.h != 0.0 ? sc.h : sc.k);
  if (lead < 0.0) return {-sc.p, -sc.h, -sc.k};
  return sc;
}

/// The 11 kinematical groups plus the 3 constant-curvature isometry groups.
enum class GroupName {
  dS, adS, M, Mplus, Mprime, C, Nplus, Nminus, G, SdS, St, El, Eu, H, Unrecognized
};

inline std::string_view to_string(GroupName g) {
  switch (g) {
    case GroupName::dS: return "dS";
    case GroupName::adS: return "adS";
    case GroupName::M: return "M";
    case GroupName::Mplus: return "M+";
    case GroupName::Mprime: return "M'";
    case GroupName::C: return "C";
    case GroupName::Nplus: return "N+";
    case GroupName::Nminus: return "N-";
    case GroupName::G: return "G";
    case GroupName::SdS: return "SdS";
    case GroupName::St: return "St";
    case GroupName::El: return "El";
    case GroupName::Eu: return "Eu";
    case GroupName::H: return "H";
    case GroupName::Unrecognized: return "unrecognized";
  }
  return "unrecognized";
}

/// Sign-grid classification of (kappa1, kappa2).
inline GroupName classify(const CurvatureParams& params) {
  const int s1 = params.kappa1.sign();
  const int s2 = params.kappa2.sign();
  if (s2 < 0) return s1 < 0 ? GroupName::dS : (s1 == 0 ? GroupName::M : GroupName::adS);
  if (s2 == 0) return s1 < 0 ? GroupName::Nplus : (s1 == 0 ? GroupName::G : GroupName::Nminus);
  return s1 < 0 ? GroupName::H : (s1 == 0 ? GroupName::Eu : GroupName::El);
}

/// Characteristic-bracket lookup over the 11 kinematical columns plus the 3
/// non-kinematical ones, canonicalized over the basis-sign orbit.
inline GroupName classify_sc(const StructureConstants& sc) {
  if (!is_normalized(sc))
    throw std::invalid_argument("classify_sc: structure constants must be normalized to {-1,0,1}");
  const StructureConstants c = sign_canonicalize(sc);
  struct Row {
    double p, h, k;
    GroupName name;
  };
  // Canonical (p, h, k) triples; SdS's table form (0,0,-1) canonicalizes to (0,0,1).
  static constexpr Row table[] = {
      {1, 1, -1, GroupName::dS},    {1, 1, 1, GroupName::adS},   {1, 1, 0, GroupName::M},
      {0, 1, -1, GroupName::Mplus}, {0, 1, 1, GroupName::Mprime},{0, 1, 0, GroupName::C},
      {1, 0, -1, GroupName::Nplus}, {1, 0, 1, GroupName::Nminus},{1, 0, 0, GroupName::G},
      {0, 0, 1, GroupName::SdS},    {0, 0, 0, GroupName::St},    {1, -1, 1, GroupName::El},
      {1, -1, 0, GroupName::Eu},    {1, -1, -1, GroupName::H},
  };
  for (const Row& row : table)
    if (c.p == row.p && c.h == row.h && c.k == row.k) return row.name;
  return GroupName::Unrecognized;
}

/// The three contraction types, named for the quantities that become small.
enum class Contraction { SpeedSpace, SpeedTime, SpaceTime };

/// Exact epsilon -> 0 limit of the brackets after rescaling the contracted
/// generators; no runtime epsilon is involved.
inline StructureConstants contract_sc(const StructureConstants& sc, Contraction kind) {
  switch (kind) {
    case Contraction::SpeedSpace: return {sc.p, 0.0, sc.k};  // K -> eK, P -> eP
    case Contraction::SpeedTime: return {0.0, sc.h, sc.k};   // K -> eK, H -> eH
    case Contraction::SpaceTime: return {sc.p, sc.h, 0.0};   // P -> eP, H -> eH
  }
  throw std::logic_error("contract_sc: bad contraction tag");
}

/// Generator-exchange symmetries; each is an involution on constant triples.
enum class Symmetry { SP, SH, SK };

inline StructureConstants symmetry_sc(const StructureConstants& sc, Symmetry which) {
  switch (which) {
    case Symmetry::SP: return {-sc.p, sc.k, sc.h};        // K <-> H
    case Symmetry::SH: return {-sc.k, -sc.h, -sc.p};      // K <-> P
    case Symmetry::SK: return {sc.h, sc.p, -sc.k};        // H <-> P
  }
  throw std::logic_error("symmetry_sc: bad symmetry tag");
}

enum class Generator { H, P, K };

struct Generators {
  Mat3 H, P, K;
};

/// Real 3x3 representation acting on (y, t, x); the commutators reproduce
/// [K,H] = P, [K,P] = -kappa2 H, [H,P] = kappa1 K.
inline Generators generators(const CurvatureParams& params) {
  const double k1 = params.kappa1.value;
  const double k2 = params.kappa2.value;
  Generators g;
  g.H(0, 1) = -k1;
  g.H(1, 0) = 1.0;
  g.P(0, 2) = -k1 * k2;
  g.P(2, 0) = 1.0;
  g.K(1, 2) = -k2;
  g.K(2, 1) = 1.0;
  return g;
}

/// Invariant ambient form diag(1, kappa1, kappa1 kappa2) preserved by the
/// group elements.
inline Mat3 so_metric(const CurvatureParams& params) {
  const double k1 = params.kappa1.value;
  return Mat3::diagonal(1.0, k1, k1 * params.kappa2.value);
}

/// Closed-form one-parameter subgroup element e^{param * generator}, built
/// from C/S with label kappa1, kappa1 kappa2, or kappa2.
inline Mat3 one_param(Generator gen, double param, const CurvatureParams& params) {
  const double k1 = params.kappa1.value;
  const double k2 = params.kappa2.value;
  Mat3 r = Mat3::identity();
  switch (gen) {
    case Generator::H: {
      const CkPair cs = ck_trig(params.kappa1, param);
      r(0, 0) = cs.c;
      r(0, 1) = -k1 * cs.s;
      r(1, 0) = cs.s;
      r(1, 1) = cs.c;
      return r;
    }
    case Generator::P: {
      const CkPair cs = ck_trig(params.kappa12(), param);
      r(0, 0) = cs.c;
      r(0, 2) = -k1 * k2 * cs.s;
      r(2, 0) = cs.s;
      r(2, 2) = cs.c;
      return r;
    }
    case Generator::K: {
      const CkPair cs = ck_trig(params.kappa2, param);
      r(1, 1) = cs.c;
      r(1, 2) = -k2 * cs.s;
      r(2, 1) = cs.s;
      r(2, 2) = cs.c;
      return r;
    }
  }
  throw std::logic_error("one_param: bad generator tag");
}

/// Spacetime event in the (t, x) coordinates of the complex encoding z = t + i x.
struct Event {
  double t = 0.0;
  double x = 0.0;
};

/// Inertial boost of velocity v: encode z = t + i x over kappa2, rotate by
/// e^{i theta} with theta = T^{-1}_{kappa2}(-v), decode. Superluminal v for
/// kappa2 < 0 raises the light-cone domain error.
inline Event boost(const CurvatureParams& params, double v, const Event& e) {
  const double theta = ck_tan_inv(params.kappa2, -v);
  const GenComplex z{e.t, e.x, params.kappa2};
  const GenComplex z2 = gc_exp_i(params.kappa2, theta) * z;
  return {z2.re, z2.im};
}

/// (kappa1, kappa2) presets for the nine groups the family reaches directly.
inline std::optional<CurvatureParams> preset_params(GroupName g) {
  switch (g) {
    case GroupName::dS: return CurvatureParams{-1.0, -1.0};
    case GroupName::adS: return CurvatureParams{1.0, -1.0};
    case GroupName::M: return CurvatureParams{0.0, -1.0};
    case GroupName::Nplus: return CurvatureParams{-1.0, 0.0};
    case GroupName::Nminus: return CurvatureParams{1.0, 0.0};
    case GroupName::G: return CurvatureParams{0.0, 0.0};
    case GroupName::H: return CurvatureParams{-1.0, 1.0};
    case GroupName::Eu: return CurvatureParams{0.0, 1.0};
    case GroupName::El: return CurvatureParams{1.0, 1.0};
    default: return std::nullopt;
  }
}

inline std::optional<CurvatureParams> preset_params(std::string_view name) {
  static constexpr std::array<GroupName, 9> presets = {
      GroupName::dS, GroupName::adS, GroupName::M,      GroupName::Nplus, GroupName::Nminus,
      GroupName::G,  GroupName::H,   GroupName::Eu,     GroupName::El};
  for (GroupName g : presets)
    if (to_string(g) == name) return preset_params(g);
  return std::nullopt;
}

}  // namespace kinelab
