#pragma once

// Chow ring of a projective bundle P(E) over a smooth curve.
//
// With xi the relative hyperplane class and F the fibre class, the ring is
// Q[xi, F] / (F^2, xi^r - deg(E) xi^(r-1) F), since c_i(E) = 0 for i >= 2 on
// a curve.  A class is stored as
//
//     sum_k a_k xi^k  +  sum_k b_k xi^k F,      0 <= k < r,
//
// which is the unique reduced form.  xi^(r-1) F is the class of a point.

#include <string>
#include <vector>

#include "higgsnef/model.hpp"
#include "higgsnef/rational.hpp"

namespace higgsnef {

struct ChowAmbient {
  long rank = 1;
  long degree = 0;

  bool operator==(const ChowAmbient&) const = default;
};

ChowAmbient ambient_of(const SplitHiggsBundle& spec);

class ChowClass {
 public:
  /// The zero class.
  explicit ChowClass(ChowAmbient ambient);

  /// Builds a class from arbitrary-length coefficient lists and reduces it:
  /// first xi^n -> deg(E) xi^(n-1) F for n >= r, then any F^2 or xi^n F with
  /// n >= r is dropped.
  static ChowClass from_terms(ChowAmbient ambient, std::vector<Rational> xi,
                              std::vector<Rational> xi_f);

  static ChowClass one(ChowAmbient ambient);
  static ChowClass xi_power(ChowAmbient ambient, long k);
  /// xi^k F.
  static ChowClass xi_power_fibre(ChowAmbient ambient, long k);
  static ChowClass fibre(ChowAmbient ambient) { return xi_power_fibre(ambient, 0); }

  const ChowAmbient& ambient() const { return ambient_; }
  /// Coefficient of xi^k (k < r).
  const Rational& xi_coeff(long k) const;
  /// Coefficient of xi^k F (k < r).
  const Rational& xi_fibre_coeff(long k) const;

  bool is_zero() const;

  /// Codimension of the highest-dimensional nonzero term (xi^k F has
  /// codimension k+1), or -1 for the zero class.
  long min_codim() const;
  /// True when every nonzero term has the given codimension.
  bool is_pure(long codim) const;

  ChowClass& operator+=(const ChowClass& other);
  ChowClass& operator-=(const ChowClass& other);
  ChowClass& operator*=(const Rational& c);

  friend ChowClass operator+(ChowClass a, const ChowClass& b) { return a += b; }
  friend ChowClass operator-(ChowClass a, const ChowClass& b) { return a -= b; }
  friend ChowClass operator*(ChowClass a, const Rational& c) { return a *= c; }
  friend ChowClass operator*(const Rational& c, ChowClass a) { return a *= c; }
  friend ChowClass operator*(const ChowClass& a, const ChowClass& b);

  bool operator==(const ChowClass&) const = default;

  /// e.g. "xi^2 - 4 xi*F".
  std::string str() const;

 private:
  void check_same(const ChowClass& other) const;

  ChowAmbient ambient_;
  std::vector<Rational> xi_;
  std::vector<Rational> xi_f_;
};

/// Reduced product; throws Error on ambient mismatch.
ChowClass chow_mul(const ChowClass& x, const ChowClass& y);

/// The xi^(r-1) F coefficient, i.e. the degree of the 0-cycle part.
Rational chow_degree(const ChowClass& x);

/// a xi + b F.
struct DivisorClass {
  ChowAmbient ambient;
  Rational xi_coeff;
  Rational fibre_coeff;

  ChowClass to_class() const;
  std::string str() const;

  bool operator==(const DivisorClass&) const = default;
};

/// Class of P(G) for a quotient E -> G of rank q with kernel of degree
/// deg_kernel, after removing torsion of degree deg_torsion:
///   xi^(r-q) - (deg_kernel + deg_torsion) xi^(r-q-1) F.
ChowClass projectivized_quotient_class(ChowAmbient ambient, long q,
                                       long deg_kernel, long deg_torsion);

/// Pushes a class on P(E/E') into P(E) by the projection formula:
/// xi'^k -> xi^k [P(E/E')], xi'^k F' -> xi^k F [P(E/E')].  `sub_class` must
/// be the class of P(E/E') in P(E), i.e. xi^c - (deg E - deg E/E') xi^(c-1) F
/// with c the corank.
ChowClass pushforward_sub(const ChowClass& x, const ChowClass& sub_class);

Rational divisor_pairing(const ChowClass& cycle, const DivisorClass& d);

/// lambda = xi - mu(E) F.
DivisorClass lambda_divisor(ChowAmbient ambient);

/// The theta_s class of the Grassmannian of rank-s quotients, carried to
/// P(Lambda^s E) through the Pluecker embedding, where det Q_s is the
/// hyperplane bundle: xi - mu(Lambda^s E) F on the ambient of Lambda^s E.
DivisorClass theta_via_plucker(const SplitHiggsBundle& spec, long s);

struct LemminoCheck {
  Rational value;
  Rational bound;
  bool ok = false;
};

/// For a curve class a lambda^(r-1) + b lambda^(r-2) F with a, b >= 0 on
/// P(G), G semistable of slope mu: [C] . xi = a mu + b >= a mu = mu p_*[C].
LemminoCheck lemmino_check(const Rational& a, const Rational& b,
                           const Rational& mu);

}  // namespace higgsnef
