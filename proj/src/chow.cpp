#include "higgsnef/chow.hpp"

#include <algorithm>

namespace higgsnef {

ChowAmbient ambient_of(const SplitHiggsBundle& spec) {
  return ChowAmbient{spec.rank(), spec.degree()};
}

namespace {

void check_ambient(const ChowAmbient& a) {
  if (a.rank < 1) throw Error("ambient rank must be >= 1");
}

std::string monomial(long k, bool with_fibre) {
  std::string m;
  if (k == 1) m = "xi";
  if (k > 1) m = "xi^" + std::to_string(k);
  if (with_fibre) m += m.empty() ? "F" : "*F";
  return m.empty() ? "1" : m;
}

void append_term(std::string& out, const Rational& c, const std::string& mono) {
  if (c == 0) return;
  Rational mag = abs(c);
  if (out.empty()) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? " - " : " + ";
  }
  if (mono == "1") {
    out += to_string(mag);
  } else if (mag == 1) {
    out += mono;
  } else {
    out += to_string(mag) + " " + mono;
  }
}

}  // namespace

ChowClass::ChowClass(ChowAmbient ambient)
    : ambient_(ambient),
      xi_(static_cast<std::size_t>(std::max(ambient.rank, 1L))),
      xi_f_(static_cast<std::size_t>(std::max(ambient.rank, 1L))) {
  check_ambient(ambient);
}

ChowClass ChowClass::from_terms(ChowAmbient ambient, std::vector<Rational> xi,
                                std::vector<Rational> xi_f) {
  check_ambient(ambient);
  const auto r = static_cast<std::size_t>(ambient.rank);
  if (xi_f.size() < xi.size()) xi_f.resize(xi.size());
  // Grothendieck relation first, then F^2 = 0 truncation.
  for (std::size_t n = xi.size(); n-- > r;) {
    if (xi[n] != 0) {
      xi_f[n - 1] += ambient.degree * xi[n];
      xi[n] = 0;
    }
  }
  xi.resize(r);
  xi_f.resize(r);
  ChowClass out(ambient);
  out.xi_ = std::move(xi);
  out.xi_f_ = std::move(xi_f);
  return out;
}

ChowClass ChowClass::one(ChowAmbient ambient) { return xi_power(ambient, 0); }

ChowClass ChowClass::xi_power(ChowAmbient ambient, long k) {
  if (k < 0) throw Error("negative power of xi");
  std::vector<Rational> xi(static_cast<std::size_t>(k) + 1);
  xi[static_cast<std::size_t>(k)] = 1;
  return from_terms(ambient, std::move(xi), {});
}

ChowClass ChowClass::xi_power_fibre(ChowAmbient ambient, long k) {
  if (k < 0) throw Error("negative power of xi");
  std::vector<Rational> xi_f(static_cast<std::size_t>(k) + 1);
  xi_f[static_cast<std::size_t>(k)] = 1;
  return from_terms(ambient, {}, std::move(xi_f));
}

const Rational& ChowClass::xi_coeff(long k) const {
  return xi_.at(static_cast<std::size_t>(k));
}

const Rational& ChowClass::xi_fibre_coeff(long k) const {
  return xi_f_.at(static_cast<std::size_t>(k));
}

bool ChowClass::is_zero() const {
  auto zero = [](const Rational& c) { return c == 0; };
  return std::all_of(xi_.begin(), xi_.end(), zero) &&
         std::all_of(xi_f_.begin(), xi_f_.end(), zero);
}

long ChowClass::min_codim() const {
  for (std::size_t c = 0; c <= xi_.size(); ++c) {
    if (c < xi_.size() && xi_[c] != 0) return static_cast<long>(c);
    if (c > 0 && xi_f_[c - 1] != 0) return static_cast<long>(c);
  }
  return -1;
}

bool ChowClass::is_pure(long codim) const {
  for (std::size_t k = 0; k < xi_.size(); ++k) {
    if (xi_[k] != 0 && static_cast<long>(k) != codim) return false;
    if (xi_f_[k] != 0 && static_cast<long>(k) + 1 != codim) return false;
  }
  return true;
}

void ChowClass::check_same(const ChowClass& other) const {
  if (!(ambient_ == other.ambient_)) {
    throw Error("Chow classes live on different ambients (rank " +
                std::to_string(ambient_.rank) + ", deg " +
                std::to_string(ambient_.degree) + " vs rank " +
                std::to_string(other.ambient_.rank) + ", deg " +
                std::to_string(other.ambient_.degree) + ")");
  }
}

ChowClass& ChowClass::operator+=(const ChowClass& other) {
  check_same(other);
  for (std::size_t k = 0; k < xi_.size(); ++k) {
    xi_[k] += other.xi_[k];
    xi_f_[k] += other.xi_f_[k];
  }
  return *this;
}

ChowClass& ChowClass::operator-=(const ChowClass& other) {
  check_same(other);
  for (std::size_t k = 0; k < xi_.size(); ++k) {
    xi_[k] -= other.xi_[k];
    xi_f_[k] -= other.xi_f_[k];
  }
  return *this;
}

ChowClass& ChowClass::operator*=(const Rational& c) {
  for (auto& v : xi_) v *= c;
  for (auto& v : xi_f_) v *= c;
  return *this;
}

ChowClass operator*(const ChowClass& a, const ChowClass& b) {
  a.check_same(b);
  const std::size_t r = a.xi_.size();
  std::vector<Rational> xi(2 * r), xi_f(2 * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      xi[i + j] += a.xi_[i] * b.xi_[j];
      xi_f[i + j] += a.xi_[i] * b.xi_f_[j] + a.xi_f_[i] * b.xi_[j];
      // a.xi_f_[i] * b.xi_f_[j] carries F^2 = 0.
    }
  }
  return ChowClass::from_terms(a.ambient_, std::move(xi), std::move(xi_f));
}

std::string ChowClass::str() const {
  std::string out;
  for (std::size_t c = 0; c <= xi_.size(); ++c) {
    if (c < xi_.size()) append_term(out, xi_[c], monomial(static_cast<long>(c), false));
    if (c > 0) append_term(out, xi_f_[c - 1], monomial(static_cast<long>(c) - 1, true));
  }
  return out.empty() ? "0" : out;
}

ChowClass chow_mul(const ChowClass& x, const ChowClass& y) { return x * y; }

Rational chow_degree(const ChowClass& x) {
  return x.xi_fibre_coeff(x.ambient().rank - 1);
}

ChowClass DivisorClass::to_class() const {
  return ChowClass::from_terms(ambient, {0, xi_coeff}, {fibre_coeff});
}

std::string DivisorClass::str() const {
  std::string out;
  append_term(out, xi_coeff, "xi");
  append_term(out, fibre_coeff, "F");
  return out.empty() ? "0" : out;
}

ChowClass projectivized_quotient_class(ChowAmbient ambient, long q,
                                       long deg_kernel, long deg_torsion) {
  check_ambient(ambient);
  if (q <= 0 || q >= ambient.rank) {
    throw Error("quotient rank q=" + std::to_string(q) + " outside 0 < q < " +
                std::to_string(ambient.rank));
  }
  if (deg_torsion < 0) throw Error("torsion degree must be >= 0");
  const long c = ambient.rank - q;
  return ChowClass::xi_power(ambient, c) -
         Rational(deg_kernel + deg_torsion) *
             ChowClass::xi_power_fibre(ambient, c - 1);
}

ChowClass pushforward_sub(const ChowClass& x, const ChowClass& sub_class) {
  const auto& small = x.ambient();
  const auto& big = sub_class.ambient();
  if (small.rank >= big.rank) {
    throw Error("pushforward: sub-projectivization rank " +
                std::to_string(small.rank) + " is not below ambient rank " +
                std::to_string(big.rank));
  }
  const long c = big.rank - small.rank;
  const auto expected = ChowClass::xi_power(big, c) -
                        Rational(big.degree - small.degree) *
                            ChowClass::xi_power_fibre(big, c - 1);
  if (!(sub_class == expected)) {
    throw Error("pushforward: class " + sub_class.str() +
                " is not [P(E/E')] for the given ambients (expected " +
                expected.str() + ")");
  }
  ChowClass image(big);
  for (long k = 0; k < small.rank; ++k) {
    if (x.xi_coeff(k) != 0) {
      image += x.xi_coeff(k) * ChowClass::xi_power(big, k);
    }
    if (x.xi_fibre_coeff(k) != 0) {
      image += x.xi_fibre_coeff(k) * ChowClass::xi_power_fibre(big, k);
    }
  }
  return image * sub_class;
}

Rational divisor_pairing(const ChowClass& cycle, const DivisorClass& d) {
  return chow_degree(cycle * d.to_class());
}

DivisorClass lambda_divisor(ChowAmbient ambient) {
  check_ambient(ambient);
  return DivisorClass{ambient, 1, -ratio(ambient.degree, ambient.rank)};
}

DivisorClass theta_via_plucker(const SplitHiggsBundle& spec, long s) {
  const auto wedge = exterior_power(spec, s);
  return lambda_divisor(ambient_of(wedge));
}

LemminoCheck lemmino_check(const Rational& a, const Rational& b,
                           const Rational& mu) {
  if (a < 0 || b < 0) {
    throw Error("not in NE cone coordinates: a=" + to_string(a) +
                ", b=" + to_string(b));
  }
  LemminoCheck out;
  out.value = a * mu + b;
  out.bound = a * mu;
  out.ok = out.value >= out.bound;
  return out;
}

}  // namespace higgsnef
