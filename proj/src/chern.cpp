#include "higgsnef/chern.hpp"

#include <map>
#include <utility>
#include <vector>

namespace higgsnef {

namespace {

constexpr long kMaxRoots = 6;

// Quadratic form in the formal roots: (i, j) with i <= j -> coeff of x_i x_j.
using RootPoly = std::map<std::pair<std::size_t, std::size_t>, Rational>;

// Linear form x_i - x_j.
std::vector<Rational> root_difference(std::size_t r, std::size_t i,
                                      std::size_t j) {
  std::vector<Rational> v(r);
  v[i] += 1;
  v[j] -= 1;
  return v;
}

void add_product(RootPoly& p, const std::vector<Rational>& u,
                 const std::vector<Rational>& v) {
  const auto r = u.size();
  for (std::size_t a = 0; a < r; ++a) {
    if (u[a] == 0) continue;
    for (std::size_t b = 0; b < r; ++b) {
      if (v[b] == 0) continue;
      p[{std::min(a, b), std::max(a, b)}] += u[a] * v[b];
    }
  }
}

Rational quad_coeff(const RootPoly& p, std::size_t i, std::size_t j) {
  auto it = p.find({i, j});
  return it == p.end() ? Rational(0) : it->second;
}

// Rewrites a symmetric quadratic form as A e1^2 + B e2 and checks every
// coefficient, not just the two used to solve.
std::pair<Rational, Rational> to_elementary(const RootPoly& p, std::size_t r) {
  const Rational a = quad_coeff(p, 0, 0);             // e1^2 has x0^2 coeff 1
  const Rational b = quad_coeff(p, 0, 1) - 2 * a;     // x0 x1: 2A + B
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      const Rational expect = i == j ? a : 2 * a + b;
      if (quad_coeff(p, i, j) != expect) {
        throw InternalError("degree-2 class of E (x) E* is not symmetric");
      }
    }
  }
  return {a, b};
}

void check_rank(long r) {
  if (r < 2 || r > kMaxRoots) {
    throw Error("formal-root expansion supports 2 <= r <= " +
                std::to_string(kMaxRoots) + ", got " + std::to_string(r));
  }
}

void append(std::string& out, const Rational& c, const std::string& sym) {
  if (c == 0) return;
  const Rational mag = abs(c);
  if (out.empty()) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? " - " : " + ";
  }
  if (sym.empty()) {
    out += to_string(mag);
  } else {
    out += (mag == 1 ? "" : to_string(mag) + " ") + sym;
  }
}

}  // namespace

FormalClass& FormalClass::operator*=(const Rational& k) {
  constant *= k;
  c1 *= k;
  c1sq *= k;
  c2 *= k;
  return *this;
}

std::string FormalClass::str() const {
  std::string out;
  append(out, constant, "");
  append(out, c1, "c1");
  append(out, c2, "c2");
  append(out, c1sq, "c1^2");
  return out.empty() ? "0" : out;
}

FormalClass delta_class(long r) {
  if (r < 1) throw Error("rank must be >= 1, got " + std::to_string(r));
  FormalClass d;
  d.rank = r;
  d.c2 = 1;
  d.c1sq = -ratio(r - 1, 2 * r);
  return d;
}

FormalClass c2_tensor_dual(long r) {
  check_rank(r);
  const auto n = static_cast<std::size_t>(r);
  std::vector<std::vector<Rational>> roots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) roots.push_back(root_difference(n, i, j));
  }
  // Second elementary symmetric function of the roots, pair by pair.
  RootPoly e2;
  for (std::size_t a = 0; a < roots.size(); ++a) {
    for (std::size_t b = a + 1; b < roots.size(); ++b) {
      add_product(e2, roots[a], roots[b]);
    }
  }
  const auto [c1sq, c2] = to_elementary(e2, n);
  FormalClass out;
  out.rank = r;
  out.c1sq = c1sq;
  out.c2 = c2;
  if (!(out == Rational(2 * r) * delta_class(r))) {
    throw InternalError("c2(E (x) E*) = " + out.str() + " is not 2r Delta(E)");
  }
  return out;
}

Rational c1_tensor_dual(long r) {
  check_rank(r);
  const auto n = static_cast<std::size_t>(r);
  std::vector<Rational> sum(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto d = root_difference(n, i, j);
      for (std::size_t k = 0; k < n; ++k) sum[k] += d[k];
    }
  }
  // A symmetric linear form is a multiple of e1 = c1.
  for (std::size_t k = 1; k < n; ++k) {
    if (sum[k] != sum[0]) throw InternalError("c1(E (x) E*) is not symmetric");
  }
  return sum[0];
}

}  // namespace higgsnef
