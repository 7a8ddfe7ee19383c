#pragma once

// Linearized polynomials sum_i c_i X^{q^i} over F_{q^m} and the matrices
// T(x_1, ..., x_l; s) with rows of Frobenius powers.

#include <span>
#include <vector>

#include "rsrepair/gfield.hpp"
#include "rsrepair/linalg.hpp"
#include "rsrepair/subspace.hpp"

namespace rsrepair {

struct LinPoly {
  std::vector<Elt> coeffs;  // coeffs[i] multiplies X^{q^i}

  int q_degree() const { return static_cast<int>(coeffs.size()) - 1; }
  friend bool operator==(const LinPoly&, const LinPoly&) = default;
};

Elt eval(const FieldCtx& f, const LinPoly& p, Elt x);

// Monic L_W(X) = prod_{w in W} (X - w), of q-degree dim W.
LinPoly annihilator(const Subspace& w);

// A linearized polynomial of q-degree s = m - dim V whose image on F_{q^m} is V
// and whose linear coefficient is nonzero.
LinPoly image_poly(const Subspace& v);

// s x l matrix with entry (t-1, i) = x_i^{q^t}, t = 1..s.
Matrix t_matrix(const FieldCtx& f, std::span<const Elt> xs, int s);

}  // namespace rsrepair
