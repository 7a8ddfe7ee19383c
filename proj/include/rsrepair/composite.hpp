#pragma once

// Repair of C(F_{q^d}, s) over F_{q^m} for d | m by splitting codewords into
// m/d component codes over F_{q^d} and repairing each with a subspace
// polynomial scheme.  Every helper sends r = (d - s) m / d symbols.

#include <span>
#include <vector>

#include "rsrepair/linearized.hpp"
#include "rsrepair/repair.hpp"
#include "rsrepair/subspace.hpp"

namespace rsrepair {

struct CompositeScheme {
  int d = 0;
  int s = 0;
  std::vector<Elt> b;       // basis of F_{q^m} over F_{q^d}: 1, alpha, ..., alpha^{m/d-1}
  std::vector<Elt> b_dual;  // dual w.r.t. the trace F_{q^m} -> F_{q^d}
  std::vector<Elt> beta;    // basis of F_{q^d} over F_q
  LinPoly lw;               // subspace polynomial of W inside F_{q^d}, dim W = s
  // The same scheme flattened to m dual codewords b'_j L_W(beta_l X) per node.
  RepairScheme scheme;
};

CompositeScheme composite_scheme_subfield(FieldPtr f, int d, int s);

// Runs the component-wise repair: c_{j,a} = tr_{q^d}(c_a b'_j), each helper sends
// tr_{q,d}(gamma c_{j,a}) per component, and c_i = sum_j b_j c_{j,i}.
// `code` may be any GRS code whose points and scaling lie in F_{q^d} and whose
// redundancy n - k is at least q^s, e.g. a shortening of scheme.code.
RepairTranscript composite_component_repair(const CompositeScheme& cs, const RsCode& code,
                                            std::span<const Elt> codeword, int node);

}  // namespace rsrepair
