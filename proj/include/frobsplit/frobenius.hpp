#pragma once

#include "frobsplit/cohomology.hpp"

namespace frobsplit {

// F_m^* O(k) = O(mk).
long long pullback_line(long long k, long long m);

// Table of the pushforward F_m*E: entry(k)[j] = h^j(E(mk)), exact via the
// projection formula. m = 1 is the identity.
CohomologyTable pushforward_table(const FormalBundle& E, long long m, Window w);
CohomologyTable pushforward_table_serial(const FormalBundle& E, long long m, Window w);

// Minimal m0 >= 1 such that for all t >= m0, E(t) has cohomology only in
// degree 0 and E(-t) only in degree n (vacuously when a twist has no
// cohomology at all). Closed form per summand, re-certified by a direct
// table scan on [-m0-n-1, m0+n+1] including a minimality witness; any
// disagreement is a hard error. Refuses the zero bundle.
long long m_threshold(const FormalBundle& E);

// Window that the table-level algorithms need for F_m*E: the exact computed
// support (h^0 onset, h^n end, middle points, twist 0) plus margin n+1.
Window auto_window(const FormalBundle& E, long long m = 1);

}  // namespace frobsplit
