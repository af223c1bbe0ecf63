#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace frobsplit {

// Arbitrary-precision signed integer used for every count, dimension and
// Euler characteristic in the library. No floating point anywhere.
using Int = boost::multiprecision::cpp_int;

// Combinatorial binomial coefficient: 0 whenever b < 0, a < 0 or b > a.
// The polynomial continuation of C(a,b) in a lives only in chi_line;
// conflating the two conventions is the classic bug this split avoids.
Int binom(long long a, long long b);

Int factorial(int n);

// chi(O(k)) on P^n, evaluated as the exact polynomial
// (k+1)(k+2)...(k+n)/n!. Equals binom(n+k,n) for k >= 0,
// (-1)^n*binom(-k-1,n) for k <= -n-1, and 0 for -n <= k <= -1.
Int chi_line(int n, long long k);

// Floor division (quotient rounded toward -infinity), exact helpers for
// twist arithmetic with negative numbers.
long long floor_div(long long a, long long b);

}  // namespace frobsplit
