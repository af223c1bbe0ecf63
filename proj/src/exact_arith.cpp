#include "frobsplit/exact_arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace frobsplit {

Int binom(long long a, long long b) {
    if (b < 0 || a < 0 || b > a) return 0;
    long long r = std::min(b, a - b);
    Int result = 1;
    // After step i, result == C(a-r+i, i), so every division is exact.
    for (long long i = 1; i <= r; ++i) {
        result *= (a - r + i);
        result /= i;
    }
    return result;
}

Int factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    Int result = 1;
    for (int i = 2; i <= n; ++i) result *= i;
    return result;
}

Int chi_line(int n, long long k) {
    if (n < 1) throw std::invalid_argument("chi_line: dimension must be >= 1");
    Int num = 1;
    for (int i = 1; i <= n; ++i) num *= Int(k) + i;
    return num / factorial(n);
}

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace frobsplit
