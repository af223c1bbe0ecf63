#pragma once

#include <functional>
#include <map>
#include <vector>

#include "frobsplit/cohomology.hpp"

namespace frobsplit {

// Decomposition type of F_m*O(d) as a multiset of line-bundle twists:
// counts[t] = #{a in {0..m-1}^(n+1) : sum a_i = d - t*m}.
struct ResidueCount {
    int n = 0;
    long long m = 1;
    long long d = 0;
    std::map<long long, Int, std::greater<long long>> counts;

    Int total() const;
    bool operator==(const ResidueCount&) const = default;
};

// Closed form via inclusion-exclusion over the cube walls.
ResidueCount thomsen_counts(int n, long long m, long long d);

// Independent brute force over all m^(n+1) residue tuples; refuses when the
// tuple count exceeds the budget.
ResidueCount thomsen_enumerate(int n, long long m, long long d,
                               const Int& budget = Int(100000000));  // OpenMP
ResidueCount thomsen_enumerate_serial(int n, long long m, long long d,
                                      const Int& budget = Int(100000000));

// One torus-weight strand of the Cech double complex of the truncated
// wedge-Euler resolution of Omega^p(k):
//
//   0 -> Omega^p(k) -> O(k-p)^C(n+1,p) -> ... -> O(k) -> 0
//
// on the standard (n+1)-chart cover. The total differential (signed
// multiplication + Cech face maps) preserves the Laurent weight
// w = exponents + wedge indicator, so the full complex is the direct sum
// of these strands. Basis elements are (level j, wedge set S, chart set I) with
// monomial w - chi_S, ordered lexicographically by (j, S, I); matrices are
// exact integer matrices, reproducible bit for bit.
class MonomialComplex {
public:
    struct BasisElement {
        int level;        // Koszul level j (0..p)
        unsigned wedge;   // bitmask of S, |S| = p - level
        unsigned charts;  // bitmask of I, nonempty
        std::vector<long long> exponents;
    };

    MonomialComplex(int n, int p, long long k, long long bound,
                    std::vector<long long> weight);

    int top_degree() const { return n_ + p_; }
    long long dim(int q) const;
    const std::vector<BasisElement>& basis(int q) const;
    // D_q as a dim(q) x dim(q+1) matrix (row per source element).
    const std::vector<std::vector<Int>>& matrix(int q) const;

    bool empty() const;
    void check_composition() const;  // consecutive differentials compose to zero
    // h^q for q = 0..n+p by exact fraction-free rank computation.
    std::vector<Int> cohomology_dims() const;

private:
    int n_, p_;
    long long k_, bound_;
    std::vector<long long> weight_;
    std::vector<std::vector<BasisElement>> basis_;
    std::vector<std::vector<std::vector<Int>>> matrices_;
};

// Exact h^q(P^n, Omega^p(k)) for q = 0..n, independent of Bott's formula.
// Desk-scale budget: n <= 4, |k| <= 8.
std::vector<Int> koszul_cech(int n, int p, long long k);         // OpenMP over strands
std::vector<Int> koszul_cech_serial(int n, int p, long long k);  // reference kernel

// The truncation keeps chart exponents >= -bound. Any bound >= p-k-n is
// exact (the discarded quotient complex is acyclic: an all-negative
// monomial at level j has every exponent >= (k-p)+n); the default below is
// computed from that inequality and the doubling self-test lives in the
// test suite.
long long koszul_truncation_bound(int n, int p, long long k);
std::vector<Int> koszul_cech_with_bound(int n, int p, long long k, long long bound);

// Rank by fraction-free (Bareiss) elimination over the integers.
int bareiss_rank(std::vector<std::vector<Int>> M);

}  // namespace frobsplit
