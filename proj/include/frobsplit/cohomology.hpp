#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "frobsplit/bundle.hpp"

namespace frobsplit {

// Inclusive twist range. Windows are explicit data, never implicit state;
// operations fail loudly when a window is too small for their contract.
struct Window {
    long long lo = 0;
    long long hi = 0;

    long long width() const { return hi - lo + 1; }
    bool contains(long long t) const { return lo <= t && t <= hi; }
    auto operator<=>(const Window&) const = default;
};

// Exact table of dimensions h^q(E(t)), q = 0..n, over a twist window.
class CohomologyTable {
public:
    CohomologyTable(int n, Window w);

    int n() const { return n_; }
    Window window() const { return w_; }

    const Int& at(long long t, int q) const;
    Int& at(long long t, int q);
    const std::vector<Int>& row(long long t) const;
    void set_row(long long t, std::vector<Int> values);

    // Alternating sum over a row: chi(E(t)).
    Int chi(long long t) const;

    bool operator==(const CohomologyTable&) const = default;

    // header "twist,h0,...,hn", one row per twist, ascending.
    std::string to_csv() const;
    static CohomologyTable from_csv(const std::string& text);

private:
    int n_;
    Window w_;
    std::vector<std::vector<Int>> rows_;
};

// Bott's formula: h^q(P^n, Omega^p(k)) for q = 0..n. Nonzero in at most
// one degree: h^0 = C(k-1,p)*C(n+k-p,k) for k > p, h^p = 1 for k = 0,
// h^n = C(-k-1,n-p)*C(p-k,-k) for k < p-n. The outer branches are
// certified against the koszul_cech oracle by the test suite.
std::vector<Int> bott_h(int n, int p, long long k);

// h^q(E(t)) for q = 0..n, summed over summands.
std::vector<Int> cohomology_row(const FormalBundle& E, long long t);

CohomologyTable table(const FormalBundle& E, Window w);         // OpenMP over twists
CohomologyTable table_serial(const FormalBundle& E, Window w);  // reference kernel

// (twist r, degree s) with 1 <= s <= n-1 and h^s(E(r)) != 0.
using HPoint = std::pair<long long, int>;
using HSet = std::set<HPoint>;

// From a table; refuses when a middle row is nonzero at the window boundary
// (the window then provably misses part of the support).
HSet hset(const CohomologyTable& T);

// Closed-form support: the middle support of Omega^p(c) is the single
// point (-c, p); line bundles contribute nothing.
HSet hset_exact(const FormalBundle& E);

// entry(t)[q] := entry_original(-t)[n-q], window negated.
CohomologyTable serre_dual_table(const CohomologyTable& T);

// n-th finite difference of the chi row at the window start; equals
// rank(E) when T = table(E). Needs window width >= n+1.
Int rank_from_table(const CohomologyTable& T);

}  // namespace frobsplit
