#pragma once

#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "frobsplit/cohomology.hpp"
#include "frobsplit/frobenius.hpp"

namespace frobsplit {

// All ordered violating pairs ((r,s),(r+t,s-t+1)) with t > 0; empty means
// the dagger condition holds.
std::vector<std::pair<HPoint, HPoint>> dagger_violations(const HSet& H);
bool check_dagger(const HSet& H);

struct DecompositionChecks {
    bool rank = false;
    bool chi = false;
    bool reconstruction = false;
};

// Multiplicity report of a direct-sum decomposition into Omega^s(-r) and
// O(k) summands. `middle` is keyed by (s, r) with the summand Omega^s(-r)
// and a_{r,s} = h^s(E(r)); `lines` maps k to b_k, twists descending.
struct Decomposition {
    int n = 0;
    std::map<std::pair<int, long long>, Int> middle;
    std::map<long long, Int, std::greater<long long>> lines;
    DecompositionChecks checks;
    Int rho = 0;  // #H of the input table

    FormalBundle to_bundle() const;
    Int rank() const;
    nlohmann::json to_json() const;
};

// Reads middle multiplicities a_{r,s} = entry(r)[s] directly off the table,
// subtracts their Bott contributions from the h^0/h^n rows, inverts the
// residual h^0 row by b_a = sum_j (-1)^j C(n+1,j) f(-a-j), and verifies the
// result by full reconstruction before returning. Refuses on: dagger
// violations, negative residuals or multiplicities, reconstruction
// mismatch, insufficient windows.
Decomposition decompose(const CohomologyTable& T);

// decompose() on the pushforward table, re-labeled to the untwisted form:
// a[i] is the Omega^i multiplicity for i = 0..n (twist-0 and twist-(n+1)
// lines folded into a[0]/a[n]) and b[j] the O(-j) multiplicity for
// j = 1..n. Asserts a[i] = h^i(E) for all i; refuses when the
// decomposition exists but has twists outside {0,...,-n-1}.
struct PushforwardReport {
    int n = 0;
    long long m = 1;
    std::vector<Int> a;  // indices 0..n
    std::vector<Int> b;  // indices 1..n used
    Decomposition decomposition;
};

PushforwardReport decompose_pushforward(const FormalBundle& E, long long m);
PushforwardReport decompose_pushforward(const FormalBundle& E, long long m, Window w);

// {r in [0,n] : rank < C(n,r)} — degrees where toric bundles of this rank
// have no cohomology.
std::set<int> klyachko_bound(int n, const Int& rank);

}  // namespace frobsplit
