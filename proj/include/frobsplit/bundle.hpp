#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "frobsplit/exact_arith.hpp"

namespace frobsplit {

// One indecomposable building block on P^n in canonical form: a line bundle
// O(twist) when omega == 0, or Omega^p(twist) with 1 <= p <= n-1. Omega^0(t)
// and Omega^n(t) never appear in stored summands; normalize() folds them to
// O(t) and O(t-n-1).
struct Summand {
    int omega = 0;
    long long twist = 0;

    auto operator<=>(const Summand&) const = default;
};

// Canonical form of Omega^power(twist); rejects powers outside [0, n]
// (those summands are zero).
Summand normalize(int n, int power, long long twist);

Summand line(long long twist);

Int summand_rank(int n, const Summand& s);

// "O", "O(-3)", "Om^2", "Om^2(1)", ...
std::string summand_label(const Summand& s);

// A formal direct sum of canonical summands with positive multiplicities.
// The empty multiset is the zero bundle; every operation handles it.
class FormalBundle {
public:
    explicit FormalBundle(int n);

    int n() const { return n_; }
    bool is_zero() const { return summands_.empty(); }
    const std::map<Summand, Int>& summands() const { return summands_; }

    void add(int power, long long twist, const Int& mult = 1);
    void add(const Summand& s, const Int& mult = 1);

    FormalBundle twisted(long long t) const;
    FormalBundle dual() const;
    Int rank() const;
    Int euler_char(long long t) const;

    nlohmann::json to_json() const;
    // Parse errors identify the offending summand index ("summands[i]: ...").
    static FormalBundle from_json(const nlohmann::json& j);
    static FormalBundle parse(const std::string& text);

    bool operator==(const FormalBundle&) const = default;

private:
    int n_;
    std::map<Summand, Int> summands_;
};

}  // namespace frobsplit
