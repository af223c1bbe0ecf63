#include "frobsplit/splitting.hpp"

#include <stdexcept>

#include "frobsplit/errors.hpp"
#include "frobsplit/json_util.hpp"

namespace frobsplit {

std::vector<std::pair<HPoint, HPoint>> dagger_violations(const HSet& H) {
    std::vector<std::pair<HPoint, HPoint>> out;
    for (const auto& p : H) {
        // (r+t, s-t+1) stays a middle degree only for 1 <= t <= s.
        for (int t = 1; t <= p.second; ++t) {
            HPoint shadow{p.first + t, p.second - t + 1};
            if (H.count(shadow)) out.emplace_back(p, shadow);
        }
    }
    return out;
}

bool check_dagger(const HSet& H) { return dagger_violations(H).empty(); }

namespace {

nlohmann::json violations_json(const std::vector<std::pair<HPoint, HPoint>>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [from, to] : v)
        arr.push_back({{"from", {from.first, from.second}}, {"to", {to.first, to.second}}});
    return arr;
}

}  // namespace

FormalBundle Decomposition::to_bundle() const {
    FormalBundle E(n);
    for (const auto& [key, mult] : middle) E.add(key.first, -key.second, mult);
    for (const auto& [k, mult] : lines) E.add(0, k, mult);
    return E;
}

Int Decomposition::rank() const {
    Int total = 0;
    for (const auto& [key, mult] : middle) total += mult * binom(n, key.first);
    for (const auto& [k, mult] : lines) {
        (void)k;
        total += mult;
    }
    return total;
}

nlohmann::json Decomposition::to_json() const {
    nlohmann::json mid = nlohmann::json::array();
    for (const auto& [key, mult] : middle)
        mid.push_back({{"s", key.first}, {"twist", key.second}, {"mult", int_to_json(mult)}});
    nlohmann::json lin = nlohmann::json::array();
    for (const auto& [k, mult] : lines)
        lin.push_back({{"twist", k}, {"mult", int_to_json(mult)}});
    return nlohmann::json{{"n", n},
                          {"middle", mid},
                          {"lines", lin},
                          {"checks",
                           {{"rank", checks.rank},
                            {"chi", checks.chi},
                            {"reconstruction", checks.reconstruction}}}};
}

Decomposition decompose(const CohomologyTable& T) {
    const int n = T.n();
    const Window w = T.window();

    Decomposition D;
    D.n = n;

    bool all_zero = true;
    for (long long t = w.lo; t <= w.hi && all_zero; ++t)
        for (int q = 0; q <= n && all_zero; ++q)
            if (T.at(t, q) != 0) all_zero = false;
    if (all_zero) {
        D.checks = {true, true, true};
        return D;
    }

    if (w.width() < n + 2)
        throw Refusal("window_insufficient",
                      "window too narrow to decompose (need width >= n+2)",
                      {{"width", w.width()}, {"needed", n + 2}});

    HSet H = hset(T);  // refuses when middle support touches the boundary
    auto violations = dagger_violations(H);
    if (!violations.empty())
        throw Refusal("dagger_violated", "dagger violated: table cannot be decomposed",
                      {{"violations", violations_json(violations)}});
    D.rho = Int(H.size());

    for (const auto& [r, s] : H) D.middle[{s, r}] = T.at(r, s);

    // Residual h^0 and h^n rows after removing the Omega^s(-r) contributions.
    std::vector<Int> f0(static_cast<size_t>(w.width()));
    std::vector<Int> fn(static_cast<size_t>(w.width()));
    for (long long t = w.lo; t <= w.hi; ++t) {
        Int r0 = T.at(t, 0), rn = T.at(t, n);
        for (const auto& [key, mult] : D.middle) {
            auto h = bott_h(n, key.first, t - key.second);
            r0 -= mult * h[0];
            rn -= mult * h[static_cast<size_t>(n)];
        }
        if (r0 < 0 || rn < 0)
            throw Refusal("not_decomposable",
                          "table is not the cohomology of a dagger-decomposable bundle "
                          "(negative residual)",
                          {{"twist", t}, {"degree", r0 < 0 ? 0 : n}});
        f0[static_cast<size_t>(t - w.lo)] = r0;
        fn[static_cast<size_t>(t - w.lo)] = rn;
    }

    // Binomial inversion of the residual section counts over every candidate
    // twist whose full stencil {-a, ..., -a-n-1} lies inside the window.
    for (long long a = -w.hi; a <= -w.lo - (n + 1); ++a) {
        Int b = 0;
        for (int j = 0; j <= n + 1; ++j) {
            Int term = binom(n + 1, j) * f0[static_cast<size_t>((-a - j) - w.lo)];
            b += (j % 2 == 0) ? term : -term;
        }
        if (b < 0)
            throw Refusal("not_decomposable",
                          "table is not the cohomology of a dagger-decomposable bundle "
                          "(negative multiplicity at twist " + std::to_string(a) + ")",
                          {{"twist", a}});
        if (b > 0) D.lines[a] = b;
    }

    // Forward reconstruction of the whole table; inversion over a truncated
    // window can alias, this makes the window contract checkable.
    FormalBundle R = D.to_bundle();
    CohomologyTable rebuilt = table_serial(R, w);
    bool recon = true;
    for (long long t = w.lo; t <= w.hi && recon; ++t)
        for (int q = 0; q <= n; ++q)
            if (rebuilt.at(t, q) != T.at(t, q)) {
                recon = false;
                break;
            }
    if (!recon)
        throw Refusal("inconsistent_table",
                      "window insufficient or inconsistent table "
                      "(reconstruction mismatch)");
    D.checks.reconstruction = true;

    D.checks.rank = (D.rank() == rank_from_table(T));
    bool chi_ok = true;
    for (long long t = w.lo; t <= w.hi && chi_ok; ++t)
        chi_ok = (R.euler_char(t) == T.chi(t));
    D.checks.chi = chi_ok;
    if (!D.checks.rank || !D.checks.chi)
        throw Refusal("inconsistent_table",
                      "window insufficient or inconsistent table "
                      "(conservation check failed)",
                      {{"rank", D.checks.rank}, {"chi", D.checks.chi}});
    return D;
}

PushforwardReport decompose_pushforward(const FormalBundle& E, long long m) {
    return decompose_pushforward(E, m, auto_window(E, m));
}

PushforwardReport decompose_pushforward(const FormalBundle& E, long long m, Window w) {
    if (m < 1) throw std::invalid_argument("decompose_pushforward: m must be >= 1");
    const int n = E.n();

    CohomologyTable T = pushforward_table(E, m, w);
    Decomposition D = decompose(T);

    PushforwardReport rep;
    rep.n = n;
    rep.m = m;
    rep.a.assign(static_cast<size_t>(n + 1), Int(0));
    rep.b.assign(static_cast<size_t>(n + 1), Int(0));

    for (const auto& [key, mult] : D.middle) {
        if (key.second != 0)
            throw Refusal("not_split_form",
                          "pushforward decomposes, but with a twisted middle summand; "
                          "m is below the regularity threshold",
                          {{"s", key.first}, {"twist", key.second}, {"m", m}});
        rep.a[static_cast<size_t>(key.first)] = mult;
    }
    for (const auto& [k, mult] : D.lines) {
        if (k > 0 || k < -n - 1)
            throw Refusal("not_split_form",
                          "pushforward decomposes, but with a line twist outside "
                          "[-n-1, 0]; m is below the regularity threshold",
                          {{"twist", k}, {"m", m}});
        if (k == 0)
            rep.a[0] = mult;  // O = Omega^0
        else if (k == -n - 1)
            rep.a[static_cast<size_t>(n)] = mult;  // O(-n-1) = Omega^n
        else
            rep.b[static_cast<size_t>(-k)] = mult;
    }

    // a_i = h^i(E) holds for every decomposition of this shape; a mismatch
    // here is a bug trap, not an expected runtime state.
    std::vector<Int> h = cohomology_row(E, 0);
    for (int i = 0; i <= n; ++i) {
        if (rep.a[static_cast<size_t>(i)] != h[static_cast<size_t>(i)])
            throw Refusal("ai_mismatch",
                          "internal error: Omega multiplicity differs from h^i(E)",
                          {{"i", i},
                           {"a_i", int_to_json(rep.a[static_cast<size_t>(i)])},
                           {"h_i", int_to_json(h[static_cast<size_t>(i)])}});
    }

    rep.decomposition = std::move(D);
    return rep;
}

std::set<int> klyachko_bound(int n, const Int& rank) {
    if (n < 1) throw std::invalid_argument("klyachko_bound: dimension must be >= 1");
    if (rank < 1) throw std::invalid_argument("klyachko_bound: rank must be >= 1");
    std::set<int> out;
    for (int r = 0; r <= n; ++r)
        if (rank < binom(n, r)) out.insert(r);
    return out;
}

}  // namespace frobsplit
