#include "frobsplit/frobenius.hpp"

#include <algorithm>
#include <stdexcept>

#include "frobsplit/errors.hpp"

namespace frobsplit {

long long pullback_line(long long k, long long m) {
    if (m < 1) throw std::invalid_argument("pullback_line: m must be >= 1");
    return m * k;
}

CohomologyTable pushforward_table_serial(const FormalBundle& E, long long m, Window w) {
    if (m < 1) throw std::invalid_argument("pushforward_table: m must be >= 1");
    CohomologyTable T(E.n(), w);
    for (long long k = w.lo; k <= w.hi; ++k) T.set_row(k, cohomology_row(E, m * k));
    return T;
}

CohomologyTable pushforward_table(const FormalBundle& E, long long m, Window w) {
    if (m < 1) throw std::invalid_argument("pushforward_table: m must be >= 1");
    CohomologyTable T(E.n(), w);
    const long long count = w.width();
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i)
        T.set_row(w.lo + i, cohomology_row(E, m * (w.lo + i)));
    return T;
}

namespace {

// Smallest m satisfying both regularity conditions for a single summand.
long long summand_threshold(int n, const Summand& s) {
    long long c = s.twist;
    if (s.omega == 0) return std::max<long long>({1, c + 1, -n - c});
    long long abs_c = c < 0 ? -c : c;
    return std::max<long long>({1, abs_c + 1, s.omega - n - c});
}

bool only_degree(const std::vector<Int>& row, int degree) {
    for (int q = 0; q < static_cast<int>(row.size()); ++q)
        if (q != degree && row[static_cast<size_t>(q)] != 0) return false;
    return true;
}

}  // namespace

long long m_threshold(const FormalBundle& E) {
    if (E.is_zero())
        throw Refusal("zero_bundle", "m_threshold is undefined for the zero bundle");
    const int n = E.n();
    long long m0 = 1;
    for (const auto& [s, m] : E.summands()) {
        (void)m;
        m0 = std::max(m0, summand_threshold(n, s));
    }
    // Certification scan; on disagreement we fail rather than trust either side.
    for (long long t = m0; t <= m0 + n + 1; ++t) {
        if (!only_degree(cohomology_row(E, t), 0))
            throw Refusal("threshold_mismatch",
                          "m_threshold: scan contradicts the closed form",
                          {{"twist", t}});
        if (!only_degree(cohomology_row(E, -t), n))
            throw Refusal("threshold_mismatch",
                          "m_threshold: scan contradicts the closed form",
                          {{"twist", -t}});
    }
    if (m0 > 1) {
        bool witness = !only_degree(cohomology_row(E, m0 - 1), 0) ||
                       !only_degree(cohomology_row(E, -(m0 - 1)), n);
        if (!witness)
            throw Refusal("threshold_mismatch",
                          "m_threshold: closed form is not minimal",
                          {{"m", m0}});
    }
    return m0;
}

Window auto_window(const FormalBundle& E, long long m) {
    if (m < 1) throw std::invalid_argument("auto_window: m must be >= 1");
    const int n = E.n();
    if (E.is_zero()) return Window{-(n + 1), n + 1};

    // h^0(E(j)) != 0 exactly for j >= j0; h^n(E(j)) != 0 exactly for j <= jn.
    bool have_j0 = false, have_jn = false;
    long long j0 = 0, jn = 0;
    std::vector<long long> features = {0};
    for (const auto& [s, mult] : E.summands()) {
        (void)mult;
        long long onset = s.omega == 0 ? -s.twist : s.omega - s.twist + 1;
        long long top = s.omega == 0 ? -n - 1 - s.twist : s.omega - n - 1 - s.twist;
        if (!have_j0 || onset < j0) j0 = onset, have_j0 = true;
        if (!have_jn || top > jn) jn = top, have_jn = true;
        if (s.omega != 0 && (-s.twist) % m == 0) features.push_back(-s.twist / m);
    }
    // Round the onset up and the top end down to pushforward twists.
    features.push_back(-floor_div(-j0, m));
    features.push_back(floor_div(jn, m));
    long long lo = *std::min_element(features.begin(), features.end()) - (n + 1);
    long long hi = *std::max_element(features.begin(), features.end()) + (n + 1);
    return Window{lo, hi};
}

}  // namespace frobsplit
