#include "frobsplit/oracles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "frobsplit/errors.hpp"

namespace frobsplit {

Int ResidueCount::total() const {
    Int t = 0;
    for (const auto& [k, c] : counts) {
        (void)k;
        t += c;
    }
    return t;
}

namespace {

void validate_thomsen_args(int n, long long m) {
    if (n < 1) throw std::invalid_argument("thomsen: dimension must be >= 1");
    if (m < 1) throw std::invalid_argument("thomsen: m must be >= 1");
}

Int tuple_count(int n, long long m) {
    Int total = 1;
    for (int i = 0; i <= n; ++i) total *= m;
    return total;
}

}  // namespace

ResidueCount thomsen_counts(int n, long long m, long long d) {
    validate_thomsen_args(n, m);
    ResidueCount out;
    out.n = n;
    out.m = m;
    out.d = d;
    // Nonzero only when 0 <= d - t*m <= (n+1)(m-1).
    const long long t_hi = floor_div(d, m);
    const long long t_lo = -floor_div(static_cast<long long>(n + 1) * (m - 1) - d, m);
    for (long long t = t_lo; t <= t_hi; ++t) {
        const long long target = d - t * m;
        Int c = 0;
        for (int j = 0; j <= n + 1; ++j) {
            Int term = binom(n + 1, j) * binom(target - j * m + n, n);
            c += (j % 2 == 0) ? term : -term;
        }
        if (c < 0)
            throw std::logic_error("thomsen_counts: negative count (formula error)");
        if (c > 0) out.counts[t] = c;
    }
    return out;
}

namespace {

// Enumerates all tuples a in {0..m-1}^(digits) given a fixed leading sum,
// accumulating counts by the line-bundle twist t = (d - sum)/m.
void enumerate_block(int digits, long long m, long long d, long long base_sum,
                     std::map<long long, Int>& counts) {
    std::vector<long long> a(static_cast<size_t>(digits), 0);
    long long sum = base_sum;
    while (true) {
        const long long diff = d - sum;
        if (((diff % m) + m) % m == 0) counts[floor_div(diff, m)] += 1;
        int pos = 0;
        while (pos < digits) {
            if (a[static_cast<size_t>(pos)] + 1 < m) {
                a[static_cast<size_t>(pos)] += 1;
                sum += 1;
                break;
            }
            sum -= a[static_cast<size_t>(pos)];
            a[static_cast<size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == digits) break;
    }
}

ResidueCount assemble(int n, long long m, long long d,
                      const std::map<long long, Int>& counts) {
    ResidueCount out;
    out.n = n;
    out.m = m;
    out.d = d;
    for (const auto& [t, c] : counts)
        if (c != 0) out.counts[t] = c;
    return out;
}

}  // namespace

ResidueCount thomsen_enumerate_serial(int n, long long m, long long d, const Int& budget) {
    validate_thomsen_args(n, m);
    if (tuple_count(n, m) > budget)
        throw Refusal("budget_exceeded", "thomsen_enumerate: m^(n+1) exceeds the budget",
                      {{"tuples", tuple_count(n, m).str()}, {"budget", budget.str()}});
    std::map<long long, Int> counts;
    enumerate_block(n + 1, m, d, 0, counts);
    return assemble(n, m, d, counts);
}

ResidueCount thomsen_enumerate(int n, long long m, long long d, const Int& budget) {
    validate_thomsen_args(n, m);
    if (tuple_count(n, m) > budget)
        throw Refusal("budget_exceeded", "thomsen_enumerate: m^(n+1) exceeds the budget",
                      {{"tuples", tuple_count(n, m).str()}, {"budget", budget.str()}});
    std::vector<std::map<long long, Int>> partial(static_cast<size_t>(m));
#pragma omp parallel for schedule(dynamic)
    for (long long a0 = 0; a0 < m; ++a0)
        enumerate_block(n, m, d, a0, partial[static_cast<size_t>(a0)]);
    std::map<long long, Int> counts;
    for (const auto& part : partial)
        for (const auto& [t, c] : part) counts[t] += c;
    return assemble(n, m, d, counts);
}

MonomialComplex::MonomialComplex(int n, int p, long long k, long long bound,
                                 std::vector<long long> weight)
    : n_(n), p_(p), k_(k), bound_(bound), weight_(std::move(weight)) {
    if (static_cast<int>(weight_.size()) != n + 1)
        throw std::invalid_argument("MonomialComplex: weight has wrong length");

    const unsigned full = (1u << (n + 1)) - 1u;
    basis_.assign(static_cast<size_t>(top_degree() + 2), {});

    for (int j = 0; j <= p_; ++j) {
        for (unsigned S = 0; S <= full; ++S) {
            if (std::popcount(S) != p_ - j) continue;
            std::vector<long long> a(weight_);
            bool feasible = true;
            unsigned required = 0;  // charts that must be present (negative exponents)
            for (int i = 0; i <= n_; ++i) {
                if (S & (1u << i)) a[static_cast<size_t>(i)] -= 1;
                if (a[static_cast<size_t>(i)] < -bound_) {
                    feasible = false;
                    break;
                }
                if (a[static_cast<size_t>(i)] < 0) required |= (1u << i);
            }
            if (!feasible) continue;
            for (unsigned I = 1; I <= full; ++I) {
                if ((I & required) != required) continue;
                const int q = j + std::popcount(I) - 1;
                basis_[static_cast<size_t>(q)].push_back(BasisElement{j, S, I, a});
            }
        }
    }
    for (auto& deg : basis_) {
        std::sort(deg.begin(), deg.end(), [](const BasisElement& x, const BasisElement& y) {
            return std::tie(x.level, x.wedge, x.charts) < std::tie(y.level, y.wedge, y.charts);
        });
    }

    // Index lookup per degree, then the differential matrices.
    std::vector<std::map<std::tuple<int, unsigned, unsigned>, size_t>> index(basis_.size());
    for (size_t q = 0; q < basis_.size(); ++q)
        for (size_t i = 0; i < basis_[q].size(); ++i) {
            const auto& e = basis_[q][i];
            index[q][{e.level, e.wedge, e.charts}] = i;
        }

    matrices_.assign(basis_.size() - 1, {});
    for (size_t q = 0; q + 1 < basis_.size(); ++q) {
        auto& M = matrices_[q];
        M.assign(basis_[q].size(), std::vector<Int>(basis_[q + 1].size(), Int(0)));
        for (size_t row = 0; row < basis_[q].size(); ++row) {
            const auto& e = basis_[q][row];
            // Cech face maps: extend the chart set, same monomial.
            for (int i = 0; i <= n_; ++i) {
                if (e.charts & (1u << i)) continue;
                const unsigned J = e.charts | (1u << i);
                const int sign = std::popcount(J & ((1u << i) - 1u)) % 2 == 0 ? 1 : -1;
                auto it = index[q + 1].find({e.level, e.wedge, J});
                if (it == index[q + 1].end())
                    throw std::logic_error("MonomialComplex: missing Cech target");
                M[row][it->second] += sign;
            }
            // Koszul contraction, twisted by (-1)^c to anticommute with Cech.
            const int c = std::popcount(e.charts) - 1;
            for (int i = 0; i <= n_; ++i) {
                if (!(e.wedge & (1u << i))) continue;
                const unsigned S2 = e.wedge & ~(1u << i);
                int sign = std::popcount(e.wedge & ((1u << i) - 1u)) % 2 == 0 ? 1 : -1;
                if (c % 2 != 0) sign = -sign;
                auto it = index[q + 1].find({e.level + 1, S2, e.charts});
                if (it == index[q + 1].end())
                    throw std::logic_error("MonomialComplex: missing Koszul target");
                M[row][it->second] += sign;
            }
        }
    }
}

long long MonomialComplex::dim(int q) const {
    if (q < 0 || q >= static_cast<int>(basis_.size())) return 0;
    return static_cast<long long>(basis_[static_cast<size_t>(q)].size());
}

const std::vector<MonomialComplex::BasisElement>& MonomialComplex::basis(int q) const {
    return basis_.at(static_cast<size_t>(q));
}

const std::vector<std::vector<Int>>& MonomialComplex::matrix(int q) const {
    return matrices_.at(static_cast<size_t>(q));
}

bool MonomialComplex::empty() const {
    for (const auto& deg : basis_)
        if (!deg.empty()) return false;
    return true;
}

void MonomialComplex::check_composition() const {
    for (size_t q = 0; q + 1 < matrices_.size(); ++q) {
        const auto& A = matrices_[q];
        const auto& B = matrices_[q + 1];
        if (A.empty() || B.empty()) continue;
        for (size_t i = 0; i < A.size(); ++i) {
            for (size_t l = 0; l < B[0].size(); ++l) {
                Int acc = 0;
                for (size_t j = 0; j < B.size(); ++j) acc += A[i][j] * B[j][l];
                if (acc != 0)
                    throw std::logic_error(
                        "MonomialComplex: consecutive differentials do not compose to zero");
            }
        }
    }
}

std::vector<Int> MonomialComplex::cohomology_dims() const {
    std::vector<int> ranks(matrices_.size(), 0);
    for (size_t q = 0; q < matrices_.size(); ++q)
        if (!matrices_[q].empty() && !matrices_[q][0].empty()) ranks[q] = bareiss_rank(matrices_[q]);
    std::vector<Int> h(static_cast<size_t>(top_degree() + 1), Int(0));
    for (int q = 0; q <= top_degree(); ++q) {
        Int v = dim(q);
        if (q < static_cast<int>(ranks.size())) v -= ranks[static_cast<size_t>(q)];
        if (q > 0) v -= ranks[static_cast<size_t>(q - 1)];
        if (v < 0) throw std::logic_error("MonomialComplex: negative cohomology dimension");
        h[static_cast<size_t>(q)] = v;
    }
    return h;
}

int bareiss_rank(std::vector<std::vector<Int>> M) {
    if (M.empty() || M[0].empty()) return 0;
    const size_t rows = M.size(), cols = M[0].size();
    size_t r = 0;
    Int prev = 1;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = r;
        while (pr < rows && M[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(M[pr], M[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j)
                M[i][j] = (M[i][j] * M[r][c] - M[i][c] * M[r][j]) / prev;
            M[i][c] = 0;
        }
        prev = M[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

long long koszul_truncation_bound(int n, int p, long long k) {
    return std::max<long long>(1, static_cast<long long>(p) - k - n);
}

namespace {

void validate_cech_args(int n, int p, long long k) {
    if (n < 1) throw std::invalid_argument("koszul_cech: dimension must be >= 1");
    if (p < 0 || p > n)
        throw std::invalid_argument("koszul_cech: power " + std::to_string(p) +
                                    " outside [0," + std::to_string(n) + "]");
    if (n > 4 || k > 8 || k < -8)
        throw Refusal("budget_exceeded",
                      "koszul_cech: outside the desk-scale budget (n <= 4, |k| <= 8)",
                      {{"n", n}, {"p", p}, {"k", k}});
}

// All integer vectors w of length n+1 with sum k and entries in [lo, hi].
std::vector<std::vector<long long>> weight_box(int n, long long k, long long lo,
                                               long long hi) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> w(static_cast<size_t>(n + 1));
    std::function<void(int, long long)> rec = [&](int pos, long long remaining) {
        if (pos == n) {
            if (remaining >= lo && remaining <= hi) {
                w[static_cast<size_t>(pos)] = remaining;
                out.push_back(w);
            }
            return;
        }
        const long long rest = static_cast<long long>(n - pos);
        for (long long v = lo; v <= hi; ++v) {
            // prune: the rest must be able to reach the remaining sum
            if (remaining - v < rest * lo || remaining - v > rest * hi) continue;
            w[static_cast<size_t>(pos)] = v;
            rec(pos + 1, remaining - v);
        }
    };
    rec(0, k);
    return out;
}

std::vector<Int> strand_cohomology(int n, int p, long long k, long long bound,
                                   const std::vector<long long>& w) {
    MonomialComplex strand(n, p, k, bound, w);
    if (strand.empty()) return std::vector<Int>(static_cast<size_t>(n + p + 1), Int(0));
    strand.check_composition();
    return strand.cohomology_dims();
}

std::vector<Int> finalize_cohomology(int n, int p, std::vector<Int> h_total) {
    // Degrees beyond n must vanish; anything else is an internal error.
    for (int q = n + 1; q <= n + p; ++q)
        if (h_total[static_cast<size_t>(q)] != 0)
            throw std::logic_error("koszul_cech: nonzero cohomology above degree n");
    h_total.resize(static_cast<size_t>(n + 1));
    return h_total;
}

}  // namespace

std::vector<Int> koszul_cech_with_bound(int n, int p, long long k, long long bound) {
    validate_cech_args(n, p, k);
    auto weights = weight_box(n, k, -bound, k + static_cast<long long>(n) * bound);
    std::vector<Int> total(static_cast<size_t>(n + p + 1), Int(0));

    std::vector<std::vector<Int>> per_weight(weights.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(weights.size()); ++i)
        per_weight[static_cast<size_t>(i)] =
            strand_cohomology(n, p, k, bound, weights[static_cast<size_t>(i)]);
    for (const auto& h : per_weight)
        for (size_t q = 0; q < h.size(); ++q) total[q] += h[q];
    return finalize_cohomology(n, p, std::move(total));
}

std::vector<Int> koszul_cech(int n, int p, long long k) {
    return koszul_cech_with_bound(n, p, k, koszul_truncation_bound(n, p, k));
}

std::vector<Int> koszul_cech_serial(int n, int p, long long k) {
    validate_cech_args(n, p, k);
    const long long bound = koszul_truncation_bound(n, p, k);
    auto weights = weight_box(n, k, -bound, k + static_cast<long long>(n) * bound);
    std::vector<Int> total(static_cast<size_t>(n + p + 1), Int(0));
    for (const auto& w : weights) {
        auto h = strand_cohomology(n, p, k, bound, w);
        for (size_t q = 0; q < h.size(); ++q) total[q] += h[q];
    }
    return finalize_cohomology(n, p, std::move(total));
}

}  // namespace frobsplit
