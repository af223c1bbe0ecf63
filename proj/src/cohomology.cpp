#include "frobsplit/cohomology.hpp"

#include <sstream>
#include <stdexcept>

#include "frobsplit/errors.hpp"

namespace frobsplit {

CohomologyTable::CohomologyTable(int n, Window w) : n_(n), w_(w) {
    if (n < 1) throw std::invalid_argument("CohomologyTable: dimension must be >= 1");
    if (w.hi < w.lo) throw std::invalid_argument("CohomologyTable: empty window");
    if (w.width() > 2000000) throw std::invalid_argument("CohomologyTable: window too wide");
    rows_.assign(static_cast<size_t>(w.width()), std::vector<Int>(n + 1, Int(0)));
}

const Int& CohomologyTable::at(long long t, int q) const {
    if (!w_.contains(t) || q < 0 || q > n_)
        throw std::out_of_range("CohomologyTable::at: outside table");
    return rows_[static_cast<size_t>(t - w_.lo)][static_cast<size_t>(q)];
}

Int& CohomologyTable::at(long long t, int q) {
    if (!w_.contains(t) || q < 0 || q > n_)
        throw std::out_of_range("CohomologyTable::at: outside table");
    return rows_[static_cast<size_t>(t - w_.lo)][static_cast<size_t>(q)];
}

const std::vector<Int>& CohomologyTable::row(long long t) const {
    if (!w_.contains(t)) throw std::out_of_range("CohomologyTable::row: outside window");
    return rows_[static_cast<size_t>(t - w_.lo)];
}

void CohomologyTable::set_row(long long t, std::vector<Int> values) {
    if (!w_.contains(t)) throw std::out_of_range("CohomologyTable::set_row: outside window");
    if (values.size() != static_cast<size_t>(n_ + 1))
        throw std::invalid_argument("CohomologyTable::set_row: wrong row length");
    rows_[static_cast<size_t>(t - w_.lo)] = std::move(values);
}

Int CohomologyTable::chi(long long t) const {
    const auto& r = row(t);
    Int total = 0;
    for (int q = 0; q <= n_; ++q) total += (q % 2 == 0) ? r[q] : -r[q];
    return total;
}

std::string CohomologyTable::to_csv() const {
    std::ostringstream os;
    os << "twist";
    for (int q = 0; q <= n_; ++q) os << ",h" << q;
    os << "\n";
    for (long long t = w_.lo; t <= w_.hi; ++t) {
        os << t;
        for (int q = 0; q <= n_; ++q) os << "," << at(t, q);
        os << "\n";
    }
    return os.str();
}

CohomologyTable CohomologyTable::from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("table csv: empty input");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header.rfind("twist", 0) != 0)
        throw std::invalid_argument("table csv: header must start with \"twist\"");
    int n = -1;
    {
        std::istringstream hs(header);
        std::string field;
        int idx = -1;
        while (std::getline(hs, field, ',')) {
            if (idx >= 0 && field != "h" + std::to_string(idx))
                throw std::invalid_argument("table csv: expected column h" +
                                            std::to_string(idx) + ", got \"" + field + "\"");
            ++idx;
        }
        n = idx - 1;
    }
    if (n < 1) throw std::invalid_argument("table csv: need columns h0..hn with n >= 1");

    std::vector<std::pair<long long, std::vector<Int>>> parsed;
    std::string linebuf;
    while (std::getline(is, linebuf)) {
        if (!linebuf.empty() && linebuf.back() == '\r') linebuf.pop_back();
        if (linebuf.empty()) continue;
        std::istringstream ls(linebuf);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != static_cast<size_t>(n + 2))
            throw std::invalid_argument("table csv: row \"" + linebuf + "\" has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(n + 2));
        try {
            long long t = std::stoll(fields[0]);
            std::vector<Int> row;
            for (int q = 0; q <= n; ++q) {
                Int v(fields[static_cast<size_t>(q) + 1]);
                if (v < 0) throw std::invalid_argument("negative entry");
                row.push_back(v);
            }
            parsed.emplace_back(t, std::move(row));
        } catch (const std::exception& e) {
            throw std::invalid_argument("table csv: bad row \"" + linebuf + "\": " + e.what());
        }
    }
    if (parsed.empty()) throw std::invalid_argument("table csv: no rows");
    for (size_t i = 1; i < parsed.size(); ++i) {
        if (parsed[i].first != parsed[i - 1].first + 1)
            throw std::invalid_argument("table csv: twists must be contiguous ascending");
    }
    CohomologyTable T(n, Window{parsed.front().first, parsed.back().first});
    for (auto& [t, row] : parsed) T.set_row(t, std::move(row));
    return T;
}

std::vector<Int> bott_h(int n, int p, long long k) {
    if (n < 1) throw std::invalid_argument("bott_h: dimension must be >= 1");
    if (p < 0 || p > n)
        throw std::invalid_argument("bott_h: power " + std::to_string(p) + " outside [0," +
                                    std::to_string(n) + "]");
    std::vector<Int> h(static_cast<size_t>(n + 1), Int(0));
    if (k == 0) {
        h[static_cast<size_t>(p)] = 1;
    } else if (k > p) {
        h[0] = binom(k - 1, p) * binom(n + k - p, k);
    } else if (k < p - n) {
        h[static_cast<size_t>(n)] = binom(-k - 1, n - p) * binom(p - k, -k);
    }
    return h;
}

std::vector<Int> cohomology_row(const FormalBundle& E, long long t) {
    const int n = E.n();
    std::vector<Int> total(static_cast<size_t>(n + 1), Int(0));
    for (const auto& [s, m] : E.summands()) {
        std::vector<Int> h = bott_h(n, s.omega, s.twist + t);
        for (int q = 0; q <= n; ++q) total[q] += m * h[q];
    }
    return total;
}

CohomologyTable table_serial(const FormalBundle& E, Window w) {
    CohomologyTable T(E.n(), w);
    for (long long t = w.lo; t <= w.hi; ++t) T.set_row(t, cohomology_row(E, t));
    return T;
}

CohomologyTable table(const FormalBundle& E, Window w) {
    CohomologyTable T(E.n(), w);
    const long long count = w.width();
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) T.set_row(w.lo + i, cohomology_row(E, w.lo + i));
    return T;
}

HSet hset(const CohomologyTable& T) {
    const int n = T.n();
    const Window w = T.window();
    for (int s = 1; s <= n - 1; ++s) {
        for (long long t : {w.lo, w.hi}) {
            if (T.at(t, s) != 0)
                throw Refusal("window_insufficient",
                              "window insufficient: nonzero middle cohomology at boundary",
                              {{"twist", t}, {"degree", s}});
        }
    }
    HSet H;
    for (long long t = w.lo; t <= w.hi; ++t)
        for (int s = 1; s <= n - 1; ++s)
            if (T.at(t, s) != 0) H.insert({t, s});
    return H;
}

HSet hset_exact(const FormalBundle& E) {
    HSet H;
    for (const auto& [s, m] : E.summands()) {
        (void)m;
        if (s.omega != 0) H.insert({-s.twist, s.omega});
    }
    return H;
}

CohomologyTable serre_dual_table(const CohomologyTable& T) {
    const int n = T.n();
    const Window w = T.window();
    CohomologyTable D(n, Window{-w.hi, -w.lo});
    for (long long t = -w.hi; t <= -w.lo; ++t) {
        std::vector<Int> row(static_cast<size_t>(n + 1));
        for (int q = 0; q <= n; ++q) row[static_cast<size_t>(q)] = T.at(-t, n - q);
        D.set_row(t, std::move(row));
    }
    return D;
}

Int rank_from_table(const CohomologyTable& T) {
    const int n = T.n();
    if (T.window().width() < n + 1)
        throw Refusal("window_insufficient",
                      "window too narrow to recover the rank (need width >= n+1)",
                      {{"width", T.window().width()}, {"needed", n + 1}});
    const long long t0 = T.window().lo;
    Int acc = 0;
    for (int j = 0; j <= n; ++j) {
        Int term = binom(n, j) * T.chi(t0 + j);
        acc += ((n - j) % 2 == 0) ? term : -term;
    }
    return acc;
}

}  // namespace frobsplit
