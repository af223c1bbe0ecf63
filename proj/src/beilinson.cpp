#include "frobsplit/beilinson.hpp"

#include <sstream>
#include <stdexcept>

#include "frobsplit/errors.hpp"
#include "frobsplit/splitting.hpp"

namespace frobsplit {

E1Page::E1Page(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("E1Page: dimension must be >= 1");
    mults_.assign(static_cast<size_t>((n + 1) * (n + 1)), Int(0));
}

size_t E1Page::idx(int r, int s) const {
    if (r < -n_ || r > 0 || s < 0 || s > n_)
        throw std::out_of_range("E1Page: cell outside the square");
    return static_cast<size_t>((r + n_) * (n_ + 1) + s);
}

const Int& E1Page::mult(int r, int s) const { return mults_[idx(r, s)]; }
Int& E1Page::mult(int r, int s) { return mults_[idx(r, s)]; }

Summand E1Page::label(int r) const {
    if (r < -n_ || r > 0) throw std::out_of_range("E1Page: column outside the square");
    return normalize(n_, -r, -r);
}

Int E1Page::cell_rank(int r, int s) const {
    return mult(r, s) * summand_rank(n_, label(r));
}

E1Page e1_page(const CohomologyTable& T) {
    const int n = T.n();
    if (!(T.window().contains(-n) && T.window().contains(0)))
        throw Refusal("window_insufficient", "e1_page needs the window to contain [-n, 0]",
                      {{"lo", T.window().lo}, {"hi", T.window().hi}});
    E1Page page(n);
    for (int r = -n; r <= 0; ++r)
        for (int s = 0; s <= n; ++s) page.mult(r, s) = T.at(r, s);
    return page;
}

std::vector<Arrow> classify_arrows(const E1Page& page, const HSet& H) {
    if (!check_dagger(H))
        throw Refusal("dagger_violated", "classify_arrows requires the dagger condition");
    const int n = page.n();
    std::vector<Arrow> out;
    for (int r = -n; r <= 0; ++r) {
        for (int s = 0; s <= n; ++s) {
            for (int t = 1; t <= n + 1; ++t) {
                const int r2 = r + t, s2 = s - t + 1;
                if (r2 < -n || r2 > 0 || s2 < 0 || s2 > n) continue;
                Arrow arrow{r, s, r2, s2, t, false};
                if (page.mult(r, s) != 0 && page.mult(r2, s2) != 0) {
                    if (s >= 1 && s <= n - 1) {
                        // Only the page-(s+1) arrow into the bottom row
                        // survives for a middle source.
                        arrow.possibly_nonzero = (t == s + 1 && s2 == 0);
                    } else if (s2 >= 1 && s2 <= n - 1) {
                        // Only the page-(n-s2+1) arrow from the top row
                        // reaches a middle target.
                        arrow.possibly_nonzero = (s == n && t == n - s2 + 1);
                    } else {
                        // Row-0 and row-n horizontal maps on page 1.
                        arrow.possibly_nonzero = (t == 1);
                    }
                }
                out.push_back(arrow);
            }
        }
    }
    return out;
}

std::map<std::pair<int, int>, Int> bottom_row_dims(const CohomologyTable& T) {
    const int n = T.n();
    HSet H = hset(T);
    if (!check_dagger(H))
        throw Refusal("dagger_violated", "bottom_row_dims requires the dagger condition");
    E1Page page = e1_page(T);
    std::map<std::pair<int, int>, Int> out;
    for (int k = 1; k <= n; ++k) {
        for (int t = 2; t <= n + 1; ++t) {
            Int acc = 0;
            for (int tp = t; k + tp <= n; ++tp)
                acc += page.cell_rank(-k - tp, tp - 1);
            out[{k, t}] = acc;
        }
    }
    return out;
}

std::pair<Int, Int> corner_ranks(const CohomologyTable& T, const Int& rank) {
    const int n = T.n();
    HSet H = hset(T);
    if (!check_dagger(H))
        throw Refusal("dagger_violated", "corner_ranks requires the dagger condition");
    for (const auto& [r, s] : H) {
        if (r + s > 0)
            throw Refusal("hypothesis_violated",
                          "corner_ranks requires H(E) inside {r+s <= 0}",
                          {{"twist", r}, {"degree", s}});
    }
    if (!(T.window().contains(-n) && T.window().contains(0)))
        throw Refusal("window_insufficient",
                      "corner_ranks needs the window to contain [-n, 0]");

    // Alternating rank sum of the top-row resolution of E_inf^{-n,n}.
    Int corner_nn = 0;
    for (int j = 0; j <= n; ++j) {
        Int term = T.at(-n + j, n) * binom(n, n - j);
        corner_nn += (j % 2 == 0) ? term : -term;
    }
    Int diagonal = 0;
    for (int s = 1; s <= n - 1; ++s) diagonal += T.at(-s, s) * binom(n, s);
    Int corner_00 = rank - diagonal - corner_nn;
    if (corner_nn < 0 || corner_00 < 0)
        throw Refusal("inconsistent_table", "corner_ranks: negative corner rank",
                      {{"e00", corner_00.str()}, {"enn", corner_nn.str()}});
    return {corner_00, corner_nn};
}

std::string render_grid(const E1Page& page) {
    const int n = page.n();
    std::vector<std::vector<std::string>> cells(static_cast<size_t>(n + 2),
                                                std::vector<std::string>(static_cast<size_t>(n + 2)));
    cells[0][0] = "";
    for (int r = -n; r <= 0; ++r) cells[0][static_cast<size_t>(r + n + 1)] = "r=" + std::to_string(r);
    for (int s = n; s >= 0; --s) {
        auto& row = cells[static_cast<size_t>(n - s + 1)];
        row[0] = "s=" + std::to_string(s);
        for (int r = -n; r <= 0; ++r) {
            const Int& m = page.mult(r, s);
            row[static_cast<size_t>(r + n + 1)] =
                m == 0 ? "." : m.str() + "*" + summand_label(page.label(r));
        }
    }
    std::vector<size_t> width(static_cast<size_t>(n + 2), 0);
    for (const auto& row : cells)
        for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::string out;
    for (const auto& row : cells) {
        std::string line;
        for (size_t c = 0; c < row.size(); ++c) {
            std::string v = row[c];
            v.resize(width[c], ' ');
            line += v;
            if (c + 1 < row.size()) line += "  ";
        }
        line.erase(line.find_last_not_of(' ') + 1);
        out += line + "\n";
    }
    return out;
}

std::string e1_csv(const E1Page& page) {
    const int n = page.n();
    std::ostringstream os;
    os << "r,s,mult,label\n";
    for (int s = n; s >= 0; --s)
        for (int r = -n; r <= 0; ++r)
            os << r << "," << s << "," << page.mult(r, s) << ","
               << summand_label(page.label(r)) << "\n";
    return os.str();
}

PageReport page_report(const CohomologyTable& T, const Int& rank) {
    const int n = T.n();
    HSet H = hset(T);
    E1Page page = e1_page(T);
    PageReport rep;
    rep.arrows = classify_arrows(page, H);
    for (int s = 1; s <= n - 1; ++s) rep.diagonal[s] = page.mult(-s, s);
    rep.bottom = bottom_row_dims(T);
    bool admissible = true;
    for (const auto& [r, s] : H)
        if (r + s > 0) admissible = false;
    if (admissible) {
        auto [c00, cnn] = corner_ranks(T, rank);
        rep.corners_determined = true;
        rep.corner00 = c00;
        rep.cornerNN = cnn;
    }
    return rep;
}

}  // namespace frobsplit
