#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "frobsplit/cohomology.hpp"

namespace frobsplit {

// First page of the Beilinson-type spectral sequence over the square
// r in [-n,0], s in [0,n]: cell (r,s) holds the multiplicity h^s(E(r))
// and the canonical label Omega^{-r}(-r) (folded to a line bundle when
// -r is 0 or n). The cell's rank as a bundle is mult * rank(label).
class E1Page {
public:
    explicit E1Page(int n);

    int n() const { return n_; }
    const Int& mult(int r, int s) const;
    Int& mult(int r, int s);
    Summand label(int r) const;
    Int cell_rank(int r, int s) const;

private:
    size_t idx(int r, int s) const;
    int n_;
    std::vector<Int> mults_;
};

// Needs window containing [-n, 0].
E1Page e1_page(const CohomologyTable& T);

struct Arrow {
    int r1, s1;  // source cell
    int r2, s2;  // target cell
    int page;    // differential lives on page `page`
    bool possibly_nonzero;
};

// Classifies every in-square differential on pages 1..n+1 as possibly
// nonzero or forced zero. Requires the dagger condition on H.
std::vector<Arrow> classify_arrows(const E1Page& page, const HSet& H);

// rank E_t^{-k,0} = sum_{t' >= t} rank E_1^{-k-t', t'-1}, for k = 1..n and
// t = 2..n+1 (zero once -k-t' < -n). Requires dagger.
std::map<std::pair<int, int>, Int> bottom_row_dims(const CohomologyTable& T);

// (rank E_inf^{0,0}, rank E_inf^{-n,n}) under dagger and H inside
// {r+s <= 0}; refuses otherwise, and refuses on negative ranks.
std::pair<Int, Int> corner_ranks(const CohomologyTable& T, const Int& rank);

// Grid rendering: rows s = n..0 top to bottom, columns r = -n..0, each
// cell "mult*label" or ".".
std::string render_grid(const E1Page& page);
// CSV with columns r,s,mult,label, same orientation.
std::string e1_csv(const E1Page& page);

// Everything the page determines at table level; cells whose later-page
// rank depends on unknown map ranks are not reported.
struct PageReport {
    std::vector<Arrow> arrows;
    std::map<int, Int> diagonal;  // s -> mult of E_inf^{-s,s} = E_1^{-s,s}, s = 1..n-1
    std::map<std::pair<int, int>, Int> bottom;
    bool corners_determined = false;
    Int corner00, cornerNN;
};

PageReport page_report(const CohomologyTable& T, const Int& rank);

}  // namespace frobsplit
