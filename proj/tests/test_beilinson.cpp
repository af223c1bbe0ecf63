#include "doctest.h"

#include "generators.hpp"
#include "frobsplit/beilinson.hpp"
#include "frobsplit/errors.hpp"

using namespace frobsplit;

namespace {

CohomologyTable pushforward_of_line(int n, long long d, long long m) {
    FormalBundle L(n);
    L.add(0, d);
    return pushforward_table_serial(L, m, auto_window(L, m));
}

}  // namespace

TEST_SUITE("beilinson") {

TEST_CASE("e1_page of O has a single nonzero cell") {
    for (int n = 1; n <= 4; ++n) {
        FormalBundle O(n);
        O.add(0, 0);
        E1Page page = e1_page(table_serial(O, auto_window(O)));
        for (int r = -n; r <= 0; ++r)
            for (int s = 0; s <= n; ++s)
                CHECK(page.mult(r, s) == ((r == 0 && s == 0) ? Int(1) : Int(0)));
    }
}

TEST_CASE("e1_page of Omega^1 on P^2") {
    FormalBundle E(2);
    E.add(1, 0);
    E1Page page = e1_page(table_serial(E, auto_window(E)));
    for (int r = -2; r <= 0; ++r)
        for (int s = 0; s <= 2; ++s) {
            Int expected = 0;  // grid nonzero exactly where h^s(Omega^1(r)) is
            if (r == 0 && s == 1) expected = 1;
            if (r == -2 && s == 2) expected = 3;
            CHECK(page.mult(r, s) == expected);
        }
    CHECK(page.label(0) == Summand{0, 0});
    CHECK(page.label(-1) == Summand{1, 1});
    CHECK(page.label(-2) == Summand{0, -1});  // Omega^2(2) folds to O(-1)
}

TEST_CASE("e1_page of F_2*O(-6) on P^2: multiplicities and cell ranks") {
    E1Page page = e1_page(pushforward_of_line(2, -6, 2));
    CHECK(page.mult(-2, 2) == 36);
    CHECK(page.mult(-1, 2) == 21);
    CHECK(page.mult(0, 2) == 10);
    CHECK(page.cell_rank(-2, 2) == 36);
    CHECK(page.cell_rank(-1, 2) == 42);  // label Om^1(1) has rank 2
    CHECK(page.cell_rank(0, 2) == 10);
    for (int r = -2; r <= 0; ++r)
        for (int s = 0; s <= 1; ++s) CHECK(page.mult(r, s) == 0);
}

TEST_CASE("e1_page needs the window to contain the square") {
    FormalBundle O(2);
    O.add(0, 0);
    CHECK_THROWS_AS(e1_page(table_serial(O, Window{-1, 3})), Refusal);
}

TEST_CASE("classify_arrows: the single surviving arrow of a twisted form") {
    FormalBundle E(3);
    E.add(1, 2);  // H = {(-2,1)}
    CohomologyTable T = table_serial(E, auto_window(E));
    auto arrows = classify_arrows(e1_page(T), hset(T));
    int live = 0;
    for (const auto& a : arrows)
        if (a.possibly_nonzero) {
            ++live;
            CHECK(a.r1 == -2);
            CHECK(a.s1 == 1);
            CHECK(a.r2 == 0);
            CHECK(a.s2 == 0);
            CHECK(a.page == 2);
        }
    CHECK(live == 1);
}

TEST_CASE("classify_arrows: diagonal cells survive untouched") {
    FormalBundle E(2);
    E.add(1, 1);  // H = {(-1,1)}, on the diagonal
    CohomologyTable T = table_serial(E, auto_window(E));
    auto arrows = classify_arrows(e1_page(T), hset(T));
    for (const auto& a : arrows) CHECK_FALSE(a.possibly_nonzero);
}

TEST_CASE("classify_arrows marks zero every arrow touching an empty cell") {
    testgen::Rng rng(7401);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = testgen::pick(rng, 2, 4);
        FormalBundle E = testgen::random_dagger_bundle(rng, n, 4, 4);
        CohomologyTable T = table_serial(E, auto_window(E));
        E1Page page = e1_page(T);
        for (const auto& a : classify_arrows(page, hset(T)))
            if (page.mult(a.r1, a.s1) == 0 || page.mult(a.r2, a.s2) == 0)
                CHECK_FALSE(a.possibly_nonzero);
    }
}

TEST_CASE("classify_arrows requires dagger") {
    FormalBundle E(3);
    E.add(2, 0);
    E.add(1, -2);
    CohomologyTable T = table_serial(E, auto_window(E));
    CHECK_THROWS_AS(classify_arrows(e1_page(T), hset(T)), Refusal);
}

TEST_CASE("bottom_row_dims of O(1) on P^2 vanishes") {
    FormalBundle E(2);
    E.add(0, 1);
    auto dims = bottom_row_dims(table_serial(E, auto_window(E)));
    for (const auto& [key, v] : dims) {
        (void)key;
        CHECK(v == 0);
    }
}

TEST_CASE("bottom_row_dims telescopes and reaches zero") {
    testgen::Rng rng(7402);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = testgen::pick(rng, 2, 4);
        FormalBundle E = testgen::random_dagger_bundle(rng, n, 4, 4);
        CohomologyTable T = table_serial(E, auto_window(E));
        auto dims = bottom_row_dims(T);
        E1Page page = e1_page(T);
        for (int k = 1; k <= n; ++k) {
            for (int t = 2; t <= n; ++t) {
                CHECK(dims.at({k, t}) >= dims.at({k, t + 1}));
                if (k + 2 <= n)
                    CHECK(dims.at({k, 2}) - dims.at({k, 3}) == page.cell_rank(-k - 2, 1));
            }
            CHECK(dims.at({k, n + 1}) == 0);
        }
    }
}

TEST_CASE("corner_ranks pinned cases") {
    {
        auto [e00, enn] = corner_ranks(pushforward_of_line(2, -6, 2), Int(4));
        CHECK(e00 == 0);
        CHECK(enn == 4);
    }
    for (int n = 2; n <= 4; ++n)
        for (int d = 1; d <= n - 1; ++d) {
            FormalBundle E(n);
            E.add(d, d);  // single middle point (-d, d) on the diagonal
            auto [e00, enn] = corner_ranks(table_serial(E, auto_window(E)), E.rank());
            CHECK(e00 == 0);
            CHECK(enn == 0);
        }
    {
        FormalBundle O(3);
        O.add(0, 0);
        auto [e00, enn] = corner_ranks(table_serial(O, auto_window(O)), Int(1));
        CHECK(e00 == 1);
        CHECK(enn == 0);
    }
}

TEST_CASE("corner_ranks refuses when the support crosses the diagonal") {
    FormalBundle E(2);
    E.add(1, 0);  // H = {(0,1)}: r+s = 1 > 0
    CohomologyTable T = table_serial(E, auto_window(E));
    try {
        corner_ranks(T, E.rank());
        FAIL("expected refusal");
    } catch (const Refusal& r) {
        CHECK(r.code() == "hypothesis_violated");
    }
}

TEST_CASE("diagonal conservation and agreement with decompose") {
    testgen::Rng rng(7403);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = testgen::pick(rng, 2, 4);
        FormalBundle E = testgen::random_dagger_bundle(rng, n, 5, 5, /*admissible=*/true);
        CohomologyTable T = table_serial(E, auto_window(E));
        auto [e00, enn] = corner_ranks(T, E.rank());
        Int diagonal = 0;
        for (int s = 1; s <= n - 1; ++s) diagonal += T.at(-s, s) * binom(n, s);
        CHECK(e00 + enn + diagonal == E.rank());

        Decomposition D = decompose(T);
        Int neg_lines = 0, pos_lines = 0, off_diag = 0;
        for (const auto& [k, mult] : D.lines) (k <= -1 ? neg_lines : pos_lines) += mult;
        for (const auto& [key, mult] : D.middle)
            if (key.second + key.first < 0) off_diag += mult * binom(n, key.first);
        CHECK(enn == neg_lines);
        CHECK(e00 == pos_lines + off_diag);
    }
}

TEST_CASE("grid rendering and CSV export") {
    E1Page page = e1_page(pushforward_of_line(2, -6, 2));
    std::string grid = render_grid(page);
    CHECK(grid.find("36*O(-1)") != std::string::npos);
    CHECK(grid.find("21*Om^1(1)") != std::string::npos);
    CHECK(grid.find("10*O") != std::string::npos);
    CHECK(grid.find("s=2") != std::string::npos);
    CHECK(grid.find("r=-2") != std::string::npos);

    CHECK(e1_csv(page) ==
          "r,s,mult,label\n"
          "-2,2,36,O(-1)\n"
          "-1,2,21,Om^1(1)\n"
          "0,2,10,O\n"
          "-2,1,0,O(-1)\n"
          "-1,1,0,Om^1(1)\n"
          "0,1,0,O\n"
          "-2,0,0,O(-1)\n"
          "-1,0,0,Om^1(1)\n"
          "0,0,0,O\n");
}

TEST_CASE("page_report marks undetermined corners") {
    FormalBundle E(2);
    E.add(1, 0);
    PageReport rep = page_report(table_serial(E, auto_window(E)), E.rank());
    CHECK_FALSE(rep.corners_determined);
    CHECK(rep.diagonal.at(1) == 0);

    FormalBundle F(2);
    F.add(1, 1);
    PageReport rep2 = page_report(table_serial(F, auto_window(F)), F.rank());
    CHECK(rep2.corners_determined);
    CHECK(rep2.diagonal.at(1) == 1);
    CHECK(rep2.corner00 == 0);
    CHECK(rep2.cornerNN == 0);
}

}  // TEST_SUITE
