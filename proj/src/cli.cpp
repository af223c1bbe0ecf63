#include "frobsplit/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "frobsplit/beilinson.hpp"
#include "frobsplit/errors.hpp"
#include "frobsplit/json_util.hpp"
#include "frobsplit/oracles.hpp"
#include "frobsplit/splitting.hpp"

namespace frobsplit::cli {

namespace {

using nlohmann::json;

enum class Format { Text, Json, Csv };

struct Common {
    std::string format = "text";
    std::string budget = "100000000";

    Format fmt() const {
        if (format == "text") return Format::Text;
        if (format == "json") return Format::Json;
        if (format == "csv") return Format::Csv;
        throw std::invalid_argument("unknown format \"" + format + "\"");
    }
    Int budget_value() const {
        try {
            Int b(budget);
            if (b < 1) throw std::invalid_argument("");
            return b;
        } catch (const std::exception&) {
            throw std::invalid_argument("--budget must be a positive integer");
        }
    }
};

std::string read_source(const std::string& arg, const std::string& what) {
    if (arg == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument(what + ": cannot open file \"" + arg + "\"");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

FormalBundle load_bundle(const std::string& arg, std::optional<int> expect_n) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{') text = read_source(arg, "--bundle");
    FormalBundle E = FormalBundle::parse(text);
    if (expect_n && *expect_n != E.n())
        throw std::invalid_argument("--n " + std::to_string(*expect_n) +
                                    " does not match the bundle's n = " +
                                    std::to_string(E.n()));
    return E;
}

CohomologyTable load_table(const std::string& arg) {
    return CohomologyTable::from_csv(read_source(arg, "--table"));
}

Window parse_window(const std::string& text) {
    auto colon = text.find(':', 1);  // allow a leading minus sign
    if (colon == std::string::npos)
        throw std::invalid_argument("--window must be \"lo:hi\"");
    try {
        Window w{std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
        if (w.hi < w.lo) throw std::invalid_argument("");
        return w;
    } catch (const std::exception&) {
        throw std::invalid_argument("--window must be \"lo:hi\" with lo <= hi");
    }
}

std::optional<int> opt_n(const CLI::App* cmd) {
    std::optional<int> out;
    if (cmd->count("--n") > 0) out = cmd->get_option("--n")->as<int>();
    return out;
}

json h_to_json(const std::vector<Int>& h) {
    json arr = json::array();
    for (const auto& v : h) arr.push_back(int_to_json(v));
    return arr;
}

std::string h_to_text(const std::vector<Int>& h) {
    std::string out = "(";
    for (size_t i = 0; i < h.size(); ++i) {
        if (i) out += ",";
        out += h[i].str();
    }
    return out + ")";
}

void emit_h_vector(std::ostream& out, Format fmt, const std::vector<Int>& h, json meta) {
    switch (fmt) {
        case Format::Text:
            out << h_to_text(h) << "\n";
            break;
        case Format::Json:
            meta["h"] = h_to_json(h);
            out << meta.dump() << "\n";
            break;
        case Format::Csv:
            out << "q,h\n";
            for (size_t q = 0; q < h.size(); ++q) out << q << "," << h[q] << "\n";
            break;
    }
}

std::string table_text(const CohomologyTable& T) {
    const int n = T.n();
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head = {"twist"};
    for (int q = 0; q <= n; ++q) head.push_back("h" + std::to_string(q));
    cells.push_back(head);
    for (long long t = T.window().lo; t <= T.window().hi; ++t) {
        std::vector<std::string> row = {std::to_string(t)};
        for (int q = 0; q <= n; ++q) row.push_back(T.at(t, q).str());
        cells.push_back(row);
    }
    std::vector<size_t> width(head.size(), 0);
    for (const auto& row : cells)
        for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::string out;
    for (const auto& row : cells) {
        std::string line;
        for (size_t c = 0; c < row.size(); ++c) {
            std::string v = row[c];
            if (v.size() < width[c]) v.insert(0, width[c] - v.size(), ' ');
            line += v;
            if (c + 1 < row.size()) line += "  ";
        }
        out += line + "\n";
    }
    return out;
}

json table_json(const CohomologyTable& T) {
    json rows = json::array();
    for (long long t = T.window().lo; t <= T.window().hi; ++t)
        rows.push_back({{"twist", t}, {"h", h_to_json(T.row(t))}});
    return json{{"n", T.n()},
                {"window", {T.window().lo, T.window().hi}},
                {"rows", rows}};
}

void emit_table(std::ostream& out, Format fmt, const CohomologyTable& T) {
    switch (fmt) {
        case Format::Text: out << table_text(T); break;
        case Format::Json: out << table_json(T).dump() << "\n"; break;
        case Format::Csv: out << T.to_csv(); break;
    }
}

json hset_json(const HSet& H) {
    json arr = json::array();
    for (const auto& [r, s] : H) arr.push_back({{"twist", r}, {"degree", s}});
    return arr;
}

std::string hset_text(const HSet& H) {
    std::string out = "{";
    bool first = true;
    for (const auto& [r, s] : H) {
        if (!first) out += ",";
        first = false;
        out += "(" + std::to_string(r) + "," + std::to_string(s) + ")";
    }
    return out + "}";
}

json violations_json(const std::vector<std::pair<HPoint, HPoint>>& v) {
    json arr = json::array();
    for (const auto& [from, to] : v)
        arr.push_back({{"from", {from.first, from.second}}, {"to", {to.first, to.second}}});
    return arr;
}

std::string checks_text(const DecompositionChecks& c) {
    auto flag = [](bool b) { return b ? std::string("ok") : std::string("FAIL"); };
    return "rank=" + flag(c.rank) + " chi=" + flag(c.chi) +
           " reconstruction=" + flag(c.reconstruction);
}

std::string decomposition_text(const Decomposition& D) {
    std::ostringstream os;
    os << "n = " << D.n << "\n";
    os << "rho = " << D.rho << "\n";
    os << "middle:";
    if (D.middle.empty()) os << " (none)";
    os << "\n";
    for (const auto& [key, mult] : D.middle)
        os << "  " << summand_label(Summand{key.first, -key.second}) << "^" << mult << "\n";
    os << "lines:";
    if (D.lines.empty()) os << " (none)";
    os << "\n";
    for (const auto& [k, mult] : D.lines)
        os << "  " << summand_label(line(k)) << "^" << mult << "\n";
    os << "checks: " << checks_text(D.checks) << "\n";
    return os.str();
}

std::string pushforward_text(const PushforwardReport& rep) {
    std::ostringstream os;
    os << "n = " << rep.n << ", m = " << rep.m << "\n";
    os << "a (Omega^i multiplicities, i=0..n):";
    for (const auto& v : rep.a) os << " " << v;
    os << "\n";
    os << "b (O(-j) multiplicities, j=1..n):";
    for (int j = 1; j <= rep.n; ++j) os << " " << rep.b[static_cast<size_t>(j)];
    os << "\n";
    os << "rho = " << rep.decomposition.rho << "\n";
    os << "checks: " << checks_text(rep.decomposition.checks) << "\n";
    return os.str();
}

std::string arrow_text(const Arrow& a) {
    auto cell = [](int r, int s) {
        return "{" + std::to_string(r) + "," + std::to_string(s) + "}";
    };
    return "E_" + std::to_string(a.page) + "^" + cell(a.r1, a.s1) + " -> E_" +
           std::to_string(a.page) + "^" + cell(a.r2, a.s2);
}

json arrows_json(const std::vector<Arrow>& arrows) {
    json arr = json::array();
    for (const auto& a : arrows)
        arr.push_back({{"from", {a.r1, a.s1}},
                       {"to", {a.r2, a.s2}},
                       {"page", a.page},
                       {"status", a.possibly_nonzero ? "possibly-nonzero" : "forced-zero"}});
    return arr;
}

struct BundleOrTable {
    std::string bundle;
    std::string table_src;
    std::string window;
    std::optional<int> n;

    // Builds the working table; auto-windows formal bundles, explicit
    // windows are mandatory for raw tables.
    CohomologyTable resolve(std::optional<FormalBundle>* bundle_out = nullptr) const {
        if (!bundle.empty() && !table_src.empty())
            throw std::invalid_argument("give either --bundle or --table, not both");
        if (!bundle.empty()) {
            FormalBundle E = load_bundle(bundle, n);
            Window w = window.empty() ? auto_window(E, 1) : parse_window(window);
            if (bundle_out) *bundle_out = E;
            return table(E, w);
        }
        if (!table_src.empty()) {
            if (!window.empty())
                throw std::invalid_argument(
                    "--window applies to --bundle input; a raw table carries its window");
            CohomologyTable T = load_table(table_src);
            if (n && *n != T.n())
                throw std::invalid_argument("--n does not match the table's column count");
            return T;
        }
        throw std::invalid_argument("need --bundle or --table");
    }
};

int dispatch(CLI::App& app, const Common& common, std::ostream& out) {
    const Format fmt = common.fmt();

    if (auto* cmd = app.get_subcommand("bott"); cmd->parsed()) {
        int n = cmd->get_option("--n")->as<int>();
        int p = cmd->get_option("--p")->as<int>();
        long long k = cmd->get_option("--k")->as<long long>();
        emit_h_vector(out, fmt, bott_h(n, p, k), json{{"n", n}, {"p", p}, {"k", k}});
        return 0;
    }

    if (auto* cmd = app.get_subcommand("cech"); cmd->parsed()) {
        int n = cmd->get_option("--n")->as<int>();
        int p = cmd->get_option("--p")->as<int>();
        long long k = cmd->get_option("--k")->as<long long>();
        emit_h_vector(out, fmt, koszul_cech(n, p, k), json{{"n", n}, {"p", p}, {"k", k}});
        return 0;
    }

    if (auto* cmd = app.get_subcommand("table"); cmd->parsed()) {
        BundleOrTable src{cmd->get_option("--bundle")->as<std::string>(), "",
                          cmd->get_option("--window")->as<std::string>(), opt_n(cmd)};
        if (src.bundle.empty()) throw std::invalid_argument("table: need --bundle");
        emit_table(out, fmt, src.resolve());
        return 0;
    }

    if (auto* cmd = app.get_subcommand("frobenius"); cmd->parsed()) {
        FormalBundle E = load_bundle(cmd->get_option("--bundle")->as<std::string>(), opt_n(cmd));
        long long m = cmd->get_option("--m")->as<long long>();
        std::string wspec = cmd->get_option("--window")->as<std::string>();
        Window w = wspec.empty() ? auto_window(E, m) : parse_window(wspec);
        emit_table(out, fmt, pushforward_table(E, m, w));
        return 0;
    }

    if (auto* cmd = app.get_subcommand("hset"); cmd->parsed()) {
        std::string bundle = cmd->get_option("--bundle")->as<std::string>();
        std::string tbl = cmd->get_option("--table")->as<std::string>();
        HSet H;
        if (!bundle.empty() && tbl.empty()) {
            H = hset_exact(load_bundle(bundle, std::nullopt));
        } else if (!tbl.empty() && bundle.empty()) {
            H = hset(load_table(tbl));
        } else {
            throw std::invalid_argument("hset: need exactly one of --bundle or --table");
        }
        if (fmt == Format::Csv) throw std::invalid_argument("hset: csv format not supported");
        if (fmt == Format::Json)
            out << hset_json(H).dump() << "\n";
        else
            out << hset_text(H) << "\n";
        return 0;
    }

    if (auto* cmd = app.get_subcommand("dagger"); cmd->parsed()) {
        BundleOrTable src{cmd->get_option("--bundle")->as<std::string>(),
                          cmd->get_option("--table")->as<std::string>(),
                          cmd->get_option("--window")->as<std::string>(), std::nullopt};
        HSet H;
        if (!src.bundle.empty() && src.table_src.empty())
            H = hset_exact(load_bundle(src.bundle, std::nullopt));
        else if (!src.table_src.empty() && src.bundle.empty())
            H = hset(load_table(src.table_src));
        else
            throw std::invalid_argument("dagger: need exactly one of --bundle or --table");
        auto violations = dagger_violations(H);
        if (fmt == Format::Csv) throw std::invalid_argument("dagger: csv format not supported");
        if (fmt == Format::Json) {
            out << json{{"pass", violations.empty()},
                        {"violations", violations_json(violations)}}
                       .dump()
                << "\n";
        } else if (violations.empty()) {
            out << "pass\n";
        } else {
            out << "violations:\n";
            for (const auto& [from, to] : violations)
                out << "  (" << from.first << "," << from.second << ") -> (" << to.first
                    << "," << to.second << ")\n";
        }
        return 0;
    }

    if (auto* cmd = app.get_subcommand("mthreshold"); cmd->parsed()) {
        FormalBundle E = load_bundle(cmd->get_option("--bundle")->as<std::string>(), opt_n(cmd));
        long long m0 = m_threshold(E);
        if (fmt == Format::Json)
            out << json{{"m_threshold", m0}}.dump() << "\n";
        else
            out << m0 << "\n";
        return 0;
    }

    if (auto* cmd = app.get_subcommand("decompose"); cmd->parsed()) {
        BundleOrTable src{cmd->get_option("--bundle")->as<std::string>(),
                          cmd->get_option("--table")->as<std::string>(),
                          cmd->get_option("--window")->as<std::string>(), opt_n(cmd)};
        Decomposition D = decompose(src.resolve());
        if (fmt == Format::Csv)
            throw std::invalid_argument("decompose: csv format not supported");
        if (fmt == Format::Json)
            out << D.to_json().dump() << "\n";
        else
            out << decomposition_text(D);
        return 0;
    }

    if (auto* cmd = app.get_subcommand("pushforward"); cmd->parsed()) {
        FormalBundle E = load_bundle(cmd->get_option("--bundle")->as<std::string>(), opt_n(cmd));
        long long m = cmd->get_option("--m")->as<long long>();
        std::string wspec = cmd->get_option("--window")->as<std::string>();
        PushforwardReport rep = wspec.empty()
                                    ? decompose_pushforward(E, m)
                                    : decompose_pushforward(E, m, parse_window(wspec));
        if (fmt == Format::Csv)
            throw std::invalid_argument("pushforward: csv format not supported");
        if (fmt == Format::Json)
            out << rep.decomposition.to_json().dump() << "\n";
        else
            out << pushforward_text(rep);
        return 0;
    }

    if (auto* cmd = app.get_subcommand("thomsen"); cmd->parsed()) {
        int n = cmd->get_option("--n")->as<int>();
        long long m = cmd->get_option("--m")->as<long long>();
        long long d = cmd->get_option("--d")->as<long long>();
        ResidueCount counts = thomsen_counts(n, m, d);
        // Cross-check against the brute-force enumeration when affordable.
        Int tuples = 1;
        for (int i = 0; i <= n; ++i) tuples *= m;
        if (tuples <= common.budget_value()) {
            ResidueCount brute = thomsen_enumerate(n, m, d, common.budget_value());
            if (!(brute == counts))
                throw std::logic_error("thomsen: closed form disagrees with enumeration");
        }
        if (fmt == Format::Csv) throw std::invalid_argument("thomsen: csv format not supported");
        if (fmt == Format::Json) {
            json arr = json::array();
            for (const auto& [t, c] : counts.counts)
                arr.push_back({{"twist", t}, {"mult", int_to_json(c)}});
            out << json{{"n", n}, {"m", m}, {"d", d}, {"counts", arr}}.dump() << "\n";
        } else {
            std::string text = "{";
            bool first = true;
            for (const auto& [t, c] : counts.counts) {
                if (!first) text += ",";
                first = false;
                text += std::to_string(t) + ":" + c.str();
            }
            out << text << "}\n";
        }
        return 0;
    }

    if (auto* cmd = app.get_subcommand("beilinson"); cmd->parsed()) {
        BundleOrTable src{cmd->get_option("--bundle")->as<std::string>(),
                          cmd->get_option("--table")->as<std::string>(),
                          cmd->get_option("--window")->as<std::string>(), opt_n(cmd)};
        std::optional<FormalBundle> E;
        CohomologyTable T = src.resolve(&E);
        E1Page page = e1_page(T);
        if (fmt == Format::Csv) {
            out << e1_csv(page);
            return 0;
        }
        Int rank = E ? E->rank() : rank_from_table(T);
        PageReport rep = page_report(T, rank);
        if (fmt == Format::Json) {
            json cells = json::array();
            for (int s = T.n(); s >= 0; --s)
                for (int r = -T.n(); r <= 0; ++r)
                    cells.push_back({{"r", r},
                                     {"s", s},
                                     {"mult", int_to_json(page.mult(r, s))},
                                     {"label", summand_label(page.label(r))}});
            json diag = json::array();
            for (const auto& [s, mult] : rep.diagonal)
                diag.push_back({{"s", s}, {"mult", int_to_json(mult)}});
            json bottom = json::array();
            for (const auto& [key, dim] : rep.bottom)
                bottom.push_back({{"k", key.first}, {"t", key.second}, {"dim", int_to_json(dim)}});
            json corners;
            if (rep.corners_determined)
                corners = {{"determined", true},
                           {"e00", int_to_json(rep.corner00)},
                           {"enn", int_to_json(rep.cornerNN)}};
            else
                corners = {{"determined", false}};
            out << json{{"n", T.n()},
                        {"cells", cells},
                        {"diagonal", diag},
                        {"arrows", arrows_json(rep.arrows)},
                        {"bottom", bottom},
                        {"corners", corners}}
                       .dump()
                << "\n";
        } else {
            out << render_grid(page);
            out << "diagonal E_inf multiplicities:";
            if (rep.diagonal.empty()) out << " (none)";
            for (const auto& [s, mult] : rep.diagonal) out << " s=" << s << ":" << mult;
            out << "\n";
            out << "possibly nonzero arrows:\n";
            bool any = false;
            for (const auto& a : rep.arrows)
                if (a.possibly_nonzero) {
                    out << "  " << arrow_text(a) << "\n";
                    any = true;
                }
            if (!any) out << "  (none)\n";
            out << "bottom row ranks E_t^{-k,0}:\n";
            for (int k = 1; k <= T.n(); ++k) {
                out << "  k=" << k << ":";
                for (int t = 2; t <= T.n() + 1; ++t)
                    out << " t=" << t << ":" << rep.bottom.at({k, t});
                out << "\n";
            }
            if (rep.corners_determined)
                out << "corners: rank E_inf^{0,0} = " << rep.corner00
                    << ", rank E_inf^{-n,n} = " << rep.cornerNN << "\n";
            else
                out << "corners: undetermined at table level (H(E) not inside {r+s<=0})\n";
        }
        return 0;
    }

    if (auto* cmd = app.get_subcommand("klyachko"); cmd->parsed()) {
        int n = cmd->get_option("--n")->as<int>();
        Int rank;
        try {
            rank = Int(cmd->get_option("--rank")->as<std::string>());
        } catch (const std::exception&) {
            throw std::invalid_argument("--rank must be an integer");
        }
        auto degrees = klyachko_bound(n, rank);
        if (fmt == Format::Csv) throw std::invalid_argument("klyachko: csv format not supported");
        if (fmt == Format::Json) {
            out << json{{"n", n}, {"rank", int_to_json(rank)}, {"forced_zero", degrees}}.dump()
                << "\n";
        } else {
            std::string text = "{";
            bool first = true;
            for (int r : degrees) {
                if (!first) text += ",";
                first = false;
                text += std::to_string(r);
            }
            out << text << "}\n";
        }
        return 0;
    }

    throw std::invalid_argument("no command given");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact cohomology tables and pushforward splitting on projective space"};
    app.name("frobsplit");
    app.require_subcommand(0, 1);

    Common common;
    app.fallthrough();
    app.add_option("--format", common.format, "output format: text|json|csv")
        ->default_val("text");
    app.add_option("--budget", common.budget, "work budget for brute-force oracles")
        ->default_val("100000000");

    auto add_npk = [](CLI::App* cmd) {
        cmd->add_option("--n", "ambient dimension")->required();
        cmd->add_option("--p", "exterior power")->required();
        cmd->add_option("--k", "twist")->required();
    };
    add_npk(app.add_subcommand("bott", "Bott's formula for h^q(Omega^p(k))"));
    add_npk(app.add_subcommand("cech", "Cech-Koszul oracle for h^q(Omega^p(k))"));

    auto add_bundle_window = [](CLI::App* cmd) {
        cmd->add_option("--n", "ambient dimension (cross-checked)");
        cmd->add_option("--bundle", "bundle JSON (inline or file)");
        cmd->add_option("--window", "twist window lo:hi");
    };

    {
        auto* cmd = app.add_subcommand("table", "cohomology table of a bundle");
        add_bundle_window(cmd);
    }
    {
        auto* cmd = app.add_subcommand("frobenius", "cohomology table of F_m*E");
        add_bundle_window(cmd);
        cmd->add_option("--m", "pushforward degree")->required();
    }
    {
        auto* cmd = app.add_subcommand("hset", "middle-cohomology support H(E)");
        cmd->add_option("--bundle", "bundle JSON (inline or file)");
        cmd->add_option("--table", "table CSV (file or -)");
    }
    {
        auto* cmd = app.add_subcommand("dagger", "check the dagger condition");
        cmd->add_option("--bundle", "bundle JSON (inline or file)");
        cmd->add_option("--table", "table CSV (file or -)");
        cmd->add_option("--window", "twist window lo:hi");
    }
    {
        auto* cmd = app.add_subcommand("mthreshold", "regularity threshold m(E)");
        cmd->add_option("--n", "ambient dimension (cross-checked)");
        cmd->add_option("--bundle", "bundle JSON (inline or file)")->required();
    }
    {
        auto* cmd = app.add_subcommand("decompose", "decompose a cohomology table");
        add_bundle_window(cmd);
        cmd->add_option("--table", "table CSV (file or -)");
    }
    {
        auto* cmd = app.add_subcommand("pushforward", "decompose F_m*E");
        cmd->add_option("--n", "ambient dimension (cross-checked)");
        cmd->add_option("--bundle", "bundle JSON (inline or file)")->required();
        cmd->add_option("--m", "pushforward degree")->required();
        cmd->add_option("--window", "twist window lo:hi (default: computed support)");
    }
    {
        auto* cmd = app.add_subcommand("thomsen", "line-bundle pushforward decomposition");
        cmd->add_option("--n", "ambient dimension")->required();
        cmd->add_option("--m", "pushforward degree")->required();
        cmd->add_option("--d", "line bundle twist")->required();
    }
    {
        auto* cmd = app.add_subcommand("beilinson", "first-page report for a bundle or table");
        add_bundle_window(cmd);
        cmd->add_option("--table", "table CSV (file or -)");
    }
    {
        auto* cmd = app.add_subcommand("klyachko", "degrees with forced vanishing");
        cmd->add_option("--n", "ambient dimension")->required();
        cmd->add_option("--rank", "bundle rank")->required();
    }

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        return dispatch(app, common, out);
    } catch (const Refusal& r) {
        err << r.to_json().dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> full = {"frobsplit"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const auto& a : full) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace frobsplit::cli
