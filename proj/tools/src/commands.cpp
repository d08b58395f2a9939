#include "extsum_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "extsum/bounds.hpp"
#include "extsum/config_gen.hpp"
#include "extsum/error.hpp"
#include "extsum/exact.hpp"
#include "extsum/heuristics.hpp"
#include "extsum/minimax.hpp"
#include "extsum_cli/io.hpp"

namespace extsum::cli {

namespace {

using nlohmann::json;
using detail::require;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string selection_string(const SignedSelection& sel) {
    std::string out;
    for (std::size_t j = 0; j < sel.size(); ++j) {
        if (j > 0) out += ' ';
        out += sel.signs[j] > 0 ? '+' : '-';
        out += std::to_string(sel.indices[j] + 1);
    }
    return out;
}

json selection_json(const SignedSelection& sel) {
    std::vector<std::size_t> indices;
    for (std::size_t i : sel.indices) indices.push_back(i + 1);
    return {{"indices", indices}, {"signs", sel.signs}};
}

bool is_seeded(GeneratorKind kind) {
    return kind == GeneratorKind::random_uniform || kind == GeneratorKind::zero_sum ||
           kind == GeneratorKind::delta_separated || kind == GeneratorKind::antipodal_separated;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
    std::string kind;
    GeneratorSpec spec;
    std::string output;
    std::string format;
};

void cmd_gen(const GenOptions& o, std::ostream& out) {
    const auto kind = parse_generator_kind(o.kind);
    require(kind.has_value(), "unknown generator kind '" + o.kind + "'");
    GeneratorSpec spec = o.spec;
    spec.kind = *kind;
    ConfigFile file{generate(spec), {}};
    file.metadata.generator = std::string(to_string(*kind));
    if (is_seeded(*kind)) {
        file.metadata.seed = spec.seed;
    }
    std::optional<ConfigFormat> format;
    if (o.format == "json") format = ConfigFormat::json;
    if (o.format == "text") format = ConfigFormat::text;
    if (o.output.empty() || o.output == "-") {
        out << format_config(file, format.value_or(ConfigFormat::text));
    } else {
        write_config_file(o.output, file, format);
    }
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
    std::string config;
    int k = 0;
    std::string method = "exact";
    bool json = false;
};

void cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<std::string> warnings;
    const ConfigFile file = read_config_file(o.config, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    const Configuration& c = file.config;
    require(o.k >= 1 && static_cast<std::size_t>(o.k) <= c.size(), "--k must satisfy 1 <= k <= n");
    const auto k = static_cast<std::size_t>(o.k);

    SolveResult result;
    json extra = json::object();
    std::vector<std::pair<std::string, std::string>> extra_text;
    if (o.method == "exact") {
        try {
            result = max_over_selections(c, k);
        } catch (const BudgetError& e) {
            throw BudgetError(std::string(e.what()) +
                              "; try --method cap-greedy, or --method bang when k = n");
        }
    } else if (o.method == "planar") {
        require(c.dim() == 2, "planar method requires d = 2");
        result = max_over_selections_planar(c, k);
    } else if (o.method == "bang") {
        require(k == c.size(), "bang method selects every vector; it requires k = n");
        BangResult b = bang_ascent(c, std::vector<int>(c.size(), 1));
        result = std::move(b.result);
        extra["min_margin"] = b.certificate.min_margin;
        extra["flips"] = b.flips;
        extra_text.emplace_back("min_margin", format_double(b.certificate.min_margin));
        extra_text.emplace_back("flips", std::to_string(b.flips));
    } else if (o.method == "cap-greedy") {
        CapGreedyResult g = cap_greedy_selection(c, k);
        result = std::move(g.result);
        extra["cap_radius"] = g.radius;
        extra["cap_count"] = g.cap_count;
        extra["guaranteed"] = g.guaranteed;
        extra_text.emplace_back("cap_radius", format_double(g.radius));
        extra_text.emplace_back("cap_count", std::to_string(g.cap_count));
        extra_text.emplace_back("guaranteed", g.guaranteed ? "true" : "false");
    } else {
        throw PreconditionError("unknown method '" + o.method + "' (exact, planar, bang, cap-greedy)");
    }

    const std::string cert = result.certificate ? std::string(to_string(*result.certificate)) : "none";
    if (o.json) {
        json doc = {{"method", o.method},
                    {"d", c.dim()},
                    {"n", c.size()},
                    {"k", k},
                    {"value", result.value},
                    {"selection", selection_json(result.selection)},
                    {"sum", result.sum},
                    {"certificate", cert}};
        doc.update(extra);
        out << doc.dump(2) << '\n';
        return;
    }
    out << "method " << o.method << '\n'
        << "value " << format_double(result.value) << '\n'
        << "selection " << selection_string(result.selection) << '\n'
        << "certificate " << cert << '\n';
    for (const auto& [key, value] : extra_text) out << key << ' ' << value << '\n';
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsOptions {
    int d = 0;
    int n = 0;
    int k = 0;
    bool json = false;
    bool all = false;
};

void cmd_bounds(const BoundsOptions& o, std::ostream& out) {
    std::vector<BoundReport> reports;
    for (auto& r : all_bounds(o.d, o.n, o.k)) {
        if (r.applicable || o.all) reports.push_back(std::move(r));
    }
    if (o.json) {
        json doc = json::array();
        for (const auto& r : reports) {
            json row = {{"name", r.name},
                        {"side", to_string(r.side)},
                        {"value", r.value},
                        {"validity", to_string(r.validity)},
                        {"applicable", r.applicable},
                        {"anchor", r.anchor}};
            row["sharp"] = r.sharp ? json(*r.sharp) : json(nullptr);
            row["hypothesis"] = r.hypothesis.empty() ? json(nullptr) : json(r.hypothesis);
            doc.push_back(std::move(row));
        }
        out << doc.dump(2) << '\n';
        return;
    }
    char line[256];
    std::snprintf(line, sizeof line, "%-20s %-5s %-20s %-15s %-5s %s\n", "name", "side", "value",
                  "validity", "sharp", "anchor");
    out << line;
    for (const auto& r : reports) {
        std::string anchor = r.anchor;
        if (!r.hypothesis.empty()) anchor += " [requires: " + r.hypothesis + "]";
        if (!r.applicable) anchor += " [outside parameter range]";
        const char* sharp = !r.sharp ? "-" : (*r.sharp ? "yes" : "no");
        std::snprintf(line, sizeof line, "%-20s %-5s %-20.12g %-15s %-5s ", r.name.c_str(),
                      std::string(to_string(r.side)).c_str(), r.value,
                      std::string(to_string(r.validity)).c_str(), sharp);
        out << line << anchor << '\n';
    }
}

// ---------------------------------------------------------------------------
// minimax

struct MinimaxOptions {
    int d = 0;
    int n = 0;
    int k = 0;
    SearchSettings settings;
    std::string inner = "exact";
    std::string output;
    std::string config_out;
    bool json = false;
};

ResultRow minimax_row(int d, int n, int k, const SearchSettings& settings, MinimaxEstimate* keep) {
    const auto start = std::chrono::steady_clock::now();
    MinimaxEstimate est = estimate_c(d, n, k, settings);
    ResultRow row{d, n, k, "minimax", est.value, settings.seed, est.iterations, elapsed_ms(start),
                  "upper_estimate", {}};
    if (keep != nullptr) *keep = std::move(est);
    return row;
}

void cmd_minimax(MinimaxOptions o, std::ostream& out) {
    const auto inner = parse_inner_solver(o.inner);
    require(inner.has_value(), "unknown inner solver '" + o.inner + "' (exact, planar, bang-multistart)");
    o.settings.inner = *inner;
    MinimaxEstimate est{Configuration::from_rows(1, std::vector<double>{1.0}), 0.0, {}, 0, 0, *inner};
    const ResultRow row = minimax_row(o.d, o.n, o.k, o.settings, &est);
    if (!o.output.empty()) {
        append_csv(o.output, {row});
    }
    if (!o.config_out.empty()) {
        ConfigFile file{est.best_config, {"minimax", o.settings.seed}};
        write_config_file(o.config_out, file);
    }
    if (o.json) {
        json trace = json::array();
        for (const auto& [it, v] : est.trace) trace.push_back({it, v});
        json doc = {{"d", o.d},          {"n", o.n},
                    {"k", o.k},          {"value", est.value},
                    {"inner", o.inner},  {"restarts_used", est.restarts_used},
                    {"iterations", est.iterations}, {"seed", o.settings.seed},
                    {"trace", trace}};
        out << doc.dump(2) << '\n';
        return;
    }
    out << "value " << format_double(est.value) << '\n'
        << "restarts " << est.restarts_used << '\n'
        << "iterations " << est.iterations << '\n';
}

// ---------------------------------------------------------------------------
// table

struct TableOptions {
    std::string d_range;
    std::string n_range;
    std::string k_range;
    std::string methods = "exact,bounds";
    std::string output;
    std::uint64_t seed = 0;
    int restarts = 4;
    int iters = 200;
};

const std::vector<std::string>& table_methods() {
    static const std::vector<std::string> m = {"exact", "planar", "bang", "cap-greedy", "bounds",
                                               "minimax"};
    return m;
}

ResultRow table_row(int d, int n, int k, const std::string& method, const TableOptions& o,
                    bool nested_parallel) {
    ResultRow row{d, n, k, method, 0.0, o.seed, 0, 0.0, {}, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
        require(d >= 1 && n >= 1, "need d >= 1 and n >= 1");
        require(k >= 1 && k <= n, "need 1 <= k <= n");
        const auto ku = static_cast<std::size_t>(k);
        if (method == "bounds") {
            const auto lower = unconditional_lower_bounds(d, n, k);
            const auto best = std::max_element(lower.begin(), lower.end(),
                                               [](const auto& a, const auto& b) { return a.value < b.value; });
            row.value = best->value;
            row.certificate = best->name;
        } else if (method == "minimax") {
            SearchSettings s;
            s.restarts = o.restarts;
            s.max_iters = o.iters;
            s.seed = o.seed;
            s.parallel = nested_parallel;
            row = minimax_row(d, n, k, s, nullptr);
        } else {
            const Configuration c = gen_random_uniform(d, n, o.seed);
            if (method == "exact") {
                const SolveResult r = max_over_selections(c, ku, {.parallel = nested_parallel});
                row.value = r.value;
                row.certificate = std::string(to_string(*r.certificate));
            } else if (method == "planar") {
                require(d == 2, "planar requires d = 2");
                row.value = max_over_selections_planar(c, ku).value;
                row.certificate = std::string(to_string(Certificate::planar_sweep));
            } else if (method == "bang") {
                require(k == n, "bang requires k = n");
                const BangResult b = bang_ascent(c, std::vector<int>(c.size(), 1));
                row.value = b.result.value;
                row.iterations = static_cast<int>(b.flips);
                row.certificate = std::string(to_string(Certificate::heuristic));
            } else if (method == "cap-greedy") {
                row.value = cap_greedy_selection(c, ku).result.value;
                row.certificate = std::string(to_string(Certificate::heuristic));
            }
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    row.runtime_ms = elapsed_ms(start);
    return row;
}

void cmd_table(const TableOptions& o, std::ostream& out) {
    const auto ds = parse_int_range(o.d_range);
    const auto ns = parse_int_range(o.n_range);
    const auto ks = parse_int_range(o.k_range);
    std::vector<std::string> methods;
    {
        std::stringstream ss(o.methods);
        for (std::string m; std::getline(ss, m, ',');) {
            require(std::find(table_methods().begin(), table_methods().end(), m) != table_methods().end(),
                    "unknown table method '" + m + "'");
            methods.push_back(m);
        }
    }
    require(!methods.empty(), "--methods must name at least one method");

    struct Params {
        int d, n, k;
    };
    std::vector<Params> params;
    for (int d : ds)
        for (int n : ns)
            for (int k : ks) params.push_back({d, n, k});

    std::vector<std::vector<ResultRow>> rows(params.size());
    const unsigned workers =
        std::min<unsigned>(std::max(1U, std::thread::hardware_concurrency()), static_cast<unsigned>(params.size()));
    const bool nested_parallel = workers <= 1;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < params.size();) {
            for (const auto& m : methods) {
                rows[j].push_back(table_row(params[j].d, params[j].n, params[j].k, m, o, nested_parallel));
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    std::vector<ResultRow> flat;
    for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    if (o.output.empty() || o.output == "-") {
        write_csv(out, flat);
        return;
    }
    std::ostringstream buf;
    write_csv(buf, flat);
    std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
    if (!file || !(file << buf.str()) || !file.flush()) {
        throw IoError("cannot write " + o.output);
    }
}

std::vector<const char*> to_argv(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return argv;
}

}  // namespace

std::vector<int> parse_int_range(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    auto to_int = [&text](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == s.size() && !s.empty(), "bad integer range '" + text + "'");
        return v;
    };
    for (std::string part; std::getline(ss, part, ',');) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(part));
            continue;
        }
        const int lo = to_int(part.substr(0, dots));
        const int hi = to_int(part.substr(dots + 2));
        require(lo <= hi, "empty integer range '" + part + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
    require(!out.empty(), "empty integer range");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Extremal signed subset sums of unit vectors"};
    app.name(args.empty() ? "extsum" : args.front());
    app.require_subcommand(1);
    std::function<void()> action;

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Generate a configuration");
    g->set_help_flag("--help", "Print this help message and exit");
    g->add_option("--kind", gen.kind,
                  "orthonormal, copies, simplex, polygon, simplex_plus_orthonormal, random, zero_sum, "
                  "delta_separated, antipodal_separated")
        ->required();
    g->add_option("--d", gen.spec.d, "Dimension");
    g->add_option("--n", gen.spec.n, "Number of vectors");
    g->add_option("--k", gen.spec.k, "Selection size (polygon)");
    g->add_option("--m", gen.spec.m, "Copies per basis vector");
    g->add_option("--h", gen.spec.h, "Simplex block size");
    g->add_option("--delta", gen.spec.delta, "Separation");
    g->add_option("--seed", gen.spec.seed, "Random seed");
    g->add_option("-o,--output", gen.output, "Output file (stdout if omitted)");
    g->add_option("--format", gen.format, "text or json (default: from extension)")
        ->check(CLI::IsMember({"text", "json"}));
    g->callback([&] { action = [&] { cmd_gen(gen, out); }; });

    SolveOptions solve;
    auto* s = app.add_subcommand("solve", "Maximize signed k-term sums of a configuration");
    s->add_option("--config", solve.config, "Configuration file")->required();
    s->add_option("--k", solve.k, "Selection size")->required();
    s->add_option("--method", solve.method, "exact, planar, bang or cap-greedy");
    s->add_flag("--json", solve.json, "Machine-readable output");
    s->callback([&] { action = [&] { cmd_solve(solve, out, err); }; });

    BoundsOptions bounds;
    auto* b = app.add_subcommand("bounds", "Evaluate closed-form bounds on c(d,n,k)");
    b->add_option("--d", bounds.d)->required();
    b->add_option("--n", bounds.n)->required();
    b->add_option("--k", bounds.k)->required();
    b->add_flag("--json", bounds.json, "Machine-readable output");
    b->add_flag("--all", bounds.all, "Include bounds outside their parameter range");
    b->callback([&] { action = [&] { cmd_bounds(bounds, out); }; });

    MinimaxOptions mm;
    auto* m = app.add_subcommand("minimax", "Search for configurations with a small best signed sum");
    m->add_option("--d", mm.d)->required();
    m->add_option("--n", mm.n)->required();
    m->add_option("--k", mm.k)->required();
    m->add_option("--restarts", mm.settings.restarts, "Random restarts");
    m->add_option("--iters", mm.settings.max_iters, "Iterations per restart");
    m->add_option("--seed", mm.settings.seed, "Random seed");
    m->add_option("--inner", mm.inner, "exact, planar or bang-multistart");
    m->add_option("-o,--output", mm.output, "CSV file to append the result row to");
    m->add_option("--config-out", mm.config_out, "Write the best configuration here");
    m->add_flag("--json", mm.json, "Machine-readable output");
    m->callback([&] { action = [&] { cmd_minimax(mm, out); }; });

    TableOptions table;
    auto* t = app.add_subcommand("table", "Batch table over parameter ranges");
    t->add_option("--d-range", table.d_range)->required();
    t->add_option("--n-range", table.n_range)->required();
    t->add_option("--k-range", table.k_range)->required();
    t->add_option("--methods", table.methods, "Comma-separated: exact, planar, bang, cap-greedy, bounds, minimax");
    t->add_option("--seed", table.seed, "Seed of the random instance per (d, n)");
    t->add_option("--restarts", table.restarts, "Minimax restarts");
    t->add_option("--iters", table.iters, "Minimax iterations per restart");
    t->add_option("-o,--output", table.output, "Output CSV (stdout if omitted)");
    t->callback([&] { action = [&] { cmd_table(table, out); }; });

    try {
        const auto argv = to_argv(args);
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitPrecondition;
    }

    try {
        action();
        return kExitOk;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace extsum::cli
