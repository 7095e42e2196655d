#include "hamperc/cli.hpp"

#include "hamperc/bounds.hpp"
#include "hamperc/engine.hpp"
#include "hamperc/errors.hpp"
#include "hamperc/montecarlo.hpp"
#include "hamperc/oracle.hpp"
#include "hamperc/projection.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

namespace hamperc::cli {
namespace {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Canonical JSON: keys sorted (std::map), doubles as %.17g, non-finite as null.

void dump_to(json const& j, std::string& s, int indent)
{
    auto pad = [&](int w) { s.append(static_cast<std::size_t>(w), ' '); };
    switch (j.type())
    {
    case json::value_t::number_float:
    {
        double d = j.get<double>();
        if (!std::isfinite(d))
        {
            s += "null";
            break;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        s += buf;
        break;
    }
    case json::value_t::array:
        if (j.empty())
        {
            s += "[]";
            break;
        }
        s += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i)
        {
            pad(indent + 2);
            dump_to(j[i], s, indent + 2);
            s += i + 1 < j.size() ? ",\n" : "\n";
        }
        pad(indent);
        s += "]";
        break;
    case json::value_t::object:
    {
        if (j.empty())
        {
            s += "{}";
            break;
        }
        s += "{\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i)
        {
            pad(indent + 2);
            s += json(it.key()).dump();
            s += ": ";
            dump_to(it.value(), s, indent + 2);
            s += i + 1 < j.size() ? ",\n" : "\n";
        }
        pad(indent);
        s += "}";
        break;
    }
    default:
        s += j.dump();
    }
}

std::string canonical(json const& j)
{
    std::string s;
    dump_to(j, s, 0);
    s += "\n";
    return s;
}

std::string compact(json const& j)
{
    std::string s = canonical(j);
    std::string out;
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        char c = s[i];
        if (in_string)
        {
            out += c;
            if (c == '\\' && i + 1 < s.size())
                out += s[++i];
            else if (c == '"')
                in_string = false;
        }
        else if (c == '"')
        {
            in_string = true;
            out += c;
        }
        else if (c != '\n' && c != ' ')
            out += c;
    }
    return out;
}

json to_json(LogNumber const& x)
{
    if (x.is_zero())
        return {{"ln", nullptr}, {"log10", nullptr}, {"value", 0.0}};
    double ln = static_cast<double>(x.ln());
    return {{"ln", ln}, {"log10", static_cast<double>(x.log10())}, {"value", x.to_double()}};
}

json to_json(BigCount const& c)
{
    if (c <= std::numeric_limits<std::int64_t>::max() && c >= std::numeric_limits<std::int64_t>::min())
        return static_cast<std::int64_t>(c);
    return c.str();
}

json to_json(Rational const& q)
{
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1)
        os << "/" << denominator(q);
    return {{"exact", os.str()}, {"value", static_cast<double>(q)}};
}

json to_json(Estimate const& e)
{
    return {{"p", e.p},           {"trials", e.trials},   {"hits", e.hits},
            {"p_hat", e.p_hat},   {"ci_low", e.ci_low},   {"ci_high", e.ci_high},
            {"seed", e.master_seed}};
}

// ---------------------------------------------------------------------------
// Options with typed echo into the resolved config.

template<class T>
json value_json(T const& v)
{
    return json(v);
}

template<class T>
json value_json(std::optional<T> const& v)
{
    return v ? json(*v) : json(nullptr);
}

class Command
{
  public:
    Command(CLI::App& parent, std::string const& name, std::string const& desc)
        : app_(parent.add_subcommand(name, desc))
    {
    }

    template<class T>
    CLI::Option* option(std::string const& name, T& var, std::string const& desc)
    {
        echo_.emplace_back(name, [&var] { return value_json(var); });
        return app_->add_option("--" + name, var, desc);
    }

    CLI::Option* flag(std::string const& name, bool& var, std::string const& desc)
    {
        echo_.emplace_back(name, [&var] { return json(var); });
        return app_->add_flag("--" + name, var, desc);
    }

    // Output destination; not part of the echoed config.
    void out_option(std::string& path)
    {
        app_->add_option("--out", path, "Write the document to FILE instead of stdout");
    }

    json resolved() const
    {
        json j = json::object();
        for (auto const& [name, get] : echo_)
            j[name] = get();
        return j;
    }

    CLI::App* app() const { return app_; }
    bool parsed() const { return app_->parsed(); }

  private:
    CLI::App* app_;
    std::vector<std::pair<std::string, std::function<json()>>> echo_;
};

struct SpaceArgs
{
    std::optional<int> n;
    std::optional<int> k;
    std::string radices;

    void attach(Command& c)
    {
        c.option("n", n, "Number of coordinates");
        c.option("k", k, "Alphabet size of every coordinate");
        c.option("radices", radices, "Comma-separated alphabet sizes, for mixed products");
    }

    HammingSpace make() const
    {
        if (!radices.empty())
        {
            std::vector<int> r;
            std::stringstream ss(radices);
            std::string item;
            while (std::getline(ss, item, ','))
            {
                try
                {
                    std::size_t used = 0;
                    r.push_back(std::stoi(item, &used));
                    if (used != item.size())
                        throw std::invalid_argument(item);
                }
                catch (std::logic_error const&)
                {
                    throw InputDomainError("bad radix '" + item + "'");
                }
            }
            if (k)
                throw InputDomainError("--radices and --k are mutually exclusive");
            if (n && *n != static_cast<int>(r.size()))
                throw InputDomainError("--n disagrees with the number of radices");
            return HammingSpace(r);
        }
        if (!n || !k)
            throw InputDomainError("need --n and --k (or --radices)");
        return HammingSpace(*n, *k);
    }
};

int resolve_workers(std::optional<int> const& w)
{
    if (!w)
        return default_workers();
    if (*w < 1)
        throw InputDomainError("--workers must be at least 1");
    return *w;
}

json envelope(Command const& c, std::string const& command, json seed, json result)
{
    return {{"version", kVersion},
            {"command", command},
            {"config", c.resolved()},
            {"seed", std::move(seed)},
            {"result", std::move(result)}};
}

std::string comment_header(Command const& c, std::string const& command, json const& seed)
{
    return "# hamperc " + std::string(kVersion) + " " + command + "\n# config " + compact(c.resolved())
           + "\n# seed " + compact(seed) + "\n";
}

std::vector<Vertex> read_vertices(HammingSpace const& space, std::string const& source)
{
    std::vector<std::string> items;
    std::error_code ec;
    if (std::filesystem::is_regular_file(source, ec))
    {
        std::ifstream in(source);
        std::string line;
        while (std::getline(in, line))
        {
            auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
            if (!line.empty())
                items.push_back(line);
        }
    }
    else
    {
        std::stringstream ss(source);
        std::string item;
        while (std::getline(ss, item, ';'))
        {
            item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
            if (!item.empty())
                items.push_back(item);
        }
    }
    std::vector<Vertex> out;
    for (auto const& item : items)
        out.push_back(space.parse(item));
    return out;
}

LogNumber parse_probability(std::string const& text, int n, int k)
{
    if (text == "p_star" || text == "p_upper_star")
    {
        ThresholdParams tp = parameters(n, k);
        return text == "p_star" ? tp.p_star : tp.p_upper_star;
    }
    Rational q = oracle::parse_rational(text);
    if (q < 0 || q > 1)
        throw InputDomainError("p must lie in [0, 1]");
    return LogNumber::from_rational(q);
}

std::vector<double> parse_grid(std::string const& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4 || (parts.size() == 4 && parts[3] != "log"))
        throw InputDomainError("--p-grid expects a:b:steps or a:b:steps:log");
    double a = 0, b = 0;
    long steps = 0;
    try
    {
        std::size_t u1 = 0, u2 = 0, u3 = 0;
        a = std::stod(parts[0], &u1);
        b = std::stod(parts[1], &u2);
        steps = std::stol(parts[2], &u3);
        if (u1 != parts[0].size() || u2 != parts[1].size() || u3 != parts[2].size())
            throw std::invalid_argument(text);
    }
    catch (std::logic_error const&)
    {
        throw InputDomainError("cannot parse --p-grid '" + text + "'");
    }
    bool log = parts.size() == 4;
    if (steps < 1 || steps > 100000)
        throw InputDomainError("--p-grid steps must lie in [1, 100000]");
    if (log && !(a > 0 && b > 0))
        throw InputDomainError("log grids need positive end points");
    std::vector<double> grid;
    for (long i = 0; i < steps; ++i)
    {
        double f = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
        grid.push_back(log ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a));
    }
    grid.front() = a;
    if (steps > 1)
        grid.back() = b;
    return grid;
}

std::string space_k_label(HammingSpace const& space)
{
    if (space.uniform())
        return std::to_string(space.k());
    std::string s;
    for (int i = 0; i < space.n(); ++i)
        s += (i ? "x" : "") + std::to_string(space.radix(i));
    return s;
}

std::string csv_double(double d)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

// Expands --config FILE into --key=value tokens placed right after the
// subcommand path, so that flags given on the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args)
{
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i)
    {
        if (args[i] == "--config")
        {
            if (i + 1 >= args.size())
                throw InputDomainError("--config needs a file");
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0)
        {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (!path)
        return args;
    std::ifstream in(*path);
    if (!in)
        throw InputDomainError("cannot read config file " + *path);
    std::vector<std::string> injected;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputDomainError(*path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config" || key.find_first_of(" -") == 0)
            throw InputDomainError(*path + ":" + std::to_string(lineno) + ": bad key '" + key + "'");
        injected.push_back("--" + key + "=" + value);
    }
    std::size_t pos = 0;
    while (pos < args.size() && args[pos].rfind("-", 0) != 0)
        ++pos;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), injected.begin(), injected.end());
    return args;
}

void emit(std::string const& doc, std::string const& out_path, std::ostream& out)
{
    if (out_path.empty())
    {
        out << doc;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw InputDomainError("cannot write " + out_path);
    f << doc;
}

} // namespace

int run(std::vector<std::string> const& raw_args, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    try
    {
        args = expand_config(raw_args);
    }
    catch (InputDomainError const& e)
    {
        err << "error: " << e.what() << "\n";
        return kInputDomain;
    }

    CLI::App app{"Bootstrap percolation on Hamming graphs: engines, oracles, bounds and Monte Carlo"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.footer("Exit codes: 0 ok, 1 input-domain error, 2 capability error, 3 diagnostic failure.\n"
               "--config FILE reads key=value lines; command-line flags override them.");

    std::string out_path;

    // closure
    Command closure(app, "closure", "Closure of a seed set, as final projections");
    SpaceArgs closure_space;
    std::string closure_seeds;
    bool closure_trace = false;
    bool closure_json = false;
    closure_space.attach(closure);
    closure.option("seed-vertices", closure_seeds, "FILE (one vertex per line) or LIST like 0,0;1,1")->required();
    closure.flag("trace", closure_trace, "Include merge events");
    closure.flag("json", closure_json, "Emit JSON instead of projection lines");
    closure.out_option(out_path);

    // oracle
    CLI::App* oracle_app = app.add_subcommand("oracle", "Exhaustive ground truth on tiny instances");
    oracle_app->require_subcommand(1);

    Command poly(*oracle_app, "poly", "Percolating-subset counts by size");
    SpaceArgs poly_space;
    std::string poly_p;
    poly_space.attach(poly);
    poly.option("p", poly_p, "Also evaluate the polynomial at this exact probability");
    poly.out_option(out_path);

    Command seqs(*oracle_app, "sequences", "Count sequentially spanning sequences");
    SpaceArgs seqs_space;
    int seqs_ell = 0;
    bool seqs_list = false;
    seqs_space.attach(seqs);
    seqs.option("ell", seqs_ell, "Sequence size")->required();
    seqs.flag("list", seqs_list, "List the sequences");
    seqs.out_option(out_path);

    Command quads(*oracle_app, "quadruples", "Candidate quadruple counts per index");
    int quads_m = 0, quads_k = 0, quads_t = 0;
    quads.option("m", quads_m, "Dimension")->required();
    quads.option("k", quads_k, "Alphabet size")->required();
    quads.option("t", quads_t, "Threshold dimension")->required();
    quads.out_option(out_path);

    Command vdbk(*oracle_app, "vdbk", "Both sides of the disjoint-occurrence inequality");
    SpaceArgs vdbk_space;
    std::string vdbk_u, vdbk_w, vdbk_p = "1/2";
    vdbk_space.attach(vdbk);
    vdbk.option("u", vdbk_u, "Projection U, e.g. 0,*")->required();
    vdbk.option("w", vdbk_w, "Projection W")->required();
    vdbk.option("p", vdbk_p, "Exact probability");
    vdbk.out_option(out_path);

    Command overlaps(*oracle_app, "overlaps", "Sequence pairs sharing exactly i vertices");
    SpaceArgs overlaps_space;
    int overlaps_ell = 0, overlaps_i = 0;
    overlaps_space.attach(overlaps);
    overlaps.option("ell", overlaps_ell, "Sequence size")->required();
    overlaps.option("i", overlaps_i, "Shared vertices")->required();
    overlaps.out_option(out_path);

    // bounds
    Command bounds(app, "bounds", "Threshold parameters, lower-bound and second-moment reports");
    int bounds_n = 0, bounds_k = 0;
    std::string bounds_p = "p_star";
    bool bounds_json = false, bounds_csv = false;
    bounds.option("n", bounds_n, "Number of coordinates")->required();
    bounds.option("k", bounds_k, "Alphabet size")->required();
    bounds.option("p", bounds_p, "Probability: a number, a/b, p_star or p_upper_star");
    bounds.flag("json", bounds_json, "JSON report (default)");
    bounds.flag("csv", bounds_csv, "CSV of the Phi and f tables");
    bounds.out_option(out_path);

    // pc
    Command pc(app, "pc", "Empirical critical probability by bisection on log p");
    SpaceArgs pc_space;
    std::uint64_t pc_trials = 2000, pc_seed = 1;
    double pc_tol = 0.01, pc_target = 0.5;
    std::optional<int> pc_workers;
    pc_space.attach(pc);
    pc.option("trials", pc_trials, "Trials per probe");
    pc.option("seed", pc_seed, "Master seed");
    pc.option("rel-tol", pc_tol, "Stop when high/low < 1 + rel-tol");
    pc.option("target", pc_target, "Target percolation probability");
    pc.option("workers", pc_workers, "Worker threads (default: HAMPERC_WORKERS or 1)");
    pc.out_option(out_path);

    // sweep
    Command sw(app, "sweep", "Percolation probability over a grid of p");
    SpaceArgs sw_space;
    std::string sw_grid, sw_csv;
    std::uint64_t sw_trials = 1000, sw_seed = 1;
    std::optional<int> sw_workers;
    sw_space.attach(sw);
    sw.option("p-grid", sw_grid, "a:b:steps or a:b:steps:log")->required();
    sw.option("trials", sw_trials, "Trials per grid point");
    sw.option("seed", sw_seed, "Master seed");
    sw.option("workers", sw_workers, "Worker threads (default: HAMPERC_WORKERS or 1)");
    sw.option("csv", sw_csv, "Also write CSV rows to FILE ('-' writes CSV instead of JSON)");
    sw.out_option(out_path);

    // selftest
    Command st(app, "selftest", "Cross-check oracles, formulas and engines");
    SelftestOptions st_opts;
    st.option("seed", st_opts.seed, "Seed for randomized checks");
    st.option("fault", st_opts.fault, "Inject a known fault (u-binom)");
    st.out_option(out_path);

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (CLI::ParseError const& e)
    {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputDomain;
    }

    try
    {
        if (closure.parsed())
        {
            HammingSpace space = closure_space.make();
            InfectionConfig seed(space, read_vertices(space, closure_seeds));
            MergeTrace trace = closure_components(seed);
            bool full = trace.final.size() == 1 && trace.final[0].dim() == space.n();
            if (closure_json)
            {
                json comps = json::array();
                for (auto const& P : trace.final)
                    comps.push_back(format_projection(space, P));
                json result{{"space", space.name()},
                            {"seeds", seed.size()},
                            {"components", comps},
                            {"percolates", full}};
                if (closure_trace)
                {
                    json events = json::array();
                    for (auto const& e : trace.events)
                        events.push_back({{"left_id", e.left_id},
                                          {"right_id", e.right_id},
                                          {"distance", e.distance},
                                          {"left", format_projection(space, e.left)},
                                          {"right", format_projection(space, e.right)},
                                          {"result_id", e.result_id},
                                          {"result", format_projection(space, e.result)}});
                    result["trace"] = events;
                }
                emit(canonical(envelope(closure, "closure", nullptr, result)), out_path, out);
            }
            else
            {
                std::string doc = comment_header(closure, "closure", nullptr);
                doc += "# percolates " + std::string(full ? "true" : "false") + "\n";
                if (closure_trace)
                    for (auto const& e : trace.events)
                        doc += "# merge " + std::to_string(e.left_id) + " " + format_projection(space, e.left)
                               + " + " + std::to_string(e.right_id) + " " + format_projection(space, e.right)
                               + " (d=" + std::to_string(e.distance) + ") -> " + std::to_string(e.result_id)
                               + " " + format_projection(space, e.result) + "\n";
                for (auto const& P : trace.final)
                    doc += format_projection(space, P) + "\n";
                emit(doc, out_path, out);
            }
        }
        else if (poly.parsed())
        {
            HammingSpace space = poly_space.make();
            auto pp = oracle::exact_percolation_polynomial(space);
            json counts = json::array();
            for (auto const& c : pp.counts)
                counts.push_back(to_json(c));
            json result{{"space", space.name()}, {"vertices", space.size()}, {"counts", counts}};
            if (!poly_p.empty())
            {
                Rational p = oracle::parse_rational(poly_p);
                if (p < 0 || p > 1)
                    throw InputDomainError("p must lie in [0, 1]");
                result["probability"] = to_json(pp(p));
            }
            emit(canonical(envelope(poly, "oracle poly", nullptr, result)), out_path, out);
        }
        else if (seqs.parsed())
        {
            HammingSpace space = seqs_space.make();
            json result{{"space", space.name()}, {"ell", seqs_ell}};
            if (seqs_list)
            {
                auto all = oracle::list_spanning_sequences(space, seqs_ell);
                json list = json::array();
                for (auto const& s : all)
                {
                    json row = json::array();
                    for (Vertex v : s)
                        row.push_back(space.format(v));
                    list.push_back(row);
                }
                result["count"] = all.size();
                result["sequences"] = list;
            }
            else
                result["count"] = to_json(oracle::enumerate_spanning_sequences(space, seqs_ell));
            if (space.uniform())
                result["formula"] = to_json(seq_count(space.n(), space.k(), seqs_ell));
            emit(canonical(envelope(seqs, "oracle sequences", nullptr, result)), out_path, out);
        }
        else if (quads.parsed())
        {
            auto counts = oracle::enumerate_quadruples(quads_m, quads_k, quads_t);
            json rows = json::array();
            bool agree = true;
            for (auto const& idx : admissible_indices(quads_m, quads_t))
            {
                auto it = counts.find(idx);
                BigCount oc = it == counts.end() ? BigCount(0) : it->second;
                BigCount formula = count_quadruples(quads_m, quads_k, quads_t, idx);
                agree = agree && oc == formula;
                rows.push_back({{"index", {idx.ell, idx.i, idx.j, idx.d}},
                                {"oracle", to_json(oc)},
                                {"formula", to_json(formula)}});
            }
            for (auto const& [idx, c] : counts)
                if (!is_admissible(quads_m, quads_t, idx))
                {
                    agree = false;
                    rows.push_back({{"index", {idx.ell, idx.i, idx.j, idx.d}},
                                    {"oracle", to_json(c)},
                                    {"formula", nullptr}});
                }
            json result{{"m", quads_m}, {"k", quads_k}, {"t", quads_t}, {"rows", rows}, {"agree", agree}};
            emit(canonical(envelope(quads, "oracle quadruples", nullptr, result)), out_path, out);
        }
        else if (vdbk.parsed())
        {
            HammingSpace space = vdbk_space.make();
            Rational p = oracle::parse_rational(vdbk_p);
            if (p < 0 || p > 1)
                throw InputDomainError("p must lie in [0, 1]");
            auto r = oracle::check_vdbk(space, parse_projection(space, vdbk_u), parse_projection(space, vdbk_w), p);
            json result{{"space", space.name()},
                        {"left", to_json(r.left)},
                        {"right", to_json(r.right)},
                        {"holds", r.holds}};
            emit(canonical(envelope(vdbk, "oracle vdbk", nullptr, result)), out_path, out);
        }
        else if (overlaps.parsed())
        {
            HammingSpace space = overlaps_space.make();
            BigCount y = oracle::count_overlaps(space, overlaps_ell, overlaps_i);
            json result{{"space", space.name()}, {"count", to_json(y)}};
            if (space.uniform() && overlaps_i >= 1 && overlaps_i <= overlaps_ell + 1)
            {
                LogNumber b = overlap_bound(space.n(), space.k(), overlaps_ell, overlaps_i);
                result["bound"] = to_json(b);
                result["bound_holds"] = LogNumber::from_count(y) <= b;
            }
            emit(canonical(envelope(overlaps, "oracle overlaps", nullptr, result)), out_path, out);
        }
        else if (bounds.parsed())
        {
            if (bounds_json && bounds_csv)
                throw InputDomainError("--json and --csv are mutually exclusive");
            if (bounds_n < 4)
                throw InputDomainError("bounds needs n >= 4");
            ThresholdParams tp = parameters(bounds_n, bounds_k);
            LogNumber p = parse_probability(bounds_p, bounds_n, bounds_k);
            if (!(p < LogNumber::one()))
                throw InputDomainError("bounds needs p < 1");

            if (bounds_csv)
            {
                std::string doc = comment_header(bounds, "bounds", nullptr);
                doc += "table,m,ell,i,j,d,ln,log10,value\n";
                auto row = [&](std::string const& table, std::string const& cols, LogNumber const& x) {
                    doc += table + "," + cols + ",";
                    if (x.is_zero())
                        doc += ",,0\n";
                    else
                        doc += csv_double(static_cast<double>(x.ln())) + ","
                               + csv_double(static_cast<double>(x.log10())) + "," + csv_double(x.to_double())
                               + "\n";
                };
                for (int m = 0; m <= tp.D; ++m)
                    row("phi", std::to_string(m) + ",,,,", phi(m, bounds_n, bounds_k, p));
                for (auto const& idx : admissible_indices(bounds_n, tp.D))
                {
                    LogNumber f = f_value(bounds_n, bounds_k, p, tp.D, idx);
                    if (!f.is_zero())
                        row("f",
                            "," + std::to_string(idx.ell) + "," + std::to_string(idx.i) + ","
                                + std::to_string(idx.j) + "," + std::to_string(idx.d),
                            f);
                }
                emit(doc, out_path, out);
            }
            else
            {
                json params{{"n", tp.n},
                            {"k", tp.k},
                            {"D", tp.D},
                            {"L", tp.L},
                            {"i_star", tp.i_star},
                            {"p_star", to_json(tp.p_star)},
                            {"p_upper_star", to_json(tp.p_upper_star)},
                            {"p", to_json(p)}};
                json phis = json::array();
                for (int m = 0; m <= tp.D; ++m)
                    phis.push_back(
                        {{"m", m}, {"c", to_json(c_const(m, bounds_n, bounds_k))}, {"phi", to_json(phi(m, bounds_n, bounds_k, p))}});
                LowerBoundReport lb = lower_bound_report(bounds_n, bounds_k, p);
                json lower{{"D", lb.D},
                           {"sum_T1", to_json(lb.sum_T1)},
                           {"sum_T2", to_json(lb.sum_T2)},
                           {"terms_T1", lb.terms_T1},
                           {"terms_T2", lb.terms_T2},
                           {"dominant", to_json(lb.dominant)},
                           {"expected_D", to_json(lb.expected_D)},
                           {"bottleneck", to_json(lb.bottleneck)},
                           {"total_rhs", to_json(lb.total_rhs)}};
                SecondMomentReport sm = second_moment_report(bounds_n, bounds_k, p);
                json scaled = json::array();
                for (auto const& s : sm.scaled)
                    scaled.push_back(to_json(s));
                json second{{"L", sm.L},
                            {"expected_XL", to_json(sm.expected_XL)},
                            {"min_scaled", to_json(sm.min_scaled)},
                            {"argmin_i", sm.argmin_i},
                            {"ratio_bound", sm.ratio_infinite ? json(nullptr) : to_json(sm.ratio_bound)},
                            {"ratio_infinite", sm.ratio_infinite},
                            {"ratio_constants", "explicit proof constants 4*3^42 and n^4"},
                            {"n_odd", bounds_n % 2 == 1},
                            {"odd_case_exact", to_json(sm.odd_case_exact)},
                            {"odd_case_bound", to_json(sm.odd_case_bound)},
                            {"scaled", scaled}};
                json result{{"parameters", params},
                            {"phi_table", phis},
                            {"lower_bound", lower},
                            {"second_moment", second}};
                emit(canonical(envelope(bounds, "bounds", nullptr, result)), out_path, out);
            }
        }
        else if (pc.parsed())
        {
            HammingSpace space = pc_space.make();
            int workers = resolve_workers(pc_workers);
            pc_workers = workers;
            PcResult r = find_pc(space, pc_target, pc_tol, pc_trials, pc_seed, workers);
            ThresholdParams tp = parameters(space.n(), space.k());
            double lo = tp.p_star.to_double();
            double hi = tp.p_upper_star.to_double();
            json result{{"space", space.name()},
                        {"p_c", r.p_c},
                        {"bracket_low", r.bracket_low},
                        {"bracket_high", r.bracket_high},
                        {"probes", r.probes},
                        {"expansions", r.expansions},
                        {"p_star", to_json(tp.p_star)},
                        {"p_upper_star", to_json(tp.p_upper_star)},
                        {"within_sandwich", lo <= r.p_c && r.p_c <= hi}};
            emit(canonical(envelope(pc, "pc", pc_seed, result)), out_path, out);
        }
        else if (sw.parsed())
        {
            HammingSpace space = sw_space.make();
            int workers = resolve_workers(sw_workers);
            sw_workers = workers;
            SweepResult r = sweep(space, parse_grid(sw_grid), sw_trials, sw_seed, workers);
            for (auto const& w : r.warnings)
                err << "warning: " << w << "\n";
            std::string csv;
            if (!sw_csv.empty())
            {
                csv = comment_header(sw, "sweep", sw_seed);
                csv += "n,k,p,trials,hits,p_hat,ci_low,ci_high,seed\n";
                for (auto const& e : r.rows)
                    csv += std::to_string(space.n()) + "," + space_k_label(space) + "," + csv_double(e.p) + ","
                           + std::to_string(e.trials) + "," + std::to_string(e.hits) + "," + csv_double(e.p_hat)
                           + "," + csv_double(e.ci_low) + "," + csv_double(e.ci_high) + ","
                           + std::to_string(e.master_seed) + "\n";
            }
            if (sw_csv == "-")
                emit(csv, out_path, out);
            else
            {
                if (!sw_csv.empty())
                    emit(csv, sw_csv, out);
                json rows = json::array();
                for (auto const& e : r.rows)
                    rows.push_back(to_json(e));
                json result{{"space", space.name()},
                            {"rows", rows},
                            {"warnings", r.warnings},
                            {"isotonic_violations", r.isotonic_violations}};
                emit(canonical(envelope(sw, "sweep", sw_seed, result)), out_path, out);
            }
        }
        else if (st.parsed())
        {
            std::ostringstream report;
            report << comment_header(st, "selftest", st_opts.seed);
            int code = selftest(st_opts, report);
            emit(report.str(), out_path, out);
            return code;
        }
    }
    catch (CapabilityError const& e)
    {
        err << "capability error: " << e.what() << "\n";
        return kCapability;
    }
    catch (InputDomainError const& e)
    {
        err << "input error: " << e.what() << "\n";
        return kInputDomain;
    }
    catch (DiagnosticError const& e)
    {
        err << "diagnostic: " << e.what() << "\n";
        return kDiagnostic;
    }
    catch (std::exception const& e)
    {
        err << "internal error: " << e.what() << "\n";
        return kDiagnostic;
    }
    return kOk;
}

} // namespace hamperc::cli
