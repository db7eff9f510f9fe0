// cli.cpp: Observable parsing, run configuration, dispatch and CSV / JSON manifest output

#include "lindboot/cli.hpp"

#include "lindboot/errors.hpp"

#include "json.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace lindboot {

// ---------------------------------------------------------------------------
// Observable mini-language

namespace {

class ObservableParser {
public:
    explicit ObservableParser(std::string_view text) : text_(text) {}

    ObservableExpr parse()
    {
        ObservableExpr expr;
        skip();
        if (at_end()) fail("empty observable");
        expr.terms.push_back(term());
        while (!at_end()) {
            if (peek() != '+') fail(std::string("expected '+' or '*', found '") + peek() + "'");
            ++pos_;
            skip();
            expr.terms.push_back(term());
        }
        return expr;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_ + 1, what); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    ObservableTerm term()
    {
        ObservableTerm t;
        if (at_end()) fail("expected a term");
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
            t.coefficient = number();
            skip();
            if (at_end() || peek() != '*') fail("expected '*' after the coefficient");
            ++pos_;
            skip();
        }
        t.factors.push_back(factor());
        skip();
        while (!at_end() && peek() == '*') {
            ++pos_;
            skip();
            t.factors.push_back(factor());
            skip();
        }
        return t;
    }

    double number()
    {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        if (*first == '+') ++first;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || !std::isfinite(v)) fail("malformed coefficient");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return v;
    }

    ObservableFactor factor()
    {
        if (at_end()) fail("expected an operator");
        SiteOperator op{};
        const std::string_view rest = text_.substr(pos_);
        if (rest.substr(0, 2) == "Sp") {
            op = SiteOperator::Sp;
            pos_ += 2;
        } else if (rest.substr(0, 2) == "Sm") {
            op = SiteOperator::Sm;
            pos_ += 2;
        } else {
            switch (peek()) {
            case 'X': op = SiteOperator::X; break;
            case 'Y': op = SiteOperator::Y; break;
            case 'Z': op = SiteOperator::Z; break;
            case 'n': op = SiteOperator::n; break;
            case 'I': op = SiteOperator::I; break;
            default: fail(std::string("unknown operator '") + peek() + "'");
            }
            ++pos_;
        }
        skip();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a site index");
        const std::size_t digits = pos_;
        int site = 0;
        const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), site);
        if (ec != std::errc()) fail("site index out of range");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        if (site < 1) {
            pos_ = digits;
            fail("site indices start at 1");
        }
        return {op, site};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

ObservableExpr parse_observable(std::string_view text)
{
    return ObservableParser(text).parse();
}

int ObservableExpr::max_site() const
{
    int m = 0;
    for (const auto& t : terms)
        for (const auto& f : t.factors) m = std::max(m, f.site);
    return m;
}

OperatorSum ObservableExpr::to_operator_sum() const
{
    OperatorSum out;
    for (const auto& t : terms) {
        int lo = t.factors.front().site;
        int hi = lo;
        for (const auto& f : t.factors) {
            lo = std::min(lo, f.site);
            hi = std::max(hi, f.site);
        }
        OperatorSum s = identity_on(lo, hi - lo + 1);
        for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) s = act_left(site_matrix(it->op), it->site, s);
        s *= t.coefficient;
        out += s;
    }
    out.prune();
    return out;
}

void check_sites(const ObservableExpr& expr, int n)
{
    for (const auto& t : expr.terms) {
        for (const auto& f : t.factors) {
            if (f.site > n) {
                throw Error(ErrorCode::SiteOutOfRange, std::string(site_operator_name(f.op)) + std::to_string(f.site) +
                                                           " lies beyond level " + std::to_string(n));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& what)
{
    throw Error(ErrorCode::InvalidConfig, key + ": " + what);
}

double to_double(const std::string& key, const std::string& v)
{
    const std::string t = trim(v);
    double out = 0.0;
    const char* first = t.data();
    if (!t.empty() && t[0] == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        // from_chars rejects "inf"; the config never needs it.
        bad(key, "not a number: '" + v + "'");
    }
    return out;
}

long to_long(const std::string& key, const std::string& v)
{
    const std::string t = trim(v);
    long out = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) bad(key, "not an integer: '" + v + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& v)
{
    std::string t = trim(v);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "true" || t == "1" || t == "on" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "off" || t == "no") return false;
    bad(key, "not a boolean: '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

// "a", "a,b,c" or "start:stop:step" (inclusive).
std::vector<double> to_grid(const std::string& key, const std::string& v)
{
    std::vector<double> out;
    if (v.find(':') != std::string::npos) {
        const auto parts = split(v, ':');
        if (parts.size() != 3) bad(key, "range must be start:stop:step");
        const double a = to_double(key, parts[0]);
        const double b = to_double(key, parts[1]);
        const double h = to_double(key, parts[2]);
        if (!(h > 0.0) || b < a) bad(key, "range needs step > 0 and stop >= start");
        const long count = std::lround(std::floor((b - a) / h + 1e-9));
        for (long k = 0; k <= count; ++k) out.push_back(a + static_cast<double>(k) * h);
        return out;
    }
    for (const auto& p : split(v, ',')) out.push_back(to_double(key, p));
    if (out.empty()) bad(key, "empty list");
    return out;
}

std::string exact(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T>
std::string join(const std::vector<T>& xs, const std::function<std::string(const T&)>& f)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + f(xs[i]);
    return s;
}

struct KeyDef {
    std::function<void(RunConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

const std::map<std::string, KeyDef>& key_table()
{
    using C = RunConfig;
    using S = std::string;
    static const std::map<std::string, KeyDef> table = {
        {"name", {[](C& c, const S&, const S& v) { c.name = trim(v); }, [](const C& c) { return c.name; }}},
        {"model", {[](C& c, const S&, const S& v) { c.model = trim(v); }, [](const C& c) { return c.model; }}},
        {"omega", {[](C& c, const S& k, const S& v) { c.omega = to_grid(k, v); },
                   [](const C& c) { return join<double>(c.omega, exact); }}},
        {"n", {[](C& c, const S& k, const S& v) {
                   c.n.clear();
                   for (double x : to_grid(k, v)) {
                       if (x != std::floor(x)) bad(k, "levels are integers");
                       c.n.push_back(static_cast<int>(x));
                   }
               },
               [](const C& c) { return join<int>(c.n, [](const int& x) { return std::to_string(x); }); }}},
        {"objective", {[](C& c, const S&, const S& v) { c.objective = trim(v); }, [](const C& c) { return c.objective; }}},
        {"direction", {[](C& c, const S&, const S& v) { c.direction = trim(v); }, [](const C& c) { return c.direction; }}},
        {"method", {[](C& c, const S&, const S& v) { c.method = trim(v); }, [](const C& c) { return c.method; }}},
        {"problem", {[](C& c, const S&, const S& v) { c.problem = trim(v); }, [](const C& c) { return c.problem; }}},
        {"delta", {[](C& c, const S& k, const S& v) { c.delta = to_double(k, v); },
                   [](const C& c) { return exact(c.delta); }}},
        {"delta_min", {[](C& c, const S& k, const S& v) { c.gap.delta_min = to_double(k, v); },
                       [](const C& c) { return exact(c.gap.delta_min); }}},
        {"delta_max", {[](C& c, const S& k, const S& v) { c.gap.delta_max = to_double(k, v); },
                       [](const C& c) { return exact(c.gap.delta_max); }}},
        {"grid_points", {[](C& c, const S& k, const S& v) { c.gap.grid_points = static_cast<int>(to_long(k, v)); },
                         [](const C& c) { return std::to_string(c.gap.grid_points); }}},
        {"golden_width", {[](C& c, const S& k, const S& v) { c.gap.golden_width = to_double(k, v); },
                          [](const C& c) { return exact(c.gap.golden_width); }}},
        {"brent_tol", {[](C& c, const S& k, const S& v) { c.gap.brent_tol = to_double(k, v); },
                       [](const C& c) { return exact(c.gap.brent_tol); }}},
        {"g_thresh", {[](C& c, const S& k, const S& v) { c.gap.g_thresh = to_double(k, v); },
                      [](const C& c) { return exact(c.gap.g_thresh); }}},
        {"bisection_tol", {[](C& c, const S& k, const S& v) { c.critical.tol = to_double(k, v); },
                           [](const C& c) { return exact(c.critical.tol); }}},
        {"detection_eps", {[](C& c, const S& k, const S& v) { c.critical.eps = to_double(k, v); },
                           [](const C& c) { return exact(c.critical.eps); }}},
        {"omega_bracket_max", {[](C& c, const S& k, const S& v) { c.critical.omega_hi = to_double(k, v); },
                               [](const C& c) { return exact(c.critical.omega_hi); }}},
        {"tol_feas", {[](C& c, const S& k, const S& v) { c.solver.tol_feas = to_double(k, v); },
                      [](const C& c) { return exact(c.solver.tol_feas); }}},
        {"tol_gap", {[](C& c, const S& k, const S& v) { c.solver.tol_gap = to_double(k, v); },
                     [](const C& c) { return exact(c.solver.tol_gap); }}},
        {"max_iter", {[](C& c, const S& k, const S& v) { c.solver.max_iter = to_long(k, v); },
                      [](const C& c) { return std::to_string(c.solver.max_iter); }}},
        {"realness", {[](C& c, const S& k, const S& v) { c.solver.realness = to_bool(k, v); },
                      [](const C& c) { return std::string(c.solver.realness ? "true" : "false"); }}},
        {"verbosity", {[](C& c, const S& k, const S& v) { c.solver.verbosity = static_cast<int>(to_long(k, v)); },
                       [](const C& c) { return std::to_string(c.solver.verbosity); }}},
        {"output_dir", {[](C& c, const S&, const S& v) { c.output_dir = trim(v); },
                        [](const C& c) { return c.output_dir; }}},
        {"sdpa_out", {[](C& c, const S&, const S& v) { c.sdpa_out = trim(v); }, [](const C& c) { return c.sdpa_out; }}},
        {"timing", {[](C& c, const S&, const S& v) { c.timing = trim(v); }, [](const C& c) { return c.timing; }}},
    };
    return table;
}

} // namespace

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, def] : key_table()) k.push_back(name);
        return k;
    }();
    return keys;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value)
{
    const auto& table = key_table();
    const auto it = table.find(trim(key));
    if (it == table.end()) bad(key, "unknown key");
    it->second.set(config, it->first, value);
}

std::map<std::string, std::string> config_settings(const RunConfig& config)
{
    std::map<std::string, std::string> out;
    for (const auto& [name, def] : key_table()) out[name] = def.get(config);
    return out;
}

void load_config_file(RunConfig& config, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open config " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::InvalidConfig, path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        try {
            apply_setting(config, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const Error& e) {
            std::string what = e.what();
            const std::string prefix = std::string(error_code_name(ErrorCode::InvalidConfig)) + ": ";
            if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
            throw Error(ErrorCode::InvalidConfig, path + ":" + std::to_string(lineno) + ": " + what);
        }
    }
}

void load_manifest(RunConfig& config, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open manifest " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, path + ": " + e.what());
    }
    if (!j.contains("command") || !j.contains("config") || !j["config"].is_object()) {
        throw Error(ErrorCode::InvalidConfig, path + ": not a run manifest");
    }
    config.command = j["command"].get<std::string>();
    for (const auto& [key, value] : j["config"].items()) {
        if (!value.is_string()) throw Error(ErrorCode::InvalidConfig, path + ": config." + key + " must be a string");
        apply_setting(config, key, value.get<std::string>());
    }
}

void RunConfig::validate() const
{
    static const std::vector<std::string> commands = {"steady", "scan", "critical", "ratio", "gap", "export-sdpa"};
    auto one_of = [](const std::string& key, const std::string& v, std::initializer_list<const char*> allowed) {
        for (const char* a : allowed) {
            if (v == a) return;
        }
        bad(key, "unsupported value '" + v + "'");
    };
    if (std::find(commands.begin(), commands.end(), command) == commands.end()) {
        bad("command", "unknown command '" + command + "'");
    }
    one_of("model", model, {"qcp"});
    one_of("direction", direction, {"min", "max", "both"});
    one_of("method", method, {"steady", "ratio"});
    one_of("problem", problem, {"steady", "ratio", "gap"});
    one_of("timing", timing, {"wall", "off"});
    if (command != "critical") {
        if (omega.empty()) bad("omega", "required for " + command);
        for (double w : omega) {
            if (!(w >= 0.0) || !std::isfinite(w)) bad("omega", "couplings must be finite and >= 0");
        }
    }
    if (command == "steady" && omega.size() != 1) bad("omega", "steady takes a single coupling (use scan)");
    if (command == "scan" && !std::is_sorted(omega.begin(), omega.end())) bad("omega", "grid must be ascending");
    if (n.empty()) bad("n", "required");
    for (int level : n) {
        if (level < 1 || level > kMaxLevel) bad("n", "levels must lie in [1, " + std::to_string(kMaxLevel) + "]");
    }
    if (command == "export-sdpa" && (omega.size() != 1 || n.size() != 1)) {
        bad("omega", "export-sdpa writes one problem: give one coupling and one level");
    }
    try {
        solver.validate();
    } catch (const Error& e) {
        bad("solver", e.what());
    }
    if (!(gap.delta_min >= 0.0)) bad("delta_min", "must be >= 0");
    if (!(gap.delta_max > gap.delta_min)) bad("delta_max", "must exceed delta_min");
    if (gap.grid_points < 2) bad("grid_points", "must be >= 2");
    if (!(gap.golden_width > 0.0)) bad("golden_width", "must be > 0");
    if (!(gap.brent_tol > 0.0)) bad("brent_tol", "must be > 0");
    if (!(critical.tol > 0.0)) bad("bisection_tol", "must be > 0");
    if (!(critical.eps > 0.0)) bad("detection_eps", "must be > 0");
    if (!(critical.omega_hi > 0.0)) bad("omega_bracket_max", "must be > 0");
    if (!(delta >= 0.0)) bad("delta", "must be >= 0");
    const bool uses_objective =
        command == "steady" || command == "scan" || command == "ratio" || (command == "export-sdpa" && problem != "gap");
    if (uses_objective) {
        ObservableExpr expr;
        try {
            expr = parse_observable(objective);
        } catch (const ParseError& e) {
            bad("objective", e.what());
        }
        for (int level : n) check_sites(expr, level);
    }
}

// ---------------------------------------------------------------------------
// Output

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

std::string iso_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json number_json(double v)
{
    if (std::isfinite(v)) return v;
    return format_number(v);
}

nlohmann::json report_json(const SolveReport& r)
{
    return {{"status", std::string(solve_status_name(r.status))},
            {"primal", number_json(r.primal_objective)},
            {"dual", number_json(r.dual_objective)},
            {"iterations", r.iterations},
            {"seconds", r.seconds},
            {"max_residual", number_json(r.max_residual)}};
}

class CsvFile {
public:
    CsvFile(const std::filesystem::path& path, const std::vector<std::string>& header) : path_(path)
    {
        out_.open(path, std::ios::binary);
        if (!out_) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
        row(header);
    }

    void row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

    void close()
    {
        out_.close();
        if (!out_) throw Error(ErrorCode::IoFailure, "write failed for " + path_.string());
    }

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

const std::vector<std::string> kBoundsHeader = {"omega",  "n",    "objective", "direction", "bound",
                                                "status", "primal", "dual",    "iterations", "seconds"};
const std::vector<std::string> kGapHeader = {"omega", "n", "delta_lb", "delta_ub", "navigator_min", "argmin", "status"};

// Objective text may contain commas only if the user wrote them; quote defensively.
std::string csv_text(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

struct Runner {
    const RunConfig& cfg;
    std::ostream& log;
    std::filesystem::path dir;
    nlohmann::json solves = nlohmann::json::array();
    nlohmann::json outputs = nlohmann::json::array();
    nlohmann::json summary = nlohmann::json::array();
    int warnings = 0;

    BuildOptions build() const
    {
        BuildOptions b;
        b.realness = cfg.solver.realness;
        return b;
    }

    std::string seconds(double s) const { return format_number(cfg.timing == "wall" ? s : 0.0); }

    std::vector<Direction> directions() const
    {
        if (cfg.direction == "both") return {Direction::Min, Direction::Max};
        return {cfg.direction == "min" ? Direction::Min : Direction::Max};
    }

    void note(const nlohmann::json& extra, const SolveReport& r)
    {
        nlohmann::json j = extra;
        j.update(report_json(r));
        solves.push_back(std::move(j));
        if (r.status != SolveStatus::Optimal) ++warnings;
    }

    std::vector<std::string> bounds_row(const BoundsRecord& b) const
    {
        const std::string status = b.error.empty() ? std::string(solve_status_name(b.report.status)) : "Error";
        return {format_number(b.omega),
                std::to_string(b.n),
                csv_text(b.objective),
                std::string(direction_name(b.direction)),
                format_number(b.bound),
                status,
                format_number(b.error.empty() ? b.report.primal_objective : std::nan("")),
                format_number(b.error.empty() ? b.report.dual_objective : std::nan("")),
                std::to_string(b.report.iterations),
                seconds(b.report.seconds)};
    }

    void record_bound(const BoundsRecord& b)
    {
        nlohmann::json j = {{"omega", b.omega},
                            {"n", b.n},
                            {"kind", std::string(problem_kind_name(b.kind))},
                            {"objective", b.objective},
                            {"direction", std::string(direction_name(b.direction))}};
        if (!b.error.empty()) {
            j["error"] = b.error;
            solves.push_back(j);
            ++warnings;
            log << "warning: omega=" << format_number(b.omega) << " n=" << b.n << ": " << b.error << '\n';
            return;
        }
        note(j, b.report);
        if (b.report.status != SolveStatus::Optimal) {
            log << "warning: omega=" << format_number(b.omega) << " n=" << b.n << " "
                << direction_name(b.direction) << ": " << solve_status_name(b.report.status) << '\n';
        }
    }

    void bounds(ProblemKind kind)
    {
        const ObservableExpr expr = parse_observable(cfg.objective);
        CsvFile csv(dir / (cfg.stem() + ".csv"), kBoundsHeader);
        for (int level : cfg.n) {
            for (Direction d : directions()) {
                ScanRequest req;
                req.grid = cfg.omega;
                req.n = level;
                req.objective = expr.to_operator_sum();
                req.objective_name = cfg.objective;
                req.direction = d;
                req.kind = kind;
                const auto recs = cfg.command == "scan"
                                      ? scan_omega(contact_process_family(), req, cfg.solver, build())
                                      : std::vector<BoundsRecord>{bound_point(contact_process_family(), cfg.omega.front(),
                                                                              req, cfg.solver, build())};
                for (const auto& r : recs) {
                    csv.row(bounds_row(r));
                    record_bound(r);
                    log << "omega=" << format_number(r.omega) << " n=" << r.n << " " << direction_name(d) << " "
                        << cfg.objective << " bound=" << format_number(r.bound) << '\n';
                }
            }
        }
        csv.close();
        outputs.push_back(csv.path().string());
    }

    void bounds_each_omega(ProblemKind kind)
    {
        // ratio accepts several couplings without requiring a sorted grid
        const ObservableExpr expr = parse_observable(cfg.objective);
        CsvFile csv(dir / (cfg.stem() + ".csv"), kBoundsHeader);
        for (int level : cfg.n) {
            for (Direction d : directions()) {
                ScanRequest req;
                req.n = level;
                req.objective = expr.to_operator_sum();
                req.objective_name = cfg.objective;
                req.direction = d;
                req.kind = kind;
                for (double om : cfg.omega) {
                    const BoundsRecord r = bound_point(contact_process_family(), om, req, cfg.solver, build());
                    csv.row(bounds_row(r));
                    record_bound(r);
                    log << "omega=" << format_number(om) << " n=" << level << " " << direction_name(d) << " r("
                        << cfg.objective << ") bound=" << format_number(r.bound) << '\n';
                }
            }
        }
        csv.close();
        outputs.push_back(csv.path().string());
    }

    void critical()
    {
        CsvFile csv(dir / (cfg.stem() + ".csv"),
                    {"n", "method", "omega_lb", "omega_ub", "tol", "eps", "evaluations"});
        CsvFile trace(dir / (cfg.stem() + "_trace.csv"), kBoundsHeader);
        CriticalOptions opt = cfg.critical;
        opt.method = cfg.method == "ratio" ? CriticalMethod::Ratio : CriticalMethod::SteadyState;
        for (int level : cfg.n) {
            const CriticalResult r =
                critical_coupling_lower_bound(contact_process_family(), level, opt, cfg.solver, build());
            csv.row({std::to_string(level), cfg.method, format_number(r.omega), format_number(r.omega_hi),
                     format_number(opt.tol), format_number(opt.eps), std::to_string(r.evaluations)});
            for (const auto& b : r.trace) {
                trace.row(bounds_row(b));
                record_bound(b);
            }
            summary.push_back({{"n", level}, {"method", cfg.method}, {"omega_lb", r.omega}, {"omega_ub", r.omega_hi}});
            log << "n=" << level << " omega*_LB=" << format_number(r.omega) << " (" << cfg.method << ", "
                << r.evaluations << " solves)\n";
        }
        csv.close();
        trace.close();
        outputs.push_back(csv.path().string());
        outputs.push_back(trace.path().string());
    }

    void gap()
    {
        CsvFile csv(dir / (cfg.stem() + ".csv"), kGapHeader);
        CsvFile probes(dir / (cfg.stem() + "_probes.csv"), {"omega", "n", "delta", "navigator", "status"});
        for (double om : cfg.omega) {
            const LindbladModel model = quantum_contact_process(om);
            for (int level : cfg.n) {
                const GapRecord g = gap_window(model, level, cfg.gap, cfg.solver, build());
                std::string status(gap_status_name(g.status));
                if (g.precision_warning) {
                    status += "+PrecisionWarning";
                    ++warnings;
                    log << "warning: omega=" << format_number(om) << " n=" << level << ": navigator minimum "
                        << format_number(g.navigator_min) << " is within 10x the solver tolerance\n";
                }
                csv.row({format_number(om), std::to_string(level), format_number(g.delta_lb),
                         format_number(g.delta_ub), format_number(g.navigator_min), format_number(g.argmin), status});
                for (const auto& p : g.probes) {
                    probes.row({format_number(om), std::to_string(level), format_number(p.delta),
                                format_number(p.value), std::string(solve_status_name(p.report.status))});
                    note({{"omega", om}, {"n", level}, {"kind", "gap"}, {"delta", p.delta}}, p.report);
                }
                summary.push_back({{"omega", om},
                                   {"n", level},
                                   {"delta_lb", number_json(g.delta_lb)},
                                   {"delta_ub", number_json(g.delta_ub)},
                                   {"status", status},
                                   {"grid_evaluated", g.grid.size()},
                                   {"probes", g.probes.size()}});
                log << "omega=" << format_number(om) << " n=" << level << " delta in [" << format_number(g.delta_lb)
                    << ", " << format_number(g.delta_ub) << "] " << status << '\n';
            }
        }
        csv.close();
        probes.close();
        outputs.push_back(csv.path().string());
        outputs.push_back(probes.path().string());
    }

    void export_problem()
    {
        const LindbladModel model = quantum_contact_process(cfg.omega.front());
        const int level = cfg.n.front();
        ConicProblem p;
        if (cfg.problem == "gap") {
            p = build_gap_sdp(model, level, cfg.delta, build());
        } else {
            if (cfg.direction == "both") bad("direction", "export-sdpa needs min or max");
            const OperatorSum obj = parse_observable(cfg.objective).to_operator_sum();
            const Direction d = cfg.direction == "min" ? Direction::Min : Direction::Max;
            p = cfg.problem == "ratio" ? build_ratio_sdp(model, level, obj, d, build())
                                       : build_steady_state_sdp(model, level, obj, d, build());
        }
        const std::filesystem::path out = cfg.sdpa_out.empty() ? dir / (cfg.stem() + ".dat-s")
                                                                : std::filesystem::path(cfg.sdpa_out);
        export_sdpa(p, out.string());
        outputs.push_back(out.string());
        summary.push_back({{"constraints", p.rows.size()},
                           {"block", hermitian_embedding(p).block_dim},
                           {"free", p.num_free},
                           {"sense", std::string(direction_name(p.sense))}});
        log << "wrote " << out.string() << " (" << p.rows.size() << " constraints)\n";
    }
};

} // namespace

int run(const RunConfig& config, std::ostream& log)
{
    config.validate();
    Runner r{config, log, std::filesystem::path(config.output_dir)};
    std::error_code ec;
    std::filesystem::create_directories(r.dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + config.output_dir + ": " + ec.message());

    const std::string started = iso_now();
    const auto t0 = std::chrono::steady_clock::now();
    if (config.command == "steady" || config.command == "scan") {
        r.bounds(ProblemKind::SteadyState);
    } else if (config.command == "ratio") {
        r.bounds_each_omega(ProblemKind::Ratio);
    } else if (config.command == "critical") {
        r.critical();
    } else if (config.command == "gap") {
        r.gap();
    } else {
        r.export_problem();
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config_settings(config)) cfg[k] = v;
    nlohmann::json manifest = {
        {"tool", "lindboot"},
        {"command", config.command},
        {"config", cfg},
        {"versions",
         {{"lindboot", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"compiler", __VERSION__}}},
        {"started", started},
        {"finished", iso_now()},
        {"wall_seconds", wall},
        {"outputs", r.outputs},
        {"summary", r.summary},
        {"warnings", r.warnings},
        {"solves", r.solves},
    };
    const std::filesystem::path mpath = r.dir / (config.stem() + ".manifest.json");
    std::ofstream out(mpath, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + mpath.string());
    out << manifest.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + mpath.string());
    if (r.warnings > 0) log << r.warnings << " warning(s); see " << mpath.string() << '\n';
    return 0;
}

} // namespace lindboot
