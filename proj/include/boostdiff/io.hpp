#ifndef BOOSTDIFF_IO_HPP
#define BOOSTDIFF_IO_HPP

// File formats: metadata-plus-columns tables (CSV / JSON), profile files,
// two-stream states, and the CLI run configuration.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bandlimited.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "kinetic_models.hpp"

namespace boostdiff {

enum class Format { CSV, JSON };

inline const char* to_string(Format f) { return f == Format::CSV ? "csv" : "json"; }

inline Format parse_format(const std::string& s) {
    if (s == "csv") return Format::CSV;
    if (s == "json") return Format::JSON;
    throw input_error("format must be csv or json; got '" + s + "'");
}

inline Frame parse_frame(const std::string& s) {
    if (s == "rest") return Frame::Rest;
    if (s == "boosted") return Frame::Boosted;
    throw input_error("frame must be rest or boosted; got '" + s + "'");
}

/// %.17g: shortest width that still round-trips every double.
inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline std::optional<double> parse_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return std::nullopt;
    return x;
}

inline std::optional<long> parse_long(const std::string& s) {
    long x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return x;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

struct Column {
    std::string name;
    std::vector<double> numbers;
    std::vector<std::string> text;
    bool is_text = false;

    std::size_t size() const { return is_text ? text.size() : numbers.size(); }
    std::string cell(std::size_t i) const { return is_text ? text[i] : format_number(numbers[i]); }
};

/// Ordered key=value metadata plus equal-length named columns.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<Column> columns;

    void set_meta(const std::string& key, const std::string& value) {
        for (auto& [k, v] : metadata) {
            if (k == key) {
                v = value;
                return;
            }
        }
        metadata.emplace_back(key, value);
    }

    std::optional<std::string> meta(const std::string& key) const {
        for (const auto& [k, v] : metadata)
            if (k == key) return v;
        return std::nullopt;
    }

    void add_column(std::string name, std::vector<double> values) {
        columns.push_back({std::move(name), std::move(values), {}, false});
    }

    void add_text_column(std::string name, std::vector<std::string> values) {
        columns.push_back({std::move(name), {}, std::move(values), true});
    }

    const Column& column(const std::string& name) const {
        for (const auto& c : columns)
            if (c.name == name) return c;
        throw input_error("table has no column '" + name + "'");
    }

    bool has_column(const std::string& name) const {
        return std::any_of(columns.begin(), columns.end(), [&](const Column& c) { return c.name == name; });
    }

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }

    void validate() const {
        for (const auto& c : columns) {
            if (c.size() != rows()) throw domain_error("table column '" + c.name + "' has the wrong length");
        }
    }
};

inline void write_csv(std::ostream& out, const Table& t) {
    t.validate();
    for (const auto& [k, v] : t.metadata) out << "# " << k << '=' << v << '\n';
    for (std::size_t j = 0; j < t.columns.size(); ++j) out << (j ? "," : "") << t.columns[j].name;
    out << '\n';
    for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t j = 0; j < t.columns.size(); ++j) out << (j ? "," : "") << t.columns[j].cell(i);
        out << '\n';
    }
}

/// Inverse of write_csv. A column is numeric when every cell parses as a number.
inline Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    long lineno = 0;
    bool have_header = false;
    std::vector<std::vector<std::string>> cells;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!have_header && line[0] == '#') {
            const std::string body = detail::trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq == std::string::npos) throw input_error("metadata line without '='", lineno);
            t.metadata.emplace_back(detail::trim(body.substr(0, eq)), detail::trim(body.substr(eq + 1)));
            continue;
        }
        auto fields = detail::split(line, ',');
        if (!have_header) {
            for (auto& name : fields) t.columns.push_back({name, {}, {}, false});
            cells.resize(fields.size());
            have_header = true;
            continue;
        }
        if (fields.size() != t.columns.size()) {
            std::ostringstream msg;
            msg << "expected " << t.columns.size() << " fields, found " << fields.size();
            throw input_error(msg.str(), lineno);
        }
        for (std::size_t j = 0; j < fields.size(); ++j) cells[j].push_back(fields[j]);
    }
    if (!have_header) throw input_error("CSV has no header row", lineno);
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        auto& c = t.columns[j];
        std::vector<double> nums;
        bool numeric = true;
        for (const auto& s : cells[j]) {
            const auto x = detail::parse_double(s);
            if (!x) {
                numeric = false;
                break;
            }
            nums.push_back(*x);
        }
        if (numeric) {
            c.numbers = std::move(nums);
        } else {
            c.is_text = true;
            c.text = std::move(cells[j]);
        }
    }
    return t;
}

/// {"metadata": {...}, "columns": {"name": [...], ...}} with insertion order kept.
inline nlohmann::ordered_json table_to_json(const Table& t) {
    t.validate();
    nlohmann::ordered_json j;
    j["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.metadata) j["metadata"][k] = v;
    j["columns"] = nlohmann::ordered_json::object();
    for (const auto& c : t.columns) {
        if (c.is_text) {
            j["columns"][c.name] = c.text;
        } else {
            auto arr = nlohmann::ordered_json::array();
            for (double x : c.numbers) {
                if (std::isfinite(x)) arr.push_back(x);
                else arr.push_back(format_number(x)); // JSON has no inf/nan
            }
            j["columns"][c.name] = std::move(arr);
        }
    }
    return j;
}

inline void write_json(std::ostream& out, const Table& t) { out << table_to_json(t).dump(1) << '\n'; }

inline Table read_json(std::istream& in) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("JSON parse error: ") + e.what());
    }
    Table t;
    if (!j.contains("metadata") || !j.contains("columns")) throw input_error("JSON table needs metadata and columns");
    for (const auto& [k, v] : j["metadata"].items()) t.metadata.emplace_back(k, v.get<std::string>());
    for (const auto& [name, arr] : j["columns"].items()) {
        Column c{name, {}, {}, false};
        const bool text = std::any_of(arr.begin(), arr.end(), [](const auto& e) {
            return e.is_string() && !detail::parse_double(e.template get<std::string>());
        });
        for (const auto& e : arr) {
            if (text) c.text.push_back(e.is_string() ? e.get<std::string>() : e.dump());
            else c.numbers.push_back(e.is_string() ? *detail::parse_double(e.get<std::string>()) : e.get<double>());
        }
        c.is_text = text;
        t.columns.push_back(std::move(c));
    }
    t.validate();
    return t;
}

inline void write_table(std::ostream& out, const Table& t, Format f) {
    if (f == Format::CSV) write_csv(out, t);
    else write_json(out, t);
}

inline Table read_table(std::istream& in, Format f) { return f == Format::CSV ? read_csv(in) : read_json(in); }

// ---------------------------------------------------------------------------
// Field slices
// ---------------------------------------------------------------------------

inline std::string join_numbers(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + format_number(xs[i]);
    return s;
}

/// Long format: one row per (time, x). `extra` adds named columns aligned with
/// the concatenated slices (e.g. an oracle cross-check).
inline Table slices_table(const std::vector<FieldSlice>& slices, const BoostParams& p,
                          const std::vector<std::pair<std::string, std::vector<double>>>& extra = {}) {
    if (slices.empty()) throw domain_error("slices_table: no slices");
    Table t;
    std::vector<double> times;
    for (const auto& s : slices) times.push_back(s.time);
    t.set_meta("v", format_number(p.v()));
    t.set_meta("lambda", format_number(p.lambda()));
    t.set_meta("frame", to_string(slices.front().frame));
    t.set_meta("time", join_numbers(times));
    t.set_meta("provenance", to_string(slices.front().provenance));
    std::vector<double> tc, xc, vc;
    for (const auto& s : slices) {
        s.validate();
        for (std::size_t i = 0; i < s.positions.size(); ++i) {
            tc.push_back(s.time);
            xc.push_back(s.positions[i]);
            vc.push_back(s.values[i]);
        }
    }
    t.add_column("time", std::move(tc));
    t.add_column("x", std::move(xc));
    t.add_column("value", std::move(vc));
    for (const auto& [name, values] : extra) t.add_column(name, values);
    t.validate();
    return t;
}

/// Regroups a slices_table by time.
inline std::vector<FieldSlice> slices_from_table(const Table& t) {
    const auto& tc = t.column("time").numbers;
    const auto& xc = t.column("x").numbers;
    const auto& vc = t.column("value").numbers;
    const Frame frame = parse_frame(t.meta("frame").value_or("boosted"));
    const std::string prov = t.meta("provenance").value_or("closed-form");
    std::vector<FieldSlice> out;
    for (std::size_t i = 0; i < tc.size(); ++i) {
        if (out.empty() || out.back().time != tc[i]) {
            FieldSlice s;
            s.time = tc[i];
            s.frame = frame;
            s.provenance = prov == "oracle" ? Provenance::SpectralOracle : Provenance::ClosedForm;
            out.push_back(std::move(s));
        }
        out.back().positions.push_back(xc[i]);
        out.back().values.push_back(vc[i]);
    }
    for (const auto& s : out) s.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Profile files
// ---------------------------------------------------------------------------

/// Header "lambda=<value> v=<value>" (optionally " truncation=<value>"), then
/// one "index<TAB>value" line per coefficient.
inline void write_profile(std::ostream& out, const BandLimitedProfile& prof) {
    out << "lambda=" << format_number(prof.lambda()) << " v=" << format_number(prof.v());
    if (prof.truncation_bound() && *prof.truncation_bound() > 0.0) {
        out << " truncation=" << format_number(*prof.truncation_bound());
    }
    out << '\n';
    for (const auto& [a, c] : prof.coefficients()) out << a << '\t' << format_number(c) << '\n';
}

inline BandLimitedProfile read_profile(std::istream& in) {
    std::string line;
    long lineno = 0;
    std::optional<double> lambda, v;
    double truncation = 0.0;
    while (std::getline(in, line)) {
        ++lineno;
        line = detail::trim(line);
        if (line.empty()) continue;
        std::istringstream hs(line);
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw input_error("profile header: expected key=value, got '" + tok + "'", lineno);
            const std::string key = tok.substr(0, eq);
            const auto val = detail::parse_double(tok.substr(eq + 1));
            if (!val || !std::isfinite(*val)) throw input_error("profile header: bad number for " + key, lineno);
            if (key == "lambda") lambda = *val;
            else if (key == "v") v = *val;
            else if (key == "truncation") truncation = *val;
            else throw input_error("profile header: unknown key '" + key + "'", lineno);
        }
        break;
    }
    if (!lambda || !v) throw input_error("profile header must give lambda=<value> v=<value>", std::max(1L, lineno));
    const long header_line = lineno;
    if (!(*v > 0.0 && *v < 1.0)) throw input_error("profile header: v must lie in (0,1)", header_line);
    const BoostParams p(*v);
    if (std::abs(*lambda - p.lambda()) > 1e-12 * p.lambda()) {
        std::ostringstream msg;
        msg << "profile header: lambda=" << *lambda << " does not match Lambda(v=" << *v << ") = " << p.lambda();
        throw input_error(msg.str(), header_line);
    }
    std::vector<Coefficient> coeffs;
    std::map<long, long> seen;
    while (std::getline(in, line)) {
        ++lineno;
        line = detail::trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a_str, c_str, rest;
        ls >> a_str >> c_str;
        if (ls >> rest || c_str.empty()) throw input_error("expected 'index<TAB>value'", lineno);
        const auto a = detail::parse_long(a_str);
        if (!a) throw input_error("bad sampling index '" + a_str + "'", lineno);
        const auto c = detail::parse_double(c_str);
        if (!c || !std::isfinite(*c)) throw input_error("bad coefficient '" + c_str + "'", lineno);
        if (const auto it = seen.find(*a); it != seen.end()) {
            std::ostringstream msg;
            msg << "duplicate sampling index " << *a << " (first on line " << it->second << ")";
            throw input_error(msg.str(), lineno);
        }
        seen[*a] = lineno;
        coeffs.emplace_back(*a, *c);
    }
    return BandLimitedProfile(std::move(coeffs), p.lambda(), *v, truncation);
}

inline BandLimitedProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open profile file '" + path + "'");
    try {
        return read_profile(in);
    } catch (const input_error& e) {
        if (e.line() < 0) throw;
        std::ostringstream msg;
        msg << path << ":" << e.line() << ": " << e.what();
        throw input_error(msg.str(), e.line());
    }
}

// ---------------------------------------------------------------------------
// Two-stream states
// ---------------------------------------------------------------------------

inline Table two_stream_table(const TwoStreamState& s) {
    s.validate();
    Table t;
    t.set_meta("frame", "rest");
    t.set_meta("time", format_number(s.time));
    t.set_meta("provenance", "two-stream");
    t.add_column("x", s.x);
    t.add_column("n_plus", s.n_plus);
    t.add_column("n_minus", s.n_minus);
    return t;
}

inline TwoStreamState two_stream_from_table(const Table& t) {
    TwoStreamState s;
    s.x = t.column("x").numbers;
    s.n_plus = t.column("n_plus").numbers;
    s.n_minus = t.column("n_minus").numbers;
    const auto time = t.meta("time");
    s.time = time ? detail::parse_double(*time).value_or(0.0) : 0.0;
    s.validate();
    return s;
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string command;
    double v = 0.5;
    std::vector<double> times{0.0};
    double xmin = -6.0;
    double xmax = 6.0;
    std::size_t nx = 241;
    Frame frame = Frame::Boosted;
    std::string profile;
    bool oracle = false;
    Format format = Format::CSV;
    std::string out;
    double tol = 1e-9;
    double kmax = 8.0;
    std::size_t n = 400;
    std::string function = "gaussian";
    long amax = 20;
    bool comoving = false;
    bool fourier = false;
    bool poison_branch = false;
    std::vector<double> verify_v;
    std::vector<std::string> suites;
    std::string state;

    void validate() const {
        auto fail = [](const std::string& what) { throw input_error(what); };
        if (!(v > 0.0 && v < 1.0)) fail("--v: v must lie in (0,1); got " + format_number(v));
        for (double w : verify_v)
            if (!(w > 0.0 && w < 1.0)) fail("--v: v must lie in (0,1); got " + format_number(w));
        for (double t : times)
            if (!std::isfinite(t)) fail("--t: times must be finite");
        if (nx < 1) fail("--nx: need at least one point");
        if (nx > 1 && !(xmax > xmin)) fail("--xmin/--xmax: need xmax > xmin");
        if (!(tol > 0.0)) fail("--tol: must be > 0");
        if (!(kmax > 0.0)) fail("--kmax: must be > 0");
        if (n < 2) fail("--n: need at least two points");
        if (amax < 1) fail("--amax: must be >= 1");
        static const char* functions[] = {"gaussian", "quartic", "sinc", "zero", "bump"};
        if (std::find(std::begin(functions), std::end(functions), function) == std::end(functions)) {
            fail("--function: unknown reference function '" + function + "'");
        }
    }
};

inline nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["command"] = c.command;
    j["v"] = c.v;
    j["times"] = c.times;
    j["xmin"] = c.xmin;
    j["xmax"] = c.xmax;
    j["nx"] = c.nx;
    j["frame"] = to_string(c.frame);
    j["profile"] = c.profile;
    j["oracle"] = c.oracle;
    j["format"] = to_string(c.format);
    j["out"] = c.out;
    j["tol"] = c.tol;
    j["kmax"] = c.kmax;
    j["n"] = c.n;
    j["function"] = c.function;
    j["amax"] = c.amax;
    j["comoving"] = c.comoving;
    j["fourier"] = c.fourier;
    j["poison_branch"] = c.poison_branch;
    j["verify_v"] = c.verify_v;
    j["suites"] = c.suites;
    j["state"] = c.state;
    return j;
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline RunConfig run_config_from_json(const nlohmann::ordered_json& j) {
    RunConfig c;
    try {
        for (const auto& [key, val] : j.items()) {
            if (key == "command") c.command = val.get<std::string>();
            else if (key == "v") c.v = val.get<double>();
            else if (key == "times") c.times = val.get<std::vector<double>>();
            else if (key == "xmin") c.xmin = val.get<double>();
            else if (key == "xmax") c.xmax = val.get<double>();
            else if (key == "nx") c.nx = val.get<std::size_t>();
            else if (key == "frame") c.frame = parse_frame(val.get<std::string>());
            else if (key == "profile") c.profile = val.get<std::string>();
            else if (key == "oracle") c.oracle = val.get<bool>();
            else if (key == "format") c.format = parse_format(val.get<std::string>());
            else if (key == "out") c.out = val.get<std::string>();
            else if (key == "tol") c.tol = val.get<double>();
            else if (key == "kmax") c.kmax = val.get<double>();
            else if (key == "n") c.n = val.get<std::size_t>();
            else if (key == "function") c.function = val.get<std::string>();
            else if (key == "amax") c.amax = val.get<long>();
            else if (key == "comoving") c.comoving = val.get<bool>();
            else if (key == "fourier") c.fourier = val.get<bool>();
            else if (key == "poison_branch") c.poison_branch = val.get<bool>();
            else if (key == "verify_v") c.verify_v = val.get<std::vector<double>>();
            else if (key == "suites") c.suites = val.get<std::vector<std::string>>();
            else if (key == "state") c.state = val.get<std::string>();
            else throw input_error("config: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("config: ") + e.what());
    }
    return c;
}

inline std::string serialize_run_config(const RunConfig& c) { return to_json(c).dump(2) + "\n"; }

inline RunConfig parse_run_config(const std::string& text) {
    try {
        return run_config_from_json(nlohmann::ordered_json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("config: ") + e.what());
    }
}

} // namespace boostdiff

#endif
