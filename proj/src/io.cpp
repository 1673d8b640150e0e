#include "srbb/io.hpp"

#include "srbb/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace srbb::io {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw config_error("bad numeric field: '" + s + "'");
    return v;
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string header_block(const std::vector<std::pair<std::string, std::string>>& kv)
{
    std::string out;
    for (const auto& [k, v] : kv) out += "# " + k + " = " + v + "\n";
    return out;
}

namespace {

std::string potential_string(const paths::PairPotential& p)
{
    std::string kind;
    switch (p.kind) {
    case paths::PotentialKind::step_ball: kind = "step-ball"; break;
    case paths::PotentialKind::smooth_bump: kind = "smooth-bump"; break;
    case paths::PotentialKind::table: kind = "table"; break;
    }
    std::string s = kind + " " + format_double(p.strength) + " " + format_double(p.range);
    for (double v : p.values) s += " " + format_double(v);
    return s;
}

paths::PairPotential parse_potential(const std::string& s)
{
    std::istringstream in(s);
    std::string kind;
    in >> kind;
    std::string a, b;
    in >> a >> b;
    const double strength = parse_double(a);
    const double range = parse_double(b);
    if (kind == "step-ball") return paths::PairPotential::step_ball(strength, range);
    if (kind == "smooth-bump") return paths::PairPotential::smooth_bump(strength, range);
    if (kind == "table") {
        std::vector<double> values;
        std::string tok;
        while (in >> tok) values.push_back(parse_double(tok));
        return paths::PairPotential::tabulated(std::move(values), range);
    }
    throw config_error("unknown potential kind: '" + kind + "'");
}

// Header lines are "# key = value"; returns the map plus remaining lines.
struct ParsedText {
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<std::string> body;

    std::string get(const std::string& key) const
    {
        for (const auto& [k, v] : header)
            if (k == key) return v;
        throw config_error("missing header field '" + key + "'");
    }
};

ParsedText split_text(const std::string& text)
{
    ParsedText out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            std::string value = line.substr(eq + 1);
            auto trim = [](std::string& s) {
                while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
                while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
            };
            trim(key);
            trim(value);
            out.header.emplace_back(key, value);
        } else {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            out.body.push_back(line);
        }
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string serialize_gamma_table(const gamma::GammaTable& table)
{
    std::string rows;
    for (const auto& e : table.entries) {
        rows += std::to_string(e.k) + "," + format_double(e.value) + "," +
                format_double(e.std_error) + "," + std::to_string(e.n_samples) + "\n";
    }
    char checksum[32];
    std::snprintf(checksum, sizeof(checksum), "%016llx",
                  static_cast<unsigned long long>(fnv1a(rows)));

    const auto& p = table.params;
    std::string out = header_block({
        {"srbb", "gamma-table v1"},
        {"version", kCodeVersion},
        {"alpha", format_double(p.alpha)},
        {"beta", format_double(p.beta)},
        {"d", std::to_string(p.d)},
        {"M", std::to_string(p.M)},
        {"potential", potential_string(p.potential)},
        {"seed", std::to_string(p.rng.seed)},
        {"chunk_size", std::to_string(p.rng.chunk_size)},
        {"n_samples", std::to_string(table.n_samples_per_k)},
        {"checksum", checksum},
    });
    out += "k,value,std_error,n_samples\n";
    out += rows;
    return out;
}

gamma::GammaTable parse_gamma_table(const std::string& text)
{
    const ParsedText pt = split_text(text);
    if (pt.get("srbb") != "gamma-table v1") throw config_error("not a gamma table file");

    gamma::GammaTable table;
    table.params.alpha = parse_double(pt.get("alpha"));
    table.params.beta = parse_double(pt.get("beta"));
    table.params.d = std::stoi(pt.get("d"));
    table.params.M = std::stoi(pt.get("M"));
    table.params.potential = parse_potential(pt.get("potential"));
    table.params.rng.seed = std::stoull(pt.get("seed"));
    table.params.rng.chunk_size = static_cast<std::uint32_t>(std::stoul(pt.get("chunk_size")));
    table.n_samples_per_k = std::stoull(pt.get("n_samples"));

    std::string rows;
    for (std::size_t i = 0; i < pt.body.size(); ++i) {
        const std::string& line = pt.body[i];
        if (i == 0 && !line.empty() && line[0] == 'k') continue; // column header
        rows += line + "\n";
        const auto f = split_csv(line);
        if (f.size() != 4) throw config_error("bad gamma table row: '" + line + "'");
        gamma::GammaEstimate e;
        e.k = std::stoi(f[0]);
        e.value = parse_double(f[1]);
        e.std_error = parse_double(f[2]);
        e.n_samples = std::stoull(f[3]);
        table.entries.push_back(e);
    }

    char checksum[32];
    std::snprintf(checksum, sizeof(checksum), "%016llx",
                  static_cast<unsigned long long>(fnv1a(rows)));
    if (pt.get("checksum") != checksum)
        throw config_error("gamma table checksum mismatch (corrupt cache)");

    for (int k = 1; k <= table.k_max(); ++k)
        if (table.at(k).k != k) throw config_error("gamma table rows must be contiguous from 1");
    return table;
}

std::string serialize_grid_fn(const greenlab::GridFn& f)
{
    std::string rows;
    rows.reserve(f.values.size() * 20);
    for (double v : f.values) rows += format_double(v) + "\n";
    char checksum[32];
    std::snprintf(checksum, sizeof(checksum), "%016llx",
                  static_cast<unsigned long long>(fnv1a(rows)));
    std::string out = header_block({
        {"srbb", "grid-fn v1"},
        {"d", std::to_string(f.spec.d)},
        {"extent", format_double(f.spec.extent)},
        {"h", format_double(f.spec.h)},
        {"n_values", std::to_string(f.values.size())},
        {"checksum", checksum},
    });
    out += rows;
    return out;
}

greenlab::GridFn parse_grid_fn(const std::string& text)
{
    const ParsedText pt = split_text(text);
    if (pt.get("srbb") != "grid-fn v1") throw config_error("not a grid-fn file");
    greenlab::GridFn f;
    f.spec.d = std::stoi(pt.get("d"));
    f.spec.extent = parse_double(pt.get("extent"));
    f.spec.h = parse_double(pt.get("h"));
    const auto n = std::stoull(pt.get("n_values"));

    std::string rows;
    for (const auto& line : pt.body) {
        rows += line + "\n";
        f.values.push_back(parse_double(line));
    }
    char checksum[32];
    std::snprintf(checksum, sizeof(checksum), "%016llx",
                  static_cast<unsigned long long>(fnv1a(rows)));
    if (pt.get("checksum") != checksum) throw config_error("grid-fn checksum mismatch");
    if (f.values.size() != n || f.values.size() != f.spec.total_points())
        throw config_error("grid-fn value count mismatch");
    return f;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw config_error("short write to '" + path + "'");
}

bool file_exists(const std::string& path) { return std::filesystem::exists(path); }

} // namespace srbb::io
