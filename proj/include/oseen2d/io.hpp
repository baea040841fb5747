//==============================================================================
// io.hpp
// File formats:
//   * field dumps: <base>.meta (UTF-8 key = value lines: kind, N1, N2, L1, L2,
//     complex flag, component list, provenance) + <base>.bin (raw little-endian
//     64-bit floats, row-major, components concatenated, interleaved re/im for
//     complex fields);
//   * CSV: comma separated, '.' decimal, one header row, LF line endings,
//     provenance as leading '#' comment lines;
//   * config: flat "key = value" text with dotted sections, '#' comments.
// Outputs carry no timestamps: identical runs must be byte-identical.
//==============================================================================
#pragma once

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "core.hpp"
#include "dyadic.hpp"
#include "estimates.hpp"

static_assert(std::endian::native == std::endian::little, "dump format is little-endian");

namespace oseen2d::io {

//------------------------------------------------------------------------------
// Formatting: shortest round-trip decimal for doubles, fixed C locale.
//------------------------------------------------------------------------------
inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt(int x) { return std::to_string(x); }
inline std::string fmt(std::uint64_t x) { return std::to_string(x); }

//------------------------------------------------------------------------------
// Provenance block written into every artifact.
//------------------------------------------------------------------------------
struct Provenance {
    std::string config_hash = "none";
    std::string profile = DyadicProfile::id();
    std::string grid;
    std::uint64_t seed = 0;

    std::vector<std::pair<std::string, std::string>> entries() const {
        return {{"config_hash", config_hash}, {"profile", profile}, {"grid", grid}, {"seed", fmt(seed)}};
    }
};

/// FNV-1a 64-bit over the canonical config text.
inline std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

//------------------------------------------------------------------------------
// Field dumps
//------------------------------------------------------------------------------
namespace detail {

inline void write_doubles(std::ofstream& os, std::span<const double> v) {
    os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
}

inline void write_complexes(std::ofstream& os, std::span<const complex> v) {
    os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * 2 * sizeof(double)));
}

inline void write_meta(const std::string& base, const std::string& kind, const Grid2& g, bool is_complex,
                       std::span<const std::string> components, const Provenance& prov) {
    std::ofstream os(base + ".meta", std::ios::binary);
    if (!os) throw std::runtime_error("dump: cannot open " + base + ".meta");
    os << "format = oseen2d-field-dump-v1\n";
    os << "kind = " << kind << "\n";
    os << "N1 = " << g.N1 << "\nN2 = " << g.N2 << "\n";
    os << "L1 = " << fmt(g.L1) << "\nL2 = " << fmt(g.L2) << "\n";
    os << "complex = " << (is_complex ? 1 : 0) << "\n";
    os << "components = ";
    for (std::size_t i = 0; i < components.size(); ++i) os << (i ? "," : "") << components[i];
    os << "\n";
    for (auto& [k, v] : prov.entries()) os << k << " = " << v << "\n";
}

}  // namespace detail

inline void dump(const std::string& base, const ScalarField& f, const Provenance& prov) {
    std::string comps[] = {"value"};
    detail::write_meta(base, "scalar", f.grid, false, comps, prov);
    std::ofstream os(base + ".bin", std::ios::binary);
    detail::write_doubles(os, f.v);
}

inline void dump(const std::string& base, const SemiSpectralField& f, const Provenance& prov) {
    std::string comps[] = {"value"};
    detail::write_meta(base, "semispectral", f.grid, true, comps, prov);
    std::ofstream os(base + ".bin", std::ios::binary);
    detail::write_complexes(os, f.v);
}

inline void dump(const std::string& base, const VectorField& u, const Provenance& prov) {
    std::string comps[] = {"u1", "u2"};
    detail::write_meta(base, "vector", u.grid(), false, comps, prov);
    std::ofstream os(base + ".bin", std::ios::binary);
    detail::write_doubles(os, u.u1.v);
    detail::write_doubles(os, u.u2.v);
}

inline void dump(const std::string& base, const TensorForcing& F, const Provenance& prov) {
    std::string comps[] = {"F11", "F12", "F21", "F22"};
    detail::write_meta(base, "tensor", F.grid(), false, comps, prov);
    std::ofstream os(base + ".bin", std::ios::binary);
    for (int c = 0; c < 4; ++c) detail::write_doubles(os, F.comp(c).v);
}

struct DumpHeader {
    std::string kind;
    Grid2 grid;
    bool is_complex = false;
    std::vector<std::string> components;
};

inline DumpHeader read_meta(const std::string& base) {
    std::ifstream is(base + ".meta");
    if (!is) throw std::runtime_error("load: cannot open " + base + ".meta");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            s.erase(0, s.find_first_not_of(ws));
            auto e = s.find_last_not_of(ws);
            s.erase(e == std::string::npos ? 0 : e + 1);
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    DumpHeader h;
    h.kind = kv.at("kind");
    h.grid = Grid2(std::stod(kv.at("L1")), std::stoi(kv.at("N1")), std::stod(kv.at("L2")), std::stoi(kv.at("N2")));
    h.is_complex = kv.at("complex") == "1";
    std::stringstream ss(kv.at("components"));
    std::string tok;
    while (std::getline(ss, tok, ',')) h.components.push_back(tok);
    return h;
}

inline std::vector<double> read_payload(const std::string& base, std::size_t expected_doubles) {
    std::ifstream is(base + ".bin", std::ios::binary);
    if (!is) throw std::runtime_error("load: cannot open " + base + ".bin");
    std::vector<double> v(expected_doubles);
    is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (static_cast<std::size_t>(is.gcount()) != expected_doubles * sizeof(double))
        throw std::runtime_error("load: payload of " + base + ".bin shorter than the header promises");
    return v;
}

inline TensorForcing load_tensor(const std::string& base) {
    DumpHeader h = read_meta(base);
    if (h.kind != "tensor")
        throw std::runtime_error("load_tensor: expected kind=tensor in " + base + ".meta, found " + h.kind);
    std::vector<double> payload = read_payload(base, 4 * h.grid.size());
    TensorForcing F(h.grid);
    for (int c = 0; c < 4; ++c)
        std::copy_n(payload.begin() + static_cast<std::ptrdiff_t>(c * h.grid.size()), h.grid.size(),
                    F.comp(c).v.begin());
    return F;
}

//------------------------------------------------------------------------------
// CSV writer
//------------------------------------------------------------------------------
class Csv {
  public:
    Csv(const std::filesystem::path& path, const Provenance& prov, std::span<const std::string> header)
        : os_(path, std::ios::binary) {
        if (!os_) throw std::runtime_error("csv: cannot open " + path.string());
        for (auto& [k, v] : prov.entries()) os_ << "# " << k << " = " << v << "\n";
        for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
        os_ << "\n";
    }

    void row(std::span<const std::string> cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
        os_ << "\n";
    }

  private:
    std::ofstream os_;
};

//------------------------------------------------------------------------------
// Config: flat key = value with dotted sections.
//------------------------------------------------------------------------------
class Config {
  public:
    static Config parse_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("config: cannot open " + path);
        std::stringstream ss;
        ss << is.rdbuf();
        return parse_text(ss.str(), path);
    }

    static Config parse_text(const std::string& text, const std::string& origin = "<memory>") {
        Config c;
        c.text_ = text;
        std::stringstream ss(text);
        std::string line;
        int lineno = 0;
        while (std::getline(ss, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string s) {
                const char* ws = " \t\r";
                s.erase(0, s.find_first_not_of(ws));
                auto e = s.find_last_not_of(ws);
                s.erase(e == std::string::npos ? 0 : e + 1);
                return s;
            };
            std::string t = trim(line);
            if (t.empty()) continue;
            auto eq = t.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": expected 'key = value', got '" + t + "'");
            std::string key = trim(t.substr(0, eq)), val = trim(t.substr(eq + 1));
            if (key.empty())
                throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": empty key");
            c.kv_[key] = val;
            c.lines_[key] = lineno;
            c.origin_ = origin;
        }
        return c;
    }

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string get_string(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw std::runtime_error(origin_ + ": missing required key '" + key + "'");
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& dflt) const {
        auto it = kv_.find(key);
        return it == kv_.end() ? dflt : it->second;
    }

    double get_double(const std::string& key) const { return to_double(key, get_string(key)); }
    double get_double(const std::string& key, double dflt) const {
        return has(key) ? get_double(key) : dflt;
    }

    int get_int(const std::string& key) const {
        double d = get_double(key);
        int i = static_cast<int>(std::lround(d));
        if (static_cast<double>(i) != d) fail(key, "expected an integer");
        return i;
    }
    int get_int(const std::string& key, int dflt) const { return has(key) ? get_int(key) : dflt; }

    std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const {
        if (!has(key)) return dflt;
        return std::stoull(get_string(key));
    }

    std::vector<double> get_list(const std::string& key) const {
        std::vector<double> out;
        std::stringstream ss(get_string(key));
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(to_double(key, tok));
        if (out.empty()) fail(key, "empty list");
        return out;
    }

    std::vector<int> get_int_list(const std::string& key) const {
        std::vector<int> out;
        for (double d : get_list(key)) {
            int i = static_cast<int>(std::lround(d));
            if (static_cast<double>(i) != d) fail(key, "expected integers");
            out.push_back(i);
        }
        return out;
    }

    /// Keys actually present, for unknown-key diagnostics.
    std::vector<std::string> keys() const {
        std::vector<std::string> out;
        for (auto& [k, v] : kv_) out.push_back(k);
        return out;
    }

    int line_of(const std::string& key) const {
        auto it = lines_.find(key);
        return it == lines_.end() ? 0 : it->second;
    }

    const std::string& origin() const { return origin_; }
    const std::string& text() const { return text_; }
    std::string hash() const { return fnv1a_hex(text_); }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw std::runtime_error(origin_ + ":" + std::to_string(line_of(key)) + ": key '" + key + "': " + what);
    }

  private:
    double to_double(const std::string& key, const std::string& s) const {
        if (s == "inf") return p_inf;
        try {
            std::size_t pos = 0;
            double d = std::stod(s, &pos);
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos != s.size()) throw std::invalid_argument(s);
            return d;
        } catch (const std::exception&) {
            fail(key, "cannot parse number '" + s + "'");
        }
    }

    std::map<std::string, std::string> kv_;
    std::map<std::string, int> lines_;
    std::string origin_ = "<none>";
    std::string text_;
};

//------------------------------------------------------------------------------
// Gate-constant summary: machine-readable key = value, consumed by solve --gate.
//------------------------------------------------------------------------------
inline void save_gate_constant(const std::string& path, const estimates::GateConstant& gc,
                               const Provenance& prov) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_gate_constant: cannot open " + path);
    os << "format = oseen2d-gate-constant-v1\n";
    os << "c0 = " << fmt(gc.c0) << "\n";
    os << "linear_sup = " << fmt(gc.linear_sup) << "\n";
    os << "bilinear_sup = " << fmt(gc.bilinear_sup) << "\n";
    os << "safety_factor = " << fmt(gc.safety_factor) << "\n";
    os << "ensemble_seed = " << gc.seed << "\n";
    os << "ensemble_count = " << gc.count << "\n";
    os << "grid = " << gc.grid << "\n";
    os << "profile = " << gc.profile << "\n";
    os << "config_hash = " << prov.config_hash << "\n";
}

inline double load_gate_constant(const std::string& path) {
    Config c = Config::parse_file(path);
    double c0 = c.get_double("c0");
    if (!(c0 > 0.0)) throw std::runtime_error("load_gate_constant: c0 must be positive in " + path);
    return c0;
}

}  // namespace oseen2d::io
