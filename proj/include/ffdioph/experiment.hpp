#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ffdioph/diophantine.hpp"
#include "ffdioph/mpoly.hpp"

namespace ffdioph {

/// Map file: header "q=<int> d=<int>" (optional "modulus=c0,c1,..."), then one
/// component polynomial per line. Blank lines and '#' lines are skipped.
inline PolyMap parse_map_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header = false;
    unsigned q = 0;
    std::size_t d = 1;
    std::vector<unsigned> modulus;
    PolyMap m;
    while (std::getline(in, line)) {
        const auto s = detail::strip_parens(line);
        if (s.empty() || s.front() == '#') continue;
        if (!header) {
            std::istringstream h{std::string(s)};
            std::string tok;
            while (h >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) throw InvalidArgument("map file: bad header token '" + tok + "'");
                const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                try {
                    if (key == "q") {
                        q = static_cast<unsigned>(std::stoul(val));
                    } else if (key == "d") {
                        d = std::stoul(val);
                    } else if (key == "modulus") {
                        std::istringstream mv(val);
                        std::string part;
                        while (std::getline(mv, part, ',')) modulus.push_back(static_cast<unsigned>(std::stoul(part)));
                    } else {
                        throw InvalidArgument("map file: unknown header key '" + key + "'");
                    }
                } catch (const std::logic_error&) {
                    throw InvalidArgument("map file: bad value for '" + key + "'");
                }
            }
            if (q < 2 || d < 1) throw InvalidArgument("map file: header needs q and d");
            m.field = make_field_sized(q, modulus);
            m.d = d;
            header = true;
            continue;
        }
        m.comps.push_back(parse_mpoly(s, m.field, d));
    }
    if (!header) throw InvalidArgument("map file: missing header");
    if (m.comps.empty()) throw InvalidArgument("map file: no components");
    return m;
}

struct ExperimentConfig {
    unsigned q = 2;
    std::vector<unsigned> modulus;
    std::string map = "veronese";  // or a map file path
    std::size_t n = 2;
    std::size_t d = 1;
    std::string theta = "0";
    int tau_max = 20;
    /// Truncation floor applied to f(x); unset keeps f(x) exact.
    std::optional<Degree> precision;
    std::size_t samples = 200;
    std::uint64_t seed = 0;
    std::string format = "json";
    /// Coefficients drawn per coordinate.
    std::size_t digits = 60;
};

/// Flat "key = value" text; '#' starts a comment.
inline ExperimentConfig parse_experiment_config(const std::string& text) {
    ExperimentConfig c;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_seed = false;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        try {
            if (key == "q") {
                c.q = static_cast<unsigned>(std::stoul(val));
            } else if (key == "modulus") {
                std::istringstream mv(val);
                std::string part;
                while (std::getline(mv, part, ',')) c.modulus.push_back(static_cast<unsigned>(std::stoul(trim(part))));
            } else if (key == "map") {
                c.map = val;
            } else if (key == "n") {
                c.n = std::stoul(val);
            } else if (key == "d") {
                c.d = std::stoul(val);
            } else if (key == "theta") {
                c.theta = val;
            } else if (key == "tau_max") {
                c.tau_max = std::stoi(val);
            } else if (key == "precision") {
                c.precision = std::stoll(val);
            } else if (key == "samples") {
                c.samples = std::stoul(val);
            } else if (key == "seed") {
                c.seed = std::stoull(val);
                have_seed = true;
            } else if (key == "format") {
                c.format = val;
            } else if (key == "digits" || key == "N") {
                c.digits = std::stoul(val);
            } else {
                throw InvalidArgument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
            }
        } catch (const std::logic_error&) {
            throw InvalidArgument("config line " + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    if (!have_seed) throw InvalidArgument("config: seed is required");
    return c;
}

struct ExperimentSample {
    std::size_t index = 0;
    LaurentVec x;
    std::optional<ExponentEstimate> est;
    /// m(-L(tau))/(n tau) for tau = 1..tau_max; absent where the entry is flagged.
    std::vector<std::optional<ExtRational>> ratios;
    bool infinite = false;
    bool precision_excluded = false;
    bool excluded() const { return infinite || precision_excluded; }
};

struct TauQuantiles {
    int tau = 0;
    std::size_t count = 0;
    Rational median;
    Rational p90;
};

struct ExperimentReport {
    ExperimentConfig cfg;
    PolyMap map;
    std::vector<ExperimentSample> samples;
    std::vector<TauQuantiles> quantiles;
    std::size_t infinite = 0;
    std::size_t precision_excluded = 0;
};

/// Lower median and nearest-rank p90 of exact values.
inline TauQuantiles quantiles_of(int tau, std::vector<Rational> v) {
    TauQuantiles t;
    t.tau = tau;
    t.count = v.size();
    if (v.empty()) return t;
    std::sort(v.begin(), v.end());
    t.median = v[(v.size() - 1) / 2];
    t.p90 = v[(9 * v.size() + 9) / 10 - 1];
    return t;
}

inline std::vector<TauQuantiles> compute_quantiles(const std::vector<ExperimentSample>& samples, int tau_max) {
    std::vector<TauQuantiles> out;
    for (int tau = 1; tau <= tau_max; ++tau) {
        std::vector<Rational> v;
        for (const auto& s : samples) {
            if (s.excluded()) continue;
            const auto& r = s.ratios[static_cast<std::size_t>(tau - 1)];
            if (r && *r) v.push_back(**r);
        }
        out.push_back(quantiles_of(tau, std::move(v)));
    }
    return out;
}

namespace detail {

inline std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t index) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
    return std::mt19937_64(ss);
}

inline Elem uniform_elem(unsigned q, std::mt19937_64& rng) {
    const std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % q;
    while (true) {
        const std::uint64_t r = rng();
        if (r < lim) return static_cast<Elem>(r % q);
    }
}

}  // namespace detail

/// x uniform on the open unit ball of F^d, known to `digits` coefficients.
inline LaurentVec sample_point(const Field& f, std::size_t d, std::size_t digits, std::uint64_t seed, std::size_t index) {
    auto rng = detail::sample_rng(seed, index);
    LaurentVec x;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Elem> c(digits);
        for (std::size_t k = 0; k < digits; ++k) c[digits - 1 - k] = detail::uniform_elem(f->q(), rng);
        x.push_back(Laurent::exact(f, -static_cast<Degree>(digits), std::move(c)));
    }
    return x;
}

inline PolyMap experiment_map(const ExperimentConfig& cfg) {
    if (cfg.map == "veronese") {
        const Field f = make_field_sized(cfg.q, cfg.modulus);
        if (cfg.d != 1) throw InvalidArgument("veronese map needs d = 1");
        return PolyMap::veronese(f, cfg.n);
    }
    std::ifstream in(cfg.map);
    if (!in) throw InvalidArgument("cannot open map file '" + cfg.map + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    PolyMap m = parse_map_file(ss.str());
    if (m.field->q() != cfg.q) throw InvalidArgument("map file field differs from config q");
    return m;
}

inline void validate(const ExperimentConfig& cfg, std::size_t n) {
    if (cfg.tau_max < 2) throw InvalidArgument("tau_max must be at least 2");
    if (cfg.samples == 0) throw InvalidArgument("samples must be positive");
    if (cfg.digits == 0) throw InvalidArgument("digits must be positive");
    if (cfg.precision && *cfg.precision > -static_cast<Degree>(n + 1) * cfg.tau_max - 8)
        throw InvalidArgument("precision floor must be <= -(n+1)*tau_max - 8");
}

inline ExperimentSample run_sample(const PolyMap& f, const Laurent& theta, const ExperimentConfig& cfg, std::size_t index) {
    ExperimentSample s;
    s.index = index;
    s.x = sample_point(f.field, f.d, cfg.digits, cfg.seed, index);
    LaurentVec y = f.eval(s.x);
    if (cfg.precision)
        for (auto& v : y) v = v.truncated(*cfg.precision);
    const LaurentMat Y = LaurentMat::from_rows({y});
    try {
        const BestProfile prof = best_profile(Y, LaurentVec{theta}, cfg.tau_max);
        for (const auto& e : prof.entries)
            s.ratios.push_back(e.exact ? std::optional<ExtRational>(profile_ratio(e, 1, f.n())) : std::nullopt);
        s.est = omega_estimate(prof);
        s.infinite = !s.est->omega_lower.has_value();
    } catch (const PrecisionExhausted&) {
        s.precision_excluded = true;
    } catch (const AllFlagged&) {
        s.precision_excluded = true;
    }
    s.ratios.resize(static_cast<std::size_t>(cfg.tau_max));
    return s;
}

/// Inhomogeneous profiles of f(x) against theta for seeded samples x.
inline ExperimentReport run_extremal(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    rep.cfg = cfg;
    rep.map = experiment_map(cfg);
    validate(cfg, rep.map.n());
    const Laurent theta = parse_laurent(cfg.theta, rep.map.field);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        rep.samples.push_back(run_sample(rep.map, theta, cfg, i));
        rep.infinite += rep.samples.back().infinite;
        rep.precision_excluded += rep.samples.back().precision_excluded;
    }
    rep.quantiles = compute_quantiles(rep.samples, cfg.tau_max);
    return rep;
}

}  // namespace ffdioph
