#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ffdioph/experiment.hpp"
#include "ffdioph/transference.hpp"

using namespace ffdioph;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) out.push_back(part);
    return out;
}

std::vector<unsigned> parse_modulus(const std::string& s) {
    std::vector<unsigned> out;
    if (s.empty()) return out;
    for (const auto& p : split(s, ',')) out.push_back(static_cast<unsigned>(std::stoul(p)));
    return out;
}

LaurentVec parse_vec(const std::string& s, const Field& f) {
    LaurentVec v;
    for (const auto& p : split(s, '|')) v.push_back(parse_laurent(p, f));
    return v;
}

/// Matrix file path, or a literal with rows split by ';' and entries by '|'.
LaurentMat parse_matrix_arg(const std::string& arg, Field& f) {
    if (std::filesystem::is_regular_file(arg)) {
        MatrixFile mf = parse_matrix_file(read_file(arg));
        f = mf.field;
        return mf.values;
    }
    std::vector<LaurentVec> rows;
    for (const auto& r : split(arg, ';')) rows.push_back(parse_vec(r, f));
    return LaurentMat::from_rows(rows);
}

Rational parse_fraction(const std::string& s) {
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw UsageError("bad fraction '" + s + "'");
    }
}

/// "veronese:<n>" or a map file.
PolyMap load_map(const std::string& spec, const Field& f) {
    if (spec.rfind("veronese:", 0) == 0) return PolyMap::veronese(f, std::stoul(spec.substr(9)));
    PolyMap m = parse_map_file(read_file(spec));
    if (m.field->q() != f->q()) throw UsageError("map file field differs from --q");
    return m;
}

Json ext_json(const ExtRational& r) { return format_ext(r); }

Json estimate_json(const std::optional<ExponentEstimate>& e) {
    if (!e) return nullptr;
    Json j;
    j["omega_lower"] = ext_json(e->omega_lower);
    j["omega_hat_window"] = e->omega_hat_window ? ext_json(*e->omega_hat_window) : Json(nullptr);
    j["tau_range"] = {e->tau_min, e->tau_max};
    j["precision_limited"] = e->precision_limited;
    return j;
}

Json polys_json(const std::vector<Poly>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(format_poly(p));
    return a;
}

Json degree_json(Degree d) { return is_neg_inf(d) ? Json("-inf") : Json(d); }

Json qpow_json(const QPow& v) {
    return {{"value", v.str()}, {"coef", format_rational(v.coef)}, {"exp", format_rational(v.exp)}, {"q", v.q}};
}

Json ball_json(const BallSpec& b) {
    Json c = Json::array();
    for (const auto& x : b.center) c.push_back(format_laurent(x));
    return {{"center", c}, {"radius", b.radius_exp}};
}

struct Output {
    std::string format = "json";
    bool csv() const { return format == "csv"; }
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// --------------------------------------------------------------- commands

int run_cfrac(const Output& out, unsigned q, const std::string& modulus, const std::string& y, std::size_t max_terms) {
    const Field f = make_field_sized(q, parse_modulus(modulus));
    const CFExpansion cf = y.find('/') != std::string::npos ? cf_expand(parse_ratfn(y, f), max_terms)
                                                             : cf_expand(parse_laurent(y, f), max_terms);
    if (out.csv()) {
        std::cout << "k,a,p,q,err_deg\n";
        for (std::size_t k = 0; k < cf.a.size(); ++k)
            std::cout << k << "," << format_poly(cf.a[k]) << "," << format_poly(cf.p[k]) << "," << format_poly(cf.q[k])
                      << "," << (k < cf.err_deg.size() ? format_degree(cf.err_deg[k]) : "") << "\n";
        return kOk;
    }
    Json j;
    j["command"] = "cfrac";
    j["q"] = q;
    j["y"] = y;
    j["partial_quotients"] = polys_json(cf.a);
    Json conv = Json::array();
    for (std::size_t k = 0; k < cf.p.size(); ++k) conv.push_back({{"p", format_poly(cf.p[k])}, {"q", format_poly(cf.q[k])}});
    j["convergents"] = conv;
    Json ed = Json::array();
    for (Degree d : cf.err_deg) ed.push_back(degree_json(d));
    j["err_deg"] = ed;
    j["terminated"] = cf.terminated;
    j["stop"] = to_string(cf.stop);
    emit(j);
    return kOk;
}

int run_exponent(const Output& out, unsigned q, const std::string& Yarg, const std::string& theta, int tau_max,
                 std::optional<int> tau_min) {
    Field f = make_field(q);
    const LaurentMat Y = parse_matrix_arg(Yarg, f);
    std::optional<LaurentVec> th;
    if (!theta.empty()) {
        th = parse_vec(theta, f);
        if (th->size() != Y.rows) throw UsageError("theta needs one entry per row of Y");
    }
    const BestProfile prof = best_profile(Y, th, tau_max);
    if (out.csv()) {
        std::cout << format_profile_csv(prof);
        return kOk;
    }
    Json j;
    j["command"] = "exponent";
    j["m"] = prof.m;
    j["n"] = prof.n;
    j["inhomogeneous"] = th.has_value();
    Json rows = Json::array();
    for (const auto& e : prof.entries)
        rows.push_back({{"tau", e.tau}, {"L", degree_json(e.L)}, {"exact", e.exact}, {"p", polys_json(e.p)}, {"q", polys_json(e.q)}});
    j["profile"] = rows;
    try {
        j["estimate"] = estimate_json(omega_estimate(prof, tau_min));
    } catch (const AllFlagged&) {
        j["estimate"] = nullptr;
    }
    emit(j);
    return kOk;
}

/// Instance file: a line "t=t1,...,tk" then a matrix file.
int run_dirichlet(const Output& out, const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line, rest;
    std::optional<std::vector<Degree>> t;
    while (std::getline(in, line)) {
        const auto s = std::string(detail::strip_parens(line));
        if (!t && s.rfind("t=", 0) == 0) {
            t.emplace();
            for (const auto& p : split(s.substr(2), ',')) t->push_back(std::stoll(p));
            continue;
        }
        rest += line + "\n";
    }
    if (!t) throw UsageError("instance file needs a line t=t1,...,tk");
    MatrixFile mf = parse_matrix_file(rest);
    const DirichletInstance inst{mf.values, *t};
    const ApproxSolution s = dirichlet_solve(inst);
    const bool ok = satisfies_dirichlet(inst, s);
    if (out.csv()) {
        std::cout << "kind,index,value,err_deg\n";
        for (std::size_t i = 0; i < s.p.size(); ++i)
            std::cout << "p," << i << "," << format_poly(s.p[i]) << "," << format_degree(s.err_deg[i]) << "\n";
        for (std::size_t j = 0; j < s.q.size(); ++j) std::cout << "q," << j << "," << format_poly(s.q[j]) << ",\n";
    } else {
        Json j;
        j["command"] = "dirichlet";
        j["p"] = polys_json(s.p);
        j["q"] = polys_json(s.q);
        Json ed = Json::array();
        for (Degree d : s.err_deg) ed.push_back(degree_json(d));
        j["err_deg"] = ed;
        j["q_deg"] = degree_json(s.q_deg);
        j["satisfied"] = ok;
        emit(j);
    }
    return ok ? kOk : kViolation;
}

struct GoodArgs {
    unsigned q = 2;
    std::string map;
    std::string alpha;
    int N = 6;
    std::string C;
    std::string center;
    Degree radius = 0;
    std::string c0 = "0";
    std::string coeffs;
    int sub_depth = 0;
    std::size_t nonplanar = 0;
    std::optional<std::uint64_t> seed;
};

int run_goodcheck(const Output& out, const GoodArgs& a) {
    const Field f0 = make_field(a.q);
    const PolyMap m = load_map(a.map, f0);
    const Field& f = m.field;
    BallSpec B{a.center.empty() ? LaurentVec(m.d, Laurent(f)) : parse_vec(a.center, f), a.radius};
    if (B.center.size() != m.d) throw UsageError("center needs d entries");
    const LaurentVec c = a.coeffs.empty() ? LaurentVec(m.n(), Laurent::one(f)) : parse_vec(a.coeffs, f);
    if (c.size() != m.n()) throw UsageError("coefficients need one entry per component");
    GoodOptions opts;
    opts.sub_depth = a.sub_depth;
    if (!a.C.empty()) opts.C = parse_fraction(a.C);
    if (a.nonplanar && !a.seed) throw UsageError("--nonplanar needs --seed");
    const GoodReport rep = good_constants(m, parse_laurent(a.c0, f), c, B, a.N, parse_fraction(a.alpha), opts);
    std::optional<NonplanarityResult> np;
    if (a.nonplanar) np = nonplanarity_check(m, B, a.nonplanar, *a.seed);
    if (out.csv()) {
        std::cout << "radius,norm,level,in_set,in_ball,value\n";
        for (const auto& t : rep.tests)
            std::cout << t.ball.radius_exp << "," << t.norm << "," << t.level << "," << t.in_set << "," << t.in_ball << ","
                      << t.value.str() << "\n";
    } else {
        auto test_json = [](const GoodTest& t) {
            return Json{{"ball", ball_json(t.ball)}, {"norm", t.norm},     {"level", t.level},
                        {"in_set", t.in_set},        {"in_ball", t.in_ball}, {"value", qpow_json(t.value)}};
        };
        Json j;
        j["command"] = "goodcheck";
        j["q"] = rep.q;
        j["alpha"] = format_rational(rep.alpha);
        j["alpha_units"] = "ln q";
        j["c_min"] = qpow_json(rep.c_min);
        if (opts.C) j["C"] = format_rational(*opts.C);
        j["cells"] = rep.cells;
        j["ambiguous"] = rep.ambiguous;
        j["inconclusive"] = rep.inconclusive;
        j["balls_tested"] = rep.balls_tested;
        j["balls_skipped"] = rep.balls_skipped;
        Json ts = Json::array(), vs = Json::array();
        for (const auto& t : rep.tests) ts.push_back(test_json(t));
        for (const auto& t : rep.violations) vs.push_back(test_json(t));
        j["tests"] = ts;
        j["violations"] = vs;
        if (np) {
            Json pts = Json::array();
            for (const auto& p : np->points) {
                Json v = Json::array();
                for (const auto& x : p) v.push_back(format_laurent(x));
                pts.push_back(v);
            }
            j["nonplanar"] = {{"found", np->found}, {"trials", np->trials}, {"points", pts},
                              {"det", np->det ? Json(format_poly(*np->det)) : Json(nullptr)}};
        }
        emit(j);
    }
    return rep.violations.empty() ? kOk : kViolation;
}

Json bz_json(const BZReport& r) {
    return {{"X_theta", estimate_json(r.X_theta)},     {"Xt", estimate_json(r.Xt)},
            {"first", to_string(r.first)},             {"second", to_string(r.second)},
            {"trivial", to_string(r.trivial)},         {"tol", format_rational(r.tol)},
            {"violated", r.violated()}};
}

Json dyson_side_json(const DysonSide& s) {
    return {{"estimate", estimate_json(s.est)},
            {"ratio_end", s.ratio_end ? ext_json(*s.ratio_end) : Json(nullptr)},
            {"lower_end", s.lower_end ? Json(format_rational(*s.lower_end)) : Json(nullptr)},
            {"tol_one", format_rational(s.tol_one)},
            {"tol_far", format_rational(s.tol_far)},
            {"class", to_string(s.cls)}};
}

Json dyson_json(const DysonReport& r) {
    return {{"y", dyson_side_json(r.y)},
            {"yt", dyson_side_json(r.yt)},
            {"biconditional", to_string(r.biconditional)},
            {"trivial", to_string(r.trivial)}};
}

struct RandomArgs {
    std::size_t count = 0;
    std::optional<std::uint64_t> seed;
    std::size_t m = 1, n = 2;
};

LaurentMat random_matrix(const Field& f, std::size_t m, std::size_t n, std::size_t digits, std::uint64_t seed,
                         std::size_t index) {
    const LaurentVec v = sample_point(f, m * n, digits, seed, index);
    LaurentMat X{m, n, v};
    return X;
}

int run_bz(const Output& out, unsigned q, const std::string& Yarg, const std::string& theta, int tau_max,
           const std::string& tol, const RandomArgs& ra) {
    Field f = make_field(q);
    const std::optional<Rational> t = tol.empty() ? std::nullopt : std::optional<Rational>(parse_fraction(tol));
    std::vector<BZReport> reps;
    if (ra.count) {
        if (!ra.seed) throw UsageError("--random needs --seed");
        const auto digits = static_cast<std::size_t>((std::max(ra.m, ra.n) + 1) * static_cast<std::size_t>(tau_max) + 8);
        for (std::size_t i = 0; i < ra.count; ++i) {
            const LaurentMat X = random_matrix(f, ra.m, ra.n, digits, *ra.seed, 2 * i);
            const LaurentVec th = sample_point(f, ra.m, digits, *ra.seed, 2 * i + 1);
            reps.push_back(check_bz(X, th, tau_max, t));
        }
    } else {
        if (Yarg.empty() || theta.empty()) throw UsageError("bz needs --Y and --theta, or --random with --seed");
        const LaurentMat X = parse_matrix_arg(Yarg, f);
        reps.push_back(check_bz(X, parse_vec(theta, f), tau_max, t));
    }
    bool bad = false;
    for (const auto& r : reps) bad |= r.violated();
    if (out.csv()) {
        std::cout << "instance,first,second,trivial,omega_lower,omega_hat_window,omega_lower_t,omega_hat_window_t\n";
        for (std::size_t i = 0; i < reps.size(); ++i) {
            const auto& r = reps[i];
            auto lo = [](const std::optional<ExponentEstimate>& e) { return e ? format_ext(e->omega_lower) : ""; };
            auto win = [](const std::optional<ExponentEstimate>& e) {
                return e && e->omega_hat_window ? format_ext(*e->omega_hat_window) : "";
            };
            std::cout << i << "," << to_string(r.first) << "," << to_string(r.second) << "," << to_string(r.trivial) << ","
                      << lo(r.X_theta) << "," << win(r.X_theta) << "," << lo(r.Xt) << "," << win(r.Xt) << "\n";
        }
    } else {
        Json j;
        j["command"] = "transfer bz";
        j["tau_max"] = tau_max;
        Json a = Json::array();
        for (const auto& r : reps) a.push_back(bz_json(r));
        j["instances"] = a;
        j["violations"] = std::count_if(reps.begin(), reps.end(), [](const BZReport& r) { return r.violated(); });
        emit(j);
    }
    return bad ? kViolation : kOk;
}

int run_dyson(const Output& out, unsigned q, const std::string& y, int tau_max, const RandomArgs& ra) {
    const Field f = make_field(q);
    std::vector<DysonReport> reps;
    if (ra.count) {
        if (!ra.seed) throw UsageError("--random needs --seed");
        const auto digits = static_cast<std::size_t>((ra.n + 1) * static_cast<std::size_t>(tau_max) + 8);
        for (std::size_t i = 0; i < ra.count; ++i) reps.push_back(check_dyson(sample_point(f, ra.n, digits, *ra.seed, i), tau_max));
    } else {
        if (y.empty()) throw UsageError("dyson needs --y, or --random with --seed");
        reps.push_back(check_dyson(parse_vec(y, f), tau_max));
    }
    auto violated = [](const DysonReport& r) {
        return r.biconditional == CheckStatus::Violated || r.trivial == CheckStatus::Violated;
    };
    const bool bad = std::any_of(reps.begin(), reps.end(), violated);
    if (out.csv()) {
        std::cout << "instance,class_y,class_yt,biconditional,trivial\n";
        for (std::size_t i = 0; i < reps.size(); ++i)
            std::cout << i << "," << to_string(reps[i].y.cls) << "," << to_string(reps[i].yt.cls) << ","
                      << to_string(reps[i].biconditional) << "," << to_string(reps[i].trivial) << "\n";
    } else {
        Json j;
        j["command"] = "transfer dyson";
        j["tau_max"] = tau_max;
        Json a = Json::array();
        for (const auto& r : reps) a.push_back(dyson_json(r));
        j["instances"] = a;
        j["violations"] = std::count_if(reps.begin(), reps.end(), violated);
        emit(j);
    }
    return bad ? kViolation : kOk;
}

struct SetArgs {
    unsigned q = 2;
    std::string map = "veronese:1";
    std::string theta = "0";
    std::string center;
    Degree radius = -1;
    std::string omega = "2";
    int t = 1;
    int N = 8;
    std::string C = "1";
    std::string alpha0 = "1";
};

SetFamilyConfig set_config(const SetArgs& a) {
    const PolyMap m = load_map(a.map, make_field(a.q));
    const Field& f = m.field;
    BallSpec V{a.center.empty() ? LaurentVec(m.d, Laurent(f)) : parse_vec(a.center, f), a.radius};
    if (V.center.size() != m.d) throw UsageError("center needs d entries");
    SetFamilyConfig c(m, V, parse_laurent(a.theta, f));
    c.omega = parse_fraction(a.omega);
    c.t = a.t;
    c.N = a.N;
    c.C = parse_fraction(a.C);
    c.alpha0 = parse_fraction(a.alpha0);
    return c;
}

Json violations_json(const std::vector<SetViolation>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back({{"what", v.what}, {"cell", v.cell}, {"word", v.word}});
    return a;
}

int run_intersection(const Output& out, const SetArgs& a) {
    const IntersectionReport r = verify_intersection(set_config(a));
    if (out.csv()) {
        std::cout << "what,cell,word\n";
        for (const auto& v : r.violations) std::cout << v.what << "," << v.cell << "," << v.word << "\n";
    } else {
        emit({{"command", "transfer intersection"},
              {"level", r.level},
              {"alphas", r.alphas},
              {"pairs", r.pairs},
              {"nonempty_pairs", r.nonempty_pairs},
              {"same_q_pairs", r.same_q_pairs},
              {"undecided_cells", r.undecided_cells},
              {"violations", violations_json(r.violations)},
              {"ok", r.ok()}});
    }
    return r.ok() ? kOk : kViolation;
}

int run_contraction(const Output& out, const SetArgs& a) {
    const ContractionReport r = verify_contraction(set_config(a));
    if (out.csv()) {
        std::cout << "alpha,radius,cells_5B,cells_5B_I,undecided_5B,ratio,holds,holds_five,margin\n";
        for (const auto& b : r.balls)
            std::cout << b.alpha << "," << b.ball.radius_exp << "," << b.cells_5B << "," << b.cells_5B_I << ","
                      << b.undecided_5B << "," << format_rational(b.ratio) << "," << b.holds << "," << b.holds_five << ","
                      << b.margin << "\n";
    } else {
        Json as = Json::array();
        for (const auto& x : r.alphas)
            as.push_back({{"alpha", format_alpha(x.alpha)}, {"subset_ok", x.subset_ok}, {"empty", x.empty},
                          {"balls", x.balls}, {"inter1", x.inter1}, {"inter2", x.inter2}, {"inter3", x.inter3}});
        Json bs = Json::array();
        for (const auto& b : r.balls)
            bs.push_back({{"alpha", b.alpha},
                          {"ball", ball_json(b.ball)},
                          {"cells_5B", b.cells_5B},
                          {"cells_5B_I", b.cells_5B_I},
                          {"undecided_5B", b.undecided_5B},
                          {"ratio", format_rational(b.ratio)},
                          {"holds", b.holds},
                          {"holds_five", b.holds_five},
                          {"boundary_witnessed", b.boundary_witnessed},
                          {"margin", b.margin}});
        emit({{"command", "transfer contraction"},
              {"level_omega", r.level_omega},
              {"level_plus", r.level_plus},
              {"k_t", qpow_json(r.k_t)},
              {"k_t_five", qpow_json(r.k_t_five)},
              {"summability_ratio", qpow_json(r.summability_ratio)},
              {"summable", r.summable},
              {"subset_failures", r.subset_failures},
              {"undecided", r.undecided},
              {"alphas", as},
              {"balls", bs},
              {"violations", violations_json(r.violations)},
              {"ok", r.ok()}});
    }
    return r.ok() ? kOk : kViolation;
}

int run_extremal_cmd(Output out, const std::string& path, std::optional<std::uint64_t> seed) {
    ExperimentConfig cfg = parse_experiment_config(read_file(path));
    if (seed) cfg.seed = *seed;
    if (out.format.empty()) out.format = cfg.format;
    const ExperimentReport rep = run_extremal(cfg);
    if (out.csv()) {
        std::cout << "# ffdioph extremal csv v1\n";
        std::cout << "tau,count,median,p90\n";
        for (const auto& t : rep.quantiles)
            std::cout << t.tau << "," << t.count << "," << format_rational(t.median) << "," << format_rational(t.p90) << "\n";
        return kOk;
    }
    Json samples = Json::array();
    for (const auto& s : rep.samples) {
        Json x = Json::array();
        for (const auto& v : s.x) x.push_back(format_laurent(v));
        Json ratios = Json::array();
        for (const auto& r : s.ratios) ratios.push_back(r ? ext_json(*r) : Json(nullptr));
        samples.push_back({{"index", s.index},
                           {"x", x},
                           {"estimate", estimate_json(s.est)},
                           {"ratios", ratios},
                           {"infinite", s.infinite},
                           {"precision_excluded", s.precision_excluded}});
    }
    Json qs = Json::array();
    for (const auto& t : rep.quantiles)
        qs.push_back({{"tau", t.tau}, {"count", t.count}, {"median", format_rational(t.median)}, {"p90", format_rational(t.p90)}});
    Json comps = Json::array();
    for (const auto& c : rep.map.comps) comps.push_back(format_mpoly(c));
    emit({{"command", "extremal"},
          {"schema", 1},
          {"config",
           {{"q", cfg.q},
            {"map", comps},
            {"d", rep.map.d},
            {"theta", cfg.theta},
            {"tau_max", cfg.tau_max},
            {"precision", cfg.precision ? Json(*cfg.precision) : Json(nullptr)},
            {"digits", cfg.digits},
            {"samples", cfg.samples},
            {"seed", cfg.seed}}},
          {"infinite", rep.infinite},
          {"precision_excluded", rep.precision_excluded},
          {"quantiles", qs},
          {"samples", samples}});
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diophantine approximation over F_q((1/T))"};
    app.require_subcommand(1);
    app.fallthrough();
    Output out;
    app.add_option("--format", out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    unsigned q = 2;
    std::string modulus, y, Yarg, theta, tol, instance, config;
    std::size_t max_terms = 20;
    int tau_max = 20;
    std::optional<int> tau_min;
    std::optional<std::uint64_t> seed;

    auto* cfrac = app.add_subcommand("cfrac", "continued fraction of a Laurent series or rational function");
    cfrac->add_option("--q", q, "field size");
    cfrac->add_option("--modulus", modulus, "extension modulus c0,c1,...,1");
    cfrac->add_option("--y", y, "Laurent literal or num/den")->required();
    cfrac->add_option("--max-terms", max_terms);

    auto* expo = app.add_subcommand("exponent", "best-approximation profile and exponent estimate");
    expo->add_option("--q", q);
    expo->add_option("--Y", Yarg, "matrix file, or rows split by ';' with entries split by '|'")->required();
    expo->add_option("--theta", theta, "entries split by '|'; omit for the homogeneous profile");
    expo->add_option("--tau-max", tau_max)->check(CLI::PositiveNumber);
    expo->add_option("--tau-min", tau_min);

    auto* dir = app.add_subcommand("dirichlet", "solve a Dirichlet system");
    dir->add_option("--instance", instance, "t=... line followed by a matrix file")->required();

    GoodArgs ga;
    auto* good = app.add_subcommand("goodcheck", "measure the (C, alpha)-good constants of a map");
    good->add_option("--q", ga.q);
    good->add_option("--map", ga.map, "map file or veronese:<n>")->required();
    good->add_option("--alpha", ga.alpha, "a/b, in units of ln q")->required();
    good->add_option("-N", ga.N, "cell resolution")->required();
    good->add_option("--C", ga.C, "constant to check");
    good->add_option("--center", ga.center);
    good->add_option("--radius", ga.radius);
    good->add_option("--c0", ga.c0);
    good->add_option("--coeffs", ga.coeffs, "combination coefficients split by '|'");
    good->add_option("--sub-depth", ga.sub_depth);
    good->add_option("--nonplanar", ga.nonplanar, "random nonplanarity trials");
    good->add_option("--seed", ga.seed);

    auto* transfer = app.add_subcommand("transfer", "transference and set-family checks");
    transfer->require_subcommand(1);
    RandomArgs ra;
    auto* bz = transfer->add_subcommand("bz", "inhomogeneous transference inequalities");
    bz->add_option("--q", q);
    bz->add_option("--Y", Yarg);
    bz->add_option("--theta", theta);
    bz->add_option("--tau-max", tau_max)->check(CLI::Range(2, 1000));
    bz->add_option("--tol", tol);
    bz->add_option("--random", ra.count, "random instances");
    bz->add_option("--seed", ra.seed);
    bz->add_option("--m", ra.m);
    bz->add_option("--n", ra.n);
    auto* dy = transfer->add_subcommand("dyson", "homogeneous transference for a vector");
    dy->add_option("--q", q);
    dy->add_option("--y", y, "entries split by '|'");
    dy->add_option("--tau-max", tau_max)->check(CLI::Range(2, 1000));
    dy->add_option("--random", ra.count);
    dy->add_option("--seed", ra.seed);
    dy->add_option("--n", ra.n);
    SetArgs sa;
    auto add_set = [&](CLI::App* c) {
        c->add_option("--q", sa.q);
        c->add_option("--map", sa.map, "map file or veronese:<n>");
        c->add_option("--theta", sa.theta);
        c->add_option("--center", sa.center);
        c->add_option("--radius", sa.radius);
        c->add_option("--omega", sa.omega);
        c->add_option("--t", sa.t);
        c->add_option("-N", sa.N);
        c->add_option("--C", sa.C);
        c->add_option("--alpha0", sa.alpha0, "in units of ln q");
    };
    auto* inter = transfer->add_subcommand("intersection", "exhaustive intersection property check");
    add_set(inter);
    auto* contr = transfer->add_subcommand("contraction", "contraction property check");
    add_set(contr);

    auto* ext = app.add_subcommand("extremal", "Monte Carlo extremality experiment");
    ext->add_option("--config", config, "key = value file")->required();
    ext->add_option("--seed", seed, "overrides the config seed");
    bool format_given = false;

    try {
        app.parse(argc, argv);
        format_given = app.get_option("--format")->count() > 0;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*cfrac) return run_cfrac(out, q, modulus, y, max_terms);
        if (*expo) return run_exponent(out, q, Yarg, theta, tau_max, tau_min);
        if (*dir) return run_dirichlet(out, instance);
        if (*good) return run_goodcheck(out, ga);
        if (*bz) return run_bz(out, q, Yarg, theta, tau_max, tol, ra);
        if (*dy) return run_dyson(out, q, y, tau_max, ra);
        if (*inter) return run_intersection(out, sa);
        if (*contr) return run_contraction(out, sa);
        if (*ext) {
            Output o = out;
            if (!format_given) o.format.clear();
            return run_extremal_cmd(o, config, seed);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
