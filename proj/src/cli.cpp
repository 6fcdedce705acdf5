#include "poslab/cli.hpp"

#include "poslab/bundles.hpp"
#include "poslab/error.hpp"
#include "poslab/moments.hpp"
#include "poslab/oracles.hpp"
#include "poslab/positivity.hpp"
#include "poslab/regions.hpp"
#include "poslab/serialize.hpp"
#include "poslab/user_metric.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace poslab::cli {

namespace {

using io::Json;

const std::set<std::string> kCommands = {"region", "certify", "verify", "moments", "oracle", "check"};

struct Output {
    std::string path;
    std::string format = "json";
};

void merge(Json& j, const Json& extra) {
    for (const auto& [key, value] : extra.items()) j[key] = value;
}

Json header(const std::string& command) { return {{"schema", io::kSchema}, {"command", command}}; }

Json error_json(const std::string& code, const std::string& message) {
    return {{"schema", io::kSchema}, {"error", {{"code", code}, {"message", message}}}};
}

std::string text_format(const Json& j) {
    std::ostringstream s;
    for (const auto& [key, value] : j.items()) {
        if (value.is_string())
            s << key << ": " << value.get<std::string>() << '\n';
        else
            s << key << ": " << value.dump() << '\n';
    }
    return s.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::ParamDomain, "cannot open output file '" + path + "'");
    f << text;
}

void emit(const Json& j, const Output& o, std::ostream& out) {
    std::string text;
    if (o.format == "json")
        text = io::dump(j);
    else if (o.format == "text")
        text = text_format(j);
    else
        fail(ErrorCode::ParamDomain, "format '" + o.format + "' is not available for this command");
    if (o.path.empty())
        out << text;
    else
        write_text(o.path, text);
}

std::string canonical_id(std::string s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

/// Kahler form used for normalized coordinates: the exact Fubini-Study
/// form for O(1), otherwise the curvature form of the given line bundle.
MetricField polarization_form(const std::string& id, int n) {
    if (canonical_id(id) == "o(1)") return bundles::tangent(n);
    const MetricField L = bundles::from_id(id, n);
    if (L.rank != 1) fail(ErrorCode::DimMismatch, "polarization '" + id + "' must be a line bundle");
    return curvature_form_field(L);
}

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "bad index '" + item + "' in list '" + text + "'");
        }
    }
    return out;
}

sym::MultiIndex one_based_index(const std::vector<int>& entries, int r) {
    std::vector<int> zero;
    for (int e : entries) {
        if (e < 1 || e > r) fail(ErrorCode::ParamDomain, "multi-index entries must lie in 1..r");
        zero.push_back(e - 1);
    }
    return sym::MultiIndex(zero);
}

/// Moves the subcommand to the front and splices flags from --config PATH
/// right after it, so explicit flags (parsed later, last value wins) override.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    std::optional<std::string> config;
    for (std::size_t t = 0; t < args.size(); ++t) {
        const std::string& a = args[t];
        if (a == "--config") {
            if (t + 1 >= args.size()) fail(ErrorCode::ParseError, "--config needs a path");
            config = args[++t];
        } else if (a.rfind("--config=", 0) == 0) {
            config = a.substr(9);
        } else {
            rest.push_back(a);
        }
    }
    std::string command;
    auto cmd = std::find_if(rest.begin(), rest.end(), [](const std::string& a) { return kCommands.count(a) > 0; });
    if (cmd != rest.end()) {
        command = *cmd;
        rest.erase(cmd);
    }
    std::vector<std::string> flags;
    if (config) {
        std::ifstream f(*config);
        if (!f) fail(ErrorCode::ParseError, "cannot read config file '" + *config + "'");
        nlohmann::json j;
        try {
            f >> j;
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::ParseError, std::string("config file is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) fail(ErrorCode::ParseError, "config file must hold a JSON object");
        for (const auto& [key, value] : j.items()) {
            if (key == "command") {
                if (command.empty()) command = value.get<std::string>();
                continue;
            }
            const std::string name = key.rfind("--", 0) == 0 ? key : "--" + key;
            if (value.is_boolean()) {
                if (value.get<bool>()) flags.push_back(name);
            } else if (value.is_string()) {
                flags.push_back(name);
                flags.push_back(value.get<std::string>());
            } else if (value.is_number_integer()) {
                flags.push_back(name);
                flags.push_back(std::to_string(value.get<long long>()));
            } else if (value.is_number()) {
                flags.push_back(name);
                flags.push_back(value.dump());
            } else if (value.is_array()) {
                std::string joined;
                for (const auto& v : value) joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
                flags.push_back(name);
                flags.push_back(joined);
            } else if (!value.is_null()) {
                fail(ErrorCode::ParseError, "config key '" + key + "' has an unsupported value type");
            }
        }
    }
    std::vector<std::string> out;
    if (!command.empty()) out.push_back(command);
    out.insert(out.end(), flags.begin(), flags.end());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

void add_output(CLI::App* sub, Output& o) {
    sub->add_option("--output", o.path, "Write the report to this file instead of stdout");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text", "svg"}));
}

// ---------------------------------------------------------------- region

struct RegionArgs {
    regions::TheoremParams params;
    std::string eps1 = "0", eps2 = "1", theorem = "main1", svg;
    Output out;
};

int run_region(RegionArgs& a, std::ostream& out) {
    a.params.eps1 = parse_rational(a.eps1);
    a.params.eps2 = parse_rational(a.eps2);
    a.params.theorem = regions::theorem_from_string(a.theorem);
    const regions::VanishingRegion reg = regions::theorem_region(a.params);
    if (!a.svg.empty()) write_text(a.svg, regions::render_svg(reg));
    if (a.out.format == "svg") {
        const std::string svg = regions::render_svg(reg);
        if (a.out.path.empty())
            out << svg;
        else
            write_text(a.out.path, svg);
        return 0;
    }
    Json j = header("region");
    j["params"] = io::to_json(a.params);
    merge(j, io::to_json(reg));
    j["s0"] = io::rational_json(regions::strip_width(a.params.n, reg.lambda0));
    emit(j, a.out, out);
    return 0;
}

// ---------------------------------------------------------------- certify

struct CertifyArgs {
    std::string bundle, metric, test = "griffiths", twist = "0", L = "o(1)";
    int n = 2, sym = 1, det = 0, points = 0, restarts = 32;
    double radius = 2.0;
    std::uint64_t seed = 0;
    Output out;
};

int run_certify(CertifyArgs& a, std::ostream& out) {
    if (a.bundle.empty() == a.metric.empty())
        fail(ErrorCode::ParamDomain, "exactly one of --bundle or --metric is required");
    const MetricField E = a.metric.empty() ? bundles::from_id(a.bundle, a.n) : user_metric::from_file(a.metric);
    const int n = E.base_dim;
    const int count = a.points > 0 ? a.points : (a.metric.empty() ? 50 : 100);
    const double radius = E.domain_radius ? std::min(a.radius, 0.9 * *E.domain_radius) : a.radius;
    const auto pts = sample_points(n, count, a.seed, radius);
    positivity::GriffithsOptions opts;
    opts.restarts = a.restarts;
    opts.seed = a.seed;

    Json j = header("certify");
    j["bundle"] = a.metric.empty() ? a.bundle : E.label;
    j["n"] = n;
    j["test"] = a.test;
    j["scope"] = "at all sampled points with this metric";
    if (a.test == "bounds") {
        const MetricField L = canonical_id(a.L) == "det" ? bundles::determinant(E) : bundles::from_id(a.L, n);
        j["L"] = a.L;
        j["report"] = io::to_json(positivity::boundedness_scan(E, L, pts, opts));
    } else {
        positivity::Mode mode;
        if (a.test == "griffiths")
            mode = positivity::Mode::Griffiths;
        else if (a.test == "nakano")
            mode = positivity::Mode::Nakano;
        else if (a.test == "dual" || a.test == "dual_nakano")
            mode = positivity::Mode::DualNakano;
        else
            fail(ErrorCode::ParamDomain, "--test must be griffiths, nakano, dual or bounds");
        const positivity::SymTwist spec{a.sym, a.det, to_double(parse_rational(a.twist))};
        if (spec.k < 1) fail(ErrorCode::ParamDomain, "--sym must be >= 1");
        const MetricField omega = polarization_form(a.L, n);
        j["L"] = a.L;
        j["sym"] = spec.k;
        j["det"] = spec.det_power;
        j["twist"] = a.twist;
        j["report"] = io::to_json(positivity::positivity_scan(
            mode, pts, [&](const ChartPoint& p) { return positivity::sym_twist_curvature(E, omega, p, spec); },
            opts));
    }
    emit(j, a.out, out);
    return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string what, bundle = "tpn", metric;
    int n = 2, r = 2, k = 1, m = 1, trials = 1000;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    Output out;
};

int run_verify(VerifyArgs& a, std::ostream& out) {
    Json j = header("verify");
    j["what"] = a.what;
    bool ok = true;
    if (a.what == "moments") {
        const std::size_t samples = a.samples ? a.samples : 1000000;
        if (a.r < 1 || a.k < 0) fail(ErrorCode::ParamDomain, "--r >= 1 and --k >= 0 required");
        const auto basis = sym::sym_basis(a.r, a.k);
        const auto table = moments::moment_mc_table(a.r, a.k, samples, a.seed);
        Json entries = Json::array();
        double worst = 0.0;
        for (std::size_t x = 0; x < basis.size(); ++x)
            for (std::size_t y = 0; y < basis.size(); ++y) {
                const Rational exact = moments::moment_exact({a.r, basis[x], basis[y]});
                const auto& e = table[x * basis.size() + y];
                const double diff = std::abs(e.estimate - Complex(to_double(exact), 0.0));
                double z = 0.0;
                if (diff > 1e-12 * std::max(1.0, to_double(exact)))
                    z = e.std_error > 0 ? diff / e.std_error : std::numeric_limits<double>::infinity();
                worst = std::max(worst, z);
                Json A = Json::array(), B = Json::array();
                for (int v : basis[x].entries()) A.push_back(v + 1);
                for (int v : basis[y].entries()) B.push_back(v + 1);
                entries.push_back({{"A", A},
                                   {"B", B},
                                   {"exact", io::rational_json(exact)},
                                   {"estimate", io::complex_json(e.estimate)},
                                   {"std_error", e.std_error},
                                   {"z", z}});
            }
        ok = worst <= 3.0;
        j["r"] = a.r;
        j["k"] = a.k;
        j["samples"] = samples;
        j["seed"] = a.seed;
        j["max_abs_z"] = worst;
        j["entries"] = entries;
    } else if (a.what == "lemma-linear") {
        const MetricField E = a.metric.empty() ? bundles::from_id(a.bundle, a.n) : user_metric::from_file(a.metric);
        const std::size_t samples = a.samples ? a.samples : 200000;
        const auto rep = moments::verify_lemma_linear(E, ChartPoint::origin(E.base_dim), a.k, a.m, samples, a.seed);
        ok = rep.dev_algebraic_fd <= a.tol && rep.dev_algebraic_moment <= a.tol && rep.dev_fd_moment <= a.tol &&
             rep.mc_within_3sigma;
        j["tolerance"] = a.tol;
        merge(j, io::to_json(rep));
    } else if (a.what == "estimate") {
        const auto rep = positivity::estimate_sweep(a.n, a.trials, a.seed);
        ok = rep.worst_slack >= -1e-9;
        j["n"] = a.n;
        j["seed"] = a.seed;
        merge(j, io::to_json(rep));
    } else {
        fail(ErrorCode::ParamDomain, "--what must be moments, lemma-linear or estimate");
    }
    j["pass"] = ok;
    emit(j, a.out, out);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- moments

struct MomentsArgs {
    int r = 2;
    std::string A, B;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    Output out;
};

int run_moments(MomentsArgs& a, std::ostream& out) {
    const moments::MomentQuery q{a.r, one_based_index(parse_index_list(a.A), a.r),
                                 one_based_index(parse_index_list(a.B), a.r)};
    Json j = header("moments");
    j["r"] = a.r;
    j["A"] = parse_index_list(a.A);
    j["B"] = parse_index_list(a.B);
    j["exact"] = io::rational_json(moments::moment_exact(q));
    if (a.samples > 0) {
        const auto e = moments::moment_mc(q, a.samples, a.seed);
        j["samples"] = a.samples;
        j["seed"] = a.seed;
        j["estimate"] = io::complex_json(e.estimate);
        j["std_error"] = e.std_error;
    }
    emit(j, a.out, out);
    return 0;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
    std::string kind = "grassmannian";
    int d = 3, r = 2, k = 1, n = 2, l = 0;
    Output out;
};

int run_oracle(OracleArgs& a, std::ostream& out) {
    Json j = header("oracle");
    j["kind"] = a.kind;
    Json dims = Json::array();
    if (a.kind == "grassmannian") {
        j["d"] = a.d;
        j["r"] = a.r;
        j["k"] = a.k;
        for (const auto& c : oracles::grassmannian_nonvanishing(a.d, a.r, a.k)) dims.push_back(io::to_json(c));
    } else if (a.kind == "pn") {
        j["n"] = a.n;
        j["l"] = a.l;
        for (int p = 0; p <= a.n; ++p)
            for (int q = 0; q <= a.n; ++q)
                dims.push_back(io::to_json(oracles::CohomologyDim{p, q, oracles::pn_line_cohomology(a.n, p, q, a.l), "bott"}));
    } else {
        fail(ErrorCode::ParamDomain, "--kind must be grassmannian or pn");
    }
    j["dims"] = dims;
    emit(j, a.out, out);
    return 0;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
    int n = 2, k = 1, l = 1;
    Output out;
};

int run_check(CheckArgs& a, std::ostream& out) {
    const auto reports = oracles::proposition_ex_check(a.n, a.k, a.l);
    Json j = header("check");
    j["n"] = a.n;
    j["k"] = a.k;
    j["l"] = a.l;
    Json list = Json::array();
    bool failed = false;
    for (const auto& r : reports) {
        list.push_back(io::to_json(r));
        failed = failed || r.status == oracles::Status::Fail;
    }
    j["reports"] = list;
    emit(j, a.out, out);
    return failed ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    try {
        const std::vector<std::string> args = expand_config(raw_args);

        CLI::App app{"Positivity and vanishing-region toolkit", "poslab"};
        app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        app.require_subcommand(1);

        RegionArgs region;
        auto* s_region = app.add_subcommand("region", "Vanishing region of a theorem");
        s_region->add_option("--n", region.params.n)->required();
        s_region->add_option("--r", region.params.r);
        s_region->add_option("--k", region.params.k);
        s_region->add_option("--m", region.params.m);
        s_region->add_option("--eps1", region.eps1);
        s_region->add_option("--eps2", region.eps2);
        s_region->add_option("--theorem", region.theorem);
        s_region->add_option("--svg", region.svg, "Also write an SVG drawing to this path");
        add_output(s_region, region.out);

        CertifyArgs certify;
        auto* s_certify = app.add_subcommand("certify", "Pointwise positivity or boundedness of a bundle");
        s_certify->add_option("--bundle", certify.bundle);
        s_certify->add_option("--metric", certify.metric, "User metric JSON file");
        s_certify->add_option("--n", certify.n);
        s_certify->add_option("--test", certify.test);
        s_certify->add_option("--twist", certify.twist);
        s_certify->add_option("--sym", certify.sym);
        s_certify->add_option("--det", certify.det);
        s_certify->add_option("--points", certify.points);
        s_certify->add_option("--radius", certify.radius);
        s_certify->add_option("--restarts", certify.restarts);
        s_certify->add_option("--seed", certify.seed);
        s_certify->add_option("--L", certify.L);
        add_output(s_certify, certify.out);

        VerifyArgs verify;
        auto* s_verify = app.add_subcommand("verify", "Numerical cross-checks");
        s_verify->add_option("--what", verify.what)->required();
        s_verify->add_option("--bundle", verify.bundle);
        s_verify->add_option("--metric", verify.metric);
        s_verify->add_option("--n", verify.n);
        s_verify->add_option("--r", verify.r);
        s_verify->add_option("--k", verify.k);
        s_verify->add_option("--m", verify.m);
        s_verify->add_option("--trials", verify.trials);
        s_verify->add_option("--samples", verify.samples);
        s_verify->add_option("--seed", verify.seed);
        s_verify->add_option("--tol", verify.tol);
        add_output(s_verify, verify.out);

        MomentsArgs mom;
        auto* s_moments = app.add_subcommand("moments", "Fubini-Study moment integral");
        s_moments->add_option("--r", mom.r);
        s_moments->add_option("--A", mom.A)->required();
        s_moments->add_option("--B", mom.B)->required();
        s_moments->add_option("--samples", mom.samples);
        s_moments->add_option("--seed", mom.seed);
        add_output(s_moments, mom.out);

        OracleArgs oracle;
        auto* s_oracle = app.add_subcommand("oracle", "Known cohomology dimensions");
        s_oracle->add_option("--kind", oracle.kind);
        s_oracle->add_option("--d", oracle.d);
        s_oracle->add_option("--r", oracle.r);
        s_oracle->add_option("--k", oracle.k);
        s_oracle->add_option("--n", oracle.n);
        s_oracle->add_option("--l", oracle.l);
        add_output(s_oracle, oracle.out);

        CheckArgs check;
        auto* s_check = app.add_subcommand("check", "Confront a predicted region with the oracles");
        s_check->add_option("--n", check.n);
        s_check->add_option("--k", check.k);
        s_check->add_option("--l", check.l);
        add_output(s_check, check.out);

        std::vector<const char*> argv{"poslab"};
        for (const auto& a : args) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return 0;
        } catch (const CLI::ParseError& e) {
            out << io::dump(error_json("USAGE", e.what()));
            return 2;
        }

        if (s_region->parsed()) return run_region(region, out);
        if (s_certify->parsed()) return run_certify(certify, out);
        if (s_verify->parsed()) return run_verify(verify, out);
        if (s_moments->parsed()) return run_moments(mom, out);
        if (s_oracle->parsed()) return run_oracle(oracle, out);
        if (s_check->parsed()) return run_check(check, out);
        out << io::dump(error_json("USAGE", "no subcommand"));
        return 2;
    } catch (const Error& e) {
        out << io::dump(error_json(std::string(to_string(e.code())), e.what()));
        return 2;
    } catch (const std::exception& e) {
        err << "poslab: " << e.what() << '\n';
        out << io::dump(error_json("INTERNAL", e.what()));
        return 2;
    }
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace poslab::cli
