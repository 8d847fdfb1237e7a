// absnorm command-line front end.
//
// exit codes: 0 ok, 2 parse/usage, 3 domain, 4 property violation or
// inconsistency, 5 precondition

#include <absnorm/absnorm.hpp>
#include <absnorm/serialize.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace absnorm;

namespace {

enum Exit { kOk = 0, kParse = 2, kDomain = 3, kViolation = 4, kPrecondition = 5 };

struct Config {
    std::string norm;
    std::string out;
    std::string format;  // empty: command default
    std::uint64_t seed = 0;
    std::vector<std::string> tol;
    int verbose = 0;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw UsageError(std::string("invalid number in ") + what + ": '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError(std::string("empty list for ") + what);
    return out;
}

Tolerances build_tolerances(const Config& cfg) {
    Tolerances t;
    for (const std::string& kv : cfg.tol) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + kv + "'");
        double* field = tolerance_field(t, std::string_view(kv).substr(0, eq));
        if (!field) throw UsageError("unknown tolerance '" + kv.substr(0, eq) + "'");
        const std::vector<double> v = parse_list(kv.substr(eq + 1), "--tol");
        if (v.size() != 1) throw UsageError("--tol expects a single value");
        *field = v[0];
    }
    return t;
}

NormSpec load_norm(const Config& cfg) {
    if (cfg.norm.empty()) throw UsageError("--norm is required");
    try {
        return parse_norm_spec(cfg.norm);
    } catch (const ParseError& e) {
        std::ostringstream msg;
        msg << "parse error at position " << e.position() << ": " << e.what() << "\n  " << cfg.norm << "\n  "
            << std::string(e.position(), ' ') << "^";
        throw UsageError(msg.str());
    }
}

// <spec>,<dim>
FiniteSpace parse_component(const std::string& text) {
    const auto comma = text.rfind(',');
    if (comma == std::string::npos) throw UsageError("component space must read <spec>,<dim>: '" + text + "'");
    int dim = 0;
    const std::string d = text.substr(comma + 1);
    const auto res = std::from_chars(d.data(), d.data() + d.size(), dim);
    if (d.empty() || res.ec != std::errc() || res.ptr != d.data() + d.size() || dim < 1)
        throw UsageError("invalid dimension in component space '" + text + "'");
    NormSpec spec = [&] {
        try {
            return parse_norm_spec(text.substr(0, comma));
        } catch (const ParseError& e) {
            throw UsageError("component space '" + text + "': " + e.what());
        }
    }();
    if (const auto* pn = spec.as<PNorm>()) return FiniteSpace::lp(pn->p, dim);
    if (dim == 2) return FiniteSpace::plane(spec);
    throw UsageError("component space '" + text + "': only p-norms allow dimensions other than 2");
}

class Output {
public:
    explicit Output(const Config& cfg) : path_(cfg.out) {}
    void write(const std::string& text) const {
        if (path_.empty()) {
            std::fwrite(text.data(), 1, text.size(), stdout);
            return;
        }
        std::ofstream f(path_, std::ios::binary);
        if (!f) throw UsageError("cannot open output file '" + path_ + "'");
        f << text;
    }

private:
    std::string path_;
};

std::string dump(json j) { return j.dump(2) + "\n"; }

bool want_csv(const Config& cfg, bool csv_default) {
    if (cfg.format.empty()) return csv_default;
    return cfg.format == "csv";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Absolute normalised norms on the plane: boundary curves, support functionals, ball conditions"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--norm", cfg.norm, "norm spec: p:<num|inf>, mix:<l>:<spec>:<spec>, curve:x,y;...");
    app.add_option("--out", cfg.out, "write output to this file instead of stdout");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--tol", cfg.tol, "tolerance override name=value (repeatable)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app.add_flag("-v,--verbose", cfg.verbose, "more diagnostics on stderr");

    std::string point;
    auto* eval = app.add_subcommand("eval", "norm of a point");
    eval->add_option("--point", point, "x,y")->required();

    int n_boundary = 201;
    auto* boundary = app.add_subcommand("boundary", "tabulate the boundary curve on [-1,1]");
    boundary->add_option("--n", n_boundary, "number of grid points")->capture_default_str();

    std::optional<double> x0;
    std::string endpoint;
    int support_samples = kSupportSamples;
    auto* support = app.add_subcommand("support", "support functionals at (x0, f(x0)) or at an endpoint");
    auto* x0_opt = support->add_option("--x0", x0, "interior abscissa in (-1,1)");
    auto* ep_opt = support->add_option("--endpoint", endpoint, "left or right")->check(CLI::IsMember({"left", "right"}));
    x0_opt->excludes(ep_opt);
    support->add_option("--samples", support_samples, "representatives")->capture_default_str();

    int classify_grid = 200;
    auto* classify = app.add_subcommand("classify", "convexity, smoothness and BGP verdicts");
    classify->add_option("--grid", classify_grid, "sampling grid")->capture_default_str();

    std::string eps_text;
    double s_max = 0.0;
    auto* bgp = app.add_subcommand("bgp-check", "smoothness at the basis vs the ball conditions");
    bgp->add_option("--eps", eps_text, "comma-separated epsilons (default 2^-6..2^-1,1,2,8)");
    bgp->add_option("--s-max", s_max, "upper end of the s grid (default 64(1+eps))");

    std::string x_space, y_space, y_text;
    double r = 0.0;
    std::uint64_t lemma_samples = 100000;
    unsigned threads = 0;
    auto* lemma = app.add_subcommand("lemma", "sample the inclusions for X (+)_E Y");
    lemma->add_option("--X", x_space, "<spec>,<dim>")->required();
    lemma->add_option("--Y", y_space, "<spec>,<dim>")->required();
    lemma->add_option("--y", y_text, "center in Y, comma-separated")->required();
    lemma->add_option("--r", r, "radius")->required();
    lemma->add_option("--samples", lemma_samples, "sample count")->capture_default_str();
    lemma->add_option("--threads", threads, "worker threads (0: hardware)")->capture_default_str();

    std::optional<double> psi_t;
    int psi_n = 11;
    auto* psi = app.add_subcommand("psi", "psi(t) = ||(1-t, t)||");
    psi->add_option("--t", psi_t, "single t in [0,1]");
    psi->add_option("--n", psi_n, "grid size when --t is absent")->capture_default_str();

    std::size_t validate_samples = 10000;
    auto* validate = app.add_subcommand("validate", "sample the defining properties of the norm");
    validate->add_option("--samples", validate_samples, "sample count")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        const Tolerances tol = build_tolerances(cfg);
        const NormSpec spec = load_norm(cfg);
        const Output out(cfg);
        if (cfg.verbose > 0) std::cerr << "norm: " << spec.label() << "\n";
        if (cfg.verbose > 1)
            std::cerr << "tolerances: root=" << tol.root << " smooth=" << tol.smooth << " corner=" << tol.corner
                      << " strict=" << tol.strict << " collinear=" << tol.collinear << " endpoint=" << tol.endpoint
                      << " mvt=" << tol.mvt << " infinite_slope=" << tol.infinite_slope << "\n";

        if (*eval) {
            const std::vector<double> v = parse_list(point, "--point");
            if (v.size() != 2) throw UsageError("--point expects x,y");
            const double value = eval_norm(spec, {v[0], v[1]});
            if (want_csv(cfg, true))
                out.write(format17(value) + "\n");
            else
                out.write(dump({{"norm", spec.label()}, {"point", to_json(Point{v[0], v[1]})},
                                {"value", number(value)}, {"seed", cfg.seed}}));
            return kOk;
        }
        if (*boundary) {
            const auto rows = tabulate(BoundaryCurve(spec, tol), n_boundary);
            if (want_csv(cfg, true))
                out.write(to_csv(rows));
            else
                out.write(dump({{"norm", spec.label()}, {"seed", cfg.seed}, {"rows", to_json(rows)}}));
            return kOk;
        }
        if (*support) {
            if (!x0 && endpoint.empty()) throw UsageError("support needs --x0 or --endpoint");
            const BoundaryCurve curve(spec, tol);
            const SupportSet set = x0 ? support_set_interior(curve, *x0, support_samples)
                                      : support_set_endpoint(curve, endpoint == "left" ? Side::left : Side::right,
                                                             support_samples);
            json j = to_json(set);
            j["norm"] = spec.label();
            j["seed"] = cfg.seed;
            out.write(dump(j));
            return kOk;
        }
        if (*classify) {
            const ConvexityClass cc = classify_convexity(BoundaryCurve(spec, tol), classify_grid);
            const BgpVerdict bv = bgp_sum_verdict(spec, tol);
            out.write(dump({{"norm", spec.label()},
                            {"strictly_convex", std::string(to_string(cc.strictly_convex))},
                            {"strictly_monotone", std::string(to_string(cc.strictly_monotone))},
                            {"smooth_01", std::string(to_string(bv.smooth_at_01))},
                            {"smooth_10", std::string(to_string(bv.smooth_at_10))},
                            {"bgp_sum", std::string(to_string(bv.verdict))},
                            {"conditions", {{"first", std::string(to_string(bv.condition_31))},
                                            {"second", std::string(to_string(bv.condition_32))}}},
                            {"notes", bv.notes},
                            {"seed", cfg.seed}}));
            return kOk;
        }
        if (*bgp) {
            const std::vector<double> eps = eps_text.empty() ? default_epsilons() : parse_list(eps_text, "--eps");
            const CrossCheck cc = equivalence_crosscheck(spec, eps, s_max, tol);
            if (want_csv(cfg, false)) {
                std::string text = "coordinate,epsilon,s,margin\n";
                auto rows = [&](const char* name, const CoordinateCheck& c) {
                    const std::string body = margins_csv(c.witnesses);
                    std::stringstream ss(body);
                    std::string line;
                    std::getline(ss, line);  // header
                    while (std::getline(ss, line)) text += std::string(name) + "," + line + "\n";
                };
                rows("first", cc.at01);
                rows("second", cc.at10);
                out.write(text);
            } else {
                json j = to_json(cc);
                j["norm"] = spec.label();
                j["seed"] = cfg.seed;
                out.write(dump(j));
            }
            return cc.consistent == Tri::no ? kViolation : kOk;
        }
        if (*lemma) {
            const FiniteSpace X = parse_component(x_space);
            const FiniteSpace Y = parse_component(y_space);
            const std::vector<double> y = parse_list(y_text, "--y");
            if (y.size() != static_cast<std::size_t>(Y.dim()))
                throw DomainError("--y has " + std::to_string(y.size()) + " coordinates but Y has dimension " +
                                  std::to_string(Y.dim()));
            const InclusionReport rep = lemma_inclusion_verify(spec, X, Y, y, r, lemma_samples, cfg.seed, threads);
            json j = to_json(rep);
            j["norm"] = spec.label();
            j["X"] = X.label();
            j["Y"] = Y.label();
            out.write(dump(j));
            return rep.clean() ? kOk : kViolation;
        }
        if (*psi) {
            std::vector<std::pair<double, double>> rows;
            if (psi_t) {
                rows.emplace_back(*psi_t, psi_curve(spec, *psi_t));
            } else {
                if (psi_n < 2) throw DomainError("psi: --n must be at least 2");
                for (int i = 0; i < psi_n; ++i) {
                    const double t = i == psi_n - 1 ? 1.0 : static_cast<double>(i) / (psi_n - 1);
                    rows.emplace_back(t, psi_curve(spec, t));
                }
            }
            if (want_csv(cfg, true)) {
                std::string text = "t,psi\n";
                for (auto [t, v] : rows) text += format17(t) + "," + format17(v) + "\n";
                out.write(text);
            } else {
                json arr = json::array();
                for (auto [t, v] : rows) arr.push_back({{"t", number(t)}, {"psi", number(v)}});
                out.write(dump({{"norm", spec.label()}, {"seed", cfg.seed}, {"rows", arr}}));
            }
            return kOk;
        }
        if (*validate) {
            const ValidationReport rep = validate_norm(spec, validate_samples, cfg.seed);
            json j = to_json(rep);
            j["norm"] = spec.label();
            out.write(dump(j));
            return rep.passed ? kOk : kViolation;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const ParseError& e) {
        std::cerr << "error: parse error at position " << e.position() << ": " << e.what() << "\n";
        return kParse;
    } catch (const SpecError& e) {
        std::cerr << "error: invalid norm: " << e.what() << "\n";
        return kParse;
    } catch (const PreconditionError& e) {
        std::cerr << "error: precondition failed: " << e.what() << "\n";
        return kPrecondition;
    } catch (const ConcavityViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kViolation;
    } catch (const UndecidedCaseError& e) {
        std::cerr << "error: undecided:";
        for (const auto& c : e.candidates()) std::cerr << " " << c;
        std::cerr << ": " << e.what() << "\n";
        return kDomain;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    }
    return kParse;
}
