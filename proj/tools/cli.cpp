#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

namespace stringss::cli {
namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int parse_int(const std::string& s, const char* what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError(std::string("invalid ") + what + " '" + s + "'");
    return v;
}

// CLI11 takes "-2..2" for an option name; glue such values to their flag.
std::vector<std::string> glue_negative_values(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& a = args[i];
        const bool takes_value = a == "--components" || a == "--component" || a == "--k" || a == "--n" ||
                                 a == "--cutoff" || a == "--generator-cutoff";
        if (takes_value && i + 1 < args.size() && args[i + 1].size() > 1 && args[i + 1][0] == '-' &&
            std::isdigit(static_cast<unsigned char>(args[i + 1][1]))) {
            out.push_back(a + "=" + args[i + 1]);
            ++i;
        } else {
            out.push_back(a);
        }
    }
    return out;
}

struct CommonOptions {
    std::string space = "loop";
    int n = 0;
    std::string field = "q";
    std::vector<std::string> component;
    std::string components;
    int cutoff = 30;
    std::optional<int> generator_cutoff;
    std::string grading = "ordinary";
    std::string format = "text";
    std::string output;
    bool series = false;
};

void add_common(CLI::App* app, CommonOptions& o, bool with_output_options) {
    app->add_option("--space", o.space, "loop or hol")->check(CLI::IsMember({"loop", "hol", "both"}));
    app->add_option("--n", o.n, "target dimension of Pⁿ")->required();
    app->add_option("--field", o.field, "q or f<p>");
    app->add_option("--component", o.component, "one component (repeatable)");
    app->add_option("--components", o.components, "component range a..b or list a,b,c");
    app->add_option("--cutoff", o.cutoff, "largest ordinary degree");
    if (with_output_options) {
        app->add_option("--generator-cutoff", o.generator_cutoff, "largest Dyer-Lashof generator degree to build");
        app->add_option("--grading", o.grading)->check(CLI::IsMember({"ordinary", "regraded"}));
        app->add_option("--format", o.format)->check(CLI::IsMember({"text", "csv", "json"}));
        app->add_option("--output", o.output, "write to this file instead of standard output");
        app->add_flag("--series", o.series, "also emit Poincaré series");
    }
}

RunConfig to_config(const CommonOptions& o, std::vector<int> default_components) {
    RunConfig c;
    if (o.space == "both") throw ConfigError("--space both is only valid for verify --check collapse");
    c.variant = o.space == "hol" ? Variant::Hol : Variant::Loop;
    if (o.n < 1) throw ConfigError("--n must be >= 1");
    c.n = o.n;
    c.field = parse_field(o.field);
    for (const auto& s : o.component) c.components.push_back(parse_int(s, "component"));
    if (!o.components.empty()) {
        const auto more = parse_components(o.components);
        c.components.insert(c.components.end(), more.begin(), more.end());
    }
    if (c.components.empty()) c.components = std::move(default_components);
    std::sort(c.components.begin(), c.components.end());
    c.components.erase(std::unique(c.components.begin(), c.components.end()), c.components.end());
    if (c.variant == Variant::Hol)
        for (int k : c.components)
            if (k < 0) throw ConfigError("holomorphic components must be >= 0, got " + std::to_string(k));
    if (o.cutoff < 0) throw ConfigError("--cutoff must be >= 0");
    c.cutoff = o.cutoff;
    if (o.generator_cutoff && *o.generator_cutoff < 0) throw ConfigError("--generator-cutoff must be >= 0");
    c.generator_cutoff = o.generator_cutoff;
    c.grading = o.grading == "regraded" ? Grading::Regraded : Grading::Ordinary;
    c.format = o.format == "csv" ? Format::Csv : o.format == "json" ? Format::Json : Format::Text;
    if (!o.output.empty()) c.output = o.output;
    c.series = o.series;
    return c;
}

void emit(const RunConfig& c, const std::string& payload, std::ostream& out) {
    if (!c.output) {
        out << payload;
        return;
    }
    std::ofstream f(*c.output, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + *c.output + "' for writing");
    f << payload;
    f.flush();
    if (!f) throw IoError("write to '" + *c.output + "' failed");
}

std::string render(const RunConfig& c, const BettiTable& table) {
    switch (c.format) {
        case Format::Json: return render_json(table, c.series);
        case Format::Csv: return render_csv(table);
        default: return render_text(table, c.series);
    }
}

int prime_of(const RunConfig& c, const std::string& check) {
    if (c.field.is_rational()) throw ConfigError("--check " + check + " needs a prime field (f<p>)");
    return static_cast<int>(c.field.characteristic());
}

}  // namespace

Field parse_field(const std::string& spec) {
    if (spec == "q") return Field::rational();
    if (spec.size() >= 2 && spec[0] == 'f') {
        std::uint64_t p = 0;
        auto [ptr, ec] = std::from_chars(spec.data() + 1, spec.data() + spec.size(), p);
        if (ec == std::errc{} && ptr == spec.data() + spec.size()) {
            if (p < 2) throw ConfigError("field characteristic must be >= 2 in '" + spec + "'");
            return Field::prime(p);
        }
    }
    throw ConfigError("field must be 'q' or 'f<p>', got '" + spec + "'");
}

std::vector<int> parse_components(const std::string& spec) {
    std::vector<int> out;
    if (const auto dots = spec.find(".."); dots != std::string::npos) {
        const int lo = parse_int(spec.substr(0, dots), "component range");
        const int hi = parse_int(spec.substr(dots + 2), "component range");
        if (lo > hi) throw ConfigError("empty component range '" + spec + "'");
        for (int k = lo; k <= hi; ++k) out.push_back(k);
        return out;
    }
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_int(item, "component"));
    return out;
}

std::string render_json(const BettiTable& table, bool with_series) {
    nlohmann::ordered_json j;
    j["space"] = to_string(table.space.variant);
    j["n"] = table.space.n;
    j["field"] = table.space.field.name();
    j["grading"] = to_string(table.grading);
    j["cutoff"] = table.cutoff;
    auto comps = nlohmann::ordered_json::object();
    for (const auto& [k, col] : table.components) {
        auto entries = nlohmann::ordered_json::object();
        for (const auto& [d, b] : col) entries[std::to_string(d)] = b;
        comps[std::to_string(k)] = std::move(entries);
    }
    j["components"] = std::move(comps);
    if (with_series) {
        auto series = nlohmann::ordered_json::object();
        for (const auto& [k, col] : table.components) series[std::to_string(k)] = poincare_series(table, k).to_string();
        j["series"] = std::move(series);
    }
    return j.dump() + "\n";
}

std::string render_csv(const BettiTable& table) {
    std::string s = "component,degree,dimension\n";
    for (const auto& [k, col] : table.components)
        for (const auto& [d, b] : col) s += std::to_string(k) + "," + std::to_string(d) + "," + std::to_string(b) + "\n";
    return s;
}

std::string render_text(const BettiTable& table, bool with_series) {
    std::string s = "# space=" + to_string(table.space.variant) + " n=" + std::to_string(table.space.n) +
                    " field=" + table.space.field.name() + " grading=" + to_string(table.grading) +
                    " cutoff=" + std::to_string(table.cutoff) + "\n";
    for (const auto& [k, col] : table.components) {
        s += "k=" + std::to_string(k) + ":";
        for (const auto& [d, b] : col) s += " " + std::to_string(d) + ":" + std::to_string(b);
        s += "\n";
        if (with_series) s += "  P(t) = " + poincare_series(table, k).to_string() + "\n";
    }
    return s;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Homology of free and holomorphic maps from the two-sphere to complex projective space"};
    app.require_subcommand(1);

    CommonOptions compute_opts, export_opts, verify_opts;
    auto* compute = app.add_subcommand("compute", "Betti tables (and Poincaré series) per component");
    add_common(compute, compute_opts, true);
    auto* exporter = app.add_subcommand("export", "write a Betti table as CSV or JSON");
    add_common(exporter, export_opts, true);
    export_opts.format = "json";

    auto* verify = app.add_subcommand("verify", "run theorem checks");
    add_common(verify, verify_opts, false);
    std::string check = "all";
    std::optional<int> k;
    std::string reading = "printed";
    verify->add_option("--check", check)
        ->check(CLI::IsMember({"collapse", "periodicity", "dichotomy", "unit", "example62", "all"}));
    verify->add_option("--k", k, "period / unit exponent");
    verify->add_option("--reading", reading, "example62 formula reading")
        ->check(CLI::IsMember({"printed", "with-cokernel"}));

    try {
        auto args = glue_negative_values(raw_args);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        if (compute->parsed() || exporter->parsed()) {
            const bool is_export = exporter->parsed();
            auto config = to_config(is_export ? export_opts : compute_opts, {0});
            if (is_export) {
                if (config.format == Format::Text) throw ConfigError("export --format must be csv or json");
                if (!config.output) throw ConfigError("export needs --output");
            }
            const SpaceSpec space{config.n, config.field, config.variant};
            const auto table = betti_table(space, config.components, config.cutoff, config.grading,
                                           config.generator_cutoff);
            emit(config, render(config, table), out);
            return kOk;
        }

        // verify
        const bool both = verify_opts.space == "both";
        if (both && check != "collapse" && check != "all")
            throw ConfigError("--space both is only valid for the collapse check");
        auto opts = verify_opts;
        if (both) opts.space = "loop";
        const auto config = to_config(opts, {-2, -1, 0, 1, 2});
        const int n = config.n;
        std::vector<VerificationReport> reports;

        auto run_collapse = [&] {
            const int p = prime_of(config, "collapse");
            std::vector<Variant> variants;
            if (both || check == "all") variants = {Variant::Loop, Variant::Hol};
            else variants = {config.variant};
            for (auto v : variants) {
                std::vector<int> ks;
                for (int c : config.components)
                    if (v == Variant::Loop || c >= 0) ks.push_back(c);
                reports.push_back(check_collapse(n, p, v, ks, config.cutoff));
            }
        };
        auto period = [&](const std::string& name) {
            if (k) return *k;
            if (check == "all") return prime_of(config, name);
            throw ConfigError("--check " + name + " needs --k");
        };
        auto run_periodicity = [&] {
            const int p = prime_of(config, "periodicity");
            reports.push_back(check_periodicity(n, p, period("periodicity"), config.components, config.cutoff));
        };
        auto run_unit = [&] {
            const int p = prime_of(config, "unit");
            const int kk = period("unit");
            if (kk < 1) throw ConfigError("--check unit needs --k >= 1");
            reports.push_back(unit_check(n, p, kk, config.cutoff));
        };
        auto run_dichotomy = [&] {
            reports.push_back(check_dichotomy(n, config.field, config.components, config.cutoff));
        };
        auto run_example62 = [&] {
            if (config.field.characteristic() != 2) throw ConfigError("--check example62 needs --field f2");
            if (n % 2 != 0) throw ConfigError("--check example62 needs even --n");
            const auto r = reading == "printed" ? Example62Reading::Printed : Example62Reading::WithCokernel;
            reports.push_back(check_example62(n, config.components, config.cutoff, r));
        };

        if (check == "collapse") run_collapse();
        else if (check == "periodicity") run_periodicity();
        else if (check == "dichotomy") run_dichotomy();
        else if (check == "unit") run_unit();
        else if (check == "example62") run_example62();
        else {
            run_dichotomy();
            if (!config.field.is_rational()) {
                run_collapse();
                run_periodicity();
                run_unit();
                if (config.field.characteristic() == 2 && n % 2 == 0) run_example62();
            }
        }

        bool failed = false;
        for (const auto& r : reports) {
            out << r.to_string() << "\n";
            failed = failed || r.verdict == Verdict::Fail;
        }
        return failed ? kCheckFailed : kOk;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: ConfigError: " << e.what() << "\n";
        return kConfigError;
    } catch (const ConfigError& e) {
        err << "error: ConfigError: " << e.what() << "\n";
        return kConfigError;
    } catch (const CompositeCharacteristic& e) {
        err << "error: " << e.kind() << ": " << e.what() << "\n";
        return kConfigError;
    } catch (const OddN& e) {
        err << "error: " << e.kind() << ": " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        err << "error: ConfigError: " << e.what() << "\n";
        return kConfigError;
    } catch (const IoError& e) {
        err << "error: IoError: " << e.what() << "\n";
        return kIoError;
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what() << "\n";
        return kComputeError;
    }
}

}  // namespace stringss::cli
