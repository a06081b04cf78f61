#include "nonsmooth/cli.hpp"

#include "nonsmooth/certificate_io.hpp"
#include "nonsmooth/error.hpp"
#include "nonsmooth/search.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace nonsmooth::cli {

namespace {

using nlohmann::ordered_json;

// Input problems the user must fix; mapped to kMalformed.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> parse_integers(const std::string& text, const char* what) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        std::int64_t v = 0;
        const char* first = text.data() + pos;
        const char* last = text.data() + end;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (first == last || ec != std::errc{} || ptr != last) {
            throw UsageError(std::string(what) + " must be comma-separated integers, got '" +
                             text + "'");
        }
        out.push_back(v);
        pos = end + 1;
    }
    return out;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("--primes expects A..B, got '" + text + "'");
    const auto lo = parse_integers(text.substr(0, dots), "--primes");
    const auto hi = parse_integers(text.substr(dots + 2), "--primes");
    if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) {
        throw UsageError("--primes expects A..B with A <= B, got '" + text + "'");
    }
    return {lo[0], hi[0]};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

// Writes to --out when given, otherwise to the command's stream.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

bool is_input_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotPrime:
        case ErrorCode::CongruentEntries:
        case ErrorCode::OddTotal:
        case ErrorCode::ZeroEntry:
        case ErrorCode::InvalidWeight:
        case ErrorCode::NotSpin:
        case ErrorCode::SignatureNotDivisibleBy8:
        case ErrorCode::OutOfRange:
        case ErrorCode::LimitsTooSmall:
        case ErrorCode::Overflow:
        case ErrorCode::Malformed:
            return true;
        default:
            return false;
    }
}

struct ManifoldFlags {
    std::int64_t b2_plus = -1;
    std::int64_t b2_minus = -1;
    bool spin = true;

    void attach(CLI::App* cmd) {
        cmd->add_option("--b2plus", b2_plus, "b2+ of X")->required();
        cmd->add_option("--b2minus", b2_minus, "b2- of X")->required();
        cmd->add_flag("--spin,!--no-spin", spin, "X is spin (default true)");
    }
    ManifoldInvariants get() const { return make_manifold(b2_plus, b2_minus, spin); }
};

std::string format_dim(const std::optional<std::int64_t>& dim) {
    return dim ? std::to_string(*dim) : std::string("-");
}

int cmd_count_n(std::int64_t p_value, const std::string& weight, const std::string& format,
                std::ostream& out) {
    const OddPrime p(p_value);
    const auto entries = parse_integers(weight, "--weight");
    if (entries.size() != 3) throw UsageError("--weight needs three entries for count-n");
    const WeightCP2 w = validate_weight_cp2(p, {entries[0], entries[1], entries[2]});
    const std::int64_t n = lattice_count(p, w);
    if (format == "json") {
        ordered_json j;
        j["p"] = p.value();
        j["weight"] = w.a;
        j["N"] = n;
        if (family_of(w)) j["closed_form"] = closed_form_count(p, w);
        out << j.dump(2) << '\n';
    } else {
        out << n << '\n';
    }
    return kOk;
}

int cmd_fixed_points(std::int64_t p_value, const std::string& weight, std::string kind,
                     const std::string& format, std::ostream& out) {
    const OddPrime p(p_value);
    const auto entries = parse_integers(weight, "--weight");
    if (kind.empty()) kind = entries.size() == 2 ? "s4" : "cp2";
    std::vector<OrientedFixedPoint> points;
    if (kind == "s4") {
        if (entries.size() != 2) throw UsageError("an S4 weight has two entries");
        points = component_fixed_points(p, validate_weight_s4(p, {entries[0], entries[1]}));
    } else {
        if (entries.size() != 3) throw UsageError("a CP2 weight has three entries");
        const WeightCP2 w = validate_weight_cp2(p, {entries[0], entries[1], entries[2]});
        points = component_fixed_points(p, kind == "cp2bar" ? ComponentKind::CP2bar : ComponentKind::CP2, w);
    }
    if (format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& pt : points) {
            ordered_json j;
            j["source"] = to_string(pt.source);
            j["class"] = {pt.cls.first(), pt.cls.second()};
            const RotationClass rev = reverse_class(pt.cls);
            j["reverse"] = {rev.first(), rev.second()};
            arr.push_back(j);
        }
        out << arr.dump(2) << '\n';
    } else {
        for (const auto& pt : points) {
            out << to_string(pt.source) << ' ' << to_string(pt.cls) << " reverse "
                << to_string(reverse_class(pt.cls)) << '\n';
        }
    }
    return kOk;
}

int cmd_realize_check(const std::string& path, const std::string& format, std::ostream& out) {
    const ConfigurationFile file = configuration_from_json(read_file(path));
    const RealizabilityReport report = check_realizable(file.config, file.manifold);
    if (format == "json") {
        ordered_json j;
        j["realizable"] = report.realizable();
        j["arithmetic_ok"] = report.arithmetic_ok;
        j["residual_count"] = report.residual_count;
        j["chi"] = file.manifold.chi();
        if (report.matching) {
            j["matching"] = ordered_json::array();
            for (const auto& [a, b] : *report.matching) j["matching"].push_back({a, b});
        }
        j["failures"] = ordered_json::array();
        for (const auto& f : report.failures) {
            j["failures"].push_back({{"kind", to_string(f.kind)}, {"detail", f.detail}});
        }
        out << j.dump(2) << '\n';
    } else {
        out << "manifold " << to_string(file.manifold) << " at p=" << file.config.p.value() << '\n'
            << "arithmetic " << (report.arithmetic_ok ? "ok" : "failed") << ", residual "
            << report.residual_count << " fixed points, chi " << file.manifold.chi() << '\n';
        if (report.matching) {
            out << "matching of " << report.matching->size() << " pairs:";
            for (const auto& [a, b] : *report.matching) out << " (" << a << ',' << b << ')';
            out << '\n';
        }
        for (const auto& f : report.failures) out << to_string(f.kind) << ": " << f.detail << '\n';
        out << (report.realizable() ? "realizable" : "not realizable") << '\n';
    }
    return report.realizable() ? kOk : kNegative;
}

int cmd_certify(const ManifoldInvariants& x, std::int64_t p_value, Strategy strategy,
                const SearchLimits& limits, const std::string& out_path, const std::string& format,
                std::ostream& out, std::ostream& err) {
    const OddPrime p(p_value);
    const SearchOutcome o = certify(x, p, strategy, {.limits = limits});
    for (const auto& note : o.notes) err << "note: " << note << '\n';
    if (!o.found()) {
        err << "no certificate for " << to_string(x) << " at p=" << p.value() << " with "
            << to_string(strategy) << " (extremal dim " << format_dim(o.dim) << ")\n";
        return kNegative;
    }
    const Certificate& c = *o.certificate;
    const std::string text = certificate_to_json(c) + "\n";
    if (!out_path.empty()) write_file(out_path, text);
    if (format == "text" || !out_path.empty()) {
        out << "certified " << to_string(x) << " at p=" << p.value() << " via " << o.family
            << ": dim " << c.index.dim << ", " << to_string(c.verdict.kind) << " of window ("
            << c.verdict.lower << ", " << c.verdict.upper << ")"
            << (c.orientation_flipped ? ", orientation reversed" : "") << '\n';
    } else {
        out << text;
    }
    return kOk;
}

int cmd_sweep(const ManifoldInvariants& x, const std::string& primes, Strategy strategy,
              const SearchLimits& limits, bool timing, const std::string& out_path,
              const std::string& format, std::ostream& out) {
    const auto [lo, hi] = parse_range(primes);
    const auto rows = prime_sweep(x, lo, hi, strategy, {.limits = limits});
    std::ostringstream ss;
    if (format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json j;
            j["p"] = row.p;
            j["found"] = row.found;
            j["dim"] = row.dim ? ordered_json(*row.dim) : ordered_json(nullptr);
            j["family"] = row.family;
            if (timing) j["runtime_ms"] = row.runtime_ms;
            arr.push_back(j);
        }
        ss << arr.dump(2) << '\n';
    } else if (format == "text") {
        for (const auto& row : rows) {
            ss << "p=" << row.p << ' ' << (row.found ? "found" : "none") << " dim "
               << format_dim(row.dim) << ' ' << row.family << '\n';
        }
    } else {
        write_sweep_csv(ss, rows, timing);
    }
    emit(out_path, ss.str(), out);
    return kOk;
}

int cmd_verify(const std::string& path, const std::string& format, std::ostream& out) {
    const std::string text = read_file(path);
    VerificationResult result;
    try {
        result = verify_certificate(certificate_from_json(text));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Malformed) throw;
        result = {false, {{std::string(to_string(e.code())), e.what()}}};
    }
    if (format == "json") {
        ordered_json j;
        j["accepted"] = result.accepted;
        j["diagnostics"] = ordered_json::array();
        for (const auto& d : result.diagnostics) {
            j["diagnostics"].push_back({{"code", d.code}, {"detail", d.detail}});
        }
        out << j.dump(2) << '\n';
    } else {
        for (const auto& d : result.diagnostics) out << d.code << ": " << d.detail << '\n';
        out << (result.accepted ? "accepted" : "rejected") << '\n';
    }
    return result.accepted ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certificates of nonsmoothability for Z_p-actions on spin 4-manifolds",
                 "nonsmooth"};
    app.require_subcommand(1);

    std::int64_t p = 0;
    std::string weight;
    std::string kind;
    std::string format;
    std::string out_path;
    std::string strategy_name = "lemma42";
    std::string primes;
    std::string path;
    bool no_timing = false;
    SearchLimits limits;
    ManifoldFlags manifold;

    const auto formats = CLI::IsMember({"json", "csv", "text"});

    auto* count_n = app.add_subcommand("count-n", "Lattice-point count N(p, weight)");
    count_n->add_option("--p", p, "Prime p >= 5")->required();
    count_n->add_option("--weight", weight, "Three comma-separated integers")->required();
    count_n->add_option("--format", format, "Output format")->check(formats);

    auto* fixed = app.add_subcommand("fixed-points", "Fixed point classes of one model component");
    fixed->add_option("--p", p, "Prime p >= 5")->required();
    fixed->add_option("--weight", weight, "Comma-separated weight")->required();
    fixed->add_option("--kind", kind, "cp2, cp2bar or s4")
        ->check(CLI::IsMember({"cp2", "cp2bar", "s4"}));
    fixed->add_option("--format", format, "Output format")->check(formats);

    auto* realize = app.add_subcommand("realize-check", "Check a configuration file");
    realize->add_option("config", path, "Configuration JSON")->required();
    realize->add_option("--format", format, "Output format")->check(formats);

    const auto strategies = CLI::IsMember({"lemma42", "thm13", "thm14", "bounded"});
    auto* cert = app.add_subcommand("certify", "Search for a certificate at one prime");
    manifold.attach(cert);
    cert->add_option("--p", p, "Prime p >= 5")->required();
    cert->add_option("--strategy", strategy_name, "lemma42, thm13, thm14 or bounded")
        ->check(strategies);
    cert->add_option("--pool-limit", limits.pool_limit, "Weight pool bound for bounded search");
    cert->add_option("--out", out_path, "Write the certificate JSON here");
    cert->add_option("--format", format, "Output format")->check(formats);

    auto* sweep = app.add_subcommand("sweep", "Certify over a range of primes");
    manifold.attach(sweep);
    sweep->add_option("--primes", primes, "Range A..B")->required();
    sweep->add_option("--strategy", strategy_name, "lemma42, thm13, thm14 or bounded")
        ->check(strategies);
    sweep->add_option("--pool-limit", limits.pool_limit, "Weight pool bound for bounded search");
    sweep->add_flag("--no-timing", no_timing, "Leave runtime_ms empty");
    sweep->add_option("--out", out_path, "Write the table here");
    sweep->add_option("--format", format, "Output format")->check(formats);

    auto* verify = app.add_subcommand("verify", "Re-check a certificate file");
    verify->add_option("certificate", path, "Certificate JSON")->required();
    verify->add_option("--format", format, "Output format")->check(formats);

    auto* repro = app.add_subcommand("reproduce", "Recompute every published number");
    repro->add_flag("--no-timing", no_timing, "Omit elapsed times");
    repro->add_option("--out", out_path, "Write the report here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kMalformed;
    }

    try {
        const auto strategy = parse_strategy(strategy_name);
        if (*count_n) return cmd_count_n(p, weight, format, out);
        if (*fixed) return cmd_fixed_points(p, weight, kind, format, out);
        if (*realize) return cmd_realize_check(path, format, out);
        if (*cert) {
            if (format.empty()) format = "json";
            return cmd_certify(manifold.get(), p, *strategy, limits, out_path, format, out, err);
        }
        if (*sweep) {
            if (format.empty()) format = "csv";
            return cmd_sweep(manifold.get(), primes, *strategy, limits, !no_timing, out_path,
                             format, out);
        }
        if (*verify) return cmd_verify(path, format, out);
        if (*repro) {
            std::ostringstream report;
            const int failing = reproduce_report(report, !no_timing);
            emit(out_path, report.str(), out);
            return failing == 0 ? kOk : kNegative;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kMalformed;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_input_error(e.code()) ? kMalformed : kNegative;
    }
    return kMalformed;
}

}  // namespace nonsmooth::cli
