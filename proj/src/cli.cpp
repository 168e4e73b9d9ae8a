#include "isospec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "isospec/bounds.hpp"
#include "isospec/errors.hpp"
#include "isospec/holonomy.hpp"
#include "isospec/pantsgraph.hpp"
#include "isospec/spectrum.hpp"
#include "isospec/surface.hpp"
#include "isospec/transversal.hpp"
#include "isospec/verify.hpp"

namespace isospec::cli {

namespace {

struct Global {
    std::string format = "human";
    int threads = 1;
    bool machine() const { return format == "machine"; }
};

// Machine values round-trip; human values are short.
std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fixed(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string sci(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2g", x);
    return buf;
}

std::string hex16(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// "3.80e+53" -> "3.8e53"
std::string compact_exp(double log_value) {
    std::string s = format_exp(log_value, 2);
    const auto e = s.find('e');
    if (e == std::string::npos) return s;
    std::string mant = s.substr(0, e), ex = s.substr(e + 1);
    while (mant.find('.') != std::string::npos && (mant.back() == '0' || mant.back() == '.')) mant.pop_back();
    const bool neg = !ex.empty() && ex[0] == '-';
    if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) ex.erase(0, 1);
    while (ex.size() > 1 && ex[0] == '0') ex.erase(0, 1);
    return mant + "e" + (neg ? "-" : "") + ex;
}

// ---- bound ----------------------------------------------------------------

struct BoundArgs {
    int g = 0;
    int n = 0;
    std::optional<double> B;
    double I = 1.0;
};

void cmd_bound(const BoundArgs& a, const Global& gl, std::ostream& os) {
    const double B = a.B ? *a.B : min_bers_constant(a.g, a.n);
    const BoundReport r = main_bound(a.g, a.n, B, a.I);
    const auto checks = theorem13_bounds(a.g, a.n, a.I);
    if (gl.machine()) {
        os << "command=bound\n";
        os << "g=" << a.g << "\nn=" << a.n << "\nB=" << num(B) << "\nI=" << num(a.I) << '\n';
        os << "B_source=" << (a.B ? "flag" : to_string(sharpest_class(a.g, a.n))) << '\n';
        os << "graph_log=" << num(r.graph_log) << '\n';
        os << "length_log=" << num(r.length_log) << '\n';
        os << "twist_log=" << num(r.twist_log) << '\n';
        os << "total_log=" << num(r.total_log) << '\n';
        os << "total=" << format_exp(r.total_log) << '\n';
        os << "closed_form_log=" << num(r.closed_form_log) << '\n';
        for (const auto& c : checks) {
            const std::string key = std::string("class.") + to_string(c.surface_class);
            os << key << ".rhs_log=" << num(c.rhs_log) << '\n';
            os << key << ".rhs=" << compact_exp(c.rhs_log) << '\n';
            os << key << ".pass=" << (r.total_log <= c.rhs_log ? "true" : "false") << '\n';
        }
        return;
    }
    os << "Isospectral family bound for (g, n) = (" << a.g << ", " << a.n << ")\n";
    os << "  Bers constant B    " << fixed(B, 4);
    if (!a.B) os << "  (smallest table value, class " << to_string(sharpest_class(a.g, a.n)) << ")";
    os << '\n';
    os << "  systole bound I    " << fixed(a.I, 4) << '\n';
    os << "  factors (natural log):\n";
    os << "    two-to-one twists  " << fixed(std::log(2.0)) << '\n';
    os << "    pants graphs       " << fixed(r.graph_log) << '\n';
    os << "    length vectors     " << fixed(r.length_log) << '\n';
    os << "    twist vectors      " << fixed(r.twist_log) << '\n';
    os << "  total              " << format_exp(r.total_log) << "  (log " << fixed(r.total_log, 4) << ")\n";
    os << "  closed form        " << format_exp(r.closed_form_log) << "  (log " << fixed(r.closed_form_log, 4) << ")\n";
    for (const auto& c : checks) {
        os << "  ≤ " << compact_exp(c.rhs_log) << ": " << (r.total_log <= c.rhs_log ? "PASS" : "FAIL") << "  ["
           << to_string(c.surface_class) << ": " << c.label << "]\n";
    }
}

// ---- graphs ---------------------------------------------------------------

void cmd_graphs(int g, int n, const Global& gl, std::ostream& os) {
    const auto graphs = enumerate_pants_graphs(g, n);
    if (gl.machine()) {
        os << "command=graphs\ng=" << g << "\nn=" << n << "\ncount=" << graphs.size() << '\n';
        os << "count_bound_log=" << num(count_bound_log(g, n)) << '\n';
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            std::string text = serialize(graphs[i]);
            std::replace(text.begin(), text.end(), '\n', ';');
            os << "graph." << i << ".code=" << canonical_form(graphs[i]).hex() << '\n';
            os << "graph." << i << ".text=" << text << '\n';
        }
        return;
    }
    os << graphs.size() << " pants graph" << (graphs.size() == 1 ? "" : "s") << " of signature (" << g << ", " << n
       << "), count bound " << format_exp(count_bound_log(g, n)) << '\n';
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        os << "  [" << i << "] code " << canonical_form(graphs[i]).hex() << '\n';
        std::istringstream lines(serialize(graphs[i]));
        for (std::string line; std::getline(lines, line);) os << "      " << line << '\n';
    }
}

// ---- transversal ----------------------------------------------------------

struct TransversalArgs {
    std::string surface;
    std::optional<int> edge;
    std::optional<double> alpha;
    std::optional<double> delta;
    std::optional<double> B;
    std::optional<double> I;
};

void cmd_transversal(const TransversalArgs& a, const Global& gl, std::ostream& os) {
    const SurfaceFile file = load_surface(a.surface);
    const FNSurface& s = file.surface;
    std::optional<double> B = a.B, I = a.I;
    if (file.context) {
        if (!B) B = file.context->B;
        if (!I) I = file.context->I;
    }
    if (B.has_value() != I.has_value())
        fail(ErrorCode::ValidationError, "transversal: the upper bound needs both B and I");

    std::vector<int> edges;
    if (a.edge) {
        if (*a.edge < 0 || *a.edge >= s.graph.edge_count())
            fail(ErrorCode::InvalidEdge, "transversal: no edge " + std::to_string(*a.edge));
        edges.push_back(*a.edge);
    } else {
        for (int e = 0; e < s.graph.edge_count(); ++e)
            if (s.graph.edges()[e].first != s.graph.edges()[e].second) edges.push_back(e);
        if (edges.empty()) fail(ErrorCode::LoopEdge, "transversal: every edge of this surface is a loop");
    }
    if (gl.machine()) os << "command=transversal\nsurface_hash=" << hex16(surface_hash(s)) << '\n';
    for (int e : edges) {
        GluingNeighborhood nb = neighborhood(s, e);
        if (a.alpha) {
            if (!(*a.alpha >= -0.5 && *a.alpha <= 0.5))
                fail(ErrorCode::OutOfRange, "transversal: --alpha must lie in [-1/2, 1/2]");
            nb.alpha = *a.alpha;
        }
        const Perpendiculars pp = perpendiculars(nb);
        const double phi = interior_perpendicular(nb);
        const double delta = transversal_length(nb);
        const double target = a.delta ? *a.delta : delta;
        const auto twists = twists_from_transversal(nb, target);
        const std::string k = "edge." + std::to_string(e) + ".";
        if (gl.machine()) {
            os << k << "l_gamma=" << num(nb.l_gamma) << '\n' << k << "xi1=" << num(nb.xi1) << '\n'
               << k << "xi2=" << num(nb.xi2) << '\n' << k << "eta1=" << num(nb.eta1) << '\n'
               << k << "eta2=" << num(nb.eta2) << '\n' << k << "alpha=" << num(nb.alpha) << '\n'
               << k << "p=" << num(pp.p) << '\n' << k << "p_prime=" << num(pp.p_prime) << '\n'
               << k << "phi=" << num(phi) << '\n' << k << "delta=" << num(delta) << '\n';
            if (a.delta) os << k << "target=" << num(target) << '\n';
            os << k << "twists=";
            for (std::size_t i = 0; i < twists.size(); ++i) os << (i ? "," : "") << num(twists[i]);
            os << '\n';
            if (B) {
                const double ub = transversal_upper_bound(*B, *I);
                os << k << "upper_bound=" << num(ub) << '\n' << k << "within_bound=" << (delta <= ub ? "true" : "false")
                   << '\n';
            }
            continue;
        }
        os << "edge " << e << " (pants " << s.graph.edges()[e].first << " and " << s.graph.edges()[e].second
           << "), l = " << fixed(nb.l_gamma) << ", alpha = " << fixed(nb.alpha) << '\n';
        os << "  boundaries  xi1 " << fixed(nb.xi1, 4) << "  xi2 " << fixed(nb.xi2, 4) << "  eta1 " << fixed(nb.eta1, 4)
           << "  eta2 " << fixed(nb.eta2, 4) << '\n';
        os << "  p = " << fixed(pp.p) << ", p' = " << fixed(pp.p_prime) << ", phi = " << fixed(phi) << '\n';
        os << "  delta = " << fixed(delta, 10) << '\n';
        os << "  twists with delta = " << fixed(target, 10) << ": ";
        if (twists.empty()) os << "none";
        for (std::size_t i = 0; i < twists.size(); ++i) os << (i ? ", " : "{") << fixed(twists[i], 10);
        if (!twists.empty()) os << '}';
        os << '\n';
        if (B) {
            const double ub = transversal_upper_bound(*B, *I);
            os << "  3B - 4 log I + 12 log 2 = " << fixed(ub, 4) << ": " << (delta <= ub ? "PASS" : "FAIL") << '\n';
        }
    }
}

// ---- spectrum -------------------------------------------------------------

struct SpectrumArgs {
    std::string surface;
    double cutoff = 0.0;
    std::string output;
    bool systole = false;
};

void cmd_spectrum(const SpectrumArgs& a, const Global& gl, std::ostream& os) {
    const SurfaceFile file = load_surface(a.surface);
    SpectrumOptions opt;
    opt.threads = gl.threads;
    const HolonomyRep rep = build_holonomy(file.surface);
    const LengthSpectrum s = enumerate_spectrum(rep, a.cutoff, opt);
    std::optional<double> sys;
    if (a.systole) sys = systole(rep, opt);
    if (!a.output.empty()) {
        std::ofstream f(a.output);
        if (!f) fail(ErrorCode::ValidationError, "spectrum: cannot write '" + a.output + "'");
        f << export_spectrum(s);
        if (!f) fail(ErrorCode::ValidationError, "spectrum: write to '" + a.output + "' failed");
    }
    const Signature sig = s.signature;
    if (gl.machine()) {
        os << "command=spectrum\n";
        os << "g=" << sig.g << "\nn=" << sig.n << "\ncutoff=" << num(s.cutoff) << '\n';
        os << "surface_hash=" << hex16(s.surface_hash) << '\n';
        os << "relator_residual=" << num(s.relator_residual) << "\nlength_residual=" << num(s.length_residual)
           << "\ncusp_residual=" << num(s.cusp_residual) << "\nrho=" << num(s.rho) << '\n';
        os << "entries=" << s.entries.size() << '\n';
        for (std::size_t i = 0; i < s.entries.size(); ++i) {
            const auto& e = s.entries[i];
            os << "entry." << i << "=" << num(e.length) << ',' << e.multiplicity << ',' << (e.primitive ? 1 : 0) << ','
               << e.power << '\n';
        }
        if (sys) os << "systole=" << num(*sys) << '\n';
        return;
    }
    os << "Closed geodesics of length <= " << fixed(s.cutoff, 4) << ", (g, n) = (" << sig.g << ", " << sig.n << ")\n";
    os << "  residuals: relator " << sci(s.relator_residual) << ", length " << sci(s.length_residual) << ", cusp "
       << sci(s.cusp_residual) << "; covering radius " << fixed(s.rho, 4) << '\n';
    if (s.empty()) os << "  (none)\n";
    else os << "  length              mult  primitive\n";
    for (const auto& e : s.entries) {
        char line[96];
        std::snprintf(line, sizeof line, "  %-18.12f  %4d  %s\n", e.length, e.multiplicity,
                      e.primitive ? "yes" : ("power " + std::to_string(e.power)).c_str());
        os << line;
    }
    if (sys) os << "  systole " << fixed(*sys, 12) << '\n';
    for (double L : {4.0, 6.0, 8.0}) {
        if (L > s.cutoff) break;
        os << "  growth count at L = " << L << ": " << growth_count(s, L, short_geodesic_threshold())
           << " <= f(L) = " << sci(growth_rate(L, sig.g, sig.n)) << '\n';
    }
    if (!a.output.empty()) os << "  written to " << a.output << '\n';
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
    std::string suite;
    std::uint64_t seed = 1;
    int samples = 0;
    std::string spectrum;
    std::string surface;
};

void print_report(const SuiteReport& r, const Global& gl, std::ostream& os) {
    if (gl.machine()) {
        for (std::size_t i = 0; i < r.checks.size(); ++i) {
            const auto& c = r.checks[i];
            const std::string k = "suite." + r.suite + "." + std::to_string(i) + ".";
            os << k << "name=" << c.name << '\n' << k << "cases=" << c.cases << '\n' << k << "failures=" << c.failures
               << '\n' << k << "max_error=" << num(c.max_error) << '\n' << k << "tolerance=" << num(c.tolerance)
               << '\n' << k << "pass=" << (c.passed() ? "true" : "false") << '\n';
        }
        os << "suite." << r.suite << ".pass=" << (r.passed() ? "true" : "false") << '\n';
        return;
    }
    os << "suite " << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << '\n';
    for (const auto& c : r.checks) {
        os << "  " << (c.passed() ? "PASS" : "FAIL") << "  " << c.name << "  (" << c.cases << " cases";
        if (c.failures) os << ", " << c.failures << " failed";
        if (c.tolerance > 0.0) os << ", max error " << sci(c.max_error) << " <= " << sci(c.tolerance);
        os << ")";
        if (!c.note.empty()) os << "  " << c.note;
        os << '\n';
    }
}

// Returns false when some check failed.
bool cmd_verify(const VerifyArgs& a, const Global& gl, std::ostream& os) {
    std::vector<SuiteReport> reports;
    if (!a.spectrum.empty()) {
        std::ifstream f(a.spectrum);
        if (!f) fail(ErrorCode::ParseError, "cannot open spectrum file '" + a.spectrum + "'");
        std::ostringstream buf;
        buf << f.rdbuf();
        const LengthSpectrum s = parse_spectrum(buf.str());
        reports.push_back(verify_spectrum_export(s, load_surface(a.surface).surface));
    } else {
        VerifyOptions opt;
        opt.seed = a.seed;
        opt.samples = a.samples;
        opt.threads = gl.threads;
        if (a.suite == "all") {
            for (const auto& name : suite_names()) reports.push_back(run_suite(name, opt));
        } else {
            reports.push_back(run_suite(a.suite, opt));
        }
    }
    if (gl.machine()) os << "command=verify\n";
    bool ok = true;
    for (const auto& r : reports) {
        print_report(r, gl, os);
        ok = ok && r.passed();
    }
    if (gl.machine()) os << "pass=" << (ok ? "true" : "false") << '\n';
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounds on length-isospectral families of hyperbolic surfaces, with the geometry behind them."};
    app.name("isospec");
    app.require_subcommand(1, 1);
    app.fallthrough();
    Global gl;
    app.add_option("--format", gl.format, "Report format")->check(CLI::IsMember({"human", "machine"}));
    app.add_option("--threads", gl.threads, "Worker threads for spectrum enumeration")->check(CLI::Range(1, 256));

    BoundArgs bound;
    auto* sub_bound = app.add_subcommand("bound", "Upper bound on the size of an isospectral family");
    sub_bound->add_option("--g", bound.g, "Genus")->required()->check(CLI::NonNegativeNumber);
    sub_bound->add_option("--n", bound.n, "Number of cusps")->check(CLI::NonNegativeNumber);
    sub_bound->add_option("--B", bound.B, "Bers constant (default: smallest applicable table value)");
    sub_bound->add_option("--I", bound.I, "Lower bound on the systole")->required();

    int graphs_g = 0, graphs_n = 0;
    auto* sub_graphs = app.add_subcommand("graphs", "Enumerate pants graphs up to isomorphism");
    sub_graphs->add_option("--g", graphs_g, "Genus")->required()->check(CLI::NonNegativeNumber);
    sub_graphs->add_option("--n", graphs_n, "Number of cusps")->check(CLI::NonNegativeNumber);

    TransversalArgs tr;
    auto* sub_tr = app.add_subcommand("transversal", "Transversal lengths across the pants curves of a surface");
    sub_tr->add_option("--surface", tr.surface, "Surface file")->required();
    sub_tr->add_option("--edge", tr.edge, "Only this pants curve");
    sub_tr->add_option("--alpha", tr.alpha, "Override the twist on the selected curves");
    sub_tr->add_option("--delta", tr.delta, "Recover twists from this transversal length");
    sub_tr->add_option("--B", tr.B, "Bers constant for the upper bound");
    sub_tr->add_option("--I", tr.I, "Systole bound for the upper bound");

    SpectrumArgs sp;
    auto* sub_sp = app.add_subcommand("spectrum", "Closed geodesic length spectrum up to a cutoff");
    sub_sp->add_option("--surface", sp.surface, "Surface file")->required();
    sub_sp->add_option("--cutoff", sp.cutoff, "Largest length listed")->required()->check(CLI::NonNegativeNumber);
    sub_sp->add_option("--output", sp.output, "Also write the spectrum table to this file");
    sub_sp->add_flag("--systole", sp.systole, "Also report the systole");

    VerifyArgs ve;
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    auto* sub_ve = app.add_subcommand("verify", "Run an oracle suite, or check an exported spectrum");
    auto* opt_suite = sub_ve->add_option("--suite", ve.suite, "Suite to run")->check(CLI::IsMember(suites));
    sub_ve->add_option("--seed", ve.seed, "Random seed");
    sub_ve->add_option("--samples", ve.samples, "Cases per check (0: suite default)")->check(CLI::NonNegativeNumber);
    auto* opt_spec = sub_ve->add_option("--spectrum", ve.spectrum, "Spectrum table written by spectrum --output");
    auto* opt_surf = sub_ve->add_option("--surface", ve.surface, "Surface the spectrum was computed for");
    opt_suite->excludes(opt_spec);
    opt_spec->needs(opt_surf);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
        if (sub_ve->parsed() && ve.suite.empty() && ve.spectrum.empty())
            throw CLI::RequiredError("verify needs --suite or --spectrum");
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kUsageError;
    }

    std::ostringstream report;
    bool ok = true;
    try {
        if (sub_bound->parsed()) cmd_bound(bound, gl, report);
        else if (sub_graphs->parsed()) cmd_graphs(graphs_g, graphs_n, gl, report);
        else if (sub_tr->parsed()) cmd_transversal(tr, gl, report);
        else if (sub_sp->parsed()) cmd_spectrum(sp, gl, report);
        else ok = cmd_verify(ve, gl, report);
    } catch (const Error& e) {
        err << "error[" << to_string(e.code()) << "/" << static_cast<int>(e.code()) << "]: " << e.what() << '\n';
        return kDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }
    out << report.str();
    if (!ok) {
        err << "verify: some checks failed\n";
        return kDomainError;
    }
    return kOk;
}

}  // namespace isospec::cli
