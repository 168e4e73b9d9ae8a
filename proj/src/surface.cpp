#include "isospec/surface.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

namespace isospec {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

[[noreturn]] void out_of_range(const std::string& parameter, int index, const std::string& bound,
                               const std::string& what) {
    throw ParameterOutOfRange(parameter, index, bound, what);
}

bool in_class(SurfaceClass c, int g, int n) {
    if (g < 0 || n < 0 || 2 * g - 2 + n < 1) return false;
    switch (c) {
        case SurfaceClass::FiniteArea: return true;
        case SurfaceClass::Closed: return n == 0 && g >= 2;
        case SurfaceClass::PuncturedSphere: return g == 0 && n >= 3;
        case SurfaceClass::Genus2Closed: return g == 2 && n == 0;
    }
    return false;
}

}  // namespace

const char* to_string(SurfaceClass c) {
    switch (c) {
        case SurfaceClass::FiniteArea: return "finite-area";
        case SurfaceClass::Closed: return "closed";
        case SurfaceClass::PuncturedSphere: return "punctured-sphere";
        case SurfaceClass::Genus2Closed: return "genus-2-closed";
    }
    return "?";
}

SurfaceClass parse_surface_class(std::string_view name) {
    for (auto c : {SurfaceClass::FiniteArea, SurfaceClass::Closed, SurfaceClass::PuncturedSphere,
                   SurfaceClass::Genus2Closed})
        if (name == to_string(c)) return c;
    fail(ErrorCode::ParseError,
         "unknown surface class '" + std::string(name) +
             "' (expected finite-area, closed, punctured-sphere or genus-2-closed)");
}

Signature validate_surface(const FNSurface& s) {
    const Signature sig = validate(s.graph);
    const auto m = static_cast<std::size_t>(s.graph.edge_count());
    if (s.lengths.size() != m)
        fail(ErrorCode::ValidationError,
             "lengths: got " + std::to_string(s.lengths.size()) + " values, expected " + std::to_string(m));
    if (s.twists.size() != m)
        fail(ErrorCode::ValidationError,
             "twists: got " + std::to_string(s.twists.size()) + " values, expected " + std::to_string(m));
    for (std::size_t i = 0; i < m; ++i) {
        const int k = static_cast<int>(i);
        if (!(s.lengths[i] > 0.0) || !std::isfinite(s.lengths[i]))
            out_of_range("length", k, "positive",
                         "length " + std::to_string(k) + " = " + fmt(s.lengths[i]) + " must be positive");
        if (!(s.twists[i] >= -0.5 && s.twists[i] <= 0.5))
            out_of_range("twist", k, s.twists[i] > 0.5 ? "1/2" : "-1/2",
                         "twist " + std::to_string(k) + " = " + fmt(s.twists[i]) +
                             " outside [-1/2, 1/2]");
    }
    return sig;
}

void validate_context(const BersContext& ctx) {
    const double expected = bers_constant(ctx.surface_class, ctx.g, ctx.n);
    if (std::abs(ctx.B - expected) > 1e-9 * std::max(1.0, expected))
        fail(ErrorCode::SignatureMismatch, std::string("B = ") + fmt(ctx.B) + " does not match the " +
                                               to_string(ctx.surface_class) + " constant " + fmt(expected));
    if (!(ctx.I > 0.0) || !std::isfinite(ctx.I))
        out_of_range("I", -1, "positive", "systole bound I = " + fmt(ctx.I) + " must be positive");
    if (ctx.I > ctx.B) out_of_range("I", -1, "B", "systole bound I = " + fmt(ctx.I) + " exceeds B = " + fmt(ctx.B));
}

void validate_surface(const FNSurface& s, const BersContext& ctx) {
    const Signature sig = validate_surface(s);
    if (sig.g != ctx.g || sig.n != ctx.n)
        fail(ErrorCode::SignatureMismatch, "surface has signature (" + std::to_string(sig.g) + "," +
                                               std::to_string(sig.n) + ") but context says (" +
                                               std::to_string(ctx.g) + "," + std::to_string(ctx.n) + ")");
    validate_context(ctx);
    for (std::size_t i = 0; i < s.lengths.size(); ++i) {
        const int k = static_cast<int>(i);
        if (s.lengths[i] > ctx.B)
            out_of_range("length", k, "B",
                         "length " + std::to_string(k) + " = " + fmt(s.lengths[i]) + " exceeds B = " + fmt(ctx.B));
        if (s.lengths[i] < ctx.I)
            out_of_range("length", k, "I",
                         "length " + std::to_string(k) + " = " + fmt(s.lengths[i]) + " is below I = " + fmt(ctx.I));
    }
}

double bers_constant(SurfaceClass c, int g, int n) {
    if (!in_class(c, g, n))
        fail(ErrorCode::SignatureMismatch, "signature (" + std::to_string(g) + "," + std::to_string(n) +
                                               ") is not in class " + to_string(c));
    switch (c) {
        case SurfaceClass::FiniteArea: return 10.13 * (3 * g - 3 + n);
        case SurfaceClass::Closed: return 12.67 * (g - 1) + 20.0;
        case SurfaceClass::PuncturedSphere: return 30.0 * std::sqrt(2.0 * std::numbers::pi * (n - 2));
        case SurfaceClass::Genus2Closed: return 4.45;
    }
    return 0.0;
}

SurfaceClass sharpest_class(int g, int n) {
    if (!in_class(SurfaceClass::FiniteArea, g, n))
        fail(ErrorCode::SignatureMismatch,
             "signature (" + std::to_string(g) + "," + std::to_string(n) + ") has no pants decomposition");
    SurfaceClass best = SurfaceClass::FiniteArea;
    for (auto c : {SurfaceClass::Closed, SurfaceClass::PuncturedSphere, SurfaceClass::Genus2Closed})
        if (in_class(c, g, n) && bers_constant(c, g, n) < bers_constant(best, g, n)) best = c;
    return best;
}

double min_bers_constant(int g, int n) { return bers_constant(sharpest_class(g, n), g, n); }

double buser_curve_bound(int k, int g, int n) {
    const int m = 3 * g - 3 + n;
    if (g < 0 || n < 0 || k < 1 || k > m)
        fail(ErrorCode::OutOfRange, "buser_curve_bound: need 1 <= k <= 3g - 3 + n, got k = " + std::to_string(k) +
                                        " for (" + std::to_string(g) + "," + std::to_string(n) + ")");
    return 4.0 * k * std::log(4.0 * std::numbers::pi * (2 * g - 2 + n) / k);
}

namespace {

struct LineReader {
    int lineno = 0;

    [[noreturn]] void error(const std::string& why) const {
        fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + why);
    }
};

std::vector<double> read_numbers(std::istringstream& ls, const LineReader& r, const std::string& key) {
    std::vector<double> out;
    std::string tok;
    while (ls >> tok) {
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            r.error("field '" + key + "': '" + tok + "' is not a number");
        }
    }
    return out;
}

double read_single(std::istringstream& ls, const LineReader& r, const std::string& key) {
    auto v = read_numbers(ls, r, key);
    if (v.size() != 1) r.error("field '" + key + "' takes exactly one value");
    return v[0];
}

}  // namespace

SurfaceFile parse_surface_file(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    LineReader r;
    std::ostringstream graph_text;
    std::set<std::string> seen;
    std::optional<std::vector<double>> lengths, twists;
    std::optional<SurfaceClass> klass;
    std::optional<double> B, I;
    while (std::getline(in, line)) {
        ++r.lineno;
        std::string body = line.substr(0, line.find('#'));
        std::istringstream ls(body);
        std::string key;
        if (!(ls >> key)) continue;
        if (!seen.insert(key).second) r.error("duplicate field '" + key + "'");
        if (key == "nodes" || key == "edges" || key == "free") {
            graph_text << body << "\n";
        } else if (key == "lengths") {
            lengths = read_numbers(ls, r, key);
        } else if (key == "twists") {
            twists = read_numbers(ls, r, key);
        } else if (key == "class") {
            std::string name, extra;
            if (!(ls >> name) || (ls >> extra)) r.error("field 'class' takes exactly one name");
            try {
                klass = parse_surface_class(name);
            } catch (const Error& e) {
                r.error(e.what());
            }
        } else if (key == "B") {
            B = read_single(ls, r, key);
        } else if (key == "I") {
            I = read_single(ls, r, key);
        } else {
            r.error("unknown field '" + key + "'");
        }
    }
    for (const char* required : {"nodes", "free", "lengths", "twists"})
        if (!seen.count(required)) fail(ErrorCode::ParseError, std::string("missing field '") + required + "'");
    if ((B || I) && !klass) fail(ErrorCode::ParseError, "fields 'B' and 'I' require a 'class' field");
    if (klass && !I) fail(ErrorCode::ParseError, "field 'class' requires an 'I' field");

    SurfaceFile file;
    try {
        file.surface.graph = parse_pants_graph(graph_text.str());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        fail(ErrorCode::ValidationError, std::string("graph: ") + e.what());
    }
    file.surface.lengths = std::move(*lengths);
    file.surface.twists = std::move(*twists);
    try {
        const Signature sig = validate_surface(file.surface);
        if (klass) {
            BersContext ctx{*klass, sig.g, sig.n, 0.0, *I};
            ctx.B = B ? *B : bers_constant(*klass, sig.g, sig.n);
            validate_surface(file.surface, ctx);
            file.context = ctx;
        }
    } catch (const Error& e) {
        fail(ErrorCode::ValidationError, e.what());
    }
    return file;
}

SurfaceFile load_surface(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorCode::ParseError, "cannot open surface file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_surface_file(buf.str());
}

std::string serialize(const FNSurface& s) {
    std::ostringstream os;
    os << serialize(s.graph);
    os << "lengths";
    for (double l : s.lengths) os << ' ' << fmt(l);
    os << "\ntwists";
    for (double a : s.twists) os << ' ' << fmt(a);
    os << "\n";
    return os.str();
}

std::string serialize(const SurfaceFile& file) {
    std::string out = serialize(file.surface);
    if (file.context) {
        out += std::string("class ") + to_string(file.context->surface_class) + "\n";
        out += "B " + fmt(file.context->B) + "\n";
        out += "I " + fmt(file.context->I) + "\n";
    }
    return out;
}

std::uint64_t surface_hash(const FNSurface& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : serialize(s)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace isospec
