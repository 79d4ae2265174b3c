#ifndef CONECORR_HARNESS_HPP
#define CONECORR_HARNESS_HPP

// Batch front-end: run spec parsing and the check / probe / selections /
// radstrom / lemma1 suites. Every suite returns its CSV text and an exit code
// (0 pass, 1 property failure, 2 input error, 3 resource cap).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cone.hpp"
#include "correspondence.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "radstrom.hpp"
#include "random.hpp"
#include "selection.hpp"

namespace conecorr {

enum ExitCode : int { exit_pass = 0, exit_failure = 1, exit_input_error = 2, exit_resource_cap = 3 };

struct ProbeSpec {
    RationalVector point;
    RationalVector direction;
    std::size_t steps = 20;
};

struct RunSpec {
    std::optional<ConeBasis> basis;
    std::optional<ConeBasis> target_basis;
    std::optional<Correspondence> correspondence;
    SampleOptions samples;
    std::size_t max_pairs = 2000;
    std::vector<Rational> homogeneity_scalars = {Rational(1, 3), Rational(1, 2), Rational(2), Rational(7, 5)};
    std::vector<ProbeSpec> probes;
    double tolerance = 1e-9;
    Metric metric = Metric::euclidean;
    std::uint64_t seed = 1;
    // lemma1
    std::optional<std::vector<Rational>> family_scales;
    std::size_t simplex_steps = 120;
    std::vector<RationalVector> k_points;
    // selections
    std::size_t selection_cap = 1'000'000;
    std::size_t sample_interior = 0;
    // radstrom
    RadstromSuiteOptions radstrom;
};

/// Command-line overrides applied after parsing.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> steps;
    std::optional<double> tolerance;
    std::optional<std::size_t> sample_interior;
};

struct SuiteResult {
    int exit_code = exit_pass;
    std::string csv;
    std::vector<std::string> messages;
};

namespace detail {

using nlohmann::json;

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col > 1 ? col - 1 : 1};
}

[[noreturn]] inline void fail(const std::string& path, const std::string& what)
{
    throw ParseError("spec " + path + ": " + what);
}

inline Rational rational_of(const json& j, const std::string& path)
{
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(Integer(j.dump()));
        if (j.is_number_float()) return parse_rational(j.dump());
    } catch (const ParseError& e) {
        fail(path, e.what());
    }
    fail(path, "expected a rational (integer, decimal, or \"p/q\" string)");
}

inline RationalVector vector_of(const json& j, const std::string& path)
{
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rationals");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_of(j[i], path + "/" + std::to_string(i)));
    return RationalVector(std::move(out));
}

inline std::vector<RationalVector> points_of(const json& j, const std::string& path)
{
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of points");
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_of(j[i], path + "/" + std::to_string(i)));
    return out;
}

inline Polytope polytope_of(const json& j, const std::string& path)
{
    if (j.is_string()) {
        try {
            return parse_polytope(j.get<std::string>());
        } catch (const std::exception& e) {
            fail(path, e.what());
        }
    }
    auto pts = points_of(j, path);
    try {
        return Polytope::from_points(std::move(pts));
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

inline ConeBasis basis_of(const json& j, const std::string& path)
{
    auto gens = points_of(j, path);
    try {
        return ConeBasis(std::move(gens));
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

inline std::uint64_t count_of(const json& j, const std::string& path)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        fail(path, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

inline Correspondence correspondence_of(const json& j, const std::optional<ConeBasis>& basis, const std::string& path)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) fail(path, "expected an object with a \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "example1") {
        if (basis && !(*basis == ConeBasis::standard(2)))
            fail(path, "example1 is defined on the standard basis of Q^2");
        return Correspondence::example1();
    }
    if (kind != "linear" && kind != "inflated")
        fail(path + "/kind", "unknown kind \"" + kind + "\" (expected linear, example1 or inflated)");
    if (!basis) fail("/basis", "required for kind \"" + kind + "\"");
    if (!j.contains("images") || !j["images"].is_array()) fail(path + "/images", "expected an array of polytopes");
    std::vector<Polytope> images;
    for (std::size_t i = 0; i < j["images"].size(); ++i)
        images.push_back(polytope_of(j["images"][i], path + "/images/" + std::to_string(i)));
    try {
        if (kind == "linear") {
            if (j.contains("offset"))
                return Correspondence::affine(*basis, std::move(images), polytope_of(j["offset"], path + "/offset"));
            return Correspondence::linear(*basis, std::move(images));
        }
        if (kind == "inflated") {
            if (!j.contains("inflation")) fail(path + "/inflation", "required for kind \"inflated\"");
            return Correspondence::inflated(*basis, std::move(images), polytope_of(j["inflation"], path + "/inflation"));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    throw std::logic_error("unreachable");
}

inline std::vector<Rational> rationals_of(const json& j, const std::string& path)
{
    if (!j.is_array()) fail(path, "expected an array of rationals");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_of(j[i], path + "/" + std::to_string(i)));
    return out;
}

} // namespace detail

/// Parses a JSON spec document. Syntax errors carry line and column.
inline RunSpec parse_run_spec(std::string_view text)
{
    using detail::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto [line, col] = detail::line_column(text, e.byte);
        throw ParseError(std::string("spec syntax error: ") + e.what(), line, col);
    }
    if (!doc.is_object()) throw ParseError("spec: top level must be an object", 1, 1);

    RunSpec spec;
    if (doc.contains("seed")) spec.seed = detail::count_of(doc["seed"], "/seed");
    if (doc.contains("basis")) spec.basis = detail::basis_of(doc["basis"], "/basis");
    if (doc.contains("target_basis")) spec.target_basis = detail::basis_of(doc["target_basis"], "/target_basis");
    if (doc.contains("correspondence")) {
        spec.correspondence = detail::correspondence_of(doc["correspondence"], spec.basis, "/correspondence");
        if (!spec.basis) spec.basis = spec.correspondence->domain();
    }
    if (doc.contains("samples")) {
        const auto& s = doc["samples"];
        if (!s.is_object()) detail::fail("/samples", "expected an object");
        if (s.contains("grid")) spec.samples.grid = detail::rationals_of(s["grid"], "/samples/grid");
        if (s.contains("random")) spec.samples.random_count = detail::count_of(s["random"], "/samples/random");
        if (s.contains("max_denominator")) {
            spec.samples.max_denominator = static_cast<std::int64_t>(detail::count_of(s["max_denominator"], "/samples/max_denominator"));
            if (spec.samples.max_denominator < 1) detail::fail("/samples/max_denominator", "must be >= 1");
        }
        if (s.contains("max_pairs")) spec.max_pairs = detail::count_of(s["max_pairs"], "/samples/max_pairs");
        for (const auto& g : spec.samples.grid)
            if (sgn(g) < 0) detail::fail("/samples/grid", "grid values must be nonnegative");
    }
    if (doc.contains("homogeneity_scalars")) {
        spec.homogeneity_scalars = detail::rationals_of(doc["homogeneity_scalars"], "/homogeneity_scalars");
        for (const auto& r : spec.homogeneity_scalars)
            if (sgn(r) <= 0) detail::fail("/homogeneity_scalars", "scalars must be positive");
    }
    if (doc.contains("probes")) {
        const auto& ps = doc["probes"];
        if (!ps.is_array()) detail::fail("/probes", "expected an array");
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const std::string path = "/probes/" + std::to_string(i);
            if (!ps[i].is_object() || !ps[i].contains("point") || !ps[i].contains("direction"))
                detail::fail(path, "expected {\"point\": [...], \"direction\": [...]}");
            ProbeSpec probe;
            probe.point = detail::vector_of(ps[i]["point"], path + "/point");
            probe.direction = detail::vector_of(ps[i]["direction"], path + "/direction");
            if (ps[i].contains("steps")) probe.steps = detail::count_of(ps[i]["steps"], path + "/steps");
            spec.probes.push_back(std::move(probe));
        }
    }
    if (doc.contains("tolerance")) {
        if (!doc["tolerance"].is_number()) detail::fail("/tolerance", "expected a number");
        spec.tolerance = doc["tolerance"].get<double>();
    }
    if (doc.contains("metric")) {
        const auto m = doc["metric"].is_string() ? doc["metric"].get<std::string>() : std::string();
        if (m == "euclidean")
            spec.metric = Metric::euclidean;
        else if (m == "l1")
            spec.metric = Metric::l1;
        else
            detail::fail("/metric", "expected \"euclidean\" or \"l1\"");
    }
    if (doc.contains("family")) {
        const auto& f = doc["family"];
        if (!f.is_object() || !f.contains("scales")) detail::fail("/family", "expected {\"scales\": [...]}");
        spec.family_scales = detail::rationals_of(f["scales"], "/family/scales");
        if (spec.family_scales->empty()) detail::fail("/family/scales", "must be nonempty");
    }
    if (doc.contains("K")) {
        const auto& k = doc["K"];
        if (!k.is_object()) detail::fail("/K", "expected an object");
        if (k.contains("simplex_steps")) spec.simplex_steps = detail::count_of(k["simplex_steps"], "/K/simplex_steps");
        if (k.contains("points")) spec.k_points = detail::points_of(k["points"], "/K/points");
        if (spec.simplex_steps == 0 && spec.k_points.empty()) detail::fail("/K", "empty point set");
    }
    if (doc.contains("selections")) {
        const auto& s = doc["selections"];
        if (!s.is_object()) detail::fail("/selections", "expected an object");
        if (s.contains("cap")) spec.selection_cap = detail::count_of(s["cap"], "/selections/cap");
        if (s.contains("sample_interior")) spec.sample_interior = detail::count_of(s["sample_interior"], "/selections/sample_interior");
    }
    if (spec.correspondence) spec.radstrom.dim = spec.correspondence->codomain_dim();
    if (doc.contains("radstrom")) {
        const auto& r = doc["radstrom"];
        if (!r.is_object()) detail::fail("/radstrom", "expected an object");
        if (r.contains("dim")) spec.radstrom.dim = detail::count_of(r["dim"], "/radstrom/dim");
        if (r.contains("pairs")) spec.radstrom.pairs = detail::count_of(r["pairs"], "/radstrom/pairs");
        if (r.contains("triples")) spec.radstrom.triples = detail::count_of(r["triples"], "/radstrom/triples");
        if (r.contains("equivalent")) spec.radstrom.equivalent = detail::count_of(r["equivalent"], "/radstrom/equivalent");
        if (r.contains("max_vertices")) spec.radstrom.max_vertices = detail::count_of(r["max_vertices"], "/radstrom/max_vertices");
        if (r.contains("max_denominator"))
            spec.radstrom.max_denominator = static_cast<std::int64_t>(detail::count_of(r["max_denominator"], "/radstrom/max_denominator"));
        if (spec.radstrom.dim == 0 || spec.radstrom.max_vertices == 0 || spec.radstrom.max_denominator == 0)
            detail::fail("/radstrom", "dim, max_vertices and max_denominator must be positive");
    }
    spec.samples.seed = spec.seed;
    spec.radstrom.seed = spec.seed;
    spec.radstrom.tol = spec.tolerance;
    return spec;
}

inline RunSpec load_run_spec(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open spec file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_run_spec(buf.str());
}

inline void apply_overrides(RunSpec& spec, const Overrides& o)
{
    if (o.seed) {
        spec.seed = *o.seed;
        spec.samples.seed = *o.seed;
        spec.radstrom.seed = *o.seed;
    }
    if (o.steps)
        for (auto& p : spec.probes) p.steps = *o.steps;
    if (o.tolerance) {
        spec.tolerance = *o.tolerance;
        spec.radstrom.tol = *o.tolerance;
    }
    if (o.sample_interior) spec.sample_interior = *o.sample_interior;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string csv_row(std::initializer_list<std::string> fields)
{
    std::string out;
    bool first = true;
    for (const auto& f : fields) {
        if (!first) out += ',';
        out += csv_field(f);
        first = false;
    }
    return out + "\n";
}

namespace detail {

inline const Correspondence& require_correspondence(const RunSpec& spec)
{
    if (!spec.correspondence) throw ParseError("spec: \"correspondence\" is required for this suite");
    return *spec.correspondence;
}

/// All unordered pairs i <= j when there are at most max_pairs, otherwise
/// max_pairs seeded random pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t n, std::size_t max_pairs, std::uint64_t seed)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n == 0) return out;
    if (n * (n + 1) / 2 <= max_pairs) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) out.emplace_back(i, j);
        return out;
    }
    RationalSampler rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t k = 0; k < max_pairs; ++k) {
        auto i = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(n) - 1));
        auto j = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(n) - 1));
        out.emplace_back(std::min(i, j), std::max(i, j));
    }
    return out;
}

struct SuiteTally {
    explicit SuiteTally(std::string n) : name(std::move(n)) {}

    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::string rows;

    void record(const std::string& sample, const Verdict& v)
    {
        ++checked;
        if (v.holds) return;
        ++failed;
        std::string witness = v.witness ? to_string(*v.witness) : std::string();
        if (!v.detail.empty()) witness += (witness.empty() ? "" : " ") + v.detail;
        rows += csv_row({name, sample, "fail", witness});
    }

    std::string summary() const
    {
        return csv_row({name, "*", std::string(failed ? "fail " : "pass ") + std::to_string(checked - failed) + "/" +
                                       std::to_string(checked),
                        ""});
    }
};

} // namespace detail

/// Superadditivity, Q+-homogeneity, scalar-box and Jensen suites over the sample grid.
inline SuiteResult run_check(const RunSpec& spec)
{
    const Correspondence& phi = detail::require_correspondence(spec);
    const auto samples = sample_points(phi.domain(), spec.samples);
    const auto pairs = detail::sample_pairs(samples.size(), spec.max_pairs, spec.seed);

    detail::SuiteTally superadditive{"superadditive"}, homogeneous{"q_homogeneous"}, box{"scalar_box"},
        jensen{"jensen"};
    for (const auto& [i, j] : pairs)
        superadditive.record(to_string(samples[i].ambient()) + "+" + to_string(samples[j].ambient()),
                             check_superadditive(phi, samples[i], samples[j]));
    for (const auto& x : samples)
        for (const auto& r : spec.homogeneity_scalars)
            homogeneous.record(to_string(r) + "*" + to_string(x.ambient()), check_q_homogeneous(phi, x, r));
    for (const auto& x : samples) box.record(to_string(x.ambient()), check_scalar_box(phi, x));
    for (std::size_t c = 0; c < phi.codomain_dim(); ++c) {
        ScalarTrack track(phi, c);
        for (const auto& [i, j] : pairs)
            jensen.record("i=" + std::to_string(c + 1) + " " + to_string(samples[i].ambient()) + "," +
                              to_string(samples[j].ambient()),
                          jensen_check(track, samples[i], samples[j]));
    }

    SuiteResult out;
    out.csv = csv_row({"suite", "sample", "verdict", "witness"});
    bool ok = true;
    for (const auto* t : {&superadditive, &homogeneous, &box, &jensen}) {
        out.csv += t->rows + t->summary();
        ok = ok && t->failed == 0;
        out.messages.push_back(t->name + ": " + std::to_string(t->checked - t->failed) + "/" + std::to_string(t->checked) +
                               " passed");
    }
    out.exit_code = ok ? exit_pass : exit_failure;
    return out;
}

/// Continuity tables along each configured probe sequence.
inline SuiteResult run_probe(const RunSpec& spec)
{
    const Correspondence& phi = detail::require_correspondence(spec);
    if (spec.probes.empty()) throw ParseError("spec: \"probes\" is required for the probe suite");
    SuiteResult out;
    out.csv = csv_row({"probe_index", "k", "point", "hausdorff", "lsc_deficit", "usc_deficit", "verdict"});
    for (std::size_t p = 0; p < spec.probes.size(); ++p) {
        const auto& probe = spec.probes[p];
        ContinuityReport report;
        try {
            report = continuity_probe(phi, probe.point, probe.direction, probe.steps, spec.tolerance, spec.metric);
        } catch (const NotInCone& e) {
            throw NotInCone("probe " + std::to_string(p) + ": " + e.what());
        }
        for (const auto& row : report.rows)
            out.csv += csv_row({std::to_string(p), std::to_string(row.k), to_string(row.point), format_double(row.hausdorff),
                                format_double(row.lsc_deficit), format_double(row.usc_deficit), report.verdict});
        out.messages.push_back("probe " + std::to_string(p) + " at " + to_string(probe.point) + ": " + report.verdict);
    }
    return out;
}

/// Extreme (and optionally interior) selection matrices with certification.
inline SuiteResult run_selections(const RunSpec& spec)
{
    const Correspondence& phi = detail::require_correspondence(spec);
    if (!spec.target_basis) throw ParseError("spec: \"target_basis\" is required for the selections suite");
    const auto samples = sample_points(phi.domain(), spec.samples);
    SelectionOptions opts;
    opts.cap = spec.selection_cap;
    opts.interior_samples = spec.sample_interior;
    opts.seed = spec.seed;
    const auto report = selection_family(phi, *spec.target_basis, samples, opts);

    SuiteResult out;
    out.csv = csv_row({"matrix_index", "entries", "certified", "failing_sample", "lipschitz_bound"});
    for (const auto& row : report.rows)
        out.csv += csv_row({std::to_string(row.index), row.matrix.to_text(), row.certified ? "true" : "false",
                            row.failing_sample ? to_string(*row.failing_sample) : "", format_double(row.lipschitz_bound)});
    out.messages.push_back(std::to_string(report.certified_count) + "/" + std::to_string(report.rows.size()) +
                           " selections certified");
    out.exit_code = report.certified_count > 0 ? exit_pass : exit_failure;
    return out;
}

/// Randomized pair-space axiom suite.
inline SuiteResult run_radstrom(const RunSpec& spec)
{
    const auto report = radstrom_axiom_suite(spec.radstrom);
    SuiteResult out;
    out.csv = csv_row({"pair_id", "norm", "equivalent_to", "verdict"});
    for (const auto& row : report.rows)
        out.csv += csv_row({row.pair_id, format_double(row.norm), row.equivalent_to, row.verdict});
    for (const auto& a : report.axioms)
        out.messages.push_back(a.name + ": " + std::to_string(a.checks) + " checks, " + std::to_string(a.violations) +
                               " violations, max deviation " + format_double(a.max_violation));
    out.exit_code = report.passed() ? exit_pass : exit_failure;
    return out;
}

/// Uniform boundedness of {alpha * phi} over K.
inline SuiteResult run_lemma1(const RunSpec& spec)
{
    const Correspondence& phi = detail::require_correspondence(spec);
    if (!spec.family_scales) throw ParseError("spec: \"family\" is required for the lemma1 suite");
    std::vector<Correspondence> family;
    for (const auto& a : *spec.family_scales) family.push_back(phi.scaled(a));
    std::vector<ConePoint> k;
    if (!spec.k_points.empty()) {
        for (const auto& p : spec.k_points) k.push_back(phi.domain().point(p));
    } else {
        k = simplex_grid(phi.domain(), spec.simplex_steps);
    }
    const auto report = uniform_boundedness_probe(family, k);

    SuiteResult out;
    out.csv = csv_row({"point_index", "point", "bound", "bound_squared", "argmax_member"});
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& r = report.rows[i];
        out.csv += csv_row({std::to_string(i), to_string(r.point), format_double(r.bound), to_string(r.bound_squared),
                            std::to_string(r.argmax_member)});
    }
    const auto& worst = report.rows[report.argmax_point];
    out.csv += csv_row({"global", to_string(worst.point), format_double(report.global), to_string(report.global_squared),
                        std::to_string(worst.argmax_member)});
    out.messages.push_back(report.verdict);
    return out;
}

} // namespace conecorr

#endif
