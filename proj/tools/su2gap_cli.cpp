// Command-line front end: one subcommand per operation, seeded and
// machine-readable. Exit status: 0 ok, 1 usage, 2 domain error, 3 convergence.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "su2gap/dynamics.hpp"
#include "su2gap/io.hpp"
#include "su2gap/measure.hpp"
#include "su2gap/spectral.hpp"
#include "su2gap/su2.hpp"
#include "su2gap/trace_geometry.hpp"

namespace {

using namespace su2gap;

enum ExitCode { kOk = 0, kUsage = 1, kDomain = 2, kConvergence = 3 };

struct RunConfig {
    std::string command;
    std::string pair_spec;
    std::string output = "-";
    std::string format = "csv";
    std::uint64_t seed = 1;
    unsigned threads = 1;

    double t = 0;
    double t0 = 0;
    std::vector<double> fricke;
    std::vector<double> triple;
    int n_max = kDefaultMaxLevel;
    int max_iterations = PowerIterationOptions{}.max_iterations;
    int level = 1;
    std::string word;
    std::size_t trials = 1;
    std::size_t max_steps = kDefaultMaxSteps;
    std::size_t grid = 1001;
    std::size_t depth = 4;
    std::size_t max_points = 100000;
    std::uint64_t samples = 1000000;
    std::size_t count = 1000;
    int bins = 40;
    std::optional<double> delta;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw UsageError(what);
}

void require_trace(double v, const char* name)
{
    if (!(v >= -2.0 && v <= 2.0))
        throw DomainError(std::string(name) + " must lie in [-2, 2]");
}

bool json_out(const RunConfig& cfg) { return cfg.format == "json"; }

std::string csv_pair_row(const Paird& p)
{
    std::string s;
    for (const SU2d* g : {&p.a, &p.b})
        s += format_real(g->alpha().real()) + ',' + format_real(g->alpha().imag()) + ',' + format_real(g->beta().real()) +
             ',' + format_real(g->beta().imag()) + ',';
    return s;
}

void cmd_sample(const RunConfig& cfg, std::ostream& os)
{
    require(cfg.count >= 1, "--count must be at least 1");
    RandomStream rng(cfg.seed);
    std::vector<Paird> pairs;
    pairs.reserve(cfg.count);
    for (std::size_t i = 0; i < cfg.count; ++i)
        pairs.push_back(haar_pair(rng));

    if (json_out(cfg)) {
        nlohmann::json j{{"schema", kSchemaVersion}, {"command", "sample"}, {"seed", cfg.seed}};
        auto& arr = j["pairs"] = nlohmann::json::array();
        for (const auto& p : pairs) {
            auto e = pair_spec_json(p);
            e.erase("schema");
            arr.push_back(std::move(e));
        }
        os << dump_json(j) << '\n';
        return;
    }
    os << "# schema=" << kSchemaVersion << ",command=sample,count=" << cfg.count << ",seed=" << cfg.seed << '\n';
    os << "a_re_alpha,a_im_alpha,a_re_beta,a_im_beta,b_re_alpha,b_im_alpha,b_re_beta,b_im_beta,x,t\n";
    for (const auto& p : pairs) {
        const auto fc = fricke_coordinates(p);
        os << csv_pair_row(p) << format_real(fc.x) << ',' << format_real(fc.t) << '\n';
    }
}

void cmd_traces(const RunConfig& cfg, std::ostream& os)
{
    const Paird p = read_pair_spec(cfg.pair_spec);
    const auto tr = trace_triple(p);
    const double t = fricke_coordinates(p).t;
    if (json_out(cfg)) {
        nlohmann::json j{{"schema", kSchemaVersion}, {"command", "traces"}, {"x", tr.x}, {"y", tr.y}, {"z", tr.z}, {"t", t}};
        os << dump_json(j) << '\n';
        return;
    }
    os << "# schema=" << kSchemaVersion << ",command=traces\n";
    os << "x,y,z,t\n";
    os << format_real(tr.x) << ',' << format_real(tr.y) << ',' << format_real(tr.z) << ',' << format_real(t) << '\n';
}

void cmd_construct(const RunConfig& cfg, std::ostream& os)
{
    require(cfg.fricke.empty() != cfg.triple.empty(), "construct needs exactly one of --fricke X T or --triple X Y Z");
    const Paird p = cfg.fricke.empty() ? pair_from_traces(cfg.triple[0], cfg.triple[1], cfg.triple[2])
                                       : pair_from_fricke(cfg.fricke[0], cfg.fricke[1]);
    os << dump_json(pair_spec_json(p)) << '\n';
}

void cmd_phi_iterate(const RunConfig& cfg, std::ostream& os)
{
    require_trace(cfg.t0, "--t0");
    require(cfg.max_steps >= 1, "--max-steps must be at least 1");
    const auto rec = escape_iteration(cfg.t0, cfg.max_steps);
    if (json_out(cfg))
        os << dump_json(escape_json(rec)) << '\n';
    else
        write_escape_csv(os, rec);
}

void cmd_fiber_image(const RunConfig& cfg, std::ostream& os)
{
    require_trace(cfg.t, "--t");
    require(cfg.grid >= 2, "--grid must be at least 2");
    const auto exact = fiber_image_interval(cfg.t);
    const auto numeric = fiber_image_numeric(cfg.t, cfg.grid);
    if (json_out(cfg)) {
        nlohmann::json j{{"schema", kSchemaVersion},
                         {"command", "fiber-image"},
                         {"t", cfg.t},
                         {"grid", cfg.grid},
                         {"exact", {exact.lo, exact.hi}},
                         {"numeric", {numeric.lo, numeric.hi}}};
        os << dump_json(j) << '\n';
        return;
    }
    os << "# schema=" << kSchemaVersion << ",command=fiber-image,t=" << format_real(cfg.t) << ",grid=" << cfg.grid << '\n';
    os << "method,lo,hi\n";
    os << "exact," << format_real(exact.lo) << ',' << format_real(exact.hi) << '\n';
    os << "numeric," << format_real(numeric.lo) << ',' << format_real(numeric.hi) << '\n';
}

void cmd_orbit(const RunConfig& cfg, std::ostream& os)
{
    require(cfg.max_points >= 1, "--max-points must be at least 1");
    const Paird p = read_pair_spec(cfg.pair_spec);
    const auto orbit = wordmap_orbit(p, cfg.depth, cfg.max_points);
    if (json_out(cfg))
        os << dump_json(orbit_json(orbit, cfg.depth)) << '\n';
    else
        write_orbit_csv(os, orbit, cfg.depth);
}

void cmd_gap_profile(const RunConfig& cfg, std::ostream& os)
{
    require(cfg.n_max >= 1, "--nmax must be at least 1");
    require(cfg.max_iterations >= 1, "--max-iterations must be at least 1");
    const Paird p = read_pair_spec(cfg.pair_spec);
    PowerIterationOptions opt;
    opt.max_iterations = cfg.max_iterations;
    const auto prof = gap_profile(p, cfg.n_max, opt);
    if (json_out(cfg))
        os << dump_json(gap_profile_json(prof)) << '\n';
    else
        write_gap_profile_csv(os, prof);
}

void cmd_defect(const RunConfig& cfg, std::ostream& os)
{
    require(cfg.level >= 1, "--level must be at least 1");
    require(cfg.trials >= 1, "--trials must be at least 1");
    const Paird p = read_pair_spec(cfg.pair_spec);
    Word w;
    try {
        w = Word::parse(cfg.word);
    }
    catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const IrrepLevel level{cfg.level};
    const double floor = min_defect_level(p, level);

    RandomStream rng(cfg.seed);
    std::vector<DefectBound<double>> rows;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        ComplexVector<double> v(level.dim());
        for (int k = 0; k < level.dim(); ++k)
            v(k) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        v.normalize();
        rows.push_back(word_defect_check(p, w, level, v));
    }

    if (json_out(cfg)) {
        nlohmann::json j{{"schema", kSchemaVersion}, {"command", "defect"}, {"word", w.str()}, {"level", cfg.level},
                         {"seed", cfg.seed}, {"min_defect", floor}};
        auto& arr = j["trials"] = nlohmann::json::array();
        for (const auto& r : rows)
            arr.push_back({{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds()}});
        os << dump_json(j) << '\n';
        return;
    }
    os << "# schema=" << kSchemaVersion << ",command=defect,word=" << (w.empty() ? "-" : w.str()) << ",level=" << cfg.level
       << ",seed=" << cfg.seed << ",min_defect=" << format_real(floor) << '\n';
    os << "trial,lhs,rhs,holds\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        os << i << ',' << format_real(rows[i].lhs) << ',' << format_real(rows[i].rhs) << ',' << (rows[i].holds() ? 1 : 0) << '\n';
}

void cmd_density(const RunConfig& cfg, std::ostream& os)
{
    require(cfg.samples >= 1, "--samples must be at least 1");
    require(cfg.bins >= 2, "--bins must be at least 2");
    require(!cfg.delta || *cfg.delta > 0.0, "--delta must be positive");
    const MonteCarloOptions opt{cfg.seed, 16, cfg.threads};
    const auto h = pushforward_histogram(cfg.samples, cfg.bins, opt);
    const bool with_boundary = cfg.delta.has_value();
    const double frac = with_boundary ? boundary_mass(cfg.samples, *cfg.delta, opt) : 0.0;
    if (json_out(cfg)) {
        auto j = histogram_json(h);
        if (with_boundary)
            j["boundary"] = {{"delta", *cfg.delta}, {"fraction", frac}};
        os << dump_json(j) << '\n';
        return;
    }
    write_histogram_csv(os, h, with_boundary ? "delta=" + format_real(*cfg.delta) + ",boundary_fraction=" + format_real(frac)
                                             : std::string{});
}

void cmd_fiber_sample(const RunConfig& cfg, std::ostream& os)
{
    require_trace(cfg.t, "--t");
    require(cfg.count >= 1, "--count must be at least 1");
    const auto fs = sample_fiber(cfg.t, cfg.count, cfg.seed);
    if (json_out(cfg))
        os << dump_json(fiber_json(fs, cfg.seed)) << '\n';
    else
        write_fiber_csv(os, fs, cfg.seed);
}

void cmd_fiber_transport(const RunConfig& cfg, std::ostream& os)
{
    require_trace(cfg.t, "--t");
    require(cfg.count >= 1, "--count must be at least 1");
    require(cfg.bins >= 1, "--bins must be at least 1");
    const auto tr = fiber_transport_demo(cfg.t, cfg.count, cfg.bins, cfg.seed);
    if (json_out(cfg))
        os << dump_json(transport_json(tr, cfg.seed)) << '\n';
    else
        write_transport_csv(os, tr, cfg.seed);
}

void dispatch(const RunConfig& cfg, std::ostream& os)
{
    if (cfg.command == "sample") cmd_sample(cfg, os);
    else if (cfg.command == "traces") cmd_traces(cfg, os);
    else if (cfg.command == "construct") cmd_construct(cfg, os);
    else if (cfg.command == "phi-iterate") cmd_phi_iterate(cfg, os);
    else if (cfg.command == "fiber-image") cmd_fiber_image(cfg, os);
    else if (cfg.command == "orbit") cmd_orbit(cfg, os);
    else if (cfg.command == "gap-profile") cmd_gap_profile(cfg, os);
    else if (cfg.command == "defect") cmd_defect(cfg, os);
    else if (cfg.command == "density") cmd_density(cfg, os);
    else if (cfg.command == "fiber-sample") cmd_fiber_sample(cfg, os);
    else if (cfg.command == "fiber-transport") cmd_fiber_transport(cfg, os);
    else throw UsageError("unknown command '" + cfg.command + "'");
}

int run(const RunConfig& cfg)
{
    std::ostringstream buf;
    try {
        dispatch(cfg, buf);
    }
    catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const FormatError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kDomain;
    }
    catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return kConvergence;
    }

    if (cfg.output == "-") {
        std::cout << buf.str();
        std::cout.flush();
        return std::cout ? kOk : kUsage;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
        std::cerr << "usage error: cannot open output file '" << cfg.output << "'\n";
        return kUsage;
    }
    out << buf.str();
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"Trace coordinates, word-map dynamics, truncated spectral gaps and Monte Carlo checks for pairs in SU(2)"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();

    app.add_option("--seed", cfg.seed, "Random seed; identical seeds give byte-identical output");
    app.add_option("-o,--out", cfg.output, "Output file ('-' for stdout)");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", cfg.threads, "Worker threads for Monte Carlo commands")->check(CLI::PositiveNumber);

    auto* sample = app.add_subcommand("sample", "Haar-random pairs");
    sample->add_option("--count", cfg.count, "Number of pairs");

    auto* traces = app.add_subcommand("traces", "Traces (x, y, z) and commutator trace t of a pair");
    traces->add_option("--pair", cfg.pair_spec, "Pair spec: inline JSON or file path")->required();

    auto* construct = app.add_subcommand("construct", "Build a pair from Fricke coordinates or a trace triple");
    construct->add_option("--fricke", cfg.fricke, "X T")->expected(2);
    construct->add_option("--triple", cfg.triple, "X Y Z")->expected(3);

    auto* phi = app.add_subcommand("phi-iterate", "Iterate t -> t^2 - 2 until the value is negative");
    phi->add_option("--t0", cfg.t0, "Start value in [-2, 2]")->required();
    phi->add_option("--max-steps", cfg.max_steps, "Iteration budget");

    auto* fimage = app.add_subcommand("fiber-image", "Commutator-trace interval reached from the fiber over t");
    fimage->add_option("--t", cfg.t, "Fiber parameter in [-2, 2]")->required();
    fimage->add_option("--grid", cfg.grid, "Grid points across the fiber");

    auto* orbit = app.add_subcommand("orbit", "Breadth-first word-map orbit in Fricke coordinates");
    orbit->add_option("--pair", cfg.pair_spec, "Pair spec: inline JSON or file path")->required();
    orbit->add_option("--depth", cfg.depth, "Number of move layers");
    orbit->add_option("--max-points", cfg.max_points, "Truncation size");

    auto* gap = app.add_subcommand("gap-profile", "Per-level spectral gaps of the averaging operator");
    gap->add_option("--pair", cfg.pair_spec, "Pair spec: inline JSON or file path")->required();
    gap->add_option("--nmax", cfg.n_max, "Highest irrep level");
    gap->add_option("--max-iterations", cfg.max_iterations, "Power iteration budget per level");

    auto* defect = app.add_subcommand("defect", "Word-length displacement bound on random unit vectors");
    defect->add_option("--pair", cfg.pair_spec, "Pair spec: inline JSON or file path")->required();
    defect->add_option("--word", cfg.word, "Word in A, B, a = A^-1, b = B^-1");
    defect->add_option("--level", cfg.level, "Irrep level n >= 1");
    defect->add_option("--trials", cfg.trials, "Number of random unit vectors");

    auto* density = app.add_subcommand("density", "Histogram of Fricke coordinates of Haar pairs");
    density->add_option("--samples", cfg.samples, "Number of Haar pairs");
    density->add_option("--bins", cfg.bins, "Bins per axis");
    density->add_option("--delta", cfg.delta, "Also report the fraction within delta of the domain boundary");

    auto* fsample = app.add_subcommand("fiber-sample", "Pairs with a prescribed commutator trace");
    fsample->add_option("--t", cfg.t, "Commutator trace in [-2, 2]")->required();
    fsample->add_option("--count", cfg.count, "Number of pairs");

    auto* transport = app.add_subcommand("fiber-transport", "Commutator traces after (a, b) -> (a^2, b) on fiber samples");
    transport->add_option("--t", cfg.t, "Commutator trace in [-2, 2]")->required();
    transport->add_option("--count", cfg.count, "Number of fiber samples");
    transport->add_option("--bins", cfg.bins, "Histogram bins over [-2, 2]");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    for (auto* sub : app.get_subcommands())
        cfg.command = sub->get_name();
    return run(cfg);
}
