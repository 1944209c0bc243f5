#include "su2gap/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "su2gap/trace_geometry.hpp"

namespace su2gap {

std::string format_real(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void dump_into(std::string& out, const nlohmann::json& j)
{
    switch (j.type()) {
    case nlohmann::json::value_t::object: {
        out += '{';
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first)
                out += ", ";
            first = false;
            out += nlohmann::json(key).dump();
            out += ": ";
            dump_into(out, value);
        }
        out += '}';
        break;
    }
    case nlohmann::json::value_t::array: {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i)
                out += ", ";
            dump_into(out, j[i]);
        }
        out += ']';
        break;
    }
    case nlohmann::json::value_t::number_float: {
        const double v = j.get<double>();
        // JSON has no inf/nan literals
        out += std::isfinite(v) ? format_real(v) : "null";
        break;
    }
    default:
        out += j.dump();
    }
}

} // namespace

std::string dump_json(const nlohmann::json& j)
{
    std::string out;
    dump_into(out, j);
    return out;
}

namespace {

double number_field(const nlohmann::json& spec, const char* key)
{
    if (!spec.contains(key) || !spec.at(key).is_number())
        throw FormatError(std::string("pair spec needs numeric field \"") + key + "\"");
    return spec.at(key).get<double>();
}

SU2d element_from_array(const nlohmann::json& spec, const char* key)
{
    if (!spec.contains(key) || !spec.at(key).is_array() || spec.at(key).size() != 4)
        throw FormatError(std::string("matrix pair spec needs \"") + key + "\": [re alpha, im alpha, re beta, im beta]");
    double v[4];
    for (std::size_t i = 0; i < 4; ++i) {
        if (!spec.at(key)[i].is_number())
            throw FormatError(std::string("non-numeric entry in \"") + key + "\"");
        v[i] = spec.at(key)[i].get<double>();
    }
    const SU2d g({v[0], v[1]}, {v[2], v[3]});
    if (unitarity_defect(g) > 1e-9)
        throw DomainError(std::string("element \"") + key + "\" is not in SU(2): |alpha|^2 + |beta|^2 = " +
                          format_real(g.norm_squared()));
    return unitarity_defect(g) <= 4 * std::numeric_limits<double>::epsilon() ? g : g.normalized();
}

nlohmann::json element_array(const SU2d& g)
{
    return nlohmann::json::array({g.alpha().real(), g.alpha().imag(), g.beta().real(), g.beta().imag()});
}

std::string schema_header(const std::string& command, const std::string& fields)
{
    std::string s = "# schema=" + std::to_string(kSchemaVersion) + ",command=" + command;
    if (!fields.empty())
        s += "," + fields;
    return s + "\n";
}

} // namespace

Paird parse_pair_spec(const nlohmann::json& spec)
{
    if (!spec.is_object() || !spec.contains("type") || !spec.at("type").is_string())
        throw FormatError("pair spec must be an object with a string \"type\"");
    const std::string type = spec.at("type").get<std::string>();
    if (type == "matrix")
        return {element_from_array(spec, "a"), element_from_array(spec, "b")};
    if (type == "fricke")
        return pair_from_fricke(number_field(spec, "x"), number_field(spec, "t"));
    if (type == "traces")
        return pair_from_traces(number_field(spec, "x"), number_field(spec, "y"), number_field(spec, "z"));
    throw FormatError("unknown pair spec type \"" + type + "\" (expected matrix, fricke or traces)");
}

Paird read_pair_spec(const std::string& source)
{
    std::string text;
    const auto first = source.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && source[first] == '{') {
        text = source;
    }
    else {
        std::ifstream in(source);
        if (!in)
            throw FormatError("cannot open pair spec file '" + source + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("pair spec is not valid JSON: ") + e.what());
    }
    return parse_pair_spec(j);
}

nlohmann::json pair_spec_json(const Paird& p)
{
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "matrix";
    j["a"] = element_array(p.a);
    j["b"] = element_array(p.b);
    return j;
}

// ---------------------------------------------------------------------------
// CSV

void write_escape_csv(std::ostream& os, const EscapeRecord<double>& rec)
{
    os << schema_header("phi-iterate", "t0=" + format_real(rec.t0) + ",steps_to_negative=" +
                                            (rec.escaped() ? std::to_string(*rec.steps_to_negative) : "not-reached"));
    os << "step,t\n";
    for (std::size_t k = 0; k < rec.orbit.size(); ++k)
        os << k << ',' << format_real(rec.orbit[k]) << '\n';
}

void write_orbit_csv(std::ostream& os, const std::vector<OrbitPoint<double>>& orbit, std::size_t depth)
{
    os << schema_header("orbit", "depth=" + std::to_string(depth) + ",points=" + std::to_string(orbit.size()));
    os << "path,x,t\n";
    for (const auto& pt : orbit) {
        const std::string label = pt.path_label();
        os << (label.empty() ? "-" : label) << ',' << format_real(pt.coord.x) << ',' << format_real(pt.coord.t) << '\n';
    }
}

void write_gap_profile_csv(std::ostream& os, const GapProfile& prof)
{
    os << schema_header("gap-profile", "min_gap=" + format_real(prof.min_gap) + ",argmin_level=" +
                                            std::to_string(prof.argmin_level) + ",n_max=" + std::to_string(prof.n_max));
    os << "n,dim,gap\n";
    for (const auto& l : prof.levels)
        os << l.n << ',' << l.dim << ',' << format_real(l.gap) << '\n';
}

void write_histogram_csv(std::ostream& os, const Histogram2D& h, const std::string& extra)
{
    std::string fields = "x_range=-2:2,t_range=-2:2,bins=" + std::to_string(h.bins) + ",total=" + std::to_string(h.total) +
                         ",seed=" + std::to_string(h.seed);
    if (!extra.empty())
        fields += "," + extra;
    os << schema_header("density", fields);
    os << "row,col,count\n";
    for (int r = 0; r < h.bins; ++r)
        for (int c = 0; c < h.bins; ++c)
            os << r << ',' << c << ',' << h.at(r, c) << '\n';
}

void write_fiber_csv(std::ostream& os, const FiberSample& fs, std::uint64_t seed)
{
    os << schema_header("fiber-sample", "t=" + format_real(fs.t) + ",count=" + std::to_string(fs.pairs.size()) +
                                             ",seed=" + std::to_string(seed) + ",degenerate=" + (fs.degenerate ? "1" : "0"));
    os << "a_re_alpha,a_im_alpha,a_re_beta,a_im_beta,b_re_alpha,b_im_alpha,b_re_beta,b_im_beta,x,y,z,t\n";
    for (const auto& p : fs.pairs) {
        const auto tr = trace_triple(p);
        const double t = commutator(p.a, p.b).trace();
        for (const SU2d* g : {&p.a, &p.b})
            os << format_real(g->alpha().real()) << ',' << format_real(g->alpha().imag()) << ','
               << format_real(g->beta().real()) << ',' << format_real(g->beta().imag()) << ',';
        os << format_real(tr.x) << ',' << format_real(tr.y) << ',' << format_real(tr.z) << ',' << format_real(t) << '\n';
    }
}

void write_transport_csv(std::ostream& os, const TransportResult& tr, std::uint64_t seed)
{
    os << schema_header("fiber-transport",
                        "t=" + format_real(tr.t) + ",count=" + std::to_string(tr.values.size()) + ",seed=" +
                            std::to_string(seed) + ",expected_lo=" + format_real(tr.expected.lo) + ",expected_hi=" +
                            format_real(tr.expected.hi) + ",observed_lo=" + format_real(tr.observed.lo) +
                            ",observed_hi=" + format_real(tr.observed.hi));
    os << "bin,lo,hi,count\n";
    const double width = 4.0 / double(tr.histogram.size());
    for (std::size_t i = 0; i < tr.histogram.size(); ++i)
        os << i << ',' << format_real(-2.0 + width * double(i)) << ',' << format_real(-2.0 + width * double(i + 1)) << ','
           << tr.histogram[i] << '\n';
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json escape_json(const EscapeRecord<double>& rec)
{
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "phi-iterate";
    j["t0"] = rec.t0;
    j["orbit"] = rec.orbit;
    if (rec.escaped())
        j["steps_to_negative"] = *rec.steps_to_negative;
    else
        j["steps_to_negative"] = "not-reached";
    return j;
}

nlohmann::json orbit_json(const std::vector<OrbitPoint<double>>& orbit, std::size_t depth)
{
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "orbit";
    j["depth"] = depth;
    auto& pts = j["points"] = nlohmann::json::array();
    for (const auto& pt : orbit)
        pts.push_back({{"path", pt.path_label()},
                       {"x", pt.coord.x},
                       {"t", pt.coord.t},
                       {"word_a", pt.words.first.str()},
                       {"word_b", pt.words.second.str()}});
    return j;
}

nlohmann::json gap_profile_json(const GapProfile& prof)
{
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "gap-profile";
    j["min_gap"] = prof.min_gap;
    j["argmin_level"] = prof.argmin_level;
    j["n_max"] = prof.n_max;
    j["note"] = "truncated profile: evidence about a spectral gap, not a certificate";
    auto& lv = j["levels"] = nlohmann::json::array();
    for (const auto& l : prof.levels)
        lv.push_back({{"n", l.n}, {"dim", l.dim}, {"gap", l.gap}});
    return j;
}

nlohmann::json histogram_json(const Histogram2D& h)
{
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "density";
    j["x_range"] = {-2.0, 2.0};
    j["t_range"] = {-2.0, 2.0};
    j["bins"] = h.bins;
    j["total"] = h.total;
    j["seed"] = h.seed;
    j["max_domain_excess"] = h.max_domain_excess;
    j["counts"] = h.counts;
    return j;
}

nlohmann::json fiber_json(const FiberSample& fs, std::uint64_t seed)
{
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "fiber-sample";
    j["t"] = fs.t;
    j["seed"] = seed;
    j["degenerate"] = fs.degenerate;
    auto& pairs = j["pairs"] = nlohmann::json::array();
    for (const auto& p : fs.pairs) {
        nlohmann::json e = pair_spec_json(p);
        e.erase("schema");
        pairs.push_back(std::move(e));
    }
    return j;
}

nlohmann::json transport_json(const TransportResult& tr, std::uint64_t seed)
{
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "fiber-transport";
    j["t"] = tr.t;
    j["seed"] = seed;
    j["expected"] = {tr.expected.lo, tr.expected.hi};
    j["observed"] = {tr.observed.lo, tr.observed.hi};
    j["histogram"] = tr.histogram;
    return j;
}

} // namespace su2gap
