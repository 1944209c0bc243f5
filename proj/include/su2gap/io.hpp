#ifndef SU2GAP_IO_HPP
#define SU2GAP_IO_HPP

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "su2gap/dynamics.hpp"
#include "su2gap/measure.hpp"
#include "su2gap/spectral.hpp"
#include "su2gap/su2.hpp"

namespace su2gap {

inline constexpr int kSchemaVersion = 1;

/// Input is malformed (bad JSON, missing field, wrong shape).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 17 significant digits, enough to round-trip a double.
std::string format_real(double v);

/// Compact JSON text with floating-point values printed by format_real.
std::string dump_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Pair specs
//
//   {"type": "matrix", "a": [re alpha, im alpha, re beta, im beta], "b": [...]}
//   {"type": "fricke", "x": ..., "t": ...}
//   {"type": "traces", "x": ..., "y": ..., "z": ...}
//
// "fricke" and "traces" records are realized with pair_from_fricke and
// pair_from_traces. Matrix entries must be unit norm within 1e-9.

Paird parse_pair_spec(const nlohmann::json& spec);

/// `source` is either inline JSON (first non-blank character '{') or a file path.
Paird read_pair_spec(const std::string& source);

nlohmann::json pair_spec_json(const Paird& p);

// ---------------------------------------------------------------------------
// CSV artifacts. Each starts with a "# schema=1,..." header record.

void write_escape_csv(std::ostream& os, const EscapeRecord<double>& rec);
void write_orbit_csv(std::ostream& os, const std::vector<OrbitPoint<double>>& orbit, std::size_t depth);
void write_gap_profile_csv(std::ostream& os, const GapProfile& prof);
void write_histogram_csv(std::ostream& os, const Histogram2D& h, const std::string& extra = {});
void write_fiber_csv(std::ostream& os, const FiberSample& fs, std::uint64_t seed);
void write_transport_csv(std::ostream& os, const TransportResult& tr, std::uint64_t seed);

// JSON counterparts, each with "schema": 1.

nlohmann::json escape_json(const EscapeRecord<double>& rec);
nlohmann::json orbit_json(const std::vector<OrbitPoint<double>>& orbit, std::size_t depth);
nlohmann::json gap_profile_json(const GapProfile& prof);
nlohmann::json histogram_json(const Histogram2D& h);
nlohmann::json fiber_json(const FiberSample& fs, std::uint64_t seed);
nlohmann::json transport_json(const TransportResult& tr, std::uint64_t seed);

} // namespace su2gap

#endif // SU2GAP_IO_HPP
