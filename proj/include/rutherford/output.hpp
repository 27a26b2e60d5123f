#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "rutherford/config.hpp"
#include "rutherford/error.hpp"
#include "rutherford/experiment.hpp"

namespace rutherford {

inline constexpr const char* kVersion = "1.0.0";

/// Column suffix for a packet width, e.g. "20" or "2.5".
inline std::string sigma_tag(double sigma) { return format_double(sigma); }

/// CSV: t, x_cl, p_cl, F_cl, then for each sigma mean_x, mean_p, mean_F,
/// spread, norm, energy. One row per sample.
inline void write_series(const ObservableSeries& s, std::ostream& out) {
    if (s.times.empty()) throw InvalidArgument("write_series: empty series");
    out << "t,x_cl,p_cl,F_cl";
    for (const auto& q : s.quantum) {
        const std::string tag = sigma_tag(q.sigma);
        for (const char* name : {"mean_x_", "mean_p_", "mean_F_", "spread_", "norm_", "energy_"})
            out << ',' << name << tag;
    }
    out << '\n';
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        out << format_double(s.times[i]) << ',' << format_double(s.classical.x[i]) << ','
            << format_double(s.classical.p[i]) << ',' << format_double(s.classical.force[i]);
        for (const auto& q : s.quantum) {
            out << ',' << format_double(q.mean_x[i]) << ',' << format_double(q.mean_p[i]) << ','
                << format_double(q.mean_force[i]) << ',' << format_double(q.spread[i]) << ','
                << format_double(q.norm[i]) << ',' << format_double(q.mean_energy[i]);
        }
        out << '\n';
    }
}

namespace detail {

inline std::string format_turning(const TurningPoint& tp, bool distance) {
    if (!tp.reached) return "not_reached";
    return format_double(distance ? tp.distance : tp.time);
}

inline const char* format_bool(bool b) { return b ? "true" : "false"; }

} // namespace detail

/// Flat key = value summary. Every key is written; unavailable values read
/// "not_reached" (turning points) or "none" (force crossover).
inline void write_metrics(const ComparisonMetrics& m, std::ostream& out) {
    out << "coupling_k = " << format_double(m.coupling_k) << '\n';
    out << "initial_energy_classical = " << format_double(m.initial_energy_classical) << '\n';
    out << "closest_approach_oracle = "
        << (m.closest_approach_oracle ? format_double(*m.closest_approach_oracle) : std::string("none")) << '\n';
    out << "closest_approach_classical = " << detail::format_turning(m.classical_turning, true) << '\n';
    out << "turning_time_classical = " << detail::format_turning(m.classical_turning, false) << '\n';
    out << "classical_energy_drift = " << format_double(m.classical_energy_drift) << '\n';
    for (const auto& s : m.per_sigma) {
        const std::string tag = sigma_tag(s.sigma);
        out << "closest_approach_quantum_" << tag << " = " << detail::format_turning(s.turning, true) << '\n';
        out << "turning_time_quantum_" << tag << " = " << detail::format_turning(s.turning, false) << '\n';
        out << "force_crossover_time_" << tag << " = "
            << (s.force_crossover_time ? format_double(*s.force_crossover_time) : std::string("none")) << '\n';
        out << "jensen_t0_satisfied_" << tag << " = " << detail::format_bool(s.jensen_t0_satisfied) << '\n';
        out << "force_t0_quantum_" << tag << " = " << format_double(s.force_t0_quantum) << '\n';
        out << "force_t0_classical_" << tag << " = " << format_double(s.force_t0_classical) << '\n';
        out << "max_lag_" << tag << " = " << format_double(s.max_lag) << '\n';
        out << "lag_holds_" << tag << " = " << detail::format_bool(s.lag_holds) << '\n';
        out << "quantum_exceeds_classical_" << tag << " = " << detail::format_bool(s.exceeds_classical) << '\n';
        out << "max_norm_drift_" << tag << " = " << format_double(s.max_norm_drift) << '\n';
        out << "max_energy_drift_" << tag << " = " << format_double(s.max_energy_drift) << '\n';
    }
}

/// Everything needed to reproduce a run: the resolved configuration, the
/// grid actually used, the softening radius and the library version.
inline void write_metadata(const RunConfig& c, const ComparisonResult& r, const UnitSystem& units,
                           std::ostream& out) {
    out << "version = " << kVersion << '\n';
    out << render_config(c);
    out << "hbar_c = " << format_double(units.hbar_c) << '\n';
    out << "alpha_fs = " << format_double(units.alpha_fs) << '\n';
    out << "potential = " << (r.metrics.coupling_k > 0.0 ? "coulomb" : "free") << '\n';
    out << "grid_x_min = " << format_double(r.grid.x_min) << '\n';
    out << "grid_x_max = " << format_double(r.grid.x_max) << '\n';
    out << "grid_n_points = " << r.grid.n_points << '\n';
    out << "grid_dx = " << format_double(r.grid.dx) << '\n';
    out << "grid_shift = " << format_double(r.grid.shift) << '\n';
    out << "softening_cut_used = " << format_double(r.softening_cut) << '\n';
    out << "boundary = dirichlet\n";
    out << "samples = " << r.series.times.size() << '\n';
}

struct OutputBundle {
    std::filesystem::path series_csv;
    std::filesystem::path metrics;
    std::filesystem::path metadata;
};

namespace detail {

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& w) {
    std::ostringstream buf;
    w(buf);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + path.string() + " for writing");
    f << buf.str();
    f.close();
    if (!f) throw Error("failed writing " + path.string());
}

} // namespace detail

inline void write_series(const ObservableSeries& s, const std::filesystem::path& path) {
    detail::write_file(path, [&](std::ostream& o) { write_series(s, o); });
}

inline void write_metrics(const ComparisonMetrics& m, const std::filesystem::path& path) {
    detail::write_file(path, [&](std::ostream& o) { write_metrics(m, o); });
}

inline OutputBundle write_bundle(const RunConfig& c, const ComparisonResult& r, const UnitSystem& units,
                                 const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
    OutputBundle b{dir / "series.csv", dir / "metrics.txt", dir / "metadata.txt"};
    write_series(r.series, b.series_csv);
    write_metrics(r.metrics, b.metrics);
    detail::write_file(b.metadata, [&](std::ostream& o) { write_metadata(c, r, units, o); });
    return b;
}

} // namespace rutherford
