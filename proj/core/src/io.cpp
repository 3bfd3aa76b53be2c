#include "nasearch/io.hpp"

#include "nasearch/errors.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace nasearch {

std::string code_version() { return NASEARCH_VERSION; }

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << "t,P_s,P_p,re_as,im_as,re_ap,im_ap\n";
    for (const auto& s : traj.samples) {
        out << format_double(s.t / traj.time_unit) << ',' << format_double(s.p_s) << ','
            << format_double(s.p_p) << ',' << format_double(s.state.a_s.real()) << ','
            << format_double(s.state.a_s.imag()) << ',' << format_double(s.state.a_p.real()) << ','
            << format_double(s.state.a_p.imag()) << '\n';
    }
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    write_trajectory_csv(traj, out);
    return out.str();
}

nlohmann::json trajectory_meta(const Trajectory& traj) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [key, value] : traj.parameters) {
        params[key] = value;
    }
    return {
        {"label", traj.label},
        {"time_unit", traj.time_unit},
        {"parameters", params},
        {"samples", traj.samples.size()},
        {"integrator",
         {{"method", "dopri5"},
          {"tol", traj.settings.tol},
          {"initial_step", traj.settings.initial_step},
          {"remove_trace", traj.settings.remove_trace}}},
        {"stats", {{"steps", traj.stats.steps}, {"max_norm_drift", traj.stats.max_norm_drift}}},
        {"version", code_version()},
    };
}

nlohmann::json grid_json(const ProbabilityGrid& grid, const nlohmann::json& meta) {
    nlohmann::json out;
    out["a_values"] = grid.a_values;
    out["b_values"] = grid.b_values;
    out["p"] = grid.p;
    if (grid.spec.n) {
        out["N"] = *grid.spec.n;
    } else {
        out["N"] = "inf";
    }
    out["meta"] = meta;
    return out;
}

nlohmann::json grid_provenance_summary(const ProbabilityGrid& grid) {
    std::size_t cells = 0;
    std::size_t asymptotic = 0;
    std::size_t extended = 0;
    double worst = 0.0;
    for (const auto& row : grid.provenance) {
        for (const auto& c : row) {
            ++cells;
            asymptotic += c.asymptotic_branch ? 1 : 0;
            extended += c.extended_precision ? 1 : 0;
            worst = std::max(worst, c.estimated_error);
        }
    }
    return {{"cells", cells},
            {"accurate", grid.accurate_cells()},
            {"asymptotic_branch", asymptotic},
            {"extended_precision", extended},
            {"max_estimated_error", worst}};
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open " + tmp.string() + " for writing");
        }
        out << content;
        if (!out) {
            throw Error("write to " + tmp.string() + " failed");
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace nasearch
