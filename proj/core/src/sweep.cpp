#include "nasearch/sweep.hpp"

#include "nasearch/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace nasearch {

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    if (count == 1) {
        return {lo};
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = lo + step * i;
    }
    out.back() = hi;
    return out;
}

}  // namespace

void GridSpec::validate() const {
    // A single cell is allowed on an axis collapsed to one point.
    auto axis = [](double lo, double hi, int count, const char* name) {
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            throw ValidationError(std::string("grid: ") + name + " range must be finite");
        }
        if (count < 1) {
            throw ValidationError(std::string("grid: ") + name + " needs at least 1 cell");
        }
        if (count == 1 && hi != lo) {
            throw ValidationError(std::string("grid: a single ") + name + " cell needs min == max");
        }
        if (count >= 2 && !(hi > lo)) {
            throw ValidationError(std::string("grid: ") + name + " range must be increasing");
        }
    };
    if (!(a_min > 0.0)) {
        throw ValidationError("grid: a_min must be > 0");
    }
    axis(a_min, a_max, n_a, "a");
    axis(b_min, b_max, n_b, "b");
    if (n && *n < 2) {
        throw ValidationError("grid: N must be >= 2");
    }
}

std::vector<double> GridSpec::a_values() const { return linspace(a_min, a_max, n_a); }
std::vector<double> GridSpec::b_values() const { return linspace(b_min, b_max, n_b); }

std::size_t ProbabilityGrid::accurate_cells() const {
    std::size_t count = 0;
    for (const auto& row : provenance) {
        count += static_cast<std::size_t>(
            std::count_if(row.begin(), row.end(), [](const CellProvenance& c) { return c.accurate; }));
    }
    return count;
}

unsigned default_worker_count() {
    if (const char* env = std::getenv("NASEARCH_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
    if (workers == 0) {
        workers = default_worker_count();
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::pair<double, CellProvenance> evaluate_cell(std::optional<std::int64_t> n, double a, double b) {
    auto eval = [&](const PcfOptions& options) {
        return n ? algII_limit_prob(*n, a, b, options) : algII_limit_prob_inf(a, b, options);
    };
    CellProvenance prov;
    LimitProbability lp{};
    try {
        lp = eval({});
    } catch (const AccuracyError& e) {
        PcfOptions relaxed;
        relaxed.max_rel_error = std::numeric_limits<double>::infinity();
        lp = eval(relaxed);
        lp.accurate = false;
        prov.failure = e.what();
    }
    prov.accurate = lp.accurate;
    prov.asymptotic_branch = lp.asymptotic_branch;
    prov.extended_precision = lp.extended_precision;
    prov.estimated_error = lp.estimated_error;
    if (!lp.accurate && prov.failure.empty()) {
        prov.failure = "estimated error above 1e-8 or raw value outside [0, 1]";
    }
    return {lp.value, prov};
}

ProbabilityGrid sweep_ab(const GridSpec& spec, unsigned workers) {
    spec.validate();
    ProbabilityGrid grid;
    grid.spec = spec;
    grid.a_values = spec.a_values();
    grid.b_values = spec.b_values();
    const std::size_t na = grid.a_values.size();
    const std::size_t nb = grid.b_values.size();
    grid.p.assign(nb, std::vector<double>(na, 0.0));
    grid.provenance.assign(nb, std::vector<CellProvenance>(na));
    parallel_for(na * nb, workers, [&](std::size_t idx) {
        const std::size_t i = idx / na;
        const std::size_t j = idx % na;
        auto [value, prov] = evaluate_cell(spec.n, grid.a_values[j], grid.b_values[i]);
        grid.p[i][j] = value;
        grid.provenance[i][j] = std::move(prov);
    });
    return grid;
}

FigureId parse_figure_id(const std::string& name) {
    if (name == "fig1") {
        return FigureId::fig1;
    }
    if (name == "fig2") {
        return FigureId::fig2;
    }
    if (name == "fig5") {
        return FigureId::fig5;
    }
    throw UsageError("unknown figure id '" + name + "' (expected fig1, fig2 or fig5)");
}

std::string to_string(FigureId id) {
    switch (id) {
        case FigureId::fig1: return "fig1";
        case FigureId::fig2: return "fig2";
        case FigureId::fig5: return "fig5";
    }
    return "unknown";
}

std::vector<Trajectory> figure_dataset(FigureId id, const FigureOverrides& overrides) {
    IntegratorSettings settings;
    settings.tol = overrides.tol;
    std::vector<std::function<Trajectory()>> jobs;
    const std::size_t samples = overrides.samples;
    const std::string tag = to_string(id);

    switch (id) {
        case FigureId::fig1:
            for (std::int64_t n : {50, 500, 5000}) {
                jobs.emplace_back([=] {
                    const ScheduleI s(n, 1.0, 1.0);
                    const auto grid = uniform_grid(3.0 * s.tau(), samples);
                    auto traj = simulate_I(s, grid, settings);
                    traj.time_unit = s.tau();
                    traj.label = tag + ":N=" + std::to_string(n);
                    return traj;
                });
            }
            break;
        case FigureId::fig2:
            for (double rate : {0.31, 0.10, 0.05}) {
                jobs.emplace_back([=] {
                    const double tau = ScheduleI(5000, 1.0, 0.0).tau();
                    const ScheduleI s(5000, 1.0, -rate / tau);
                    const auto grid = uniform_grid(3.0 * *s.crossing_time(), samples);
                    auto traj = simulate_I(s, grid, settings);
                    traj.time_unit = tau;
                    traj.label = tag + ":alpha_tau=-" + std::to_string(rate).substr(0, 4);
                    return traj;
                });
            }
            break;
        case FigureId::fig5:
            for (double a : {1.0, 5.0, 20.0}) {
                jobs.emplace_back([=] {
                    const ScheduleII s(1'000'000, a, 4.5);
                    const auto grid = uniform_grid(20.0, samples);
                    auto traj = simulate_II(s, grid, settings);
                    traj.label = tag + ":a=" + std::to_string(static_cast<int>(a));
                    return traj;
                });
            }
            break;
    }

    std::vector<Trajectory> out(jobs.size());
    parallel_for(jobs.size(), overrides.workers, [&](std::size_t i) { out[i] = jobs[i](); });
    return out;
}

}  // namespace nasearch
