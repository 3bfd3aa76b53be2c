#pragma once

// Parameter sweeps over the limiting probability p(a, b) and the trajectory
// batches behind the reference figures (fig1, fig2, fig5).

#include "nasearch/analytic.hpp"
#include "nasearch/propagator.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nasearch {

struct GridSpec {
    double a_min = 0.2;
    double a_max = 25.0;
    double b_min = 0.0;
    double b_max = 10.0;
    int n_a = 250;  // 1 only when a_min == a_max, likewise for b
    int n_b = 250;
    std::optional<std::int64_t> n = 100;  // empty selects N -> infinity

    // Throws ValidationError naming the violated constraint.
    void validate() const;
    std::vector<double> a_values() const;
    std::vector<double> b_values() const;
};

struct CellProvenance {
    bool accurate = false;
    bool asymptotic_branch = false;
    bool extended_precision = false;
    double estimated_error = 0.0;
    std::string failure;  // empty unless the evaluation could not meet its tolerance
};

struct ProbabilityGrid {
    GridSpec spec;
    std::vector<double> a_values;
    std::vector<double> b_values;
    // Indexed [b][a].
    std::vector<std::vector<double>> p;
    std::vector<std::vector<CellProvenance>> provenance;

    std::size_t accurate_cells() const;
};

// Worker count from NASEARCH_WORKERS, else the hardware concurrency.
unsigned default_worker_count();

// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
// handled exactly once; callers write to preallocated slots.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

// One cell: p(a, b) with accuracy provenance. Accuracy failures yield the
// best available value flagged as inaccurate instead of throwing.
std::pair<double, CellProvenance> evaluate_cell(std::optional<std::int64_t> n, double a, double b);

// Cell values do not depend on the worker count.
ProbabilityGrid sweep_ab(const GridSpec& spec, unsigned workers = 0);

enum class FigureId { fig1, fig2, fig5 };

// Parses "fig1", "fig2" or "fig5"; throws UsageError otherwise.
FigureId parse_figure_id(const std::string& name);
std::string to_string(FigureId id);

struct FigureOverrides {
    std::size_t samples = 2000;
    double tol = 1e-10;
    unsigned workers = 0;
};

// fig1: N in {50, 500, 5000}, eps = 1, alpha = 1 on [0, 3 tau].
// fig2: N = 5000, eps = 1, alpha in {-0.31, -0.10, -0.05} / tau on [0, 3 t_c].
// fig5: N = 10^6, b = 4.5, a in {1, 5, 20} on [0, 20].
// Figures 1 and 2 report time in units of tau.
std::vector<Trajectory> figure_dataset(FigureId id, const FigureOverrides& overrides = {});

}  // namespace nasearch
