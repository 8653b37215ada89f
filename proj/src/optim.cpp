#include "memc/optim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "memc/errors.hpp"
#include "memc/rng.hpp"

namespace memc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared evaluation wrapper: clamps non-finite values to +inf, appends to the
// trace, enforces the evaluation budget.
class Recorder {
public:
    Recorder(const Objective& objective, int max_evaluations)
        : objective_(objective), max_evaluations_(max_evaluations) {}

    bool exhausted() const { return evaluations_ >= max_evaluations_; }
    int evaluations() const { return evaluations_; }
    double best_value() const { return best_value_; }
    const std::vector<double>& best_point() const { return best_point_; }
    OptimizerTrace take_trace() { return std::move(trace_); }

    double operator()(std::span<const double> x) {
        double v = objective_(x);
        if (!std::isfinite(v)) v = kInf;
        ++evaluations_;
        if (v < best_value_) {
            best_value_ = v;
            best_point_.assign(x.begin(), x.end());
        }
        trace_.entries.push_back(
            {evaluations_, std::vector<double>(x.begin(), x.end()), v, best_value_});
        return v;
    }

private:
    const Objective& objective_;
    int max_evaluations_;
    int evaluations_ = 0;
    double best_value_ = kInf;
    std::vector<double> best_point_;
    OptimizerTrace trace_;
};

OptimizeResult finish(Recorder& rec, bool converged) {
    OptimizeResult result;
    result.best_point = rec.best_point();
    result.best_value = rec.best_value();
    result.converged = converged;
    result.evaluations = rec.evaluations();
    result.trace = rec.take_trace();
    return result;
}

}  // namespace

void OptimizerConfig::validate(int dimensions) const {
    if (max_evaluations < 1) throw ValidationError("max_evaluations must be >= 1");
    if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive");
    if (bounds) {
        if (static_cast<int>(bounds->size()) != dimensions)
            throw ValidationError("bounds dimension mismatch");
        for (const auto& [lo, hi] : *bounds)
            if (!(lo <= hi)) throw ValidationError("bounds must satisfy lo <= hi");
    }
}

OptimizeResult nelder_mead(const Objective& objective, std::vector<double> initial,
                           const OptimizerConfig& config) {
    const int d = static_cast<int>(initial.size());
    if (d < 1) throw ValidationError("nelder_mead needs at least one dimension");
    config.validate(d);

    auto clamp = [&](std::vector<double>& x) {
        if (!config.bounds) return;
        for (int i = 0; i < d; ++i) {
            const auto& [lo, hi] = (*config.bounds)[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(i)] = std::clamp(x[static_cast<std::size_t>(i)], lo, hi);
        }
    };
    clamp(initial);

    Recorder rec(objective, config.max_evaluations);

    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    pts.push_back(initial);
    for (int i = 0; i < d; ++i) {
        auto p = initial;
        double step = 0.1;
        if (config.bounds) {
            const auto& [lo, hi] = (*config.bounds)[static_cast<std::size_t>(i)];
            if (hi > lo) step = 0.05 * (hi - lo);
        }
        p[static_cast<std::size_t>(i)] += step;
        clamp(p);
        if (p == pts[0]) p[static_cast<std::size_t>(i)] -= 2.0 * step;  // step hit the bound
        clamp(p);
        pts.push_back(p);
    }
    for (auto& p : pts) {
        if (rec.exhausted()) return finish(rec, false);
        vals.push_back(rec(p));
    }
    if (*std::min_element(vals.begin(), vals.end()) == kInf)
        return finish(rec, false);  // nothing evaluable in the initial simplex

    std::vector<std::size_t> ord(pts.size());
    auto sort_simplex = [&]() {
        for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = i;
        std::stable_sort(ord.begin(), ord.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    };

    auto diameter = [&]() {
        double dia = 0.0;
        for (std::size_t r = 1; r < pts.size(); ++r)
            for (int i = 0; i < d; ++i)
                dia = std::max(dia, std::abs(pts[r][static_cast<std::size_t>(i)] -
                                             pts[0][static_cast<std::size_t>(i)]));
        return dia;
    };

    while (!rec.exhausted()) {
        sort_simplex();
        const std::size_t best = ord.front(), worst = ord.back();
        // plateau in values alone is not enough: a symmetric simplex around a
        // kink ties the values while straddling the minimum
        if (vals[best] < kInf && vals[worst] < kInf &&
            vals[worst] - vals[best] <= config.tolerance && diameter() <= config.tolerance)
            return finish(rec, true);

        std::vector<double> centroid(static_cast<std::size_t>(d), 0.0);
        for (std::size_t r = 0; r + 1 < ord.size(); ++r)
            for (int i = 0; i < d; ++i)
                centroid[static_cast<std::size_t>(i)] +=
                    pts[ord[r]][static_cast<std::size_t>(i)] / static_cast<double>(d);

        auto blend = [&](double coef) {
            std::vector<double> x(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                x[static_cast<std::size_t>(i)] =
                    centroid[static_cast<std::size_t>(i)] +
                    coef * (pts[worst][static_cast<std::size_t>(i)] -
                            centroid[static_cast<std::size_t>(i)]);
            clamp(x);
            return x;
        };

        auto reflected = blend(-1.0);
        double fr = rec(reflected);
        if (fr < vals[best]) {
            if (!rec.exhausted()) {
                auto expanded = blend(-2.0);
                double fe = rec(expanded);
                if (fe < fr) {
                    pts[worst] = std::move(expanded);
                    vals[worst] = fe;
                    continue;
                }
            }
            pts[worst] = std::move(reflected);
            vals[worst] = fr;
            continue;
        }
        const std::size_t second_worst = ord[ord.size() - 2];
        if (fr < vals[second_worst]) {
            pts[worst] = std::move(reflected);
            vals[worst] = fr;
            continue;
        }
        if (rec.exhausted()) break;
        auto contracted = blend(fr < vals[worst] ? -0.5 : 0.5);
        double fc = rec(contracted);
        if (fc < std::min(vals[worst], fr)) {
            pts[worst] = std::move(contracted);
            vals[worst] = fc;
            continue;
        }
        // shrink toward the best vertex
        for (std::size_t r = 1; r < ord.size() && !rec.exhausted(); ++r) {
            std::size_t v = ord[r];
            for (int i = 0; i < d; ++i)
                pts[v][static_cast<std::size_t>(i)] =
                    pts[best][static_cast<std::size_t>(i)] +
                    0.5 * (pts[v][static_cast<std::size_t>(i)] -
                           pts[best][static_cast<std::size_t>(i)]);
            clamp(pts[v]);
            vals[v] = rec(pts[v]);
        }
    }
    return finish(rec, false);
}

OptimizeResult grid_scan(const Objective& objective,
                         const std::vector<std::vector<double>>& grids) {
    if (grids.empty()) throw ValidationError("grid_scan needs at least one dimension");
    double total = 1.0;
    for (const auto& g : grids) {
        if (g.empty()) throw ValidationError("grid_scan dimension has no points");
        total *= static_cast<double>(g.size());
    }
    if (total > 1e6)
        throw CapacityError("grid_scan over " + std::to_string(total) + " points exceeds 1e6");

    Recorder rec(objective, static_cast<int>(total));
    const int d = static_cast<int>(grids.size());
    std::vector<std::size_t> digit(static_cast<std::size_t>(d), 0);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (;;) {
        for (int i = 0; i < d; ++i)
            x[static_cast<std::size_t>(i)] =
                grids[static_cast<std::size_t>(i)][digit[static_cast<std::size_t>(i)]];
        rec(x);  // strict improvement keeps the lexicographically first point
        int i = d - 1;
        for (; i >= 0; --i) {
            if (++digit[static_cast<std::size_t>(i)] < grids[static_cast<std::size_t>(i)].size())
                break;
            digit[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0) break;
    }
    return finish(rec, true);
}

OptimizeResult random_search(const Objective& objective,
                             const std::vector<std::pair<double, double>>& bounds,
                             const OptimizerConfig& config) {
    if (bounds.empty()) throw ValidationError("random_search requires bounds");
    OptimizerConfig cfg = config;
    cfg.bounds = bounds;
    cfg.validate(static_cast<int>(bounds.size()));

    Rng rng(config.seed);
    Recorder rec(objective, config.max_evaluations);
    std::vector<double> x(bounds.size());
    while (!rec.exhausted()) {
        for (std::size_t i = 0; i < bounds.size(); ++i)
            x[i] = rng.uniform(bounds[i].first, bounds[i].second);
        rec(x);
    }
    return finish(rec, true);
}

void write_trace_csv(const OptimizerTrace& trace, std::ostream& out) {
    const std::size_t d = trace.entries.empty() ? 0 : trace.entries.front().params.size();
    out << "eval";
    for (std::size_t i = 0; i < d; ++i) out << ",param_" << i;
    out << ",objective,best_so_far\n";
    char buf[64];
    for (const auto& e : trace.entries) {
        out << e.eval;
        for (double p : e.params) {
            std::snprintf(buf, sizeof(buf), "%.10g", p);
            out << ',' << buf;
        }
        std::snprintf(buf, sizeof(buf), "%.10g", e.value);
        out << ',' << buf;
        std::snprintf(buf, sizeof(buf), "%.10g", e.best_so_far);
        out << ',' << buf << '\n';
    }
}

}  // namespace memc
