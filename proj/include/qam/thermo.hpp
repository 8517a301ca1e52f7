// Thermodynamics of the distribution-averaged memory.
//
// Averaging the partition function over all admissible pattern-distance
// distributions at fixed minimal distance d (uniform measure on the weight
// simplex) leaves equal weight 1/M on each of the M = n - d + 1 distance
// levels j = d..n:
//
//   z(b) = Z_av / p = (1/M) sum_{j=d}^n cos^{2b}(pi j / 2n)
//
// (verified against a Monte Carlo simplex average in the test suite).
// From z follow the free energy F = -ln(z)/b, the internal energy U, the
// entropy S = b(U - F) <= 0 and the effective input/output relative
// distance D = (2/pi) arccos e^{-F/2}, the order parameter of the
// ordered/disordered transition. In the b = 0 convention the distance-n
// level counts with weight one (0^0 = 1), so z(0) = 1 exactly.
//
// Two evaluation modes: the exact level sum, and a continuum integral
// z(b) = (1/(1-d/n)) int_{d/n}^1 cos^{2b}(pi x/2) dx; they agree up to a
// discretization error of order 1/M (plus a 1/(M b) free-energy term at
// small b from the distance-n endpoint, whose logarithmic continuum
// singularity has no finite discrete counterpart).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace qam::thermo {

enum class EvalMode { exact_sum, integral };

// Width n and minimal Hamming distance d; owns the ln cos(pi j/2n) level
// table used by exact sums (built lazily on first use, thread-safe).
class AverageModel {
public:
    AverageModel(std::int64_t n, std::int64_t d);
    static AverageModel from_relative_distance(std::int64_t n, double d_over_n);

    std::int64_t width() const { return n_; }
    std::int64_t min_distance() const { return d_; }
    std::int64_t level_count() const { return n_ - d_ + 1; }
    double min_rel_distance() const { return static_cast<double>(d_) / static_cast<double>(n_); }

    // ln cos(pi j / 2n) for j = d..n, strictly decreasing, last entry -inf.
    std::span<const double> log_cos_table() const;

private:
    std::int64_t n_;
    std::int64_t d_;
    mutable std::once_flag table_once_;
    mutable std::vector<double> log_cos_;
};

// Z_av / p. Exactly 1 at b = 0; may flush to zero at extreme b (use
// log_z_relative for the stable value).
double z_relative(const AverageModel& model, double b, EvalMode mode = EvalMode::exact_sum);
double log_z_relative(const AverageModel& model, double b, EvalMode mode = EvalMode::exact_sum);

// F = -ln(z)/b, intensive. Requires b > 0; the b -> 0 limit lives in
// high_temperature_limits.
double free_energy(const AverageModel& model, double b, EvalMode mode = EvalMode::exact_sum);

// U = <E> under the level weights; S = b(U - F), never positive.
double internal_energy(const AverageModel& model, double b, EvalMode mode = EvalMode::exact_sum);
double entropy(const AverageModel& model, double b, EvalMode mode = EvalMode::exact_sum);

// D = (2/pi) arccos e^{-F/2} in [d/n, 1]; equivalently the average
// recognition probability is cos^{2b}(pi D / 2).
double effective_distance(const AverageModel& model, double b, EvalMode mode = EvalMode::exact_sum);

struct HighTempLimits {
    double free_energy = 0.0;        // quadrature of the b -> 0 continuum limit
    double effective_distance = 0.0; // (2/pi) arccos e^{-F/2} of the above
    double free_energy_linear = 0.0;        // (1 + d/n) 2 ln 2
    double effective_distance_linear = 0.0; // 2/3 + (2 ln 2 / (pi sqrt 3)) d/n
};

// b -> 0 reference values. The quadrature side integrates
// -(1/(1-a)) int_a^1 2 ln cos(pi x/2) dx with the endpoint log singularity
// subtracted analytically; the linear side carries the first-order d/n
// expansion (remainder O((d/n)^2)). Requires d < n.
HighTempLimits high_temperature_limits(const AverageModel& model);

struct ThermoPoint {
    double b = 0.0;
    double z_rel = 0.0;
    double free_energy = 0.0;
    double internal_energy = 0.0;
    double entropy = 0.0;
    double effective_distance = 0.0;
};

// One pass over the levels (or one pair of quadratures) for all of the
// above; b must be positive.
ThermoPoint compute_point(const AverageModel& model, double b, EvalMode mode = EvalMode::exact_sum);

// Fraction of the plateau gap D must descend before the sweep calls the
// transition started; the crossover estimate b_crossover is where the
// interpolated order parameter crosses that line.
inline constexpr double kOnsetFraction = 0.05;

struct SweepResult {
    std::vector<ThermoPoint> points;
    std::vector<double> entropy_rescaled;  // affine image of S onto [0, 1]
    std::optional<double> b_crossover;
    // Plateau levels read from the grid ends by extrapolating the known
    // F(b) asymptotes; raw endpoint values are kept alongside since the
    // high-b end approaches its plateau only as ln(b)/b.
    double plateau_low_d = 0.0;
    double plateau_high_d = 0.0;
    double endpoint_low_d = 0.0;
    double endpoint_high_d = 0.0;
};

std::vector<double> make_log_grid(double b_min, double b_max, int points_per_decade);
std::vector<double> make_linear_grid(double b_min, double b_max, int count);

// Evaluate every grid point (grid must be positive, strictly increasing)
// and derive crossover and plateau estimates. Points are pure and
// independent.
SweepResult sweep(const AverageModel& model, std::span<const double> grid,
                  EvalMode mode = EvalMode::exact_sum);

// CSV columns b, F, U, S, S_rescaled, D at 12 significant digits, one
// header row, then '#'-prefixed summary lines (crossover and plateaus).
void write_sweep_csv(std::ostream& out, const SweepResult& result);

}  // namespace qam::thermo
