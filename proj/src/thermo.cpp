#include "qam/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "qam/errors.hpp"
#include "qam/numerics.hpp"

namespace qam::thermo {

namespace {

constexpr double kPi = std::numbers::pi;

double distance_of_free_energy(double free_energy) {
    const double u = std::clamp(std::exp(-0.5 * free_energy), 0.0, 1.0);
    return (2.0 / kPi) * std::acos(u);
}

// Shared level-sum / quadrature result: ln z and <E>.
struct BoltzmannSums {
    double log_z = 0.0;
    double mean_energy = 0.0;
};

// Exact mode. Everything runs relative to the leading level j = d, so the
// sum stays in [1, M] for any b; terms are cut off once they underflow
// (the table is strictly decreasing).
BoltzmannSums exact_sums(const AverageModel& model, double b) {
    const auto table = model.log_cos_table();
    const double m_levels = static_cast<double>(model.level_count());
    if (b == 0.0) return {0.0, num::kInf};

    const double lead = table[0];
    if (lead == num::kNegInf) return {num::kNegInf, num::kInf};  // d == n

    num::KahanSum z;
    num::KahanSum weighted_energy;
    for (double lc : table) {
        const double shifted = 2.0 * b * (lc - lead);
        if (shifted < -760.0) break;
        const double t = std::exp(shifted);
        z.add(t);
        weighted_energy.add(t * (-2.0 * lc));
    }
    return {2.0 * b * lead + std::log(z.value()) - std::log(m_levels),
            weighted_energy.value() / z.value()};
}

// Integral mode. Substituting w = sqrt(E(x)) turns
//   int_a^1 e^{-b E(x)} dx  into  (2/pi) int_{wa}^inf h(w) e^{-(b+1/2)w^2} dw
// with h(w) = w / sqrt(1 - e^{-w^2}), which is smooth on the whole range
// (no endpoint singularity at either x = 1 or, for a = 0, at w = 0). The
// same measure with an extra w^2 gives the energy numerator. The leading
// exponential e^{-(b+1/2)wa^2} is carried in the log domain and the
// remaining integral is rescaled to an O(1) decay length, so one adaptive
// scheme covers b from 0 to 1e5 and beyond.
struct IntegralSums {
    double log_plain = 0.0;   // ln int_a^1 e^{-bE} dx
    double mean_energy = 0.0;
};

double smooth_h(double w) {
    if (w == 0.0) return 1.0;
    return w / std::sqrt(-std::expm1(-w * w));
}

IntegralSums integral_sums(const AverageModel& model, double b) {
    const double wa = std::sqrt(-2.0 * num::log_cos_half_pi(model.min_distance(), model.width()));
    const double beta = b + 0.5;
    const double lambda = 1.0 / (2.0 * wa * beta + std::sqrt(beta));
    const double w_max = std::sqrt(wa * wa + 750.0 / beta);
    const double u_max = (w_max - wa) / lambda;

    const auto phase = [&](double u) {
        const double w = wa + lambda * u;
        return beta * (w * w - wa * wa);
    };
    const auto z_integrand = [&](double u) {
        return smooth_h(wa + lambda * u) * std::exp(-phase(u));
    };
    const auto e_integrand = [&](double u) {
        const double w = wa + lambda * u;
        return w * w * smooth_h(w) * std::exp(-phase(u));
    };

    const double tol = 1e-12 * (1.0 + wa);
    const double j_z = num::adaptive_simpson(z_integrand, 0.0, u_max, tol);
    const double j_e = num::adaptive_simpson(e_integrand, 0.0, u_max, tol * (2.0 + wa * wa));

    IntegralSums sums;
    sums.log_plain = std::log(2.0 / kPi) - beta * wa * wa + std::log(lambda) + std::log(j_z);
    sums.mean_energy = j_e / j_z;
    return sums;
}

BoltzmannSums integral_mode_sums(const AverageModel& model, double b) {
    if (b == 0.0) return {0.0, num::kInf};
    if (model.min_distance() == model.width()) return {num::kNegInf, num::kInf};
    const IntegralSums sums = integral_sums(model, b);
    const double one_minus_a =
        static_cast<double>(model.width() - model.min_distance()) /
        static_cast<double>(model.width());
    return {sums.log_plain - std::log(one_minus_a), sums.mean_energy};
}

BoltzmannSums boltzmann_sums(const AverageModel& model, double b, EvalMode mode) {
    if (b < 0.0 || !std::isfinite(b)) throw validation_error("b must be finite and non-negative");
    return mode == EvalMode::exact_sum ? exact_sums(model, b) : integral_mode_sums(model, b);
}

void require_positive_b(double b) {
    if (!(b > 0.0)) throw validation_error("requires b > 0; the b -> 0 limit is provided by high_temperature_limits");
}

std::string format12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

AverageModel::AverageModel(std::int64_t n, std::int64_t d) : n_(n), d_(d) {
    if (n < 1) throw validation_error("width must be positive");
    if (d < 0 || d > n) throw validation_error("minimal distance outside [0, n]");
}

AverageModel AverageModel::from_relative_distance(std::int64_t n, double d_over_n) {
    if (!(d_over_n >= 0.0 && d_over_n <= 1.0)) throw validation_error("d/n outside [0, 1]");
    return AverageModel(n, std::llround(d_over_n * static_cast<double>(n)));
}

std::span<const double> AverageModel::log_cos_table() const {
    std::call_once(table_once_, [this] {
        log_cos_.resize(static_cast<std::size_t>(level_count()));
        for (std::int64_t j = d_; j <= n_; ++j)
            log_cos_[static_cast<std::size_t>(j - d_)] = num::log_cos_half_pi(j, n_);
    });
    return log_cos_;
}

double log_z_relative(const AverageModel& model, double b, EvalMode mode) {
    return boltzmann_sums(model, b, mode).log_z;
}

double z_relative(const AverageModel& model, double b, EvalMode mode) {
    const double log_z = log_z_relative(model, b, mode);
    return log_z == 0.0 ? 1.0 : std::exp(log_z);
}

double free_energy(const AverageModel& model, double b, EvalMode mode) {
    require_positive_b(b);
    return -log_z_relative(model, b, mode) / b;
}

double internal_energy(const AverageModel& model, double b, EvalMode mode) {
    require_positive_b(b);
    return boltzmann_sums(model, b, mode).mean_energy;
}

double entropy(const AverageModel& model, double b, EvalMode mode) {
    require_positive_b(b);
    const BoltzmannSums sums = boltzmann_sums(model, b, mode);
    return b * sums.mean_energy + sums.log_z;
}

double effective_distance(const AverageModel& model, double b, EvalMode mode) {
    require_positive_b(b);
    return distance_of_free_energy(-log_z_relative(model, b, mode) / b);
}

HighTempLimits high_temperature_limits(const AverageModel& model) {
    if (model.min_distance() >= model.width())
        throw validation_error("high-temperature limits require d < n");
    const double a = model.min_rel_distance();
    const double c = static_cast<double>(model.width() - model.min_distance()) /
                     static_cast<double>(model.width());  // 1 - a

    // int_a^1 2 ln cos(pi x/2) dx, flipped to u = 1 - x. The integrable
    // ln u endpoint piece is integrated analytically; what remains,
    // 2 ln(sin(v)/v), is smooth.
    const double analytic = 2.0 * c * (std::log(kPi * c / 2.0) - 1.0);
    const auto smooth = [](double u) {
        const double v = kPi * 0.5 * u;
        if (v < 1e-8) return -v * v / 3.0;
        return 2.0 * std::log(std::sin(v) / v);
    };
    const double rest = num::adaptive_simpson(smooth, 0.0, c, 1e-13);

    HighTempLimits limits;
    limits.free_energy = -(analytic + rest) / c;
    limits.effective_distance = distance_of_free_energy(limits.free_energy);
    limits.free_energy_linear = (1.0 + a) * 2.0 * std::numbers::ln2;
    limits.effective_distance_linear =
        2.0 / 3.0 + 2.0 * std::numbers::ln2 / (kPi * std::numbers::sqrt3) * a;
    return limits;
}

ThermoPoint compute_point(const AverageModel& model, double b, EvalMode mode) {
    require_positive_b(b);
    const BoltzmannSums sums = boltzmann_sums(model, b, mode);
    ThermoPoint point;
    point.b = b;
    point.z_rel = std::exp(sums.log_z);
    point.free_energy = -sums.log_z / b;
    point.internal_energy = sums.mean_energy;
    point.entropy = b * sums.mean_energy + sums.log_z;
    point.effective_distance = distance_of_free_energy(point.free_energy);
    return point;
}

std::vector<double> make_log_grid(double b_min, double b_max, int points_per_decade) {
    if (!(b_min > 0.0) || !(b_max > b_min)) throw validation_error("need 0 < b_min < b_max");
    if (points_per_decade < 1) throw validation_error("points per decade must be positive");
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double b =
            b_min * std::pow(10.0, static_cast<double>(k) / static_cast<double>(points_per_decade));
        if (b >= b_max * (1.0 - 1e-12)) break;
        grid.push_back(b);
    }
    grid.push_back(b_max);
    return grid;
}

std::vector<double> make_linear_grid(double b_min, double b_max, int count) {
    if (!(b_min > 0.0) || !(b_max > b_min)) throw validation_error("need 0 < b_min < b_max");
    if (count < 2) throw validation_error("linear grid needs at least two points");
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] =
            b_min + (b_max - b_min) * static_cast<double>(i) / static_cast<double>(count - 1);
    grid.back() = b_max;
    return grid;
}

namespace {

// Window of points used by a plateau fit: within half a decade of the grid
// end, at least 3 and at most 8 points.
std::size_t plateau_window(std::span<const ThermoPoint> points, bool high_side) {
    const double edge = high_side ? points.back().b : points.front().b;
    const double bound = high_side ? edge / 3.1622776601683795 : edge * 3.1622776601683795;
    std::size_t count = 0;
    for (const auto& pt : points)
        if (high_side ? pt.b >= bound : pt.b <= bound) ++count;
    count = std::max<std::size_t>(count, std::min<std::size_t>(3, points.size()));
    count = std::min<std::size_t>(count, std::min<std::size_t>(8, points.size()));
    return count;
}

// b -> 0 end: F(b) = F0 - (Var E / 2) b + O(b^2), plus, in exact mode, the
// 1/(M b) term contributed by the empty distance-n level; that term is
// known exactly and is subtracted before the linear fit in b.
double fit_low_plateau(std::span<const ThermoPoint> points, double level_count, EvalMode mode) {
    const std::size_t k = plateau_window(points, false);
    std::vector<double> xs(k), ys(k);
    for (std::size_t i = 0; i < k; ++i) {
        xs[i] = points[i].b;
        ys[i] = points[i].free_energy;
        if (mode == EvalMode::exact_sum) ys[i] -= 1.0 / (level_count * points[i].b);
    }
    return num::linear_fit(xs, ys).intercept;
}

// b -> inf end: the level sum is dominated by j = d, giving
// F(b) = E_d + gamma ln(b)/b + c/b + o(1/b) with gamma = 1 at d >= 1 (edge
// Laplace regime) and gamma = 1/2 at d = 0 (half-Gaussian regime). After
// subtracting gamma ln(b)/b the model is linear in 1/b and the intercept
// recovers the plateau energy E_d.
double fit_high_plateau(std::span<const ThermoPoint> points, double gamma) {
    const std::size_t k = plateau_window(points, true);
    std::vector<double> xs(k), ys(k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& pt = points[points.size() - k + i];
        xs[i] = 1.0 / pt.b;
        ys[i] = pt.free_energy - gamma * std::log(pt.b) / pt.b;
    }
    return num::linear_fit(xs, ys).intercept;
}

}  // namespace

SweepResult sweep(const AverageModel& model, std::span<const double> grid, EvalMode mode) {
    if (grid.empty()) throw validation_error("sweep grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw validation_error("sweep grid must be positive");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw validation_error("sweep grid must be strictly increasing");
    }

    SweepResult result;
    result.points.reserve(grid.size());
    for (double b : grid) result.points.push_back(compute_point(model, b, mode));

    double s_min = result.points.front().entropy;
    double s_max = s_min;
    for (const auto& pt : result.points) {
        s_min = std::min(s_min, pt.entropy);
        s_max = std::max(s_max, pt.entropy);
    }
    result.entropy_rescaled.reserve(result.points.size());
    for (const auto& pt : result.points)
        result.entropy_rescaled.push_back(s_max > s_min ? (pt.entropy - s_min) / (s_max - s_min)
                                                        : 0.0);

    const double f_low =
        fit_low_plateau(result.points, static_cast<double>(model.level_count()), mode);
    const double gamma = model.min_distance() == 0 ? 0.5 : 1.0;
    const double f_high = fit_high_plateau(result.points, gamma);
    result.plateau_low_d = distance_of_free_energy(f_low);
    result.plateau_high_d = distance_of_free_energy(f_high);
    result.endpoint_low_d = result.points.front().effective_distance;
    result.endpoint_high_d = result.points.back().effective_distance;

    // Crossover: first crossing of the onset line, interpolated in ln b.
    const double threshold =
        result.plateau_low_d - kOnsetFraction * (result.plateau_low_d - result.plateau_high_d);
    for (std::size_t i = 0; i + 1 < result.points.size(); ++i) {
        const double d0 = result.points[i].effective_distance;
        const double d1 = result.points[i + 1].effective_distance;
        if (d0 >= threshold && d1 < threshold) {
            const double t = (d0 - threshold) / (d0 - d1);
            result.b_crossover = std::exp(std::log(result.points[i].b) +
                                          t * (std::log(result.points[i + 1].b) -
                                               std::log(result.points[i].b)));
            break;
        }
    }
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "b,F,U,S,S_rescaled,D\n";
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const auto& pt = result.points[i];
        out << format12(pt.b) << ',' << format12(pt.free_energy) << ','
            << format12(pt.internal_energy) << ',' << format12(pt.entropy) << ','
            << format12(result.entropy_rescaled[i]) << ',' << format12(pt.effective_distance)
            << '\n';
    }
    out << "# b_crossover = "
        << (result.b_crossover ? format12(*result.b_crossover) : std::string("none")) << '\n';
    out << "# plateau_low_D = " << format12(result.plateau_low_d) << '\n';
    out << "# plateau_high_D = " << format12(result.plateau_high_d) << '\n';
    out << "# endpoint_low_D = " << format12(result.endpoint_low_d) << '\n';
    out << "# endpoint_high_D = " << format12(result.endpoint_high_d) << '\n';
}

}  // namespace qam::thermo
