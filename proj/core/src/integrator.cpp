#include "superburst/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "superburst/errors.hpp"

namespace superburst {

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("integrator tolerances must be > 0");
    if (!(t_end > t_start)) throw ConfigError("integrator t_end must exceed t_start");
    if (!(output_dt > 0.0)) throw ConfigError("integrator output_dt must be > 0");
    if (!(max_step > 0.0)) throw ConfigError("integrator max_step must be > 0");
    if (method == IntegrationMethod::fixed_rk4 && !(fixed_step > 0.0)) {
        throw ConfigError("integrator fixed_step must be > 0");
    }
}

std::size_t output_sample_count(const IntegratorConfig& cfg) {
    const double span = (cfg.t_end - cfg.t_start) / cfg.output_dt;
    return static_cast<std::size_t>(std::floor(span * (1.0 + 1e-12))) + 1;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> kE{71.0 / 57600,  0.0, -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
// Continuous extension: y(t + th) = y + h sum_j k_j (P_j . [t, t^2, t^3, t^4]).
constexpr double kP[7][4] = {
    {1.0, -8048581381.0 / 2820520608, 8663915743.0 / 2820520608, -12715105075.0 / 11282082432},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 131558114200.0 / 32700410799, -68118460800.0 / 10900136933, 87487479700.0 / 32700410799},
    {0.0, -1754552775.0 / 470086768, 14199869525.0 / 1410260304, -10690763975.0 / 1880347072},
    {0.0, 127303824393.0 / 49829197408, -318862633887.0 / 49829197408, 701980252875.0 / 199316789632},
    {0.0, -282668133.0 / 205662961, 2019193451.0 / 616988883, -1453857185.0 / 822651844},
    {0.0, 40617522.0 / 29380423, -110615467.0 / 29380423, 69997945.0 / 29380423},
};

void require_finite(std::span<const double> y, double t) {
    for (double v : y) {
        if (!std::isfinite(v)) throw IntegrationError("non-finite state", t);
    }
}

class OutputGrid {
public:
    explicit OutputGrid(const IntegratorConfig& cfg)
        : t0_(cfg.t_start), dt_(cfg.output_dt), count_(output_sample_count(cfg)) {}

    [[nodiscard]] bool done() const noexcept { return next_ >= count_; }
    [[nodiscard]] double time() const noexcept { return t0_ + static_cast<double>(next_) * dt_; }
    void advance() noexcept { ++next_; }
    [[nodiscard]] std::size_t emitted() const noexcept { return next_; }

private:
    double t0_;
    double dt_;
    std::size_t count_;
    std::size_t next_ = 0;
};

// Relative slack used when deciding that two times coincide.
double time_eps(double t, double scale) {
    return 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), scale);
}

class Stepper {
public:
    Stepper(const Derivs& f, std::size_t n) : f_(f), n_(n) {
        for (auto& k : k_) k.assign(n, 0.0);
        tmp_.assign(n, 0.0);
        ynew_.assign(n, 0.0);
    }

    void eval(double t, std::span<const double> y, std::vector<double>& out) {
        f_(t, y, out);
        ++stats.evaluations;
    }

    IntegrationStats stats;

protected:
    const Derivs& f_;
    std::size_t n_;
    std::array<std::vector<double>, 7> k_;
    std::vector<double> tmp_;
    std::vector<double> ynew_;
};

class Rk45 : public Stepper {
public:
    using Stepper::Stepper;

    // Dense-output sample at t_old + theta h into out.
    void interpolate(const std::vector<double>& y_old, double h, double theta, std::vector<double>& out) const {
        std::array<double, 7> w{};
        const double th[4] = {theta, theta * theta, theta * theta * theta, theta * theta * theta * theta};
        for (int j = 0; j < 7; ++j) {
            w[j] = h * (kP[j][0] * th[0] + kP[j][1] * th[1] + kP[j][2] * th[2] + kP[j][3] * th[3]);
        }
        for (std::size_t i = 0; i < n_; ++i) {
            double acc = y_old[i];
            for (int j = 0; j < 7; ++j) acc += w[j] * k_[j][i];
            out[i] = acc;
        }
    }

    // One trial step from (t, y) with size h; on return ynew_ holds the
    // 5th-order solution, k_[6] = f(t + h, ynew_), and the scaled error norm.
    double trial(double t, const std::vector<double>& y, double h, double rtol, double atol) {
        for (int s = 1; s < 7; ++s) {
            auto& dst = s == 6 ? ynew_ : tmp_;
            for (std::size_t i = 0; i < n_; ++i) {
                double acc = 0.0;
                for (int j = 0; j < s; ++j) acc += kA[s][j] * k_[j][i];
                dst[i] = y[i] + h * acc;
            }
            eval(t + kC[s] * h, dst, k_[s]);
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double e = 0.0;
            for (int j = 0; j < 7; ++j) e += kE[j] * k_[j][i];
            e *= h;
            const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew_[i]));
            const double r = e / scale;
            sum += r * r;
        }
        return std::sqrt(sum / static_cast<double>(n_));
    }

    void start(double t, const std::vector<double>& y) { eval(t, y, k_[0]); }
    void accept(std::vector<double>& y) {
        y.swap(ynew_);
        k_[0].swap(k_[6]);
    }

    // Hairer's starting step heuristic.
    double initial_step(double t, const std::vector<double>& y, double rtol, double atol, double hmax) {
        double d0 = 0.0;
        double d1 = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double sc = atol + rtol * std::abs(y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1 += (k_[0][i] / sc) * (k_[0][i] / sc);
        }
        d0 = std::sqrt(d0 / n_);
        d1 = std::sqrt(d1 / n_);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * hmax : 0.01 * d0 / d1;
        h0 = std::min(h0, hmax);
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h0 * k_[0][i];
        eval(t + h0, tmp_, k_[1]);
        double d2 = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double sc = atol + rtol * std::abs(y[i]);
            const double r = (k_[1][i] - k_[0][i]) / sc;
            d2 += r * r;
        }
        d2 = std::sqrt(d2 / n_) / h0;
        const double dm = std::max(d1, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        return std::min({100.0 * h0, h1, hmax});
    }
};

class Rk4 : public Stepper {
public:
    using Stepper::Stepper;

    void step(double t, std::vector<double>& y, double h) {
        eval(t, y, k_[0]);
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + 0.5 * h * k_[0][i];
        eval(t + 0.5 * h, tmp_, k_[1]);
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + 0.5 * h * k_[1][i];
        eval(t + 0.5 * h, tmp_, k_[2]);
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * k_[2][i];
        eval(t + h, tmp_, k_[3]);
        for (std::size_t i = 0; i < n_; ++i) {
            y[i] += h / 6.0 * (k_[0][i] + 2.0 * k_[1][i] + 2.0 * k_[2][i] + k_[3][i]);
        }
        ++stats.accepted;
    }
};

// Next stopping point: the next kick or the end of the span.
struct Stops {
    const KickSchedule* kicks;
    double t_end;
    std::size_t next = 0;

    [[nodiscard]] double target() const {
        if (kicks && next < kicks->times.size()) return std::min(kicks->times[next], t_end);
        return t_end;
    }
    [[nodiscard]] bool is_kick(double t, double scale) const {
        return kicks && next < kicks->times.size() && std::abs(kicks->times[next] - t) <= time_eps(t, scale);
    }
};

IntegrationStats run_rk4(const Derivs& f, std::vector<double> y, const IntegratorConfig& cfg, const Observer& observe,
                         const KickSchedule* kicks) {
    Rk4 rk(f, y.size());
    OutputGrid grid(cfg);
    Stops stops{kicks, cfg.t_end};
    while (stops.kicks && stops.next < kicks->times.size() && kicks->times[stops.next] < cfg.t_start) ++stops.next;
    const double scale = cfg.t_end - cfg.t_start;
    double t = cfg.t_start;
    std::size_t step_index = 0;
    double segment_start = t;
    while (true) {
        if (!grid.done() && std::abs(grid.time() - t) <= time_eps(t, scale)) {
            observe(grid.time(), y);
            grid.advance();
        }
        while (stops.is_kick(t, scale)) {
            kicks->apply(stops.next, t, y);
            ++stops.next;
        }
        if (t >= cfg.t_end - time_eps(cfg.t_end, scale)) break;
        // Stepping on a global grid keeps the step sequence independent of
        // where output samples fall.
        double next = segment_start + static_cast<double>(step_index + 1) * cfg.fixed_step;
        const double limit = std::min(stops.target(), grid.done() ? cfg.t_end : grid.time());
        bool clipped = false;
        if (next > limit - time_eps(limit, scale)) {
            next = limit;
            clipped = true;
        }
        rk.step(t, y, next - t);
        require_finite(y, next);
        t = next;
        if (clipped) {
            segment_start = t;
            step_index = 0;
        } else {
            ++step_index;
        }
    }
    rk.stats.samples = grid.emitted();
    return rk.stats;
}

IntegrationStats run_rk45(const Derivs& f, std::vector<double> y, const IntegratorConfig& cfg, const Observer& observe,
                          const KickSchedule* kicks) {
    const std::size_t n = y.size();
    Rk45 rk(f, n);
    OutputGrid grid(cfg);
    Stops stops{kicks, cfg.t_end};
    while (stops.kicks && stops.next < kicks->times.size() && kicks->times[stops.next] < cfg.t_start) ++stops.next;
    const double scale = cfg.t_end - cfg.t_start;
    std::vector<double> sample(n);

    double t = cfg.t_start;
    rk.start(t, y);
    double h = rk.initial_step(t, y, cfg.rel_tol, cfg.abs_tol, cfg.max_step);
    if (!grid.done() && std::abs(grid.time() - t) <= time_eps(t, scale)) {
        observe(grid.time(), y);
        grid.advance();
    }

    constexpr double kSafety = 0.9;
    constexpr double kMinFactor = 0.2;
    constexpr double kMaxFactor = 10.0;
    while (t < cfg.t_end - time_eps(cfg.t_end, scale)) {
        while (stops.is_kick(t, scale)) {
            kicks->apply(stops.next, t, y);
            ++stops.next;
            rk.start(t, y);
        }
        const double target = stops.target();
        if (t >= target - time_eps(target, scale)) continue;
        h = std::min(h, cfg.max_step);
        const double h_wanted = h;
        bool last = false;
        if (t + h >= target - time_eps(target, scale)) {
            h = target - t;
            last = true;
        }
        if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), scale * 1e-12)) {
            throw IntegrationError("step size underflow", t);
        }
        const double err = rk.trial(t, y, h, cfg.rel_tol, cfg.abs_tol);
        if (!std::isfinite(err) || err > 1.0) {
            ++rk.stats.rejected;
            const double factor = std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, -0.2)) : kMinFactor;
            h *= factor;
            continue;
        }
        const double t_new = last ? target : t + h;
        // Emit grid samples inside (t, t_new] from the continuous extension.
        while (!grid.done() && grid.time() <= t_new + time_eps(t_new, scale)) {
            const double theta = std::clamp((grid.time() - t) / h, 0.0, 1.0);
            rk.interpolate(y, h, theta, sample);
            require_finite(sample, grid.time());
            observe(grid.time(), sample);
            grid.advance();
        }
        rk.accept(y);
        require_finite(y, t_new);
        ++rk.stats.accepted;
        t = t_new;
        const double factor = err == 0.0 ? kMaxFactor : std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, kMaxFactor);
        h = last ? std::max(h_wanted, h * factor) : h * factor;
    }
    rk.stats.samples = grid.emitted();
    return rk.stats;
}

}  // namespace

IntegrationStats integrate(const Derivs& f, std::vector<double> y0, const IntegratorConfig& cfg,
                           const Observer& observe, const KickSchedule* kicks) {
    cfg.validate();
    if (y0.empty()) throw ContractViolation("integrate: empty state");
    require_finite(y0, cfg.t_start);
    if (kicks && !std::is_sorted(kicks->times.begin(), kicks->times.end())) {
        throw ContractViolation("integrate: kick times must be sorted");
    }
    if (cfg.method == IntegrationMethod::fixed_rk4) return run_rk4(f, std::move(y0), cfg, observe, kicks);
    return run_rk45(f, std::move(y0), cfg, observe, kicks);
}

}  // namespace superburst
