#include "shilsim/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shilsim {

namespace {

std::vector<double> running_integral(const std::vector<double>& t, const std::vector<double>& y) {
    std::vector<double> acc(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i) {
        acc[i] = acc[i - 1] + 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
    }
    return acc;
}

std::vector<double> zero_crossings(const std::vector<double>& t, const std::vector<double>& y) {
    std::vector<double> out;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (y[i - 1] == 0.0 && i > 1) {
            out.push_back(t[i - 1]);
        } else if ((y[i - 1] < 0.0 && y[i] > 0.0) || (y[i - 1] > 0.0 && y[i] < 0.0)) {
            const double f = y[i - 1] / (y[i - 1] - y[i]);
            out.push_back(t[i - 1] + f * (t[i] - t[i - 1]));
        }
    }
    return out;
}

} // namespace

EnergyReport energy_report(const WaveformTrace& trace, const CircuitModel& model,
                           double f_ref, const EnergyReportOptions& options) {
    const double period = 1.0 / f_ref;
    if (trace.times.size() < 2 ||
        trace.times.back() - trace.times.front() < 5.0 * period) {
        throw TooShort("energy report needs at least 5 REF cycles");
    }

    EnergyReport rep;
    rep.times = trace.times;
    rep.stored_energy = trace.column("stored_energy");
    rep.net_energy.assign(trace.times.size(), 0.0);
    for (const auto& c : model.components) {
        const auto& p = trace.column(c.name + ".p");  // throws MissingColumns
        rep.component_names.push_back(c.name);
        rep.cumulative_energy.push_back(running_integral(trace.times, p));
        if (!c.stores_energy) {
            const auto& cum = rep.cumulative_energy.back();
            for (std::size_t s = 0; s < cum.size(); ++s) rep.net_energy[s] -= cum[s];
        }
    }
    rep.net_energy_zero_crossings = zero_crossings(trace.times, rep.net_energy);

    // Per-cycle statistics over the tail.
    const double t_end = trace.times.back();
    const std::size_t cycles = static_cast<std::size_t>(options.tail_cycles);
    const double t_tail = t_end - static_cast<double>(cycles) * period;
    if (t_tail < trace.times.front()) {
        throw TooShort("trace shorter than the requested statistics tail");
    }
    const std::size_t p_supply = trace.index_of(options.supply_component + ".p");
    double supplied = 0.0, lost = 0.0;
    for (const auto& c : model.components) {
        if (c.stores_energy || c.name == options.supply_component) continue;
        lost += integrate_column(trace, trace.index_of(c.name + ".p"), t_tail, t_end);
    }
    supplied = -integrate_column(trace, p_supply, t_tail, t_end);
    rep.per_cycle_dissipation = supplied / static_cast<double>(cycles);
    rep.per_cycle_loss = lost / static_cast<double>(cycles);

    // Peak instantaneous energy of the main tank capacitor over the last
    // full cycle (at resonance this equals the total tank energy).
    const auto& cmp = model.component(options.main_tank_component);
    if (!cmp.energy) throw UnknownComponent(options.main_tank_component + " stores no energy");
    std::vector<double> state(model.dimension());
    double peak = 0.0;
    for (std::size_t s = 0; s < trace.times.size(); ++s) {
        if (trace.times[s] < t_end - period) continue;
        for (std::size_t i = 0; i < state.size(); ++i) state[i] = trace.columns[i][s];
        peak = std::max(peak, cmp.energy(trace.times[s], state));
    }
    rep.peak_main_tank_energy = peak;
    rep.q_effective = rep.per_cycle_dissipation > 0.0 ? peak / rep.per_cycle_dissipation : 0.0;
    rep.q_standard = 2.0 * std::numbers::pi * rep.q_effective;
    return rep;
}

std::vector<FlipVerdict> flip_energy_audit(const WaveformTrace& trace,
                                           const CircuitModel& model, double f_ref,
                                           const std::vector<FlipWindow>& flips,
                                           const FlipAuditOptions& options) {
    std::vector<FlipVerdict> verdicts;
    if (flips.empty()) return verdicts;

    EnergyReportOptions ecfg;
    ecfg.supply_component = options.supply_component;
    ecfg.main_tank_component = options.main_tank_component;
    ecfg.tail_cycles = options.window_cycles;
    const EnergyReport rep = energy_report(trace, model, f_ref, ecfg);

    WaveformTrace net;  // reuse column utilities for interpolation/averages
    net.times = rep.times;
    net.names = {"net"};
    net.columns = {rep.net_energy};
    const std::size_t p_supply = trace.index_of(options.supply_component + ".p");

    const double period = 1.0 / f_ref;
    const double span = options.window_cycles * period;
    for (std::size_t f = 0; f < flips.size(); ++f) {
        const auto& w = flips[f];
        if (w.start < trace.times.front() || w.end > trace.times.back() || w.end <= w.start) {
            throw FlipNotInTrace("flip window [" + std::to_string(w.start) + ", " +
                                 std::to_string(w.end) + "] not inside the trace");
        }
        const double pre0 = w.start - span;
        const double post0 = w.end + options.post_settle_cycles * period;
        const double post1 = post0 + span;
        if (pre0 < trace.times.front() || post1 > trace.times.back()) {
            throw TooShort("flip audit windows extend outside the trace");
        }
        FlipVerdict v;
        v.window = w;
        v.per_cycle_dissipation =
            -integrate_column(trace, p_supply, pre0, w.start) / options.window_cycles;
        const double pre_avg = average_column(net, 0, pre0, w.start);
        const double post_avg = average_column(net, 0, post0, post1);
        v.excess_energy = post_avg - pre_avg;
        v.energy_neutral =
            std::abs(v.excess_energy) < options.threshold_frac * v.per_cycle_dissipation;
        const double search_end =
            f + 1 < flips.size() ? std::min(flips[f + 1].start, trace.times.back())
                                 : trace.times.back();
        v.net_crossed_zero_after = std::any_of(
            rep.net_energy_zero_crossings.begin(), rep.net_energy_zero_crossings.end(),
            [&](double tz) { return tz > w.end && tz <= search_end; });
        verdicts.push_back(v);
    }
    return verdicts;
}

} // namespace shilsim
