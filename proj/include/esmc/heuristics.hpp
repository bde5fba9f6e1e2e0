#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace esmc {

enum class HeuristicKind {
    gmz,   // w+1 on success, ceil(w/2) on failure
    vl,    // (1+q+)w on success, (1-q-)w on failure
    sb,    // ceil(ln alpha / ln rho_bar)
    fixed, // constant w
};

inline std::string to_string(HeuristicKind k) {
    switch (k) {
    case HeuristicKind::gmz: return "gmz";
    case HeuristicKind::vl: return "vl";
    case HeuristicKind::sb: return "sb";
    case HeuristicKind::fixed: return "fixed";
    }
    return "unknown";
}

inline HeuristicKind parse_heuristic(const std::string& s) {
    if (s == "gmz") return HeuristicKind::gmz;
    if (s == "vl") return HeuristicKind::vl;
    if (s == "sb") return HeuristicKind::sb;
    if (s == "fixed") return HeuristicKind::fixed;
    throw std::invalid_argument("unknown heuristic '" + s + "'");
}

struct HeuristicParams {
    HeuristicKind kind = HeuristicKind::sb;
    double q_plus = 0.1;
    std::optional<double> q_minus; // defaults to q_plus / (e - 1)
    double alpha = 0.1;
    std::uint64_t cap = 10'000;
    std::uint64_t fixed_w = 1;

    double resolved_q_minus() const { return q_minus.value_or(q_plus / (std::numbers::e - 1.0)); }

    // The parameter reported next to the heuristic name in experiment output.
    double reported_param() const {
        switch (kind) {
        case HeuristicKind::vl: return q_plus;
        case HeuristicKind::sb: return alpha;
        case HeuristicKind::fixed: return static_cast<double>(fixed_w);
        case HeuristicKind::gmz: break;
        }
        return 0.0;
    }

    void validate() const {
        if (cap < 1)
            throw std::invalid_argument("cap W must be >= 1");
        if (kind == HeuristicKind::vl) {
            const double qm = resolved_q_minus();
            if (!(q_plus > 0.0) || !(qm > 0.0 && qm < 1.0))
                throw std::invalid_argument("VL needs q+ > 0 and 0 < q- < 1");
        }
        if (kind == HeuristicKind::sb && !(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("SB needs 0 < alpha < 1");
        if (kind == HeuristicKind::fixed && (fixed_w < 1 || fixed_w > cap))
            throw std::invalid_argument("fixed w must lie in [1, W]");
    }
};

struct HeuristicState {
    HeuristicParams params;
    std::uint64_t w = 1;
    double value = 1.0;    // VL's real-valued budget
    double rho_sum = 0.0;  // SB
    std::uint64_t samples = 0;

    std::uint64_t cap() const { return params.cap; }
    double rho_bar() const { return samples == 0 ? 1.0 : rho_sum / static_cast<double>(samples); }
};

// GMZ and VL start at w = 1, fixed at its constant; SB waits for sb_seed.
inline HeuristicState make_heuristic(const HeuristicParams& params) {
    params.validate();
    HeuristicState s;
    s.params = params;
    s.w = params.kind == HeuristicKind::fixed ? params.fixed_w : 1;
    s.value = 1.0;
    return s;
}

inline std::uint64_t clamp_budget(double v, std::uint64_t cap) {
    if (!(v < static_cast<double>(cap)))
        return cap;
    return std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::ceil(v)), 1, cap);
}

inline HeuristicState gmz_update(HeuristicState s, bool success) {
    s.w = success ? std::min(s.w + 1, s.cap()) : std::max<std::uint64_t>((s.w + 1) / 2, 1);
    return s;
}

// The real value stays inside [1, W]; the exposed budget is its ceiling.
inline HeuristicState vl_update(HeuristicState s, bool success) {
    const double factor = success ? 1.0 + s.params.q_plus : 1.0 - s.params.resolved_q_minus();
    s.value = std::clamp(s.value * factor, 1.0, static_cast<double>(s.cap()));
    s.w = clamp_budget(s.value, s.cap());
    return s;
}

// w = ceil(ln alpha / ln rho_bar) clamped to [1, W]; rho_bar == 1 gives W.
inline std::uint64_t sb_budget(double alpha, double rho_bar, std::uint64_t cap) {
    if (rho_bar >= 1.0)
        return cap;
    return clamp_budget(std::log(alpha) / std::log(rho_bar), cap);
}

inline HeuristicState sb_update(HeuristicState s, double rho) {
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("rho must lie in (0, 1]");
    s.rho_sum += rho;
    ++s.samples;
    s.w = sb_budget(s.params.alpha, s.rho_bar(), s.cap());
    return s;
}

// SB's first budget comes from the initial graph's rho.
inline HeuristicState sb_seed(HeuristicState s, double rho0) {
    s.rho_sum = 0.0;
    s.samples = 0;
    return sb_update(std::move(s), rho0);
}

// Dispatch after a connectivity test. `rho` is required for SB.
inline HeuristicState update(HeuristicState s, bool success, std::optional<double> rho) {
    switch (s.params.kind) {
    case HeuristicKind::gmz: return gmz_update(std::move(s), success);
    case HeuristicKind::vl: return vl_update(std::move(s), success);
    case HeuristicKind::sb:
        if (!rho)
            throw std::invalid_argument("SB update needs rho");
        return sb_update(std::move(s), *rho);
    case HeuristicKind::fixed: return s;
    }
    return s;
}

} // namespace esmc
