#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "esmc/random.hpp"

namespace esmc {

using Degree = std::uint32_t;

class DegreeSequenceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Nonincreasing list of node degrees. Node j of every graph built from the
// sequence carries degrees()[j].
class DegreeSequence {
public:
    DegreeSequence() = default;

    explicit DegreeSequence(std::vector<Degree> degrees) : degrees_(std::move(degrees)) {
        if (degrees_.empty())
            throw DegreeSequenceError("degree sequence is empty");
        std::sort(degrees_.begin(), degrees_.end(), std::greater<>());
    }

    // Accepts signed input so that negative entries are reported rather than wrapped.
    static DegreeSequence from_signed(const std::vector<long long>& values) {
        std::vector<Degree> degrees;
        degrees.reserve(values.size());
        for (long long d : values) {
            if (d < 0)
                throw DegreeSequenceError("negative degree " + std::to_string(d));
            if (d > static_cast<long long>(UINT32_MAX))
                throw DegreeSequenceError("degree " + std::to_string(d) + " out of range");
            degrees.push_back(static_cast<Degree>(d));
        }
        return DegreeSequence(std::move(degrees));
    }

    std::size_t size() const { return degrees_.size(); }
    const std::vector<Degree>& degrees() const { return degrees_; }
    Degree operator[](std::size_t j) const { return degrees_[j]; }

    std::uint64_t sum() const {
        return std::accumulate(degrees_.begin(), degrees_.end(), std::uint64_t{0});
    }

    friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;

private:
    std::vector<Degree> degrees_;
};

enum class Verdict {
    realizable,
    odd_sum,
    too_few_edges,
    erdos_gallai_violation,
    // Passes the three classical conditions but has a degree-0 node next to
    // other nodes, so no connected realization exists.
    isolated_node,
};

struct Realizability {
    Verdict verdict = Verdict::realizable;
    std::size_t k = 0; // 1-based first violating index for erdos_gallai_violation

    bool ok() const { return verdict == Verdict::realizable; }
    friend bool operator==(const Realizability&, const Realizability&) = default;
};

inline std::string to_string(const Realizability& r) {
    switch (r.verdict) {
    case Verdict::realizable: return "Realizable";
    case Verdict::odd_sum: return "OddSum";
    case Verdict::too_few_edges: return "TooFewEdges";
    case Verdict::erdos_gallai_violation: return "ErdosGallaiViolation(k=" + std::to_string(r.k) + ")";
    case Verdict::isolated_node: return "IsolatedNode";
    }
    return "Unknown";
}

// Checks, in order: even sum, sum >= 2(n-1), and the Erdos-Gallai inequality
// for every k. O(n): {j : d_j >= k} is a prefix whose end only moves left as k grows.
inline Realizability is_realizable(const DegreeSequence& seq) {
    const auto& d = seq.degrees();
    const std::size_t n = d.size();
    if (n == 0)
        throw DegreeSequenceError("degree sequence is empty");

    const std::uint64_t total = seq.sum();
    if (total % 2 != 0)
        return {Verdict::odd_sum, 0};
    if (total < 2 * (static_cast<std::uint64_t>(n) - 1))
        return {Verdict::too_few_edges, 0};

    std::vector<std::uint64_t> suffix(n + 1, 0);
    for (std::size_t j = n; j-- > 0;)
        suffix[j] = suffix[j + 1] + d[j];

    std::size_t prefix_end = n; // number of leading entries with d_j >= k
    std::uint64_t lhs = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        lhs += d[k - 1];
        while (prefix_end > 0 && d[prefix_end - 1] < k)
            --prefix_end;
        // Positions k+1..n (0-based k..n-1): those inside the prefix contribute k,
        // the rest contribute their own degree.
        const std::size_t capped = prefix_end > k ? prefix_end - k : 0;
        const std::size_t rest_begin = std::max(prefix_end, k);
        const std::uint64_t rhs = static_cast<std::uint64_t>(k) * (k - 1)
            + static_cast<std::uint64_t>(k) * capped + suffix[rest_begin];
        if (lhs > rhs)
            return {Verdict::erdos_gallai_violation, k};
    }

    if (n >= 2 && d.back() == 0)
        return {Verdict::isolated_node, 0};
    return {Verdict::realizable, 0};
}

// Degrees drawn i.i.d. with P(a) proportional to a^-tau over a in [1, n-1].
struct PowerLawSpec {
    double tau = 2.0;
    std::size_t n = 0;

    void validate() const {
        if (!(tau > 1.0) || !std::isfinite(tau))
            throw DegreeSequenceError("power-law exponent must be finite and > 1");
        if (n < 2)
            throw DegreeSequenceError("power-law support [1, n-1] needs n >= 2");
    }
};

// Cumulative weights for inverse-transform sampling.
class PowerLawTable {
public:
    explicit PowerLawTable(const PowerLawSpec& spec) {
        spec.validate();
        cumulative_.reserve(spec.n - 1);
        double acc = 0.0;
        for (std::size_t a = 1; a < spec.n; ++a) {
            acc += std::pow(static_cast<double>(a), -spec.tau);
            cumulative_.push_back(acc);
        }
    }

    Degree draw(RandomStream& rng) const {
        const double u = rng.uniform01() * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end())
            --it;
        return static_cast<Degree>(it - cumulative_.begin()) + 1;
    }

private:
    std::vector<double> cumulative_;
};

inline DegreeSequence sample_degrees(const PowerLawSpec& spec, RandomStream& rng) {
    const PowerLawTable table(spec);
    std::vector<Degree> degrees(spec.n);
    for (auto& d : degrees)
        d = table.draw(rng);
    return DegreeSequence(std::move(degrees));
}

struct SampledSequence {
    DegreeSequence sequence;
    std::uint64_t rejected = 0;
};

class RejectionCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Redraws the whole sequence until it is realizable; a sequence is never repaired.
inline SampledSequence sample_realizable(const PowerLawSpec& spec, RandomStream& rng,
                                         std::uint64_t max_attempts = 1'000'000) {
    const PowerLawTable table(spec);
    std::vector<Degree> degrees(spec.n);
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        for (auto& d : degrees)
            d = table.draw(rng);
        DegreeSequence seq(degrees);
        if (is_realizable(seq).ok())
            return {std::move(seq), attempt};
    }
    throw RejectionCapExceeded("no realizable degree sequence after "
                               + std::to_string(max_attempts) + " attempts");
}

// Whitespace-separated decimal integers with any line structure.
inline DegreeSequence read_degree_file(std::istream& in) {
    std::vector<long long> values;
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(token, &used, 10);
        } catch (const std::exception&) {
            throw DegreeSequenceError("not an integer: '" + token + "'");
        }
        if (used != token.size())
            throw DegreeSequenceError("not an integer: '" + token + "'");
        values.push_back(v);
    }
    if (values.empty())
        throw DegreeSequenceError("degree file holds no degrees");
    return DegreeSequence::from_signed(values);
}

} // namespace esmc
