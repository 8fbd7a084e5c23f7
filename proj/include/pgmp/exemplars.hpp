#pragma once

#include "pgmp/collision.hpp"
#include "pgmp/fgmm.hpp"
#include "pgmp/rng.hpp"

namespace pgmp {

// Parameters of the variance-adaptive exemplar collector.
struct ExemplarParams {
    int dataset_size{500};
    double sigma_init{0.0872};   // radians
    double sigma_max{0.3491};    // radians
    int max_attempts{0};         // 0 selects 200 * dataset_size

    int attemptCap() const {
        return max_attempts > 0 ? max_attempts : 200 * dataset_size;
    }
    void validate() const;
};

struct ExemplarResult {
    Dataset dataset;
    std::vector<double> sigma_trace;  // sigma used at each attempt
    int attempts{0};
    double acceptance_rate{0.0};
};

// Collects collision-free, in-limit configurations around `target` by
// sampling N(target, sigma^2 I). After every attempt sigma grows by 1.1x
// until it exceeds sigma_max, then resets to sigma_init. Throws if the
// target itself collides or the attempt cap is reached first.
ExemplarResult collectExemplars(const Scene& scene, const JointConfig& target,
                                const ExemplarParams& params, Rng& rng);

}  // namespace pgmp
