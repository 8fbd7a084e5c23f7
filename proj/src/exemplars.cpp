#include "pgmp/exemplars.hpp"

#include <sstream>
#include <stdexcept>

namespace pgmp {

void ExemplarParams::validate() const {
    if (dataset_size < 1) throw std::invalid_argument("exemplars: dataset_size must be >= 1");
    if (!(sigma_init > 0.0) || !(sigma_init <= sigma_max))
        throw std::invalid_argument("exemplars: need 0 < sigma_init <= sigma_max");
    if (attemptCap() < dataset_size)
        throw std::invalid_argument("exemplars: max_attempts must be >= dataset_size");
}

ExemplarResult collectExemplars(const Scene& scene, const JointConfig& target,
                                const ExemplarParams& params, Rng& rng) {
    params.validate();
    if (target.size() != scene.robot.dimension())
        throw std::invalid_argument("collectExemplars: target dimension mismatch");
    if (!scene.robot.withinLimits(target))
        throw std::invalid_argument("collectExemplars: target outside joint limits");
    if (!configIsFree(scene, target))
        throw std::invalid_argument("collectExemplars: target configuration is in collision");

    const int n = scene.robot.dimension();
    ExemplarResult out;
    out.dataset.reserve(params.dataset_size);

    double sigma = params.sigma_init;
    const int cap = params.attemptCap();
    while (static_cast<int>(out.dataset.size()) < params.dataset_size) {
        if (out.attempts >= cap) {
            std::ostringstream msg;
            msg << "collectExemplars: attempt cap " << cap << " reached with "
                << out.dataset.size() << "/" << params.dataset_size
                << " accepted (acceptance rate "
                << static_cast<double>(out.dataset.size()) / out.attempts << ")";
            throw std::runtime_error(msg.str());
        }
        out.sigma_trace.push_back(sigma);
        const JointConfig q = target + sigma * rng.normalVector(n);
        ++out.attempts;
        if (scene.robot.withinLimits(q) && configIsFree(scene, q)) out.dataset.push_back(q);
        // variance schedule: grow until past sigma_max, then reset
        sigma = sigma <= params.sigma_max ? 1.1 * sigma : params.sigma_init;
    }
    out.acceptance_rate = static_cast<double>(out.dataset.size()) / out.attempts;
    return out;
}

}  // namespace pgmp
