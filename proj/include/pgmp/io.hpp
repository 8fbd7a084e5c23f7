#pragma once

#include <string>

#include "pgmp/fgmm.hpp"
#include "pgmp/optimizer.hpp"
#include "pgmp/path.hpp"

namespace pgmp {

// JSON file formats for paths, datasets, mixture models and trajectories.

void savePath(const Path& path, const std::string& filename);
Path loadPath(const std::string& filename);

void saveDataset(const Dataset& data, const std::string& filename);
Dataset loadDataset(const std::string& filename);

void saveFgmm(const Fgmm& model, const std::string& filename);
Fgmm loadFgmm(const std::string& filename);

void saveTrajectory(const Trajectory& traj, const std::string& filename);

}  // namespace pgmp
