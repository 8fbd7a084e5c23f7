#include "pgmp/io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pgmp {

namespace {

using nlohmann::json;

json toJsonVector(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Eigen::VectorXd fromJsonVector(const json& j) {
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
    return v;
}

json loadJson(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw std::runtime_error("cannot open '" + filename + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("'" + filename + "': " + e.what());
    }
    return j;
}

void writeJson(const json& j, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw std::runtime_error("cannot write '" + filename + "'");
    out << j.dump(2) << "\n";
}

}  // namespace

void savePath(const Path& path, const std::string& filename) {
    json j;
    j["dimension"] = path.empty() ? 0 : path.front().size();
    j["waypoints"] = json::array();
    for (const JointConfig& q : path.waypoints) j["waypoints"].push_back(toJsonVector(q));
    writeJson(j, filename);
}

Path loadPath(const std::string& filename) {
    const json j = loadJson(filename);
    std::vector<JointConfig> points;
    for (const json& jq : j.at("waypoints")) points.push_back(fromJsonVector(jq));
    return Path::fromWaypoints(std::move(points));
}

void saveDataset(const Dataset& data, const std::string& filename) {
    json j;
    j["dimension"] = data.empty() ? 0 : data.front().size();
    j["configs"] = json::array();
    for (const JointConfig& q : data) j["configs"].push_back(toJsonVector(q));
    writeJson(j, filename);
}

Dataset loadDataset(const std::string& filename) {
    const json j = loadJson(filename);
    Dataset data;
    for (const json& jq : j.at("configs")) data.push_back(fromJsonVector(jq));
    return data;
}

void saveFgmm(const Fgmm& model, const std::string& filename) {
    json j;
    j["dimension"] = model.dimension();
    j["components"] = model.componentCount();
    j["weights"] = model.weights;
    j["means"] = json::array();
    j["covariances"] = json::array();
    for (int k = 0; k < model.componentCount(); ++k) {
        j["means"].push_back(toJsonVector(model.means[k]));
        json rows = json::array();
        for (Eigen::Index r = 0; r < model.covariances[k].rows(); ++r)
            rows.push_back(toJsonVector(model.covariances[k].row(r)));
        j["covariances"].push_back(rows);
    }
    writeJson(j, filename);
}

Fgmm loadFgmm(const std::string& filename) {
    const json j = loadJson(filename);
    Fgmm model;
    model.weights = j.at("weights").get<std::vector<double>>();
    for (const json& jm : j.at("means")) model.means.push_back(fromJsonVector(jm));
    for (const json& jc : j.at("covariances")) {
        Eigen::MatrixXd cov(jc.size(), jc.size());
        for (std::size_t r = 0; r < jc.size(); ++r) cov.row(r) = fromJsonVector(jc[r]);
        model.covariances.push_back(cov);
    }
    model.validate();
    return model;
}

void saveTrajectory(const Trajectory& traj, const std::string& filename) {
    json j;
    j["degree"] = traj.spline.degree;
    j["knots"] = traj.spline.knots;
    j["control_points"] = json::array();
    for (const JointConfig& q : traj.spline.control_points)
        j["control_points"].push_back(toJsonVector(q));
    j["samples"] = json::array();
    for (const JointConfig& q : traj.samples) j["samples"].push_back(toJsonVector(q));
    writeJson(j, filename);
}

}  // namespace pgmp
