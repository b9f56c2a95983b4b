#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "smallscat/capacitance.hpp"
#include "smallscat/foldy_lax.hpp"
#include "smallscat/geometry.hpp"
#include "smallscat/types.hpp"

namespace smallscat {

struct ObstacleSpec {
  std::string shape = "sphere";  // "sphere" or a mesh file path
  int refinement = 3;            // sphere refinement level
  Vec3 center = Vec3::Zero();
  double scale = 1.0;
};

/// Flat key = value scenario text with [section] headers and repeated
/// [[obstacle]] blocks.
struct ScenarioConfig {
  double lambda = 1.0;
  double mu = 1.0;
  double omega = 0.0;

  double alpha_re = 1.0, alpha_im = 0.0;
  double beta_re = 0.0, beta_im = 0.0;
  Vec3 theta = Vec3::UnitZ();

  std::vector<ObstacleSpec> obstacles;

  std::string dir_grid = "fibonacci";
  int dir_count = 64;
  std::vector<Vec3> dir_list;  // explicit directions override the grid

  std::string output_dir = ".";

  std::string sweep_parameter;  // "a", "d" or "omega"
  std::vector<double> sweep_values;
};

ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig load_scenario(const std::string& path);

/// Materialized scene: distinct reference shapes are built once and shared.
struct Scene {
  LameParameters lame;
  WaveNumbers wn;
  IncidentWave wave;
  std::vector<Obstacle> obstacles;
  std::vector<int> shape_index;  // obstacle -> entry in shapes
  std::vector<std::shared_ptr<const SurfaceMesh>> shapes;
  std::vector<std::string> shape_ids;
  std::vector<Vec3> directions;
};

Scene build_scene(const ScenarioConfig& cfg);

/// Reference capacitances for the scene's distinct shapes, expanded
/// per-obstacle in shapes order.
std::vector<CapacitanceMatrix> shape_capacitances(const Scene& scene,
                                                  const LameParameters& lame);

}  // namespace smallscat
