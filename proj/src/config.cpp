#include "smallscat/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "smallscat/directions.hpp"
#include "smallscat/errors.hpp"

namespace smallscat {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& where, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config error: " + where + ": expected a number, got '" + value + "'");
  }
  if (trim(value.substr(used)) != "")
    throw ConfigError("config error: " + where + ": trailing characters in '" + value + "'");
  return out;
}

int parse_int(const std::string& where, const std::string& value) {
  const double v = parse_number(where, value);
  if (v != std::floor(v))
    throw ConfigError("config error: " + where + ": expected an integer");
  return static_cast<int>(v);
}

Vec3 parse_vec3(const std::string& where, const std::string& value) {
  std::istringstream in(value);
  Vec3 v;
  if (!(in >> v[0] >> v[1] >> v[2]))
    throw ConfigError("config error: " + where + ": expected three numbers");
  std::string rest;
  if (in >> rest)
    throw ConfigError("config error: " + where + ": trailing characters");
  return v;
}

std::vector<double> parse_numbers(const std::string& where, const std::string& value) {
  std::istringstream in(value);
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw ConfigError("config error: " + where + ": expected numbers");
  return out;
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in) {
  ScenarioConfig cfg;
  std::string section;
  ObstacleSpec* obstacle = nullptr;
  std::string line;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line == "[[obstacle]]") {
        cfg.obstacles.emplace_back();
        obstacle = &cfg.obstacles.back();
        section = "obstacle";
        continue;
      }
      if (line.back() != ']')
        throw ConfigError("config error: line " + std::to_string(line_no) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      obstacle = nullptr;
      if (section != "material" && section != "wave" && section != "directions" &&
          section != "output" && section != "sweep")
        throw ConfigError("config error: unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config error: line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string where = "[" + section + "] " + key;

    if (section == "material") {
      if (key == "lambda") cfg.lambda = parse_number(where, value);
      else if (key == "mu") cfg.mu = parse_number(where, value);
      else if (key == "omega") cfg.omega = parse_number(where, value);
      else throw ConfigError("config error: unknown key " + where);
    } else if (section == "wave") {
      if (key == "alpha_re") cfg.alpha_re = parse_number(where, value);
      else if (key == "alpha_im") cfg.alpha_im = parse_number(where, value);
      else if (key == "beta_re") cfg.beta_re = parse_number(where, value);
      else if (key == "beta_im") cfg.beta_im = parse_number(where, value);
      else if (key == "theta") cfg.theta = parse_vec3(where, value);
      else throw ConfigError("config error: unknown key " + where);
    } else if (section == "obstacle") {
      if (!obstacle) throw ConfigError("config error: obstacle key outside [[obstacle]]");
      if (key == "shape") obstacle->shape = value;
      else if (key == "refinement") obstacle->refinement = parse_int(where, value);
      else if (key == "center") obstacle->center = parse_vec3(where, value);
      else if (key == "scale") obstacle->scale = parse_number(where, value);
      else throw ConfigError("config error: unknown key " + where);
    } else if (section == "directions") {
      if (key == "grid") cfg.dir_grid = value;
      else if (key == "count") cfg.dir_count = parse_int(where, value);
      else if (key == "direction") cfg.dir_list.push_back(parse_vec3(where, value));
      else throw ConfigError("config error: unknown key " + where);
    } else if (section == "output") {
      if (key == "dir") cfg.output_dir = value;
      else throw ConfigError("config error: unknown key " + where);
    } else if (section == "sweep") {
      if (key == "parameter") cfg.sweep_parameter = value;
      else if (key == "values") cfg.sweep_values = parse_numbers(where, value);
      else throw ConfigError("config error: unknown key " + where);
    } else {
      throw ConfigError("config error: line " + std::to_string(line_no) +
                        ": key outside any section");
    }
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config error: cannot read " + path);
  return parse_scenario(in);
}

Scene build_scene(const ScenarioConfig& cfg) {
  const LameParameters lame(cfg.lambda, cfg.mu);
  Scene scene{lame, WaveNumbers(cfg.omega, lame), {}, {}, {}, {}, {}, {}};
  if (cfg.obstacles.empty()) throw ConfigError("config error: no [[obstacle]] blocks");
  if (cfg.theta.norm() == 0.0) throw ConfigError("config error: [wave] theta: zero vector");
  scene.wave = make_incident_wave(Complex(cfg.alpha_re, cfg.alpha_im),
                                  Complex(cfg.beta_re, cfg.beta_im), cfg.theta);

  std::map<std::pair<std::string, int>, int> shape_table;
  for (const auto& spec : cfg.obstacles) {
    if (!(spec.scale > 0.0))
      throw ConfigError("config error: [[obstacle]] scale: must be positive");
    const auto key = std::make_pair(spec.shape, spec.shape == "sphere" ? spec.refinement : 0);
    auto it = shape_table.find(key);
    if (it == shape_table.end()) {
      std::shared_ptr<const SurfaceMesh> mesh;
      std::string id;
      if (spec.shape == "sphere") {
        mesh = std::make_shared<SurfaceMesh>(make_sphere_mesh(spec.refinement));
        id = "sphere:" + std::to_string(spec.refinement);
      } else {
        mesh = std::make_shared<SurfaceMesh>(load_mesh(spec.shape));
        id = spec.shape;
      }
      it = shape_table.emplace(key, static_cast<int>(scene.shapes.size())).first;
      scene.shapes.push_back(std::move(mesh));
      scene.shape_ids.push_back(id);
    }
    Obstacle ob;
    ob.center = spec.center;
    ob.scale = spec.scale;
    ob.shape = scene.shapes[it->second];
    scene.obstacles.push_back(ob);
    scene.shape_index.push_back(it->second);
  }

  if (!cfg.dir_list.empty()) {
    for (const auto& d : cfg.dir_list) {
      if (d.norm() == 0.0)
        throw ConfigError("config error: [directions] direction: zero vector");
      scene.directions.push_back(d.normalized());
    }
  } else if (cfg.dir_grid == "fibonacci") {
    if (cfg.dir_count < 1)
      throw ConfigError("config error: [directions] count: must be >= 1");
    scene.directions = fibonacci_sphere(cfg.dir_count);
  } else {
    throw ConfigError("config error: [directions] grid: unknown grid '" + cfg.dir_grid + "'");
  }
  return scene;
}

std::vector<CapacitanceMatrix> shape_capacitances(const Scene& scene,
                                                  const LameParameters& lame) {
  std::vector<CapacitanceMatrix> by_shape(scene.shapes.size());
  for (std::size_t s = 0; s < scene.shapes.size(); ++s)
    by_shape[s] = capacitance_matrix(*scene.shapes[s], lame);
  std::vector<CapacitanceMatrix> per_obstacle;
  per_obstacle.reserve(scene.obstacles.size());
  for (int idx : scene.shape_index) per_obstacle.push_back(by_shape[idx]);
  return per_obstacle;
}

}  // namespace smallscat
