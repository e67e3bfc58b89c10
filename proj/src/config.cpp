#include "ccfom/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace ccfom {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ';')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T value{};
  in >> value;
  require(!in.fail() && (in >> std::ws).eof(), ErrorKind::configuration,
          "config key '" + key + "': cannot parse '" + text + "'");
  return value;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorKind::configuration, std::string("config: ") + e.what());
  }

  static const std::set<std::string> known = {"problem", "method", "x0",     "iterations",  "schedule",
                                              "eps_rel", "eps_abs", "csv",   "report",      "svg",
                                              "seed",    "test_points", "psi", "instances", "workers"};
  ExperimentConfig config;
  for (const auto& [key, node] : tree) {
    require(node.empty(), ErrorKind::configuration, "config: sections are not supported ('" + key + "')");
    require(known.count(key) > 0, ErrorKind::configuration, "config: unknown key '" + key + "'");
    const std::string value = trim(node.data());
    require(!value.empty(), ErrorKind::configuration, "config: empty value for '" + key + "'");
    if (key == "problem") {
      config.problems = split_list(value);
    } else if (key == "method") {
      for (const auto& m : split_list(value)) config.methods.push_back(parse_method(m));
    } else if (key == "x0") {
      config.x0 = value;
    } else if (key == "iterations") {
      for (const auto& item : split_list(value)) {
        const long long k = parse_number<long long>(key, item);
        require(k >= 0, ErrorKind::configuration, "config: iterations must be non-negative");
        config.iterations.push_back(static_cast<std::size_t>(k));
      }
    } else if (key == "schedule") {
      config.schedule = value;
    } else if (key == "eps_rel") {
      config.tol.eps_rel = parse_number<double>(key, value);
    } else if (key == "eps_abs") {
      config.tol.eps_abs = parse_number<double>(key, value);
    } else if (key == "csv") {
      config.csv = value;
    } else if (key == "report") {
      config.report = value;
    } else if (key == "svg") {
      config.svg = value;
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "test_points") {
      config.test_points = split_list(value);
    } else if (key == "psi") {
      config.psi = value;
    } else if (key == "instances") {
      config.instances = parse_number<std::size_t>(key, value);
      require(config.instances >= 1, ErrorKind::configuration, "config: instances must be at least 1");
    } else if (key == "workers") {
      config.workers = parse_number<unsigned>(key, value);
      require(config.workers >= 1, ErrorKind::configuration, "config: workers must be at least 1");
    }
  }
  require(!config.problems.empty(), ErrorKind::configuration, "config: 'problem' is required");
  require(!config.methods.empty(), ErrorKind::configuration, "config: 'method' is required");
  require(!config.iterations.empty(), ErrorKind::configuration, "config: 'iterations' is required");
  require(config.tol.eps_rel > 0 && config.tol.eps_abs > 0, ErrorKind::configuration,
          "config: tolerances must be positive");
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::configuration, "cannot read config '" + path.string() + "'");
  return parse_config(in);
}

Point resolve_x0(const std::string& text, Eigen::Index dim) {
  if (text == "ones") return Point::constant(dim, 1.0);
  if (text == "zeros") return Point::zeros(dim);
  Vector v;
  try {
    v = parse_vector(text);
  } catch (const Error& e) {
    fail(ErrorKind::configuration, std::string("x0: ") + e.what());
  }
  require(v.size() == dim, ErrorKind::configuration,
          "x0 has dimension " + std::to_string(v.size()) + " but the problem has dimension " + std::to_string(dim));
  require(v.allFinite(), ErrorKind::configuration, "x0 must be finite");
  return Point(v);
}

StepSchedule resolve_schedule(const ExperimentConfig& config, Method method, std::size_t K) {
  if (method != Method::subgradient) {
    require(!config.schedule || *config.schedule == "inverse_L", ErrorKind::configuration,
            std::string(to_string(method)) + " runs with t = 1/L; schedule must be inverse_L");
    return StepSchedule::inverse_lipschitz();
  }
  if (!config.schedule || *config.schedule == "horizon_sqrt") return StepSchedule::horizon_sqrt(K);
  StepSchedule schedule = StepSchedule::parse(*config.schedule);
  if (auto h = schedule.horizon()) {
    require(*h == K, ErrorKind::configuration,
            "horizon_sqrt:" + std::to_string(*h) + " does not match iterations = " + std::to_string(K));
  }
  return schedule;
}

void check_compatibility(const ProblemInstance& p, Method method) {
  if (method == Method::subgradient) {
    require(p.lipschitz_f().has_value(), ErrorKind::configuration,
            "subgradient method needs a G-Lipschitz problem; '" + p.id() + "' has no G");
  } else {
    require(p.lipschitz_grad().has_value() && p.is_differentiable(), ErrorKind::configuration,
            std::string(to_string(method)) + " needs a differentiable problem with known L; '" + p.id() + "' has none");
  }
}

}  // namespace ccfom
