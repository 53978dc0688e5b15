#include "vshell/config.hpp"

#include <fstream>
#include <sstream>

#include "vshell/bench_cases.hpp"
#include "vshell/errors.hpp"
#include "vshell/io.hpp"

namespace vshell {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigError, "'" + key + "' expects a number, got '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigError, "'" + key + "' expects an integer, got '" + v + "'");
  }
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double("eps", item));
  }
  return out;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "case") c.case_name = v;
  else if (key == "model") c.model = v;
  else if (key == "eps") c.eps = parse_double_list(v);
  else if (key == "material") {
    c.params = material_preset(v);
    c.material = v;
  } else if (key == "lambda") c.params.lambda = to_double(key, v);
  else if (key == "mu") c.params.mu = to_double(key, v);
  else if (key == "theta") c.params.theta = to_double(key, v);
  else if (key == "rho") c.params.rho = to_double(key, v);
  else if (key == "n1") c.n1 = static_cast<int>(to_int(key, v));
  else if (key == "n2") c.n2 = static_cast<int>(to_int(key, v));
  else if (key == "n3") c.n3 = static_cast<int>(to_int(key, v));
  else if (key == "degree") c.degree = static_cast<int>(to_int(key, v));
  else if (key == "degree3") c.degree3 = static_cast<int>(to_int(key, v));
  else if (key == "T") c.T = to_double(key, v);
  else if (key == "dt") c.dt = to_double(key, v);
  else if (key == "scheme") c.scheme = v;
  else if (key == "out") c.out = v;
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_int(key, v));
  else if (key == "export_matrices") {
    if (v == "true" || v == "1") c.export_matrices = true;
    else if (v == "false" || v == "0") c.export_matrices = false;
    else throw Error(ErrorKind::ConfigError, "'export_matrices' expects true or false");
  } else {
    throw Error(ErrorKind::ConfigError, "unknown config key '" + key + "'");
  }
}

void parse_config_text(RunConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void parse_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  parse_config_text(cfg, buf.str());
}

void validate(const RunConfig& c, bool study) {
  validate(c.params);
  if (c.n1 < 0 || c.n2 < 0 || c.n3 < 0) throw Error(ErrorKind::ConfigError, "mesh sizes must be positive");
  if (c.degree < 0 || c.degree3 < 0) throw Error(ErrorKind::ConfigError, "degrees must be positive");
  if (c.T < 0.0 || c.dt < 0.0) throw Error(ErrorKind::ConfigError, "T and dt must be positive");
  for (double e : c.eps)
    if (!(e > 0.0)) throw Error(ErrorKind::ConfigError, "eps values must be positive");
  if (study) {
    for (std::size_t i = 1; i < c.eps.size(); ++i)
      if (!(c.eps[i] < c.eps[i - 1])) throw Error(ErrorKind::ConfigError, "eps list must be strictly decreasing");
  } else if (c.eps.size() > 1) {
    throw Error(ErrorKind::ConfigError, "run takes a single eps");
  }
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["case"] = c.case_name;
  j["model"] = c.model;
  j["eps"] = c.eps;
  j["material"] = c.material;
  j["lambda"] = c.params.lambda;
  j["mu"] = c.params.mu;
  j["theta"] = c.params.theta;
  j["rho"] = c.params.rho;
  j["n1"] = c.n1;
  j["n2"] = c.n2;
  j["n3"] = c.n3;
  j["degree"] = c.degree;
  j["degree3"] = c.degree3;
  j["T"] = c.T;
  j["dt"] = c.dt;
  j["scheme"] = c.scheme;
  j["out"] = c.out;
  j["seed"] = c.seed;
  j["export_matrices"] = c.export_matrices;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.case_name = j.at("case").get<std::string>();
    c.model = j.at("model").get<std::string>();
    c.eps = j.at("eps").get<std::vector<double>>();
    c.material = j.at("material").get<std::string>();
    c.params.lambda = j.at("lambda").get<double>();
    c.params.mu = j.at("mu").get<double>();
    c.params.theta = j.at("theta").get<double>();
    c.params.rho = j.at("rho").get<double>();
    c.n1 = j.at("n1").get<int>();
    c.n2 = j.at("n2").get<int>();
    c.n3 = j.at("n3").get<int>();
    c.degree = j.at("degree").get<int>();
    c.degree3 = j.at("degree3").get<int>();
    c.T = j.at("T").get<double>();
    c.dt = j.at("dt").get<double>();
    c.scheme = j.at("scheme").get<std::string>();
    c.out = j.at("out").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.export_matrices = j.at("export_matrices").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("bad config JSON: ") + e.what());
  }
  return c;
}

std::string to_config_text(const RunConfig& c) {
  std::ostringstream o;
  o << "case=" << c.case_name << '\n';
  if (!c.model.empty()) o << "model=" << c.model << '\n';
  if (!c.eps.empty()) {
    o << "eps=";
    for (std::size_t i = 0; i < c.eps.size(); ++i) o << (i ? "," : "") << format_double(c.eps[i]);
    o << '\n';
  }
  o << "material=" << c.material << '\n';
  o << "lambda=" << format_double(c.params.lambda) << '\n';
  o << "mu=" << format_double(c.params.mu) << '\n';
  o << "theta=" << format_double(c.params.theta) << '\n';
  o << "rho=" << format_double(c.params.rho) << '\n';
  o << "n1=" << c.n1 << "\nn2=" << c.n2 << "\nn3=" << c.n3 << '\n';
  o << "degree=" << c.degree << "\ndegree3=" << c.degree3 << '\n';
  o << "T=" << format_double(c.T) << "\ndt=" << format_double(c.dt) << '\n';
  o << "scheme=" << c.scheme << "\nout=" << c.out << "\nseed=" << c.seed << '\n';
  o << "export_matrices=" << (c.export_matrices ? "true" : "false") << '\n';
  return o.str();
}

}  // namespace vshell
