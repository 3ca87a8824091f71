#include "polysub/io.hpp"

#include <fstream>
#include <sstream>

#include "polysub/error.hpp"

namespace polysub {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing JSON field `") + key + "`");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* key) {
  try {
    return require(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("field `") + key + "`: " + e.what());
  }
}

}  // namespace

Json kernel_to_json(const AnalyticKernel& k) {
  Json j{{"kind", to_string(k.kind())}};
  if (k.kind() == KernelKind::QueueDelay) j["s_bar"] = k.s_bar();
  return j;
}

AnalyticKernel kernel_from_json(const Json& j) {
  const auto kind = get_as<std::string>(j, "kind");
  if (kind == "log1p") return AnalyticKernel::log1p();
  if (kind == "identity") return AnalyticKernel::identity();
  if (kind == "queue") return AnalyticKernel::queue_delay(get_as<double>(j, "s_bar"));
  throw InputError("unknown kernel kind `" + kind + "`");
}

Json matroid_to_json(const PartitionMatroid& m) {
  return Json{{"ground_size", m.ground_size()}, {"blocks", m.blocks()}, {"capacities", m.capacities()}};
}

PartitionMatroid matroid_from_json(const Json& j, std::size_t ground_size) {
  if (j.contains("uniform_k")) return PartitionMatroid::uniform(ground_size, get_as<std::size_t>(j, "uniform_k"));
  if (j.contains("ground_size") && get_as<std::size_t>(j, "ground_size") != ground_size) {
    throw InputError("matroid ground size differs from the objective");
  }
  return PartitionMatroid(ground_size, get_as<std::vector<std::vector<Index>>>(j, "blocks"),
                          get_as<std::vector<std::size_t>>(j, "capacities"));
}

Json objective_to_json(const CompositeObjective& obj) {
  Json terms = Json::array();
  for (const auto& t : obj.terms()) {
    terms.push_back(Json{{"weight", t.weight}, {"kernel", kernel_to_json(t.kernel)}, {"poly", t.inner.to_text()}});
  }
  return Json{{"ground_size", obj.ground_size()},
              {"offset", obj.offset()},
              {"kind", to_string(obj.kind())},
              {"terms", std::move(terms)}};
}

CompositeObjective objective_from_json(const Json& j, const std::filesystem::path& base_dir) {
  const auto n = get_as<std::size_t>(j, "ground_size");
  const double offset = j.contains("offset") ? get_as<double>(j, "offset") : 0.0;
  const auto kind = j.contains("kind") ? problem_kind_from_string(get_as<std::string>(j, "kind")) : ProblemKind::Generic;
  std::vector<ObjectiveTerm> terms;
  for (const auto& tj : require(j, "terms")) {
    ObjectiveTerm t;
    t.weight = tj.contains("weight") ? get_as<double>(tj, "weight") : 1.0;
    t.kernel = kernel_from_json(require(tj, "kernel"));
    if (tj.contains("poly")) {
      t.inner = MultilinearPoly::from_text(get_as<std::string>(tj, "poly"));
    } else {
      t.inner = MultilinearPoly::from_text(read_text_file(base_dir / get_as<std::string>(tj, "poly_file")));
    }
    if (t.inner.ground_size() != n) throw InputError("term polynomial ground size differs from the objective");
    terms.push_back(std::move(t));
  }
  return CompositeObjective(n, std::move(terms), offset, kind);
}

Json instance_to_json(const Instance& inst) {
  return Json{{"name", inst.name},
              {"objective", objective_to_json(inst.objective)},
              {"matroid", matroid_to_json(inst.matroid)}};
}

Instance instance_from_json(const Json& j, const std::filesystem::path& base_dir) {
  auto obj = objective_from_json(require(j, "objective"), base_dir);
  auto mat = matroid_from_json(require(j, "matroid"), obj.ground_size());
  std::string name = j.contains("name") ? get_as<std::string>(j, "name") : std::string("instance");
  return Instance{std::move(name), std::move(obj), std::move(mat)};
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, instance_to_json(inst).dump(1) + "\n");
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path), path.parent_path());
}

Json read_json_file(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Byte offset -> line number.
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ParseError(path.string() + ": " + e.what(), line);
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed for " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace polysub
