#pragma once

// JSON forms of kernels, objectives, matroids and whole instances.
//
//   kernel     {"kind":"log1p"} | {"kind":"queue","s_bar":0.9} | {"kind":"identity"}
//   matroid    {"blocks":[[...]],"capacities":[...]} | {"uniform_k":k}
//   objective  {"ground_size":N,"offset":c,"kind":"sm",
//               "terms":[{"weight":w,"kernel":{...},"poly":"<text form>"}]}
//              a term may give "poly_file" (path relative to base_dir) instead of "poly".
//   instance   {"name":...,"objective":{...},"matroid":{...}}

#include <filesystem>
#include <string>

#include <json.hpp>

#include "polysub/analytic.hpp"
#include "polysub/matroid.hpp"
#include "polysub/objective.hpp"
#include "polysub/problems.hpp"

namespace polysub {

using Json = nlohmann::json;

Json kernel_to_json(const AnalyticKernel& k);
AnalyticKernel kernel_from_json(const Json& j);

Json matroid_to_json(const PartitionMatroid& m);
PartitionMatroid matroid_from_json(const Json& j, std::size_t ground_size);

Json objective_to_json(const CompositeObjective& obj);
CompositeObjective objective_from_json(const Json& j, const std::filesystem::path& base_dir = {});

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j, const std::filesystem::path& base_dir = {});

void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

// Reads and parses a JSON file; malformed input raises ParseError.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace polysub
