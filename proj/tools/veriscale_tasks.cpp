// Dumps the bundled task library as task JSON files, giving the pipeline a
// ready-made toy benchmark directory to run against.
#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "veriscale/builtin_library.hpp"
#include "veriscale/json_io.hpp"
#include "veriscale/value.hpp"

using namespace veriscale;

namespace {

nlohmann::ordered_json task_to_json(const Task& task) {
  nlohmann::ordered_json doc;
  doc["id"] = task.id;
  doc["description"] = task.description;
  nlohmann::ordered_json sig = nlohmann::ordered_json::array();
  for (const Param& p : task.signature.params)
    sig.push_back({{"name", p.name}, {"type", std::string(type_name(p.type))}});
  doc["signature"] = std::move(sig);
  doc["output_type"] = std::string(type_name(task.output_type));
  doc["precond_ref"] = task.precond_ref;
  doc["postcond_ref"] = task.postcond_ref;
  doc["impl_ref"] = task.reference_impl_ref;
  auto inputs = [&](const std::vector<InputMap>& list) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const InputMap& input : list) arr.push_back(input_to_untyped_json(input, task.signature));
    return arr;
  };
  doc["base_expected_inputs"] = inputs(task.base_expected_inputs);
  doc["base_unexpected_inputs"] = inputs(task.base_unexpected_inputs);
  doc["precond_text"] = task.precond_text;
  doc["postcond_text"] = task.postcond_text;
  doc["impl_signature"] = task.impl_signature;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Write the bundled benchmark tasks as task JSON files"};
  std::string out_dir = "tasks";
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(out_dir);
  for (const ToyTask& toy : builtin_tasks()) {
    Task task = to_task(toy);
    std::filesystem::path path = std::filesystem::path(out_dir) / (task.id + ".json");
    atomic_write(path, task_to_json(task).dump(2) + "\n");
    std::printf("wrote %s\n", path.string().c_str());
  }
  return 0;
}
