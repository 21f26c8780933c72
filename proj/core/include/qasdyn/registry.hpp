#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qasdyn {

/// Built-in map documents, replayed by `qasdyn analyze --example KEY`.
struct RegistryEntry {
  std::string key;
  std::string summary;
  std::string document;  // map document text, parsed like a --map file
};

const std::vector<RegistryEntry>& registry();

/// nullptr for an unknown key.
const RegistryEntry* find_example(std::string_view key);

}  // namespace qasdyn
