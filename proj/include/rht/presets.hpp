#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rht {

/// Built-in experiment configs, also shipped as presets/<name>.json.
const std::vector<std::string>& preset_names();

/// Config text of a preset; throws std::out_of_range for unknown names.
std::string_view preset_text(std::string_view name);

}  // namespace rht
