#pragma once

#include <filesystem>
#include <string>

#include "sandboxgame/types.hpp"

namespace sandboxgame {

// Normalizes existence shares (sum within 1e-6 of 1, then renormalized; the
// defended shares are scaled by the same factor) and enforces
// 0 < e_m, 0 <= d_m <= e_m. Types with e_m = 0 are rejected: they can never
// be observed and make several strategies ill-defined.
WorldSetting validate_setting(const SettingData& data);

enum class SettingClass { FullyDefended, AtMostHalf, SingleTypeDefended, Hard };

const char* setting_class_name(SettingClass c);

// First match wins: d = e everywhere -> FullyDefended; total defended share
// D <= 1/2 -> AtMostHalf; exactly one defended type -> SingleTypeDefended;
// anything else -> Hard.
SettingClass classify_setting(const WorldSetting& s);

// JSON file format: {"types": [...], "existence": [...], "defended": [...]},
// the "types" key optional.
WorldSetting load_setting(const std::filesystem::path& file);
void save_setting(const WorldSetting& s, const std::filesystem::path& file);

std::string setting_to_json(const WorldSetting& s);
WorldSetting setting_from_json(const std::string& text);

}  // namespace sandboxgame
