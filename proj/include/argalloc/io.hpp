#pragma once

// Text formats: TGF and APX for attack frameworks, ADFX for networks with
// explicit acceptance conditions, and JSON for allocators, labelings and
// splitters.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "argalloc/blocks.hpp"
#include "argalloc/framework.hpp"

namespace argalloc {

using Json = nlohmann::ordered_json;

enum class InputFormat { tgf, apx, adfx, blocks_json };

std::string_view format_name(InputFormat f) noexcept;
std::optional<InputFormat> parse_format_name(std::string_view name) noexcept;
/// By extension: .tgf, .apx, .adfx, .json.
std::optional<InputFormat> format_from_path(const std::filesystem::path& p);

/// Node lines, a `#` line, then "attacker target" edge lines.
ArgumentationFramework parse_tgf(std::string_view text);
/// `arg(name).` and `att(a,b).` statements; `%` starts a comment.
ArgumentationFramework parse_apx(std::string_view text);
/// `arg(name).` and `cond(name, expression).`; a missing condition is T.
Network parse_adfx(std::string_view text);

std::string write_tgf(const ArgumentationFramework& f);
std::string write_apx(const ArgumentationFramework& f);
std::string write_adfx(const Network& n);
std::string write_dot(const Network& n);

struct InputDocument {
  InputFormat format;
  /// Present when every condition came from attacks.
  std::optional<ArgumentationFramework> framework;
  Network network;
  /// Present for blocks-json input.
  std::optional<Splitter> splitter;
};

InputDocument parse_input(std::string_view text, InputFormat format);
/// Throws UsageError when the file cannot be read or the format is unknown.
InputDocument load_input(const std::filesystem::path& path,
                         std::optional<InputFormat> format = std::nullopt);
std::string read_file(const std::filesystem::path& path);

Json allocator_to_json(const Allocator& e);
Allocator allocator_from_json(const Json& j);

Json labeling_to_json(const std::vector<std::string>& positions, const Labeling& l);
Labeling labeling_from_json(const std::vector<std::string>& positions, const Json& j);

Json splitter_to_json(const Splitter& s);
Splitter splitter_from_json(const Json& j);

/// Network made of the blocks' actual arguments and conditions.
Network splitter_network(const Splitter& s);

}  // namespace argalloc
