#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "chipfire/orientation.hpp"

namespace chipfire::io {

enum class Format { Json, Txt };
enum class ObjectKind { Graph, Divisor, Orientation, FiringScript };

using Object = std::variant<GraphPtr, Divisor, Orientation, FiringScript>;

Format parse_format(std::string_view text);  // "json" | "txt"
ObjectKind parse_kind(std::string_view text);  // "graph" | "divisor" | "orientation" | "firing_script"
std::string_view to_string(Format f);
std::string_view to_string(ObjectKind k);
/// From the file extension; throws InvalidParameter for anything else.
Format format_from_path(const std::filesystem::path& path);
ObjectKind kind_of(const Object& object);

/// Parses a payload. Syntax problems raise SyntaxError, violated graph or
/// object invariants raise SemanticError, and a payload of another kind
/// raises KindMismatch. Error locations are "line N" for TXT and a JSON
/// pointer for JSON.
Object read(Format format, ObjectKind kind, std::string_view payload);

GraphPtr read_graph(Format format, std::string_view payload);
Divisor read_divisor(Format format, std::string_view payload);
Orientation read_orientation(Format format, std::string_view payload);
FiringScript read_script(Format format, std::string_view payload);

/// Canonical text: vertices and pairs in canonical order, every vertex
/// listed in degree and script sections, ", " and ": " separators, trailing
/// newline.
std::string write(Format format, const Object& object);

/// Standalone tikzpicture: vertices on a circle in canonical order, parallel
/// edges as bent copies, divisor chips as node labels.
std::string to_tikz(const Multigraph& graph);
std::string to_tikz(const Divisor& divisor);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace chipfire::io
