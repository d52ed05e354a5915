#pragma once

// JSON helpers shared by the file formats: parsing with line/column error
// positions, and a deterministic writer that prints every double with 17
// significant digits.

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nlgame/error.hpp"

namespace nlgame::json_util {

using json = nlohmann::json;

/// Parses a document; syntax errors become ParseError with line and column.
inline json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    // Keep nlohmann's description without its own byte offset prefix.
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw ParseError("JSON " + what, line, column);
  }
}

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Keep integral values recognisable as floats.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void write(const json& j, std::string& out, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(it.value(), out, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& e : j)
        if (e.is_structured()) scalars = false;
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += scalars && indent >= 0 ? ", " : ",";
        first = false;
        if (!scalars) newline(depth + 1);
        write(e, out, indent, depth + 1);
      }
      if (!scalars) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

/// Deterministic serialization. Object keys come out in nlohmann's sorted
/// order; floats use 17 significant digits.
inline std::string dump(const json& j, int indent = 2) {
  std::string out;
  detail::write(j, out, indent, 0);
  return out;
}

}  // namespace nlgame::json_util
