#include "sprrp/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "json_util.hpp"

namespace sprrp {

std::string format_number(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot format non-finite number");
  }
  if (value == 0.0) return "0";  // folds -0
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  return std::string(buffer, end);
}

namespace detail {
namespace {

void dump_into(const nlohmann::json& value, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string closing_pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (value.type()) {
    case nlohmann::json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      // nlohmann::json objects are std::map backed, so iteration is sorted.
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += nlohmann::json(key).dump();
        out += ": ";
        dump_into(item, depth + 1, out);
      }
      out += "\n" + closing_pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        dump_into(value[i], depth + 1, out);
      }
      out += "\n" + closing_pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_number(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& value) {
  std::string out;
  dump_into(value, 0, out);
  out += '\n';
  return out;
}

}  // namespace detail
}  // namespace sprrp
