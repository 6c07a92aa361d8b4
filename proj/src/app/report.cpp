#include "bcv/app/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string_view>

#include "json.hpp"

namespace bcv::app {

namespace {

using Json = nlohmann::ordered_json;

void write_string(std::string& out, const std::string& text) {
  out += Json(text).dump();
}

void write(std::string& out, const Json& value, int depth) {
  const std::string pad(2 * depth + 2, ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_string(out, key);
        out += ": ";
        write(out, item, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        write(out, value[i], depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_real(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

}  // namespace

EntryBuilder::EntryBuilder(std::string name, double tolerance, Bound bound)
    : name_(std::move(name)), tolerance_(tolerance), bound_(bound) {}

void EntryBuilder::add(double residual) {
  ++samples_;
  if (!std::isfinite(residual)) {
    ++errors_;
    return;
  }
  const double value = std::abs(residual);
  if (bound_ == Bound::Below) {
    max_ = std::max(max_, value);
  } else {
    max_ = samples_ - errors_ == 1 ? value : std::min(max_, value);
  }
}

SuiteEntry EntryBuilder::finish() const {
  SuiteEntry entry{name_, samples_, max_, tolerance_, bound_, errors_, false};
  const bool within = bound_ == Bound::Below ? max_ < tolerance_ : max_ > tolerance_;
  entry.pass = within && errors_ == 0 && samples_ > 0;
  return entry;
}

bool VerifyReport::pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const SuiteEntry& e) { return e.pass; });
}

std::string format_real(double value) {
  if (!std::isfinite(value)) return "null";
  if (value == 0.0) return "0";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string to_json(const VerifyReport& report) {
  Json root;
  root["params"] = {{"kappa", report.params.kappa},
                    {"tau", report.params.tau},
                    {"geometry", std::string(to_string(classify_space(report.params)))}};
  root["seed"] = report.seed;
  Json suites = Json::array();
  for (const SuiteEntry& e : report.entries) {
    suites.push_back({{"name", e.name},
                      {"samples", e.samples},
                      {"max_residual", e.max_residual},
                      {"tolerance", e.tolerance},
                      {"mode", e.bound == Bound::Below ? "below" : "exceeds"},
                      {"errors", e.errors},
                      {"pass", e.pass}});
  }
  root["suites"] = std::move(suites);
  root["pass"] = report.pass();
  if (report.wall_time_seconds) root["wall_time_seconds"] = *report.wall_time_seconds;
  std::string out;
  write(out, root, 0);
  out += "\n";
  return out;
}

}  // namespace bcv::app
