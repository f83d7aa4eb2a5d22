#pragma once

// Instance files: {"jobs":[{"p":..,"w":..,"a":..}],"arrivals":[{"t":..,"b":..}]}, integers only.

#include <cstddef>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nrsched/errors.hpp"
#include "nrsched/instance.hpp"
#include "nrsched/unknown.hpp"

namespace nrsched {

class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct InstanceFile {
  std::vector<Job> jobs;
  std::vector<std::optional<Int>> times;  // empty entries when "t" is omitted
  std::vector<Int> quantities;
};

namespace detail {

inline std::size_t line_of(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// Line of every element of the top-level array stored under `key` (1 when not found).
inline std::vector<std::size_t> element_lines(std::string_view text, std::string_view key) {
  std::vector<std::size_t> out;
  int depth = 0;
  bool in_string = false, escaped = false, in_array = false;
  std::size_t string_start = 0, line = 1;
  std::string last_key;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') ++line;
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') {
        in_string = false;
        if (depth == 1) last_key = std::string(text.substr(string_start, i - string_start));
      }
      continue;
    }
    switch (c) {
      case '"':
        in_string = true;
        string_start = i + 1;
        break;
      case '[':
        ++depth;
        if (depth == 2 && last_key == key) in_array = true;
        else if (depth == 3 && in_array) out.push_back(line);
        break;
      case '{':
        ++depth;
        if (depth == 3 && in_array) out.push_back(line);
        break;
      case ']':
      case '}':
        if (depth == 2) in_array = false;
        --depth;
        break;
      default:
        break;
    }
  }
  return out;
}

inline Int integer_field(const nlohmann::json& obj, const char* name, std::size_t line, bool required = true,
                         bool* present = nullptr) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    if (required) throw ParseError(line, std::string("missing field \"") + name + "\"");
    if (present) *present = false;
    return 0;
  }
  if (!it->is_number_integer()) throw ParseError(line, std::string("field \"") + name + "\" must be an integer");
  if (it->is_number_unsigned() && it->get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<Int>::max()))
    throw ParseError(line, std::string("field \"") + name + "\" is out of range");
  Int value = it->get<Int>();
  if (value < 0) throw ParseError(line, std::string("field \"") + name + "\" must be non-negative");
  if (present) *present = true;
  return value;
}

}  // namespace detail

/// Structural parse. Arrival times must be non-decreasing and start at 0; equal times are merged.
/// With require_times false the "t" field may be omitted on every arrival (quantities-only input).
inline InstanceFile parse_instance_file(std::string_view text, bool require_times = true) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }
  if (!root.is_object()) throw ParseError(1, "top level must be an object");
  for (const char* key : {"jobs", "arrivals"}) {
    if (!root.contains(key)) throw ParseError(1, std::string("missing \"") + key + "\"");
    if (!root[key].is_array()) throw ParseError(1, std::string("\"") + key + "\" must be an array");
  }
  auto job_lines = detail::element_lines(text, "jobs");
  auto arrival_lines = detail::element_lines(text, "arrivals");
  auto at = [](const std::vector<std::size_t>& lines, std::size_t i) { return i < lines.size() ? lines[i] : 1; };

  InstanceFile out;
  const auto& jobs = root["jobs"];
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    std::size_t line = at(job_lines, j);
    if (!jobs[j].is_object()) throw ParseError(line, "job must be an object");
    out.jobs.push_back({detail::integer_field(jobs[j], "p", line), detail::integer_field(jobs[j], "w", line),
                        detail::integer_field(jobs[j], "a", line)});
  }
  const auto& arrivals = root["arrivals"];
  if (arrivals.empty()) throw ParseError(at(arrival_lines, 0), "at least one arrival is required");
  std::optional<bool> timed;
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    std::size_t line = at(arrival_lines, i);
    if (!arrivals[i].is_object()) throw ParseError(line, "arrival must be an object");
    bool has_t = false;
    Int t = detail::integer_field(arrivals[i], "t", line, require_times, &has_t);
    Int b = detail::integer_field(arrivals[i], "b", line);
    if (timed && *timed != has_t) throw ParseError(line, "either every arrival has \"t\" or none does");
    timed = has_t;
    if (has_t) {
      if (out.times.empty() && t != 0) throw ParseError(line, "first arrival must be at t = 0");
      if (!out.times.empty()) {
        Int previous = *out.times.back();
        if (t < previous) throw ParseError(line, "arrivals must be sorted by time");
        if (t == previous) {
          out.quantities.back() += b;
          continue;
        }
      }
      out.times.emplace_back(t);
    } else {
      out.times.emplace_back(std::nullopt);
    }
    out.quantities.push_back(b);
  }
  return out;
}

inline Instance parse_instance(std::string_view text) {
  auto file = parse_instance_file(text, true);
  Instance inst;
  inst.jobs = std::move(file.jobs);
  for (std::size_t i = 0; i < file.quantities.size(); ++i) inst.arrivals.push_back({*file.times[i], file.quantities[i]});
  return inst;
}

/// Jobs and arrival quantities; times, when present, are ignored.
inline RobustInput parse_robust_input(std::string_view text, const Rational& eps) {
  auto file = parse_instance_file(text, false);
  RobustInput in;
  in.jobs = std::move(file.jobs);
  in.quantities = std::move(file.quantities);
  in.eps = eps;
  return in;
}

namespace detail {

inline void write_jobs(std::ostringstream& os, const std::vector<Job>& jobs) {
  os << "  \"jobs\": [";
  for (std::size_t j = 0; j < jobs.size(); ++j)
    os << (j ? ",\n" : "\n") << "    {\"p\": " << jobs[j].p << ", \"w\": " << jobs[j].w << ", \"a\": " << jobs[j].a
       << "}";
  os << (jobs.empty() ? "],\n" : "\n  ],\n");
}

}  // namespace detail

inline std::string format_instance(const Instance& inst) {
  std::ostringstream os;
  os << "{\n";
  detail::write_jobs(os, inst.jobs);
  os << "  \"arrivals\": [";
  for (std::size_t i = 0; i < inst.arrivals.size(); ++i) {
    const auto& r = inst.arrivals[i];
    if (!is_integral(r.t)) throw PreconditionError("instance files hold integer arrival times only");
    os << (i ? ",\n" : "\n") << "    {\"t\": " << to_string(r.t) << ", \"b\": " << r.b << "}";
  }
  os << (inst.arrivals.empty() ? "]\n" : "\n  ]\n") << "}\n";
  return os.str();
}

inline std::string format_robust_input(const RobustInput& in) {
  std::ostringstream os;
  os << "{\n";
  detail::write_jobs(os, in.jobs);
  os << "  \"arrivals\": [";
  for (std::size_t i = 0; i < in.quantities.size(); ++i) os << (i ? ",\n" : "\n") << "    {\"b\": " << in.quantities[i] << "}";
  os << (in.quantities.empty() ? "]\n" : "\n  ]\n") << "}\n";
  return os.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("write failed for " + path);
}

inline Instance load_instance(const std::string& path) {
  try {
    return parse_instance(read_text_file(path));
  } catch (const ParseError& e) {
    throw InvalidInput(path + ":" + e.what());
  }
}

}  // namespace nrsched
