// Line-oriented key-value output for scripts and golden files. Each line is
// "key = value"; keys are dotted paths, list elements use their index as a
// path segment. Values escape backslash as "\\" and newline as "\n".

#ifndef QUANTSCOPE_MACHINE_HPP
#define QUANTSCOPE_MACHINE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quantscope/arith.hpp"
#include "quantscope/judgment.hpp"
#include "quantscope/kb.hpp"

namespace quantscope {

class MachineRecord {
public:
  void put(std::string key, std::string value);
  void put(std::string key, const char* value) { put(std::move(key), std::string(value)); }
  void put(std::string key, std::uint64_t value) { put(std::move(key), std::to_string(value)); }
  void put(std::string key, bool value) { put(std::move(key), std::string(value ? "true" : "false")); }

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
  // One line per entry, each ending in '\n'.
  std::string str() const;

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string escape_value(std::string_view value);

void write_density(MachineRecord& out, const std::string& prefix, const DensityResult& d);
void write_evidence(MachineRecord& out, const std::string& prefix, const Evidence& e);
void write_validation(MachineRecord& out, const std::string& prefix, const ValidationReport& report);

MachineRecord machine_record(const Judgment& j);

} // namespace quantscope

#endif // QUANTSCOPE_MACHINE_HPP
