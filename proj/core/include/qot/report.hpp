#pragma once
// Machine readable run reports. The JSON writer keeps object keys in
// insertion order and prints every float with %.17g, so a run serializes to
// the same bytes every time; golden-file comparisons rely on that. Infinite
// and NaN values become string sentinels instead of invalid JSON.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qot {

class JsonValue {
 public:
  JsonValue() : kind_(Kind::Null) {}

  static JsonValue object();
  static JsonValue array();
  static JsonValue str(std::string s);
  static JsonValue num(double v);
  static JsonValue integer(long long v);
  static JsonValue boolean(bool b);

  // object field; inserting an existing key overwrites in place
  JsonValue& set(const std::string& key, JsonValue v);
  // array element
  JsonValue& push(JsonValue v);

  bool is_object() const { return kind_ == Kind::Object; }
  bool is_array() const { return kind_ == Kind::Array; }
  const JsonValue* find(const std::string& key) const;

  std::string dump() const;  // compact, deterministic

 private:
  enum class Kind { Null, Bool, Int, Double, String, Array, Object };
  Kind kind_;
  bool bool_ = false;
  long long int_ = 0;
  double double_ = 0.0;
  std::string string_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> fields_;

  void write(std::string& out) const;
};

// number formatting used across reports (17 significant digits, sentinel
// strings for non-finite values)
std::string format_real(double v);

struct AssertionRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool verdict = false;  // always recomputable as lhs <= rhs + slack

  static AssertionRecord check(std::string name, double lhs, double rhs, double slack);
  JsonValue to_json() const;
};

struct TaskReport {
  std::string task;
  JsonValue details = JsonValue::object();
  std::vector<AssertionRecord> assertions;
  double wall_ms = 0.0;  // excluded from canonical serialization

  bool pass() const;
};

struct RunReport {
  JsonValue config_echo = JsonValue::object();
  std::string version;
  std::uint64_t seed = 0;
  std::vector<TaskReport> tasks;

  bool pass() const;
  // include_timing adds wall-clock fields; canonical golden files leave it off
  JsonValue to_json(bool include_timing) const;
  // one row per assertion: task,assertion,lhs,rhs,slack,verdict
  std::string to_csv() const;
};

}  // namespace qot
