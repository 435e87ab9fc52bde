#include "qot/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qot {

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Kind::Object;
  return v;
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Kind::Array;
  return v;
}

JsonValue JsonValue::str(std::string s) {
  JsonValue v;
  v.kind_ = Kind::String;
  v.string_ = std::move(s);
  return v;
}

JsonValue JsonValue::num(double x) {
  JsonValue v;
  v.kind_ = Kind::Double;
  v.double_ = x;
  return v;
}

JsonValue JsonValue::integer(long long x) {
  JsonValue v;
  v.kind_ = Kind::Int;
  v.int_ = x;
  return v;
}

JsonValue JsonValue::boolean(bool b) {
  JsonValue v;
  v.kind_ = Kind::Bool;
  v.bool_ = b;
  return v;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
  if (kind_ != Kind::Object) throw std::logic_error("JsonValue::set on a non-object");
  for (auto& f : fields_) {
    if (f.first == key) {
      f.second = std::move(v);
      return *this;
    }
  }
  fields_.emplace_back(key, std::move(v));
  return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
  if (kind_ != Kind::Array) throw std::logic_error("JsonValue::push on a non-array");
  items_.push_back(std::move(v));
  return *this;
}

const JsonValue* JsonValue::find(const std::string& key) const {
  if (kind_ != Kind::Object) return nullptr;
  for (const auto& f : fields_)
    if (f.first == key) return &f.second;
  return nullptr;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_escaped(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

void JsonValue::write(std::string& out) const {
  switch (kind_) {
    case Kind::Null:
      out += "null";
      break;
    case Kind::Bool:
      out += bool_ ? "true" : "false";
      break;
    case Kind::Int: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%lld", int_);
      out += buf;
      break;
    }
    case Kind::Double: {
      if (std::isfinite(double_)) {
        out += format_real(double_);
      } else {
        write_escaped(format_real(double_), out);  // sentinel string
      }
      break;
    }
    case Kind::String:
      write_escaped(string_, out);
      break;
    case Kind::Array: {
      out += '[';
      for (size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ',';
        items_[i].write(out);
      }
      out += ']';
      break;
    }
    case Kind::Object: {
      out += '{';
      for (size_t i = 0; i < fields_.size(); ++i) {
        if (i) out += ',';
        write_escaped(fields_[i].first, out);
        out += ':';
        fields_[i].second.write(out);
      }
      out += '}';
      break;
    }
  }
}

std::string JsonValue::dump() const {
  std::string out;
  write(out);
  return out;
}

AssertionRecord AssertionRecord::check(std::string name, double lhs, double rhs,
                                       double slack) {
  AssertionRecord rec;
  rec.name = std::move(name);
  rec.lhs = lhs;
  rec.rhs = rhs;
  rec.slack = slack;
  rec.verdict = lhs <= rhs + slack;
  return rec;
}

JsonValue AssertionRecord::to_json() const {
  JsonValue v = JsonValue::object();
  v.set("name", JsonValue::str(name));
  v.set("lhs", JsonValue::num(lhs));
  v.set("rhs", JsonValue::num(rhs));
  v.set("slack", JsonValue::num(slack));
  v.set("verdict", JsonValue::boolean(verdict));
  return v;
}

bool TaskReport::pass() const {
  for (const AssertionRecord& a : assertions)
    if (!a.verdict) return false;
  return true;
}

bool RunReport::pass() const {
  for (const TaskReport& t : tasks)
    if (!t.pass()) return false;
  return true;
}

JsonValue RunReport::to_json(bool include_timing) const {
  JsonValue root = JsonValue::object();
  root.set("version", JsonValue::str(version));
  root.set("seed", JsonValue::integer(static_cast<long long>(seed)));
  root.set("config", config_echo);
  JsonValue task_list = JsonValue::array();
  for (const TaskReport& t : tasks) {
    JsonValue tv = JsonValue::object();
    tv.set("task", JsonValue::str(t.task));
    tv.set("pass", JsonValue::boolean(t.pass()));
    tv.set("details", t.details);
    JsonValue arr = JsonValue::array();
    for (const AssertionRecord& a : t.assertions) arr.push(a.to_json());
    tv.set("assertions", arr);
    if (include_timing) tv.set("wall_ms", JsonValue::num(t.wall_ms));
    task_list.push(tv);
  }
  root.set("tasks", task_list);
  root.set("pass", JsonValue::boolean(pass()));
  return root;
}

std::string RunReport::to_csv() const {
  std::string out = "task,assertion,lhs,rhs,slack,verdict\n";
  for (const TaskReport& t : tasks) {
    for (const AssertionRecord& a : t.assertions) {
      out += t.task;
      out += ',';
      out += a.name;
      out += ',';
      out += format_real(a.lhs);
      out += ',';
      out += format_real(a.rhs);
      out += ',';
      out += format_real(a.slack);
      out += ',';
      out += a.verdict ? "true" : "false";
      out += '\n';
    }
  }
  return out;
}

}  // namespace qot
