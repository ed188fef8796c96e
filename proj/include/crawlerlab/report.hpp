#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "crawlerlab/simulate.hpp"

namespace crawler {

// 17 significant digits. Non-finite values become null in JSON and "nan" in CSV.
std::string format_float(double x);

// Minimal ordered JSON value for reports.
class JsonValue {
public:
    enum class Kind { Null, Bool, Number, Integer, String, Array, Object };

    JsonValue() = default;
    JsonValue(double x) : kind_(Kind::Number), number_(x) {}
    JsonValue(int x) : kind_(Kind::Integer), integer_(x) {}
    JsonValue(long x) : kind_(Kind::Integer), integer_(x) {}
    JsonValue(unsigned long x) : kind_(Kind::Integer), integer_(static_cast<long long>(x)) {}
    JsonValue(bool b) : kind_(Kind::Bool), flag_(b) {}
    JsonValue(const char* s) : kind_(Kind::String), text_(s) {}
    JsonValue(std::string s) : kind_(Kind::String), text_(std::move(s)) {}

    static JsonValue array() {
        JsonValue v;
        v.kind_ = Kind::Array;
        return v;
    }
    static JsonValue object() {
        JsonValue v;
        v.kind_ = Kind::Object;
        return v;
    }

    JsonValue& push(JsonValue v);
    JsonValue& set(const std::string& key, JsonValue v);
    void write(std::ostream& out, int indent = 0) const;
    std::string dump() const;

private:
    Kind kind_ = Kind::Null;
    double number_ = 0.0;
    long long integer_ = 0;
    bool flag_ = false;
    std::string text_;
    std::vector<JsonValue> items_;
    std::vector<std::pair<std::string, JsonValue>> members_;
};

void write_csv_row(std::ostream& out, const std::vector<double>& values);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace crawler
