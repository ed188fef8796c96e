#include "crawlerlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace crawler {

std::string format_float(double x) {
    if (!std::isfinite(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void write_string(std::ostream& out, const std::string& s) {
    out << '"';
    for (char c : s) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            case '\t': out << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out << buf;
                } else {
                    out << c;
                }
        }
    }
    out << '"';
}

}  // namespace

JsonValue& JsonValue::push(JsonValue v) {
    items_.push_back(std::move(v));
    return *this;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    members_.emplace_back(key, std::move(v));
    return *this;
}

void JsonValue::write(std::ostream& out, int indent) const {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (kind_) {
        case Kind::Null: out << "null"; break;
        case Kind::Bool: out << (flag_ ? "true" : "false"); break;
        case Kind::Integer: out << integer_; break;
        case Kind::Number:
            if (std::isfinite(number_)) out << format_float(number_);
            else out << "null";
            break;
        case Kind::String: write_string(out, text_); break;
        case Kind::Array:
            if (items_.empty()) {
                out << "[]";
                break;
            }
            out << "[\n";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                out << pad;
                items_[i].write(out, indent + 2);
                out << (i + 1 < items_.size() ? ",\n" : "\n");
            }
            out << close << ']';
            break;
        case Kind::Object:
            if (members_.empty()) {
                out << "{}";
                break;
            }
            out << "{\n";
            for (std::size_t i = 0; i < members_.size(); ++i) {
                out << pad;
                write_string(out, members_[i].first);
                out << ": ";
                members_[i].second.write(out, indent + 2);
                out << (i + 1 < members_.size() ? ",\n" : "\n");
            }
            out << close << '}';
            break;
    }
}

std::string JsonValue::dump() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

void write_csv_row(std::ostream& out, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ',';
        out << format_float(values[i]);
    }
    out << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,V,v_com,s,v_s,u_com,u1,u2\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& y = traj.states[i];
        write_csv_row(out, {traj.times[i], y[kV], y[kVcom], y[kS], y[kVs], y[kUcom], y[kUcom] - 0.5 * y[kS],
                            y[kUcom] + 0.5 * y[kS]});
    }
}

}  // namespace crawler
