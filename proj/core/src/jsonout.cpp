#include "sgraph/jsonout.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sgraph {

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

void append_value(std::string& out, const Json& j) {
    using value_t = nlohmann::json::value_t;
    switch (j.type()) {
        case value_t::null:
            out += "null";
            break;
        case value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            break;
        case value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            break;
        case value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            break;
        case value_t::number_float: {
            const double d = j.get<double>();
            if (!std::isfinite(d))
                throw std::invalid_argument("dump_canonical: non-finite number");
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", d);
            out += buf;
            break;
        }
        case value_t::string:
            append_escaped(out, j.get_ref<const std::string&>());
            break;
        case value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += ',';
                first = false;
                append_value(out, e);
            }
            out += ']';
            break;
        }
        case value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                append_escaped(out, it.key());
                out += ':';
                append_value(out, it.value());
            }
            out += '}';
            break;
        }
        default:
            throw std::invalid_argument("dump_canonical: unsupported value type");
    }
}

}  // namespace

std::string dump_canonical(const Json& j) {
    std::string out;
    append_value(out, j);
    return out;
}

}  // namespace sgraph
