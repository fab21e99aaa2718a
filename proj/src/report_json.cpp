#include "plasmoscan/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "plasmoscan/io.hpp"

namespace plasmoscan {

namespace {

using nlohmann::json;

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (const unsigned char c : s) {
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

std::string shape_name(StructuringElement::Shape s) {
    return s == StructuringElement::Shape::Square ? "square" : "disk";
}

/// The config object body; `pad` is the indentation of its own lines.
void append_config(std::string& out, const PipelineConfig& cfg,
                   const std::string& pad) {
    const std::string in = pad + "  ";
    out += "{\n";
    out += in + "\"subtract_fraction\": " +
           format_float(cfg.normalization.subtract_fraction) + ",\n";
    out += in + "\"top_fraction\": " +
           format_float(cfg.normalization.top_fraction) + ",\n";
    out += in + "\"activation_threshold\": " +
           std::to_string(cfg.normalization.activation_threshold) + ",\n";
    out += in + "\"t0\": " + format_float(cfg.t0) + ",\n";
    out += in + "\"se\": {\n";
    out += in + "  \"shape\": \"" + shape_name(cfg.se_shape) + "\",\n";
    out += in + "  \"size\": " + std::to_string(cfg.se_size) + "\n";
    out += in + "},\n";
    out += in + "\"min_area\": " + std::to_string(cfg.min_area) + ",\n";
    out += in + "\"ratio_factor\": " + format_float(cfg.ratio_factor) + ",\n";
    out += in + "\"connectivity\": " + std::to_string(cfg.connectivity) + "\n";
    out += pad + "}";
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known)
            throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
    }
}

double number_field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigError(where + ": \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

std::int64_t integer_field(const json& j, const char* key,
                           const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw ConfigError(where + ": \"" + key + "\" must be an integer");
    return j.at(key).get<std::int64_t>();
}

bool bool_field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_boolean())
        throw ConfigError(where + ": \"" + key + "\" must be a boolean");
    return j.at(key).get<bool>();
}

std::string string_field(const json& j, const char* key,
                         const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw ConfigError(where + ": \"" + key + "\" must be a string");
    return j.at(key).get<std::string>();
}

PipelineConfig config_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": not an object");
    check_keys(j,
               {"subtract_fraction", "top_fraction", "activation_threshold",
                "t0", "se", "min_area", "ratio_factor", "connectivity"},
               where);

    PipelineConfig cfg;
    if (j.contains("subtract_fraction")) {
        cfg.normalization.subtract_fraction =
            number_field(j, "subtract_fraction", where);
        if (cfg.normalization.subtract_fraction < 0.0 ||
            cfg.normalization.subtract_fraction > 1.0)
            throw ConfigError(where + ": subtract_fraction outside [0,1]");
    }
    if (j.contains("top_fraction")) {
        cfg.normalization.top_fraction = number_field(j, "top_fraction", where);
        if (!(cfg.normalization.top_fraction > 0.0) ||
            cfg.normalization.top_fraction > 1.0)
            throw ConfigError(where + ": top_fraction outside (0,1]");
    }
    if (j.contains("activation_threshold")) {
        const std::int64_t v = integer_field(j, "activation_threshold", where);
        if (v < 0 || v > 255)
            throw ConfigError(where + ": activation_threshold outside [0,255]");
        cfg.normalization.activation_threshold = static_cast<int>(v);
    }
    if (j.contains("t0")) {
        cfg.t0 = number_field(j, "t0", where);
        if (!(cfg.t0 > 0.0))
            throw ConfigError(where + ": t0 must be positive");
    }
    if (j.contains("se")) {
        const json& se = j.at("se");
        if (!se.is_object()) throw ConfigError(where + ": se is not an object");
        check_keys(se, {"shape", "size"}, where + ".se");
        if (se.contains("shape")) {
            const std::string s = string_field(se, "shape", where + ".se");
            if (s == "square")
                cfg.se_shape = StructuringElement::Shape::Square;
            else if (s == "disk")
                cfg.se_shape = StructuringElement::Shape::Disk;
            else
                throw ConfigError(where + ": se.shape must be square or disk");
        }
        if (se.contains("size")) {
            const std::int64_t v = integer_field(se, "size", where + ".se");
            if (v < 1 || v > 255 || v % 2 == 0)
                throw ConfigError(where + ": se.size must be odd and in [1,255]");
            cfg.se_size = static_cast<int>(v);
        }
    }
    if (j.contains("min_area")) {
        cfg.min_area = integer_field(j, "min_area", where);
        if (cfg.min_area < 0)
            throw ConfigError(where + ": min_area must be non-negative");
    }
    if (j.contains("ratio_factor")) {
        cfg.ratio_factor = number_field(j, "ratio_factor", where);
        if (cfg.ratio_factor < 0.0)
            throw ConfigError(where + ": ratio_factor must be non-negative");
    }
    if (j.contains("connectivity")) {
        if (integer_field(j, "connectivity", where) != 8)
            throw ConfigError(where + ": only 8-connectivity is supported");
    }
    return cfg;
}

}  // namespace

std::string format_float(double v) {
    if (!std::isfinite(v))
        throw ConfigError("non-finite value has no JSON form");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    // keep the decimal point locale-proof
    for (char& c : buf) {
        if (c == '\0') break;
        if (c == ',') c = '.';
    }
    return buf;
}

std::string serialize_report(const DetectionReport& report) {
    std::string out = "{\n";
    out += "  \"image\": ";
    append_escaped(out, report.image);
    out += ",\n";
    out += "  \"width\": " + std::to_string(report.width) + ",\n";
    out += "  \"height\": " + std::to_string(report.height) + ",\n";
    out += "  \"global_value\": " + format_float(report.global_value) + ",\n";
    out += "  \"threshold\": " + format_float(report.threshold) + ",\n";

    if (report.contours.empty()) {
        out += "  \"contours\": [],\n";
    } else {
        out += "  \"contours\": [\n";
        for (std::size_t i = 0; i < report.contours.size(); ++i) {
            const ContourVerdict& c = report.contours[i];
            out += "    {\n";
            out += "      \"label\": " + std::to_string(c.label) + ",\n";
            out += "      \"area\": " + std::to_string(c.area) + ",\n";
            out += "      \"centroid\": [" + format_float(c.centroid_x) + ", " +
                   format_float(c.centroid_y) + "],\n";
            out += "      \"local_value\": " + format_float(c.local_value) + ",\n";
            out += std::string("      \"is_plasmodium\": ") +
                   (c.is_plasmodium ? "true" : "false") + "\n";
            out += i + 1 < report.contours.size() ? "    },\n" : "    }\n";
        }
        out += "  ],\n";
    }

    out += std::string("  \"plasmodium_found\": ") +
           (report.plasmodium_found ? "true" : "false") + ",\n";
    out += "  \"config\": ";
    append_config(out, report.config, "  ");
    out += "\n}\n";
    return out;
}

DetectionReport parse_report(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("report: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("report: top level is not an object");
    check_keys(j,
               {"image", "width", "height", "global_value", "threshold",
                "contours", "plasmodium_found", "config"},
               "report");

    DetectionReport report;
    report.image = string_field(j, "image", "report");
    report.width = static_cast<int>(integer_field(j, "width", "report"));
    report.height = static_cast<int>(integer_field(j, "height", "report"));
    report.global_value = number_field(j, "global_value", "report");
    report.threshold = number_field(j, "threshold", "report");
    report.plasmodium_found = bool_field(j, "plasmodium_found", "report");

    if (!j.contains("contours") || !j.at("contours").is_array())
        throw ConfigError("report: \"contours\" must be an array");
    for (const json& jc : j.at("contours")) {
        if (!jc.is_object())
            throw ConfigError("report: contour entry is not an object");
        check_keys(jc, {"label", "area", "centroid", "local_value", "is_plasmodium"},
                   "report contour");
        ContourVerdict c;
        c.label =
            static_cast<std::int32_t>(integer_field(jc, "label", "report contour"));
        c.area = integer_field(jc, "area", "report contour");
        if (!jc.contains("centroid") || !jc.at("centroid").is_array() ||
            jc.at("centroid").size() != 2 || !jc.at("centroid")[0].is_number() ||
            !jc.at("centroid")[1].is_number())
            throw ConfigError("report: contour centroid must be [x, y]");
        c.centroid_x = jc.at("centroid")[0].get<double>();
        c.centroid_y = jc.at("centroid")[1].get<double>();
        c.local_value = number_field(jc, "local_value", "report contour");
        c.is_plasmodium = bool_field(jc, "is_plasmodium", "report contour");
        report.contours.push_back(c);
    }

    if (!j.contains("config"))
        throw ConfigError("report: missing \"config\"");
    report.config = config_from_json(j.at("config"), "report config");
    return report;
}

std::string serialize_config(const PipelineConfig& cfg) {
    std::string out;
    append_config(out, cfg, "");
    out += "\n";
    return out;
}

PipelineConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return config_from_json(j, "config");
}

PipelineConfig load_config_file(const std::string& path) {
    return parse_config(read_text_file(path));
}

}  // namespace plasmoscan
