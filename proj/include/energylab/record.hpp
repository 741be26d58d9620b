// record.hpp
// Result records and their persistence. Records are UTF-8 JSON Lines with
// the fixed field order kind, params, measured, bounds, seed, duration_ms,
// plus a flattened-column CSV export. Serialization is byte-deterministic:
// reals are written with 17 significant digits (so they round-trip exactly)
// by our own emitter rather than the library default, and files are written
// atomically via a temp file and rename.

#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "energylab/bounds.hpp"
#include "energylab/errors.hpp"
#include "energylab/int128.hpp"

namespace energylab {

using Json = nlohmann::ordered_json;

namespace detail {

inline void emit_double(double v, std::string& out) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

inline void emit_json(const Json& v, std::string& out) {
    switch (v.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += Json(it.key()).dump();
                out += ':';
                emit_json(it.value(), out);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ',';
                emit_json(v[i], out);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float: emit_double(v.get<double>(), out); break;
        default: out += v.dump(); break;
    }
}

} // namespace detail

inline std::string dump_json(const Json& v) {
    std::string out;
    detail::emit_json(v, out);
    return out;
}

// Exact counters as JSON: plain number while it fits 64 bits, decimal
// string beyond that.
inline Json json_count(u128 v) {
    if (v <= static_cast<u128>(UINT64_MAX)) return static_cast<std::uint64_t>(v);
    return to_string(v);
}

inline Json to_json(const BoundReport& r) {
    Json j;
    j["measured"] = r.measured;
    j["bound_rhs"] = r.bound_rhs;
    j["ratio"] = r.ratio;
    Json c = Json::object();
    for (const auto& [k, v] : r.constants) c[k] = v;
    j["constants"] = c;
    Json f = Json::object();
    for (const auto& [k, v] : r.hypothesis_flags) f[k] = v;
    j["hypothesis_flags"] = f;
    return j;
}

struct ResultRecord {
    std::string kind;
    Json params = Json::object();
    Json measured = Json::object();
    Json bounds = Json::array();
    std::uint64_t seed = 0;
    double duration_ms = 0;

    Json to_json(bool no_timestamps) const {
        Json j;
        j["kind"] = kind;
        j["params"] = params;
        j["measured"] = measured;
        j["bounds"] = bounds;
        j["seed"] = seed;
        j["duration_ms"] = no_timestamps ? 0.0 : duration_ms;
        return j;
    }
};

namespace detail {

inline void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
    } else {
        out.emplace_back(prefix, v);
    }
}

inline std::string csv_cell(const Json& v) {
    std::string s;
    if (v.is_number_float()) emit_double(v.get<double>(), s);
    else if (v.is_string()) s = v.get<std::string>();
    else s = v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        quoted += '"';
        return quoted;
    }
    return s;
}

inline void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot write: " + tmp);
        out << content;
        if (!out) throw io_error("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw io_error("rename " + tmp + " -> " + path + ": " + ec.message());
}

} // namespace detail

enum class OutputFormat { jsonl, csv };

// Header line identifying the stream; readers skip records whose kind
// starts with "__".
inline Json jsonl_header() {
    Json j;
    j["kind"] = "__header__";
    j["format"] = "energylab-results.v1";
    return j;
}

inline std::string render_records(const std::vector<ResultRecord>& records, OutputFormat format,
                                  bool no_timestamps, bool truncated = false) {
    std::string out;
    if (format == OutputFormat::jsonl) {
        out += dump_json(jsonl_header());
        out += '\n';
        for (const auto& r : records) {
            out += dump_json(r.to_json(no_timestamps));
            out += '\n';
        }
        if (truncated) {
            out += dump_json(Json{{"kind", "__truncated__"}});
            out += '\n';
        }
        return out;
    }
    // CSV: columns are the union of flattened keys in first-seen order.
    std::vector<std::string> columns;
    std::vector<std::vector<std::pair<std::string, Json>>> rows;
    for (const auto& r : records) {
        std::vector<std::pair<std::string, Json>> flat;
        detail::flatten(r.to_json(no_timestamps), "", flat);
        for (const auto& [k, v] : flat)
            if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
        rows.push_back(std::move(flat));
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += detail::csv_cell(Json(columns[i]));
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            for (const auto& [k, v] : row)
                if (k == columns[i]) {
                    out += detail::csv_cell(v);
                    break;
                }
        }
        out += '\n';
    }
    if (truncated) out += "__truncated__\n";
    return out;
}

inline void persist(const std::vector<ResultRecord>& records, const std::string& path, OutputFormat format,
                    bool no_timestamps, bool truncated = false) {
    detail::atomic_write(path, render_records(records, format, no_timestamps, truncated));
}

// Read back records from a JSONL file, skipping header/marker lines.
inline std::vector<Json> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    std::vector<Json> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json j = Json::parse(line, nullptr, false);
        if (j.is_discarded()) throw io_error(path + ":" + std::to_string(lineno) + ": invalid JSON line");
        if (j.contains("kind") && j["kind"].is_string()) {
            const auto k = j["kind"].get<std::string>();
            if (k.rfind("__", 0) == 0) continue;
        }
        records.push_back(std::move(j));
    }
    return records;
}

// Dotted-path lookup ("measured.normalized_energy", "bounds.0.ratio").
inline const Json* lookup_path(const Json& root, const std::string& path) {
    const Json* cur = &root;
    std::size_t pos = 0;
    while (pos <= path.size()) {
        const auto dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (cur->is_object()) {
            auto it = cur->find(key);
            if (it == cur->end()) return nullptr;
            cur = &*it;
        } else if (cur->is_array()) {
            try {
                const std::size_t idx = std::stoul(key);
                if (idx >= cur->size()) return nullptr;
                cur = &(*cur)[idx];
            } catch (const std::exception&) {
                return nullptr;
            }
        } else {
            return nullptr;
        }
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return cur;
}

} // namespace energylab
