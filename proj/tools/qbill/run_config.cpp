#include "run_config.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qbill/error.hpp"
#include "qbill/io/atomic_file.hpp"
#include "qbill/io/binary.hpp"

namespace qbill::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigMap parse_config_text(const std::string& text, const std::string& origin) {
    ConfigMap out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(origin + ":" + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty()) throw UsageError(origin + ":" + std::to_string(lineno) + ": empty key");
        out[key] = value;
    }
    return out;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return parse_config_text(s.str(), path);
}

namespace {

void set_option(CLI::Option* opt, const std::string& value) {
    // lists use whitespace or commas
    if (opt->get_items_expected_max() > 1) {
        std::string v = value;
        for (char& c : v) {
            if (c == ',') c = ' ';
        }
        std::istringstream in(v);
        std::string item;
        while (in >> item) opt->add_result(item);
    } else {
        opt->add_result(value);
    }
    opt->run_callback();
}

}  // namespace

void apply_config(CLI::App& cmd, const ConfigMap& values, const ConfigMap& lowest) {
    for (const auto* source : {&values, &lowest}) {
        for (const auto& [key, value] : *source) {
            if (key == "config") continue;
            CLI::Option* opt = cmd.get_option_no_throw("--" + key);
            if (opt == nullptr) {
                throw UsageError("unknown config key '" + key + "' for '" + cmd.get_name() + "'");
            }
            if (opt->count() > 0) continue;
            if (source == &lowest && values.count(key)) continue;
            try {
                set_option(opt, value);
            } catch (const CLI::Error& e) {
                throw UsageError("config key '" + key + "': " + e.what());
            }
        }
    }
}

ConfigMap resolved_config(const CLI::App& cmd) {
    ConfigMap out;
    for (const CLI::Option* opt : cmd.get_options()) {
        const std::string name = opt->get_lnames().empty() ? "" : opt->get_lnames().front();
        if (name.empty() || name == "config" || name == "help") continue;
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results()) {
                if (!value.empty()) value += ' ';
                value += r;
            }
        } else if (opt->get_expected_min() == 0) {
            value = "false";
        } else {
            value = opt->get_default_str();
        }
        out[name] = value;
    }
    return out;
}

std::string hex32(std::uint32_t v) {
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", v);
    return buf;
}

std::string config_digest(const ConfigMap& cfg) {
    std::string text;
    for (const auto& [k, v] : cfg) text += k + "=" + v + "\n";
    return hex32(io::crc32(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size())));
}

std::string file_digest(const std::string& path) {
    return hex32(io::crc32(io::read_file(path)));
}

void write_sidecar(const std::string& artifact, const std::string& command, const ConfigMap& cfg,
                   const std::map<std::string, std::string>& inputs) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config"] = cfg;
    j["config_digest"] = config_digest(cfg);
    j["content_crc32"] = file_digest(artifact);
    j["inputs"] = inputs;
    io::write_atomic(artifact + ".meta.json", j.dump(2) + "\n");
}

SidecarInfo verify_sidecar(const std::string& artifact) {
    SidecarInfo info;
    std::ifstream in(artifact + ".meta.json");
    if (!in) return info;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(artifact + ".meta.json: " + e.what());
    }
    info.present = true;
    const std::string recorded = j.value("content_crc32", "");
    const std::string actual = file_digest(artifact);
    if (recorded != actual) {
        throw FormatError("digest mismatch: " + artifact + " does not match its .meta.json (recorded " +
                          recorded + ", found " + actual + ")");
    }
    if (j.contains("config")) info.config = j["config"].get<ConfigMap>();
    if (j.contains("inputs")) info.inputs = j["inputs"].get<std::map<std::string, std::string>>();
    return info;
}

void log_config(const std::string& command, const ConfigMap& cfg) {
    std::clog << "# qbill " << command << " (config " << config_digest(cfg) << ")\n";
    for (const auto& [k, v] : cfg) std::clog << "#   " << k << "=" << v << "\n";
}

}  // namespace qbill::cli
