#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cli {

cvp_axis Settings::method2_axis() const {
    if (db_convention == "squeezed-q") {
        return CVP_SQUEEZED_Q;
    }
    if (db_convention == "anti-squeezed-q") {
        return CVP_ANTI_SQUEEZED_Q;
    }
    throw std::invalid_argument("--db-convention must be squeezed-q or anti-squeezed-q");
}

double Settings::single_nu() const {
    if (nu.size() != 1) {
        throw std::invalid_argument("this command takes exactly one --nu value");
    }
    return nu.front();
}

nlohmann::json Settings::to_json() const {
    return nlohmann::json{{"nu", nu},
                          {"db", db},
                          {"delta", delta},
                          {"grid", {{"q_min", grid.q_min}, {"q_max", grid.q_max}, {"n_points", grid.n_points}}},
                          {"nodes", nodes},
                          {"db_convention", db_convention},
                          {"coherent_alpha", "real, alpha = sqrt(x)"}};
}

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string quote(const std::string &field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

void write_row(std::ostream &os, const std::vector<std::string> &row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "") << quote(row[i]);
    }
    os << "\r\n";
}

std::ofstream open_output(const Settings &s, const std::string &name) {
    std::filesystem::create_directories(s.out);
    std::ofstream os(s.out / name, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write " + (s.out / name).string());
    }
    return os;
}

}  // namespace

void CsvTable::add(std::vector<std::string> row) {
    if (row.size() != header_.size()) {
        throw std::logic_error("CSV row width does not match the header");
    }
    rows_.push_back(std::move(row));
}

void CsvTable::write(const Settings &s, const std::string &command, const std::string &name,
                     const nlohmann::json &extra) const {
    {
        std::ofstream os = open_output(s, name + ".csv");
        write_row(os, header_);
        for (const auto &r : rows_) {
            write_row(os, r);
        }
    }
    nlohmann::json e = extra;
    e["columns"] = header_;
    e["rows"] = rows_.size();
    write_manifest(s, command, name + ".csv", e);
}

void write_json(const Settings &s, const std::string &name, const nlohmann::json &doc) {
    std::ofstream os = open_output(s, name);
    os << doc.dump(2) << "\n";
}

void write_manifest(const Settings &s, const std::string &command, const std::string &output_name,
                    const nlohmann::json &extra) {
    nlohmann::json m{{"command", command},
                     {"output", output_name},
                     {"parameters", s.to_json()},
                     {"tool_version", cvp_version()},
                     {"deterministic", true}};
    for (const auto &[k, v] : extra.items()) {
        m[k] = v;
    }
    const std::string stem = output_name.substr(0, output_name.rfind('.'));
    write_json(s, stem + ".manifest.json", m);
}

}  // namespace cli
