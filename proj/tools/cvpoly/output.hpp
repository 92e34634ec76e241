#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvpoly/cvpoly.h"

namespace cli {

struct Settings {
    std::vector<double> nu;
    std::vector<double> db;
    std::vector<double> delta;
    std::vector<double> x;          // optional override of the swept inputs
    std::string grid_spec;
    cvp_grid grid{};
    int nodes = 8;
    unsigned jobs = 1;
    std::filesystem::path out;
    std::string db_convention = "squeezed-q";
    std::string q0_range = "-8,8,161";
    double tolerance = 1e-5;
    bool grid_refine = false;

    cvp_axis method2_axis() const;
    /// The single nu of commands that take one.
    double single_nu() const;
    nlohmann::json to_json() const;
};

/// "%.17g"; NaN becomes an empty field.
std::string format_number(double v);

class CsvTable {
   public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row);
    std::size_t rows() const {
        return rows_.size();
    }
    /// Writes <dir>/<name>.csv and its manifest <dir>/<name>.manifest.json.
    void write(const Settings &s, const std::string &command, const std::string &name,
               const nlohmann::json &extra = nlohmann::json::object()) const;

   private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes <dir>/<name> as pretty JSON.
void write_json(const Settings &s, const std::string &name, const nlohmann::json &doc);

void write_manifest(const Settings &s, const std::string &command, const std::string &output_name,
                    const nlohmann::json &extra);

}  // namespace cli
