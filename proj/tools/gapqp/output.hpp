#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace gapqp::cli {

using Cell = std::variant<double, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// quantity,value,unit table.
struct Summary {
    Table table;

    explicit Summary(std::string name);
    void add(const std::string& quantity, double value, const std::string& unit = "");
    void add(const std::string& quantity, const std::string& value, const std::string& unit = "");
};

enum class Format { csv, json };

/// Cells are rendered with 12 significant digits; non-finite values as nan/inf.
void write_csv(std::ostream& out, const Table& table);
nlohmann::json table_to_json(const Table& table);

/// Routes tables to stdout or to files under --out.
class Output {
public:
    Output(std::ostream& stdout_stream, std::optional<std::filesystem::path> dir, Format format);

    void emit(const Table& table);
    /// Whole JSON document (JSON format only), e.g. a scan with its axes.
    void emit_document(const std::string& name, const nlohmann::json& doc);
    /// Raw text file under --out, or stdout when no directory is set.
    void emit_text(const std::string& filename, const std::string& text);
    /// Flushes the combined JSON document when writing JSON to stdout.
    void finish();

    [[nodiscard]] Format format() const { return format_; }
    [[nodiscard]] const std::optional<std::filesystem::path>& dir() const { return dir_; }

private:
    void write_file(const std::string& filename, const std::string& text) const;

    std::ostream& out_;
    std::optional<std::filesystem::path> dir_;
    Format format_;
    nlohmann::json combined_ = nlohmann::json::object();
    bool first_ = true;
};

}  // namespace gapqp::cli
