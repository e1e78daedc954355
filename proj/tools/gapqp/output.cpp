#include "output.hpp"

#include "gapqp/physcore/errors.hpp"
#include "gapqp/physcore/format.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gapqp::cli {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw DomainError("table '" + name + "': row has " + std::to_string(row.size()) +
                          " cells, expected " + std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

Summary::Summary(std::string name) {
    table.name = std::move(name);
    table.columns = {"quantity", "value", "unit"};
}

void Summary::add(const std::string& quantity, double value, const std::string& unit) {
    table.add({quantity, value, unit});
}

void Summary::add(const std::string& quantity, const std::string& value, const std::string& unit) {
    table.add({quantity, value, unit});
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') {
            quoted += '"';
        }
        quoted += ch;
    }
    return quoted + '"';
}

std::string render(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        return format_number(*d);
    }
    return csv_field(std::get<std::string>(cell));
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << csv_field(table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << render(row[i]);
        }
        out << '\n';
    }
}

nlohmann::json table_to_json(const Table& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& cell : row) {
            if (const auto* d = std::get_if<double>(&cell)) {
                // JSON has no inf/nan; keep them readable as strings.
                r.push_back(std::isfinite(*d) ? nlohmann::json(*d) : nlohmann::json(format_number(*d)));
            } else {
                r.push_back(std::get<std::string>(cell));
            }
        }
        rows.push_back(std::move(r));
    }
    return {{"columns", table.columns}, {"rows", rows}};
}

Output::Output(std::ostream& stdout_stream, std::optional<std::filesystem::path> dir, Format format)
    : out_(stdout_stream), dir_(std::move(dir)), format_(format) {
    if (dir_) {
        std::error_code ec;
        std::filesystem::create_directories(*dir_, ec);
        if (ec || !std::filesystem::is_directory(*dir_)) {
            throw ConfigError("cannot create output directory '" + dir_->string() + "'");
        }
    }
}

void Output::write_file(const std::string& filename, const std::string& text) const {
    const auto path = *dir_ / filename;
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        throw ConfigError("cannot write '" + path.string() + "'");
    }
}

void Output::emit(const Table& table) {
    if (format_ == Format::json) {
        emit_document(table.name, table_to_json(table));
        return;
    }
    std::ostringstream csv;
    write_csv(csv, table);
    if (dir_) {
        write_file(table.name + ".csv", csv.str());
        return;
    }
    out_ << (first_ ? "" : "\n") << "# " << table.name << '\n' << csv.str();
    first_ = false;
}

void Output::emit_document(const std::string& name, const nlohmann::json& doc) {
    if (dir_) {
        write_file(name + ".json", doc.dump(2) + "\n");
        return;
    }
    if (format_ == Format::json) {
        combined_[name] = doc;
        return;
    }
    out_ << (first_ ? "" : "\n") << "# " << name << '\n' << doc.dump() << '\n';
    first_ = false;
}

void Output::emit_text(const std::string& filename, const std::string& text) {
    if (dir_) {
        write_file(filename, text);
        return;
    }
    out_ << text;
}

void Output::finish() {
    if (!dir_ && format_ == Format::json) {
        out_ << combined_.dump(2) << '\n';
    }
    out_.flush();
}

}  // namespace gapqp::cli
