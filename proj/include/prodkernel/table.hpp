#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace prodkernel {

using Cell = std::variant<double, std::string>;

/// A small column-named table used for every experiment output.
class Table {
public:
    Table() = default;
    explicit Table(std::vector<std::string> header);

    const std::vector<std::string>& header() const noexcept { return header_; }
    std::size_t num_columns() const noexcept { return header_.size(); }
    std::size_t num_rows() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }

    void add_row(std::vector<Cell> row);
    const std::vector<Cell>& row(std::size_t r) const { return rows_.at(r); }
    const Cell& at(std::size_t r, std::size_t c) const { return rows_.at(r).at(c); }

    /// Column position by name; throws ParameterError if absent.
    std::size_t column(const std::string& name) const;
    /// Numeric value of a cell; string cells are parsed.
    double number(std::size_t r, std::size_t c) const;
    std::string text(std::size_t r, std::size_t c) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// CSV with a header row; fields containing `,`, `"` or newlines are quoted.
std::string to_csv(const Table& table);
Table parse_csv(const std::string& text);

void write_csv(const Table& table, const std::filesystem::path& path);
Table read_csv(const std::filesystem::path& path);

struct PlotSpec {
    std::string x_column;
    std::string y_column;
    /// Rows sharing a value in this column form one line; empty means one series.
    std::string series_column;
    std::string title;
    bool log_x = false;
    bool log_y = true;
};

std::string to_svg(const Table& table, const PlotSpec& spec);
void write_svg_plot(const Table& table, const std::filesystem::path& path, const PlotSpec& spec);

}  // namespace prodkernel
