#include "prodkernel/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "prodkernel/errors.hpp"

namespace prodkernel {

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != header_.size()) {
        throw DimensionError("table: row has " + std::to_string(row.size()) + " cells, expected " +
                             std::to_string(header_.size()));
    }
    rows_.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
    const auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) throw ParameterError("table: no column named '" + name + "'");
    return static_cast<std::size_t>(it - header_.begin());
}

double Table::number(std::size_t r, std::size_t c) const {
    const Cell& cell = at(r, c);
    if (const double* v = std::get_if<double>(&cell)) return *v;
    const std::string& s = std::get<std::string>(cell);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        throw ParseError("table: cell '" + s + "' is not a number");
    }
    return value;
}

std::string Table::text(std::size_t r, std::size_t c) const {
    const Cell& cell = at(r, c);
    if (const double* v = std::get_if<double>(&cell)) return format_number(*v);
    return std::get<std::string>(cell);
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

namespace {

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

}  // namespace

std::string to_csv(const Table& table) {
    std::ostringstream os;
    for (std::size_t c = 0; c < table.num_columns(); ++c) os << (c ? "," : "") << quote(table.header()[c]);
    os << '\n';
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
        for (std::size_t c = 0; c < table.num_columns(); ++c) os << (c ? "," : "") << quote(table.text(r, c));
        os << '\n';
    }
    return os.str();
}

Table parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        switch (ch) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                record.push_back(std::move(field));
                field.clear();
                field_started = true;
                break;
            case '\r':
                break;
            case '\n':
                if (field_started || !field.empty() || !record.empty()) {
                    record.push_back(std::move(field));
                    records.push_back(std::move(record));
                }
                field.clear();
                record.clear();
                field_started = false;
                break;
            default:
                field += ch;
                field_started = true;
        }
    }
    if (in_quotes) throw ParseError("csv: unterminated quoted field");
    if (field_started || !field.empty() || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    if (records.empty()) throw ParseError("csv: missing header row");

    Table table(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.num_columns()) {
            throw ParseError("csv: row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                             " fields, expected " + std::to_string(table.num_columns()));
        }
        std::vector<Cell> row(records[r].begin(), records[r].end());
        table.add_row(std::move(row));
    }
    return table;
}

void write_csv(const Table& table, const std::filesystem::path& path) {
    if (table.empty()) throw ParameterError("csv: refusing to write an empty table to " + path.string());
    std::ofstream out(path);
    if (!out) throw IoError("csv: cannot open " + path.string() + " for writing");
    out << to_csv(table);
    if (!out) throw IoError("csv: write to " + path.string() + " failed");
}

Table read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("csv: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_csv(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v, bool log) {
    char buf[32];
    if (log) {
        std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(v)));
    } else {
        std::snprintf(buf, sizeof buf, "%.3g", v);
    }
    return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string to_svg(const Table& table, const PlotSpec& spec) {
    if (table.empty()) throw ParameterError("svg: empty table");
    const std::size_t xc = table.column(spec.x_column);
    const std::size_t yc = table.column(spec.y_column);
    const bool grouped = !spec.series_column.empty();
    const std::size_t sc = grouped ? table.column(spec.series_column) : 0;

    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
        double x = 0.0, y = 0.0;
        try {
            x = table.number(r, xc);
            y = table.number(r, yc);
        } catch (const ParseError&) {
            continue;
        }
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        if ((spec.log_x && x <= 0.0) || (spec.log_y && y <= 0.0)) continue;
        const std::string name = grouped ? table.text(r, sc) : spec.y_column;
        if (!series.contains(name)) order.push_back(name);
        series[name].emplace_back(spec.log_x ? std::log10(x) : x, spec.log_y ? std::log10(y) : y);
    }

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& [name, pts] : series) {
        for (const auto& [x, y] : pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (series.empty()) xmin = ymin = 0.0, xmax = ymax = 1.0;
    if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
    if (spec.log_y) ymin = std::floor(ymin), ymax = std::ceil(ymax);

    constexpr double width = 640, height = 420, left = 70, right = 170, top = 40, bottom = 50;
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
       << xml_escape(spec.title) << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    const int yticks = spec.log_y ? static_cast<int>(ymax - ymin) : 5;
    const int ystride = std::max(1, yticks / 8);
    for (int t = 0; t <= yticks; t += ystride) {
        const double y = ymin + (ymax - ymin) * t / std::max(1, yticks);
        os << "<line x1=\"" << left << "\" y1=\"" << fixed(sy(y)) << "\" x2=\"" << left + pw << "\" y2=\""
           << fixed(sy(y)) << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << fixed(sy(y) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << tick_label(y, spec.log_y)
           << "</text>\n";
    }
    for (int t = 0; t <= 5; ++t) {
        const double x = xmin + (xmax - xmin) * t / 5.0;
        os << "<text x=\"" << fixed(sx(x)) << "\" y=\"" << top + ph + 16
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << tick_label(x, spec.log_x)
           << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(spec.x_column)
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 16 " << top + ph / 2
       << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
       << xml_escape(spec.log_y ? spec.y_column + " (log10)" : spec.y_column) << "</text>\n";

    for (std::size_t s = 0; s < order.size(); ++s) {
        const auto& pts = series[order[s]];
        const char* color = kPalette[s % std::size(kPalette)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < pts.size(); ++k) {
            os << (k ? " " : "") << fixed(sx(pts[k].first)) << ',' << fixed(sy(pts[k].second));
        }
        os << "\"/>\n";
        for (const auto& [x, y] : pts) {
            os << "<circle cx=\"" << fixed(sx(x)) << "\" cy=\"" << fixed(sy(y)) << "\" r=\"2.5\" fill=\"" << color
               << "\"/>\n";
        }
        const double ly = top + 14 + 16.0 * static_cast<double>(s);
        os << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + pw + 30 << "\" y2=\""
           << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw + 35 << "\" y=\"" << ly
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(order[s]) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_svg_plot(const Table& table, const std::filesystem::path& path, const PlotSpec& spec) {
    const std::string svg = to_svg(table, spec);
    std::ofstream out(path);
    if (!out) throw IoError("svg: cannot open " + path.string() + " for writing");
    out << svg;
    if (!out) throw IoError("svg: write to " + path.string() + " failed");
}

}  // namespace prodkernel
