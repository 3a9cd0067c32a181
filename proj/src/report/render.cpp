#include "perceprice/report/render.hpp"

#include "perceprice/error.hpp"
#include "perceprice/report/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace perceprice::report {

using nlohmann::json;

Format parse_format(std::string_view name)
{
    if (name == "text")
        return Format::PlainText;
    if (name == "csv")
        return Format::DelimitedValues;
    if (name == "json")
        return Format::StructuredData;
    if (name == "svg")
        return Format::VectorGraphic;
    throw Error(ErrorCode::UnsupportedFormat, "unknown format '" + std::string(name) + "'");
}

std::string_view to_string(Format format) noexcept
{
    switch (format) {
    case Format::PlainText: return "text";
    case Format::DelimitedValues: return "csv";
    case Format::StructuredData: return "json";
    case Format::VectorGraphic: return "svg";
    }
    return "text";
}

namespace {

std::size_t display_width(std::string_view s)
{
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char ch) { return (static_cast<unsigned char>(ch) & 0xC0) != 0x80; }));
}

std::string pad(const std::string& s, std::size_t width, bool right)
{
    const std::size_t w = display_width(s);
    if (w >= width)
        return s;
    const std::string fill(width - w, ' ');
    return right ? fill + s : s + fill;
}

std::string csv_field(std::string_view s)
{
    const bool quote = s.find_first_of(",\"\r\n") != std::string_view::npos ||
                       (!s.empty() && (s.front() == ' ' || s.back() == ' '));
    if (!quote)
        return std::string(s);
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string csv_line(const std::vector<std::string>& fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out += ',';
        out += csv_field(fields[i]);
    }
    return out + "\n";
}

std::string xml_escape(std::string_view s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += ch;
        }
    }
    return out;
}

json cell_json(const Cell& c)
{
    switch (c.shadows.size()) {
    case 0: return c.text;
    case 1: return c.shadows[0].value;
    default: return json::array({c.shadows[0].value, c.shadows[1].value});
    }
}

std::string table_text(const ReportTable& t)
{
    const std::size_t ncol = t.column_headers.size();
    std::vector<std::size_t> width(ncol, 0);
    for (std::size_t k = 0; k < ncol; ++k)
        width[k] = display_width(t.column_headers[k]);
    for (const auto& row : t.rows)
        for (std::size_t k = 0; k < ncol && k < row.size(); ++k)
            width[k] = std::max(width[k], display_width(row[k].text));

    std::ostringstream out;
    out << t.title << "\n\n";
    auto emit = [&](auto cell_text, auto is_number) {
        std::string line;
        for (std::size_t k = 0; k < ncol; ++k) {
            if (k)
                line += "  ";
            line += pad(cell_text(k), width[k], is_number(k));
        }
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        out << line << "\n";
    };
    emit([&](std::size_t k) { return t.column_headers[k]; },
         [&](std::size_t k) { return k > 0; });
    std::size_t total = 0;
    for (auto w : width)
        total += w;
    out << std::string(total + 2 * (ncol ? ncol - 1 : 0), '-') << "\n";
    for (const auto& row : t.rows)
        emit([&](std::size_t k) { return k < row.size() ? row[k].text : std::string(); },
             [&](std::size_t k) { return k < row.size() && !row[k].shadows.empty(); });
    if (!t.summary.empty()) {
        out << "\n";
        for (std::size_t i = 0; i < t.summary.size(); ++i)
            out << (i ? "  " : "") << t.summary[i].first << " = " << t.summary[i].second.text;
        out << "\n";
    }
    if (!t.footnotes.empty()) {
        out << "\n";
        for (const auto& f : t.footnotes)
            out << f << "\n";
    }
    return out.str();
}

std::string table_csv(const ReportTable& t)
{
    std::string out = csv_line(t.column_headers);
    for (const auto& row : t.rows) {
        std::vector<std::string> fields;
        for (const auto& c : row)
            fields.push_back(c.text);
        out += csv_line(fields);
    }
    return out;
}

const Series* find_series(const PlotData& p, SeriesKind kind)
{
    for (const auto& s : p.series)
        if (s.kind == kind)
            return &s;
    return nullptr;
}

std::string plot_text(const PlotData& p)
{
    std::ostringstream out;
    out << p.title << "\n\n";
    if (const auto* h = find_series(p, SeriesKind::Histogram); h && h->bins) {
        const auto& b = *h->bins;
        for (std::size_t i = 0; i < b.counts.size(); ++i)
            out << pad("[" + format_trimmed(b.bin_edges[i], 6) + ", " + format_trimmed(b.bin_edges[i + 1], 6) + ")",
                       14, false)
                << pad(std::to_string(b.counts[i]), 3, true) << "  " << std::string(b.counts[i], '#') << "\n";
    }
    if (const auto* s = find_series(p, SeriesKind::Scatter)) {
        std::size_t w = 0;
        for (const auto& l : s->labels)
            w = std::max(w, display_width(l));
        out << "x: " << p.x_label << "; y: " << p.y_label << "\n\n";
        for (std::size_t i = 0; i < s->points.size(); ++i)
            out << pad(i < s->labels.size() ? s->labels[i] : std::string(), w, false) << "  "
                << pad(format_fixed(s->points[i].x, 3), 7, true) << "  "
                << pad(format_fixed(s->points[i].y, 3), 7, true) << "\n";
    }
    if (!p.curve_coefficients.empty()) {
        out << "\nFitted curve: y =";
        for (std::size_t k = 0; k < p.curve_coefficients.size(); ++k) {
            const double c = p.curve_coefficients[k];
            out << (k == 0 ? " " : (c < 0 ? " - " : " + ")) << format_fixed(k == 0 ? c : std::abs(c), 4);
            if (k == 1)
                out << " x";
            else if (k > 1)
                out << " x^" << k;
        }
        out << "\n";
    }
    if (!p.footnotes.empty()) {
        out << "\n";
        for (const auto& f : p.footnotes)
            out << f << "\n";
    }
    return out.str();
}

std::string plot_csv(const PlotData& p)
{
    std::string out;
    if (const auto* h = find_series(p, SeriesKind::Histogram); h && h->bins) {
        out += csv_line({"bin_start", "bin_end", "count"});
        const auto& b = *h->bins;
        for (std::size_t i = 0; i < b.counts.size(); ++i)
            out += csv_line({format_shortest(b.bin_edges[i]), format_shortest(b.bin_edges[i + 1]),
                             std::to_string(b.counts[i])});
    }
    if (const auto* s = find_series(p, SeriesKind::Scatter)) {
        out += csv_line({"label", "x", "y"});
        for (std::size_t i = 0; i < s->points.size(); ++i)
            out += csv_line({i < s->labels.size() ? s->labels[i] : std::string(), format_shortest(s->points[i].x),
                             format_shortest(s->points[i].y)});
    }
    return out;
}

// SVG layout, in user units.
constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

struct Axis {
    double lo = 0, hi = 1;
    std::vector<double> ticks;
};

Axis nice_axis(double lo, double hi)
{
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (raw <= step)
            break;
    }
    Axis a;
    a.lo = std::floor(lo / step) * step;
    a.hi = std::ceil(hi / step) * step;
    for (double v = a.lo; v <= a.hi + step * 1e-9; v += step)
        a.ticks.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    return a;
}

std::string num(double v)
{
    return format_trimmed(v, 2);
}

std::string plot_svg(const PlotData& p)
{
    double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
    auto include = [&](double x, double y) {
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    };
    for (const auto& s : p.series) {
        for (const auto& pt : s.points)
            include(pt.x, pt.y);
        if (s.bins) {
            const auto& b = *s.bins;
            include(b.bin_edges.front(), 0.0);
            include(b.bin_edges.back(), 0.0);
            for (auto c : b.counts)
                include(b.bin_edges.front(), static_cast<double>(c));
        }
    }
    if (!std::isfinite(xlo)) {
        xlo = ylo = 0.0;
        xhi = yhi = 1.0;
    }
    const Axis ax = nice_axis(xlo, xhi);
    const Axis ay = nice_axis(ylo, yhi);
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto sy = [&](double y) { return kTop + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(kWidth) << "\" height=\""
      << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << " " << num(kHeight) << "\">\n"
      << "<title>" << xml_escape(p.title) << "</title>\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight) << "\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << xml_escape(p.title) << "</text>\n";

    o << "<g stroke=\"#ddd\" stroke-width=\"1\">\n";
    for (double t : ax.ticks)
        o << "<line x1=\"" << num(sx(t)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(sx(t)) << "\" y2=\""
          << num(kTop + ph) << "\"/>\n";
    for (double t : ay.ticks)
        o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(sy(t)) << "\" x2=\"" << num(kLeft + pw) << "\" y2=\""
          << num(sy(t)) << "\"/>\n";
    o << "</g>\n";

    o << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(kLeft + pw) << "\" y2=\""
      << num(kTop + ph) << "\"/>\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
      << num(kTop + ph) << "\"/>\n"
      << "</g>\n";

    o << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (double t : ax.ticks)
        o << "<text x=\"" << num(sx(t)) << "\" y=\"" << num(kTop + ph + 16) << "\" text-anchor=\"middle\">"
          << format_trimmed(t, 6) << "</text>\n";
    for (double t : ay.ticks)
        o << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy(t) + 4) << "\" text-anchor=\"end\">"
          << format_trimmed(t, 6) << "</text>\n";
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 18)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(p.x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
      << num(kTop + ph / 2) << ")\">" << xml_escape(p.y_label) << "</text>\n"
      << "</g>\n";

    for (const auto& s : p.series) {
        switch (s.kind) {
        case SeriesKind::Histogram: {
            if (!s.bins)
                break;
            const auto& b = *s.bins;
            o << "<g fill=\"#4a7ab5\" stroke=\"white\" stroke-width=\"1\">\n";
            for (std::size_t i = 0; i < b.counts.size(); ++i) {
                const double x0 = sx(b.bin_edges[i]), x1 = sx(b.bin_edges[i + 1]);
                const double y0 = sy(static_cast<double>(b.counts[i]));
                o << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0)
                  << "\" height=\"" << num(sy(0.0) - y0) << "\"><title>[" << format_trimmed(b.bin_edges[i], 6) << ", "
                  << format_trimmed(b.bin_edges[i + 1], 6) << "): " << b.counts[i] << "</title></rect>\n";
            }
            o << "</g>\n";
            break;
        }
        case SeriesKind::Scatter:
            o << "<g fill=\"#c0392b\">\n";
            for (std::size_t i = 0; i < s.points.size(); ++i) {
                const auto& pt = s.points[i];
                o << "<circle cx=\"" << num(sx(pt.x)) << "\" cy=\"" << num(sy(pt.y)) << "\" r=\"3.5\"><title>";
                if (i < s.labels.size())
                    o << xml_escape(s.labels[i]) << " ";
                o << "(" << format_trimmed(pt.x, 6) << ", " << format_trimmed(pt.y, 6) << ")</title></circle>\n";
            }
            o << "</g>\n";
            break;
        case SeriesKind::Curve: {
            o << "<polyline fill=\"none\" stroke=\"#2c3e50\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.points.size(); ++i)
                o << (i ? " " : "") << num(sx(s.points[i].x)) << "," << num(sy(s.points[i].y));
            o << "\"><title>" << xml_escape(s.name) << "</title></polyline>\n";
            break;
        }
        }
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace

json to_json(const ReportTable& t)
{
    json rows = json::array();
    json display = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        json d = json::array();
        for (const auto& c : row) {
            r.push_back(cell_json(c));
            d.push_back(c.text);
        }
        rows.push_back(std::move(r));
        display.push_back(std::move(d));
    }
    json summary = json::object();
    for (const auto& [name, cell] : t.summary)
        summary[name] = cell_json(cell);
    json divergences = json::array();
    for (const auto& d : t.divergences)
        divergences.push_back(
            {{"row", d.row}, {"column", d.column}, {"computed", d.computed}, {"printed", d.printed}, {"note", d.note}});
    return {{"id", t.id},         {"title", t.title},     {"columns", t.column_headers},
            {"rows", rows},       {"display", display},   {"summary", summary},
            {"footnotes", t.footnotes}, {"divergences", divergences}};
}

json to_json(const PlotData& p)
{
    json series = json::array();
    for (const auto& s : p.series) {
        json js = {{"name", s.name}};
        switch (s.kind) {
        case SeriesKind::Scatter: js["kind"] = "scatter"; break;
        case SeriesKind::Histogram: js["kind"] = "histogram"; break;
        case SeriesKind::Curve: js["kind"] = "curve"; break;
        }
        json pts = json::array();
        for (const auto& pt : s.points)
            pts.push_back({{"x", pt.x}, {"y", pt.y}});
        js["points"] = std::move(pts);
        if (!s.labels.empty())
            js["labels"] = s.labels;
        if (s.bins)
            js["bins"] = {{"edges", s.bins->bin_edges}, {"counts", s.bins->counts}};
        series.push_back(std::move(js));
    }
    return {{"id", p.id},
            {"title", p.title},
            {"kind", p.kind == PlotKind::Scatter ? "scatter" : "histogram"},
            {"x_label", p.x_label},
            {"y_label", p.y_label},
            {"series", series},
            {"curve_coefficients", p.curve_coefficients},
            {"footnotes", p.footnotes}};
}

std::string render(const ReportTable& table, Format format)
{
    switch (format) {
    case Format::PlainText: return table_text(table);
    case Format::DelimitedValues: return table_csv(table);
    case Format::StructuredData: return to_json(table).dump(2) + "\n";
    case Format::VectorGraphic: break;
    }
    throw Error(ErrorCode::UnsupportedFormat, "svg output is only available for figures");
}

std::string render(const PlotData& plot, Format format)
{
    switch (format) {
    case Format::PlainText: return plot_text(plot);
    case Format::DelimitedValues: return plot_csv(plot);
    case Format::StructuredData: return to_json(plot).dump(2) + "\n";
    case Format::VectorGraphic: return plot_svg(plot);
    }
    return {};
}

std::string render(const Artifact& artifact, Format format)
{
    return std::visit([&](const auto& content) { return render(content, format); }, artifact.content);
}

std::string render_bundle(const std::vector<Artifact>& artifacts, Format format)
{
    switch (format) {
    case Format::StructuredData: {
        json tables = json::array();
        json figures = json::array();
        for (const auto& a : artifacts) {
            if (const auto* t = std::get_if<ReportTable>(&a.content))
                tables.push_back(to_json(*t));
            else
                figures.push_back(to_json(std::get<PlotData>(a.content)));
        }
        return json{{"tables", tables}, {"figures", figures}}.dump(2) + "\n";
    }
    case Format::PlainText: {
        std::string out;
        for (std::size_t i = 0; i < artifacts.size(); ++i) {
            if (i)
                out += "\n";
            out += "== " + artifacts[i].id + " ==\n" + render(artifacts[i], format);
        }
        return out;
    }
    case Format::DelimitedValues: {
        std::string out;
        for (std::size_t i = 0; i < artifacts.size(); ++i) {
            if (i)
                out += "\n";
            out += "# " + artifacts[i].id + "\n" + render(artifacts[i], format);
        }
        return out;
    }
    case Format::VectorGraphic: break;
    }
    throw Error(ErrorCode::UnsupportedFormat, "svg output covers a single figure, not a bundle");
}

}  // namespace perceprice::report
