#include "perceprice/corpus.hpp"

#include "perceprice/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace perceprice::corpus {
namespace {

const std::vector<StudyRecord>& published_table()
{
    // Rows in printed order (ascending printed perception error).
    static const std::vector<StudyRecord> rows = {
        {"Non-organic potatoes", 1.54, -0.18, "Trost, 1999", -8.56, -9.56},
        {"Organic onions", -1.56, 0.32, "Trost, 1999", -4.88, -5.88},
        {"Frozen dessert products", -0.356, 0.08, "Kaiser & Forker, 1993", -4.45, -5.45},
        {"Oranges in South Africa", -1.55, 0.407, "Hayward-Butt & Ortmann, 1994", -3.81, -4.81},
        {"Organic vegetables in Taiwan", -0.152, 0.04, "Huang-Zheng and Lin, 2011", -3.80, -4.80},
        {"Real estate services", -1.20, 0.40, "Bates & Santerre, 2016", -3.00, -4.00},
        {"Poultry, USA", -1.313, 0.659, "Young, 1990", -1.99, -2.99},
        {"Pork, USA", -0.854, 0.507, "Young, 1990", -1.68, -2.68},
        {"Theatre tickets in Switzerland", 0.3, -0.2, "Zieba, 2016", -1.50, -2.50},
        {"Theatre tickets in Austria", 0.7, -0.5, "Zieba, 2016", -1.40, -2.40},
        {"Vegetables, USA", -0.421, 0.313, "Young, 1990", -1.35, -2.35},
        {"Eggs in South Africa", -0.55, 0.41, "Cleasby and Ortmann, 1991", -1.34, -2.34},
        {"Standard cheese in Norway", -1.009, 1.121, "Sooriyakumar, 2003", -0.90, -1.90},
        {"Tea in Iran", -0.42, 0.53, "Fallah Alipour, Kavooosi Kalashami and Ahmedzedah, 2019", -0.79, -1.79},
        {"Jam in Peshawar", -0.46, 0.64, "Khanum et al., 2007", -0.72, -1.72},
        {"Cigarettes in Bangladesh", 0.39, -0.62, "Ahmed et al., 2022", -0.63, -1.63},
        {"Beer", -0.3, 0.5, "Nelson, 2013", -0.60, -1.60},
        {"Public bus transport", -0.59, 1.05, "Holmgren, 2007", -0.56, -1.56},
        {"Spirits", -0.55, 1, "Nelson, 2013", -0.55, -1.55},
        {"Wine", -0.45, 1, "Nelson, 2013", -0.45, -1.45},
        {"Durable goods", -0.49, 1.35, "Wong & McDermott, 1990", -0.36, -1.36},
        {"Sugar, USA", -0.294, 0.898, "Young, 1990", 0.33, -0.67},
        {"Milk in Indonesia", 1.32, 1.84, "Forgenie, Khoiriyah and Elbaar, 2023", 0.72, -0.28},
        {"Beef in Indonesia", 1.71, 2.2, "Forgenie, Khoiriyah and Elbaar, 2023", 0.78, -0.22},
        {"Fish, USA", 2.124, 2.616, "Young, 1990", 0.81, -0.19},
        {"Poultry in Indonesia", 1.39, 1.44, "Forgenie, Khoiriyah and Elbaar, 2023", 0.97, -0.03},
        {"Fish in Indonesia", 1.11, 1.07, "Forgenie, Khoiriyah and Elbaar, 2023", 1.04, 0.04},
        {"Cereal, USA", -0.045, 0.029, "Young, 1990", 1.55, 0.55},
        {"Dairy, USA", 0.645, 0.21, "Young, 1990", 3.07, 2.07},
        {"Non-organic onions", 1.84, 0.25, "Trost, 1999", 7.36, 6.36},
    };
    return rows;
}

const std::vector<std::string>& csv_header()
{
    static const std::vector<std::string> header = {
        "commodity", "eta_p", "eta_i", "source", "published_ratio", "published_error"};
    return header;
}

// Minimal RFC 4180 reader: quoted fields may contain commas, doubled
// quotes and newlines.
std::vector<std::vector<std::string>> split_csv(std::string_view text)
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n')
                    ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            if (field_started || !field.empty())
                throw Error(ErrorCode::SchemaViolation,
                            "line " + std::to_string(line) + ": stray quote inside unquoted field");
            quoted = true;
            field_started = true;
            break;
        case ',':
            end_field();
            break;
        case '\r':
            if (i + 1 < text.size() && text[i + 1] == '\n')
                break;
            end_row();
            ++line;
            break;
        case '\n':
            end_row();
            ++line;
            break;
        default:
            field.push_back(c);
            field_started = true;
        }
    }
    if (quoted)
        throw Error(ErrorCode::SchemaViolation, "unterminated quoted field");
    if (field_started || !field.empty() || !row.empty())
        end_row();
    return rows;
}

double parse_number(const std::string& text, std::size_t line, const std::string& name)
{
    std::string_view s = text;
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
        throw Error(ErrorCode::SchemaViolation, "line " + std::to_string(line) + ": column '" +
                                                    name + "' is not a number: '" + text + "'");
    return value;
}

std::optional<double> parse_optional(const std::string& text, std::size_t line,
                                     const std::string& name)
{
    if (text.empty())
        return std::nullopt;
    return parse_number(text, line, name);
}

std::string format_shortest(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_field(std::string& out, std::string_view field)
{
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        out.append(field);
        return;
    }
    out.push_back('"');
    for (char c : field) {
        if (c == '"')
            out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
}

double recomputed_ratio(const StudyRecord& r)
{
    return identity::elasticity_ratio(r.pair());
}

const StudyRecord& require_published(const StudyRecord& r)
{
    if (!r.published_ratio || !r.published_error)
        throw Error(ErrorCode::MissingPublishedColumn,
                    "record '" + r.commodity + "' has no published ratio/error columns");
    return r;
}

}  // namespace

Corpus::Corpus(std::vector<StudyRecord> records, Origin origin)
    : records_(std::move(records)), origin_(origin)
{
    if (records_.empty())
        throw Error(ErrorCode::EmptyCorpus, "corpus has no records");
    std::set<std::string_view> seen;
    for (const auto& r : records_) {
        if (r.commodity.empty())
            throw Error(ErrorCode::SchemaViolation, "commodity label is empty");
        if (!std::isfinite(r.eta_p) || !std::isfinite(r.eta_i))
            throw Error(ErrorCode::SchemaViolation,
                        "record '" + r.commodity + "' has non-finite elasticities");
        if (!seen.insert(r.commodity).second)
            throw Error(ErrorCode::DuplicateCommodity, "duplicate commodity '" + r.commodity + "'");
    }
}

bool Corpus::has_published_columns() const noexcept
{
    return std::all_of(records_.begin(), records_.end(), [](const StudyRecord& r) {
        return r.published_ratio.has_value() && r.published_error.has_value();
    });
}

const StudyRecord* Corpus::find(std::string_view commodity) const noexcept
{
    auto it = std::find_if(records_.begin(), records_.end(),
                           [&](const StudyRecord& r) { return r.commodity == commodity; });
    return it == records_.end() ? nullptr : &*it;
}

const Corpus& embedded_corpus()
{
    static const Corpus corpus(published_table(), Origin::Embedded);
    return corpus;
}

Corpus parse_csv(std::string_view text, Origin origin)
{
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF")
        text.remove_prefix(3);
    auto rows = split_csv(text);
    // A trailing blank line parses as a single empty field.
    while (!rows.empty() && rows.back().size() == 1 && rows.back()[0].empty())
        rows.pop_back();
    if (rows.empty())
        throw Error(ErrorCode::SchemaViolation, "missing header line");
    if (rows.front() != csv_header())
        throw Error(ErrorCode::SchemaViolation,
                    "header must be exactly: commodity,eta_p,eta_i,source,published_ratio,published_error");

    std::vector<StudyRecord> records;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        const std::size_t line = i + 1;
        if (f.size() != csv_header().size())
            throw Error(ErrorCode::SchemaViolation,
                        "line " + std::to_string(line) + ": expected 6 fields, found " +
                            std::to_string(f.size()));
        if (f[0].empty())
            throw Error(ErrorCode::SchemaViolation,
                        "line " + std::to_string(line) + ": commodity is empty");
        StudyRecord r;
        r.commodity = f[0];
        r.eta_p = parse_number(f[1], line, "eta_p");
        r.eta_i = parse_number(f[2], line, "eta_i");
        r.source = f[3];
        r.published_ratio = parse_optional(f[4], line, "published_ratio");
        r.published_error = parse_optional(f[5], line, "published_error");
        records.push_back(std::move(r));
    }
    return Corpus(std::move(records), origin);
}

Corpus load_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::FileNotFound, "cannot open corpus file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), Origin::FileLoaded);
}

std::string to_csv(const Corpus& corpus)
{
    std::string out;
    for (std::size_t i = 0; i < csv_header().size(); ++i) {
        if (i)
            out.push_back(',');
        out += csv_header()[i];
    }
    out.push_back('\n');
    for (const auto& r : corpus.records()) {
        write_field(out, r.commodity);
        out += ',' + format_shortest(r.eta_p) + ',' + format_shortest(r.eta_i) + ',';
        write_field(out, r.source);
        out.push_back(',');
        if (r.published_ratio)
            out += format_shortest(*r.published_ratio);
        out.push_back(',');
        if (r.published_error)
            out += format_shortest(*r.published_error);
        out.push_back('\n');
    }
    return out;
}

std::vector<DerivedRow> derive_rows(const Corpus& corpus, DerivationMode mode, double epsilon)
{
    std::vector<DerivedRow> rows;
    rows.reserve(corpus.size());
    for (const auto& r : corpus.records()) {
        DerivedRow d;
        d.record = r;
        d.mode = mode;
        if (mode == DerivationMode::Recomputed) {
            d.ratio = recomputed_ratio(r);
            d.error = d.ratio - 1.0;
        } else {
            require_published(r);
            d.ratio = *r.published_ratio;
            d.error = *r.published_error;
        }
        d.classification = identity::classify(d.error, epsilon);
        rows.push_back(std::move(d));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const DerivedRow& a, const DerivedRow& b) {
        if (a.error != b.error)
            return a.error < b.error;
        return a.record.commodity < b.record.commodity;
    });
    return rows;
}

std::vector<DiscrepancyEntry> discrepancy_report(const Corpus& corpus, double tolerance)
{
    if (std::isnan(tolerance) || tolerance < 0.0)
        throw Error(ErrorCode::NegativeTolerance, "discrepancy tolerance must be >= 0");
    std::vector<DiscrepancyEntry> out;
    for (const auto& r : corpus.records()) {
        require_published(r);
        const double recomputed = recomputed_ratio(r);
        const double diff = std::abs(*r.published_ratio - recomputed);
        if (diff > tolerance)
            out.push_back({r.commodity, *r.published_ratio, recomputed, diff});
    }
    std::stable_sort(out.begin(), out.end(), [](const DiscrepancyEntry& a, const DiscrepancyEntry& b) {
        return a.absolute_difference > b.absolute_difference;
    });
    return out;
}

double reconciled_eta_i(const StudyRecord& record)
{
    if (!record.published_ratio || record.eta_i == 0.0 || record.eta_p == 0.0)
        return record.eta_i;
    const double printed = *record.published_ratio;
    const double recomputed = record.eta_p / record.eta_i;
    const bool opposite_sign = (printed < 0.0) != (recomputed < 0.0) && printed != 0.0;
    const bool same_magnitude =
        std::abs(std::abs(printed) - std::abs(recomputed)) <= kDefaultDiscrepancyTolerance;
    return opposite_sign && same_magnitude ? -record.eta_i : record.eta_i;
}

std::vector<double> column(const Corpus& corpus, Column which)
{
    std::vector<double> out;
    out.reserve(corpus.size());
    for (const auto& r : corpus.records()) {
        switch (which) {
        case Column::EtaP: out.push_back(r.eta_p); break;
        case Column::EtaI: out.push_back(r.eta_i); break;
        case Column::EtaIReconciled: out.push_back(reconciled_eta_i(r)); break;
        case Column::RatioRecomputed: out.push_back(recomputed_ratio(r)); break;
        case Column::ErrorRecomputed: out.push_back(recomputed_ratio(r) - 1.0); break;
        case Column::RatioAsPublished: out.push_back(*require_published(r).published_ratio); break;
        case Column::ErrorAsPublished: out.push_back(*require_published(r).published_error); break;
        }
    }
    return out;
}

std::string_view to_string(DerivationMode mode) noexcept
{
    return mode == DerivationMode::Recomputed ? "recomputed" : "as-published";
}

std::string_view to_string(Origin origin) noexcept
{
    return origin == Origin::Embedded ? "embedded" : "file";
}

}  // namespace perceprice::corpus
