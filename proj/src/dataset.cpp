#include <fstream>
#include <sstream>

#include "hzone/pipeline.hpp"

namespace hzone {

namespace {

void write_header(std::ostream& out, const WidthDataset& ds) {
    out << "# family=" << ds.family << "\n";
    out << "# gamma=" << ds.gamma_text << "\n";
    out << "# digits=" << ds.digits << "\n";
    out << "# method=" << ds.method << "\n";
    out << "# created=" << ds.created << "\n";
}

} // namespace

void save_dataset(const WidthDataset& ds, const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw IoError("save_dataset: cannot open " + p.string());
    write_header(out, ds);
    for (const auto& n : ds.nodes) {
        std::ostringstream row;
        row << format_decimal(n.x) << "," << format_decimal(n.log_s) << "," << format_decimal(n.width) << ","
            << n.error_exponent;
        out << row.str() << "\n";
    }
    if (!out) throw IoError("save_dataset: write failed for " + p.string());
}

WidthDataset load_dataset(const std::filesystem::path& p, int digits_hint) {
    std::ifstream in(p);
    if (!in) throw IoError("load_dataset: cannot open " + p.string());

    WidthDataset ds;
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(2, eq - 2);
            std::string value = line.substr(eq + 1);
            if (key == "family") ds.family = value;
            else if (key == "gamma") ds.gamma_text = value;
            else if (key == "digits") ds.digits = std::stoi(value);
            else if (key == "method") ds.method = value;
            else if (key == "created") ds.created = value;
            continue;
        }
        rows.push_back(line);
    }

    size_t longest = 0;
    for (const auto& row : rows) longest = std::max(longest, row.size());
    int digits = std::max({ds.digits, digits_hint, 60, static_cast<int>(longest) + 10});
    PrecisionContext ctx(digits);
    for (const auto& row : rows) {
        std::istringstream ss(row);
        std::string x, logs, width, expo;
        if (!std::getline(ss, x, ',') || !std::getline(ss, logs, ',') || !std::getline(ss, width, ',') ||
            !std::getline(ss, expo))
            throw ParseError("load_dataset: malformed row '" + row + "'");
        WidthDataset::Node n;
        n.x = parse_decimal(x, ctx);
        n.log_s = parse_decimal(logs, ctx);
        n.width = parse_decimal(width, ctx);
        n.error_exponent = std::stod(expo);
        ds.nodes.push_back(std::move(n));
    }
    for (size_t i = 1; i < ds.nodes.size(); ++i)
        if (!(ds.nodes[i].x > ds.nodes[i - 1].x))
            throw ParseError("load_dataset: nodes are not strictly increasing");
    return ds;
}

void save_coefficients(const ExpansionCoefficients& c, const WidthDataset& ds, const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw IoError("save_coefficients: cannot open " + p.string());
    out << "# family=" << ds.family << "\n";
    out << "# gamma=" << ds.gamma_text << "\n";
    out << "# basis=" << (c.seq.kind == AsymptoticSequence::Kind::dulac ? "dulac" : "polynomial") << "\n";
    out << "# fit_on=" << (c.fit_on_values ? "width" : "log-width") << "\n";
    out << "# condition_log10=" << c.condition_log10 << "\n";
    out << "# max_node_residual=" << format_decimal(c.max_node_residual, 3) << "\n";
    std::string sym = ds.family == "quadratic" ? "mu" : "a";
    for (size_t i = 0; i < c.alpha.size(); ++i)
        out << i << "," << c.seq.label(static_cast<int>(i), sym) << "," << format_decimal(c.alpha[i]) << "\n";
    if (!out) throw IoError("save_coefficients: write failed");
}

std::string render_coefficient_table(const ExpansionCoefficients& c, const WidthDataset& ds) {
    std::ostringstream out;
    std::string sym = ds.family == "quadratic" ? "mu" : "a";
    out << "index  scale  value\n";
    for (size_t i = 0; i < c.alpha.size(); ++i)
        out << i << "  " << c.seq.label(static_cast<int>(i), sym) << "  " << format_decimal(c.alpha[i], 20) << "\n";
    return out.str();
}

} // namespace hzone
