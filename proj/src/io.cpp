#include "dke/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dke {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    // round-trippable shortest form
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw config_error("cannot open " + tmp.string() + " for writing");
        out << content;
    }
    fs::rename(tmp, path);
}

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_csv_row(const std::string& line, const fs::path& path, int lineno) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) comma = line.size();
        const std::string tok = line.substr(pos, comma - pos);
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw config_error(path.string() + ":" + std::to_string(lineno) +
                               ": cannot parse number '" + tok + "'");
        out.push_back(v);
        if (comma == line.size()) break;
        pos = comma + 1;
    }
    return out;
}

std::string trim_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

json mms_to_json(const MetricMeasureSpace& mms) {
    json j;
    j["n"] = mms.n();
    j["label"] = mms.label;
    json dist = json::array();
    for (int i = 0; i < mms.n(); ++i) {
        json row = json::array();
        for (int c = 0; c < mms.n(); ++c) row.push_back(mms.dist(i, c));
        dist.push_back(std::move(row));
    }
    j["dist"] = std::move(dist);
    json measure = json::array();
    for (int i = 0; i < mms.n(); ++i) measure.push_back(mms.measure(i));
    j["measure"] = std::move(measure);
    return j;
}

}  // namespace

void write_mms_csv(const fs::path& path, const MetricMeasureSpace& mms) {
    std::ostringstream out;
    out << "# dke-mms v1 n=" << mms.n() << "\n";
    for (int i = 0; i < mms.n(); ++i) {
        for (int c = 0; c < mms.n(); ++c) {
            if (c) out << ',';
            out << format_double(mms.dist(i, c));
        }
        out << '\n';
    }
    for (int i = 0; i < mms.n(); ++i) {
        if (i) out << ',';
        out << format_double(mms.measure(i));
    }
    out << '\n';
    atomic_write(path, out.str());
}

MetricMeasureSpace read_mms_csv(const fs::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw config_error(path.string() + ": empty file");
    line = trim_cr(line);
    int n = -1;
    if (std::sscanf(line.c_str(), "# dke-mms v1 n=%d", &n) != 1 || n < 1)
        throw config_error(path.string() + ":1: expected header '# dke-mms v1 n=<n>'");
    Eigen::MatrixXd dist(n, n);
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw config_error(path.string() + ": truncated distance matrix");
        const auto row = parse_csv_row(trim_cr(line), path, i + 2);
        if (static_cast<int>(row.size()) != n)
            throw config_error(path.string() + ":" + std::to_string(i + 2) + ": expected " +
                               std::to_string(n) + " entries, got " + std::to_string(row.size()));
        for (int c = 0; c < n; ++c) dist(i, c) = row[c];
    }
    if (!std::getline(in, line)) throw config_error(path.string() + ": missing measure row");
    const auto mrow = parse_csv_row(trim_cr(line), path, n + 2);
    if (static_cast<int>(mrow.size()) != n)
        throw config_error(path.string() + ": measure row has wrong length");
    Eigen::VectorXd measure(n);
    for (int i = 0; i < n; ++i) measure(i) = mrow[i];
    return make_mms(dist, measure, path.stem().string());
}

void write_mms_json(const fs::path& path, const MetricMeasureSpace& mms) {
    atomic_write(path, mms_to_json(mms).dump(2) + "\n");
}

MetricMeasureSpace read_mms_json(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw config_error(path.string() + ": " + e.what());
    }
    if (!j.contains("n") || !j.contains("dist") || !j.contains("measure"))
        throw config_error(path.string() + ": need fields n, dist, measure");
    const int n = j["n"].get<int>();
    if (n < 1) throw config_error(path.string() + ": n must be positive");
    Eigen::MatrixXd dist(n, n);
    const auto& jd = j["dist"];
    if (static_cast<int>(jd.size()) != n) throw config_error(path.string() + ": dist has wrong row count");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(jd[i].size()) != n)
            throw config_error(path.string() + ": dist row " + std::to_string(i) + " has wrong length");
        for (int c = 0; c < n; ++c) dist(i, c) = jd[i][c].get<double>();
    }
    Eigen::VectorXd measure(n);
    const auto& jm = j["measure"];
    if (static_cast<int>(jm.size()) != n) throw config_error(path.string() + ": measure has wrong length");
    for (int i = 0; i < n; ++i) measure(i) = jm[i].get<double>();
    return make_mms(dist, measure, j.value("label", path.stem().string()));
}

MetricMeasureSpace load_mms(const fs::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".csv") return read_mms_csv(path);
    if (ext == ".json") return read_mms_json(path);
    throw config_error(path.string() + ": unsupported extension (want .csv or .json)");
}

void write_spectrum_json(const fs::path& path, const Spectrum& spectrum) {
    json j;
    json vals = json::array();
    for (int i = 0; i < spectrum.n(); ++i) vals.push_back(spectrum.eigenvalues(i));
    j["eigenvalues"] = std::move(vals);
    json vecs = json::array();
    for (int c = 0; c < spectrum.n(); ++c) {
        json col = json::array();
        for (int i = 0; i < spectrum.n(); ++i) col.push_back(spectrum.vectors(i, c));
        vecs.push_back(std::move(col));
    }
    j["vectors"] = std::move(vecs);
    json rules = json::array();
    for (const auto rule : spectrum.sign_rules) rules.push_back(sign_rule_name(rule));
    j["sign_rule"] = std::move(rules);
    j["tie_warnings"] = spectrum.tie_warnings;
    atomic_write(path, j.dump(2) + "\n");
}

void write_eigenvalues_csv(const fs::path& path, const Spectrum& spectrum) {
    std::ostringstream out;
    out << "index,eigenvalue\n";
    for (int i = 0; i < spectrum.n(); ++i)
        out << (i + 1) << ',' << format_double(spectrum.eigenvalues(i)) << '\n';
    atomic_write(path, out.str());
}

void write_embedding_csv(const fs::path& path, const Embedding& emb) {
    std::ostringstream out;
    for (int j = 0; j < emb.k; ++j) {
        if (j) out << ',';
        out << "re(alpha" << (j + 1) << "),im(alpha" << (j + 1) << ")";
    }
    out << '\n';
    for (int i = 0; i < emb.n(); ++i) {
        for (int j = 0; j < emb.k; ++j) {
            if (j) out << ',';
            out << format_double(emb.coords(i, j).real()) << ','
                << format_double(emb.coords(i, j).imag());
        }
        out << '\n';
    }
    atomic_write(path, out.str());
}

void write_embedding_json(const fs::path& path, const Embedding& emb) {
    json j;
    j["k"] = emb.k;
    json vals = json::array();
    for (int i = 0; i < emb.k; ++i) vals.push_back(emb.eigenvalues(i));
    j["eigenvalues"] = std::move(vals);
    json rows = json::array();
    for (int i = 0; i < emb.n(); ++i) {
        json row = json::array();
        for (int c = 0; c < emb.k; ++c) {
            row.push_back(emb.coords(i, c).real());
            row.push_back(emb.coords(i, c).imag());
        }
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    atomic_write(path, j.dump(2) + "\n");
}

void write_diagram_csv(const fs::path& path, const GradedDiagram& diagram) {
    std::ostringstream out;
    out << "dim,birth,death\n";
    for (const auto& b : diagram.bars) {
        out << b.dim << ',' << format_double(b.birth) << ',';
        if (b.is_infinite())
            out << "inf";
        else
            out << format_double(b.death);
        out << '\n';
    }
    atomic_write(path, out.str());
}

void write_step_csv(const fs::path& path, const StepFunction& sf) {
    std::ostringstream out;
    out << "breakpoint,value\n";
    for (std::size_t i = 0; i < sf.values.size(); ++i)
        out << format_double(sf.breakpoints[i]) << ',' << format_double(sf.values[i]) << '\n';
    if (!sf.breakpoints.empty())
        out << format_double(sf.breakpoints.back()) << ",0\n";
    atomic_write(path, out.str());
}

namespace {

json diagram_to_json(const GradedDiagram& d) {
    json bars = json::array();
    for (const auto& b : d.bars) {
        json bar = json::array();
        bar.push_back(b.dim);
        bar.push_back(b.birth);
        if (b.is_infinite())
            bar.push_back("inf");
        else
            bar.push_back(b.death);
        bars.push_back(std::move(bar));
    }
    return bars;
}

json step_to_json(const StepFunction& sf) {
    json j;
    j["breakpoints"] = sf.breakpoints;
    j["values"] = sf.values;
    return j;
}

}  // namespace

void write_transform_json(const fs::path& path, const TransformResult& result) {
    json j;
    j["kind"] = transform_kind_name(result.kind);
    j["k"] = result.k;
    j["complex"] = result.complex_summary;
    const bool euler = result.kind == TransformKind::IntrinsicEuler ||
                       result.kind == TransformKind::EmbeddedEuler;
    if (euler) j["horizon"] = result.horizon;
    json entries = json::array();
    for (std::size_t i = 0; i < result.directions.size(); ++i) {
        json e;
        json dir = json::array();
        for (int c = 0; c < result.directions[i].k(); ++c) dir.push_back(result.directions[i].u(c));
        for (int c = 0; c < result.directions[i].k(); ++c) dir.push_back(result.directions[i].v(c));
        e["direction"] = std::move(dir);
        if (euler)
            e["curve"] = step_to_json(result.curves[i]);
        else
            e["diagram"] = diagram_to_json(result.diagrams[i]);
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    atomic_write(path, j.dump(2) + "\n");
}

}  // namespace dke
