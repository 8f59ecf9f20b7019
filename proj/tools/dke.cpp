// Command-line front end: sampling, spectra, embeddings, bound tables,
// topological transforms, and pairwise comparison reports, all reproducible
// from explicit seeds. Exit codes: 0 ok, 2 bad configuration or input,
// 3 theorem-hypothesis violation, 4 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "dke/embedding.hpp"
#include "dke/io.hpp"
#include "dke/mmspace.hpp"
#include "dke/persistence.hpp"
#include "dke/spectral.hpp"
#include "dke/transforms.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dke;

namespace {

struct SpaceSpec {
    std::string file;
    std::string kind;  // sphere2 | sphere3 | torus | lens
    int n = 200;
    std::uint64_t seed = 0;
    std::string metric = "geodesic";
    double R = 2.5, r_minor = 1.0;
    int p = 7, q = 1;
    std::string label;
};

void add_space_options(CLI::App* cmd, SpaceSpec& spec) {
    cmd->add_option("--in", spec.file, "load a space from a .csv/.json file");
    cmd->add_option("--kind", spec.kind, "sampler: sphere2, sphere3, torus, lens");
    cmd->add_option("--n", spec.n, "sample size");
    cmd->add_option("--seed", spec.seed, "sampler seed");
    cmd->add_option("--metric", spec.metric, "sphere metric: geodesic or chordal");
    cmd->add_option("--R", spec.R, "torus major radius");
    cmd->add_option("--r-minor", spec.r_minor, "torus minor radius");
    cmd->add_option("--p", spec.p, "lens order p");
    cmd->add_option("--q", spec.q, "lens twist q");
    cmd->add_option("--label", spec.label, "override the space label");
}

MetricMeasureSpace build_space(const SpaceSpec& spec) {
    MetricMeasureSpace mms;
    if (!spec.file.empty()) {
        mms = load_mms(spec.file);
    } else if (spec.kind == "sphere2" || spec.kind == "sphere3") {
        MetricMode mode;
        if (spec.metric == "geodesic")
            mode = MetricMode::Geodesic;
        else if (spec.metric == "chordal")
            mode = MetricMode::Chordal;
        else
            throw config_error("unknown metric '" + spec.metric + "'");
        mms = sample_sphere(spec.n, spec.kind == "sphere2" ? 2 : 3, mode, spec.seed);
    } else if (spec.kind == "torus") {
        mms = sample_torus(spec.n, spec.R, spec.r_minor, spec.seed);
    } else if (spec.kind == "lens") {
        mms = sample_lens(spec.n, spec.p, spec.q, spec.seed);
    } else if (spec.kind.empty()) {
        throw config_error("either --in or --kind is required");
    } else {
        throw config_error("unknown space kind '" + spec.kind + "'");
    }
    if (!spec.label.empty()) mms.label = spec.label;
    return mms;
}

json spec_to_json(const SpaceSpec& s) {
    json j;
    if (!s.file.empty()) {
        j["file"] = s.file;
        return j;
    }
    j["kind"] = s.kind;
    j["n"] = s.n;
    j["seed"] = s.seed;
    if (s.kind == "sphere2" || s.kind == "sphere3") j["metric"] = s.metric;
    if (s.kind == "torus") {
        j["R"] = s.R;
        j["r"] = s.r_minor;
    }
    if (s.kind == "lens") {
        j["p"] = s.p;
        j["q"] = s.q;
    }
    return j;
}

SpaceSpec spec_from_json(const json& j) {
    SpaceSpec s;
    if (j.contains("file")) {
        s.file = j["file"].get<std::string>();
        return s;
    }
    s.kind = j.value("kind", "");
    s.n = j.value("n", 200);
    s.seed = j.value("seed", 0ull);
    s.metric = j.value("metric", "geodesic");
    s.R = j.value("R", 2.5);
    s.r_minor = j.value("r", 1.0);
    s.p = j.value("p", 7);
    s.q = j.value("q", 1);
    s.label = j.value("label", "");
    return s;
}

void write_manifest(const fs::path& out, const std::string& command, json params) {
    json j;
    j["tool"] = "dke";
    j["version"] = "0.1.0";
    j["command"] = command;
    j["params"] = std::move(params);
    atomic_write(out / "manifest.json", j.dump(2) + "\n");
}

/// JSON has no infinity literal; use the same "inf" token as the CSV exports.
json json_number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
}

json read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= csv.size() && !csv.empty()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(std::stoi(csv.substr(pos, comma - pos)));
        if (comma == csv.size()) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size() && !csv.empty()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(std::stod(csv.substr(pos, comma - pos)));
        if (comma == csv.size()) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<double> default_radii(const MetricMeasureSpace& mms) {
    std::vector<double> pos;
    for (int i = 0; i < mms.n(); ++i)
        for (int j = i + 1; j < mms.n(); ++j)
            if (mms.dist(i, j) > 0) pos.push_back(mms.dist(i, j));
    if (pos.empty()) throw config_error("degenerate space: no positive distances");
    std::sort(pos.begin(), pos.end());
    std::vector<double> radii;
    for (int t = 0; t < 8; ++t) {
        const double quantile = 0.02 + 0.23 * t / 7.0;
        double v = pos[static_cast<std::size_t>(quantile * (pos.size() - 1))];
        if (radii.empty() || v > radii.back() * (1 + 1e-12)) radii.push_back(v);
    }
    return radii;
}

// ---------------------------------------------------------------- commands

int cmd_sample(const SpaceSpec& spec, const fs::path& out) {
    const auto mms = build_space(spec);
    write_mms_csv(out / (mms.label + ".csv"), mms);
    write_mms_json(out / (mms.label + ".json"), mms);
    write_manifest(out, "sample", spec_to_json(spec));
    std::cout << "wrote " << (out / (mms.label + ".csv")).string() << " (n=" << mms.n()
              << ", diam=" << format_double(mms.diam()) << ")\n";
    return 0;
}

int cmd_spectrum(const SpaceSpec& spec, const fs::path& out, bool uniformize) {
    auto mms = build_space(spec);
    if (uniformize) mms.measure.setConstant(1.0 / mms.n());
    const auto spectrum = eigendecompose(build_operator(mms));
    write_spectrum_json(out / "spectrum.json", spectrum);
    write_eigenvalues_csv(out / "eigenvalues.csv", spectrum);
    svg::Series series{mms.label, {}};
    const int shown = std::min(spectrum.n(), 32);
    for (int i = 0; i < shown; ++i)
        series.points.emplace_back(i + 1, spectrum.eigenvalues(i));
    svg::write_line_chart(out / "spectrum.svg", "eigenvalues: " + mms.label, {series});
    json params = spec_to_json(spec);
    params["uniformize"] = uniformize;
    write_manifest(out, "spectrum", params);
    std::cout << "wrote " << (out / "spectrum.json").string() << "\n";
    return 0;
}

int cmd_embed(const SpaceSpec& spec, const fs::path& out, int k, const std::string& hist_list) {
    const auto mms = build_space(spec);
    const auto spectrum = eigendecompose(build_operator(mms));
    const auto emb = embed(spectrum, k);
    write_embedding_csv(out / "embedding.csv", emb);
    write_embedding_json(out / "embedding.json", emb);

    // magnitude histogram of the embedding vectors
    std::vector<double> norms;
    for (int i = 0; i < emb.n(); ++i) norms.push_back(emb.coords.row(i).norm());
    {
        std::ostringstream csv;
        csv << "point,norm\n";
        for (int i = 0; i < emb.n(); ++i) csv << i << ',' << format_double(norms[i]) << '\n';
        atomic_write(out / "embedding_norms.csv", csv.str());
        svg::write_histogram(out / "embedding_norms.svg",
                             "|Phi_k(x)| histogram, k=" + std::to_string(k), norms, 24);
    }
    // eigenvector magnitude histograms
    for (int idx : parse_int_list(hist_list)) {
        if (idx < 1 || idx > spectrum.n()) continue;
        std::vector<double> mags;
        for (int i = 0; i < spectrum.n(); ++i)
            mags.push_back(std::abs(spectrum.vectors(i, idx - 1)));
        std::ostringstream csv;
        csv << "point,abs_value\n";
        for (int i = 0; i < spectrum.n(); ++i) csv << i << ',' << format_double(mags[i]) << '\n';
        const std::string stem = "eigenfunction_" + std::to_string(idx);
        atomic_write(out / (stem + ".csv"), csv.str());
        svg::write_histogram(out / (stem + ".svg"), "|phi_" + std::to_string(idx) + "| histogram",
                             mags, 24);
    }
    json params = spec_to_json(spec);
    params["k"] = k;
    write_manifest(out, "embed", params);
    std::cout << "wrote " << (out / "embedding.csv").string() << "\n";
    return 0;
}

int cmd_bounds(const SpaceSpec& spec, const fs::path& out, const std::string& k_list_csv,
               const std::string& radii_csv) {
    const auto mms = build_space(spec);
    const auto spectrum = eigendecompose(build_operator(mms));
    std::vector<double> radii;
    if (!radii_csv.empty()) radii = parse_double_list(radii_csv);
    if (radii.empty()) radii = default_radii(mms);
    const auto ab = estimate_ab(mms, radii);

    std::vector<int> k_list = parse_int_list(k_list_csv);
    std::ostringstream csv;
    csv << "k,A,B,A_Bound,B_Bound\n";
    json jk = json::array();
    for (int k : k_list) {
        if (k < 1 || k > spectrum.n())
            throw config_error("bounds: k=" + std::to_string(k) + " out of range");
        const auto emb = embed(spectrum, k);
        const auto summary = error_summary(emb);
        const auto bounds = analytic_bounds(spectrum, ab, k);
        csv << k << ',' << format_double(summary.sup_error) << ','
            << format_double(summary.max_embed_norm) << ','
            << format_double(bounds.sup_error_bound) << ','
            << format_double(bounds.embed_norm_bound) << '\n';
        json row;
        row["k"] = k;
        row["A"] = summary.sup_error;
        row["B"] = summary.max_embed_norm;
        row["A_Bound"] = bounds.sup_error_bound;
        row["B_Bound"] = bounds.embed_norm_bound;
        jk.push_back(std::move(row));
    }
    atomic_write(out / "bounds.csv", csv.str());

    // both per-point embedding-norm bound variants, at the largest requested k
    const int kmax = *std::max_element(k_list.begin(), k_list.end());
    const auto emb = embed(spectrum, kmax);
    std::ostringstream pcsv;
    pcsv << "point,norm,norm_bound_as_printed,norm_bound_via_row_norm\n";
    for (int i = 0; i < mms.n(); ++i) {
        const auto nb = embed_norm_bound(spectrum, i);
        pcsv << i << ',' << format_double(emb.coords.row(i).norm()) << ','
             << format_double(nb.as_printed) << ',' << format_double(nb.via_row_norm) << '\n';
    }
    atomic_write(out / "norm_bounds.csv", pcsv.str());

    json j;
    j["space"] = mms.label;
    j["diam"] = mms.diam();
    j["ab"] = {{"a", ab.a}, {"b", ab.b}, {"r", ab.r}};
    j["rows"] = std::move(jk);
    atomic_write(out / "bounds.json", j.dump(2) + "\n");
    json params = spec_to_json(spec);
    params["k_list"] = k_list;
    write_manifest(out, "bounds", params);
    std::cout << "wrote " << (out / "bounds.csv").string() << "\n";
    return 0;
}

int cmd_hausdorff(const std::string& config_path, const fs::path& out) {
    const json cfg = read_config(config_path);
    if (!cfg.contains("spaces") || cfg["spaces"].size() < 2)
        throw config_error("hausdorff config needs a 'spaces' array with at least two entries");
    std::vector<int> k_list;
    for (const auto& k : cfg.value("k_list", json::array({1, 2, 4, 6, 8, 10, 12, 16, 20})))
        k_list.push_back(k.get<int>());

    struct Entry {
        std::string label;
        Spectrum spectrum;
    };
    std::vector<Entry> entries;
    for (const auto& js : cfg["spaces"]) {
        auto mms = build_space(spec_from_json(js));
        std::string label = mms.label;
        auto shared = std::make_shared<const MetricMeasureSpace>(std::move(mms));
        entries.push_back({std::move(label), eigendecompose(build_operator(std::move(shared)))});
    }

    std::ostringstream csv;
    csv << "space_a,space_b,k,hausdorff\n";
    std::vector<svg::Series> series;
    json rows = json::array();
    for (std::size_t a = 0; a < entries.size(); ++a)
        for (std::size_t b = a + 1; b < entries.size(); ++b) {
            svg::Series s{entries[a].label + " vs " + entries[b].label, {}};
            for (int k : k_list) {
                const int kk = std::min({k, entries[a].spectrum.n(), entries[b].spectrum.n()});
                const double h =
                    hausdorff_L2(embed(entries[a].spectrum, kk), embed(entries[b].spectrum, kk));
                csv << entries[a].label << ',' << entries[b].label << ',' << kk << ','
                    << format_double(h) << '\n';
                s.points.emplace_back(kk, h);
                rows.push_back({{"a", entries[a].label}, {"b", entries[b].label}, {"k", kk},
                                {"hausdorff", h}});
            }
            series.push_back(std::move(s));
        }
    atomic_write(out / "hausdorff.csv", csv.str());
    svg::write_line_chart(out / "hausdorff.svg", "Hausdorff distance vs k", series);
    json j;
    j["rows"] = std::move(rows);
    atomic_write(out / "hausdorff.json", j.dump(2) + "\n");
    write_manifest(out, "hausdorff", cfg);
    std::cout << "wrote " << (out / "hausdorff.csv").string() << "\n";
    return 0;
}

int cmd_transform(const SpaceSpec& spec, const fs::path& out, int k, int dirs_count,
                  std::uint64_t dirs_seed, double rips_scale, const std::string& which,
                  int maxdim) {
    const auto mms = build_space(spec);
    const auto spectrum = eigendecompose(build_operator(mms));
    const auto emb = embed(spectrum, k);
    const auto dirs = direction_grid(k, dirs_count, dirs_seed);

    TransformResult result;
    if (which == "ipkt" || which == "iekt") {
        const auto cx = std::make_shared<const SimplicialComplex>(build_rips(mms, rips_scale, maxdim));
        result = which == "ipkt" ? ipkt(emb, cx, dirs) : iekt(emb, cx, dirs);
    } else if (which == "epkt") {
        result = epkt(emb, dirs, rips_scale, maxdim);
    } else if (which == "eekt") {
        result = eekt(emb, dirs, rips_scale, maxdim);
    } else {
        throw config_error("unknown transform '" + which + "' (want ipkt|epkt|iekt|eekt)");
    }
    write_transform_json(out / (which + ".json"), result);
    json params = spec_to_json(spec);
    params["k"] = k;
    params["dirs"] = dirs_count;
    params["dirs_seed"] = dirs_seed;
    params["rips_scale"] = rips_scale;
    params["which"] = which;
    write_manifest(out, "transform", params);
    std::cout << "wrote " << (out / (which + ".json")).string() << " ("
              << result.complex_summary << ")\n";
    return 0;
}

int cmd_compare(const std::string& config_path, const fs::path& out) {
    const json cfg = read_config(config_path);
    if (!cfg.contains("space_a") || !cfg.contains("space_b"))
        throw config_error("compare config needs 'space_a' and 'space_b'");
    const int k = cfg.value("k", 4);
    const int dirs_count = cfg.value("dirs", 64);
    const std::uint64_t dirs_seed = cfg.value("dirs_seed", 7ull);
    const double rips_scale = cfg.value("rips_scale", 1.0);
    const int maxdim = cfg.value("maxdim", 2);

    const auto mms_a = build_space(spec_from_json(cfg["space_a"]));
    const auto mms_b = build_space(spec_from_json(cfg["space_b"]));
    const auto spec_a = eigendecompose(build_operator(mms_a));
    const auto spec_b = eigendecompose(build_operator(mms_b));
    const auto emb_a = embed(spec_a, k);
    const auto emb_b = embed(spec_b, k);

    json report;
    report["space_a"] = mms_a.label;
    report["space_b"] = mms_b.label;
    report["k"] = k;

    const double eps = hausdorff_L2(emb_a, emb_b);
    report["hausdorff_L2"] = eps;
    report["gh_bound_general"] = gh_bound_general(emb_a, emb_b);
    report["gh_bound_finite"] = gh_bound_finite(spec_a, spec_b, k, eps);
    const double stability_eps = cfg.value("stability_eps", eps);
    report["stability_eps"] = stability_eps;
    try {
        report["stability_bound"] = stability_bound(spec_a, spec_b, k, stability_eps);
    } catch (const hypothesis_error& e) {
        report["stability_bound_error"] = e.what();
    }

    const auto summary_a = error_summary(emb_a);
    const auto summary_b = error_summary(emb_b);
    report["A_a"] = summary_a.sup_error;
    report["A_b"] = summary_b.sup_error;
    // coarse-injectivity right-hand side for equal embedded transforms
    report["ekt_equality_rhs"] = summary_a.sup_error + summary_b.sup_error;

    const auto dirs = direction_grid(k, dirs_count, dirs_seed);
    const auto cx_a = std::make_shared<const SimplicialComplex>(build_rips(mms_a, rips_scale, maxdim));
    const auto cx_b = std::make_shared<const SimplicialComplex>(build_rips(mms_b, rips_scale, maxdim));
    const auto iekt_a = iekt(emb_a, cx_a, dirs);
    const auto iekt_b = iekt(emb_b, cx_b, dirs);
    report["iekt_l1_distance"] = transform_distance(iekt_a, iekt_b, TransformDistance::EulerLp, 1.0);
    const auto epkt_a = epkt(emb_a, dirs, rips_scale, maxdim);
    const auto epkt_b = epkt(emb_b, dirs, rips_scale, maxdim);
    const double epkt_gap = transform_distance(epkt_a, epkt_b, TransformDistance::Bottleneck);
    report["epkt_bottleneck_distance"] = json_number(epkt_gap);
    report["epkt_equality_not_falsified"] = epkt_gap <= 1e-9;

    atomic_write(out / "compare.json", report.dump(2) + "\n");
    write_manifest(out, "compare", cfg);
    std::cout << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance kernel embedding toolkit"};
    app.require_subcommand(1);

    SpaceSpec spec;
    std::string out_dir = "out";
    std::string config_path;
    int k = 4;
    std::string k_list = "2,5,10,50,200";
    std::string hist_list = "10,20";
    std::string radii_csv;
    bool uniformize = false;
    int dirs_count = 64;
    std::uint64_t dirs_seed = 7;
    double rips_scale = 1.0;
    std::string which = "ipkt";
    int maxdim = 2;

    auto* sample = app.add_subcommand("sample", "sample a model space and write it out");
    add_space_options(sample, spec);
    sample->add_option("--out", out_dir, "output directory");

    auto* spectrum = app.add_subcommand("spectrum", "eigendecompose the distance kernel operator");
    add_space_options(spectrum, spec);
    spectrum->add_option("--out", out_dir, "output directory");
    spectrum->add_flag("--uniformize", uniformize, "replace the measure by uniform total mass 1");

    auto* embed_cmd = app.add_subcommand("embed", "compute the k-dimensional embedding");
    add_space_options(embed_cmd, spec);
    embed_cmd->add_option("--k", k, "embedding dimension");
    embed_cmd->add_option("--out", out_dir, "output directory");
    embed_cmd->add_option("--hist-i", hist_list, "eigenvector indices for magnitude histograms");

    auto* bounds = app.add_subcommand("bounds", "error constants and their analytic bounds per k");
    add_space_options(bounds, spec);
    bounds->add_option("--k-list", k_list, "comma-separated embedding dimensions");
    bounds->add_option("--radii", radii_csv, "comma-separated ball radii for the growth estimate");
    bounds->add_option("--out", out_dir, "output directory");

    auto* hausdorff = app.add_subcommand("hausdorff", "pairwise embedding distances across k");
    hausdorff->add_option("--config", config_path, "JSON config with spaces and k_list")->required();
    hausdorff->add_option("--out", out_dir, "output directory");

    auto* transform = app.add_subcommand("transform", "direction-indexed persistence/Euler transforms");
    add_space_options(transform, spec);
    transform->add_option("--k", k, "embedding dimension");
    transform->add_option("--dirs", dirs_count, "number of directions");
    transform->add_option("--dirs-seed", dirs_seed, "direction sampling seed");
    transform->add_option("--rips-scale", rips_scale, "complex scale parameter");
    transform->add_option("--which", which, "ipkt | epkt | iekt | eekt");
    transform->add_option("--maxdim", maxdim, "maximum simplex dimension");
    transform->add_option("--out", out_dir, "output directory");

    auto* compare = app.add_subcommand("compare", "full comparison report for a pair of spaces");
    compare->add_option("--config", config_path, "JSON config with space_a, space_b, k, dirs")->required();
    compare->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
        const fs::path out(out_dir);
        fs::create_directories(out);
        if (sample->parsed()) return cmd_sample(spec, out);
        if (spectrum->parsed()) return cmd_spectrum(spec, out, uniformize);
        if (embed_cmd->parsed()) return cmd_embed(spec, out, k, hist_list);
        if (bounds->parsed()) return cmd_bounds(spec, out, k_list, radii_csv);
        if (hausdorff->parsed()) return cmd_hausdorff(config_path, out);
        if (transform->parsed())
            return cmd_transform(spec, out, k, dirs_count, dirs_seed, rips_scale, which, maxdim);
        if (compare->parsed()) return cmd_compare(config_path, out);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const hypothesis_error& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
