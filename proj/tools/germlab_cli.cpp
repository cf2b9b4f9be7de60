// germlab command line front end: classify germs, measure the short trip
// property, rasterize stable/unstable sets, export petal atlases and
// conjugacy samples, and print the catalog trichotomy table.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "germlab/catalog.hpp"
#include "germlab/components.hpp"
#include "germlab/conjugacy.hpp"
#include "germlab/errors.hpp"
#include "germlab/flower.hpp"
#include "germlab/germ.hpp"
#include "germlab/raster.hpp"
#include "germlab/shorttrip.hpp"

namespace {

namespace fs = std::filesystem;
using namespace germlab;

struct CommonOpts {
    std::string germ_json;
    std::string germ_file;
    ClassifyConfig config;
    std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_germ = true) {
    if (with_germ) {
        cmd->add_option("--germ", opts.germ_json, "germ spec as inline JSON");
        cmd->add_option("--germ-file", opts.germ_file, "path to a germ spec JSON file");
    }
    cmd->add_option("--v-radius", opts.config.v_radius, "radius of the neighbourhood V");
    cmd->add_option("--levels", opts.config.levels, "number of W levels");
    cmd->add_option("--samples", opts.config.samples, "orbit samples per level");
    cmd->add_option("--cap", opts.config.cap, "iteration cap");
    cmd->add_option("--horizon", opts.config.horizon, "set-estimation horizon");
    cmd->add_option("--resolution", opts.config.resolution, "raster resolution");
    cmd->add_option("--seed", opts.config.seed, "sampling seed");
    cmd->add_option("--out", opts.out_dir, "output directory");
}

GermSpec load_germ(const CommonOpts& opts) {
    if (!opts.germ_file.empty()) {
        std::ifstream f(opts.germ_file);
        if (!f) throw SpecError("cannot read " + opts.germ_file);
        std::stringstream buf;
        buf << f.rdbuf();
        return parse_germ_json(buf.str());
    }
    if (!opts.germ_json.empty()) return parse_germ_json(opts.germ_json);
    throw SpecError("a germ spec is required (--germ or --germ-file)");
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path.string() + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

fs::path ensure_out_dir(const CommonOpts& opts) {
    fs::path dir(opts.out_dir);
    if (!dir.empty()) fs::create_directories(dir);
    return dir;
}

int cmd_classify(const CommonOpts& opts) {
    GermSpec spec = load_germ(opts);
    ShortTripReport report = classify_germ(spec, opts.config);
    std::string json = report_to_json(report);
    std::cout << json << "\n";
    write_file(ensure_out_dir(opts) / "classify_report.json", json + "\n");
    return 0;
}

int cmd_short_trip(const CommonOpts& opts) {
    GermSpec spec = load_germ(opts);
    ShortTripReport report =
        short_trip_verdict(spec, DiscRegion(opts.config.v_radius), opts.config.levels,
                           opts.config.samples, opts.config.cap, opts.config.seed);
    std::string json = report_to_json(report);
    std::cout << json << "\n";
    fs::path dir = ensure_out_dir(opts);
    write_file(dir / "short_trip_report.json", json + "\n");
    write_file(dir / "short_trip_levels.csv", levels_to_csv(report));
    return 0;
}

int cmd_stable_set(const CommonOpts& opts) {
    GermSpec spec = load_germ(opts);
    DiscRegion V(opts.config.v_radius);
    GridRaster stable = estimate_stable_set(spec, V, opts.config.horizon, opts.config.resolution);
    GridRaster unstable =
        estimate_unstable_set(spec, V, opts.config.horizon, opts.config.resolution);
    ComponentLabeling comps = component_analysis(stable, unstable);

    fs::path dir = ensure_out_dir(opts);
    write_pgm(stable, (dir / "stable.pgm").string());
    write_pgm(unstable, (dir / "unstable.pgm").string());
    write_file(dir / "components.csv", components_to_csv(comps));
    std::cout << "components: " << comps.component_count
              << " (touching origin ring: " << comps.origin_touching_count()
              << ", core ring: " << comps.core_ring << ")\n"
              << "undetermined cells (unstable): " << undetermined_count(unstable) << "\n";
    return 0;
}

int cmd_petals(const CommonOpts& opts) {
    GermSpec spec = load_germ(opts);
    const auto* pf = std::get_if<ParabolicNormalForm>(&spec);
    if (!pf) throw SpecError("petals requires a parabolic germ");
    PetalAtlas atlas = build_petal_atlas(pf->p, pf->q, pf->r);

    fs::path dir = ensure_out_dir(opts);
    write_file(dir / "atlas.json", atlas_to_json(atlas) + "\n");

    // petal raster: attracting petals bright, repelling mid-gray
    int res = std::min(opts.config.resolution, 1024);
    GridRaster raster;
    raster.window_radius = atlas.disc_radius;
    raster.resolution = res;
    raster.cells.assign(static_cast<std::size_t>(res) * res, CellLabel::OutOfSet);
    for (int iy = 0; iy < res; ++iy)
        for (int ix = 0; ix < res; ++ix) {
            PlanePoint z = raster.cell_center(ix, iy);
            for (const PetalModel& petal : atlas.petals) {
                if (!petal.contains(z)) continue;
                raster.at(ix, iy) = petal.kind == PetalKind::Attracting
                                        ? CellLabel::InSet
                                        : CellLabel::Undetermined;
                break;
            }
        }
    write_pgm(raster, (dir / "petals.pgm").string());
    std::cout << atlas_to_json(atlas) << "\n";
    return 0;
}

int cmd_conjugacy(const CommonOpts& opts, const std::string& model, int index,
                  double disc_radius) {
    fs::path dir = ensure_out_dir(opts);
    ConjugacyMap map;
    double extent;
    if (model == "contraction") {
        GermSpec spec = load_germ(opts);
        map = contraction_conjugacy(spec, DiscRegion(disc_radius));
        extent = disc_radius;
    } else {
        GermSpec spec = load_germ(opts);
        const auto* pf = std::get_if<ParabolicNormalForm>(&spec);
        if (!pf) throw SpecError("sector/translation models require a parabolic germ");
        PetalAtlas atlas = build_petal_atlas(pf->p, pf->q, pf->r);
        if (model == "sector") {
            SectorModel sector = build_nice_sector(atlas, index);
            map = sector_conjugacy(atlas, sector);
            extent = atlas.disc_radius;
        } else if (model == "translation") {
            map = translation_model_on_petal(atlas, index);
            extent = std::pow(1.0 / (atlas.ell * atlas.fatou_threshold), 1.0 / atlas.ell);
        } else {
            throw SpecError("unknown conjugacy model: " + model);
        }
    }
    write_file(dir / "conjugacy_samples.csv", conjugacy_sample_csv(map, extent, 200));
    std::string meta = conjugacy_metadata_json(map);
    write_file(dir / "conjugacy_meta.json", meta + "\n");
    std::cout << meta << "\n";
    return 0;
}

int cmd_trichotomy(const CommonOpts& opts) {
    std::vector<TrichotomyRow> rows = run_trichotomy(opts.config);
    std::string table = trichotomy_markdown(rows);
    std::cout << table;
    write_file(ensure_out_dir(opts) / "trichotomy.md", table);
    bool all = true;
    for (const TrichotomyRow& row : rows) all = all && row.match;
    std::cout << (all ? "all rows match\n" : "MISMATCH present\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"germ dynamics laboratory"};
    app.require_subcommand(1);

    CommonOpts classify_opts, short_opts, stable_opts, petal_opts, conj_opts, tri_opts;
    std::string conj_model = "contraction";
    int conj_index = 0;
    double conj_disc = 1.0;

    add_common(app.add_subcommand("classify", "verdict + trichotomy class for one germ"),
               classify_opts);
    add_common(app.add_subcommand("short-trip", "short trip measurement report"), short_opts);
    add_common(app.add_subcommand("stable-set", "stable/unstable rasters and components"),
               stable_opts);
    add_common(app.add_subcommand("petals", "petal atlas for a parabolic germ"), petal_opts);
    CLI::App* conj = app.add_subcommand("conjugacy", "explicit conjugacy model samples");
    add_common(conj, conj_opts);
    conj->add_option("--model", conj_model, "contraction | sector | translation");
    conj->add_option("--index", conj_index, "sector or petal index");
    conj->add_option("--disc-radius", conj_disc, "disc D radius (contraction model)");
    add_common(app.add_subcommand("trichotomy", "catalog table against expected classes"),
               tri_opts, /*with_germ=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("classify")) return cmd_classify(classify_opts);
        if (app.got_subcommand("short-trip")) return cmd_short_trip(short_opts);
        if (app.got_subcommand("stable-set")) return cmd_stable_set(stable_opts);
        if (app.got_subcommand("petals")) return cmd_petals(petal_opts);
        if (app.got_subcommand("conjugacy"))
            return cmd_conjugacy(conj_opts, conj_model, conj_index, conj_disc);
        if (app.got_subcommand("trichotomy")) return cmd_trichotomy(tri_opts);
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
