// seamcut: blend a stylized rendition of one object instance into a photograph.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "seamcut/imagery.hpp"
#include "seamcut/masking.hpp"
#include "seamcut/mrf.hpp"
#include "seamcut/pipeline.hpp"
#include "seamcut/solver.hpp"
#include "seamcut/stylize.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitSolver = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(seamcut::ErrorKind kind) {
  using seamcut::ErrorKind;
  switch (kind) {
    case ErrorKind::MalformedModel:
    case ErrorKind::TooManyAmbiguous:
      return kExitSolver;
    case ErrorKind::InvalidParams:
      return kExitUsage;
    default:
      return kExitInput;
  }
}

struct SelectionArgs {
  std::string click;
  std::optional<std::uint32_t> instance_id;

  void add_to(CLI::App& cmd) {
    auto* c = cmd.add_option("--click", click, "Pixel X,Y on the instance to restyle");
    auto* i = cmd.add_option("--instance-id", instance_id, "Instance id to restyle");
    c->excludes(i);
  }

  seamcut::Selection resolve() const {
    if (!click.empty()) {
      int x = 0;
      int y = 0;
      char tail = 0;
      if (std::sscanf(click.c_str(), "%d,%d%c", &x, &y, &tail) != 2) {
        throw UsageError("--click expects X,Y");
      }
      return seamcut::Point{x, y};
    }
    if (instance_id) return seamcut::InstanceId{*instance_id};
    throw UsageError("one of --click or --instance-id is required");
  }
};

struct StyleArgs {
  std::string stylized;
  bool auto_stylize = false;
  seamcut::StylizeParams params;

  void add_to(CLI::App& cmd) {
    auto* s = cmd.add_option("--stylized", stylized, "Precomputed stylized image (PNG or PPM)");
    auto* a = cmd.add_flag("--auto-stylize", auto_stylize, "Generate the stylized image procedurally");
    s->excludes(a);
    add_params(cmd, params);
  }

  static void add_params(CLI::App& cmd, seamcut::StylizeParams& p) {
    cmd.add_option("--levels", p.levels, "Posterization levels per channel")->capture_default_str();
    cmd.add_option("--edge-strength", p.edge_strength, "Darkening applied to edge pixels")->capture_default_str();
    cmd.add_option("--edge-threshold", p.edge_threshold, "Sobel magnitude cutoff")->capture_default_str();
  }

  void check() const {
    if (!auto_stylize && stylized.empty()) throw UsageError("one of --stylized or --auto-stylize is required");
  }

  seamcut::RgbImage resolve(const seamcut::RgbImage& original) const {
    check();
    if (auto_stylize) return seamcut::stylize(original, params);
    return seamcut::load_image(stylized);
  }
};

struct ModelArgs {
  double radius = 5.0;
  double lambda = 1.0;
  int connectivity = 4;

  void add_to(CLI::App& cmd, bool with_energy) {
    cmd.add_option("--radius", radius, "Ambiguous band radius in pixels")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    if (!with_energy) return;
    cmd.add_option("--lambda", lambda, "Weight of the pairwise term")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd.add_option("--connectivity", connectivity, "Pixel neighborhood (4 or 8)")
        ->check(CLI::IsMember({4, 8}))
        ->capture_default_str();
  }

  seamcut::Connectivity conn() const {
    return connectivity == 8 ? seamcut::Connectivity::Eight : seamcut::Connectivity::Four;
  }
};

void write_dump(const seamcut::EnergyModel& model, const std::string& path) {
  if (path == "-") {
    seamcut::write_energy_dump(model, std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw seamcut::Error(seamcut::ErrorKind::IoError, "cannot open " + path);
  seamcut::write_energy_dump(model, out);
  if (!out) throw seamcut::Error(seamcut::ErrorKind::IoError, "short write to " + path);
}

void save(const seamcut::RgbImage& img, const std::string& path) {
  seamcut::save_image(img, path, seamcut::format_for_path(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seam-aware targeted style blending"};
  app.require_subcommand(1);

  // stylize
  std::string sty_in;
  std::string sty_out;
  seamcut::StylizeParams sty_params;
  auto* sty = app.add_subcommand("stylize", "Apply the procedural stylizer to an image");
  sty->add_option("--in", sty_in, "Input image")->required();
  sty->add_option("--out", sty_out, "Output image")->required();
  StyleArgs::add_params(*sty, sty_params);

  // band
  std::string band_mask;
  std::string band_out;
  SelectionArgs band_sel;
  ModelArgs band_model;
  auto* band = app.add_subcommand("band", "Write the trimap of the selected instance");
  band->add_option("--mask", band_mask, "Instance mask (PNG or PGM)")->required();
  band->add_option("--out", band_out, "Trimap image (0 bg, 128 ambiguous, 255 fg)")->required();
  band_sel.add_to(*band);
  band_model.add_to(*band, false);

  // energy
  std::string en_original;
  std::string en_mask;
  std::string en_out = "-";
  SelectionArgs en_sel;
  StyleArgs en_style;
  ModelArgs en_model;
  auto* energy = app.add_subcommand("energy", "Dump the band energy model as text");
  energy->add_option("--original", en_original, "Original image")->required();
  energy->add_option("--mask", en_mask, "Instance mask")->required();
  energy->add_option("--out", en_out, "Dump path, '-' for stdout")->capture_default_str();
  en_sel.add_to(*energy);
  en_style.add_to(*energy);
  en_model.add_to(*energy, true);

  // blend
  std::string bl_original;
  std::string bl_mask;
  std::string bl_out;
  std::string bl_solver = "mincut";
  std::string bl_seam;
  std::string bl_trimap;
  std::string bl_dump;
  bool verbose = false;
  SelectionArgs bl_sel;
  StyleArgs bl_style;
  ModelArgs bl_model;
  auto* blend = app.add_subcommand("blend", "Composite the stylized instance into the original");
  blend->add_option("--original", bl_original, "Original image")->required();
  blend->add_option("--mask", bl_mask, "Instance mask")->required();
  blend->add_option("--out", bl_out, "Output image (.png or .ppm)")->required();
  blend->add_option("--solver", bl_solver, "mincut, icm, naive or oracle")
      ->check(CLI::IsMember({"mincut", "icm", "naive", "oracle"}))
      ->capture_default_str();
  blend->add_option("--seam-overlay", bl_seam, "Write the seam visualization here");
  blend->add_option("--trimap-out", bl_trimap, "Write the trimap here");
  blend->add_option("--energy-dump", bl_dump, "Write the energy model here");
  blend->add_flag("--verbose", verbose, "Print solver statistics to stderr");
  bl_sel.add_to(*blend);
  bl_style.add_to(*blend);
  bl_model.add_to(*blend, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sty) {
      save(seamcut::stylize(seamcut::load_image(sty_in), sty_params), sty_out);
    } else if (*band) {
      const auto mask = seamcut::load_mask(band_mask);
      const auto object = seamcut::resolve_selection(mask, band_sel.resolve());
      const auto trimap = seamcut::compute_band(object, band_model.radius);
      if (trimap.degenerate()) std::cerr << "warning: selection covers the whole image; band is empty\n";
      seamcut::save_gray8(trimap.to_gray8(), trimap.width(), trimap.height(), band_out,
                          seamcut::format_for_path(band_out));
    } else if (*energy) {
      const auto selection = en_sel.resolve();
      en_style.check();
      const auto original = seamcut::load_image(en_original);
      const auto stylized = en_style.resolve(original);
      const auto mask = seamcut::load_mask(en_mask);
      if (mask.width() != original.width() || mask.height() != original.height() ||
          stylized.width() != original.width() || stylized.height() != original.height()) {
        throw seamcut::Error(seamcut::ErrorKind::DimensionMismatch, "original, stylized and mask dimensions differ");
      }
      const auto trimap = seamcut::compute_band(seamcut::resolve_selection(mask, selection), en_model.radius);
      write_dump(seamcut::build_energy(original, stylized, trimap, en_model.lambda, en_model.conn()), en_out);
    } else if (*blend) {
      seamcut::BlendConfig config;
      config.selection = bl_sel.resolve();
      bl_style.check();
      config.radius = bl_model.radius;
      config.lambda = bl_model.lambda;
      config.connectivity = bl_model.conn();
      if (bl_solver == "icm") config.solver = seamcut::SolveMethod::Icm;
      else if (bl_solver == "naive") config.solver = seamcut::SolveMethod::Naive;
      else if (bl_solver == "oracle") config.solver = seamcut::SolveMethod::Oracle;
      else config.solver = seamcut::SolveMethod::MinCut;

      const auto original = seamcut::load_image(bl_original);
      const auto stylized = bl_style.resolve(original);
      const auto mask = seamcut::load_mask(bl_mask);
      const auto outcome = seamcut::blend_detailed(original, stylized, mask, config);
      if (outcome.trimap.degenerate()) {
        std::cerr << "warning: selection covers the whole image; band is empty\n";
      }

      save(outcome.output, bl_out);
      if (!bl_seam.empty()) {
        save(seamcut::render_seam_overlay(original, outcome.trimap, outcome.result.labeling), bl_seam);
      }
      if (!bl_trimap.empty()) {
        seamcut::save_gray8(outcome.trimap.to_gray8(), outcome.trimap.width(), outcome.trimap.height(),
                            bl_trimap, seamcut::format_for_path(bl_trimap));
      }
      if (!bl_dump.empty()) write_dump(outcome.model, bl_dump);
      if (verbose) {
        const auto& r = outcome.result;
        std::fprintf(stderr, "energy=%.10g method=%s nodes=%zu edges=%zu\n", r.energy,
                     std::string(seamcut::to_string(r.method)).c_str(), r.stats.nodes, r.stats.edges);
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const seamcut::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return 0;
}
