#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <string>

#include "doctest.h"
#include "seamcut/pipeline.hpp"
#include "seamcut/stylize.hpp"
#include "support/dump.hpp"
#include "support/fuzz.hpp"

using namespace seamcut;
using namespace seamcut::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kCli = SEAMCUT_CLI_PATH;
const fs::path kData = SEAMCUT_DATA_DIR;

struct Run {
  int code;
  std::string err;
};

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Run run(const std::string& args) {
  static const fs::path err = scratch_dir("cli-stderr") / "stderr.txt";
  const std::string cmd = "\"" + kCli.string() + "\" " + args + " >/dev/null 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_text(err)};
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

const std::string kScene = "--original " + q(kData / "scene.png") + " --mask " + q(kData / "scene_mask.png");

}  // namespace

TEST_CASE("blend succeeds and reports statistics") {
  const auto dir = scratch_dir("cli");
  const Run r = run("blend " + kScene + " --auto-stylize --click 58,84 --verbose --out " + q(dir / "o.png") +
                    " --seam-overlay " + q(dir / "s.png") + " --trimap-out " + q(dir / "t.png") +
                    " --energy-dump " + q(dir / "e.txt"));
  REQUIRE(r.code == 0);
  CHECK(std::regex_search(r.err, std::regex(R"(energy=[0-9.e+-]+ method=mincut nodes=[0-9]+ edges=[0-9]+)")));

  const RgbImage out = load_image(dir / "o.png");
  CHECK(out.width() == 128);
  CHECK(load_image(dir / "s.png").height() == 128);
  const InstanceMask trimap = load_mask(dir / "t.png");
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) CHECK((trimap.at(x, y) == 0 || trimap.at(x, y) == 128 || trimap.at(x, y) == 255));

  std::ifstream dump_in(dir / "e.txt");
  const ParsedDump dump = parse_dump(dump_in);
  CHECK(!dump.pixels.empty());
  CHECK(!dump.edges.empty());
}

TEST_CASE("click and instance id select the same object") {
  const auto dir = scratch_dir("cli");
  REQUIRE(run("blend " + kScene + " --auto-stylize --click 102,26 --out " + q(dir / "a.ppm")).code == 0);
  REQUIRE(run("blend " + kScene + " --auto-stylize --instance-id 2 --out " + q(dir / "b.ppm")).code == 0);
  CHECK(read_text(dir / "a.ppm") == read_text(dir / "b.ppm"));
}

TEST_CASE("every solver runs from the command line") {
  const auto dir = scratch_dir("cli");
  for (const char* solver : {"mincut", "icm", "naive"}) {
    const Run r = run("blend " + kScene + " --auto-stylize --instance-id 2 --radius 1 --verbose --solver " + solver +
                      " --out " + q(dir / "x.ppm"));
    CHECK(r.code == 0);
    CHECK(r.err.find(std::string("method=") + solver) != std::string::npos);
  }
}

TEST_CASE("stylize and band subcommands") {
  const auto dir = scratch_dir("cli");
  REQUIRE(run("stylize --in " + q(kData / "scene.png") + " --levels 3 --out " + q(dir / "s.ppm")).code == 0);
  save_image(stylize(load_image(kData / "scene.png"), {3, 0.6, 1.0}), dir / "expected.ppm", ImageFormat::Ppm);
  CHECK(read_text(dir / "s.ppm") == read_text(dir / "expected.ppm"));

  REQUIRE(run("band --mask " + q(kData / "scene_mask.png") + " --instance-id 1 --radius 2 --out " + q(dir / "b.pgm"))
              .code == 0);
  const InstanceMask band = load_mask(dir / "b.pgm");
  const TriMap t = compute_band(select_instance_id(load_mask(kData / "scene_mask.png"), 1), 2.0);
  const auto gray = t.to_gray8();
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) CHECK(band.at(x, y) == gray[static_cast<std::size_t>(y) * 128 + x]);
}

TEST_CASE("energy subcommand matches the library model") {
  const auto dir = scratch_dir("cli");
  REQUIRE(run("energy " + kScene + " --auto-stylize --instance-id 2 --radius 2 --lambda 0.5 --out " +
              q(dir / "e.txt")).code == 0);
  std::ifstream in(dir / "e.txt");
  const ParsedDump dump = parse_dump(in);

  const RgbImage original = load_image(kData / "scene.png");
  const TriMap t = compute_band(select_instance_id(load_mask(kData / "scene_mask.png"), 2), 2.0);
  const EnergyModel model = build_energy(original, stylize(original, {}), t, 0.5, Connectivity::Four);
  REQUIRE(dump.pixels.size() == model.size());
  REQUIRE(dump.edges.size() == model.edges().size());
  for (std::size_t k = 0; k < model.size(); ++k) {
    CHECK(dump.pixels[k].u_fg == model.unary()[k].fg);
    CHECK(dump.pixels[k].u_bg == model.unary()[k].bg);
  }
}

TEST_CASE("usage errors exit with 2") {
  const auto dir = scratch_dir("cli");
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("blend " + kScene + " --out " + q(dir / "o.ppm") + " --instance-id 1").code == 2);
  CHECK(run("blend " + kScene + " --auto-stylize --out " + q(dir / "o.ppm")).code == 2);
  CHECK(run("blend " + kScene + " --auto-stylize --click 1,2 --instance-id 1 --out " + q(dir / "o.ppm")).code == 2);
  CHECK(run("blend " + kScene + " --auto-stylize --click 1x2 --out " + q(dir / "o.ppm")).code == 2);
  CHECK(run("blend " + kScene + " --auto-stylize --instance-id 1 --radius -1 --out " + q(dir / "o.ppm")).code == 2);
  CHECK(run("blend " + kScene + " --auto-stylize --instance-id 1 --connectivity 6 --out " + q(dir / "o.ppm")).code ==
        2);
  CHECK(run("blend " + kScene + " --auto-stylize --instance-id 1 --levels 1 --out " + q(dir / "o.ppm")).code == 2);
}

TEST_CASE("input errors exit with 3") {
  const auto dir = scratch_dir("cli");
  const Run missing = run("blend --original " + q(dir / "nope.png") + " --mask " + q(kData / "scene_mask.png") +
                          " --auto-stylize --instance-id 1 --out " + q(dir / "o.ppm"));
  CHECK(missing.code == 3);
  CHECK(missing.err.find("error:") != std::string::npos);
  CHECK(run("blend " + kScene + " --auto-stylize --click 5,5 --out " + q(dir / "o.ppm")).code == 3);
  CHECK(run("blend " + kScene + " --auto-stylize --click 500,5 --out " + q(dir / "o.ppm")).code == 3);
  CHECK(run("blend " + kScene + " --auto-stylize --instance-id 9 --out " + q(dir / "o.ppm")).code == 3);

  save_image(RgbImage(4, 4), dir / "small.ppm", ImageFormat::Ppm);
  CHECK(run("blend " + kScene + " --stylized " + q(dir / "small.ppm") + " --instance-id 1 --out " + q(dir / "o.ppm"))
            .code == 3);
}

TEST_CASE("solver errors exit with 4") {
  const auto dir = scratch_dir("cli");
  const Run r = run("blend " + kScene + " --auto-stylize --instance-id 1 --solver oracle --out " + q(dir / "o.ppm"));
  CHECK(r.code == 4);
  CHECK(!fs::exists(dir / "o.ppm"));
}

TEST_CASE("repeated runs are byte identical") {
  const auto dir = scratch_dir("cli");
  for (const char* name : {"a.png", "b.png"}) {
    REQUIRE(run("blend " + kScene + " --auto-stylize --instance-id 1 --connectivity 8 --lambda 2 --out " +
                q(dir / name)).code == 0);
  }
  CHECK(read_text(dir / "a.png") == read_text(dir / "b.png"));
}
