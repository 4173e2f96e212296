#include <set>

#include "cli_support.hpp"
#include "doctest.h"
#include "json.hpp"
#include "npr/image.hpp"
#include "npr/io.hpp"

using namespace cli_support;

namespace {

const std::string kSmall = "size=96x72";

}  // namespace

TEST_CASE("render writes ppm and svg") {
  const fs::path dir = scratch("render_basic");
  const auto r = run({"render", fixture("icosphere.obj").string(), "--style", "gooch", "--camera", kSmall, "-o",
                      (dir / "a.ppm").string(), "-o", (dir / "a.svg").string()});
  REQUIRE(r.code == 0);
  const npr::ImageBuffer img = npr::read_ppm(dir / "a.ppm");
  CHECK(img.width() == 96);
  CHECK(img.height() == 72);
  const std::string svg = slurp(dir / "a.svg");
  CHECK(count(svg, "<path ") >= 1);
  CHECK(svg.find("id=\"silhouette\"") != std::string::npos);
}

TEST_CASE("suggestive contours compute curvature on demand") {
  const fs::path dir = scratch("render_suggestive");
  const auto r = run({"render", fixture("torus.obj").string(), "--contours", "silhouette,suggestive", "--camera",
                      "from=0,1,0.8;" + kSmall, "-o", (dir / "t.svg").string(), "-v"});
  REQUIRE(r.code == 0);
  const std::string svg = slurp(dir / "t.svg");
  CHECK(svg.find("id=\"suggestive\"") != std::string::npos);
  CHECK(count(svg, "<path ") >= 2);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit_codes");
  const std::string out = (dir / "a.ppm").string();
  const std::string ico = fixture("icosphere.obj").string();

  auto r = run({"render", (dir / "mesh.xyz").string(), "-o", out});
  CHECK(r.code == 2);
  CHECK(r.err.find("no loader for extension") != std::string::npos);

  r = run({"animate", ico, "--outdir", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("input is not animated") != std::string::npos);

  CHECK(run({"render", ico, "--camera", "eye=1,2", "-o", out}).code == 2);
  CHECK(run({"render", ico, "--camera", "size=0x10", "-o", out}).code == 2);
  CHECK(run({"render", ico, "--style", "sketchy", "-o", out}).code == 2);
  CHECK(run({"render", ico, "--contours", "ridges", "-o", out}).code == 2);
  CHECK(run({"render", ico, "-o", (dir / "a.csv").string()}).code == 2);
  CHECK(run({"render", ico, "--no-such-flag", "-o", out}).code == 2);
  CHECK(run({"render", ico, "--samples", "0", "-o", out}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"animate", fixture("wave.md2").string(), "--frames", "0", "--outdir", dir.string()}).code == 2);
  CHECK(run({"animate", fixture("wave.md2").string(), "--animation", "walk", "--outdir", dir.string()}).code == 2);
  CHECK(run({"render", (dir / "missing.obj").string(), "-o", out}).code == 3);
  CHECK(run({"render", ico, "-o", (dir / "no" / "such" / "dir.ppm").string()}).code == 3);
  CHECK(run({"render", ico, "--config", (dir / "missing.json").string(), "-o", out}).code == 3);

  std::ofstream(dir / "broken.json") << "{ \"style\": ";
  CHECK(run({"render", ico, "--config", (dir / "broken.json").string(), "-o", out}).code == 2);
  std::ofstream(dir / "typo.json") << R"({"stlye": "toon"})";
  r = run({"render", ico, "--config", (dir / "typo.json").string(), "-o", out});
  CHECK(r.code == 2);
  CHECK(r.err.find("stlye") != std::string::npos);
}

TEST_CASE("animate samples the time range") {
  const fs::path dir = scratch("animate_md2");
  const std::string md2 = fixture("wave.md2").string();
  REQUIRE(run({"animate", md2, "--frames", "3", "--range", "0,1", "--camera", kSmall, "--outdir", dir.string()}).code ==
          0);
  CHECK(fs::exists(dir / "frame_0000.ppm"));
  CHECK(fs::exists(dir / "frame_0002.ppm"));
  CHECK_FALSE(fs::exists(dir / "frame_0003.ppm"));

  // First and last frames equal single renders of the two keyframes.
  for (const auto& [t, frame] : {std::pair{"0", "frame_0000.ppm"}, std::pair{"1", "frame_0002.ppm"}}) {
    const fs::path single = dir / (std::string("key") + t + ".ppm");
    REQUIRE(run({"render", md2, "--time", t, "--camera", kSmall, "-o", single.string()}).code == 0);
    CHECK(slurp(single) == slurp(dir / frame));
  }
  CHECK(slurp(dir / "frame_0000.ppm") != slurp(dir / "frame_0001.ppm"));

  const fs::path one = scratch("animate_one");
  REQUIRE(run({"animate", md2, "--frames", "1", "--range", "0.5,1", "--camera", kSmall, "--outdir", one.string()})
              .code == 0);
  CHECK(fs::exists(one / "frame_0000.ppm"));
  CHECK_FALSE(fs::exists(one / "frame_0001.ppm"));
  REQUIRE(run({"render", md2, "--time", "0.5", "--camera", kSmall, "-o", (one / "half.ppm").string()}).code == 0);
  CHECK(slurp(one / "half.ppm") == slurp(one / "frame_0000.ppm"));
}

TEST_CASE("animate a skinned mesh") {
  const fs::path dir = scratch("animate_skin");
  REQUIRE(run({"animate", fixture("bend.zskin").string(), "--frames", "3", "--contours", "silhouette,suggestive",
               "--camera", kSmall, "--outdir", dir.string(), "--svg"})
              .code == 0);
  for (const char* f : {"frame_0000.ppm", "frame_0001.ppm", "frame_0002.ppm", "frame_0002.svg"})
    CHECK(fs::exists(dir / f));
  // The bind pose frame equals a render of the undeformed mesh at t = 0.
  REQUIRE(run({"render", fixture("bend.zskin").string(), "--contours", "silhouette,suggestive", "--camera", kSmall,
               "-o", (dir / "bind.ppm").string()})
              .code == 0);
  CHECK(slurp(dir / "bind.ppm") == slurp(dir / "frame_0000.ppm"));
  CHECK(slurp(dir / "frame_0000.ppm") != slurp(dir / "frame_0002.ppm"));
}

TEST_CASE("curvature csv has one row per vertex") {
  const fs::path dir = scratch("curvature");
  REQUIRE(run({"curvature", fixture("icosphere.obj").string(), "-o", (dir / "c.csv").string()}).code == 0);
  const std::string csv = slurp(dir / "c.csv");
  const npr::Surface s = npr::load_obj(fixture("icosphere.obj"));
  CHECK(count(csv, "\n") == s.vertex_count() + 1);
  CHECK(csv.rfind("id,k1,k2,e1x,e1y,e1z,e2x,e2y,e2z,a,b,c,d\n", 0) == 0);
}

TEST_CASE("contours json on a closed mesh") {
  const fs::path dir = scratch("contours");
  REQUIRE(run({"contours", fixture("icosphere.obj").string(), "--camera", "ortho=1.2;from=0.2,0.5,1", "-o",
               (dir / "c.json").string(), "-o", (dir / "c.svg").string()})
              .code == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "c.json"));
  REQUIRE(doc["contours"].size() == 1);
  const auto& lines = doc["contours"][0]["polylines"];
  REQUIRE(lines.size() >= 1);
  for (const auto& l : lines) CHECK(l["closed"].get<bool>());
  CHECK(count(slurp(dir / "c.svg"), "<path ") == lines.size());
}

TEST_CASE("lapped patches") {
  const fs::path dir = scratch("lapped");
  const std::string torus = fixture("torus.obj").string();
  REQUIRE(run({"lapped", torus, "--radius", "4", "-o", (dir / "one.json").string()}).code == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "one.json"))["patches"].size() == 1);
  REQUIRE(run({"lapped", torus, "--radius", "0.4", "-o", (dir / "many.json").string(), "-o",
               (dir / "atlas.ppm").string(), "--atlas-size", "128"})
              .code == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "many.json"));
  CHECK(doc["patches"].size() > 1);
  std::set<int> covered;
  for (const auto& p : doc["patches"])
    for (const auto& f : p["faces"]) covered.insert(f.get<int>());
  CHECK(covered.size() == npr::load_obj(fixture("torus.obj")).face_count());
  CHECK(npr::read_ppm(dir / "atlas.ppm").width() == 128);
}

TEST_CASE("config file and flags are equivalent; flags win") {
  const fs::path dir = scratch("config");
  const std::string ico = fixture("icosphere.obj").string();
  std::ofstream(dir / "toon.json") << R"({
    "input": ")" << ico << R"(",
    "camera": "from=1,0.5,1;size=80x60",
    "style": "toon",
    "shader": {"levels": 4},
    "line": {"width": 2, "smoothing": "catmull-rom", "color": [0.1, 0.2, 0.6]},
    "background": [0.9, 0.9, 0.8]
  })";
  REQUIRE(run({"render", "--config", (dir / "toon.json").string(), "-o", (dir / "file.ppm").string()}).code == 0);
  REQUIRE(run({"render", ico, "--camera", "from=1,0.5,1;size=80x60", "--style", "toon", "--levels", "4",
               "--line-width", "2", "--smoothing", "catmull-rom", "--line-color", "0.1,0.2,0.6", "--background",
               "0.9,0.9,0.8", "-o", (dir / "flags.ppm").string()})
              .code == 0);
  CHECK(slurp(dir / "file.ppm") == slurp(dir / "flags.ppm"));

  REQUIRE(run({"render", "--config", (dir / "toon.json").string(), "--background", "1,1,1", "-o",
               (dir / "override.ppm").string()})
              .code == 0);
  REQUIRE(run({"render", ico, "--camera", "from=1,0.5,1;size=80x60", "--style", "toon", "--levels", "4",
               "--line-width", "2", "--smoothing", "catmull-rom", "--line-color", "0.1,0.2,0.6", "-o",
               (dir / "white.ppm").string()})
              .code == 0);
  CHECK(slurp(dir / "override.ppm") == slurp(dir / "white.ppm"));
  CHECK(slurp(dir / "override.ppm") != slurp(dir / "file.ppm"));
}

TEST_CASE("pass graph from the config file") {
  const fs::path dir = scratch("passes");
  std::ofstream(dir / "graph.json") << R"({
    "camera": "from=1,0.8,1.2;size=64x64",
    "contours": [],
    "background": [0, 0, 0],
    "passes": [
      {"type": "surface", "style": "normal", "target": "nrm"},
      {"type": "image", "input": "nrm", "op": "sobel"}
    ]
  })";
  std::ofstream(dir / "cube.obj") << "v -1 -1 -1\nv 1 -1 -1\nv 1 1 -1\nv -1 1 -1\n"
                                     "v -1 -1 1\nv 1 -1 1\nv 1 1 1\nv -1 1 1\n"
                                     "f 1 4 3\nf 1 3 2\nf 5 6 7\nf 5 7 8\nf 1 2 6\nf 1 6 5\n"
                                     "f 2 3 7\nf 2 7 6\nf 3 4 8\nf 3 8 7\nf 4 1 5\nf 4 5 8\n";
  REQUIRE(run({"render", (dir / "cube.obj").string(), "--config", (dir / "graph.json").string(), "-o",
               (dir / "edges.ppm").string()})
              .code == 0);
  const npr::ImageBuffer img = npr::read_ppm(dir / "edges.ppm");
  int lit = 0;
  for (auto v : img.data()) lit += v != 0;
  CHECK(lit > 0);

  std::ofstream(dir / "unbound.json") << R"({"passes": [{"type": "image", "input": "nowhere"}]})";
  const auto r = run({"render", (dir / "cube.obj").string(), "--config", (dir / "unbound.json").string(), "-o",
                      (dir / "x.ppm").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("UnboundTexture") != std::string::npos);
}
