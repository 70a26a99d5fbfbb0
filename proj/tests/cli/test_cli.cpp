#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dssi/optics.hpp"
#include "dssi/synthetic.hpp"
#include "dssi/tensor_io.hpp"
#include "dssi/unfolding.hpp"
#include "json.hpp"

namespace dssi {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun dssi(std::vector<std::string> args) {
  args.insert(args.begin(), "dssi");
  std::ostringstream out, err;
  const int code = tools::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dssi_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write_demo(std::size_t side = 40, std::size_t bands = 6) {
    ASSERT_EQ(dssi({"synth", "--out-dir", dir_.string(), "--height", std::to_string(side), "--width",
                    std::to_string(side), "--bands", std::to_string(bands), "--psf-size", "5", "--seed", "3"})
                  .code,
              0);
  }

  std::vector<std::string> reconstruct_args(const std::string& out) const {
    return {"reconstruct", "--coded", path("j.htns"), "--psf", path("psf.htns"), "--response", path("response.csv"),
            "--out", out};
  }

  CliRun simulate(const std::string& out, std::vector<std::string> extra = {}) {
    std::vector<std::string> a = {"simulate", "--cube", path("cube.htns"), "--psf", path("psf.htns"),
                                  "--response", path("response.csv"), "--out", out};
    a.insert(a.end(), extra.begin(), extra.end());
    return dssi(a);
  }

  fs::path dir_;
};

TEST_F(CliTest, IdentityOpticsNoNoiseCopiesFirstThreeBands) {
  const auto cube = synthetic::random_cube(6, 5, 4, 1);
  save_tensor(to_tensor(cube), path("cube.htns"));
  save_tensor(kernels_to_tensor(std::vector<Kernel>(4, Kernel::delta(1))), path("psf.htns"));
  save_response_csv(SpectralResponse::identity(4), synthetic::band_wavelengths(4), path("response.csv"));
  const auto r = simulate(path("j.htns"), {"--noise", "none"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = to_coded_image(load_tensor(path("j.htns")));
  for (std::size_t y = 0; y < 6; ++y)
    for (std::size_t x = 0; x < 5; ++x)
      for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(j(y, x, c), cube(y, x, c));
}

TEST_F(CliTest, SimulateIsDeterministicAcrossRunsAndThreadCounts) {
  write_demo();
  const std::vector<std::string> noise = {"--noise", "gaussian=7e-5,poisson_bits=14", "--seed", "7"};
  ASSERT_EQ(simulate(path("a.htns"), noise).code, 0);
  ASSERT_EQ(simulate(path("b.htns"), noise).code, 0);
  auto threaded = noise;
  threaded.insert(threaded.end(), {"--threads", "4"});
  ASSERT_EQ(simulate(path("c.htns"), threaded).code, 0);
  EXPECT_EQ(read_file_bytes(path("a.htns")), read_file_bytes(path("b.htns")));
  EXPECT_EQ(read_file_bytes(path("a.htns")), read_file_bytes(path("c.htns")));
  const auto manifest = read_file_bytes(path("a.htns.manifest.json"));
  ASSERT_EQ(simulate(path("a.htns"), noise).code, 0);
  EXPECT_EQ(read_file_bytes(path("a.htns.manifest.json")), manifest);
  ASSERT_EQ(simulate(path("d.htns"), {"--seed", "8"}).code, 0);
  EXPECT_NE(read_file_bytes(path("a.htns")), read_file_bytes(path("d.htns")));
}

TEST_F(CliTest, ManifestRecordsConfigAndChecksums) {
  write_demo();
  ASSERT_EQ(simulate(path("j.htns"), {"--noise", "calibrated", "--seed", "5", "--boundary", "valid", "--gt-out",
                                      path("gt.htns")})
                .code,
            0);
  std::ifstream in(path("j.htns.manifest.json"));
  const auto m = nlohmann::json::parse(in);
  EXPECT_EQ(m["command"], "simulate");
  EXPECT_EQ(m["config"]["seed"], 5);
  EXPECT_EQ(m["config"]["gaussian_sigma"], 7e-5);
  EXPECT_EQ(m["config"]["poisson_bits"], 14);
  EXPECT_EQ(m["config"]["boundary"], "valid");
  EXPECT_EQ(m["outputs"]["coded"]["fnv1a64"].get<std::string>().size(), 16u);
  EXPECT_TRUE(m["inputs"].contains("cube"));
  EXPECT_FALSE(m.dump().find("time") != std::string::npos);

  const auto j = to_coded_image(load_tensor(path("j.htns")));
  const auto gt = to_cube(load_tensor(path("gt.htns")));
  EXPECT_EQ(j.height(), 36u);
  EXPECT_EQ(gt.height(), 36u);
  EXPECT_EQ(gt.width(), 36u);
}

TEST_F(CliTest, HqsMatchesAdmmWithZeroZetaByteForByte) {
  write_demo();
  ASSERT_EQ(simulate(path("j.htns")).code, 0);
  auto hqs = reconstruct_args(path("hqs.htns"));
  hqs.insert(hqs.end(), {"--method", "hqs", "--trace", path("hqs.csv"), "--manifest", path("m1.json")});
  auto admm = reconstruct_args(path("admm.htns"));
  admm.insert(admm.end(), {"--zeta", "0", "--trace", path("admm.csv"), "--manifest", path("m2.json")});
  ASSERT_EQ(dssi(hqs).code, 0);
  ASSERT_EQ(dssi(admm).code, 0);
  EXPECT_EQ(read_file_bytes(path("hqs.htns")), read_file_bytes(path("admm.htns")));
  EXPECT_EQ(read_file_bytes(path("hqs.csv")), read_file_bytes(path("admm.csv")));
}

TEST_F(CliTest, SingleStageWritesInitializer) {
  write_demo();
  ASSERT_EQ(simulate(path("j.htns")).code, 0);
  auto a = reconstruct_args(path("r.htns"));
  a.insert(a.end(), {"--stages", "1", "--init", "mean"});
  ASSERT_EQ(dssi(a).code, 0);
  const auto j = to_coded_image(load_tensor(path("j.htns")));
  const auto op = build_frequency_operator(OpticalSystem::identity(6), j.height(), j.width());
  EXPECT_EQ(to_cube(load_tensor(path("r.htns"))), MeanInitializer().initialize(j, op));
}

TEST_F(CliTest, TraceCsvHasOneRowPerStage) {
  write_demo();
  ASSERT_EQ(simulate(path("j.htns")).code, 0);
  auto a = reconstruct_args(path("r.htns"));
  a.insert(a.end(), {"--stages", "4", "--trace", path("t.csv")});
  ASSERT_EQ(dssi(a).code, 0);
  std::ifstream in(path("t.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "stage,fidelity,delta,gamma");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST_F(CliTest, ReconstructionImprovesOnInitialization) {
  write_demo(64, 8);
  ASSERT_EQ(simulate(path("j.htns"), {"--gt-out", path("gt.htns")}).code, 0);
  auto init = reconstruct_args(path("init.htns"));
  init.insert(init.end(), {"--stages", "1"});
  ASSERT_EQ(dssi(init).code, 0);
  ASSERT_EQ(dssi(reconstruct_args(path("r.htns"))).code, 0);
  const auto a = dssi({"evaluate", "--recon", path("init.htns"), "--gt", path("gt.htns")});
  const auto b = dssi({"evaluate", "--recon", path("r.htns"), "--gt", path("gt.htns")});
  EXPECT_GT(nlohmann::json::parse(b.out)["psnr_db"].get<double>(),
            nlohmann::json::parse(a.out)["psnr_db"].get<double>());
}

TEST_F(CliTest, EvaluateReportsAndCrop) {
  const auto cube = synthetic::random_cube(64, 64, 3, 1);
  save_tensor(to_tensor(cube), path("x.htns"));
  auto r = dssi({"evaluate", "--recon", path("x.htns"), "--gt", path("x.htns")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rep = nlohmann::json::parse(r.out);
  EXPECT_EQ(rep["psnr_db"], 100.0);
  EXPECT_EQ(rep["sam_rad"], 0.0);
  EXPECT_EQ(rep["ssim"], 1.0);
  EXPECT_EQ(rep["crop"], 20);
  r = dssi({"evaluate", "--recon", path("x.htns"), "--gt", path("x.htns"), "--crop", "0"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["crop"], 0);

  r = dssi({"evaluate", "--recon", path("x.htns"), "--gt", path("x.htns"), "--recon", path("x.htns"), "--gt",
            path("x.htns"), "--out", path("e.jsonl")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("deg"), std::string::npos);
  std::ifstream in(path("e.jsonl"));
  std::string line;
  int n = 0;
  while (std::getline(in, line)) ++n;
  EXPECT_EQ(n, 2);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(dssi({}).code, 1);
  EXPECT_EQ(dssi({"reconstruct"}).code, 1);
  EXPECT_EQ(dssi({"evaluate", "--recon", path("missing.htns"), "--gt", path("missing.htns")}).code, 3);

  const auto a = synthetic::random_cube(64, 64, 3, 1);
  const auto b = synthetic::random_cube(64, 63, 3, 1);
  save_tensor(to_tensor(a), path("a.htns"));
  save_tensor(to_tensor(b), path("b.htns"));
  EXPECT_EQ(dssi({"evaluate", "--recon", path("a.htns"), "--gt", path("b.htns")}).code, 2);
  EXPECT_EQ(dssi({"evaluate", "--recon", path("a.htns"), "--gt", path("a.htns"), "--crop", "32"}).code, 1);
  EXPECT_EQ(dssi({"evaluate", "--recon", path("a.htns")}).code, 1);

  write_file_bytes(path("bad.htns"), {'N', 'O', 'P', 'E'});
  EXPECT_EQ(dssi({"evaluate", "--recon", path("bad.htns"), "--gt", path("a.htns")}).code, 2);

  write_demo();
  ASSERT_EQ(simulate(path("j.htns")).code, 0);
  auto bad = reconstruct_args(path("r.htns"));
  bad.insert(bad.end(), {"--denoiser", "bm3d"});
  const auto r = dssi(bad);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("tv"), std::string::npos);
  bad = reconstruct_args(path("r.htns"));
  bad.insert(bad.end(), {"--init", "learned"});
  EXPECT_EQ(dssi(bad).code, 1);
  bad = reconstruct_args(path("r.htns"));
  bad.insert(bad.end(), {"--gamma-schedule", "geometric:0.01,0.5"});
  EXPECT_EQ(dssi(bad).code, 1);
}

TEST_F(CliTest, ConfigFilePrecedenceAndDump) {
  write_demo();
  ASSERT_EQ(simulate(path("j.htns")).code, 0);
  const auto dumped = dssi({"reconstruct", "--dump-config"});
  ASSERT_EQ(dumped.code, 0);
  EXPECT_NE(dumped.out.find("stages=7"), std::string::npos);
  EXPECT_NE(dumped.out.find("gamma-schedule=\"geometric:0.01,4\""), std::string::npos);

  std::ofstream(path("run.cfg")) << "# demo\nstages=3\ninit=adjoint\ntrace=" << path("t.csv") << "\n";
  auto a = reconstruct_args(path("r.htns"));
  a.insert(a.end(), {"--config", path("run.cfg"), "--stages", "2"});
  ASSERT_EQ(dssi(a).code, 0);
  std::ifstream in(path("r.htns.manifest.json"));
  const auto m = nlohmann::json::parse(in);
  EXPECT_EQ(m["config"]["stages"], 2);
  EXPECT_EQ(m["config"]["init"], "adjoint");
  EXPECT_TRUE(fs::exists(path("t.csv")));

  std::ofstream(path("bad.cfg")) << "stagez=3\n";
  a = reconstruct_args(path("r.htns"));
  a.insert(a.end(), {"--config", path("bad.cfg")});
  EXPECT_EQ(dssi(a).code, 1);
}

TEST_F(CliTest, ExportsPgmAndCsv) {
  write_demo(32, 4);
  ASSERT_EQ(simulate(path("j.htns")).code, 0);
  auto a = reconstruct_args(path("r.htns"));
  a.insert(a.end(), {"--stages", "2", "--export-pgm", path("pgm"), "--export-csv", path("r.csv")});
  ASSERT_EQ(dssi(a).code, 0);
  const auto pgm = read_file_bytes(path("pgm/band_003.pgm"));
  const std::string header = "P5\n32 32\n255\n";
  ASSERT_EQ(pgm.size(), header.size() + 32 * 32);
  EXPECT_EQ(std::string(pgm.begin(), pgm.begin() + static_cast<long>(header.size())), header);
  std::ifstream in(path("r.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "y,x,b0,b1,b2,b3");
}

TEST_F(CliTest, BenchSmokeOmitsDenseAboveGuard) {
  const auto r = dssi({"bench", "--sizes", "8,32", "--bands", "5", "--repeats", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "height,width,bands,method,gdm_iters,repeats,median_s");
  int dense8 = 0, dense32 = 0, rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.rfind("8,8,5,dense", 0) == 0) ++dense8;
    if (line.rfind("32,32,5,dense", 0) == 0) ++dense32;
  }
  EXPECT_EQ(rows, 5);
  EXPECT_EQ(dense8, 1);
  EXPECT_EQ(dense32, 0);
}

TEST_F(CliTest, OracleCheck) {
  auto r = dssi({"oracle-check", "--trials", "6"});
  EXPECT_EQ(r.code, 0) << r.out;
  r = dssi({"oracle-check", "--trials", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  r = dssi({"oracle-check", "--trials", "4", "--inject-conjugate-bug"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("BREACH"), std::string::npos);
  EXPECT_EQ(dssi({"oracle-check", "--help"}).out.find("inject"), std::string::npos);
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(tools::fnv1a64({}), 0xcbf29ce484222325ULL);
  EXPECT_EQ(tools::fnv1a64({'a'}), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace dssi
