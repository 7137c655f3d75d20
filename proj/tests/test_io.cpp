#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "dsea/io.hpp"
#include "json.hpp"

using namespace dsea;

TEST_CASE("fnv1a reference vectors") {
  CHECK(fnv1a("") == 14695981039346656037ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
  CHECK(fnv1a("a") != fnv1a("b"));
}

TEST_CASE("atomic write replaces the file content") {
  const std::string path = "test_io_atomic.tmp";
  atomic_write(path, "first");
  atomic_write(path, "second");
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "second");
  std::remove(path.c_str());
}

TEST_CASE("state checkpoints round-trip exactly") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  QuantumState s;
  s.amplitudes = Eigen::VectorXcd(17);
  for (long i = 0; i < 17; ++i) s.amplitudes(i) = cplx(gauss(rng), gauss(rng));
  s.time = 3.25;

  const QuantumState back = deserialize_state(serialize_state(s));
  REQUIRE(back.amplitudes.size() == 17);
  CHECK(back.time == s.time);
  for (long i = 0; i < 17; ++i) CHECK(back.amplitudes(i) == s.amplitudes(i));
}

TEST_CASE("operator checkpoints round-trip exactly") {
  SparseC m(5, 5);
  m.insert(0, 3) = cplx(1.5, -0.25);
  m.insert(3, 0) = cplx(1.5, 0.25);
  m.insert(2, 2) = 7.0;
  m.makeCompressed();
  OperatorMatrix op{m, true};

  const OperatorMatrix back = deserialize_operator(serialize_operator(op));
  CHECK(back.hermitian);
  CHECK(Eigen::MatrixXcd(back.mat) == Eigen::MatrixXcd(op.mat));
}

TEST_CASE("result JSON is parseable and carries the headline numbers") {
  FluctuationResult r;
  r.n0 = 2.5;
  r.variance_total = 4.0;
  r.stddev = 2.0;
  r.asymptotic_total = 4.1;
  r.asymptotic_stddev = std::sqrt(4.1);
  SpeciesFluctuation sf;
  sf.id = "f";
  sf.variance = 4.0;
  sf.case_label = FluctCase::case2;
  r.per_species.push_back(sf);

  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["n0"].get<double>() == 2.5);
  CHECK(j["stddev"].get<double>() == 2.0);
  REQUIRE(j.contains("per_species"));
  CHECK(j["per_species"][0]["id"].get<std::string>() == "f");

  EquilibriumReport rep;
  rep.times = {0.0, 1.0};
  rep.tv = {0.01, 0.02};
  rep.bins = 50;
  const auto je = nlohmann::json::parse(to_json(rep));
  CHECK(je["tv"].size() == 2);
  CHECK(je["bins"].get<int>() == 50);

  MeasurementReport mr;
  mr.occupancy1 = 0.5;
  mr.occupancy2 = 0.5;
  mr.expected1 = 0.5;
  mr.expected2 = 0.5;
  mr.trajectories = 10;
  const auto jm = nlohmann::json::parse(to_json(mr));
  CHECK(jm["occupancy"][0].get<double>() == 0.5);
  CHECK(jm["trajectories"].get<int>() == 10);
}

TEST_CASE("CSV outputs carry their headers") {
  EnsembleResult res;
  res.times = {0.0};
  res.seed = 9;
  Configuration c;
  c.positions = {Eigen::Vector3d(1.0, 0, 0)};
  res.samples = {{c}};
  res.aborted = {0};
  const std::string csv = trajectories_csv(res);
  CHECK(csv.rfind("# seed=9", 0) == 0);
  CHECK(csv.find("trajectory,t,x,y,z,aborted") != std::string::npos);

  FluctuationResult r;
  r.n0 = 1.0;
  r.stddev = 0.5;
  const std::string fc = fluct_csv({r}, {{1.0, 2.0}});
  CHECK(fc.rfind("b,cutoff,n0", 0) == 0);
  CHECK(fc.find("0.5") != std::string::npos);
}
