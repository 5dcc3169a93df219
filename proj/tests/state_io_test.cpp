#include "qdwf/state_io.hpp"

#include <gtest/gtest.h>

#include <random>

#include "qdwf/quantops.hpp"
#include "qdwf/transform.hpp"
#include "test_util.hpp"

using namespace qdwf;
using namespace qdwf::testing;
using nlohmann::json;

namespace {

StateFile density_file(const DensityMatrix& rho, int n) {
  StateFile f;
  f.representation = Representation::density;
  f.n = n;
  f.data = rho;
  return f;
}

}  // namespace

TEST(StateIoTest, DensityRoundTrip) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 3; ++n) {
    const DensityMatrix rho = random_density(n, rng);
    const json j = state_to_json(density_file(rho, n));
    const StateFile back = state_from_json(j);
    EXPECT_EQ(back.representation, Representation::density);
    EXPECT_EQ(back.n, n);
    EXPECT_NEAR(max_abs_diff(back.density().mat, rho.mat), 0.0, 1e-15);
    EXPECT_EQ(j["meta"]["modulus"].get<unsigned>(), Field::standard_modulus(n));
  }
}

TEST(StateIoTest, StokesAndDwfRoundTrip) {
  std::mt19937_64 rng(2);
  const PhaseSpace space = PhaseSpace::standard(2);
  const auto ops = build_phase_point_operators(space, build_mubs(space), QuantumNet::canonical(space));
  const DensityMatrix rho = random_density(2, rng);

  StateFile s;
  s.representation = Representation::stokes;
  s.n = 2;
  s.data = stokes_from_density(rho);
  const StateFile s_back = state_from_json(state_to_json(s));
  EXPECT_NEAR((s_back.stokes().values - s.stokes().values).cwiseAbs().maxCoeff(), 0.0, 1e-15);

  StateFile w;
  w.representation = Representation::dwf;
  w.n = 2;
  w.net_index = 5;
  w.data = dwf_from_density(rho, ops);
  const json j = state_to_json(w);
  EXPECT_EQ(j["net_index"].get<std::uint64_t>(), 5u);
  const StateFile w_back = state_from_json(j);
  EXPECT_EQ(*w_back.net_index, 5u);
  EXPECT_NEAR((w_back.dwf().values - w.dwf().values).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(StateIoTest, RejectsInvalidStates) {
  // Trace != 1.
  json bad_density = state_to_json(density_file(pure_density(ket_h()), 1));
  bad_density["data"]["re"][0][0] = 2.0;
  EXPECT_THROW(state_from_json(bad_density), ValidationError);

  // Non-Hermitian.
  json non_herm = state_to_json(density_file(pure_density(ket_h()), 1));
  non_herm["data"]["im"][0][1] = 0.5;
  EXPECT_THROW(state_from_json(non_herm), ValidationError);

  // Not positive semidefinite.
  json non_psd = state_to_json(density_file(pure_density(ket_h()), 1));
  non_psd["data"]["re"][0][0] = 1.5;
  non_psd["data"]["re"][1][1] = -0.5;
  EXPECT_THROW(state_from_json(non_psd), ValidationError);

  // Stokes with wrong leading component.
  json stokes = {{"representation", "stokes"}, {"n", 1}, {"data", {1.0, 0.0, 0.0, 0.5}}};
  EXPECT_THROW(state_from_json(stokes), ValidationError);

  // DWF must carry net_index and sum to 1.
  json dwf = {{"representation", "dwf"}, {"n", 1}, {"data", {0.5, 0.5, 0.0, 0.0}}};
  EXPECT_THROW(state_from_json(dwf), ValidationError);
  dwf["net_index"] = 0;
  EXPECT_NO_THROW(state_from_json(dwf));
  dwf["net_index"] = 8;
  EXPECT_THROW(state_from_json(dwf), ValidationError);
  dwf["net_index"] = 0;
  dwf["data"] = {0.5, 0.5, 0.5, 0.0};
  EXPECT_THROW(state_from_json(dwf), ValidationError);

  // net_index is forbidden outside dwf files.
  json density_with_net = state_to_json(density_file(pure_density(ket_h()), 1));
  density_with_net["net_index"] = 0;
  EXPECT_THROW(state_from_json(density_with_net), ValidationError);
}

TEST(StateIoTest, RejectsSchemaErrors) {
  EXPECT_THROW(state_from_json(json{{"n", 1}}), ValidationError);
  EXPECT_THROW(state_from_json(json{{"representation", "foo"}, {"n", 1}, {"data", json::array()}}),
               ValidationError);
  EXPECT_THROW(state_from_json(json{{"representation", "stokes"}, {"n", 9}, {"data", json::array()}}),
               ValidationError);
  // Wrong payload size.
  EXPECT_THROW(state_from_json(json{{"representation", "stokes"}, {"n", 1}, {"data", {0.5, 0.5}}}),
               ValidationError);
  // Modulus mismatch in metadata.
  json j = state_to_json(density_file(pure_density(ket_h()), 1));
  j["meta"]["modulus"] = 7;
  EXPECT_THROW(state_from_json(j), ValidationError);
}
