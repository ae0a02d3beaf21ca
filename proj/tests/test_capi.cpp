#include <doctest.h>

#include <cstring>
#include <string>

#include "vqbench.h"

namespace {
const std::string kRepo = VQB_REPO_DIR;
}

TEST_CASE("C API observable lifecycle") {
  vqb_observable* obs = nullptr;
  REQUIRE(vqb_observable_load((kRepo + "/data/h2_0.735.obs").c_str(), &obs) ==
          VQB_OK);
  CHECK(vqb_observable_n_qubits(obs) == 4);
  CHECK(vqb_observable_n_terms(obs) == 15);
  double e = 0.0;
  CHECK(vqb_observable_ground_energy(obs, &e) == VQB_OK);
  CHECK(e == doctest::Approx(-1.1372469264956702));
  vqb_observable_free(obs);
  vqb_observable_free(nullptr);  // no-op
}

TEST_CASE("C API reports errors through codes and messages") {
  vqb_observable* obs = nullptr;
  CHECK(vqb_observable_load("/nonexistent.obs", &obs) == VQB_ERR_PARSE);
  CHECK(std::strlen(vqb_last_error()) > 0);
  CHECK(vqb_observable_load(nullptr, &obs) == VQB_ERR_CONTRACT);
}

TEST_CASE("C API transpilation counts") {
  vqb_transpile_counts counts{};
  char* text = nullptr;
  REQUIRE(vqb_transpile_ansatz((kRepo + "/targets/marmot.tgt").c_str(), 4,
                               &counts, &text) == VQB_OK);
  CHECK(counts.two_qubit_gates == 4);
  CHECK(counts.depth <= 14);
  CHECK(std::string(text).find("two-qubit gates: 4") != std::string::npos);
  vqb_string_free(text);

  double marmot = 0.0, manila = 0.0;
  CHECK(vqb_estimate_ansatz_duration((kRepo + "/targets/marmot.tgt").c_str(),
                                     (kRepo + "/data/marmot.cal").c_str(), 4,
                                     &marmot) == VQB_OK);
  CHECK(vqb_estimate_ansatz_duration((kRepo + "/targets/manila.tgt").c_str(),
                                     (kRepo + "/data/manila.cal").c_str(), 4,
                                     &manila) == VQB_OK);
  CHECK(marmot / manila > 100.0);
}

TEST_CASE("C API config and run") {
  vqb_config* cfg = nullptr;
  REQUIRE(vqb_config_new(&cfg) == VQB_OK);
  CHECK(vqb_config_set(cfg, "observable",
                       (kRepo + "/data/h2_0.735.obs").c_str()) == VQB_OK);
  CHECK(vqb_config_set(cfg, "target", (kRepo + "/targets/marmot.tgt").c_str()) ==
        VQB_OK);
  CHECK(vqb_config_set(cfg, "seeds", "2") == VQB_OK);
  CHECK(vqb_config_set(cfg, "iterations", "3") == VQB_OK);
  CHECK(vqb_config_set(cfg, "bogus", "1") == VQB_ERR_PARSE);

  vqb_summary summary{};
  REQUIRE(vqb_run_vqe(cfg, nullptr, 0, &summary) == VQB_OK);
  CHECK(summary.seeds_used == 2);
  CHECK(summary.e_fci == doctest::Approx(-1.1372469264956702));
  CHECK(summary.mean_final < 0.0);
  vqb_config_free(cfg);
}
