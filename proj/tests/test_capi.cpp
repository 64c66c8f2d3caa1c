/*
 * Copyright 2026 The sipgains authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "sipgains/sipgains.h"

namespace {

std::string temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("problem loading and accessors through the C surface") {
  sipg_problem* problem = nullptr;
  REQUIRE(sipg_problem_from_config_text("model.name = toy2d\n", &problem) == SIPG_OK);
  CHECK(sipg_problem_state_dim(problem) == 2);
  CHECK(sipg_problem_input_dim(problem) == 2);
  CHECK(sipg_problem_measurement_dim(problem) == 2);
  CHECK(sipg_problem_horizon(problem) == 1);
  CHECK(sipg_problem_memory(problem) == 1);
  CHECK(sipg_problem_seed(problem) == 0);
  CHECK(sipg_problem_default_runs(problem) == 1000);
  sipg_problem_free(problem);
}

TEST_CASE("config errors surface as statuses with messages") {
  sipg_problem* problem = nullptr;
  CHECK(sipg_problem_from_config_text("model.name = toy2d\nwat = 1\n", &problem) ==
        SIPG_ERR_PARSE);
  CHECK(std::strlen(sipg_last_error()) > 0);
  CHECK(sipg_problem_from_config_file("/nonexistent/config.cfg", &problem) == SIPG_ERR_IO);
  CHECK(sipg_problem_from_config_text(nullptr, &problem) == SIPG_ERR_INVALID_ARG);
  CHECK(std::string(sipg_status_name(SIPG_ERR_PARSE)) == "parse_error");
}

TEST_CASE("feasible box through the C surface reproduces the toy bounds") {
  sipg_problem* problem = nullptr;
  REQUIRE(sipg_problem_from_config_text("model.name = toy2d\n", &problem) == SIPG_OK);
  double lo[2], hi[2];
  REQUIRE(sipg_feasible_box(problem, 1, lo, hi) == SIPG_OK);
  CHECK(lo[0] == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(hi[0] == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(lo[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-3));
  CHECK(hi[1] == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(sipg_feasible_box(problem, 5, lo, hi) == SIPG_ERR_INVALID_ARG);
  sipg_problem_free(problem);
}

TEST_CASE("feasible sampling writes the cloud and its box sidecar") {
  const std::string dir = temp_dir("sipg_capi_cloud");
  sipg_problem* problem = nullptr;
  REQUIRE(sipg_problem_from_config_text("model.name = toy2d\n", &problem) == SIPG_OK);
  const std::string path = dir + "/cloud.csv";
  double rate = 0.0;
  REQUIRE(sipg_feasible_sample(problem, 1, 100, 3, path.c_str(), &rate) == SIPG_OK);
  CHECK(rate > 0.0);
  CHECK(std::filesystem::exists(path));
  CHECK(std::filesystem::exists(dir + "/cloud_box.csv"));
  sipg_problem_free(problem);
}

TEST_CASE("synthesize, save gains, reload and validate end to end") {
  const std::string dir = temp_dir("sipg_capi_synth");
  sipg_problem* problem = nullptr;
  REQUIRE(sipg_problem_from_config_text(
              "model.name = toy2d\nreduction.max_iterations = 6\nreduction.max_scenarios = 6\n",
              &problem) == SIPG_OK);

  sipg_synthesis_options options{};
  options.override_seed = 1;
  options.seed = 42;
  sipg_synthesis* synthesis = nullptr;
  REQUIRE(sipg_synthesize(problem, &options, &synthesis) == SIPG_OK);
  CHECK(sipg_synthesis_iterations(synthesis) >= 1);
  CHECK(sipg_synthesis_scenario_count(synthesis) >= 1);
  const std::string termination = sipg_synthesis_termination(synthesis);
  CHECK((termination == "converged" || termination == "scenario_cap" ||
         termination == "iteration_cap"));

  REQUIRE(sipg_synthesis_write(synthesis, dir.c_str()) == SIPG_OK);
  CHECK(std::filesystem::exists(dir + "/gains.txt"));
  CHECK(std::filesystem::exists(dir + "/report.txt"));
  CHECK(std::filesystem::exists(dir + "/history.csv"));

  sipg_gains* gains = nullptr;
  REQUIRE(sipg_gains_from_synthesis(synthesis, &gains) == SIPG_OK);
  CHECK(sipg_gains_has_tau(gains) == 1);
  CHECK(sipg_gains_tau(gains) == doctest::Approx(sipg_synthesis_tau(synthesis)));

  const std::string gains_path = dir + "/gains_copy.txt";
  REQUIRE(sipg_gains_save(gains, gains_path.c_str()) == SIPG_OK);
  sipg_gains* reloaded = nullptr;
  REQUIRE(sipg_gains_load(gains_path.c_str(), &reloaded) == SIPG_OK);
  CHECK(sipg_gains_tau(reloaded) == sipg_gains_tau(gains));

  sipg_validation* validation = nullptr;
  REQUIRE(sipg_validate(problem, reloaded, 64, 7, &validation) == SIPG_OK);
  CHECK(sipg_validation_min_cost(validation) <= sipg_validation_avg_cost(validation));
  CHECK(sipg_validation_avg_cost(validation) <= sipg_validation_max_cost(validation));
  CHECK(sipg_validation_acceptance_rate(validation) > 0.0);
  REQUIRE(sipg_validation_write(validation, reloaded, (dir + "/validation").c_str()) == SIPG_OK);
  CHECK(std::filesystem::exists(dir + "/validation/report.txt"));
  CHECK(std::filesystem::exists(dir + "/validation/runs.csv"));
  CHECK(std::filesystem::exists(dir + "/validation/cloud.csv"));

  sipg_validation_free(validation);
  sipg_gains_free(reloaded);
  sipg_gains_free(gains);
  sipg_synthesis_free(synthesis);
  sipg_problem_free(problem);
}

TEST_CASE("validation rejects gains with mismatched dimensions") {
  sipg_problem* toy = nullptr;
  REQUIRE(sipg_problem_from_config_text("model.name = toy2d\n", &toy) == SIPG_OK);
  sipg_problem* quad = nullptr;
  REQUIRE(sipg_problem_from_config_text("model.name = quadrotor\npolicy.kind = two_step\n",
                                        &quad) == SIPG_OK);

  // Gains written for the quadrotor cannot validate the toy problem.
  const std::string dir = temp_dir("sipg_capi_mismatch");
  const std::string path = dir + "/gains.txt";
  {
    std::ofstream out(path);
    out << "format = sipgains-gains-v1\nlags = 0\nn_u = 2\nn_y = 3\nhorizon = 7\n";
    for (int j = 0; j < 7; ++j) out << "u_bar." << j << " = 4.905 4.905\n";
  }
  sipg_gains* gains = nullptr;
  REQUIRE(sipg_gains_load(path.c_str(), &gains) == SIPG_OK);
  sipg_validation* validation = nullptr;
  CHECK(sipg_validate(toy, gains, 8, 1, &validation) == SIPG_ERR_INVALID_ARG);

  sipg_gains_free(gains);
  sipg_problem_free(toy);
  sipg_problem_free(quad);
}
