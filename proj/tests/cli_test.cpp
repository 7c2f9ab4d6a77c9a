#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

std::string g_binary;

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = "'" + g_binary + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    ADD_FAILURE() << "popen failed for: " << cmd;
    return {};
  }
  CommandResult result;
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int count = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size())) {
    ++count;
  }
  return count;
}

bool pure_ascii(const std::string& text) {
  for (unsigned char c : text) {
    if (c >= 128) return false;
  }
  return true;
}

TEST(Identities, PassAtTwo) {
  const CommandResult r = run_cli("identities --d 2");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("all identities hold"), std::string::npos);
  EXPECT_NE(r.output.find("X = H Z H"), std::string::npos);
  EXPECT_NE(r.output.find("PASS"), std::string::npos);
  EXPECT_EQ(r.output.find("FAIL"), std::string::npos);
}

TEST(Identities, PassAtSeven) {
  const CommandResult r = run_cli("identities --d 7");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("all identities hold"), std::string::npos);
}

TEST(Identities, JsonReport) {
  const CommandResult r = run_cli("identities --d 3 --output json");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const nlohmann::json j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j.at("d"), 3);
  EXPECT_TRUE(j.at("pass").get<bool>());
  ASSERT_FALSE(j.at("checks").empty());
  for (const nlohmann::json& check : j.at("checks")) {
    EXPECT_TRUE(check.at("pass").get<bool>()) << check.dump();
    EXPECT_LE(check.at("deviation").get<double>(), 1e-9);
  }
}

TEST(Deconstruct, TextWalkthrough) {
  const CommandResult r = run_cli("deconstruct --d 2");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  for (char label = 'a'; label <= 'f'; ++label) {
    EXPECT_NE(r.output.find(std::string("stage ") + label + ":"), std::string::npos)
        << "missing stage " << label;
  }
  EXPECT_EQ(count_occurrences(r.output, "PASS"), 5);
  EXPECT_NE(r.output.find("all 5 steps verified"), std::string::npos);
}

TEST(Deconstruct, JsonTrace) {
  const CommandResult r = run_cli("deconstruct --d 3 --output json");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const nlohmann::json j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j.at("d"), 3);
  ASSERT_EQ(j.at("stages").size(), 6u);
  ASSERT_EQ(j.at("steps").size(), 5u);
  for (const nlohmann::json& step : j.at("steps")) {
    EXPECT_TRUE(step.at("report").at("pass").get<bool>()) << step.dump();
  }
  // Every stage after the first uses inverse gates somewhere.
  for (std::size_t i = 1; i < 6; ++i) {
    bool any_dagger = false;
    for (const nlohmann::json& gate : j.at("stages")[i].at("gates")) {
      any_dagger = any_dagger || gate.at("dagger").get<bool>();
    }
    EXPECT_TRUE(any_dagger) << "stage " << i;
  }
}

TEST(Deconstruct, EmitJsonMatchesStdout) {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "qdc_cli_emit_test.json";
  std::filesystem::remove(path);
  const CommandResult r =
      run_cli("deconstruct --d 2 --output json --emit-json '" + path.string() + "'");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  std::ifstream in(path, std::ios::binary);
  ASSERT_TRUE(in.is_open());
  std::stringstream file_bytes;
  file_bytes << in.rdbuf();
  EXPECT_EQ(file_bytes.str(), r.output);
  EXPECT_NO_THROW(nlohmann::json::parse(file_bytes.str()));
  std::filesystem::remove(path);
}

TEST(Deconstruct, TraceBytesAreReproducible) {
  const CommandResult first = run_cli("deconstruct --d 3 --output json");
  const CommandResult second = run_cli("deconstruct --d 3 --output json");
  ASSERT_EQ(first.exit_code, 0);
  ASSERT_EQ(second.exit_code, 0);
  EXPECT_EQ(first.output, second.output);
}

TEST(Deconstruct, AsciiCharsetSelection) {
  const CommandResult plain = run_cli("deconstruct --d 2 --ascii plain");
  ASSERT_EQ(plain.exit_code, 0);
  EXPECT_TRUE(pure_ascii(plain.output));
  const CommandResult unicode = run_cli("deconstruct --d 2");
  ASSERT_EQ(unicode.exit_code, 0);
  EXPECT_FALSE(pure_ascii(unicode.output));
}

TEST(Protocol, DecodesMessage) {
  const CommandResult r = run_cli("protocol --d 2 --x 1 --y 0");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("decoded (x=1, y=0)"), std::string::npos);
  EXPECT_NE(r.output.find("automated circuit agrees"), std::string::npos);
}

TEST(Protocol, RejectsDigitOutsideDimension) {
  const CommandResult r = run_cli("protocol --d 3 --x 3");
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_NE(r.output.find("error:"), std::string::npos);
}

TEST(Protocol, SamplingIsSeeded) {
  const std::string args = "protocol --d 3 --x 2 --y 2 --shots 100 --seed 7";
  const CommandResult first = run_cli(args);
  const CommandResult second = run_cli(args);
  ASSERT_EQ(first.exit_code, 0) << first.output;
  EXPECT_EQ(first.output, second.output);
  // The readout is deterministic, so every shot lands on the sent message.
  EXPECT_NE(first.output.find("|2,2> x 100"), std::string::npos);
}

TEST(Protocol, JsonOutcome) {
  const CommandResult r = run_cli("protocol --d 3 --x 2 --y 1 --output json --shots 50");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const nlohmann::json j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j.at("d"), 3);
  EXPECT_EQ(j.at("x"), 2);
  EXPECT_EQ(j.at("y"), 1);
  EXPECT_EQ(j.at("decoded_x"), 2);
  EXPECT_EQ(j.at("decoded_y"), 1);
  EXPECT_NEAR(j.at("probability").get<double>(), 1.0, 1e-9);
  EXPECT_LE(j.at("automated_deviation").get<double>(), 1e-9);
  EXPECT_EQ(j.at("shots").at("|2,1>"), 50);
}

TEST(Bell, TextAnnotatesAmplitudes) {
  const CommandResult r = run_cli("bell --d 2");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("[+1/sqrt(2)]"), std::string::npos);
  EXPECT_NE(r.output.find("[-1/sqrt(2)]"), std::string::npos);
  EXPECT_NE(r.output.find("max off-diagonal overlap"), std::string::npos);
}

TEST(Bell, ListsEveryMessageState) {
  const CommandResult r = run_cli("bell --d 3");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(count_occurrences(r.output, "(x="), 9);
}

TEST(Bell, JsonStates) {
  const CommandResult r = run_cli("bell --d 2 --output json");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const nlohmann::json j = nlohmann::json::parse(r.output);
  EXPECT_TRUE(j.at("pass").get<bool>());
  ASSERT_EQ(j.at("states").size(), 4u);
  const nlohmann::json& base = j.at("states")[0];
  EXPECT_EQ(base.at("x"), 0);
  EXPECT_EQ(base.at("y"), 0);
  ASSERT_EQ(base.at("amplitudes").size(), 4u);
  EXPECT_NEAR(base.at("amplitudes")[0][0].get<double>(), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(base.at("amplitudes")[0][1].get<double>(), 0.0, 1e-12);
  EXPECT_LE(j.at("max_off_diagonal").get<double>(), 1e-9);
}

TEST(Usage, ErrorsUseExitCodeTwo) {
  EXPECT_EQ(run_cli("").exit_code, 2);
  EXPECT_EQ(run_cli("identities --bogus").exit_code, 2);
  EXPECT_EQ(run_cli("identities --d 1").exit_code, 2);
  EXPECT_EQ(run_cli("identities --d 17").exit_code, 2);
  EXPECT_EQ(run_cli("deconstruct --output yaml").exit_code, 2);
}

TEST(Usage, HelpSucceeds) {
  const CommandResult r = run_cli("--help");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("identities"), std::string::npos);
  EXPECT_NE(r.output.find("deconstruct"), std::string::npos);
}

}  // namespace

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_test <path-to-cli-binary>\n");
    return 1;
  }
  g_binary = argv[1];
  return RUN_ALL_TESTS();
}
