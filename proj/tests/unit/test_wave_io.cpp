#include "support.hpp"

#include "deepwave/wave_io.hpp"

#include <filesystem>
#include <fstream>

using namespace deepwave;
using deepwave::testing::error_of;
using deepwave::testing::small_wave;

TEST_SUITE("wave_io") {
  TEST_CASE("round trip is exact") {
    const auto& w = small_wave();
    const std::string text = io::wave_to_json(w);
    const auto back = io::wave_from_json(text);
    CHECK(back.N == w.N);
    CHECK(back.L == w.L);
    CHECK(back.speed() == w.speed());
    CHECK(back.params.sigma == w.params.sigma);
    CHECK((back.y - w.y).cwiseAbs().maxCoeff() == 0.0);
    CHECK(io::wave_to_json(back) == text);
    CHECK(io::wave_checksum(back) == io::wave_checksum(w));
  }

  TEST_CASE("tampering is detected") {
    std::string text = io::wave_to_json(small_wave());
    const auto pos = text.find("\"L\": ");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 6, "\"L\": 6");
    CHECK(error_of([&] { io::wave_from_json(text); }) == ErrorCode::data_integrity);
    CHECK(error_of([] { io::wave_from_json("{not json"); }) == ErrorCode::data_integrity);
    CHECK(error_of([] { io::wave_from_json("{}"); }) == ErrorCode::data_integrity);
  }

  TEST_CASE("file errors are io errors") {
    CHECK(error_of([] { io::import_wave("/nonexistent/wave.json"); }) == ErrorCode::io);
    CHECK(error_of([] { io::export_wave(small_wave(), "/nonexistent/dir/wave.json"); }) ==
          ErrorCode::io);
    const auto path = std::filesystem::temp_directory_path() / "deepwave_io_test.json";
    io::export_wave(small_wave(), path);
    CHECK(io::import_wave(path).N == small_wave().N);
    std::filesystem::remove(path);
  }
}
