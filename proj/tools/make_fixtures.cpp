#include <cstdio>
#include <filesystem>

#include "gsrm/fixtures.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s OUT_DIR\n", argv[0]);
    return 2;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);
  try {
    gsrm::save_pgm_file(gsrm::make_plain_map(), dir / "plain.pgm");
    gsrm::save_pgm_file(gsrm::make_rooms_map(), dir / "rooms.pgm");
    gsrm::save_pgm_file(gsrm::make_den_map(), dir / "den.pgm");
    gsrm::save_pgm_file(gsrm::make_slam_map(), dir / "slam.pgm");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "make_fixtures: %s\n", e.what());
    return 1;
  }
  return 0;
}
