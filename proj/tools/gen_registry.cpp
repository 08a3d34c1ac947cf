#include <cstdio>
#include <string>

#include "lie/pairs.hpp"

int main(int argc, char** argv) {
  std::string path = argc > 1 ? argv[1] : "data/registry.json";
  lie::registry_save(path);
  std::printf("wrote %zu pair descriptors to %s\n", lie::registry_labels().size(), path.c_str());
  return 0;
}
