// Writes the generated pencils under samples/. The hand-written samples
// (staircase, split dP4, singular, malformed) are not produced here.
//
//   make_samples <dir>

#include <fstream>
#include <iostream>

#include "pencillab/io.hpp"

using namespace pencillab;

namespace {

void write(const std::string& path, const io::json& j) {
  std::ofstream(path) << j.dump(2) << "\n";
  std::cout << path << "\n";
}

void pair(const std::string& dir, const std::string& stem, const GeneratedPencil& g) {
  write(dir + "/" + stem + ".json", io::pencil_to_json(g.pencil));
  write(dir + "/" + stem + "_plane.json", io::subspace_to_json(g.plane));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_samples <dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  // Good reduction at 3 with the planted line; used by `count --ell`.
  pair(dir, "planted_n5_r1", ff::seeded_good_reduction(5, 1, 3, 1).generated);
  // Discriminant splits over F_25; reduced scheme of length 5.
  pair(dir, "split_n4_r1_p5", ff::seeded_good_reduction(4, 1, 5, 1, true, 2000).generated);
  // Too large to enumerate 3-planes over F_7.
  write(dir + "/generic_n9.json", io::pencil_to_json(random_generic_pencil(9, 3)));
  return 0;
}
