#include "cli.hpp"

#include <fstream>
#include <sstream>

namespace mergeguard::cli {

namespace {

// One unrolled iteration. Variant A changes the `p` update, variant B the
// `q` update; everything else is shared by all four versions.
void iteration(std::ostream& os, int j, bool edit_a, bool edit_b) {
  os << "// iteration " << j << "\n"
     << "t := a[" << j << "];\n"
     << "u := t * 2 - s;\n"
     << "v := u + t * 3;\n"
     << "if (t > m) {\n"
     << "  m := t;\n"
     << "  k := " << j << ";\n"
     << "} else {\n"
     << "  s := s + t;\n"
     << "  w := w + u;\n"
     << "}\n";
  for (int i = 0; i < 10; ++i)
    os << "d" << i % 6 << " := d" << (i + 1) % 6 << " + d" << (i + 3) % 6 << " * " << (j + i) % 5 + 1
       << " - v;\n";
  os << "p := p + " << j << (edit_a ? " + 1" : "") << ";\n";
  os << "r := r * 2 + u;\n"
     << "g := g + v - r * 3;\n"
     << "h := h - g + t;\n";
  for (int i = 0; i < 14; ++i)
    os << "e" << i % 5 << " := e" << (i + 2) % 5 << " - e" << (i + 4) % 5 << " + " << (j * 7 + i) % 11
       << " * h;\n";
  os << "q := q + " << (edit_b ? 2 : 1) << ";\n";
}

std::string program(int n, bool edit_a, bool edit_b) {
  std::ostringstream os;
  os << "s := 0;\nm := 0;\nk := 0;\np := 0;\nq := 0;\n";
  for (int j = 0; j < n; ++j) iteration(os, j, edit_a, edit_b);
  os << "out[0] := p;\nout[1] := q;\nout[2] := h + m + k;\nout[3] := e0 + d0;\n";
  return os.str();
}

}  // namespace

std::array<std::string, 4> unroll_scenario(int n) {
  return {program(n, false, false), program(n, true, false), program(n, false, true),
          program(n, true, true)};
}

void make_unroll_corpus(const std::filesystem::path& dir, const std::vector<int>& unrolls) {
  static const char* kNames[] = {"base.imp", "a.imp", "b.imp", "merge.imp"};
  for (int n : unrolls) {
    std::ostringstream name;
    name << "unroll-" << (n < 10 ? "0" : "") << n;
    auto sub = dir / name.str();
    std::filesystem::create_directories(sub);
    auto files = unroll_scenario(n);
    for (int i = 0; i < 4; ++i) std::ofstream(sub / kNames[i]) << files[i];
    std::ofstream(sub / "expect") << "verified\n";
  }
}

}  // namespace mergeguard::cli
