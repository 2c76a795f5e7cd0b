// Writes CSV and SVG profiles for the reference parameter sets into the
// directory given as the first argument (default: current directory).

#include <filesystem>
#include <fstream>
#include <iostream>

#include "cnoidal/cnoidal.hpp"
#include "../tests/figures.hpp"

using namespace cnoidal;

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : ".";
  std::filesystem::create_directories(dir);
  auto panels = figures::cnoidal_panels();
  for (auto& p : figures::solitary_panels()) panels.push_back(p);
  for (const auto& fig : panels) {
    const SolutionParams s = fig.solitary ? m1_limit(fig.request) : build_family(fig.request);
    const auto prof = sample_profile(s);
    std::ofstream csv(dir / ("fig" + fig.name + ".csv"), std::ios::binary);
    write_csv(csv, prof);
    std::ofstream svg(dir / ("fig" + fig.name + ".svg"));
    write_svg(svg, prof, "Fig. " + fig.name + " (" + std::string(family_name(fig.request.family)) + ")");
    std::cout << "fig" << fig.name << ": residual " << ode_residual(s, fig.request.params).relative << '\n';
  }
}
