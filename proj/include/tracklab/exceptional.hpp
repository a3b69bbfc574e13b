#pragma once

#include <string>
#include <vector>

#include "tracklab/curves.hpp"

namespace tracklab {

/// Two-holed projective plane N(1,2).
struct N12Report {
  std::vector<std::string> pml;  // the two projective classes
  std::vector<bool> one_sided;
  Rational iota_gamma_eta = 1;
  int two_sided_curves = 0;
  bool ml_plus_empty = true;
  int group_order = 4;
  // action[g][p]: image of pml point p under mapping class g
  std::vector<std::vector<int>> action;
  int orbits = 0;
};

N12Report n12_orbits();

struct N21Step {
  long long n = 0;
  Interval bounds;      // i(gamma_n, beta)
  Interval normalized;  // bounds / n
};

struct N21Report {
  int two_sided_curves = 1;
  int max_components = 2;
  Rational limit;  // i(gamma_0, alpha) * i(alpha, beta)
  std::vector<N21Step> steps;
};

/// gamma_n = D_alpha^n(gamma_0) on the one-holed Klein bottle.
N21Report n21_twist_orbit(long long n_max, const Rational& i_g0_alpha, const Rational& i_alpha_beta,
                          const Rational& i_g0_beta);

struct N30Report {
  int pml_dimension = 2;  // a 2-sphere
  std::string pml_plus = "circle = PML(one-holed torus T)";
  int complement_disks = 2;
  bool gamma_disjoint_from_two_sided = true;
  bool ml_plus_supported_in_T = true;
  std::string mapping_class_group = "Map(T)";
};

N30Report n30_structure();

}  // namespace tracklab
