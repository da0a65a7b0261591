#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hullforge/props.hpp"

namespace hullforge {

struct BidiscSpec {
  double R1 = 0.0, R2 = 0.0, q = 0.0;
};

// Cover of the closed beta-ball by scaled bidiscs q(D1 x D2) with
// R1^2 + R2^2 = 1; found by scanning R1 over a uniform grid and certifying
// arc coverage in modulus space. Throws CoverSearchFailed.
std::vector<BidiscSpec> bidisc_cover(double beta);
Certificate bidisc_cover_certificate(double beta, const std::vector<BidiscSpec>& cover);

// Serializable summaries of the per-level solves.
struct Level1Bidisc {
  BidiscSpec spec;
  std::int64_t nf = 0, ng = 0;
  double s1 = 0.0, s2 = 0.0, a = 0.0, r_prime = 1.0, bidisc_radius = 0.0, B_actual = 0.0;
  double eps = 0.0;
};

struct TemplateSolve {
  double t = 0.0, nu = 0.0, psi = 0.0;
  double s1 = 0.0, s2 = 0.0, a = 0.0, r_prime = 1.0, w_cov = 0.0, b = 1.0, B_actual = 0.0;
  std::int64_t n = 0;
  double eps = 0.0;
};

struct ClassSolve {
  double s_class = 0.0, sigma = 0.0, eps = 0.0;
  double t3 = 0.0, s_star = 0.0, alpha = 0.0, a3 = 0.0, C = 0.0, D = 0.0;
  double rho = 0.0, r_prime3 = 1.0, r_prime4 = 1.0, B3 = 0.0;
  std::int64_t n3 = 0;
  std::int64_t lattice_count = 0;  // the lattice itself is implicit in (s, sigma, alpha)
  TemplateSolve templ;
  std::vector<std::int64_t> parent_ids;
};

struct GenerationRecord {
  int level = 1;
  double eps_level = 0.0;
  double r_level = 1.0;
  std::vector<double> s_values;
  std::vector<SolidTorus> tori;  // fully materialized at level 1, spot tori deeper
  std::vector<Certificate> certificates;
  std::vector<std::pair<std::int64_t, std::int64_t>> parent_map;  // child -> parent
  std::vector<Level1Bidisc> bidiscs;  // level 1
  std::vector<ClassSolve> classes;    // level >= 2
  std::int64_t virtual_count = 0;     // lazily represented tori
};

enum class TreeStatus { Complete, PartialWithWitness };

struct ConstructionTree {
  double beta = 0.5;
  std::vector<GenerationRecord> generations;
  std::vector<Certificate> hull_chain;  // per level: beta-ball coverage chain
  TreeStatus status = TreeStatus::Complete;
  std::string status_note;
};

struct Budget {
  std::int64_t max_tori_per_level = 2'000'000;
  double max_wall_seconds = 3600.0;
};

// Proposition 4 for one unitary-equivalence class of parent tori, with the
// lattice tori replaced by one proposition-2 template solved at the disc
// centre and gate-replayed at the lattice extremes.
struct Prop4Result {
  Prop3Result p3;
  Prop2Result p2;  // template at s(g) = s
  std::vector<double> s_values;
  double rho = 0.0, r_prime = 1.0;
  std::int64_t virtual_count = 0;
  std::vector<Certificate> certs;
};
Prop4Result prop4_cover(double s, double sigma, double eps, double B, double resolution,
                        int level, const std::string& tag);

GenerationRecord build_generation_1(double beta, double eps, double B, double resolution);

GenerationRecord refine_generation(const GenerationRecord& prev, double eps_next, double B,
                                   double resolution);

// Largest eps of the form eps0 * 2^-k passing all gates.
double choose_epsilon(double eps0, const std::function<bool(double)>& gates,
                      int max_halvings = 60);

ConstructionTree build_cantor_tree(double beta, int depth, const Budget& budget, double B,
                                   double eps_initial, double resolution);

struct CoverageStep {
  std::string kind;  // bidisc_cover / eq4 / eq22 / eq24 ...
  std::string detail;
  double margin = 0.0;
};
struct CoveragePath {
  bool covered = false;
  std::vector<CoverageStep> steps;
};
CoveragePath point_coverage_query(const ConstructionTree& tree, const ComplexPoint2& z,
                                  int level);

}  // namespace hullforge
