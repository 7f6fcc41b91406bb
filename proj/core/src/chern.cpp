#include "orb/chern.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>

#include "orb/errors.hpp"

namespace orb {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<int> transport_arrows(const Groupoid& g, const OrbitData& orbits) {
  std::vector<int> path(g.objects(), -1);
  for (int rep : orbits.representatives) {
    path[rep] = g.unit(rep);
    std::queue<int> q;
    q.push(rep);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int a : g.arrows_from(x)) {
        int y = g.tgt(a);
        if (path[y] < 0) {
          path[y] = g.compose(path[x], a);
          q.push(y);
        }
      }
    }
  }
  return path;
}

int numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return r;
}

}  // namespace

int loop_order(const Groupoid& g, int loop_arrow) {
  const int u = g.unit(g.src(loop_arrow));
  int order = 1, x = loop_arrow;
  while (x != u) {
    x = g.compose(x, loop_arrow);
    ++order;
  }
  return order;
}

CanonicalAutomorphism canonical_automorphism(const VectorBundle& e, double tol) {
  CanonicalAutomorphism out;
  out.inertia = inertia_groupoid(e.base);
  out.pulled_back = pullback(out.inertia.basepoint, e);
  const LoopSpace& ls = out.inertia.loops;
  out.loop_automorphism.reserve(ls.count());
  for (int l = 0; l < ls.count(); ++l) out.loop_automorphism.push_back(e.action[ls.loops[l]]);

  // the automorphism must commute with the inertia action
  const Groupoid& ig = *out.inertia.groupoid;
  for (int a = 0; a < ig.arrows(); ++a) {
    auto [d, l] = out.inertia.arrow_labels[a];
    const Matrix& m = out.pulled_back.action[a];
    double err = max_abs(out.loop_automorphism[ig.tgt(a)] * m - m * out.loop_automorphism[l]);
    if (err > tol)
      throw NumericalError("canonical automorphism does not commute with the inertia action");
  }
  return out;
}

EigenDecomposition eigenbundle_decomposition(const VectorBundle& e, double tol) {
  const Groupoid& g = *e.base;
  EigenDecomposition out;
  out.orbits = inertia_orbits(g);
  const LoopSpace& ls = out.orbits.loops;
  out.per_loop.resize(ls.count());

  for (int l = 0; l < ls.count(); ++l) {
    const int arrow = ls.loops[l];
    const int n = loop_order(g, arrow);
    const int d = e.fiber_dim[ls.base[l]];
    const Matrix& phi = e.action[arrow];

    std::vector<Matrix> powers(n, Matrix::Identity(d, d));
    for (int k = 1; k < n; ++k) powers[k] = phi * powers[k - 1];

    Matrix completeness = Matrix::Zero(d, d);
    std::vector<Matrix> all;
    for (int j = 0; j < n; ++j) {
      std::complex<double> theta =
          std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / n);
      Matrix p = Matrix::Zero(d, d);
      for (int k = 0; k < n; ++k) p += std::pow(theta, -k) * powers[k];
      p /= static_cast<double>(n);
      completeness += p;
      all.push_back(p);

      double trace = p.trace().real();
      int rank = static_cast<int>(std::lround(trace));
      if (std::abs(trace - rank) > tol * std::max(1.0, static_cast<double>(d)))
        throw NumericalError("eigenprojector trace is not close to an integer");
      if (max_abs(p * p - p) > tol)
        throw NumericalError("eigenprojector is not idempotent to tolerance");
      if (rank == 0) continue;  // zero pieces are omitted
      EigenPiece piece;
      piece.root_index = j;
      piece.loop_order = n;
      piece.eigenvalue = theta;
      piece.projector = std::move(p);
      piece.rank = rank;
      out.per_loop[l].push_back(std::move(piece));
    }
    if (max_abs(completeness - Matrix::Identity(d, d)) > tol)
      throw NumericalError("eigenprojectors do not sum to the identity");
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i + 1; j < all.size(); ++j)
        if (max_abs(all[i] * all[j]) > tol)
          throw NumericalError("eigenprojectors are not mutually orthogonal");
  }

  // rank constancy along inertia orbits (conjugate loops share their order)
  for (int l = 0; l < ls.count(); ++l) {
    int rep = out.orbits.representatives[out.orbits.orbit_of[l]];
    const auto& a = out.per_loop[l];
    const auto& b = out.per_loop[rep];
    bool same = a.size() == b.size();
    for (size_t i = 0; same && i < a.size(); ++i)
      same = a[i].root_index == b[i].root_index && a[i].loop_order == b[i].loop_order &&
             a[i].rank == b[i].rank;
    if (!same)
      throw NumericalError("eigenbundle ranks are not constant along an inertia orbit");
  }
  return out;
}

ChDelocValue ch_deloc(const VectorBundle& e, double tol) {
  const Groupoid& g = *e.base;
  auto orbits = inertia_orbits(g);
  ChDelocValue out;
  out.values.resize(orbits.count());
  out.orbit_representative_loop.resize(orbits.count());
  for (int o = 0; o < orbits.count(); ++o) {
    int rep = orbits.representatives[o];
    out.orbit_representative_loop[o] = orbits.loops.loops[rep];
    out.values[o] = e.action[orbits.loops.loops[rep]].trace();
  }
  // traces are conjugation-invariant; verify constancy along each orbit
  for (int l = 0; l < orbits.loops.count(); ++l) {
    std::complex<double> v = e.action[orbits.loops.loops[l]].trace();
    if (std::abs(v - out.values[orbits.orbit_of[l]]) > tol)
      throw NumericalError("delocalised Chern character is not constant on an inertia orbit");
  }
  return out;
}

ChDelocValue ch_deloc_of_class(const KClass& k, double tol) {
  if (k.plus.base != k.minus.base)
    throw InputError("K-class terms live over different groupoids");
  auto a = ch_deloc(k.plus, tol);
  auto b = ch_deloc(k.minus, tol);
  for (size_t i = 0; i < a.values.size(); ++i) a.values[i] -= b.values[i];
  return a;
}

int k_rank(const Groupoid& g) {
  auto orbits = orbits_and_isotropy(g);
  int rank = 0;
  for (const auto& iso : orbits.isotropy)
    rank += static_cast<int>(conjugacy_classes(iso.group).classes.size());
  return rank;
}

VectorBundle bundle_from_orbit_representation(GroupoidPtr g, const OrbitData& orbits, int orbit,
                                              const std::vector<Matrix>& rep_matrices) {
  const Isotropy& iso = orbits.isotropy[orbit];
  if (rep_matrices.size() != iso.loop_arrows.size())
    throw InputError("bundle_from_orbit_representation: one matrix per isotropy element");
  const int dim = rep_matrices.empty() ? 0 : static_cast<int>(rep_matrices[0].rows());

  auto path = transport_arrows(*g, orbits);
  std::vector<int> loop_elt(g->arrows(), -1);
  for (size_t i = 0; i < iso.loop_arrows.size(); ++i)
    loop_elt[iso.loop_arrows[i]] = static_cast<int>(i);

  VectorBundle e;
  e.base = g;
  e.fiber_dim.assign(g->objects(), 0);
  for (int x : orbits.orbits[orbit]) e.fiber_dim[x] = dim;
  e.action.resize(g->arrows());
  for (int a = 0; a < g->arrows(); ++a) {
    int x = g->src(a), y = g->tgt(a);
    if (orbits.orbit_of[x] != orbit || orbits.orbit_of[y] != orbit) {
      e.action[a] = Matrix::Zero(e.fiber_dim[y], e.fiber_dim[x]);
      continue;
    }
    // conjugate the arrow back to a loop at the representative
    int loop = g->compose(g->compose(path[x], a), g->inverse(path[y]));
    int elt = loop_elt[loop];
    if (elt < 0) throw InternalCheckError("transported arrow is not an isotropy loop");
    e.action[a] = rep_matrices[elt];
  }
  return e;
}

namespace {

// Left regular representation matrices of a finite group: R(h) e_x = e_{h x}.
std::vector<Matrix> regular_representation(const FiniteGroup& h) {
  const int n = h.order();
  std::vector<Matrix> reps(n, Matrix::Zero(n, n));
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < n; ++x) reps[g](h.mul(g, x), x) = 1.0;
  return reps;
}

// Coset-permutation representation of h on the left cosets of the subgroup.
std::vector<Matrix> coset_representation(const FiniteGroup& h, const Subgroup& sub) {
  auto cosets = left_cosets(h, sub);
  const int n = static_cast<int>(cosets.size());
  std::vector<int> coset_of(h.order());
  for (int i = 0; i < n; ++i)
    for (int e : cosets[i]) coset_of[e] = i;
  std::vector<Matrix> reps(h.order(), Matrix::Zero(n, n));
  for (int g = 0; g < h.order(); ++g)
    for (int i = 0; i < n; ++i) reps[g](coset_of[h.mul(g, cosets[i].front())], i) = 1.0;
  return reps;
}

// Characters (traces) of a representation, one entry per conjugacy class.
std::vector<std::complex<double>> character_row(const std::vector<Matrix>& rep,
                                                const ConjugacyData& classes) {
  std::vector<std::complex<double>> row;
  row.reserve(classes.representatives.size());
  for (int r : classes.representatives) row.push_back(rep[r].trace());
  return row;
}

int rank_of_rows(const std::vector<std::vector<std::complex<double>>>& rows, double tol) {
  if (rows.empty()) return 0;
  Matrix m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return numerical_rank(m, tol);
}

// Splits a representation into invariant summands using the eigenspaces of a
// Reynolds-averaged random Hermitian operator (an element of the commutant).
// Summands whose invariance residual is not at rounding scale are dropped.
std::vector<std::vector<Matrix>> split_representation(const std::vector<Matrix>& rep,
                                                      std::uint64_t seed) {
  const int d = static_cast<int>(rep[0].rows());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix b(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) b(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Matrix herm = (b + b.adjoint()) / 2.0;
  Matrix averaged = Matrix::Zero(d, d);
  for (const auto& r : rep) averaged += r * herm * r.adjoint();
  averaged /= static_cast<double>(rep.size());

  Eigen::SelfAdjointEigenSolver<Matrix> eig(averaged);
  const auto& values = eig.eigenvalues();
  const Matrix& vectors = eig.eigenvectors();

  std::vector<std::vector<Matrix>> summands;
  int start = 0;
  for (int i = 1; i <= d; ++i) {
    if (i < d && std::abs(values(i) - values(i - 1)) < 1e-6) continue;
    Matrix frame = vectors.middleCols(start, i - start);
    std::vector<Matrix> summand;
    bool invariant = true;
    for (const auto& r : rep) {
      Matrix coeff = frame.adjoint() * r * frame;
      if (max_abs(r * frame - frame * coeff) > 1e-8) {
        invariant = false;
        break;
      }
      summand.push_back(std::move(coeff));
    }
    if (invariant) summands.push_back(std::move(summand));
    start = i;
  }
  return summands;
}

}  // namespace

std::vector<VectorBundle> spanning_family(GroupoidPtr g) {
  auto orbits = orbits_and_isotropy(*g);
  std::vector<VectorBundle> family;

  for (int o = 0; o < orbits.count(); ++o) {
    const FiniteGroup& h = orbits.isotropy[o].group;
    auto classes = conjugacy_classes(h);
    std::vector<std::vector<std::complex<double>>> rows;

    for (const auto& sub : cyclic_subgroups(h)) {
      auto rep = coset_representation(h, sub);
      rows.push_back(character_row(rep, classes));
      family.push_back(bundle_from_orbit_representation(g, orbits, o, rep));
    }

    // Permutation characters of cyclic subgroups span only the rational class
    // functions; when that is short, refine the regular representation into
    // invariant summands and append those.
    const int want = static_cast<int>(classes.classes.size());
    for (std::uint64_t attempt = 0; attempt < 4 && rank_of_rows(rows, kRankTol) < want;
         ++attempt) {
      auto summands = split_representation(regular_representation(h), 0x05eedba5eULL + attempt);
      for (auto& summand : summands) {
        auto row = character_row(summand, classes);
        auto trial = rows;
        trial.push_back(row);
        if (rank_of_rows(trial, kRankTol) > rank_of_rows(rows, kRankTol)) {
          rows.push_back(std::move(row));
          family.push_back(bundle_from_orbit_representation(g, orbits, o, summand));
          if (rank_of_rows(rows, kRankTol) == want) break;
        }
      }
    }
  }
  return family;
}

RankCheck ch_deloc_rank_check(GroupoidPtr g, double tol) {
  RankCheck check;
  check.expected = inertia_orbit_count(*g);
  check.k_theory_rank = k_rank(*g);

  auto family = spanning_family(g);
  check.matrix = Matrix::Zero(static_cast<int>(family.size()), check.expected);
  for (size_t i = 0; i < family.size(); ++i) {
    auto value = ch_deloc(family[i]);
    for (int o = 0; o < check.expected; ++o) check.matrix(static_cast<int>(i), o) = value.values[o];
  }
  check.numerical_rank = numerical_rank(check.matrix, tol);
  check.pass =
      check.numerical_rank == check.expected && check.k_theory_rank == check.expected;
  return check;
}

}  // namespace orb
