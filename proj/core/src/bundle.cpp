#include "orb/bundle.hpp"

#include <Eigen/SVD>
#include <queue>

#include "orb/errors.hpp"

namespace orb {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Connecting arrows rep -> x for every object, unit at the representative.
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

}  // namespace

std::optional<BundleViolation> bundle_validate(const VectorBundle& e, double tol) {
  const Groupoid& g = *e.base;
  if (static_cast<int>(e.fiber_dim.size()) != g.objects())
    throw InputError("bundle: fibre dimension list has wrong length");
  if (static_cast<int>(e.action.size()) != g.arrows())
    throw InputError("bundle: one matrix per arrow required");
  for (int d : e.fiber_dim)
    if (d < 0) throw InputError("bundle: negative fibre dimension");
  for (int a = 0; a < g.arrows(); ++a)
    if (e.action[a].rows() != e.fiber_dim[g.tgt(a)] || e.action[a].cols() != e.fiber_dim[g.src(a)])
      throw InputError("bundle: matrix shape mismatch at arrow " + std::to_string(a));

  for (int x = 0; x < g.objects(); ++x) {
    const Matrix& u = e.action[g.unit(x)];
    double err = max_abs(u - Matrix::Identity(u.rows(), u.cols()));
    if (err > tol)
      return BundleViolation{"unit", g.unit(x), err, "unit arrow does not act as the identity"};
  }
  for (int a = 0; a < g.arrows(); ++a) {
    const Matrix& m = e.action[a];
    if (m.rows() == 0) continue;
    Eigen::JacobiSVD<Matrix> svd(m);
    double smin = svd.singularValues().minCoeff();
    if (smin <= tol)
      return BundleViolation{"invertibility", a, smin, "arrow matrix is numerically singular"};
  }
  for (int a = 0; a < g.arrows(); ++a)
    for (int b : g.arrows_from(g.tgt(a))) {
      int ab = g.compose(a, b);
      double err = max_abs(e.action[ab] - e.action[b] * e.action[a]);
      if (err > tol)
        return BundleViolation{"composition", ab, err,
                               "matrix of composite differs from the product"};
    }
  return std::nullopt;
}

VectorBundle trivial_bundle(GroupoidPtr g, int rank) {
  VectorBundle e;
  e.fiber_dim.assign(g->objects(), rank);
  e.action.assign(g->arrows(), Matrix::Identity(rank, rank));
  e.base = std::move(g);
  return e;
}

VectorBundle line_bundle_from_character(GroupoidPtr point_groupoid,
                                        const std::vector<std::complex<double>>& values) {
  if (point_groupoid->objects() != 1)
    throw InputError("line_bundle_from_character expects a one-object groupoid");
  if (static_cast<int>(values.size()) != point_groupoid->arrows())
    throw InputError("character values must match the loop count");
  VectorBundle e;
  e.base = point_groupoid;
  e.fiber_dim = {1};
  for (auto v : values) {
    Matrix m(1, 1);
    m(0, 0) = v;
    e.action.push_back(m);
  }
  return e;
}

GoodnessReport is_good(const VectorBundle& e, double tol) {
  const Groupoid& g = *e.base;
  GoodnessReport report;
  for (int a = 0; a < g.arrows(); ++a) {
    if (g.src(a) != g.tgt(a)) continue;
    const Matrix& m = e.action[a];
    if (max_abs(m - Matrix::Identity(m.rows(), m.cols())) > tol) report.bad_loops.push_back(a);
  }
  report.good = report.bad_loops.empty();
  return report;
}

SectionBasis invariant_sections(const VectorBundle& e, double tol) {
  const Groupoid& g = *e.base;
  auto orbits = orbits_and_isotropy(g);
  auto path = transport_arrows(g, orbits);

  SectionBasis out;
  for (int o = 0; o < orbits.count(); ++o) {
    const Isotropy& iso = orbits.isotropy[o];
    const int rep = orbits.representatives[o];
    const int d = e.fiber_dim[rep];
    if (d == 0) {
      out.per_orbit_dimension.push_back(0);
      continue;
    }
    Matrix reynolds = Matrix::Zero(d, d);
    for (int loop : iso.loop_arrows) reynolds += e.action[loop];
    reynolds /= static_cast<double>(iso.loop_arrows.size());

    // the image of the averaging projector is the joint fixed subspace
    Eigen::JacobiSVD<Matrix> svd(reynolds, Eigen::ComputeThinU);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > std::max(tol, 1e-12)) ++rank;
    out.per_orbit_dimension.push_back(rank);

    for (int i = 0; i < rank; ++i) {
      Vector v = svd.matrixU().col(i);
      // project onto the fixed space so the basis vector is exactly invariant
      v = reynolds * v;
      std::vector<Vector> section(g.objects());
      for (int x = 0; x < g.objects(); ++x) section[x] = Vector::Zero(e.fiber_dim[x]);
      for (int x : orbits.orbits[o]) section[x] = e.action[path[x]] * v;
      out.basis.push_back(std::move(section));
    }
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

VectorBundle whitney_sum(const VectorBundle& e, const VectorBundle& f) {
  if (e.base != f.base) throw InputError("whitney_sum: bundles over different groupoids");
  VectorBundle s;
  s.base = e.base;
  const Groupoid& g = *e.base;
  s.fiber_dim.resize(g.objects());
  for (int x = 0; x < g.objects(); ++x) s.fiber_dim[x] = e.fiber_dim[x] + f.fiber_dim[x];
  s.action.resize(g.arrows());
  for (int a = 0; a < g.arrows(); ++a) {
    Matrix m = Matrix::Zero(s.fiber_dim[g.tgt(a)], s.fiber_dim[g.src(a)]);
    m.topLeftCorner(e.action[a].rows(), e.action[a].cols()) = e.action[a];
    m.bottomRightCorner(f.action[a].rows(), f.action[a].cols()) = f.action[a];
    s.action[a] = std::move(m);
  }
  return s;
}

VectorBundle tensor(const VectorBundle& e, const VectorBundle& f) {
  if (e.base != f.base) throw InputError("tensor: bundles over different groupoids");
  VectorBundle t;
  t.base = e.base;
  const Groupoid& g = *e.base;
  t.fiber_dim.resize(g.objects());
  for (int x = 0; x < g.objects(); ++x) t.fiber_dim[x] = e.fiber_dim[x] * f.fiber_dim[x];
  t.action.resize(g.arrows());
  for (int a = 0; a < g.arrows(); ++a) {
    const Matrix& A = e.action[a];
    const Matrix& B = f.action[a];
    Matrix m(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
      for (int j = 0; j < A.cols(); ++j)
        m.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    t.action[a] = std::move(m);
  }
  return t;
}

VectorBundle pullback(const GroupoidHom& f, const VectorBundle& e) {
  if (f.cod != e.base) throw InputError("pullback: bundle does not live over the codomain");
  VectorBundle p;
  p.base = f.dom;
  p.fiber_dim.resize(f.dom->objects());
  for (int x = 0; x < f.dom->objects(); ++x) p.fiber_dim[x] = e.fiber_dim[f.obj_map[x]];
  p.action.resize(f.dom->arrows());
  for (int a = 0; a < f.dom->arrows(); ++a) p.action[a] = e.action[f.arr_map[a]];
  return p;
}

VectorBundle subbundle_from_frames(const VectorBundle& e, const OrbitData& orbits,
                                   const std::vector<Matrix>& frames, double tol) {
  const Groupoid& g = *e.base;
  if (static_cast<int>(frames.size()) != orbits.count())
    throw InputError("subbundle_from_frames: one frame per orbit required");
  auto path = transport_arrows(g, orbits);

  // fibre basis at every object: transported frame
  std::vector<Matrix> frame_at(g.objects());
  VectorBundle sub;
  sub.base = e.base;
  sub.fiber_dim.assign(g.objects(), 0);
  for (int o = 0; o < orbits.count(); ++o) {
    const Matrix& F = frames[o];
    if (F.rows() != e.fiber_dim[orbits.representatives[o]])
      throw InputError("subbundle_from_frames: frame rows mismatch fibre dimension");
    for (int x : orbits.orbits[o]) {
      frame_at[x] = e.action[path[x]] * F;
      sub.fiber_dim[x] = static_cast<int>(F.cols());
    }
  }
  sub.action.resize(g.arrows());
  for (int a = 0; a < g.arrows(); ++a) {
    const Matrix& Fs = frame_at[g.src(a)];
    const Matrix& Ft = frame_at[g.tgt(a)];
    // coordinates of action * Fs in the target frame; frames have orthonormal
    // columns at representatives but transported frames need a solve
    if (Ft.cols() == 0 || Fs.cols() == 0) {
      sub.action[a] = Matrix::Zero(Ft.cols(), Fs.cols());
      continue;
    }
    Matrix rhs = e.action[a] * Fs;
    Matrix coeff = Ft.colPivHouseholderQr().solve(rhs);
    if (max_abs(Ft * coeff - rhs) > tol * std::max(1.0, max_abs(rhs)))
      throw NumericalError("subbundle frame is not invariant under an arrow action");
    sub.action[a] = std::move(coeff);
  }
  return sub;
}

}  // namespace orb
