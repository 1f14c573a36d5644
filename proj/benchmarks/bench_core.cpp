#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "oedg/oe_filter.hpp"
#include "oedg/problems.hpp"
#include "oedg/projections.hpp"
#include "oedg/run.hpp"
#include "oedg/spatial_operator.hpp"
#include "oedg/time_integration.hpp"

namespace {

oedg::DGSolution1D smooth_euler_state(int n, int k, std::shared_ptr<const oedg::Mesh1D>& mesh,
                                      oedg::Model& model) {
  using namespace oedg;
  const ProblemSpec spec = make_problem("euler-smooth", [&] {
    ProblemParams p;
    p.n = n;
    p.k = k;
    return p;
  }());
  mesh = build_uniform_1d(spec.x_lo, spec.x_hi, spec.n, BoundaryKind::Periodic);
  model = spec.model;
  return l2_project_1d(mesh, spec.k, model.n_comp, spec.ic1);
}

void BM_Residual1D(benchmark::State& state) {
  using namespace oedg;
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  std::shared_ptr<const Mesh1D> mesh;
  Model model;
  DGSolution1D sol = smooth_euler_state(n, k, mesh, model);
  Operator1D op(mesh, model, BCSet1D::all_periodic(), FluxKind::LocalLaxFriedrichs, k);
  DGSolution1D out = sol;
  for (auto _ : state) {
    op.residual(sol, 0.0, out);
    benchmark::DoNotOptimize(out.coeff.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Residual1D)->Args({1024, 2})->Args({4096, 2})->Args({1024, 3});

void BM_Filter1D(benchmark::State& state) {
  using namespace oedg;
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  std::shared_ptr<const Mesh1D> mesh;
  Model model;
  DGSolution1D sol = smooth_euler_state(n, k, mesh, model);
  OEFilter1D filter(mesh, model, BCSet1D::all_periodic(), k);
  const double tau = 1e-4;
  for (auto _ : state) {
    DGSolution1D work = sol;
    filter.apply(work, tau, 0.0, DampingVariant::ScaleInvariant);
    benchmark::DoNotOptimize(work.coeff.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Filter1D)->Args({1024, 2})->Args({4096, 2})->Args({1024, 3});

void BM_Step2D(benchmark::State& state) {
  using namespace oedg;
  const int nx = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  ProblemParams p;
  p.nx = nx;
  p.ny = nx;
  p.k = k;
  const ProblemSpec spec = make_problem("euler-smooth-2d", p);
  std::array<BoundaryKind, 4> sides;
  sides.fill(BoundaryKind::Periodic);
  auto mesh = build_uniform_2d(spec.x_lo, spec.x_hi, spec.nx, spec.y_lo, spec.y_hi, spec.ny,
                               sides);
  DGSolution2D sol = l2_project_2d(mesh, spec.k, spec.model.n_comp, spec.ic2);
  auto op = std::make_shared<Operator2D>(mesh, spec.model, spec.bcs2, spec.flux, spec.k);
  auto filter = std::make_shared<const OEFilter2D>(mesh, spec.model, spec.bcs2, spec.k);
  Stepper2D stepper(op, filter, make_scheme(RKKind::SspRk3));
  const double tau = compute_dt(sol, spec.model, spec.cfl);
  for (auto _ : state) {
    DGSolution2D work = sol;
    stepper.step(work, tau, 0.0);
    benchmark::DoNotOptimize(work.coeff.data());
  }
  state.SetItemsProcessed(state.iterations() * nx * nx);
}
BENCHMARK(BM_Step2D)->Args({64, 2})->Args({128, 2});

}  // namespace

BENCHMARK_MAIN();
