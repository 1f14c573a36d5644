#include "oedg/reference_fv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "oedg/dg_solution.hpp"
#include "oedg/parallel.hpp"
#include "oedg/quadrature.hpp"

namespace oedg {

namespace {

constexpr int kInitQuadPoints = 4;

void mirror_state(const Model& model, const double* u, double* out) {
  for (int c = 0; c < model.n_comp; ++c) out[c] = u[c];
  if (model.is_euler()) out[1] = -u[1];
}

}  // namespace

ReferenceSolution fv_reference_1d(const Model& model, const BCSet1D& bcs, double x_lo, double x_hi,
                                  int n_cells, const SpaceFn1D& u0, double t_final, double cfl) {
  if (n_cells < 2) throw std::invalid_argument("fv_reference_1d: need at least 2 cells");
  if (!(x_hi > x_lo)) throw std::invalid_argument("fv_reference_1d: empty domain");
  if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("fv_reference_1d: cfl must be in (0,1)");
  if (!u0) throw std::invalid_argument("fv_reference_1d: initial condition required");
  const bool periodic = bcs.periodic();
  if (periodic != (bcs.right.kind == BC1D::Kind::Periodic))
    throw std::invalid_argument("fv_reference_1d: periodic boundaries come in pairs");

  const int nc = model.n_comp;
  const double h = (x_hi - x_lo) / n_cells;

  ReferenceSolution ref;
  ref.x_lo = x_lo;
  ref.x_hi = x_hi;
  ref.n_cells = n_cells;
  ref.n_comp = nc;
  ref.t_final = t_final;
  ref.values.assign(static_cast<size_t>(n_cells) * nc, 0.0);

  const QuadratureRule& rule = gauss_legendre(kInitQuadPoints);
  parallel_for(n_cells, [&](long long b, long long e) {
    std::vector<double> st(nc);
    for (long long j = b; j < e; ++j) {
      const double xc = x_lo + (j + 0.5) * h;
      double* cell = ref.values.data() + j * nc;
      for (int q = 0; q < rule.size(); ++q) {
        u0(xc + rule.nodes[q] * h, st.data());
        for (int c = 0; c < nc; ++c) cell[c] += rule.weights[q] * st[c];
      }
    }
  });

  if (t_final <= 0.0) return ref;

  std::vector<double> next(ref.values.size());
  // flux[f] through edge f between cells f-1 and f, f = 0..n_cells.
  std::vector<double> flux(static_cast<size_t>(n_cells + 1) * nc);
  std::vector<double> ghost_l(nc), ghost_r(nc);

  double t = 0.0;
  while (t < t_final) {
    double beta = chunked_max(n_cells, [&](long long b, long long e) {
      double m = 0.0;
      for (long long j = b; j < e; ++j)
        m = std::max(m, max_wave_speed_x(model, ref.values.data() + j * nc));
      return m;
    });
    if (!(beta > 0.0)) throw SolverAbort("fv_reference_1d: zero wave speed, cannot pick a step");
    double tau = cfl * h / beta;
    const double remaining = t_final - t;
    if (remaining <= tau * (1.0 + 1e-8)) {
      tau = remaining;
      t = t_final;
    } else {
      t += tau;
    }

    auto boundary_state = [&](const BC1D& bc, const double* interior, double x_edge,
                              double* ghost) {
      switch (bc.kind) {
        case BC1D::Kind::Outflow:
          for (int c = 0; c < nc; ++c) ghost[c] = interior[c];
          break;
        case BC1D::Kind::Reflective:
          mirror_state(model, interior, ghost);
          break;
        case BC1D::Kind::Inflow:
          bc.inflow(x_edge, t - tau, ghost);
          break;
        case BC1D::Kind::Periodic:
          break;
      }
    };

    if (!periodic) {
      boundary_state(bcs.left, ref.values.data(), x_lo, ghost_l.data());
      boundary_state(bcs.right, ref.values.data() + static_cast<size_t>(n_cells - 1) * nc, x_hi,
                     ghost_r.data());
    }

    const int n_faces = n_cells + 1;
    parallel_for(n_faces, [&](long long b, long long e) {
      for (long long f = b; f < e; ++f) {
        const double* uL;
        const double* uR;
        if (f == 0) {
          uL = periodic ? ref.values.data() + static_cast<size_t>(n_cells - 1) * nc
                        : ghost_l.data();
          uR = ref.values.data();
        } else if (f == n_faces - 1) {
          uL = ref.values.data() + static_cast<size_t>(n_cells - 1) * nc;
          uR = periodic ? ref.values.data() : ghost_r.data();
        } else {
          uL = ref.values.data() + static_cast<size_t>(f - 1) * nc;
          uR = ref.values.data() + static_cast<size_t>(f) * nc;
        }
        numerical_flux(model, FluxKind::LocalLaxFriedrichs, uL, uR, 1.0, 0.0,
                       flux.data() + static_cast<size_t>(f) * nc);
      }
    });

    const double lam = tau / h;
    parallel_for(n_cells, [&](long long b, long long e) {
      for (long long j = b; j < e; ++j) {
        const double* fl = flux.data() + static_cast<size_t>(j) * nc;
        const double* fr = flux.data() + static_cast<size_t>(j + 1) * nc;
        const double* u = ref.values.data() + static_cast<size_t>(j) * nc;
        double* v = next.data() + static_cast<size_t>(j) * nc;
        for (int c = 0; c < nc; ++c) v[c] = u[c] - lam * (fr[c] - fl[c]);
      }
    });
    ref.values.swap(next);

    if (has_nonfinite(ref.values))
      throw SolverAbort("fv_reference_1d: non-finite cell average at t = " + std::to_string(t));
  }
  return ref;
}

namespace {

constexpr char kMagic[9] = "OEDGREF1";

}  // namespace

bool load_reference(const std::string& path, ReferenceSolution& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  if (!in.read(magic, 8) || std::string(magic, 8) != std::string(kMagic, 8)) return false;
  int64_t n = 0, nc = 0;
  double lo = 0, hi = 0, t = 0;
  if (!in.read(reinterpret_cast<char*>(&n), 8) || !in.read(reinterpret_cast<char*>(&nc), 8) ||
      !in.read(reinterpret_cast<char*>(&lo), 8) || !in.read(reinterpret_cast<char*>(&hi), 8) ||
      !in.read(reinterpret_cast<char*>(&t), 8))
    return false;
  if (n <= 0 || n > (1LL << 31) || nc <= 0 || nc > 16) return false;
  ReferenceSolution ref;
  ref.x_lo = lo;
  ref.x_hi = hi;
  ref.n_cells = static_cast<int>(n);
  ref.n_comp = static_cast<int>(nc);
  ref.t_final = t;
  ref.values.resize(static_cast<size_t>(n) * nc);
  if (!in.read(reinterpret_cast<char*>(ref.values.data()),
               static_cast<std::streamsize>(ref.values.size() * sizeof(double))))
    return false;
  out = std::move(ref);
  return true;
}

void save_reference(const std::string& path, const ReferenceSolution& ref) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("save_reference: cannot open " + tmp.string());
    out.write(kMagic, 8);
    const int64_t n = ref.n_cells, nc = ref.n_comp;
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(&nc), 8);
    out.write(reinterpret_cast<const char*>(&ref.x_lo), 8);
    out.write(reinterpret_cast<const char*>(&ref.x_hi), 8);
    out.write(reinterpret_cast<const char*>(&ref.t_final), 8);
    out.write(reinterpret_cast<const char*>(ref.values.data()),
              static_cast<std::streamsize>(ref.values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("save_reference: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

ReferenceSolution cached_reference(const std::string& cache_dir, const std::string& key,
                                   const std::function<ReferenceSolution()>& generate) {
  std::string name = key;
  for (char& ch : name)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.'))
      ch = '_';
  const std::string path = cache_dir + "/" + name + ".ref";
  ReferenceSolution ref;
  if (load_reference(path, ref)) return ref;
  ref = generate();
  save_reference(path, ref);
  return ref;
}

}  // namespace oedg
