#include "eldg/system.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

#include "eldg/basis.hpp"
#include "eldg/errors.hpp"
#include "eldg/stabilization.hpp"

namespace eldg {
namespace detail {

// Cross-section of one family's dynamic elements frozen at one time offset
// tau = t_anchor - t.  Holds the overlap quadrature against the background
// mesh (carry/correction/projection integrals) and the whole-cell quadrature
// (flux volume and source integrals).
struct CrossSection {
  double tau = 0.0;
  std::shared_ptr<const Mesh1D> cs_mesh;
  std::vector<double> width;     // per cell
  std::vector<double> if_xw;     // wrapped interface positions, per unique node
  std::vector<int> cell_q_begin; // size N+1, ranges into the q_* arrays
  std::vector<double> q_xw, q_jw;
  std::vector<int> q_src;
  std::vector<double> q_psi_dst, q_psi_src;  // [qpoint][mode]
  std::vector<double> v_xw;                  // [cell*nq + q], wrapped
};

struct PlanData {
  std::shared_ptr<const Mesh1D> mesh;
  NodeVelocities nu;
  double dt = 0.0;
  int degree = 0;
  int n_fam = 0;
  int nq = 0;
  ButcherTableau rk;
  std::vector<double> taus;
  std::vector<std::vector<CrossSection>> sections;  // [fam][tau_idx]
  std::vector<std::vector<double>> alpha_q;         // [fam][cell*nq + q]
  std::vector<double> psi_ref, dpsi_ref;            // [mode][q] at gauss nodes
  std::vector<double> gw;

  int tau_index(double tau) const {
    double tol = 1e-12 * std::max(1.0, std::abs(dt));
    for (size_t i = 0; i < taus.size(); ++i)
      if (std::abs(taus[i] - tau) <= tol) return static_cast<int>(i);
    throw std::logic_error("step plan: missing cross-section offset");
  }
};

namespace {

constexpr int kN2 = kMaxComp * kMaxComp;

struct CoefCache {
  const CharSystem* sys = nullptr;
  bool frozen = false;  // constant coefficients already loaded
  double A[kN2], lam[kMaxComp], R[kN2], Ri[kN2], dR[kN2], dRi[kN2];

  explicit CoefCache(const CharSystem& s) : sys(&s) {}
  void load(double x, double t) {
    if (frozen) return;
    sys->matrix(x, t, A);
    sys->eigenvalues(x, t, lam);
    sys->right(x, t, R);
    sys->left(x, t, Ri);
    sys->right_dx(x, t, dR);
    sys->left_dx(x, t, dRi);
    if (sys->constant_coefficients) frozen = true;
  }
};

// Cellwise-constant eigenvector weights of the localized (nmc) variant.
struct NmcWeights {
  std::vector<double> R, Ri;  // [cell][n*n]
  bool active = false;
};

NmcWeights make_nmc_weights(const Mesh1D& mesh, const CharSystem& sys, double t) {
  NmcWeights w;
  w.active = true;
  const int n = sys.n_comp;
  const int N = mesh.n_cells();
  w.R.resize(static_cast<size_t>(N) * n * n);
  w.Ri.resize(static_cast<size_t>(N) * n * n);
  for (int j = 0; j < N; ++j) {
    sys.right(mesh.cell_center(j), t, &w.R[static_cast<size_t>(j) * n * n]);
    sys.left(mesh.cell_center(j), t, &w.Ri[static_cast<size_t>(j) * n * n]);
  }
  return w;
}

CrossSection build_cross_section(const std::shared_ptr<const Mesh1D>& mesh,
                                 std::span<const double> nu_fam, double tau,
                                 int degree, int nq) {
  const int N = mesh->n_cells();
  const int K = degree + 1;
  const double L = mesh->length();
  CrossSection cs;
  cs.tau = tau;

  auto cm = std::make_shared<Mesh1D>();
  cm->nodes.resize(N + 1);
  for (int s = 0; s < N; ++s) cm->nodes[s] = mesh->nodes[s] - tau * nu_fam[s];
  cm->nodes[N] = mesh->nodes[N] - tau * nu_fam[0];
  cm->domain_lo = cm->nodes[0];
  cm->domain_hi = cm->nodes[N];
  cm->periodic = mesh->periodic;
  cs.width.resize(N);
  for (int j = 0; j < N; ++j) {
    cs.width[j] = cm->nodes[j + 1] - cm->nodes[j];
    if (!(cs.width[j] > 0.0)) throw inverted_element_error(j, cs.width[j]);
  }
  cs.cs_mesh = cm;

  cs.if_xw.resize(N);
  for (int s = 0; s < N; ++s) cs.if_xw[s] = mesh->wrap(cm->nodes[s]);

  const auto& rule = QuadratureRule::gauss(nq);
  std::vector<double> lo(N), hi(N);
  for (int j = 0; j < N; ++j) {
    lo[j] = cm->nodes[j];
    hi[j] = cm->nodes[j + 1];
  }
  auto decomp = overlap_decompose_intervals(mesh, lo, hi);

  cs.cell_q_begin.assign(N + 1, 0);
  std::vector<double> psi(K);
  for (int j = 0; j < N; ++j) {
    cs.cell_q_begin[j] = static_cast<int>(cs.q_xw.size());
    const double a = lo[j], b = hi[j];
    for (const auto& piece : decomp.pieces[j]) {
      double half = 0.5 * (piece.hi - piece.lo), mid = 0.5 * (piece.hi + piece.lo);
      for (int q = 0; q < nq; ++q) {
        double x = mid + half * rule.nodes[q];
        double xw = x - piece.shift * L;
        cs.q_xw.push_back(xw);
        cs.q_jw.push_back(rule.weights[q] * half);
        cs.q_src.push_back(piece.src_cell);
        legendre_all(degree, (2.0 * x - a - b) / (b - a), psi.data());
        cs.q_psi_dst.insert(cs.q_psi_dst.end(), psi.begin(), psi.end());
        legendre_all(degree, mesh->reference_coord(piece.src_cell, xw), psi.data());
        cs.q_psi_src.insert(cs.q_psi_src.end(), psi.begin(), psi.end());
      }
    }
  }
  cs.cell_q_begin[N] = static_cast<int>(cs.q_xw.size());

  cs.v_xw.resize(static_cast<size_t>(N) * nq);
  for (int j = 0; j < N; ++j) {
    double half = 0.5 * cs.width[j], mid = 0.5 * (lo[j] + hi[j]);
    for (int q = 0; q < nq; ++q)
      cs.v_xw[static_cast<size_t>(j) * nq + q] = mesh->wrap(mid + half * rule.nodes[q]);
  }
  return cs;
}

// Evaluate a background-mesh field at a piece quadrature point.
inline void eval_src(const DGField& f, const CrossSection& cs, int qi, int K, double* out) {
  const double* psi = &cs.q_psi_src[static_cast<size_t>(qi) * K];
  const int jc = cs.q_src[qi];
  for (int c = 0; c < f.n_comp; ++c) {
    const double* coef = f.cell_comp(jc, c);
    double v = 0.0;
    for (int m = 0; m < K; ++m) v += coef[m] * psi[m];
    out[c] = v;
  }
}

// moments indexing: [cell][row][mode]
inline size_t midx(int j, int r, int m, int nc, int K) {
  return (static_cast<size_t>(j) * nc + r) * K + m;
}

// Transported initial moments of one family at offset tau: integrals of
// w_{r,fam} U against the element test functions, assembled
// subinterval-by-subinterval with the background-mesh field.
void accumulate_carry(std::vector<double>& mom, double scale, int fam,
                      const CrossSection& cs, const DGField& U, double t,
                      const CharSystem& sys, const NmcWeights& nmc) {
  const int N = U.mesh->n_cells();
  const int nc = sys.n_comp;
  const int K = U.degree + 1;
  CoefCache cc(sys);
  double vals[kMaxComp];
  for (int j = 0; j < N; ++j) {
    const double* Rj = nmc.active ? &nmc.R[static_cast<size_t>(j) * nc * nc] : nullptr;
    const double* Rij = nmc.active ? &nmc.Ri[static_cast<size_t>(j) * nc * nc] : nullptr;
    for (int qi = cs.cell_q_begin[j]; qi < cs.cell_q_begin[j + 1]; ++qi) {
      eval_src(U, cs, qi, K, vals);
      const double* R;
      const double* Ri;
      if (nmc.active) {
        R = Rj;
        Ri = Rij;
      } else {
        cc.load(cs.q_xw[qi], t);
        R = cc.R;
        Ri = cc.Ri;
      }
      double lU = 0.0;
      for (int c = 0; c < nc; ++c) lU += Ri[fam * nc + c] * vals[c];
      const double* psi = &cs.q_psi_dst[static_cast<size_t>(qi) * K];
      double jw = scale * cs.q_jw[qi] * lU;
      for (int r = 0; r < nc; ++r) {
        double wr = jw * R[r * nc + fam];
        for (int m = 0; m < K; ++m) mom[midx(j, r, m, nc, K)] += wr * psi[m];
      }
    }
  }
}

// Stage rate of one family: boundary fluxes, flux volume term,
// derivative-correction term (background field, subinterval-by-subinterval)
// and source term, each tested against the element test functions.
void accumulate_family_rate(std::vector<double>& mom, double scale, int fam,
                            const CrossSection& cs, double t, const DGField& frame,
                            const DGField& background, const CharSystem& sys,
                            const NodeVelocities& nu, const NmcWeights& nmc,
                            const PlanData& st) {
  const int N = frame.mesh->n_cells();
  const int nc = sys.n_comp;
  const int K = frame.degree + 1;
  const int nq = st.nq;
  CoefCache cc(sys);
  double Um[kMaxComp], Up[kMaxComp], hat[kMaxComp], vals[kMaxComp], g[kMaxComp];
  std::vector<double> sgn(K);
  for (int m = 0; m < K; ++m) sgn[m] = (m % 2 == 0) ? 1.0 : -1.0;

  // interface fluxes; a single value per interface so the telescoping sum
  // cancels exactly in the conservative variant
  for (int s = 0; s < N; ++s) {
    const int jl = (s + N - 1) % N;
    const int jr = s;
    for (int c = 0; c < nc; ++c) {
      const double* cl = frame.cell_comp(jl, c);
      double vm = 0.0;
      for (int m = 0; m < K; ++m) vm += cl[m];
      Um[c] = vm;
      const double* cr = frame.cell_comp(jr, c);
      double vp = 0.0;
      for (int m = 0; m < K; ++m) vp += cr[m] * sgn[m];
      Up[c] = vp;
    }
    const double xw = cs.if_xw[s];
    cc.load(xw, t);
    double a_lf = 0.0;
    for (int i = 0; i < nc; ++i)
      a_lf = std::max(a_lf, std::abs(cc.lam[i] - nu[i][s]));
    const double nui = nu[fam][s];
    for (int c = 0; c < nc; ++c) {
      double au = 0.0;
      for (int d = 0; d < nc; ++d) au += cc.A[c * nc + d] * (Um[d] + Up[d]);
      hat[c] = 0.5 * (au - nui * (Um[c] + Up[c]) - a_lf * (Up[c] - Um[c]));
    }
    if (!nmc.active) {
      double lhat = 0.0;
      for (int c = 0; c < nc; ++c) lhat += cc.Ri[fam * nc + c] * hat[c];
      for (int r = 0; r < nc; ++r) {
        double fr = scale * cc.R[r * nc + fam] * lhat;
        // left cell sees its right boundary (psi = 1), right cell its left
        // boundary (psi = (-1)^m)
        for (int m = 0; m < K; ++m) {
          mom[midx(jl, r, m, nc, K)] -= fr;
          mom[midx(jr, r, m, nc, K)] += fr * sgn[m];
        }
      }
    } else {
      const double* Rl = &nmc.R[static_cast<size_t>(jl) * nc * nc];
      const double* Ril = &nmc.Ri[static_cast<size_t>(jl) * nc * nc];
      const double* Rr = &nmc.R[static_cast<size_t>(jr) * nc * nc];
      const double* Rir = &nmc.Ri[static_cast<size_t>(jr) * nc * nc];
      double lhat_l = 0.0, lhat_r = 0.0;
      for (int c = 0; c < nc; ++c) {
        lhat_l += Ril[fam * nc + c] * hat[c];
        lhat_r += Rir[fam * nc + c] * hat[c];
      }
      for (int r = 0; r < nc; ++r) {
        double frl = scale * Rl[r * nc + fam] * lhat_l;
        double frr = scale * Rr[r * nc + fam] * lhat_r;
        for (int m = 0; m < K; ++m) {
          mom[midx(jl, r, m, nc, K)] -= frl;
          mom[midx(jr, r, m, nc, K)] += frr * sgn[m];
        }
      }
    }
  }

  // flux volume term: f^{r,fam}(frame) psi_x; the width cancels against the
  // gauss jacobian, leaving plain gauss weights on reference derivatives
  const std::vector<double>& alpha = st.alpha_q[fam];
  for (int j = 0; j < N; ++j) {
    const double* Rj = nmc.active ? &nmc.R[static_cast<size_t>(j) * nc * nc] : nullptr;
    const double* Rij = nmc.active ? &nmc.Ri[static_cast<size_t>(j) * nc * nc] : nullptr;
    for (int q = 0; q < nq; ++q) {
      const double xw = cs.v_xw[static_cast<size_t>(j) * nq + q];
      for (int c = 0; c < nc; ++c) {
        const double* coef = frame.cell_comp(j, c);
        double v = 0.0;
        for (int m = 0; m < K; ++m) v += coef[m] * st.psi_ref[m * nq + q];
        vals[c] = v;
      }
      cc.load(xw, t);
      const double* R;
      const double* Ri;
      if (nmc.active) {
        R = Rj;
        Ri = Rij;
      } else {
        R = cc.R;
        Ri = cc.Ri;
      }
      const double av = alpha[static_cast<size_t>(j) * nq + q];
      for (int c = 0; c < nc; ++c) {
        double au = 0.0;
        for (int d = 0; d < nc; ++d) au += cc.A[c * nc + d] * vals[d];
        g[c] = au - av * vals[c];
      }
      double lg = 0.0;
      for (int c = 0; c < nc; ++c) lg += Ri[fam * nc + c] * g[c];
      double base = scale * st.gw[q] * lg;
      for (int r = 0; r < nc; ++r) {
        double fr = base * R[r * nc + fam];
        for (int m = 1; m < K; ++m)
          mom[midx(j, r, m, nc, K)] += fr * st.dpsi_ref[m * nq + q];
      }
      // source term shares the quadrature point
      if (sys.has_source()) {
        double F[kMaxComp];
        sys.source(xw, t, F);
        double lF = 0.0;
        for (int c = 0; c < nc; ++c) lF += Ri[fam * nc + c] * F[c];
        double half_w = 0.5 * cs.width[j];
        double sbase = scale * st.gw[q] * half_w * lF;
        for (int r = 0; r < nc; ++r) {
          double fr = sbase * R[r * nc + fam];
          for (int m = 0; m < K; ++m)
            mom[midx(j, r, m, nc, K)] += fr * st.psi_ref[m * nq + q];
        }
      }
    }
  }

  // derivative-correction term (w_{r,fam})_x A U, background field; the sum
  // over families vanishes pointwise, which is what conservation rests on
  if (!nmc.active && !sys.constant_coefficients) {
    for (int j = 0; j < N; ++j) {
      for (int qi = cs.cell_q_begin[j]; qi < cs.cell_q_begin[j + 1]; ++qi) {
        const double xw = cs.q_xw[qi];
        cc.load(xw, t);
        eval_src(background, cs, qi, K, vals);
        for (int c = 0; c < nc; ++c) {
          double au = 0.0;
          for (int d = 0; d < nc; ++d) au += cc.A[c * nc + d] * vals[d];
          g[c] = au;
        }
        double u1 = 0.0, u2 = 0.0;
        for (int c = 0; c < nc; ++c) {
          u1 += cc.Ri[fam * nc + c] * g[c];
          u2 += cc.dRi[fam * nc + c] * g[c];
        }
        const double* psi = &cs.q_psi_dst[static_cast<size_t>(qi) * K];
        double jw = scale * cs.q_jw[qi];
        for (int r = 0; r < nc; ++r) {
          double fr = jw * (cc.dR[r * nc + fam] * u1 + cc.R[r * nc + fam] * u2);
          for (int m = 0; m < K; ++m) mom[midx(j, r, m, nc, K)] += fr * psi[m];
        }
      }
    }
  }
}

// L2 projection of a background-mesh field onto the cross-section mesh.
DGField project_to_section(const DGField& f, const CrossSection& cs) {
  const int N = f.mesh->n_cells();
  const int K = f.degree + 1;
  DGField out = DGField::zeros(cs.cs_mesh, f.degree, f.n_comp);
  out.time_tag = f.time_tag;
  double vals[kMaxComp];
  for (int j = 0; j < N; ++j) {
    for (int qi = cs.cell_q_begin[j]; qi < cs.cell_q_begin[j + 1]; ++qi) {
      eval_src(f, cs, qi, K, vals);
      const double* psi = &cs.q_psi_dst[static_cast<size_t>(qi) * K];
      double jw = cs.q_jw[qi];
      for (int c = 0; c < f.n_comp; ++c)
        for (int m = 0; m < K; ++m) out.at(j, c, m) += jw * vals[c] * psi[m];
    }
    for (int c = 0; c < f.n_comp; ++c)
      for (int m = 0; m < K; ++m) out.at(j, c, m) /= cs.width[j] / (2.0 * m + 1.0);
  }
  return out;
}

DGField solve_mass(const std::vector<double>& mom, const std::shared_ptr<const Mesh1D>& mesh,
                   int degree, int nc) {
  DGField f = DGField::zeros(mesh, degree, nc);
  const int K = degree + 1;
  for (int j = 0; j < mesh->n_cells(); ++j) {
    double dx = mesh->dx(j);
    for (int r = 0; r < nc; ++r)
      for (int m = 0; m < K; ++m)
        f.at(j, r, m) = mom[midx(j, r, m, nc, K)] * (2.0 * m + 1.0) / dx;
  }
  return f;
}

}  // namespace
}  // namespace detail

using detail::PlanData;

StepPlan::StepPlan() = default;
StepPlan::~StepPlan() = default;
StepPlan::StepPlan(StepPlan&&) noexcept = default;
StepPlan& StepPlan::operator=(StepPlan&&) noexcept = default;

StepPlan build_step_plan(std::shared_ptr<const Mesh1D> mesh, const NodeVelocities& nu,
                         double dt, const ButcherTableau& rk, int degree) {
  rk.validate();
  auto pd = std::make_shared<PlanData>();
  pd->mesh = mesh;
  pd->nu = nu;
  pd->dt = dt;
  pd->degree = degree;
  pd->n_fam = static_cast<int>(nu.size());
  pd->nq = default_quad_points(degree);
  pd->rk = rk;

  const int N = mesh->n_cells();
  for (const auto& fam_nu : nu)
    if (static_cast<int>(fam_nu.size()) != N)
      throw std::invalid_argument("step plan: one velocity per unique node required");

  // offsets at which any cross-section is needed
  std::vector<double> taus;
  taus.push_back(dt);  // carry of the final update
  for (int l = 0; l < rk.stages; ++l) {
    taus.push_back((1.0 - rk.c[l]) * dt);
    if (l > 0) taus.push_back(rk.c[l] * dt);
    for (int m = 0; m < l; ++m)
      if (rk.a_at(l, m) != 0.0) taus.push_back((rk.c[l] - rk.c[m]) * dt);
  }
  std::sort(taus.begin(), taus.end());
  const double tol = 1e-12 * std::max(1.0, std::abs(dt));
  for (double tau : taus)
    if (pd->taus.empty() || std::abs(tau - pd->taus.back()) > tol)
      pd->taus.push_back(tau);

  const auto& rule = QuadratureRule::gauss(pd->nq);
  pd->gw = rule.weights;
  const int K = degree + 1;
  pd->psi_ref.resize(static_cast<size_t>(K) * pd->nq);
  pd->dpsi_ref.resize(static_cast<size_t>(K) * pd->nq);
  std::vector<double> tmp(K);
  for (int q = 0; q < pd->nq; ++q) {
    legendre_all(degree, rule.nodes[q], tmp.data());
    for (int m = 0; m < K; ++m) pd->psi_ref[m * pd->nq + q] = tmp[m];
    legendre_deriv_all(degree, rule.nodes[q], tmp.data());
    for (int m = 0; m < K; ++m) pd->dpsi_ref[m * pd->nq + q] = tmp[m];
  }

  pd->sections.resize(pd->n_fam);
  pd->alpha_q.resize(pd->n_fam);
  for (int i = 0; i < pd->n_fam; ++i) {
    for (double tau : pd->taus)
      pd->sections[i].push_back(
          detail::build_cross_section(mesh, nu[i], tau, degree, pd->nq));
    pd->alpha_q[i].resize(static_cast<size_t>(N) * pd->nq);
    for (int j = 0; j < N; ++j) {
      double nl = nu[i][j];
      double nr = nu[i][(j + 1) % N];
      for (int q = 0; q < pd->nq; ++q)
        pd->alpha_q[i][static_cast<size_t>(j) * pd->nq + q] =
            nl + (nr - nl) * 0.5 * (rule.nodes[q] + 1.0);
    }
  }

  StepPlan plan;
  plan.data_ = pd;
  return plan;
}

DGField el_rk_step(const DGField& U, double t, double dt, const ButcherTableau& rk,
                   const CharSystem& sys, const NodeVelocities& nu,
                   const StepOptions& opt, const StepPlan* plan) {
  rk.validate();
  if (sys.n_comp != U.n_comp)
    throw std::invalid_argument("el_rk_step: component count mismatch");
  if (static_cast<int>(nu.size()) != sys.n_comp)
    throw std::invalid_argument("el_rk_step: one velocity family per component required");
  if (sys.n_comp > kMaxComp)
    throw std::invalid_argument("el_rk_step: too many components");

  StepPlan local;
  const PlanData* pd;
  if (plan && plan->data()) {
    pd = plan->data().get();
  } else {
    local = build_step_plan(U.mesh, nu, dt, rk, U.degree);
    pd = local.data().get();
  }

  const int N = U.mesh->n_cells();
  const int nc = sys.n_comp;
  const int K = U.degree + 1;
  const int s = rk.stages;
  const size_t msize = static_cast<size_t>(N) * nc * K;

  detail::NmcWeights nmc;
  if (opt.nmc) nmc = detail::make_nmc_weights(*U.mesh, sys, t);

  // memoized transported-initial moments (summed over families) per offset
  std::map<int, std::vector<double>> carry_memo;
  auto carry = [&](double tau) -> const std::vector<double>& {
    int ti = pd->tau_index(tau);
    auto it = carry_memo.find(ti);
    if (it == carry_memo.end()) {
      std::vector<double> mom(msize, 0.0);
      for (int i = 0; i < pd->n_fam; ++i)
        detail::accumulate_carry(mom, 1.0, i, pd->sections[i][ti], U, t, sys, nmc);
      it = carry_memo.emplace(ti, std::move(mom)).first;
    }
    return it->second;
  };

  std::vector<DGField> stage(s);
  // projections of stage solutions onto family cross-sections, keyed by
  // (family, tau index, stage)
  std::map<std::tuple<int, int, int>, DGField> proj_memo;
  auto frame_of = [&](int fam, int ti, int l) -> const DGField& {
    if (pd->taus[ti] == 0.0) return stage[l];
    auto key = std::make_tuple(fam, ti, l);
    auto it = proj_memo.find(key);
    if (it == proj_memo.end())
      it = proj_memo
               .emplace(key, detail::project_to_section(stage[l], pd->sections[fam][ti]))
               .first;
    return it->second;
  };

  // stage rates summed over families, keyed by (tau index, stage)
  std::map<std::pair<int, int>, std::vector<double>> rate_memo;
  auto rate = [&](double tau, double t_eval, int l) -> const std::vector<double>& {
    int ti = pd->tau_index(tau);
    auto key = std::make_pair(ti, l);
    auto it = rate_memo.find(key);
    if (it == rate_memo.end()) {
      std::vector<double> mom(msize, 0.0);
      for (int i = 0; i < pd->n_fam; ++i)
        detail::accumulate_family_rate(mom, 1.0, i, pd->sections[i][ti], t_eval,
                                       frame_of(i, ti, l), stage[l], sys, pd->nu, nmc,
                                       *pd);
      it = rate_memo.emplace(key, std::move(mom)).first;
    }
    return it->second;
  };

  std::vector<double> mom_final = carry(dt);
  for (int l = 0; l < s; ++l) {
    if (l == 0) {
      stage[0] = U;
    } else {
      std::vector<double> mom = carry(rk.c[l] * dt);
      for (int m = 0; m < l; ++m) {
        double alm = rk.a_at(l, m);
        if (alm == 0.0) continue;
        const auto& rlm = rate((rk.c[l] - rk.c[m]) * dt, t + rk.c[m] * dt, m);
        double w = dt * alm;
        for (size_t ii = 0; ii < msize; ++ii) mom[ii] += w * rlm[ii];
      }
      stage[l] = detail::solve_mass(mom, U.mesh, U.degree, nc);
      stage[l].time_tag = t + rk.c[l] * dt;
      if (opt.limiter_m) tvd_limit_inplace(stage[l], *opt.limiter_m);
    }
    if (rk.b[l] != 0.0) {
      const auto& rl = rate((1.0 - rk.c[l]) * dt, t + rk.c[l] * dt, l);
      double w = dt * rk.b[l];
      for (size_t ii = 0; ii < msize; ++ii) mom_final[ii] += w * rl[ii];
    }
  }

  DGField out = detail::solve_mass(mom_final, U.mesh, U.degree, nc);
  out.time_tag = t + dt;
  if (opt.limiter_m) tvd_limit_inplace(out, *opt.limiter_m);
  return out;
}

DGField forward_euler_step(const DGField& U, double t, double dt, const CharSystem& sys,
                           const NodeVelocities& nu, const StepOptions& opt) {
  return el_rk_step(U, t, dt, ButcherTableau::forward_euler(), sys, nu, opt);
}

double family_flux(const double* U_minus, const double* U_plus, double x, double t,
                   std::span<const double> nu_at_interface, int row, int family,
                   const CharSystem& sys) {
  const int nc = sys.n_comp;
  detail::CoefCache cc(sys);
  cc.load(x, t);
  double a_lf = 0.0;
  for (int i = 0; i < nc; ++i)
    a_lf = std::max(a_lf, std::abs(cc.lam[i] - nu_at_interface[i]));
  const double nui = nu_at_interface[family];
  double lhat = 0.0;
  for (int c = 0; c < nc; ++c) {
    double au = 0.0;
    for (int d = 0; d < nc; ++d) au += cc.A[c * nc + d] * (U_minus[d] + U_plus[d]);
    double hat =
        0.5 * (au - nui * (U_minus[c] + U_plus[c]) - a_lf * (U_plus[c] - U_minus[c]));
    lhat += cc.Ri[family * nc + c] * hat;
  }
  return cc.R[row * nc + family] * lhat;
}

std::vector<double> family_rhs(const DGField& frame_field, const DGField& background_field,
                               const UpstreamMesh& elems, double t, int family,
                               const CharSystem& sys, const NodeVelocities& nu,
                               const StepOptions& opt) {
  if (elems.elements.empty()) throw std::invalid_argument("family_rhs: empty mesh");
  const auto& mesh = elems.source;
  const int N = mesh->n_cells();
  const int nc = sys.n_comp;
  const int K = frame_field.degree + 1;
  const double tau = elems.elements[0].t_end - t;

  // one-off plan evaluated at this cross-section only
  detail::PlanData pd;
  pd.mesh = mesh;
  pd.nu = nu;
  pd.dt = elems.dt;
  pd.degree = frame_field.degree;
  pd.n_fam = static_cast<int>(nu.size());
  pd.nq = default_quad_points(frame_field.degree);
  const auto& rule = QuadratureRule::gauss(pd.nq);
  pd.gw = rule.weights;
  pd.psi_ref.resize(static_cast<size_t>(K) * pd.nq);
  pd.dpsi_ref.resize(static_cast<size_t>(K) * pd.nq);
  std::vector<double> tmp(K);
  for (int q = 0; q < pd.nq; ++q) {
    legendre_all(frame_field.degree, rule.nodes[q], tmp.data());
    for (int m = 0; m < K; ++m) pd.psi_ref[m * pd.nq + q] = tmp[m];
    legendre_deriv_all(frame_field.degree, rule.nodes[q], tmp.data());
    for (int m = 0; m < K; ++m) pd.dpsi_ref[m * pd.nq + q] = tmp[m];
  }
  pd.alpha_q.resize(pd.n_fam);
  pd.alpha_q[family].resize(static_cast<size_t>(N) * pd.nq);
  for (int j = 0; j < N; ++j) {
    double nl = nu[family][j];
    double nr = nu[family][(j + 1) % N];
    for (int q = 0; q < pd.nq; ++q)
      pd.alpha_q[family][static_cast<size_t>(j) * pd.nq + q] =
          nl + (nr - nl) * 0.5 * (rule.nodes[q] + 1.0);
  }

  auto cs = detail::build_cross_section(mesh, nu[family], tau, frame_field.degree, pd.nq);
  detail::NmcWeights nmc;
  if (opt.nmc) nmc = detail::make_nmc_weights(*mesh, sys, t);

  std::vector<double> mom(static_cast<size_t>(N) * nc * K, 0.0);
  detail::accumulate_family_rate(mom, 1.0, family, cs, t, frame_field, background_field,
                                 sys, nu, nmc, pd);
  return mom;
}

}  // namespace eldg
