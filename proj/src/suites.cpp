#include "dkl/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#include "json.hpp"

namespace dkl {

namespace {

using nlohmann::json;

double rel(double diff, double scale) { return diff / std::max(1.0, scale); }

CheckResult check(std::string name, std::string chart, std::uint64_t seed,
                  double err, double tol) {
  CheckResult c;
  c.name = std::move(name);
  c.chart = std::move(chart);
  c.seed = seed;
  c.max_rel_err = err;
  c.tolerance = tol;
  c.pass = err <= tol;
  return c;
}

// negative controls pass when the measured violation EXCEEDS the threshold
CheckResult negative_check(std::string name, std::string chart, std::uint64_t seed,
                           double violation, double threshold) {
  CheckResult c;
  c.name = std::move(name);
  c.chart = std::move(chart);
  c.seed = seed;
  c.max_rel_err = violation;
  c.tolerance = threshold;
  c.pass = violation > threshold;
  return c;
}

LorentzMultiplet constrained_multiplet(std::uint64_t seed, SectorTag tag) {
  SplitMix64 rng(seed);
  auto rc = [&]() { return cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)); };
  LorentzMultiplet m;
  bool keep_s = (tag == SectorTag::S0), keep_ps = (tag == SectorTag::S0tilde);
  bool keep_v = (tag == SectorTag::S0 || tag == SectorTag::S1);
  bool keep_pv = (tag == SectorTag::S0tilde || tag == SectorTag::S1tilde);
  bool keep_t = (tag == SectorTag::S1 || tag == SectorTag::S1tilde);
  if (keep_s) m.s = rc();
  if (keep_ps) m.ps = rc();
  for (int i = 0; i < 4; ++i) {
    if (keep_v) m.v[i] = rc();
    if (keep_pv) m.pv[i] = rc();
  }
  if (keep_t)
    for (auto& pr : kTensorPairs) {
      cplx c = rc();
      m.t[pr[0]][pr[1]] = c;
      m.t[pr[1]][pr[0]] = -c;
    }
  return m;
}

}  // namespace

void RunConfig::validate() const {
  if (points < 1) throw std::invalid_argument("points must be >= 1");
  if (degree < 0) throw std::invalid_argument("degree must be >= 0");
  if (bound <= 0.0) throw std::invalid_argument("bound must be positive");
  if (mass <= 0.0) throw std::invalid_argument("mass must be positive");
  for (const std::string& name : charts) find_chart(name);  // throws if unknown
}

std::vector<std::string> RunConfig::chart_names() const {
  if (!charts.empty()) return charts;
  std::vector<std::string> out;
  for (const TetradChart& c : catalog()) out.push_back(c.name);
  return out;
}

std::vector<std::uint64_t> RunConfig::seed_list() const {
  if (!seeds.empty()) return seeds;
  return {1, 2, 3};
}

// ---- algebra ----

std::vector<CheckResult> suite_algebra(const GammaBasis& gb) {
  std::vector<CheckResult> out;

  double e_id = norm_inf(gb.E * gb.E + MatrixC4::identity());
  e_id = std::max(e_id, std::abs(trace(gb.E)));
  e_id = std::max(e_id, norm_inf(transpose(gb.E) + gb.E));
  for (auto& pr : kTensorPairs)
    e_id = std::max(e_id, norm_inf(transpose(gb.sigma[pr[0]][pr[1]]) * gb.E +
                                   gb.E * gb.sigma[pr[0]][pr[1]]));
  out.push_back(check("algebra_E_identities", "", 0, e_id, 1e-14));

  double anti = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      MatrixC4 s = gb.gamma[a] * gb.gamma[b] + gb.gamma[b] * gb.gamma[a];
      double want = (a == b) ? 2.0 * gb.eta[a] : 0.0;
      anti = std::max(anti, norm_inf(s - cplx(want) * MatrixC4::identity()));
    }
  out.push_back(check("algebra_gamma_anticommutation", "", 0, anti, 1e-14));

  double tr_err = 0.0;
  for (int c = 0; c < 4; ++c)
    for (int l = 0; l < 4; ++l) {
      cplx t2 = trace(gb.gamma[c] * gb.gamma[l]);
      tr_err = std::max(tr_err, std::abs(t2 - cplx(c == l ? 4.0 * gb.eta[c] : 0.0)));
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          cplx t4 = trace(gb.gamma[c] * gb.sigma[a][b] * gb.gamma[l] * gb.gamma5);
          cplx want = cplx(0.0, -2.0) * double(epsilon_symbol(a, b, c, l));
          tr_err = std::max(tr_err, std::abs(t4 - want));
        }
    }
  out.push_back(check("algebra_trace_formulas", "", 0, tr_err, 1e-14));

  double rt = 0.0;
  for (std::uint64_t s : {11ULL, 12ULL, 13ULL}) {
    SplitMix64 rng(s * 77);
    LorentzMultiplet full;
    full.s = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    full.ps = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    for (int i = 0; i < 4; ++i) {
      full.v[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      full.pv[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    }
    for (auto& pr : kTensorPairs) {
      cplx c = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      full.t[pr[0]][pr[1]] = c;
      full.t[pr[1]][pr[0]] = -c;
    }
    MatrixC4 U = expand_multiplet(gb, full);
    rt = std::max(rt, multiplet_dist(project_multiplet(gb, U), full));
    rt = std::max(rt,
                  norm_inf(expand_multiplet(gb, project_multiplet(gb, U)) - U));
    rt = std::max(rt, multiplet_dist(project_closed_form(gb, U),
                                     project_multiplet(gb, U)));
    rt = std::max(rt, multiplet_dist(block_inverse_relations(gb, split_blocks(U)),
                                     full));
  }
  out.push_back(check("algebra_expand_project_roundtrip", "", 0, rt, 1e-12));

  CalibrationConstants cc = calibration_constants(gb);
  double cal = std::abs(cc.s - cplx(1.0));
  cal = std::max(cal, std::abs(cc.v - cplx(1.0)));
  cal = std::max(cal, std::abs(cc.t - cplx(1.0)));
  cal = std::max(cal, std::abs(cc.ps - cplx(1.0)));
  cal = std::max(cal, std::abs(cc.pv - cplx(1.0)));
  out.push_back(check("algebra_calibration_constants", "", 0, cal, 1e-12));

  for (SectorTag tag : {SectorTag::S0, SectorTag::S0tilde, SectorTag::S1,
                        SectorTag::S1tilde}) {
    double v = 0.0, gen = 1e9;
    for (std::uint64_t s : {21ULL, 22ULL}) {
      MatrixC4 U = expand_multiplet(gb, constrained_multiplet(s, tag));
      v = std::max(v, sector_block_violation(gb, U, tag));
      SplitMix64 rng(s * 5 + 3);
      LorentzMultiplet full;
      full.s = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      full.ps = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      for (int i = 0; i < 4; ++i) {
        full.v[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        full.pv[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      }
      for (auto& pr : kTensorPairs) {
        cplx c = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        full.t[pr[0]][pr[1]] = c;
        full.t[pr[1]][pr[0]] = -c;
      }
      gen = std::min(gen,
                     sector_block_violation(gb, expand_multiplet(gb, full), tag));
    }
    out.push_back(
        check("algebra_block_table_" + sector_name(tag), "", 0, v, 1e-12));
    out.push_back(negative_check(
        "algebra_block_table_" + sector_name(tag) + "_negative_control", "", 0,
        gen, 1e-3));
  }
  return out;
}

// ---- geometry ----

std::vector<CheckResult> suite_geometry(const RunConfig& cfg, const GammaBasis& gb) {
  cfg.validate();
  std::vector<CheckResult> out;
  for (const std::string& name : cfg.chart_names()) {
    TetradChart chart = find_chart(name, cfg.chart_params.empty()
                                             ? nullptr
                                             : &cfg.chart_params);
    for (std::uint64_t seed : cfg.seed_list()) {
      double lemma = 0.0, dg = 0.0, deps = 0.0, dich = 0.0, comm = 0.0;
      auto pts = sample_points(chart, seed, cfg.points);
      for (const Point& p : pts) {
        GeometryAt g = geometry_at(chart, p, gb);

        for (int mu = 0; mu < 4; ++mu) {
          double tr = 0.0, want = 0.0;
          for (int al = 0; al < 4; ++al) {
            tr += g.christoffel[al][mu][al];
            for (int a = 0; a < 4; ++a) want += g.e_up[a][al] * g.de_down[mu][a][al];
          }
          lemma = std::max(lemma, rel(std::abs(tr - want), std::abs(want)));
        }

        std::vector<cplx> val(16), d1(64);
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            val[a * 4 + b] = g.g_down[a][b];
            for (int mu = 0; mu < 4; ++mu)
              d1[mu * 16 + a * 4 + b] = g.dg_down[mu][a][b];
          }
        for (cplx c : covariant_derivative(g, 2, val, d1))
          dg = std::max(dg, std::abs(c));

        std::vector<cplx> ev(256), ed(1024);
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            for (int r = 0; r < 4; ++r)
              for (int s = 0; s < 4; ++s) {
                int e = epsilon_symbol(a, b, r, s);
                if (e == 0) continue;
                int I = ((a * 4 + b) * 4 + r) * 4 + s;
                ev[I] = g.det_e * double(e);
                for (int mu = 0; mu < 4; ++mu)
                  ed[mu * 256 + I] = g.ddet_e[mu] * double(e);
              }
        for (cplx c : covariant_derivative(g, 4, ev, ed))
          deps = std::max(deps, std::abs(c));

        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            for (int r = 0; r < 4; ++r)
              for (int s = 0; s < 4; ++s)
                dich = std::max(dich, std::abs(g.bigE_x[a][b][r][s] -
                                               g.jfac * g.eps_low_x[a][b][r][s]));

        // rank-1 commutator against the Riemann contraction
        cplx wv[4];
        std::vector<cplx> wval(4), wd1(16), wd2(64);
        for (int al = 0; al < 4; ++al) {
          Jet2 j = random_polynomial(seed * 131 + 7 + al, 2, 1.0).eval(p);
          wv[al] = j.val;
          wval[al] = j.val;
          for (int mu = 0; mu < 4; ++mu) {
            wd1[mu * 4 + al] = j.d1[mu];
            for (int nu = 0; nu < 4; ++nu)
              wd2[(mu * 4 + nu) * 4 + al] = j.d2[mu][nu];
          }
        }
        auto D = second_covariant_derivative(g, 1, wval, wd1, wd2);
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            for (int s = 0; s < 4; ++s) {
              cplx lhs = D[(a * 4 + b) * 4 + s] - D[(b * 4 + a) * 4 + s];
              cplx rhs = 0.0;
              for (int nu = 0; nu < 4; ++nu) rhs += wv[nu] * g.riemann[nu][s][b][a];
              comm = std::max(comm, rel(std::abs(lhs - rhs), std::abs(rhs)));
            }
      }
      out.push_back(check("geometry_christoffel_trace_lemma", name, seed, lemma, 1e-9));
      out.push_back(check("geometry_metric_compatibility", name, seed, dg, 1e-9));
      out.push_back(check("geometry_eps_compatibility", name, seed, deps, 1e-9));
      out.push_back(check("geometry_bigE_equals_J_eps", name, seed, dich, 1e-12));
      out.push_back(check("geometry_riemann_commutator", name, seed, comm, 1e-7));
    }

    // pseudoscalar behavior under tetrad P-reflection
    double prefl = 0.0;
    TetradChart refl = p_reflect_tetrad(chart);
    for (const Point& p : sample_points(chart, 2, 4)) {
      GeometryAt g = geometry_at(chart, p, gb);
      GeometryAt gr = geometry_at(refl, p, gb);
      prefl = std::max(prefl, std::abs(gr.det_e + g.det_e));
      prefl = std::max(prefl, std::abs(gr.jfac + g.jfac));
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          prefl = std::max(prefl, std::abs(gr.g_down[a][b] - g.g_down[a][b]));
          for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s) {
              prefl = std::max(prefl, std::abs(gr.bigE_x[a][b][r][s] -
                                               g.bigE_x[a][b][r][s]));
              prefl = std::max(prefl, std::abs(gr.eps_low_x[a][b][r][s] +
                                               g.eps_low_x[a][b][r][s]));
            }
        }
    }
    out.push_back(check("geometry_p_reflection_pseudoscalars", name, 0, prefl, 1e-10));

    // linear coordinate reflection flips J, identity and scaling do not
    double lin = 0.0;
    double A[4][4]{};
    for (int i = 0; i < 4; ++i) A[i][i] = (i == 1) ? -1.0 : 1.0;
    LinearCheckReport r1 = linear_coordinate_check(chart, A, gb, 3);
    lin = std::max({lin, r1.max_err_det, r1.max_err_j});
    for (int i = 0; i < 4; ++i) A[i][i] = 2.0;
    LinearCheckReport r2 = linear_coordinate_check(chart, A, gb, 3);
    lin = std::max({lin, r2.max_err_det, r2.max_err_j});
    out.push_back(check("geometry_linear_reflection_j", name, 0, lin, 1e-10));
  }
  return out;
}

// ---- central equivalence ----

std::vector<CheckResult> suite_equivalence(const RunConfig& cfg,
                                           const GammaBasis& gb) {
  cfg.validate();
  std::vector<CheckResult> out;
  for (const std::string& name : cfg.chart_names()) {
    TetradChart chart = find_chart(name, cfg.chart_params.empty()
                                             ? nullptr
                                             : &cfg.chart_params);
    for (std::uint64_t seed : cfg.seed_list()) {
      MultipletField F =
          random_multiplet_field(seed, cfg.degree, cfg.bound, cfg.mass);
      double d_tet = 0.0, d_blk = 0.0, d_ten = 0.0, d_frm = 0.0, d_psd = 0.0;
      double d_flat = 0.0;
      auto pts = sample_points(chart, seed * 1000003 + 5, cfg.points);
      for (const Point& p : pts) {
        GeometryAt g = geometry_at(chart, p, gb);
        MatrixC4 R = residual_matrix(chart, F, p, gb);
        ResidualSet tet = residual_tetrad(chart, F, p, gb);
        d_tet = std::max(d_tet, residual_set_dist(project_residual(gb, R), tet));
        TwoSpinorResidual two = residual_two_spinor(chart, F, p, gb);
        SpinorBlocks rb = split_blocks(R);
        d_blk = std::max({d_blk, norm_inf(two.ul - rb.xi),
                          norm_inf(two.ur - rb.delta), norm_inf(two.ll - rb.h),
                          norm_inf(two.lr - rb.eta_blk)});
        ResidualSet ten = residual_tensor(chart, F, p, gb);
        d_ten = std::max(d_ten, residual_set_dist(ten, tetrad_to_tensor(g, tet)));
        d_frm = std::max(d_frm, residual_set_dist(residual_antisym(chart, F, p, gb),
                                                  tensor_to_antisym(g, ten)));
        d_psd = std::max(d_psd, residual_set_dist(residual_pseudo(chart, F, p, gb),
                                                  tensor_to_pseudo(g, ten)));
        if (name == "minkowski_diag") {
          d_flat = std::max(d_flat, norm_inf(R - flat_residual_matrix(F, p, gb)));
          d_flat = std::max(d_flat, residual_set_dist(
                                        tet, flat_residual_tetrad(F, p, gb)));
        }
      }
      out.push_back(check("equiv_matrix_vs_tetrad", name, seed, d_tet, 1e-8));
      out.push_back(check("equiv_two_spinor_blocks", name, seed, d_blk, 1e-8));
      out.push_back(check("equiv_tetrad_vs_tensor", name, seed, d_ten, 1e-8));
      out.push_back(check("equiv_tensor_vs_forms", name, seed, d_frm, 1e-8));
      out.push_back(check("equiv_tensor_vs_pseudo", name, seed, d_psd, 1e-8));
      if (name == "minkowski_diag")
        out.push_back(check("equiv_flat_reduction", name, seed, d_flat, 1e-12));

      // gauge covariance: constant boost and a position-dependent rotation
      int npts = std::min(cfg.points, 6);
      {
        LorentzGaugeElement S = make_gauge_element(gb, 0, 2, fe_const(0.5));
        GaugeTransformed gt = gauge_transform(chart, F, S, gb);
        double d = 0.0;
        for (const Point& p : sample_points(chart, seed * 17 + 1, npts)) {
          MatrixC4 Rp = residual_matrix_field(gt.chart, gt.U, F.mass, p, gb);
          MatrixC4 Sm = S.eval_S(p).val;
          MatrixC4 want = Sm * residual_matrix(chart, F, p, gb) * transpose(Sm);
          d = std::max(d, rel(norm_inf(Rp - want), norm_inf(want)));
        }
        out.push_back(check("gauge_covariance_const_boost", name, seed, d, 1e-8));
      }
      {
        FieldExpr angle = cplx(0.04) * fe_coord(1) + cplx(0.03) * fe_coord(2);
        LorentzGaugeElement S = make_gauge_element(gb, 1, 2, angle);
        GaugeTransformed gt = gauge_transform(chart, F, S, gb);
        double d = 0.0;
        for (const Point& p : sample_points(chart, seed * 17 + 2, npts)) {
          MatrixC4 Rp = residual_matrix_field(gt.chart, gt.U, F.mass, p, gb);
          MatrixC4 Sm = S.eval_S(p).val;
          MatrixC4 want = Sm * residual_matrix(chart, F, p, gb) * transpose(Sm);
          d = std::max(d, rel(norm_inf(Rp - want), norm_inf(want)));
        }
        out.push_back(check("gauge_covariance_local_rotation", name, seed, d, 1e-8));
      }
      {
        GaugeTransformed pr = p_reflection(chart, F, gb);
        MatrixC4 P = I_UNIT * gb.gamma[0];
        double d = 0.0;
        for (const Point& p : sample_points(chart, seed * 17 + 3, npts)) {
          MatrixC4 Rp = residual_matrix_field(pr.chart, pr.U, F.mass, p, gb);
          MatrixC4 want = P * residual_matrix(chart, F, p, gb) * transpose(P);
          d = std::max(d, rel(norm_inf(Rp - want), norm_inf(want)));
        }
        out.push_back(check("p_reflection_covariance", name, seed, d, 1e-10));
      }
    }
  }
  return out;
}

// ---- sectors ----

std::vector<CheckResult> suite_sectors(const RunConfig& cfg, const GammaBasis& gb) {
  cfg.validate();
  std::vector<CheckResult> out;
  const SectorTag tags[4] = {SectorTag::S0, SectorTag::S0tilde, SectorTag::S1,
                             SectorTag::S1tilde};
  for (const std::string& name : cfg.chart_names()) {
    TetradChart chart = find_chart(name, cfg.chart_params.empty()
                                             ? nullptr
                                             : &cfg.chart_params);
    for (std::uint64_t seed : cfg.seed_list()) {
      MultipletField F =
          random_multiplet_field(seed, cfg.degree, cfg.bound, cfg.mass);
      int npts = std::min(cfg.points, 6);
      auto pts = sample_points(chart, seed * 1000003 + 9, npts);
      for (SectorTag tag : tags) {
        MultipletField Fc = apply_sector(F, tag);
        double blk = 0.0, blk_gen = 1e9, red = 0.0;
        std::map<std::string, std::pair<double, double>> idmax;  // name -> (err, tol)
        for (const Point& p : pts) {
          MatrixC4 U = matrix_field_at(gb, Fc, p).val;
          blk = std::max(blk, sector_block_violation(gb, U, tag));
          blk_gen = std::min(blk_gen,
                             sector_block_violation(
                                 gb, matrix_field_at(gb, F, p).val, tag));
          ResidualSet r = reduced_residual(chart, Fc, tag, p, gb);
          ResidualSet full = residual_tensor(chart, Fc, p, gb);
          red = std::max(red, residual_set_dist(r, full));
          for (const auto& e : full.entries) {
            bool kept = false;
            for (const auto& rr : r.entries) kept = kept || rr.first == e.first;
            if (kept) continue;
            for (cplx c : e.second) red = std::max(red, std::abs(c));
          }
          for (const auto& rep : sector_identity_checks(chart, tag, seed, p, gb)) {
            auto& slot = idmax[rep.name];
            slot.first = std::max(
                slot.first, std::max(rep.direct_vs_curvature, rep.magnitude));
            slot.second = rep.tolerance;
          }
        }
        std::string tn = sector_name(tag);
        out.push_back(check("sector_block_table_" + tn, name, seed, blk, 1e-12));
        out.push_back(negative_check("sector_block_table_" + tn +
                                         "_negative_control",
                                     name, seed, blk_gen, 1e-3));
        out.push_back(check("sector_reduced_subset_" + tn, name, seed, red, 1e-10));
        for (const auto& kv : idmax)
          out.push_back(check("sector_identity_" + kv.first, name, seed,
                              kv.second.first, kv.second.second));
        if (tag == SectorTag::S1) {
          double rank = 0.0, rank_gen = 1e9;
          for (const Point& p : pts) {
            rank = std::max(rank, s1_rank_structure_violation(
                                      gb, matrix_field_at(gb, Fc, p).val));
            rank_gen = std::min(rank_gen,
                                s1_rank_structure_violation(
                                    gb, matrix_field_at(gb, F, p).val));
          }
          out.push_back(check("sector_s1_rank_structure", name, seed, rank, 1e-12));
          out.push_back(negative_check("sector_s1_rank_structure_negative_control",
                                       name, seed, rank_gen, 1e-3));
        }
      }
    }
  }
  return out;
}

// ---- U vs V comparison ----

std::vector<CheckResult> suite_compare_v(const RunConfig& cfg, const GammaBasis& gb) {
  cfg.validate();
  std::vector<CheckResult> out;
  for (const std::string& name : cfg.chart_names()) {
    TetradChart chart = find_chart(name, cfg.chart_params.empty()
                                             ? nullptr
                                             : &cfg.chart_params);
    for (std::uint64_t seed : cfg.seed_list()) {
      MultipletField F =
          random_multiplet_field(seed, cfg.degree, cfg.bound, cfg.mass);
      double rows = 0.0, split = 0.0, flat_mag = 0.0, curved_mag = 0.0;
      auto pts = sample_points(chart, seed * 1000003 + 13,
                               std::min(cfg.points, 12));
      for (const Point& p : pts) {
        rows = std::max(rows, residual_set_dist(
                                  v_projected_rows(chart, F, p, gb),
                                  project_residual(
                                      gb, v_residual_matrix(chart, F, p, gb))));
        UVDiscrepancy d = u_v_discrepancy(chart, F, p, gb);
        split = std::max(split, d.prediction_gap);
        flat_mag = std::max(flat_mag, d.magnitude);
        curved_mag = std::max(curved_mag, d.magnitude);
      }
      out.push_back(check("compare_v_projected_rows", name, seed, rows, 1e-9));
      out.push_back(check("compare_v_split_identity", name, seed, split, 1e-10));
      if (name == "minkowski_diag")
        out.push_back(check("compare_v_zero_on_flat", name, seed, flat_mag, 1e-12));
      if (name == "schwarzschild" || name == "flat_spherical")
        out.push_back(negative_check("compare_v_nonzero_when_curved", name, seed,
                                     curved_mag, 1e-4));
    }
  }
  return out;
}

// ---- report assembly ----

std::string gamma_basis_hash(const GammaBasis& gb) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  auto mix = [&](double x) {
    char buf[32];
    int n = std::snprintf(buf, sizeof buf, "%.17g", x);
    for (int i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  };
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        mix(gb.gamma[a].m[i][j].real());
        mix(gb.gamma[a].m[i][j].imag());
      }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string make_report(const RunConfig& cfg, const GammaBasis& gb,
                        const std::string& command,
                        const std::vector<CheckResult>& checks) {
  json root;
  root["tool"] = {{"name", "dkl"}, {"version", "1.0.0"}};
  {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    root["timestamp"] = buf;  // the only non-deterministic field
  }
  root["command"] = command;
  json jc;
  jc["charts"] = cfg.chart_names();
  jc["seeds"] = cfg.seed_list();
  jc["points"] = cfg.points;
  jc["degree"] = cfg.degree;
  jc["bound"] = cfg.bound;
  jc["mass"] = cfg.mass;
  jc["chart_params"] = cfg.chart_params;
  root["config"] = jc;

  CalibrationConstants cc = calibration_constants(gb);
  json conv;
  conv["metric_signature"] = "(+,-,-,-)";
  conv["gamma_basis"] = "Weyl (spinor) basis";
  conv["gamma_basis_hash"] = gamma_basis_hash(gb);
  conv["eps_symbol_orientation"] = "eps^{0123} = +1";
  conv["eps_lowered_coordinate"] = "eps_{0123}(x) = e(x) = det e_{(a)alpha}";
  conv["levi_civita_pseudotensor"] = "E_{...}(x) = J(e) eps_{...}(x)";
  conv["riemann_sign"] =
      "(nabla_a nabla_b - nabla_b nabla_a) W_s = W_n R^n_{s b a}";
  conv["calibration_constants"] = {
      {"s", {cc.s.real(), cc.s.imag()}},   {"v", {cc.v.real(), cc.v.imag()}},
      {"t", {cc.t.real(), cc.t.imag()}},   {"ps", {cc.ps.real(), cc.ps.imag()}},
      {"pv", {cc.pv.real(), cc.pv.imag()}}};
  root["conventions"] = conv;

  json arr = json::array();
  int passed = 0;
  for (const auto& c : checks) {
    json e;
    e["name"] = c.name;
    e["chart"] = c.chart;
    e["seed"] = c.seed;
    e["max_rel_err"] = c.max_rel_err;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    arr.push_back(e);
    if (c.pass) ++passed;
  }
  root["checks"] = arr;
  int total = static_cast<int>(checks.size());
  root["summary"] = {{"total", total},
                     {"passed", passed},
                     {"failed", total - passed},
                     {"pass", passed == total}};
  return root.dump(2) + "\n";
}

}  // namespace dkl
