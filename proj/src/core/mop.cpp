#include "core/mop.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "core/jsonio.h"

namespace wrsg {

namespace {

constexpr double kNugget = 1e-10;
constexpr double kInterpGuard = 1e-8; // grid points above this are fallback-only

double sample_std(const std::vector<double>& v, double mean) {
  double acc = 0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / (static_cast<double>(v.size()) - 1.0));
}

double mean_of(const std::vector<double>& v) {
  double acc = 0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

// Polynomial basis over standardized subset coordinates.  Pinned order:
// intercept, linear terms, squares, then cross products (i outer, j > i).
void poly_basis_row(const std::vector<double>& xs, int degree, double* row) {
  const std::size_t k = xs.size();
  std::size_t c = 0;
  row[c++] = 1.0;
  for (std::size_t i = 0; i < k; ++i) row[c++] = xs[i];
  if (degree == 2) {
    for (std::size_t i = 0; i < k; ++i) row[c++] = xs[i] * xs[i];
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) row[c++] = xs[i] * xs[j];
  }
}

std::size_t poly_basis_size(std::size_t k, int degree) {
  return degree == 2 ? 1 + 2 * k + k * (k - 1) / 2 : 1 + k;
}

void fit_pls(FittedMetamodel& m, const std::vector<std::vector<double>>& xs,
             const std::vector<double>& y) {
  const std::size_t n = xs.size();
  const std::size_t p = poly_basis_size(m.vars.size(), m.degree);
  Eigen::MatrixXd B(n, p);
  std::vector<double> row(p);
  for (std::size_t i = 0; i < n; ++i) {
    poly_basis_row(xs[i], m.degree, row.data());
    for (std::size_t j = 0; j < p; ++j) B(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(j)) = row[j];
  }
  Eigen::Map<const Eigen::VectorXd> yv(y.data(),
                                       static_cast<Eigen::Index>(n));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
  if (qr.rank() < static_cast<Eigen::Index>(p))
    raise("singular_fit", "rank-deficient polynomial normal equations");
  Eigen::VectorXd coef = qr.solve(yv);
  m.coeffs.assign(coef.data(), coef.data() + coef.size());
}

void recompute_kriging_weights(FittedMetamodel& m);

void fit_kriging(FittedMetamodel& m,
                 const std::vector<std::vector<double>>& xs,
                 const std::vector<double>& y) {
  const std::size_t n = xs.size();
  const std::size_t k = m.vars.size();
  Eigen::MatrixXd d2(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0;
      for (std::size_t d = 0; d < k; ++d) {
        const double diff = xs[i][d] - xs[j][d];
        acc += diff * diff;
      }
      d2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  Eigen::Map<const Eigen::VectorXd> yv(y.data(),
                                       static_cast<Eigen::Index>(n));
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));

  // Isotropic theta from a fixed log grid, scored by the concentrated
  // log-likelihood.  Grid points whose exact-interpolation residual
  // (nugget * |alpha|) exceeds the guard only enter as a fallback, so the
  // returned model interpolates whenever the data permit it at all.
  bool have_ok = false, have_any = false;
  double best_ok_ll = 0, best_any_err = 0;
  double sel_theta = 0, sel_mu = 0;
  for (int t = 0; t < 25; ++t) {
    const double theta = std::pow(10.0, -3.0 + 5.0 * t / 24.0);
    Eigen::MatrixXd R = (-theta * d2.array()).exp().matrix();
    R.diagonal().array() += kNugget;
    Eigen::LLT<Eigen::MatrixXd> llt(R);
    if (llt.info() != Eigen::Success) continue;
    double logdet = 0;
    for (Eigen::Index i = 0; i < llt.matrixL().rows(); ++i)
      logdet += 2.0 * std::log(llt.matrixL()(i, i));
    const Eigen::VectorXd rinv_y = llt.solve(yv);
    const Eigen::VectorXd rinv_1 = llt.solve(ones);
    const double mu = ones.dot(rinv_y) / ones.dot(rinv_1);
    const Eigen::VectorXd resid = yv.array() - mu;
    const Eigen::VectorXd alpha = llt.solve(resid);
    const double sigma2 = resid.dot(alpha) / static_cast<double>(n);
    if (!(sigma2 > 0) || !std::isfinite(sigma2)) continue;
    const double ll = -0.5 * static_cast<double>(n) * std::log(sigma2) -
                      0.5 * logdet;
    if (!std::isfinite(ll)) continue;
    double err = 0;
    for (std::size_t i = 0; i < n; ++i)
      err = std::max(err, kNugget *
                              std::abs(alpha(static_cast<Eigen::Index>(i))) /
                              std::max(1.0, std::abs(y[i])));
    const bool ok = err <= kInterpGuard;
    const bool take =
        ok ? (!have_ok || ll > best_ok_ll)
           : (!have_ok && (!have_any || err < best_any_err));
    if (ok) {
      if (!have_ok || ll > best_ok_ll) best_ok_ll = ll;
      have_ok = true;
    } else if (!have_any || err < best_any_err) {
      best_any_err = err;
    }
    have_any = true;
    if (take) {
      sel_theta = theta;
      sel_mu = mu;
    }
  }
  if (!have_any)
    raise("singular_fit", "no admissible correlation length on the theta grid");
  m.theta = sel_theta;
  m.krig_mu = sel_mu;
  m.points = xs;
  m.y = y;
  // The grid search scores candidates with Eigen's vectorized kernels, whose
  // exp() differs from libm in the last bits.  The shipped weights must come
  // from the same scalar path the loader uses, so a saved-and-reloaded model
  // predicts bit-identically to the freshly trained one.
  recompute_kriging_weights(m);
}

double predict_pls(const FittedMetamodel& m, const std::vector<double>& xs) {
  std::vector<double> row(poly_basis_size(m.vars.size(), m.degree));
  poly_basis_row(xs, m.degree, row.data());
  double acc = 0;
  for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * m.coeffs[j];
  return acc;
}

double predict_mls(const FittedMetamodel& m, const std::vector<double>& xs) {
  const std::size_t n = m.points.size();
  const std::size_t k = m.vars.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k + 1),
                                            static_cast<Eigen::Index>(k + 1));
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k + 1));
  std::vector<double> phi(k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    double r2 = 0;
    phi[0] = 1.0;
    for (std::size_t d = 0; d < k; ++d) {
      const double diff = m.points[i][d] - xs[d];
      phi[d + 1] = diff; // centered basis: the intercept is the prediction
      r2 += diff * diff;
    }
    const double w = std::exp(-r2 / (m.bandwidth * m.bandwidth));
    for (std::size_t p = 0; p <= k; ++p) {
      for (std::size_t q = 0; q <= k; ++q)
        a(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) +=
            w * phi[p] * phi[q];
      b(static_cast<Eigen::Index>(p)) += w * phi[p] * m.y[i];
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible())
    raise("singular_fit", "singular local weighted system in MLS prediction");
  const Eigen::VectorXd beta = lu.solve(b);
  if (!std::isfinite(beta(0)))
    raise("singular_fit", "non-finite local fit in MLS prediction");
  return beta(0);
}

double predict_kriging(const FittedMetamodel& m,
                       const std::vector<double>& xs) {
  double acc = m.krig_mu;
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    double r2 = 0;
    for (std::size_t d = 0; d < xs.size(); ++d) {
      const double diff = m.points[i][d] - xs[d];
      r2 += diff * diff;
    }
    acc += m.krig_alpha[i] * std::exp(-m.theta * r2);
  }
  return acc;
}

// Rebuild alpha = R^-1 (y - mu) from the serialized points; deterministic,
// so a loaded model predicts bit-identically to the freshly trained one.
void recompute_kriging_weights(FittedMetamodel& m) {
  const std::size_t n = m.points.size();
  Eigen::MatrixXd r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0;
      for (std::size_t d = 0; d < m.points[i].size(); ++d) {
        const double diff = m.points[i][d] - m.points[j][d];
        acc += diff * diff;
      }
      r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::exp(-m.theta * acc);
    }
  r.diagonal().array() += kNugget;
  Eigen::LLT<Eigen::MatrixXd> llt(r);
  if (llt.info() != Eigen::Success)
    raise("corrupt_model", "stored Kriging system is not positive definite");
  Eigen::VectorXd yv(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) yv(static_cast<Eigen::Index>(i)) = m.y[i];
  const Eigen::VectorXd alpha = llt.solve(
      (yv.array() - m.krig_mu).matrix());
  m.krig_alpha.assign(alpha.data(), alpha.data() + alpha.size());
  double err = 0;
  for (std::size_t i = 0; i < n; ++i)
    err = std::max(err, kNugget *
                            std::abs(alpha(static_cast<Eigen::Index>(i))) /
                            std::max(1.0, std::abs(m.y[i])));
  m.train_interp_err = err;
}

} // namespace

const char* kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::PLS1:
    case ModelKind::PLS2: return "pls";
    case ModelKind::MLS: return "mls";
    default: return "kriging";
  }
}

const TargetModel& MopModel::for_target(const std::string& name) const {
  for (std::size_t t = 0; t < kTargets.size(); ++t)
    if (name == kTargets[t]) return targets[t];
  raise("invalid_argument", "unknown target: " + name);
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    raise("invalid_argument", "correlation needs equal-length vectors");
  if (a.size() < 3)
    raise("invalid_argument", "correlation needs at least 3 points");
  const double ma = mean_of(a), mb = mean_of(b);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  const double denom = std::sqrt(saa * sbb);
  if (denom == 0.0)
    raise("degenerate_variance", "correlation of a constant vector");
  return sab / denom;
}

CopResult cop_statistic(const std::vector<double>& actual,
                        const std::vector<double>& predicted) {
  if (actual.size() != predicted.size())
    raise("invalid_argument", "CoP needs equal-length vectors");
  if (actual.size() < 3)
    raise("invalid_argument", "CoP needs at least 3 test points");
  const double ma = mean_of(actual), mp = mean_of(predicted);
  double sap = 0, saa = 0, spp = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    sap += (actual[i] - ma) * (predicted[i] - mp);
    saa += (actual[i] - ma) * (actual[i] - ma);
    spp += (predicted[i] - mp) * (predicted[i] - mp);
  }
  if (saa == 0.0)
    raise("degenerate_test_set", "test targets are constant");
  if (spp == 0.0) return {0.0, "constant_predictor"};
  const double r = sap / std::sqrt(saa * spp);
  return {std::clamp(r * r, 0.0, 1.0), ""};
}

std::vector<std::vector<int>> significance_subsets(
    const std::array<double, 6>& rho_abs, int n_vars) {
  std::vector<int> strong, moderate, all;
  for (int j = 0; j < n_vars; ++j) {
    const double r = std::abs(rho_abs[static_cast<std::size_t>(j)]);
    if (r >= 0.7) strong.push_back(j);
    if (r >= 0.3) moderate.push_back(j);
    all.push_back(j);
  }
  std::vector<std::vector<int>> out;
  for (auto* s : {&strong, &moderate, &all})
    if (!s->empty() && std::find(out.begin(), out.end(), *s) == out.end())
      out.push_back(*s);
  return out;
}

FittedMetamodel fit_metamodel(ModelKind kind, int degree, double bandwidth,
                              const std::string& target,
                              const std::vector<int>& vars,
                              const std::vector<std::vector<double>>& x_rows,
                              const std::vector<double>& y) {
  if (x_rows.size() != y.size() || x_rows.empty())
    raise("invalid_argument", "training inputs and targets disagree in size");
  if (x_rows.size() < 3)
    raise("invalid_argument", "metamodel fitting needs at least 3 samples");
  if ((kind == ModelKind::MLS && !(bandwidth > 0)) ||
      (kind == ModelKind::PLS1 && degree != 1) ||
      (kind == ModelKind::PLS2 && degree != 2))
    raise("invalid_argument", "inconsistent metamodel hyperparameters");

  FittedMetamodel m;
  m.target = target;
  m.kind = kind;
  m.degree = (kind == ModelKind::PLS1 || kind == ModelKind::PLS2) ? degree : 0;
  m.bandwidth = kind == ModelKind::MLS ? bandwidth : 0;
  m.vars = vars;

  const std::size_t n = x_rows.size();
  const std::size_t k = vars.size();
  m.scaler.means.resize(k);
  m.scaler.stds.resize(k);
  for (std::size_t d = 0; d < k; ++d) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = x_rows[i][d];
    m.scaler.means[d] = mean_of(col);
    m.scaler.stds[d] = sample_std(col, m.scaler.means[d]);
    if (!(m.scaler.stds[d] > 0))
      raise("singular_fit", "zero-variance input column");
  }
  std::vector<std::vector<double>> xs(n, std::vector<double>(k));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d < k; ++d)
      xs[i][d] = (x_rows[i][d] - m.scaler.means[d]) / m.scaler.stds[d];

  switch (kind) {
    case ModelKind::PLS1:
    case ModelKind::PLS2:
      fit_pls(m, xs, y);
      break;
    case ModelKind::MLS:
      m.points = std::move(xs);
      m.y = y;
      break;
    case ModelKind::KRIGING:
      fit_kriging(m, xs, y);
      break;
  }
  return m;
}

double predict_subset(const FittedMetamodel& m,
                      const std::vector<double>& x_subset_raw) {
  if (x_subset_raw.size() != m.vars.size())
    raise("invalid_argument", "prediction point has wrong dimensionality");
  std::vector<double> xs(x_subset_raw.size());
  for (std::size_t d = 0; d < xs.size(); ++d) {
    if (!std::isfinite(x_subset_raw[d]))
      raise("invalid_argument", "non-finite prediction input");
    xs[d] = (x_subset_raw[d] - m.scaler.means[d]) / m.scaler.stds[d];
  }
  switch (m.kind) {
    case ModelKind::PLS1:
    case ModelKind::PLS2: return predict_pls(m, xs);
    case ModelKind::MLS: return predict_mls(m, xs);
    default: return predict_kriging(m, xs);
  }
}

double FittedMetamodel::predict(const std::array<double, 6>& x_raw) const {
  std::vector<double> sub(vars.size());
  for (std::size_t d = 0; d < vars.size(); ++d)
    sub[d] = x_raw[static_cast<std::size_t>(vars[d])];
  return predict_subset(*this, sub);
}

MopModel train_mop(const Dataset& ds, const SplitSpec& split) {
  Dataset train, test;
  split_dataset(ds, split, &train, &test);

  const std::size_t ntr = train.samples.size();
  const std::size_t nte = test.samples.size();
  auto raw_row = [](const Sample& s) {
    return std::array<double, 6>{s.x.d1, s.x.d2,  s.x.l,
                                 s.x.pbh, s.x.pbw, static_cast<double>(s.x.na)};
  };

  // Constant input columns cannot be standardized; they are screened out of
  // every candidate subset up front.
  std::array<bool, 6> retained{};
  for (int j = 0; j < 6; ++j) {
    std::vector<double> col(ntr);
    for (std::size_t i = 0; i < ntr; ++i)
      col[i] = raw_row(train.samples[i])[static_cast<std::size_t>(j)];
    const double sd = sample_std(col, mean_of(col));
    retained[static_cast<std::size_t>(j)] = sd > 0;
  }

  MopModel mop;
  mop.split = split;
  mop.has_split = true;

  for (std::size_t t = 0; t < kTargets.size(); ++t) {
    std::vector<double> y_tr(ntr), y_te(nte);
    for (std::size_t i = 0; i < ntr; ++i) {
      const auto& p = train.samples[i].p;
      y_tr[i] = t == 0 ? p.pout_kva : (t == 1 ? p.w_kg : p.eta_pct);
    }
    for (std::size_t i = 0; i < nte; ++i) {
      const auto& p = test.samples[i].p;
      y_te[i] = t == 0 ? p.pout_kva : (t == 1 ? p.w_kg : p.eta_pct);
    }
    if (sample_std(y_te, mean_of(y_te)) == 0.0 ||
        sample_std(y_tr, mean_of(y_tr)) == 0.0)
      raise("degenerate_test_set", std::string("target ") + kTargets[t] +
                                       " is constant across the dataset");

    std::array<double, 6> rho{};
    for (int j = 0; j < 6; ++j) {
      if (!retained[static_cast<std::size_t>(j)]) continue;
      std::vector<double> col(ntr);
      for (std::size_t i = 0; i < ntr; ++i)
        col[i] = raw_row(train.samples[i])[static_cast<std::size_t>(j)];
      rho[static_cast<std::size_t>(j)] = pearson(col, y_tr);
      mop.significance.rho[static_cast<std::size_t>(j)][t] =
          rho[static_cast<std::size_t>(j)];
    }
    std::array<double, 6> rho_screen = rho;
    for (int j = 0; j < 6; ++j)
      if (!retained[static_cast<std::size_t>(j)])
        rho_screen[static_cast<std::size_t>(j)] = 0.0; // excluded from "all" too
    auto raw_subsets = significance_subsets(rho_screen, 6);
    std::vector<std::vector<int>> subsets;
    for (auto& sub : raw_subsets) {
      std::erase_if(sub, [&retained](int j) {
        return !retained[static_cast<std::size_t>(j)];
      });
      if (!sub.empty() &&
          std::find(subsets.begin(), subsets.end(), sub) == subsets.end())
        subsets.push_back(sub);
    }
    if (subsets.empty())
      raise("no_viable_metamodel", "every input column is constant");

    TargetModel& tm = mop.targets[t];
    struct Hyper { ModelKind kind; int degree; double bandwidth; };
    const std::array<Hyper, 6> kinds = {{{ModelKind::PLS1, 1, 0},
                                         {ModelKind::PLS2, 2, 0},
                                         {ModelKind::MLS, 0, 0.5},
                                         {ModelKind::MLS, 0, 1.0},
                                         {ModelKind::MLS, 0, 2.0},
                                         {ModelKind::KRIGING, 0, 0}}};
    bool have_winner = false;
    FittedMetamodel best_model;
    CandidateScore best_score;
    for (const auto& sub : subsets) {
      std::vector<std::vector<double>> x_tr(ntr), x_te(nte);
      for (std::size_t i = 0; i < ntr; ++i)
        for (int j : sub)
          x_tr[i].push_back(
              raw_row(train.samples[i])[static_cast<std::size_t>(j)]);
      for (std::size_t i = 0; i < nte; ++i)
        for (int j : sub)
          x_te[i].push_back(
              raw_row(test.samples[i])[static_cast<std::size_t>(j)]);
      for (const auto& hy : kinds) {
        ++tm.candidates_tried;
        CandidateScore sc;
        sc.kind = hy.kind;
        sc.degree = hy.degree;
        sc.bandwidth = hy.bandwidth;
        sc.vars = sub;
        try {
          FittedMetamodel cand = fit_metamodel(hy.kind, hy.degree,
                                               hy.bandwidth, kTargets[t], sub,
                                               x_tr, y_tr);
          std::vector<double> pred(nte);
          for (std::size_t i = 0; i < nte; ++i)
            pred[i] = predict_subset(cand, x_te[i]);
          const CopResult cr = cop_statistic(y_te, pred);
          double mse = 0;
          for (std::size_t i = 0; i < nte; ++i)
            mse += (pred[i] - y_te[i]) * (pred[i] - y_te[i]);
          sc.cop = cr.value;
          sc.rmse = std::sqrt(mse / static_cast<double>(nte));
          sc.ok = true;
          const bool better =
              !have_winner || sc.cop > best_score.cop ||
              (sc.cop == best_score.cop &&
               (sc.vars.size() < best_score.vars.size() ||
                (sc.vars.size() == best_score.vars.size() &&
                 (static_cast<int>(sc.kind) < static_cast<int>(best_score.kind) ||
                  (sc.kind == best_score.kind &&
                   sc.bandwidth < best_score.bandwidth)))));
          if (better) {
            best_model = std::move(cand);
            best_score = sc;
            have_winner = true;
          }
        } catch (const Error& e) {
          sc.ok = false;
          sc.fail_id = e.id();
          if (e.id() == "degenerate_test_set") throw;
        }
        tm.candidates.push_back(sc);
      }
    }
    if (!have_winner)
      raise("no_viable_metamodel", std::string("no candidate fits target ") +
                                       kTargets[t]);
    tm.winner = std::move(best_model);
    tm.cop = best_score.cop;
    tm.rmse = best_score.rmse;
  }
  return mop;
}

CopMatrix cop_matrix(const MopModel& mop, const Dataset& ds) {
  if (!mop.has_split)
    raise("missing_split",
          "per-variable CoP needs the training split; train in-process first");
  Dataset train, test;
  split_dataset(ds, mop.split, &train, &test);

  CopMatrix out;
  auto coord = [](const Sample& s, int j) {
    switch (j) {
      case 0: return s.x.d1;
      case 1: return s.x.d2;
      case 2: return s.x.l;
      case 3: return s.x.pbh;
      case 4: return s.x.pbw;
      default: return static_cast<double>(s.x.na);
    }
  };
  for (std::size_t t = 0; t < kTargets.size(); ++t) {
    const auto& tm = mop.targets[t];
    out.total[t] = tm.cop;
    std::vector<double> y_tr, y_te;
    for (const auto& s : train.samples)
      y_tr.push_back(t == 0 ? s.p.pout_kva : (t == 1 ? s.p.w_kg : s.p.eta_pct));
    for (const auto& s : test.samples)
      y_te.push_back(t == 0 ? s.p.pout_kva : (t == 1 ? s.p.w_kg : s.p.eta_pct));
    for (int j = 0; j < 6; ++j) {
      try {
        std::vector<std::vector<double>> x_tr, x_te;
        for (const auto& s : train.samples) x_tr.push_back({coord(s, j)});
        for (const auto& s : test.samples) x_te.push_back({coord(s, j)});
        FittedMetamodel refit = fit_metamodel(
            tm.winner.kind, tm.winner.degree, tm.winner.bandwidth,
            kTargets[t], {j}, x_tr, y_tr);
        std::vector<double> pred;
        for (const auto& row : x_te)
          pred.push_back(predict_subset(refit, row));
        out.entry[static_cast<std::size_t>(j)][t] =
            cop_statistic(y_te, pred).value;
      } catch (const Error& e) {
        out.entry[static_cast<std::size_t>(j)][t] = 0.0;
        out.warnings.push_back(std::string(kTargets[t]) + ":" +
                               kVarNames[static_cast<std::size_t>(j)] + ":" +
                               e.id());
      }
    }
  }
  return out;
}

std::string serialize_model(const MopModel& mop) {
  std::string out;
  for (std::size_t t = 0; t < kTargets.size(); ++t) {
    const auto& tm = mop.targets[t];
    const auto& w = tm.winner;
    JsonWriter j;
    j.obj_begin();
    j.key("target").str(kTargets[t]);
    j.key("kind").str(kind_name(w.kind));
    j.key("hyper").obj_begin();
    if (w.kind == ModelKind::PLS1 || w.kind == ModelKind::PLS2)
      j.key("degree").integer(w.degree);
    else if (w.kind == ModelKind::MLS)
      j.key("bandwidth").num(w.bandwidth);
    else
      j.key("theta").num(w.theta);
    j.obj_end();
    j.key("variables").arr_begin();
    for (int v : w.vars) j.str(kVarNames[static_cast<std::size_t>(v)]);
    j.arr_end();
    j.key("scaler").obj_begin();
    j.key("means").arr_begin();
    for (double v : w.scaler.means) j.num(v);
    j.arr_end();
    j.key("stds").arr_begin();
    for (double v : w.scaler.stds) j.num(v);
    j.arr_end();
    j.obj_end();
    j.key("payload").obj_begin();
    if (w.kind == ModelKind::PLS1 || w.kind == ModelKind::PLS2) {
      j.key("coefficients").arr_begin();
      for (double v : w.coeffs) j.num(v);
      j.arr_end();
    } else {
      if (w.kind == ModelKind::KRIGING) j.key("mu").num(w.krig_mu);
      j.key("points").arr_begin();
      for (const auto& row : w.points) {
        j.arr_begin();
        for (double v : row) j.num(v);
        j.arr_end();
      }
      j.arr_end();
      j.key("y").arr_begin();
      for (double v : w.y) j.num(v);
      j.arr_end();
    }
    j.obj_end();
    j.key("cop").num(tm.cop);
    j.key("candidates_tried").integer(tm.candidates_tried);
    j.obj_end();
    out += j.text();
    out += '\n';
  }
  return out;
}

void save_model(const MopModel& mop, const std::string& path) {
  write_file_atomic(path, serialize_model(mop));
}

MopModel load_model(const std::string& path) {
  const auto lines = split_lines(read_file(path));
  std::vector<std::string> nonempty;
  for (const auto& l : lines)
    if (!l.empty()) nonempty.push_back(l);
  if (nonempty.size() != kTargets.size())
    raise("corrupt_model", "model file must hold exactly one object per target");

  MopModel mop;
  try {
    for (std::size_t t = 0; t < kTargets.size(); ++t) {
      const auto j = parse_json_line(nonempty[t], "corrupt_model");
      if (j.at("target").get<std::string>() != kTargets[t])
        raise("corrupt_model", "unexpected target order in model file");
      TargetModel& tm = mop.targets[t];
      FittedMetamodel& w = tm.winner;
      w.target = kTargets[t];
      const std::string kind = j.at("kind").get<std::string>();
      const auto& hyper = j.at("hyper");
      if (kind == "pls") {
        w.degree = hyper.at("degree").get<int>();
        if (w.degree != 1 && w.degree != 2)
          raise("corrupt_model", "unsupported polynomial degree");
        w.kind = w.degree == 1 ? ModelKind::PLS1 : ModelKind::PLS2;
      } else if (kind == "mls") {
        w.kind = ModelKind::MLS;
        w.bandwidth = hyper.at("bandwidth").get<double>();
      } else if (kind == "kriging") {
        w.kind = ModelKind::KRIGING;
        w.theta = hyper.at("theta").get<double>();
      } else {
        raise("corrupt_model", "unknown metamodel kind: " + kind);
      }
      for (const auto& name : j.at("variables")) {
        const std::string vn = name.get<std::string>();
        int idx = -1;
        for (std::size_t v = 0; v < kVarNames.size(); ++v)
          if (vn == kVarNames[v]) idx = static_cast<int>(v);
        if (idx < 0) raise("corrupt_model", "unknown variable: " + vn);
        w.vars.push_back(idx);
      }
      for (const auto& v : j.at("scaler").at("means"))
        w.scaler.means.push_back(v.get<double>());
      for (const auto& v : j.at("scaler").at("stds"))
        w.scaler.stds.push_back(v.get<double>());
      if (w.scaler.means.size() != w.vars.size() ||
          w.scaler.stds.size() != w.vars.size())
        raise("corrupt_model", "scaler width disagrees with variable subset");
      const auto& payload = j.at("payload");
      if (w.kind == ModelKind::PLS1 || w.kind == ModelKind::PLS2) {
        for (const auto& v : payload.at("coefficients"))
          w.coeffs.push_back(v.get<double>());
        if (w.coeffs.size() != poly_basis_size(w.vars.size(), w.degree))
          raise("corrupt_model", "coefficient count disagrees with basis");
      } else {
        for (const auto& row : payload.at("points")) {
          std::vector<double> r;
          for (const auto& v : row) r.push_back(v.get<double>());
          if (r.size() != w.vars.size())
            raise("corrupt_model", "training point width disagrees with subset");
          w.points.push_back(std::move(r));
        }
        for (const auto& v : payload.at("y")) w.y.push_back(v.get<double>());
        if (w.y.size() != w.points.size())
          raise("corrupt_model", "training targets disagree with points");
        if (w.kind == ModelKind::KRIGING) {
          w.krig_mu = payload.at("mu").get<double>();
          recompute_kriging_weights(w);
        }
      }
      tm.cop = j.at("cop").get<double>();
      tm.candidates_tried = j.at("candidates_tried").get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    raise("corrupt_model", std::string("model field error: ") + e.what());
  }
  return mop;
}

std::string model_fingerprint(const MopModel& mop) {
  return hex64(fnv1a64(serialize_model(mop)));
}

} // namespace wrsg
