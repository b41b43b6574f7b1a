#include "vbgk/app.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <thread>

#include "vbgk/errors.hpp"
#include "vbgk/snapshot.hpp"

namespace vbgk::app {

namespace fs = std::filesystem;

namespace {

double max_abs(const ScalarField& f) { return linf_norm(f); }

std::pair<ScalarField, ScalarField> initial_velocity(const RunConfig& cfg,
                                                     const Grid& grid) {
  switch (cfg.initial_data) {
    case InitialData::taylor_green: {
      const auto tg = taylor_green(0.0, cfg.nu, grid);
      return {tg.state.u1, tg.state.u2};
    }
    case InitialData::zero:
      return {ScalarField(grid), ScalarField(grid)};
    case InitialData::file: {
      if (cfg.initial_file.empty())
        throw ParseError("initial_data = file needs initial_file", 0);
      Snapshot snap = read_snapshot(cfg.initial_file);
      if (snap.components.size() < 2)
        throw ParseError("initial file needs two velocity components", 0);
      if (!(snap.components[0].grid == grid))
        throw ParseError("initial file grid n = " +
                             std::to_string(snap.components[0].grid.n()) +
                             " does not match n = " + std::to_string(grid.n()),
                         0);
      return {std::move(snap.components[0]), std::move(snap.components[1])};
    }
  }
  throw InvalidArgument("unknown initial data kind");
}

void require_divergence_free(const ScalarField& u1, const ScalarField& u2) {
  const double div = linf_norm(divergence(u1, u2));
  if (div > kDivergenceTolerance)
    throw NotDivergenceFree("initial velocity has |div u|_inf = " +
                            format_real(div));
}

std::string record_row(const DiagnosticsRecord& r, double sup_bound) {
  std::string row;
  for (double v : {r.t, r.e0, r.es, r.dev_k, r.dev_h, r.dev_m, r.dev_xi,
                   r.eta_surrogate, r.rho_min, r.rho_max, sup_bound}) {
    if (!row.empty()) row += ',';
    row += format_real(v);
  }
  return row;
}

void write_state_snapshot(const std::string& dir, double t,
                          const KineticState& f) {
  const MacroFields mf = macro_fields(f);
  Snapshot snap;
  snap.time = t;
  snap.components = {mf.rho, mf.u1, mf.u2};
  write_snapshot((fs::path(dir) / ("snapshot_t" + format_real(t) + ".vbgk")).string(),
                 snap);
}

std::ofstream open_text(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseFailure;
  } catch (const SimulationAborted& e) {
    err << "blow-up: " << e.what() << " (last good t = "
        << format_real(e.last_good_time()) << ")\n";
    return kBlowup;
  } catch (const NonPositiveInput& e) {
    err << "constraint violation: " << e.what() << '\n';
    return kConstraintViolation;
  } catch (const ConstraintViolation& e) {
    err << "constraint violation: " << e.what() << '\n';
    return kConstraintViolation;
  } catch (const NotDivergenceFree& e) {
    err << "constraint violation: " << e.what() << '\n';
    return kConstraintViolation;
  } catch (const InvalidArgument& e) {
    err << "constraint violation: " << e.what() << '\n';
    return kConstraintViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConstraintViolation;
  }
}

void enforce_gates(const PreparedRun& run) {
  run.cfg.solver.validate();
  if (run.cfg.subcharacteristic == SubcharacteristicMode::enforce &&
      !run.subcharacteristic.pass)
    throw ConstraintViolation(
        "sub-characteristic condition fails: min eigenvalue real part " +
        format_real(run.subcharacteristic.min_real_part));
}

}  // namespace

std::unique_ptr<ReferenceTrajectory> PreparedRun::make_reference() const {
  if (cfg.initial_data == InitialData::taylor_green)
    return std::make_unique<TaylorGreenTrajectory>(cfg.nu, grid);
  NsState s{u1, u2, 0.0, cfg.nu};
  return std::make_unique<NumericalTrajectory>(std::move(s), cfg.ns_max_dt);
}

PreparedRun prepare(const RunConfig& cfg_in, double epsilon) {
  RunConfig cfg = cfg_in;
  cfg.epsilon = epsilon;
  const ModelParams params = cfg.params();
  const Grid grid(cfg.n);
  auto [u1, u2] = initial_velocity(cfg, grid);
  require_divergence_free(u1, u2);

  const double umax = std::max(max_abs(u1), max_abs(u2));
  StateBox box = default_state_box(params, umax);
  if (cfg.box_rho_min) box.rho_min = *cfg.box_rho_min;
  if (cfg.box_rho_max) box.rho_max = *cfg.box_rho_max;
  if (cfg.box_u_max) {
    box.u1_min = box.u2_min = -*cfg.box_u_max;
    box.u1_max = box.u2_max = *cfg.box_u_max;
  }
  if (!(box.rho_min > 0.0) || !(box.rho_max >= box.rho_min))
    throw ConstraintViolation("state box density range must be positive");
  const SubcharacteristicReport sub = check_subcharacteristic(params, box);
  const double M =
      cfg.bound_M ? *cfg.bound_M : default_bound_M(u1, u2, cfg.rho_bar, cfg.s);

  return PreparedRun{std::move(cfg), params, grid, std::move(u1), std::move(u2),
                     box, sub, M};
}

SimulationOutcome simulate(const PreparedRun& prepared, const std::string& out_dir) {
  SimulationOutcome outcome;
  std::ofstream csv;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    csv = open_text(fs::path(out_dir) / "records.csv");
    csv << kRecordsHeader << '\n';
  }

  auto ref = prepared.make_reference();
  const KineticState f0 = initial_kinetic_state(prepared.u1, prepared.u2, prepared.params);
  const std::vector<double>& snaps = prepared.cfg.solver.checkpoints;
  double sup_bound = 0.0;

  auto on_record = [&](const RecordEvent& ev) {
    const NsState u = ref->at(ev.t);
    const NsPressure p = ref->pressure_at(ev.t);
    DiagnosticsRecord rec = record_diagnostics(ev.t, ev.state, u, p, prepared.cfg.s_prime);
    sup_bound = std::max(sup_bound, rec.bound_functional);
    if (csv.is_open()) {
      csv << record_row(rec, sup_bound) << '\n';
      csv.flush();
      if (ev.checkpoint &&
          std::find(snaps.begin(), snaps.end(), ev.t) != snaps.end())
        write_state_snapshot(out_dir, ev.t, ev.state);
    }
    outcome.last_good_time = ev.t;
    outcome.records.push_back(std::move(rec));
  };

  try {
    vbgk::run(f0, prepared.cfg.solver, on_record);
  } catch (const SimulationAborted& e) {
    outcome.completed = false;
    outcome.failure = e.what();
    outcome.last_good_time = e.last_good_time();
  } catch (const NonPositiveDensity& e) {
    outcome.completed = false;
    outcome.failure = e.what();
  }
  return outcome;
}

namespace {

SweepMember summarize(double eps, const SimulationOutcome& o) {
  SweepMember m;
  m.epsilon = eps;
  m.completed = o.completed;
  m.failure = o.failure;
  for (const auto& r : o.records) {
    m.sup_e0 = std::max(m.sup_e0, r.e0);
    m.sup_es = std::max(m.sup_es, r.es);
    m.sup_dev_k = std::max(m.sup_dev_k, r.dev_k);
    m.sup_dev_h = std::max(m.sup_dev_h, r.dev_h);
    m.sup_dev_m = std::max(m.sup_dev_m, r.dev_m);
    m.sup_dev_xi = std::max(m.sup_dev_xi, r.dev_xi);
    m.sup_bound = std::max(m.sup_bound, r.bound_functional);
  }
  if (!o.records.empty()) {
    m.pairing = weighted_pairings(o.records, false);
    m.reference_pairing = weighted_pairings(o.records, true);
  }
  return m;
}

std::string member_dir(const std::string& out_dir, double eps) {
  return (fs::path(out_dir) / ("eps_" + format_real(eps))).string();
}

}  // namespace

SweepResult run_sweep(const RunConfig& cfg, std::vector<double> epsilons,
                      const std::string& out_dir, int threads, bool synthetic) {
  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  if (std::adjacent_find(epsilons.begin(), epsilons.end()) != epsilons.end())
    throw InvalidArgument("duplicate epsilon in sweep");
  if (epsilons.size() < 3)
    throw TooFewPoints("a sweep needs at least 3 epsilons");

  SweepResult result;
  result.members.resize(epsilons.size());

  if (synthetic) {
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
      const double e = 2.0 * std::sqrt(epsilons[i]);
      SweepMember& m = result.members[i];
      m.epsilon = epsilons[i];
      m.completed = true;
      m.sup_e0 = m.sup_es = e;
      m.sup_dev_k = m.sup_dev_h = m.sup_dev_m = m.sup_dev_xi = e;
    }
  } else {
    // Parameters and initial data are checked for every member up front.
    std::vector<PreparedRun> runs;
    runs.reserve(epsilons.size());
    for (double eps : epsilons) {
      runs.push_back(prepare(cfg, eps));
      enforce_gates(runs.back());
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < runs.size(); i = next++) {
        const std::string dir =
            out_dir.empty() ? std::string() : member_dir(out_dir, epsilons[i]);
        result.members[i] = summarize(epsilons[i], simulate(runs[i], dir));
      }
    };
    const int count = std::clamp<int>(threads, 1, static_cast<int>(runs.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }

  result.completed = std::all_of(result.members.begin(), result.members.end(),
                                 [](const SweepMember& m) { return m.completed; });
  if (!result.completed) return result;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double sp = cfg.s_prime, s = cfg.s;
  struct Column {
    const char* name;
    double SweepMember::*field;
    double theory, theory_alt;
  };
  const Column columns[] = {
      {"e0", &SweepMember::sup_e0, 0.5, nan},
      {"es", &SweepMember::sup_es, 0.5 - sp / (2.0 * s), sp / (2.0 * s)},
      {"dev_k", &SweepMember::sup_dev_k, 2.0, nan},
      {"dev_h", &SweepMember::sup_dev_h, 2.0, nan},
      {"dev_m", &SweepMember::sup_dev_m, 2.0, nan},
      {"dev_xi", &SweepMember::sup_dev_xi, 2.0, nan},
  };
  for (const Column& c : columns) {
    std::vector<double> errors;
    for (const auto& m : result.members) errors.push_back(m.*(c.field));
    RateLine line{c.name, {}, c.theory, c.theory_alt};
    try {
      line.fit = fit_rate(epsilons, errors);
    } catch (const NonPositiveError&) {
      line.fit.epsilons = epsilons;
      line.fit.errors = errors;
      line.fit.slope = line.fit.intercept = line.fit.residual = nan;
    }
    result.rates.push_back(std::move(line));
  }
  return result;
}

bool pairings_converge(const std::vector<SweepMember>& members, int test_index,
                       int allowed_violations) {
  constexpr double kFloor = 1e-12;
  int violations = 0;
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& m : members) {
    double err = std::abs(m.pairing[test_index] - m.reference_pairing[test_index]);
    if (!std::isfinite(err)) return false;
    if (err < kFloor) err = 0.0;
    if (err > prev) ++violations;
    prev = err;
  }
  return violations <= allowed_violations;
}

int threads_from_env() {
  const char* env = std::getenv("VBGK_THREADS");
  if (env != nullptr) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_validate(const std::string& config_path, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    cfg.solver.validate();
    const PreparedRun run = prepare(cfg, cfg.epsilon);
    const ModelParams& p = run.params;
    const auto& sub = run.subcharacteristic;
    const double relax = cfg.solver.c_relax * p.tau() * p.epsilon() * p.epsilon();
    const double transp =
        cfg.solver.c_transp * p.epsilon() * run.grid.dx() / p.lambda();

    out << "a = " << format_real(p.a()) << "  (nu / (2 lambda^2 tau), need 0 < a < 1/4)\n";
    out << "state box: rho in [" << format_real(run.box.rho_min) << ", "
        << format_real(run.box.rho_max) << "], u1 in [" << format_real(run.box.u1_min)
        << ", " << format_real(run.box.u1_max) << "], u2 in ["
        << format_real(run.box.u2_min) << ", " << format_real(run.box.u2_max) << "]\n";
    out << "sub-characteristic min eigenvalue real part = "
        << format_real(sub.min_real_part) << " at (rho, u1, u2) = ("
        << format_real(sub.worst_state[0]) << ", " << format_real(sub.worst_state[1])
        << ", " << format_real(sub.worst_state[2]) << "), Maxwellian "
        << sub.worst_maxwellian + 1 << ": " << (sub.pass ? "pass" : "FAIL")
        << (cfg.subcharacteristic == SubcharacteristicMode::enforce ? " (enforced)"
                                                                    : " (reported)")
        << '\n';
    out << "dt policy: " << (cfg.solver.dt_policy == DtPolicy::fixed ? "fixed" : "auto")
        << ", relaxation limit = " << format_real(relax)
        << ", transport limit = " << format_real(transp)
        << ", dt = " << format_real(nominal_dt(cfg.solver, p, run.grid)) << '\n';
    out << "bound M = " << format_real(run.bound_M) << '\n';
    enforce_gates(run);
    out << "ok\n";
    return static_cast<int>(kOk);
  });
}

int cmd_run(const std::string& config_path,
            const std::optional<std::string>& out_dir, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    const PreparedRun run = prepare(cfg, cfg.epsilon);
    enforce_gates(run);
    const std::string dir = out_dir.value_or(cfg.output_dir);
    const SimulationOutcome o = simulate(run, dir);
    if (!o.completed) {
      err << "blow-up: " << o.failure << " (last good t = "
          << format_real(o.last_good_time) << "); partial records in " << dir << '\n';
      return static_cast<int>(kBlowup);
    }
    const BoundednessReport b = boundedness_report(o.records, run.bound_M);
    out << "records: " << o.records.size() << " rows in "
        << (fs::path(dir) / "records.csv").string() << '\n';
    out << "sup bound functional = " << format_real(b.supremum) << " (M = "
        << format_real(run.bound_M) << ")\n";
    return static_cast<int>(kOk);
  });
}

int cmd_sweep(const std::string& config_path,
              const std::optional<std::vector<double>>& epsilons,
              const std::optional<std::string>& out_dir, int threads,
              bool synthetic, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    const std::vector<double> eps = epsilons.value_or(cfg.epsilons);
    if (eps.empty()) throw ParseError("no epsilons given for the sweep", 0);
    const std::string dir = out_dir.value_or(cfg.output_dir);
    const SweepResult r = run_sweep(cfg, eps, dir, threads, synthetic);

    fs::create_directories(dir);
    {
      std::ofstream study = open_text(fs::path(dir) / "study.csv");
      study << "epsilon,status,sup_e0,sup_es,sup_dev_k,sup_dev_h,sup_dev_m,"
               "sup_dev_xi,sup_bound_functional";
      for (const char* name : kPressureTestNames)
        study << ",pairing_" << name << ",reference_" << name;
      study << '\n';
      for (const auto& m : r.members) {
        study << format_real(m.epsilon) << ',' << (m.completed ? "ok" : "failed");
        for (double v : {m.sup_e0, m.sup_es, m.sup_dev_k, m.sup_dev_h, m.sup_dev_m,
                         m.sup_dev_xi, m.sup_bound})
          study << ',' << format_real(v);
        for (int j = 0; j < 3; ++j)
          study << ',' << format_real(m.pairing[j]) << ','
                << format_real(m.reference_pairing[j]);
        study << '\n';
      }
    }
    if (!r.completed) {
      for (const auto& m : r.members)
        if (!m.completed)
          err << "member eps = " << format_real(m.epsilon) << " failed: " << m.failure
              << '\n';
      err << "sweep aborted; partial results in " << dir << '\n';
      return static_cast<int>(kBlowup);
    }

    std::ofstream rates = open_text(fs::path(dir) / "rates.csv");
    rates << "quantity,slope,intercept,residual,theory_slope,theory_slope_alt\n";
    for (const auto& line : r.rates) {
      rates << line.quantity << ',' << format_real(line.fit.slope) << ','
            << format_real(line.fit.intercept) << ',' << format_real(line.fit.residual)
            << ',' << format_real(line.theory) << ','
            << (std::isnan(line.theory_alt) ? std::string() : format_real(line.theory_alt))
            << '\n';
      out << std::left << std::setw(7) << line.quantity << " slope "
          << format_real(line.fit.slope) << "  residual "
          << format_real(line.fit.residual) << "  theory " << format_real(line.theory);
      if (!std::isnan(line.theory_alt)) out << " / " << format_real(line.theory_alt);
      out << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_reference(const std::string& config_path,
                  const std::optional<std::string>& out_dir, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    const PreparedRun run = prepare(cfg, cfg.epsilon);
    cfg.solver.validate();
    const std::string dir = out_dir.value_or(cfg.output_dir);
    fs::create_directories(dir);

    const std::vector<double> levels = time_levels(cfg.solver, run.params, run.grid);
    auto ref = run.make_reference();
    std::ofstream csv = open_text(fs::path(dir) / "reference.csv");
    csv << "t,energy\n";
    int written = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (!is_record_level(cfg.solver, levels, i)) continue;
      const double t = levels[i];
      NsState u = ref->at(t);
      NsPressure p = ref->pressure_at(t);
      csv << format_real(t) << ',' << format_real(kinetic_energy(u)) << '\n';
      Snapshot snap;
      snap.time = t;
      snap.components = {std::move(u.u1), std::move(u.u2), std::move(p.p)};
      char name[32];
      std::snprintf(name, sizeof(name), "ref_%06d.vbgk", written);
      write_snapshot((fs::path(dir) / name).string(), snap);
      ++written;
    }
    out << "reference: " << written << " snapshots in " << dir << '\n';
    return static_cast<int>(kOk);
  });
}

}  // namespace vbgk::app
