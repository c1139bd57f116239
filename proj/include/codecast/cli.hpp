#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "codecast/baselines.hpp"
#include "codecast/chunked.hpp"
#include "codecast/degree_model.hpp"
#include "codecast/errors.hpp"
#include "codecast/growth.hpp"
#include "codecast/io.hpp"
#include "codecast/optimizer.hpp"
#include "codecast/sim.hpp"

namespace codecast::cli {

// Command implementations behind the `codecast` binary. Each returns a
// process exit code: 0 success, 1 runtime failure, 2 usage/parse failure.

struct Options {
  std::string scenario_path;
  std::string out_path;
  std::string trace_path;
  std::uint64_t seed = 0;
  double grid_step = 1e-3;
  std::size_t runs = 100;
  double cap_multiplier = 50.0;
  double quad_tol = 1e-8;
  double scale_step = 0.05;
  bool systematic = false;
  std::string scheme;
  std::string dist_path;
  std::string scale = "auto";
  std::string chunks = "auto";
  // sweep
  std::size_t vary_user = 1;
  std::string z_from = "1/16";
  std::string z_to = "15/16";
  std::string z_step = "1/16";
  std::vector<std::string> schemes;
};

namespace detail {

template <class Fn>
int run_command(Fn&& fn, std::ostream& err) {
  try {
    fn();
    return 0;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

inline Scenario load_scenario_checked(const Options& opt) {
  if (opt.scenario_path.empty()) throw usage_error("--scenario is required");
  return io::load_scenario(opt.scenario_path);
}

inline double parse_fraction_flag(const std::string& text, const std::string& flag) {
  return io::parse_fraction(io::json(text), flag);
}

struct SchemeAnalysis {
  AnalysisResult analysis;
  std::string detail;  // chosen scale or chunk size, when searched
};

inline SchemeAnalysis analyze_scheme(const Scenario& scenario, const Options& opt) {
  SchemeAnalysis out;
  if (opt.scheme == "lt" || opt.scheme == "lt-sys") {
    if (opt.dist_path.empty())
      throw usage_error("--dist is required for scheme " + opt.scheme);
    auto dist = io::load_distribution(opt.dist_path);
    out.analysis = analyze_lt(scenario, dist, opt.scheme == "lt-sys", opt.grid_step);
  } else if (opt.scheme == "growth") {
    double scale;
    if (opt.scale == "auto") {
      auto found = best_scale(scenario, opt.scale_step, opt.grid_step, opt.cap_multiplier);
      scale = found.scale;
    } else {
      scale = parse_fraction_flag(opt.scale, "--scale");
    }
    auto sched = make_growth_schedule(scenario.packet_count(), scale, scenario.max_demand());
    out.analysis = growth_analysis(sched, scenario, opt.grid_step, opt.cap_multiplier);
    out.detail = "scale=" + io::format_value(scale);
  } else if (opt.scheme == "chunked") {
    std::size_t n_chunks;
    if (opt.chunks == "auto") {
      auto found = best_chunk_size(scenario, opt.quad_tol);
      n_chunks = scenario.packet_count() / found.best_h;
    } else {
      auto v = parse_fraction_flag(opt.chunks, "--chunks");
      n_chunks = static_cast<std::size_t>(v);
      if (v <= 0 || static_cast<double>(n_chunks) != v)
        throw usage_error("--chunks must be a positive integer or 'auto'");
    }
    if (n_chunks == 0 || scenario.packet_count() % n_chunks != 0)
      throw usage_error("--chunks must divide N");
    ChunkConfig config(n_chunks, scenario.packet_count() / n_chunks);
    out.analysis = chunked_analysis(scenario, config, opt.quad_tol);
    out.detail = "h=" + std::to_string(scenario.packet_count() / n_chunks);
  } else {
    throw usage_error("unknown scheme '" + opt.scheme +
                      "' (expected lt, lt-sys, growth or chunked)");
  }
  return out;
}

inline SchemeParams scheme_params(const Scenario& scenario, const Options& opt,
                                  std::string* detail) {
  if (opt.scheme == "lt" || opt.scheme == "lt-sys") {
    if (opt.dist_path.empty())
      throw usage_error("--dist is required for scheme " + opt.scheme);
    return LtParams{io::load_distribution(opt.dist_path), opt.scheme == "lt-sys"};
  }
  if (opt.scheme == "growth") {
    double scale;
    if (opt.scale == "auto") {
      scale = best_scale(scenario, opt.scale_step, opt.grid_step, opt.cap_multiplier).scale;
    } else {
      scale = parse_fraction_flag(opt.scale, "--scale");
    }
    if (detail) *detail = "scale=" + io::format_value(scale);
    return GrowthParams{scale};
  }
  if (opt.scheme == "chunked") {
    std::size_t n_chunks;
    if (opt.chunks == "auto") {
      n_chunks = scenario.packet_count() / best_chunk_size(scenario, opt.quad_tol).best_h;
    } else {
      auto v = parse_fraction_flag(opt.chunks, "--chunks");
      n_chunks = static_cast<std::size_t>(v);
      if (v <= 0 || static_cast<double>(n_chunks) != v)
        throw usage_error("--chunks must be a positive integer or 'auto'");
    }
    if (n_chunks == 0 || scenario.packet_count() % n_chunks != 0)
      throw usage_error("--chunks must divide N");
    if (detail) *detail = "n=" + std::to_string(n_chunks);
    return ChunkedParams{n_chunks, 256};
  }
  throw usage_error("unknown scheme '" + opt.scheme +
                    "' (expected lt, lt-sys, growth or chunked)");
}

}  // namespace detail

/// Solve the degree-distribution design LP and write the result as JSON.
inline int cmd_optimize(const Options& opt, std::ostream& out, std::ostream& err) {
  return detail::run_command(
      [&] {
        Scenario scenario = detail::load_scenario_checked(opt);
        auto res = optimize_scenario(scenario, opt.systematic, opt.grid_step);
        io::json j = io::distribution_to_json(res.dist);
        j["t0"] = res.t0;
        j["systematic"] = opt.systematic;
        j["dmax"] = res.dmax_used;
        j["grid_step"] = opt.grid_step;
        if (!opt.out_path.empty()) io::write_text_file(opt.out_path, j.dump(2) + "\n");
        out << (opt.systematic ? "systematic" : "nonsystematic")
            << " server delivery time t0 = " << io::format_value(res.t0) << "\n";
        out << "distribution:";
        for (std::size_t d = 1; d <= res.dist.max_degree(); ++d)
          if (res.dist.prob(d) > 0.0)
            out << " p" << d << "=" << io::format_value(res.dist.prob(d), 4);
        out << "\n"
            << "binding constraints: " << res.binding.size()
            << ", reanalyzed t0 = " << io::format_value(res.reanalyzed_t0) << "\n";
      },
      err);
}

/// Analytic per-user delivery times for one scheme plus the baseline rows.
inline int cmd_analyze(const Options& opt, std::ostream& out, std::ostream& err) {
  return detail::run_command(
      [&] {
        Scenario scenario = detail::load_scenario_checked(opt);
        std::ostringstream csv;
        csv << "scheme,user,z,eps,t\n";
        if (opt.scheme != "baselines") {
          if (opt.scheme.empty()) throw usage_error("--scheme is required");
          auto res = detail::analyze_scheme(scenario, opt);
          for (std::size_t i = 0; i < scenario.users().size(); ++i) {
            const auto& u = scenario.users()[i];
            csv << opt.scheme << "," << i << "," << io::format_value(u.z) << ","
                << io::format_value(u.eps) << ","
                << io::format_value(res.analysis.user_times[i]) << "\n";
          }
          if (!res.detail.empty()) out << "selected " << res.detail << "\n";
          out << "server delivery time = "
              << io::format_value(res.analysis.server_time) << "\n";
        }
        auto report = baseline_report(scenario);
        csv << "lower_bound,,,," << io::format_value(report.lower_bound) << "\n";
        csv << "unicast,,,," << io::format_value(report.unicast_total) << "\n";
        csv << "timeshare,,,," << io::format_value(report.timeshare) << "\n";
        if (!opt.out_path.empty()) io::write_text_file(opt.out_path, csv.str());
        out << csv.str();
      },
      err);
}

/// Monte-Carlo delivery times; optionally exports the mean trajectories.
inline int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  return detail::run_command(
      [&] {
        Scenario scenario = detail::load_scenario_checked(opt);
        std::string detail_str;
        auto params = detail::scheme_params(scenario, opt, &detail_str);
        auto summary =
            average_runs(scenario, params, opt.runs, opt.seed, opt.cap_multiplier);
        std::ostringstream csv;
        csv << "scheme,user,z,eps,t_sim_mean,t_sim_std,runs,incomplete_runs\n";
        for (std::size_t i = 0; i < scenario.users().size(); ++i) {
          const auto& u = scenario.users()[i];
          csv << opt.scheme << "," << i << "," << io::format_value(u.z) << ","
              << io::format_value(u.eps) << ","
              << io::format_value(summary.user_mean[i]) << ","
              << io::format_value(summary.user_stddev[i]) << "," << summary.runs
              << "," << summary.incomplete_runs << "\n";
        }
        if (!opt.out_path.empty()) io::write_text_file(opt.out_path, csv.str());
        if (!opt.trace_path.empty()) {
          std::ostringstream trace;
          trace << "transmission_index";
          for (std::size_t i = 0; i < scenario.users().size(); ++i)
            trace << ",user" << i;
          trace << "\n";
          std::size_t len = 0;
          for (const auto& f : summary.mean_fraction) len = std::max(len, f.size());
          for (std::size_t t = 0; t < len; ++t) {
            trace << (t + 1);
            for (const auto& f : summary.mean_fraction)
              trace << ","
                    << io::format_value(t < f.size() ? f[t] : (f.empty() ? 0.0 : f.back()));
            trace << "\n";
          }
          io::write_text_file(opt.trace_path, trace.str());
        }
        if (!detail_str.empty()) out << "selected " << detail_str << "\n";
        out << csv.str();
        out << "server mean = " << io::format_value(summary.server_mean) << " (std "
            << io::format_value(summary.server_stddev) << ")\n";
      },
      err);
}

/// Dump the three reference baselines for a scenario.
inline int cmd_baselines(const Options& opt, std::ostream& out, std::ostream& err) {
  return detail::run_command(
      [&] {
        Scenario scenario = detail::load_scenario_checked(opt);
        auto report = baseline_report(scenario);
        std::ostringstream csv;
        csv << "baseline,t\n";
        csv << "lower_bound," << io::format_value(report.lower_bound) << "\n";
        csv << "unicast," << io::format_value(report.unicast_total) << "\n";
        csv << "timeshare," << io::format_value(report.timeshare) << "\n";
        if (!opt.out_path.empty()) io::write_text_file(opt.out_path, csv.str());
        out << csv.str();
      },
      err);
}

struct SweepRow {
  double z = 0.0;
  std::string scheme;
  double t0 = 0.0;
  std::string detail;
};

/// Re-run every scheme for each demand value of the varied user: both LT
/// optimizations, the growth scale search, the chunk-size search and the
/// closed-form baselines.
inline std::vector<SweepRow> sweep_table(const Scenario& base, std::size_t vary_user,
                                         const std::vector<double>& z_values,
                                         const std::set<std::string>& schemes,
                                         double grid_step = 1e-3,
                                         double quad_tol = 1e-8,
                                         double scale_step = 0.05,
                                         double cap_multiplier = 50.0) {
  if (vary_user >= base.users().size())
    throw usage_error("sweep: varied user index out of range");
  auto wants = [&](const std::string& s) {
    return schemes.empty() || schemes.count(s) > 0;
  };
  std::vector<SweepRow> rows;
  for (double z : z_values) {
    if (!(z > 0.0) || z >= 1.0)
      throw usage_error("sweep: demand values must lie in (0, 1)");
    auto users = base.users();
    users[vary_user].z = z;
    Scenario scenario(base.packet_count(), base.payload_bytes(), std::move(users));
    if (wants("lt"))
      rows.push_back({z, "lt", optimize_scenario(scenario, false, grid_step).t0, ""});
    if (wants("lt-sys"))
      rows.push_back({z, "lt-sys", optimize_scenario(scenario, true, grid_step).t0, ""});
    if (wants("growth")) {
      auto found = best_scale(scenario, scale_step, grid_step, cap_multiplier);
      rows.push_back({z, "growth", found.server_time,
                      "scale=" + io::format_value(found.scale)});
    }
    if (wants("chunked")) {
      auto found = best_chunk_size(scenario, quad_tol);
      rows.push_back({z, "chunked", found.best_time,
                      "h=" + std::to_string(found.best_h)});
    }
    auto report = baseline_report(scenario);
    if (wants("lower_bound"))
      rows.push_back({z, "lower_bound", report.lower_bound, ""});
    if (wants("unicast")) rows.push_back({z, "unicast", report.unicast_total, ""});
    if (wants("timeshare")) rows.push_back({z, "timeshare", report.timeshare, ""});
  }
  return rows;
}

inline int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
  return detail::run_command(
      [&] {
        Scenario scenario = detail::load_scenario_checked(opt);
        double z_from = detail::parse_fraction_flag(opt.z_from, "--z-from");
        double z_to = detail::parse_fraction_flag(opt.z_to, "--z-to");
        double z_step = detail::parse_fraction_flag(opt.z_step, "--z-step");
        if (!(z_step > 0.0)) throw usage_error("--z-step must be positive");
        std::vector<double> z_values;
        for (double z = z_from; z <= z_to + 1e-12; z += z_step) z_values.push_back(z);
        std::set<std::string> schemes(opt.schemes.begin(), opt.schemes.end());
        auto rows = sweep_table(scenario, opt.vary_user, z_values, schemes,
                                opt.grid_step, opt.quad_tol, opt.scale_step,
                                opt.cap_multiplier);
        std::ostringstream csv;
        csv << "z,scheme,t0,detail\n";
        for (const auto& r : rows)
          csv << io::format_value(r.z) << "," << r.scheme << ","
              << io::format_value(r.t0) << "," << r.detail << "\n";
        if (!opt.out_path.empty()) io::write_text_file(opt.out_path, csv.str());
        out << csv.str();
      },
      err);
}

}  // namespace codecast::cli
