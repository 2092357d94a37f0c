// Command-line surface for the hitmix library: loaders, constructors,
// hitting/mixing computations, inequality checks and the Monte Carlo oracle.
//
// Exit codes: 0 success (and all checks hold), 1 a check did not hold,
// 2 input/validation/usage errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hitmix/chain.hpp"
#include "hitmix/constructors.hpp"
#include "hitmix/error.hpp"
#include "hitmix/extremal.hpp"
#include "hitmix/hitting.hpp"
#include "hitmix/io.hpp"
#include "hitmix/mixing.hpp"
#include "hitmix/sim.hpp"
#include "hitmix/verifiers.hpp"

namespace {

using nlohmann::json;
using namespace hitmix;

struct Options {
  std::string format = "json";
  std::string chain_path;
};

Chain read_chain(const Options& opt) {
  if (!opt.chain_path.empty()) return load_chain_file(opt.chain_path);
  return load_chain(std::cin);
}

StateSet parse_set(const Chain& c, const std::string& list) {
  std::vector<int> idx;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      idx.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      fail(errc::bad_input, "bad state index: " + tok);
    }
  }
  if (idx.empty()) fail(errc::empty_target, "state list is empty");
  return StateSet::from_indices(c.n(), idx);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_vector_csv(const char* header, const Vector& v) {
  std::cout << "state," << header << "\n";
  for (int i = 0; i < v.size(); ++i) std::cout << i << "," << fmt17(v(i)) << "\n";
}

json witness_json(const ExtremalWitness& w) {
  return json{{"alpha", w.alpha},
              {"set", w.set.indices()},
              {"start", w.start},
              {"value", w.value}};
}

json scan_json(const char* key, const MixingScan& scan, bool table) {
  json j;
  if (scan.time.has_value())
    j[key] = *scan.time;
  else
    j[key] = nullptr;
  j["cap"] = scan.cap;
  if (!scan.worst_tv.empty()) j["final_tv"] = scan.worst_tv.back().second;
  if (table) {
    json rows = json::array();
    for (const auto& [t, tv] : scan.worst_tv) rows.push_back(json::array({t, tv}));
    j["worst_tv_at_t"] = std::move(rows);
  }
  return j;
}

// prints reports as JSON lines; true when every applicable report holds
bool emit_reports(const std::vector<InequalityReport>& reports) {
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << report_to_json(r).dump() << "\n";
    if (r.applicable && !r.holds) ok = false;
  }
  return ok;
}

int run_check_all(int random_chains, int states, std::uint64_t seed, int grid) {
  struct Tally {
    long cases = 0;
    long violations = 0;
  };
  Tally star, ratio, dist, occup, prop;
  std::vector<InequalityReport> violations;

  for (int rep = 0; rep < random_chains; ++rep) {
    RngStream rng(seed, static_cast<std::uint64_t>(rep));
    Chain c = random_chain(states, rng);
    HittingProfile profile = t_profile(c);

    for (int j = 1; j <= grid; ++j) {
      double beta = 0.5 * j / grid;
      for (int i = 1; i <= grid; ++i) {
        double alpha = beta * i / (grid + 1);
        StarReport sr = check_star(profile, alpha, beta);
        ++star.cases;
        if (!sr.holds()) {
          ++star.violations;
          violations.push_back(sr.additive.holds ? sr.chained : sr.additive);
        }
      }
    }

    const std::uint32_t all = (1u << states) - 1;
    for (std::uint32_t am = 1; am <= all; ++am) {
      StateSet a = StateSet::from_mask(states, am);
      for (std::uint32_t cm = 1; cm <= all; ++cm) {
        StateSet cs = StateSet::from_mask(states, cm);
        InequalityReport r = check_ratio_bound(c, a, cs);
        ++ratio.cases;
        if (!r.holds) {
          ++ratio.violations;
          violations.push_back(r);
        }
        if ((am & cm) == 0) {
          AuxiliaryDecomposition d = auxiliary_decomposition(c, a, cs);
          InequalityReport rd = check_dist_inequality(c, d);
          ++dist.cases;
          if (!rd.holds) {
            ++dist.violations;
            violations.push_back(rd);
          }
          InequalityReport ro = check_occupation_identity(c, d, a);
          ++occup.cases;
          if (!ro.holds) {
            ++occup.violations;
            violations.push_back(ro);
          }
        }
      }
    }

    InequalityReport rp = check_prop_4_1(c);
    if (rp.applicable) {
      ++prop.cases;
      if (!rp.holds) {
        ++prop.violations;
        violations.push_back(rp);
      }
    }
  }

  emit_reports(violations);
  auto summary = [](const char* name, const Tally& t) {
    std::cout << json{{"name", name}, {"cases", t.cases}, {"violations", t.violations}}.dump()
              << "\n";
  };
  summary("star", star);
  summary("ratio_bound", ratio);
  summary("dist_inequality", dist);
  summary("occupation_identity", occup);
  summary("prop_4_1", prop);
  return violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set hitting times, extremal profiles and mixing diagnostics "
               "for finite irreducible Markov chains"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto add_chain_opt = [&opt](CLI::App* cmd) {
    cmd->add_option("--chain", opt.chain_path, "Chain JSON file (stdin when omitted)");
  };

  // plain computations
  auto* cmd_stationary = app.add_subcommand("stationary", "Stationary distribution");
  add_chain_opt(cmd_stationary);

  std::string target_list, a_list, b_list, c_list, s_list;
  int start_state = 0;
  auto* cmd_hit = app.add_subcommand("hit", "Expected hitting times of a target set");
  add_chain_opt(cmd_hit);
  cmd_hit->add_option("--target", target_list, "Target states, e.g. 0,2,5")->required();

  auto* cmd_profile = app.add_subcommand("profile", "Full extremal profile T(alpha)");
  add_chain_opt(cmd_profile);

  double alpha = 0, beta = 0;
  auto* cmd_talpha = app.add_subcommand("talpha", "Extremal hitting value T(alpha)");
  add_chain_opt(cmd_talpha);
  cmd_talpha->add_option("--alpha", alpha)->required();

  auto* cmd_tprod = app.add_subcommand("tprod", "max pi(A) E_x[tau_A] over proper subsets");
  add_chain_opt(cmd_tprod);

  std::int64_t cap = kDefaultMixingCap;
  bool with_table = false;
  auto* cmd_mix = app.add_subcommand("mix", "Mixing time (worst-start TV threshold 1/4)");
  add_chain_opt(cmd_mix);
  cmd_mix->add_option("--cap", cap, "Scan cap");
  cmd_mix->add_flag("--table", with_table, "Include the (t, worst TV) table");

  auto* cmd_ces = app.add_subcommand("ces", "Cesaro mixing time");
  add_chain_opt(cmd_ces);
  cmd_ces->add_option("--cap", cap, "Scan cap");
  cmd_ces->add_flag("--table", with_table, "Include the (t, worst TV) table");

  // constructors
  auto* cmd_construct = app.add_subcommand("construct", "Emit an example chain as JSON");
  cmd_construct->require_subcommand(1);
  double ts_alpha = 0.25, ts_eps = 0.05, gamma = 0.6, big_n = 1000;
  auto* c3 = cmd_construct->add_subcommand("three-state", "Equality chain for the hitting bound");
  c3->add_option("--alpha", ts_alpha)->required();
  c3->add_option("--eps", ts_eps)->required();
  auto* c2 = cmd_construct->add_subcommand("two-state", "Counterexample beyond measure 1/2");
  c2->add_option("--gamma", gamma)->required();
  c2->add_option("--bigN", big_n)->required();
  std::string spec_path;
  auto* cl = cmd_construct->add_subcommand("lshaped", "L-shaped realization of a step spec");
  cl->add_option("--spec", spec_path, "Spec JSON file")->required();
  int dy_level = 4;
  double dy_clip = 2.0, dy_big_n = 1e6;
  auto* cd = cmd_construct->add_subcommand(
      "dyadic", "L-shaped chain for the dyadic discretization of min(1/(2a), clip)");
  cd->add_option("--level", dy_level, "Dyadic level n")->required();
  cd->add_option("--clip", dy_clip, "Clip value for f(a) = min(1/(2a), clip)")->required();
  cd->add_option("--bigN", dy_big_n, "Starting time scale (doubled until entries fit)");

  // checks
  auto* cmd_check = app.add_subcommand("check", "Machine-check the hitting-time inequalities");
  cmd_check->require_subcommand(1);
  auto* ck_star = cmd_check->add_subcommand("star", "T(a) <= T(b) + (1/a-1)T(1-b) <= T(b)/a");
  add_chain_opt(ck_star);
  ck_star->add_option("--alpha", alpha)->required();
  ck_star->add_option("--beta", beta)->required();
  auto* ck_ratio = cmd_check->add_subcommand("ratio", "pi(A) ratio bound");
  add_chain_opt(ck_ratio);
  ck_ratio->add_option("--a", a_list)->required();
  ck_ratio->add_option("--c", c_list)->required();
  auto* ck_dist = cmd_check->add_subcommand("dist", "Cycle distribution inequality");
  add_chain_opt(ck_dist);
  ck_dist->add_option("--a", a_list)->required();
  ck_dist->add_option("--c", c_list)->required();
  auto* ck_occ = cmd_check->add_subcommand("occupation", "Occupation identity over a cycle");
  add_chain_opt(ck_occ);
  ck_occ->add_option("--a", a_list)->required();
  ck_occ->add_option("--c", c_list)->required();
  ck_occ->add_option("--s", s_list)->required();
  double t_scale = 1.0;
  auto* ck_l42 = cmd_check->add_subcommand("lemma42", "Conditional d+(B,C) < 14T check");
  add_chain_opt(ck_l42);
  ck_l42->add_option("--a", a_list)->required();
  ck_l42->add_option("--b", b_list)->required();
  ck_l42->add_option("--c", c_list)->required();
  ck_l42->add_option("--t", t_scale)->required();
  auto* ck_p41 = cmd_check->add_subcommand("prop41", "Conditional T(0.99) >= 0.1 T(0.02) check");
  add_chain_opt(ck_p41);
  int rand_chains = 100, rand_states = 6, rand_grid = 4;
  std::uint64_t rand_seed = 0;
  auto* ck_all = cmd_check->add_subcommand("all", "Randomized sweep over every check");
  ck_all->add_option("--random", rand_chains, "Number of random chains");
  ck_all->add_option("--states", rand_states, "States per chain")->check(CLI::Range(2, 10));
  ck_all->add_option("--seed", rand_seed, "Sweep seed");
  ck_all->add_option("--grid", rand_grid, "Star-check grid resolution");

  // simulation
  std::int64_t samples = 100000, step_cap = kDefaultStepCap;
  std::uint64_t sim_seed = 0;
  bool occupation_mode = false;
  std::string avoid_list, count_list;
  auto* cmd_sim = app.add_subcommand("simulate", "Seeded Monte Carlo oracle");
  add_chain_opt(cmd_sim);
  cmd_sim->add_option("--start", start_state, "Start state")->required();
  cmd_sim->add_option("--target", target_list, "Target states (hitting mode)");
  cmd_sim->add_option("--samples", samples, "Trajectory count");
  cmd_sim->add_option("--seed", sim_seed, "Stream seed");
  cmd_sim->add_option("--step-cap", step_cap, "Total step budget for the run");
  cmd_sim->add_flag("--occupation", occupation_mode, "Estimate occupation before tau_avoid");
  cmd_sim->add_option("--avoid", avoid_list, "Avoid states (occupation mode)");
  cmd_sim->add_option("--count", count_list, "Counted states (occupation mode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const bool csv = opt.format == "csv";

    if (*cmd_stationary) {
      Chain c = read_chain(opt);
      if (csv) {
        print_vector_csv("pi", c.pi());
      } else {
        std::vector<double> pi(c.pi().data(), c.pi().data() + c.n());
        std::cout << json{{"n", c.n()}, {"pi", pi}}.dump() << "\n";
      }
    } else if (*cmd_hit) {
      Chain c = read_chain(opt);
      HittingVector hv = expected_hitting_times(c, parse_set(c, target_list));
      if (csv) {
        print_vector_csv("h", hv.h);
      } else {
        std::vector<double> h(hv.h.data(), hv.h.data() + c.n());
        std::cout << json{{"target", hv.target.indices()}, {"h", h}}.dump() << "\n";
      }
    } else if (*cmd_profile) {
      Chain c = read_chain(opt);
      HittingProfile p = t_profile(c);
      if (csv) {
        std::cout << profile_to_csv(p);
      } else {
        json bps = json::array();
        for (const auto& bp : p.breakpoints())
          bps.push_back(json{{"alpha_threshold", bp.measure}, {"value", bp.value}});
        std::cout << json{{"breakpoints", bps}}.dump() << "\n";
      }
    } else if (*cmd_talpha) {
      Chain c = read_chain(opt);
      std::cout << witness_json(t_alpha(c, alpha)).dump() << "\n";
    } else if (*cmd_tprod) {
      Chain c = read_chain(opt);
      std::cout << json{{"t_prod", t_prod(c)}}.dump() << "\n";
    } else if (*cmd_mix) {
      Chain c = read_chain(opt);
      std::cout << scan_json("t_mix", mixing_time(c, cap), with_table).dump() << "\n";
    } else if (*cmd_ces) {
      Chain c = read_chain(opt);
      std::cout << scan_json("t_ces", cesaro_mixing_time(c, cap), with_table).dump() << "\n";
    } else if (*cmd_construct) {
      Chain out = [&]() {
        if (*c3) return three_state_tight(ts_alpha, ts_eps);
        if (*c2) return two_state_counterexample(gamma, big_n);
        if (*cl) {
          std::ifstream in(spec_path);
          if (!in) fail(errc::bad_input, "cannot open spec file: " + spec_path);
          json j;
          in >> j;
          return l_shaped_from_spec(spec_from_json(j)).chain;
        }
        // dyadic: caller-side retry supplies the "sufficiently large N"
        auto f = [&](double a) { return std::min(1.0 / (2.0 * a), dy_clip); };
        double n_scale = dy_big_n;
        for (int tries = 0; tries < 64; ++tries) {
          try {
            return l_shaped_from_spec(dyadic_discretize(f, dy_level, n_scale)).chain;
          } catch (const Error& e) {
            if (e.code() != errc::entry_out_of_range) throw;
            n_scale *= 2;
          }
        }
        fail(errc::entry_out_of_range, "no admissible N found");
      }();
      std::cout << chain_to_json(out).dump() << "\n";
    } else if (*cmd_check) {
      bool ok = true;
      if (*ck_star) {
        Chain c = read_chain(opt);
        StarReport sr = check_star(c, alpha, beta);
        ok = emit_reports({sr.additive, sr.chained});
      } else if (*ck_ratio) {
        Chain c = read_chain(opt);
        ok = emit_reports({check_ratio_bound(c, parse_set(c, a_list), parse_set(c, c_list))});
      } else if (*ck_dist) {
        Chain c = read_chain(opt);
        auto d = auxiliary_decomposition(c, parse_set(c, a_list), parse_set(c, c_list));
        ok = emit_reports({check_dist_inequality(c, d)});
      } else if (*ck_occ) {
        Chain c = read_chain(opt);
        auto d = auxiliary_decomposition(c, parse_set(c, a_list), parse_set(c, c_list));
        ok = emit_reports({check_occupation_identity(c, d, parse_set(c, s_list))});
      } else if (*ck_l42) {
        Chain c = read_chain(opt);
        ok = emit_reports({check_lemma_4_2(c, parse_set(c, a_list), parse_set(c, b_list),
                                           parse_set(c, c_list), t_scale)});
      } else if (*ck_p41) {
        Chain c = read_chain(opt);
        ok = emit_reports({check_prop_4_1(c)});
      } else if (*ck_all) {
        return run_check_all(rand_chains, rand_states, rand_seed, rand_grid);
      }
      return ok ? 0 : 1;
    } else if (*cmd_sim) {
      Chain c = read_chain(opt);
      SimEstimate est;
      if (occupation_mode) {
        if (avoid_list.empty()) fail(errc::bad_input, "--occupation needs --avoid");
        if (count_list.empty()) fail(errc::bad_input, "--occupation needs --count");
        if (start_state < 0 || start_state >= c.n())
          fail(errc::bad_input, "start state out of range");
        Vector start = Vector::Zero(c.n());
        start(start_state) = 1.0;
        est = simulate_occupation(c, start, parse_set(c, avoid_list),
                                  parse_set(c, count_list), samples, sim_seed, step_cap);
      } else {
        if (target_list.empty()) fail(errc::bad_input, "hitting mode needs --target");
        est = simulate_hitting(c, start_state, parse_set(c, target_list), samples, sim_seed,
                               step_cap);
      }
      std::cout << json{{"mean", est.mean},
                        {"std_error", est.std_error},
                        {"n_samples", est.n_samples},
                        {"seed", est.seed}}
                       .dump()
                << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
