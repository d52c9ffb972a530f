// phasespace_cli.cpp: command-line front end for the phasespace library
#include <phasespace.hpp>
#include <phasespace/io.hpp>

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace ps = phasespace;
using ps::io::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kNumeric = 3, kNotPure = 4 };

int exit_code_for(ps::ErrorKind k) {
  switch (k) {
    case ps::ErrorKind::Parse:
    case ps::ErrorKind::InvalidInput:
    case ps::ErrorKind::InvalidDimension:
    case ps::ErrorKind::IndexOutOfRange:
    case ps::ErrorKind::OrderingMismatch:
    case ps::ErrorKind::GridMismatch:
      return kUsage;
    case ps::ErrorKind::NotPure:
      return kNotPure;
    default:
      return kNumeric;
  }
}

// Accepts "a+bi", "a-bi", "bi", "a" (j also works for the imaginary unit) or "a,b".
ps::cplx parse_complex(std::string s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t += c;
  if (t.empty()) throw ps::Error(ps::ErrorKind::Parse, "empty complex number");
  auto num = [&](std::string x) {
    if (x.size() > 1 && x[0] == '+') x.erase(0, 1);
    return ps::io::parse_double(x, "complex number '" + s + "'");
  };
  if (auto comma = t.find(','); comma != std::string::npos)
    return {num(t.substr(0, comma)), num(t.substr(comma + 1))};
  char last = t.back();
  if (last != 'i' && last != 'j') return {num(t), 0.0};
  t.pop_back();
  size_t split = std::string::npos;
  for (size_t k = t.size(); k-- > 1;)
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  std::string re = split == std::string::npos ? "" : t.substr(0, split);
  std::string im = split == std::string::npos ? t : t.substr(split);
  double imv = (im.empty() || im == "+") ? 1.0 : (im == "-" ? -1.0 : num(im));
  return {re.empty() ? 0.0 : num(re), imv};
}

std::pair<double, double> parse_range(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ps::Error(ps::ErrorKind::Parse, "range '" + s + "' must look like a,b");
  return {ps::io::parse_double(s.substr(0, comma), "range"), ps::io::parse_double(s.substr(comma + 1), "range")};
}

json vec_json(const ps::Vec& v) { return ps::io::detail::vector_json(v); }
json mat_json(const ps::Mat& m) { return ps::io::detail::matrix_json(m); }

std::string base_name(ps::LogBase b) { return b == ps::LogBase::Two ? "2" : "e"; }

struct Globals {
  std::string out;
  bool verbose = false;
  bool summary = false;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw ps::Error(ps::ErrorKind::Parse, "cannot write '" + g.out + "'");
  f << text;
}

void note(const Globals& g, const std::string& msg) {
  if (g.verbose) std::cerr << msg << "\n";
}

ps::GaussianState load_physical(const std::string& path, const char* who) {
  auto sf = ps::io::read_state_file(path);
  ps::require_physical(sf.state, who);
  return sf.state;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian states, symplectic dynamics and Wigner functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_flag("--verbose", g.verbose, "Report diagnostics on stderr");
  app.add_flag("--summary", g.summary, "Print grid diagnostics instead of the grid");

  // ----- state make -----
  auto* state = app.add_subcommand("state", "Create states");
  state->require_subcommand(1);
  auto* make = state->add_subcommand("make", "Write a StateFile for a standard state");
  make->require_subcommand(1);
  int modes = 1;
  double nu = 1.0, r = 0.0, theta = 0.0;
  std::vector<std::string> alphas;
  auto* mk_vac = make->add_subcommand("vacuum", "Vacuum state");
  mk_vac->add_option("--modes", modes, "Number of modes")->check(CLI::PositiveNumber);
  auto* mk_th = make->add_subcommand("thermal", "Thermal state with symplectic eigenvalue nu");
  mk_th->add_option("--nu", nu, "nu = 2 nbar + 1")->required();
  auto* mk_coh = make->add_subcommand("coherent", "Coherent state, one --alpha per mode");
  mk_coh->add_option("--alpha", alphas, "Complex amplitude, e.g. 1+0.5i")->required();
  auto* mk_sq = make->add_subcommand("squeezed", "Squeezed vacuum");
  mk_sq->add_option("--r", r, "Squeezing parameter")->required();
  mk_sq->add_option("--theta", theta, "Squeezing angle");
  auto* mk_tmsv = make->add_subcommand("tmsv", "Two-mode squeezed vacuum");
  mk_tmsv->add_option("--r", r, "Squeezing parameter")->required();
  mk_tmsv->add_option("--theta", theta, "Squeezing angle");

  // ----- evolve -----
  auto* evolve = app.add_subcommand("evolve", "Apply the Gaussian channel of a quadratic Hamiltonian");
  std::string state_path, ham_path, builtin;
  double time = 1.0, omega = 1.0, dt = 0.0;
  evolve->add_option("state", state_path, "StateFile")->required();
  auto* ham_opt = evolve->add_option("--hamiltonian", ham_path, "Hamiltonian JSON {n_modes, ordering, f_bar, alpha}");
  auto* builtin_opt = evolve->add_option("--builtin", builtin, "squeeze | tms | rotate")
                          ->check(CLI::IsMember({"squeeze", "tms", "rotate"}));
  ham_opt->excludes(builtin_opt);
  evolve->add_option("--r", r, "Squeezing parameter for the built-in generators");
  evolve->add_option("--theta", theta, "Squeezing angle for the built-in generators");
  evolve->add_option("--omega", omega, "Frequency for the rotation generator");
  evolve->add_option("--time", time, "Evolution time");
  evolve->add_option("--dt", dt, "Integrate the moment equations with RK4 at this step instead");

  // ----- williamson -----
  auto* will = app.add_subcommand("williamson", "Williamson decomposition of a covariance matrix");
  will->add_option("state", state_path, "StateFile")->required();

  // ----- entropy -----
  auto* ent = app.add_subcommand("entropy", "Von Neumann or entanglement entropy");
  std::vector<int> subsystem;
  std::string base = "e";
  ent->add_option("state", state_path, "StateFile")->required();
  ent->add_option("--subsystem", subsystem, "Modes of the subsystem, e.g. 0,1")->delimiter(',');
  ent->add_option("--base", base, "Logarithm base: e or 2")->check(CLI::IsMember({"e", "2"}));

  // ----- wigner -----
  auto* wig = app.add_subcommand("wigner", "Wigner function on a grid");
  std::string qrange = "-5,5", prange = "-5,5", coh;
  int fock_n = -1, nq = 101, np = 101;
  double hbar = 1.0;
  wig->add_option("state", state_path, "Single-mode StateFile");
  wig->add_option("--fock", fock_n, "Number state n");
  wig->add_option("--coherent", coh, "Coherent amplitude, e.g. 1+1i");
  wig->add_option("--qrange", qrange, "q_min,q_max");
  wig->add_option("--prange", prange, "p_min,p_max");
  wig->add_option("--nq", nq, "Points along q");
  wig->add_option("--np", np, "Points along p");
  wig->add_option("--hbar", hbar, "Value of hbar for the grid");
  wig->add_flag("--summary", g.summary, "Print diagnostics instead of the grid");

  // ----- coupled-example -----
  auto* coupled = app.add_subcommand("coupled-example", "Two coupled oscillators: spectrum and entanglement");
  double mass = 1.0, lambda = 0.75;
  coupled->add_option("--m", mass, "Mass");
  coupled->add_option("--omega", omega, "Bare frequency");
  coupled->add_option("--lambda", lambda, "Coupling strength");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (state->parsed()) {
      ps::GaussianState st;
      json meta = json::object();
      if (mk_vac->parsed()) {
        st = ps::vacuum(modes);
        meta["kind"] = "vacuum";
      } else if (mk_th->parsed()) {
        st = ps::thermal(nu);
        meta["kind"] = "thermal";
        meta["nu"] = nu;
      } else if (mk_coh->parsed()) {
        std::vector<ps::cplx> amps;
        for (const auto& a : alphas) amps.push_back(parse_complex(a));
        st = ps::coherent(amps);
        meta["kind"] = "coherent";
        meta["alpha"] = alphas;
      } else if (mk_sq->parsed()) {
        st = ps::squeezed_vacuum(r, theta);
        meta = {{"kind", "squeezed"}, {"r", r}, {"theta", theta}};
      } else {
        st = ps::two_mode_squeezed_vacuum(r, theta);
        meta = {{"kind", "tmsv"}, {"r", r}, {"theta", theta}};
      }
      emit(g, ps::io::dump_state(st, meta));
      return kOk;
    }

    if (evolve->parsed()) {
      auto sf = ps::io::read_state_file(state_path);
      ps::require_physical(sf.state, "evolve");
      ps::QuadraticHamiltonian h;
      if (!ham_path.empty()) {
        h = ps::io::read_hamiltonian_file(ham_path);
      } else if (builtin == "squeeze") {
        h = ps::squeeze_hamiltonian(r, theta);
      } else if (builtin == "tms") {
        h = ps::two_mode_squeeze_hamiltonian(r, theta);
      } else if (builtin == "rotate") {
        h = ps::rotation_hamiltonian(sf.state.n_modes(), omega);
      } else {
        throw ps::Error(ps::ErrorKind::Parse, "evolve: give --hamiltonian or --builtin");
      }
      if (h.ordering != sf.state.ordering()) h = h.to_ordering(sf.state.ordering());
      ps::GaussianState out;
      json meta = sf.metadata.is_object() ? sf.metadata : json::object();
      meta["evolved_time"] = time;
      if (dt > 0.0) {
        out = ps::evolve_ode(h, sf.state, time, dt);
        meta["integrator"] = "rk4";
      } else {
        auto ch = ps::generate_channel(h, time);
        note(g, "symplectic residual " + std::to_string(ch.s.residual()));
        out = ps::apply_channel(ch, sf.state);
      }
      emit(g, ps::io::dump_state(out, meta));
      return kOk;
    }

    if (will->parsed()) {
      auto sf = ps::io::read_state_file(state_path);
      auto w = ps::williamson_decompose(sf.state.cov(), sf.state.ordering());
      if (w.warning) note(g, "warning: " + *w.warning);
      json j;
      j["ordering"] = ps::to_string(sf.state.ordering());
      j["symplectic_eigenvalues"] = vec_json(w.nu);
      j["diagonal"] = mat_json(w.diagonal);
      j["sigma"] = mat_json(w.sigma.matrix());
      j["diag_residual"] = w.diag_residual;
      j["symplectic_residual"] = w.symplectic_residual;
      if (w.warning) j["warning"] = *w.warning;
      emit(g, j.dump(2) + "\n");
      return kOk;
    }

    if (ent->parsed()) {
      auto st = load_physical(state_path, "entropy");
      ps::LogBase b = base == "2" ? ps::LogBase::Two : ps::LogBase::Natural;
      json j;
      ps::EntropyResult res;
      if (subsystem.empty()) {
        res = ps::von_neumann_entropy(st, b);
        j["kind"] = "von_neumann";
      } else {
        res = ps::entanglement_entropy(st, subsystem, b);
        j["kind"] = "entanglement";
        j["subsystem"] = subsystem;
      }
      j["entropy"] = res.total;
      j["per_mode"] = res.per_mode;
      j["symplectic_eigenvalues"] = vec_json(res.nu);
      j["base"] = base_name(b);
      emit(g, j.dump(2) + "\n");
      return kOk;
    }

    if (wig->parsed()) {
      int sources = (!state_path.empty()) + (fock_n >= 0) + (!coh.empty());
      if (sources != 1) throw ps::Error(ps::ErrorKind::Parse, "wigner: give exactly one of STATE, --fock, --coherent");
      ps::PhaseSpaceGrid grid;
      std::tie(grid.q_min, grid.q_max) = parse_range(qrange);
      std::tie(grid.p_min, grid.p_max) = parse_range(prange);
      grid.n_q = nq;
      grid.n_p = np;
      grid.hbar = hbar;
      grid.validate();
      ps::WignerGrid w;
      std::map<std::string, std::string> extra;
      if (fock_n >= 0) {
        w = ps::eval_fock(fock_n, grid);
        extra["state"] = "fock " + std::to_string(fock_n);
      } else if (!coh.empty()) {
        w = ps::eval_coherent(parse_complex(coh), grid);
        extra["state"] = "coherent " + coh;
      } else {
        w = ps::eval_gaussian(load_physical(state_path, "wigner"), grid);
        extra["state"] = "file " + state_path;
      }
      for (const auto& msg : w.warnings) note(g, "warning: " + msg);
      if (g.summary) {
        auto d = ps::purity_and_bounds(w);
        json j = {{"normalization", d.normalization}, {"purity", d.purity},
                  {"max", d.max_value},              {"min", d.min_value},
                  {"max_abs", d.max_abs},            {"negativity_volume", d.negativity_volume},
                  {"within_bound", d.within_bound},  {"warnings", w.warnings}};
        emit(g, j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        ps::io::write_grid_csv(os, w, extra);
        emit(g, os.str());
      }
      return kOk;
    }

    if (coupled->parsed()) {
      auto h = ps::coupled_oscillators(mass, omega, lambda);
      auto spectrum = ps::symplectic_spectrum(h.f_bar);
      auto ground = ps::normal_mode_ground_state(h);
      auto reduced = ps::partial_trace(ground, {0});
      json j;
      j["m"] = mass;
      j["omega"] = omega;
      j["lambda"] = lambda;
      j["normal_frequencies"] = vec_json(spectrum);
      j["ground_state_cov"] = mat_json(ground.cov());
      j["reduced_symplectic_eigenvalue"] = ps::symplectic_spectrum(reduced.cov())(0);
      j["entanglement_entropy"] = ps::entanglement_entropy(ground, {0}).total;
      emit(g, j.dump(2) + "\n");
      return kOk;
    }
  } catch (const ps::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}
