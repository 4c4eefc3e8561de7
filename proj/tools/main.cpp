#include <CLI11.hpp>

#include "commands.hpp"

using namespace spinplane::cli;

int main(int argc, char** argv) {
  CLI::App app{"spinplane: symmetry certification and spectra for planar spin-1/2 Hamiltonians"};
  app.set_config("--config", "", "INI file with one [section] per command; flags override file values");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  CatalogConfig cat;
  auto* vc = app.add_subcommand("verify-catalog", "determining-equation and commutator residuals of a catalog entry");
  vc->add_option("--family", cat.family, "T1.1..T1.8, T2.1..T2.4 or all")->capture_default_str();
  vc->add_option("--mu", cat.mu);
  vc->add_option("--nu", cat.nu);
  vc->add_option("--k", cat.k);
  vc->add_option("--omega", cat.omega);
  vc->add_option("--alpha", cat.alpha);
  vc->add_option("--lambda", cat.lambda);
  vc->add_option("--kappa", cat.kappa);
  vc->add_option("--c", cat.c);
  vc->add_option("--delta", cat.delta);
  vc->add_option("--branch", cat.branch);
  vc->add_option("--variant", cat.variant, "adopted or printed")->capture_default_str();
  vc->add_option("--samples", cat.samples, "interior points per operator")->capture_default_str();
  vc->add_option("--seed", cat.seed)->capture_default_str();
  vc->add_option("--tol", cat.tol)->capture_default_str();
  vc->add_flag("--relations", cat.relations, "also check the superalgebra relations bound to the family");
  vc->add_option("--probes", cat.probes)->capture_default_str();
  vc->add_option("--points", cat.points)->capture_default_str();
  vc->add_option("--out", cat.out, "JSON report path (stdout if omitted)");

  SpectrumConfig sp;
  auto* sc = app.add_subcommand("spectrum", "closed-form levels against numerical spectra");
  sc->add_option("--model", sp.model, "periodic, radial or susy")->required();
  sc->add_option("--mu", sp.mu, "periodic default 1, radial default 0");
  sc->add_option("--nu", sp.nu)->capture_default_str();
  sc->add_option("--nmax", sp.nmax)->capture_default_str();
  sc->add_option("--cutoff", sp.cutoff, "plane-wave cutoff M")->capture_default_str();
  sc->add_option("--alpha", sp.alpha)->capture_default_str();
  sc->add_option("--k", sp.k)->capture_default_str();
  sc->add_option("--eps", sp.eps)->capture_default_str();
  sc->add_option("--levels", sp.levels)->capture_default_str();
  sc->add_option("--rmax", sp.rmax)->capture_default_str();
  sc->add_option("--n", sp.n_grid, "radial: grid size N; susy: highest level")->capture_default_str();
  sc->add_option("--kappa", sp.kappa)->capture_default_str();
  sc->add_option("--p", sp.p)->capture_default_str();
  sc->add_option("--lambda", sp.lambda)->capture_default_str();
  sc->add_option("--ymax", sp.ymax)->capture_default_str();
  sc->add_option("--convention", sp.convention, "printed or corrected closed-form levels")->capture_default_str();
  sc->add_option("--tol", sp.tol, "model default if omitted");
  sc->add_option("--out", sp.out, "CSV table path (stdout if omitted)");
  sc->add_option("--log", sp.log, "convergence log (JSON lines)");
  sc->add_option("--series", sp.series, "plot-ready CSV series");

  ReportConfig rc;
  auto* rp = app.add_subcommand("report", "merge verify-catalog and spectrum artifacts into one report");
  rp->add_option("--input", rc.input, "directory of run artifacts")->required();
  rp->add_option("--out", rc.out, "JSON path (stdout if omitted)");

  for (auto* s : {vc, sc, rp}) s->allow_config_extras(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*vc) return cmd_verify_catalog(cat);
    if (*sc) {
      if (sp.model == "susy" && sc->count("--n") == 0) sp.n = 2;
      else if (sp.model == "susy") sp.n = sp.n_grid;
      return cmd_spectrum(sp);
    }
    return cmd_report(rc);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericFailure;
  }
}
