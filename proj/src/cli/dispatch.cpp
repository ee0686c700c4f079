#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "quantlab/errors.hpp"
#include "quantlab/modular_data.hpp"
#include "suites.hpp"

namespace quantlab::cli {

using namespace detail;
using report::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::vector<int> k_list_or(const RunConfig& c, std::vector<int> fallback) {
  return c.k_list.empty() ? fallback : c.k_list;
}

TeichPoint transport_target(const RunConfig& c) {
  if (!c.to.empty()) return parse_sigma(c.to);
  const TeichPoint s = parse_sigma(c.sigma);
  return {s.sigma1() + 0.2, s.sigma2() + 0.1};
}

SuiteResult run_all(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  for (const Criterion& cr : criteria()) {
    SuiteResult one = cr.run(c.seed);
    one.tables.clear();
    char prefix[8];
    std::snprintf(prefix, sizeof prefix, "c%02d.", cr.id);
    r.merge(std::move(one), prefix);
  }
  const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.checks.push_back(report::make_check("total_runtime_seconds", json::object(), t, 600.0));
  return r;
}

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["n"] = c.n;
  j["k"] = c.k;
  j["k_list"] = c.k_list;
  j["sigma"] = c.sigma;
  j["to"] = c.to;
  j["side"] = c.side;
  j["N"] = c.N;
  j["tolerances"] = c.tolerances;
  j["out"] = c.out;
  j["format"] = c.format;
  j["seed"] = c.seed;
  j["label"] = c.label;
  j["genus"] = c.genus;
  j["boundary"] = c.boundary;
  j["f"] = c.f;
  j["g"] = c.g;
  return j;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

}  // namespace

double RunConfig::tol(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

void RunConfig::validate() const {
  for (const auto& [name, v] : tolerances)
    if (!(v > 0.0)) throw DomainError("tolerance " + name + " must be positive");
  if (parse_sigma(sigma).sigma2() <= 0.0) throw DomainError("sigma2 must be positive");
  if (!to.empty()) parse_sigma(to);
  if (n < 2) throw DomainError("n must be >= 2");
  if (k < 1) throw DomainError("k must be >= 1");
  for (int kk : k_list)
    if (kk < 1) throw DomainError("k_list entries must be >= 1");
  if (N < 0) throw DomainError("N must be >= 0");
  if (!(side > 0.0)) throw DomainError("side must be positive");
  if (genus < 0) throw DomainError("genus must be >= 0");
  if (format != "csv" && format != "json") throw DomainError("format must be csv or json");
}

torus::TeichPoint parse_sigma(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != s.size()) throw DomainError("cannot parse sigma '" + text + "'");
    return v;
  };
  double re = 0.0, im = 0.0;
  if (const auto comma = t.find(','); comma != std::string::npos) {
    re = number(t.substr(0, comma));
    im = number(t.substr(comma + 1));
  } else if (!t.empty() && t.back() == 'i') {
    t.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t p = t.size(); p-- > 1;)
      if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E') {
        split = p;
        break;
      }
    const std::string rs = split == std::string::npos ? "" : t.substr(0, split);
    const std::string is = split == std::string::npos ? t : t.substr(split);
    re = rs.empty() ? 0.0 : number(rs);
    im = (is.empty() || is == "+") ? 1.0 : is == "-" ? -1.0 : number(is);
  } else {
    re = number(t);
  }
  if (!(im > 0.0)) throw DomainError("sigma must lie in the upper half-plane");
  return {re, im};
}

TrigPoly parse_symbol(const std::string& text) {
  static const std::regex term_re(R"(\s*\+\s*)");
  static const std::regex named(R"((cos|sin)_(x|y)(?::(\d+))?)");
  static const std::regex mode(R"(e:(-?\d+),(-?\d+))");
  TrigPoly sum;
  bool any = false;
  std::sregex_token_iterator it(text.begin(), text.end(), term_re, -1), end;
  for (; it != end; ++it) {
    const std::string term = *it;
    if (term.find_first_not_of(" \t") == std::string::npos) continue;
    TrigPoly prod = TrigPoly::constant(1.0);
    std::stringstream ss(term);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
      factor.erase(0, factor.find_first_not_of(" \t"));
      factor.erase(factor.find_last_not_of(" \t") + 1);
      std::smatch m;
      if (std::regex_match(factor, m, named)) {
        const int h = m[3].matched ? std::stoi(m[3]) : 1;
        const bool x = m[2] == "x";
        prod = prod * (m[1] == "cos" ? (x ? TrigPoly::cos_x(h) : TrigPoly::cos_y(h))
                                     : (x ? TrigPoly::sin_x(h) : TrigPoly::sin_y(h)));
      } else if (std::regex_match(factor, m, mode)) {
        prod = prod * TrigPoly::mode(std::stoi(m[1]), std::stoi(m[2]));
      } else {
        std::size_t used = 0;
        double c = 0.0;
        try {
          c = std::stod(factor, &used);
        } catch (const std::exception&) {
          used = std::string::npos;
        }
        if (used != factor.size()) throw DomainError("cannot parse symbol factor '" + factor + "'");
        prod *= c;
      }
    }
    sum += prod;
    any = true;
  }
  if (!any) throw DomainError("empty symbol");
  return sum.prune();
}

void SuiteResult::merge(SuiteResult other, const std::string& prefix) {
  for (auto& c : other.checks) {
    c.check = prefix + c.check;
    checks.push_back(std::move(c));
  }
  for (auto& [name, t] : other.tables) tables.emplace_back(prefix + name, std::move(t));
  if (!other.data.empty()) {
    if (prefix.empty())
      data.update(other.data);
    else
      data[prefix.substr(0, prefix.size() - 1)] = std::move(other.data);
  }
}

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> list{
      {"smatrix",
       [](const RunConfig& c) {
         SuiteResult r = smatrix_suite(c.n, c.k, c.tol("smatrix", 1e-10), true);
         if (c.n == 2) r.merge(su2_closed_form(c.k, c.tol("smatrix", 1e-10)));
         return r;
       }},
      {"curve-spectrum",
       [](const RunConfig& c) {
         return curve_spectrum_suite(c.n, c.k, modular::Label::parse(c.label), c.tol("fusion", 1e-9));
       }},
      {"verlinde",
       [](const RunConfig& c) {
         std::vector<modular::Label> bd;
         for (const auto& b : c.boundary) bd.push_back(modular::Label::parse(b));
         return verlinde_suite(c.n, c.k, c.genus, bd, c.tol("verlinde", 1e-6));
       }},
      {"gram-check",
       [](const RunConfig& c) {
         return gram_suite(c.k, parse_sigma(c.sigma), c.N, c.tol("holomorphicity", 1e-8),
                           c.tol("gram_offdiagonal", 1e-10), c.tol("gram_closed_form", 1e-8));
       }},
      {"toeplitz",
       [](const RunConfig& c) {
         const TeichPoint s = parse_sigma(c.sigma);
         SuiteResult r = toeplitz_suite(c.k, s, parse_symbol(c.f), c.N, c.tol("toeplitz", 1e-8));
         r.merge(gap_suite(s, k_list_or(c, {8, 16, 32, 64, 128}), c.tol("gap", 1e-8)));
         return r;
       }},
      {"identities",
       [](const RunConfig& c) {
         return identities_suite(c.k, parse_sigma(c.sigma), c.N, c.seed, c.tol("identities", 1e-6));
       }},
      {"star-residual",
       [](const RunConfig& c) {
         const TeichPoint s = parse_sigma(c.sigma);
         const TrigPoly f = parse_symbol(c.f), g = parse_symbol(c.g);
         SuiteResult r = star_suite(f, g, s, k_list_or(c, {16, 32, 64, 128}), c.tol("antisymmetry", 1e-12));
         r.merge(reparametrization_suite(f, g, s, {0, 1, 2, 3}, c.tol("reparametrization", 1e-12)));
         return r;
       }},
      {"eqcond",
       [](const RunConfig& c) { return eqcond_suite(c.k, parse_sigma(c.sigma), c.N, c.tol("eqcond", 1e-5)); }},
      {"transport",
       [](const RunConfig& c) {
         return transport_suite(c.k, parse_sigma(c.sigma), transport_target(c), c.N, c.tol("transport", 1e-4));
       }},
      {"loop-defect",
       [](const RunConfig& c) {
         return loop_suite(c.k, parse_sigma(c.sigma), c.side, c.N, c.tol("loop", 1e-3));
       }},
      {"endo-flatness",
       [](const RunConfig& c) {
         return endo_suite(parse_symbol(c.f), parse_sigma(c.sigma), k_list_or(c, {8, 16, 32, 64}), {2, 3},
                           c.tol("grid", 1e-6));
       }},
      {"formal-checks",
       [](const RunConfig& c) {
         return formal_suite(parse_symbol(c.f), parse_symbol(c.g), parse_sigma(c.sigma),
                             k_list_or(c, {2, 4, 8, 16}), {4, 8, 16, 32});
       }},
      {"all", run_all},
  };
  return list;
}

SuiteResult run_suite(const RunConfig& config) {
  for (const auto& [name, suite] : suites())
    if (name == config.command) return suite(config);
  throw DomainError("unknown subcommand '" + config.command + "'");
}

int dispatch(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult result;
  try {
    result = run_suite(config);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const ConsistencyError& e) {
    result.checks.push_back(report::make_check(e.invariant(), {{"error", e.what()}}, e.residual(), e.tolerance(), false));
  } catch (const std::runtime_error& e) {
    result.checks.push_back(report::make_check("error", {{"error", e.what()}}, NAN, 0.0, false));
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::filesystem::path dir(config.out);
  std::filesystem::create_directories(dir);
  json rep;
  rep["command"] = config.command;
  rep["pass"] = result.pass();
  json checks = json::array(), failing = json::array();
  for (const auto& c : result.checks) {
    checks.push_back(report::to_json(c));
    if (!c.pass) failing.push_back(c.check);
  }
  rep["failing"] = failing;
  rep["checks"] = checks;
  rep["data"] = result.data;
  if (config.format == "json") {
    json tables = json::object();
    for (const auto& [name, t] : result.tables) tables[name] = report::to_json(t);
    rep["tables"] = tables;
  } else {
    for (const auto& [name, t] : result.tables) {
      std::ostringstream os;
      report::write_csv(os, t);
      write_file(dir / (name + ".csv"), os.str());
    }
  }
  write_file(dir / "report.json", rep.dump(2) + "\n");

  json manifest;
  manifest["config"] = config_json(config);
  manifest["versions"] = {{"quantlab", kVersion},
                          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                        "." + std::to_string(EIGEN_MINOR_VERSION)},
                          {"compiler", __VERSION__},
                          {"cplusplus", __cplusplus}};
  manifest["timings"] = {{"total_seconds", elapsed}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  for (const auto& c : result.checks)
    log << (c.pass ? "PASS " : "FAIL ") << c.check << " residual=" << report::format_double(c.residual)
        << " tolerance=" << report::format_double(c.tolerance) << "\n";
  const std::size_t failed = failing.size();
  log << config.command << ": " << result.checks.size() - failed << "/" << result.checks.size()
      << " checks passed; report in " << dir.string() << "\n";
  return failed == 0 ? 0 : 1;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"quantlab: geometric quantization of the torus and SU(n) modular data, numerical checks"};
  app.set_config("--config", "", "Plain 'key = value' configuration file; flags override it");
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig c;
  std::vector<std::string> tol_specs;
  std::string k_list;
  app.add_option("--n", c.n, "Rank n of SU(n)")->capture_default_str();
  app.add_option("--k", c.k, "Level k")->capture_default_str();
  app.add_option("--k-list,--k_list", k_list, "Comma-separated levels for convergence sweeps");
  app.add_option("--sigma", c.sigma, "Point of the upper half-plane, e.g. i, 1+i, 0.3+0.7i")->capture_default_str();
  app.add_option("--to", c.to, "Transport end point (default sigma + 0.2 + 0.1i)");
  app.add_option("--side", c.side, "Side of the square loop")->capture_default_str();
  app.add_option("--N", c.N, "Grid size (0 means 16k)")->capture_default_str();
  app.add_option("--tol", tol_specs, "Tolerance override name=value (repeatable)");
  app.add_option("--out", c.out, "Report directory")->capture_default_str();
  app.add_option("--format", c.format, "Data product format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--seed", c.seed, "Seed for random test sections")->capture_default_str();
  app.add_option("--label", c.label, "Label for curve-spectrum, e.g. 1 or 2,1")->capture_default_str();
  app.add_option("--genus", c.genus, "Genus for verlinde")->capture_default_str();
  app.add_option("--boundary", c.boundary, "Boundary labels for verlinde");
  app.add_option("--f", c.f, "Symbol f, e.g. cos_x, e:1,0, cos_x*cos_y + 0.5*sin_y:2")->capture_default_str();
  app.add_option("--g", c.g, "Symbol g")->capture_default_str();

  const char* help[] = {
      "S-matrix with unitarity, symmetry and S^2 checks; CSV columns row,col,re,im",
      "Curve-operator eigenvalues for --label; CSV columns mu,re,im",
      "Verlinde dimension for --genus and --boundary",
      "Theta-basis holomorphicity and Gram checks; CSV columns j,gram_re,gram_im,closed_form",
      "Toeplitz matrix of --f and the abelian curve-operator gap; CSV row,col,re,im and k,gap,closed_form,unitarity",
      "Compressed first/second-order identities on random sections",
      "Product expansion residuals e0, e1 and reparametrization; CSV k,e0,e1",
      "Preservation of holomorphic sections by the connection",
      "Parallel transport from --sigma to --to; CSV t,sigma1,sigma2,holo_residual,drift",
      "Square-loop holonomy defect",
      "Covariant derivative of Toeplitz sections over --k-list; CSV k,norm_dsigma1,norm_dsigma2",
      "Formal connection, E/H, trivialization and star product checks",
      "Every acceptance criterion",
  };
  std::size_t i = 0;
  for (const auto& [name, suite] : suites()) {
    (void)suite;
    app.add_subcommand(name, help[i++]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return 2;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    std::stringstream ks(k_list);
    std::string item;
    while (std::getline(ks, item, ','))
      if (!item.empty()) c.k_list.push_back(std::stoi(item));
    for (const auto& item : tol_specs) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw DomainError("tolerance must be name=value: " + item);
      c.tolerances[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return dispatch(c, out);
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::out_of_range& e) {
    err << "configuration error: " << e.what() << "\n" << app.help();
    return 2;
  }
}

}  // namespace quantlab::cli
