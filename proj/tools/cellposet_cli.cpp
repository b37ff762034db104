#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cellposet/certify.hpp"
#include "cellposet/io.hpp"
#include "cellposet/realize.hpp"

namespace {

using namespace cellposet;

// exit codes: 0 success/admissible, 1 domain-negative, 2 input error
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

int cmd_check(const std::string& htext, bool sphere, bool quiet) {
  const HVector h = parse_hvector(htext);
  const ConditionReport rep = sphere ? check_sphere(h) : check_ball(h);
  if (!quiet)
    std::cout << (sphere ? "sphere" : "ball") << " conditions for " << format_hvector(h) << ": "
              << rep.summary() << "\n";
  return rep.admissible ? kOk : kNegative;
}

int cmd_realize(const std::string& htext, const std::string& out_path,
                const std::string& trace_path, bool quiet) {
  const HVector h = parse_hvector(htext);
  const ConditionReport rep = check_ball(h);
  if (!rep.admissible) {
    std::cout << "refused: " << rep.summary() << "\n";
    return kNegative;
  }
  RealizeResult r = realize(h);
  if (!quiet) {
    std::cout << "realized " << format_hvector(h) << " via case " << r.case_id;
    if (r.case_id == 1) std::cout << (r.even_sum ? " (even facet count)" : " (odd facet count)");
    std::cout << "\n";
    std::cout << "elements " << r.poset.size() << ", facets " << f_vector(r.poset).back()
              << ", trace steps " << r.trace.steps.size() << "\n";
    if (r.case3) {
      std::cout << "case 3 split: n=" << r.case3->n << " m=" << r.case3->m << " s=";
      for (size_t i = 0; i < r.case3->s.size(); ++i)
        std::cout << (i ? "," : "") << r.case3->s[i];
      std::cout << " core=" << format_hvector(r.case3->delta_bar) << "\n";
    }
  }
  if (!out_path.empty()) write_file(out_path, write_poset(r.poset));
  if (!trace_path.empty()) write_file(trace_path, write_trace(r.trace));
  return kOk;
}

int cmd_verify(const std::string& poset_path, const std::string& trace_path,
               const std::string& htext, bool quiet) {
  Certificate cert;
  cert.poset = parse_poset(read_file(poset_path));
  cert.trace = parse_trace(read_file(trace_path));
  cert.claimed_h = parse_hvector(htext);
  const CertifyReport rep = certify_ball(cert);
  if (!quiet) std::cout << rep.summary();
  return rep.overall ? kOk : kNegative;
}

int cmd_info(const std::string& poset_path, bool quiet) {
  SimplicialPoset p = parse_poset(read_file(poset_path));
  const ValidationReport v = validate(p);
  if (!v.ok) {
    std::cout << "invalid poset: " << v.reason << " (witness " << v.witness << ")\n";
    return kNegative;
  }
  const HVector f = f_vector(p);
  const HVector h = h_vector(p);
  std::cout << "d " << p.d() << "\n";
  std::cout << "f " << format_hvector(f) << "\n";
  std::cout << "h " << format_hvector(h) << "\n";
  std::cout << "dh " << format_hvector(boundary_h(h)) << "\n";
  bool pseudo = true;
  for (const Element& e : p.elements())
    if (e.rank == p.d() - 1 && p.upper_covers_of(e.id).size() > 2) pseudo = false;
  std::cout << "pseudomanifold " << (pseudo ? "yes" : "no") << "\n";
  if (pseudo) {
    BoundaryResult b = boundary(p);
    if (b.ideal.members.empty()) {
      std::cout << "boundary empty\n";
    } else {
      std::cout << "boundary f " << format_hvector(f_vector(b.view)) << "\n";
      std::cout << "boundary h " << format_hvector(h_vector(b.view)) << "\n";
    }
  }
  (void)quiet;
  return kOk;
}

int cmd_sweep(int d_max, long long facet_max, const std::string& out_path, bool quiet) {
  if (d_max < 1 || facet_max < 1) {
    std::cerr << "sweep bounds must be positive\n";
    return kInputError;
  }
  const SweepReport rep = cross_check_small(d_max, facet_max);
  const std::string table = rep.to_tsv();
  if (!out_path.empty())
    write_file(out_path, table);
  else if (!quiet)
    std::cout << table;
  if (quiet && !rep.all_certified) std::cout << "certification failures found\n";
  return rep.all_certified ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simplicial cell ball h-vectors: check, realize, verify"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress reports, keep exit codes");

  auto* check = app.add_subcommand("check", "test a vector against the ball (or sphere) conditions");
  std::string check_h;
  bool sphere = false;
  check->add_option("hvector", check_h, "comma-separated h-vector, e.g. 1,0,0,1,0")->required();
  check->add_flag("--sphere", sphere, "use the sphere conditions");

  auto* realize_cmd = app.add_subcommand("realize", "construct a ball with the given h-vector");
  std::string realize_h, out_path, trace_path;
  realize_cmd->add_option("hvector", realize_h, "comma-separated h-vector")->required();
  realize_cmd->add_option("--out", out_path, "write the poset file here");
  realize_cmd->add_option("--trace", trace_path, "write the construction trace here");

  auto* verify = app.add_subcommand("verify", "certify a poset + trace + h-vector triple");
  std::string v_poset, v_trace, v_h;
  verify->add_option("poset", v_poset, "poset file")->required();
  verify->add_option("trace", v_trace, "trace file")->required();
  verify->add_option("hvector", v_h, "claimed h-vector")->required();

  auto* info = app.add_subcommand("info", "face counts and boundary data of a poset file");
  std::string i_poset;
  info->add_option("poset", i_poset, "poset file")->required();

  auto* sweep = app.add_subcommand("sweep", "enumerate small h-vectors, realize and certify");
  int d_max = 4;
  long long facet_max = 8;
  sweep->add_option("--d", d_max, "maximal d (h-vector length minus one)");
  sweep->add_option("--facets", facet_max, "maximal entry sum");
  std::string s_out;
  sweep->add_option("--out", s_out, "write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kInputError : kOk;
  }

  try {
    if (*check) return cmd_check(check_h, sphere, quiet);
    if (*realize_cmd) return cmd_realize(realize_h, out_path, trace_path, quiet);
    if (*verify) return cmd_verify(v_poset, v_trace, v_h, quiet);
    if (*info) return cmd_info(i_poset, quiet);
    if (*sweep) return cmd_sweep(d_max, facet_max, s_out, quiet);
  } catch (const cellposet::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const cellposet::CellposetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kInputError;
}
