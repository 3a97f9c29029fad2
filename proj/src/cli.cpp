#include "binomsum/cli.hpp"

#include <chrono>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

namespace binomsum::cli {

using nlohmann::json;

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename F>
auto timed(double& elapsed_ms, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  auto result = f();
  elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

json certificate_to_json(const Certificate& c) {
  json j = {{"kind", to_string(c.kind)}, {"label", certificate_label(c)}};
  if (c.condition != 0) j["condition"] = c.condition;
  if (c.prime) j["prime"] = *c.prime;
  if (c.valuation) j["valuation"] = *c.valuation;
  if (c.witness) j["witness"] = *c.witness;
  if (c.gcd) j["gcd"] = c.gcd->get_str();
  if (!c.prime_valuations.empty()) {
    j["prime_valuations"] = json::array();
    for (const auto& pp : c.prime_valuations)
      j["prime_valuations"].push_back({{"prime", pp.prime}, {"exponent", pp.exponent}});
  }
  return j;
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  const auto kind = certificate_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown certificate kind");
  c.kind = *kind;
  c.condition = j.value("condition", 0);
  if (j.contains("prime")) c.prime = j["prime"].get<std::uint64_t>();
  if (j.contains("valuation")) c.valuation = j["valuation"].get<long>();
  if (j.contains("witness")) c.witness = j["witness"].get<std::uint32_t>();
  if (j.contains("gcd")) c.gcd = parse_integer(j["gcd"].get<std::string>());
  if (j.contains("prime_valuations"))
    for (const auto& pp : j["prime_valuations"])
      c.prime_valuations.push_back({pp.at("prime").get<std::uint64_t>(), pp.at("exponent").get<long>()});
  return c;
}

json records_to_json(const std::vector<ExceptionRecord>& records) {
  json arr = json::array();
  for (const auto& rec : records) arr.push_back({{"r", rec.r}, {"n", rec.n}, {"ell", rec.ell}});
  return arr;
}

json payload_to_json(const Payload& payload) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ValuePayload>) {
          return {{"kind", "value"}, {"value", format_rational(p.value)}};
        } else if constexpr (std::is_same_v<T, VerdictPayload>) {
          json j = verdict_to_json(p.verdict);
          j["kind"] = "verdict";
          return j;
        } else if constexpr (std::is_same_v<T, RecordsPayload>) {
          return {{"kind", "records"}, {"records", records_to_json(p.records)}};
        } else if constexpr (std::is_same_v<T, ResiduesPayload>) {
          return {{"kind", "residues"},
                  {"r", p.residues.params.r},
                  {"n", p.residues.params.n},
                  {"b", p.residues.b},
                  {"a", p.residues.residues}};
        } else if constexpr (std::is_same_v<T, LeastEllPayload>) {
          return {{"kind", "least_ell"}, {"ell", p.ell ? json(*p.ell) : json(nullptr)}};
        } else if constexpr (std::is_same_v<T, DensityPayload>) {
          return {{"kind", "density"}, {"density", format_rational(p.density)}};
        } else {
          return {{"kind", "n_list"}, {"n", p.n}};
        }
      },
      payload);
}

Payload payload_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "value") return ValuePayload{parse_rational(j.at("value").get<std::string>())};
  if (kind == "verdict") return VerdictPayload{verdict_from_json(j)};
  if (kind == "records") {
    RecordsPayload p;
    for (const auto& rec : j.at("records"))
      p.records.push_back({rec.at("r").get<std::uint32_t>(), rec.at("n").get<std::uint32_t>(),
                           rec.at("ell").get<std::int64_t>()});
    return p;
  }
  if (kind == "residues") {
    ResidueSet s;
    s.params = {j.at("r").get<std::uint32_t>(), j.at("n").get<std::uint32_t>()};
    s.b = j.at("b").get<std::uint64_t>();
    s.residues = j.at("a").get<std::vector<std::uint64_t>>();
    return ResiduesPayload{s};
  }
  if (kind == "least_ell") {
    LeastEllPayload p;
    if (!j.at("ell").is_null()) p.ell = j["ell"].get<std::uint64_t>();
    return p;
  }
  if (kind == "density") return DensityPayload{parse_rational(j.at("density").get<std::string>())};
  if (kind == "n_list") return NListPayload{j.at("n").get<std::vector<std::uint32_t>>()};
  throw std::invalid_argument("unknown payload kind: " + kind);
}

std::string verdict_line(const Verdict& v) {
  const Certificate& c = v.certificate;
  std::ostringstream os;
  os << to_string(v.status) << ' ' << certificate_label(c);
  if (c.prime) os << " p=" << *c.prime;
  if (c.valuation) os << " e=" << *c.valuation;
  if (c.witness && c.kind != CertificateKind::Witness) os << " d=" << *c.witness;
  if (c.gcd) os << " gcd=" << c.gcd->get_str();
  for (const auto& pp : c.prime_valuations) os << ' ' << pp.prime << '^' << pp.exponent;
  return os.str();
}

void require_positive(std::uint32_t r, std::uint32_t n) {
  if (r == 0 || n == 0) throw UsageError("r and n must be >= 1");
}

}  // namespace

std::string format_rational(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  const Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return make_rational(parse_integer(s.substr(0, slash)), den);
}

Integer parse_integer(const std::string& s) {
  Integer v;
  const std::string body = (!s.empty() && s[0] == '+') ? s.substr(1) : s;
  const bool digits_only =
      !body.empty() &&
      body.find_first_not_of("0123456789", body[0] == '-' ? 1 : 0) == std::string::npos &&
      body != "-";
  if (!digits_only || v.set_str(body, 10) != 0)
    throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

json verdict_to_json(const Verdict& v) {
  return {{"status", to_string(v.status)}, {"certificate", certificate_to_json(v.certificate)}};
}

Verdict verdict_from_json(const json& j) {
  const auto status = status_from_string(j.at("status").get<std::string>());
  if (!status) throw std::invalid_argument("unknown status");
  return {*status, certificate_from_json(j.at("certificate"))};
}

json to_json(const OutputRecord& record) {
  return {{"command", record.command},
          {"params", record.params},
          {"result", payload_to_json(record.result)},
          {"elapsed_ms", record.elapsed_ms}};
}

OutputRecord record_from_json(const json& j) {
  OutputRecord r;
  r.command = j.at("command").get<std::string>();
  r.params = j.at("params");
  r.result = payload_from_json(j.at("result"));
  r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

std::string records_csv(const std::vector<ExceptionRecord>& records) {
  std::string out = "r,n,ell\n";
  for (const auto& rec : records)
    out += std::to_string(rec.r) + ',' + std::to_string(rec.n) + ',' + std::to_string(rec.ell) + '\n';
  return out;
}

std::string parity_pbm(const ParityTriangle& t) {
  // Plain PBM: 1 is black (odd coefficient); lines kept within 70 characters.
  std::string out = "P1\n" + std::to_string(t.rows) + ' ' + std::to_string(t.rows) + '\n';
  for (std::uint32_t m = 0; m < t.rows; ++m) {
    std::size_t col = 0;
    for (std::uint32_t k = 0; k < t.rows; ++k) {
      if (col == 70) {
        out += '\n';
        col = 0;
      }
      out += t.at(m, k) ? '1' : '0';
      ++col;
    }
    out += '\n';
  }
  return out;
}

std::string parity_text(const ParityTriangle& t) {
  std::string out;
  for (std::uint32_t m = 0; m < t.rows; ++m) {
    std::string line(t.rows - 1 - m, ' ');
    for (std::uint32_t k = 0; k <= m; ++k) {
      if (k) line += ' ';
      line += t.at(m, k) ? '*' : ' ';
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact evaluation, integrality certificates and exception searches for the "
               "generalized binomial sums S_(r,n)(x)."};
  app.name("binomsum");
  app.footer(
      "Exit codes: 0 success (classify: non-integral), 3 classify: integral, 2 usage error,\n"
      "4 residue scan budget exceeded, 1 other failure.\n"
      "Environment: BINOMSUM_SIEVE_LIMIT sets the initial prime sieve limit.");
  app.require_subcommand(1);

  int exit_code = kExitOk;
  std::function<void()> action;
  const unsigned default_threads = std::max(1u, std::thread::hardware_concurrency());

  auto emit = [&](const std::string& command, json params, Payload payload, double ms) {
    out << to_json({command, std::move(params), std::move(payload), ms}).dump() << '\n';
  };

  // eval
  std::uint32_t e_r = 0, e_n = 0;
  std::string e_ell, e_form = "direct";
  bool e_json = false;
  auto* eval = app.add_subcommand("eval", "Exact value of S_(r,n)(ell) as num/den");
  eval->add_option("r", e_r)->required();
  eval->add_option("n", e_n)->required();
  eval->add_option("ell", e_ell)->required();
  eval->add_option("--form", e_form, "Evaluation route")
      ->check(CLI::IsMember({"direct", "ident", "row"}))
      ->capture_default_str();
  eval->add_flag("--json", e_json, "Emit a JSON output record");
  eval->callback([&] {
    action = [&] {
      const Params p{e_r, e_n};
      const Integer ell = parse_integer(e_ell);
      double ms = 0;
      const Rational v = timed(ms, [&] {
        if (e_form == "ident") return s_eval_ident(p, ell);
        if (e_form == "row") return s_poly(p, SForm::Row)(Rational(ell));
        return s_eval(p, ell);
      });
      if (e_json)
        emit("eval", {{"r", e_r}, {"n", e_n}, {"ell", e_ell}, {"form", e_form}}, ValuePayload{v}, ms);
      else
        out << format_rational(v) << '\n';
    };
  });

  // classify
  std::uint32_t c_r = 0, c_n = 0;
  std::string c_ell;
  bool c_json = false;
  auto* cls = app.add_subcommand("classify", "Decide integrality of S_(r,n)(ell) with a certificate");
  cls->add_option("r", c_r)->required();
  cls->add_option("n", c_n)->required();
  cls->add_option("ell", c_ell)->required();
  cls->add_flag("--json", c_json, "Emit a JSON output record");
  cls->callback([&] {
    action = [&] {
      require_positive(c_r, c_n);
      const Integer ell = parse_integer(c_ell);
      double ms = 0;
      const Verdict v = timed(ms, [&] { return classify({c_r, c_n}, ell); });
      if (c_json)
        emit("classify", {{"r", c_r}, {"n", c_n}, {"ell", c_ell}}, VerdictPayload{v}, ms);
      else
        out << verdict_line(v) << '\n';
      exit_code = v.status == Status::Integral ? kExitIntegral : kExitOk;
    };
  });

  // scan
  std::uint32_t s_rmax = 0, s_nmax = 0;
  std::int64_t s_bound = 0;
  std::string s_out = "csv";
  unsigned s_threads = default_threads;
  auto* scan = app.add_subcommand("scan", "All exceptions in a (r, n, |ell|) box");
  scan->add_option("r_max,--r-max", s_rmax)->required()->check(CLI::PositiveNumber);
  scan->add_option("n_max,--n-max", s_nmax)->required()->check(CLI::PositiveNumber);
  scan->add_option("ell_bound,--ell-bound", s_bound)->required()->check(CLI::PositiveNumber);
  scan->add_option("--out", s_out, "csv, json (array of records) or record (JSON output record)")
      ->check(CLI::IsMember({"csv", "json", "record"}))
      ->capture_default_str();
  scan->add_option("--threads", s_threads)->check(CLI::PositiveNumber);
  scan->callback([&] {
    action = [&] {
      double ms = 0;
      const auto records = timed(ms, [&] { return scan_box(s_rmax, s_nmax, s_bound, s_threads); });
      if (s_out == "csv")
        out << records_csv(records);
      else if (s_out == "json")
        out << records_to_json(records).dump() << '\n';
      else
        emit("scan", {{"r_max", s_rmax}, {"n_max", s_nmax}, {"ell_bound", s_bound}},
             RecordsPayload{records}, ms);
    };
  });

  // residues
  std::uint32_t rc_r = 0, rc_n = 0;
  std::uint64_t rc_budget = kDefaultResidueBudget;
  std::string rc_method = "crt";
  bool rc_json = false;
  auto* res = app.add_subcommand("residues", "All residues a mod b = C(r+n,r) with S_(r,n)(a) integral");
  res->add_option("r", rc_r)->required();
  res->add_option("n", rc_n)->required();
  res->add_option("--budget", rc_budget, "Largest modulus b to scan")->capture_default_str();
  res->add_option("--method", rc_method)
      ->check(CLI::IsMember({"crt", "direct"}))
      ->capture_default_str();
  res->add_flag("--json", rc_json, "Emit a JSON output record");
  res->callback([&] {
    action = [&] {
      require_positive(rc_r, rc_n);
      double ms = 0;
      const auto set = timed(ms, [&] {
        return residue_classes({rc_r, rc_n}, rc_budget,
                               rc_method == "direct" ? ResidueMethod::Direct : ResidueMethod::LocalCrt);
      });
      if (rc_json) {
        emit("residues", {{"r", rc_r}, {"n", rc_n}, {"budget", rc_budget}}, ResiduesPayload{set}, ms);
      } else {
        out << "b=" << set.b << '\n';
        for (const auto a : set.residues) out << a << '\n';
      }
    };
  });

  // least-ell
  std::uint32_t le_r = 0, le_n = 0;
  std::uint64_t le_cap = 10'000'000;
  bool le_json = false;
  auto* least = app.add_subcommand("least-ell", "Least ell >= 2 with S_(r,n)(ell) integral");
  least->add_option("r", le_r)->required();
  least->add_option("n", le_n)->required();
  least->add_option("--cap", le_cap, "Largest ell to try")->capture_default_str();
  least->add_flag("--json", le_json, "Emit a JSON output record");
  least->callback([&] {
    action = [&] {
      require_positive(le_r, le_n);
      if (le_cap < 2) throw UsageError("--cap must be >= 2");
      double ms = 0;
      const auto ell = timed(ms, [&] { return least_positive_ell({le_r, le_n}, le_cap); });
      if (le_json)
        emit("least-ell", {{"r", le_r}, {"n", le_n}, {"cap", le_cap}}, LeastEllPayload{ell}, ms);
      else
        out << (ell ? std::to_string(*ell) : std::string("none")) << '\n';
    };
  });

  // density
  std::uint32_t d_m = 0;
  std::string d_ell;
  bool d_json = false;
  auto* dens = app.add_subcommand("density", "Fraction of pairs r+n <= m with S_(r,n)(ell) non-integral");
  dens->add_option("m", d_m)->required();
  dens->add_option("ell", d_ell)->required();
  dens->add_flag("--json", d_json, "Emit a JSON output record");
  dens->callback([&] {
    action = [&] {
      if (d_m < 2) throw UsageError("m must be >= 2");
      const Integer ell = parse_integer(d_ell);
      if (abs(ell) < 2) throw UsageError("|ell| must be >= 2");
      double ms = 0;
      const Rational v = timed(ms, [&] { return density(d_m, ell); });
      if (d_json)
        emit("density", {{"m", d_m}, {"ell", d_ell}}, DensityPayload{v}, ms);
      else
        out << format_rational(v) << '\n';
    };
  });

  // exceptional-n
  std::uint32_t x_r = 0, x_nmax = 0;
  std::uint64_t x_budget = kDefaultResidueBudget;
  unsigned x_threads = default_threads;
  bool x_json = false;
  auto* excn = app.add_subcommand("exceptional-n", "All n <= n_max for which (r, n) has exceptions");
  excn->add_option("r", x_r)->required()->check(CLI::PositiveNumber);
  excn->add_option("n_max", x_nmax)->required()->check(CLI::PositiveNumber);
  excn->add_option("--budget", x_budget, "Largest modulus b to scan")->capture_default_str();
  excn->add_option("--threads", x_threads)->check(CLI::PositiveNumber);
  excn->add_flag("--json", x_json, "Emit a JSON output record");
  excn->callback([&] {
    action = [&] {
      double ms = 0;
      const auto ns = timed(ms, [&] { return exceptional_n(x_r, x_nmax, x_budget, x_threads); });
      if (x_json) {
        emit("exceptional-n", {{"r", x_r}, {"n_max", x_nmax}, {"budget", x_budget}},
             NListPayload{ns}, ms);
      } else {
        for (const auto n : ns) out << n << '\n';
      }
    };
  });

  // parity
  std::uint32_t p_rows = 0;
  std::string p_format = "pbm";
  auto* par = app.add_subcommand("parity", "Pascal's triangle mod 2 as PBM (P1) or text");
  par->add_option("rows", p_rows)->required()->check(CLI::PositiveNumber);
  par->add_option("--format", p_format)->check(CLI::IsMember({"pbm", "txt"}))->capture_default_str();
  par->callback([&] {
    action = [&] {
      const auto t = parity_triangle(p_rows);
      out << (p_format == "pbm" ? parity_pbm(t) : parity_text(t));
    };
  });

  std::vector<const char*> argv = {"binomsum"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "binomsum: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (action) action();
  } catch (const UsageError& e) {
    err << "binomsum: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ScanBudgetExceeded& e) {
    err << "binomsum: " << e.what() << " (raise --budget or narrow the parameters)\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "binomsum: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "binomsum: " << e.what() << '\n';
    return kExitFailure;
  }
  return exit_code;
}

}  // namespace binomsum::cli
