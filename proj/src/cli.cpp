#include "rankjump/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rankjump/error.hpp"
#include "rankjump/serialize.hpp"

namespace rankjump {

namespace {

using io::json;

struct ScanArgs {
  std::string family;
  long bound = 0;
  std::string mode = "total-first";
  double tol = kScanTolerance;
  std::string out;
  std::string format = "csv";
  int jobs = 1;
};

struct BillingArgs {
  std::string p;
  int rank = 0;
  long bound = 0;
  double tol = kScanTolerance;
  std::string out;
};

struct NeronArgs {
  std::string family;
  long bound = 0;
  double tol = kScanTolerance;
  std::string out;
  int jobs = 1;
};

struct HeightArgs {
  std::string curve;
  std::string point;
  double tol = kPointTolerance;
};

FamilySpec load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open family file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "malformed JSON in '" + path + "': " + e.what());
  }
  return io::family_from_json(j, std::filesystem::path(path).stem().string());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  f << text;
}

// "0,-1,0,1" or a JSON array of coefficient strings
PolyQ parse_poly_arg(const std::string& text) {
  if (!text.empty() && text.front() == '[') {
    try {
      return io::poly_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::ParseError, std::string("malformed polynomial: ") + e.what());
    }
  }
  std::vector<Rat> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) coeffs.push_back(Rat::parse(item));
  return PolyQ(std::move(coeffs));
}

std::pair<Rat, Rat> parse_pair(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::ParseError, std::string(what) + " must look like a,b");
  return {Rat::parse(text.substr(0, comma)), Rat::parse(text.substr(comma + 1))};
}

void report_findings(const std::vector<Finding>& findings, std::ostream& os) {
  for (const auto& f : findings) {
    os << (f.severity == Finding::Severity::Error ? "error: " : "warning: ") << f.message << '\n';
  }
}

// Rejects families whose hypotheses fail before any search starts.
void require_valid(const FamilySpec& f, std::ostream& err) {
  const auto findings = validate_family(f);
  if (has_errors(findings)) {
    report_findings(findings, err);
    throw Error(ErrorKind::InvalidArgument, "family '" + f.id + "' failed validation");
  }
}

class Timer {
 public:
  explicit Timer(std::ostream& err, std::string what) : err_(err), what_(std::move(what)) {}
  ~Timer() {
    const std::chrono::duration<double> s = std::chrono::steady_clock::now() - start_;
    err_ << "rankjump: " << what_ << " took " << s.count() << " s\n";
  }

 private:
  std::ostream& err_;
  std::string what_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int cmd_validate(const std::string& path, std::ostream& out) {
  const FamilySpec f = load_family(path);
  const auto findings = validate_family(f);
  report_findings(findings, out);
  if (has_errors(findings)) return kExitInput;
  out << "valid " << f.kind_name() << " family '" << f.id << "'\n";
  return kExitOk;
}

int cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream& err) {
  const FamilySpec f = load_family(a.family);
  require_valid(f, err);
  const SearchMode mode = parse_search_mode(a.mode);
  ScanReport report;
  {
    Timer t(err, "scan");
    report = scan(f, a.bound, mode, a.tol, a.jobs);
  }
  if (report.mode_fell_back) err << "rankjump: total-first is unavailable for this family; used fiber-first\n";
  const DensityReport density = density_report(f, report.certified_params());
  const std::string data = a.format == "json" ? io::to_json(report).dump(2) + "\n" : io::scan_csv(report);
  if (a.out.empty()) {
    out << data;
  } else {
    write_file(a.out, data);
    write_file(a.out + ".density.json", io::to_json(density).dump(2) + "\n");
    write_file(a.out + ".hist.csv", io::histogram_csv(density.real));
  }
  (a.out.empty() ? err : out) << "certified " << report.certified_params().size() << " of "
                                << report.stats.candidates << " candidates, " << report.distinct_params()
                                << " distinct params\n";
  return kExitOk;
}

int cmd_billing(const BillingArgs& a, std::ostream& out, std::ostream& err) {
  const PolyQ p = parse_poly_arg(a.p);
  std::optional<BillingCertificate> built;
  {
    Timer t(err, "billing");
    built = billing_build(p, a.rank, a.bound, a.tol);
  }
  const BillingCertificate& cert = *built;
  const auto problems = revalidate_billing(cert);
  for (const auto& pr : problems) err << "revalidation: " << pr << '\n';
  if (!problems.empty()) throw Error(ErrorKind::InvalidArgument, "billing certificate failed revalidation");
  const std::string data = io::to_json(cert).dump(2) + "\n";
  if (a.out.empty()) {
    out << data;
  } else {
    write_file(a.out, data);
  }
  return kExitOk;
}

int cmd_neron(const NeronArgs& a, std::ostream& out, std::ostream& err) {
  const FamilySpec f = load_family(a.family);
  require_valid(f, err);
  NeronCheckReport report;
  {
    Timer t(err, "neron");
    report = neron_check(f, a.bound, a.tol, a.jobs);
  }
  const std::string data = io::to_json(report).dump(2) + "\n";
  if (a.out.empty()) {
    out << data;
  } else {
    write_file(a.out, data);
  }
  return kExitOk;
}

int cmd_height(const HeightArgs& a, std::ostream& out) {
  const auto [A, B] = parse_pair(a.curve, "--curve");
  const CurveQ c(A, B);
  const PointQ p = PointQ::parse(a.point);
  const HeightEstimate h = canonical_height(c, p, a.tol);
  json j = io::to_json(h);
  j["curve"] = io::to_json(c);
  j["point"] = io::to_json(p);
  j["doublings"] = h.doublings;
  j["mu"] = h.mu.to_string(12, 'U');
  j["torsion"] = is_torsion(c, p);
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified rank-jump search on elliptic fibrations over Q", "rankjump"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a family file");
  validate->add_option("family,--family", validate_path, "family JSON file")->required();

  ScanArgs sa;
  auto* scan_cmd = app.add_subcommand("scan", "search for rank jumps and write certificates");
  scan_cmd->add_option("--family", sa.family, "family JSON file")->required();
  scan_cmd->add_option("--bound", sa.bound, "height bound")->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--mode", sa.mode, "total-first or fiber-first")
      ->check(CLI::IsMember({"total-first", "fiber-first"}));
  scan_cmd->add_option("--tol", sa.tol, "height tolerance")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--out", sa.out, "output file; sidecars PATH.density.json and PATH.hist.csv");
  scan_cmd->add_option("--format", sa.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  scan_cmd->add_option("--jobs", sa.jobs, "worker threads")->check(CLI::PositiveNumber);

  BillingArgs ba;
  auto* billing = app.add_subcommand("billing", "rank growth over a multiquadratic field");
  billing->add_option("--p", ba.p, "monic cubic, ascending coefficients: 0,-1,0,1")->required();
  billing->add_option("--rank", ba.rank, "number of independent classes")->required()->check(CLI::PositiveNumber);
  billing->add_option("--bound", ba.bound, "height bound for x0")->required()->check(CLI::PositiveNumber);
  billing->add_option("--tol", ba.tol, "height tolerance")->check(CLI::PositiveNumber);
  billing->add_option("--out", ba.out, "output file");

  NeronArgs na;
  auto* neron = app.add_subcommand("neron", "empirical specialization check for a Weierstrass pencil");
  neron->add_option("--family", na.family, "family JSON file")->required();
  neron->add_option("--bound", na.bound, "height bound")->required()->check(CLI::PositiveNumber);
  neron->add_option("--tol", na.tol, "height tolerance")->check(CLI::PositiveNumber);
  neron->add_option("--out", na.out, "output file");
  neron->add_option("--jobs", na.jobs, "worker threads")->check(CLI::PositiveNumber);

  HeightArgs ha;
  auto* height = app.add_subcommand("height", "canonical height of one point");
  height->add_option("--curve", ha.curve, "A,B of y^2 = x^3 + A x + B")->required();
  height->add_option("--point", ha.point, "x,y")->required();
  height->add_option("--tol", ha.tol, "error bound")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (*validate) return cmd_validate(validate_path, out);
    if (*scan_cmd) return cmd_scan(sa, out, err);
    if (*billing) return cmd_billing(ba, out, err);
    if (*neron) return cmd_neron(na, out, err);
    if (*height) return cmd_height(ha, out);
  } catch (const Error& e) {
    err << "rankjump: " << e.what() << '\n';
    return e.kind() == ErrorKind::SearchExhausted ? kExitExhausted : kExitInput;
  }
  return kExitInput;
}

}  // namespace rankjump
