// dser: command-line front end for the identity suites and the
// factorization, dilation, telescoping and evaluation operations.
//
// Exit status: 0 success, 1 identity violation or failed verification,
// 2 usage or malformed input.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dser/io.hpp"
#include "dser/suite.hpp"

namespace {

using dser::Json;

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_all(path));
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw UsageError("cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("input needs \"") + key + "\"");
  return j.at(key);
}

// Failures of the mathematics itself; everything else thrown while reading
// or preparing the input is a usage error.
bool is_verification_failure(dser::ErrorCode c) {
  return c == dser::ErrorCode::RewriteFailure || c == dser::ErrorCode::CertificationFailure;
}

struct VerifyOptions {
  std::string ring = "Q";
  std::string gram_file;
  std::size_t hyperbolic_rank = 0;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::size_t n_max = 3, m_max = 3;
  std::vector<std::string> identities;
  std::string out;
  bool corrupt = false;
};

int run_verify(const VerifyOptions& o) {
  dser::SuiteConfig cfg;
  cfg.ring = o.ring;
  cfg.seed = o.seed;
  cfg.samples = o.samples;
  cfg.n_max = o.n_max;
  cfg.m_max = o.m_max;
  cfg.identities = o.identities;
  cfg.corrupt = o.corrupt;
  if (!o.gram_file.empty()) {
    if (o.hyperbolic_rank == 0) throw UsageError("--gram needs --hyperbolic-rank");
    Json gram = read_json(o.gram_file);
    cfg.space = dser::space_from_json(Json{{"ring", o.ring}, {"gram", gram}, {"hyperbolic_rank", o.hyperbolic_rank}});
  } else if (o.hyperbolic_rank != 0) {
    cfg.m_max = o.hyperbolic_rank;
  }
  dser::SuiteResult r = dser::run_suite(cfg);
  Output out(o.out);
  for (const auto& rep : r.reports) out.stream() << dser::to_json(rep).dump() << '\n';
  out.stream() << dser::suite_summary(cfg, r).dump() << '\n';
  return r.violations() == 0 ? kPass : kViolation;
}

int run_factor(const Json& in, std::ostream& os) {
  dser::SpacePtr s = dser::space_from_json(require(in, "space"));
  dser::HomMatrix h = dser::hom_from_json(*s, require(in, "hom"));
  dser::Word w = dser::factor_generators(s, h);
  bool ok = dser::word_to_matrix(w).matrix() == dser::gen_full(s, h).matrix();
  os << Json{{"space", dser::to_json(*s)}, {"word", dser::to_json(w)}, {"factors", w.size()}, {"verified", ok}}.dump() << '\n';
  return ok ? kPass : kViolation;
}

int run_dilate(const Json& in, std::ostream& os) {
  dser::SpacePtr s = dser::space_from_json(require(in, "space"));
  if (in.contains("theta")) {
    dser::Word theta = dser::word_from_json(s, in.at("theta"));
    std::string var = in.value("var", "X");
    dser::ThetaDilation d = dser::dilate_theta(theta, var);
    Json out{{"d", d.d},
             {"word", dser::to_json(d.out)},
             {"base_ring", d.out_base.space()->ring().descriptor()},
             {"min_s_order", d.out.size() ? Json(dser::min_s_order(d.out)) : Json(nullptr)},
             {"verified", d.verified}};
    os << out.dump() << '\n';
    return d.verified ? kPass : kViolation;
  }
  dser::DilationInput di = dser::dilation_input_from_json(s->ring(), require(in, "input"));
  dser::DilationWitness w = dser::dilate_generator(s, di);
  os << dser::to_json(w).dump() << '\n';
  return w.verified ? kPass : kViolation;
}

int run_telescope(const Json& in, std::ostream& os) {
  dser::SpacePtr s = dser::space_from_json(require(in, "space"));
  std::string var = in.value("var", "X");
  dser::OrthMatrix theta = in.contains("theta") ? dser::word_to_matrix(dser::word_from_json(s, in.at("theta")))
                                                : dser::OrthMatrix::certify(s, dser::matrix_from_json(s->ring(), require(in, "matrix")));
  std::vector<dser::Share> shares = dser::shares_from_json(s->ring(), require(in, "shares"));
  std::vector<dser::OrthMatrix> kappa = dser::telescope(theta, shares, var);
  dser::Matrix prod = dser::Matrix::identity(s->ring(), s->dim());
  Json factors = Json::array();
  for (const auto& k : kappa) {
    prod = prod * k.matrix();
    factors.push_back(dser::to_json(k.matrix()));
  }
  bool ok = prod == theta.matrix();
  os << Json{{"factors", factors}, {"verified", ok}}.dump() << '\n';
  return ok ? kPass : kViolation;
}

int run_eval(const Json& in, std::ostream& os) {
  dser::SpacePtr s = dser::space_from_json(require(in, "space"));
  dser::OrthMatrix m = dser::word_to_matrix(dser::word_from_json(s, require(in, "word")));
  os << Json{{"matrix", dser::to_json(m.matrix())}}.dump() << '\n';
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact elementary orthogonal transformations: identity suites, factorization, dilation, telescoping"};
  app.require_subcommand(1);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run the seeded identity suites and emit JSON-lines reports");
  verify->add_option("--ring", vo.ring, "Ring descriptor, e.g. Q, GF(10007), Q[x]")->capture_default_str();
  verify->add_option("--gram", vo.gram_file, "JSON file with a fixed Gram matrix")->check(CLI::ExistingFile);
  verify->add_option("--hyperbolic-rank", vo.hyperbolic_rank, "m for --gram, otherwise the bound on m");
  verify->add_option("--seed", vo.seed, "Master seed")->capture_default_str();
  verify->add_option("--samples", vo.samples, "Cases per identity")->capture_default_str();
  verify->add_option("--n-max", vo.n_max, "Bound on the rank of the form")->capture_default_str();
  verify->add_option("--m-max", vo.m_max, "Bound on the hyperbolic rank")->capture_default_str();
  verify->add_option("--identities", vo.identities, "Comma-separated groups (default: all)")
      ->delimiter(',')
      ->check(CLI::IsMember(dser::suite_groups()));
  verify->add_option("--out", vo.out, "Write reports here instead of standard output");
  verify->add_flag("--corrupt-fixture", vo.corrupt, "Perturb one generator matrix (forces a failure)")->group("");

  std::string input = "-", out;
  std::map<std::string, std::function<int(const Json&, std::ostream&)>> ops{
      {"factor", run_factor}, {"dilate", run_dilate}, {"telescope", run_telescope}, {"eval", run_eval}};
  std::map<std::string, std::string> help{
      {"factor", "Write a full generator as its coordinate palindrome"},
      {"dilate", "Clear denominators from a conjugate or a polynomial word"},
      {"telescope", "Split theta(X) along a partition of unity"},
      {"eval", "Multiply a word out to a matrix"}};
  std::vector<CLI::App*> op_cmds;
  for (const auto& [name, fn] : ops) {
    auto* sub = app.add_subcommand(name, help[name]);
    sub->add_option("--input,-i", input, "JSON input file, - for standard input")->capture_default_str();
    sub->add_option("--out", out, "Write the result here instead of standard output");
    op_cmds.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (verify->parsed()) return run_verify(vo);
    for (auto* sub : op_cmds) {
      if (!sub->parsed()) continue;
      Json in = read_json(input);
      Output o(out);
      return ops.at(sub->get_name())(in, o.stream());
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const dser::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_verification_failure(e.code()) ? kViolation : kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
