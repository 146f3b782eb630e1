#include "cstar/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cstar/json_io.hpp"

namespace cstar::cli {

using cstar::json::Json;

void CliConfig::merge(const Json& doc) {
  if (!doc.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "default_tolerance") {
      default_tolerance = json::real_from_json(value, "default_tolerance");
    } else if (key == "cluster_tol") {
      cluster_tol = json::real_from_json(value, "cluster_tol");
    } else if (key == "rank_threshold") {
      rank_threshold = json::real_from_json(value, "rank_threshold");
    } else if (key == "tail_fraction") {
      tail_fraction = json::real_from_json(value, "tail_fraction");
    } else if (key == "output") {
      if (value == "json") {
        output = OutputStyle::json;
      } else if (value == "pretty") {
        output = OutputStyle::pretty;
      } else {
        throw ParseError("output must be \"json\" or \"pretty\"");
      }
    } else {
      throw ParseError("unknown config key \"" + key + "\"");
    }
  }
}

void CliConfig::validate() const {
  auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (default_tolerance && !positive(*default_tolerance)) {
    fail(ErrorCode::invalid_argument, "default_tolerance must be positive");
  }
  if (!positive(cluster_tol)) fail(ErrorCode::invalid_argument, "cluster_tol must be positive");
  if (!positive(rank_threshold)) fail(ErrorCode::invalid_argument, "rank_threshold must be positive");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    fail(ErrorCode::invalid_argument, "tail_fraction must lie in (0, 1]");
  }
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "spectrum",   "funcalc",      "pstar",      "retract-proj",    "retract-pisom", "mvn",
      "subord",     "dominate",     "ortho-repair", "range-proj",    "weight-eval",   "weight-classify",
      "leqn",       "aps-certify",  "apis-certify", "sim-a",         "threshold-index", "probe-infinite"};
  return names;
}

namespace {

struct Args {
  std::vector<std::string> files;
  int n = 0;
  double threshold = 0.0;
  double epsilon = 0.0;
  std::string fn;
  bool clusters = false;
  bool extended = false;
};

class Session {
 public:
  Session(std::istream& in, CliConfig config) : in_(in), config_(std::move(config)) {}

  Json load(const std::string& path) {
    std::string text;
    if (path == "-") {
      if (stdin_used_) throw ParseError("stdin can only be read once");
      stdin_used_ = true;
      std::ostringstream buf;
      buf << in_.rdbuf();
      text = buf.str();
    } else {
      std::ifstream file(path, std::ios::binary);
      if (!file) throw ParseError("cannot open \"" + path + "\"");
      std::ostringstream buf;
      buf << file.rdbuf();
      text = buf.str();
    }
    return json::parse(text);
  }

  MatElement matrix(const std::string& path) { return json::matrix_from_json(load(path)); }
  MatrixSequence sequence(const std::string& path) {
    return json::sequence_from_json(load(path), config_.tail_fraction);
  }
  Weight weight(const std::string& path) { return json::weight_from_json(load(path)); }
  FnDescriptor fn(const std::string& spec) {
    const auto first = spec.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && spec[first] == '{') return json::fn_from_json(json::parse(spec));
    return json::fn_from_json(load(spec));
  }

  const CliConfig& config() const { return config_; }
  Tolerance tol() const { return config_.default_tolerance; }

 private:
  std::istream& in_;
  CliConfig config_;
  bool stdin_used_ = false;
};

using Handler = std::function<Json(Session&, const Args&)>;

struct Command {
  std::string description;
  std::size_t file_count;
  std::string file_names;
  Handler handler;
  std::function<void(CLI::App&, Args&)> options;
};

void require_threshold_flag(CLI::App& sub, Args& args) {
  sub.add_option("--threshold", args.threshold, "Acceptance threshold for sequence defects")->required();
}

std::map<std::string, Command> command_table() {
  std::map<std::string, Command> t;
  t["spectrum"] = {"Eigenvalues with multiplicity", 1, "A",
                   [](Session& s, const Args& a) {
                     const MatElement m = s.matrix(a.files[0]);
                     Json out = json::to_json(spectrum(m));
                     if (a.clusters) {
                       out["decomposition"] = json::to_json(spectral_decompose(m, s.config().cluster_tol, s.tol()));
                     }
                     return out;
                   },
                   [](CLI::App& sub, Args& args) {
                     sub.add_flag("--clusters", args.clusters, "Also emit the clustered spectral decomposition");
                   }};
  t["funcalc"] = {"Apply a function to a self-adjoint matrix", 1, "A",
                  [](Session& s, const Args& a) {
                    const FnDescriptor f = s.fn(a.fn);
                    return Json{{"result", json::to_json(apply_function(s.matrix(a.files[0]), f, s.tol()))}};
                  },
                  [](CLI::App& sub, Args& args) {
                    sub.add_option("--fn", args.fn, "Function descriptor: inline JSON or a file")->required();
                  }};
  t["pstar"] = {"Step approximation by orthogonal projections", 1, "A",
                [](Session& s, const Args& a) {
                  return json::to_json(pstar_approximate(s.matrix(a.files[0]), a.n, s.tol()));
                },
                [](CLI::App& sub, Args& args) { sub.add_option("--n", args.n, "Step parameter")->required(); }};
  t["retract-proj"] = {"Nearest exact projection", 1, "A",
                       [](Session& s, const Args& a) { return json::to_json(retract_projection(s.matrix(a.files[0]))); },
                       nullptr};
  t["retract-pisom"] = {"Nearby exact partial isometry", 1, "V",
                        [](Session& s, const Args& a) {
                          return json::to_json(retract_partial_isometry(s.matrix(a.files[0])));
                        },
                        nullptr};
  t["mvn"] = {"Murray-von Neumann equivalence witness", 2, "P Q",
              [](Session& s, const Args& a) {
                return json::to_json(mvn_witness(s.matrix(a.files[0]), s.matrix(a.files[1]), s.tol()));
              },
              nullptr};
  t["subord"] = {"Subordination witness", 2, "P Q",
                 [](Session& s, const Args& a) {
                   return json::to_json(subordination_witness(s.matrix(a.files[0]), s.matrix(a.files[1]), s.tol()));
                 },
                 nullptr};
  t["dominate"] = {"Projection dominating Q near P0", 2, "Q P0",
                   [](Session& s, const Args& a) {
                     const MatElement q = s.matrix(a.files[0]);
                     const MatElement p0 = s.matrix(a.files[1]);
                     const MatElement p = dominating_lift(q, p0, s.tol());
                     return Json{{"output", json::to_json(p)},
                                 {"distance", op_norm(p - p0)},
                                 {"defect", op_norm(p0 * q - q)}};
                   },
                   nullptr};
  t["ortho-repair"] = {"Make P orthogonal to Q", 2, "P Q",
                       [](Session& s, const Args& a) {
                         const MatElement p = s.matrix(a.files[0]);
                         const MatElement q = s.matrix(a.files[1]);
                         const OrthogonalPair r = orthogonality_repair(p, q, s.tol());
                         return Json{{"p_prime", json::to_json(r.p)},
                                     {"q_prime", json::to_json(r.q)},
                                     {"distance", op_norm(p - r.p)},
                                     {"defect", op_norm(p * q)}};
                       },
                       nullptr};
  t["range-proj"] = {"Range projection of P Q", 2, "P Q",
                     [](Session& s, const Args& a) {
                       const MatElement p = s.matrix(a.files[0]);
                       const MatElement q = s.matrix(a.files[1]);
                       const MatElement r = range_projection_of_product(p, q, s.tol(), s.config().rank_threshold);
                       return Json{{"output", json::to_json(r)},
                                   {"distance", op_norm(p * q - r)},
                                   {"defect", op_norm(p * q - q * p)}};
                     },
                     nullptr};
  t["weight-eval"] = {"Evaluate a weight", 2, "W A",
                      [](Session& s, const Args& a) {
                        const Weight w = s.weight(a.files[0]);
                        const MatElement m = s.matrix(a.files[1]);
                        if (a.extended) return Json{{"value", json::to_json(weight_extend_eval(w, m))}};
                        return Json{{"value", json::real_to_json(weight_eval(w, m, s.tol()))}};
                      },
                      [](CLI::App& sub, Args& args) {
                        sub.add_flag("--extended", args.extended, "Evaluate the linear extension on any matrix");
                      }};
  t["weight-classify"] = {"Faithful / state / trace flags", 1, "W",
                          [](Session& s, const Args& a) {
                            return json::to_json(classify_weight(s.weight(a.files[0]), s.tol()));
                          },
                          nullptr};
  t["leqn"] = {"Approximate order a <=_n b", 2, "A B",
               [](Session& s, const Args& a) {
                 return json::to_json(leq_n(s.matrix(a.files[0]), s.matrix(a.files[1]), a.n, s.tol()));
               },
               [](CLI::App& sub, Args& args) { sub.add_option("--n", args.n, "Order index")->required(); }};
  t["aps-certify"] = {"Certify an almost projection sequence", 1, "S",
                      [](Session& s, const Args& a) {
                        return json::to_json(certify_aps(s.sequence(a.files[0]), a.threshold));
                      },
                      require_threshold_flag};
  t["apis-certify"] = {"Certify an almost partial isometry sequence", 1, "S",
                       [](Session& s, const Args& a) {
                         return json::to_json(certify_apis(s.sequence(a.files[0]), a.threshold));
                       },
                       require_threshold_flag};
  t["sim-a"] = {"Asymptotic equivalence witnesses", 2, "SA SB",
                [](Session& s, const Args& a) {
                  const MatrixSequence sa = s.sequence(a.files[0]);
                  const MatrixSequence sb = s.sequence(a.files[1]);
                  return json::to_json(sim_a_witness(sa, sb, a.threshold));
                },
                require_threshold_flag};
  t["threshold-index"] = {"Index after which every entry is near a projection", 1, "S",
                          [](Session& s, const Args& a) {
                            return json::to_json(threshold_index(s.sequence(a.files[0]), a.epsilon));
                          },
                          [](CLI::App& sub, Args& args) {
                            sub.add_option("--epsilon", args.epsilon, "Distance bound")->required();
                          }};
  t["probe-infinite"] = {"Infiniteness probe against the identity sequence", 1, "S",
                         [](Session& s, const Args& a) {
                           return json::to_json(infiniteness_probe(s.sequence(a.files[0]), a.threshold));
                         },
                         require_threshold_flag};
  return t;
}

Json error_doc(std::string_view code, const std::string& detail) {
  return {{"error", std::string(code)}, {"detail", detail}};
}

void emit(std::ostream& out, const Json& doc, OutputStyle style) {
  out << (style == OutputStyle::pretty ? doc.dump(2) : doc.dump()) << '\n';
}

std::string usage(const std::map<std::string, Command>& table) {
  std::ostringstream os;
  os << "usage: cstar <command> [options] files...\n\ncommands:\n";
  for (const auto& name : command_names()) {
    const Command& c = table.at(name);
    os << "  " << name << std::string(name.size() < 18 ? 18 - name.size() : 1, ' ') << c.file_names << "  "
       << c.description << '\n';
  }
  os << "\nglobal options: --config FILE --tolerance X --cluster-tol X --rank-threshold X\n"
        "                --tail-fraction X --output json|pretty\n";
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out) {
  const auto table = command_table();
  if (args.empty() || table.find(args.front()) == table.end()) {
    if (!args.empty() && (args.front() == "--help" || args.front() == "-h")) {
      out << usage(table);
      return kExitOk;
    }
    out << usage(table);
    return kExitUsage;
  }
  const std::string& name = args.front();
  const Command& command = table.at(name);

  CLI::App app{"cstar " + name, "cstar"};
  Args parsed;
  std::string config_path;
  std::optional<double> tolerance, cluster_tol, rank_threshold, tail_fraction;
  std::string output;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--tolerance", tolerance, "Absolute tolerance for cone predicates");
  app.add_option("--cluster-tol", cluster_tol, "Eigenvalue clustering tolerance");
  app.add_option("--rank-threshold", rank_threshold, "Relative singular-value rank threshold");
  app.add_option("--tail-fraction", tail_fraction, "Default sequence tail fraction");
  app.add_option("--output", output, "json or pretty")->check(CLI::IsMember({"json", "pretty"}));
  app.add_option("files", parsed.files, command.file_names)->required()->expected(static_cast<int>(command.file_count));
  if (command.options) command.options(app, parsed);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << "error: " << e.what() << "\n\n" << app.help() << usage(table);
    return kExitUsage;
  }

  CliConfig config;
  OutputStyle style = OutputStyle::json;
  try {
    if (config_path.empty()) {
      if (const char* env = std::getenv("CSTAR_CONFIG"); env != nullptr && *env != '\0') config_path = env;
    }
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw ParseError("cannot open config \"" + config_path + "\"");
      std::ostringstream buf;
      buf << file.rdbuf();
      config.merge(json::parse(buf.str()));
    }
    if (tolerance) config.default_tolerance = *tolerance;
    if (cluster_tol) config.cluster_tol = *cluster_tol;
    if (rank_threshold) config.rank_threshold = *rank_threshold;
    if (tail_fraction) config.tail_fraction = *tail_fraction;
    if (!output.empty()) config.output = output == "pretty" ? OutputStyle::pretty : OutputStyle::json;
    style = config.output;
    config.validate();

    Session session(in, config);
    const Json result = command.handler(session, parsed);
    emit(out, result, style);
    return kExitOk;
  } catch (const ParseError& e) {
    emit(out, error_doc("parse_error", e.what()), style);
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    emit(out, error_doc("parse_error", e.what()), style);
    return kExitParse;
  } catch (const PreconditionError& e) {
    emit(out, error_doc(to_string(e.code()), e.detail()), style);
    return kExitPrecondition;
  }
}

}  // namespace cstar::cli
