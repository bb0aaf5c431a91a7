#include "tiv/cli.hpp"

#include "tiv/group_action.hpp"
#include "tiv/invariant_ring.hpp"
#include "tiv/pencil.hpp"
#include "tiv/tensor_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <regex>
#include <sstream>

namespace tiv {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  int m = 0;
  int n = 0;
  bool symbolic = false;
  std::string input;
  std::string method = "subset";
  bool pretty = false;
  std::string group = "slslsl";
  std::size_t samples = 25;
  std::uint64_t seed = 0;
  std::string poly;
  std::string poly_file;
  std::string invariant;
  int degree = 0;
  std::string parts = "slm,sln";
  bool quiet = false;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string f_name(int k, int n) { return "f_{" + std::to_string(k) + "," + std::to_string(n - k) + "}"; }

/// f[k,l] / f_{k,l} -> f_{k,l}; U<k> -> f_{k,n-k}.
SymbolResolver pencil_resolver(int n) {
  return [n](const std::string& symbol, const std::vector<int>& index) -> std::optional<Polynomial> {
    if ((symbol == "f" || symbol == "f_") && index.size() == 2 && index[0] >= 0 && index[1] >= 0 &&
        index[0] + index[1] == n) {
      return pencil_invariants(n).f(index[0]);
    }
    if (symbol == "U" && index.size() == 1 && index[0] >= 0 && index[0] <= n) return pencil_invariants(n).f(index[0]);
    return std::nullopt;
  };
}

std::optional<TensorFile> load_input(const Options& o) {
  if (o.input.empty()) return std::nullopt;
  auto file = load_tensor_file(o.input);
  if (file.m != o.m || file.n != o.n) {
    throw UsageError("input tensor is " + std::to_string(file.m) + "x" + std::to_string(file.n) +
                     "x2 but the command asks for " + std::to_string(o.m) + "x" + std::to_string(o.n) + "x2");
  }
  return file;
}

GroupKind parse_group(const std::string& g) {
  if (g == "slsl") return GroupKind::SlSl;
  if (g == "slslsl") return GroupKind::SlSlSl;
  throw UsageError("--group must be slsl or slslsl");
}

void print_tensor(std::ostream& out, const RationalTensor& t) {
  for (int k = 1; k <= 2; ++k) {
    out << "  " << (k == 1 ? "X" : "Y") << " =";
    for (int i = 1; i <= t.m(); ++i) {
      out << " [";
      for (int j = 1; j <= t.n(); ++j) out << (j > 1 ? " " : "") << to_string(t.at(i, j, k));
      out << "]";
    }
    out << "\n";
  }
}

void print_matrix(std::ostream& out, const char* name, const RatMatrix& a) {
  out << "  " << name << " =";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out << " [";
    for (std::size_t j = 0; j < a.cols(); ++j) out << (j ? " " : "") << to_string(a(i, j));
    out << "]";
  }
  out << "\n";
}

// ------------------------------------------------------------------ pencil

int cmd_pencil(const Options& o, std::ostream& out) {
  if (o.m != o.n) throw UsageError("pencil needs a square format (m = n)");
  if (o.method != "subset" && o.method != "interp" && o.method != "both") {
    throw UsageError("--method must be subset, interp or both");
  }
  auto file = load_input(o);
  IndeterminateTensor t(o.n, o.n);
  PencilInvariants f = o.method == "interp" ? pencil_coefficients_interp(t) : pencil_coefficients_subset(t);
  bool agree = true;
  if (o.method == "both") agree = f == pencil_coefficients_interp(t);

  const bool numeric = file && !file->symbolic() && !o.symbolic;
  for (int k = 0; k <= o.n; ++k) {
    out << f_name(k, o.n) << " = ";
    if (numeric) {
      out << to_string(evaluate(f.f(k), file->values->assignment(*t.ring())));
    } else {
      out << (o.pretty ? "\n" : "") << to_string(f.f(k), o.pretty);
    }
    out << "\n";
  }
  if (o.method == "both") {
    out << (agree ? "methods agree" : "methods DISAGREE") << "\n";
    if (!agree) return kExitVerificationFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- blockdet

int cmd_blockdet(const Options& o, std::ostream& out) {
  FormatKind kind = classify_format(o.m, o.n);
  switch (kind) {
    case FormatKind::Square:
      throw UsageError("blockdet needs m < n; use `pencil` for square formats");
    case FormatKind::TooWide:
      out << "trivial: K (invariant ring is K since n > 2m)\n";
      return kExitOk;
    case FormatKind::NoGenerator:
      out << "trivial: K (no nontrivial invariant exists in this format since n != m + gcd(m, n))\n";
      return kExitOk;
    case FormatKind::BlockDeterminant:
      break;
  }
  auto file = load_input(o);
  const int d = std::gcd(o.m, o.n);
  out << "generator: block determinant of size " << o.m * o.n / d << " (ring generated by one element)\n";
  Polynomial det = block_det(o.m, o.n);
  if (file && !file->symbolic() && !o.symbolic) {
    out << "value = " << to_string(evaluate(det, file->values->assignment(*det.ring()))) << "\n";
  } else {
    out << to_string(det, o.pretty) << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------- check

// Without --n the format is the smallest one holding every T[i,j,k] in the polynomial.
void infer_format(Options& o) {
  if (o.poly.empty() && o.poly_file.empty()) throw UsageError("check needs --n, --input or a polynomial");
  const std::string text = o.poly.empty() ? read_text(o.poly_file) : o.poly;
  static const std::regex entry(R"(T\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*\d+\s*\])");
  int m = 1;
  int n = 1;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), entry); it != std::sregex_iterator(); ++it) {
    m = std::max(m, std::stoi((*it)[1]));
    n = std::max(n, std::stoi((*it)[2]));
  }
  o.m = std::min(m, n);
  o.n = std::max(m, n);
  if (m > n) o.m = o.n;
}

struct NamedInvariant {
  std::string name;
  TensorFunction f;
};

std::vector<NamedInvariant> invariants_to_check(const Options& o, std::ostream& out) {
  std::vector<NamedInvariant> list;
  const RingPtr ring = tensor_ring(o.m, o.n);
  auto add_poly = [&](std::string name, Polynomial p) {
    list.push_back({std::move(name), [p = std::move(p)](const RationalTensor& t) {
                      return evaluate(p, t.assignment(*p.ring()));
                    }});
  };
  auto add_u_form = [&](std::string name, Polynomial u) {
    list.push_back({std::move(name), [u = std::move(u)](const RationalTensor& t) { return evaluate_u_form(u, t); }});
  };

  if (!o.poly.empty() || !o.poly_file.empty()) {
    std::string text = o.poly.empty() ? read_text(o.poly_file) : o.poly;
    SymbolResolver resolver = o.m == o.n ? pencil_resolver(o.n) : SymbolResolver{};
    add_poly("poly", parse_polynomial(text, ring, resolver));
    return list;
  }

  std::string which = o.invariant;
  if (which.empty()) {
    if (o.m < o.n) {
      which = "blockdet";
    } else {
      which = parse_group(o.group) == GroupKind::SlSlSl ? "classical" : "pencil";
    }
  }
  if (which == "blockdet") {
    FormatKind kind = classify_format(o.m, o.n);
    if (kind == FormatKind::TooWide || kind == FormatKind::NoGenerator) {
      out << "trivial: K (no nonconstant invariant to check)\n";
      return list;
    }
    add_poly("block_det", block_det(o.m, o.n));
  } else if (which == "pencil") {
    if (o.m != o.n) throw UsageError("pencil invariants need m = n");
    const auto& f = pencil_invariants(o.n);
    for (int k = 0; k <= o.n; ++k) add_poly(f_name(k, o.n), f.f(k));
  } else if (which == "classical") {
    if (o.m != o.n) throw UsageError("classical invariants need m = n");
    auto gens = classical_invariants(o.n);
    for (std::size_t i = 0; i < gens.size(); ++i) add_u_form(to_string(gens[i]), gens[i]);
  } else if (which == "hyperdet") {
    if (o.m != o.n) throw UsageError("hyperdet needs m = n");
    add_u_form("hyperdet", hyperdet_nn1(o.n));
  } else {
    throw UsageError("--invariant must be pencil, classical, blockdet or hyperdet");
  }
  return list;
}

int cmd_check(const Options& o, std::ostream& out) {
  const GroupKind kind = parse_group(o.group);
  classify_format(o.m, o.n);
  bool all_pass = true;
  for (const auto& inv : invariants_to_check(o, out)) {
    auto report = check_invariance(inv.f, o.m, o.n, kind, o.samples, o.seed);
    if (report.passed) {
      out << inv.name << ": pass (" << report.samples << " samples)\n";
      continue;
    }
    all_pass = false;
    const auto& w = *report.counterexample;
    out << inv.name << ": FAIL at sample " << w.sample << "\n";
    out << "  value at t = " << to_string(w.before) << ", at g.t = " << to_string(w.after) << "\n";
    print_matrix(out, "P", w.element.p);
    print_matrix(out, "Q", w.element.q);
    print_matrix(out, "R", w.element.r);
    print_tensor(out, w.tensor);
  }
  return all_pass ? kExitOk : kExitVerificationFailed;
}

// ----------------------------------------------------------------- subduct

int cmd_subduct(const Options& o, std::ostream& out) {
  if (o.poly.empty() == o.poly_file.empty()) throw UsageError("subduct needs exactly one of --poly or --poly-file");
  std::string text = o.poly.empty() ? read_text(o.poly_file) : o.poly;
  Polynomial p = parse_polynomial(text, tensor_ring(o.n, o.n), pencil_resolver(o.n));
  auto result = subduct(p, o.n);
  out << to_string(result.u_form) << ", remainder " << to_string(result.remainder, o.pretty) << "\n";
  return result.remainder.is_zero() ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- hyperdet

int cmd_hyperdet(const Options& o, std::ostream& out) {
  if (o.m != o.n) throw UsageError("hyperdet needs m = n");
  Polynomial u = hyperdet_nn1(o.n);
  out << "hyperdeterminant of format " << o.n - 1 << "," << o.n - 1 << ",1 (U-form, degree "
      << substituted_degree(u, o.n) << " in T): " << to_string(u, o.pretty) << "\n";
  auto file = load_input(o);
  if (!file || file->symbolic()) return kExitOk;

  const RationalTensor& t = *file->values;
  Rational value = evaluate_u_form(u, t);
  DegeneracyVerdict verdict = pencil_degenerate(t);
  out << "value = " << to_string(value) << "\n";
  out << (verdict.degenerate ? "degenerate" : "non-degenerate")
      << (verdict.identically_zero ? " (pencil determinant vanishes identically)" : "") << "\n";
  bool consistent = (value == 0) == verdict.degenerate;
  if (o.n == 2) {
    Polynomial cayley = cayley_hyperdeterminant();
    Rational c = evaluate(cayley, t.assignment(*cayley.ring()));
    bool agree = abs(c) == abs(value);
    out << "cayley = " << to_string(c) << (agree ? " (agrees)" : " (DISAGREES)") << "\n";
    consistent = consistent && agree;
  }
  if (!consistent) {
    out << "inconsistent with the repeated-root test\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

// -------------------------------------------------------------- lie-kernel

int cmd_lie_kernel(const Options& o, std::ostream& out) {
  LieParts parts{false, false, false};
  std::stringstream list(o.parts);
  std::string part;
  while (std::getline(list, part, ',')) {
    if (part == "slm") {
      parts.sl_m = true;
    } else if (part == "sln") {
      parts.sl_n = true;
    } else if (part == "sl2") {
      parts.sl_2 = true;
    } else {
      throw UsageError("--parts takes a comma list of slm, sln, sl2");
    }
  }
  std::vector<Polynomial> basis;
  try {
    basis = lie_invariant_space(o.m, o.n, o.degree, parts);
  } catch (const SizeGuardError& e) {
    throw UsageError(e.what());
  }
  out << "dimension: " << basis.size() << "\n";
  if (!o.quiet) {
    for (const auto& b : basis) out << to_string(b, o.pretty) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact invariants of SL(m) x SL(n) (x SL(2)) acting on m x n x 2 tensors", "tiv"};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* sub, bool need_m, bool need_n = true) {
    auto* n = sub->add_option("--n", o.n, "second dimension (and first when --m is omitted)");
    n->check(CLI::PositiveNumber);
    if (need_n) n->required();
    auto* m = sub->add_option("--m", o.m, "first dimension")->check(CLI::PositiveNumber);
    if (need_m) m->required();
  };

  auto* pencil = app.add_subcommand("pencil", "coefficients f_{k,n-k} of det(xX + yY)");
  add_format(pencil, false);
  pencil->add_flag("--symbolic", o.symbolic, "print polynomials even with --input");
  pencil->add_option("-i,--input", o.input, "tensor JSON file");
  pencil->add_option("--method", o.method, "subset, interp or both");
  pencil->add_flag("--pretty", o.pretty, "one term per line");

  auto* blockdet = app.add_subcommand("blockdet", "block determinant generator for m < n");
  add_format(blockdet, true);
  blockdet->add_flag("--symbolic", o.symbolic, "print the polynomial even with --input");
  blockdet->add_option("-i,--input", o.input, "tensor JSON file");
  blockdet->add_flag("--pretty", o.pretty, "one term per line");

  auto* check = app.add_subcommand("check", "exact invariance check on seeded random samples");
  add_format(check, false, false);
  check->add_option("--group", o.group, "slsl or slslsl");
  check->add_option("--samples", o.samples, "number of samples");
  check->add_option("--seed", o.seed, "random seed");
  check->add_option("--poly", o.poly, "polynomial expression in T[i,j,k] (and f[k,l], Uk when m = n)");
  check->add_option("--poly-file", o.poly_file, "file holding a polynomial expression");
  check->add_option("--invariant", o.invariant, "pencil, classical, blockdet or hyperdet");
  check->add_option("-i,--input", o.input, "tensor JSON file (fixes m and n)");

  auto* subduct_cmd = app.add_subcommand("subduct", "express an invariant in the pencil coefficients");
  add_format(subduct_cmd, false);
  subduct_cmd->add_option("--poly", o.poly, "polynomial expression");
  subduct_cmd->add_option("--poly-file", o.poly_file, "file holding a polynomial expression");
  subduct_cmd->add_flag("--pretty", o.pretty, "one term per line");

  auto* hyperdet = app.add_subcommand("hyperdet", "hyperdeterminant of format (n-1, n-1, 1)");
  add_format(hyperdet, false);
  hyperdet->add_option("-i,--input", o.input, "tensor JSON file");
  hyperdet->add_flag("--pretty", o.pretty, "one term per line");

  auto* lie = app.add_subcommand("lie-kernel", "graded invariants via Lie algebra derivations");
  add_format(lie, false);
  lie->add_option("--degree", o.degree, "degree")->required()->check(CLI::NonNegativeNumber);
  lie->add_option("--parts", o.parts, "comma list of slm, sln, sl2");
  lie->add_flag("--quiet", o.quiet, "print only the dimension");
  lie->add_flag("--pretty", o.pretty, "one term per line");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (check->parsed() && !o.input.empty()) {
      auto file = load_tensor_file(o.input);
      o.m = file.m;
      o.n = file.n;
    }
    if (check->parsed() && o.n == 0) infer_format(o);
    if (o.n == 0) throw UsageError("--n is required");
    if (o.m == 0) o.m = o.n;
    if (pencil->parsed()) return cmd_pencil(o, out);
    if (blockdet->parsed()) return cmd_blockdet(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (subduct_cmd->parsed()) {
      if (o.m != o.n) throw UsageError("subduct needs m = n");
      return cmd_subduct(o, out);
    }
    if (hyperdet->parsed()) return cmd_hyperdet(o, out);
    if (lie->parsed()) return cmd_lie_kernel(o, out);
  } catch (const ExpansionLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tiv
