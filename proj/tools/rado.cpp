#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <rado/colouring.hpp>
#include <rado/error.hpp>
#include <rado/hmodule.hpp>
#include <rado/json_io.hpp>
#include <rado/regularity.hpp>
#include <rado/search.hpp>

using nlohmann::json;
using namespace rado;

namespace {

// Inline JSON when the argument looks like a document, else a file path.
json load_doc(const std::string& arg) {
  std::string text = arg;
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) fail(Err::MalformedInput, "empty input document");
  if (text[first] != '[' && text[first] != '{' && text[first] != '"') {
    std::ifstream in(arg);
    if (!in) fail(Err::MalformedInput, "cannot read input file \"" + arg + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Err::MalformedInput, std::string("invalid JSON: ") + e.what());
  }
}

Matrix load_matrix(const std::string& arg, const std::string& ring_desc) {
  json doc = load_doc(arg);
  if (doc.is_object()) return matrix_from_json(doc);
  json wrapped{{"ring", ring_desc}, {"rows", doc}};
  return matrix_from_json(wrapped);
}

void emit(const json& doc, const std::string& output) {
  if (output.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(output);
  if (!out) fail(Err::MalformedInput, "cannot write output file \"" + output + "\"");
  out << doc.dump(2) << "\n";
}

json verdict_with_exit(const Verdict& v, int* exit_code) {
  if (v.status == Verdict::Status::Unknown) *exit_code = 2;
  return verdict_to_json(v);
}

std::vector<ProductComponent> split_product_matrix(const Matrix& A) {
  const auto& groups = A.ring().groups();
  Ring component = Ring::mod_ring(A.ring().modulus());
  std::vector<ProductComponent> out;
  for (size_t g = 0; g < groups.size(); ++g) {
    std::vector<std::vector<Scalar>> rows;
    for (int i = 0; i < A.rows(); ++i) {
      std::vector<Scalar> row;
      for (int j = 0; j < A.cols(); ++j)
        row.push_back(Scalar::from_mpz(component, A.at(i, j).values()[g]));
      rows.push_back(std::move(row));
    }
    out.push_back({Matrix::from_rows(component, std::move(rows)), groups[g]});
  }
  return out;
}

int cmd_cc(const std::string& matrix_arg, const std::string& ring_desc, bool bruteforce,
           const std::string& output) {
  Matrix A = load_matrix(matrix_arg, ring_desc);
  int exit_code = 0;
  Verdict v;
  v.ring = A.ring();
  v.matrix_hash = matrix_hash(A);
  switch (A.ring().kind()) {
    case RingKind::ProductMod: {
      v = pr_product(split_product_matrix(A), A.ring().modulus());
      break;
    }
    case RingKind::Integers:
    case RingKind::Rationals:
    case RingKind::PrimeField: {
      auto w = bruteforce ? columns_condition_bruteforce(A) : columns_condition(A);
      if (w) {
        v.status = Verdict::Status::PR;
        v.witness = std::move(w);
      } else {
        v.status = Verdict::Status::NotPR;
        v.detail["reason"] = "columns-condition-fails";
        try {
          if (auto cert = refute(A)) v.detail["certificate"] = certificate_to_json(*cert);
        } catch (const Error&) {
          // refutation construction is best-effort here
        }
      }
      break;
    }
    default: {
      auto w = gcc(A);
      if (w) {
        v.status = Verdict::Status::PR;
        v.witness = std::move(w);
      } else {
        v.status = Verdict::Status::Unknown;
        v.detail["reason"] = "generalised-columns-condition-fails";
      }
      break;
    }
  }
  emit(verdict_with_exit(v, &exit_code), output);
  return exit_code;
}

int cmd_refute(const std::string& matrix_arg, const std::string& ring_desc,
               const std::string& output) {
  Matrix A = load_matrix(matrix_arg, ring_desc);
  auto cert = refute(A);
  if (!cert) {
    emit(json{{"refuted", false}, {"reason", "columns-condition-holds"}}, output);
    return 0;
  }
  emit(certificate_to_json(*cert), output);
  return 0;
}

int cmd_search(const std::string& matrix_arg, const std::string& ring_desc,
               const std::string& colouring_arg, long cp_prime, long window, bool positive,
               int degree, long coeff_bound, const std::string& b_arg,
               const std::string& output) {
  Matrix A = load_matrix(matrix_arg, ring_desc);
  Colouring chi = [&] {
    if (!colouring_arg.empty()) return colouring_from_json(load_doc(colouring_arg));
    if (cp_prime > 0) return Colouring::cp(A.ring(), cp_prime);
    fail(Err::MalformedInput, "search needs --colouring or --cp");
  }();
  SearchWindow w = A.ring().kind() == RingKind::Poly
                       ? SearchWindow::polynomials(A.ring(), degree, coeff_bound)
                       : SearchWindow::integers(window, positive);
  if (b_arg.empty()) {
    SearchReport r = run_search(A, chi, w);
    emit(search_report_to_json(r, chi), output);
    return 0;
  }
  const json jb = load_doc(b_arg);
  if (!jb.is_array() || jb.size() != static_cast<size_t>(A.rows()))
    fail(Err::MalformedInput, "--b needs one entry per matrix row");
  std::vector<Scalar> b;
  for (size_t i = 0; i < jb.size(); ++i)
    b.push_back(scalar_from_json(A.ring(), jb[i], "/b/" + std::to_string(i)));
  auto start = std::chrono::steady_clock::now();
  auto sol = find_mono_solution(A, b, chi, w);
  SearchReport r;
  r.found = sol.has_value();
  r.solution = sol;
  r.window = w;
  r.colouring_kind = chi.kind();
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  emit(search_report_to_json(r, chi), output);
  return 0;
}

int cmd_witness(const std::string& matrix_arg, const std::string& ring_desc, int colours,
                long max_elements, const std::string& output) {
  Matrix A = load_matrix(matrix_arg, ring_desc);
  FiniteWitness w = finite_witness(A, colours, max_elements);
  json doc = finite_witness_to_json(w);
  doc["colours"] = colours;
  emit(doc, output);
  return 0;
}

int cmd_nonhom(const std::string& matrix_arg, const std::string& ring_desc,
               const std::string& b_arg, const std::string& module_desc,
               const std::string& output) {
  Matrix A = load_matrix(matrix_arg, ring_desc);
  Ring module = module_desc.empty() ? A.ring() : ring_from_descriptor(module_desc);
  const json jb = load_doc(b_arg);
  if (!jb.is_array() || jb.size() != static_cast<size_t>(A.rows()))
    fail(Err::MalformedInput, "--b needs one entry per matrix row");
  std::vector<Scalar> b;
  for (size_t i = 0; i < jb.size(); ++i)
    b.push_back(scalar_from_json(module, jb[i], "/b/" + std::to_string(i)));
  int exit_code = 0;
  Verdict v = pr_nonhom(A, b);
  emit(verdict_with_exit(v, &exit_code), output);
  return exit_code;
}

int cmd_hmodule(const std::string& algebra_arg, const std::string& fixture, long p,
                const std::string& output) {
  FiniteAlgebra alg = [&] {
    if (!algebra_arg.empty()) return algebra_from_json(load_doc(algebra_arg));
    if (fixture == "obstruction") return obstruction_algebra(p);
    if (fixture == "obstruction-cover") return truncated_cover_algebra(p);
    fail(Err::MalformedInput,
         "hmodule needs --algebra or --fixture {obstruction, obstruction-cover}");
  }();
  HModuleReport h = compute_H(alg);
  json doc = hmodule_report_to_json(h);
  doc["algebra"] = json{{"p", alg.p()},
                        {"dim", alg.dim()},
                        {"ideal_dim", alg.ideal_dim()},
                        {"module_dim", alg.module_dim()}};
  emit(doc, output);
  return 0;
}

int cmd_verify(const std::string& matrix_arg, const std::string& ring_desc,
               const std::string& cert_arg, const std::string& verdict_arg, long window,
               const std::string& output) {
  Matrix A = load_matrix(matrix_arg, ring_desc);
  json doc;
  bool sound = false;
  if (!cert_arg.empty()) {
    RefutationCertificate cert = certificate_from_json(load_doc(cert_arg));
    std::string why;
    sound = validate_certificate(A, cert, &why);
    doc["kind"] = "certificate";
    doc["sound"] = sound;
    if (!why.empty()) doc["why"] = why;
    if (window > 0) {
      CertificateCheck check = validate_certificate(A, cert, SearchWindow::integers(window));
      doc["replay_ok"] = check.replay_ok;
      doc["window_clean"] = check.window_clean;
      if (!check.message.empty()) doc["message"] = check.message;
      if (check.counterexample) {
        json sol = json::array();
        for (const Scalar& s : *check.counterexample) sol.push_back(scalar_to_json(s));
        doc["counterexample"] = std::move(sol);
      }
      sound = sound && check.window_clean;
    }
  } else if (!verdict_arg.empty()) {
    json v = load_doc(verdict_arg);
    if (v.contains("witness")) {
      PartitionWitness w = witness_from_json(A.ring(), v["witness"], "/witness");
      std::string why;
      sound = verify_witness(A, w, &why);
      doc["kind"] = "witness";
      doc["sound"] = sound;
      if (!why.empty()) doc["why"] = why;
    } else if (v.contains("detail") && v["detail"].contains("certificate")) {
      RefutationCertificate cert =
          certificate_from_json(v["detail"]["certificate"], "/detail/certificate");
      std::string why;
      sound = validate_certificate(A, cert, &why);
      doc["kind"] = "certificate";
      doc["sound"] = sound;
      if (!why.empty()) doc["why"] = why;
    } else {
      fail(Err::MalformedInput, "verdict document carries nothing to verify");
    }
  } else {
    fail(Err::MalformedInput, "verify needs --certificate or --verdict");
  }
  emit(doc, output);
  return sound ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partition-regularity toolkit: columns-condition deciders, colouring "
               "refutations, windowed searches, and finite-module obstruction reports"};
  app.require_subcommand(1);

  std::string matrix_arg, ring_desc = "Z", output, colouring_arg, b_arg, module_desc;
  std::string algebra_arg, fixture, cert_arg, verdict_arg;
  bool bruteforce = false, positive = false;
  long window = 1000, cp_prime = 0, coeff_bound = 1, max_elements = 25, p = 2;
  int colours = 2, degree = 1;

  auto add_matrix = [&](CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--matrix", matrix_arg, "matrix rows as JSON, or a file path");
    if (required) opt->required();
    cmd->add_option("--ring", ring_desc, "ring descriptor (default Z)");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "write the JSON document here instead of stdout");
  };

  CLI::App* cc = app.add_subcommand("cc", "decide the (generalised) columns condition");
  add_matrix(cc);
  cc->add_flag("--bruteforce", bruteforce, "use the exhaustive reference decider");
  add_output(cc);

  CLI::App* refute_cmd = app.add_subcommand("refute", "build a prime-colouring refutation");
  add_matrix(refute_cmd);
  add_output(refute_cmd);

  CLI::App* search = app.add_subcommand("search", "windowed monochromatic-solution search");
  add_matrix(search);
  search->add_option("--colouring", colouring_arg, "colouring JSON, or a file path");
  search->add_option("--cp", cp_prime, "shorthand: least-nonzero-digit colouring at this prime");
  search->add_option("--window", window, "integer window bound N (default 1000)");
  search->add_flag("--positive", positive, "restrict the window to {1..N}");
  search->add_option("--degree", degree, "polynomial window degree bound");
  search->add_option("--coeff-bound", coeff_bound, "polynomial coefficient bound");
  search->add_option("--b", b_arg, "right-hand side (JSON array) for A*x = b searches");
  add_output(search);

  CLI::App* witness = app.add_subcommand("witness", "exhaustive finite witness set {1..n}");
  add_matrix(witness);
  witness->add_option("--colours", colours, "number of colours (1..4)")->required();
  witness->add_option("--max", max_elements, "largest n to try (default 25)");
  add_output(witness);

  CLI::App* nonhom = app.add_subcommand("nonhom", "decide A*x = b with constant solutions");
  add_matrix(nonhom);
  nonhom->add_option("--b", b_arg, "right-hand side (JSON array)")->required();
  nonhom->add_option("--module", module_desc, "module ring descriptor (default: the ring)");
  add_output(nonhom);

  CLI::App* hmodule = app.add_subcommand("hmodule", "obstruction-module dimensions");
  hmodule->add_option("--algebra", algebra_arg, "algebra JSON, or a file path");
  hmodule->add_option("--fixture", fixture, "named algebra: obstruction, obstruction-cover");
  hmodule->add_option("--p", p, "base prime for a named fixture (default 2)");
  add_output(hmodule);

  CLI::App* verify = app.add_subcommand("verify", "replay certificates and witnesses");
  add_matrix(verify);
  verify->add_option("--certificate", cert_arg, "refutation certificate JSON, or a file path");
  verify->add_option("--verdict", verdict_arg, "verdict JSON whose payload should be replayed");
  verify->add_option("--window", window, "also sweep this integer window for counterexamples")
      ->default_val(0L);
  add_output(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*cc) return cmd_cc(matrix_arg, ring_desc, bruteforce, output);
    if (*refute_cmd) return cmd_refute(matrix_arg, ring_desc, output);
    if (*search)
      return cmd_search(matrix_arg, ring_desc, colouring_arg, cp_prime, window, positive, degree,
                        coeff_bound, b_arg, output);
    if (*witness) return cmd_witness(matrix_arg, ring_desc, colours, max_elements, output);
    if (*nonhom) return cmd_nonhom(matrix_arg, ring_desc, b_arg, module_desc, output);
    if (*hmodule) return cmd_hmodule(algebra_arg, fixture, p, output);
    if (*verify) return cmd_verify(matrix_arg, ring_desc, cert_arg, verdict_arg, window, output);
  } catch (const Error& e) {
    json err{{"error", {{"code", err_name(e.code())}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    std::cerr << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
