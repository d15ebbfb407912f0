#include "rado/json_io.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

#include "rado/error.hpp"

namespace rado {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  fail(Err::MalformedInput, (path.empty() ? "/" : path) + ": " + msg);
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path + "/" + key, "missing required field");
  return *it;
}

const json& need_array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

std::string need_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

long need_long(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long>();
}

bool need_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) bad(path, "expected a boolean");
  return j.get<bool>();
}

mpz_class parse_mpz(const json& j, const std::string& path) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (!j.is_string()) bad(path, "expected a decimal string or integer");
  try {
    return mpz_class(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    bad(path, "not a decimal integer: \"" + j.get<std::string>() + "\"");
  }
}

mpq_class parse_mpq(const json& j, const std::string& path) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  std::string text = need_string(j, path);
  size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return mpq_class(mpz_class(text));
    mpz_class num(text.substr(0, slash));
    mpz_class den(text.substr(slash + 1));
    if (den == 0) bad(path, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    bad(path, "not a rational: \"" + text + "\"");
  }
}

std::string at(const std::string& path, const char* key) { return path + "/" + key; }
std::string at(const std::string& path, size_t idx) {
  return path + "/" + std::to_string(idx);
}

}  // namespace

std::string ring_descriptor(const Ring& r) {
  switch (r.kind()) {
    case RingKind::Integers:
      return "Z";
    case RingKind::Rationals:
      return "Q";
    case RingKind::PrimeField:
      return "fp:" + r.modulus().get_str();
    case RingKind::ModRing:
      return "mod:" + r.modulus().get_str();
    case RingKind::Poly:
      return ring_descriptor(r.base()) + "[" + r.var() + "]";
    case RingKind::FracField:
      return "frac:" + ring_descriptor(r.base());
    case RingKind::ProductMod: {
      std::string out = "prodmod:" + r.modulus().get_str() + ":";
      const auto& gs = r.groups();
      for (size_t i = 0; i < gs.size(); ++i) {
        if (i) out += ",";
        out += gs[i].infinite ? "inf" : std::to_string(gs[i].count);
      }
      return out;
    }
  }
  fail(Err::Internal, "unreachable ring kind");
}

Ring ring_from_descriptor(const std::string& text) {
  auto reject = [&text]() -> Ring {
    fail(Err::MalformedInput, "unrecognised ring descriptor \"" + text + "\"");
  };
  if (text.empty()) return reject();
  if (text == "Z") return Ring::integers();
  if (text == "Q") return Ring::rationals();
  if (text.rfind("frac:", 0) == 0)
    return Ring::fraction_field_of(ring_from_descriptor(text.substr(5)));
  if (text.back() == ']') {
    size_t open = text.rfind('[');
    if (open == std::string::npos) return reject();
    std::string var = text.substr(open + 1, text.size() - open - 2);
    Ring base = ring_from_descriptor(text.substr(0, open));
    Ring p = Ring::poly(base);
    if (p.var() != var)
      fail(Err::MalformedInput, "variable at depth " + std::to_string(p.poly_depth()) +
                                    " must be named \"" + p.var() + "\", got \"" + var + "\"");
    return p;
  }
  auto tail_mpz = [&](size_t from) {
    try {
      return mpz_class(text.substr(from));
    } catch (const std::invalid_argument&) {
      return reject().modulus();  // unreachable; reject throws
    }
  };
  if (text.rfind("fp:", 0) == 0) return Ring::prime_field(tail_mpz(3));
  if (text.rfind("mod:", 0) == 0) return Ring::mod_ring(tail_mpz(4));
  if (text.rfind("prodmod:", 0) == 0) {
    std::string rest = text.substr(8);
    size_t colon = rest.find(':');
    if (colon == std::string::npos) return reject();
    mpz_class n;
    try {
      n = mpz_class(rest.substr(0, colon));
    } catch (const std::invalid_argument&) {
      return reject();
    }
    std::vector<Multiplicity> groups;
    std::string items = rest.substr(colon + 1);
    size_t pos = 0;
    while (pos <= items.size()) {
      size_t comma = items.find(',', pos);
      std::string item = items.substr(pos, comma == std::string::npos ? comma : comma - pos);
      if (item == "inf") {
        groups.push_back(Multiplicity::inf());
      } else {
        try {
          unsigned long c = std::stoul(item);
          groups.push_back(Multiplicity::finite(c));
        } catch (const std::exception&) {
          return reject();
        }
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return Ring::product_mod(n, std::move(groups));
  }
  return reject();
}

nlohmann::json scalar_to_json(const Scalar& s) {
  switch (s.ring().kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return s.mpz().get_str();
    case RingKind::Rationals:
      return s.mpq().get_str();
    case RingKind::Poly: {
      json arr = json::array();
      for (const Scalar& c : s.coeffs()) arr.push_back(scalar_to_json(c));
      return arr;
    }
    case RingKind::FracField:
      return json{{"num", scalar_to_json(s.num())}, {"den", scalar_to_json(s.den())}};
    case RingKind::ProductMod: {
      json values = json::array();
      for (const mpz_class& v : s.values()) values.push_back(v.get_str());
      json mult = json::array();
      for (const Multiplicity& m : s.ring().groups())
        mult.push_back(m.infinite ? json("inf") : json(m.count));
      return json{{"values", std::move(values)}, {"multiplicities", std::move(mult)}};
    }
  }
  fail(Err::Internal, "unreachable scalar kind");
}

Scalar scalar_from_json(const Ring& r, const nlohmann::json& j, const std::string& path) {
  switch (r.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return Scalar::from_mpz(r, parse_mpz(j, path));
    case RingKind::Rationals:
      return Scalar::rational(parse_mpq(j, path));
    case RingKind::Poly: {
      if (!j.is_array()) {
        // constants may be written without the enclosing array
        return Scalar::poly(r, {scalar_from_json(r.base(), j, path)});
      }
      std::vector<Scalar> coeffs;
      for (size_t i = 0; i < j.size(); ++i)
        coeffs.push_back(scalar_from_json(r.base(), j[i], at(path, i)));
      return Scalar::poly(r, std::move(coeffs));
    }
    case RingKind::FracField: {
      if (!j.is_object())
        return Scalar::fraction(r, scalar_from_json(r.base(), j, path), Scalar::one(r.base()));
      Scalar num = scalar_from_json(r.base(), need(j, "num", path), at(path, "num"));
      Scalar den = scalar_from_json(r.base(), need(j, "den", path), at(path, "den"));
      return Scalar::fraction(r, std::move(num), std::move(den));
    }
    case RingKind::ProductMod: {
      if (!j.is_object()) {
        // constants may be written as plain integers: diagonal embedding
        return Scalar::from_mpz(r, parse_mpz(j, path));
      }
      const json& vals = need_array(need(j, "values", path), at(path, "values"));
      std::vector<mpz_class> values;
      for (size_t i = 0; i < vals.size(); ++i)
        values.push_back(parse_mpz(vals[i], at(at(path, "values"), i)));
      if (j.contains("multiplicities")) {
        const json& mult = need_array(j["multiplicities"], at(path, "multiplicities"));
        const auto& gs = r.groups();
        if (mult.size() != gs.size())
          bad(at(path, "multiplicities"), "expected " + std::to_string(gs.size()) + " groups");
        for (size_t i = 0; i < gs.size(); ++i) {
          bool inf = mult[i].is_string() && mult[i].get<std::string>() == "inf";
          if (inf != gs[i].infinite ||
              (!inf && need_long(mult[i], at(at(path, "multiplicities"), i)) !=
                           static_cast<long>(gs[i].count)))
            bad(at(at(path, "multiplicities"), i), "multiplicity does not match the ring");
        }
      }
      return Scalar::product(r, std::move(values));
    }
  }
  fail(Err::Internal, "unreachable scalar kind");
}

nlohmann::json matrix_to_json(const Matrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(scalar_to_json(a.at(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"ring", ring_descriptor(a.ring())}, {"rows", std::move(rows)}};
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& path) {
  Ring r = ring_from_descriptor(need_string(need(j, "ring", path), at(path, "ring")));
  const json& jrows = need_array(need(j, "rows", path), at(path, "rows"));
  if (jrows.empty()) bad(at(path, "rows"), "matrix needs at least one row");
  std::vector<std::vector<Scalar>> rows;
  size_t width = 0;
  for (size_t i = 0; i < jrows.size(); ++i) {
    const std::string rpath = at(at(path, "rows"), i);
    const json& jrow = need_array(jrows[i], rpath);
    if (i == 0) {
      width = jrow.size();
      if (width == 0) bad(rpath, "matrix needs at least one column");
    } else if (jrow.size() != width) {
      bad(rpath, "ragged rows: expected " + std::to_string(width) + " entries");
    }
    std::vector<Scalar> row;
    for (size_t c = 0; c < jrow.size(); ++c)
      row.push_back(scalar_from_json(r, jrow[c], at(rpath, c)));
    rows.push_back(std::move(row));
  }
  return Matrix::from_rows(r, std::move(rows));
}

nlohmann::json witness_to_json(const PartitionWitness& w) {
  json blocks = json::array();
  for (const auto& b : w.blocks) blocks.push_back(b);
  json multipliers = json::array();
  for (const Scalar& d : w.multipliers) multipliers.push_back(scalar_to_json(d));
  json combos = json::array();
  for (const auto& combo : w.combinations) {
    json one = json::array();
    for (const auto& [idx, coeff] : combo)
      one.push_back(json::array({idx, scalar_to_json(coeff)}));
    combos.push_back(std::move(one));
  }
  return json{{"m", w.m},
              {"blocks", std::move(blocks)},
              {"multipliers", std::move(multipliers)},
              {"combinations", std::move(combos)}};
}

PartitionWitness witness_from_json(const Ring& ring, const nlohmann::json& j,
                                   const std::string& path) {
  PartitionWitness w;
  w.ring = ring;
  w.m = static_cast<int>(need_long(need(j, "m", path), at(path, "m")));
  const json& blocks = need_array(need(j, "blocks", path), at(path, "blocks"));
  for (size_t i = 0; i < blocks.size(); ++i) {
    const json& b = need_array(blocks[i], at(at(path, "blocks"), i));
    std::vector<int> one;
    for (size_t k = 0; k < b.size(); ++k)
      one.push_back(static_cast<int>(need_long(b[k], at(at(at(path, "blocks"), i), k))));
    w.blocks.push_back(std::move(one));
  }
  const json& mult = need_array(need(j, "multipliers", path), at(path, "multipliers"));
  for (size_t i = 0; i < mult.size(); ++i)
    w.multipliers.push_back(scalar_from_json(ring, mult[i], at(at(path, "multipliers"), i)));
  const json& combos = need_array(need(j, "combinations", path), at(path, "combinations"));
  for (size_t t = 0; t < combos.size(); ++t) {
    const std::string cpath = at(at(path, "combinations"), t);
    const json& combo = need_array(combos[t], cpath);
    std::vector<std::pair<int, Scalar>> one;
    for (size_t k = 0; k < combo.size(); ++k) {
      const json& pair = need_array(combo[k], at(cpath, k));
      if (pair.size() != 2) bad(at(cpath, k), "expected [column, coefficient]");
      one.emplace_back(static_cast<int>(need_long(pair[0], at(at(cpath, k), size_t(0)))),
                       scalar_from_json(ring, pair[1], at(at(cpath, k), size_t(1))));
    }
    w.combinations.push_back(std::move(one));
  }
  return w;
}

nlohmann::json verdict_to_json(const Verdict& v) {
  json out{{"status", status_name(v.status)},
           {"ring", ring_descriptor(v.ring)},
           {"matrix_hash", std::to_string(v.matrix_hash)},
           {"detail", v.detail.is_null() ? json::object() : v.detail}};
  if (v.witness) out["witness"] = witness_to_json(*v.witness);
  return out;
}

nlohmann::json colouring_to_json(const Colouring& c) {
  json out{{"kind", c.kind()},
           {"domain", ring_descriptor(c.domain())},
           {"colours", c.colour_count()}};
  if (c.kind() == "cp") {
    out["p"] = c.prime().get_str();
  } else if (c.kind() == "m_zxy") {
    out["p"] = c.prime().get_str();
    out["order"] = c.order() == MOrder::xyp ? "xyp" : "pxy";
  } else if (c.kind() == "m_fpx") {
    // domain carries everything
  } else if (c.kind() == "residue") {
    out["a"] = scalar_to_json(c.residue_scalar());
  } else if (c.kind() == "constant") {
    out["value"] = c.constant_value();
  } else if (c.kind() == "devissage") {
    out["d"] = c.split_modulus().get_str();
    out["inner"] = colouring_to_json(c.inner());
    out["quotient"] = colouring_to_json(c.quotient());
  } else {
    fail(Err::Internal, "unknown colouring kind " + c.kind());
  }
  return out;
}

Colouring colouring_from_json(const nlohmann::json& j, const std::string& path) {
  std::string kind = need_string(need(j, "kind", path), at(path, "kind"));
  if (kind == "devissage") {
    mpz_class d = parse_mpz(need(j, "d", path), at(path, "d"));
    Colouring inner = colouring_from_json(need(j, "inner", path), at(path, "inner"));
    Colouring quotient = colouring_from_json(need(j, "quotient", path), at(path, "quotient"));
    return Colouring::devissage(d, std::move(inner), std::move(quotient));
  }
  Ring domain = ring_from_descriptor(need_string(need(j, "domain", path), at(path, "domain")));
  if (kind == "cp") return Colouring::cp(domain, parse_mpz(need(j, "p", path), at(path, "p")));
  if (kind == "m_zxy") {
    std::string order = need_string(need(j, "order", path), at(path, "order"));
    if (order != "xyp" && order != "pxy") bad(at(path, "order"), "expected \"xyp\" or \"pxy\"");
    return Colouring::m_zxy(domain, parse_mpz(need(j, "p", path), at(path, "p")),
                            order == "xyp" ? MOrder::xyp : MOrder::pxy);
  }
  if (kind == "m_fpx") return Colouring::m_fpx(domain);
  if (kind == "residue")
    return Colouring::residue(domain, scalar_from_json(domain, need(j, "a", path), at(path, "a")));
  if (kind == "constant") {
    long colours = need_long(need(j, "colours", path), at(path, "colours"));
    return Colouring::constant(domain, need_long(need(j, "value", path), at(path, "value")),
                               colours);
  }
  bad(at(path, "kind"), "unknown colouring kind \"" + kind + "\"");
}

nlohmann::json certificate_to_json(const RefutationCertificate& c) {
  json states = json::array();
  for (const SeparatingState& s : c.vectors.states) {
    json v = json::array();
    for (const mpz_class& x : s.v) v.push_back(x.get_str());
    json prods = json::array();
    for (const auto& [mask, value] : s.nonzero_products)
      prods.push_back(json::array({mask, value.get_str()}));
    states.push_back(json{{"mask", s.mask}, {"v", std::move(v)},
                          {"nonzero_products", std::move(prods)}});
  }
  return json{{"matrix_hash", std::to_string(c.matrix_hash)},
              {"cols", c.cols},
              {"prime", c.prime.get_str()},
              {"field", ring_descriptor(c.vectors.field)},
              {"sweep_bound", c.vectors.sweep_bound},
              {"states", std::move(states)}};
}

RefutationCertificate certificate_from_json(const nlohmann::json& j, const std::string& path) {
  RefutationCertificate c;
  std::string hash = need_string(need(j, "matrix_hash", path), at(path, "matrix_hash"));
  try {
    c.matrix_hash = std::stoull(hash);
  } catch (const std::exception&) {
    bad(at(path, "matrix_hash"), "not an unsigned decimal");
  }
  c.cols = static_cast<int>(need_long(need(j, "cols", path), at(path, "cols")));
  c.prime = parse_mpz(need(j, "prime", path), at(path, "prime"));
  c.vectors.field =
      ring_from_descriptor(need_string(need(j, "field", path), at(path, "field")));
  c.vectors.sweep_bound = need_long(need(j, "sweep_bound", path), at(path, "sweep_bound"));
  const json& states = need_array(need(j, "states", path), at(path, "states"));
  for (size_t i = 0; i < states.size(); ++i) {
    const std::string spath = at(at(path, "states"), i);
    SeparatingState s;
    s.mask = static_cast<uint32_t>(need_long(need(states[i], "mask", spath), at(spath, "mask")));
    const json& v = need_array(need(states[i], "v", spath), at(spath, "v"));
    for (size_t k = 0; k < v.size(); ++k) s.v.push_back(parse_mpz(v[k], at(at(spath, "v"), k)));
    const json& prods = need_array(need(states[i], "nonzero_products", spath),
                                   at(spath, "nonzero_products"));
    for (size_t k = 0; k < prods.size(); ++k) {
      const std::string ppath = at(at(spath, "nonzero_products"), k);
      const json& pair = need_array(prods[k], ppath);
      if (pair.size() != 2) bad(ppath, "expected [mask, value]");
      s.nonzero_products.emplace_back(
          static_cast<uint32_t>(need_long(pair[0], at(ppath, size_t(0)))),
          parse_mpz(pair[1], at(ppath, size_t(1))));
    }
    c.vectors.states.push_back(std::move(s));
  }
  return c;
}

nlohmann::json window_to_json(const SearchWindow& w) {
  return json{{"domain", ring_descriptor(w.domain)},
              {"bound", w.bound},
              {"degree", w.degree},
              {"positive_only", w.positive_only},
              {"exclude_zero_vector", w.exclude_zero_vector}};
}

SearchWindow window_from_json(const nlohmann::json& j, const std::string& path) {
  SearchWindow w;
  w.domain = ring_from_descriptor(need_string(need(j, "domain", path), at(path, "domain")));
  w.bound = need_long(need(j, "bound", path), at(path, "bound"));
  if (j.contains("degree")) w.degree = static_cast<int>(need_long(j["degree"], at(path, "degree")));
  if (j.contains("positive_only"))
    w.positive_only = need_bool(j["positive_only"], at(path, "positive_only"));
  if (j.contains("exclude_zero_vector"))
    w.exclude_zero_vector = need_bool(j["exclude_zero_vector"], at(path, "exclude_zero_vector"));
  return w;
}

nlohmann::json search_report_to_json(const SearchReport& r, const Colouring& chi) {
  json out{{"found", r.found},
           {"window", window_to_json(r.window)},
           {"colouring", colouring_to_json(chi)},
           {"elapsed_ms", r.elapsed_ms}};
  if (r.solution) {
    json sol = json::array();
    for (const Scalar& s : *r.solution) sol.push_back(scalar_to_json(s));
    out["solution"] = std::move(sol);
  }
  return out;
}

nlohmann::json finite_witness_to_json(const FiniteWitness& w) {
  return json{{"n", w.n}, {"bad_colouring", w.bad_colouring}};
}

nlohmann::json algebra_to_json(const FiniteAlgebra& a) {
  json out{{"p", a.p()}, {"dim", a.dim()}, {"basis", a.basis()},
           {"mul", a.mul()}, {"ideal", a.ideal()}, {"unit", a.unit()}};
  if (a.has_module()) {
    json action = json::array();
    for (int i = 0; i < a.dim(); ++i) action.push_back(a.basis_action(i).a);
    out["module"] = json{{"dim", a.module_dim()}, {"action", std::move(action)}};
  }
  return out;
}

FiniteAlgebra algebra_from_json(const nlohmann::json& j, const std::string& path) {
  long p = need_long(need(j, "p", path), at(path, "p"));
  long dim = need_long(need(j, "dim", path), at(path, "dim"));
  const json& jbasis = need_array(need(j, "basis", path), at(path, "basis"));
  std::vector<std::string> basis;
  for (size_t i = 0; i < jbasis.size(); ++i)
    basis.push_back(need_string(jbasis[i], at(at(path, "basis"), i)));
  if (static_cast<long>(basis.size()) != dim)
    bad(at(path, "basis"), "expected " + std::to_string(dim) + " labels");

  auto long_matrix = [&](const json& m, const std::string& mpath, size_t rows,
                         size_t cols) {
    const json& arr = need_array(m, mpath);
    if (arr.size() != rows) bad(mpath, "expected " + std::to_string(rows) + " rows");
    std::vector<std::vector<long>> out;
    for (size_t r = 0; r < rows; ++r) {
      const json& jrow = need_array(arr[r], at(mpath, r));
      if (jrow.size() != cols) bad(at(mpath, r), "expected " + std::to_string(cols) + " entries");
      std::vector<long> row;
      for (size_t c = 0; c < cols; ++c) row.push_back(need_long(jrow[c], at(at(mpath, r), c)));
      out.push_back(std::move(row));
    }
    return out;
  };

  const json& jmul = need_array(need(j, "mul", path), at(path, "mul"));
  if (jmul.size() != static_cast<size_t>(dim))
    bad(at(path, "mul"), "expected " + std::to_string(dim) + " blocks");
  std::vector<std::vector<std::vector<long>>> mul;
  for (size_t i = 0; i < jmul.size(); ++i)
    mul.push_back(long_matrix(jmul[i], at(at(path, "mul"), i), dim, dim));

  const json& jideal = need_array(need(j, "ideal", path), at(path, "ideal"));
  std::vector<std::vector<long>> ideal;
  for (size_t i = 0; i < jideal.size(); ++i) {
    const json& jrow = need_array(jideal[i], at(at(path, "ideal"), i));
    if (jrow.size() != static_cast<size_t>(dim))
      bad(at(at(path, "ideal"), i), "expected " + std::to_string(dim) + " entries");
    std::vector<long> row;
    for (size_t c = 0; c < jrow.size(); ++c)
      row.push_back(need_long(jrow[c], at(at(at(path, "ideal"), i), c)));
    ideal.push_back(std::move(row));
  }

  std::optional<ModuleRep> module;
  if (j.contains("module")) {
    const json& jm = j["module"];
    long mdim = need_long(need(jm, "dim", at(path, "module")), at(at(path, "module"), "dim"));
    const json& jact = need_array(need(jm, "action", at(path, "module")),
                                  at(at(path, "module"), "action"));
    if (jact.size() != static_cast<size_t>(dim))
      bad(at(at(path, "module"), "action"), "expected one matrix per basis element");
    ModuleRep rep{static_cast<int>(mdim), {}};
    for (size_t i = 0; i < jact.size(); ++i) {
      FpMat m = FpMat::zero(p, static_cast<int>(mdim), static_cast<int>(mdim));
      m.a = long_matrix(jact[i], at(at(at(path, "module"), "action"), i), mdim, mdim);
      rep.action.push_back(std::move(m));
    }
    module = std::move(rep);
  }

  std::vector<long> unit;
  if (j.contains("unit")) {
    const json& junit = need_array(j["unit"], at(path, "unit"));
    for (size_t i = 0; i < junit.size(); ++i)
      unit.push_back(need_long(junit[i], at(at(path, "unit"), i)));
  }

  return FiniteAlgebra(p, std::move(basis), std::move(mul), std::move(ideal), std::move(module),
                       std::move(unit));
}

nlohmann::json hmodule_report_to_json(const HModuleReport& h) {
  return json{{"dim_hom", h.dim_hom},
              {"dim_z", h.dim_z},
              {"dim_b", h.dim_b},
              {"dim_h", h.dim_h},
              {"representative", h.representative}};
}

}  // namespace rado
