#include "gpf/machinery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpf/factor.hpp"

namespace gpf {
namespace {

BigInt big(std::uint64_t n) { return BigInt(static_cast<unsigned long>(n)); }

double to_double(const ExactRational& q) { return q.get_d(); }

double log_rational(const ExactRational& q) { return log_big(q.get_num()) - log_big(q.get_den()); }

double log10_rational(const ExactRational& q) { return log_rational(q) / std::log(10.0); }

ExactRational rat(const BigInt& n) { return ExactRational(n); }

std::string str(const ExactRational& q) { return q.get_str(); }
std::string str(const BigInt& n) { return n.get_str(); }

void add(std::vector<Check>& checks, std::string name, bool passed, std::string value, bool hard = true) {
  checks.push_back({std::move(name), hard, passed, std::move(value)});
}

}  // namespace

WitnessVector build_witness(const Triple& triple, const PlaceSet& s, unsigned order) {
  if (order < 5) throw std::invalid_argument("truncation order must be at least 5");
  make_sunit(triple.u(), s);
  make_sunit(triple.v(), s);

  WitnessVector w{triple, big(triple.u()), big(triple.v()), order, 0, 0, {}, {}, {}};
  const BigInt& u = w.u;
  const BigInt& v = w.v;
  const BigInt b = big(triple.b());
  const BigInt c = big(triple.c());
  const unsigned k = order;

  w.y1 = make_rational(u - 1, v - 1);
  w.y2 = make_rational(u * u - 1, v - 1);
  if (w.y1 != make_rational(b, c) || w.y2 != make_rational((u + 1) * b, c))
    throw InvariantViolation("y1 = b/c or y2 = (u+1)b/c fails");

  w.sigma.resize(3 * k);
  for (unsigned j = 0; j < 3; ++j)
    for (unsigned n = 1; n <= k; ++n) w.sigma[k * j + n - 1] = pow(u, j) * pow(v, k - n);

  w.alpha = DenseMatrix<BigInt>(2, 3 * k);
  for (unsigned i = 0; i < k; ++i) {
    w.alpha(0, i) = 1;
    w.alpha(1, i) = 1;
    w.alpha(0, k + i) = -1;
    w.alpha(1, 2 * k + i) = -1;
  }

  const BigInt vk = pow(v, k);
  w.x.reserve(3 * k + 2);
  for (const ExactRational* y : {&w.y1, &w.y2}) {
    ExactRational xi = rat(c * vk) * *y;
    xi.canonicalize();
    if (xi.get_den() != 1) throw InvariantViolation("c v^k y_j is not an integer");
    w.x.push_back(xi.get_num());
  }
  for (const auto& sg : w.sigma) w.x.push_back(c * sg);

  if (w.x[0] != b * vk || w.x[1] != (u + 1) * b * vk)
    throw InvariantViolation("closed forms x1 = b v^k, x2 = (u+1) b v^k fail");
  return w;
}

FormSystem build_forms(const WitnessVector& w, const PlaceSet& s) {
  const std::size_t n = w.dimension();
  FormSystem fs;
  fs.places = s.places();
  for (const auto& place : fs.places) {
    auto m = DenseMatrix<BigInt>::identity(n);
    if (place.is_infinite()) {
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i + 2 < n; ++i) m(j, i + 2) = w.alpha(j, i);
    }
    fs.forms.push_back(std::move(m));
  }
  return fs;
}

FormTable evaluate_forms(const WitnessVector& w, const PlaceSet& s) {
  const FormSystem fs = build_forms(w, s);
  FormTable t;
  t.places = fs.places;
  for (std::size_t i = 0; i < fs.places.size(); ++i) {
    auto values = fs.forms[i] * w.x;
    std::vector<ExactRational> abs_values;
    abs_values.reserve(values.size());
    for (const auto& val : values) abs_values.push_back(abs_at_place(rat(val), fs.places[i]));
    t.values.push_back(std::move(values));
    t.abs_values.push_back(std::move(abs_values));
  }
  return t;
}

bool InequalityReport::hard_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.hard || c.passed; });
}

InequalityReport inequality_report(const WitnessVector& w, const PlaceSet& s) {
  const FormTable table = evaluate_forms(w, s);
  const FormSystem forms = build_forms(w, s);
  const std::size_t inf = table.places.size() - 1;  // infinite place is last
  const std::size_t n_forms = w.dimension();
  const unsigned k = w.order;

  const BigInt a = big(w.triple.a());
  const BigInt b = big(w.triple.b());
  const BigInt c = big(w.triple.c());
  const BigInt& u = w.u;
  const BigInt& v = w.v;
  const ExactRational inv_a = make_rational(1, a);

  InequalityReport rep;
  auto& checks = rep.checks;

  for (std::size_t i = 0; i < forms.forms.size(); ++i) {
    const BigInt det = determinant(forms.forms[i]);
    add(checks, "forms_independent@" + table.places[i].name(), det != 0, "det=" + str(det));
  }

  add(checks, "x_integral", true, std::to_string(n_forms) + " integer coordinates");
  add(checks, "L1inf_equals_b", table.values[inf][0] == b,
      str(table.values[inf][0]) + " vs b=" + str(b));
  add(checks, "L2inf_equals_(u+1)b", table.values[inf][1] == (u + 1) * b,
      str(table.values[inf][1]) + " vs (u+1)b=" + str(BigInt((u + 1) * b)));

  BigInt tail = 0;  // sum_{n=1..k} v^(k-n)
  for (unsigned n = 1; n <= k; ++n) tail += pow(v, k - n);
  const BigInt vk = pow(v, k);
  const std::array<const ExactRational*, 2> ys = {&w.y1, &w.y2};
  for (unsigned j = 1; j <= 2; ++j) {
    const BigInt uj = pow(u, j);
    ExactRational r = rat(vk) * *ys[j - 1] + rat(tail) - rat(uj * tail);
    r.canonicalize();
    rep.series_residual[j - 1] = r;
    add(checks, "series_residual_equals_y" + std::to_string(j), r == *ys[j - 1], str(r));
    rep.c1[j - 1] = to_double(abs(r) / (rat(uj) / rat(v)));

    rep.inf_value[j - 1] = table.abs_values[inf][j - 1];
    rep.c3[j - 1] = to_double(rep.inf_value[j - 1] / (rat(c * uj) / rat(v)));
    add(checks, "inf_constant_j" + std::to_string(j), true, format_real(rep.c3[j - 1]), false);

    ExactRational fin = 1;
    for (std::size_t p = 0; p < inf; ++p) fin *= table.abs_values[p][j - 1];
    rep.finite_part[j - 1] = fin;
    add(checks, "finite_part_le_v^-k_j" + std::to_string(j), fin <= make_rational(1, vk), str(fin));
    rep.place_product[j - 1] = fin * rep.inf_value[j - 1];
    rep.c4[j - 1] = to_double(rep.place_product[j - 1] / (rat(c * uj) / rat(pow(v, k + 1))));
    add(checks, "place_product_constant_j" + std::to_string(j), true, format_real(rep.c4[j - 1]), false);
  }

  rep.finite_v_power = product_over_finite_places(rat(vk), s);
  add(checks, "finite_product_v^k_equals_v^-k", rep.finite_v_power == make_rational(1, vk),
      str(rep.finite_v_power));

  bool coordinates_ok = true;
  for (std::size_t j = 2; j < n_forms; ++j) {
    ExactRational prod = 1;
    for (std::size_t p = 0; p < table.places.size(); ++p) prod *= table.abs_values[p][j];
    coordinates_ok = coordinates_ok && prod <= rat(c);
    rep.coordinate_product.push_back(prod);
  }
  add(checks, "coordinate_products_le_c", coordinates_ok, std::to_string(rep.coordinate_product.size()) + " forms");

  rep.full_product = 1;
  for (const auto& row : table.abs_values)
    for (const auto& x : row) rep.full_product *= x;
  rep.product_bound = rat(pow(c, n_forms) * pow(u, 3)) / rat(pow(v, 2 * (k + 1)));
  rep.c6 = to_double(rep.full_product / rep.product_bound);
  add(checks, "full_product_constant", true, format_real(rep.c6), false);

  rep.chain_middle = rat(pow(c, k)) * pow(rat(a), 4 - 2 * static_cast<long>(k));
  add(checks, "u_le_a^2", u <= a * a, str(u));
  add(checks, "v_gt_ac", v > a * c, str(v));
  add(checks, "product_bound_le_chain", rep.product_bound <= rep.chain_middle,
      str(rep.product_bound) + " <= " + str(rep.chain_middle));
  add(checks, "chain_lt_a^-1", rep.chain_middle < inv_a, str(rep.chain_middle) + " < " + str(inv_a));

  rep.height = *std::max_element(w.x.begin(), w.x.end(), [](const BigInt& p, const BigInt& q) {
    return abs(p) < abs(q);
  });
  rep.height_bound = u * u * vk * c;
  rep.height_cap = pow(a, 2 * k + 5);
  add(checks, "height_is_x2", rep.height == w.x[1], str(rep.height));
  add(checks, "height_le_u^2v^kc", rep.height <= rep.height_bound, str(rep.height_bound));
  add(checks, "u^2v^kc_le_a^(2k+5)", rep.height_bound <= rep.height_cap, str(rep.height_cap));

  // product_bound < a^-1 <= height^(-1/(2k+5)), raised to the power 2k+5.
  const unsigned hyp = 2 * k + 5;
  rep.hypothesis_exponent = 1.0 / hyp;
  const ExactRational hyp_value = pow(rep.product_bound, hyp) * rat(rep.height);
  add(checks, "hypothesis_bound^(2k+5)*height_lt_1", hyp_value < 1, "log10=" + format_real(log10_rational(hyp_value)));

  rep.measured_exponent = -log_rational(rep.full_product) / log_big(rep.height);
  add(checks, "measured_exponent", rep.measured_exponent >= rep.hypothesis_exponent,
      format_real(rep.measured_exponent), false);
  const ExactRational delta16 = pow(rep.full_product, 16) * rat(rep.height);
  add(checks, "product_lt_height^(-1/16)", delta16 < 1, "log10=" + format_real(log10_rational(delta16)), false);

  if (!rep.hard_pass()) {
    std::string failed;
    for (const auto& ch : checks)
      if (ch.hard && !ch.passed) failed += " " + ch.name;
    throw InvariantViolation("hard checks failed for " + w.triple.to_string() + ":" + failed);
  }
  return rep;
}

DenseMatrix<ExactRational> curve_polynomial(const CurveCoeffs& coeffs) {
  if (coeffs.rho.rows() != 3 || coeffs.rho.cols() < 1)
    throw std::invalid_argument("rho must be 3 x k");
  const std::size_t k = coeffs.rho.cols();
  DenseMatrix<ExactRational> p(3, k + 1);
  p(1, k) += coeffs.eta1;
  p(0, k) -= coeffs.eta1;
  p(2, k) += coeffs.eta2;
  p(0, k) -= coeffs.eta2;
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t n = 1; n <= k; ++n) {
      const ExactRational& r = coeffs.rho(j, n - 1);
      p(j, k - n + 1) += r;
      p(j, k - n) -= r;
    }
  }
  return p;
}

bool curve_nontrivial(const CurveCoeffs& coeffs) {
  const auto p = curve_polynomial(coeffs);
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t d = 0; d < p.cols(); ++d)
      if (p(i, d) != 0) return true;
  return false;
}

DescentReport descent_check(const TripleHit& hit, const PlaceSet& s) {
  DescentReport rep{.triple = hit.triple};
  const auto& t = hit.triple;
  rep.u = hit.u.value;
  rep.v = hit.v.value;
  rep.g = std::gcd(rep.u - 1, rep.v - 1);
  rep.a_divides_g = rep.g % t.a() == 0;
  if (!rep.a_divides_g) throw InvariantViolation("a does not divide gcd(u-1, v-1) for " + t.to_string());

  rep.relation = find_power_relation(hit.u, hit.v);
  if (rep.relation) {
    const auto [p, q] = *rep.relation;
    const SUnit base = common_base(hit.u, hit.v, *rep.relation, s);
    rep.base = base.value;
    const BigInt tb = big(base.value);
    rep.base_gcd = power_minus_one_gcd(tb, p, q);
    const BigInt a = big(t.a());
    const BigInt u = big(rep.u);
    const BigInt t_minus_1 = tb - 1;
    rep.chain_holds = a <= t_minus_1 && pow(t_minus_1, q) <= u && u <= a * a;
    rep.chain_values = std::array<double, 3>{
        static_cast<double>(base.value - 1), std::pow(static_cast<double>(rep.u), 1.0 / q),
        std::pow(static_cast<double>(t.a()), 2.0 / q)};
  }

  rep.u_is_v_squared = big(rep.u) == big(rep.v) * big(rep.v);
  if (rep.u_is_v_squared) throw InvariantViolation("u = v^2 for a valid hit " + t.to_string());
  rep.square_b = big(t.c()) * (big(t.a()) * t.c() + 2);
  rep.square_excluded = rep.square_b > big(t.a());
  if (!rep.square_excluded) throw InvariantViolation("c(ac+2) <= a for " + t.to_string());
  return rep;
}

std::vector<SquareCandidate> square_relation_candidates(std::uint64_t v) {
  if (v < 2 || v > (std::uint64_t{1} << 32)) throw std::invalid_argument("v must be in [2, 2^32]");
  const std::uint64_t u = v * v;
  const std::uint64_t g = std::gcd(u - 1, v - 1);
  const auto f = default_factorizer().factor(g);
  std::vector<SquareCandidate> out;
  for (auto a : divisors(g, f.factors)) {
    const std::uint64_t b = (u - 1) / a;
    const std::uint64_t c = (v - 1) / a;
    out.push_back({a, b, c, b >= a});
  }
  return out;
}

}  // namespace gpf
