#include "vcnls/coefficients.hpp"
#include "vcnls/specfun.hpp"

#include <cmath>

namespace vcnls::coeff {

namespace {

constexpr double SQRT2 = 1.4142135623730951;
constexpr double SQRT8 = 2.8284271247461903;

// First positive zeros of the mu(t) appearing in the catalog entries below,
// found by bisection to full precision; the usable interval stops just short.
constexpr double EDGE = 1e-3;
constexpr double T_RW1_HYP = 1.2513237943036626 - EDGE;  // 0F1(2/3, -4t^3/9) = 0
constexpr double T_DB_HYP = 0.4810988074348626 - EDGE;   // F23 - 2t F43 = 0
constexpr double T_RW2_TCOS = 0.5948244641446423 - EDGE; // cosh th = sqrt2 sinh th
constexpr double T_RW1_EXP = M_PI / 2 - EDGE;            // a(t) = 0 at pi/2

double F23(double t) { return specfun::hyp0f1(2.0 / 3.0, -4.0 * t * t * t / 9.0); }
double F43(double t) { return specfun::hyp0f1(4.0 / 3.0, -4.0 * t * t * t / 9.0); }

double theta_sech(double t) { return SQRT8 * specfun::gudermannian(t); }
double theta_tcos(double t) { return SQRT8 * t * std::cos(t) + SQRT2 * (t * t - 1.0) * std::sin(t); }

TimeFn zero_fn() { return [](double) { return 0.0; }; }
TimeFn const_fn(double v) { return [v](double) { return v; }; }

} // namespace

Values eval(const CoefficientSet& cs, double t) {
    if (!cs.in_domain(t))
        throw DomainError("coefficients: t=" + std::to_string(t) + " outside [" +
                          std::to_string(cs.t_lo) + ", " + std::to_string(cs.t_hi) + "]" +
                          (cs.case_id.empty() ? "" : " of case " + cs.case_id));
    return {cs.a(t), cs.b(t), cs.c(t), cs.d(t), cs.f(t), cs.g(t), cs.h(t)};
}

CharacteristicCoefficients eta_sigma(const CoefficientSet& cs, double t) {
    Values v = eval(cs, t);
    if (v.a == 0.0)
        throw SingularCoefficientError("eta_sigma: a(t) = 0 at t=" + std::to_string(t));
    double ap = cs.a_prime(t), dp = cs.d_prime(t);
    double eta = ap / v.a - 2.0 * v.c + 4.0 * v.d;
    // (d/2)(a'/a - d'/d) written without the removable 1/d
    double sigma = v.a * v.b - v.c * v.d + v.d * v.d + v.d * ap / (2.0 * v.a) - dp / 2.0;
    return {eta, sigma};
}

double characteristic_residual(const std::function<double(double)>& mu,
                               const CoefficientSet& cs, double t) {
    auto [eta, sigma] = eta_sigma(cs, t);
    const double h = 1e-3 * std::max(1.0, std::abs(t));
    double m2 = mu(t + 2 * h), m1 = mu(t + h), m0 = mu(t), mm1 = mu(t - h), mm2 = mu(t - 2 * h);
    double d1 = (-m2 + 8 * m1 - 8 * mm1 + mm2) / (12 * h);
    double d2 = (-m2 + 16 * m1 - 30 * m0 + 16 * mm1 - mm2) / (12 * h * h);
    if (cs.n > 1) {
        // radial reduction: the substitution alpha = mu'/(4 n a mu) adds a
        // quadratic term and scales the restoring one by n
        double n = cs.n;
        return d2 - eta * d1 + 4.0 * n * sigma * m0 + (1.0 - n) / n * d1 * d1 / m0;
    }
    return d2 - eta * d1 + 4.0 * sigma * m0;
}

TimeFn synthesize_h(const CoefficientSet& cs, TimeFn beta, TimeFn mu) {
    double lambda = cs.lambda, s = cs.s;
    TimeFn a = cs.a;
    return [lambda, s, a, beta, mu](double t) {
        double b = beta(t);
        return lambda * a(t) * b * b * std::pow(mu(t), s);
    };
}

namespace {

CoefficientSet make_rw1_hyp() {
    CoefficientSet cs;
    cs.a = const_fn(1.0);
    cs.b = [](double t) { return t; };
    cs.c = zero_fn();
    cs.d = const_fn(1.0);
    cs.f = zero_fn();
    cs.g = zero_fn();
    cs.h = [](double t) { return -2.0 * std::exp(2.0 * t) / F23(t); };
    cs.a_prime = zero_fn();
    cs.d_prime = zero_fn();
    cs.case_id = "rw1-hyp";
    cs.t_hi = T_RW1_HYP;
    cs.formulas = {{"a", "1"},
                   {"b", "t"},
                   {"c", "0"},
                   {"d", "1"},
                   {"f", "0"},
                   {"g", "0"},
                   {"h", "-2*exp(2t)/0F1(2/3; -4t^3/9)"}};
    return cs;
}

CoefficientSet make_rw1_exp() {
    CoefficientSet cs;
    cs.a = [](double t) { return -std::cos(t) / 2.0; };
    cs.b = zero_fn();
    cs.c = zero_fn();
    cs.d = const_fn(-1.0);
    cs.f = zero_fn();
    cs.g = zero_fn();
    cs.h = [](double t) { return std::exp(-2.0 * t) * std::cos(t); };
    cs.a_prime = [](double t) { return std::sin(t) / 2.0; };
    cs.d_prime = zero_fn();
    cs.case_id = "rw1-exp";
    cs.t_hi = T_RW1_EXP;
    cs.formulas = {{"a", "-cos(t)/2"}, {"b", "0"}, {"c", "0"}, {"d", "-1"},
                   {"f", "0"},         {"g", "0"}, {"h", "exp(-2t)cos(t)"}};
    return cs;
}

CoefficientSet make_rw2_sech() {
    CoefficientSet cs;
    cs.a = [](double t) { return -0.5 / std::cosh(t); };
    cs.b = [](double t) { return 2.0 / std::cosh(t); };   // -4a
    cs.c = [](double t) { return -2.0 / std::cosh(t); };  // 4a
    cs.d = [](double t) { return -1.0 / std::cosh(t); };  // 2a
    cs.f = zero_fn();
    cs.g = zero_fn();
    cs.h = [](double t) {
        double th = theta_sech(t);
        double mu = std::cosh(th) - 0.5 * SQRT2 * std::sinh(th);
        return 1.0 / (std::cosh(t) * mu);
    };
    cs.a_prime = [](double t) { return 0.5 * std::tanh(t) / std::cosh(t); };
    cs.d_prime = [](double t) { return std::tanh(t) / std::cosh(t); };
    cs.case_id = "rw2-sech";
    cs.t_hi = 3.0;
    cs.formulas = {{"a", "-sech(t)/2"},
                   {"b", "2 sech(t)"},
                   {"c", "-2 sech(t)"},
                   {"d", "-sech(t)"},
                   {"f", "0"},
                   {"g", "0"},
                   {"h", "sech(t)/(cosh(th) - (sqrt2/2) sinh(th)), th = sqrt8 gd(t)"}};
    return cs;
}

CoefficientSet make_rw2_tcos() {
    CoefficientSet cs;
    cs.a = [](double t) { return -0.5 * (1.0 + t * t) * std::cos(t); };
    cs.b = [](double t) { return -(1.0 + t * t) * std::cos(t); };  // 2a
    cs.c = [](double t) { return -2.0 * (1.0 + t * t) * std::cos(t); }; // 4a
    cs.d = [](double t) { return -(1.0 + t * t) * std::cos(t); };  // 2a
    cs.f = zero_fn();
    cs.g = zero_fn();
    cs.h = [](double t) {
        double th = theta_tcos(t);
        return (1.0 + t * t) * std::cos(t) / (std::cosh(th) - SQRT2 * std::sinh(th));
    };
    cs.a_prime = [](double t) {
        return -t * std::cos(t) + 0.5 * (1.0 + t * t) * std::sin(t);
    };
    cs.d_prime = [](double t) { return -2.0 * t * std::cos(t) + (1.0 + t * t) * std::sin(t); };
    cs.case_id = "rw2-tcos";
    cs.t_hi = T_RW2_TCOS;
    cs.formulas = {{"a", "-(1+t^2)cos(t)/2"},
                   {"b", "-(1+t^2)cos(t)"},
                   {"c", "-2(1+t^2)cos(t)"},
                   {"d", "-(1+t^2)cos(t)"},
                   {"f", "0"},
                   {"g", "0"},
                   {"h", "(1+t^2)cos(t)/(cosh(th) - sqrt2 sinh(th)), "
                         "th = sqrt8 t cos(t) + sqrt2 (t^2-1) sin(t)"}};
    return cs;
}

CoefficientSet make_db_hyp() {
    CoefficientSet cs;
    cs.a = const_fn(2.0);
    cs.b = [](double t) { return (t + 1.0) / 2.0; };
    cs.c = const_fn(-2.0);
    cs.d = const_fn(-1.0);
    cs.f = zero_fn();
    cs.g = zero_fn();
    cs.h = [](double t) { return -4.0 / (F23(t) - 2.0 * t * F43(t)); };
    cs.a_prime = zero_fn();
    cs.d_prime = zero_fn();
    cs.case_id = "db-hyp";
    cs.t_hi = T_DB_HYP;
    cs.formulas = {{"a", "2"},
                   {"b", "(t+1)/2"},
                   {"c", "-2"},
                   {"d", "-1"},
                   {"f", "0"},
                   {"g", "0"},
                   {"h", "-4/(0F1(2/3; -4t^3/9) - 2t 0F1(4/3; -4t^3/9))"}};
    return cs;
}

CoefficientSet make_db_sin() {
    CoefficientSet cs;
    cs.a = const_fn(1.0);
    cs.b = [](double t) {
        double s = std::sin(t);
        return (s * s - std::cos(t)) / 4.0;
    };
    cs.c = [](double t) { return -std::sin(t); };
    cs.d = [](double t) { return std::sin(t); };
    cs.f = zero_fn();
    cs.g = zero_fn();
    cs.h = [](double t) { return -2.0 * std::exp(3.0 - 3.0 * std::cos(t)); };
    cs.a_prime = zero_fn();
    cs.d_prime = [](double t) { return std::cos(t); };
    cs.case_id = "db-sin";
    cs.t_hi = 3.0;
    cs.formulas = {{"a", "1"},
                   {"b", "(sin^2 t - cos t)/4"},
                   {"c", "-sin(t)"},
                   {"d", "sin(t)"},
                   {"f", "0"},
                   {"g", "0"},
                   {"h", "-2 exp(3 - 3cos(t))"}};
    return cs;
}

CoefficientSet make_blowup_free() {
    CoefficientSet cs;
    cs.a = const_fn(0.5);
    cs.b = zero_fn();
    cs.c = zero_fn();
    cs.d = zero_fn();
    cs.f = zero_fn();
    cs.g = zero_fn();
    cs.h = const_fn(1.0); // placeholder coupling; the singular family allows any h
    cs.a_prime = zero_fn();
    cs.d_prime = zero_fn();
    cs.l0 = 1;
    cs.integrable_h = false;
    cs.case_id = "blowup-free";
    cs.t_hi = 100.0;
    cs.formulas = {{"a", "1/2"}, {"b", "0"}, {"c", "0"}, {"d", "0"},
                   {"f", "0"},   {"g", "0"}, {"h", "1 (any h admissible)"}};
    return cs;
}

CoefficientSet make_nd2_sech() {
    CoefficientSet cs;
    cs.a = const_fn(2.0);
    cs.b = const_fn(-2.0);
    cs.c = zero_fn();
    cs.d = zero_fn();
    cs.f = zero_fn();
    cs.g = zero_fn();
    cs.h = const_fn(-8.0);
    cs.a_prime = zero_fn();
    cs.d_prime = zero_fn();
    cs.lambda = -4.0;
    cs.l0 = 1;
    cs.n = 2;
    cs.case_id = "nd2-sech";
    cs.t_hi = 1.0;
    cs.formulas = {{"a", "2"}, {"b", "-2"}, {"c", "0"}, {"d", "0"},
                   {"f", "0"}, {"g", "0"},  {"h", "-8"}};
    return cs;
}

CoefficientSet make_nd3_erf() {
    CoefficientSet cs;
    cs.a = const_fn(2.0);
    cs.b = [](double t) { return -(1.0 + 2.0 * t * t) / 4.0; };
    cs.c = zero_fn();
    cs.d = zero_fn();
    cs.f = zero_fn();
    cs.g = zero_fn();
    cs.h = [](double t) { return -12.0 * std::exp(t * t); };
    cs.a_prime = zero_fn();
    cs.d_prime = zero_fn();
    cs.lambda = -6.0;
    cs.l0 = 1;
    cs.n = 3;
    cs.case_id = "nd3-erf";
    cs.t_hi = 1.0;
    cs.formulas = {{"a", "2"},
                   {"b", "-(1+2t^2)/4"},
                   {"c", "0"},
                   {"d", "0"},
                   {"f", "0"},
                   {"g", "0"},
                   {"h", "-12 exp(t^2)"}};
    return cs;
}

} // namespace

const std::vector<std::string>& case_ids() {
    static const std::vector<std::string> ids = {
        "rw1-hyp", "rw1-exp", "rw2-sech", "rw2-tcos", "db-hyp",
        "db-sin",  "blowup-free", "nd2-sech", "nd3-erf"};
    return ids;
}

CoefficientSet builtin_case(const std::string& id) {
    if (id == "rw1-hyp") return make_rw1_hyp();
    if (id == "rw1-exp") return make_rw1_exp();
    if (id == "rw2-sech") return make_rw2_sech();
    if (id == "rw2-tcos") return make_rw2_tcos();
    if (id == "db-hyp") return make_db_hyp();
    if (id == "db-sin") return make_db_sin();
    if (id == "blowup-free") return make_blowup_free();
    if (id == "nd2-sech") return make_nd2_sech();
    if (id == "nd3-erf") return make_nd3_erf();
    throw UnknownCaseError("unknown case id '" + id + "'");
}

nlohmann::json catalog_json() {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& id : case_ids()) {
        CoefficientSet cs = builtin_case(id);
        nlohmann::json j;
        j["case_id"] = cs.case_id;
        j["domain"] = {cs.t_lo, cs.t_hi};
        j["lambda"] = cs.lambda;
        j["l0"] = cs.l0;
        j["s"] = cs.s;
        j["n"] = cs.n;
        j["integrable_h"] = cs.integrable_h;
        j["formulas"] = cs.formulas;
        out.push_back(j);
    }
    return out;
}

} // namespace vcnls::coeff
