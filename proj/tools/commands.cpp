/*
 * Copyright 2026 The parastat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"

#include "parastat/coherent.hpp"
#include "parastat/error.hpp"
#include "parastat/para_algebra.hpp"
#include "parastat/special_fn.hpp"

namespace parastat::cli {

namespace {

using nlohmann::json;

std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double rel_diff(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// keeps the status column a single CSV field
std::string csv_safe(std::string s)
{
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

template <class T>
void sort_unique(std::vector<T>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

SweepRow evaluate_point(int p, double mean, int order, hbt::Method method, const SweepConfig& config)
{
    SweepRow row;
    row.p = p;
    row.mean_n = mean;
    row.order = order;
    row.method = method;
    row.value = std::nan("");
    row.err_est = std::nan("");
    if (method == hbt::Method::kClosedForm && order > 4) {
        row.status = "skipped: closed form covers orders 1-4";
        return row;
    }
    if (method == hbt::Method::kQuadrature && order > 8) {
        row.status = "skipped: quadrature covers orders 1-8";
        return row;
    }
    try {
        const hbt::ThermalState state(mean, ParaOrder{p}, config.c_bar);
        special::QuadratureSpec spec;
        spec.rel_tol = config.rel_tol;
        const hbt::CorrelationValue v = hbt::g_by_method(order, state, method, spec);
        row.value = v.value;
        row.err_est = v.err_est;
        if (order == 2)
            row.lambda_p = hbt::lambda_p(state);
        row.status = "ok";
    } catch (const NumericalError& e) {
        row.value = e.best_value();
        row.err_est = e.err_est();
        row.status = csv_safe(std::string("error: ") + e.what());
    } catch (const std::exception& e) {
        row.status = csv_safe(std::string("error: ") + e.what());
    }
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(SweepConfig config)
{
    sort_unique(config.p_list);
    sort_unique(config.mean_list);
    sort_unique(config.orders);
    std::sort(config.methods.begin(), config.methods.end(),
              [](hbt::Method a, hbt::Method b) { return hbt::to_string(a) < hbt::to_string(b); });
    config.methods.erase(std::unique(config.methods.begin(), config.methods.end()), config.methods.end());

    std::vector<std::tuple<int, double, int, hbt::Method>> points;
    for (int p : config.p_list)
        for (double mean : config.mean_list)
            for (int order : config.orders)
                for (hbt::Method m : config.methods)
                    points.emplace_back(p, mean, order, m);

    std::vector<SweepRow> rows(points.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            const auto& [p, mean, order, m] = points[i];
            rows[i] = evaluate_point(p, mean, order, m, config);
        }
    };
    unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, points.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool)
        t.join();
    return rows;
}

double max_pairwise_spread(const std::vector<SweepRow>& rows)
{
    std::map<std::tuple<int, double, int>, std::vector<double>> groups;
    for (const SweepRow& r : rows)
        if (r.status == "ok")
            groups[{r.p, r.mean_n, r.order}].push_back(r.value);
    double worst = 0.0;
    for (const auto& [key, values] : groups)
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t j = i + 1; j < values.size(); ++j)
                worst = std::max(worst, rel_diff(values[i], values[j]));
    return worst;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out)
{
    out << "p,mean_n,order,method,value,err_est,lambda_p,status\n";
    for (const SweepRow& r : rows) {
        out << r.p << ',' << num(r.mean_n) << ',' << r.order << ',' << hbt::to_string(r.method) << ','
            << num(r.value) << ',' << num(r.err_est) << ',' << (r.lambda_p ? num(*r.lambda_p) : "") << ','
            << r.status << '\n';
    }
}

void write_sweep_json(const std::vector<SweepRow>& rows, std::ostream& out)
{
    json doc;
    doc["rows"] = json::array();
    for (const SweepRow& r : rows) {
        json j = {{"p", r.p},
                  {"mean_n", r.mean_n},
                  {"order", r.order},
                  {"method", std::string(hbt::to_string(r.method))},
                  {"value", std::isfinite(r.value) ? json(r.value) : json(nullptr)},
                  {"err_est", std::isfinite(r.err_est) ? json(r.err_est) : json(nullptr)},
                  {"lambda_p", r.lambda_p ? json(*r.lambda_p) : json(nullptr)},
                  {"status", r.status}};
        doc["rows"].push_back(j);
    }
    doc["max_pairwise_spread"] = max_pairwise_spread(rows);
    out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// verify

namespace {

using CheckList = std::vector<VerifyCheck>;

void add(CheckList& list, const char* suite, const char* name, double measured, double tolerance)
{
    list.push_back({suite, name, measured, tolerance, measured <= tolerance});
}

void verify_algebra(CheckList& list)
{
    double mismatches = 0.0;
    double ladder = 0.0;
    double pairing = 0.0;
    double bi = 0.0;
    for (int p = 1; p <= 10; ++p) {
        const ParaOrder po{p};
        double prod = 1.0;
        for (long n = 0; n <= 30; ++n) {
            const algebra::BigInt f = algebra::p_factorial(Occupation{n}, po);
            const algebra::BigInt next = algebra::p_factorial(Occupation{n + 1}, po);
            const long factor = (n % 2 == 0) ? n + p : n + 1;
            mismatches += (next == factor * f) ? 0.0 : 1.0;
            ladder = std::max(ladder, rel_diff(prod, f.convert_to<double>()));
            const double c = algebra::ladder_up_coeff(Occupation{n}, po);
            prod *= c * c;
            const algebra::TransitionSpec up{algebra::Species::kParaboson, Occupation{n}, algebra::Direction::kEmission};
            const algebra::TransitionSpec down{algebra::Species::kParaboson, Occupation{n + 1},
                                               algebra::Direction::kAbsorption};
            pairing = std::max(pairing, std::abs(algebra::pb_transition_prob(up, po) - algebra::pb_transition_prob(down, po)));
        }
        for (long n = 0; n <= p; ++n) {
            algebra::BigInt expected = 1;
            for (long k = p - n + 1; k <= p; ++k)
                expected *= k;
            for (long k = 2; k <= n; ++k)
                expected *= k;
            bi += (algebra::pf_factorial(Occupation{n}, po) == expected) ? 0.0 : 1.0;
        }
    }
    add(list, "algebra", "p-factorial recursion mismatches", mismatches, 0.0);
    add(list, "algebra", "ladder product vs p-factorial", ladder, 1e-12);
    add(list, "algebra", "emission/absorption pairing", pairing, 0.0);
    add(list, "algebra", "bi-factorial mismatches", bi, 0.0);
}

void verify_special(CheckList& list, const special::QuadratureSpec& spec)
{
    double wronskian = 0.0;
    for (int twice = -1; twice <= 10; ++twice) {
        const special::BesselOrder nu = special::BesselOrder::from_twice(twice);
        for (double x : {0.1, 1.0, 10.0, 100.0}) {
            const double w = special::bessel_i_scaled(nu, x) * special::bessel_k_scaled(nu.next(), x)
                             + special::bessel_i_scaled(nu.next(), x) * special::bessel_k_scaled(nu, x);
            wronskian = std::max(wronskian, rel_diff(w, 1.0 / x));
        }
    }
    double split = 0.0;
    for (int p = 1; p <= 6; ++p)
        for (double x : {0.1, 1.0, 5.0, 20.0}) {
            const special::PExpParts<double> s = special::p_exp_parts(x, ParaOrder{p});
            const special::PExpParts<double> b = special::p_exp_parts_bessel(x, ParaOrder{p});
            split = std::max({split, rel_diff(s.even, b.even), rel_diff(s.odd, b.odd)});
        }
    double contiguity = 0.0;
    for (double z : {0.1, 0.5, 0.85, 0.95})
        for (double a : {0.5, 1.0, 2.5})
            for (double b : {0.3, 1.5}) {
                const double c = 3.2;
                const double ref = c * special::hyp2f1(a + 1, b, c, z).value;
                const double lhs = c * special::hyp2f1(a, b, c, z).value - ref
                                   + b * z * special::hyp2f1(a + 1, b + 1, c + 1, z).value;
                contiguity = std::max(contiguity, std::abs(lhs) / ref);
            }
    const double quad = std::abs(special::integrate_semi_infinite([](double t) { return std::exp(-t); }, spec).value - 1.0);
    add(list, "special-fn", "Bessel Wronskian", wronskian, 1e-9);
    add(list, "special-fn", "p-exponential Bessel split", split, 1e-9);
    add(list, "special-fn", "2F1 contiguity", contiguity, 1e-8);
    add(list, "special-fn", "quadrature of exp(-t)", quad, 10.0 * spec.rel_tol);
}

void verify_coherent(CheckList& list, const special::QuadratureSpec& spec)
{
    double moments = 0.0;
    for (int p = 1; p <= 5; ++p)
        for (double x : {0.1, 1.0, 10.0, 100.0}) {
            const coherent::MomentPair c = coherent::coherent_moments(x, ParaOrder{p});
            const coherent::MomentPair d = coherent::coherent_moments_direct(x, ParaOrder{p});
            moments = std::max({moments, rel_diff(c.mean, d.mean), rel_diff(c.variance, d.variance)});
        }
    double norm = 0.0;
    for (int p = 1; p <= 6; ++p)
        for (double x : {0.3, 2.0, 17.0, 50.0}) {
            double sum = 0.0;
            for (double v : coherent::p_poisson_table(x, ParaOrder{p}))
                sum += v;
            norm = std::max(norm, std::abs(sum - 1.0));
        }
    double euler = 0.0;
    double completeness = 0.0;
    for (int p = 1; p <= 5; ++p) {
        for (long n = 0; n <= 12; ++n)
            euler = std::max(euler, rel_diff(coherent::gamma_generalized(Occupation{n}, ParaOrder{p}, spec).value,
                                             algebra::p_factorial(Occupation{n}, ParaOrder{p}).convert_to<double>()));
        for (long n = 0; n <= 10; ++n)
            completeness = std::max(
                completeness, std::abs(coherent::completeness_diagonal(Occupation{n}, ParaOrder{p}, spec).value - 1.0));
    }
    add(list, "coherent", "moments closed form vs direct", moments, 1e-9);
    add(list, "coherent", "p-Poisson normalization", norm, 1e-10);
    add(list, "coherent", "Euler integral vs p-factorial", euler, 1e-8);
    add(list, "coherent", "completeness diagonal", completeness, 1e-7);
}

void verify_hbt(CheckList& list, const special::QuadratureSpec& spec, const fock::LadderUpFn& ladder)
{
    double analytic = 0.0;
    double quad = 0.0;
    double oracle = 0.0;
    for (int p = 1; p <= 5; ++p)
        for (double mean : {0.1, 0.5, 1.0, 2.0, 10.0})
            for (int n = 1; n <= 4; ++n) {
                const hbt::ThermalState s(mean, ParaOrder{p});
                const hbt::CorrelationValue closed = hbt::g_closed(n, s);
                const hbt::CorrelationValue hyp = hbt::g_hypergeometric(n, s);
                const hbt::CorrelationValue q = hbt::g_quadrature(n, s, spec);
                const hbt::CorrelationValue fk = fock::thermal_g(n, s, nullptr, ladder);
                analytic = std::max(analytic, rel_diff(closed.value, hyp.value));
                quad = std::max({quad, rel_diff(q.value, closed.value), rel_diff(q.value, hyp.value)});
                for (const hbt::CorrelationValue& other : {closed, hyp})
                    oracle = std::max(oracle, std::abs(fk.value - other.value) / (fk.err_est + other.err_est));
            }
    add(list, "hbt", "closed form vs hypergeometric", analytic, 1e-8);
    add(list, "hbt", "quadrature vs analytic", quad, 1e-6);
    add(list, "hbt", "oracle |diff| / recorded bound", oracle, 1.0);
}

void verify_oracle(CheckList& list, const fock::LadderUpFn& ladder)
{
    double trilinear = 0.0;
    double eigen = 0.0;
    for (int p = 1; p <= 5; ++p) {
        const fock::TruncatedBasis basis{40, ParaOrder{p}};
        const fock::LadderMatrices m = fock::build_ladder(basis, ladder);
        const Eigen::MatrixXd anti = m.a_dag * m.a + m.a * m.a_dag;
        const Eigen::MatrixXd comm = m.a * anti - anti * m.a - 2.0 * m.a;
        trilinear = std::max(trilinear, comm.topLeftCorner(39, 39).cwiseAbs().maxCoeff());
        const Eigen::MatrixXcd a = m.a.cast<std::complex<double>>();
        for (double mag : {0.5, 1.0, 2.0}) {
            const std::complex<double> alpha = std::polar(mag, 0.7);
            const Eigen::VectorXcd v = fock::coherent_vector(alpha, basis);
            eigen = std::max(eigen, (a * v - alpha * v).norm());
        }
    }
    double bound = 0.0;
    double robust = 0.0;
    for (int p = 1; p <= 5; ++p)
        for (double mean : {0.1, 1.0, 10.0})
            for (int n = 1; n <= 4; ++n) {
                const hbt::ThermalState s(mean, ParaOrder{p});
                fock::ThermalSumInfo info;
                const hbt::CorrelationValue fk = fock::thermal_g(n, s, &info, ladder);
                const hbt::CorrelationValue closed = hbt::g_closed(n, s);
                bound = std::max(bound, std::abs(fk.value - closed.value) / (fk.err_est + closed.err_est));
                const double doubled = fock::thermal_g_at_cutoff(n, s, 2 * info.cutoff, ladder).value;
                robust = std::max(robust, std::abs(doubled - fk.value) / fk.err_est);
            }
    add(list, "oracle", "[a, {a+, a}] = 2a residual", trilinear, 1e-12);
    add(list, "oracle", "coherent eigenvector residual", eigen, 1e-8);
    add(list, "oracle", "thermal trace |diff| / bound", bound, 1.0);
    add(list, "oracle", "doubled cutoff shift / bound", robust, 1.0);
}

} // namespace

const std::vector<std::string>& verify_suite_names()
{
    static const std::vector<std::string> names{"algebra", "special-fn", "coherent", "hbt", "oracle"};
    return names;
}

std::vector<VerifyCheck> run_verify(const VerifyOptions& options)
{
    const auto selected = [&](const std::string& name) {
        return options.suites.empty()
               || std::find(options.suites.begin(), options.suites.end(), name) != options.suites.end();
    };
    special::QuadratureSpec spec;
    spec.rel_tol = options.rel_tol;
    spec.validate();
    fock::LadderUpFn ladder = fock::default_ladder();
    if (options.wrong_ladder)
        ladder = [](Occupation n, ParaOrder p) {
            const double c = algebra::ladder_up_coeff(n, p);
            return n.value() == 1 ? 1.01 * c : c;
        };
    CheckList list;
    if (selected("algebra"))
        verify_algebra(list);
    if (selected("special-fn"))
        verify_special(list, spec);
    if (selected("coherent"))
        verify_coherent(list, spec);
    if (selected("hbt"))
        verify_hbt(list, spec, ladder);
    if (selected("oracle"))
        verify_oracle(list, ladder);
    return list;
}

// ---------------------------------------------------------------------------
// command line

namespace {

struct Globals {
    std::string out_path;
    std::string format;
    double tol = 1e-10;
    double c_bar = 1.0;
};

std::string format_or(const Globals& g, const char* fallback)
{
    return g.format.empty() ? fallback : g.format;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed, const char* command)
{
    for (const char* a : allowed)
        if (format == a)
            return;
    throw std::invalid_argument(std::string(command) + ": unsupported --format " + format);
}

int cmd_pfact(long n, int p, bool parafermion, const Globals& g, std::ostream& out)
{
    const std::string format = format_or(g, "csv");
    require_format(format, {"csv", "json"}, "pfact");
    const algebra::BigInt value = parafermion ? algebra::pf_factorial(Occupation{n}, ParaOrder{p})
                                              : algebra::p_factorial(Occupation{n}, ParaOrder{p});
    if (format == "json")
        out << json{{"n", n}, {"p", p}, {"parafermion", parafermion}, {"value", value.str()}}.dump() << '\n';
    else
        out << value.str() << '\n';
    return kExitOk;
}

struct TransitionArgs {
    long n = 0;
    int p = 1;
    double A = 1.0;
    bool absorption = false;
    bool parafermion = false;
    bool midband = false;
};

int cmd_transition(const TransitionArgs& t, const Globals& g, std::ostream& out)
{
    const std::string format = format_or(g, "csv");
    require_format(format, {"csv", "json"}, "transition");
    double value = 0.0;
    std::string kind;
    if (t.midband) {
        value = algebra::pf_midband_ratio(ParaOrder{t.p});
        kind = "parafermion-midband-ratio";
    } else if (t.parafermion) {
        value = algebra::pf_transition_ratio(Occupation{t.n}, ParaOrder{t.p});
        kind = "parafermion-emission-absorption-ratio";
    } else {
        const algebra::TransitionSpec spec{algebra::Species::kParaboson, Occupation{t.n},
                                           t.absorption ? algebra::Direction::kAbsorption
                                                        : algebra::Direction::kEmission};
        value = algebra::pb_transition_prob(spec, ParaOrder{t.p}, t.A);
        kind = t.absorption ? "paraboson-absorption" : "paraboson-emission";
    }
    if (format == "json")
        out << json{{"kind", kind}, {"n", t.n}, {"p", t.p}, {"value", value}}.dump() << '\n';
    else
        out << num(value) << '\n';
    return kExitOk;
}

struct DistArgs {
    double x = 0.0;
    int p = 1;
    bool gaussian = false;
    bool correction = false;
    bool large_x_moments = false;
};

int cmd_dist(const DistArgs& d, const Globals& g, std::ostream& out)
{
    const std::string format = format_or(g, "csv");
    require_format(format, {"csv", "json"}, "dist");
    const ParaOrder p{d.p};
    const std::vector<double> table = d.x == 0.0 ? std::vector<double>{1.0} : coherent::p_poisson_table(d.x, p);
    const coherent::MomentSource source =
        d.large_x_moments ? coherent::MomentSource::kLargeX : coherent::MomentSource::kExact;
    json rows = json::array();
    if (format == "csv") {
        out << "n,pmf";
        if (d.gaussian)
            out << ",gaussian";
        if (d.correction)
            out << ",corrected";
        out << '\n';
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        const long n = static_cast<long>(i);
        const double gauss = d.gaussian ? coherent::p_gaussian_pdf(static_cast<double>(n), d.x, p, source) : 0.0;
        const double corr = d.correction ? coherent::p_gaussian_correction(Occupation{n}, d.x, p) : 0.0;
        if (format == "csv") {
            out << n << ',' << num(table[i]);
            if (d.gaussian)
                out << ',' << num(gauss);
            if (d.correction)
                out << ',' << num(corr);
            out << '\n';
        } else {
            json row = {{"n", n}, {"pmf", table[i]}};
            if (d.gaussian)
                row["gaussian"] = gauss;
            if (d.correction)
                row["corrected"] = corr;
            rows.push_back(row);
        }
    }
    if (format == "json")
        out << json{{"x", d.x}, {"p", d.p}, {"rows", rows}}.dump(2) << '\n';
    return kExitOk;
}

std::complex<double> to_complex(const std::vector<double>& v)
{
    return {v.at(0), v.size() > 1 ? v[1] : 0.0};
}

int cmd_coherent(const std::vector<double>& alpha_in, const std::vector<double>& beta_in, int p_in, const Globals& g,
                 std::ostream& out)
{
    const std::string format = format_or(g, "csv");
    require_format(format, {"csv", "json"}, "coherent");
    const ParaOrder p{p_in};
    const coherent::CoherentAmplitude alpha = to_complex(alpha_in);
    const double x = alpha.intensity();
    const coherent::ModeSplit split = coherent::mode_split(x, p);
    const coherent::MomentPair m = coherent::coherent_moments(x, p);
    const coherent::MomentPair lx = coherent::coherent_moments_large_x(x, p);
    const coherent::ParityNorms norms = coherent::parity_component_norms(alpha, p);
    std::vector<std::pair<std::string, double>> fields{
        {"x", x},
        {"p_even", split.p_even},
        {"p_odd", split.p_odd},
        {"d", split.d},
        {"mean", m.mean},
        {"variance", m.variance},
        {"mean_large_x", lx.mean},
        {"variance_large_x", lx.variance},
        {"even_norm", norms.even_norm},
        {"odd_norm", norms.odd_norm},
    };
    if (!beta_in.empty()) {
        const std::complex<double> ov = coherent::overlap(alpha, to_complex(beta_in), p);
        fields.emplace_back("overlap_re", ov.real());
        fields.emplace_back("overlap_im", ov.imag());
        fields.emplace_back("overlap_abs", std::abs(ov));
    }
    if (format == "json") {
        json j = json::object();
        for (const auto& [k, v] : fields)
            j[k] = v;
        out << j.dump(2) << '\n';
    } else {
        out << "quantity,value\n";
        for (const auto& [k, v] : fields)
            out << k << ',' << num(v) << '\n';
    }
    return kExitOk;
}

struct HbtArgs {
    std::vector<int> p_list;
    std::vector<double> mean_list;
    std::vector<double> mean_log;
    std::vector<int> orders{1, 2, 3, 4};
    std::vector<std::string> methods{"all"};
    unsigned threads = 0;
};

int cmd_hbt(const HbtArgs& h, const Globals& g, std::ostream& out, std::ostream& err)
{
    const std::string format = format_or(g, "csv");
    require_format(format, {"csv", "json"}, "hbt");
    SweepConfig config;
    config.p_list = h.p_list;
    config.orders = h.orders;
    config.c_bar = g.c_bar;
    config.rel_tol = g.tol;
    config.threads = h.threads;
    std::vector<double> means = h.mean_list;
    if (!h.mean_log.empty()) {
        const double lo = h.mean_log[0];
        const double hi = h.mean_log[1];
        const int count = static_cast<int>(h.mean_log[2]);
        if (!(lo > 0.0 && hi >= lo && count >= 1 && h.mean_log[2] == count))
            throw std::invalid_argument("hbt: --mean-log expects START,STOP,COUNT with 0 < START <= STOP, COUNT >= 1");
        for (int i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            means.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
        }
    }
    if (means.empty())
        throw std::invalid_argument("hbt: give --mean or --mean-log");
    for (double& mean : means) {
        if (mean < 0.0 || !std::isfinite(mean))
            throw std::invalid_argument("hbt: mean occupation must be finite and >= 0");
        if (mean < kMinMean) {
            err << "warning: mean " << num(mean) << " clamped to " << num(kMinMean) << '\n';
            mean = kMinMean;
        }
    }
    config.mean_list = means;
    for (const std::string& name : h.methods) {
        if (name == "all") {
            config.methods.insert(config.methods.end(), {hbt::Method::kClosedForm, hbt::Method::kHypergeometric,
                                                         hbt::Method::kQuadrature, hbt::Method::kFockOracle});
        } else {
            config.methods.push_back(hbt::method_from_string(name));
        }
    }
    for (int order : config.orders)
        if (order < 1)
            throw std::invalid_argument("hbt: orders must be >= 1");
    for (int p : config.p_list)
        (void)ParaOrder{p};

    const std::vector<SweepRow> rows = run_sweep(config);
    if (format == "json")
        write_sweep_json(rows, out);
    else
        write_sweep_csv(rows, out);
    const bool any_failed = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed(); });
    if (config.methods.size() > 1)
        err << "max pairwise relative spread between methods: " << num(max_pairwise_spread(rows)) << '\n';
    if (any_failed)
        err << "warning: some points failed; see the status column\n";
    return any_failed ? kExitPartialFailure : kExitOk;
}

int cmd_verify(const VerifyOptions& options, const Globals& g, std::ostream& out)
{
    const std::string format = format_or(g, "table");
    require_format(format, {"table", "csv", "json"}, "verify");
    const std::vector<VerifyCheck> checks = run_verify(options);
    bool all_pass = true;
    json j = json::array();
    if (format == "csv")
        out << "suite,check,measured,tolerance,status\n";
    for (const VerifyCheck& c : checks) {
        all_pass = all_pass && c.pass;
        const char* status = c.pass ? "PASS" : "FAIL";
        if (format == "csv") {
            out << c.suite << ',' << c.name << ',' << num(c.measured) << ',' << num(c.tolerance) << ',' << status
                << '\n';
        } else if (format == "json") {
            j.push_back({{"suite", c.suite},
                         {"check", c.name},
                         {"measured", c.measured},
                         {"tolerance", c.tolerance},
                         {"pass", c.pass}});
        } else {
            char line[200];
            std::snprintf(line, sizeof line, "%-4s  %-10s  %-36s  %10.3e  <= %9.3e\n", status, c.suite.c_str(),
                          c.name.c_str(), c.measured, c.tolerance);
            out << line;
        }
    }
    if (format == "json")
        out << j.dump(2) << '\n';
    else if (format == "table")
        out << (all_pass ? "all checks passed" : "verification FAILED") << '\n';
    return all_pass ? kExitOk : kExitVerifyFailed;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Paraboson and parafermion statistics: tables, sweeps and self-checks", "parastat"};
    app.set_config("--config", "", "Key-value file mirroring the flags (INI/TOML); flags win over the file");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--out", g.out_path, "Write output to FILE instead of stdout");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "table"}));
    app.add_option("--tol", g.tol, "Relative tolerance for quadrature routes")->check(CLI::PositiveNumber);
    app.add_option("--cbar", g.c_bar, "Detector constant c-bar multiplying each G(n)")->check(CLI::PositiveNumber);

    long pf_n = 0;
    int pf_p = 1;
    bool pf_fermion = false;
    CLI::App* pfact = app.add_subcommand("pfact", "Exact p-factorial (n)_p! or parafermion {n}_p!");
    pfact->add_option("n", pf_n, "Occupation number")->required()->check(CLI::NonNegativeNumber);
    pfact->add_option("--p", pf_p, "Order p")->check(CLI::PositiveNumber);
    pfact->add_flag("--parafermion", pf_fermion, "Use the bi-factorial n! p!/(p-n)!");

    TransitionArgs tr;
    CLI::App* transition = app.add_subcommand("transition", "Single-quantum transition probabilities and ratios");
    transition->add_option("--n", tr.n, "Initial occupation")->check(CLI::NonNegativeNumber);
    transition->add_option("--p", tr.p, "Order p")->check(CLI::PositiveNumber);
    transition->add_option("--A", tr.A, "Dynamics-dependent rate constant")->check(CLI::PositiveNumber);
    transition->add_flag("--absorption", tr.absorption, "Absorption instead of emission");
    transition->add_flag("--parafermion", tr.parafermion, "Parafermion emission/absorption ratio");
    transition->add_flag("--midband", tr.midband, "Parafermion mid-band over end-of-band ratio");

    DistArgs di;
    CLI::App* dist = app.add_subcommand("dist", "p-Poisson number distribution of a coherent state");
    dist->add_option("--x", di.x, "Intensity |alpha|^2")->required()->check(CLI::NonNegativeNumber);
    dist->add_option("--p", di.p, "Order p")->check(CLI::PositiveNumber);
    dist->add_flag("--gaussian", di.gaussian, "Add the p-Gaussian density column");
    dist->add_flag("--correction", di.correction, "Add the corrected (Stirling series) density column; x >= 10");
    dist->add_flag("--large-x-moments", di.large_x_moments, "Gaussian column uses the large-x mean and variance");

    std::vector<double> co_alpha;
    std::vector<double> co_beta;
    int co_p = 1;
    CLI::App* coh = app.add_subcommand("coherent", "Coherent-state statistics and overlaps");
    coh->add_option("--alpha", co_alpha, "Amplitude RE[,IM]")->required()->expected(1, 2)->delimiter(',');
    coh->add_option("--beta", co_beta, "Second amplitude RE[,IM] for the overlap")->expected(1, 2)->delimiter(',');
    coh->add_option("--p", co_p, "Order p")->check(CLI::PositiveNumber);

    HbtArgs hb;
    CLI::App* hbt_cmd = app.add_subcommand("hbt", "Sweep of thermal correlations G(n)(0) over p, mean and order");
    hbt_cmd->add_option("--p", hb.p_list, "Orders p (comma separated)")->required()->delimiter(',');
    hbt_cmd->add_option("--mean", hb.mean_list, "Mean occupations (comma separated)")->delimiter(',');
    hbt_cmd->add_option("--mean-log", hb.mean_log, "Log-spaced means START,STOP,COUNT")->expected(3)->delimiter(',');
    hbt_cmd->add_option("--orders", hb.orders, "Correlation orders (comma separated)")->capture_default_str()->delimiter(',');
    hbt_cmd->add_option("--methods", hb.methods, "closed-form, hypergeometric, quadrature, fock-oracle or all")
        ->capture_default_str()
        ->delimiter(',')
        ->check(CLI::IsMember({"all", "closed-form", "hypergeometric", "quadrature", "fock-oracle"}));
    hbt_cmd->add_option("--threads", hb.threads, "Worker threads (0: all cores)");

    VerifyOptions vo;
    std::string fault;
    CLI::App* verify = app.add_subcommand("verify", "Run the invariant suites and print a pass/fail table");
    verify->add_option("--suite", vo.suites, "Suites to run (default all)")
        ->delimiter(',')
        ->check(CLI::IsMember(verify_suite_names()));
    verify->add_option("--inject-fault", fault, "Negative control")->group("")->check(CLI::IsMember({"wrong-ladder"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int cli_code = app.exit(e, out, err);
        // help and version print and succeed; anything else is bad input
        return cli_code == 0 ? kExitOk : kExitBadInput;
    }

    std::ostringstream buffer;
    int code = kExitOk;
    try {
        if (*pfact)
            code = cmd_pfact(pf_n, pf_p, pf_fermion, g, buffer);
        else if (*transition)
            code = cmd_transition(tr, g, buffer);
        else if (*dist)
            code = cmd_dist(di, g, buffer);
        else if (*coh)
            code = cmd_coherent(co_alpha, co_beta, co_p, g, buffer);
        else if (*hbt_cmd)
            code = cmd_hbt(hb, g, buffer, err);
        else if (*verify) {
            vo.rel_tol = g.tol;
            vo.wrong_ladder = fault == "wrong-ladder";
            code = cmd_verify(vo, g, buffer);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }

    if (g.out_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(g.out_path, std::ios::binary);
        file << buffer.str();
        if (!file) {
            err << "error: cannot write " << g.out_path << '\n';
            return kExitBadInput;
        }
    }
    return code;
}

} // namespace parastat::cli
