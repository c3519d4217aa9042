#include "spinclock/analytic.hpp"

#include <cmath>
#include <set>

#include "spinclock/liouvillian.hpp"

namespace spinclock {

namespace {
const Complex kI(0.0, 1.0);

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

void require_dissipative(const ModelParams& p, const char* who) {
    p.validate();
    if (!(p.epsilon > 0.0))
        throw DomainError(std::string(who) + ": requires epsilon > 0 (epsilon = 0 is the ballistic path)");
}

const std::set<std::pair<int, int>>& populated_pattern() {
    static const std::set<std::pair<int, int>> pattern = [] {
        std::set<std::pair<int, int>> s;
        for (int j = 1; j <= 8; ++j)
            s.insert({j, j});
        for (auto [j, k] : {std::pair{2, 3}, {1, 5}, {2, 6}, {3, 7}, {4, 8}, {2, 7}, {3, 6}}) {
            s.insert({j, k});
            s.insert({k, j});
        }
        s.insert({6, 7});
        s.insert({7, 6});
        return s;
    }();
    return pattern;
}

ComplexMatrix densify(const SparseEntries& entries) {
    ComplexMatrix out = ComplexMatrix::Zero(kDim, kDim);
    for (const auto& [jk, v] : entries)
        out(jk.first - 1, jk.second - 1) = v;
    return out;
}
} // namespace

ComplexMatrix AnalyticState::dense() const { return densify(entries); }

void AnalyticState::validate(double herm_tol, double trace_tol) const {
    Complex trace = 0.0;
    for (const auto& [jk, v] : entries) {
        if (!populated_pattern().count(jk))
            throw NotAState("analytic state populates an entry outside the closed-form pattern");
        if (jk.first == jk.second)
            trace += v;
        const auto partner = entries.find({jk.second, jk.first});
        if (partner == entries.end() || std::abs(partner->second - std::conj(v)) > herm_tol)
            throw NotHermitian("analytic state is not Hermitian as a sparse map");
    }
    if (std::abs(trace - Complex(1.0)) > trace_tol)
        throw NotAState("analytic state diagonal does not sum to 1");
}

ComplexMatrix NessState::dense() const { return densify(entries); }

BallisticObservables ballistic_observables(double theta, double t) {
    if (!std::isfinite(theta) || !std::isfinite(t))
        throw DomainError("ballistic_observables: theta and t must be finite");
    BallisticObservables b;
    const double s2 = std::sin(t / 2) * std::sin(t / 2);
    b.n3L = std::cos(t / 2) * std::cos(t / 2);
    b.n3L1 = s2;
    b.m1 = 0.0;
    b.m2 = s2 * std::sin(theta);
    b.m3 = s2 * (1.0 - std::cos(theta)) - 1.0;
    const double r = std::min(1.0, std::hypot(b.m2, b.m3));
    b.s_reg = -xlogx((1.0 + r) / 2.0) - xlogx((1.0 - r) / 2.0);
    b.chirality = 2.0 * std::cos(theta / 2) * std::sin(t);
    return b;
}

SparseEntries system_pp(const ModelParams& p, double t) {
    require_dissipative(p, "system_pp");
    const double e = p.epsilon, mu = p.mu;
    const double c = 1 + 4 * e * e;
    const Complex ep = std::exp(t * (kI - 2 * e));
    const Complex em = std::exp(t * (-kI - 2 * e));
    const double e4 = std::exp(-4 * t * e);

    const Complex r11 = (1 + 4 * e * e * (1 - mu * mu)) / (8 * c) +
                        ep * e * mu * (2 * e * (1 + mu) - kI) / (4 * c) +
                        em * e * mu * (2 * e * (1 + mu) + kI) / (4 * c) -
                        e4 * (1 + 4 * e * e * (1 + mu) * (1 + mu)) / (8 * c);
    const Complex r22 = (1 + 4 * e * e * (1 - mu) * (1 - mu)) / (8 * c) +
                        ep * (1.0 + 4.0 * kI * e * mu + 4 * e * e * (1 - mu * mu)) / (8 * c) +
                        em * (1.0 - 4.0 * kI * e * mu + 4 * e * e * (1 - mu * mu)) / (8 * c) +
                        e4 * (1 + 4 * e * e * (1 + mu) * (1 + mu)) / (8 * c);
    const Complex r33 = (1 + 4 * e * e * (1 + mu) * (1 + mu)) / (8 * c) * (1.0 - ep - em + e4);
    const Complex r23 = std::exp(kI * p.theta / 2.0) *
                        (kI * e * mu / (2 * c) +
                         ep * (kI - 2 * e * (1 + mu)) / (8.0 * (2 * e - kI)) +
                         em * (kI + 2 * e * (1 + mu)) / (8.0 * (2 * e + kI)));

    SparseEntries s;
    s[{1, 1}] = r11.real();
    s[{2, 2}] = r22.real();
    s[{3, 3}] = r33.real();
    s[{4, 4}] = 0.5 - (r11.real() + r22.real() + r33.real());
    s[{2, 3}] = r23;
    s[{3, 2}] = std::conj(r23);
    return s;
}

SparseEntries system_mm(const ModelParams& p, double t) {
    const SparseEntries pp = system_pp(p, t);
    const Complex phase = std::exp(-kI * p.theta);
    SparseEntries s;
    for (int j = 1; j <= 4; ++j)
        s[{j + 4, j + 4}] = pp.at({j, j});
    s[{6, 7}] = phase * pp.at({2, 3});
    s[{7, 6}] = std::conj(s[{6, 7}]);
    return s;
}

SparseEntries system_pm(const ModelParams& p, double t, const std::array<Complex, 4>& w) {
    require_dissipative(p, "system_pm");
    const double e = p.epsilon, mu = p.mu, th = p.theta;
    const Complex eith = std::exp(kI * th);
    const Complex emth = std::exp(-kI * th);

    Complex r15 = 0, r26 = 0, r37 = 0, r27 = 0;
    for (int j = 0; j < 4; ++j) {
        Complex denom = 1.0;
        for (int k = 0; k < 4; ++k)
            if (k != j)
                denom *= w[j] - w[k];
        const Complex ew = std::exp(w[j] * t) / denom;
        r15 += ew * ((mu - 1) * emth +
                     (mu + 1) * (-1.0 + 8 * e * e * (mu - 1) + 4 * e * (mu - 2) * w[j] -
                                 2.0 * w[j] * w[j]));
        r26 += ew * (2 * e + w[j]) *
               (1.0 + 4 * e * e * (mu - 1) * (mu - 1) - 4 * e * (mu - 2) * w[j] +
                2.0 * w[j] * w[j]);
        r37 += ew * (2 * e + w[j]);
        r27 += ew * (-2 * e * e * (eith * (mu + 1.0) * (mu + 1.0) - (mu - 1.0) * (mu - 1.0)) -
                     2 * e * (mu - 2) * w[j] + w[j] * w[j]);
    }
    r15 *= e / 4.0;
    r26 *= -0.25;
    r37 *= -emth * (1.0 + 4.0 * eith * e * e * (1 + mu) * (1 + mu)) / 4.0;
    r27 *= kI * std::exp(-kI * th / 2.0) / 4.0;

    SparseEntries s;
    s[{1, 5}] = r15;
    s[{4, 8}] = r15;
    s[{2, 6}] = r26;
    s[{3, 7}] = r37;
    s[{2, 7}] = r27;
    s[{3, 6}] = -r27;
    return s;
}

SparseEntries system_pm(const ModelParams& p, double t) {
    require_dissipative(p, "system_pm");
    const OmegaSet ws = omega_eigenvalues(p);
    if (ws.degenerate)
        throw DegenerateOmegas("system_pm: slow eigenvalues closer than 1e-6; use numerical propagation");
    return system_pm(p, t, ws.omegas);
}

namespace {
AnalyticState merge_sectors(const ModelParams& p, double t, SparseEntries pm) {
    AnalyticState st;
    st.t = t;
    st.params = p;
    for (const auto& [jk, v] : system_pp(p, t))
        st.entries[jk] = v;
    for (const auto& [jk, v] : system_mm(p, t))
        st.entries[jk] = v;
    for (const auto& [jk, v] : pm) {
        st.entries[jk] = v;
        st.entries[{jk.second, jk.first}] = std::conj(v);
    }
    return st;
}
} // namespace

AnalyticState assemble_analytic_state(const ModelParams& p, double t) {
    return merge_sectors(p, t, system_pm(p, t));
}

AnalyticState assemble_analytic_state(const ModelParams& p, double t,
                                      const std::array<Complex, 4>& omegas) {
    return merge_sectors(p, t, system_pm(p, t, omegas));
}

NessState ness(const ModelParams& p) {
    require_dissipative(p, "ness");
    const double e = p.epsilon, mu = p.mu;
    const double c = 1 + 4 * e * e;
    const double d1 = (1 + 4 * e * e * (1 - mu * mu)) / (8 * c);
    const double d2 = (1 + 4 * e * e * (1 - mu) * (1 - mu)) / (8 * c);
    const double d3 = (1 + 4 * e * e * (1 + mu) * (1 + mu)) / (8 * c);
    const Complex r23 = kI * e * mu * std::exp(kI * p.theta / 2.0) / (2 * c);

    NessState n;
    n.params = p;
    for (int j : {1, 4, 5, 8})
        n.entries[{j, j}] = d1;
    for (int j : {2, 6})
        n.entries[{j, j}] = d2;
    for (int j : {3, 7})
        n.entries[{j, j}] = d3;
    n.entries[{2, 3}] = r23;
    n.entries[{3, 2}] = std::conj(r23);
    n.entries[{7, 6}] = -r23;
    n.entries[{6, 7}] = -std::conj(r23);

    const double sc = std::sqrt(c);
    n.entropy = std::log(8.0) - std::log(1 - 4 * e * e * mu * mu / c) -
                2 * e * mu * std::atanh(4 * e * mu * sc / (1 + 4 * e * e * (1 + mu * mu))) / sc;
    return n;
}

AsymptoticEntropies asymptotic_entropies(const ModelParams& p) {
    require_dissipative(p, "asymptotic_entropies");
    AsymptoticEntropies a;
    a.s_reg_inf = std::log(2.0);
    a.s_total_series = std::log(8.0) - 4 * p.epsilon * p.epsilon * p.mu * p.mu;
    a.s_cursor_series =
        std::log(4.0) - 2 * p.epsilon * p.epsilon * p.mu * p.mu * (std::cos(p.theta) + 1.0);
    return a;
}

} // namespace spinclock
