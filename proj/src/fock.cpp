#include "pathspace/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>

#include "pathspace/parallel.hpp"

namespace pathspace {

ExpSpanVector::ExpSpanVector(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (std::size_t k = 1; k < terms_.size(); ++k)
        if (terms_[k].f.cells() != terms_[0].f.cells() || terms_[k].f.dim() != terms_[0].f.dim())
            throw Error("ExpSpanVector: terms live in different one-particle spaces");
}

ExpSpanVector ExpSpanVector::exp(const StepPath& f, cplx lambda) {
    return ExpSpanVector({Term{lambda, f}});
}

ExpSpanVector& ExpSpanVector::add(const ExpSpanVector& other, cplx scale) {
    for (const auto& t : other.terms_) {
        if (!terms_.empty() && (t.f.cells() != terms_[0].f.cells() || t.f.dim() != terms_[0].f.dim()))
            throw Error("ExpSpanVector: terms live in different one-particle spaces");
        terms_.push_back(Term{scale * t.lambda, t.f});
    }
    return *this;
}

ExpSpanVector ExpSpanVector::scaled(cplx scale) const {
    ExpSpanVector out = *this;
    for (auto& t : out.terms_)
        t.lambda *= scale;
    return out;
}

cplx exp_inner(const ExpSpanVector& u, const ExpSpanVector& v) {
    cplx s = 0.0;
    for (const auto& a : u.terms())
        for (const auto& b : v.terms())
            s += a.lambda * std::conj(b.lambda) * std::exp(l2_inner(a.f, b.f));
    return s;
}

double exp_norm_sq(const ExpSpanVector& u) { return exp_inner(u, u).real(); }

ExpSpanVector exp_multiply(const ExpSpanVector& u, const ExpSpanVector& v) {
    std::vector<ExpSpanVector::Term> out;
    out.reserve(u.terms().size() * v.terms().size());
    for (const auto& a : u.terms())
        for (const auto& b : v.terms())
            out.push_back({a.lambda * b.lambda, concat_box(a.f, b.f)});
    return ExpSpanVector(std::move(out));
}

Matrix exp_gram(std::span<const StepPath> fs) {
    const auto n = static_cast<Eigen::Index>(fs.size());
    Matrix g(n, n);
    parallel_for(fs.size() * fs.size(), [&](std::size_t idx) {
        const std::size_t i = idx / fs.size(), j = idx % fs.size();
        g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::exp(l2_inner(fs[i], fs[j]));
    });
    return g;
}

namespace {

void enumerate(int d, int n, int start, std::vector<int>& counts, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(counts);
        return;
    }
    for (int i = start; i < d; ++i) {
        ++counts[static_cast<std::size_t>(i)];
        enumerate(d, n - 1, i, counts, out);
        --counts[static_cast<std::size_t>(i)];
    }
}

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

}  // namespace

const std::vector<std::vector<int>>& multisets(int d, int n) {
    if (d < 1 || n < 0)
        throw Error("multisets: need d >= 1 and n >= 0");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({d, n});
    if (it != cache.end())
        return it->second;
    std::vector<std::vector<int>> out;
    std::vector<int> counts(static_cast<std::size_t>(d), 0);
    enumerate(d, n, 0, counts, out);
    return cache.emplace(std::make_pair(d, n), std::move(out)).first->second;
}

TruncFockVector::TruncFockVector(int d, int max_degree) : d_(d), n_max_(max_degree) {
    if (d < 1 || max_degree < 0)
        throw Error("TruncFockVector: need d >= 1 and N >= 0");
    comps_.resize(static_cast<std::size_t>(max_degree) + 1);
    for (int n = 0; n <= max_degree; ++n)
        comps_[static_cast<std::size_t>(n)].assign(multisets(d, n).size(), 0.0);
}

TruncFockVector TruncFockVector::vacuum(int d, int max_degree) {
    TruncFockVector v(d, max_degree);
    v.comps_[0][0] = 1.0;
    return v;
}

std::span<const cplx> TruncFockVector::degree(int n) const {
    if (n < 0 || n > n_max_)
        throw Error("TruncFockVector: degree out of range");
    return comps_[static_cast<std::size_t>(n)];
}

std::span<cplx> TruncFockVector::degree(int n) {
    if (n < 0 || n > n_max_)
        throw Error("TruncFockVector: degree out of range");
    return comps_[static_cast<std::size_t>(n)];
}

namespace {

std::size_t locate(int d, const std::vector<int>& counts) {
    if (static_cast<int>(counts.size()) != d)
        throw Error("TruncFockVector: multiset has the wrong dimension");
    int n = 0;
    for (int c : counts) {
        if (c < 0)
            throw Error("TruncFockVector: negative multiplicity");
        n += c;
    }
    const auto& b = multisets(d, n);
    auto it = std::lower_bound(b.begin(), b.end(), counts, std::greater<>());
    if (it == b.end() || *it != counts)
        throw Error("TruncFockVector: multiset not found");
    return static_cast<std::size_t>(it - b.begin());
}

int total(const std::vector<int>& counts) {
    int n = 0;
    for (int c : counts)
        n += c;
    return n;
}

}  // namespace

cplx TruncFockVector::coeff(const std::vector<int>& counts) const {
    const int n = total(counts);
    if (n > n_max_)
        return 0.0;
    return comps_[static_cast<std::size_t>(n)][locate(d_, counts)];
}

void TruncFockVector::set(const std::vector<int>& counts, cplx value) {
    const int n = total(counts);
    if (n > n_max_)
        throw Error("TruncFockVector: degree exceeds the truncation order");
    comps_[static_cast<std::size_t>(n)][locate(d_, counts)] = value;
}

double TruncFockVector::degree_norm_sq(int n) const {
    double s = 0.0;
    for (cplx c : degree(n))
        s += std::norm(c);
    return s;
}

double TruncFockVector::norm_sq() const {
    double s = 0.0;
    for (int n = 0; n <= n_max_; ++n)
        s += degree_norm_sq(n);
    return s;
}

TruncFockVector& TruncFockVector::axpy(cplx scale, const TruncFockVector& other) {
    if (other.d_ != d_ || other.n_max_ != n_max_)
        throw Error("TruncFockVector: shape mismatch");
    for (std::size_t n = 0; n < comps_.size(); ++n)
        for (std::size_t i = 0; i < comps_[n].size(); ++i)
            comps_[n][i] += scale * other.comps_[n][i];
    return *this;
}

cplx trunc_inner(const TruncFockVector& a, const TruncFockVector& b) {
    if (a.dim() != b.dim())
        throw Error("trunc_inner: dimension mismatch");
    cplx s = 0.0;
    for (int n = 0; n <= std::min(a.max_degree(), b.max_degree()); ++n) {
        auto x = a.degree(n), y = b.degree(n);
        for (std::size_t i = 0; i < x.size(); ++i)
            s += x[i] * std::conj(y[i]);
    }
    return s;
}

namespace {

// prod xi_i^{m_i} / sqrt(prod m_i!)
cplx monomial(std::span<const cplx> xi, const std::vector<int>& counts) {
    cplx p = 1.0;
    double lf = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        for (int r = 0; r < counts[i]; ++r)
            p *= xi[i];
        lf += log_factorial(counts[i]);
    }
    return p * std::exp(-0.5 * lf);
}

double exp_tail(double r2, int n_max) {
    // sum_{n > N} r2^n / n!, summed directly to avoid cancellation.
    double term = 1.0;
    for (int n = 1; n <= n_max; ++n)
        term *= r2 / n;
    double s = 0.0;
    for (int n = n_max + 1; n < n_max + 1000; ++n) {
        term *= r2 / n;
        s += term;
        if (term <= s * 1e-17)
            break;
    }
    return s;
}

}  // namespace

TruncFockVector trunc_exp(std::span<const cplx> xi, int max_degree) {
    const int d = static_cast<int>(xi.size());
    TruncFockVector v(d, max_degree);
    for (int n = 0; n <= max_degree; ++n) {
        const auto& b = multisets(d, n);
        auto out = v.degree(n);
        parallel_for(b.size(), [&](std::size_t i) { out[i] = monomial(xi, b[i]); });
    }
    double r2 = 0.0;
    for (cplx c : xi)
        r2 += std::norm(c);
    v.set_tail_bound(exp_tail(r2, max_degree));
    return v;
}

std::vector<cplx> orthonormal_coords(const StepPath& f) {
    const double s = std::sqrt(f.grid().step());
    std::vector<cplx> out(f.values().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = s * f.values()[i];
    return out;
}

TruncFockVector to_trunc(const ExpSpanVector& v, int max_degree) {
    if (v.empty())
        throw Error("to_trunc: empty span");
    const int d = static_cast<int>(v.terms()[0].f.values().size());
    TruncFockVector out(d, max_degree);
    double tail = 0.0;
    for (const auto& t : v.terms()) {
        TruncFockVector e = trunc_exp(orthonormal_coords(t.f), max_degree);
        out.axpy(t.lambda, e);
        tail += std::abs(t.lambda) * std::sqrt(e.tail_bound());
    }
    out.set_tail_bound(tail * tail);
    return out;
}

cplx pair_entire(const TruncFockVector& zeta, std::span<const cplx> xi) {
    if (static_cast<int>(xi.size()) != zeta.dim())
        throw Error("pair_entire: dimension mismatch");
    cplx s = 0.0;
    for (int n = 0; n <= zeta.max_degree(); ++n) {
        const auto& b = zeta.basis(n);
        auto z = zeta.degree(n);
        for (std::size_t i = 0; i < b.size(); ++i)
            if (z[i] != 0.0)
                s += monomial(xi, b[i]) * std::conj(z[i]);
    }
    return s;
}

double strong_span_witness(std::span<const std::vector<cplx>> samples, const TruncFockVector& zeta) {
    double m = 0.0;
    for (const auto& s : samples)
        m = std::max(m, std::abs(pair_entire(zeta, s)));
    return m;
}

ExpSpanVector weyl_apply(const StepPath& zeta, const ExpSpanVector& v) {
    const double z2 = l2_norm_sq(zeta);
    std::vector<ExpSpanVector::Term> out;
    out.reserve(v.terms().size());
    for (const auto& t : v.terms()) {
        if (t.f.cells() != zeta.cells() || t.f.dim() != zeta.dim())
            throw Error("weyl_apply: zeta and the span live in different spaces");
        out.push_back({t.lambda * std::exp(-0.5 * z2 - l2_inner(t.f, zeta)), axpy(zeta, 1.0, t.f)});
    }
    return ExpSpanVector(std::move(out));
}

}  // namespace pathspace
