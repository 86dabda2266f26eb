#include "wittchar/padic.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "wittchar/errors.hpp"
#include "wittchar/fp_poly.hpp"
#include "wittchar/linalg.hpp"

namespace wittchar {

namespace {

constexpr u64 kLazyBound = u64{1} << 26;

std::vector<u64> raw_pow(const Context& ctx, std::vector<u64> base, u64 e) {
    const int n = ctx.degree();
    std::vector<u64> r(n, 0), tmp(n);
    r[0] = 1 % ctx.modulus_value();
    while (e) {
        if (e & 1) {
            ctx.mul(r.data(), base.data(), tmp.data());
            r.swap(tmp);
        }
        e >>= 1;
        if (e) {
            ctx.mul(base.data(), base.data(), tmp.data());
            base.swap(tmp);
        }
    }
    return r;
}

// Evaluates the context's modulus (or its derivative) at y.
std::vector<u64> eval_modulus(const Context& ctx, const std::vector<u64>& poly,
                              const std::vector<u64>& y) {
    const int n = ctx.degree();
    const u64 m = ctx.modulus_value();
    std::vector<u64> acc(n, 0), tmp(n);
    for (int k = static_cast<int>(poly.size()) - 1; k >= 0; --k) {
        ctx.mul(acc.data(), y.data(), tmp.data());
        acc.swap(tmp);
        acc[0] = add_mod(acc[0], poly[k] % m, m);
    }
    return acc;
}

std::vector<u64> derivative(const std::vector<u64>& f, u64 m) {
    std::vector<u64> d;
    for (size_t k = 1; k < f.size(); ++k) d.push_back(mul_mod(f[k] % m, k % m, m));
    return d;
}

// Newton iteration for a root of `poly` from an approximation correct mod p.
std::vector<u64> hensel_root(const Context& ctx, const std::vector<u64>& poly, std::vector<u64> y) {
    const int n = ctx.degree();
    const u64 m = ctx.modulus_value();
    const auto dpoly = derivative(poly, m);
    std::vector<u64> inv(n), step(n);
    for (int iter = 0; iter < 64; ++iter) {
        auto f = eval_modulus(ctx, poly, y);
        if (std::all_of(f.begin(), f.end(), [](u64 c) { return c == 0; })) return y;
        auto fd = eval_modulus(ctx, dpoly, y);
        if (!ctx.inverse(fd.data(), inv.data()))
            throw InputError("hensel_root: derivative is not a unit (modulus not separable)");
        ctx.mul(f.data(), inv.data(), step.data());
        for (int i = 0; i < n; ++i) y[i] = sub_mod(y[i], step[i], m);
    }
    throw PrecisionError("hensel_root: Newton iteration did not converge");
}

std::vector<u64> mat_mul(const std::vector<u64>& a, const std::vector<u64>& b, int n, u64 m) {
    std::vector<u64> c(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            u64 x = a[i * n + k];
            if (!x) continue;
            for (int j = 0; j < n; ++j) c[i * n + j] = add_mod(c[i * n + j], mul_mod(x, b[k * n + j], m), m);
        }
    return c;
}

}  // namespace

// ---- Context ------------------------------------------------------------------

int Context::default_guard(u64 p, int precision) {
    // Largest v_p(m!) among factorial denominators whose term x^m/m! (v(x) >= 1)
    // can still affect the first N+1 digits.
    int best = 0;
    for (u64 m = 1;; ++m) {
        int vf = vp_factorial(m, p);
        if (static_cast<long long>(m) - vf <= precision) best = std::max(best, vf);
        if (static_cast<double>(m) * (p - 2) / (p - 1) > precision + 2) break;
    }
    return best + 1;
}

ContextPtr Context::make(u64 p, int degree, int precision, std::vector<u64> modulus, int capacity) {
    if (p < 3 || !is_prime(p)) throw InputError("p must be an odd prime, got " + std::to_string(p));
    if (degree < 1 || degree > kMaxDegree)
        throw InputError("extension degree must lie in [1, " + std::to_string(kMaxDegree) + "]");
    if (precision < 1) throw InputError("precision must be >= 1");
    const int emax = max_exponent(p);
    if (precision > emax)
        throw PrecisionError("precision " + std::to_string(precision) + " exceeds the word limit " +
                             std::to_string(emax) + " for p = " + std::to_string(p));
    int cap = capacity > 0 ? capacity : std::min(emax, precision + default_guard(p, precision));
    if (cap < precision) throw InputError("capacity below precision");
    if (cap > emax) throw PrecisionError("capacity exceeds the word limit for p = " + std::to_string(p));

    auto ctx = std::shared_ptr<Context>(new Context());
    ctx->p_ = p;
    ctx->n_ = degree;
    ctx->precision_ = precision;
    ctx->cap_ = cap;
    ctx->pw_.resize(cap + 1);
    ctx->pw_[0] = 1;
    for (int e = 1; e <= cap; ++e) ctx->pw_[e] = ctx->pw_[e - 1] * p;
    ctx->pcap_ = ctx->pw_[cap];
    ctx->lazy_ = ctx->pcap_ < kLazyBound;
    u64 q = 1;
    for (int i = 0; i < degree; ++i)
        q = (q > std::numeric_limits<u64>::max() / p) ? std::numeric_limits<u64>::max() : q * p;
    ctx->q_ = q;

    if (modulus.empty()) {
        modulus = fp::smallest_irreducible(p, degree);
    } else {
        if (static_cast<int>(modulus.size()) != degree + 1)
            throw InputError("modulus must have degree+1 coefficients");
        for (auto& c : modulus) c %= ctx->pcap_;
        if (modulus.back() != 1) throw InputError("modulus must be monic");
        fp::Poly red(modulus.size());
        for (size_t i = 0; i < modulus.size(); ++i) red[i] = modulus[i] % p;
        if (!fp::is_irreducible(red, p)) throw InputError("modulus is not irreducible mod p");
    }
    ctx->modulus_ = std::move(modulus);
    ctx->init_frobenius();
    if (degree > 1) ctx->prime_ = Context::make(p, 1, precision, {}, cap);
    return ctx;
}

ContextPtr Context::prime_context() const {
    if (n_ == 1) return shared_from_this();
    return prime_;
}

ContextPtr Context::with_precision(int precision, int capacity) const {
    return Context::make(p_, n_, precision, modulus_, capacity);
}

bool Context::same_ring(const Context& o) const {
    return this == &o || (p_ == o.p_ && n_ == o.n_ && cap_ == o.cap_ && modulus_ == o.modulus_);
}

void Context::mul(const u64* x, const u64* y, u64* out) const {
    const int n = n_;
    const u64 m = pcap_;
    if (n == 1) {
        out[0] = mul_mod(x[0], y[0], m);
        return;
    }
    u64 t[2 * kMaxDegree];
    std::fill(t, t + 2 * n - 1, 0);
    const u64* md = modulus_.data();
    if (lazy_) {
        for (int i = 0; i < n; ++i) {
            const u64 xi = x[i];
            if (!xi) continue;
            for (int j = 0; j < n; ++j) t[i + j] += xi * y[j];
        }
        for (int k = 2 * n - 2; k >= n; --k) {
            const u64 tk = t[k] % m;
            if (!tk) continue;
            const u64 c = m - tk;
            for (int j = 0; j < n; ++j) t[k - n + j] += c * md[j];
        }
        for (int i = 0; i < n; ++i) out[i] = t[i] % m;
    } else {
        for (int i = 0; i < n; ++i) {
            const u64 xi = x[i];
            if (!xi) continue;
            for (int j = 0; j < n; ++j) t[i + j] = add_mod(t[i + j], mul_mod(xi, y[j], m), m);
        }
        for (int k = 2 * n - 2; k >= n; --k) {
            const u64 tk = t[k];
            if (!tk) continue;
            for (int j = 0; j < n; ++j) t[k - n + j] = sub_mod(t[k - n + j], mul_mod(tk, md[j], m), m);
        }
        for (int i = 0; i < n; ++i) out[i] = t[i];
    }
}

bool Context::inverse(const u64* x, u64* out) const {
    const int n = n_;
    // Column k of the multiplication matrix is x * x^k.
    linalg::Matrix a(static_cast<size_t>(n) * n);
    std::vector<u64> basis(n, 0), col(n);
    for (int k = 0; k < n; ++k) {
        std::fill(basis.begin(), basis.end(), 0);
        basis[k] = 1;
        mul(x, basis.data(), col.data());
        for (int r = 0; r < n; ++r) a[r * n + k] = col[r];
    }
    std::vector<u64> e(n, 0);
    e[0] = 1;
    auto sol = linalg::solve(std::move(a), n, std::move(e), p_, pcap_);
    if (!sol) return false;
    std::copy(sol->begin(), sol->end(), out);
    return true;
}

void Context::init_frobenius() {
    const int n = n_;
    const u64 m = pcap_;
    frob_.assign(n, {});
    frob_[0].assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) frob_[0][i * n + i] = 1;
    if (n > 1) {
        std::vector<u64> x(n, 0);
        x[1] = 1;
        auto start = raw_pow(*this, x, p_);
        for (auto& c : start) c %= p_;
        auto y = hensel_root(*this, modulus_, start);
        // Column k of sigma is y^k.
        std::vector<u64>& s = frob_[1];
        s.assign(static_cast<size_t>(n) * n, 0);
        std::vector<u64> pw(n, 0), tmp(n);
        pw[0] = 1;
        for (int k = 0; k < n; ++k) {
            for (int r = 0; r < n; ++r) s[r * n + k] = pw[r];
            mul(pw.data(), y.data(), tmp.data());
            pw.swap(tmp);
        }
        for (int j = 2; j < n; ++j) frob_[j] = mat_mul(frob_[1], frob_[j - 1], n, m);
    }
    trace_vec_.assign(n, 0);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) trace_vec_[k] = add_mod(trace_vec_[k], frob_[j][0 * n + k], m);
}

const std::vector<u64>& Context::frobenius_matrix(int j) const {
    j %= n_;
    if (j < 0) j += n_;
    return frob_[j];
}

void Context::frobenius(const u64* x, int j, u64* out) const {
    const int n = n_;
    const auto& f = frobenius_matrix(j);
    const u64 m = pcap_;
    if (&f == &frob_[0]) {
        std::copy(x, x + n, out);
        return;
    }
    for (int r = 0; r < n; ++r) {
        const u64* row = f.data() + static_cast<size_t>(r) * n;
        if (lazy_) {
            u64 acc = 0;
            for (int k = 0; k < n; ++k) acc += row[k] * x[k];
            out[r] = acc % m;
        } else {
            u64 acc = 0;
            for (int k = 0; k < n; ++k) acc = add_mod(acc, mul_mod(row[k], x[k], m), m);
            out[r] = acc;
        }
    }
}

u64 Context::trace(const u64* x) const {
    const u64 m = pcap_;
    u64 acc = 0;
    for (int k = 0; k < n_; ++k) acc = add_mod(acc, mul_mod(trace_vec_[k], x[k], m), m);
    return acc;
}

std::string Context::describe() const {
    std::ostringstream os;
    os << "Z_q(p=" << p_ << ", a=" << n_ << ", N=" << precision_ << ", cap=" << cap_ << ", modulus=[";
    for (size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
    os << "])";
    return os.str();
}

// ---- PadicElement -------------------------------------------------------------

PadicElement::PadicElement(ContextPtr ctx)
    : ctx_(std::move(ctx)), c_(ctx_->degree(), 0), prec_(ctx_->capacity()) {}

PadicElement PadicElement::from_int(ContextPtr ctx, long long value) {
    PadicElement r(std::move(ctx));
    const u64 m = r.ctx_->modulus_value();
    if (value >= 0) {
        r.c_[0] = static_cast<u64>(value) % m;
    } else {
        u64 mag = static_cast<u64>(-(value + 1)) + 1;
        r.c_[0] = neg_mod(mag % m, m);
    }
    return r;
}

PadicElement PadicElement::from_coords(ContextPtr ctx, std::vector<u64> coords, int prec) {
    const int n = ctx->degree();
    if (static_cast<int>(coords.size()) > n) throw InputError("too many coordinates for context");
    coords.resize(n, 0);
    PadicElement r;
    r.prec_ = prec < 0 ? ctx->precision() : std::min(prec, ctx->capacity());
    r.ctx_ = std::move(ctx);
    r.c_ = std::move(coords);
    r.normalize();
    return r;
}

PadicElement PadicElement::from_signed(ContextPtr ctx, const std::vector<long long>& coords, int prec) {
    const u64 m = ctx->modulus_value();
    std::vector<u64> c;
    c.reserve(coords.size());
    for (long long v : coords) {
        if (v >= 0)
            c.push_back(static_cast<u64>(v) % m);
        else
            c.push_back(neg_mod((static_cast<u64>(-(v + 1)) + 1) % m, m));
    }
    return from_coords(std::move(ctx), std::move(c), prec);
}

PadicElement PadicElement::generator(ContextPtr ctx) {
    PadicElement r(std::move(ctx));
    if (r.ctx_->degree() > 1)
        r.c_[1] = 1;
    else
        r.c_[0] = neg_mod(r.ctx_->modulus()[0], r.ctx_->modulus_value());
    return r;
}

void PadicElement::normalize() {
    if (prec_ < 0) prec_ = 0;
    const u64 m = ctx_->power(prec_);
    if (prec_ < ctx_->capacity())
        for (auto& c : c_) c %= m;
}

int PadicElement::valuation() const {
    int v = prec_;
    for (u64 c : c_)
        if (c) v = std::min(v, vp(c, ctx_->prime()));
    return v;
}

bool PadicElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u64 c) { return c == 0; });
}

bool PadicElement::is_one_unit() const {
    if (prec_ < 1) return false;
    const u64 p = ctx_->prime();
    if (c_[0] % p != 1 % p) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] % p) return false;
    return true;
}

bool PadicElement::in_prime_field() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

PadicElement PadicElement::reduce_precision(int prec) const {
    PadicElement r = *this;
    if (prec < r.prec_) {
        r.prec_ = std::max(prec, 0);
        r.normalize();
    }
    return r;
}

PadicElement PadicElement::cast(const ContextPtr& ctx) const {
    if (ctx->prime() != ctx_->prime() || ctx->degree() != ctx_->degree())
        throw InputError("cast: incompatible contexts");
    const int k = std::min(ctx->capacity(), ctx_->capacity());
    const u64 m = ctx->power(k);
    for (size_t i = 0; i < ctx->modulus().size(); ++i)
        if (ctx->modulus()[i] % m != ctx_->modulus()[i] % m) throw InputError("cast: different moduli");
    PadicElement r;
    r.ctx_ = ctx;
    r.c_ = c_;
    r.prec_ = std::min(prec_, ctx->capacity());
    r.normalize();
    return r;
}

void PadicElement::check_same(const PadicElement& o) const {
    if (!ctx_ || !o.ctx_) throw InputError("operation on an uninitialized p-adic element");
    if (ctx_ != o.ctx_ && !ctx_->same_ring(*o.ctx_))
        throw InputError("p-adic elements from different contexts: " + ctx_->describe() + " vs " +
                         o.ctx_->describe());
}

PadicElement PadicElement::operator-() const {
    PadicElement r = *this;
    const u64 m = ctx_->power(prec_);
    for (auto& c : r.c_) c = neg_mod(c, m);
    return r;
}

PadicElement& PadicElement::operator+=(const PadicElement& o) {
    check_same(o);
    const u64 m = ctx_->modulus_value();
    for (size_t i = 0; i < c_.size(); ++i) c_[i] = add_mod(c_[i], o.c_[i], m);
    prec_ = std::min(prec_, o.prec_);
    normalize();
    return *this;
}

PadicElement& PadicElement::operator-=(const PadicElement& o) {
    check_same(o);
    const u64 m = ctx_->modulus_value();
    for (size_t i = 0; i < c_.size(); ++i) c_[i] = sub_mod(c_[i], o.c_[i], m);
    prec_ = std::min(prec_, o.prec_);
    normalize();
    return *this;
}

PadicElement& PadicElement::operator*=(const PadicElement& o) {
    check_same(o);
    const int va = valuation(), vb = o.valuation();
    std::vector<u64> out(c_.size());
    ctx_->mul(c_.data(), o.c_.data(), out.data());
    c_.swap(out);
    prec_ = std::min({prec_ + vb, o.prec_ + va, ctx_->capacity()});
    normalize();
    return *this;
}

PadicElement PadicElement::mul_int(long long k) const {
    return *this * from_int(ctx_, k);
}

PadicElement PadicElement::divide_by_p(int k) const {
    if (k <= 0) return *this;
    const int v = valuation();
    if (v < k && v < prec_)
        throw InputError("divide_by_p: element " + to_string() + " is not divisible by p^" +
                         std::to_string(k));
    PadicElement r = *this;
    r.prec_ = std::max(prec_ - k, 0);
    if (v >= prec_) {
        std::fill(r.c_.begin(), r.c_.end(), 0);
    } else {
        const u64 pk = ctx_->power(k);
        for (auto& c : r.c_) c /= pk;
    }
    return r;
}

PadicElement PadicElement::divide_int(long long k) const {
    if (k == 0) throw InputError("division by zero");
    const u64 p = ctx_->prime();
    u64 mag = k < 0 ? static_cast<u64>(-(k + 1)) + 1 : static_cast<u64>(k);
    const int v = vp(mag, p);
    mag /= ctx_->power(v);
    const u64 m = ctx_->modulus_value();
    u64 inv = *inv_mod(mag % m, m);
    if (k < 0) inv = neg_mod(inv, m);
    PadicElement r = divide_by_p(v);
    for (auto& c : r.c_) c = mul_mod(c, inv, m);
    r.normalize();
    return r;
}

PadicElement PadicElement::divide(const PadicElement& d) const {
    check_same(d);
    if (d.is_zero()) throw InputError("division by an element that is zero to its precision");
    const int v = d.valuation();
    PadicElement unit = d.divide_by_p(v);
    return divide_by_p(v) * unit.inverse();
}

PadicElement PadicElement::pow(u64 e) const {
    PadicElement r = one(ctx_);
    PadicElement b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

PadicElement PadicElement::inverse() const {
    if (prec_ < 1 || valuation() != 0) throw InputError("inverse: " + to_string() + " is not a unit");
    PadicElement r = *this;
    if (!ctx_->inverse(c_.data(), r.c_.data())) throw InputError("inverse: not a unit");
    r.normalize();
    return r;
}

int PadicElement::agreement(const PadicElement& o) const {
    return (*this - o).valuation();
}

bool PadicElement::equals_mod(const PadicElement& o, int digits) const {
    return agreement(o) >= digits;
}

bool PadicElement::operator==(const PadicElement& o) const {
    if (!ctx_ || !o.ctx_) return ctx_ == o.ctx_;
    return ctx_->same_ring(*o.ctx_) && prec_ == o.prec_ && c_ == o.c_;
}

std::string PadicElement::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i];
    os << ") + O(" << (ctx_ ? ctx_->prime() : 0) << "^" << prec_ << ")";
    return os.str();
}

bool lex_less(const std::vector<u64>& a, const std::vector<u64>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---- ring maps ------------------------------------------------------------------

PadicElement frobenius(const PadicElement& x, int j) {
    const auto& ctx = x.context();
    std::vector<u64> out(ctx->degree());
    ctx->frobenius(x.coords().data(), j, out.data());
    return PadicElement::from_coords(ctx, std::move(out), x.precision());
}

PadicElement trace(const PadicElement& x) {
    const auto& ctx = x.context();
    return PadicElement::from_coords(ctx->prime_context(), {ctx->trace(x.coords().data())}, x.precision());
}

PadicElement trace_by_matrix(const PadicElement& x) {
    const auto& ctx = x.context();
    const int n = ctx->degree();
    const u64 m = ctx->modulus_value();
    std::vector<u64> basis(n), col(n);
    u64 acc = 0;
    for (int k = 0; k < n; ++k) {
        std::fill(basis.begin(), basis.end(), 0);
        basis[k] = 1;
        ctx->mul(x.coords().data(), basis.data(), col.data());
        acc = add_mod(acc, col[k], m);
    }
    return PadicElement::from_coords(ctx->prime_context(), {acc}, x.precision());
}

PadicElement teichmuller(const ContextPtr& ctx, const std::vector<u64>& residue) {
    const int n = ctx->degree();
    const u64 p = ctx->prime();
    if (static_cast<int>(residue.size()) > n) throw InputError("teichmuller: residue has too many coordinates");
    std::vector<u64> y(n, 0);
    for (size_t i = 0; i < residue.size(); ++i) y[i] = residue[i] % p;
    if (std::all_of(y.begin(), y.end(), [](u64 c) { return c == 0; })) return PadicElement(ctx);
    // Each application of y -> y^q gains one digit.
    for (int it = 0; it < ctx->capacity(); ++it)
        for (int s = 0; s < n; ++s) y = raw_pow(*ctx, y, p);
    return PadicElement::from_coords(ctx, std::move(y), ctx->capacity());
}

// ---- logarithm and exponential ------------------------------------------------

PadicElement padic_log(const PadicElement& u) {
    if (!u.is_one_unit()) throw InputError("padic_log: argument " + u.to_string() + " is not a 1-unit");
    const auto& ctx = u.context();
    const u64 p = ctx->prime();
    const PadicElement z = u - PadicElement::one(ctx);
    const int target = u.precision();
    PadicElement result(ctx);
    result = result.reduce_precision(target);
    if (z.is_zero()) return result;
    const int vz = z.valuation();
    PadicElement zk = PadicElement::one(ctx);
    for (long long k = 1;; ++k) {
        zk *= z;
        PadicElement term = zk.divide_int(k);
        if (k % 2 == 0)
            result -= term;
        else
            result += term;
        // Remaining terms have valuation >= k' vz - log_p k', increasing in k'.
        const long long nk = k + 1;
        if (nk * vz - floor_log(static_cast<u64>(nk), p) >= target) break;
    }
    return result;
}

PadicElement padic_exp(const PadicElement& z) {
    const auto& ctx = z.context();
    const u64 p = ctx->prime();
    if (z.precision() < 1 || z.valuation() < 1)
        throw InputError("padic_exp: argument " + z.to_string() + " must have positive valuation");
    const int target = z.precision();
    PadicElement result = PadicElement::one(ctx);
    if (z.is_zero()) return result.reduce_precision(target);
    const long long vz = z.valuation();
    PadicElement term = PadicElement::one(ctx);
    for (long long m = 1;; ++m) {
        term = (term * z).divide_int(m);
        result += term;
        // v(z^m'/m'!) >= m' vz - (m'-1)/(p-1), increasing in m'.
        const long long nm = m + 1;
        if (nm * vz * static_cast<long long>(p - 1) - m >= static_cast<long long>(target) * static_cast<long long>(p - 1)) break;
    }
    return result;
}

PadicElement log_one_plus_p(const ContextPtr& ctx) {
    return padic_log(PadicElement::from_int(ctx, static_cast<long long>(ctx->prime()) + 1));
}

PadicElement one_unit_exp(const PadicElement& r) {
    return padic_exp(r * log_one_plus_p(r.context()));
}

PadicElement one_unit_pow(const ContextPtr& ctx, u64 e) {
    const u64 m = ctx->modulus_value();
    return PadicElement::from_coords(ctx, {pow_mod(ctx->prime() + 1, e, m)}, ctx->capacity());
}

PadicElement one_unit_power(const PadicElement& r) {
    if (!r.in_prime_field()) throw InputError("one_unit_power: exponent must lie in Z_p");
    const auto& ctx = r.context();
    const int prec = std::min(r.precision() + 1, ctx->capacity());
    return one_unit_pow(ctx, r.residue()).reduce_precision(prec);
}

PadicElement one_unit_log_solve(const PadicElement& u) {
    if (!u.in_prime_field()) throw InputError("one_unit_log_solve: argument must lie in Z_p");
    return padic_log(u).divide(log_one_plus_p(u.context()));
}

// ---- trace duality ---------------------------------------------------------------

std::vector<u64> gram_matrix(const ContextPtr& ctx) {
    const int n = ctx->degree();
    std::vector<std::vector<u64>> pw(2 * n - 1, std::vector<u64>(n, 0));
    pw[0][0] = 1;
    std::vector<u64> x(n, 0);
    if (n > 1)
        x[1] = 1;
    else
        x[0] = neg_mod(ctx->modulus()[0], ctx->modulus_value());
    for (int k = 1; k < 2 * n - 1; ++k) ctx->mul(pw[k - 1].data(), x.data(), pw[k].data());
    std::vector<u64> g(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i * n + j] = ctx->trace(pw[i + j].data());
    return g;
}

int gram_determinant_valuation(const ContextPtr& ctx) {
    return linalg::det_valuation(gram_matrix(ctx), ctx->degree(), ctx->prime(), ctx->modulus_value());
}

PadicElement trace_dual_solve(const ContextPtr& ctx, const std::vector<PadicElement>& values) {
    const int n = ctx->degree();
    if (static_cast<int>(values.size()) != n)
        throw InputError("trace_dual_solve: expected " + std::to_string(n) + " values");
    std::vector<u64> b(n);
    int prec = ctx->capacity();
    const u64 m = ctx->modulus_value();
    for (int j = 0; j < n; ++j) {
        if (!values[j].in_prime_field()) throw InputError("trace_dual_solve: values must lie in Z_p");
        b[j] = values[j].residue() % m;
        prec = std::min(prec, values[j].precision());
    }
    auto sol = linalg::solve(gram_matrix(ctx), n, std::move(b), ctx->prime(), m);
    if (!sol) throw InputError("trace_dual_solve: Gram matrix singular mod p (invalid modulus)");
    return PadicElement::from_coords(ctx, std::move(*sol), prec);
}

// ---- unramified extensions -----------------------------------------------------------

std::shared_ptr<const Extension> Extension::make(const ContextPtr& base, int d) {
    if (d < 1) throw InputError("extension degree must be >= 1");
    auto ext = std::make_shared<Extension>();
    ext->base_ = base;
    ext->d_ = d;
    const int a = base->degree();
    const u64 p = base->prime();
    if (d == 1) {
        ext->big_ = base;
        ext->eps_ = PadicElement::generator(base).coords();
    } else {
        if (a * d > kMaxDegree) throw InputError("extension degree too large");
        auto big = Context::make(p, a * d, base->precision(), {}, base->capacity());
        ext->big_ = big;
        const int n = a * d;
        // Roots of the base modulus mod p lie in the fixed field of Frob^a.
        linalg::Matrix f = big->frobenius_matrix(a);
        for (int i = 0; i < n; ++i) f[i * n + i] = sub_mod(f[i * n + i] % p, 1, p);
        for (auto& c : f) c %= p;
        auto kernel = linalg::kernel_mod_p(f, n, n, p);
        if (static_cast<int>(kernel.size()) != a) throw InputError("Extension: unexpected subfield dimension");
        std::vector<u64> reduced_mod(base->modulus().size());
        for (size_t i = 0; i < reduced_mod.size(); ++i) reduced_mod[i] = base->modulus()[i] % p;
        std::vector<u64> best;
        std::vector<u64> combo(a, 0);
        while (true) {
            std::vector<u64> y(n, 0);
            for (int b = 0; b < a; ++b)
                for (int i = 0; i < n; ++i) y[i] = (y[i] + combo[b] * kernel[b][i]) % p;
            auto val = eval_modulus(*big, reduced_mod, y);
            if (std::all_of(val.begin(), val.end(), [p](u64 c) { return c % p == 0; }))
                if (best.empty() || lex_less(y, best)) best = y;
            int b = a - 1;
            while (b >= 0 && ++combo[b] == p) combo[b--] = 0;
            if (b < 0) break;
        }
        if (best.empty()) throw InputError("Extension: base modulus has no root in the extension");
        ext->eps_ = hensel_root(*big, base->modulus(), best);
    }
    const auto& big = ext->big_;
    const int n = big->degree();
    ext->eps_powers_.assign(a, std::vector<u64>(n, 0));
    ext->eps_powers_[0][0] = 1;
    for (int b = 1; b < a; ++b) big->mul(ext->eps_powers_[b - 1].data(), ext->eps_.data(), ext->eps_powers_[b].data());
    linalg::Matrix emb(static_cast<size_t>(n) * a);
    for (int r = 0; r < n; ++r)
        for (int b = 0; b < a; ++b) emb[r * a + b] = ext->eps_powers_[b][r];
    ext->pivot_rows_ = linalg::independent_rows(emb, n, a, p);
    if (static_cast<int>(ext->pivot_rows_.size()) != a) throw InputError("Extension: embedding not injective mod p");
    linalg::Matrix sub(static_cast<size_t>(a) * a);
    for (int i = 0; i < a; ++i)
        for (int b = 0; b < a; ++b) sub[i * a + b] = emb[ext->pivot_rows_[i] * a + b];
    auto inv = linalg::inverse(std::move(sub), a, p, big->modulus_value());
    if (!inv) throw InputError("Extension: singular embedding minor");
    ext->pivot_inverse_ = std::move(*inv);
    return ext;
}

void Extension::embed_raw(const u64* x, u64* out) const {
    const int n = big_->degree();
    const int a = base_->degree();
    const u64 m = big_->modulus_value();
    std::fill(out, out + n, 0);
    for (int b = 0; b < a; ++b) {
        if (!x[b]) continue;
        for (int i = 0; i < n; ++i) out[i] = add_mod(out[i], mul_mod(x[b], eps_powers_[b][i], m), m);
    }
}

PadicElement Extension::embed(const PadicElement& x) const {
    if (!x.context()->same_ring(*base_)) throw InputError("embed: element is not in the base ring");
    std::vector<u64> out(big_->degree());
    embed_raw(x.coords().data(), out.data());
    return PadicElement::from_coords(big_, std::move(out), x.precision());
}

PadicElement Extension::restrict(const PadicElement& y) const {
    if (!y.context()->same_ring(*big_)) throw InputError("restrict: element is not in the extension ring");
    const int a = base_->degree();
    const u64 m = big_->modulus_value();
    std::vector<u64> z(a, 0);
    for (int i = 0; i < a; ++i)
        for (int k = 0; k < a; ++k)
            z[i] = add_mod(z[i], mul_mod(pivot_inverse_[i * a + k], y.coords()[pivot_rows_[k]], m), m);
    auto r = PadicElement::from_coords(base_, std::move(z), y.precision());
    if (!embed(r).equals_mod(y, y.precision()))
        throw InputError("restrict: element does not lie in the subring");
    return r;
}

PadicElement Extension::trace_over(const PadicElement& y) const {
    if (!y.context()->same_ring(*big_)) throw InputError("trace_over: degree mismatch");
    const int a = base_->degree();
    PadicElement s = y;
    for (int j = 1; j < d_; ++j) s += frobenius(y, a * j);
    return restrict(s);
}

}  // namespace wittchar
