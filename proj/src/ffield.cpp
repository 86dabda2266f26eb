#include "wittchar/ffield.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "wittchar/errors.hpp"
#include "wittchar/fp_poly.hpp"

namespace wittchar {

// ---- FiniteField -------------------------------------------------------------------

FieldPtr FiniteField::make(ContextPtr ctx) {
    auto F = std::make_shared<FiniteField>();
    F->p_ = ctx->prime();
    F->n_ = ctx->degree();
    F->modulus_.resize(ctx->modulus().size());
    for (size_t i = 0; i < F->modulus_.size(); ++i) F->modulus_[i] = ctx->modulus()[i] % F->p_;
    F->frob_.resize(F->n_);
    for (int j = 0; j < F->n_; ++j) {
        F->frob_[j] = ctx->frobenius_matrix(j);
        for (auto& c : F->frob_[j]) c %= F->p_;
    }
    F->ctx_ = std::move(ctx);
    return F;
}

u64 FiniteField::size() const {
    auto s = checked_pow(p_, n_);
    if (!s) throw BudgetExceeded("field of size " + std::to_string(p_) + "^" + std::to_string(n_) + " is too large");
    return *s;
}

FqElement FiniteField::one() const {
    FqElement r = zero();
    r.c[0] = 1;
    return r;
}

FqElement FiniteField::from_int(long long v) const {
    FqElement r = zero();
    long long m = v % static_cast<long long>(p_);
    r.c[0] = static_cast<u64>(m < 0 ? m + static_cast<long long>(p_) : m);
    return r;
}

FqElement FiniteField::element(u64 index) const {
    FqElement r = zero();
    for (int i = n_ - 1; i >= 0; --i) {
        r.c[i] = index % p_;
        index /= p_;
    }
    return r;
}

u64 FiniteField::index(const FqElement& x) const {
    u64 r = 0;
    for (int i = 0; i < n_; ++i) r = r * p_ + x.c[i];
    return r;
}

bool FiniteField::is_zero(const FqElement& x) const {
    return std::all_of(x.c.begin(), x.c.end(), [](u64 c) { return c == 0; });
}

FqElement FiniteField::add(const FqElement& x, const FqElement& y) const {
    FqElement r = x;
    for (int i = 0; i < n_; ++i) r.c[i] = add_mod(r.c[i], y.c[i], p_);
    return r;
}

FqElement FiniteField::sub(const FqElement& x, const FqElement& y) const {
    FqElement r = x;
    for (int i = 0; i < n_; ++i) r.c[i] = sub_mod(r.c[i], y.c[i], p_);
    return r;
}

FqElement FiniteField::neg(const FqElement& x) const {
    FqElement r = x;
    for (auto& c : r.c) c = neg_mod(c, p_);
    return r;
}

FqElement FiniteField::mul(const FqElement& x, const FqElement& y) const {
    const int n = n_;
    if (n == 1) return FqElement{{mul_mod(x.c[0], y.c[0], p_)}};
    std::vector<u64> t(2 * n - 1, 0);
    for (int i = 0; i < n; ++i) {
        if (!x.c[i]) continue;
        for (int j = 0; j < n; ++j) t[i + j] = (t[i + j] + mul_mod(x.c[i], y.c[j], p_)) % p_;
    }
    for (int k = 2 * n - 2; k >= n; --k) {
        const u64 tk = t[k];
        if (!tk) continue;
        for (int j = 0; j < n; ++j) t[k - n + j] = sub_mod(t[k - n + j], mul_mod(tk, modulus_[j], p_), p_);
    }
    t.resize(n);
    return FqElement{std::move(t)};
}

FqElement FiniteField::pow(const FqElement& x, u64 e) const {
    FqElement r = one(), b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

FqElement FiniteField::inv(const FqElement& x) const {
    if (is_zero(x)) throw InputError("inverse of zero in F_q");
    // Extended Euclid in F_p[x] against the modulus.
    fp::Poly r0 = modulus_, r1(x.c.begin(), x.c.end());
    fp::trim(r1);
    fp::Poly s0{}, s1{1};
    while (fp::degree(r1) > 0) {
        // r0 = qt * r1 + rem
        fp::Poly rem = r0, qt;
        const int d1 = fp::degree(r1);
        const u64 lead_inv = *inv_mod(r1[d1], p_);
        qt.assign(std::max(0, fp::degree(rem) - d1) + 1, 0);
        while (fp::degree(rem) >= d1) {
            const int dr = fp::degree(rem);
            const u64 c = mul_mod(rem[dr], lead_inv, p_);
            qt[dr - d1] = c;
            for (int i = 0; i <= d1; ++i) rem[dr - d1 + i] = sub_mod(rem[dr - d1 + i], mul_mod(c, r1[i], p_), p_);
            fp::trim(rem);
        }
        fp::Poly s2 = fp::sub(s0, fp::mul(qt, s1, p_), p_);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    const u64 c = *inv_mod(r1[0], p_);
    FqElement r = zero();
    for (size_t i = 0; i < s1.size() && i < static_cast<size_t>(n_); ++i) r.c[i] = mul_mod(s1[i], c, p_);
    return r;
}

FqElement FiniteField::frobenius(const FqElement& x, int j) const {
    j %= n_;
    if (j < 0) j += n_;
    if (j == 0) return x;
    const auto& f = frob_[j];
    FqElement r = zero();
    for (int row = 0; row < n_; ++row) {
        u64 acc = 0;
        for (int k = 0; k < n_; ++k) acc = (acc + mul_mod(f[row * n_ + k], x.c[k], p_)) % p_;
        r.c[row] = acc;
    }
    return r;
}

int FiniteField::orbit_length(const FqElement& x, int step) const {
    FqElement y = x;
    for (int d = 1; d <= n_; ++d) {
        y = frobenius(y, step);
        if (y == x) return d;
    }
    throw InputError("orbit_length: step does not divide the field degree");
}

bool FiniteField::is_primitive(const FqElement& x) const {
    if (is_zero(x)) return false;
    const u64 order = size() - 1;
    if (pow(x, order) != one()) return false;
    for (u64 r : prime_divisors(order))
        if (pow(x, order / r) == one()) return false;
    return true;
}

FqElement FiniteField::primitive_element() const {
    const u64 q = size();
    for (u64 i = 1; i < q; ++i) {
        FqElement x = element(i);
        if (is_primitive(x)) return x;
    }
    throw InputError("primitive_element: none found");
}

FqElement FiniteField::reduce(const PadicElement& x) const {
    if (x.context()->prime() != p_ || x.context()->degree() != n_) throw InputError("reduce: incompatible context");
    if (x.precision() < 1) throw PrecisionError("reduce: element has no known digits");
    FqElement r = zero();
    for (int i = 0; i < n_; ++i) r.c[i] = x.coords()[i] % p_;
    return r;
}

PadicElement FiniteField::teichmuller(const FqElement& x) const { return wittchar::teichmuller(ctx_, x.c); }

std::string FiniteField::to_string(const FqElement& x) const {
    std::ostringstream os;
    if (n_ == 1) {
        os << x.c[0];
        return os.str();
    }
    os << "(";
    for (int i = 0; i < n_; ++i) os << (i ? "," : "") << x.c[i];
    os << ")";
    return os.str();
}

// ---- polynomials -------------------------------------------------------------------

namespace fq {

void trim(const FiniteField& F, FqPoly& f) {
    while (!f.empty() && F.is_zero(f.back())) f.pop_back();
}

int degree(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

FqPoly add(const FiniteField& F, const FqPoly& f, const FqPoly& g) {
    FqPoly r(std::max(f.size(), g.size()), F.zero());
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] = F.add(r[i], g[i]);
    trim(F, r);
    return r;
}

FqPoly sub(const FiniteField& F, const FqPoly& f, const FqPoly& g) {
    FqPoly r(std::max(f.size(), g.size()), F.zero());
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] = F.sub(r[i], g[i]);
    trim(F, r);
    return r;
}

FqPoly mul(const FiniteField& F, const FqPoly& f, const FqPoly& g) {
    if (f.empty() || g.empty()) return {};
    FqPoly r(f.size() + g.size() - 1, F.zero());
    for (size_t i = 0; i < f.size(); ++i) {
        if (F.is_zero(f[i])) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(f[i], g[j]));
    }
    trim(F, r);
    return r;
}

std::pair<FqPoly, FqPoly> divmod(const FiniteField& F, FqPoly f, const FqPoly& g) {
    const int dg = degree(g);
    if (dg < 0) throw InputError("polynomial division by zero");
    trim(F, f);
    const FqElement lead_inv = F.inv(g[dg]);
    FqPoly q(std::max(0, degree(f) - dg + 1), F.zero());
    while (degree(f) >= dg) {
        const int df = degree(f);
        const FqElement c = F.mul(f[df], lead_inv);
        q[df - dg] = c;
        for (int i = 0; i <= dg; ++i) f[df - dg + i] = F.sub(f[df - dg + i], F.mul(c, g[i]));
        trim(F, f);
    }
    trim(F, q);
    return {std::move(q), std::move(f)};
}

FqPoly mod(const FiniteField& F, const FqPoly& f, const FqPoly& g) { return divmod(F, f, g).second; }

FqPoly monic(const FiniteField& F, FqPoly f) {
    trim(F, f);
    if (f.empty()) return f;
    const FqElement inv = F.inv(f.back());
    for (auto& c : f) c = F.mul(c, inv);
    return f;
}

FqPoly gcd(const FiniteField& F, FqPoly f, FqPoly g) {
    trim(F, f);
    trim(F, g);
    while (!g.empty()) {
        FqPoly r = mod(F, f, g);
        f = std::move(g);
        g = std::move(r);
    }
    return monic(F, std::move(f));
}

FqPoly powmod(const FiniteField& F, FqPoly base, u64 e, const FqPoly& m) {
    FqPoly r{F.one()};
    r = mod(F, r, m);
    base = mod(F, base, m);
    while (e) {
        if (e & 1) r = mod(F, mul(F, r, base), m);
        e >>= 1;
        if (e) base = mod(F, mul(F, base, base), m);
    }
    return r;
}

FqPoly frobenius_powmod(const FiniteField& F, FqPoly base, int k, const FqPoly& m) {
    for (int i = 0; i < k; ++i) base = powmod(F, std::move(base), F.prime(), m);
    return base;
}

FqPoly derivative(const FiniteField& F, const FqPoly& f) {
    FqPoly d;
    for (size_t k = 1; k < f.size(); ++k) d.push_back(F.mul(f[k], F.from_int(static_cast<long long>(k % F.prime()))));
    trim(F, d);
    return d;
}

FqElement eval(const FiniteField& F, const FqPoly& f, const FqElement& x) {
    FqElement acc = F.zero();
    for (int k = degree(f); k >= 0; --k) acc = F.add(F.mul(acc, x), f[k]);
    return acc;
}

namespace {

FqPoly exact_div(const FiniteField& F, const FqPoly& f, const FqPoly& g) {
    auto [q, r] = divmod(F, f, g);
    if (!r.empty()) throw InputError("internal: inexact polynomial division");
    return q;
}

// f(t) = g(t^p)  ->  g^(1/p)
FqPoly pth_root(const FiniteField& F, const FqPoly& f) {
    const u64 p = F.prime();
    FqPoly r;
    for (size_t k = 0; k < f.size(); k += p) r.push_back(F.frobenius(f[k], -1));
    trim(F, r);
    return r;
}

void squarefree(const FiniteField& F, const FqPoly& f, int mult, std::vector<std::pair<FqPoly, int>>& out) {
    if (degree(f) < 1) return;
    FqPoly c = gcd(F, f, derivative(F, f));
    FqPoly w = exact_div(F, f, c);
    int i = 1;
    while (degree(w) > 0) {
        FqPoly y = gcd(F, w, c);
        FqPoly z = exact_div(F, w, y);
        if (degree(z) > 0) out.push_back({monic(F, z), i * mult});
        ++i;
        w = y;
        c = exact_div(F, c, y);
    }
    if (degree(c) > 0) squarefree(F, pth_root(F, c), mult * static_cast<int>(F.prime()), out);
}

// a^((Q^d - 1) / 2) mod g for Q = |F|, via its base-p digits.
FqPoly half_power(const FiniteField& F, const FqPoly& a, int d, const FqPoly& g) {
    const u64 p = F.prime();
    FqPoly c = powmod(F, a, (p - 1) / 2, g);
    FqPoly acc = c;
    const int count = F.degree() * d;
    for (int i = 1; i < count; ++i) {
        c = powmod(F, c, p, g);
        acc = mod(F, mul(F, acc, c), g);
    }
    return acc;
}

void equal_degree(const FiniteField& F, const FqPoly& g, int d, std::mt19937_64& rng,
                  std::vector<FqPoly>& out) {
    const int n = degree(g);
    if (n == d) {
        out.push_back(g);
        return;
    }
    while (true) {
        FqPoly a(n, F.zero());
        for (auto& c : a)
            for (auto& x : c.c) x = rng() % F.prime();
        trim(F, a);
        if (degree(a) < 1) continue;
        FqPoly b = sub(F, half_power(F, a, d, g), FqPoly{F.one()});
        FqPoly h = gcd(F, g, b);
        if (degree(h) > 0 && degree(h) < n) {
            equal_degree(F, h, d, rng, out);
            equal_degree(F, exact_div(F, g, h), d, rng, out);
            return;
        }
    }
}

bool poly_less(const FqPoly& a, const FqPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::vector<std::pair<FqPoly, int>> factor(const FiniteField& F, const FqPoly& f0) {
    FqPoly f = monic(F, f0);
    if (degree(f) < 1) return {};
    std::vector<std::pair<FqPoly, int>> sqf;
    squarefree(F, f, 1, sqf);
    std::vector<std::pair<FqPoly, int>> out;
    std::mt19937_64 rng(0x5eed);
    const FqPoly x{F.zero(), F.one()};
    for (auto& [g0, m] : sqf) {
        FqPoly g = g0;
        FqPoly h = mod(F, x, g);
        for (int d = 1; 2 * d <= degree(g); ++d) {
            h = frobenius_powmod(F, h, F.degree(), g);
            FqPoly part = gcd(F, g, sub(F, h, x));
            if (degree(part) > 0) {
                std::vector<FqPoly> pieces;
                equal_degree(F, part, d, rng, pieces);
                for (auto& pc : pieces) out.push_back({monic(F, pc), m});
                g = exact_div(F, g, part);
                h = mod(F, h, g);
            }
        }
        if (degree(g) > 0) out.push_back({monic(F, g), m});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (poly_less(a.first, b.first)) return true;
        if (poly_less(b.first, a.first)) return false;
        return a.second < b.second;
    });
    // Merge equal factors coming from different squarefree layers.
    std::vector<std::pair<FqPoly, int>> merged;
    for (auto& e : out) {
        if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
        else
            merged.push_back(e);
    }
    return merged;
}

bool is_irreducible(const FiniteField& F, const FqPoly& f0) {
    FqPoly f = monic(F, f0);
    const int d = degree(f);
    if (d < 1) return false;
    if (d == 1) return true;
    const FqPoly x{F.zero(), F.one()};
    if (!sub(F, frobenius_powmod(F, x, F.degree() * d, f), mod(F, x, f)).empty()) return false;
    for (u64 r : prime_divisors(static_cast<u64>(d))) {
        FqPoly h = frobenius_powmod(F, x, F.degree() * (d / static_cast<int>(r)), f);
        if (degree(gcd(F, f, sub(F, h, x))) != 0) return false;
    }
    return true;
}

}  // namespace fq

// ---- 1-unit polynomials ---------------------------------------------------------------

OneUnitPoly::OneUnitPoly(FieldPtr field, FqPoly coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    fq::trim(*field_, c_);
    if (c_.empty() || c_[0] != field_->one()) throw InputError("1-unit polynomial must have constant term 1");
    for (const auto& x : c_)
        if (static_cast<int>(x.c.size()) != field_->degree())
            throw InputError("polynomial coefficient has the wrong number of coordinates");
}

OneUnitPoly OneUnitPoly::one(FieldPtr field) {
    FqPoly c{field->one()};
    return OneUnitPoly(std::move(field), std::move(c));
}

OneUnitPoly operator*(const OneUnitPoly& a, const OneUnitPoly& b) {
    return OneUnitPoly(a.field_, fq::mul(*a.field_, a.c_, b.c_));
}

bool operator<(const OneUnitPoly& a, const OneUnitPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.c_.begin() + 1, a.c_.end(), b.c_.begin() + 1, b.c_.end());
}

std::string OneUnitPoly::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << field_->to_string(c_[i]);
    os << "]";
    return os.str();
}

u64 irreducible_count(u64 q, int d) {
    // (1/d) sum_{e|d} mu(e) q^(d/e), in 128-bit to absorb signed partial sums.
    __int128 s = 0;
    for (u64 e : divisors(static_cast<u64>(d))) {
        int mu = moebius(e);
        if (!mu) continue;
        __int128 pw = 1;
        for (u64 i = 0; i < static_cast<u64>(d) / e; ++i) pw *= q;
        s += mu * pw;
    }
    u64 count = static_cast<u64>(s / d);
    return d == 1 ? count - 1 : count;
}

std::vector<OneUnitPoly> enumerate_irreducibles(const FieldPtr& field, int D, u64 budget) {
    if (D < 1) throw InputError("enumerate_irreducibles: D must be >= 1");
    if (budget == 0) budget = kDefaultBudget;
    const FiniteField& F = *field;
    const u64 q = F.size();
    std::vector<OneUnitPoly> out;
    for (int d = 1; d <= D; ++d) {
        auto total = checked_pow(q, d);
        if (!total || *total > budget)
            throw BudgetExceeded("enumerating degree-" + std::to_string(d) + " polynomials exceeds the budget of " +
                                 std::to_string(budget));
        const size_t small_end = out.size();
        // Odometer over (c_1, ..., c_d) with c_1 most significant and c_d != 0.
        std::vector<u64> idx(d + 1, 0);
        idx[d] = 1;
        while (true) {
            FqPoly c(d + 1);
            c[0] = F.one();
            for (int i = 1; i <= d; ++i) c[i] = F.element(idx[i]);
            bool irreducible;
            if (d == 1) {
                irreducible = true;
            } else if (d <= 4) {
                irreducible = true;
                for (size_t j = 0; j < small_end && irreducible; ++j) {
                    if (2 * out[j].degree() > d) break;
                    if (fq::mod(F, c, out[j].coeffs()).empty()) irreducible = false;
                }
            } else {
                irreducible = fq::is_irreducible(F, c);
            }
            if (irreducible) out.emplace_back(field, std::move(c));
            int i = d;
            while (i >= 1) {
                if (++idx[i] < q) break;
                idx[i] = (i == d) ? 1 : 0;
                --i;
            }
            if (i < 1) break;
        }
    }
    return out;
}

std::vector<OneUnitPoly> factor_one_unit(const OneUnitPoly& g) {
    const auto& field = g.field();
    const FiniteField& F = *field;
    std::vector<OneUnitPoly> out;
    for (auto& [h, m] : fq::factor(F, g.coeffs())) {
        // Rescale the monic factor to constant term 1.
        const FqElement inv = F.inv(h[0]);
        FqPoly u = h;
        for (auto& c : u) c = F.mul(c, inv);
        for (int i = 0; i < m; ++i) out.emplace_back(field, u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExtensionField make_extension_field(const FieldPtr& base, int d) {
    ExtensionField E;
    E.ext = Extension::make(base->context(), d);
    E.field = d == 1 ? base : FiniteField::make(E.ext->big());
    return E;
}

FqElement embed(const ExtensionField& E, const FqElement& x) {
    const u64 p = E.field->prime();
    std::vector<u64> out(E.field->degree());
    E.ext->embed_raw(x.c.data(), out.data());
    for (auto& c : out) c %= p;
    return FqElement{std::move(out)};
}

FqElement reciprocal_root_in(const OneUnitPoly& f, const ExtensionField& E) {
    const FiniteField& F = *E.field;
    const int d = f.degree();
    if (d < 1) throw InputError("reciprocal_root: constant polynomial has no reciprocal root");
    if (E.ext->relative_degree() != d) throw InputError("reciprocal_root: extension degree mismatch");
    if (!fq::is_irreducible(*f.field(), f.coeffs()))
        throw InputError("reciprocal_root: polynomial " + f.to_string() + " is reducible");
    // Reversed polynomial x^d f(1/x), monic since f(0) = 1.
    FqPoly rev(d + 1);
    for (int k = 0; k <= d; ++k) rev[d - k] = embed(E, f.coeffs()[k]);
    std::vector<FqElement> roots;
    for (auto& [lin, m] : fq::factor(F, rev)) {
        if (fq::degree(lin) != 1) throw InputError("reciprocal_root: reversed polynomial does not split");
        roots.push_back(F.neg(lin[0]));
    }
    return *std::min_element(roots.begin(), roots.end());
}

std::pair<ExtensionField, FqElement> reciprocal_root(const OneUnitPoly& f) {
    ExtensionField E = make_extension_field(f.field(), f.degree());
    FqElement r = reciprocal_root_in(f, E);
    return {std::move(E), std::move(r)};
}

FieldEnumerator::FieldEnumerator(const FieldPtr& base, int k, u64 budget) : a_(base->degree()), k_(k) {
    if (k < 1) throw InputError("enumerate_field: k must be >= 1");
    auto s = checked_pow(base->prime(), base->degree() * k);
    if (budget == 0) budget = kDefaultBudget;
    if (!s || *s > budget)
        throw BudgetExceeded("F_{q^" + std::to_string(k) + "} exceeds the enumeration budget of " +
                             std::to_string(budget));
    size_ = *s;
    ext_ = make_extension_field(base, k);
}

bool FieldEnumerator::next(FqElement& x, int& degree) {
    if (pos_ >= size_) return false;
    x = ext_.field->element(pos_++);
    degree = ext_.field->orbit_length(x, a_);
    return true;
}

}  // namespace wittchar
